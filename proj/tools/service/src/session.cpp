#include "montyhall/service/session.hpp"

#include <cstdio>
#include <random>

#include "montyhall/analytics.hpp"
#include "montyhall/errors.hpp"
#include "montyhall/rng.hpp"
#include "montyhall/transcript_io.hpp"

namespace montyhall::service {

using nlohmann::json;

Probability AdaptiveReaderModel::propensity() const {
  return Rational(static_cast<std::int64_t>(stay_count + 1), static_cast<std::int64_t>(stay_count + switch_count + 2));
}

std::optional<Decision> AdaptiveReaderModel::predicted_intent() const {
  int s = (propensity().value() - Rational(1, 2)).sign();
  if (s > 0) return Decision::Stay;
  if (s < 0) return Decision::Switch;
  return std::nullopt;
}

AdaptiveReaderModel profile_update(AdaptiveReaderModel model, Decision observed) {
  (observed == Decision::Stay ? model.stay_count : model.switch_count) += 1;
  return model;
}

namespace {

Probability probability_field(const json& body, const char* key) {
  if (!body.contains(key)) throw InvalidParameter(std::string("missing field '") + key + "'");
  const json& v = body.at(key);
  if (v.is_string()) return Probability::parse(v.get<std::string>());
  if (v.is_number_integer()) return Probability(Rational(v.get<std::int64_t>()));
  if (v.is_number()) return Probability::parse(std::to_string(v.get<double>()));
  throw InvalidParameter(std::string("field '") + key + "' must be a probability");
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string fresh_id() {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(fresh_seed()),
                static_cast<unsigned long long>(fresh_seed()));
  return buf;
}

}  // namespace

HostSpec parse_host_spec(const json& body) {
  if (!body.is_object() || !body.contains("host") || !body["host"].is_string())
    throw InvalidParameter("body must contain a string field 'host'");
  std::string host = body["host"].get<std::string>();
  if (host == "adaptive") return {ShowmasterStrategy::mind_reader(Probability(1, 1)), true};
  if (host == "moody" && body.contains("p")) return {ShowmasterStrategy::moody(probability_field(body, "p")), false};
  if ((host == "mind_reader" || host == "mind-reader") && body.contains("accuracy"))
    return {ShowmasterStrategy::mind_reader(probability_field(body, "accuracy")), false};
  if (host == "mind_reader" || host == "mind-reader")
    return {ShowmasterStrategy::mind_reader(Probability(1, 1)), false};
  return {parse_showmaster(host), false};
}

SessionOptions parse_session_options(const json& body) {
  SessionOptions o;
  o.host = parse_host_spec(body);
  if (body.contains("prior")) o.prior = probability_field(body, "prior");
  if (body.contains("mood_mode")) {
    std::string mode = body["mood_mode"].is_string() ? body["mood_mode"].get<std::string>() : "";
    if (mode == "per_game")
      o.mood_mode = MoodMode::PerGame;
    else if (mode == "per_guest")
      o.mood_mode = MoodMode::PerGuest;
    else
      throw InvalidParameter("mood_mode must be 'per_game' or 'per_guest'");
  }
  if (body.contains("seed")) {
    const auto& seed = body["seed"];
    bool ok = seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<std::int64_t>() >= 0);
    if (!ok) throw InvalidParameter("seed must be a non-negative integer");
    o.seed = seed.get<std::uint64_t>();
  }
  return o;
}

json probability_json(const Probability& p) {
  return {{"fraction", p.str()}, {"decimal", p.to_double()}};
}

std::string_view to_string(Session::Phase p) {
  switch (p) {
    case Session::Phase::AwaitingPick: return "awaiting_pick";
    case Session::Phase::AwaitingDecision: return "awaiting_decision";
    case Session::Phase::Finished: return "finished";
  }
  return "?";
}

Session::Session(std::string id, SessionOptions options)
    : id_(std::move(id)), options_(options), belief_(belief::BeliefState::from_prior(options.prior)) {
  if (options_.mood_mode == MoodMode::PerGuest && options_.host.strategy.kind == ShowmasterStrategy::Kind::Moody) {
    // one draw for the whole session, taken from a dedicated stream
    std::uint64_t word = rng::SplitMix64(options_.seed ? rng::derive_seed(*options_.seed, ~0ULL) : fresh_seed())();
    guest_mood_ = rng::bernoulli(word, options_.host.strategy.param) ? Mood::Evil : Mood::Fair;
  }
  start_game();
}

std::uint64_t Session::next_seed() {
  return options_.seed ? rng::derive_seed(*options_.seed, game_index_) : fresh_seed();
}

void Session::start_game() {
  const ShowmasterStrategy& configured = options_.host.strategy;
  game_host_ = configured;
  auto predicted = profile_.predicted_intent();
  game_signal_ = predicted.value_or(Decision::Stay);
  if (guest_mood_) game_host_ = *guest_mood_ == Mood::Evil ? ShowmasterStrategy::evil() : ShowmasterStrategy::fair();
  // A reader with no decisive prediction is unsure and plays evil.
  if (configured.kind == ShowmasterStrategy::Kind::MindReader && !predicted)
    game_host_ = ShowmasterStrategy::mind_reader(Probability(0, 1));
  round_.emplace(game_host_, next_seed());
  belief_ = belief::BeliefState::from_prior(options_.prior);
  phase_ = Phase::AwaitingPick;
}

void Session::pick(int door) {
  if (phase_ == Phase::AwaitingDecision) throw PhaseViolation("a door is already picked; send a decision");
  DoorId picked(door);
  if (phase_ == Phase::Finished) {
    ++game_index_;
    start_game();
  }
  const HostAction& action = round_->pick(picked, game_signal_);
  belief_ = belief::update(belief_, action);
  if (round_->phase() == GameRound::Phase::Finished)
    finish(game_signal_ == Decision::Stay ? GuestStrategy::stay() : GuestStrategy::switcher());
  else
    phase_ = Phase::AwaitingDecision;
}

void Session::decide(Decision d) {
  if (phase_ != Phase::AwaitingDecision) throw PhaseViolation("no decision is pending");
  round_->decide(d);
  profile_ = profile_update(profile_, d);
  finish(d == Decision::Stay ? GuestStrategy::stay() : GuestStrategy::switcher());
}

void Session::finish(const GuestStrategy& recorded_guest) {
  history_.push_back(round_->transcript(recorded_guest));
  phase_ = Phase::Finished;
}

json Session::view() const {
  json v;
  v["schema_version"] = kSchemaVersion;
  v["session_id"] = id_;
  v["host"] = options_.host.label();
  v["mood_mode"] = options_.mood_mode == MoodMode::PerGame ? "per_game" : "per_guest";
  v["phase"] = to_string(phase_);

  const bool finished = phase_ == Phase::Finished;
  json game;
  game["index"] = game_index_;
  auto picked = round_->initial_pick();
  auto action = round_->host_action();
  game["picked_door"] = picked ? json(picked->index()) : json(nullptr);
  game["host_action"] = action ? json(action_label(*action)) : json(nullptr);
  std::optional<int> opened;
  if (action) opened = opened_guest_door(*action) ? picked->index() : std::get<OpenedOtherDoor>(*action).door.index();
  game["opened_door"] = opened ? json(*opened) : json(nullptr);
  json doors = json::array();
  for (int d = 1; d <= kDoorCount; ++d) {
    json door{{"door", d}};
    if (finished) {
      door["state"] = opened == d ? "open" : "revealed";
      door["content"] = round_->car_door().index() == d ? "car" : "goat";
    } else if (opened == d) {
      door["state"] = "open";
      door["content"] = "goat";
    } else {
      door["state"] = "closed";
      door["content"] = nullptr;
    }
    doors.push_back(door);
  }
  game["doors"] = doors;
  game["final_decision"] = round_->final_decision() ? json(to_string(*round_->final_decision())) : json(nullptr);
  if (finished) {
    game["outcome"] = to_string(*round_->outcome());
    game["car_door"] = round_->car_door().index();
    game["sampled_mood"] = to_string(*round_->mood());
    game["seed"] = round_->seed();
  }
  v["game"] = game;

  json b;
  b["prior_evil"] = probability_json(belief_.prior_evil);
  b["posterior_evil"] = probability_json(belief_.posterior_evil);
  b["posterior_car"] = probability_json(belief_.posterior_car_own_door);
  b["recommendation"] = nullptr;
  if (!belief_.observations.empty() && !opened_guest_door(belief_.observations.back()))
    b["recommendation"] = analytics::to_string(belief::recommend(belief_));
  json trace = json::array();
  trace.push_back({{"step", 0},
                   {"action", nullptr},
                   {"posterior_evil", probability_json(belief_.prior_evil)},
                   {"posterior_car", probability_json(Probability(1, 3))}});
  belief::BeliefState s = belief::BeliefState::from_prior(belief_.prior_evil);
  int step = 0;
  for (const auto& obs : belief_.observations) {
    s = belief::update(s, obs);
    trace.push_back({{"step", ++step},
                     {"action", action_label(obs)},
                     {"posterior_evil", probability_json(s.posterior_evil)},
                     {"posterior_car", probability_json(s.posterior_car_own_door)}});
  }
  b["trace"] = trace;
  v["belief"] = b;

  json stats{{"games", history_.size()}, {"wins", 0}, {"no_choice", 0}};
  json by_decision{{"stay", {{"games", 0}, {"wins", 0}}}, {"switch", {{"games", 0}, {"wins", 0}}}};
  for (const auto& t : history_) {
    bool won = t.outcome == Outcome::Win;
    stats["wins"] = stats["wins"].get<int>() + won;
    if (!t.final_decision) {
      stats["no_choice"] = stats["no_choice"].get<int>() + 1;
      continue;
    }
    json& slot = by_decision[std::string(to_string(*t.final_decision))];
    slot["games"] = slot["games"].get<int>() + 1;
    slot["wins"] = slot["wins"].get<int>() + won;
  }
  stats["by_decision"] = by_decision;
  v["stats"] = stats;

  auto predicted = profile_.predicted_intent();
  v["profile"] = {{"stay_count", profile_.stay_count},
                  {"switch_count", profile_.switch_count},
                  {"propensity", probability_json(profile_.propensity())},
                  {"predicted_intent", predicted ? json(to_string(*predicted)) : json(nullptr)}};
  return v;
}

SessionManager::SessionManager(std::optional<std::filesystem::path> archive) {
  if (archive) {
    archive_.emplace(*archive, std::ios::app);
    if (!*archive_) throw InvalidParameter("cannot open archive " + archive->string());
  }
}

std::shared_ptr<SessionManager::Slot> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(map_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession("no session '" + id + "'");
  return it->second;
}

void SessionManager::archive_new(const Session& s, std::size_t before) {
  if (!archive_ || s.history().size() == before) return;
  std::lock_guard lock(archive_mutex_);
  for (std::size_t i = before; i < s.history().size(); ++i) *archive_ << to_json_line(s.history()[i]) << '\n';
  archive_->flush();
}

json SessionManager::create(const json& body) {
  SessionOptions options = parse_session_options(body);
  std::string id = fresh_id();
  auto slot = std::make_shared<Slot>(Session(id, options));
  json v = slot->session.view();
  std::lock_guard lock(map_mutex_);
  sessions_.emplace(id, std::move(slot));
  return v;
}

json SessionManager::pick(const std::string& id, const json& body) {
  auto slot = find(id);
  if (!body.is_object() || !body.contains("door") || !body["door"].is_number_integer())
    throw IllegalDoor("body must contain an integer field 'door'");
  std::lock_guard lock(slot->mutex);
  std::size_t before = slot->session.history().size();
  slot->session.pick(body["door"].get<int>());
  archive_new(slot->session, before);
  return slot->session.view();
}

json SessionManager::decide(const std::string& id, const json& body) {
  auto slot = find(id);
  std::string text;
  if (body.is_string())
    text = body.get<std::string>();
  else if (body.is_object() && body.contains("decision") && body["decision"].is_string())
    text = body["decision"].get<std::string>();
  else
    throw InvalidParameter("body must be \"stay\", \"switch\" or {\"decision\": ...}");
  Decision d = parse_decision(text);
  std::lock_guard lock(slot->mutex);
  std::size_t before = slot->session.history().size();
  slot->session.decide(d);
  archive_new(slot->session, before);
  return slot->session.view();
}

json SessionManager::get(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  return slot->session.view();
}

std::size_t SessionManager::size() const {
  std::lock_guard lock(map_mutex_);
  return sessions_.size();
}

json analytics_view(const Probability& p, const Probability& q) {
  using namespace analytics;
  return {{"schema_version", kSchemaVersion},
          {"p", probability_json(p)},
          {"q", probability_json(q)},
          {"win_stay", probability_json(win_stay(p))},
          {"win_switch", probability_json(win_switch(p))},
          {"win", probability_json(win_probability(p, q))},
          {"prob_other", probability_json(prob_other(p))},
          {"prob_my", probability_json(prob_my(p))},
          {"posterior_evil_given_other", probability_json(posterior_evil_given_other(p))},
          {"posterior_fair_given_other", probability_json(posterior_fair_given_other(p))},
          {"posterior_evil_given_my", probability_json(posterior_evil_given_my())},
          {"posterior_car_given_other", probability_json(posterior_car_given_other(p))},
          {"mind_reader_win_rate", probability_json(mind_reader_win_rate(q))},
          {"mind_reader_open_rate", probability_json(mind_reader_open_rate(q))},
          {"best_response", to_string(best_response(p))}};
}

}  // namespace montyhall::service
