#include "montyhall/game.hpp"

#include <cassert>

#include "montyhall/errors.hpp"
#include "montyhall/rng.hpp"

namespace montyhall {

DoorId::DoorId(int index) : index_(index) {
  if (index < 1 || index > kDoorCount) throw IllegalDoor("door must be 1, 2 or 3, got " + std::to_string(index));
}

std::string_view to_string(Mood m) { return m == Mood::Fair ? "fair" : "evil"; }
std::string_view to_string(Decision d) { return d == Decision::Stay ? "stay" : "switch"; }
std::string_view to_string(Outcome o) { return o == Outcome::Win ? "win" : "lose"; }

Mood parse_mood(std::string_view s) {
  if (s == "fair") return Mood::Fair;
  if (s == "evil") return Mood::Evil;
  throw InvalidParameter("unknown mood '" + std::string(s) + "'");
}

Decision parse_decision(std::string_view s) {
  if (s == "stay") return Decision::Stay;
  if (s == "switch") return Decision::Switch;
  throw InvalidParameter("unknown decision '" + std::string(s) + "'");
}

Outcome parse_outcome(std::string_view s) {
  if (s == "win") return Outcome::Win;
  if (s == "lose") return Outcome::Lose;
  throw InvalidParameter("unknown outcome '" + std::string(s) + "'");
}

std::string ShowmasterStrategy::label() const {
  switch (kind) {
    case Kind::Fair: return "fair";
    case Kind::Evil: return "evil";
    case Kind::Moody: return "moody(" + param.str() + ")";
    case Kind::MindReader: return "mind_reader(" + param.str() + ")";
  }
  return "?";
}

std::string GuestStrategy::label() const {
  switch (kind) {
    case Kind::Stay: return "stay";
    case Kind::Switch: return "switch";
    case Kind::Mixed: return "mixed(" + param.str() + ")";
    case Kind::Actor: return "actor(" + param.str() + ")";
  }
  return "?";
}

namespace {

// Splits "name(arg)" into name and arg; arg is empty when there are no parens.
std::pair<std::string_view, std::string_view> split_label(std::string_view label) {
  auto open = label.find('(');
  if (open == std::string_view::npos) return {label, {}};
  if (label.back() != ')') throw InvalidParameter("malformed strategy '" + std::string(label) + "'");
  return {label.substr(0, open), label.substr(open + 1, label.size() - open - 2)};
}

}  // namespace

ShowmasterStrategy parse_showmaster(std::string_view label) {
  auto [name, arg] = split_label(label);
  if (name == "fair" && arg.empty()) return ShowmasterStrategy::fair();
  if (name == "evil" && arg.empty()) return ShowmasterStrategy::evil();
  if (name == "moody" && !arg.empty()) return ShowmasterStrategy::moody(Probability::parse(arg));
  if ((name == "mind_reader" || name == "mind-reader") && !arg.empty())
    return ShowmasterStrategy::mind_reader(Probability::parse(arg));
  throw InvalidParameter("unknown showmaster strategy '" + std::string(label) + "'");
}

GuestStrategy parse_guest(std::string_view label) {
  auto [name, arg] = split_label(label);
  if (name == "stay" && arg.empty()) return GuestStrategy::stay();
  if (name == "switch" && arg.empty()) return GuestStrategy::switcher();
  if (name == "mixed" && !arg.empty()) return GuestStrategy::mixed(Probability::parse(arg));
  if (name == "actor" && !arg.empty()) return GuestStrategy::actor(Probability::parse(arg));
  throw InvalidParameter("unknown guest strategy '" + std::string(label) + "'");
}

std::string_view action_label(const HostAction& a) {
  return opened_guest_door(a) ? "opened_mine" : "opened_other";
}

GameDraws GameDraws::from_seed(std::uint64_t seed) {
  GameDraws d;
  rng::SplitMix64 gen(seed);
  for (auto& w : d.words) w = gen();
  return d;
}

HostAction host_act(Mood mood, DoorId car_door, DoorId initial_pick, std::uint64_t tie_break) {
  if (mood == Mood::Evil && car_door != initial_pick) return OpenedGuestDoor{};
  // Candidates: neither the guest's door nor the car.
  int candidates[2];
  int n = 0;
  for (int d = 1; d <= kDoorCount; ++d)
    if (d != car_door.index() && d != initial_pick.index()) candidates[n++] = d;
  assert(n == 1 || n == 2);
  int chosen = n == 1 ? candidates[0] : candidates[rng::bounded(tie_break, 2)];
  return OpenedOtherDoor{DoorId(chosen)};
}

Mood resolve_mind_reader(const Probability& accuracy, Decision signaled, std::uint64_t reader_coin) {
  if (!rng::bernoulli(reader_coin, accuracy)) return Mood::Evil;
  return signaled == Decision::Stay ? Mood::Fair : Mood::Evil;
}

GameRound::GameRound(ShowmasterStrategy showmaster, std::uint64_t seed)
    : showmaster_(showmaster),
      seed_(seed),
      draws_(GameDraws::from_seed(seed)),
      car_(static_cast<int>(rng::bounded(draws_[GameDraws::Car], kDoorCount)) + 1) {}

DoorId GameRound::drawn_pick() const {
  return DoorId(static_cast<int>(rng::bounded(draws_[GameDraws::Pick], kDoorCount)) + 1);
}

const HostAction& GameRound::pick(DoorId door, Decision intent, bool detected_act) {
  if (phase_ != Phase::AwaitingPick) throw PhaseViolation("pick is only legal before the host acts");
  pick_ = door;
  intent_ = intent;
  switch (showmaster_.kind) {
    case ShowmasterStrategy::Kind::Fair: mood_ = Mood::Fair; break;
    case ShowmasterStrategy::Kind::Evil: mood_ = Mood::Evil; break;
    case ShowmasterStrategy::Kind::Moody:
      mood_ = rng::bernoulli(draws_[GameDraws::MoodCoin], showmaster_.param) ? Mood::Evil : Mood::Fair;
      break;
    case ShowmasterStrategy::Kind::MindReader:
      mood_ = detected_act ? Mood::Evil
                           : resolve_mind_reader(showmaster_.param, intent, draws_[GameDraws::ReaderCoin]);
      break;
  }
  action_ = host_act(*mood_, car_, door, draws_[GameDraws::TieBreak]);
  if (opened_guest_door(*action_)) {
    outcome_ = Outcome::Lose;
    phase_ = Phase::Finished;
  } else {
    phase_ = Phase::AwaitingDecision;
  }
  return *action_;
}

Outcome GameRound::decide(Decision d) {
  if (phase_ != Phase::AwaitingDecision) throw PhaseViolation("decision is only legal after another door was opened");
  decision_ = d;
  int final_door = pick_->index();
  if (d == Decision::Switch) {
    int opened = std::get<OpenedOtherDoor>(*action_).door.index();
    final_door = 6 - pick_->index() - opened;
  }
  outcome_ = final_door == car_.index() ? Outcome::Win : Outcome::Lose;
  phase_ = Phase::Finished;
  return *outcome_;
}

GameTranscript GameRound::transcript(const GuestStrategy& guest) const {
  if (phase_ != Phase::Finished) throw PhaseViolation("transcript requested before the game finished");
  GameTranscript t;
  t.seed = seed_;
  t.showmaster = showmaster_;
  t.guest = guest;
  t.car_door = car_;
  t.initial_pick = *pick_;
  t.sampled_mood = *mood_;
  t.signaled_intent = *intent_;
  t.host_action = *action_;
  t.final_decision = decision_;
  t.outcome = *outcome_;
  return t;
}

GameTranscript play_game(const ShowmasterStrategy& showmaster, const GuestStrategy& guest, std::uint64_t seed,
                         const PlayOverrides& overrides) {
  GameRound round(showmaster, seed);
  const GameDraws& draws = round.draws();

  Decision plays = Decision::Stay;
  Decision signals = Decision::Stay;
  bool detected = false;
  switch (guest.kind) {
    case GuestStrategy::Kind::Stay: break;
    case GuestStrategy::Kind::Switch: plays = signals = Decision::Switch; break;
    case GuestStrategy::Kind::Mixed:
      plays = signals = rng::bernoulli(draws[GameDraws::GuestCoin], guest.param) ? Decision::Stay : Decision::Switch;
      break;
    case GuestStrategy::Kind::Actor:
      plays = Decision::Switch;
      detected = rng::bernoulli(draws[GameDraws::DetectionCoin], guest.param);
      break;
  }
  if (overrides.signaled_intent) signals = *overrides.signaled_intent;

  DoorId door = overrides.initial_pick.value_or(round.drawn_pick());
  round.pick(door, signals, detected);
  if (round.phase() == GameRound::Phase::AwaitingDecision) round.decide(plays);
  return round.transcript(guest);
}

GameTranscript actor_game(const Probability& detection_risk, const Probability& reader_accuracy,
                          std::uint64_t seed) {
  return play_game(ShowmasterStrategy::mind_reader(reader_accuracy), GuestStrategy::actor(detection_risk), seed);
}

bool replays_identically(const GameTranscript& t) {
  PlayOverrides o;
  o.initial_pick = t.initial_pick;
  o.signaled_intent = t.signaled_intent;
  return play_game(t.showmaster, t.guest, t.seed, o) == t;
}

}  // namespace montyhall
