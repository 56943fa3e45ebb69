#include "montyhall/transcript_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "montyhall/errors.hpp"

namespace montyhall {

using nlohmann::json;

std::string to_json_line(const GameTranscript& t) {
  json j;
  j["seed"] = t.seed;
  j["showmaster"] = t.showmaster.label();
  j["guest"] = t.guest.label();
  j["car_door"] = t.car_door.index();
  j["initial_pick"] = t.initial_pick.index();
  j["sampled_mood"] = to_string(t.sampled_mood);
  j["signaled_intent"] = to_string(t.signaled_intent);
  j["host_action"] = action_label(t.host_action);
  if (auto* other = std::get_if<OpenedOtherDoor>(&t.host_action))
    j["opened_door"] = other->door.index();
  else
    j["opened_door"] = nullptr;
  j["final_decision"] = t.final_decision ? json(to_string(*t.final_decision)) : json(nullptr);
  j["outcome"] = to_string(t.outcome);
  return j.dump();
}

GameTranscript parse_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
    GameTranscript t;
    t.seed = j.at("seed").get<std::uint64_t>();
    t.showmaster = parse_showmaster(j.at("showmaster").get<std::string>());
    t.guest = parse_guest(j.at("guest").get<std::string>());
    t.car_door = DoorId(j.at("car_door").get<int>());
    t.initial_pick = DoorId(j.at("initial_pick").get<int>());
    t.sampled_mood = parse_mood(j.at("sampled_mood").get<std::string>());
    t.signaled_intent = parse_decision(j.at("signaled_intent").get<std::string>());
    auto action = j.at("host_action").get<std::string>();
    if (action == "opened_mine")
      t.host_action = OpenedGuestDoor{};
    else if (action == "opened_other")
      t.host_action = OpenedOtherDoor{DoorId(j.at("opened_door").get<int>())};
    else
      throw InvalidParameter("unknown host_action '" + action + "'");
    if (!j.at("final_decision").is_null()) t.final_decision = parse_decision(j["final_decision"].get<std::string>());
    t.outcome = parse_outcome(j.at("outcome").get<std::string>());
    return t;
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("malformed transcript: ") + e.what());
  }
}

void write_jsonl(std::ostream& out, const std::vector<GameTranscript>& transcripts) {
  for (const auto& t : transcripts) out << to_json_line(t) << '\n';
}

std::vector<GameTranscript> read_jsonl(std::istream& in) {
  std::vector<GameTranscript> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const Error& e) {
      throw InvalidParameter("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace montyhall
