#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "montyhall/errors.hpp"
#include "montyhall/game.hpp"
#include "montyhall/oracle.hpp"
#include "montyhall/rng.hpp"
#include "montyhall/transcript_io.hpp"

using namespace montyhall;

namespace {

std::vector<ShowmasterStrategy> all_hosts() {
  return {ShowmasterStrategy::fair(),
          ShowmasterStrategy::evil(),
          ShowmasterStrategy::moody(Probability(1, 2)),
          ShowmasterStrategy::moody(Probability(1, 5)),
          ShowmasterStrategy::mind_reader(Probability(1, 1)),
          ShowmasterStrategy::mind_reader(Probability(2, 3)),
          ShowmasterStrategy::mind_reader(Probability(0, 1))};
}

std::vector<GuestStrategy> all_guests() {
  return {GuestStrategy::stay(), GuestStrategy::switcher(), GuestStrategy::mixed(Probability(1, 3)),
          GuestStrategy::actor(Probability(1, 4))};
}

void check_invariants(const GameTranscript& t) {
  if (auto* other = std::get_if<OpenedOtherDoor>(&t.host_action)) {
    CHECK(other->door != t.car_door);
    CHECK(other->door != t.initial_pick);
    REQUIRE(t.final_decision.has_value());
    if (*t.final_decision == Decision::Stay)
      CHECK((t.outcome == Outcome::Win) == (t.initial_pick == t.car_door));
    else
      CHECK((t.outcome == Outcome::Win) == (t.initial_pick != t.car_door));
  } else {
    CHECK(t.sampled_mood == Mood::Evil);
    CHECK(t.initial_pick != t.car_door);
    CHECK_FALSE(t.final_decision.has_value());
    CHECK(t.outcome == Outcome::Lose);
  }
}

}  // namespace

TEST_CASE("door ids are 1..3") {
  CHECK_NOTHROW(DoorId(1));
  CHECK_NOTHROW(DoorId(3));
  CHECK_THROWS_AS(DoorId(0), IllegalDoor);
  CHECK_THROWS_AS(DoorId(4), IllegalDoor);
}

TEST_CASE("host_act") {
  const std::uint64_t low = 0, high = ~std::uint64_t{0};
  SUBCASE("evil host opens a goat-holding guest door") {
    CHECK(opened_guest_door(host_act(Mood::Evil, DoorId(1), DoorId(2), low)));
    CHECK(opened_guest_door(host_act(Mood::Evil, DoorId(3), DoorId(1), high)));
  }
  SUBCASE("evil host opens another door when the guest holds the car") {
    auto a = host_act(Mood::Evil, DoorId(1), DoorId(1), low);
    REQUIRE(std::holds_alternative<OpenedOtherDoor>(a));
    CHECK(std::get<OpenedOtherDoor>(a).door != DoorId(1));
  }
  SUBCASE("fair tie-break splits the two goats by the tie-break word") {
    CHECK(std::get<OpenedOtherDoor>(host_act(Mood::Fair, DoorId(1), DoorId(1), low)).door == DoorId(2));
    CHECK(std::get<OpenedOtherDoor>(host_act(Mood::Fair, DoorId(1), DoorId(1), high)).door == DoorId(3));
    CHECK(std::get<OpenedOtherDoor>(host_act(Mood::Fair, DoorId(1), DoorId(1), (std::uint64_t{1} << 63) - 1)).door ==
          DoorId(2));
    CHECK(std::get<OpenedOtherDoor>(host_act(Mood::Fair, DoorId(1), DoorId(1), std::uint64_t{1} << 63)).door ==
          DoorId(3));
  }
  SUBCASE("fair host with a goat picked has exactly one door to open") {
    for (std::uint64_t w : {low, high})
      CHECK(std::get<OpenedOtherDoor>(host_act(Mood::Fair, DoorId(1), DoorId(2), w)).door == DoorId(3));
  }
  SUBCASE("fair tie-break is uniform over seeds") {
    int door2 = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      auto d = GameDraws::from_seed(rng::derive_seed(5, i));
      door2 += std::get<OpenedOtherDoor>(host_act(Mood::Fair, DoorId(1), DoorId(1), d[GameDraws::TieBreak])).door ==
               DoorId(2);
    }
    CHECK(std::abs(door2 - n / 2.0) < 5 * std::sqrt(n * 0.25));
  }
}

TEST_CASE("resolve_mind_reader") {
  const std::uint64_t any = 0x123456789abcdefULL;
  CHECK(resolve_mind_reader(Probability(1, 1), Decision::Stay, any) == Mood::Fair);
  CHECK(resolve_mind_reader(Probability(1, 1), Decision::Switch, any) == Mood::Evil);
  CHECK(resolve_mind_reader(Probability(0, 1), Decision::Stay, any) == Mood::Evil);
  CHECK(resolve_mind_reader(Probability(0, 1), Decision::Switch, any) == Mood::Evil);
}

TEST_CASE("every transcript satisfies the game invariants") {
  for (const auto& host : all_hosts())
    for (const auto& guest : all_guests())
      for (std::uint64_t s = 0; s < 300; ++s) check_invariants(play_game(host, guest, rng::derive_seed(99, s)));
}

TEST_CASE("evil host against a switcher never loses a car") {
  for (std::uint64_t s = 0; s < 10000; ++s)
    CHECK(play_game(ShowmasterStrategy::evil(), GuestStrategy::switcher(), s).outcome == Outcome::Lose);
}

TEST_CASE("fair host always opens another door") {
  for (std::uint64_t s = 0; s < 10000; ++s)
    CHECK(std::holds_alternative<OpenedOtherDoor>(
        play_game(ShowmasterStrategy::fair(), GuestStrategy::stay(), s).host_action));
}

TEST_CASE("staying against evil wins a third of the time") {
  const int n = 200000;
  int wins = 0;
  for (int s = 0; s < n; ++s)
    wins += play_game(ShowmasterStrategy::evil(), GuestStrategy::stay(), rng::derive_seed(7, s)).outcome ==
            Outcome::Win;
  double r = double(wins) / n;
  CHECK(std::abs(r - 1.0 / 3) < 5 * std::sqrt(r * (1 - r) / n));
}

TEST_CASE("car door and initial pick are uniform") {
  const int n = 90000;
  std::map<int, int> car, pick;
  for (int s = 0; s < n; ++s) {
    auto t = play_game(ShowmasterStrategy::fair(), GuestStrategy::stay(), rng::derive_seed(11, s));
    ++car[t.car_door.index()];
    ++pick[t.initial_pick.index()];
  }
  const double sd = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
  for (int d = 1; d <= 3; ++d) {
    CHECK(std::abs(car[d] - n / 3.0) < 5 * sd);
    CHECK(std::abs(pick[d] - n / 3.0) < 5 * sd);
  }
}

TEST_CASE("play_game is a pure function of strategies and seed") {
  for (const auto& host : all_hosts())
    for (const auto& guest : all_guests())
      for (std::uint64_t s : {0ULL, 1ULL, 42ULL, ~0ULL}) CHECK(play_game(host, guest, s) == play_game(host, guest, s));
}

TEST_CASE("concurrent plays match serial plays") {
  const auto host = ShowmasterStrategy::moody(Probability(1, 2));
  const auto guest = GuestStrategy::mixed(Probability(1, 2));
  std::vector<GameTranscript> serial, parallel(4000);
  for (int s = 0; s < 4000; ++s) serial.push_back(play_game(host, guest, s));
  {
    std::vector<std::jthread> ts;
    for (int k = 0; k < 4; ++k)
      ts.emplace_back([&, k] {
        for (int s = k; s < 4000; s += 4) parallel[s] = play_game(host, guest, s);
      });
  }
  CHECK(serial == parallel);
}

TEST_CASE("actor_game") {
  SUBCASE("always caught means always losing") {
    for (std::uint64_t s = 0; s < 5000; ++s) {
      auto t = actor_game(Probability(1, 1), Probability(1, 1), s);
      CHECK(t.outcome == Outcome::Lose);
      CHECK(t.sampled_mood == Mood::Evil);
      CHECK(t.signaled_intent == Decision::Stay);
    }
  }
  SUBCASE("never caught: the reader plays fair and the switch pays 2/3") {
    const int n = 100000;
    int wins = 0;
    for (int s = 0; s < n; ++s) {
      auto t = actor_game(Probability(0, 1), Probability(1, 1), rng::derive_seed(3, s));
      CHECK(t.sampled_mood == Mood::Fair);
      wins += t.outcome == Outcome::Win;
    }
    double r = double(wins) / n;
    CHECK(std::abs(r - 2.0 / 3) < 5 * std::sqrt(r * (1 - r) / n));
  }
  SUBCASE("an actor switches whenever offered the choice") {
    for (std::uint64_t s = 0; s < 2000; ++s) {
      auto t = actor_game(Probability(1, 2), Probability(1, 1), s);
      if (t.final_decision) CHECK(*t.final_decision == Decision::Switch);
    }
  }
}

TEST_CASE("strategy labels parse back") {
  for (const auto& h : all_hosts()) CHECK(parse_showmaster(h.label()) == h);
  for (const auto& g : all_guests()) CHECK(parse_guest(g.label()) == g);
  CHECK(parse_showmaster("moody(0.5)") == ShowmasterStrategy::moody(Probability(1, 2)));
  CHECK_THROWS_AS(parse_showmaster("moody"), InvalidParameter);
  CHECK_THROWS_AS(parse_showmaster("moody(3/2)"), InvalidParameter);
  CHECK_THROWS_AS(parse_guest("dance"), InvalidParameter);
}

TEST_CASE("transcripts round-trip through JSONL and replay identically") {
  std::vector<GameTranscript> ts;
  for (const auto& host : all_hosts())
    for (const auto& guest : all_guests())
      for (std::uint64_t s = 0; s < 25; ++s) ts.push_back(play_game(host, guest, rng::derive_seed(1234, s)));
  std::stringstream buf;
  write_jsonl(buf, ts);
  auto back = read_jsonl(buf);
  CHECK(back == ts);
  for (const auto& t : back) CHECK(replays_identically(t));
}

TEST_CASE("JSONL field names and enumerations") {
  GameTranscript t = play_game(ShowmasterStrategy::evil(), GuestStrategy::stay(), 0);
  // find a seed where the evil host opens the guest's door
  for (std::uint64_t s = 0; !opened_guest_door(t.host_action); ++s)
    t = play_game(ShowmasterStrategy::evil(), GuestStrategy::stay(), s);
  std::string line = to_json_line(t);
  for (const char* key : {"\"seed\"", "\"showmaster\":\"evil\"", "\"guest\":\"stay\"", "\"car_door\"",
                          "\"initial_pick\"", "\"sampled_mood\":\"evil\"", "\"signaled_intent\":\"stay\"",
                          "\"host_action\":\"opened_mine\"", "\"final_decision\":null", "\"outcome\":\"lose\""})
    CHECK_MESSAGE(line.find(key) != std::string::npos, key);
  std::istringstream bad("{\"seed\":1}\n");
  CHECK_THROWS_AS(read_jsonl(bad), InvalidParameter);
}

TEST_CASE("overrides pin the pick and intent without shifting other draws") {
  const auto host = ShowmasterStrategy::moody(Probability(1, 2));
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto free = play_game(host, GuestStrategy::stay(), s);
    PlayOverrides o;
    o.initial_pick = free.initial_pick;
    auto pinned = play_game(host, GuestStrategy::stay(), s, o);
    CHECK(pinned == free);
    o.initial_pick = DoorId(free.initial_pick.index() % 3 + 1);
    auto moved = play_game(host, GuestStrategy::stay(), s, o);
    CHECK(moved.car_door == free.car_door);
    CHECK(moved.sampled_mood == free.sampled_mood);
  }
}

TEST_CASE("GameRound enforces the phase order") {
  GameRound r(ShowmasterStrategy::fair(), 5);
  CHECK(r.phase() == GameRound::Phase::AwaitingPick);
  CHECK_THROWS_AS(r.decide(Decision::Stay), PhaseViolation);
  CHECK_THROWS_AS(r.transcript(GuestStrategy::stay()), PhaseViolation);
  r.pick(DoorId(2), Decision::Stay);
  CHECK(r.phase() == GameRound::Phase::AwaitingDecision);
  CHECK_THROWS_AS(r.pick(DoorId(1), Decision::Stay), PhaseViolation);
  r.decide(Decision::Switch);
  CHECK(r.phase() == GameRound::Phase::Finished);
  CHECK_THROWS_AS(r.decide(Decision::Stay), PhaseViolation);
}

// Distributional equivalences are checked on the exact outcome trees.
namespace {
using AtomKey = std::tuple<int, int, int, int, std::string, int, int, int>;
std::map<AtomKey, Rational> distribution(const ShowmasterStrategy& h, const GuestStrategy& g) {
  std::map<AtomKey, Rational> m;
  for (const auto& a : oracle::enumerate(h, g)) {
    auto* other = std::get_if<OpenedOtherDoor>(&a.host_action);
    AtomKey k{a.car_door.index(), a.initial_pick.index(),   int(a.sampled_mood), int(a.signaled_intent),
              std::string(action_label(a.host_action)), other ? other->door.index() : 0,
              a.final_decision ? int(*a.final_decision) : -1, int(a.outcome)};
    m[k] += a.weight;
  }
  return m;
}
}  // namespace

TEST_CASE("moody(0) is fair, moody(1) is evil, mixed(1) is stay, mixed(0) is switch") {
  for (const auto& g : all_guests()) {
    CHECK(distribution(ShowmasterStrategy::moody(Probability(0, 1)), g) == distribution(ShowmasterStrategy::fair(), g));
    CHECK(distribution(ShowmasterStrategy::moody(Probability(1, 1)), g) == distribution(ShowmasterStrategy::evil(), g));
  }
  for (const auto& h : all_hosts()) {
    CHECK(distribution(h, GuestStrategy::mixed(Probability(1, 1))) == distribution(h, GuestStrategy::stay()));
    CHECK(distribution(h, GuestStrategy::mixed(Probability(0, 1))) == distribution(h, GuestStrategy::switcher()));
  }
}

TEST_CASE("the same equivalences hold seed by seed in the engine") {
  for (std::uint64_t s = 0; s < 2000; ++s) {
    auto fair = play_game(ShowmasterStrategy::fair(), GuestStrategy::switcher(), s);
    auto moody0 = play_game(ShowmasterStrategy::moody(Probability(0, 1)), GuestStrategy::switcher(), s);
    CHECK(fair.outcome == moody0.outcome);
    CHECK(fair.host_action == moody0.host_action);
    auto stay = play_game(ShowmasterStrategy::evil(), GuestStrategy::stay(), s);
    auto mixed1 = play_game(ShowmasterStrategy::evil(), GuestStrategy::mixed(Probability(1, 1)), s);
    CHECK(stay.outcome == mixed1.outcome);
  }
}
