#include <doctest.h>

#include <sstream>

#include "montyhall/analytics.hpp"
#include "montyhall/belief.hpp"
#include "montyhall/errors.hpp"
#include "montyhall/oracle.hpp"
#include "montyhall/rng.hpp"

using namespace montyhall;
using namespace montyhall::belief;

namespace {
Probability P(std::int64_t a, std::int64_t b) { return Probability(a, b); }
const HostAction kOther = OpenedOtherDoor{DoorId(3)};
const HostAction kMine = OpenedGuestDoor{};

std::vector<GameTranscript> archive(const ShowmasterStrategy& host, int n, std::uint64_t seed) {
  std::vector<GameTranscript> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(play_game(host, GuestStrategy::stay(), rng::derive_seed(seed, i)));
  return out;
}
}  // namespace

TEST_CASE("update examples") {
  auto s = update(BeliefState::from_prior(P(1, 2)), kOther);
  CHECK(s.posterior_evil == P(1, 4));
  CHECK(s.posterior_car_own_door == P(1, 2));
  CHECK(s.prior_evil == P(1, 2));
  CHECK(s.observations.size() == 1);

  for (const auto& p : analytics::farey_grid(12)) CHECK(update(BeliefState::from_prior(p), kMine).posterior_evil == P(1, 1));

  auto fair = update(BeliefState::from_prior(P(0, 1)), kOther);
  CHECK(fair.posterior_evil == P(0, 1));
  CHECK(fair.posterior_car_own_door == P(1, 3));
}

TEST_CASE("update does not modify its input") {
  auto s0 = BeliefState::from_prior(P(1, 3));
  auto s1 = update(s0, kOther);
  CHECK(s0.observations.empty());
  CHECK(s0.posterior_evil == P(1, 3));
  CHECK(s1.posterior_evil == P(1, 7));
}

TEST_CASE("update agrees with the enumeration oracle on the grid") {
  for (const auto& p : analytics::farey_grid(12)) {
    auto atoms = oracle::enumerate(ShowmasterStrategy::moody(p), GuestStrategy::stay());
    auto s = update(BeliefState::from_prior(p), kOther);
    CHECK(s.posterior_evil == oracle::conditional_probability(atoms, oracle::events::evil, oracle::events::opened_other));
    CHECK(s.posterior_car_own_door ==
          oracle::conditional_probability(atoms, oracle::events::car_behind_pick, oracle::events::opened_other));
    CHECK(s.posterior_evil <= p);
    if (p != P(0, 1) && p != P(1, 1)) CHECK(s.posterior_evil < p);
    if (p != P(0, 1)) {
      auto mine = update(BeliefState::from_prior(p), kMine);
      CHECK(mine.posterior_evil ==
            oracle::conditional_probability(atoms, oracle::events::evil, oracle::events::opened_mine));
      CHECK(mine.posterior_car_own_door ==
            oracle::conditional_probability(atoms, oracle::events::car_behind_pick, oracle::events::opened_mine));
    }
  }
}

TEST_CASE("sequential updates use the running posterior") {
  auto s = update(update(BeliefState::from_prior(P(1, 2)), kOther), kOther);
  // second step from prior 1/4: (1/4)/(3 - 1/2) = 1/10, car 1/(3 - 1/2) = 2/5
  CHECK(s.posterior_evil == P(1, 10));
  CHECK(s.posterior_car_own_door == P(2, 5));
}

TEST_CASE("recommend") {
  using analytics::Response;
  CHECK(recommend(update(BeliefState::from_prior(P(1, 4)), kOther)) == Response::Switch);
  CHECK(recommend(update(BeliefState::from_prior(P(1, 2)), kOther)) == Response::Indifferent);
  auto two_thirds = update(BeliefState::from_prior(P(2, 3)), kOther);
  CHECK(two_thirds.posterior_car_own_door == P(3, 5));
  CHECK(recommend(two_thirds) == Response::Stay);
  for (const auto& p : analytics::farey_grid(12))
    CHECK(recommend(update(BeliefState::from_prior(p), kOther)) == analytics::best_response(p));
  CHECK_THROWS_AS(recommend(BeliefState::from_prior(P(1, 2))), NoChoiceAvailable);
  CHECK_THROWS_AS(recommend(update(BeliefState::from_prior(P(1, 2)), kMine)), NoChoiceAvailable);
}

TEST_CASE("estimate_p") {
  SUBCASE("fair archive estimates zero") {
    auto a = archive(ShowmasterStrategy::fair(), 5000, 1);
    auto e = estimate_p(a);
    CHECK(e.point == P(0, 1));
    CHECK(e.opened_mine == 0);
    CHECK(e.covers(0));
  }
  SUBCASE("moody(1/2) archive lands near 1/2") {
    auto a = archive(ShowmasterStrategy::moody(P(1, 2)), 100000, 2);
    auto e = estimate_p(a);
    CHECK(std::abs(e.point.to_double() - 0.5) < 0.02);
    CHECK(e.lower < e.point.to_double());
    CHECK(e.point.to_double() < e.upper);
  }
  SUBCASE("evil archive lands near 1") {
    auto a = archive(ShowmasterStrategy::evil(), 100000, 3);
    auto e = estimate_p(a);
    CHECK(e.point.to_double() > 0.98);
    CHECK(e.upper <= 1.0);
  }
  SUBCASE("point estimate is clamped to 1") {
    std::vector<GameTranscript> all_mine;
    for (std::uint64_t s = 0; all_mine.size() < 10; ++s) {
      auto t = play_game(ShowmasterStrategy::evil(), GuestStrategy::stay(), s);
      if (opened_guest_door(t.host_action)) all_mine.push_back(t);
    }
    CHECK(estimate_p(all_mine).point == P(1, 1));
  }
  SUBCASE("empty archive") {
    std::vector<GameTranscript> none;
    CHECK_THROWS_AS(estimate_p(none), EmptyArchive);
  }
}

TEST_CASE("belief trace export") {
  std::ostringstream out;
  std::vector<HostAction> acts{kOther, kMine};
  write_trace(out, BeliefState::from_prior(P(1, 2)), acts);
  std::string s = out.str();
  CHECK(s.find("{\"step\":1,\"action\":\"opened_other\",\"posterior_evil\":\"1/4\"") == 0);
  CHECK(s.find("\"posterior_car\":\"1/2\"") != std::string::npos);
  CHECK(s.find("{\"step\":2,\"action\":\"opened_mine\",\"posterior_evil\":\"1\"") != std::string::npos);
}
