#include <doctest.h>

#include <cmath>
#include <sstream>

#include "montyhall/analytics.hpp"
#include "montyhall/errors.hpp"
#include "montyhall/simulation.hpp"

using namespace montyhall;
using namespace montyhall::simulation;

namespace {
Probability P(std::int64_t a, std::int64_t b) { return Probability(a, b); }

bool same_counts(const SimulationReport& a, const SimulationReport& b) {
  return a.wins == b.wins && a.replications == b.replications && a.event_counts == b.event_counts &&
         a.exact_value == b.exact_value;
}
}  // namespace

TEST_CASE("reports are reproducible and independent of the partition") {
  auto a = run_batch(ShowmasterStrategy::moody(P(1, 2)), GuestStrategy::mixed(P(1, 2)), 50001, 7, 1);
  auto b = run_batch(ShowmasterStrategy::moody(P(1, 2)), GuestStrategy::mixed(P(1, 2)), 50001, 7, 1);
  auto c = run_batch(ShowmasterStrategy::moody(P(1, 2)), GuestStrategy::mixed(P(1, 2)), 50001, 7, 3);
  auto d = run_batch(ShowmasterStrategy::moody(P(1, 2)), GuestStrategy::mixed(P(1, 2)), 50001, 7, 8);
  CHECK(same_counts(a, b));
  CHECK(same_counts(a, c));
  CHECK(same_counts(a, d));
  auto other_seed = run_batch(ShowmasterStrategy::moody(P(1, 2)), GuestStrategy::mixed(P(1, 2)), 50001, 8, 1);
  CHECK_FALSE(same_counts(a, other_seed));
}

TEST_CASE("report fields are consistent") {
  auto r = run_batch(ShowmasterStrategy::moody(P(1, 2)), GuestStrategy::mixed(P(1, 2)), 1000000, 2026);
  CHECK(r.wins <= r.replications);
  CHECK(r.win_rate == doctest::Approx(double(r.wins) / r.replications));
  CHECK(r.std_error == doctest::Approx(std::sqrt(r.win_rate * (1 - r.win_rate) / r.replications)));
  CHECK(r.exact_value == P(1, 3));
  CHECK(std::abs(r.z_score) < 5);
  CHECK(r.event_counts.at("opened_mine") + r.event_counts.at("opened_other") == r.replications);
  CHECK(r.event_counts.at("evil") + r.event_counts.at("fair") == r.replications);
  CHECK(r.event_counts.at("stay") + r.event_counts.at("switch") == r.event_counts.at("opened_other"));
}

TEST_CASE("evil host against switchers: zero wins") {
  auto r = run_batch(ShowmasterStrategy::evil(), GuestStrategy::switcher(), 100000, 1);
  CHECK(r.wins == 0);
  CHECK(r.exact_value == P(0, 1));
  CHECK(r.z_score == 0);
}

TEST_CASE("fair host against switchers: two thirds") {
  auto r = run_batch(ShowmasterStrategy::fair(), GuestStrategy::switcher(), 1000000, 3);
  CHECK(r.exact_value == P(2, 3));
  CHECK(std::abs(r.z_score) < 5);
}

TEST_CASE("opened_mine frequency under a moody host tracks 2p/3") {
  for (auto p : {P(1, 4), P(3, 4)}) {
    auto r = run_batch(ShowmasterStrategy::moody(p), GuestStrategy::stay(), 200000, 17);
    CHECK(std::abs(r.event_z("opened_mine", analytics::prob_my(p))) < 5);
  }
  auto r = run_batch(ShowmasterStrategy::fair(), GuestStrategy::stay(), 1000, 1);
  CHECK_THROWS_AS(r.event_z("no_such_event", P(0, 1)), InvalidParameter);
}

TEST_CASE("z-score edge cases") {
  CHECK(z_score(0, 100, P(0, 1)) == 0);
  CHECK(z_score(100, 100, P(1, 1)) == 0);
  CHECK(std::isinf(z_score(0, 100, P(1, 3))));
  CHECK(z_score(0, 100, P(1, 3)) < 0);
  CHECK(z_score(50, 100, P(1, 2)) == 0);
}

TEST_CASE("zero replications are rejected") {
  CHECK_THROWS_AS(run_batch(ShowmasterStrategy::fair(), GuestStrategy::stay(), 0, 1), InvalidParameter);
}

TEST_CASE("sweep: stayers hold a third against every p") {
  auto ps = analytics::grid(P(0, 1), P(1, 1), Rational(1, 4));
  std::vector<Cell> cells;
  for (const auto& p : ps) cells.push_back({ShowmasterStrategy::moody(p), GuestStrategy::stay()});
  auto reports = sweep(cells, 100000, 99);
  REQUIRE(reports.size() == 5);
  for (const auto& r : reports) CHECK(r.exact_value == P(1, 3));
  CHECK(all_within(reports, 5));
}

TEST_CASE("sweep: switcher win rate falls with p") {
  auto ps = analytics::grid(P(0, 1), P(1, 1), Rational(1, 4));
  std::vector<Cell> cells;
  for (const auto& p : ps) cells.push_back({ShowmasterStrategy::moody(p), GuestStrategy::switcher()});
  auto reports = sweep(cells, 100000, 5);
  for (std::size_t i = 1; i < reports.size(); ++i) CHECK(reports[i].win_rate < reports[i - 1].win_rate);
  CHECK(all_within(reports, 5));
}

TEST_CASE("sweep: perfect reader pays q/3") {
  std::vector<Cell> cells;
  for (auto q : {P(0, 1), P(1, 2), P(1, 1)})
    cells.push_back({ShowmasterStrategy::mind_reader(P(1, 1)), GuestStrategy::mixed(q)});
  auto reports = sweep(cells, 100000, 21);
  CHECK(reports[0].exact_value == P(0, 1));
  CHECK(reports[0].wins == 0);
  CHECK(reports[1].exact_value == P(1, 6));
  CHECK(reports[2].exact_value == P(1, 3));
  CHECK(all_within(reports, 5));
}

TEST_CASE("each sweep cell can be rerun on its own") {
  auto cells = grid_cells({P(1, 4), P(1, 2)}, {P(0, 1), P(1, 1)});
  REQUIRE(cells.size() == 4);
  auto reports = sweep(cells, 20000, 77);
  auto again = run_batch(cells[2].showmaster, cells[2].guest, 20000, reports[2].master_seed);
  CHECK(same_counts(reports[2], again));
}

TEST_CASE("report rendering") {
  auto reports = sweep({{ShowmasterStrategy::evil(), GuestStrategy::switcher()}}, 1000, 1);
  std::ostringstream text, csv, jsonl;
  write_reports(text, reports, analytics::TableFormat::Text);
  write_reports(csv, reports, analytics::TableFormat::Csv);
  write_reports(jsonl, reports, analytics::TableFormat::Jsonl);
  CHECK(text.str().find("evil") != std::string::npos);
  CHECK(csv.str().find("evil,switch,") != std::string::npos);
  CHECK(jsonl.str().find("\"wins\":0") != std::string::npos);
  CHECK(jsonl.str().find("\"exact\":\"0\"") != std::string::npos);
}
