#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "montyhall/analytics.hpp"
#include "montyhall/game.hpp"

namespace montyhall::simulation {

struct Cell {
  ShowmasterStrategy showmaster;
  GuestStrategy guest;
};

/// Labels counted per batch: win, opened_mine, opened_other, evil, fair,
/// stay, switch, car_behind_pick.
using EventCounts = std::map<std::string, std::uint64_t>;

struct SimulationReport {
  Cell config;
  std::uint64_t master_seed = 0;
  std::uint64_t replications = 0;
  std::uint64_t wins = 0;
  double win_rate = 0;
  double std_error = 0;  ///< sqrt(r(1-r)/n) with r = win_rate
  Probability exact_value;
  double z_score = 0;
  EventCounts event_counts;

  /// z-score of an event frequency against its exact probability.
  double event_z(const std::string& label, const Probability& exact) const;
};

/// (hits/n - exact) / sqrt(r(1-r)/n). When the standard error is zero the
/// score is 0 if the rate equals `exact` and +-infinity otherwise.
double z_score(std::uint64_t hits, std::uint64_t n, const Probability& exact);

/// Replication i plays play_game(..., rng::derive_seed(master_seed, i)).
/// Counts are merged from `threads` contiguous index ranges (0 = hardware
/// concurrency); the report does not depend on the partition.
/// Throws InvalidParameter when replications is 0.
SimulationReport run_batch(const ShowmasterStrategy& showmaster, const GuestStrategy& guest,
                           std::uint64_t replications, std::uint64_t master_seed, unsigned threads = 0);

/// Moody(p) x Mixed(q) for every grid pair, p-major.
std::vector<Cell> grid_cells(const std::vector<Probability>& ps, const std::vector<Probability>& qs);

/// One independent batch per cell; cell k runs from master seed
/// rng::derive_seed(master_seed, k), recorded in its report so the cell can
/// be rerun on its own.
std::vector<SimulationReport> sweep(const std::vector<Cell>& cells, std::uint64_t replications,
                                    std::uint64_t master_seed, unsigned threads = 0);

/// True when every report has |z| below the threshold.
bool all_within(const std::vector<SimulationReport>& reports, double z_threshold);

void write_reports(std::ostream& out, const std::vector<SimulationReport>& reports, analytics::TableFormat format);

}  // namespace montyhall::simulation
