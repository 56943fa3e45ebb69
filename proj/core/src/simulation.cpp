#include "montyhall/simulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "montyhall/errors.hpp"
#include "montyhall/oracle.hpp"
#include "montyhall/rng.hpp"

namespace montyhall::simulation {
namespace {

enum Counter { Win, OpenedMine, OpenedOther, Evil, Fair, Stay, Switch, CarBehindPick, kCounters };
constexpr std::array<const char*, kCounters> kLabels = {"win",  "opened_mine", "opened_other", "evil",
                                                        "fair", "stay",        "switch",       "car_behind_pick"};

using Counts = std::array<std::uint64_t, kCounters>;

void tally(Counts& c, const GameTranscript& t) {
  c[Win] += t.outcome == Outcome::Win;
  c[OpenedMine] += opened_guest_door(t.host_action);
  c[OpenedOther] += !opened_guest_door(t.host_action);
  c[Evil] += t.sampled_mood == Mood::Evil;
  c[Fair] += t.sampled_mood == Mood::Fair;
  c[Stay] += t.final_decision == Decision::Stay;
  c[Switch] += t.final_decision == Decision::Switch;
  c[CarBehindPick] += t.car_door == t.initial_pick;
}

Counts run_range(const Cell& cell, std::uint64_t master_seed, std::uint64_t begin, std::uint64_t end) {
  Counts c{};
  for (std::uint64_t i = begin; i < end; ++i)
    tally(c, play_game(cell.showmaster, cell.guest, rng::derive_seed(master_seed, i)));
  return c;
}

std::string fmt(double v, int places) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(places) << v;
  return os.str();
}

}  // namespace

double z_score(std::uint64_t hits, std::uint64_t n, const Probability& exact) {
  double r = static_cast<double>(hits) / static_cast<double>(n);
  double se = std::sqrt(r * (1 - r) / static_cast<double>(n));
  double diff = r - exact.to_double();
  if (se == 0) {
    // A degenerate sample matches only an exact 0 or 1.
    if (Rational(static_cast<std::int64_t>(hits), static_cast<std::int64_t>(n)) == exact.value()) return 0;
    return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return diff / se;
}

double SimulationReport::event_z(const std::string& label, const Probability& exact) const {
  auto it = event_counts.find(label);
  if (it == event_counts.end()) throw InvalidParameter("unknown event label '" + label + "'");
  return simulation::z_score(it->second, replications, exact);
}

SimulationReport run_batch(const ShowmasterStrategy& showmaster, const GuestStrategy& guest,
                           std::uint64_t replications, std::uint64_t master_seed, unsigned threads) {
  if (replications == 0) throw InvalidParameter("replications must be at least 1");
  const Cell cell{showmaster, guest};
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, replications));

  std::vector<Counts> parts(threads);
  if (threads == 1) {
    parts[0] = run_range(cell, master_seed, 0, replications);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t begin = replications * t / threads;
      std::uint64_t end = replications * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] { parts[t] = run_range(cell, master_seed, begin, end); });
    }
  }
  Counts total{};
  for (const auto& p : parts)
    for (int k = 0; k < kCounters; ++k) total[k] += p[k];

  SimulationReport r;
  r.config = cell;
  r.master_seed = master_seed;
  r.replications = replications;
  r.wins = total[Win];
  r.win_rate = static_cast<double>(r.wins) / static_cast<double>(replications);
  r.std_error = std::sqrt(r.win_rate * (1 - r.win_rate) / static_cast<double>(replications));
  auto atoms = oracle::enumerate(showmaster, guest);
  r.exact_value = oracle::event_probability(atoms, oracle::events::win);
  r.z_score = z_score(r.wins, replications, r.exact_value);
  for (int k = 0; k < kCounters; ++k) r.event_counts[kLabels[k]] = total[k];
  return r;
}

std::vector<Cell> grid_cells(const std::vector<Probability>& ps, const std::vector<Probability>& qs) {
  std::vector<Cell> cells;
  for (const auto& p : ps)
    for (const auto& q : qs) cells.push_back({ShowmasterStrategy::moody(p), GuestStrategy::mixed(q)});
  return cells;
}

std::vector<SimulationReport> sweep(const std::vector<Cell>& cells, std::uint64_t replications,
                                    std::uint64_t master_seed, unsigned threads) {
  std::vector<SimulationReport> out;
  out.reserve(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k)
    out.push_back(run_batch(cells[k].showmaster, cells[k].guest, replications, rng::derive_seed(master_seed, k),
                            threads));
  return out;
}

bool all_within(const std::vector<SimulationReport>& reports, double z_threshold) {
  return std::all_of(reports.begin(), reports.end(),
                     [&](const SimulationReport& r) { return std::abs(r.z_score) < z_threshold; });
}

void write_reports(std::ostream& out, const std::vector<SimulationReport>& reports, analytics::TableFormat format) {
  using analytics::TableFormat;
  if (format == TableFormat::Text) {
    out << std::left << std::setw(18) << "showmaster" << std::setw(14) << "guest" << std::setw(12) << "n"
        << std::setw(10) << "wins" << std::setw(10) << "win_rate" << std::setw(10) << "std_err" << std::setw(18)
        << "exact" << std::setw(9) << "z" << "opened_mine\n";
    for (const auto& r : reports) {
      out << std::left << std::setw(18) << r.config.showmaster.label() << std::setw(14) << r.config.guest.label()
          << std::setw(12) << r.replications << std::setw(10) << r.wins << std::setw(10) << fmt(r.win_rate, 6)
          << std::setw(10) << fmt(r.std_error, 6) << std::setw(18)
          << (r.exact_value.str() + " (" + r.exact_value.decimal(6) + ")") << std::setw(9) << fmt(r.z_score, 3)
          << r.event_counts.at("opened_mine") << '\n';
    }
    return;
  }
  if (format == TableFormat::Csv) {
    out << "showmaster,guest,master_seed,replications,wins,win_rate,std_error,exact,exact_decimal,z_score";
    for (const char* l : kLabels) out << ',' << l;
    out << '\n';
    for (const auto& r : reports) {
      out << r.config.showmaster.label() << ',' << r.config.guest.label() << ',' << r.master_seed << ','
          << r.replications << ',' << r.wins << ',' << fmt(r.win_rate, 6) << ',' << fmt(r.std_error, 6) << ','
          << r.exact_value.str() << ',' << r.exact_value.decimal(6) << ',' << fmt(r.z_score, 3);
      for (const char* l : kLabels) out << ',' << r.event_counts.at(l);
      out << '\n';
    }
    return;
  }
  for (const auto& r : reports) {
    out << "{\"showmaster\":\"" << r.config.showmaster.label() << "\",\"guest\":\"" << r.config.guest.label()
        << "\",\"master_seed\":" << r.master_seed << ",\"replications\":" << r.replications
        << ",\"wins\":" << r.wins << ",\"win_rate\":" << fmt(r.win_rate, 6) << ",\"std_error\":" << fmt(r.std_error, 6)
        << ",\"exact\":\"" << r.exact_value.str() << "\",\"exact_decimal\":" << r.exact_value.decimal(6)
        << ",\"z_score\":" << (std::isfinite(r.z_score) ? fmt(r.z_score, 3) : "null") << ",\"event_counts\":{";
    bool first = true;
    for (const auto& [label, count] : r.event_counts) {
      out << (first ? "" : ",") << '"' << label << "\":" << count;
      first = false;
    }
    out << "}}\n";
  }
}

}  // namespace montyhall::simulation
