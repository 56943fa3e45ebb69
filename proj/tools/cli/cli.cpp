#include "cli.hpp"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "montyhall/analytics.hpp"
#include "montyhall/belief.hpp"
#include "montyhall/errors.hpp"
#include "montyhall/oracle.hpp"
#include "montyhall/rng.hpp"
#include "montyhall/service/http_api.hpp"
#include "montyhall/simulation.hpp"
#include "montyhall/transcript_io.hpp"

namespace montyhall::cli {
namespace {

using analytics::TableFormat;

TableFormat parse_format(const std::string& s) {
  if (s == "text" || s == "table") return TableFormat::Text;
  if (s == "csv") return TableFormat::Csv;
  if (s == "jsonl") return TableFormat::Jsonl;
  throw InvalidParameter("unknown format '" + s + "'");
}

struct StrategyFlags {
  std::string host = "fair";
  std::vector<std::string> p{"1/2"};
  std::string accuracy = "1";
  std::string guest = "stay";
  std::vector<std::string> q{"1/2"};
  std::string detection = "0";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--host", host, "fair | evil | moody | mind-reader, or a label such as moody(1/2)");
    cmd->add_option("--p", p, "P(evil) for a moody host: value, list or range")->expected(1, 3);
    cmd->add_option("--accuracy", accuracy, "mind reader accuracy");
    cmd->add_option("--guest", guest, "stay | switch | mixed | actor, or a label such as mixed(1/3)");
    cmd->add_option("--q", q, "P(stay) for a mixed guest: value, list or range")->expected(1, 3);
    cmd->add_option("--detection", detection, "detection risk for an acting guest");
  }

  std::vector<ShowmasterStrategy> hosts() const {
    if (host == "moody") {
      std::vector<ShowmasterStrategy> out;
      for (const auto& v : parse_grid(p)) out.push_back(ShowmasterStrategy::moody(v));
      return out;
    }
    if (host == "mind-reader" || host == "mind_reader")
      return {ShowmasterStrategy::mind_reader(Probability::parse(accuracy))};
    return {parse_showmaster(host)};
  }

  std::vector<GuestStrategy> guests() const {
    if (guest == "mixed") {
      std::vector<GuestStrategy> out;
      for (const auto& v : parse_grid(q)) out.push_back(GuestStrategy::mixed(v));
      return out;
    }
    if (guest == "actor") return {GuestStrategy::actor(Probability::parse(detection))};
    return {parse_guest(guest)};
  }
};

int cmd_simulate(const StrategyFlags& f, std::uint64_t n, std::uint64_t seed, unsigned threads,
                 const std::string& format, double z_threshold, std::ostream& out, std::ostream& err) {
  std::vector<simulation::Cell> cells;
  for (const auto& h : f.hosts())
    for (const auto& g : f.guests()) cells.push_back({h, g});
  std::vector<simulation::SimulationReport> reports;
  if (cells.size() == 1)
    reports.push_back(simulation::run_batch(cells[0].showmaster, cells[0].guest, n, seed, threads));
  else
    reports = simulation::sweep(cells, n, seed, threads);
  simulation::write_reports(out, reports, parse_format(format));
  if (!simulation::all_within(reports, z_threshold)) {
    err << "z-threshold " << z_threshold << " exceeded\n";
    return kExitThreshold;
  }
  return kExitOk;
}

void print_equilibrium(std::ostream& out) {
  auto ip = analytics::indifference_point();
  out << "indifference point p = " << ip.p.str() << " (" << ip.p.decimal(6) << ")\n"
      << "bisection: " << ip.search.steps << " steps on [0, 1], bracket [" << ip.search.lo.str() << ", "
      << ip.search.hi.str() << "]" << (ip.search.exact_root ? ", exact root" : "") << '\n'
      << "payoff gap win_switch - win_stay at p: " << ip.payoff_gap.str() << '\n'
      << "win_stay = win_switch = " << analytics::win_stay(ip.p).str() << '\n';
}

void print_posteriors(std::ostream& out, const std::vector<Probability>& ps, TableFormat format) {
  static const char* kCols[] = {"p", "prob_other", "prob_my", "posterior_evil", "posterior_fair", "posterior_car",
                                "recommend"};
  auto row = [](const Probability& p) {
    using namespace analytics;
    return std::vector<Probability>{p,
                                    prob_other(p),
                                    prob_my(p),
                                    posterior_evil_given_other(p),
                                    posterior_fair_given_other(p),
                                    posterior_car_given_other(p)};
  };
  if (format == TableFormat::Jsonl) {
    for (const auto& p : ps) {
      auto vs = row(p);
      out << '{';
      for (std::size_t i = 0; i < vs.size(); ++i)
        out << (i ? "," : "") << '"' << kCols[i] << "\":\"" << vs[i].str() << "\",\"" << kCols[i]
            << "_decimal\":" << vs[i].decimal(6);
      out << ",\"recommend\":\"" << analytics::to_string(analytics::best_response(p)) << "\"}\n";
    }
    return;
  }
  const bool csv = format == TableFormat::Csv;
  for (std::size_t i = 0; i < std::size(kCols); ++i) {
    if (csv)
      out << (i ? "," : "") << kCols[i];
    else
      out << std::left << std::setw(22) << kCols[i];
  }
  out << '\n';
  for (const auto& p : ps) {
    for (const auto& v : row(p)) {
      if (csv)
        out << v.str() << ',';
      else
        out << std::left << std::setw(22) << (v.str() + " (" + v.decimal(6) + ")");
    }
    out << analytics::to_string(analytics::best_response(p)) << '\n';
  }
}

void print_mind_reader(std::ostream& out, const std::vector<Probability>& qs) {
  out << std::left << std::setw(22) << "q" << std::setw(22) << "win_rate" << "open_rate\n";
  auto cell = [](const Probability& v) { return v.str() + " (" + v.decimal(6) + ")"; };
  for (const auto& q : qs) {
    out << std::left << std::setw(22) << cell(q) << std::setw(22) << cell(analytics::mind_reader_win_rate(q))
        << cell(analytics::mind_reader_open_rate(q)) << '\n';
  }
}

httplib::Server* g_server = nullptr;

void stop_server(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const std::string& listen, int port, const std::string& archive, const std::string& static_dir,
              std::ostream& out, std::ostream& err) {
  std::optional<std::filesystem::path> archive_path;
  if (!archive.empty()) archive_path = archive;
  service::SessionManager sessions(archive_path);
  httplib::Server server;
  service::register_routes(server, sessions);
  server.set_tcp_nodelay(true);
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    err << "static directory not found: " << static_dir << '\n';
    return kExitUsage;
  }
  g_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  out << "listening on http://" << listen << ':' << port << "/api/v1" << std::endl;
  bool ok = server.listen(listen, port);
  g_server = nullptr;
  if (!ok && !server.is_running()) {
    err << "could not listen on " << listen << ':' << port << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

std::vector<Probability> parse_grid(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw InvalidParameter("empty grid");
  std::string range = tokens[0];
  std::string step;
  if (tokens.size() == 3) {
    if (tokens[1] != "step") throw InvalidParameter("expected 'from..to step s'");
    step = tokens[2];
  } else if (tokens.size() != 1) {
    throw InvalidParameter("expected a value, a list or 'from..to step s'");
  }
  if (auto colon = range.find(':'); colon != std::string::npos && step.empty()) {
    step = range.substr(colon + 1);
    range = range.substr(0, colon);
  }
  if (auto dots = range.find(".."); dots != std::string::npos) {
    if (step.empty()) throw InvalidParameter("range '" + range + "' needs a step");
    return analytics::grid(Probability::parse(range.substr(0, dots)), Probability::parse(range.substr(dots + 2)),
                           Rational::parse(step));
  }
  if (!step.empty()) throw InvalidParameter("step given without a range");
  std::vector<Probability> out;
  std::size_t start = 0;
  while (true) {
    auto comma = range.find(',', start);
    out.push_back(Probability::parse(range.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monty Hall laboratory: exact analytics, Monte Carlo checks and live play"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo batch or sweep with exact comparison");
  StrategyFlags sim_flags;
  sim_flags.add_to(sim);
  std::uint64_t sim_n = 0, sim_seed = 1;
  unsigned sim_threads = 0;
  std::string sim_format = "text";
  double z_threshold = 5.0;
  sim->add_option("--n", sim_n, "replications per cell")->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "master seed");
  sim->add_option("--threads", sim_threads, "worker threads (0 = hardware concurrency)");
  sim->add_option("--format", sim_format, "text | csv | jsonl");
  sim->add_option("--z-threshold", z_threshold, "fail when any |z| reaches this value");

  // analyze / optimize
  auto* ana = app.add_subcommand("analyze", "exact payoff and posterior tables");
  std::vector<std::string> ana_p{"0..1", "step", "1/4"};
  std::vector<std::string> ana_q{"1/2"};
  std::string p_offset = "0";
  bool posteriors = false, equilibrium = false, mind_reader = false;
  std::string ana_format = "text";
  ana->add_option("--p", ana_p, "P(evil) grid")->expected(1, 3);
  ana->add_option("--q", ana_q, "P(stay) grid")->expected(1, 3);
  ana->add_option("--p-offset", p_offset, "shift every p by this margin (cells leaving [0,1] are dropped)");
  ana->add_flag("--posteriors", posteriors, "posterior table after the host's action");
  ana->add_flag("--equilibrium", equilibrium, "search for the indifference point");
  ana->add_flag("--mind-reader", mind_reader, "perfect mind reader win and door-opening rates over q");
  ana->add_option("--format", ana_format, "text | csv | jsonl");
  auto* opt = app.add_subcommand("optimize", "indifference point search (same as analyze --equilibrium)");

  // export
  auto* exp = app.add_subcommand("export", "write game transcripts as JSONL, or the exact atom table");
  StrategyFlags exp_flags;
  exp_flags.add_to(exp);
  std::uint64_t exp_n = 1000, exp_seed = 1;
  std::string exp_out;
  bool atoms = false, omniscient = false;
  exp->add_option("--n", exp_n, "number of games")->check(CLI::PositiveNumber);
  exp->add_option("--seed", exp_seed, "master seed; game i uses derive_seed(seed, i)");
  exp->add_option("--out", exp_out, "output file (default stdout)");
  exp->add_flag("--atoms", atoms, "dump the exact outcome tree instead of sampled games");
  exp->add_flag("--omniscient-reader", omniscient, "atom table with the car-aware mind reader");

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate a moody host's P(evil) from a transcript archive");
  std::string est_archive;
  est->add_option("--archive", est_archive, "JSONL archive")->required()->check(CLI::ExistingFile);

  // serve
  auto* srv = app.add_subcommand("serve", "HTTP JSON API for live sessions");
  std::string listen = "127.0.0.1", archive, static_dir;
  int port = 8080;
  srv->add_option("--listen", listen, "listen address")->envname("MONTYHALL_LISTEN");
  srv->add_option("--port", port, "listen port")->envname("MONTYHALL_PORT")->check(CLI::Range(0, 65535));
  srv->add_option("--archive", archive, "append finished games to this JSONL file")->envname("MONTYHALL_ARCHIVE");
  srv->add_option("--static-dir", static_dir, "serve a browser client from this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*sim) return cmd_simulate(sim_flags, sim_n, sim_seed, sim_threads, sim_format, z_threshold, out, err);
    if (*opt) {
      print_equilibrium(out);
      return kExitOk;
    }
    if (*ana) {
      TableFormat format = parse_format(ana_format);
      if (equilibrium) {
        print_equilibrium(out);
        return kExitOk;
      }
      auto ps = parse_grid(ana_p);
      auto qs = parse_grid(ana_q);
      if (mind_reader) {
        print_mind_reader(out, qs);
        return kExitOk;
      }
      if (posteriors) {
        std::vector<Probability> shifted;
        Rational offset = Rational::parse(p_offset);
        for (const auto& p : ps)
          if (p.value() + offset >= Rational(0) && p.value() + offset <= Rational(1)) shifted.emplace_back(p.value() + offset);
        print_posteriors(out, shifted, format);
        return kExitOk;
      }
      analytics::write_sweep(out, analytics::sweep(ps, qs, Rational::parse(p_offset)), format);
      return kExitOk;
    }
    if (*exp) {
      auto hosts = exp_flags.hosts();
      auto guests = exp_flags.guests();
      if (hosts.size() != 1 || guests.size() != 1) throw InvalidParameter("export takes a single p and q");
      std::ofstream file;
      if (!exp_out.empty()) {
        file.open(exp_out);
        if (!file) throw InvalidParameter("cannot write " + exp_out);
      }
      std::ostream& sink = exp_out.empty() ? out : file;
      if (atoms) {
        auto conv = omniscient ? oracle::ReaderConvention::Omniscient : oracle::ReaderConvention::Engine;
        oracle::write_atom_table(sink, oracle::enumerate(hosts[0], guests[0], conv));
        return kExitOk;
      }
      for (std::uint64_t i = 0; i < exp_n; ++i)
        sink << to_json_line(play_game(hosts[0], guests[0], rng::derive_seed(exp_seed, i))) << '\n';
      return kExitOk;
    }
    if (*est) {
      std::ifstream in(est_archive);
      auto transcripts = read_jsonl(in);
      auto e = belief::estimate_p(transcripts);
      out << "games " << e.games << ", opened_mine " << e.opened_mine << '\n'
          << "p_hat " << e.point.str() << " (" << e.point.decimal(6) << "), 95% interval [" << std::fixed
          << std::setprecision(6) << e.lower << ", " << e.upper << "]\n";
      return kExitOk;
    }
    if (*srv) return cmd_serve(listen, port, archive, static_dir, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == std::string_view("InvalidParameter") ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace montyhall::cli
