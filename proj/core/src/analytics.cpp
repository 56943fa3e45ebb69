#include "montyhall/analytics.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "montyhall/errors.hpp"

namespace montyhall::analytics {
namespace {

const Rational kThird(1, 3);
const Rational kTwoThirds(2, 3);

}  // namespace

Probability win_stay(const Probability&) { return kThird; }

Probability win_switch(const Probability& p) { return kTwoThirds * p.complement(); }

Probability win_probability(const Probability& p, const Probability& q) {
  return (Rational(2) - Rational(2) * p - q + Rational(2) * p * q) / Rational(3);
}

Probability prob_other(const Probability& p) { return (Rational(3) - Rational(2) * p) / Rational(3); }

Probability prob_my(const Probability& p) { return Rational(2) * p / Rational(3); }

Probability posterior_evil_given_other(const Probability& p) { return p / (Rational(3) - Rational(2) * p); }

Probability posterior_fair_given_other(const Probability& p) {
  return (Rational(3) - Rational(3) * p) / (Rational(3) - Rational(2) * p);
}

Probability posterior_evil_given_my() { return Rational(1); }

Probability posterior_car_given_other(const Probability& p) { return Rational(1) / (Rational(3) - Rational(2) * p); }

Probability mind_reader_win_rate(const Probability& q) { return q / Rational(3); }

Probability mind_reader_open_rate(const Probability& q) {
  // stayers always see another door; switchers only when they hold the car
  return q + q.complement() * kThird;
}

std::string_view to_string(Response r) {
  switch (r) {
    case Response::Stay: return "stay";
    case Response::Switch: return "switch";
    case Response::Indifferent: return "indifferent";
  }
  return "?";
}

Response best_response(const Probability& p) {
  int s = (win_switch(p).value() - win_stay(p).value()).sign();
  if (s > 0) return Response::Switch;
  if (s < 0) return Response::Stay;
  return Response::Indifferent;
}

IndifferencePoint indifference_point() {
  auto gap = [](const Rational& p) { return win_switch(p).value() - win_stay(p).value(); };
  BisectionTrace t = bisect_decreasing(gap, Rational(0), Rational(1), 60);
  if (t.lo != t.hi) throw std::logic_error("indifference search did not collapse");
  Probability p = t.lo;
  Rational g = gap(p);
  if (g != Rational(0) || p != Probability(1, 2))
    throw std::logic_error("indifference point disagrees with the closed form: " + p.str());
  return {p, t, g};
}

std::vector<SweepRow> sweep(const std::vector<Probability>& ps, const std::vector<Probability>& qs,
                            const Rational& p_offset) {
  std::vector<SweepRow> rows;
  for (const auto& p0 : ps) {
    Rational shifted = p0.value() + p_offset;
    if (shifted < Rational(0) || shifted > Rational(1)) continue;
    Probability p = shifted;
    for (const auto& q : qs) {
      rows.push_back({p, q, win_stay(p), win_switch(p), win_probability(p, q), posterior_evil_given_other(p),
                      posterior_car_given_other(p)});
    }
  }
  return rows;
}

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows, TableFormat format) {
  static const char* kColumns[] = {"p", "q", "win_stay", "win_switch", "win", "posterior_evil", "posterior_car"};
  auto cells = [](const SweepRow& r) {
    return std::vector<const Probability*>{&r.p, &r.q, &r.win_stay, &r.win_switch, &r.win, &r.posterior_evil,
                                           &r.posterior_car};
  };
  switch (format) {
    case TableFormat::Text: {
      for (const char* c : kColumns) out << std::left << std::setw(20) << c;
      out << '\n';
      for (const auto& r : rows) {
        for (const Probability* v : cells(r))
          out << std::left << std::setw(20) << (v->str() + " (" + v->decimal(6) + ")");
        out << '\n';
      }
      break;
    }
    case TableFormat::Csv: {
      for (std::size_t i = 0; i < std::size(kColumns); ++i)
        out << (i ? "," : "") << kColumns[i] << ',' << kColumns[i] << "_decimal";
      out << '\n';
      for (const auto& r : rows) {
        bool first = true;
        for (const Probability* v : cells(r)) {
          out << (first ? "" : ",") << v->str() << ',' << v->decimal(6);
          first = false;
        }
        out << '\n';
      }
      break;
    }
    case TableFormat::Jsonl: {
      for (const auto& r : rows) {
        out << '{';
        auto vs = cells(r);
        for (std::size_t i = 0; i < vs.size(); ++i) {
          out << (i ? "," : "") << '"' << kColumns[i] << "\":\"" << vs[i]->str() << "\",\"" << kColumns[i]
              << "_decimal\":" << vs[i]->decimal(6);
        }
        out << "}\n";
      }
      break;
    }
  }
}

std::vector<Probability> grid(const Probability& from, const Probability& to, const Rational& step) {
  if (step <= Rational(0)) throw InvalidParameter("grid step must be positive");
  if (to < from) throw InvalidParameter("grid end lies before its start");
  std::vector<Probability> out;
  for (Rational v = from; v <= to.value(); v += step) out.emplace_back(v);
  return out;
}

std::vector<Probability> farey_grid(int max_den) {
  std::vector<Probability> out;
  for (int b = 1; b <= max_den; ++b)
    for (int a = 0; a <= b; ++a) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace montyhall::analytics
