#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "montyhall/rational.hpp"

namespace montyhall::analytics {

// Closed-form payoffs and posteriors. p = P(evil) of a moody host,
// q = P(stay) of the guest population. Everything is exact.

/// Staying wins exactly when the first pick hid the car: 1/3 for every p.
Probability win_stay(const Probability& p);
/// 2(1 - p)/3
Probability win_switch(const Probability& p);
/// q * win_stay(p) + (1 - q) * win_switch(p) = (2 - 2p - q + 2pq)/3
Probability win_probability(const Probability& p, const Probability& q);

/// Marginal chance that the host opens another door: (3 - 2p)/3.
Probability prob_other(const Probability& p);
/// Marginal chance that the host opens the guest's own door: 2p/3.
Probability prob_my(const Probability& p);

/// p / (3 - 2p)
Probability posterior_evil_given_other(const Probability& p);
/// (3 - 3p) / (3 - 2p)
Probability posterior_fair_given_other(const Probability& p);
/// A fair host never opens the guest's door, so this is always 1.
Probability posterior_evil_given_my();
/// 1 / (3 - 2p): chance the car is behind the guest's own door after
/// another door was opened.
Probability posterior_car_given_other(const Probability& p);

/// Perfect mind reader against a population staying with frequency q.
Probability mind_reader_win_rate(const Probability& q);
/// Door-opening rate of the perfect reader: q + (1 - q)/3 = (1 + 2q)/3.
Probability mind_reader_open_rate(const Probability& q);

enum class Response { Stay, Switch, Indifferent };
std::string_view to_string(Response r);

/// Sign of win_switch(p) - 1/3.
Response best_response(const Probability& p);

struct BisectionTrace {
  Rational lo;
  Rational hi;
  int steps = 0;
  bool exact_root = false;  ///< a midpoint hit a zero of the payoff gap
};

/// Bisection over rational midpoints for the root of a strictly decreasing
/// gap function on [lo, hi]. Stops early when a midpoint is an exact root.
template <class Gap>
BisectionTrace bisect_decreasing(Gap&& gap, Rational lo, Rational hi, int max_steps) {
  BisectionTrace t{lo, hi, 0, false};
  for (; t.steps < max_steps && t.lo != t.hi; ++t.steps) {
    Rational mid = (t.lo + t.hi) / Rational(2);
    int s = gap(mid).sign();
    if (s == 0) {
      t.lo = t.hi = mid;
      t.exact_root = true;
      ++t.steps;
      break;
    }
    (s > 0 ? t.lo : t.hi) = mid;
  }
  return t;
}

struct IndifferencePoint {
  Probability p;
  BisectionTrace search;
  Rational payoff_gap;  ///< win_switch(p) - win_stay(p) at the returned point
};

/// Searches [0,1] for the p at which staying and switching pay the same
/// (60 bisection steps at most) and checks the result against the closed
/// form 1/2.
IndifferencePoint indifference_point();

struct SweepRow {
  Probability p;
  Probability q;
  Probability win_stay;
  Probability win_switch;
  Probability win;
  Probability posterior_evil;
  Probability posterior_car;
};

/// Rows for every (p + p_offset, q) in the grid; shifted p values that leave
/// [0,1] are dropped.
std::vector<SweepRow> sweep(const std::vector<Probability>& ps, const std::vector<Probability>& qs,
                            const Rational& p_offset = Rational(0));

enum class TableFormat { Text, Csv, Jsonl };

/// Rationals are rendered as "a/b" followed by a 6-place decimal.
void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows, TableFormat format);

/// Evenly spaced grid "from..to step s" including both ends when they are
/// reached exactly.
std::vector<Probability> grid(const Probability& from, const Probability& to, const Rational& step);
/// Every fraction a/b in [0,1] with 1 <= b <= max_den, deduplicated and sorted.
std::vector<Probability> farey_grid(int max_den);

}  // namespace montyhall::analytics
