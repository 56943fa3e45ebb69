#include "montyhall/belief.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "montyhall/errors.hpp"

namespace montyhall::belief {

BeliefState BeliefState::from_prior(const Probability& prior_evil) {
  return {prior_evil, prior_evil, Probability(1, 3), {}};
}

BeliefState update(const BeliefState& state, const HostAction& action) {
  BeliefState next = state;
  next.observations.push_back(action);
  if (opened_guest_door(action)) {
    // Only an evil host opens the guest's door, and it only does so on a goat.
    next.posterior_evil = Rational(1);
    next.posterior_car_own_door = Rational(0);
    return next;
  }
  const Rational& evil = state.posterior_evil.value();
  Rational joint_evil = Rational(1, 3) * evil;
  Rational joint_fair = Rational(1) * (Rational(1) - evil);
  next.posterior_evil = joint_evil / (joint_evil + joint_fair);
  // Car behind own door: any host opens another door. Goat: only a fair one does.
  Rational joint_car = Rational(1, 3);
  Rational joint_goat = Rational(2, 3) * (Rational(1) - evil);
  next.posterior_car_own_door = joint_car / (joint_car + joint_goat);
  return next;
}

analytics::Response recommend(const BeliefState& state) {
  if (state.observations.empty()) throw NoChoiceAvailable("the host has not opened a door yet");
  if (opened_guest_door(state.observations.back()))
    throw NoChoiceAvailable("the host opened the guest's door; the game is over");
  int s = (state.posterior_car_own_door.value() - Rational(1, 2)).sign();
  if (s < 0) return analytics::Response::Switch;
  if (s > 0) return analytics::Response::Stay;
  return analytics::Response::Indifferent;
}

PEstimate estimate_p(std::span<const GameTranscript> transcripts) {
  if (transcripts.empty()) throw EmptyArchive("cannot estimate p from an empty archive");
  PEstimate e;
  e.games = transcripts.size();
  e.opened_mine = static_cast<std::uint64_t>(std::count_if(
      transcripts.begin(), transcripts.end(), [](const GameTranscript& t) { return opened_guest_door(t.host_action); }));
  Rational scaled = Rational(3, 2) * Rational(static_cast<std::int64_t>(e.opened_mine), static_cast<std::int64_t>(e.games));
  e.point = std::min(scaled, Rational(1));

  // Wilson score interval, z = 1.96.
  const double z = 1.959963984540054;
  const double n = static_cast<double>(e.games);
  const double f = static_cast<double>(e.opened_mine) / n;
  const double denom = 1 + z * z / n;
  const double centre = (f + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(f * (1 - f) / n + z * z / (4 * n * n)) / denom;
  e.lower = std::clamp(1.5 * (centre - half), 0.0, 1.0);
  e.upper = std::clamp(1.5 * (centre + half), 0.0, 1.0);
  return e;
}

void write_trace(std::ostream& out, const BeliefState& initial, std::span<const HostAction> actions) {
  BeliefState s = initial;
  int step = 0;
  for (const HostAction& a : actions) {
    s = update(s, a);
    out << "{\"step\":" << ++step << ",\"action\":\"" << action_label(a) << "\",\"posterior_evil\":\""
        << s.posterior_evil.str() << "\",\"posterior_evil_decimal\":" << s.posterior_evil.decimal(6)
        << ",\"posterior_car\":\"" << s.posterior_car_own_door.str()
        << "\",\"posterior_car_decimal\":" << s.posterior_car_own_door.decimal(6) << "}\n";
  }
}

}  // namespace montyhall::belief
