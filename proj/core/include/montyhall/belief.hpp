#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "montyhall/analytics.hpp"
#include "montyhall/game.hpp"

namespace montyhall::belief {

/// Guest-side beliefs about the host's mood and about the car being behind
/// the guest's own door. Immutable; update() returns a new state.
struct BeliefState {
  Probability prior_evil;
  Probability posterior_evil;
  Probability posterior_car_own_door;
  std::vector<HostAction> observations;

  /// Before any observation the car is behind the guest's door with 1/3.
  static BeliefState from_prior(const Probability& prior_evil);
};

/// Bayes update with the likelihoods
///   P(other | fair) = 1,   P(my | fair) = 0,
///   P(other | evil) = 1/3, P(my | evil) = 2/3,
/// treating the current posterior as the prior for this observation.
BeliefState update(const BeliefState& state, const HostAction& action);

/// Stay/Switch by comparing the car-behind-own-door posterior with 1/2.
/// Throws NoChoiceAvailable unless the latest observation is an
/// OpenedOtherDoor.
analytics::Response recommend(const BeliefState& state);

struct PEstimate {
  Probability point;  ///< min(1, 3/2 * frequency of opened_mine)
  double lower = 0;   ///< 95% Wilson interval on the frequency, scaled by 3/2, clamped to [0,1]
  double upper = 0;
  std::uint64_t games = 0;
  std::uint64_t opened_mine = 0;

  bool covers(double p) const { return lower <= p && p <= upper; }
};

/// Method-of-moments estimate of a moody host's evil frequency from an
/// archive, using P(my) = 2p/3. Throws EmptyArchive on an empty archive.
PEstimate estimate_p(std::span<const GameTranscript> transcripts);

/// One JSON object per observation: step, action, posterior_evil,
/// posterior_car (each as "a/b" plus a *_decimal field).
void write_trace(std::ostream& out, const BeliefState& initial, std::span<const HostAction> actions);

}  // namespace montyhall::belief
