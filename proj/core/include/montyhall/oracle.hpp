#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "montyhall/game.hpp"
#include "montyhall/rational.hpp"

namespace montyhall::oracle {

/// How a mind reader treats a guest it reads as a switcher.
///  Engine:     plays Evil (the engine's host cannot see the car).
///  Omniscient: plays Fair when the guest holds the car and would switch
///              away to a goat, Evil otherwise.
/// Both open the same doors with the same odds; only the mood label differs.
enum class ReaderConvention { Engine, Omniscient };

/// One leaf of the outcome tree: a transcript without a seed, plus its
/// exact probability.
struct OutcomeAtom {
  DoorId car_door{1};
  DoorId initial_pick{1};
  Mood sampled_mood = Mood::Fair;
  Decision signaled_intent = Decision::Stay;
  HostAction host_action = OpenedGuestDoor{};
  std::optional<Decision> final_decision;
  Outcome outcome = Outcome::Lose;
  Rational weight;
};

/// Every leaf of car placement x initial pick x guest coin x detection coin
/// x mood/reader coin x tie-break, zero-weight branches pruned.
std::vector<OutcomeAtom> enumerate(const ShowmasterStrategy& showmaster, const GuestStrategy& guest,
                                   ReaderConvention convention = ReaderConvention::Engine);

using Predicate = std::function<bool(const OutcomeAtom&)>;

Probability event_probability(std::span<const OutcomeAtom> atoms, const Predicate& event);

/// P(target | given). Throws ConditioningOnNull when P(given) = 0.
Probability conditional_probability(std::span<const OutcomeAtom> atoms, const Predicate& target,
                                    const Predicate& given);

namespace events {
bool win(const OutcomeAtom& a);
bool opened_other(const OutcomeAtom& a);
bool opened_mine(const OutcomeAtom& a);
bool evil(const OutcomeAtom& a);
bool fair(const OutcomeAtom& a);
bool car_behind_pick(const OutcomeAtom& a);
bool stayed(const OutcomeAtom& a);
bool switched(const OutcomeAtom& a);
}  // namespace events

/// Aligned text dump, one atom per line, for auditing.
void write_atom_table(std::ostream& out, std::span<const OutcomeAtom> atoms);

}  // namespace montyhall::oracle
