#include "montyhall/oracle.hpp"

#include <iomanip>
#include <ostream>

#include "montyhall/errors.hpp"

namespace montyhall::oracle {
namespace {

struct GuestBranch {
  Rational weight;
  Decision signals;
  Decision plays;
  bool detected;
};

struct MoodBranch {
  Rational weight;
  Mood mood;
};

std::vector<GuestBranch> guest_branches(const GuestStrategy& g, bool host_reads_minds) {
  using K = GuestStrategy::Kind;
  const Rational one(1);
  switch (g.kind) {
    case K::Stay: return {{one, Decision::Stay, Decision::Stay, false}};
    case K::Switch: return {{one, Decision::Switch, Decision::Switch, false}};
    case K::Mixed:
      return {{g.param, Decision::Stay, Decision::Stay, false},
              {g.param.complement(), Decision::Switch, Decision::Switch, false}};
    case K::Actor:
      if (!host_reads_minds) return {{one, Decision::Stay, Decision::Switch, false}};
      return {{g.param, Decision::Stay, Decision::Switch, true},
              {g.param.complement(), Decision::Stay, Decision::Switch, false}};
  }
  return {};
}

std::vector<MoodBranch> mood_branches(const ShowmasterStrategy& s, const GuestBranch& guest, bool holds_car,
                                      ReaderConvention convention) {
  using K = ShowmasterStrategy::Kind;
  const Rational one(1);
  switch (s.kind) {
    case K::Fair: return {{one, Mood::Fair}};
    case K::Evil: return {{one, Mood::Evil}};
    case K::Moody: return {{s.param, Mood::Evil}, {s.param.complement(), Mood::Fair}};
    case K::MindReader: {
      if (guest.detected) return {{one, Mood::Evil}};
      Mood read = Mood::Evil;
      if (guest.signals == Decision::Stay)
        read = Mood::Fair;
      else if (convention == ReaderConvention::Omniscient && holds_car)
        read = Mood::Fair;
      return {{s.param, read}, {s.param.complement(), Mood::Evil}};
    }
  }
  return {};
}

}  // namespace

std::vector<OutcomeAtom> enumerate(const ShowmasterStrategy& showmaster, const GuestStrategy& guest,
                                   ReaderConvention convention) {
  const Rational third(1, 3);
  const bool reads = showmaster.kind == ShowmasterStrategy::Kind::MindReader;
  std::vector<OutcomeAtom> atoms;
  for (int car = 1; car <= kDoorCount; ++car) {
    for (int pick = 1; pick <= kDoorCount; ++pick) {
      for (const GuestBranch& g : guest_branches(guest, reads)) {
        if (g.weight == Rational(0)) continue;
        for (const MoodBranch& m : mood_branches(showmaster, g, car == pick, convention)) {
          if (m.weight == Rational(0)) continue;
          Rational w = third * third * g.weight * m.weight;
          OutcomeAtom base;
          base.car_door = DoorId(car);
          base.initial_pick = DoorId(pick);
          base.sampled_mood = m.mood;
          base.signaled_intent = g.signals;

          if (m.mood == Mood::Evil && car != pick) {
            base.host_action = OpenedGuestDoor{};
            base.outcome = Outcome::Lose;
            base.weight = w;
            atoms.push_back(base);
            continue;
          }
          // The host shows a goat that is not the guest's door.
          std::vector<int> goats;
          for (int d = 1; d <= kDoorCount; ++d)
            if (d != car && d != pick) goats.push_back(d);
          Rational share = Rational(1, static_cast<std::int64_t>(goats.size()));
          for (int opened : goats) {
            OutcomeAtom a = base;
            a.host_action = OpenedOtherDoor{DoorId(opened)};
            a.final_decision = g.plays;
            int final_door = pick;
            if (g.plays == Decision::Switch)
              for (int d = 1; d <= kDoorCount; ++d)
                if (d != pick && d != opened) final_door = d;
            a.outcome = final_door == car ? Outcome::Win : Outcome::Lose;
            a.weight = w * share;
            atoms.push_back(a);
          }
        }
      }
    }
  }
  return atoms;
}

Probability event_probability(std::span<const OutcomeAtom> atoms, const Predicate& event) {
  Rational total;
  for (const auto& a : atoms)
    if (event(a)) total += a.weight;
  return total;
}

Probability conditional_probability(std::span<const OutcomeAtom> atoms, const Predicate& target,
                                    const Predicate& given) {
  Probability denom = event_probability(atoms, given);
  if (denom.value() == Rational(0)) throw ConditioningOnNull("conditioning event has probability zero");
  Probability joint = event_probability(atoms, [&](const OutcomeAtom& a) { return given(a) && target(a); });
  return joint.value() / denom.value();
}

namespace events {
bool win(const OutcomeAtom& a) { return a.outcome == Outcome::Win; }
bool opened_other(const OutcomeAtom& a) { return !opened_guest_door(a.host_action); }
bool opened_mine(const OutcomeAtom& a) { return opened_guest_door(a.host_action); }
bool evil(const OutcomeAtom& a) { return a.sampled_mood == Mood::Evil; }
bool fair(const OutcomeAtom& a) { return a.sampled_mood == Mood::Fair; }
bool car_behind_pick(const OutcomeAtom& a) { return a.car_door == a.initial_pick; }
bool stayed(const OutcomeAtom& a) { return a.final_decision == Decision::Stay; }
bool switched(const OutcomeAtom& a) { return a.final_decision == Decision::Switch; }
}  // namespace events

void write_atom_table(std::ostream& out, std::span<const OutcomeAtom> atoms) {
  out << std::left << std::setw(5) << "car" << std::setw(6) << "pick" << std::setw(6) << "mood" << std::setw(8)
      << "signal" << std::setw(14) << "action" << std::setw(8) << "opened" << std::setw(10) << "decision"
      << std::setw(8) << "outcome" << "weight\n";
  for (const auto& a : atoms) {
    auto* other = std::get_if<OpenedOtherDoor>(&a.host_action);
    out << std::left << std::setw(5) << a.car_door.index() << std::setw(6) << a.initial_pick.index() << std::setw(6)
        << to_string(a.sampled_mood) << std::setw(8) << to_string(a.signaled_intent) << std::setw(14)
        << action_label(a.host_action) << std::setw(8) << (other ? std::to_string(other->door.index()) : "-")
        << std::setw(10) << (a.final_decision ? std::string(to_string(*a.final_decision)) : "-") << std::setw(8)
        << to_string(a.outcome) << a.weight.str() << '\n';
  }
}

}  // namespace montyhall::oracle
