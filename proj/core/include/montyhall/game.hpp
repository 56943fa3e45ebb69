#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "montyhall/rational.hpp"

namespace montyhall {

/// One of the three doors, numbered 1..3.
class DoorId {
 public:
  explicit DoorId(int index);
  int index() const { return index_; }
  friend bool operator==(DoorId, DoorId) = default;
  friend auto operator<=>(DoorId, DoorId) = default;

 private:
  int index_;
};

inline constexpr int kDoorCount = 3;

enum class Mood { Fair, Evil };
enum class Decision { Stay, Switch };
enum class Outcome { Win, Lose };

std::string_view to_string(Mood m);
std::string_view to_string(Decision d);
std::string_view to_string(Outcome o);
Mood parse_mood(std::string_view s);
Decision parse_decision(std::string_view s);
Outcome parse_outcome(std::string_view s);

struct ShowmasterStrategy {
  enum class Kind { Fair, Evil, Moody, MindReader };
  Kind kind = Kind::Fair;
  /// P(evil) for Moody, reading accuracy for MindReader; unused otherwise.
  Probability param;

  static ShowmasterStrategy fair() { return {Kind::Fair, {}}; }
  static ShowmasterStrategy evil() { return {Kind::Evil, {}}; }
  static ShowmasterStrategy moody(Probability p) { return {Kind::Moody, p}; }
  static ShowmasterStrategy mind_reader(Probability accuracy) { return {Kind::MindReader, accuracy}; }

  /// "fair", "evil", "moody(1/2)", "mind_reader(1)"
  std::string label() const;
  friend bool operator==(const ShowmasterStrategy&, const ShowmasterStrategy&) = default;
};

struct GuestStrategy {
  enum class Kind { Stay, Switch, Mixed, Actor };
  Kind kind = Kind::Stay;
  /// P(stay) for Mixed, detection risk for Actor; unused otherwise.
  Probability param;

  static GuestStrategy stay() { return {Kind::Stay, {}}; }
  static GuestStrategy switcher() { return {Kind::Switch, {}}; }
  static GuestStrategy mixed(Probability q) { return {Kind::Mixed, q}; }
  static GuestStrategy actor(Probability detection_risk) { return {Kind::Actor, detection_risk}; }

  std::string label() const;
  friend bool operator==(const GuestStrategy&, const GuestStrategy&) = default;
};

/// Parses labels as produced by label(); the parameter accepts "a/b" or decimals.
ShowmasterStrategy parse_showmaster(std::string_view label);
GuestStrategy parse_guest(std::string_view label);

struct OpenedOtherDoor {
  DoorId door;
  friend bool operator==(const OpenedOtherDoor&, const OpenedOtherDoor&) = default;
};
struct OpenedGuestDoor {
  friend bool operator==(const OpenedGuestDoor&, const OpenedGuestDoor&) = default;
};
using HostAction = std::variant<OpenedOtherDoor, OpenedGuestDoor>;

inline bool opened_guest_door(const HostAction& a) { return std::holds_alternative<OpenedGuestDoor>(a); }
/// "opened_other" or "opened_mine"
std::string_view action_label(const HostAction& a);

struct GameTranscript {
  std::uint64_t seed = 0;
  ShowmasterStrategy showmaster;
  GuestStrategy guest;
  DoorId car_door{1};
  DoorId initial_pick{1};
  Mood sampled_mood = Mood::Fair;
  Decision signaled_intent = Decision::Stay;
  HostAction host_action = OpenedGuestDoor{};
  std::optional<Decision> final_decision;
  Outcome outcome = Outcome::Lose;

  friend bool operator==(const GameTranscript&, const GameTranscript&) = default;
};

/// Raw words drawn from the per-game generator, in this fixed order:
/// car placement, initial pick, guest coin, reader coin, mood coin,
/// detection coin, tie-break. Every word is drawn for every game whether
/// or not the strategies consult it, so the stream layout never shifts.
struct GameDraws {
  enum Slot { Car, Pick, GuestCoin, ReaderCoin, MoodCoin, DetectionCoin, TieBreak, Count };
  std::array<std::uint64_t, Count> words{};

  static GameDraws from_seed(std::uint64_t seed);
  std::uint64_t operator[](Slot s) const { return words[s]; }
};

/// Host door choice given the mood. `tie_break` selects between the two goat
/// doors when the guest picked the car (below 2^63 -> lower-numbered door).
HostAction host_act(Mood mood, DoorId car_door, DoorId initial_pick, std::uint64_t tie_break);

/// Reads `signaled` with probability `accuracy` (Stay -> Fair, Switch -> Evil);
/// an unsure reader plays Evil.
Mood resolve_mind_reader(const Probability& accuracy, Decision signaled, std::uint64_t reader_coin);

/// Inputs a caller may pin instead of drawing them from the seed. The
/// corresponding draws are still consumed.
struct PlayOverrides {
  std::optional<DoorId> initial_pick;
  std::optional<Decision> signaled_intent;
};

GameTranscript play_game(const ShowmasterStrategy& showmaster, const GuestStrategy& guest, std::uint64_t seed,
                         const PlayOverrides& overrides = {});

/// An acting guest (signals Stay, plays Switch) against a mind reader.
GameTranscript actor_game(const Probability& detection_risk, const Probability& reader_accuracy,
                          std::uint64_t seed);

/// Re-runs the engine with the inputs recorded in `t`. Returns true when the
/// replay reproduces `t` field for field.
bool replays_identically(const GameTranscript& t);

/// Stepwise form of one game for interactive play: the car is placed at
/// construction, the host acts on pick(), the guest resolves with decide().
class GameRound {
 public:
  enum class Phase { AwaitingPick, AwaitingDecision, Finished };

  GameRound(ShowmasterStrategy showmaster, std::uint64_t seed);

  Phase phase() const { return phase_; }
  std::uint64_t seed() const { return seed_; }
  const GameDraws& draws() const { return draws_; }
  const ShowmasterStrategy& showmaster() const { return showmaster_; }

  /// Initial pick the seed would choose for a simulated guest.
  DoorId drawn_pick() const;

  /// Guest picks `door` and signals `intent`. For a MindReader host,
  /// `detected_act` forces the Evil mood (an acting guest was caught).
  const HostAction& pick(DoorId door, Decision intent, bool detected_act = false);
  Outcome decide(Decision d);

  DoorId car_door() const { return car_; }
  std::optional<DoorId> initial_pick() const { return pick_; }
  std::optional<Mood> mood() const { return mood_; }
  std::optional<HostAction> host_action() const { return action_; }
  std::optional<Decision> signaled_intent() const { return intent_; }
  std::optional<Decision> final_decision() const { return decision_; }
  std::optional<Outcome> outcome() const { return outcome_; }

  GameTranscript transcript(const GuestStrategy& guest) const;

 private:
  ShowmasterStrategy showmaster_;
  std::uint64_t seed_;
  GameDraws draws_;
  Phase phase_ = Phase::AwaitingPick;
  DoorId car_;
  std::optional<DoorId> pick_;
  std::optional<Mood> mood_;
  std::optional<Decision> intent_;
  std::optional<HostAction> action_;
  std::optional<Decision> decision_;
  std::optional<Outcome> outcome_;
};

}  // namespace montyhall
