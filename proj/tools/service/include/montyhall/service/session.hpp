#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "montyhall/belief.hpp"
#include "montyhall/game.hpp"

namespace montyhall::service {

inline constexpr int kSchemaVersion = 1;

/// Laplace-smoothed record of a player's past decisions.
struct AdaptiveReaderModel {
  std::uint64_t stay_count = 0;
  std::uint64_t switch_count = 0;

  /// (stay_count + 1) / (stay_count + switch_count + 2)
  Probability propensity() const;
  /// Stay above 1/2, Switch below, nothing (unsure) at exactly 1/2.
  std::optional<Decision> predicted_intent() const;
};

AdaptiveReaderModel profile_update(AdaptiveReaderModel model, Decision observed);

/// Host configured for a session: a fixed strategy, or "adaptive", which is
/// a perfect reader of the player's predicted intent.
struct HostSpec {
  ShowmasterStrategy strategy;
  bool adaptive = false;

  std::string label() const { return adaptive ? "adaptive" : strategy.label(); }
};

/// Accepts {"host": "fair" | "evil" | "moody" | "mind_reader" | "adaptive"}
/// with "p" / "accuracy" fields, or a full label such as "moody(1/2)".
HostSpec parse_host_spec(const nlohmann::json& body);

enum class MoodMode { PerGame, PerGuest };

struct SessionOptions {
  HostSpec host;
  Probability prior{1, 2};
  MoodMode mood_mode = MoodMode::PerGame;
  /// When set, game k is seeded with rng::derive_seed(seed, k); otherwise
  /// each game draws a fresh seed from std::random_device.
  std::optional<std::uint64_t> seed;
};

SessionOptions parse_session_options(const nlohmann::json& body);

/// One player's sequence of games. Not thread-safe; SessionManager
/// serializes access per session.
class Session {
 public:
  enum class Phase { AwaitingPick, AwaitingDecision, Finished };

  Session(std::string id, SessionOptions options);

  /// Legal in AwaitingPick, and in Finished where it starts the next game.
  void pick(int door);
  /// Legal in AwaitingDecision.
  void decide(Decision d);

  Phase phase() const { return phase_; }
  const std::string& id() const { return id_; }
  const SessionOptions& options() const { return options_; }
  const AdaptiveReaderModel& profile() const { return profile_; }
  const std::vector<GameTranscript>& history() const { return history_; }
  const belief::BeliefState& belief() const { return belief_; }

  /// Client-visible state. Car position and mood are included only once the
  /// current game is finished.
  nlohmann::json view() const;

 private:
  void start_game();
  void finish(const GuestStrategy& recorded_guest);
  std::uint64_t next_seed();

  std::string id_;
  SessionOptions options_;
  Phase phase_ = Phase::AwaitingPick;
  std::uint64_t game_index_ = 0;
  std::optional<Mood> guest_mood_;  // MoodMode::PerGuest only
  ShowmasterStrategy game_host_;
  Decision game_signal_ = Decision::Stay;
  std::optional<GameRound> round_;
  belief::BeliefState belief_;
  AdaptiveReaderModel profile_;
  std::vector<GameTranscript> history_;
};

std::string_view to_string(Session::Phase p);

/// Thread-safe registry of live sessions with an optional JSONL archive of
/// finished games.
class SessionManager {
 public:
  explicit SessionManager(std::optional<std::filesystem::path> archive = std::nullopt);

  nlohmann::json create(const nlohmann::json& body);
  nlohmann::json pick(const std::string& id, const nlohmann::json& body);
  nlohmann::json decide(const std::string& id, const nlohmann::json& body);
  nlohmann::json get(const std::string& id);

  std::size_t size() const;

 private:
  struct Slot {
    explicit Slot(Session s) : session(std::move(s)) {}
    std::mutex mutex;
    Session session;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;
  void archive_new(const Session& s, std::size_t before);

  mutable std::mutex map_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mutex archive_mutex_;
  std::optional<std::ofstream> archive_;
};

/// Exact analytics at (p, q) as {"fraction": "a/b", "decimal": x} pairs.
nlohmann::json analytics_view(const Probability& p, const Probability& q);

/// {"fraction": "a/b", "decimal": x}
nlohmann::json probability_json(const Probability& p);

}  // namespace montyhall::service
