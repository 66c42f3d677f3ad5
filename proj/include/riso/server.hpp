#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "riso/io.hpp"
#include "riso/session.hpp"

namespace riso {

struct ServerOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 0;  // 0: pick a free port
  SessionConfig session;
  /// Tick once per received input frame instead of on the wall clock.
  bool lockstep = false;
  /// Written whenever an episode ends. Empty: keep the log in memory only.
  std::string log_path;
};

/// Protocol helpers, exposed for tests and tools.
constexpr int kProtocolVersion = 1;
json envelope(const std::string &type, json payload);
/// Rounds every floating-point number in `j` to 9 significant digits.
json round_numbers(json j);
json state_frame(const Session &session, const TickRecord *last);
json error_frame(const std::string &code, const std::string &msg);

/// Live teleoperation service: one operator connection at a time over a
/// websocket. Inputs are latched and consumed once per tick. The episode
/// pauses while nobody is connected.
class TeleopServer {
 public:
  TeleopServer(Scenario scenario, ServerOptions options);
  ~TeleopServer();
  TeleopServer(const TeleopServer &) = delete;
  TeleopServer &operator=(const TeleopServer &) = delete;

  /// Bound port; valid right after construction.
  unsigned short port() const;
  /// Serves until stop(). Call from one thread only.
  void run();
  /// Thread-safe.
  void stop();

  /// Copy of the current (or last finished) episode. Thread-safe.
  EpisodeLog log() const;
  /// Metrics of the last finished episode. Thread-safe.
  std::optional<MetricsReport> last_metrics() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace riso
