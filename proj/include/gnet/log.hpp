#pragma once

#include <functional>
#include <string_view>

namespace gnet {

/// Receives one diagnostic line per event (no trailing newline). Fits report
/// which ridge branch they ran through this sink.
using LogSink = std::function<void(std::string_view)>;

/// Installs a process-wide sink and returns the previous one. An empty sink
/// discards messages (the default).
LogSink set_log_sink(LogSink sink);

void log_line(std::string_view message);

/// Restores the previous sink on scope exit.
class ScopedLogSink {
 public:
  explicit ScopedLogSink(LogSink sink) : previous_(set_log_sink(std::move(sink))) {}
  ~ScopedLogSink() { set_log_sink(std::move(previous_)); }
  ScopedLogSink(const ScopedLogSink&) = delete;
  ScopedLogSink& operator=(const ScopedLogSink&) = delete;

 private:
  LogSink previous_;
};

}  // namespace gnet
