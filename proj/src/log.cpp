#include "gnet/log.hpp"

#include <mutex>
#include <utility>

namespace gnet {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

LogSink& sink_slot() {
  static LogSink sink;
  return sink;
}

}  // namespace

LogSink set_log_sink(LogSink sink) {
  std::lock_guard lock(sink_mutex());
  return std::exchange(sink_slot(), std::move(sink));
}

void log_line(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (sink_slot()) sink_slot()(message);
}

}  // namespace gnet
