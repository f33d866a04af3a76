#include "faircss/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace faircss::log {

namespace {

std::atomic<Level> g_level{Level::warning};
std::atomic<std::ostream*> g_sink{&std::clog};
std::mutex g_mutex;

const char* prefix(Level level) {
  switch (level) {
    case Level::debug: return "debug: ";
    case Level::info: return "info: ";
    case Level::warning: return "warning: ";
    case Level::silent: break;
  }
  return "";
}

}  // namespace

void set_level(Level level) noexcept { g_level = level; }
Level level() noexcept { return g_level; }
void set_sink(std::ostream* sink) noexcept { g_sink = sink ? sink : &std::clog; }

void write(Level level, std::string_view message) {
  if (level == Level::silent || level < g_level.load()) return;
  std::lock_guard lock(g_mutex);
  *g_sink.load() << prefix(level) << message << '\n';
}

}  // namespace faircss::log
