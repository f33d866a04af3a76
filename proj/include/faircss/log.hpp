#pragma once

#include <ostream>
#include <string_view>

namespace faircss::log {

enum class Level { debug, info, warning, silent };

/// Messages below the threshold are dropped. Default: warning.
void set_level(Level level) noexcept;
Level level() noexcept;

/// Sink for all messages; defaults to std::clog. Not owned.
void set_sink(std::ostream* sink) noexcept;

void write(Level level, std::string_view message);

inline void debug(std::string_view m) { write(Level::debug, m); }
inline void info(std::string_view m) { write(Level::info, m); }
inline void warning(std::string_view m) { write(Level::warning, m); }

}  // namespace faircss::log
