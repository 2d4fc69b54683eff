#pragma once

#include <string_view>

namespace dynbc::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };

/// Messages below the threshold are dropped. Initial threshold comes from
/// DYNBC_LOG (debug|info|warn|error|off), default warn.
void set_level(Level level);
Level level();

void write(Level level, std::string_view message);
inline void warn(std::string_view m) { write(Level::Warn, m); }
inline void info(std::string_view m) { write(Level::Info, m); }
inline void debug(std::string_view m) { write(Level::Debug, m); }

}  // namespace dynbc::log
