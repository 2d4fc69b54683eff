#include "dynbc/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <string>

namespace dynbc {

namespace log {

namespace {
std::atomic<int> g_level = [] {
  const char* env = std::getenv("DYNBC_LOG");
  if (!env) return static_cast<int>(Level::Warn);
  const std::string s(env);
  if (s == "debug") return static_cast<int>(Level::Debug);
  if (s == "info") return static_cast<int>(Level::Info);
  if (s == "error") return static_cast<int>(Level::Error);
  if (s == "off") return static_cast<int>(Level::Off);
  return static_cast<int>(Level::Warn);
}();
}  // namespace

void set_level(Level l) { g_level = static_cast<int>(l); }
Level level() { return static_cast<Level>(g_level.load()); }

void write(Level l, std::string_view message) {
  if (static_cast<int>(l) < g_level.load()) return;
  static constexpr const char* names[] = {"debug", "info", "warn", "error"};
  std::clog << "[dynbc " << names[static_cast<int>(l)] << "] " << message << '\n';
}

}  // namespace log

}  // namespace dynbc
