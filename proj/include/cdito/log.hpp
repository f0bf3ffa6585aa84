// Minimal stderr logger. Verbosity comes from the CDITO_LOG environment
// variable: off | error | warn | info | debug (default warn).

#ifndef CDITO_LOG_HPP
#define CDITO_LOG_HPP

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace cdito::log {

enum class Level { Off = 0, Error, Warn, Info, Debug };

inline Level threshold() {
  static const Level level = [] {
    const char* env = std::getenv("CDITO_LOG");
    if (!env) return Level::Warn;
    if (!std::strcmp(env, "off")) return Level::Off;
    if (!std::strcmp(env, "error")) return Level::Error;
    if (!std::strcmp(env, "warn")) return Level::Warn;
    if (!std::strcmp(env, "info")) return Level::Info;
    if (!std::strcmp(env, "debug")) return Level::Debug;
    return Level::Warn;
  }();
  return level;
}

inline void write(Level level, const char* tag, const std::string& msg) {
  if (level > threshold()) return;
  std::fprintf(stderr, "cdito [%s] %s\n", tag, msg.c_str());
}

inline void error(const std::string& msg) { write(Level::Error, "error", msg); }
inline void warn(const std::string& msg) { write(Level::Warn, "warn", msg); }
inline void info(const std::string& msg) { write(Level::Info, "info", msg); }
inline void debug(const std::string& msg) { write(Level::Debug, "debug", msg); }

}  // namespace cdito::log

#endif  // CDITO_LOG_HPP
