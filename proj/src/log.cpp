#include "log.hpp"

#include <cstdlib>
#include <memory>
#include <string_view>

#include <spdlog/sinks/stdout_sinks.h>

namespace qsroots::detail {

namespace {

spdlog::level::level_enum level_from_env() {
  const char* raw = std::getenv("QSROOTS_LOG");
  if (!raw) return spdlog::level::off;
  const std::string_view v(raw);
  if (v == "trace") return spdlog::level::trace;
  if (v == "info") return spdlog::level::info;
  return spdlog::level::off;
}

}  // namespace

spdlog::logger& logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
    auto lg = std::make_shared<spdlog::logger>("qsroots", sink);
    lg->set_pattern("[%n] [%l] %v");
    lg->set_level(level_from_env());
    return lg;
  }();
  return *instance;
}

}  // namespace qsroots::detail
