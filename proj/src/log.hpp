#pragma once

#include <spdlog/spdlog.h>

namespace qsroots::detail {

// Diagnostic logger for shifts and deflations. Level comes from QSROOTS_LOG
// (off | info | trace), default off; output goes to stderr.
spdlog::logger& logger();

}  // namespace qsroots::detail
