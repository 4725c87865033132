#pragma once

#include <cstdint>

namespace fedsched {

// Simulated time in integer milliseconds. All module clocks use this unit;
// floating-point seconds appear only in reports.
using TimeMs = std::int64_t;

constexpr TimeMs kMsPerSec = 1000;

constexpr TimeMs sec_to_ms(double seconds) {
  return static_cast<TimeMs>(seconds * 1000.0 + (seconds >= 0 ? 0.5 : -0.5));
}

constexpr double ms_to_sec(TimeMs ms) { return static_cast<double>(ms) / 1000.0; }

}  // namespace fedsched
