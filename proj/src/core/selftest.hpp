#pragma once

#include <cstdint>
#include <string>

namespace dbarlab {

/// Runs a compact version of every invariant suite and returns the report as
/// JSON text. The text depends only on `seed` (no timings, thread-count
/// independent), so two runs can be compared byte for byte.
std::string run_selftest(std::uint64_t seed);

/// True when every check in a report passed.
bool selftest_passed(const std::string& report);

}  // namespace dbarlab
