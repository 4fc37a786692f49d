#pragma once

#include <cstdint>
#include <string>

namespace aoib {

/// Shortest round-trip decimal form of a double ("0.05", not "0.050000001").
std::string format_double(double value);

std::string format_int(std::int64_t value);

}  // namespace aoib
