#pragma once

#include <string>

#include "indexdensity/numeric.hpp"

namespace indexdensity {

enum class DisplayMode { Truncate, Round };

/// Fixed-point rendering with `significant` digits. Round is half-even on the
/// exact decimal expansion; zero prints as "0".
std::string format_significant(const Real& value, unsigned significant = 7, DisplayMode mode = DisplayMode::Truncate);

}  // namespace indexdensity
