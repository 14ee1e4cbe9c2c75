#pragma once

#include <cstdint>
#include <string_view>

#include "halfline/measure.hpp"

namespace halfline {

enum class MeasureKind { simple_walk, random_signed, random_probability };

MeasureKind parse_measure_kind(std::string_view name);

/// Deterministic in (kind, support, seed).
///  - simple_walk: (delta_{-1} + delta_1) / 2, support ignored.
///  - random_signed: coefficients p/q with |p| <= 9, 1 <= q <= 9.
///  - random_probability: integer weights 0..9 normalised to mass exactly 1.
LatticeMeasure generate_measure(MeasureKind kind, std::int64_t lo, std::int64_t hi, std::uint64_t seed);

}  // namespace halfline
