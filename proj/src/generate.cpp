#include "halfline/generate.hpp"

#include <random>
#include <string>
#include <vector>

#include "halfline/errors.hpp"

namespace halfline {

MeasureKind parse_measure_kind(std::string_view name) {
  if (name == "simple_walk" || name == "simple") return MeasureKind::simple_walk;
  if (name == "random_signed" || name == "random") return MeasureKind::random_signed;
  if (name == "random_probability") return MeasureKind::random_probability;
  throw InvalidInput("unknown measure kind '" + std::string(name) + "'");
}

LatticeMeasure generate_measure(MeasureKind kind, std::int64_t lo, std::int64_t hi, std::uint64_t seed) {
  if (kind == MeasureKind::simple_walk) {
    return LatticeMeasure(1.0, -1, {Rational(1, 2), Rational(0), Rational(1, 2)});
  }
  if (hi < lo) throw InvalidInput("empty support interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  std::mt19937_64 rng(seed);
  auto draw = [&rng](std::uint64_t bound) { return static_cast<long>(rng() % bound); };
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<Rational> coeffs(width);
  if (kind == MeasureKind::random_signed) {
    for (auto& c : coeffs) {
      c = Rational(draw(19) - 9, draw(9) + 1);
      c.canonicalize();
    }
    return LatticeMeasure(1.0, lo, std::move(coeffs));
  }
  long total = 0;
  std::vector<long> weights(width);
  for (auto& w : weights) total += (w = draw(10));
  if (total == 0) {
    weights[static_cast<std::size_t>(draw(width))] = 1;
    total = 1;
  }
  for (std::size_t j = 0; j < width; ++j) {
    coeffs[j] = Rational(weights[j], total);
    coeffs[j].canonicalize();
  }
  return LatticeMeasure(1.0, lo, std::move(coeffs));
}

}  // namespace halfline
