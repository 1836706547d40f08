#include "ddshaper/types.hpp"

#include <cmath>
#include <string>

#include "ddshaper/errors.hpp"

namespace ddshaper {

cplx cis2pi(double x) {
  double r = x - std::round(x);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

void DDGrid::validate() const {
  if (M < 1 || N < 1 || Q < 1) throw DomainError("grid: M, N and Q must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("grid: T must be positive");
}

double SampledSignal::energy() const {
  double acc = 0.0;
  for (const auto& v : samples) acc += std::norm(v);
  return acc * dt;
}

double SpectrumSignal::energy() const {
  double acc = 0.0;
  for (const auto& v : samples) acc += std::norm(v);
  return acc * df;
}

Axis centred_axis(double step, std::size_t half) {
  return Axis{-step * static_cast<double>(half), step, 2 * half + 1};
}

long long grid_index(double value, double step, const char* what) {
  if (!(step > 0.0)) throw GridMismatch(std::string(what) + ": non-positive step");
  double q = value / step;
  double r = std::round(q);
  if (!std::isfinite(q) || std::abs(q - r) > 1e-7) {
    throw GridMismatch(std::string(what) + ": " + std::to_string(value) +
                       " is not a multiple of " + std::to_string(step));
  }
  return static_cast<long long>(r);
}

bool on_grid(double value, double step) {
  if (!(step > 0.0)) return false;
  double q = value / step;
  return std::isfinite(q) && std::abs(q - std::round(q)) <= 1e-7;
}

}  // namespace ddshaper
