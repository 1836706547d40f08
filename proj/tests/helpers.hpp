#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ddshaper/types.hpp"

namespace testutil {

using ddshaper::cplx;

inline std::vector<cplx> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& s : v) {
    double re = d(rng);
    double im = d(rng);
    s = cplx(re, im);
  }
  return v;
}

inline ddshaper::SampledSignal random_signal(std::size_t n, double t0, double dt, unsigned seed) {
  ddshaper::SampledSignal s;
  s.t0 = t0;
  s.dt = dt;
  s.samples = random_vec(n, seed);
  return s;
}

inline double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return a.size() == b.size() ? m : INFINITY;
}

inline double max_abs(const std::vector<cplx>& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

inline cplx expj(double phase) { return std::polar(1.0, phase); }

// x at time t (zero off the support). t must be a sample instant.
inline cplx sample_at(const ddshaper::SampledSignal& x, double t) {
  double q = (t - x.t0) / x.dt;
  long long i = std::llround(q);
  if (std::abs(q - i) > 1e-6 || i < 0 || i >= static_cast<long long>(x.size())) return 0.0;
  return x.samples[static_cast<std::size_t>(i)];
}

// Direct double loop of Z(tau, nu) = sqrt(T) sum_k x(tau + kT) e^{-j2pi k nu T}.
inline cplx brute_zak(const ddshaper::SampledSignal& x, double T, double tau, double nu) {
  cplx acc{};
  for (int k = -200; k <= 200; ++k) acc += sample_at(x, tau + k * T) * expj(-2.0 * M_PI * k * nu * T);
  return std::sqrt(T) * acc;
}

// Direct dt sum of x(t) y*(t - tau) e^{-j2pi nu (t - tau)}; tau on the grid.
inline cplx brute_af(const ddshaper::SampledSignal& x, const ddshaper::SampledSignal& y, double tau, double nu) {
  cplx acc{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double t = x.time(i);
    acc += x.samples[i] * std::conj(sample_at(y, t - tau)) * expj(-2.0 * M_PI * nu * (t - tau));
  }
  return x.dt * acc;
}

}  // namespace testutil
