#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace ddshaper {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{j 2 pi x}; the argument is reduced first so large phases keep full precision.
cplx cis2pi(double x);

// Frame geometry. Delay lattice l*T/M, Doppler lattice k/(N*T); Q time
// samples per delay bin.
struct DDGrid {
  int M = 32;
  int N = 32;
  double T = 1.0;
  int Q = 8;

  double delay_step() const { return T / M; }
  double doppler_step() const { return 1.0 / (N * T); }
  double dt() const { return T / (static_cast<double>(M) * Q); }
  double tau(int l) const { return l * delay_step(); }
  double nu(int k) const { return k * doppler_step(); }
  std::size_t samples_per_period() const { return static_cast<std::size_t>(M) * Q; }

  void validate() const;
};

struct SampledSignal {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<cplx> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
  double duration() const { return dt * static_cast<double>(samples.size()); }
  double energy() const;
};

struct SpectrumSignal {
  double f0 = 0.0;
  double df = 1.0;
  std::vector<cplx> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double freq(std::size_t i) const { return f0 + df * static_cast<double>(i); }
  double energy() const;
};

struct Axis {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  double at(std::size_t i) const { return start + step * static_cast<double>(i); }
};

// Centred axis with 2*half+1 points, step apart.
Axis centred_axis(double step, std::size_t half);

struct PeriodExtent {
  int n_min = 0;
  int n_max = 0;
  int m_min = 0;
  int m_max = 0;
};

// Values are stored tau-major: values[i * nu.count + j] = Z(tau_i, nu_j).
struct ZakImage {
  DDGrid grid;
  Axis tau;
  Axis nu;
  std::vector<cplx> values;
  PeriodExtent periods;

  cplx& at(std::size_t i, std::size_t j) { return values[i * nu.count + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return values[i * nu.count + j]; }
};

// M x N, row l, column k.
struct ZakMatrix {
  int M = 0;
  int N = 0;
  std::vector<cplx> values;

  ZakMatrix() = default;
  ZakMatrix(int m, int n) : M(m), N(n), values(static_cast<std::size_t>(m) * n) {}

  cplx& at(int l, int k) { return values[static_cast<std::size_t>(l) * N + k]; }
  const cplx& at(int l, int k) const { return values[static_cast<std::size_t>(l) * N + k]; }
};

// Index of value/step when it is an integer to within a relative 1e-9,
// otherwise GridMismatch naming `what`.
long long grid_index(double value, double step, const char* what);

// True when value is an integer multiple of step to within 1e-9 (relative).
bool on_grid(double value, double step);

}  // namespace ddshaper
