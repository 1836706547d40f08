#include "ddshaper/zak.hpp"

#include <algorithm>
#include <cmath>

#include "ddshaper/errors.hpp"
#include "ddshaper/parallel.hpp"

namespace ddshaper {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

PeriodExtent extent_of(const DDGrid& grid, const Axis& tau, const Axis& nu) {
  PeriodExtent e;
  const double T = grid.T;
  auto lo_hi = [](double start, double step, std::size_t count, double period, int& lo, int& hi) {
    if (count == 0) {
      lo = hi = 0;
      return;
    }
    double last = start + step * static_cast<double>(count - 1);
    lo = static_cast<int>(std::floor(start / period + 1e-9));
    hi = static_cast<int>(std::floor(last / period + 1e-9));
  };
  lo_hi(tau.start, tau.step, tau.count, T, e.n_min, e.n_max);
  lo_hi(nu.start, nu.step, nu.count, 1.0 / T, e.m_min, e.m_max);
  return e;
}

}  // namespace

Axis delay_axis(const DDGrid& grid, int n_lo, int n_hi) {
  grid.validate();
  std::size_t per = grid.samples_per_period();
  return Axis{n_lo * grid.T, grid.dt(), per * static_cast<std::size_t>(n_hi - n_lo + 1)};
}

Axis doppler_axis(const DDGrid& grid, int m_lo, int m_hi) {
  grid.validate();
  std::size_t per = static_cast<std::size_t>(grid.N) * grid.Q;
  double step = 1.0 / (grid.T * static_cast<double>(per));
  return Axis{m_lo / grid.T, step, per * static_cast<std::size_t>(m_hi - m_lo + 1)};
}

ZakImage zak_transform(const SampledSignal& x, const DDGrid& grid, const Axis& tau,
                       const Axis& nu) {
  grid.validate();
  if (x.empty()) throw DomainError("zak_transform: empty signal");
  grid_index(grid.delay_step(), x.dt, "zak_transform: delay step T/M vs dt");
  const long long P = grid_index(grid.T, x.dt, "zak_transform: period T vs dt");
  grid_index(tau.step, x.dt, "zak_transform: delay axis step");
  const long long base0 = grid_index(tau.start - x.t0, x.dt, "zak_transform: delay axis origin");
  const long long step_idx = static_cast<long long>(std::llround(tau.step / x.dt));
  const long long len = static_cast<long long>(x.size());
  const double sqrtT = std::sqrt(grid.T);

  ZakImage z;
  z.grid = grid;
  z.tau = tau;
  z.nu = nu;
  z.values.assign(tau.count * nu.count, cplx{});
  z.periods = extent_of(grid, tau, nu);

  parallel_for(tau.count, [&](std::size_t i) {
    long long b = base0 + step_idx * static_cast<long long>(i);
    // k with 0 <= b + kP < len
    long long k_lo = floor_div(-b + P - 1, P);
    long long k_hi = floor_div(len - 1 - b, P);
    for (std::size_t j = 0; j < nu.count; ++j) {
      double nuT = nu.at(j) * grid.T;
      cplx acc{};
      for (long long k = k_lo; k <= k_hi; ++k) {
        acc += x.samples[static_cast<std::size_t>(b + k * P)] * cis2pi(-static_cast<double>(k) * nuT);
      }
      z.at(i, j) = sqrtT * acc;
    }
  });
  return z;
}

SampledSignal inverse_zak(const ZakImage& z, int n_lo, int n_hi) {
  const double T = z.grid.T;
  if (n_hi < n_lo) throw DomainError("inverse_zak: empty period range");
  if (z.tau.count == 0 || z.nu.count == 0) throw DomainError("inverse_zak: empty image");
  if (!on_grid(T, z.tau.step) || !on_grid(1.0 / T, z.nu.step)) {
    throw DomainError("inverse_zak: axis steps do not divide the fundamental rectangle");
  }
  const std::size_t P = static_cast<std::size_t>(std::llround(T / z.tau.step));
  const std::size_t Pn = static_cast<std::size_t>(std::llround(1.0 / (T * z.nu.step)));
  if (z.tau.count < P || z.nu.count < Pn) {
    throw DomainError("inverse_zak: image does not cover the fundamental rectangle");
  }
  const std::size_t periods = static_cast<std::size_t>(n_hi - n_lo + 1);
  SampledSignal x;
  x.dt = z.tau.step;
  x.t0 = z.tau.start + n_lo * T;
  x.samples.assign(P * periods, cplx{});
  const double scale = std::sqrt(T) * z.nu.step;
  parallel_for(P, [&](std::size_t i) {
    for (std::size_t p = 0; p < periods; ++p) {
      double n = static_cast<double>(n_lo + static_cast<int>(p));
      cplx acc{};
      for (std::size_t j = 0; j < Pn; ++j) acc += cis2pi(n * T * z.nu.at(j)) * z.at(i, j);
      x.samples[p * P + i] = scale * acc;
    }
  });
  return x;
}

SampledSignal inverse_zak(const ZakImage& z) {
  const double T = z.grid.T;
  if (!on_grid(T, z.tau.step)) throw DomainError("inverse_zak: delay step does not divide T");
  const std::size_t P = static_cast<std::size_t>(std::llround(T / z.tau.step));
  int full = static_cast<int>(z.tau.count / std::max<std::size_t>(P, 1));
  if (full < 1) throw DomainError("inverse_zak: image does not cover a delay period");
  return inverse_zak(z, 0, full - 1);
}

ZakMatrix dzt(const std::vector<cplx>& x, int M, int N) {
  if (M < 1 || N < 1 || x.size() != static_cast<std::size_t>(M) * N) {
    throw DomainError("dzt: sequence length must equal M*N");
  }
  std::vector<cplx> w(N);
  for (int q = 0; q < N; ++q) w[q] = cis2pi(-static_cast<double>(q) / N);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  ZakMatrix Z(M, N);
  for (int l = 0; l < M; ++l) {
    for (int k = 0; k < N; ++k) {
      cplx acc{};
      for (int n = 0; n < N; ++n) acc += x[static_cast<std::size_t>(l + n * M)] * w[(k * n) % N];
      Z.at(l, k) = scale * acc;
    }
  }
  return Z;
}

std::vector<cplx> idzt(const ZakMatrix& X) {
  const int M = X.M, N = X.N;
  if (M < 1 || N < 1 || X.values.size() != static_cast<std::size_t>(M) * N) {
    throw DomainError("idzt: matrix shape does not match M x N");
  }
  std::vector<cplx> w(N);
  for (int q = 0; q < N; ++q) w[q] = cis2pi(static_cast<double>(q) / N);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  std::vector<cplx> x(static_cast<std::size_t>(M) * N);
  for (int l = 0; l < M; ++l) {
    for (int n = 0; n < N; ++n) {
      cplx acc{};
      for (int k = 0; k < N; ++k) acc += X.at(l, k) * w[(k * n) % N];
      x[static_cast<std::size_t>(l + n * M)] = scale * acc;
    }
  }
  return x;
}

SampledSignal twisted_shift(const SampledSignal& x, double tau0, double nu0) {
  long long shift = grid_index(tau0, x.dt, "twisted_shift: delay");
  SampledSignal y;
  y.dt = x.dt;
  y.t0 = x.t0 + static_cast<double>(shift) * x.dt;
  y.samples.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y.samples[i] = cis2pi(nu0 * x.time(i)) * x.samples[i];
  }
  return y;
}

QuasiPeriodicityReport quasi_periodicity_check(const ZakImage& z, double tol) {
  const double T = z.grid.T;
  if (!on_grid(T, z.tau.step) || !on_grid(1.0 / T, z.nu.step)) {
    throw DomainError("quasi_periodicity_check: axis steps do not divide the periods");
  }
  const std::size_t P = static_cast<std::size_t>(std::llround(T / z.tau.step));
  const std::size_t Pn = static_cast<std::size_t>(std::llround(1.0 / (T * z.nu.step)));
  if (z.tau.count < 2 * P || z.nu.count < 2 * Pn) {
    throw DomainError("quasi_periodicity_check: need two delay and two Doppler periods");
  }
  QuasiPeriodicityReport rep;
  double peak = 0.0;
  for (const auto& v : z.values) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i + P < z.tau.count; ++i) {
    for (std::size_t j = 0; j < z.nu.count; ++j) {
      double e = std::abs(z.at(i + P, j) - cis2pi(T * z.nu.at(j)) * z.at(i, j));
      if (e > rep.max_delay_err) {
        rep.max_delay_err = e;
        rep.worst_delay_index = i;
      }
    }
  }
  for (std::size_t i = 0; i < z.tau.count; ++i) {
    for (std::size_t j = 0; j + Pn < z.nu.count; ++j) {
      double e = std::abs(z.at(i, j + Pn) - z.at(i, j));
      rep.max_doppler_err = std::max(rep.max_doppler_err, e);
    }
  }
  double bound = tol * peak;
  rep.pass = rep.max_delay_err <= bound && rep.max_doppler_err <= bound;
  return rep;
}

}  // namespace ddshaper
