#include "ddshaper/basis.hpp"

#include <cmath>

#include "ddshaper/errors.hpp"
#include "ddshaper/fft.hpp"
#include "ddshaper/parallel.hpp"
#include "ddshaper/zak.hpp"

namespace ddshaper {

void validate_id(const BasisId& id, const DDGrid& grid) {
  if (id.l < 0 || id.l >= grid.M || id.k < 0 || id.k >= grid.N) {
    throw DomainError("basis id outside [0, M) x [0, N)");
  }
}

AtomPair AtomPair::impulse() {
  AtomPair a;
  a.is_impulse_pair = true;
  return a;
}

cplx AtomPair::h_nu_at_zero() const {
  if (is_impulse_pair) return 1.0;
  cplx acc{};
  for (const auto& v : H_nu.samples) acc += v;
  return acc * H_nu.df;
}

cplx AtomPair::H_tau_at_zero() const {
  if (is_impulse_pair) return 1.0;
  cplx acc{};
  for (const auto& v : h_tau.samples) acc += v;
  return acc * h_tau.dt;
}

ZakImage dd_basis_image(const BasisId& id, const DDGrid& grid, const AtomPair& atoms,
                        const Axis& tau, const Axis& nu, const PeriodExtent& ext) {
  grid.validate();
  validate_id(id, grid);
  if (atoms.is_impulse_pair) {
    throw Unsupported("dd_basis_image: impulse atoms have no sampled image, use the pulsone forms");
  }
  const auto& h = atoms.h_tau;
  const auto& H = atoms.H_nu;
  if (h.empty() || H.empty()) throw DomainError("dd_basis_image: empty atom");
  if (ext.n_max < ext.n_min || ext.m_max < ext.m_min) throw DomainError("dd_basis_image: empty extent");
  const double T = grid.T;
  const double tau_l = grid.tau(id.l);
  const double nu_k = grid.nu(id.k);

  // Index arithmetic: tau_i - tau_l - nT lands on sample
  //   a0 + i*a_step - n*aP of h_tau, likewise for nu.
  const long long a0 = grid_index(tau.start - tau_l - h.t0, h.dt, "dd_basis_image: delay axis origin");
  const long long a_step = grid_index(tau.step, h.dt, "dd_basis_image: delay axis step");
  const long long aP = grid_index(T, h.dt, "dd_basis_image: delay period");
  const long long b0 = grid_index(nu.start - nu_k - H.f0, H.df, "dd_basis_image: Doppler axis origin");
  const long long b_step = grid_index(nu.step, H.df, "dd_basis_image: Doppler axis step");
  const long long bP = grid_index(1.0 / T, H.df, "dd_basis_image: Doppler period");
  const long long hn = static_cast<long long>(h.size());
  const long long Hn = static_cast<long long>(H.size());

  ZakImage z;
  z.grid = grid;
  z.tau = tau;
  z.nu = nu;
  z.periods = ext;
  z.values.assign(tau.count * nu.count, cplx{});
  parallel_for(tau.count, [&](std::size_t i) {
    const double t = tau.at(i);
    const cplx twist = cis2pi(nu_k * (t - tau_l));
    for (std::size_t j = 0; j < nu.count; ++j) {
      const double f = nu.at(j);
      cplx acc{};
      for (int n = ext.n_min; n <= ext.n_max; ++n) {
        long long ai = a0 + static_cast<long long>(i) * a_step - n * aP;
        if (ai < 0 || ai >= hn) continue;
        cplx ht = h.samples[static_cast<std::size_t>(ai)];
        cplx phase = cis2pi(static_cast<double>(n) * (f - nu_k) * T);
        for (int m = ext.m_min; m <= ext.m_max; ++m) {
          long long bi = b0 + static_cast<long long>(j) * b_step - m * bP;
          if (bi < 0 || bi >= Hn) continue;
          acc += ht * H.samples[static_cast<std::size_t>(bi)] * phase;
        }
      }
      z.at(i, j) = twist * acc;
    }
  });
  return z;
}

ImpulseTrain time_basis_pulsone(const BasisId& id, const DDGrid& grid, int n_lo, int n_hi) {
  grid.validate();
  validate_id(id, grid);
  ImpulseTrain train;
  train.domain = Domain::time;
  train.tone_rate = grid.nu(id.k);
  train.tone_ref = grid.tau(id.l);
  const double amp = std::sqrt(grid.T);
  for (int n = n_lo; n <= n_hi; ++n) train.impulses.push_back({grid.tau(id.l) + n * grid.T, amp});
  return train;
}

ImpulseTrain freq_basis_pulsone(const BasisId& id, const DDGrid& grid, int m_lo, int m_hi) {
  grid.validate();
  validate_id(id, grid);
  ImpulseTrain train;
  train.domain = Domain::frequency;
  train.tone_rate = -grid.tau(id.l);
  train.tone_ref = 0.0;
  const double amp = 1.0 / std::sqrt(grid.T);
  for (int m = m_lo; m <= m_hi; ++m) train.impulses.push_back({grid.nu(id.k) + m / grid.T, amp});
  return train;
}

SampledSignal truncate_basis(const ImpulseTrain& train, const SampledSignal& fw,
                             const SampledSignal& tw) {
  if (train.impulses.empty()) throw DomainError("truncate_basis: empty impulse train");
  if (train.domain != Domain::time) throw Unsupported("truncate_basis: train must be time-domain");
  if (std::abs(fw.dt - tw.dt) > 1e-12 * tw.dt) throw GridMismatch("truncate_basis: fw and tw steps differ");
  const double dt = tw.dt;
  const long long fn = static_cast<long long>(fw.size());
  SampledSignal out;
  out.t0 = tw.t0;
  out.dt = dt;
  out.samples.assign(tw.size(), cplx{});
  std::vector<cplx> acc(tw.size());
  for (const auto& imp : train.impulses) {
    long long base = grid_index(tw.t0 - imp.position - fw.t0, dt, "truncate_basis: impulse time");
    for (std::size_t j = 0; j < tw.size(); ++j) {
      long long q = base + static_cast<long long>(j);
      if (q < 0 || q >= fn) continue;
      acc[j] += imp.amplitude * fw.samples[static_cast<std::size_t>(q)];
    }
  }
  for (std::size_t j = 0; j < tw.size(); ++j) {
    out.samples[j] = acc[j] * train.tone(tw.time(j)) * tw.samples[j];
  }
  return out;
}

HarmonicSet dual_harmonics(const WindowSpec& fw, double period) {
  validate_window(fw);
  if (fw.domain != Domain::frequency) throw Unsupported("dual_harmonics: window must be frequency-domain");
  if (!(period > 0.0)) throw DomainError("dual_harmonics: period must be positive");
  long long r_lo = static_cast<long long>(std::floor(window_start(fw) * period)) - 1;
  long long r_hi = static_cast<long long>(std::ceil(window_end(fw) * period)) + 1;
  HarmonicSet h;
  while (r_lo <= r_hi && window_value(fw, r_lo / period) == 0.0) ++r_lo;
  while (r_hi >= r_lo && window_value(fw, r_hi / period) == 0.0) --r_hi;
  h.r_lo = r_lo;
  for (long long r = r_lo; r <= r_hi; ++r) h.coef.push_back(window_value(fw, r / period) / period);
  return h;
}

std::vector<cplx> periodized_dual(const WindowSpec& fw, double period, double dt) {
  const long long L = grid_index(period, dt, "periodized_dual: period vs dt");
  if (L < 1) throw DomainError("periodized_dual: period shorter than a sample");
  HarmonicSet h = dual_harmonics(fw, period);
  if (static_cast<long long>(h.coef.size()) > L) {
    throw DomainError("periodized_dual: window bandwidth exceeds the sampling rate");
  }
  std::vector<cplx> bins(static_cast<std::size_t>(L));
  for (std::size_t q = 0; q < h.coef.size(); ++q) {
    long long r = h.r_lo + static_cast<long long>(q);
    long long b = ((r % L) + L) % L;
    bins[static_cast<std::size_t>(b)] += h.coef[q];
  }
  return dft(bins, +1);
}

SampledSignal truncated_basis_pulse(const BasisId& id, const DDGrid& grid, const WindowSpec& fw,
                                    const WindowSpec& tw) {
  grid.validate();
  validate_id(id, grid);
  validate_window(tw);
  if (tw.domain != Domain::time) throw Unsupported("truncated_basis_pulse: time window must be time-domain");
  const double dt = grid.dt();
  const std::vector<cplx> P = periodized_dual(fw, grid.T, dt);
  const long long L = static_cast<long long>(P.size());
  long long j_lo = static_cast<long long>(std::ceil(window_start(tw) / dt - 1e-9));
  long long j_hi = static_cast<long long>(std::ceil(window_end(tw) / dt - 1e-9)) - 1;
  SampledSignal base;
  base.dt = dt;
  base.t0 = static_cast<double>(j_lo) * dt;
  const double sqrtT = std::sqrt(grid.T);
  for (long long j = j_lo; j <= j_hi; ++j) {
    double t = static_cast<double>(j) * dt;
    base.samples.push_back(sqrtT * P[static_cast<std::size_t>(((j % L) + L) % L)] * window_value(tw, t));
  }
  if (id.l == 0 && id.k == 0) return base;
  return twisted_shift(base, grid.tau(id.l), grid.nu(id.k));
}

}  // namespace ddshaper
