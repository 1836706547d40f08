#pragma once

#include <vector>

#include "ddshaper/types.hpp"
#include "ddshaper/windows.hpp"

namespace ddshaper {

struct BasisId {
  int l = 0;
  int k = 0;
};

void validate_id(const BasisId& id, const DDGrid& grid);

// phi(tau, nu) = h_tau(tau) H_nu(nu). The impulse pair stands for
// phi = e^{j2pi nu tau} delta(tau) delta(nu) and carries no samples.
struct AtomPair {
  SampledSignal h_tau;
  SpectrumSignal H_nu;
  bool is_impulse_pair = false;

  static AtomPair impulse();

  // h_nu(0) = int H_nu, H_tau(0) = int h_tau (both 1 for the impulse pair).
  cplx h_nu_at_zero() const;
  cplx H_tau_at_zero() const;
};

struct Impulse {
  double position;
  cplx amplitude;
};

// sum_i amplitude_i delta(u - position_i), modulated by e^{j2pi rate (u - ref)}.
struct ImpulseTrain {
  Domain domain = Domain::time;
  std::vector<Impulse> impulses;
  double tone_rate = 0.0;
  double tone_ref = 0.0;

  cplx tone(double u) const { return cis2pi(tone_rate * (u - tone_ref)); }
};

// Quasi-periodic extension of the atom, shifted to (tau_l, nu_k):
//   sum_{n,m} e^{j2pi nu_k (tau - tau_l)} phi(tau - tau_l - nT, nu - nu_k - m/T)
//             e^{j2pi n (nu - nu_k) T}
// with n in [n_min, n_max], m in [m_min, m_max].
ZakImage dd_basis_image(const BasisId& id, const DDGrid& grid, const AtomPair& atoms,
                        const Axis& tau, const Axis& nu,
                        const PeriodExtent& ext = PeriodExtent{-1, 1, -1, 1});

// Impulses at tau_l + nT (n_lo..n_hi) with amplitude sqrt(T), tone (nu_k, tau_l).
ImpulseTrain time_basis_pulsone(const BasisId& id, const DDGrid& grid, int n_lo, int n_hi);

// Impulses at nu_k + m/T (m_lo..m_hi) with amplitude 1/sqrt(T) and phase
// e^{-j2pi f tau_l}.
ImpulseTrain freq_basis_pulsone(const BasisId& id, const DDGrid& grid, int m_lo, int m_hi);

// (sum_i a_i fw(t - t_i)) tone(t) tw(t) on the grid of tw. The impulse times
// must sit on the common grid.
SampledSignal truncate_basis(const ImpulseTrain& train, const SampledSignal& fw,
                             const SampledSignal& tw);

// The frequency window's dual periodized with the given period,
//   P(t) = sum_n FW_T(t - n period) = (1/period) sum_r FW_F(r/period) e^{j2pi r t/period},
// sampled at j*dt for j in [0, period/dt). Exact for compactly supported FW_F.
std::vector<cplx> periodized_dual(const WindowSpec& fw, double period, double dt);

// Harmonic coefficients of periodized_dual: FW_F(r/period)/period for r in
// [r_lo, r_lo + size).
struct HarmonicSet {
  long long r_lo = 0;
  std::vector<double> coef;
};
HarmonicSet dual_harmonics(const WindowSpec& fw, double period);

// The truncated (l, k) basis pulse of the impulse atom pair with every FW_T
// copy included:
//   e^{j2pi nu_k (t - tau_l)} sqrt(T) P_T(t - tau_l) TW_T(t - tau_l)
// sampled on the grid dt = T/(MQ) over the shifted window support.
SampledSignal truncated_basis_pulse(const BasisId& id, const DDGrid& grid, const WindowSpec& fw,
                                    const WindowSpec& tw);

}  // namespace ddshaper
