#pragma once

#include <vector>

#include "ddshaper/types.hpp"

namespace ddshaper {

// Z(tau, nu) = sqrt(T) sum_k x(tau + kT) e^{-j2pi k nu T}, the k-sum running
// over the support of x. Every tau on the axis must be a sample instant of x
// (T and the axis must sit on the x.dt grid).
ZakImage zak_transform(const SampledSignal& x, const DDGrid& grid, const Axis& tau,
                       const Axis& nu);

// Axes covering delay periods [n_lo, n_hi] and Doppler periods [m_lo, m_hi],
// with T/(M Q) delay resolution and N Q points per Doppler period.
Axis delay_axis(const DDGrid& grid, int n_lo, int n_hi);
Axis doppler_axis(const DDGrid& grid, int m_lo, int m_hi);

// x(t) = sqrt(T) int_0^{1/T} Z(t, nu) dnu by the rectangle rule over the first
// Doppler period of the image; the first delay period of the image is extended
// to periods [n_lo, n_hi] with the quasi-periodicity phase e^{j2pi nT nu}.
SampledSignal inverse_zak(const ZakImage& z, int n_lo, int n_hi);
// Same over the delay periods recorded in z.periods.
SampledSignal inverse_zak(const ZakImage& z);

ZakMatrix dzt(const std::vector<cplx>& x, int M, int N);
std::vector<cplx> idzt(const ZakMatrix& X);

// e^{j2pi nu0 (t - tau0)} x(t - tau0); tau0 must be a multiple of x.dt.
SampledSignal twisted_shift(const SampledSignal& x, double tau0, double nu0);

struct QuasiPeriodicityReport {
  double max_delay_err = 0.0;
  double max_doppler_err = 0.0;
  // Lower delay index of the worst delay-direction pair.
  std::size_t worst_delay_index = 0;
  bool pass = false;
};

QuasiPeriodicityReport quasi_periodicity_check(const ZakImage& z, double tol);

}  // namespace ddshaper
