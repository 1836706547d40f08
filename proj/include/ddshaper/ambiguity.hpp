#pragma once

#include <optional>
#include <vector>

#include "ddshaper/basis.hpp"
#include "ddshaper/types.hpp"
#include "ddshaper/windows.hpp"

namespace ddshaper {

// Values tau-major: values[i * nu.count + j] = A(tau_i, nu_j).
struct AmbiguitySurface {
  Axis tau;
  Axis nu;
  std::vector<cplx> values;
  double peak_mag = 0.0;
  std::size_t peak_tau = 0;
  std::size_t peak_nu = 0;

  const cplx& at(std::size_t i, std::size_t j) const { return values[i * nu.count + j]; }
};

// A(tau, nu) = dt sum_t x(t) y*(t - tau) e^{-j2pi nu (t - tau)}.
AmbiguitySurface cross_ambiguity(const SampledSignal& x, const SampledSignal& y, const Axis& tau,
                                 const Axis& nu);
cplx cross_ambiguity_at(const SampledSignal& x, const SampledSignal& y, double tau, double nu);

// df sum_f X(f) Y*(f - nu) e^{j2pi f tau}; nu must sit on the df grid.
cplx spectral_ambiguity_at(const SpectrumSignal& X, const SpectrumSignal& Y, double tau, double nu);

// Rectangle-rule integral over one delay and one Doppler period of
// Zx Zy* e^{-j2pi (m/T) tau} e^{j2pi n nu T}.
cplx af_lattice_from_zak(const ZakImage& zx, const ZakImage& zy, int n, int m);

struct LatticeRange {
  int n_lo = 0;
  int n_hi = 0;
  int m_lo = 0;
  int m_hi = 0;

  static LatticeRange symmetric(int trunc) { return {-trunc, trunc, -trunc, trunc}; }
};

// Samples A(nT, m/T) over a lattice range.
struct LatticeAf {
  double T = 1.0;
  LatticeRange range;
  std::vector<cplx> values;

  cplx at(int n, int m) const;
};

LatticeAf lattice_from_signals(const SampledSignal& x, const SampledSignal& y, double T,
                               const LatticeRange& range);
LatticeAf lattice_from_zak(const ZakImage& zx, const ZakImage& zy, const LatticeRange& range);

// sum_{n,m} A(nT, m/T) e^{-j2pi n nu T} e^{j2pi (m/T) tau} over `trunc`;
// DomainError when the lattice does not cover it.
cplx zak_product_series(const LatticeAf& lattice, double tau, double nu, const LatticeRange& trunc);

// sum_n sum_m A_{h_tau}(tau + nT, nu) A_{h_nu}(-nT, nu + m/T). The sums run
// over every term the atom supports allow; `trunc` further limits |n|.
cplx theorem1_decomposition(const AtomPair& atoms, const DDGrid& grid, double tau, double nu,
                            std::optional<int> trunc = std::nullopt);

cplx localized_af_prediction(const DDGrid& grid, cplx h_nu_0, cplx H_tau_0, double tau, double nu);

struct TruncationOptions {
  // |n| limit of the A_FW(tau - nT, 0) sum. Unset sums all n exactly through
  // the harmonic form (1/T) sum_q |FW_F(q/T)|^2 e^{j2pi q tau / T}.
  std::optional<int> n_trunc;
  // |m| limit of the A_TW(tau, nu - m/T) sum. Unset uses the widest harmonic
  // separation of the periodized frequency window.
  std::optional<int> m_trunc;
  cplx h_nu_0 = 1.0;
  cplx H_tau_0 = 1.0;
};

// |h_nu(0)|^2 |H_tau(0)|^2 sum_n sum_m A_FW(tau - nT, 0) A_TW(tau, nu - m/T) e^{j2pi (m/T) tau}.
cplx theorem3_af(const WindowSpec& fw, const WindowSpec& tw, const DDGrid& grid, double tau,
                 double nu, const TruncationOptions& opt = {});

// |h_nu(0)|^2 |H_tau(0)|^2 |FW_F(0)|^2 TW(0) TW*(-tau) e^{j2pi nu tau}
//   e^{j pi [(Mt - 1) tau/T + (Nt - 1) nu T]} asinc_Mt(tau/T) asinc_Nt(nu T).
// Needs a rect frequency window and a T-periodic time window.
cplx corollary1_closed_form(const WindowSpec& fw, const WindowSpec& tw, int Mt, int Nt,
                            const DDGrid& grid, double tau, double nu, cplx h_nu_0 = 1.0,
                            cplx H_tau_0 = 1.0);

enum class CutAxis { zero_doppler, zero_delay };

struct Cut {
  std::vector<double> offsets;
  std::vector<cplx> values;
  std::vector<double> mag;
  std::vector<double> mag_db;
};

// dB values are relative to the cut peak and floored at kCutFloorDb.
inline constexpr double kCutFloorDb = -400.0;
Cut extract_cut(const AmbiguitySurface& s, CutAxis axis);

}  // namespace ddshaper
