#include "ddshaper/ambiguity.hpp"

#include <algorithm>
#include <cmath>

#include "ddshaper/errors.hpp"
#include "ddshaper/parallel.hpp"

namespace ddshaper {

namespace {

struct Overlap {
  long long i_lo = 0;
  long long i_hi = -1;  // inclusive
  long long s = 0;      // y index = x index + s
};

Overlap overlap(const SampledSignal& x, const SampledSignal& y, double tau) {
  Overlap o;
  o.s = grid_index(x.t0 - tau - y.t0, x.dt, "cross_ambiguity: delay");
  long long nx = static_cast<long long>(x.size());
  long long ny = static_cast<long long>(y.size());
  o.i_lo = std::max(0LL, -o.s);
  o.i_hi = std::min(nx, ny - o.s) - 1;
  return o;
}

// sum_q p[q] e^{-j2pi nu (u0 + q dt)}, rotating in blocks that restart from an
// exact phase.
cplx modulated_sum(const std::vector<cplx>& p, double u0, double dt, double nu) {
  constexpr std::size_t kBlock = 256;
  const cplx rot = cis2pi(-nu * dt);
  cplx acc{};
  for (std::size_t b = 0; b < p.size(); b += kBlock) {
    cplx ph = cis2pi(-nu * (u0 + static_cast<double>(b) * dt));
    cplx part{};
    std::size_t e = std::min(p.size(), b + kBlock);
    for (std::size_t q = b; q < e; ++q) {
      part += p[q] * ph;
      ph *= rot;
    }
    acc += part;
  }
  return acc;
}

void check_steps(const SampledSignal& x, const SampledSignal& y) {
  if (std::abs(x.dt - y.dt) > 1e-12 * x.dt) throw GridMismatch("cross_ambiguity: sample steps differ");
}

std::vector<cplx> lag_products(const SampledSignal& x, const SampledSignal& y, const Overlap& o) {
  std::vector<cplx> p;
  if (o.i_hi < o.i_lo) return p;
  p.reserve(static_cast<std::size_t>(o.i_hi - o.i_lo + 1));
  for (long long i = o.i_lo; i <= o.i_hi; ++i) {
    p.push_back(x.samples[static_cast<std::size_t>(i)] *
                std::conj(y.samples[static_cast<std::size_t>(i + o.s)]));
  }
  return p;
}

bool same_axis(const Axis& a, const Axis& b) {
  return a.count == b.count && std::abs(a.start - b.start) <= 1e-12 * std::max(1.0, std::abs(a.start)) &&
         std::abs(a.step - b.step) <= 1e-12 * a.step;
}

}  // namespace

cplx cross_ambiguity_at(const SampledSignal& x, const SampledSignal& y, double tau, double nu) {
  check_steps(x, y);
  Overlap o = overlap(x, y, tau);
  std::vector<cplx> p = lag_products(x, y, o);
  if (p.empty()) return {};
  double u0 = y.t0 + static_cast<double>(o.i_lo + o.s) * x.dt;
  return x.dt * modulated_sum(p, u0, x.dt, nu);
}

AmbiguitySurface cross_ambiguity(const SampledSignal& x, const SampledSignal& y, const Axis& tau,
                                 const Axis& nu) {
  check_steps(x, y);
  AmbiguitySurface s;
  s.tau = tau;
  s.nu = nu;
  s.values.assign(tau.count * nu.count, cplx{});
  for (std::size_t i = 0; i < tau.count; ++i) overlap(x, y, tau.at(i));  // grid validation up front
  parallel_for(tau.count, [&](std::size_t i) {
    Overlap o = overlap(x, y, tau.at(i));
    std::vector<cplx> p = lag_products(x, y, o);
    if (p.empty()) return;
    double u0 = y.t0 + static_cast<double>(o.i_lo + o.s) * x.dt;
    for (std::size_t j = 0; j < nu.count; ++j) {
      s.values[i * nu.count + j] = x.dt * modulated_sum(p, u0, x.dt, nu.at(j));
    }
  });
  for (std::size_t q = 0; q < s.values.size(); ++q) {
    double a = std::abs(s.values[q]);
    if (a > s.peak_mag) {
      s.peak_mag = a;
      s.peak_tau = q / nu.count;
      s.peak_nu = q % nu.count;
    }
  }
  return s;
}

cplx spectral_ambiguity_at(const SpectrumSignal& X, const SpectrumSignal& Y, double tau, double nu) {
  if (std::abs(X.df - Y.df) > 1e-12 * X.df) throw GridMismatch("spectral_ambiguity: steps differ");
  long long s = grid_index(X.f0 - nu - Y.f0, X.df, "spectral_ambiguity: Doppler shift");
  long long nx = static_cast<long long>(X.size());
  long long ny = static_cast<long long>(Y.size());
  long long lo = std::max(0LL, -s);
  long long hi = std::min(nx, ny - s) - 1;
  std::vector<cplx> p;
  for (long long i = lo; i <= hi; ++i) {
    p.push_back(X.samples[static_cast<std::size_t>(i)] * std::conj(Y.samples[static_cast<std::size_t>(i + s)]));
  }
  if (p.empty()) return {};
  // modulated_sum uses e^{-j2pi nu u}; pass -tau for e^{+j2pi f tau}.
  return X.df * modulated_sum(p, X.f0 + static_cast<double>(lo) * X.df, X.df, -tau);
}

cplx af_lattice_from_zak(const ZakImage& zx, const ZakImage& zy, int n, int m) {
  if (!same_axis(zx.tau, zy.tau) || !same_axis(zx.nu, zy.nu) ||
      std::abs(zx.grid.T - zy.grid.T) > 1e-12 * zx.grid.T) {
    throw GridMismatch("af_lattice_from_zak: images are on different grids");
  }
  const double T = zx.grid.T;
  if (!on_grid(T, zx.tau.step) || !on_grid(1.0 / T, zx.nu.step)) {
    throw GridMismatch("af_lattice_from_zak: axis steps do not divide the periods");
  }
  const std::size_t P = static_cast<std::size_t>(std::llround(T / zx.tau.step));
  const std::size_t Pn = static_cast<std::size_t>(std::llround(1.0 / (T * zx.nu.step)));
  if (zx.tau.count < P || zx.nu.count < Pn) {
    throw DomainError("af_lattice_from_zak: images do not cover the fundamental rectangle");
  }
  std::vector<cplx> nu_phase(Pn);
  for (std::size_t j = 0; j < Pn; ++j) nu_phase[j] = cis2pi(n * zx.nu.at(j) * T);
  cplx acc{};
  for (std::size_t i = 0; i < P; ++i) {
    cplx row{};
    for (std::size_t j = 0; j < Pn; ++j) row += zx.at(i, j) * std::conj(zy.at(i, j)) * nu_phase[j];
    acc += row * cis2pi(-m * zx.tau.at(i) / T);
  }
  return acc * zx.tau.step * zx.nu.step;
}

cplx LatticeAf::at(int n, int m) const {
  if (n < range.n_lo || n > range.n_hi || m < range.m_lo || m > range.m_hi) {
    throw DomainError("lattice: point outside the sampled range");
  }
  std::size_t w = static_cast<std::size_t>(range.m_hi - range.m_lo + 1);
  return values[static_cast<std::size_t>(n - range.n_lo) * w + static_cast<std::size_t>(m - range.m_lo)];
}

namespace {

template <class F>
LatticeAf build_lattice(double T, const LatticeRange& r, F&& f) {
  if (r.n_hi < r.n_lo || r.m_hi < r.m_lo) throw DomainError("lattice: empty range");
  LatticeAf lat;
  lat.T = T;
  lat.range = r;
  std::size_t w = static_cast<std::size_t>(r.m_hi - r.m_lo + 1);
  std::size_t h = static_cast<std::size_t>(r.n_hi - r.n_lo + 1);
  lat.values.assign(w * h, cplx{});
  parallel_for(h, [&](std::size_t a) {
    for (std::size_t b = 0; b < w; ++b) {
      lat.values[a * w + b] = f(r.n_lo + static_cast<int>(a), r.m_lo + static_cast<int>(b));
    }
  });
  return lat;
}

}  // namespace

LatticeAf lattice_from_signals(const SampledSignal& x, const SampledSignal& y, double T,
                               const LatticeRange& range) {
  return build_lattice(T, range, [&](int n, int m) { return cross_ambiguity_at(x, y, n * T, m / T); });
}

LatticeAf lattice_from_zak(const ZakImage& zx, const ZakImage& zy, const LatticeRange& range) {
  return build_lattice(zx.grid.T, range, [&](int n, int m) { return af_lattice_from_zak(zx, zy, n, m); });
}

cplx zak_product_series(const LatticeAf& lattice, double tau, double nu, const LatticeRange& trunc) {
  const auto& r = lattice.range;
  if (trunc.n_lo < r.n_lo || trunc.n_hi > r.n_hi || trunc.m_lo < r.m_lo || trunc.m_hi > r.m_hi) {
    throw DomainError("zak_product_series: lattice does not cover the requested truncation");
  }
  const double T = lattice.T;
  cplx acc{};
  for (int n = trunc.n_lo; n <= trunc.n_hi; ++n) {
    cplx row{};
    for (int m = trunc.m_lo; m <= trunc.m_hi; ++m) row += lattice.at(n, m) * cis2pi(m * tau / T);
    acc += row * cis2pi(-n * nu * T);
  }
  return acc;
}

cplx theorem1_decomposition(const AtomPair& atoms, const DDGrid& grid, double tau, double nu,
                            std::optional<int> trunc) {
  if (atoms.is_impulse_pair) {
    throw Unsupported("theorem1_decomposition: impulse atoms, use the localization or closed forms");
  }
  const auto& h = atoms.h_tau;
  const auto& H = atoms.H_nu;
  if (h.empty() || H.empty()) throw DomainError("theorem1_decomposition: empty atom");
  const double T = grid.T;
  // A_{h_tau}(sigma, .) vanishes for |sigma| >= W; A_{h_nu}(., mu) for |mu| >= B.
  const double W = h.duration();
  const double B = H.df * static_cast<double>(H.size());
  int n_lo = static_cast<int>(std::ceil((-W - tau) / T - 1e-12));
  int n_hi = static_cast<int>(std::floor((W - tau) / T + 1e-12));
  if (trunc) {
    n_lo = std::max(n_lo, -*trunc);
    n_hi = std::min(n_hi, *trunc);
  }
  int m_lo = static_cast<int>(std::ceil((-B - nu) * T - 1e-12));
  int m_hi = static_cast<int>(std::floor((B - nu) * T + 1e-12));
  cplx acc{};
  for (int n = n_lo; n <= n_hi; ++n) {
    cplx a = cross_ambiguity_at(h, h, tau + n * T, nu);
    if (a == cplx{}) continue;
    cplx b{};
    for (int m = m_lo; m <= m_hi; ++m) b += spectral_ambiguity_at(H, H, -n * T, nu + m / T);
    acc += a * b;
  }
  return acc;
}

cplx localized_af_prediction(const DDGrid& grid, cplx h_nu_0, cplx H_tau_0, double tau, double nu) {
  const double T = grid.T;
  const double tau_snap = 0.5 * grid.dt();
  const double nu_snap = 0.5 / (T * grid.N * grid.Q);
  bool on_delay = std::abs(tau - std::round(tau / T) * T) <= tau_snap;
  bool on_doppler = std::abs(nu - std::round(nu * T) / T) <= nu_snap;
  if (!on_delay || !on_doppler) return {};
  return std::norm(h_nu_0) * std::norm(H_tau_0);
}

cplx theorem3_af(const WindowSpec& fw, const WindowSpec& tw, const DDGrid& grid, double tau,
                 double nu, const TruncationOptions& opt) {
  grid.validate();
  validate_window(fw);
  validate_window(tw);
  if (fw.domain != Domain::frequency || tw.domain != Domain::time) {
    throw Unsupported("theorem3_af: needs a frequency window and a time window");
  }
  const double T = grid.T;
  const HarmonicSet hs = dual_harmonics(fw, T);

  cplx fw_sum{};
  if (!opt.n_trunc) {
    for (std::size_t q = 0; q < hs.coef.size(); ++q) {
      double r = static_cast<double>(hs.r_lo + static_cast<long long>(q));
      fw_sum += T * hs.coef[q] * hs.coef[q] * cis2pi(r * tau / T);
    }
  } else {
    const int K = *opt.n_trunc;
    const double df = 1.0 / (64.0 * T * (K + 1));
    SpectrumSignal F = realize_spectral_window(fw, df, 0.5 * df);
    for (int n = -K; n <= K; ++n) fw_sum += spectral_ambiguity_at(F, F, tau - n * T, 0.0);
  }

  const int m_trunc = opt.m_trunc ? *opt.m_trunc : std::max<int>(0, static_cast<int>(hs.coef.size()) - 1);
  const SampledSignal w = realize_time_window(tw, grid.dt());
  cplx tw_sum{};
  for (int m = -m_trunc; m <= m_trunc; ++m) {
    tw_sum += cross_ambiguity_at(w, w, tau, nu - m / T) * cis2pi(m * tau / T);
  }
  return std::norm(opt.h_nu_0) * std::norm(opt.H_tau_0) * fw_sum * tw_sum;
}

cplx corollary1_closed_form(const WindowSpec& fw, const WindowSpec& tw, int Mt, int Nt,
                            const DDGrid& grid, double tau, double nu, cplx h_nu_0, cplx H_tau_0) {
  grid.validate();
  validate_window(fw);
  validate_window(tw);
  if (Mt < 1 || Nt < 1) throw DomainError("corollary1_closed_form: period counts must be positive");
  if (fw.domain != Domain::frequency || fw.kind != WindowKind::rect) {
    throw PreconditionError("corollary1_closed_form: frequency window must be rectangular");
  }
  if (tw.domain != Domain::time || tw.kind == WindowKind::rrc_dual) {
    throw PreconditionError("corollary1_closed_form: time window must be T-periodic in its support");
  }
  const double T = grid.T;
  if (!periodicity_check(realize_window(tw, grid.dt()), T, 1e-9)) {
    throw PreconditionError("corollary1_closed_form: time window is not T-periodic");
  }
  const double fw0 = window_value(fw, 0.0);
  const double tw0 = window_value(tw, 0.0);
  const double twm = window_value(tw, -tau);
  cplx phase = cis2pi(nu * tau) * cis2pi(0.5 * ((Mt - 1) * tau / T + (Nt - 1) * nu * T));
  return std::norm(h_nu_0) * std::norm(H_tau_0) * fw0 * fw0 * tw0 * twm * phase *
         asinc_eval(tau / T, Mt) * asinc_eval(nu * T, Nt);
}

Cut extract_cut(const AmbiguitySurface& s, CutAxis axis) {
  const Axis& fixed = axis == CutAxis::zero_doppler ? s.nu : s.tau;
  const Axis& run = axis == CutAxis::zero_doppler ? s.tau : s.nu;
  long long z = grid_index(-fixed.start, fixed.step, "extract_cut: zero line");
  if (z < 0 || z >= static_cast<long long>(fixed.count)) throw DomainError("extract_cut: zero line outside the surface");
  Cut c;
  double peak = 0.0;
  for (std::size_t q = 0; q < run.count; ++q) {
    cplx v = axis == CutAxis::zero_doppler ? s.at(q, static_cast<std::size_t>(z)) : s.at(static_cast<std::size_t>(z), q);
    c.offsets.push_back(run.at(q));
    c.values.push_back(v);
    c.mag.push_back(std::abs(v));
    peak = std::max(peak, std::abs(v));
  }
  for (double m : c.mag) {
    double db = (peak > 0.0 && m > 0.0) ? 20.0 * std::log10(m / peak) : kCutFloorDb;
    c.mag_db.push_back(std::max(db, kCutFloorDb));
  }
  return c;
}

}  // namespace ddshaper
