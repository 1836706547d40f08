#include "ddshaper/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "ddshaper/ambiguity.hpp"
#include "ddshaper/basis.hpp"
#include "ddshaper/errors.hpp"
#include "ddshaper/io.hpp"
#include "ddshaper/modem.hpp"
#include "ddshaper/zak.hpp"

namespace ddshaper {

namespace {

std::string size_label(const DDGrid& g) {
  return std::to_string(g.M) + "x" + std::to_string(g.N) + "xQ" + std::to_string(g.Q);
}

DDGrid grid_of(const VerifyOptions& opt, int M, int N, int Q) {
  DDGrid g;
  g.M = opt.M.value_or(M);
  g.N = opt.N.value_or(N);
  g.Q = opt.Q.value_or(Q);
  g.T = opt.T;
  g.validate();
  return g;
}

CheckRow make_row(const VerifyOptions& opt, std::string name, const DDGrid& g, double err, double tol) {
  double t = opt.tol.value_or(tol);
  return CheckRow{std::move(name), size_label(g), err, t, err <= t};
}

std::vector<cplx> random_samples(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& s : v) {
    double re = d(rng);
    double im = d(rng);
    s = cplx(re, im);
  }
  return v;
}

SampledSignal random_signal(std::mt19937_64& rng, const DDGrid& g, double t0, double periods) {
  SampledSignal x;
  x.dt = g.dt();
  x.t0 = t0;
  x.samples = random_samples(rng, static_cast<std::size_t>(std::llround(periods * g.T / x.dt)));
  return x;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& s : v) m = std::max(m, std::abs(s));
  return m;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Axis point_axis(double v) { return Axis{v, 1.0, 1}; }

}  // namespace

std::vector<std::string> suite_names() {
  return {"lemmas", "theorem1", "theorem2", "theorem3", "corollary1", "figures", "loopback", "all"};
}

std::vector<CheckRow> lemma_suite(const VerifyOptions& opt) {
  const DDGrid g = grid_of(opt, 4, 4, 8);
  std::mt19937_64 rng(opt.seed);
  std::vector<CheckRow> rows;
  const std::size_t MN = static_cast<std::size_t>(g.M) * g.N;

  {
    std::vector<cplx> x = random_samples(rng, MN);
    ZakMatrix Z = dzt(x, g.M, g.N);
    double ex = 0.0, ez = 0.0;
    for (const auto& v : x) ex += std::norm(v);
    for (const auto& v : Z.values) ez += std::norm(v);
    rows.push_back(make_row(opt, "dzt_idzt_roundtrip", g, max_diff(idzt(Z), x), 1e-12));
    rows.push_back(make_row(opt, "dzt_parseval", g, std::abs(ez - ex) / ex, 1e-12));
    ZakMatrix X(g.M, g.N);
    X.values = random_samples(rng, MN);
    rows.push_back(make_row(opt, "idzt_dzt_roundtrip", g, max_diff(dzt(idzt(X), g.M, g.N).values, X.values), 1e-12));
  }

  {
    double worst_qp = 0.0, worst_shift = 0.0, worst_lin = 0.0;
    std::uniform_int_distribution<int> shift(-static_cast<int>(2 * g.samples_per_period()),
                                             static_cast<int>(2 * g.samples_per_period()));
    std::uniform_real_distribution<double> dop(-2.0 / g.T, 2.0 / g.T);
    for (int trial = 0; trial < 10; ++trial) {
      SampledSignal x = random_signal(rng, g, -g.T + trial * g.dt(), 3.0);
      ZakImage z = zak_transform(x, g, delay_axis(g, -1, 1), doppler_axis(g, -1, 0));
      auto qp = quasi_periodicity_check(z, 1e-9);
      double peak = max_abs(z.values);
      worst_qp = std::max(worst_qp, std::max(qp.max_delay_err, qp.max_doppler_err) / peak);

      double tau0 = shift(rng) * g.dt();
      double nu0 = dop(rng);
      Axis tau = delay_axis(g, 0, 1);
      Axis nu = doppler_axis(g, 0, 0);
      ZakImage lhs = zak_transform(twisted_shift(x, tau0, nu0), g, tau, nu);
      Axis tau_s = tau, nu_s = nu;
      tau_s.start -= tau0;
      nu_s.start -= nu0;
      ZakImage base = zak_transform(x, g, tau_s, nu_s);
      double num = 0.0;
      for (std::size_t i = 0; i < tau.count; ++i) {
        for (std::size_t j = 0; j < nu.count; ++j) {
          cplx expect = cis2pi(nu0 * (tau.at(i) - tau0)) * base.at(i, j);
          num = std::max(num, std::abs(lhs.at(i, j) - expect));
        }
      }
      worst_shift = std::max(worst_shift, num / std::max(max_abs(lhs.values), 1e-300));

      SampledSignal y = random_signal(rng, g, x.t0, 3.0);
      cplx a(0.3, -1.1), b(-0.7, 0.25);
      SampledSignal mix = x;
      for (std::size_t i = 0; i < mix.size(); ++i) mix.samples[i] = a * x.samples[i] + b * y.samples[i];
      ZakImage zm = zak_transform(mix, g, tau, nu);
      ZakImage zx = zak_transform(x, g, tau, nu);
      ZakImage zy = zak_transform(y, g, tau, nu);
      std::vector<cplx> comb(zm.values.size());
      for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = a * zx.values[i] + b * zy.values[i];
      worst_lin = std::max(worst_lin, max_diff(zm.values, comb) / max_abs(zm.values));
    }
    rows.push_back(make_row(opt, "lemma1_quasi_periodicity", g, worst_qp, 1e-9));
    rows.push_back(make_row(opt, "lemma2_twisted_shift", g, worst_shift, 1e-9));
    rows.push_back(make_row(opt, "zak_linearity", g, worst_lin, 1e-12));
  }

  {
    SampledSignal x = random_signal(rng, g, 0.0, 2.0);
    SampledSignal y = random_signal(rng, g, 0.5 * g.T, 2.0);
    Axis tau = delay_axis(g, 0, 0);
    Axis nu = doppler_axis(g, 0, 0);
    ZakImage zx = zak_transform(x, g, tau, nu);
    ZakImage zy = zak_transform(y, g, tau, nu);
    LatticeRange r = LatticeRange::symmetric(2);
    LatticeAf from_zak = lattice_from_zak(zx, zy, r);
    LatticeAf direct = lattice_from_signals(x, y, g.T, r);
    double peak = max_abs(direct.values);
    double worst = 0.0;
    for (std::size_t i = 0; i < direct.values.size(); ++i) {
      double ref = std::abs(direct.values[i]);
      double d = std::abs(from_zak.values[i] - direct.values[i]);
      worst = std::max(worst, ref > 1e-9 * peak ? d / ref : d / peak);
    }
    rows.push_back(make_row(opt, "lemma3_lattice_duality", g, worst, 1e-3));

    cplx e = af_lattice_from_zak(zx, zx, 0, 0);
    rows.push_back(make_row(opt, "lemma3_origin_energy", g, std::abs(e - x.energy()) / x.energy(), 1e-6));

    // Full coverage: every lag the supports allow, one full period of the
    // discrete Doppler harmonics.
    const int half = static_cast<int>(g.samples_per_period() / 2);
    LatticeRange full{-3, 3, -half, half - 1};
    LatticeAf lat = lattice_from_signals(x, y, g.T, full);
    double peak_p = 0.0, worst_p = 0.0;
    for (std::size_t i = 0; i < tau.count; ++i) {
      for (std::size_t j = 0; j < nu.count; ++j) {
        cplx prod = zx.at(i, j) * std::conj(zy.at(i, j));
        peak_p = std::max(peak_p, std::abs(prod));
        worst_p = std::max(worst_p, std::abs(zak_product_series(lat, tau.at(i), nu.at(j), full) - prod));
      }
    }
    rows.push_back(make_row(opt, "lemma3_zak_product_series", g, worst_p / peak_p, 1e-6));
  }
  return rows;
}

namespace {

// C-infinity bump on [0, 1), peak 1 at x = 1/2, times cos(k pi x).
double bump_mode(int k, double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(4.0 - 1.0 / (x * (1.0 - x))) * std::cos(k * kPi * x);
}

// Smooth atoms: h_tau = sum c_k bump_mode(k, t/T) on [0, T), H_nu = sum d_k
// bump_mode(k, f T) on [0, 1/T) sampled with `fine` points per Doppler period.
AtomPair smooth_atoms(std::mt19937_64& rng, const DDGrid& g, int fine) {
  std::vector<cplx> c = random_samples(rng, 3);
  std::vector<cplx> d = random_samples(rng, 3);
  AtomPair a;
  a.h_tau.dt = g.dt();
  a.h_tau.t0 = 0.0;
  for (std::size_t i = 0; i < g.samples_per_period(); ++i) {
    double t = i * g.dt();
    cplx v{};
    for (int k = 0; k < 3; ++k) v += c[k] * bump_mode(k, t / g.T);
    a.h_tau.samples.push_back(v);
  }
  a.H_nu.df = 1.0 / (g.T * fine);
  a.H_nu.f0 = 0.0;
  for (int i = 0; i < fine; ++i) {
    double f = i * a.H_nu.df;
    cplx v{};
    for (int k = 0; k < 3; ++k) v += d[k] * bump_mode(k, f * g.T);
    a.H_nu.samples.push_back(v);
  }
  return a;
}

// Direct AF of the basis realized from the Zak image (inverse Zak over
// NQ - 1 delay periods centred on the origin) against the decomposition.
double theorem1_error(const AtomPair& atoms, const DDGrid& g) {
  const int K = g.N * g.Q / 2 - 1;
  ZakImage z = dd_basis_image(BasisId{0, 0}, g, atoms, delay_axis(g, 0, 0), doppler_axis(g, 0, 0),
                              PeriodExtent{0, 0, 0, 0});
  SampledSignal phi = inverse_zak(z, -K, K);
  double worst = 0.0;
  for (double tf : {0.0, 0.125, 0.25}) {
    for (double vf : {0.0, 0.125, 0.25}) {
      double tau = tf * g.T, nu = vf / g.T;
      cplx lhs = cross_ambiguity_at(phi, phi, tau, nu);
      cplx rhs = theorem1_decomposition(atoms, g, tau, nu);
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
  }
  return worst;
}

AtomPair resample_delay_atom(const AtomPair& src, const DDGrid& g, const std::vector<cplx>& c) {
  AtomPair a = src;
  a.h_tau.dt = g.dt();
  a.h_tau.samples.clear();
  for (std::size_t i = 0; i < g.samples_per_period(); ++i) {
    double t = i * g.dt();
    cplx v{};
    for (int k = 0; k < 3; ++k) v += c[k] * bump_mode(k, t / g.T);
    a.h_tau.samples.push_back(v);
  }
  return a;
}

}  // namespace

std::vector<CheckRow> theorem1_suite(const VerifyOptions& opt) {
  DDGrid g = grid_of(opt, 4, 4, 8);
  DDGrid g2 = g;
  g2.Q = 2 * g.Q;
  std::mt19937_64 rng(opt.seed);
  const int fine = 1024;
  std::vector<cplx> c = random_samples(rng, 3);
  AtomPair base = smooth_atoms(rng, g, fine);
  AtomPair a1 = resample_delay_atom(base, g, c);
  AtomPair a2 = resample_delay_atom(base, g2, c);
  double e1 = theorem1_error(a1, g);
  double e2 = theorem1_error(a2, g2);
  std::vector<CheckRow> rows;
  rows.push_back(make_row(opt, "theorem1_decomposition", g, e1, 1e-2));
  rows.push_back(make_row(opt, "theorem1_decomposition", g2, e2, 1e-2));
  CheckRow conv{"theorem1_error_ratio_2Q_over_Q", size_label(g), e2 / e1, 1.0, e2 < e1};
  rows.push_back(conv);

  // Scaling the delay atom by s scales the sum by |s|^2.
  cplx s(1.3, -0.6);
  AtomPair sc = a1;
  for (auto& v : sc.h_tau.samples) v *= s;
  cplx r0 = theorem1_decomposition(a1, g, 0.125 * g.T, 0.125 / g.T);
  cplx r1 = theorem1_decomposition(sc, g, 0.125 * g.T, 0.125 / g.T);
  rows.push_back(make_row(opt, "theorem1_delay_atom_scaling", g, std::abs(r1 - std::norm(s) * r0) / std::abs(r0), 1e-12));
  return rows;
}

namespace {

double off_lattice_peak(const DDGrid& g, int Nt, int fine_per_period) {
  DDGrid gt = g;
  gt.N = Nt;
  ChainConfig cfg = make_chain_config(Preset::sinc_sinc, gt);
  SampledSignal p = truncated_basis_pulse(BasisId{0, 0}, gt, cfg.fw, cfg.tw);
  double peak = std::abs(cross_ambiguity_at(p, p, 0.0, 0.0));
  Axis nu{0.25 / g.T, 1.0 / (g.T * fine_per_period), static_cast<std::size_t>(fine_per_period / 2 + 1)};
  AmbiguitySurface s = cross_ambiguity(p, p, point_axis(0.0), nu);
  double m = 0.0;
  for (const auto& v : s.values) m = std::max(m, std::abs(v) / peak);
  return m;
}

}  // namespace

std::vector<CheckRow> theorem2_suite(const VerifyOptions& opt) {
  DDGrid g = grid_of(opt, 8, 32, 8);
  std::vector<CheckRow> rows;
  const cplx h0(0.8, 0.3), H0(-1.2, 0.5);
  const double expect = std::norm(h0) * std::norm(H0);
  rows.push_back(make_row(opt, "localized_on_origin", g,
                          std::abs(localized_af_prediction(g, h0, H0, 0.0, 0.0) - expect), 1e-15));
  rows.push_back(make_row(opt, "localized_off_lattice", g,
                          std::abs(localized_af_prediction(g, h0, H0, 0.5 * g.T, 0.0)), 0.0));
  rows.push_back(make_row(opt, "localized_on_lattice", g,
                          std::abs(localized_af_prediction(g, h0, H0, 3.0 * g.T, -2.0 / g.T) - expect), 1e-15));
  const int fine = 8 * 2 * g.N * g.Q;
  double a = off_lattice_peak(g, g.N, fine);
  double b = off_lattice_peak(g, 2 * g.N, fine);
  rows.push_back(make_row(opt, "localization_ratio_deviation_from_2", g, std::abs(a / b - 2.0), 0.2));
  return rows;
}

namespace {

struct PresetPulse {
  Preset preset;
  ChainConfig cfg;
  SampledSignal pulse;
};

PresetPulse preset_pulse(Preset p, const DDGrid& g, double beta) {
  PresetPulse out{p, make_chain_config(p, g, beta), {}};
  out.pulse = truncated_basis_pulse(BasisId{0, 0}, g, out.cfg.fw, out.cfg.tw);
  return out;
}

}  // namespace

std::vector<CheckRow> theorem3_suite(const VerifyOptions& opt) {
  DDGrid g = grid_of(opt, 8, 8, 8);
  std::vector<CheckRow> rows;
  for (Preset p : {Preset::sinc_sinc, Preset::rrc_rrc, Preset::cos_rrc}) {
    PresetPulse pp = preset_pulse(p, g, opt.beta);
    double worst = 0.0;
    for (double tf : {0.0, 0.25, 0.5}) {
      for (double vf : {0.0, 0.25, 0.5}) {
        double tau = tf * g.delay_step(), nu = vf * g.doppler_step();
        cplx num = cross_ambiguity_at(pp.pulse, pp.pulse, tau, nu);
        cplx th = theorem3_af(pp.cfg.fw, pp.cfg.tw, g, tau, nu);
        worst = std::max(worst, std::abs(th - num) / std::abs(num));
      }
    }
    rows.push_back(make_row(opt, "theorem3_" + preset_name(p) + "_mainlobe", g, worst, 1e-2));
  }
  {
    ChainConfig cfg = make_chain_config(Preset::sinc_sinc, g, opt.beta);
    double peak = std::abs(theorem3_af(cfg.fw, cfg.tw, g, 0.0, 0.0));
    double worst = 0.0;
    for (int k = 1; k < g.N; ++k) worst = std::max(worst, std::abs(theorem3_af(cfg.fw, cfg.tw, g, 0.0, g.nu(k))) / peak);
    rows.push_back(make_row(opt, "theorem3_rect_doppler_nulls", g, worst, 1e-9));
  }
  return rows;
}

namespace {

struct Corollary1Errors {
  double mag_rel = 0.0;
  double mag_abs_near_nulls = 0.0;
  double complex_rel = 0.0;
};

Corollary1Errors corollary1_errors(const DDGrid& g, const ChainConfig& cfg, const SampledSignal& pulse,
                                   double tau0, double nu0) {
  const std::size_t nt = g.samples_per_period();
  const std::size_t nv = static_cast<std::size_t>(g.N) * g.Q;
  Axis tau{tau0, g.dt(), nt};
  Axis nu{nu0, 1.0 / (g.T * nv), nv};
  AmbiguitySurface s = cross_ambiguity(pulse, pulse, tau, nu);
  const double peak = std::abs(cross_ambiguity_at(pulse, pulse, 0.0, 0.0));
  auto near_null = [](double x, int count, double cell) {
    // x in units of the null spacing; nulls at integers not divisible by count.
    double r = std::round(x);
    long long ri = static_cast<long long>(r);
    return ri % count != 0 && std::abs(x - r) <= cell * (1.0 + 1e-9);
  };
  Corollary1Errors e;
  for (std::size_t i = 0; i < tau.count; ++i) {
    for (std::size_t j = 0; j < nu.count; ++j) {
      double t = tau.at(i), v = nu.at(j);
      cplx cf = corollary1_closed_form(cfg.fw, cfg.tw, g.M, g.N, g, t, v);
      cplx nm = s.at(i, j);
      bool excl = near_null(t / g.delay_step(), g.M, g.dt() / g.delay_step()) ||
                  near_null(v / g.doppler_step(), g.N, nu.step / g.doppler_step());
      double dm = std::abs(std::abs(cf) - std::abs(nm));
      if (excl) {
        e.mag_abs_near_nulls = std::max(e.mag_abs_near_nulls, dm / peak);
      } else {
        e.mag_rel = std::max(e.mag_rel, dm / std::abs(nm));
        e.complex_rel = std::max(e.complex_rel, std::abs(cf - nm) / std::abs(nm));
      }
    }
  }
  return e;
}

}  // namespace

std::vector<CheckRow> corollary1_suite(const VerifyOptions& opt) {
  DDGrid g = grid_of(opt, 8, 8, 8);
  std::vector<CheckRow> rows;
  ChainConfig cfg = make_chain_config(Preset::sinc_sinc, g, opt.beta);
  SampledSignal pulse = truncated_basis_pulse(BasisId{0, 0}, g, cfg.fw, cfg.tw);
  const double peak = std::abs(cross_ambiguity_at(pulse, pulse, 0.0, 0.0));
  cplx c00 = corollary1_closed_form(cfg.fw, cfg.tw, g.M, g.N, g, 0.0, 0.0);
  rows.push_back(make_row(opt, "corollary1_origin", g, std::abs(c00 - peak) / peak, 1e-9));

  double closed_null = 0.0, numeric_null = 0.0;
  for (int j = 1; j < g.M; ++j) {
    double t = g.tau(j);
    closed_null = std::max(closed_null, std::abs(corollary1_closed_form(cfg.fw, cfg.tw, g.M, g.N, g, t, 0.0)) / peak);
    numeric_null = std::max(numeric_null, std::abs(cross_ambiguity_at(pulse, pulse, t, 0.0)) / peak);
  }
  for (int i = 1; i < g.N; ++i) {
    double v = g.nu(i);
    closed_null = std::max(closed_null, std::abs(corollary1_closed_form(cfg.fw, cfg.tw, g.M, g.N, g, 0.0, v)) / peak);
    numeric_null = std::max(numeric_null, std::abs(cross_ambiguity_at(pulse, pulse, 0.0, v)) / peak);
  }
  rows.push_back(make_row(opt, "corollary1_closed_form_nulls", g, closed_null, 1e-12));
  rows.push_back(make_row(opt, "corollary1_numeric_nulls", g, numeric_null, 1e-3));

  Corollary1Errors fr = corollary1_errors(g, cfg, pulse, 0.0, 0.0);
  rows.push_back(make_row(opt, "corollary1_magnitude_rel", g, fr.mag_rel, 1e-2));
  rows.push_back(make_row(opt, "corollary1_magnitude_abs_near_nulls", g, fr.mag_abs_near_nulls, 1e-3));
  rows.push_back(make_row(opt, "corollary1_complex_rel", g, fr.complex_rel, 1e-2));
  Corollary1Errors cr = corollary1_errors(g, cfg, pulse, -0.5 * g.T, -0.5 / g.T);
  rows.push_back(make_row(opt, "corollary1_magnitude_rel_centred", g, cr.mag_rel, 1e-2));
  rows.push_back(make_row(opt, "corollary1_magnitude_abs_near_nulls_centred", g, cr.mag_abs_near_nulls, 1e-3));
  return rows;
}

std::vector<CheckRow> figures_suite(const VerifyOptions& opt) {
  DDGrid g = grid_of(opt, 32, 32, 8);
  std::vector<CheckRow> rows;
  const std::size_t half_t = g.samples_per_period() / 2;
  const std::size_t half_v = static_cast<std::size_t>(g.N) * g.Q / 2;
  const Axis tau = centred_axis(g.dt(), half_t);
  const Axis nu = centred_axis(1.0 / (g.T * g.N * g.Q), half_v);
  struct Cuts {
    Cut zd;  // zero Doppler
    Cut zl;  // zero delay
  };
  std::vector<Cuts> cuts;
  const Preset presets[] = {Preset::sinc_sinc, Preset::rrc_rrc, Preset::cos_rrc};
  for (Preset p : presets) {
    PresetPulse pp = preset_pulse(p, g, opt.beta);
    Cuts c;
    c.zd = extract_cut(cross_ambiguity(pp.pulse, pp.pulse, tau, point_axis(0.0)), CutAxis::zero_doppler);
    c.zl = extract_cut(cross_ambiguity(pp.pulse, pp.pulse, point_axis(0.0), nu), CutAxis::zero_delay);
    const double a00 = pp.pulse.energy();
    double over = 0.0;
    for (double m : c.zd.mag) over = std::max(over, m / a00 - 1.0);
    for (double m : c.zl.mag) over = std::max(over, m / a00 - 1.0);
    double zd_null = -1e300, zl_null = -1e300;
    for (std::size_t q = 0; q < tau.count; ++q) {
      long long idx = static_cast<long long>(q) - static_cast<long long>(half_t);
      if (idx % g.Q == 0 && (idx / g.Q) % g.M != 0) zd_null = std::max(zd_null, c.zd.mag_db[q]);
    }
    for (std::size_t q = 0; q < nu.count; ++q) {
      long long idx = static_cast<long long>(q) - static_cast<long long>(half_v);
      if (idx % g.Q == 0 && (idx / g.Q) % g.N != 0) zl_null = std::max(zl_null, c.zl.mag_db[q]);
    }
    rows.push_back(make_row(opt, "fig_" + preset_name(p) + "_zero_doppler_nulls_db", g, zd_null, -60.0));
    rows.push_back(make_row(opt, "fig_" + preset_name(p) + "_zero_delay_nulls_db", g, zl_null, -60.0));
    rows.push_back(make_row(opt, "fig_" + preset_name(p) + "_peak_bound", g, std::max(over, 0.0), 1e-12));
    cuts.push_back(std::move(c));
  }
  auto edge_max = [&](const Cut& c) {
    double m = -1e300;
    for (std::size_t q = 0; q < c.offsets.size(); ++q) {
      double x = std::abs(c.offsets[q] / g.T);
      if (x >= 0.4 - 1e-12 && x <= 0.5 + 1e-12) m = std::max(m, c.mag_db[q]);
    }
    return m;
  };
  rows.push_back(make_row(opt, "fig_rrc_minus_sinc_edge_db", g, edge_max(cuts[1].zd) - edge_max(cuts[0].zd), -20.0));
  double diff = 0.0;
  const double p_sinc = *std::max_element(cuts[0].zl.mag.begin(), cuts[0].zl.mag.end());
  const double p_cos = *std::max_element(cuts[2].zl.mag.begin(), cuts[2].zl.mag.end());
  for (std::size_t q = 0; q < nu.count; ++q) {
    diff = std::max(diff, std::abs(cuts[2].zl.mag[q] / p_cos - cuts[0].zl.mag[q] / p_sinc));
  }
  rows.push_back(make_row(opt, "fig_cos_vs_sinc_zero_delay", g, diff, 5e-2));
  return rows;
}

std::vector<CheckRow> loopback_suite(const VerifyOptions& opt) {
  DDGrid g = grid_of(opt, 8, 8, 8);
  std::vector<CheckRow> rows;
  DDSymbolFrame X = random_qpsk_frame(g.M, g.N, opt.seed);
  for (Preset p : {Preset::sinc_sinc, Preset::rrc_rrc, Preset::cos_rrc}) {
    ChainConfig cfg = make_chain_config(p, g, opt.beta);
    SampledSignal s = shape_transmit(X, cfg);
    Reception rx = matched_filter_receive(s, cfg);
    EvmReport rep = evm_ser_report(rx.frame, X);
    rows.push_back(make_row(opt, "loopback_" + preset_name(p) + "_evm_db", g, rep.evm_db, -30.0));
    rows.push_back(make_row(opt, "loopback_" + preset_name(p) + "_ser", g, rep.ser, 0.0));

    SampledSignal r = apply_paths(s, PathSet{Path{1.0, g.delay_step(), 0.0}});
    Reception rd = matched_filter_receive(r, cfg);
    ZakMatrix pred = predict_delay_shift(X.symbols, 1, 1.0);
    rows.push_back(make_row(opt, "delay_path_" + preset_name(p) + "_max_symbol_err", g,
                            max_diff(rd.frame.symbols.values, pred.values), 1e-2));
  }
  {
    ChainConfig cfg = make_chain_config(Preset::sinc_sinc, g, opt.beta);
    cfg.ideal_basis_rx = true;
    SampledSignal s = shape_transmit(X, cfg);
    Reception rx = matched_filter_receive(s, cfg);
    rows.push_back(make_row(opt, "ideal_rx_sinc_sinc_recovers_frame", g, max_diff(rx.frame.symbols.values, X.symbols.values), 1e-9));
    SampledSignal r = apply_paths(s, PathSet{Path{1.0, 3 * g.delay_step(), 0.0}});
    Reception rd = matched_filter_receive(r, cfg);
    ZakMatrix pred = predict_delay_shift(X.symbols, 3, 1.0);
    rows.push_back(make_row(opt, "cp_validity_sinc_sinc", g, max_diff(rd.frame.symbols.values, pred.values), 1e-9));
  }
  return rows;
}

std::vector<CheckRow> run_suite(const std::string& suite, const VerifyOptions& opt) {
  if (suite == "lemmas") return lemma_suite(opt);
  if (suite == "theorem1") return theorem1_suite(opt);
  if (suite == "theorem2") return theorem2_suite(opt);
  if (suite == "theorem3") return theorem3_suite(opt);
  if (suite == "corollary1") return corollary1_suite(opt);
  if (suite == "figures") return figures_suite(opt);
  if (suite == "loopback") return loopback_suite(opt);
  if (suite == "all") {
    std::vector<CheckRow> all;
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      auto part = run_suite(name, opt);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw DomainError("unknown suite: " + suite);
}

void write_rows_csv(std::ostream& os, const std::vector<CheckRow>& rows) {
  os << "check_name,size,max_err,tol,pass\n";
  for (const auto& r : rows) {
    os << r.name << ',' << r.size << ',' << format_double(r.max_err) << ',' << format_double(r.tol) << ','
       << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace ddshaper
