#include <doctest.h>

#include "ddshaper/ambiguity.hpp"
#include "ddshaper/errors.hpp"
#include "ddshaper/modem.hpp"
#include "ddshaper/zak.hpp"
#include "helpers.hpp"

using namespace ddshaper;
using namespace testutil;

namespace {

DDGrid grid(int M, int N, int Q = 8) {
  DDGrid g;
  g.M = M;
  g.N = N;
  g.Q = Q;
  return g;
}

double bump(double x) { return (x <= 0.0 || x >= 1.0) ? 0.0 : std::exp(4.0 - 1.0 / (x * (1.0 - x))); }

AtomPair bump_atoms(const DDGrid& g, unsigned seed) {
  std::vector<cplx> c = random_vec(4, seed);
  AtomPair a;
  a.h_tau.dt = g.dt();
  for (std::size_t i = 0; i < g.samples_per_period(); ++i) {
    double x = i * g.dt() / g.T;
    a.h_tau.samples.push_back(bump(x) * (c[0] + c[1] * std::cos(M_PI * x)));
  }
  const int nf = 1024;
  a.H_nu.df = 1.0 / (g.T * nf);
  for (int i = 0; i < nf; ++i) {
    double x = double(i) / nf;
    a.H_nu.samples.push_back(bump(x) * (c[2] + c[3] * std::sin(M_PI * x)));
  }
  return a;
}

SampledSignal rect_signal(double dt, std::size_t n) {
  SampledSignal s;
  s.dt = dt;
  s.samples.assign(n, 1.0);
  return s;
}

}  // namespace

TEST_CASE("triangle autocorrelation of a rectangle") {
  const double dt = 1.0 / 32.0;
  SampledSignal x = rect_signal(dt, 48);
  const double T0 = 48 * dt;
  Axis tau = centred_axis(dt, 60);
  AmbiguitySurface s = cross_ambiguity(x, x, tau, Axis{0.0, 1.0, 1});
  for (std::size_t i = 0; i < tau.count; ++i) {
    double t = tau.at(i);
    double expect = std::abs(t) <= T0 ? T0 - std::abs(t) : 0.0;
    CHECK(std::abs(s.at(i, 0) - expect) < 1e-12);
  }
  Cut c = extract_cut(s, CutAxis::zero_doppler);
  CHECK(c.mag[60] == doctest::Approx(T0));
  CHECK(c.mag_db[60] == 0.0);
  CHECK(c.mag_db[0] == kCutFloorDb);
  CHECK(c.mag[30] == doctest::Approx(T0 - 30 * dt));
  CHECK(s.peak_tau == 60);
  CHECK(s.peak_mag == doctest::Approx(T0));
}

TEST_CASE("cross ambiguity matches a direct sum") {
  const double dt = 1.0 / 16.0;
  SampledSignal x = random_signal(200, -1.0, dt, 1);
  SampledSignal y = random_signal(150, 0.5, dt, 2);
  Axis tau{-3.0, 5 * dt, 20};
  Axis nu{-1.3, 0.173, 15};
  AmbiguitySurface s = cross_ambiguity(x, y, tau, nu);
  double worst = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < tau.count; ++i) {
    for (std::size_t j = 0; j < nu.count; ++j) {
      cplx ref = brute_af(x, y, tau.at(i), nu.at(j));
      peak = std::max(peak, std::abs(ref));
      worst = std::max(worst, std::abs(s.at(i, j) - ref));
      CHECK(std::abs(cross_ambiguity_at(x, y, tau.at(i), nu.at(j)) - s.at(i, j)) < 1e-12 * (1.0 + std::abs(ref)));
    }
  }
  CHECK(worst <= 1e-12 * peak);
  CHECK(std::abs(cross_ambiguity_at(x, x, 0.0, 0.0) - x.energy()) < 1e-12 * x.energy());
}

TEST_CASE("autoambiguity is bounded by its origin value") {
  const double dt = 1.0 / 16.0;
  SampledSignal x = random_signal(100, 0.0, dt, 5);
  AmbiguitySurface s = cross_ambiguity(x, x, centred_axis(dt, 40), centred_axis(0.05, 30));
  for (const auto& v : s.values) CHECK(std::abs(v) <= x.energy() * (1.0 + 1e-12));
}

TEST_CASE("spectral form agrees with the time form") {
  // Spectra on a df grid; the signals are their inverse transforms, periodic
  // with 1/df, sampled finely enough for an exact one-period rectangle rule.
  const double df = 0.125, Tp = 1.0 / df, dt = 1.0 / 16.0;
  SpectrumSignal X, Y;
  X.df = Y.df = df;
  X.f0 = 0.0;
  Y.f0 = -0.5;
  X.samples = random_vec(16, 3);
  Y.samples = random_vec(20, 4);
  auto synth = [&](const SpectrumSignal& F, double t0, std::size_t n) {
    SampledSignal s;
    s.t0 = t0;
    s.dt = dt;
    for (std::size_t i = 0; i < n; ++i) {
      double t = t0 + i * dt;
      cplx acc{};
      for (std::size_t q = 0; q < F.size(); ++q) acc += F.samples[q] * expj(2.0 * M_PI * F.freq(q) * t);
      s.samples.push_back(df * acc);
    }
    return s;
  };
  const std::size_t per = static_cast<std::size_t>(Tp / dt);
  SampledSignal x = synth(X, 0.0, per);
  SampledSignal y = synth(Y, -Tp, 2 * per);
  for (double tau : {0.0, 0.25, 1.5, 3.0625}) {
    for (double nu : {0.0, 0.375, -0.25, 1.0}) {
      cplx t = cross_ambiguity_at(x, y, tau, nu);
      cplx f = spectral_ambiguity_at(X, Y, tau, nu);
      CHECK(std::abs(t - f) <= 1e-6 * std::max(1.0, std::abs(f)));
    }
  }
}

TEST_CASE("lattice ambiguity from the zak transform") {
  DDGrid g = grid(4, 4);
  SampledSignal x = random_signal(2 * g.samples_per_period(), 0.0, g.dt(), 8);
  SampledSignal y = random_signal(g.samples_per_period() + 40, 0.25, g.dt(), 9);
  Axis tau = delay_axis(g, 0, 0);
  Axis nu = doppler_axis(g, 0, 0);
  ZakImage zx = zak_transform(x, g, tau, nu);
  ZakImage zy = zak_transform(y, g, tau, nu);
  for (int n = -1; n <= 1; ++n) {
    for (int m = -1; m <= 1; ++m) {
      cplx ref = brute_af(x, y, n * g.T, m / g.T);
      cplx z = af_lattice_from_zak(zx, zy, n, m);
      CHECK(std::abs(z - ref) <= 1e-3 * std::max(std::abs(ref), 1e-9));
    }
  }
  cplx e = af_lattice_from_zak(zx, zx, 0, 0);
  CHECK(std::abs(e - x.energy()) <= 1e-6 * x.energy());
}

TEST_CASE("time-disjoint signals have empty lattice ambiguity") {
  DDGrid g = grid(4, 4);
  SampledSignal x = random_signal(g.samples_per_period(), 0.0, g.dt(), 1);
  SampledSignal y = random_signal(g.samples_per_period(), 10.0 * g.T, g.dt(), 2);
  Axis tau = delay_axis(g, 0, 0);
  Axis nu = doppler_axis(g, 0, 0);
  ZakImage zx = zak_transform(x, g, tau, nu);
  ZakImage zy = zak_transform(y, g, tau, nu);
  for (int n = -1; n <= 1; ++n) {
    for (int m = -1; m <= 1; ++m) CHECK(std::abs(af_lattice_from_zak(zx, zy, n, m)) < 1e-12);
  }
}

TEST_CASE("zak product series") {
  DDGrid g = grid(4, 4);
  Axis tau = delay_axis(g, 0, 0);
  Axis nu = doppler_axis(g, 0, 0);
  const int half = static_cast<int>(g.samples_per_period() / 2);

  SUBCASE("one-period signals") {
    SampledSignal x = random_signal(g.samples_per_period(), 0.0, g.dt(), 3);
    SampledSignal y = random_signal(g.samples_per_period(), 0.0, g.dt(), 4);
    LatticeRange r{-1, 1, -half, half - 1};
    LatticeAf lat = lattice_from_signals(x, y, g.T, r);
    for (int m = r.m_lo; m <= r.m_hi; ++m) {
      CHECK(std::abs(lat.at(1, m)) < 1e-12);
      CHECK(std::abs(lat.at(-1, m)) < 1e-12);
    }
    ZakImage zx = zak_transform(x, g, tau, nu);
    ZakImage zy = zak_transform(y, g, tau, nu);
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < tau.count; i += 3) {
      for (std::size_t j = 0; j < nu.count; j += 5) {
        cplx prod = zx.at(i, j) * std::conj(zy.at(i, j));
        peak = std::max(peak, std::abs(prod));
        worst = std::max(worst, std::abs(zak_product_series(lat, tau.at(i), nu.at(j), r) - prod));
      }
    }
    CHECK(worst <= 1e-9 * peak);
  }

  SUBCASE("multi-period pair") {
    SampledSignal x = random_signal(3 * g.samples_per_period(), -1.0, g.dt(), 5);
    SampledSignal y = random_signal(2 * g.samples_per_period(), 0.0, g.dt(), 6);
    LatticeRange r{-3, 3, -half, half - 1};
    LatticeAf lat = lattice_from_signals(x, y, g.T, r);
    ZakImage zx = zak_transform(x, g, tau, nu);
    ZakImage zy = zak_transform(y, g, tau, nu);
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < tau.count; i += 3) {
      for (std::size_t j = 0; j < nu.count; j += 5) {
        cplx prod = zx.at(i, j) * std::conj(zy.at(i, j));
        peak = std::max(peak, std::abs(prod));
        worst = std::max(worst, std::abs(zak_product_series(lat, tau.at(i), nu.at(j), r) - prod));
      }
    }
    CHECK(worst <= 1e-6 * peak);
  }

  SUBCASE("zero lattice and coverage") {
    LatticeAf lat;
    lat.T = g.T;
    lat.range = {-1, 1, -1, 1};
    lat.values.assign(9, cplx{});
    CHECK(zak_product_series(lat, 0.3, 0.2, lat.range) == cplx{});
    CHECK_THROWS_AS(zak_product_series(lat, 0.3, 0.2, LatticeRange::symmetric(2)), DomainError);
  }
}

TEST_CASE("decomposition of the basis ambiguity") {
  DDGrid g = grid(4, 4);
  AtomPair a = bump_atoms(g, 21);
  const int K = g.N * g.Q / 2 - 1;
  ZakImage z = dd_basis_image(BasisId{0, 0}, g, a, delay_axis(g, 0, 0), doppler_axis(g, 0, 0),
                              PeriodExtent{0, 0, 0, 0});
  SampledSignal phi = inverse_zak(z, -K, K);
  for (double t : {0.0, 0.25}) {
    for (double v : {0.0, 0.125}) {
      cplx lhs = cross_ambiguity_at(phi, phi, t * g.T, v / g.T);
      cplx rhs = theorem1_decomposition(a, g, t * g.T, v / g.T);
      CHECK(std::abs(lhs - rhs) <= 1e-2 * std::abs(rhs));
    }
  }
  const cplx c(0.4, 1.1);
  AtomPair b = a;
  for (auto& s : b.H_nu.samples) s *= c;
  cplx r0 = theorem1_decomposition(a, g, 0.125, 0.0625);
  cplx r1 = theorem1_decomposition(b, g, 0.125, 0.0625);
  CHECK(std::abs(r1 - std::norm(c) * r0) <= 1e-12 * std::abs(r1));
  CHECK_THROWS_AS(theorem1_decomposition(AtomPair::impulse(), g, 0.0, 0.0), Unsupported);
}

TEST_CASE("delay atom shorter than T leaves one delay term") {
  DDGrid g = grid(4, 4);
  AtomPair a = bump_atoms(g, 4);
  // Keep the first half period only: W = T/2.
  a.h_tau.samples.resize(g.samples_per_period() / 2);
  for (double tau : {0.0, 0.25, -0.375}) {
    cplx full = theorem1_decomposition(a, g, tau, 0.125);
    cplx n0 = theorem1_decomposition(a, g, tau, 0.125, 0);
    CHECK(std::abs(full - n0) <= 1e-14 * std::max(1.0, std::abs(full)));
  }
}

TEST_CASE("localized prediction") {
  DDGrid g = grid(8, 8);
  const cplx h0(1.5, -0.5), H0(0.25, 2.0);
  const double e = std::norm(h0) * std::norm(H0);
  CHECK(std::abs(localized_af_prediction(g, h0, H0, 0.0, 0.0) - e) < 1e-15);
  CHECK(localized_af_prediction(g, h0, H0, 0.5 * g.T, 0.0) == cplx{});
  CHECK(std::abs(localized_af_prediction(g, h0, H0, 3.0 * g.T, -2.0 / g.T) - e) < 1e-15);
  CHECK(localized_af_prediction(g, h0, H0, 0.0, 0.5 / g.T) == cplx{});
}

TEST_CASE("truncated ambiguity sum") {
  DDGrid g = grid(8, 8);
  ChainConfig sinc = make_chain_config(Preset::sinc_sinc, g);
  TruncationOptions opt;
  opt.h_nu_0 = 2.0;
  cplx a00 = theorem3_af(sinc.fw, sinc.tw, g, 0.0, 0.0, opt);
  // (1/T) sum_q |FW_F(q/T)|^2 = 1 for the unit-energy rect, times int TW^2 = NT.
  CHECK(std::abs(a00 - 4.0 * g.N * g.T) < 1e-9);
  for (int k = 1; k < g.N; ++k) CHECK(std::abs(theorem3_af(sinc.fw, sinc.tw, g, 0.0, g.nu(k))) < 1e-9);

  ChainConfig rrc = make_chain_config(Preset::rrc_rrc, g);
  SampledSignal p = truncated_basis_pulse(BasisId{0, 0}, g, rrc.fw, rrc.tw);
  for (double tf : {0.0, 0.25, 0.5}) {
    for (double vf : {0.0, 0.25, 0.5}) {
      double t = tf * g.delay_step(), v = vf * g.doppler_step();
      cplx num = cross_ambiguity_at(p, p, t, v);
      CHECK(std::abs(theorem3_af(rrc.fw, rrc.tw, g, t, v) - num) <= 1e-2 * std::abs(num));
    }
  }
  CHECK_THROWS_AS(theorem3_af(sinc.tw, sinc.fw, g, 0.0, 0.0), Unsupported);
}

TEST_CASE("asinc closed form") {
  DDGrid g = grid(8, 8);
  ChainConfig c = make_chain_config(Preset::sinc_sinc, g);
  cplx o = corollary1_closed_form(c.fw, c.tw, g.M, g.N, g, 0.0, 0.0);
  // |FW_F(0)|^2 |TW(0)|^2 M N = (T/M) M N.
  CHECK(std::abs(o - g.N * g.T) < 1e-12);
  for (int j = 1; j < g.M; ++j) CHECK(std::abs(corollary1_closed_form(c.fw, c.tw, g.M, g.N, g, g.tau(j), 0.0)) < 1e-12);
  for (int i = 1; i < g.N; ++i) CHECK(std::abs(corollary1_closed_form(c.fw, c.tw, g.M, g.N, g, 0.0, g.nu(i))) < 1e-12);
  // Magnitude near the origin follows the product of the two asinc profiles.
  const double t = g.tau(1) / 4.0, v = g.nu(1) / 4.0;
  double expect = (g.T / g.M) * std::abs(asinc_eval(t / g.T, g.M) * asinc_eval(v * g.T, g.N));
  CHECK(std::abs(corollary1_closed_form(c.fw, c.tw, g.M, g.N, g, t, v)) == doctest::Approx(expect));

  ChainConfig r = make_chain_config(Preset::rrc_rrc, g);
  CHECK_THROWS_AS(corollary1_closed_form(r.fw, c.tw, g.M, g.N, g, 0.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(corollary1_closed_form(c.fw, r.tw, g.M, g.N, g, 0.0, 0.0), PreconditionError);
}

TEST_CASE("Doppler nulls of the truncated pulses") {
  DDGrid g = grid(8, 8);
  for (Preset p : {Preset::sinc_sinc, Preset::rrc_rrc, Preset::cos_rrc}) {
    ChainConfig c = make_chain_config(p, g);
    SampledSignal s = truncated_basis_pulse(BasisId{0, 0}, g, c.fw, c.tw);
    const double peak = s.energy();
    for (int i = 1; i < g.N; ++i) CHECK(std::abs(cross_ambiguity_at(s, s, 0.0, g.nu(i))) <= 1e-3 * peak);
  }
  ChainConfig c = make_chain_config(Preset::rrc_rrc, g);
  SampledSignal s = truncated_basis_pulse(BasisId{0, 0}, g, c.fw, c.tw);
  for (int j = 1; j < g.M; ++j) CHECK(std::abs(cross_ambiguity_at(s, s, g.tau(j), 0.0)) <= 1e-3 * s.energy());
}

TEST_CASE("matched-filter identity for shifted pulses") {
  DDGrid g = grid(4, 4);
  ChainConfig c = make_chain_config(Preset::rrc_rrc, g);
  SampledSignal p = truncated_basis_pulse(BasisId{0, 0}, g, c.fw, c.tw);
  struct Pt {
    int l, k;
  };
  for (auto [a, b] : {std::pair<Pt, Pt>{{1, 0}, {0, 0}}, {{3, 2}, {1, 1}}, {{0, 3}, {2, 0}}, {{2, 2}, {2, 2}}}) {
    const double t1 = g.tau(a.l), v1 = g.nu(a.k), t2 = g.tau(b.l), v2 = g.nu(b.k);
    SampledSignal s1 = twisted_shift(p, t1, v1);
    SampledSignal s2 = twisted_shift(p, t2, v2);
    cplx ip{};
    for (std::size_t i = 0; i < s2.size(); ++i) ip += s2.samples[i] * std::conj(sample_at(s1, s2.time(i)));
    ip *= g.dt();
    cplx expect = expj(2.0 * M_PI * v2 * (t1 - t2)) * cross_ambiguity_at(p, p, t1 - t2, v1 - v2);
    CHECK(std::abs(ip - expect) <= 1e-3 * std::max(std::abs(expect), 1e-3 * p.energy()));
  }
}

TEST_CASE("cut extraction") {
  AmbiguitySurface s;
  s.tau = centred_axis(0.5, 2);
  s.nu = centred_axis(0.25, 1);
  s.values.assign(15, cplx(0.1));
  s.values[2 * s.nu.count + 1] = 2.0;
  Cut zd = extract_cut(s, CutAxis::zero_doppler);
  REQUIRE(zd.offsets.size() == 5);
  CHECK(zd.offsets[2] == 0.0);
  CHECK(zd.mag_db[2] == 0.0);
  CHECK(zd.mag_db[0] == doctest::Approx(20.0 * std::log10(0.05)));
  Cut zl = extract_cut(s, CutAxis::zero_delay);
  CHECK(zl.offsets.size() == 3);
  CHECK(zl.mag[1] == doctest::Approx(2.0));

  AmbiguitySurface off = s;
  off.nu.start = 0.1;
  CHECK_THROWS_AS(extract_cut(off, CutAxis::zero_doppler), GridMismatch);
  off.nu.start = 0.25;
  CHECK_THROWS_AS(extract_cut(off, CutAxis::zero_doppler), DomainError);
}
