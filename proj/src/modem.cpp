#include "ddshaper/modem.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ddshaper/basis.hpp"
#include "ddshaper/errors.hpp"
#include "ddshaper/fft.hpp"
#include "ddshaper/zak.hpp"

namespace ddshaper {

namespace {

long long mod(long long a, long long n) { return ((a % n) + n) % n; }

struct SupportRange {
  long long j_lo = 0;
  long long j_hi = -1;
};

// Sample indices j (t = j*dt) inside the time window, extended by `lead`.
SupportRange window_samples(const WindowSpec& tw, double dt, double lead) {
  double start = window_start(tw);
  if (tw.kind != WindowKind::rrc_dual) start -= lead;
  SupportRange s;
  s.j_lo = static_cast<long long>(std::ceil(start / dt - 1e-9));
  s.j_hi = static_cast<long long>(std::ceil(window_end(tw) / dt - 1e-9)) - 1;
  return s;
}

}  // namespace

DDSymbolFrame random_qpsk_frame(int M, int N, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> bit(0, 1);
  const double a = 1.0 / std::sqrt(2.0);
  DDSymbolFrame f;
  f.symbols = ZakMatrix(M, N);
  for (auto& v : f.symbols.values) v = cplx(bit(rng) ? a : -a, bit(rng) ? a : -a);
  return f;
}

Preset parse_preset(const std::string& name) {
  if (name == "sinc_sinc") return Preset::sinc_sinc;
  if (name == "rrc_rrc") return Preset::rrc_rrc;
  if (name == "cos_rrc") return Preset::cos_rrc;
  if (name == "custom") return Preset::custom;
  throw DomainError("unknown preset: " + name);
}

std::string preset_name(Preset p) {
  switch (p) {
    case Preset::sinc_sinc: return "sinc_sinc";
    case Preset::rrc_rrc: return "rrc_rrc";
    case Preset::cos_rrc: return "cos_rrc";
    case Preset::custom: return "custom";
  }
  return "custom";
}

ChainConfig make_chain_config(Preset preset, const DDGrid& grid, double beta) {
  grid.validate();
  const double T = grid.T;
  const int M = grid.M;
  const int N = grid.N;
  ChainConfig cfg;
  cfg.grid = grid;
  cfg.preset = preset;
  cfg.cp_length = T;
  WindowSpec rect_fw = make_rect(Domain::frequency, M / T, 0.0, std::sqrt(T / M));
  WindowSpec rrc_fw = make_rrc_dual(Domain::frequency, T / M, beta, 0.0);
  WindowSpec rect_tw = make_rect(Domain::time, N * T, -T / 2.0);
  rect_tw.tilde_count = N;
  WindowSpec rrc_tw = make_rrc_dual(Domain::time, 1.0 / (N * T), beta, (N - 1) * T / 2.0);
  rrc_tw.gain = std::sqrt(N * T);
  WindowSpec cos_tw = make_periodic_cosine(Domain::time, T, N, -T / 2.0);
  switch (preset) {
    case Preset::sinc_sinc:
    case Preset::custom:
      cfg.fw = rect_fw;
      cfg.tw = rect_tw;
      break;
    case Preset::rrc_rrc:
      cfg.fw = rrc_fw;
      cfg.tw = rrc_tw;
      break;
    case Preset::cos_rrc:
      cfg.fw = rrc_fw;
      cfg.tw = cos_tw;
      break;
  }
  return cfg;
}

void validate_chain(const ChainConfig& cfg) {
  cfg.grid.validate();
  validate_window(cfg.fw);
  validate_window(cfg.tw);
  if (cfg.fw.domain != Domain::frequency) throw Unsupported("chain: frequency window must be frequency-domain");
  if (cfg.tw.domain != Domain::time) throw Unsupported("chain: time window must be time-domain");
  if (cfg.cp_length < 0.0) throw DomainError("chain: negative CP length");
  grid_index(cfg.cp_length, cfg.grid.delay_step(), "chain: CP length vs T/M");
}

SampledSignal shape_transmit(const DDSymbolFrame& frame, const ChainConfig& cfg) {
  validate_chain(cfg);
  const DDGrid& g = cfg.grid;
  if (frame.symbols.M != g.M || frame.symbols.N != g.N) throw DomainError("shape_transmit: frame is not M x N");
  const long long MN = static_cast<long long>(g.M) * g.N;
  const long long L = MN * g.Q;
  const double dt = g.dt();
  const double NT = g.N * g.T;

  // u(t) = sum_i x[i mod MN] FW_T(t - i T/M) is NT-periodic with Fourier
  // coefficients FW_F(r/NT)/NT * DFT(x)[r mod MN].
  const std::vector<cplx> x = idzt(frame.symbols);
  const std::vector<cplx> X = dft(x, -1);
  const HarmonicSet hs = dual_harmonics(cfg.fw, NT);
  if (static_cast<long long>(hs.coef.size()) > L) {
    throw DomainError("shape_transmit: frequency window wider than the sampling rate");
  }
  std::vector<cplx> bins(static_cast<std::size_t>(L));
  for (std::size_t q = 0; q < hs.coef.size(); ++q) {
    long long r = hs.r_lo + static_cast<long long>(q);
    bins[static_cast<std::size_t>(mod(r, L))] += hs.coef[q] * X[static_cast<std::size_t>(mod(r, MN))];
  }
  const std::vector<cplx> u = dft(bins, +1);

  SupportRange sr = window_samples(cfg.tw, dt, cfg.cp_length);
  SampledSignal s;
  s.dt = dt;
  s.t0 = static_cast<double>(sr.j_lo) * dt;
  const double scale = std::sqrt(NT);
  for (long long j = sr.j_lo; j <= sr.j_hi; ++j) {
    double w = window_value_extended(cfg.tw, static_cast<double>(j) * dt, cfg.cp_length);
    s.samples.push_back(scale * u[static_cast<std::size_t>(mod(j, L))] * w);
  }
  return s;
}

SampledSignal apply_paths(const SampledSignal& s, const PathSet& paths) {
  SampledSignal r;
  r.dt = s.dt;
  r.t0 = s.t0;
  if (paths.empty()) {
    r.samples.assign(s.size(), cplx{});
    return r;
  }
  long long lo = 0, hi = 0;
  bool first = true;
  std::vector<long long> shifts;
  for (const auto& p : paths) {
    long long d = grid_index(p.delay, s.dt, "apply_paths: path delay");
    shifts.push_back(d);
    if (first || d < lo) lo = d;
    if (first || d > hi) hi = d;
    first = false;
  }
  r.t0 = s.t0 + static_cast<double>(lo) * s.dt;
  r.samples.assign(s.size() + static_cast<std::size_t>(hi - lo), cplx{});
  for (std::size_t q = 0; q < paths.size(); ++q) {
    SampledSignal sh = twisted_shift(s, paths[q].delay, paths[q].doppler);
    std::size_t off = static_cast<std::size_t>(shifts[q] - lo);
    for (std::size_t i = 0; i < sh.size(); ++i) r.samples[off + i] += paths[q].gain * sh.samples[i];
  }
  return r;
}

Reception matched_filter_receive(const SampledSignal& r, const ChainConfig& cfg) {
  validate_chain(cfg);
  const DDGrid& g = cfg.grid;
  const double dt = g.dt();
  if (std::abs(r.dt - dt) > 1e-12 * dt) throw GridMismatch("matched_filter_receive: sample step differs from T/(MQ)");
  const long long MN = static_cast<long long>(g.M) * g.N;
  const long long L = MN * g.Q;
  const double NT = g.N * g.T;
  const long long r0 = grid_index(r.t0, dt, "matched_filter_receive: signal origin");
  const long long rn = static_cast<long long>(r.size());
  SupportRange sr = window_samples(cfg.tw, dt, 0.0);
  auto sample = [&](long long j) -> cplx {
    long long q = j - r0;
    if (q < 0 || q >= rn) return cplx{};
    return r.samples[static_cast<std::size_t>(q)];
  };
  const HarmonicSet hs = dual_harmonics(cfg.fw, NT);

  std::vector<cplx> y(static_cast<std::size_t>(MN));
  Reception out;
  if (!cfg.ideal_basis_rx) {
    // Correlate with sqrt(NT) TW(t) P(t - i T/M), P the NT-periodized FW_T.
    std::vector<cplx> folded(static_cast<std::size_t>(L));
    double w2 = 0.0;
    for (long long j = sr.j_lo; j <= sr.j_hi; ++j) {
      double w = window_value(cfg.tw, static_cast<double>(j) * dt);
      if (w == 0.0) continue;
      folded[static_cast<std::size_t>(mod(j, L))] += sample(j) * w;
      w2 += w * w;
    }
    w2 *= dt;
    const std::vector<cplx> Wf = dft(folded, -1);
    std::vector<cplx> G(static_cast<std::size_t>(MN));
    for (std::size_t q = 0; q < hs.coef.size(); ++q) {
      long long rr = hs.r_lo + static_cast<long long>(q);
      G[static_cast<std::size_t>(mod(rr, MN))] += hs.coef[q] * Wf[static_cast<std::size_t>(mod(rr, L))];
    }
    const std::vector<cplx> z = dft(G, +1);
    // Identity channel: z = NT * (w2 / NT) * x.
    const double scale = std::sqrt(NT) * dt;
    out.gain = w2;
    for (long long i = 0; i < MN; ++i) y[static_cast<std::size_t>(i)] = scale * z[static_cast<std::size_t>(i)] / w2;
  } else {
    // Sample at the pulse instants i T/M; each holds sqrt(NT) P(0) x_i TW.
    double p0 = 0.0;
    for (double c : hs.coef) p0 += c;
    std::vector<double> wsum(static_cast<std::size_t>(MN), 0.0);
    long long j0 = sr.j_lo + mod(-sr.j_lo, g.Q);
    for (long long j = j0; j <= sr.j_hi; j += g.Q) {
      double w = window_value(cfg.tw, static_cast<double>(j) * dt);
      if (w == 0.0) continue;
      std::size_t i = static_cast<std::size_t>(mod(j / g.Q, MN));
      y[i] += sample(j) * w;
      wsum[i] += w * w;
    }
    const double norm = std::sqrt(NT) * p0;
    out.gain = norm;
    for (long long i = 0; i < MN; ++i) {
      if (wsum[static_cast<std::size_t>(i)] == 0.0) throw DomainError("matched_filter_receive: pulse instant outside the window");
      y[static_cast<std::size_t>(i)] /= norm * wsum[static_cast<std::size_t>(i)];
    }
  }
  out.frame.symbols = dzt(y, g.M, g.N);
  return out;
}

EvmReport evm_ser_report(const DDSymbolFrame& Y, const DDSymbolFrame& X) {
  const auto& y = Y.symbols;
  const auto& x = X.symbols;
  if (y.M != x.M || y.N != x.N) throw DomainError("evm_ser_report: frame dimensions differ");
  cplx num{};
  double den = 0.0;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    num += std::conj(x.values[i]) * y.values[i];
    den += std::norm(x.values[i]);
  }
  if (!(den > 0.0)) throw DomainError("evm_ser_report: reference frame is all zero");
  EvmReport rep;
  rep.gain = num / den;
  double err = 0.0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    err += std::norm(y.values[i] - rep.gain * x.values[i]);
    cplx d = rep.gain == cplx{} ? y.values[i] : y.values[i] / rep.gain;
    bool ok = (d.real() >= 0.0) == (x.values[i].real() >= 0.0) && (d.imag() >= 0.0) == (x.values[i].imag() >= 0.0);
    if (!ok) ++wrong;
  }
  double ref = std::norm(rep.gain) * den;
  double db = (err > 0.0 && ref > 0.0) ? 10.0 * std::log10(err / ref) : kEvmFloorDb;
  rep.evm_db = std::max(db, kEvmFloorDb);
  rep.ser = static_cast<double>(wrong) / static_cast<double>(x.values.size());
  return rep;
}

ZakMatrix predict_delay_shift(const ZakMatrix& X, int bins, cplx g) {
  ZakMatrix Y(X.M, X.N);
  for (int l = 0; l < X.M; ++l) {
    long long src = l - bins;
    long long wraps = src >= 0 ? src / X.M : -((-src + X.M - 1) / X.M);
    int ls = static_cast<int>(src - wraps * X.M);
    for (int k = 0; k < X.N; ++k) {
      Y.at(l, k) = g * X.at(ls, k) * cis2pi(static_cast<double>(wraps) * k / X.N);
    }
  }
  return Y;
}

}  // namespace ddshaper
