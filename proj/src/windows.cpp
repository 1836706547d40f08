#include "ddshaper/windows.hpp"

#include <algorithm>
#include <cmath>

#include "ddshaper/errors.hpp"

namespace ddshaper {

namespace {

// Support membership is decided with a small tolerance so that grid points
// computed as i*step land on the intended side of the half-open edges.
bool inside(double u, double start, double end, double span) {
  double eps = 1e-9 * span;
  return u >= start - eps && u < end - eps;
}

double rrc_taper(const WindowSpec& w, double u) {
  const double p = *w.orth_period;
  const double beta = *w.rolloff;
  const double a = std::abs(u - window_centre(w));
  const double flat = (1.0 - beta) / (2.0 * p);
  const double edge = (1.0 + beta) / (2.0 * p);
  if (a <= flat) return std::sqrt(p);
  if (a >= edge) return 0.0;
  return std::sqrt(p) * std::cos(kPi * p / (2.0 * beta) * (a - flat));
}

double require(const std::optional<double>& v, const char* what) {
  if (!v) throw DomainError(std::string("window: missing ") + what);
  return *v;
}

}  // namespace

WindowSpec make_rect(Domain domain, double span, double offset, double gain) {
  WindowSpec w;
  w.kind = WindowKind::rect;
  w.domain = domain;
  w.span = span;
  w.offset = offset;
  w.gain = gain;
  validate_window(w);
  return w;
}

WindowSpec make_periodic_cosine(Domain domain, double period, int count, double offset) {
  WindowSpec w;
  w.kind = WindowKind::periodic_cosine;
  w.domain = domain;
  w.period = period;
  w.tilde_count = count;
  w.span = period * count;
  w.offset = offset;
  validate_window(w);
  return w;
}

WindowSpec make_rrc_dual(Domain domain, double orth_period, double beta, double centre) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("rrc_dual: roll-off outside [0, 1]");
  if (!(orth_period > 0.0)) throw DomainError("rrc_dual: orthogonal period must be positive");
  WindowSpec w;
  w.kind = WindowKind::rrc_dual;
  w.domain = domain;
  w.orth_period = orth_period;
  w.rolloff = beta;
  w.span = (1.0 + beta) / orth_period;
  w.offset = centre - w.span / 2.0;
  validate_window(w);
  return w;
}

void validate_window(const WindowSpec& w) {
  if (!(w.span > 0.0) || !std::isfinite(w.span)) throw DomainError("window: span must be positive");
  if (!std::isfinite(w.offset) || !std::isfinite(w.gain) || w.gain == 0.0) {
    throw DomainError("window: offset and gain must be finite, gain nonzero");
  }
  switch (w.kind) {
    case WindowKind::rect:
      if (w.orth_period || w.rolloff || w.period) throw DomainError("rect: unexpected fields");
      if (w.tilde_count && *w.tilde_count < 1) throw DomainError("rect: tilde_count must be positive");
      break;
    case WindowKind::periodic_cosine: {
      if (w.orth_period || w.rolloff) throw DomainError("periodic_cosine: unexpected fields");
      double p = require(w.period, "period");
      if (!(p > 0.0)) throw DomainError("periodic_cosine: period must be positive");
      if (!w.tilde_count || *w.tilde_count < 1) {
        throw DomainError("periodic_cosine: tilde_count must be positive");
      }
      if (std::abs(w.span - p * *w.tilde_count) > 1e-9 * w.span) {
        throw DomainError("periodic_cosine: span must equal tilde_count * period");
      }
      break;
    }
    case WindowKind::rrc_dual: {
      if (w.period) throw DomainError("rrc_dual: unexpected period");
      double p = require(w.orth_period, "orth_period");
      double beta = require(w.rolloff, "rolloff");
      if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("rrc_dual: roll-off outside [0, 1]");
      if (!(p > 0.0)) throw DomainError("rrc_dual: orthogonal period must be positive");
      if (std::abs(w.span - (1.0 + beta) / p) > 1e-9 * w.span) {
        throw DomainError("rrc_dual: span must equal (1 + rolloff) / orth_period");
      }
      break;
    }
  }
  if (window_value(w, 0.0) == 0.0) {
    throw PreconditionError("window: value at the domain origin is zero");
  }
}

double window_start(const WindowSpec& w) { return w.offset; }
double window_end(const WindowSpec& w) { return w.offset + w.span; }
double window_centre(const WindowSpec& w) { return w.offset + w.span / 2.0; }

double window_value(const WindowSpec& w, double u) { return window_value_extended(w, u, 0.0); }

double window_value_extended(const WindowSpec& w, double u, double lead) {
  switch (w.kind) {
    case WindowKind::rect:
      return inside(u, w.offset - lead, window_end(w), w.span) ? w.gain : 0.0;
    case WindowKind::periodic_cosine:
      if (!inside(u, w.offset - lead, window_end(w), w.span)) return 0.0;
      return w.gain * std::cos(kTwoPi * (u / *w.period - std::round(u / *w.period)));
    case WindowKind::rrc_dual:
      return w.gain * rrc_taper(w, u);
  }
  return 0.0;
}

double rrc_pulse(double u, double p, double beta) {
  const double x = u / p;
  const double norm = 1.0 / std::sqrt(p);
  if (std::abs(x) < 1e-12) return norm * (1.0 - beta + 4.0 * beta / kPi);
  if (beta > 0.0 && std::abs(std::abs(x) - 1.0 / (4.0 * beta)) < 1e-10) {
    double a = kPi / (4.0 * beta);
    return norm * beta / std::sqrt(2.0) *
           ((1.0 + 2.0 / kPi) * std::sin(a) + (1.0 - 2.0 / kPi) * std::cos(a));
  }
  double num = std::sin(kPi * x * (1.0 - beta)) + 4.0 * beta * x * std::cos(kPi * x * (1.0 + beta));
  double den = kPi * x * (1.0 - (4.0 * beta * x) * (4.0 * beta * x));
  return norm * num / den;
}

RealizedWindow realize_window(const WindowSpec& w, double step, double grid_origin) {
  validate_window(w);
  if (!(step > 0.0)) throw DomainError("realize_window: step must be positive");
  if (w.kind != WindowKind::rrc_dual) {
    if (!on_grid(w.span, step)) throw GridMismatch("realize_window: step does not divide span");
    if (!on_grid(w.offset - grid_origin, step)) {
      throw GridMismatch("realize_window: support start is off the sample grid");
    }
  }
  long long i_lo = static_cast<long long>(std::ceil((window_start(w) - grid_origin) / step - 1e-9));
  long long i_hi = static_cast<long long>(std::ceil((window_end(w) - grid_origin) / step - 1e-9)) - 1;
  std::vector<cplx> samples;
  samples.reserve(static_cast<std::size_t>(std::max(0LL, i_hi - i_lo + 1)));
  for (long long i = i_lo; i <= i_hi; ++i) {
    samples.emplace_back(window_value(w, grid_origin + static_cast<double>(i) * step), 0.0);
  }
  double origin = grid_origin + static_cast<double>(i_lo) * step;
  if (w.domain == Domain::time) return SampledSignal{origin, step, std::move(samples)};
  return SpectrumSignal{origin, step, std::move(samples)};
}

SampledSignal realize_time_window(const WindowSpec& w, double step, double grid_origin) {
  if (w.domain != Domain::time) throw Unsupported("realize_time_window: window is not time-domain");
  return std::get<SampledSignal>(realize_window(w, step, grid_origin));
}

SpectrumSignal realize_spectral_window(const WindowSpec& w, double step, double grid_origin) {
  if (w.domain != Domain::frequency) {
    throw Unsupported("realize_spectral_window: window is not frequency-domain");
  }
  return std::get<SpectrumSignal>(realize_window(w, step, grid_origin));
}

RealizedWindow realize_dual(const WindowSpec& w, double step, int half_periods) {
  validate_window(w);
  if (!(step > 0.0)) throw DomainError("realize_dual: step must be positive");
  if (half_periods < 1) throw DomainError("realize_dual: half_periods must be positive");
  // Native time windows transform with e^{-j2pi f t}, native frequency windows
  // with e^{+j2pi f t}.
  const double sign = w.domain == Domain::frequency ? 1.0 : -1.0;
  const double dual_period = w.kind == WindowKind::rrc_dual ? *w.orth_period : 1.0 / w.span;
  const double extent = half_periods * dual_period;
  const long long n = static_cast<long long>(std::floor(extent / step + 1e-9));
  std::vector<cplx> samples;
  samples.reserve(static_cast<std::size_t>(2 * n + 1));
  if (w.kind == WindowKind::rrc_dual) {
    const double c = window_centre(w);
    for (long long i = -n; i <= n; ++i) {
      double v = static_cast<double>(i) * step;
      samples.push_back(w.gain * rrc_pulse(v, *w.orth_period, *w.rolloff) * cis2pi(sign * c * v));
    }
  } else {
    const std::size_t nodes = 4096;
    const double h = w.span / static_cast<double>(nodes);
    std::vector<double> vals(nodes);
    for (std::size_t q = 0; q < nodes; ++q) vals[q] = window_value(w, w.offset + (q + 0.5) * h);
    for (long long i = -n; i <= n; ++i) {
      double v = static_cast<double>(i) * step;
      cplx acc{};
      for (std::size_t q = 0; q < nodes; ++q) acc += vals[q] * cis2pi(sign * (w.offset + (q + 0.5) * h) * v);
      samples.push_back(acc * h);
    }
  }
  double origin = -static_cast<double>(n) * step;
  if (w.domain == Domain::frequency) return SampledSignal{origin, step, std::move(samples)};
  return SpectrumSignal{origin, step, std::move(samples)};
}

double asinc_eval(double x, int count) {
  const double xi = std::round(x);
  if (std::abs(x - xi) < 1e-12) {
    long long prod = static_cast<long long>(count - 1) * static_cast<long long>(xi);
    return (prod % 2 == 0) ? count : -count;
  }
  return std::sin(kPi * count * x) / std::sin(kPi * x);
}

namespace {

struct SeriesView {
  double step;
  const std::vector<cplx>* samples;
};

SeriesView view(const RealizedWindow& w) {
  if (const auto* s = std::get_if<SampledSignal>(&w)) return {s->dt, &s->samples};
  const auto& f = std::get<SpectrumSignal>(w);
  return {f.df, &f.samples};
}

}  // namespace

OrthogonalityReport orthogonality_check(const RealizedWindow& w, double p, double tol) {
  SeriesView v = view(w);
  long long lag = grid_index(p, v.step, "orthogonality_check: period");
  if (lag <= 0) throw GridMismatch("orthogonality_check: period below one sample");
  const auto& x = *v.samples;
  double e0 = 0.0;
  for (const auto& s : x) e0 += std::norm(s);
  if (!(e0 > 0.0)) throw DomainError("orthogonality_check: zero-energy window");
  OrthogonalityReport rep;
  const std::size_t L = static_cast<std::size_t>(lag);
  for (std::size_t shift = L; shift < x.size(); shift += L) {
    cplx acc{};
    for (std::size_t i = shift; i < x.size(); ++i) acc += x[i] * std::conj(x[i - shift]);
    rep.max_offpeak = std::max(rep.max_offpeak, std::abs(acc) / e0);
  }
  rep.pass = rep.max_offpeak <= tol;
  return rep;
}

bool periodicity_check(const RealizedWindow& w, double p, double tol) {
  SeriesView v = view(w);
  const auto& x = *v.samples;
  const double span = v.step * static_cast<double>(x.size());
  if (span < 2.0 * p * (1.0 - 1e-9)) throw DomainError("periodicity_check: span shorter than two periods");
  long long lag = grid_index(p, v.step, "periodicity_check: period");
  const std::size_t L = static_cast<std::size_t>(lag);
  double peak = 0.0;
  for (const auto& s : x) peak = std::max(peak, std::abs(s));
  double worst = 0.0;
  for (std::size_t i = 0; i + L < x.size(); ++i) worst = std::max(worst, std::abs(x[i + L] - x[i]));
  return worst <= tol * peak;
}

}  // namespace ddshaper
