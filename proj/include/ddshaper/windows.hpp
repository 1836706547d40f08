#pragma once

#include <optional>
#include <variant>

#include "ddshaper/types.hpp"

namespace ddshaper {

enum class WindowKind { rect, rrc_dual, periodic_cosine };
enum class Domain { time, frequency };

// A truncation window in its native domain (the domain it multiplies in).
//
// rect:            gain on [offset, offset + span).
// periodic_cosine: gain * cos(2 pi u / period) on [offset, offset + span),
//                  span = tilde_count * period.
// rrc_dual:        Fourier dual of a unit-energy root-raised-cosine pulse with
//                  zero crossings every orth_period in the other domain:
//                  gain * sqrt(orth_period * RC) centred at offset + span/2,
//                  span = (1 + rolloff) / orth_period.
struct WindowSpec {
  WindowKind kind = WindowKind::rect;
  Domain domain = Domain::time;
  double span = 1.0;
  double offset = 0.0;
  double gain = 1.0;
  std::optional<double> orth_period;
  std::optional<double> rolloff;
  std::optional<double> period;
  std::optional<int> tilde_count;
};

WindowSpec make_rect(Domain domain, double span, double offset = 0.0, double gain = 1.0);
WindowSpec make_periodic_cosine(Domain domain, double period, int count, double offset = 0.0);
WindowSpec make_rrc_dual(Domain domain, double orth_period, double beta, double centre = 0.0);

// Throws DomainError for bad parameters, PreconditionError when the value at
// the domain origin is zero.
void validate_window(const WindowSpec& w);

double window_start(const WindowSpec& w);
double window_end(const WindowSpec& w);
double window_centre(const WindowSpec& w);

// Native-domain value at u (windows are real).
double window_value(const WindowSpec& w, double u);

// Same, with the support extended by `lead` before its start. rect and
// periodic_cosine continue their formula into the extension; the rrc taper
// already decays to zero there and is unchanged.
double window_value_extended(const WindowSpec& w, double u, double lead);

// Unit-energy RRC pulse with zero crossings every p.
double rrc_pulse(double u, double p, double beta);

using RealizedWindow = std::variant<SampledSignal, SpectrumSignal>;

// Samples at grid_origin + i*step that fall inside the support.
RealizedWindow realize_window(const WindowSpec& w, double step, double grid_origin = 0.0);
SampledSignal realize_time_window(const WindowSpec& w, double step, double grid_origin = 0.0);
SpectrumSignal realize_spectral_window(const WindowSpec& w, double step,
                                       double grid_origin = 0.0);

// The window's Fourier dual in the other domain over
// [-half_periods, half_periods] dual periods around the origin. For rrc_dual
// the dual period is orth_period and the pulse is evaluated in closed form;
// other kinds use 1/span and a midpoint quadrature of the native window.
RealizedWindow realize_dual(const WindowSpec& w, double step, int half_periods = 16);

double asinc_eval(double x, int count);

struct OrthogonalityReport {
  double max_offpeak = 0.0;
  bool pass = false;
};

OrthogonalityReport orthogonality_check(const RealizedWindow& w, double p, double tol);

bool periodicity_check(const RealizedWindow& w, double p, double tol);

}  // namespace ddshaper
