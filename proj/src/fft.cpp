#include "ddshaper/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace ddshaper {

namespace {
// Planner calls are not thread-safe in FFTW; execution on a private plan is.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

std::vector<cplx> dft(const std::vector<cplx>& x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<cplx> out(x.size());
  if (n == 0) return out;
  std::vector<cplx> in = x;
  auto* pin = reinterpret_cast<fftw_complex*>(in.data());
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, pin, pout, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace ddshaper
