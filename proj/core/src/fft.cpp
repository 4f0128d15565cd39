#include "majsim/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "majsim/errors.hpp"

namespace majsim {

namespace {
// FFTW's planner is not re-entrant; execution with new-array is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FourierTransform::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

FourierTransform::FourierTransform(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n == 0) throw ValidationError("FourierTransform: length must be positive");
  std::vector<std::complex<double>> a(n), b(n);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  const int len = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  plans_->fwd = fftw_plan_dft_1d(len, pa, pb, FFTW_FORWARD, flags);
  plans_->bwd = fftw_plan_dft_1d(len, pa, pb, FFTW_BACKWARD, flags);
  if (!plans_->fwd || !plans_->bwd) throw NumericalError("FFTW failed to create a plan");
}

FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept = default;

void FourierTransform::forward(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(plans_->fwd,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void FourierTransform::backward(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(plans_->bwd,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace majsim
