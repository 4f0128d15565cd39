#pragma once

#include <complex>
#include <cstddef>
#include <memory>

namespace majsim {

// Out-of-place complex DFT of a fixed length, backed by FFTW. Neither
// direction normalizes; backward(forward(x)) = n * x.
//
// Plans are created with FFTW_ESTIMATE so the same input always takes the same
// code path, which keeps scenario outputs bit-reproducible.
class FourierTransform {
 public:
  explicit FourierTransform(std::size_t n);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;

  std::size_t size() const { return n_; }

  void forward(const std::complex<double>* in, std::complex<double>* out) const;
  void backward(const std::complex<double>* in, std::complex<double>* out) const;

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace majsim
