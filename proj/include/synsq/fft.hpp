#ifndef SYNSQ_FFT_HPP
#define SYNSQ_FFT_HPP

#include <complex>
#include <vector>

namespace synsq {

using cplx = std::complex<double>;

// Unnormalized complex-to-complex DFT of a row-major 1D or 2D grid.
// Plans are FFTW_ESTIMATE so results are reproducible run to run; executions
// copy through plan-owned aligned buffers and are safe to run concurrently on
// distinct Fft instances. forward uses e^{-2pi i}, backward e^{+2pi i}; the
// caller applies any 1/N scaling.
class Fft {
 public:
  explicit Fft(const std::vector<int>& dims);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(const cplx* in, cplx* out) const;
  void backward(const cplx* in, cplx* out) const;

  std::int64_t size() const { return total_; }

 private:
  std::vector<int> dims_;
  std::int64_t total_ = 0;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
  cplx* buf_in_ = nullptr;
  cplx* buf_out_ = nullptr;
};

}  // namespace synsq

#endif  // SYNSQ_FFT_HPP
