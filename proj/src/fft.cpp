#include "synsq/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "synsq/errors.hpp"

namespace synsq {

namespace {
// FFTW's planner is not thread-safe; executions are.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(const std::vector<int>& dims) : dims_(dims) {
  if (dims.empty() || dims.size() > 2) throw ParameterError("fft: rank must be 1 or 2");
  total_ = 1;
  for (int d : dims) {
    if (d < 1) throw ParameterError("fft: dimensions must be positive");
    total_ *= d;
  }

  buf_in_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(total_)));
  buf_out_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(total_)));
  if (!buf_in_ || !buf_out_) throw InternalError("fft: allocation failed");

  std::lock_guard<std::mutex> lock(planner_mutex());
  auto* in = reinterpret_cast<fftw_complex*>(buf_in_);
  auto* out = reinterpret_cast<fftw_complex*>(buf_out_);
  if (dims.size() == 1) {
    plan_fwd_ = fftw_plan_dft_1d(dims[0], in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(dims[0], in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    plan_fwd_ = fftw_plan_dft_2d(dims[0], dims[1], in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_2d(dims[0], dims[1], in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan_fwd_ || !plan_bwd_) throw InternalError("fft: planning failed");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  if (buf_in_) fftw_free(buf_in_);
  if (buf_out_) fftw_free(buf_out_);
}

void Fft::forward(const cplx* in, cplx* out) const {
  std::memcpy(buf_in_, in, sizeof(cplx) * static_cast<std::size_t>(total_));
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, buf_out_, sizeof(cplx) * static_cast<std::size_t>(total_));
}

void Fft::backward(const cplx* in, cplx* out) const {
  std::memcpy(buf_in_, in, sizeof(cplx) * static_cast<std::size_t>(total_));
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::memcpy(out, buf_out_, sizeof(cplx) * static_cast<std::size_t>(total_));
}

}  // namespace synsq
