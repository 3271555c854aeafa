#ifndef SYNSQ_SIGNAL_HPP
#define SYNSQ_SIGNAL_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "synsq/fft.hpp"

namespace synsq {

// Where a grid came from: generator name, numeric parameters, seed. Carried
// through file headers so any artifact can be regenerated from scratch.
struct Provenance {
  std::string generator;
  std::vector<std::pair<std::string, double>> params;
  std::optional<std::uint64_t> seed;
};

// Uniformly sampled data on [0,1]^n, n in {1,2}. The unit domain ties sample
// count to sample rate: shape[axis] == sample_rate[axis]. Samples are stored
// complex row-major; is_real tags signals whose imaginary part is identically
// zero (they serialize as f64 and are made analytic before transforming).
struct Signal {
  int dim = 1;
  std::array<int, 2> shape{0, 1};
  std::array<double, 2> sample_rate{0.0, 0.0};
  bool is_real = false;
  std::vector<cplx> samples;
  Provenance provenance;

  std::int64_t total_samples() const {
    return static_cast<std::int64_t>(shape[0]) * shape[1];
  }
  double x0(std::int64_t flat_index) const {
    return static_cast<double>(flat_index / shape[1]) / shape[0];
  }
  double x1(std::int64_t flat_index) const {
    return static_cast<double>(flat_index % shape[1]) / shape[1];
  }

  // Throws InputError on NaN/Inf samples or shape/rate mismatch.
  void validate() const;
};

// Max |sample| over the grid.
double linf_norm(const Signal& s);

// DFT bin -> signed frequency in Hz for an axis of length n (unit domain).
inline double bin_frequency(int k, int n) { return k <= n / 2 - 1 ? k : k - n; }

// Replaces the spectrum with its analytic counterpart along every axis in one
// pass: negative-frequency bins zeroed, positive doubled, DC and Nyquist kept.
// Operates in place on a full-grid DFT.
void make_analytic_spectrum(std::vector<cplx>& spectrum, const std::array<int, 2>& shape, int dim);

}  // namespace synsq

#endif  // SYNSQ_SIGNAL_HPP
