#ifndef SYNSQ_SIGNALS_HPP
#define SYNSQ_SIGNALS_HPP

#include <array>
#include <cstdint>
#include <string>

#include "synsq/signal.hpp"

namespace synsq {

// ---------------------------------------------------------------------------
// Benchmark generators. All are deterministic in their parameters; sampling
// is on x_j = j/fs over [0,1) per axis.
// ---------------------------------------------------------------------------

// Multi-component seismic-style benchmark, sampled at fs (>= 4096) and
// L-inf normalized: two windowed cosines at 150/350 Hz on [0,0.6), a
// 650 +- 50 Hz oscillatory-IF component on [0.4,0.8), an exponential sweep
// from ~158 to ~1581 Hz on [0.6,1), plus an impulsive wavelet at x=0.2.
Signal gen_benchmark_1d(double fs = 8192);

// Raw benchmark component k (1..5) at x, without its indicator window or the
// final L-inf normalization.
double benchmark_component(int k, double x);

// Half-open indicator supports [start, end) of the benchmark components.
bool benchmark_window(int k, double x);

// Single complex chirp e^{60 pi i (x + 0.05 cos(2 pi x))} with instantaneous
// frequency q(x) = 30 (1 - 0.1 pi sin(2 pi x)).
Signal gen_single_chirp(double fs = 1024);

// 2D warped plane wave e^{2 pi i (60(x1 + 0.05 sin 2 pi x1) + 60(x2 + 0.05 sin 2 pi x2))}.
Signal gen_2d_warped(double fs = 512);

// Phase functions in cycles (phase/2pi), for finite-difference IF checks.
double chirp_phase(double x);
double warped_phase(double x1, double x2);

// ---------------------------------------------------------------------------
// Noise
// ---------------------------------------------------------------------------

enum class NoiseKind { kWhiteGaussian, kAlphaStable };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kWhiteGaussian;
  double sigma2 = 1.0;  // gaussian variance per sample
  // alpha-stable (Chambers-Mallows-Stuck, symmetric): dispersion = scale^alpha.
  double alpha = 1.0;
  double dispersion = 0.9;
  double delta_loc = 1.0;
  double target_linf = 15.0;  // noise vector rescaled to this max before addition
  // Gaussian noise is real-valued and added to the real part of complex
  // signals by default; complex_circular draws independent real/imag halves
  // with total variance sigma2 instead.
  bool complex_circular = false;
  std::uint64_t seed = 0;

  void validate() const;
};

// Adds seeded noise; deterministic per (spec, seed). If rescale_factor_out is
// non-null it receives the alpha-stable L-inf rescale factor (1 for gaussian).
Signal add_noise(const Signal& signal, const NoiseSpec& spec, double* rescale_factor_out = nullptr);

// SNR[dB] = 10 log10(Var(f)/Var(e)); +infinity when Var(e) == 0.
double snr_db(const Signal& f, const Signal& e);

// Sample variance about the mean (complex: E|x - mean|^2, denominator n).
double sample_variance(const Signal& s);

// ---------------------------------------------------------------------------
// Instantaneous frequency oracles
// ---------------------------------------------------------------------------

// Analytic IF in Hz at x for 1D generators. Ids: "chirp", "benchmark:f1" ..
// "benchmark:f4". Throws ParameterError for generators without an IF oracle
// (noise, the impulsive wavelet benchmark:f5).
double oracle_if(const std::string& generator_id, double x);

// Local wave vector of the 2D warped plane wave at (x1, x2).
std::array<double, 2> oracle_wavevector(double x1, double x2);

// ---------------------------------------------------------------------------
// Signal utilities
// ---------------------------------------------------------------------------

// Frequency-domain resample to the next power-of-2 length per axis (identity
// when already a power of 2). Preserves frequency content in Hz; the sample
// rate becomes the new length (unit domain).
Signal resample_pow2(const Signal& s);

}  // namespace synsq

#endif  // SYNSQ_SIGNALS_HPP
