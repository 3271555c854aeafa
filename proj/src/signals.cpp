#include "synsq/signals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "synsq/errors.hpp"
#include "synsq/wavepacket.hpp"

namespace synsq {

// ---------------------------------------------------------------------------
// Signal utilities
// ---------------------------------------------------------------------------

void Signal::validate() const {
  if (dim != 1 && dim != 2) throw InputError("signal: dimension must be 1 or 2");
  if (shape[0] < 1 || shape[1] < 1) throw InputError("signal: empty shape");
  if (dim == 1 && shape[1] != 1) throw InputError("signal: 1D signals must have shape[1] == 1");
  if (samples.size() != static_cast<std::size_t>(total_samples()))
    throw InputError("signal: sample count does not match shape");
  for (int axis = 0; axis < dim; ++axis)
    if (std::abs(sample_rate[axis] - shape[axis]) > 1e-9)
      throw InputError("signal: sample rate must equal samples per axis (unit domain)");
  for (const cplx& v : samples)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InputError("signal: NaN or Inf sample");
}

double linf_norm(const Signal& s) {
  double m = 0.0;
  for (const cplx& v : s.samples) m = std::max(m, std::abs(v));
  return m;
}

void make_analytic_spectrum(std::vector<cplx>& spectrum, const std::array<int, 2>& shape, int dim) {
  auto mult = [](int k, int n) -> double {
    if (k == 0 || (n % 2 == 0 && k == n / 2)) return 1.0;
    return k < n / 2 ? 2.0 : 0.0;
  };
  const int n0 = shape[0];
  const int n1 = shape[1];
  if (dim == 1) {
    for (int k = 0; k < n0; ++k) spectrum[static_cast<std::size_t>(k)] *= mult(k, n0);
  } else {
    for (int k0 = 0; k0 < n0; ++k0) {
      const double m0 = mult(k0, n0);
      for (int k1 = 0; k1 < n1; ++k1)
        spectrum[static_cast<std::size_t>(k0) * n1 + k1] *= m0 * mult(k1, n1);
    }
  }
}

// ---------------------------------------------------------------------------
// Benchmark signal
// ---------------------------------------------------------------------------

namespace {
constexpr double kLn100 = 4.605170185988091;  // ln(100)
}

double benchmark_component(int k, double x) {
  switch (k) {
    case 1:
      return 0.6 * std::cos(700.0 * kPi * x);
    case 2:
      return 0.8 * std::cos(300.0 * kPi * x);
    case 3:
      return 0.7 * std::cos(1300.0 * kPi * x + 5.0 * std::sin(20.0 * kPi * x));
    case 4:
      // Exponential sweep; IF = 5 * 100^(5x/4), i.e. ~158 Hz at x=0.6 rising
      // to ~1581 Hz at x=1.
      return std::sin(8.0 * kPi * std::pow(100.0, 1.25 * x) / kLn100);
    case 5:
      return 3.0 * std::exp(-50.0 * (x - 0.2) * (x - 0.2)) * std::cos(50.0 * (x - 0.2));
    default:
      throw ParameterError("benchmark component index must be 1..5");
  }
}

bool benchmark_window(int k, double x) {
  switch (k) {
    case 1:
    case 2:
      return x >= 0.0 && x < 0.6;
    case 3:
      return x >= 0.4 && x < 0.8;
    case 4:
      return x >= 0.6 && x < 1.0;
    case 5:
      return true;
    default:
      throw ParameterError("benchmark component index must be 1..5");
  }
}

Signal gen_benchmark_1d(double fs) {
  if (fs < 4096) throw ParameterError("benchmark: fs must be >= 4096 (content up to ~1600 Hz)");
  const int n = static_cast<int>(std::lround(fs));

  Signal sig;
  sig.dim = 1;
  sig.shape = {n, 1};
  sig.sample_rate = {static_cast<double>(n), 1.0};
  sig.is_real = true;
  sig.samples.resize(static_cast<std::size_t>(n));

  double linf = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / n;
    double v = 0.0;
    for (int k = 1; k <= 5; ++k)
      if (benchmark_window(k, x)) v += benchmark_component(k, x);
    sig.samples[static_cast<std::size_t>(j)] = v;
    linf = std::max(linf, std::abs(v));
  }
  for (auto& v : sig.samples) v /= linf;

  sig.provenance.generator = "benchmark";
  sig.provenance.params = {{"fs", static_cast<double>(n)}};
  return sig;
}

// ---------------------------------------------------------------------------
// Chirp and 2D warped plane wave
// ---------------------------------------------------------------------------

double chirp_phase(double x) { return 30.0 * (x + 0.05 * std::cos(kTwoPi * x)); }

Signal gen_single_chirp(double fs) {
  if (fs < 128) throw ParameterError("chirp: fs must be >= 128");
  const int n = static_cast<int>(std::lround(fs));

  Signal sig;
  sig.dim = 1;
  sig.shape = {n, 1};
  sig.sample_rate = {static_cast<double>(n), 1.0};
  sig.is_real = false;
  sig.samples.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / n;
    sig.samples[static_cast<std::size_t>(j)] = std::polar(1.0, kTwoPi * chirp_phase(x));
  }
  sig.provenance.generator = "chirp";
  sig.provenance.params = {{"fs", static_cast<double>(n)}};
  return sig;
}

double warped_phase(double x1, double x2) {
  return 60.0 * (x1 + 0.05 * std::sin(kTwoPi * x1)) + 60.0 * (x2 + 0.05 * std::sin(kTwoPi * x2));
}

Signal gen_2d_warped(double fs) {
  if (fs < 256) throw ParameterError("warped2d: fs must be >= 256 (wave vector up to ~79 Hz)");
  const int n = static_cast<int>(std::lround(fs));

  Signal sig;
  sig.dim = 2;
  sig.shape = {n, n};
  sig.sample_rate = {static_cast<double>(n), static_cast<double>(n)};
  sig.is_real = false;
  sig.samples.resize(static_cast<std::size_t>(n) * n);
  for (int j0 = 0; j0 < n; ++j0) {
    const double x1 = static_cast<double>(j0) / n;
    for (int j1 = 0; j1 < n; ++j1) {
      const double x2 = static_cast<double>(j1) / n;
      sig.samples[static_cast<std::size_t>(j0) * n + j1] = std::polar(1.0, kTwoPi * warped_phase(x1, x2));
    }
  }
  sig.provenance.generator = "warped2d";
  sig.provenance.params = {{"fs", static_cast<double>(n)}};
  return sig;
}

// ---------------------------------------------------------------------------
// Noise
// ---------------------------------------------------------------------------

void NoiseSpec::validate() const {
  if (kind == NoiseKind::kWhiteGaussian) {
    if (sigma2 < 0.0) throw ParameterError("noise: sigma2 must be >= 0");
  } else {
    if (!(alpha > 0.0) || alpha > 2.0) throw ParameterError("noise: alpha must lie in (0,2]");
    if (!(dispersion > 0.0)) throw ParameterError("noise: dispersion must be positive");
    if (!(target_linf > 0.0)) throw ParameterError("noise: target L-inf must be positive");
  }
}

Signal add_noise(const Signal& signal, const NoiseSpec& spec, double* rescale_factor_out) {
  signal.validate();
  spec.validate();
  if (rescale_factor_out) *rescale_factor_out = 1.0;

  Signal out = signal;
  out.provenance.seed = spec.seed;
  auto& params = out.provenance.params;

  if (spec.kind == NoiseKind::kWhiteGaussian) {
    params.emplace_back("noise_sigma2", spec.sigma2);
    if (spec.sigma2 == 0.0) return out;  // exact identity

    std::mt19937_64 rng(spec.seed);
    if (spec.complex_circular) {
      std::normal_distribution<double> dist(0.0, std::sqrt(spec.sigma2 / 2.0));
      for (auto& v : out.samples) {
        const double re = dist(rng);
        const double im = dist(rng);
        v += cplx{re, im};
      }
      out.is_real = false;
    } else {
      std::normal_distribution<double> dist(0.0, std::sqrt(spec.sigma2));
      for (auto& v : out.samples) v += dist(rng);
    }
    return out;
  }

  // Symmetric alpha-stable via Chambers-Mallows-Stuck, then the whole noise
  // vector is rescaled so its L-inf norm equals target_linf.
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> uni(-kPi / 2.0, kPi / 2.0);
  std::exponential_distribution<double> expo(1.0);
  const double scale = std::pow(spec.dispersion, 1.0 / spec.alpha);

  std::vector<double> noise(out.samples.size());
  double max_abs = 0.0;
  for (auto& e : noise) {
    const double u = uni(rng);
    double x;
    if (std::abs(spec.alpha - 1.0) < 1e-12) {
      x = std::tan(u);
    } else {
      const double ev = expo(rng);
      x = std::sin(spec.alpha * u) / std::pow(std::cos(u), 1.0 / spec.alpha) *
          std::pow(std::cos(u - spec.alpha * u) / ev, (1.0 - spec.alpha) / spec.alpha);
    }
    e = scale * x + spec.delta_loc;
    max_abs = std::max(max_abs, std::abs(e));
  }
  const double factor = max_abs > 0.0 ? spec.target_linf / max_abs : 1.0;
  for (std::size_t i = 0; i < noise.size(); ++i) out.samples[i] += noise[i] * factor;

  params.emplace_back("noise_alpha", spec.alpha);
  params.emplace_back("noise_dispersion", spec.dispersion);
  params.emplace_back("noise_delta_loc", spec.delta_loc);
  params.emplace_back("noise_target_linf", spec.target_linf);
  params.emplace_back("noise_rescale_factor", factor);
  if (rescale_factor_out) *rescale_factor_out = factor;
  return out;
}

double sample_variance(const Signal& s) {
  const std::int64_t n = s.total_samples();
  if (n == 0) return 0.0;
  cplx mean{0.0, 0.0};
  for (const cplx& v : s.samples) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (const cplx& v : s.samples) var += std::norm(v - mean);
  return var / static_cast<double>(n);
}

double snr_db(const Signal& f, const Signal& e) {
  if (f.dim != e.dim || f.shape != e.shape)
    throw ParameterError("snr: signal and noise must have the same shape");
  const double ve = sample_variance(e);
  if (ve == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(sample_variance(f) / ve);
}

// ---------------------------------------------------------------------------
// Instantaneous frequency oracles
// ---------------------------------------------------------------------------

double oracle_if(const std::string& generator_id, double x) {
  if (generator_id == "chirp") return 30.0 * (1.0 - 0.1 * kPi * std::sin(kTwoPi * x));
  if (generator_id == "benchmark:f1") return 350.0;
  if (generator_id == "benchmark:f2") return 150.0;
  if (generator_id == "benchmark:f3") return 650.0 + 50.0 * std::cos(20.0 * kPi * x);
  if (generator_id == "benchmark:f4") return 5.0 * std::pow(100.0, 1.25 * x);
  throw ParameterError("no instantaneous frequency oracle for generator '" + generator_id + "'");
}

std::array<double, 2> oracle_wavevector(double x1, double x2) {
  return {60.0 * (1.0 + 0.1 * kPi * std::cos(kTwoPi * x1)),
          60.0 * (1.0 + 0.1 * kPi * std::cos(kTwoPi * x2))};
}

// ---------------------------------------------------------------------------
// Resampling
// ---------------------------------------------------------------------------

namespace {
int next_pow2(int n) {
  int m = 1;
  while (m < n) m *= 2;
  return m;
}
}  // namespace

Signal resample_pow2(const Signal& s) {
  s.validate();
  const int m0 = next_pow2(s.shape[0]);
  const int m1 = s.dim == 2 ? next_pow2(s.shape[1]) : 1;
  if (m0 == s.shape[0] && m1 == s.shape[1]) return s;

  const int n0 = s.shape[0];
  const int n1 = s.shape[1];
  std::vector<int> in_dims{n0};
  std::vector<int> out_dims{m0};
  if (s.dim == 2) {
    in_dims.push_back(n1);
    out_dims.push_back(m1);
  }

  Fft fwd(in_dims);
  std::vector<cplx> spec_in(s.samples.size());
  fwd.forward(s.samples.data(), spec_in.data());

  auto signed_k = [](int k, int n) { return k <= n / 2 - 1 ? k : k - n; };
  auto out_index = [](int k, int n) { return k >= 0 ? k : k + n; };

  std::vector<cplx> spec_out(static_cast<std::size_t>(m0) * m1, cplx{0.0, 0.0});
  const double gain = static_cast<double>(m0) * m1 / (static_cast<double>(n0) * n1);

  if (s.dim == 1) {
    for (int k = 0; k < n0; ++k) {
      const int sk = signed_k(k, n0);
      const cplx v = spec_in[static_cast<std::size_t>(k)] * gain;
      if (s.is_real && n0 % 2 == 0 && sk == -n0 / 2 && m0 > n0) {
        // Split the Nyquist bin symmetrically to keep the result real.
        spec_out[static_cast<std::size_t>(out_index(n0 / 2, m0))] += v * 0.5;
        spec_out[static_cast<std::size_t>(out_index(-n0 / 2, m0))] += v * 0.5;
      } else {
        spec_out[static_cast<std::size_t>(out_index(sk, m0))] += v;
      }
    }
  } else {
    for (int k0 = 0; k0 < n0; ++k0)
      for (int k1 = 0; k1 < n1; ++k1) {
        const int o0 = out_index(signed_k(k0, n0), m0);
        const int o1 = out_index(signed_k(k1, n1), m1);
        spec_out[static_cast<std::size_t>(o0) * m1 + o1] =
            spec_in[static_cast<std::size_t>(k0) * n1 + k1] * gain;
      }
  }

  Fft bwd(out_dims);
  Signal out;
  out.dim = s.dim;
  out.shape = {m0, s.dim == 2 ? m1 : 1};
  out.sample_rate = {static_cast<double>(m0), s.dim == 2 ? static_cast<double>(m1) : 1.0};
  out.is_real = s.is_real && s.dim == 1;
  out.samples.resize(spec_out.size());
  bwd.backward(spec_out.data(), out.samples.data());
  const double inv = 1.0 / (static_cast<double>(m0) * m1);
  for (auto& v : out.samples) v *= inv;
  if (out.is_real)
    for (auto& v : out.samples) v = cplx{v.real(), 0.0};
  out.provenance = s.provenance;
  out.provenance.params.emplace_back("resampled_fs", static_cast<double>(m0));
  return out;
}

}  // namespace synsq
