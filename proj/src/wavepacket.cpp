#include "synsq/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "synsq/errors.hpp"

namespace synsq {

namespace {

double bump_shape(double u) {
  const double u2 = u * u;
  if (u2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u2));
}

double sinc(double t) {
  if (std::abs(t) < 1e-12) return 1.0;
  const double pt = kPi * t;
  return std::sin(pt) / pt;
}

// Composite Simpson on [a,b].
template <typename F>
double simpson(F f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// MotherWavePacket
// ---------------------------------------------------------------------------

double MotherWavePacket::shape(double xi) const {
  const double u = xi / d_;
  if (kind_ == PacketKind::kFrequencyCompact) return bump_shape(u);
  return std::pow(sinc(u), m_ + 2);
}

double MotherWavePacket::profile(double xi, int dim) const {
  return norm_[dim == 1 ? 0 : 1] * shape(xi);
}

MotherWavePacket make_mother_wavepacket(PacketKind kind, int m, double d) {
  if (!(d > 0.0) || d > 1.0) throw ParameterError("mother wave packet: d must lie in (0,1]");
  if (kind == PacketKind::kTimeCompact) {
    if (m < 0 || m == MotherWavePacket::kInfiniteDecay)
      throw ParameterError("mother wave packet: time-compact kind needs a finite decay order m >= 0");
  }

  MotherWavePacket w;
  w.kind_ = kind;
  w.m_ = kind == PacketKind::kFrequencyCompact ? MotherWavePacket::kInfiniteDecay : m;
  w.d_ = d;

  // L2 normalization per dimension: 1D integral of shape^2 over the line,
  // 2D integral over the plane (radial).
  double i1 = 0.0, i2 = 0.0;
  if (kind == PacketKind::kFrequencyCompact) {
    i1 = d * simpson([](double u) { return bump_shape(u) * bump_shape(u); }, -1.0, 1.0, 4096);
    i2 = kTwoPi * d * d *
         simpson([](double r) { return r * bump_shape(r) * bump_shape(r); }, 0.0, 1.0, 4096);
  } else {
    const int p2 = 2 * (m + 2);
    auto s2 = [p2](double u) { return std::pow(sinc(u), p2); };
    const double cut = 128.0;
    i1 = d * 2.0 * simpson(s2, 0.0, cut, 1 << 18);
    i1 += d * 2.0 * std::pow(kPi, -p2) * std::pow(cut, 1.0 - p2) / (p2 - 1);
    i2 = kTwoPi * d * d * simpson([&](double r) { return r * s2(r); }, 0.0, cut, 1 << 18);
    i2 += kTwoPi * d * d * std::pow(kPi, -p2) * std::pow(cut, 2.0 - p2) / (p2 - 2);
  }
  w.norm_[0] = 1.0 / std::sqrt(i1);
  w.norm_[1] = 1.0 / std::sqrt(i2);

  // Measured decay constant outside the unit ball.
  if (kind == PacketKind::kTimeCompact) {
    for (int dim = 1; dim <= 2; ++dim) {
      double eps = 0.0;
      for (double xi = 1.0; xi <= 32.0; xi += 1.0 / 256.0)
        eps = std::max(eps, std::abs(w.profile(xi, dim)) * std::pow(1.0 + xi, m));
      for (double xi = 32.0; xi <= 256.0; xi += 1.0 / 32.0)
        eps = std::max(eps, std::abs(w.profile(xi, dim)) * std::pow(1.0 + xi, m));
      w.epsilon_[dim - 1] = eps;
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// FrameSpec / FrameGrid
// ---------------------------------------------------------------------------

Band FrameSpec::effective_band() const {
  if (band) return *band;
  return Band{2.0, nyquist()};
}

double FrameSpec::effective_ladder_step() const { return ladder_step > 0.0 ? ladder_step : 1.2; }

void FrameSpec::validate() const {
  if (dim != 1 && dim != 2) throw ParameterError("frame spec: dimension must be 1 or 2");
  if (!(s > 0.5) || !(s < 1.0)) throw ParameterError("frame spec: s must lie in (1/2, 1)");
  if (red < 1) throw ParameterError("frame spec: red must be >= 1");
  if (frame_index < 0 || frame_index >= red)
    throw ParameterError("frame spec: frame_index must lie in [0, red)");
  if (signal_shape[0] < 2 || (dim == 2 && signal_shape[1] < 2))
    throw ParameterError("frame spec: signal shape too small");
  if (band) {
    if (!(band->lo > 0.0) || !(band->hi > band->lo))
      throw ParameterError("frame spec: band must satisfy 0 < lo < hi");
    if (band->hi > nyquist() + 1e-9)
      throw ParameterError("frame spec: band exceeds the Nyquist frequency");
  }
  if (ladder_step != 0.0 && (!(ladder_step > 0.0) || ladder_step > 1.4))
    throw ParameterError("frame spec: ladder step must lie in (0, 1.4]");
  if (mother.kind() == PacketKind::kTimeCompact) {
    const int need = static_cast<int>(std::ceil(2.0 / (1.0 - s))) + 4;
    if (mother.decay_order() < need)
      throw ParameterError("frame spec: time-compact mother needs decay order m >= ceil(2/(1-s)) + 4 = " +
                           std::to_string(need));
  }
}

namespace {

// Radial ladder marching a_{i+1} = a_i + step r(a_i). Adjacent supports then
// overlap by about (1 + step) r(a_i), comfortably past the required 50% of
// the smaller radius, and every band frequency sits within step/2 support
// radii of some center, which keeps the reassignment skew of mid-gap ridges
// well under a bin. One extra rung is prepended below the band so frames
// shifted right by up to one local spacing still cover the band's lower edge.
std::vector<double> radial_ladder(double lo, double hi, double s, double d, double step) {
  auto r = [&](double a) { return std::pow(a, s) * d; };

  double a0 = lo + r(lo);
  for (int it = 0; it < 64; ++it) a0 = lo + r(a0);  // left support edge at lo

  std::vector<double> ladder;
  {
    double prev = a0 - step * r(a0);
    for (int it = 0; it < 64 && prev > 0.0; ++it) prev = a0 - step * r(prev);
    prev = std::max(prev, std::min(0.5, lo * 0.25));
    if (prev < a0) ladder.push_back(prev);
  }
  ladder.push_back(a0);

  while (ladder.back() + r(ladder.back()) < hi) {
    const double ai = ladder.back();
    ladder.push_back(ai + step * r(ai));
  }
  return ladder;
}

// Radial positions of one frame: rung i moves right by frac of the gap to the
// next rung, so the union over all frames is a strictly denser cover.
std::vector<double> shifted_ladder(const std::vector<double>& base, double frac) {
  std::vector<double> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double gap = i + 1 < base.size() ? base[i + 1] - base[i]
                                           : (base.size() > 1 ? base[i] - base[i - 1] : 0.0);
    out[i] = base[i] + frac * gap;
  }
  return out;
}

}  // namespace

FrameGrid build_frame_grid(const FrameSpec& spec) {
  spec.validate();
  const Band band = spec.effective_band();
  if (band.hi > spec.nyquist() + 1e-9)
    throw ParameterError("frame grid: band exceeds the Nyquist frequency");

  const double d = spec.mother.support_d();
  const double frac = static_cast<double>(spec.frame_index) / spec.red;
  const std::vector<double> radii =
      shifted_ladder(radial_ladder(band.lo, band.hi, spec.s, d, spec.effective_ladder_step()), frac);

  FrameGrid grid;
  grid.spec = spec;
  for (double rho : radii) {
    const double radius = std::pow(rho, spec.s) * d;
    if (spec.dim == 1) {
      FrameCenter c;
      c.a = {rho, 0.0};
      c.abs_a = rho;
      c.radius = radius;
      grid.centers.push_back(c);
    } else {
      const int ndir = std::max(8, static_cast<int>(std::lround(std::pow(rho, 1.0 - spec.s))));
      const double astep = kTwoPi / ndir;
      const double rot = frac * astep;
      for (int t = 0; t < ndir; ++t) {
        const double theta = t * astep + rot;
        FrameCenter c;
        c.a = {rho * std::cos(theta), rho * std::sin(theta)};
        c.abs_a = rho;
        c.radius = radius;
        c.angular_step = astep;
        grid.centers.push_back(c);
      }
    }
  }
  std::stable_sort(grid.centers.begin(), grid.centers.end(),
                   [](const FrameCenter& x, const FrameCenter& y) { return x.abs_a < y.abs_a; });
  return grid;
}

// ---------------------------------------------------------------------------
// Forward transform
// ---------------------------------------------------------------------------

PreparedSpectrum prepare_spectrum(const Signal& signal) {
  signal.validate();
  PreparedSpectrum sp;
  sp.dim = signal.dim;
  sp.shape = signal.shape;
  const std::int64_t total = signal.total_samples();

  std::vector<int> dims{signal.shape[0]};
  if (signal.dim == 2) dims.push_back(signal.shape[1]);
  Fft fft(dims);
  sp.fhat.resize(static_cast<std::size_t>(total));
  fft.forward(signal.samples.data(), sp.fhat.data());
  const double inv = 1.0 / static_cast<double>(total);
  for (auto& v : sp.fhat) v *= inv;

  if (signal.is_real) make_analytic_spectrum(sp.fhat, sp.shape, sp.dim);
  return sp;
}

SliceWorker::SliceWorker(const PreparedSpectrum& spectrum, const FrameSpec& spec)
    : spectrum_(spectrum),
      spec_(spec),
      fft_(spectrum.dim == 1 ? std::vector<int>{spectrum.shape[0]}
                             : std::vector<int>{spectrum.shape[0], spectrum.shape[1]}) {
  windowed_.resize(static_cast<std::size_t>(fft_.size()));
}

void SliceWorker::gather_support(const FrameCenter& center) {
  bins_.clear();
  bin_freqs_.clear();
  const int n0 = spectrum_.shape[0];
  const int n1 = spectrum_.shape[1];
  const bool limited = spec_.mother.band_limited();

  auto signed_range = [](double lo, double hi, int n, auto&& emit) {
    int klo = static_cast<int>(std::ceil(lo));
    int khi = static_cast<int>(std::floor(hi));
    klo = std::max(klo, -n / 2);
    khi = std::min(khi, n / 2 - 1);
    for (int k = klo; k <= khi; ++k) emit(k);
  };

  if (spectrum_.dim == 1) {
    const double a = center.a[0];
    const double lo = limited ? a - center.radius : -n0 / 2.0;
    const double hi = limited ? a + center.radius : n0 / 2.0 - 1.0;
    signed_range(lo, hi, n0, [&](int k) {
      bins_.push_back(k >= 0 ? k : k + n0);
      bin_freqs_.push_back({static_cast<double>(k), 0.0});
    });
  } else {
    const double a0 = center.a[0];
    const double a1 = center.a[1];
    const double r = center.radius;
    auto row = [&](int k0) {
      double lo1 = -n1 / 2.0, hi1 = n1 / 2.0 - 1.0;
      if (limited) {
        const double dx = k0 - a0;
        const double h2 = r * r - dx * dx;
        if (h2 < 0.0) return;
        const double h = std::sqrt(h2);
        lo1 = a1 - h;
        hi1 = a1 + h;
      }
      const std::int64_t base = static_cast<std::int64_t>(k0 >= 0 ? k0 : k0 + n0) * n1;
      signed_range(lo1, hi1, n1, [&](int k1) {
        bins_.push_back(base + (k1 >= 0 ? k1 : k1 + n1));
        bin_freqs_.push_back({static_cast<double>(k0), static_cast<double>(k1)});
      });
    };
    signed_range(limited ? a0 - r : -n0 / 2.0, limited ? a0 + r : n0 / 2.0 - 1.0, n0, row);
  }
}

void SliceWorker::compute(const FrameCenter& center, std::vector<cplx>& w,
                          std::array<std::vector<cplx>, 2>* g) {
  const std::int64_t total = fft_.size();
  const double scale = std::pow(center.abs_a, spec_.s);

  gather_support(center);

  // Window values on the support; unit discrete l2 normalization.
  vals_.resize(bins_.size());
  double sumsq = 0.0;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    const double dx0 = bin_freqs_[i][0] - center.a[0];
    const double dx1 = bin_freqs_[i][1] - center.a[1];
    const double dist = spectrum_.dim == 1 ? std::abs(dx0) : std::hypot(dx0, dx1);
    const double v = spec_.mother.profile(dist / scale, spectrum_.dim);
    vals_[i] = v;
    sumsq += v * v;
  }
  const double beta = sumsq > 0.0 ? std::sqrt(static_cast<double>(total) / sumsq) : 0.0;

  w.assign(static_cast<std::size_t>(total), cplx{0.0, 0.0});
  if (beta == 0.0) {
    if (g)
      for (int j = 0; j < spectrum_.dim; ++j) (*g)[j].assign(static_cast<std::size_t>(total), cplx{0.0, 0.0});
    return;
  }

  std::fill(windowed_.begin(), windowed_.end(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < bins_.size(); ++i)
    windowed_[static_cast<std::size_t>(bins_[i])] = spectrum_.fhat[static_cast<std::size_t>(bins_[i])] * (beta * vals_[i]);
  fft_.backward(windowed_.data(), w.data());

  if (g) {
    for (int j = 0; j < spectrum_.dim; ++j) {
      for (std::size_t i = 0; i < bins_.size(); ++i) {
        const std::size_t fl = static_cast<std::size_t>(bins_[i]);
        windowed_[fl] = spectrum_.fhat[fl] * (beta * vals_[i]) * cplx{0.0, kTwoPi * bin_freqs_[i][j]};
      }
      (*g)[j].resize(static_cast<std::size_t>(total));
      fft_.backward(windowed_.data(), (*g)[j].data());
    }
    for (int j = spectrum_.dim; j < 2; ++j) (*g)[j].clear();
  }
}

WPCoefficients forward_transform(const Signal& signal, const FrameGrid& grid) {
  if (grid.centers.empty()) throw InputError("forward transform: empty frame grid");
  for (int axis = 0; axis < signal.dim; ++axis) {
    const int n = signal.shape[axis];
    if (n < 2 || (n & (n - 1)) != 0)
      throw ParameterError("forward transform: signal length must be a power of 2 per axis");
  }

  const PreparedSpectrum spectrum = prepare_spectrum(signal);
  SliceWorker worker(spectrum, grid.spec);

  WPCoefficients out;
  out.grid = grid;
  out.b_shape = signal.shape;
  out.W.resize(grid.centers.size());
  out.G.resize(grid.centers.size());
  for (std::size_t c = 0; c < grid.centers.size(); ++c)
    worker.compute(grid.centers[c], out.W[c], &out.G[c]);
  return out;
}

// ---------------------------------------------------------------------------
// Threshold masks
// ---------------------------------------------------------------------------

double threshold_value(double abs_a, int dim, double s, double delta, ThresholdMode mode) {
  if (mode == ThresholdMode::kS) return delta;
  return std::pow(abs_a, -0.5 * dim * s) * delta;
}

Mask threshold_mask(const WPCoefficients& coeffs, double delta, ThresholdMode mode) {
  if (!(delta > 0.0)) throw ParameterError("threshold mask: delta must be positive");
  const int dim = coeffs.grid.spec.dim;
  const double s = coeffs.grid.spec.s;

  Mask mask(coeffs.W.size());
  for (std::size_t c = 0; c < coeffs.W.size(); ++c) {
    const double thr = threshold_value(coeffs.grid.centers[c].abs_a, dim, s, delta, mode);
    const double thr2 = thr * thr;
    mask[c].resize(coeffs.W[c].size());
    for (std::size_t i = 0; i < coeffs.W[c].size(); ++i)
      mask[c][i] = std::norm(coeffs.W[c][i]) >= thr2 ? 1 : 0;
  }
  return mask;
}

}  // namespace synsq
