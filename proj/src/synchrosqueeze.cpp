#include "synsq/synchrosqueeze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "synsq/errors.hpp"
#include "synsq/parallel.hpp"
#include "synsq/signals.hpp"

namespace synsq {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTinyMagSq = 1e-60;  // |W|^2 guard under the mask

// v = Re[G / (2 pi i W)] = Im(G conj(W)) / (2 pi |W|^2), per component.
inline double if_estimate(const cplx& g, const cplx& w, double w_norm2) {
  return (g.imag() * w.real() - g.real() * w.imag()) / (kTwoPi * w_norm2);
}
}  // namespace

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

VAxis SqueezeConfig::effective_axis(int which, const Band& band) const {
  if (which == 0 && v_axis0) return *v_axis0;
  if (which == 1 && v_axis1) return *v_axis1;
  // 1D: the analyzed band. 2D: wave vector components live in [0, band.hi]
  // for first-quadrant content; ask for explicit axes otherwise.
  return which == 0 ? VAxis{band.lo, band.hi, bin_width} : VAxis{0.0, band.hi, bin_width};
}

void SqueezeConfig::validate(double nyquist) const {
  if (!(delta > 0.0)) throw ParameterError("squeeze config: delta must be positive");
  if (!(bin_width > 0.0)) throw ParameterError("squeeze config: bin width must be positive");
  for (const auto& ax : {v_axis0, v_axis1}) {
    if (!ax) continue;
    if (ax->lo < 0.0) throw ParameterError("squeeze config: v_min must be >= 0");
    if (!(ax->step > 0.0)) throw ParameterError("squeeze config: bin width must be positive");
    if (ax->hi < ax->lo) throw ParameterError("squeeze config: v_max must be >= v_min");
    if (ax->hi > nyquist + 1e-9)
      throw ParameterError("squeeze config: v_max exceeds the Nyquist frequency");
  }
}

// ---------------------------------------------------------------------------
// TFDistribution
// ---------------------------------------------------------------------------

double TFDistribution::total_mass() const {
  KahanSum total;
  if (v_dim == 1) {
    for (double x : dense) total.add(x);
  } else {
    for (const auto& [k, x] : sparse) total.add(x);
  }
  return total.sum;
}

// ---------------------------------------------------------------------------
// Information function
// ---------------------------------------------------------------------------

VField information_function(const WPCoefficients& coeffs, const Mask& mask) {
  if (mask.size() != coeffs.W.size())
    throw ParameterError("information function: mask does not match coefficients");

  const int dim = coeffs.grid.spec.dim;
  VField v;
  v.dim = dim;
  v.b_shape = coeffs.b_shape;
  const std::size_t nb = static_cast<std::size_t>(coeffs.b_total());

  for (int j = 0; j < dim; ++j) v.comp[j].resize(coeffs.W.size());
  for (std::size_t c = 0; c < coeffs.W.size(); ++c) {
    if (mask[c].size() != coeffs.W[c].size())
      throw ParameterError("information function: mask does not match coefficients");
    for (int j = 0; j < dim; ++j) v.comp[j][c].assign(nb, kNaN);
    for (std::size_t i = 0; i < nb; ++i) {
      if (!mask[c][i]) continue;
      const cplx w = coeffs.W[c][i];
      const double n2 = std::norm(w);
      if (n2 < kTinyMagSq)
        throw InternalError("information function: mask marks a vanishing coefficient");
      for (int j = 0; j < dim; ++j) v.comp[j][c][i] = if_estimate(coeffs.G[c][j][i], w, n2);
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Squeezing
// ---------------------------------------------------------------------------

namespace {

// Shared accumulation state for one distribution being built.
struct Accumulator {
  TFDistribution* t;
  KahanSum energy;
  std::int64_t masked = 0;
  std::int64_t dropped = 0;

  void add1d(double v, std::int64_t b, double mass) {
    ++masked;
    const int bin = t->v_axes[0].bin_of(v);
    if (bin < 0) {
      ++dropped;
      return;
    }
    t->dense[static_cast<std::size_t>(bin) * t->b_total() + b] += mass;
    energy.add(mass);
  }

  void add2d(double v0, double v1, std::int64_t b, double mass) {
    ++masked;
    const int bin0 = t->v_axes[0].bin_of(v0);
    const int bin1 = t->v_axes[1].bin_of(v1);
    if (bin0 < 0 || bin1 < 0) {
      ++dropped;
      return;
    }
    const int b1 = static_cast<int>(b / t->b_shape[1]);
    const int b2 = static_cast<int>(b % t->b_shape[1]);
    t->sparse[TFDistribution::pack_key(bin0, bin1, b1, b2)] += mass;
    energy.add(mass);
  }

  // Direct stacking: same binning and drop rules as add2d restricted to the
  // fixed x2 slice, summed over v2.
  void add2d_stacked(double v0, double v1, std::int64_t b1, const VAxis& v1_axis, double mass) {
    ++masked;
    const int bin0 = t->v_axes[0].bin_of(v0);
    const int bin1 = v1_axis.bin_of(v1);
    if (bin0 < 0 || bin1 < 0) {
      ++dropped;
      return;
    }
    t->dense[static_cast<std::size_t>(bin0) * t->b_shape[0] + b1] += mass;
    energy.add(mass);
  }
};

TFDistribution make_empty(const FrameSpec& spec, const SqueezeConfig& config,
                          const std::array<int, 2>& b_shape) {
  TFDistribution t;
  const bool stacked = spec.dim == 2 && config.stack_x2.has_value();
  t.v_dim = stacked ? 1 : spec.dim;
  const Band band = spec.effective_band();
  t.v_axes[0] = config.effective_axis(0, band);
  t.v_axes[1] = spec.dim == 2 ? config.effective_axis(1, band) : VAxis{};
  t.b_shape = stacked ? std::array<int, 2>{b_shape[0], 1} : b_shape;
  if (t.v_dim == 1)
    t.dense.assign(static_cast<std::size_t>(t.v_axes[0].bins()) * t.b_total(), 0.0);
  t.meta.s = spec.s;
  t.meta.red = spec.red;
  t.meta.mode = config.mode;
  t.meta.threshold_mode = config.threshold_mode;
  t.meta.delta = config.delta;
  t.meta.signal_shape = spec.signal_shape;
  if (stacked) {
    if (*config.stack_x2 < 0 || *config.stack_x2 >= b_shape[1])
      throw ParameterError("squeeze config: stack x2 index out of range");
    t.meta.stacked_x2 = *config.stack_x2;
  }
  return t;
}

}  // namespace

TFDistribution squeeze(const WPCoefficients& coeffs, const VField& v, const SqueezeConfig& config) {
  const FrameSpec& spec = coeffs.grid.spec;
  config.validate(spec.nyquist());
  if (v.b_shape != coeffs.b_shape || v.dim != spec.dim ||
      v.comp[0].size() != coeffs.W.size())
    throw ParameterError("squeeze: information field does not match coefficients");

  TFDistribution t = make_empty(spec, config, coeffs.b_shape);
  Accumulator acc{&t, {}, 0, 0};
  const std::int64_t nb = coeffs.b_total();

  for (std::size_t c = 0; c < coeffs.W.size(); ++c) {
    for (std::int64_t i = 0; i < nb; ++i) {
      const double v0 = v.comp[0][c][static_cast<std::size_t>(i)];
      if (std::isnan(v0)) continue;
      const double mass = std::norm(coeffs.W[c][static_cast<std::size_t>(i)]);
      if (spec.dim == 1)
        acc.add1d(v0, i, mass);
      else
        acc.add2d(v0, v.comp[1][c][static_cast<std::size_t>(i)], i, mass);
    }
  }
  t.meta.reassigned_energy = acc.energy.sum;
  t.meta.masked = acc.masked;
  t.meta.dropped = acc.dropped;
  return t;
}

// ---------------------------------------------------------------------------
// Frame pipelines
// ---------------------------------------------------------------------------

namespace {

// One frame of the full pipeline, streaming center by center so only a single
// center's slices are ever materialized.
TFDistribution run_frame(const PreparedSpectrum& spectrum, const FrameSpec& frame_spec,
                         const SqueezeConfig& config) {
  const FrameGrid grid = build_frame_grid(frame_spec);
  TFDistribution t = make_empty(frame_spec, config, spectrum.shape);
  Accumulator acc{&t, {}, 0, 0};

  SliceWorker worker(spectrum, frame_spec);
  const std::int64_t nb = static_cast<std::int64_t>(spectrum.shape[0]) * spectrum.shape[1];
  const int dim = frame_spec.dim;
  const bool stacked = dim == 2 && config.stack_x2.has_value();
  const int n1 = spectrum.shape[1];

  std::vector<cplx> w;
  std::array<std::vector<cplx>, 2> g;

  auto emit = [&](double v0, double v1, std::int64_t i, double mass) {
    if (dim == 1) {
      acc.add1d(v0, i, mass);
    } else if (stacked) {
      if (static_cast<int>(i % n1) == *config.stack_x2)
        acc.add2d_stacked(v0, v1, i / n1, t.v_axes[1], mass);
    } else {
      acc.add2d(v0, v1, i, mass);
    }
  };

  const bool selective = config.mode == SqueezeMode::kSelectiveMax;
  std::vector<double> best_mass;
  std::vector<double> best_v0, best_v1;
  if (selective) {
    best_mass.assign(static_cast<std::size_t>(nb), -1.0);
    best_v0.assign(static_cast<std::size_t>(nb), 0.0);
    if (dim == 2) best_v1.assign(static_cast<std::size_t>(nb), 0.0);
  }

  for (const FrameCenter& center : grid.centers) {
    worker.compute(center, w, &g);
    const double thr = threshold_value(center.abs_a, dim, frame_spec.s, config.delta,
                                       config.threshold_mode);
    const double thr2 = thr * thr;
    for (std::int64_t i = 0; i < nb; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      const double n2 = std::norm(w[ui]);
      if (n2 < thr2) continue;
      if (n2 < kTinyMagSq)
        throw InternalError("synchrosqueeze: mask marks a vanishing coefficient");
      if (selective) {
        if (n2 > best_mass[ui]) {
          best_mass[ui] = n2;
          best_v0[ui] = if_estimate(g[0][ui], w[ui], n2);
          if (dim == 2) best_v1[ui] = if_estimate(g[1][ui], w[ui], n2);
        }
      } else {
        emit(if_estimate(g[0][ui], w[ui], n2),
             dim == 2 ? if_estimate(g[1][ui], w[ui], n2) : 0.0, i, n2);
      }
    }
  }

  if (selective) {
    for (std::int64_t i = 0; i < nb; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      if (best_mass[ui] < 0.0) continue;
      emit(best_v0[ui], dim == 2 ? best_v1[ui] : 0.0, i, best_mass[ui]);
    }
  }

  t.meta.reassigned_energy = acc.energy.sum;
  t.meta.masked = acc.masked;
  t.meta.dropped = acc.dropped;
  return t;
}

TFDistribution run_pipeline(const Signal& signal, const FrameSpec& spec, const SqueezeConfig& config) {
  FrameSpec local = spec;
  config.validate(local.nyquist());

  Signal sig = signal;
  double input_scale = 1.0;
  if (config.normalize_input) {
    const double linf = linf_norm(sig);
    if (linf > 0.0) {
      input_scale = linf;
      for (auto& v : sig.samples) v /= linf;
    }
  }
  bool pow2 = true;
  for (int axis = 0; axis < sig.dim; ++axis)
    if ((sig.shape[axis] & (sig.shape[axis] - 1)) != 0) pow2 = false;
  if (!pow2) sig = resample_pow2(sig);
  local.signal_shape = sig.shape;
  local.validate();

  const PreparedSpectrum spectrum = prepare_spectrum(sig);

  std::vector<TFDistribution> frames(static_cast<std::size_t>(local.red));
  parallel_for(local.red, [&](std::int64_t j) {
    FrameSpec fs = local;
    fs.frame_index = static_cast<int>(j);
    frames[static_cast<std::size_t>(j)] = run_frame(spectrum, fs, config);
  });

  // Arithmetic mean of the per-frame distributions, reduced in frame order.
  TFDistribution out = std::move(frames[0]);
  for (std::size_t j = 1; j < frames.size(); ++j) {
    const TFDistribution& f = frames[j];
    if (out.v_dim == 1) {
      for (std::size_t i = 0; i < out.dense.size(); ++i) out.dense[i] += f.dense[i];
    } else {
      for (const auto& [k, x] : f.sparse) out.sparse[k] += x;
    }
    out.meta.reassigned_energy += f.meta.reassigned_energy;
    out.meta.masked += f.meta.masked;
    out.meta.dropped += f.meta.dropped;
  }
  const double inv = 1.0 / local.red;
  if (out.v_dim == 1) {
    for (auto& x : out.dense) x *= inv;
  } else {
    for (auto& [k, x] : out.sparse) x *= inv;
  }
  out.meta.reassigned_energy *= inv;
  out.meta.red = local.red;
  out.meta.input_scale = input_scale;
  out.meta.seed = signal.provenance.seed;
  return out;
}

}  // namespace

TFDistribution redundant_sst(const Signal& signal, const FrameSpec& spec, const SqueezeConfig& config) {
  if (config.mode != SqueezeMode::kFull)
    throw ParameterError("redundant_sst: config mode must be full (use selective_max_sst)");
  return run_pipeline(signal, spec, config);
}

TFDistribution selective_max_sst(const Signal& signal, const FrameSpec& spec, const SqueezeConfig& config) {
  if (config.mode != SqueezeMode::kSelectiveMax)
    throw ParameterError("selective_max_sst: config mode must be selective_max");
  return run_pipeline(signal, spec, config);
}

// ---------------------------------------------------------------------------
// Stacking
// ---------------------------------------------------------------------------

TFDistribution stack_2d(const TFDistribution& t, int fixed_x2) {
  if (t.v_dim != 2) throw ParameterError("stack_2d: input must be a 2D distribution");
  if (fixed_x2 < 0 || fixed_x2 >= t.b_shape[1])
    throw ParameterError("stack_2d: x2 index out of range");

  TFDistribution out;
  out.v_dim = 1;
  out.v_axes[0] = t.v_axes[0];
  out.b_shape = {t.b_shape[0], 1};
  out.dense.assign(static_cast<std::size_t>(out.v_axes[0].bins()) * out.b_shape[0], 0.0);
  out.meta = t.meta;
  out.meta.stacked_x2 = fixed_x2;

  for (const auto& [key, mass] : t.sparse) {
    const auto [v1, v2, b1, b2] = TFDistribution::unpack_key(key);
    if (b2 != fixed_x2) continue;
    out.dense[static_cast<std::size_t>(v1) * out.b_shape[0] + b1] += mass;
  }
  return out;
}

}  // namespace synsq
