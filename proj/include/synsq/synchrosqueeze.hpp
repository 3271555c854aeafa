#ifndef SYNSQ_SYNCHROSQUEEZE_HPP
#define SYNSQ_SYNCHROSQUEEZE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "synsq/signal.hpp"
#include "synsq/wavepacket.hpp"

namespace synsq {

// ---------------------------------------------------------------------------
// Configuration and distribution types
// ---------------------------------------------------------------------------

enum class SqueezeMode { kFull, kSelectiveMax };

// Regular frequency axis with bin centers lo, lo+step, ..., hi.
struct VAxis {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  int bins() const { return static_cast<int>(std::int64_t((hi - lo) / step + 1e-9)) + 1; }
  double center(int i) const { return lo + i * step; }
  // Nearest bin-center index, or -1 when v falls outside the grid.
  int bin_of(double v) const {
    const long long i = std::llround((v - lo) / step);
    return (i >= 0 && i < bins()) ? static_cast<int>(i) : -1;
  }
};

struct SqueezeConfig {
  double delta = 1e-2;
  ThresholdMode threshold_mode = ThresholdMode::kR;
  SqueezeMode mode = SqueezeMode::kFull;
  double bin_width = 1.0;                    // used when axes are defaulted
  std::optional<VAxis> v_axis0, v_axis1;     // default: derived from the band
  bool normalize_input = true;               // pre-scale input to unit L-inf
  // 2D pipelines only: accumulate the stacked (v1, x1) view at this x2 index
  // directly instead of materializing the 4-axis distribution. Equivalent to
  // stack_2d(full result, index); the meta bookkeeping then covers only the
  // stacked x2 slice.
  std::optional<int> stack_x2;

  VAxis effective_axis(int which, const Band& band) const;
  void validate(double nyquist) const;
};

struct TFMeta {
  double s = 0.0;
  int red = 1;
  SqueezeMode mode = SqueezeMode::kFull;
  ThresholdMode threshold_mode = ThresholdMode::kR;
  double delta = 1e-2;
  std::optional<std::uint64_t> seed;
  double input_scale = 1.0;          // L-inf factor divided out of the input
  double reassigned_energy = 0.0;    // sum (or frame mean) of squeezed |W|^2
  std::int64_t masked = 0;           // coefficients that were reassigned
  std::int64_t dropped = 0;          // estimates outside the v grid
  std::array<int, 2> signal_shape{0, 1};
  std::optional<int> stacked_x2;
};

// Synchrosqueezed energy distribution T(v, b): nonnegative histogram over a
// regular v grid times the signal's b lattice. 1D distributions (and stacked
// 2D views) are dense [v * Btotal + b_flat]; full 2D distributions are sparse
// maps keyed by packed (v1, v2, b1, b2) indices since the dense 4-axis grid
// is far too large at realistic sizes.
struct TFDistribution {
  int v_dim = 1;
  std::array<VAxis, 2> v_axes;
  std::array<int, 2> b_shape{0, 1};
  std::vector<double> dense;
  std::map<std::uint64_t, double> sparse;
  TFMeta meta;

  std::int64_t b_total() const { return static_cast<std::int64_t>(b_shape[0]) * b_shape[1]; }
  double total_mass() const;  // compensated sum over all entries

  static std::uint64_t pack_key(int v1, int v2, int b1, int b2) {
    return (static_cast<std::uint64_t>(static_cast<std::uint16_t>(v1)) << 48) |
           (static_cast<std::uint64_t>(static_cast<std::uint16_t>(v2)) << 32) |
           (static_cast<std::uint64_t>(static_cast<std::uint16_t>(b1)) << 16) |
           static_cast<std::uint64_t>(static_cast<std::uint16_t>(b2));
  }
  static std::array<int, 4> unpack_key(std::uint64_t k) {
    return {static_cast<int>((k >> 48) & 0xffff), static_cast<int>((k >> 32) & 0xffff),
            static_cast<int>((k >> 16) & 0xffff), static_cast<int>(k & 0xffff)};
  }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Instantaneous frequency (local wave vector) estimates Re[G/(2 pi i W)] at
// masked points; NaN marks "no estimate". comp[axis][center][flat b].
struct VField {
  int dim = 1;
  std::array<int, 2> b_shape{0, 1};
  std::array<std::vector<std::vector<double>>, 2> comp;
};

VField information_function(const WPCoefficients& coeffs, const Mask& mask);

// Nearest-bin reassignment of |W(a,b)|^2 to (v(a,b), b). Estimates outside
// the v grid are dropped and counted.
TFDistribution squeeze(const WPCoefficients& coeffs, const VField& v, const SqueezeConfig& config);

// Full pipeline over all `red` frames, averaging the per-frame distributions.
TFDistribution redundant_sst(const Signal& signal, const FrameSpec& spec, const SqueezeConfig& config);

// At each b only the largest-|W| in-band coefficient is reassigned (ties go
// to the smaller |a|); frames averaged as in redundant_sst.
TFDistribution selective_max_sst(const Signal& signal, const FrameSpec& spec, const SqueezeConfig& config);

// Sums a 2D distribution over v2 at the given x2 lattice index, producing a
// dense (v1, x1) view.
TFDistribution stack_2d(const TFDistribution& t, int fixed_x2);

// Compensated (Kahan) summation, used wherever energy bookkeeping must hold
// to 1e-12 relative.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

}  // namespace synsq

#endif  // SYNSQ_SYNCHROSQUEEZE_HPP
