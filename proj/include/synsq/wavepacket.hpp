#ifndef SYNSQ_WAVEPACKET_HPP
#define SYNSQ_WAVEPACKET_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "synsq/fft.hpp"
#include "synsq/signal.hpp"

namespace synsq {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// ---------------------------------------------------------------------------
// Mother wave packets
// ---------------------------------------------------------------------------

enum class PacketKind {
  kFrequencyCompact,  // C-inf bump, exactly zero outside |xi| >= d
  kTimeCompact,       // spline window: sinc^(m+2) frequency profile
};

// Frequency-domain profile of a mother wave packet. The profile is even,
// real-valued, strictly positive for |xi| < d and L2-normalized per dimension
// (so the wave packet family built from it has unit L2 norm).
//
// The frequency-compact kind realizes decay type (0, inf). The time-compact
// kind has a compactly supported time-domain window (a B-spline) and satisfies
// |profile(xi)| <= epsilon / (1+|xi|)^m outside the unit ball for the epsilon
// measured at construction.
class MotherWavePacket {
 public:
  static constexpr int kInfiniteDecay = std::numeric_limits<int>::max();

  PacketKind kind() const { return kind_; }
  int decay_order() const { return m_; }
  double support_d() const { return d_; }

  // Measured decay constant: sup_{|xi|>1} |profile(xi)| (1+|xi|)^m.
  // Zero for the frequency-compact kind (compact support inside B_d, d<=1).
  double epsilon(int dim) const { return dim == 1 ? epsilon_[0] : epsilon_[1]; }

  // L2-normalized frequency profile at radial frequency |xi|, in `dim`
  // dimensions. Even in xi.
  double profile(double xi, int dim) const;

  // Raw (unnormalized, peak 1) profile shape; support test for the compact kind.
  double shape(double xi) const;
  bool band_limited() const { return kind_ == PacketKind::kFrequencyCompact; }

  friend MotherWavePacket make_mother_wavepacket(PacketKind kind, int m, double d);

 private:
  PacketKind kind_ = PacketKind::kFrequencyCompact;
  int m_ = kInfiniteDecay;
  double d_ = 1.0;
  std::array<double, 2> norm_ = {1.0, 1.0};     // 1/sqrt(int |shape|^2), per dim
  std::array<double, 2> epsilon_ = {0.0, 0.0};  // measured, per dim
};

// Builds a mother wave packet. d in (0,1]; m >= 0 for the time-compact kind
// (pass kInfiniteDecay for the frequency-compact kind, where m is ignored).
MotherWavePacket make_mother_wavepacket(PacketKind kind, int m, double d);

// ---------------------------------------------------------------------------
// Frame grids
// ---------------------------------------------------------------------------

struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

// Parameters of one wave packet frame: geometric scaling s in (1/2,1), number
// of frames `red`, which frame this is, optional analyzed band in Hz, the
// mother packet, and the signal geometry (unit domain: shape == sample rate).
struct FrameSpec {
  int dim = 1;
  double s = 0.75;
  int red = 1;
  int frame_index = 0;
  std::optional<Band> band;
  MotherWavePacket mother = make_mother_wavepacket(PacketKind::kFrequencyCompact, MotherWavePacket::kInfiniteDecay, 1.0);
  std::array<int, 2> signal_shape{0, 1};
  // Radial marching step in units of the local support radius; 0 selects the
  // default 1.2 (low per-frame redundancy; the union over red frames supplies
  // the oversampling). Smaller steps give denser single frames.
  double ladder_step = 0.0;

  double nyquist() const { return signal_shape[0] / 2.0; }
  Band effective_band() const;  // defaults to [2, nyquist]
  double effective_ladder_step() const;
  void validate() const;  // throws ParameterError
};

struct FrameCenter {
  std::array<double, 2> a{0.0, 0.0};  // frequency center (a[1] = 0 in 1D)
  double abs_a = 0.0;
  double radius = 0.0;        // frequency support radius |a|^s * d
  double angular_step = 0.0;  // 2D only: angle between adjacent directions
};

// The sampled set of frequency centers of one frame, sorted by |a|.
struct FrameGrid {
  FrameSpec spec;
  std::vector<FrameCenter> centers;
};

// Places centers so adjacent radial supports overlap by at least 50% of the
// smaller radius and the union of supports covers the band. In 2D each
// annulus carries max(8, round(|a|^(1-s))) uniformly spaced directions.
// frame_index j shifts radial positions by j/red of the local spacing and
// rotates the 2D angular grid by j/red of the angular spacing.
FrameGrid build_frame_grid(const FrameSpec& spec);

// ---------------------------------------------------------------------------
// Forward transform
// ---------------------------------------------------------------------------

// Wave packet coefficients W(a,b) and spatial gradient G = grad_b W on the
// frame's (center, b-lattice) index set. b runs over all signal samples.
struct WPCoefficients {
  FrameGrid grid;
  std::array<int, 2> b_shape{0, 1};
  std::vector<std::vector<cplx>> W;                  // [center][flat b]
  std::vector<std::array<std::vector<cplx>, 2>> G;   // [center][axis][flat b]

  std::int64_t b_total() const { return static_cast<std::int64_t>(b_shape[0]) * b_shape[1]; }
};

// Signal spectrum prepared for windowing: forward FFT scaled by 1/Ntot, with
// real input converted to its analytic counterpart (negative frequencies
// zeroed, positive doubled). Immutable; shared across frames and threads.
struct PreparedSpectrum {
  int dim = 1;
  std::array<int, 2> shape{0, 1};
  std::vector<cplx> fhat;  // DFT / Ntot, row-major, analytic for real input
};

PreparedSpectrum prepare_spectrum(const Signal& signal);

// Per-center slice engine. One instance per thread; instances share the
// spectrum read-only. Windows are normalized to unit discrete l2 norm per
// center, which keeps ||w_ab||_2 = 1 on the sample lattice and gives white
// noise coefficients variance sigma^2 exactly.
class SliceWorker {
 public:
  SliceWorker(const PreparedSpectrum& spectrum, const FrameSpec& spec);

  // Fills w (and g[0..dim-1] when want_gradient) with the center's slices.
  void compute(const FrameCenter& center, std::vector<cplx>& w,
               std::array<std::vector<cplx>, 2>* g);

 private:
  const PreparedSpectrum& spectrum_;
  FrameSpec spec_;
  Fft fft_;
  std::vector<cplx> windowed_;
  // Support bins of the current center (flat spectrum indices + frequencies).
  std::vector<std::int64_t> bins_;
  std::vector<std::array<double, 2>> bin_freqs_;
  std::vector<double> vals_;

  void gather_support(const FrameCenter& center);
};

// Full forward transform: W(a,.) = IFFT[ fhat(xi) window_a(xi) ] and
// G(a,.) = IFFT[ 2 pi i xi fhat(xi) window_a(xi) ] for every grid center.
WPCoefficients forward_transform(const Signal& signal, const FrameGrid& grid);

// ---------------------------------------------------------------------------
// Threshold masks
// ---------------------------------------------------------------------------

enum class ThresholdMode {
  kR,  // |W(a,b)| >= |a|^(-n s/2) delta
  kS,  // |W(a,b)| >= delta
};

using Mask = std::vector<std::vector<std::uint8_t>>;  // [center][flat b]

Mask threshold_mask(const WPCoefficients& coeffs, double delta, ThresholdMode mode);

// Threshold for one center under the given mode.
double threshold_value(double abs_a, int dim, double s, double delta, ThresholdMode mode);

}  // namespace synsq

#endif  // SYNSQ_WAVEPACKET_HPP
