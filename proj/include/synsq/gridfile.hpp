#ifndef SYNSQ_GRIDFILE_HPP
#define SYNSQ_GRIDFILE_HPP

#include <string>

#include <json.hpp>

#include "synsq/signal.hpp"
#include "synsq/statlab.hpp"
#include "synsq/synchrosqueeze.hpp"

namespace synsq {

// Grid persistence: a paired <stem>.json / <stem>.bin file set. The JSON
// sidecar holds dtype ("c128" or "f64"), shape, axis descriptors with units,
// provenance and extras; the .bin payload is raw little-endian doubles in
// row-major order (complex values interleaved re,im). Round trips are
// bit-exact. Formats are documented in FORMS.md.

inline constexpr int kGridFormatVersion = 1;

// Strips a trailing .json or .bin so both "out", "out.json" and "out.bin"
// address the same pair.
std::string grid_stem(const std::string& path);

void write_signal_grid(const std::string& stem, const Signal& signal,
                       const nlohmann::json& extras = nlohmann::json::object());
Signal read_signal_grid(const std::string& stem);

// Dense distributions only (1D or stacked 2D views).
void write_tfdist_grid(const std::string& stem, const TFDistribution& t,
                       const nlohmann::json& extras = nlohmann::json::object());
TFDistribution read_tfdist_grid(const std::string& stem);

// Raw header access (for tools that only need metadata).
nlohmann::json read_grid_header(const std::string& stem);

// CSV files for experiment tables; bytes are deterministic per table.
void write_table_csv(const std::string& path, const ExperimentTable& table);

}  // namespace synsq

#endif  // SYNSQ_GRIDFILE_HPP
