#include "synsq/gridfile.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "synsq/errors.hpp"
#include "synsq/version.hpp"

static_assert(std::endian::native == std::endian::little,
              "grid files are little-endian; big-endian hosts are unsupported");

namespace synsq {

namespace {

using nlohmann::json;

void write_file(const std::string& path, const void* data, std::size_t bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open for writing: " + path);
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
  if (!out) throw InputError("write failed: " + path);
}

std::vector<char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw InputError("cannot open: " + path);
  const std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<char> buf(static_cast<std::size_t>(size));
  in.read(buf.data(), size);
  if (!in) throw InputError("read failed: " + path);
  return buf;
}

json provenance_json(const Provenance& p) {
  json jp;
  jp["generator"] = p.generator;
  json params = json::object();
  for (const auto& [k, v] : p.params) params[k] = v;
  jp["params"] = params;
  if (p.seed) jp["seed"] = *p.seed;
  jp["tool"] = kVersionTag;
  return jp;
}

Provenance provenance_from_json(const json& jp) {
  Provenance p;
  p.generator = jp.value("generator", "");
  if (jp.contains("params"))
    for (auto it = jp["params"].begin(); it != jp["params"].end(); ++it)
      p.params.emplace_back(it.key(), it.value().get<double>());
  if (jp.contains("seed")) p.seed = jp["seed"].get<std::uint64_t>();
  return p;
}

void write_pair(const std::string& stem, const json& header, const void* payload, std::size_t bytes) {
  const std::string text = header.dump(2) + "\n";
  write_file(stem + ".json", text.data(), text.size());
  write_file(stem + ".bin", payload, bytes);
}

json load_header(const std::string& stem) {
  const std::vector<char> buf = read_file(stem + ".json");
  json header;
  try {
    header = json::parse(buf.begin(), buf.end());
  } catch (const json::parse_error& e) {
    throw InputError("bad grid header " + stem + ".json: " + e.what());
  }
  if (header.value("format", "") != "synsq-grid")
    throw InputError("not a synsq grid file: " + stem + ".json");
  return header;
}

std::vector<char> load_payload(const std::string& stem, const json& header) {
  std::vector<char> payload = read_file(stem + ".bin");
  std::int64_t count = 1;
  for (const auto& d : header.at("shape")) count *= d.get<std::int64_t>();
  const std::size_t expect =
      static_cast<std::size_t>(count) * (header.at("dtype") == "c128" ? 16 : 8);
  if (payload.size() != expect)
    throw InputError("payload size mismatch for " + stem + ".bin (header says " +
                     std::to_string(expect) + " bytes, file has " +
                     std::to_string(payload.size()) + ")");
  return payload;
}

}  // namespace

std::string grid_stem(const std::string& path) {
  for (const char* ext : {".json", ".bin"}) {
    const std::size_t n = std::strlen(ext);
    if (path.size() > n && path.compare(path.size() - n, n, ext) == 0)
      return path.substr(0, path.size() - n);
  }
  return path;
}

nlohmann::json read_grid_header(const std::string& stem) { return load_header(stem); }

// ---------------------------------------------------------------------------
// Signals
// ---------------------------------------------------------------------------

void write_signal_grid(const std::string& stem, const Signal& signal, const json& extras) {
  signal.validate();
  json header;
  header["format"] = "synsq-grid";
  header["format_version"] = kGridFormatVersion;
  header["kind"] = "signal";
  header["dtype"] = signal.is_real ? "f64" : "c128";
  header["shape"] = signal.dim == 1 ? json::array({signal.shape[0]})
                                    : json::array({signal.shape[0], signal.shape[1]});
  json axes = json::array();
  for (int axis = 0; axis < signal.dim; ++axis)
    axes.push_back({{"name", axis == 0 ? "x1" : "x2"},
                    {"unit", "s"},
                    {"start", 0.0},
                    {"step", 1.0 / signal.sample_rate[axis]}});
  header["axes"] = axes;
  header["sample_rate"] = signal.dim == 1
                              ? json::array({signal.sample_rate[0]})
                              : json::array({signal.sample_rate[0], signal.sample_rate[1]});
  header["provenance"] = provenance_json(signal.provenance);
  if (!extras.empty()) header["extras"] = extras;

  if (signal.is_real) {
    std::vector<double> buf(signal.samples.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = signal.samples[i].real();
    write_pair(stem, header, buf.data(), buf.size() * sizeof(double));
  } else {
    write_pair(stem, header, signal.samples.data(), signal.samples.size() * sizeof(cplx));
  }
}

Signal read_signal_grid(const std::string& stem) {
  const json header = load_header(stem);
  if (header.value("kind", "") != "signal")
    throw InputError(stem + " is not a signal grid (kind=" + header.value("kind", "?") + ")");
  const std::vector<char> payload = load_payload(stem, header);

  Signal s;
  const auto& shape = header.at("shape");
  s.dim = static_cast<int>(shape.size());
  s.shape = {shape[0].get<int>(), s.dim == 2 ? shape[1].get<int>() : 1};
  const auto& rates = header.at("sample_rate");
  s.sample_rate = {rates[0].get<double>(), s.dim == 2 ? rates[1].get<double>() : 1.0};
  s.is_real = header.at("dtype") == "f64";
  const std::size_t count = static_cast<std::size_t>(s.total_samples());
  s.samples.resize(count);
  if (s.is_real) {
    const double* src = reinterpret_cast<const double*>(payload.data());
    for (std::size_t i = 0; i < count; ++i) s.samples[i] = cplx{src[i], 0.0};
  } else {
    std::memcpy(s.samples.data(), payload.data(), payload.size());
  }
  if (header.contains("provenance")) s.provenance = provenance_from_json(header["provenance"]);
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

void write_tfdist_grid(const std::string& stem, const TFDistribution& t, const json& extras) {
  if (t.v_dim != 1)
    throw ParameterError("grid file: only dense (1D or stacked) distributions are persisted");
  json header;
  header["format"] = "synsq-grid";
  header["format_version"] = kGridFormatVersion;
  header["kind"] = "tfdist";
  header["dtype"] = "f64";
  header["shape"] = json::array({t.v_axes[0].bins(), t.b_total()});
  header["axes"] = json::array(
      {{{"name", "v"}, {"unit", "Hz"}, {"start", t.v_axes[0].lo}, {"step", t.v_axes[0].step}},
       {{"name", "x1"}, {"unit", "s"}, {"start", 0.0}, {"step", 1.0 / t.meta.signal_shape[0]}}});

  json meta;
  meta["s"] = t.meta.s;
  meta["red"] = t.meta.red;
  meta["mode"] = t.meta.mode == SqueezeMode::kFull ? "full" : "selective-max";
  meta["threshold_mode"] = t.meta.threshold_mode == ThresholdMode::kR ? "R" : "S";
  meta["delta"] = t.meta.delta;
  meta["input_scale"] = t.meta.input_scale;
  meta["reassigned_energy"] = t.meta.reassigned_energy;
  meta["masked"] = t.meta.masked;
  meta["dropped"] = t.meta.dropped;
  meta["signal_shape"] = json::array({t.meta.signal_shape[0], t.meta.signal_shape[1]});
  if (t.meta.seed) meta["seed"] = *t.meta.seed;
  if (t.meta.stacked_x2) meta["stacked_x2"] = *t.meta.stacked_x2;
  header["meta"] = meta;
  if (!extras.empty()) header["extras"] = extras;

  write_pair(stem, header, t.dense.data(), t.dense.size() * sizeof(double));
}

TFDistribution read_tfdist_grid(const std::string& stem) {
  const json header = load_header(stem);
  if (header.value("kind", "") != "tfdist")
    throw InputError(stem + " is not a distribution grid (kind=" + header.value("kind", "?") + ")");
  const std::vector<char> payload = load_payload(stem, header);

  TFDistribution t;
  t.v_dim = 1;
  const auto& axes = header.at("axes");
  const int nv = header.at("shape")[0].get<int>();
  const std::int64_t nb = header.at("shape")[1].get<std::int64_t>();
  t.v_axes[0].lo = axes[0].at("start").get<double>();
  t.v_axes[0].step = axes[0].at("step").get<double>();
  t.v_axes[0].hi = t.v_axes[0].lo + (nv - 1) * t.v_axes[0].step;
  t.b_shape = {static_cast<int>(nb), 1};
  t.dense.resize(static_cast<std::size_t>(nv) * static_cast<std::size_t>(nb));
  std::memcpy(t.dense.data(), payload.data(), payload.size());

  if (header.contains("meta")) {
    const json& meta = header["meta"];
    t.meta.s = meta.value("s", 0.0);
    t.meta.red = meta.value("red", 1);
    t.meta.mode = meta.value("mode", "full") == std::string("selective-max")
                      ? SqueezeMode::kSelectiveMax
                      : SqueezeMode::kFull;
    t.meta.threshold_mode =
        meta.value("threshold_mode", "R") == std::string("S") ? ThresholdMode::kS : ThresholdMode::kR;
    t.meta.delta = meta.value("delta", 1e-2);
    t.meta.input_scale = meta.value("input_scale", 1.0);
    t.meta.reassigned_energy = meta.value("reassigned_energy", 0.0);
    t.meta.masked = meta.value("masked", static_cast<std::int64_t>(0));
    t.meta.dropped = meta.value("dropped", static_cast<std::int64_t>(0));
    if (meta.contains("signal_shape"))
      t.meta.signal_shape = {meta["signal_shape"][0].get<int>(), meta["signal_shape"][1].get<int>()};
    if (meta.contains("seed")) t.meta.seed = meta["seed"].get<std::uint64_t>();
    if (meta.contains("stacked_x2")) t.meta.stacked_x2 = meta["stacked_x2"].get<int>();
  }
  return t;
}

void write_table_csv(const std::string& path, const ExperimentTable& table) {
  const std::string text = table_to_csv(table);
  write_file(path, text.data(), text.size());
}

}  // namespace synsq
