#include "latreg/io.hpp"

#include <fstream>
#include <sstream>

namespace latreg::io {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw IoError(where + ": " + what); }

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object()) fail("document", "expected a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) fail(key, "missing field");
  return *it;
}

// Integers may be JSON integers or decimal strings; floats are rejected so
// no value passes through binary floating point.
BigInt integer_value(const Json& v, const std::string& where) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? BigInt(v.get<unsigned long>()) : BigInt(v.get<long>());
  }
  if (v.is_string()) {
    try {
      return parse_integer(v.get<std::string>());
    } catch (const ParseError& e) {
      fail(where, e.what());
    }
  }
  if (v.is_number_float()) fail(where, "floating-point literal; write the number as a string");
  fail(where, "expected an integer");
}

Rational rational_value(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(integer_value(v, where));
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      fail(where, e.what());
    }
  }
  if (v.is_number_float()) fail(where, "floating-point literal; write the number as a decimal string");
  fail(where, "expected a number string");
}

std::uint64_t u64_value(const Json& v, const std::string& where) {
  const BigInt b = integer_value(v, where);
  if (b < 0 || !b.fits_ulong_p()) fail(where, "out of range");
  return b.get_ui();
}

std::string string_value(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  fail(where, "expected a string");
}

const Json& require_array(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

template <class T, class F>
std::vector<T> parse_vector(const Json& v, const std::string& where, F element) {
  require_array(v, where);
  std::vector<T> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(element(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <class T, class F>
std::vector<std::vector<T>> parse_matrix(const Json& v, const std::string& where, F element) {
  require_array(v, where);
  std::vector<std::vector<T>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string rowName = where + "[" + std::to_string(i) + "]";
    out.push_back(parse_vector<T>(v[i], rowName, element));
    if (i > 0 && out[i].size() != out[0].size()) {
      fail(rowName, "row has " + std::to_string(out[i].size()) + " entries, expected " + std::to_string(out[0].size()));
    }
  }
  return out;
}

std::optional<std::uint64_t> optional_seed(const Json& doc) {
  if (const auto it = doc.find("seed"); it != doc.end()) return u64_value(*it, "seed");
  return std::nullopt;
}

void check_shape(std::size_t ySize, std::size_t xRows, std::size_t xCols) {
  if (ySize == 0) fail("y", "empty observation vector");
  if (xRows != ySize) fail("x", "has " + std::to_string(xRows) + " rows but y has " + std::to_string(ySize) + " entries");
  if (xCols == 0) fail("x[0]", "empty row");
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path.string() + ": invalid JSON (" + e.what() + ")");
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw IoError(path.string() + ": write failed");
}

LbrInstanceFile parse_lbr_instance(const Json& doc) {
  LbrInstanceFile f;
  f.input.y = parse_vector<Rational>(require(doc, "y"), "y", rational_value);
  f.input.x = parse_matrix<Rational>(require(doc, "x"), "x", rational_value);
  check_shape(f.input.y.size(), f.input.x.size(), f.input.x.empty() ? 0 : f.input.x[0].size());
  const std::uint64_t bits = u64_value(require(doc, "n_bits"), "n_bits");
  if (bits < 1 || bits > 1'000'000) fail("n_bits", "must lie in [1, 1000000]");
  f.input.nBits = static_cast<unsigned>(bits);
  f.input.qHat = integer_value(require(doc, "q_hat"), "q_hat");
  f.input.rHat = integer_value(require(doc, "r_hat"), "r_hat");
  if (f.input.qHat < 1) fail("q_hat", "must be >= 1");
  if (f.input.rHat < 1) fail("r_hat", "must be >= 1");
  f.input.wHat = 1;
  if (const auto it = doc.find("w_hat"); it != doc.end()) f.input.wHat = rational_value(*it, "w_hat");
  if (f.input.wHat <= 0) fail("w_hat", "must be > 0");
  f.seed = optional_seed(doc);
  return f;
}

EloInstanceFile parse_elo_instance(const Json& doc) {
  EloInstanceFile f;
  f.input.y = parse_vector<BigInt>(require(doc, "y"), "y", integer_value);
  f.input.x = parse_matrix<BigInt>(require(doc, "x"), "x", integer_value);
  check_shape(f.input.y.size(), f.input.x.size(), f.input.x.empty() ? 0 : f.input.x[0].size());
  f.input.rHat = integer_value(require(doc, "r_hat"), "r_hat");
  f.input.wHat = 1;
  if (const auto it = doc.find("w_hat"); it != doc.end()) f.input.wHat = integer_value(*it, "w_hat");
  if (f.input.rHat < 1) fail("r_hat", "must be >= 1");
  if (f.input.wHat < 1) fail("w_hat", "must be >= 1");
  f.seed = optional_seed(doc);
  return f;
}

LatticeBasis parse_basis(const Json& doc) {
  LatticeBasis b;
  b.vectors = parse_matrix<BigInt>(doc, "basis", integer_value);
  if (b.vectors.empty()) fail("basis", "empty basis");
  if (b.vectors.size() != b.vectors[0].size()) {
    fail("basis", std::to_string(b.vectors.size()) + " vectors of length " + std::to_string(b.vectors[0].size()) +
                      "; the basis must be square");
  }
  return b;
}

ProblemProfile parse_profile(const Json& doc) {
  ProblemProfile p;
  p.n = u64_value(require(doc, "n"), "n");
  p.p = u64_value(require(doc, "p"), "p");
  if (p.n == 0) fail("n", "must be positive");
  if (p.p == 0) fail("p", "must be positive");
  p.r = integer_value(require(doc, "r"), "r");
  p.q = integer_value(require(doc, "q"), "q");
  if (p.r < 1) fail("r", "must be >= 1");
  if (p.q < 1) fail("q", "must be >= 1");
  if (const auto it = doc.find("sigma"); it != doc.end()) {
    try {
      p.sigma = parse_sigma(string_value(*it, "sigma"));
    } catch (const ParseError& e) {
      fail("sigma", e.what());
    }
  }
  if (p.sigma < 0) fail("sigma", "must be non-negative");
  if (const auto it = doc.find("c"); it != doc.end()) p.c = rational_value(*it, "c");
  if (p.c <= 0) fail("c", "must be positive");
  if (const auto it = doc.find("epsilon"); it != doc.end()) p.epsilon = rational_value(*it, "epsilon");
  if (p.epsilon <= 0) fail("epsilon", "must be positive");
  if (const auto it = doc.find("C"); it != doc.end()) p.distributionConstant = rational_value(*it, "C");
  return p;
}

EloSweepSpec parse_elo_sweep(const Json& doc) {
  EloSweepSpec s;
  s.p = u64_value(require(doc, "p"), "p");
  const Json& n = require(doc, "n");
  if (n.is_array()) {
    s.nList = parse_vector<std::size_t>(n, "n", u64_value);
  } else {
    s.nList = {u64_value(n, "n")};
  }
  s.r = integer_value(require(doc, "r"), "r");
  s.alphas = parse_vector<std::string>(require(doc, "alpha"), "alpha", string_value);
  s.trials = u64_value(require(doc, "trials"), "trials");
  if (const auto it = doc.find("seed"); it != doc.end()) s.seed = u64_value(*it, "seed");
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("sweep spec: ") + e.what());
  }
  return s;
}

LbrSweepSpec parse_lbr_sweep(const Json& doc) {
  LbrSweepSpec s;
  s.p = u64_value(require(doc, "p"), "p");
  s.n = u64_value(require(doc, "n"), "n");
  s.r = integer_value(require(doc, "r"), "r");
  if (const auto it = doc.find("q"); it != doc.end()) s.q = integer_value(*it, "q");
  s.sigmas = parse_vector<std::string>(require(doc, "sigma"), "sigma", string_value);
  s.nBitsList = parse_vector<unsigned>(require(doc, "n_bits"), "n_bits", [](const Json& v, const std::string& w) {
    const auto b = u64_value(v, w);
    if (b > 1'000'000) fail(w, "too large");
    return static_cast<unsigned>(b);
  });
  s.trials = u64_value(require(doc, "trials"), "trials");
  if (const auto it = doc.find("seed"); it != doc.end()) s.seed = u64_value(*it, "seed");
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("sweep spec: ") + e.what());
  }
  return s;
}

CoprimalitySpec parse_coprimality_spec(const Json& doc) {
  CoprimalitySpec s;
  const Json& windows = require_array(require(doc, "windows"), "windows");
  if (windows.empty()) fail("windows", "empty list");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const std::string w = "windows[" + std::to_string(i) + "]";
    if (!windows[i].is_object()) fail(w, "expected an object with q1 and q2");
    CoprimalitySpec::Window win;
    win.q1 = integer_value(require(windows[i], "q1"), w + ".q1");
    win.q2 = integer_value(require(windows[i], "q2"), w + ".q2");
    if (win.q1 < 1 || win.q2 < 1) fail(w, "q1 and q2 must be >= 1");
    s.windows.push_back(win);
  }
  s.q = integer_value(require(doc, "q"), "q");
  if (s.q < 1) fail("q", "must be >= 1");
  s.samples = u64_value(require(doc, "samples"), "samples");
  if (s.samples == 0) fail("samples", "must be >= 1");
  if (const auto it = doc.find("seed"); it != doc.end()) s.seed = u64_value(*it, "seed");
  return s;
}

Json lbr_instance_to_json(const RegressionInstance& instance, unsigned nBits, const BigInt& qHat, const BigInt& rHat,
                          const Rational& wHat, std::uint64_t seed) {
  Json doc;
  doc["y"] = to_json(instance.y);
  Json x = Json::array();
  for (const auto& row : instance.x) x.push_back(to_json(row));
  doc["x"] = std::move(x);
  doc["n_bits"] = nBits;
  doc["q_hat"] = to_string(qHat);
  doc["r_hat"] = to_string(rHat);
  doc["w_hat"] = to_string(wHat);
  doc["seed"] = seed;
  doc["beta_star"] = to_json(instance.betaStar);
  return doc;
}

Json elo_instance_to_json(const EloInput& input, const RationalVector& betaStar, std::uint64_t seed) {
  Json doc;
  doc["y"] = to_json(input.y);
  Json x = Json::array();
  for (const auto& row : input.x) x.push_back(to_json(row));
  doc["x"] = std::move(x);
  doc["r_hat"] = to_string(input.rHat);
  doc["w_hat"] = to_string(input.wHat);
  doc["seed"] = seed;
  doc["beta_star"] = to_json(betaStar);
  return doc;
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const LatticeBasis& basis) {
  Json out = Json::array();
  for (const auto& v : basis.vectors) out.push_back(to_json(v));
  return out;
}

Json trace_to_json(const EloTrace& trace) {
  Json t;
  t["seed"] = trace.seed;
  t["shift"] = to_json(trace.shift);
  t["clamped_indices"] = trace.clampedIndices;
  t["m"] = to_string(trace.m);
  t["g"] = to_string(trace.g);
  t["zhat"] = to_json(trace.zhat);
  t["degenerate"] = trace.degenerate;
  t["lll_swaps"] = trace.lllSwaps;
  t["lll_size_reductions"] = trace.lllSizeReductions;
  return t;
}

Json reduction_to_json(const ReductionReport& report) {
  Json r;
  r["basis"] = to_json(report.reducedBasis);
  r["swaps"] = report.swapCount;
  r["size_reductions"] = report.sizeReductionCount;
  r["max_intermediate_bits"] = report.maxIntermediateBits;
  return r;
}

Json sweep_records_to_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json cell;
    cell["n"] = row.n;
    cell["p"] = row.p;
    cell["alpha_or_sigma"] = row.label;
    cell["N"] = row.nBits;
    cell["trials"] = row.trials;
    cell["success_rate"] = to_decimal(row.success_rate(), 6);
    Json records = Json::array();
    for (const auto& r : row.records) {
      Json j;
      j["seed"] = r.seed;
      j["success"] = r.success;
      j["degenerate"] = r.degenerate;
      j["lll_swaps"] = r.lllSwaps;
      j["wall_time_s"] = to_decimal(Rational(r.wallTime), 6);
      records.push_back(std::move(j));
    }
    cell["records"] = std::move(records);
    out.push_back(std::move(cell));
  }
  return out;
}

}  // namespace latreg::io
