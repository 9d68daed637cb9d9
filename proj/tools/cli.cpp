#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "latreg/io.hpp"
#include "latreg/numtheory.hpp"

namespace latreg::cli {
namespace {

using io::Json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kDegenerate = 2;

struct Options {
  std::string input;
  std::string output;
  std::optional<std::uint64_t> seed;
  unsigned retry = 0;
  bool verbose = false;
  std::string delta = "3/4";
  std::string model = "adversarial";
  std::string format = "json";
  std::optional<unsigned> nBits;
  std::string spec;
  bool timing = false;
  std::size_t genN = 0;
  std::size_t genP = 0;
  std::string genR = "100";
  std::string genQ = "1";
  std::string genSigma = "0";
  std::uint64_t genSeed = 0;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

bool all_zero(const RationalVector& y) {
  for (const auto& v : y) {
    if (v != 0) return false;
  }
  return true;
}

bool all_zero(const IntVector& y) {
  for (const auto& v : y) {
    if (v != 0) return false;
  }
  return true;
}

Json trace_json(const EloTrace& trace, bool verbose) {
  Json t = io::trace_to_json(trace);
  if (!verbose) {
    t.erase("shift");
    t.erase("clamped_indices");
    t.erase("zhat");
  }
  return t;
}

// Attempt 0 runs with the base seed; retry k with a seed derived from it.
std::uint64_t attempt_seed(std::uint64_t base, unsigned attempt) {
  return attempt == 0 ? base : derive_seed(base, 0x7265747279ULL, attempt);
}

template <class Result, class Recover>
int recover_loop(const Options& opt, std::uint64_t base, bool zeroY, Recover recover, Json& doc, Result& result) {
  unsigned attempt = 0;
  for (;; ++attempt) {
    result = recover(attempt_seed(base, attempt));
    if (!result.trace.degenerate || attempt >= opt.retry) break;
  }
  const bool degenerate = result.trace.degenerate;
  doc["status"] = degenerate ? "degenerate" : "ok";
  doc["base_seed"] = base;
  doc["seed"] = result.trace.seed;
  doc["attempts"] = attempt + 1;
  return degenerate && !zeroY ? kDegenerate : kOk;
}

int cmd_recover(const Options& opt, std::ostream& out) {
  const auto file = io::parse_lbr_instance(io::read_json_file(opt.input));
  try {
    validate(file.input);
  } catch (const std::invalid_argument& e) {
    throw io::IoError(opt.input + ": " + e.what());
  }
  const std::uint64_t base = opt.seed.value_or(file.seed.value_or(0));
  Json doc;
  LbrResult result;
  const int status = recover_loop(
      opt, base, all_zero(file.input.y), [&](std::uint64_t s) { return lbr_recover(file.input, s); }, doc, result);
  doc["beta_hat"] = io::to_json(result.betaHat);
  doc["n_bits"] = file.input.nBits;
  doc["trace"] = trace_json(result.trace, opt.verbose);
  emit(opt.output, doc.dump(2) + "\n", out);
  return status;
}

int cmd_elo(const Options& opt, std::ostream& out) {
  const auto file = io::parse_elo_instance(io::read_json_file(opt.input));
  try {
    validate(file.input);
  } catch (const std::invalid_argument& e) {
    throw io::IoError(opt.input + ": " + e.what());
  }
  const std::uint64_t base = opt.seed.value_or(file.seed.value_or(0));
  Json doc;
  EloResult result;
  const int status = recover_loop(
      opt, base, all_zero(file.input.y), [&](std::uint64_t s) { return elo_recover(file.input, s); }, doc, result);
  doc["beta_hat"] = io::to_json(result.betaHat);
  doc["trace"] = trace_json(result.trace, opt.verbose);
  emit(opt.output, doc.dump(2) + "\n", out);
  return status;
}

int cmd_lll(const Options& opt, std::ostream& out) {
  Json doc = io::read_json_file(opt.input);
  if (doc.is_object() && doc.contains("basis")) doc = doc["basis"];
  const LatticeBasis basis = io::parse_basis(doc);
  Rational delta;
  try {
    delta = parse_rational(opt.delta);
  } catch (const ParseError& e) {
    throw io::IoError(std::string("--delta: ") + e.what());
  }
  ReductionReport report;
  try {
    report = lll_reduce(basis, delta);
  } catch (const std::invalid_argument& e) {
    throw io::IoError(e.what());
  } catch (const std::domain_error& e) {
    throw io::IoError(opt.input + ": " + e.what());
  }
  Json result;
  result["delta"] = to_string(delta);
  const Json reduced = io::reduction_to_json(report);
  for (auto it = reduced.begin(); it != reduced.end(); ++it) result[it.key()] = it.value();
  emit(opt.output, result.dump(2) + "\n", out);
  return kOk;
}

BigInt profile_int(const Json& doc, const char* key, const BigInt& fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (it->is_number_integer()) return BigInt(it->dump());
  if (it->is_string()) {
    try {
      return parse_integer(it->get<std::string>());
    } catch (const ParseError& e) {
      throw io::IoError(std::string(key) + ": " + e.what());
    }
  }
  throw io::IoError(std::string(key) + ": expected an integer");
}

std::string dec(const Rational& x) { return to_decimal(x, 6); }

int cmd_bounds(const Options& opt, std::ostream& out) {
  const Json doc = io::read_json_file(opt.input);
  const ProblemProfile profile = io::parse_profile(doc);
  const BigInt qHat = profile_int(doc, "q_hat", profile.q);
  const BigInt rHat = profile_int(doc, "r_hat", profile.r);
  const BigInt wInf = profile_int(doc, "w_inf", 1);
  const NoiseModel model = opt.model == "iid" ? NoiseModel::Iid : NoiseModel::Adversarial;

  const BoundReport window = cor2_window(profile);
  const Rational eloRhs = elo_condition_rhs(profile.n, profile.p, rHat, wInf, profile.c);
  const PhaseBoundary boundary = phase_boundary_sigma0(profile.n, profile.p, profile.r, profile.q);
  std::optional<PhaseThresholds> thresholds;
  if (profile.epsilon < 1) thresholds = phase_thresholds(profile.n, profile.p, profile.r, profile.q, profile.epsilon);
  const Rational ceiling = info_theoretic_sigma_ceiling(profile.n, profile.p, profile.q, profile.r);

  std::vector<std::pair<std::string, Json>> rows;
  auto add = [&](const std::string& label, const Json& value) { rows.emplace_back(label, value); };
  add("model", opt.model);
  add("cor2_required_N", dec(window.requiredN));
  add("cor2_minimum_integer_N", to_string(window.minimumIntegerN));
  add("cor2_log2_sigma_ceiling", dec(window.sigmaCeilingLog2));
  if (window.maxN) add("cor2_max_N_log2", dec(*window.maxN));
  if (window.maxNNatural) add("cor2_max_N_ln", dec(*window.maxNNatural));
  add("cor2_satisfiable", window.satisfiable);
  add("cor2_p_threshold", dec(window.pThreshold));
  add("cor2_p_threshold_met", window.pThresholdMet);
  for (const auto& term : window.detail) add("cor2_term " + term.label, dec(term.value));
  add("elo_condition_rhs", dec(eloRhs));
  add("phase_log2_sigma0", dec(boundary.log2Sigma0));
  add("phase_degenerate", boundary.degenerate);
  if (thresholds) {
    add("phase_log2_recoverable_below", dec(thresholds->log2RecoverableBelow));
    add("phase_log2_impossible_above", dec(thresholds->log2ImpossibleAbove));
  }
  add("info_theoretic_sigma_ceiling", dec(ceiling));
  if (opt.nBits) {
    const Rational rhs = lbr_condition_rhs(*opt.nBits, profile, qHat, rHat, model);
    add("lbr_N", *opt.nBits);
    add("lbr_condition_rhs", dec(rhs));
    add("lbr_condition_holds", Rational(*opt.nBits) > rhs);
  }

  std::ostringstream text;
  if (opt.format == "table") {
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    for (const auto& [label, value] : rows) {
      text << label << std::string(width - label.size() + 2, ' ')
           << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  } else {
    Json j = Json::object();
    for (const auto& [label, value] : rows) j[label] = value;
    text << j.dump(2) << "\n";
  }
  emit(opt.output, text.str(), out);
  return kOk;
}

void write_sweep(const Options& opt, const std::vector<SweepRow>& rows) {
  std::ostringstream csv;
  write_sweep_csv(csv, rows, opt.timing);
  io::write_text_file(opt.output, csv.str());
  if (opt.verbose) {
    Json records = io::sweep_records_to_json(rows);
    if (!opt.timing) {
      for (auto& cell : records) {
        for (auto& r : cell["records"]) r.erase("wall_time_s");
      }
    }
    io::write_text_file(opt.output + ".json", records.dump(2) + "\n");
  }
}

int cmd_experiment_elo(const Options& opt) {
  const EloSweepSpec spec = io::parse_elo_sweep(io::read_json_file(opt.spec));
  write_sweep(opt, run_elo_sweep(spec, default_workers()));
  return kOk;
}

int cmd_experiment_lbr(const Options& opt) {
  const LbrSweepSpec spec = io::parse_lbr_sweep(io::read_json_file(opt.spec));
  write_sweep(opt, run_lbr_sweep(spec, default_workers()));
  return kOk;
}

int cmd_experiment_coprimality(const Options& opt) {
  const io::CoprimalitySpec spec = io::parse_coprimality_spec(io::read_json_file(opt.spec));
  std::ostringstream csv;
  csv << "q1,q2,q,samples,coprime,estimate,std_error,limit\n";
  for (std::size_t i = 0; i < spec.windows.size(); ++i) {
    const auto& w = spec.windows[i];
    const DensityEstimate d =
        coprimality_density(w.q1, w.q2, spec.q, spec.samples, derive_seed(spec.seed, i), default_workers());
    char se[32];
    std::snprintf(se, sizeof se, "%.6f", d.standardError);
    csv << to_string(w.q1) << ',' << to_string(w.q2) << ',' << to_string(spec.q) << ',' << d.samples << ','
        << d.coprime << ',' << to_decimal(d.estimate, 6) << ',' << se << ",0.607927\n";
  }
  io::write_text_file(opt.output, csv.str());
  return kOk;
}

// Recovery must not reuse the generator's stream: a shift drawn from the same
// sequence as beta* is correlated with it.
std::uint64_t recovery_seed(std::uint64_t generatorSeed) { return derive_seed(generatorSeed, 1); }

int cmd_generate_lbr(const Options& opt, std::ostream& out) {
  const BigInt r = parse_integer(opt.genR);
  const BigInt q = parse_integer(opt.genQ);
  const Rational sigma = parse_sigma(opt.genSigma);
  if (r < 1 || q < 1) throw io::IoError("--r and --q must be >= 1");
  if (sigma < 0) throw io::IoError("--sigma must be non-negative");
  const unsigned nBits = opt.nBits.value_or(0);
  if (nBits == 0) throw io::IoError("--n-bits must be >= 1");
  const RegressionInstance inst = gen_lbr_instance(opt.genN, opt.genP, r, sigma, opt.genSeed, q);
  const Rational wHat = sigma > 0 ? sigma : make_rational(1, pow2(nBits));
  emit(opt.output, io::lbr_instance_to_json(inst, nBits, q, r, wHat, recovery_seed(opt.genSeed)).dump(2) + "\n", out);
  return kOk;
}

int cmd_generate_elo(const Options& opt, std::ostream& out) {
  const BigInt r = parse_integer(opt.genR);
  if (r < 1) throw io::IoError("--r must be >= 1");
  const unsigned nBits = opt.nBits.value_or(0);
  if (nBits == 0) throw io::IoError("--n-bits must be >= 1");
  const RegressionInstance inst = gen_elo_instance(opt.genN, opt.genP, r, nBits, opt.genSeed);
  emit(opt.output, io::elo_instance_to_json(inst.to_elo_input(r, 1), inst.betaStar, recovery_seed(opt.genSeed)).dump(2) + "\n", out);
  return kOk;
}

void add_generate(CLI::App* parent, const std::string& name, const std::string& about, Options& opt, bool real) {
  CLI::App* app = parent->add_subcommand(name, about);
  app->add_option("--n", opt.genN, "Number of samples")->required()->check(CLI::PositiveNumber);
  app->add_option("--p", opt.genP, "Number of features")->required()->check(CLI::PositiveNumber);
  app->add_option("--r", opt.genR, "Coefficient bound R")->default_val("100");
  if (real) {
    app->add_option("--q", opt.genQ, "Coefficient denominator Q")->default_val("1");
    app->add_option("--sigma", opt.genSigma, "Noise level: a rational or exp(x)")->default_val("0");
    app->add_option("--n-bits", opt.nBits, "Truncation level N written into the file")->required();
  } else {
    app->add_option("--n-bits", opt.nBits, "Feature bit size")->required();
  }
  app->add_option("--seed", opt.genSeed, "Generator seed; the file gets a recovery seed derived from it")->default_val(0);
  app->add_option("--output", opt.output, "Instance JSON path, - for stdout")->required();
}

void add_seed(CLI::App* app, Options& opt) {
  app->add_option("--seed", opt.seed, "Base seed; overrides the seed in the input file (default 0)");
  app->add_option("--retry", opt.retry, "Re-run a degenerate recovery up to K times with derived seeds")
      ->default_val(0);
  app->add_flag("--verbose", opt.verbose, "Include the shift, clamped indices and reduced vector in the trace");
}

void add_experiment(CLI::App* parent, const std::string& name, const std::string& about, Options& opt) {
  CLI::App* app = parent->add_subcommand(name, about);
  app->add_option("--spec", opt.spec, "Sweep spec JSON")->required();
  app->add_option("--output", opt.output, "CSV output path")->required();
  app->add_flag("--verbose", opt.verbose, "Also write per-trial records to <output>.json");
  app->add_flag("--timing", opt.timing, "Fill the mean_time_s column (output is then not reproducible)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact lattice-based recovery for sparse-coefficient linear regression", "latreg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "latreg 0.1.0");

  CLI::App* recover = app.add_subcommand("recover", "Recover rational coefficients from a real-valued instance");
  recover->add_option("--input", opt.input, "Instance JSON (y, x, n_bits, q_hat, r_hat, w_hat, seed)")->required();
  recover->add_option("--output", opt.output, "Result JSON path, - for stdout")->required();
  add_seed(recover, opt);

  CLI::App* elo = app.add_subcommand("elo", "Recover integer coefficients from an integer instance");
  elo->add_option("--input", opt.input, "Instance JSON (y, x, r_hat, w_hat, seed)")->required();
  elo->add_option("--output", opt.output, "Result JSON path, - for stdout")->required();
  add_seed(elo, opt);

  CLI::App* lll = app.add_subcommand("lll-reduce", "LLL-reduce a full-rank integer basis");
  lll->add_option("--input", opt.input, "Basis JSON: array of vectors of integer strings")->required();
  lll->add_option("--delta", opt.delta, "Lovasz parameter a/b in (1/4, 1)")->default_val("3/4");
  lll->add_option("--output", opt.output, "Result JSON path (default stdout)");

  CLI::App* bounds = app.add_subcommand("bounds", "Report sample-size and noise bounds for a problem profile");
  bounds->add_option("--profile", opt.input, "Profile JSON (n, p, r, q, sigma, c, epsilon, q_hat, r_hat, w_inf)")
      ->required();
  bounds->add_option("--model", opt.model, "Noise model")
      ->check(CLI::IsMember({"adversarial", "iid"}))
      ->default_val("adversarial");
  bounds->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "table"}))->default_val("json");
  bounds->add_option("--n-bits", opt.nBits, "Also evaluate the truncation condition at this N");
  bounds->add_option("--output", opt.output, "Output path (default stdout)");

  CLI::App* experiment = app.add_subcommand("experiment", "Run a seeded sweep and write a CSV");
  experiment->require_subcommand(1);
  experiment->footer("Worker threads: LATREG_WORKERS (default: all hardware threads). Results do not depend on it.");
  add_experiment(experiment, "elo", "Integer recovery success rate over (n, alpha)", opt);
  add_experiment(experiment, "lbr", "Real-valued recovery success rate over (sigma, N)", opt);
  add_experiment(experiment, "coprimality", "Monte-Carlo density of coprime pairs", opt);

  CLI::App* generate = app.add_subcommand("generate", "Write a planted instance file");
  generate->require_subcommand(1);
  add_generate(generate, "lbr", "Real-valued instance for recover", opt, true);
  add_generate(generate, "elo", "Integer instance for elo", opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*recover) return cmd_recover(opt, out);
    if (*elo) return cmd_elo(opt, out);
    if (*lll) return cmd_lll(opt, out);
    if (*bounds) return cmd_bounds(opt, out);
    if (experiment->got_subcommand("elo")) return cmd_experiment_elo(opt);
    if (experiment->got_subcommand("lbr")) return cmd_experiment_lbr(opt);
    if (experiment->got_subcommand("coprimality")) return cmd_experiment_coprimality(opt);
    if (generate->got_subcommand("lbr")) return cmd_generate_lbr(opt, out);
    if (generate->got_subcommand("elo")) return cmd_generate_elo(opt, out);
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace latreg::cli
