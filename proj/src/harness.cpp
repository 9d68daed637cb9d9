#include "latreg/harness.hpp"

#include <mpfr.h>

#include <atomic>
#include <chrono>
#include <mutex>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "latreg/random.hpp"

namespace latreg {
namespace {

RationalVector mat_vec(const RationalMatrix& x, const RationalVector& beta) {
  RationalVector out(x.size(), Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < beta.size(); ++j) {
      if (sgn(beta[j]) != 0) out[i] += x[i][j] * beta[j];
    }
  }
  return out;
}

BigInt as_integer(const Rational& v) {
  if (v.get_den() != 1) throw InputError("instance entry " + to_string(v) + " is not an integer");
  return v.get_num();
}

Rational exp_dyadic(const Rational& x) {
  mpfr_t v;
  mpfr_init2(v, kContinuousBits);
  mpfr_set_q(v, x.get_mpq_t(), MPFR_RNDN);
  mpfr_exp(v, v, MPFR_RNDN);
  BigInt mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
  mpfr_clear(v);
  if (e >= 0) return Rational(mant * pow2(static_cast<unsigned long>(e)));
  return make_rational(mant, pow2(static_cast<unsigned long>(-e)));
}

// Runs fn(task) for task in [0, count) on `workers` threads.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failureLock;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failureLock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void summarize(SweepRow& row) {
  row.successes = 0;
  double total = 0;
  for (const auto& r : row.records) {
    row.successes += r.success ? 1 : 0;
    total += r.wallTime;
  }
  row.meanTime = row.records.empty() ? 0 : total / static_cast<double>(row.records.size());
}

}  // namespace

EloInput RegressionInstance::to_elo_input(const BigInt& rHat, const BigInt& wHat) const {
  EloInput in;
  for (const auto& v : y) in.y.push_back(as_integer(v));
  for (const auto& row : x) {
    IntVector r;
    for (const auto& v : row) r.push_back(as_integer(v));
    in.x.push_back(std::move(r));
  }
  in.rHat = rHat;
  in.wHat = wHat;
  return in;
}

LbrInput RegressionInstance::to_lbr_input(unsigned nBits, const BigInt& qHat, const BigInt& rHat,
                                          const Rational& wHat) const {
  LbrInput in;
  in.y = y;
  in.x = x;
  in.nBits = nBits;
  in.qHat = qHat;
  in.rHat = rHat;
  in.wHat = wHat;
  return in;
}

RegressionInstance gen_elo_instance(std::size_t n, std::size_t p, const BigInt& r, unsigned nBits, std::uint64_t seed) {
  if (n == 0 || p == 0 || r < 1 || nBits == 0) throw std::invalid_argument("gen_elo_instance: parameters must be positive");
  Rng rng(seed);
  RegressionInstance inst;
  inst.params = GenerationParams{n, p, r, 1, 0, nBits, "uniform{1..2^N}", "uniform{1..R}", seed};
  inst.betaStar.resize(p);
  for (auto& b : inst.betaStar) b = Rational(rng.uniform_int(1, r));
  const BigInt top = pow2(nBits);
  inst.x.assign(n, RationalVector(p));
  for (auto& row : inst.x) {
    for (auto& v : row) v = Rational(rng.uniform_int(1, top));
  }
  inst.w.assign(n, Rational(0));
  inst.y = mat_vec(inst.x, inst.betaStar);
  return inst;
}

RegressionInstance gen_lbr_instance(std::size_t n, std::size_t p, const BigInt& r, const Rational& sigma,
                                    std::uint64_t seed, const BigInt& q) {
  if (n == 0 || p == 0 || r < 1 || q < 1) throw std::invalid_argument("gen_lbr_instance: parameters must be positive");
  if (sigma < 0) throw std::invalid_argument("gen_lbr_instance: sigma must be non-negative");
  Rng rng(seed);
  RegressionInstance inst;
  inst.params = GenerationParams{n, p, r, q, sigma, 0, "U(0,1)", "0 w.p. 1/2, else uniform{1..RQ}/Q", seed};
  inst.betaStar.resize(p);
  for (auto& b : inst.betaStar) {
    const bool zero = rng.coin();
    const BigInt k = rng.uniform_int(1, r * q);
    b = zero ? Rational(0) : make_rational(k, q);
  }
  inst.x.assign(n, RationalVector(p));
  for (auto& row : inst.x) {
    for (auto& v : row) v = rng.open_unit_dyadic(kContinuousBits);
  }
  inst.w.assign(n, Rational(0));
  if (sigma > 0) {
    for (auto& v : inst.w) v = sigma * (2 * rng.open_unit_dyadic(kContinuousBits) - 1);
  }
  inst.y = mat_vec(inst.x, inst.betaStar);
  for (std::size_t i = 0; i < n; ++i) inst.y[i] += inst.w[i];
  return inst;
}

unsigned elo_bits_for_alpha(std::size_t p, std::size_t n, const Rational& alpha) {
  if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
  const Rational bits = Rational(static_cast<unsigned long>(p * p)) / (2 * alpha * static_cast<unsigned long>(n));
  const BigInt c = ceil(bits);
  if (!c.fits_uint_p()) throw std::invalid_argument("alpha too small: bit size overflows");
  return static_cast<unsigned>(c.get_ui());
}

Rational parse_sigma(const std::string& text) {
  std::string_view t(text);
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  if (t.starts_with("exp(") && t.ends_with(")")) {
    return exp_dyadic(parse_rational(t.substr(4, t.size() - 5)));
  }
  return parse_rational(t);
}

Rational SweepRow::success_rate() const {
  if (trials == 0) return 0;
  return make_rational(BigInt(static_cast<unsigned long>(successes)), BigInt(static_cast<unsigned long>(trials)));
}

unsigned default_workers() {
  if (const char* env = std::getenv("LATREG_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void validate(const EloSweepSpec& spec) {
  if (spec.p == 0) throw InputError("elo sweep: p must be positive");
  if (spec.nList.empty()) throw InputError("elo sweep: n list is empty");
  if (spec.alphas.empty()) throw InputError("elo sweep: alpha list is empty");
  if (spec.trials == 0) throw InputError("elo sweep: trials must be >= 1");
  if (spec.r < 1) throw InputError("elo sweep: R must be >= 1");
  for (auto n : spec.nList) {
    if (n == 0) throw InputError("elo sweep: n values must be positive");
  }
  for (const auto& a : spec.alphas) {
    if (parse_rational(a) <= 0) throw InputError("elo sweep: alpha must be positive: " + a);
  }
}

void validate(const LbrSweepSpec& spec) {
  if (spec.p == 0 || spec.n == 0) throw InputError("lbr sweep: n and p must be positive");
  if (spec.sigmas.empty()) throw InputError("lbr sweep: sigma list is empty");
  if (spec.nBitsList.empty()) throw InputError("lbr sweep: N list is empty");
  if (spec.trials == 0) throw InputError("lbr sweep: trials must be >= 1");
  if (spec.r < 1 || spec.q < 1) throw InputError("lbr sweep: R and Q must be >= 1");
  for (const auto& s : spec.sigmas) {
    if (parse_sigma(s) < 0) throw InputError("lbr sweep: sigma must be non-negative: " + s);
  }
  for (auto b : spec.nBitsList) {
    if (b == 0) throw InputError("lbr sweep: N values must be positive");
  }
}

std::vector<SweepRow> run_elo_sweep(const EloSweepSpec& spec, unsigned workers) {
  validate(spec);
  std::vector<SweepRow> rows;
  for (auto n : spec.nList) {
    for (const auto& a : spec.alphas) {
      SweepRow row;
      row.n = n;
      row.p = spec.p;
      row.label = a;
      row.nBits = elo_bits_for_alpha(spec.p, n, parse_rational(a));
      row.trials = spec.trials;
      row.records.resize(spec.trials);
      rows.push_back(std::move(row));
    }
  }
  const std::size_t tasks = rows.size() * spec.trials;
  parallel_for(tasks, workers, [&](std::size_t task) {
    const std::size_t cell = task / spec.trials;
    const std::size_t trial = task % spec.trials;
    SweepRow& row = rows[cell];
    const std::uint64_t trialSeed = derive_seed(spec.seed, cell, trial);
    const auto inst = gen_elo_instance(row.n, row.p, spec.r, row.nBits, derive_seed(trialSeed, 0));
    const EloInput input = inst.to_elo_input(spec.r, 1);
    const auto start = std::chrono::steady_clock::now();
    const EloResult res = elo_recover(input, derive_seed(trialSeed, 1));
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    TrialRecord& rec = row.records[trial];
    rec.seed = trialSeed;
    rec.degenerate = res.trace.degenerate;
    rec.lllSwaps = res.trace.lllSwaps;
    rec.wallTime = elapsed.count();
    bool equal = true;
    for (std::size_t j = 0; j < row.p; ++j) equal = equal && Rational(res.betaHat[j]) == inst.betaStar[j];
    rec.success = equal && !rec.degenerate;
  });
  for (auto& row : rows) summarize(row);
  return rows;
}

std::vector<SweepRow> run_lbr_sweep(const LbrSweepSpec& spec, unsigned workers) {
  validate(spec);
  std::vector<SweepRow> rows;
  std::vector<Rational> sigmaOf;
  for (const auto& s : spec.sigmas) {
    for (auto bits : spec.nBitsList) {
      SweepRow row;
      row.n = spec.n;
      row.p = spec.p;
      row.label = s;
      row.nBits = bits;
      row.trials = spec.trials;
      row.records.resize(spec.trials);
      rows.push_back(std::move(row));
      sigmaOf.push_back(parse_sigma(s));
    }
  }
  const std::size_t tasks = rows.size() * spec.trials;
  parallel_for(tasks, workers, [&](std::size_t task) {
    const std::size_t cell = task / spec.trials;
    const std::size_t trial = task % spec.trials;
    SweepRow& row = rows[cell];
    const Rational& sigma = sigmaOf[cell];
    const std::uint64_t trialSeed = derive_seed(spec.seed, cell, trial);
    const auto inst = gen_lbr_instance(row.n, row.p, spec.r, sigma, derive_seed(trialSeed, 0), spec.q);
    const Rational wHat = sigma > 0 ? sigma : make_rational(1, pow2(row.nBits));
    const LbrInput input = inst.to_lbr_input(row.nBits, spec.q, spec.r, wHat);
    const auto start = std::chrono::steady_clock::now();
    const LbrResult res = lbr_recover(input, derive_seed(trialSeed, 1));
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    TrialRecord& rec = row.records[trial];
    rec.seed = trialSeed;
    rec.degenerate = res.trace.degenerate;
    rec.lllSwaps = res.trace.lllSwaps;
    rec.wallTime = elapsed.count();
    rec.success = !rec.degenerate && res.betaHat == inst.betaStar;
  });
  for (auto& row : rows) summarize(row);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool timing) {
  out << "n,p,alpha_or_sigma,N,trials,success_rate,mean_time_s\n";
  for (const auto& row : rows) {
    out << row.n << ',' << row.p << ',' << row.label << ',' << row.nBits << ',' << row.trials << ','
        << to_decimal(row.success_rate(), 6) << ',';
    if (timing) {
      out << to_decimal(Rational(row.meanTime), 6);
    } else {
      out << "NA";
    }
    out << '\n';
  }
}

}  // namespace latreg
