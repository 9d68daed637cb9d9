#include "latreg/lll.hpp"

#include <algorithm>
#include <cmath>

namespace latreg {
namespace {

// Word-size primes for the rank pre-check.
constexpr std::uint64_t kPrimes[] = {
    2305843009213693951ULL,   // 2^61 - 1
    18446744073709551557ULL,  // 2^64 - 59
    4294967291ULL,            // 2^32 - 5
    1000000007ULL,
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool det_nonzero_mod(const LatticeBasis& basis, std::uint64_t p) {
  const std::size_t d = basis.dimension();
  std::vector<std::vector<std::uint64_t>> a(d, std::vector<std::uint64_t>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      a[i][j] = mpz_fdiv_ui(basis.vectors[i][j].get_mpz_t(), p);
    }
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && a[pivot][col] == 0) ++pivot;
    if (pivot == d) return false;
    std::swap(a[pivot], a[col]);
    const std::uint64_t inv = powmod(a[col][col], p - 2, p);
    for (std::size_t i = col + 1; i < d; ++i) {
      if (a[i][col] == 0) continue;
      const std::uint64_t f = mulmod(a[i][col], inv, p);
      for (std::size_t j = col; j < d; ++j) {
        a[i][j] = (a[i][j] + p - mulmod(f, a[col][j], p)) % p;
      }
    }
  }
  return true;
}

// Fraction-free (Bareiss) determinant, exact.
BigInt bareiss_determinant(const LatticeBasis& basis) {
  const std::size_t d = basis.dimension();
  std::vector<IntVector> a = basis.vectors;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < d && a[swap][k] == 0) ++swap;
      if (swap == d) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[d - 1][d - 1];
}

std::uint64_t max_entry_bits(const IntVector& v) {
  std::uint64_t bits = 0;
  for (const auto& x : v) bits = std::max<std::uint64_t>(bits, bit_length(x));
  return bits;
}

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

// b_k <- b_k - q * b_j
void subtract_multiple(IntVector& target, const BigInt& q, const IntVector& source) {
  for (std::size_t i = 0; i < target.size(); ++i) {
    mpz_submul(target[i].get_mpz_t(), q.get_mpz_t(), source[i].get_mpz_t());
  }
}

// Schnorr-Euchner reduction with long double Gram-Schmidt data computed
// from an exact integer Gram matrix (the L^2 arrangement). All basis and
// Gram updates are exact, so whatever state it stops in is a valid basis of
// the same lattice. long double's 15-bit exponent covers Gram entries up to
// roughly 2^16000.
class FloatingPass {
 public:
  FloatingPass(std::vector<IntVector>& basis, long double delta, ReductionReport& report)
      : b_(basis), d_(basis.size()), delta_(delta), report_(report) {}

  bool run() {
    if (d_ < 2) return true;
    gram_.assign(d_, IntVector(d_));
    for (std::size_t i = 0; i < d_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        gram_[i][j] = dot(b_[i], b_[j]);
        gram_[j][i] = gram_[i][j];
      }
    }
    r_.assign(d_, std::vector<long double>(d_, 0));
    mu_.assign(d_, std::vector<long double>(d_, 0));

    std::uint64_t entryBits = 0;
    for (const auto& v : b_) entryBits = std::max(entryBits, max_entry_bits(v));
    const std::uint64_t cap = 64 * d_ * d_ * (entryBits + 64);

    std::size_t k = 1;
    r_[0][0] = to_ld(gram_[0][0]);
    for (std::uint64_t iter = 0; k < d_; ++iter) {
      if (iter > cap) return false;
      if (k == 1) r_[0][0] = to_ld(gram_[0][0]);
      if (!size_reduce(k)) return false;

      long double rkk = to_ld(gram_[k][k]);
      for (std::size_t i = 0; i < k; ++i) rkk -= mu_[k][i] * r_[k][i];
      r_[k][k] = rkk;
      if (!std::isfinite(rkk)) return false;

      const long double m = mu_[k][k - 1];
      if (delta_ * r_[k - 1][k - 1] > rkk + m * m * r_[k - 1][k - 1]) {
        swap_rows(k);
        ++report_.swapCount;
        k = std::max<std::size_t>(k - 1, 1);
      } else {
        ++k;
      }
    }
    return true;
  }

 private:
  static constexpr long double kEta = 0.51L;

  long double to_ld(const BigInt& z) {
    const int s = sgn(z);
    if (s == 0) return 0.0L;
    const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    long double v;
    if (bits <= 64) {
      v = static_cast<long double>(static_cast<std::uint64_t>(mpz_getlimbn(z.get_mpz_t(), 0)));
    } else {
      mpz_abs(scratch_.get_mpz_t(), z.get_mpz_t());
      mpz_tdiv_q_2exp(scratch_.get_mpz_t(), scratch_.get_mpz_t(), bits - 64);
      const auto top = static_cast<std::uint64_t>(mpz_getlimbn(scratch_.get_mpz_t(), 0));
      v = std::ldexp(static_cast<long double>(top), static_cast<int>(bits - 64));
    }
    return s < 0 ? -v : v;
  }

  // x must be integral.
  BigInt from_ld(long double x) {
    int e = 0;
    const long double m = std::frexp(std::fabs(x), &e);
    const auto mant = static_cast<std::uint64_t>(std::ldexp(m, 64));
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(mant), 0, 0, &mant);
    if (e >= 64) {
      mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<mp_bitcnt_t>(e - 64));
    } else {
      mpz_tdiv_q_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<mp_bitcnt_t>(64 - e));
    }
    if (x < 0) out = -out;
    return out;
  }

  bool size_reduce(std::size_t k) {
    std::uint64_t bits = max_entry_bits(b_[k]);
    for (std::size_t i = 0; i < k; ++i) bits = std::max(bits, max_entry_bits(b_[i]));
    const std::uint64_t cap = 64 + bits / 8;
    for (std::uint64_t pass = 0; pass < cap; ++pass) {
      long double worst = 0;
      for (std::size_t j = 0; j < k; ++j) {
        long double s = to_ld(gram_[k][j]);
        for (std::size_t i = 0; i < j; ++i) s -= mu_[j][i] * r_[k][i];
        r_[k][j] = s;
        if (!(r_[j][j] > 0)) return false;
        mu_[k][j] = s / r_[j][j];
        if (!std::isfinite(mu_[k][j])) return false;
        worst = std::max(worst, std::fabs(mu_[k][j]));
      }
      if (worst <= kEta) return true;

      for (std::size_t jj = k; jj-- > 0;) {
        const long double x = std::nearbyint(mu_[k][jj]);
        if (x == 0) continue;
        for (std::size_t i = 0; i < jj; ++i) mu_[k][i] -= x * mu_[jj][i];
        apply_reduction(k, jj, from_ld(x));
      }
      report_.maxIntermediateBits = std::max(report_.maxIntermediateBits, max_entry_bits(b_[k]));
    }
    return false;
  }

  // b_k <- b_k - q b_j, with the matching exact Gram update.
  void apply_reduction(std::size_t k, std::size_t j, const BigInt& q) {
    subtract_multiple(b_[k], q, b_[j]);
    ++report_.sizeReductionCount;
    // G_kk <- G_kk + q (q G_jj - 2 G_kj)
    BigInt t = q * gram_[j][j];
    mpz_submul_ui(t.get_mpz_t(), gram_[k][j].get_mpz_t(), 2);
    mpz_addmul(gram_[k][k].get_mpz_t(), q.get_mpz_t(), t.get_mpz_t());
    for (std::size_t i = 0; i < d_; ++i) {
      if (i == k) continue;
      mpz_submul(gram_[k][i].get_mpz_t(), q.get_mpz_t(), gram_[j][i].get_mpz_t());
      gram_[i][k] = gram_[k][i];
    }
  }

  void swap_rows(std::size_t k) {
    std::swap(b_[k - 1], b_[k]);
    std::swap(gram_[k - 1], gram_[k]);
    for (auto& row : gram_) std::swap(row[k - 1], row[k]);
  }

  std::vector<IntVector>& b_;
  std::size_t d_;
  long double delta_;
  ReductionReport& report_;
  std::vector<IntVector> gram_;
  std::vector<std::vector<long double>> r_;
  std::vector<std::vector<long double>> mu_;
  BigInt scratch_;
};

// Integral LLL after Cohen, "A Course in Computational Algebraic Number
// Theory", Alg. 2.6.7. Indices are 1-based to match the recurrences:
// dd_[i] is the Gram determinant of the first i vectors and
// lam_[k][j] = dd_[j] * mu_kj, both integers.
class IntegralPass {
 public:
  IntegralPass(std::vector<IntVector>& basis, const Rational& delta, ReductionReport& report)
      : b_(basis), n_(basis.size()), num_(delta.get_num()), den_(delta.get_den()), report_(report) {}

  void run() {
    if (n_ == 0) return;
    dd_.assign(n_ + 1, BigInt(0));
    lam_.assign(n_ + 1, IntVector(n_ + 1));
    dd_[0] = 1;
    dd_[1] = dot(vec(1), vec(1));
    if (dd_[1] == 0) throw SingularBasisError("lll_reduce: zero basis vector");
    std::size_t k = 2;
    std::size_t kmax = 1;
    BigInt lhs, rhs;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        extend_gram_schmidt(k);
      }
      for (;;) {
        reduce(k, k - 1);
        // Lovasz fails iff den * d_k * d_{k-2} < num * d_{k-1}^2 - den * lam^2
        lhs = den_ * dd_[k] * dd_[k - 2];
        rhs = num_ * dd_[k - 1] * dd_[k - 1] - den_ * lam_[k][k - 1] * lam_[k][k - 1];
        if (lhs < rhs) {
          swap(k, kmax);
          ++report_.swapCount;
          if (k > 2) --k;
        } else {
          break;
        }
      }
      for (std::size_t l = k - 1; l-- > 1;) reduce(k, l);
      ++k;
    }
    for (const auto& x : dd_) report_.maxIntermediateBits = std::max<std::uint64_t>(report_.maxIntermediateBits, bit_length(x));
  }

 private:
  IntVector& vec(std::size_t i) { return b_[i - 1]; }

  void extend_gram_schmidt(std::size_t k) {
    BigInt u;
    for (std::size_t j = 1; j <= k; ++j) {
      u = dot(vec(k), vec(j));
      for (std::size_t i = 1; i < j; ++i) {
        u = dd_[i] * u - lam_[k][i] * lam_[j][i];
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), dd_[i - 1].get_mpz_t());
      }
      if (j < k) {
        lam_[k][j] = u;
      } else {
        if (u == 0) throw SingularBasisError("lll_reduce: basis vectors are linearly dependent");
        dd_[k] = u;
        report_.maxIntermediateBits = std::max<std::uint64_t>(report_.maxIntermediateBits, bit_length(u));
      }
    }
  }

  void reduce(std::size_t k, std::size_t l) {
    BigInt twice = 2 * lam_[k][l];
    if (abs(twice) <= dd_[l]) return;
    // q = round(lam / d_l) = floor((2 lam + d_l) / (2 d_l))
    BigInt q = twice + dd_[l];
    BigInt twoD = 2 * dd_[l];
    mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), twoD.get_mpz_t());
    subtract_multiple(vec(k), q, vec(l));
    ++report_.sizeReductionCount;
    mpz_submul(lam_[k][l].get_mpz_t(), q.get_mpz_t(), dd_[l].get_mpz_t());
    for (std::size_t i = 1; i < l; ++i) mpz_submul(lam_[k][i].get_mpz_t(), q.get_mpz_t(), lam_[l][i].get_mpz_t());
    report_.maxIntermediateBits = std::max(report_.maxIntermediateBits, max_entry_bits(vec(k)));
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(vec(k), vec(k - 1));
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    const BigInt lam = lam_[k][k - 1];
    BigInt bNew = dd_[k - 2] * dd_[k] + lam * lam;
    mpz_divexact(bNew.get_mpz_t(), bNew.get_mpz_t(), dd_[k - 1].get_mpz_t());
    BigInt t;
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      t = lam_[i][k];
      lam_[i][k] = dd_[k] * lam_[i][k - 1] - lam * t;
      mpz_divexact(lam_[i][k].get_mpz_t(), lam_[i][k].get_mpz_t(), dd_[k - 1].get_mpz_t());
      lam_[i][k - 1] = bNew * t + lam * lam_[i][k];
      mpz_divexact(lam_[i][k - 1].get_mpz_t(), lam_[i][k - 1].get_mpz_t(), dd_[k].get_mpz_t());
    }
    dd_[k - 1] = bNew;
  }

  std::vector<IntVector>& b_;
  std::size_t n_;
  BigInt num_;
  BigInt den_;
  ReductionReport& report_;
  IntVector dd_;
  std::vector<IntVector> lam_;
};

}  // namespace

LatticeBasis LatticeBasis::from_columns(const IntMatrix& matrix) {
  LatticeBasis basis;
  if (matrix.empty()) return basis;
  const std::size_t cols = matrix.front().size();
  basis.vectors.assign(cols, IntVector(matrix.size()));
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i].size() != cols) throw std::invalid_argument("from_columns: ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) basis.vectors[j][i] = matrix[i][j];
  }
  return basis;
}

BigInt squared_norm(const IntVector& v) { return dot(v, v); }

bool is_full_rank(const LatticeBasis& basis) {
  const std::size_t d = basis.dimension();
  if (d == 0) return false;
  for (const auto& v : basis.vectors) {
    if (v.size() != d) return false;
  }
  for (std::uint64_t p : kPrimes) {
    if (det_nonzero_mod(basis, p)) return true;
  }
  return bareiss_determinant(basis) != 0;
}

ReductionReport lll_reduce(const LatticeBasis& basis, const LllOptions& options) {
  if (options.delta <= Rational(1, 4) || options.delta >= 1) {
    throw ParameterError("lll_reduce: delta must satisfy 1/4 < delta < 1, got " + to_string(options.delta));
  }
  if (!is_full_rank(basis)) throw SingularBasisError("lll_reduce: basis is not square and full rank");

  ReductionReport report;
  report.reducedBasis = basis;
  auto& vectors = report.reducedBasis.vectors;
  for (const auto& v : vectors) report.maxIntermediateBits = std::max(report.maxIntermediateBits, max_entry_bits(v));

  if (options.floatingPass) {
    // Slightly stronger target so the exact pass rarely has work left.
    const long double delta = std::min(options.delta.get_d() + 0.01, (options.delta.get_d() + 1.0) / 2.0);
    report.floatingPassConverged = FloatingPass(vectors, delta, report).run();
  }
  IntegralPass(vectors, options.delta, report).run();
  return report;
}

ReductionReport lll_reduce(const LatticeBasis& basis, const Rational& delta) {
  LllOptions options;
  options.delta = delta;
  return lll_reduce(basis, options);
}

const IntVector& shortest_output_vector(const ReductionReport& report, OutputSelection selection) {
  const auto& vectors = report.reducedBasis.vectors;
  if (vectors.empty()) throw std::invalid_argument("shortest_output_vector: empty basis");
  if (selection == OutputSelection::FirstVector) return vectors.front();
  std::size_t best = 0;
  BigInt bestNorm = squared_norm(vectors[0]);
  for (std::size_t i = 1; i < vectors.size(); ++i) {
    BigInt n = squared_norm(vectors[i]);
    if (n < bestNorm) {
      bestNorm = n;
      best = i;
    }
  }
  return vectors[best];
}

}  // namespace latreg
