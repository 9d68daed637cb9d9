#pragma once

// Reference computations for tests. Everything here is written directly from
// the textbook definitions over exact rationals and shares no code with the
// library beyond the GMP types.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

using Z = mpz_class;
using Q = mpq_class;
using ZVec = std::vector<Z>;
using QVec = std::vector<Q>;
using ZMat = std::vector<ZVec>;
using QMat = std::vector<QVec>;

inline Q dot(const QVec& a, const QVec& b) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline QVec to_q(const ZVec& v) { return QVec(v.begin(), v.end()); }

struct GramSchmidt {
  QMat bstar;
  QMat mu;
  QVec norms;  // |b*_i|^2
};

inline GramSchmidt gram_schmidt(const ZMat& basis) {
  const std::size_t d = basis.size();
  GramSchmidt gs;
  gs.bstar.resize(d);
  gs.mu.assign(d, QVec(d, 0));
  gs.norms.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    QVec v = to_q(basis[i]);
    for (std::size_t j = 0; j < i; ++j) {
      gs.mu[i][j] = dot(to_q(basis[i]), gs.bstar[j]) / gs.norms[j];
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= gs.mu[i][j] * gs.bstar[j][k];
    }
    gs.bstar[i] = v;
    gs.norms[i] = dot(v, v);
  }
  return gs;
}

inline bool size_reduced(const GramSchmidt& gs) {
  for (std::size_t i = 0; i < gs.mu.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (abs(gs.mu[i][j]) > Q(1, 2)) return false;
    }
  }
  return true;
}

inline bool lovasz(const GramSchmidt& gs, const Q& delta) {
  for (std::size_t i = 1; i < gs.norms.size(); ++i) {
    const Q m = gs.mu[i][i - 1];
    if (gs.norms[i] < (delta - m * m) * gs.norms[i - 1]) return false;
  }
  return true;
}

// Solves c * B = v for c, where the rows of B are the basis vectors.
// Returns nothing when B is singular or v is outside the row space.
inline std::optional<QVec> solve_row_combination(const ZMat& basis, const ZVec& v) {
  const std::size_t d = basis.size();
  const std::size_t len = v.size();
  // Augmented system: columns of B^T with v appended.
  QMat a(len, QVec(d + 1));
  for (std::size_t r = 0; r < len; ++r) {
    for (std::size_t c = 0; c < d; ++c) a[r][c] = basis[c][r];
    a[r][d] = v[r];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivotCol;
  for (std::size_t c = 0; c < d && row < len; ++c) {
    std::size_t piv = row;
    while (piv < len && a[piv][c] == 0) ++piv;
    if (piv == len) return std::nullopt;
    std::swap(a[piv], a[row]);
    for (std::size_t r = 0; r < len; ++r) {
      if (r == row || a[r][c] == 0) continue;
      const Q f = a[r][c] / a[row][c];
      for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[row][k];
    }
    pivotCol.push_back(c);
    ++row;
  }
  if (pivotCol.size() != d) return std::nullopt;
  for (std::size_t r = row; r < len; ++r) {
    if (a[r][d] != 0) return std::nullopt;
  }
  QVec c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = a[i][d] / a[i][i];
  return c;
}

inline Q determinant(QMat a) {
  const std::size_t n = a.size();
  Q det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Q f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

inline Q determinant(const ZMat& m) {
  QMat a;
  for (const auto& row : m) a.push_back(to_q(row));
  return determinant(a);
}

// True when every output vector is an integer combination of the input and
// the transition matrix has determinant +-1.
inline bool unimodularly_equivalent(const ZMat& input, const ZMat& output) {
  if (input.size() != output.size()) return false;
  QMat t;
  for (const auto& v : output) {
    const auto c = solve_row_combination(input, v);
    if (!c) return false;
    for (const auto& x : *c) {
      if (x.get_den() != 1) return false;
    }
    t.push_back(*c);
  }
  const Q det = determinant(t);
  return det == 1 || det == -1;
}

inline bool in_lattice(const ZMat& basis, const ZVec& v) {
  const auto c = solve_row_combination(basis, v);
  if (!c) return false;
  for (const auto& x : *c) {
    if (x.get_den() != 1) return false;
  }
  return true;
}

inline Z squared_norm(const ZVec& v) {
  Z s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

// Minimum squared norm over all nonzero combinations with coefficients in
// [-bound, bound].
inline Z shortest_in_box(const ZMat& basis, int bound) {
  const std::size_t d = basis.size();
  const std::size_t len = basis.empty() ? 0 : basis[0].size();
  std::vector<int> coef(d, -bound);
  std::optional<Z> best;
  ZVec v(len);
  for (;;) {
    bool nonzero = false;
    for (int c : coef) nonzero = nonzero || c != 0;
    if (nonzero) {
      for (std::size_t k = 0; k < len; ++k) v[k] = 0;
      for (std::size_t i = 0; i < d; ++i) {
        if (coef[i] == 0) continue;
        for (std::size_t k = 0; k < len; ++k) v[k] += coef[i] * basis[i][k];
      }
      const Z n2 = squared_norm(v);
      if (!best || n2 < *best) best = n2;
    }
    std::size_t i = 0;
    while (i < d && coef[i] == bound) coef[i++] = -bound;
    if (i == d) break;
    ++coef[i];
  }
  return *best;
}

// Exact lambda_1^2. Any lattice vector v = c B has c = v B^-1, so
// |c_i| <= |v| |column i of B^-1|. With r^2 an upper bound on lambda_1^2
// (the squared norm of any known nonzero lattice vector) the coefficient
// search is confined to a box that provably contains a shortest vector.
inline Z shortest_vector_squared(const ZMat& basis, const Z& knownUpperBound) {
  const std::size_t d = basis.size();
  QMat m;
  for (const auto& row : basis) m.push_back(to_q(row));
  // Inverse by Gauss-Jordan.
  QMat inv(d, QVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (m[piv][c] == 0) ++piv;
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const Q s = m[c][c];
    for (std::size_t k = 0; k < d; ++k) {
      m[c][k] /= s;
      inv[c][k] /= s;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Q f = m[r][c];
      for (std::size_t k = 0; k < d; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  // c = v * inv, so c_i = sum_k v_k inv[k][i].
  std::vector<long> bounds(d);
  for (std::size_t i = 0; i < d; ++i) {
    Q col = 0;
    for (std::size_t k = 0; k < d; ++k) col += inv[k][i] * inv[k][i];
    const Q b2 = col * knownUpperBound;
    Z fl = b2.get_num() / b2.get_den();
    Z root;
    mpz_sqrt(root.get_mpz_t(), fl.get_mpz_t());
    bounds[i] = root.get_si();
  }
  Z best = knownUpperBound;
  std::vector<long> coef(d, 0);
  ZVec v(basis[0].size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == d) {
      bool nonzero = false;
      for (long c : coef) nonzero = nonzero || c != 0;
      if (!nonzero) return;
      const Z n2 = squared_norm(v);
      if (n2 < best) best = n2;
      return;
    }
    for (long c = -bounds[i]; c <= bounds[i]; ++c) {
      coef[i] = c;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] += c * basis[i][k];
      rec(i + 1);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * basis[i][k];
    }
    coef[i] = 0;
  };
  rec(0);
  return best;
}

// Largest g dividing every entry, by trial from the smallest nonzero
// magnitude downward. Only for small entries.
inline Z trial_gcd(const ZVec& v) {
  Z smallest = 0;
  for (const auto& x : v) {
    if (x != 0 && (smallest == 0 || abs(x) < smallest)) smallest = abs(x);
  }
  for (Z g = smallest; g > 1; --g) {
    bool divides = true;
    for (const auto& x : v) divides = divides && x % g == 0;
    if (divides) return g;
  }
  return smallest == 0 ? Z(0) : Z(1);
}

}  // namespace oracle
