#pragma once

#include <cstdint>
#include <stdexcept>

#include "latreg/exactnum.hpp"

namespace latreg {

class SingularBasisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered list of d linearly independent integer vectors of length d.
struct LatticeBasis {
  std::vector<IntVector> vectors;

  std::size_t dimension() const noexcept { return vectors.size(); }

  /// Basis whose vectors are the columns of `matrix`.
  static LatticeBasis from_columns(const IntMatrix& matrix);

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;
};

struct LllOptions {
  Rational delta{3, 4};
  /// Run a long-double pre-reduction on an exact Gram matrix before the
  /// exact integral pass. The result is identical in contract either way:
  /// the exact pass always runs last and certifies the output.
  bool floatingPass = true;
};

struct ReductionReport {
  LatticeBasis reducedBasis;
  std::uint64_t swapCount = 0;
  std::uint64_t sizeReductionCount = 0;
  std::uint64_t maxIntermediateBits = 0;
  /// False if the floating pass gave up (precision or exponent range) and
  /// the exact pass did all of the remaining work.
  bool floatingPassConverged = false;
};

/// Checks that the vectors form a square nonsingular matrix. Uses
/// elimination modulo several word-size primes and falls back to an exact
/// fraction-free determinant only when every prime divides the determinant.
bool is_full_rank(const LatticeBasis& basis);

/// delta-LLL reduction of a full-rank integer basis. The output is
/// size-reduced (|mu_ij| <= 1/2) and satisfies the Lovasz condition at
/// `delta` exactly, and spans the same lattice as the input.
///
/// Throws ParameterError unless 1/4 < delta < 1, SingularBasisError for a
/// non-square or rank-deficient basis.
ReductionReport lll_reduce(const LatticeBasis& basis, const LllOptions& options = {});
ReductionReport lll_reduce(const LatticeBasis& basis, const Rational& delta);

enum class OutputSelection { FirstVector, MinimumNorm };

/// The vector taken from a reduction: by default the first reduced vector,
/// which carries the approximation guarantee. MinimumNorm picks the shortest
/// of all output vectors (first one on ties).
const IntVector& shortest_output_vector(const ReductionReport& report,
                                        OutputSelection selection = OutputSelection::FirstVector);

BigInt squared_norm(const IntVector& v);

}  // namespace latreg
