#pragma once

#include <cstdint>
#include <stdexcept>

#include "latreg/exactnum.hpp"
#include "latreg/lll.hpp"
#include "latreg/random.hpp"

namespace latreg {

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integer observations Y = X beta* + W with bounds rHat >= |beta*|_inf and
/// wHat >= |W|_inf.
struct EloInput {
  IntVector y;
  IntMatrix x;  // n x p
  BigInt rHat{1};
  BigInt wHat{1};

  std::size_t n() const noexcept { return y.size(); }
  std::size_t p() const noexcept { return x.empty() ? 0 : x.front().size(); }
};

/// Intermediate values of one recovery run, enough to replay and audit it.
struct EloTrace {
  std::uint64_t seed = 0;
  IntVector shift;                    // Z
  IntVector y1;                       // Y + X Z
  IntVector y2;                       // Y1 with |entries| < 3 replaced by 3
  std::vector<std::size_t> clampedIndices;
  BigInt m;
  IntVector zhat;                     // first reduced lattice vector
  BigInt g;                           // gcd of zhat[n .. n+p), sign chosen so zhat/g >= 1
  bool degenerate = false;
  std::uint64_t lllSwaps = 0;
  std::uint64_t lllSizeReductions = 0;
  std::uint64_t lllMaxBits = 0;
};

struct EloResult {
  IntVector betaHat;
  EloTrace trace;
};

/// Upper end of the shift range: 2 rHat + max(1, ceil(log2 p)).
BigInt shift_upper_bound(std::size_t p, const BigInt& rHat);

/// p iid draws uniform on {rHat + 1, ..., 2 rHat + max(1, ceil(log2 p))}.
IntVector sample_shift(std::size_t p, const BigInt& rHat, Rng& rng);

struct ClampResult {
  IntVector values;
  std::vector<std::size_t> indices;
};

/// Replaces every entry with |y_i| < 3 by 3.
ClampResult clamp_observations(const IntVector& y1);

/// m = 2^(n + ceil(p/2) + 3) * p * (rHat ceil(sqrt p) + wHat ceil(sqrt n)).
BigInt compute_m(std::size_t n, std::size_t p, const BigInt& rHat, const BigInt& wHat);

/// The (2n+p) x (2n+p) matrix
///   [ m X   -m Diag(y2)  m I_n ]
///   [ I_p    0           0     ]
///   [ 0      0           I_n   ]
/// whose columns generate the recovery lattice. Every y2 entry must be nonzero.
IntMatrix build_lattice_matrix(const IntMatrix& x, const IntVector& y2, const BigInt& m);

/// Runs the extended Lagarias-Odlyzko recovery with shift randomness from
/// `seed`. Returns the zero vector and a degenerate trace when the reduced
/// vector does not decode (g = 0, or no sign of g makes zhat/g >= 1).
EloResult elo_recover(const EloInput& input, std::uint64_t seed, const LllOptions& lll = {});

/// |Y - X betaHat|_inf <= tolerance.
bool verify_residual(const EloInput& input, const IntVector& betaHat, const BigInt& tolerance);

void validate(const EloInput& input);

}  // namespace latreg
