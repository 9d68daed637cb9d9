#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>

#include "latreg/bounds.hpp"
#include "latreg/harness.hpp"

namespace latreg::io {

using Json = nlohmann::ordered_json;

/// Unreadable file or malformed document. The message names the file,
/// field, or row at fault.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

struct LbrInstanceFile {
  LbrInput input;
  std::optional<std::uint64_t> seed;
};

struct EloInstanceFile {
  EloInput input;
  std::optional<std::uint64_t> seed;
};

/// {"y": [..], "x": [[..]], "n_bits": N, "q_hat": int, "r_hat": int,
///  "w_hat": "decimal", "seed": int}; w_hat defaults to 1.
LbrInstanceFile parse_lbr_instance(const Json& doc);
/// {"y": [..], "x": [[..]], "r_hat": int, "w_hat": int, "seed": int}.
EloInstanceFile parse_elo_instance(const Json& doc);
/// Array of arrays of decimal integer strings, one inner array per vector.
LatticeBasis parse_basis(const Json& doc);
ProblemProfile parse_profile(const Json& doc);
EloSweepSpec parse_elo_sweep(const Json& doc);
LbrSweepSpec parse_lbr_sweep(const Json& doc);

struct CoprimalitySpec {
  struct Window {
    BigInt q1;
    BigInt q2;
  };
  std::vector<Window> windows;
  BigInt q;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};
CoprimalitySpec parse_coprimality_spec(const Json& doc);

/// Instance file in the `recover` schema, with the planted vector under
/// "beta_star" for checking.
Json lbr_instance_to_json(const RegressionInstance& instance, unsigned nBits, const BigInt& qHat, const BigInt& rHat,
                          const Rational& wHat, std::uint64_t seed);

/// Instance file in the `elo` schema, with "beta_star" for checking.
Json elo_instance_to_json(const EloInput& input, const RationalVector& betaStar, std::uint64_t seed);

Json to_json(const IntVector& v);
Json to_json(const RationalVector& v);
Json to_json(const LatticeBasis& basis);
Json trace_to_json(const EloTrace& trace);
Json reduction_to_json(const ReductionReport& report);
Json sweep_records_to_json(const std::vector<SweepRow>& rows);

}  // namespace latreg::io
