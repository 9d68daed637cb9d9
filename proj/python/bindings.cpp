// Integers cross the boundary as decimal strings and rationals as "a/b"
// strings; the Python package converts them to int and Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latreg/bounds.hpp"
#include "latreg/elo.hpp"
#include "latreg/harness.hpp"
#include "latreg/lbr.hpp"
#include "latreg/lll.hpp"
#include "latreg/numtheory.hpp"
#include "latreg/random.hpp"

namespace py = pybind11;
using namespace latreg;

namespace {

using Strings = std::vector<std::string>;

IntVector ints(const Strings& v) {
  IntVector out;
  for (const auto& s : v) out.push_back(parse_integer(s));
  return out;
}

IntMatrix int_rows(const std::vector<Strings>& m) {
  IntMatrix out;
  for (const auto& row : m) out.push_back(ints(row));
  return out;
}

RationalVector rationals(const Strings& v) {
  RationalVector out;
  for (const auto& s : v) out.push_back(parse_rational(s));
  return out;
}

RationalMatrix rational_rows(const std::vector<Strings>& m) {
  RationalMatrix out;
  for (const auto& row : m) out.push_back(rationals(row));
  return out;
}

template <class V>
Strings strings(const V& v) {
  Strings out;
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

py::dict trace_dict(const EloTrace& t) {
  py::dict d;
  d["seed"] = t.seed;
  d["shift"] = strings(t.shift);
  d["clamped_indices"] = t.clampedIndices;
  d["m"] = to_string(t.m);
  d["g"] = to_string(t.g);
  d["zhat"] = strings(t.zhat);
  d["degenerate"] = t.degenerate;
  d["lll_swaps"] = t.lllSwaps;
  d["lll_size_reductions"] = t.lllSizeReductions;
  return d;
}

ProblemProfile profile(std::size_t n, std::size_t p, const std::string& r, const std::string& q, const std::string& sigma,
                       const std::string& c, const std::string& epsilon) {
  ProblemProfile prof;
  prof.n = n;
  prof.p = p;
  prof.r = parse_integer(r);
  prof.q = parse_integer(q);
  prof.sigma = parse_sigma(sigma);
  prof.c = parse_rational(c);
  prof.epsilon = parse_rational(epsilon);
  return prof;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("a"), py::arg("b") = 0);

  m.def("gcd_vector", [](const Strings& v) { return to_string(gcd_vector(ints(v)).value); });

  m.def(
      "lll_reduce",
      [](const std::vector<Strings>& vectors, const std::string& delta) {
        LatticeBasis basis{int_rows(vectors)};
        LllOptions options;
        options.delta = parse_rational(delta);
        const ReductionReport r = lll_reduce(basis, options);
        py::dict d;
        std::vector<Strings> out;
        for (const auto& v : r.reducedBasis.vectors) out.push_back(strings(v));
        d["basis"] = out;
        d["swaps"] = r.swapCount;
        d["size_reductions"] = r.sizeReductionCount;
        return d;
      },
      py::arg("basis"), py::arg("delta"));

  m.def(
      "elo_recover",
      [](const Strings& y, const std::vector<Strings>& x, const std::string& rHat, const std::string& wHat,
         std::uint64_t seed) {
        EloInput in{ints(y), int_rows(x), parse_integer(rHat), parse_integer(wHat)};
        EloResult r;
        {
          py::gil_scoped_release release;
          r = elo_recover(in, seed);
        }
        py::dict d;
        d["beta_hat"] = strings(r.betaHat);
        d["trace"] = trace_dict(r.trace);
        return d;
      },
      py::arg("y"), py::arg("x"), py::arg("r_hat"), py::arg("w_hat"), py::arg("seed"));

  m.def(
      "lbr_recover",
      [](const Strings& y, const std::vector<Strings>& x, unsigned nBits, const std::string& qHat,
         const std::string& rHat, const std::string& wHat, std::uint64_t seed) {
        LbrInput in{rationals(y), rational_rows(x), nBits, parse_integer(qHat), parse_integer(rHat), parse_rational(wHat)};
        LbrResult r;
        {
          py::gil_scoped_release release;
          r = lbr_recover(in, seed);
        }
        py::dict d;
        d["beta_hat"] = strings(r.betaHat);
        d["lifted_beta"] = strings(r.liftedBeta);
        d["trace"] = trace_dict(r.trace);
        return d;
      },
      py::arg("y"), py::arg("x"), py::arg("n_bits"), py::arg("q_hat"), py::arg("r_hat"), py::arg("w_hat"),
      py::arg("seed"));

  m.def(
      "generate_lbr",
      [](std::size_t n, std::size_t p, const std::string& r, const std::string& sigma, std::uint64_t seed,
         const std::string& q) {
        const RegressionInstance inst = gen_lbr_instance(n, p, parse_integer(r), parse_sigma(sigma), seed, parse_integer(q));
        py::dict d;
        std::vector<Strings> x;
        for (const auto& row : inst.x) x.push_back(strings(row));
        d["x"] = x;
        d["y"] = strings(inst.y);
        d["beta_star"] = strings(inst.betaStar);
        return d;
      },
      py::arg("n"), py::arg("p"), py::arg("r"), py::arg("sigma"), py::arg("seed"), py::arg("q"));

  m.def(
      "bounds",
      [](std::size_t n, std::size_t p, const std::string& r, const std::string& q, const std::string& sigma,
         const std::string& c, const std::string& epsilon) {
        const ProblemProfile prof = profile(n, p, r, q, sigma, c, epsilon);
        const BoundReport rep = cor2_window(prof);
        py::dict d;
        d["required_n"] = to_string(rep.requiredN);
        d["minimum_integer_n"] = to_string(rep.minimumIntegerN);
        d["max_n"] = rep.maxN ? py::object(py::str(to_string(*rep.maxN))) : py::object(py::none());
        d["satisfiable"] = rep.satisfiable;
        d["elo_condition_rhs"] = to_string(elo_condition_rhs(n, p, prof.r, 1, prof.c));
        d["info_theoretic_sigma_ceiling"] = to_string(info_theoretic_sigma_ceiling(n, p, prof.q, prof.r));
        return d;
      },
      py::arg("n"), py::arg("p"), py::arg("r"), py::arg("q"), py::arg("sigma"), py::arg("c"), py::arg("epsilon"));
}
