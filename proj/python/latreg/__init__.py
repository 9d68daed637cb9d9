"""Exact recovery of rational regression coefficients by lattice reduction."""

from fractions import Fraction

from . import _core

InputError = _core.InputError
derive_seed = _core.derive_seed

__all__ = [
    "InputError",
    "bounds",
    "derive_seed",
    "elo_recover",
    "gcd_vector",
    "generate_lbr",
    "lbr_recover",
    "lll_reduce",
]


def _s(v):
    return [str(x) for x in v]


def _rows(m):
    return [_s(row) for row in m]


def _trace(t):
    t = dict(t)
    for key in ("shift", "zhat"):
        t[key] = [int(v) for v in t[key]]
    t["m"] = int(t["m"])
    t["g"] = int(t["g"])
    return t


def gcd_vector(v):
    return int(_core.gcd_vector(_s(v)))


def lll_reduce(basis, delta=Fraction(3, 4)):
    """LLL-reduces the rows of `basis`; returns (reduced rows, swap count)."""
    r = _core.lll_reduce(_rows(basis), str(Fraction(delta)))
    return [[int(v) for v in row] for row in r["basis"]], r["swaps"]


def elo_recover(y, x, r_hat, w_hat=1, seed=0):
    """Integer recovery from Y = X beta + W. Returns (beta_hat, trace)."""
    r = _core.elo_recover(_s(y), _rows(x), str(r_hat), str(w_hat), seed)
    return [int(v) for v in r["beta_hat"]], _trace(r["trace"])


def lbr_recover(y, x, n_bits, q_hat, r_hat, w_hat=1, seed=0):
    """Rational recovery from real-valued data (ints, Fractions or decimal strings)."""
    r = _core.lbr_recover(_s(y), _rows(x), n_bits, str(q_hat), str(r_hat), str(Fraction(w_hat)), seed)
    return [Fraction(v) for v in r["beta_hat"]], _trace(r["trace"])


def generate_lbr(n, p, r, sigma="0", seed=0, q=1):
    """Synthetic instance on the 2^-256 dyadic grid; sigma accepts "exp(-k)"."""
    d = _core.generate_lbr(n, p, str(r), str(sigma), seed, str(q))
    return {
        "x": [[Fraction(v) for v in row] for row in d["x"]],
        "y": [Fraction(v) for v in d["y"]],
        "beta_star": [Fraction(v) for v in d["beta_star"]],
    }


def bounds(n, p, r, q=1, sigma="0", c=1, epsilon=Fraction(1, 10)):
    d = _core.bounds(n, p, str(r), str(q), str(sigma), str(Fraction(c)), str(Fraction(epsilon)))
    out = {k: Fraction(v) for k, v in d.items() if isinstance(v, str)}
    out["minimum_integer_n"] = int(out["minimum_integer_n"])
    out["max_n"] = None if d["max_n"] is None else Fraction(d["max_n"])
    out["satisfiable"] = d["satisfiable"]
    return out
