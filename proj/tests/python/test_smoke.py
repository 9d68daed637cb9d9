import math
import random
from fractions import Fraction

import pytest

import latreg


def gram_schmidt_norms(rows):
    star, norms, mu = [], [], []
    for i, b in enumerate(rows):
        v = [Fraction(x) for x in b]
        row = []
        for j in range(i):
            m = sum(Fraction(a) * c for a, c in zip(b, star[j])) / norms[j]
            row.append(m)
            v = [a - m * c for a, c in zip(v, star[j])]
        star.append(v)
        norms.append(sum(a * a for a in v))
        mu.append(row)
    return norms, mu


def test_lll_reduced_and_same_volume():
    basis = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
    reduced, swaps = latreg.lll_reduce(basis)
    norms, mu = gram_schmidt_norms(reduced)
    assert all(abs(m) <= Fraction(1, 2) for row in mu for m in row)
    for i in range(1, len(norms)):
        assert norms[i] >= (Fraction(3, 4) - mu[i][i - 1] ** 2) * norms[i - 1]
    vol = lambda rows: math.prod(gram_schmidt_norms(rows)[0])
    assert vol(reduced) == vol(basis)
    assert swaps >= 0


def test_gcd_vector():
    assert latreg.gcd_vector([12, -18, 30]) == 6
    assert latreg.gcd_vector([0, 0]) == 0
    big = 2**200 * 3
    assert latreg.gcd_vector([big, 2**201]) == 2**200


def test_elo_recovers_planted_integers():
    rng = random.Random(3)
    n, p, r = 1, 6, 20
    beta = [rng.randint(-r, r) for _ in range(p)]
    x = [[rng.getrandbits(70) for _ in range(p)] for _ in range(n)]
    y = [sum(a * b for a, b in zip(row, beta)) for row in x]
    hits = 0
    for seed in range(5):
        beta_hat, trace = latreg.elo_recover(y, x, r, 1, seed=seed)
        if beta_hat == beta:
            hits += 1
            assert not trace["degenerate"]
    assert hits >= 3


def test_lbr_round_trip():
    inst = latreg.generate_lbr(2, 6, 20, sigma="0", seed=5, q=3)
    assert all((3 * b).denominator == 1 and abs(b) <= 20 for b in inst["beta_star"])
    for row, y in zip(inst["x"], inst["y"]):
        assert sum(a * b for a, b in zip(row, inst["beta_star"])) == y
    hits = 0
    for seed in range(5):
        beta_hat, _ = latreg.lbr_recover(inst["y"], inst["x"], 80, 3, 20, Fraction(1, 2**80), seed=seed)
        hits += beta_hat == inst["beta_star"]
    assert hits >= 3


def test_bounds_example():
    b = latreg.bounds(1, 2, 1)
    # 20 + 20 log2(1 + sqrt 2) with |W| bound 1: (4/2)(4 + 10 log2(sqrt2 + 2 sqrt1)) + 6 log2(4)
    expected = 2 * (4 + 10 * math.log2(math.sqrt(2) + 2)) + 12
    assert float(b["elo_condition_rhs"]) == pytest.approx(expected, abs=1e-9)
    assert b["max_n"] is None
    assert b["minimum_integer_n"] >= b["required_n"]


def test_input_errors_raise():
    with pytest.raises(ValueError):
        latreg.elo_recover([1, 2], [[1]], 5)
    assert latreg.derive_seed(1, 2) == latreg.derive_seed(1, 2, 0)
