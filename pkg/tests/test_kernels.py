import random

import numpy as np
import pytest

from closurekit import _kernels, ring_from_text
from closurekit.harness import random_poly
from closurekit.points import FiniteField, evaluate, ranks_at

needs_numba = pytest.mark.skipif(_kernels.numba is None, reason="numba not installed")


@pytest.mark.parametrize("p,deg", [(2, 1), (2, 2), (3, 2), (5, 1), (7, 2)])
def test_field_tables(p, deg):
    F = FiniteField(p, deg)
    add, mul, neg, inv = F.tables
    q = F.q
    a = np.arange(q)
    assert np.all(add[a, neg] == 0)
    assert np.all(mul[a[1:], inv[1:]] == 1)
    rng = np.random.default_rng(p * deg)
    x, y, z = rng.integers(0, q, size=(3, 200))
    assert np.all(mul[mul[x, y], z] == mul[x, mul[y, z]])
    assert np.all(mul[x, add[y, z]] == add[mul[x, y], mul[x, z]])
    # Frobenius is additive in characteristic p
    tab = F.powtab(p)
    assert np.all(tab[add[x, y], p] == add[tab[x, p], tab[y, p]])


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        FiniteField(4)
    with pytest.raises(ValueError):
        FiniteField(3, 3)


@needs_numba
@pytest.mark.parametrize("p,deg", [(2, 2), (3, 1), (3, 2)])
def test_jit_matches_numpy(p, deg):
    R = ring_from_text(f"F({p})[x,y,z]")
    F = FiniteField(p, deg)
    pts = F.points(3)
    rng = random.Random(p + deg)
    for _ in range(10):
        f = random_poly(R, rng, max_deg=4, max_terms=5)
        assert np.array_equal(evaluate(f, pts, F, jit=True), evaluate(f, pts, F, jit=False))
        A = [[random_poly(R, rng, max_deg=1) for _ in range(3)] for _ in range(2)]
        assert np.array_equal(ranks_at(A, (2, 3), pts, F, jit=True), ranks_at(A, (2, 3), pts, F, jit=False))


def test_evaluation_matches_python():
    R = ring_from_text("F(5)[x,y]")
    F = FiniteField(5)
    f = R("x^3*y + 2*x + 4")
    pts = F.points(2)
    vals = evaluate(f, pts, F)
    for (a, b), v in zip(pts, vals):
        assert v == (a ** 3 * b + 2 * a + 4) % 5


def test_rational_coefficients_map():
    R = ring_from_text("Q[x]")
    F = FiniteField(7)
    vals = evaluate(R("1/2*x"), F.points(1), F)
    assert int(vals[2]) == 1
    with pytest.raises(ValueError):
        evaluate(R("1/7*x"), F.points(1), F)


def test_env_flag(monkeypatch):
    import importlib
    monkeypatch.setenv("CLOSUREKIT_DISABLE_JIT", "1")
    mod = importlib.reload(_kernels)
    try:
        assert not mod.USE_JIT
    finally:
        monkeypatch.delenv("CLOSUREKIT_DISABLE_JIT")
        importlib.reload(_kernels)
