import random

import pytest

from closurekit import Ideal, ring_from_text
from closurekit.closures import SearchBounds
from closurekit.exactness import (ComplexError, FreeComplex, RankConditionError, matrix_rank,
                                  minor_product_ideal, phantom_exact, surjective_exact_complex,
                                  surjective_exact_pair)
from closurekit.ideals import ideal_equal, ideal_power
from closurekit.points import FiniteField, pointwise_exact

from gen import exact_pair_instance

QXY = ring_from_text("Q[x,y]")


def M(R, rows):
    return [[R(e) for e in row] for row in rows]


def test_koszul_pair_rejected():
    alpha = M(QXY, [["y"], ["-x"]])
    beta = M(QXY, [["x", "y"]])
    cert = surjective_exact_pair(alpha, beta, QXY)
    assert not cert.exact
    J = Ideal(QXY, [g for _, _, g in minor_product_ideal(alpha, beta, QXY)])
    assert ideal_equal(J, ideal_power(Ideal.parse(QXY, "x, y"), 2))


def test_identity_sandwich():
    alpha = M(QXY, [["1", "0"], ["0", "1"]])
    beta = M(QXY, [["0", "0"]])
    cert = surjective_exact_pair(alpha, beta, QXY)
    assert cert.exact
    total = sum((c * g for c, (_, _, g) in zip(cert.coefficients, cert.generators)), QXY.zero())
    assert total == QXY.one()


def test_zero_then_multiplication():
    cert = surjective_exact_pair(M(QXY, [["0"]]), M(QXY, [["x"]]), QXY, (1, 1), (1, 1))
    assert not cert.exact


def test_not_a_complex():
    with pytest.raises(ComplexError):
        surjective_exact_pair(M(QXY, [["1"]]), M(QXY, [["x"]]), QXY)


def test_complex_criteria():
    split = FreeComplex(QXY, [M(QXY, [["1", "0"]]), M(QXY, [["0"], ["1"]])])
    assert surjective_exact_complex(split).exact
    koszul = FreeComplex(QXY, [M(QXY, [["x", "y"]]), M(QXY, [["y"], ["-x"]])])
    assert not surjective_exact_complex(koszul).exact
    with pytest.raises(ComplexError):
        FreeComplex(QXY, [M(QXY, [["x", "y"]]), M(QXY, [["1"], ["1"]])])


def test_rank_condition_reported():
    with pytest.raises(RankConditionError):
        surjective_exact_complex(FreeComplex(QXY, [M(QXY, [["x", "0"]])]))


def test_matrix_rank_quotient():
    R = ring_from_text("Q[x]/(x^2)")
    assert matrix_rank(M(R, [["x"]]), R) == 0
    assert matrix_rank(M(R, [["1", "x"], ["x", "1"]]), R) == 2


def test_phantom_koszul_identity():
    res = phantom_exact(M(QXY, [["y"], ["-x"]]), M(QXY, [["x", "y"]]), QXY)
    assert res.verdict is True and len(res.kernel) == 1


def _fermat_phantom(p, e_max):
    R = ring_from_text(f"F({p})[z,w,v]/(z^3+w^3+v^3)")
    alpha = M(R, [["z", "w"]])
    beta = M(R, [["1"]])
    target = M(R, [["z", "w", "v^2"]])
    return phantom_exact(alpha, beta, R, "frobenius", SearchBounds(e_max=e_max), target=target)


def test_phantom_fermat():
    res = _fermat_phantom(5, 4)
    assert res.verdict is True
    assert max(c.witness["level"] for c in res.certificates) == 1
    assert _fermat_phantom(7, 3).verdict is None


def test_pair_implies_radical_phantom():
    rng = random.Random(2)
    R = ring_from_text("F(3)[x,y]")
    for _ in range(25):
        alpha, beta, sa, sb = exact_pair_instance(R, rng)
        if surjective_exact_pair(alpha, beta, R, sa, sb).exact:
            assert phantom_exact(alpha, beta, R, "radical", alpha_shape=sa, beta_shape=sb).verdict


@pytest.mark.parametrize("p", [2, 3])
def test_pointwise_oracle(p):
    rng = random.Random(40 + p)
    R = ring_from_text(f"F({p})[x,y,z]")
    fields = [FiniteField(p, 1), FiniteField(p, 2)]
    for _ in range(20):
        alpha, beta, sa, sb = exact_pair_instance(R, rng)
        verdict = surjective_exact_pair(alpha, beta, R, sa, sb).exact
        for F in fields:
            assert pointwise_exact(alpha, beta, R, F, sa, sb) == verdict
