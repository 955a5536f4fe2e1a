import itertools
import random

import pytest
from hypothesis import given, strategies as st

from closurekit import ModuleVector, groebner_basis, is_member, ring_from_text, submodule_member, syzygies
from closurekit.groebner import (buchberger_criterion, colon, colon_ideal, eliminate, intersect,
                                 normal_form, saturate)
from closurekit.harness import random_poly
from closurekit.poly import Lex, RingMismatchError

from oracles import bounded_member, monomials_up_to

QXY = ring_from_text("Q[x,y]")


def gens_of(R, *texts):
    return [R(t) for t in texts]


def test_gb_single():
    gb = groebner_basis(gens_of(QXY, "x"))
    assert gb.gens == [QXY("x")]


def test_gb_linear_elimination():
    gb = groebner_basis(gens_of(QXY, "x+y", "x-y"))
    assert set(map(str, gb.gens)) == {"x", "y"}


def test_twisted_cubic_lex():
    R = ring_from_text("Q[x,y,z]")
    gb = groebner_basis(gens_of(R, "y-x^2", "z-x^3"), Lex())
    assert buchberger_criterion(gb)
    target = R("z^2-y^3")
    assert any(g == target or g == -target for g in gb.gens)


def test_zero_generators_dropped():
    gb = groebner_basis([QXY.zero(), QXY("x")])
    assert len(gb) == 1


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatchError):
        groebner_basis([QXY("x"), ring_from_text("Q[x,z]")("x")])


def test_determinism():
    gens = gens_of(QXY, "x^2*y - y^3 + 1", "x*y^2 - x", "x^3 - 2*y")
    a = groebner_basis(gens)
    b = groebner_basis(list(gens))
    assert [str(g) for g in a.gens] == [str(g) for g in b.gens]


def test_reduced_invariants():
    R = ring_from_text("Q[x,y,z]")
    gb = groebner_basis(gens_of(R, "x^2 + y*z", "x*y - z^2", "y^3 - x*z"))
    leads = [g.leading_term(gb.order) for g in gb.gens]
    assert all(c == 1 for _, c in leads)
    for i, (a, _) in enumerate(leads):
        for j, (b, _) in enumerate(leads):
            if i != j:
                assert not all(x <= y for x, y in zip(a, b))


def test_normal_forms():
    gb = groebner_basis(gens_of(QXY, "x"))
    assert normal_form(QXY("x^2"), gb).is_zero()
    gb2 = groebner_basis(gens_of(QXY, "x^2 - y", "x*y - 1"))
    assert normal_form(QXY("(x^2-y)*(x+3) + (x*y-1)*y^2"), gb2).is_zero()


def test_normal_form_idempotent_200():
    R = ring_from_text("Q[x,y,z]")
    rng = random.Random(3)
    gb = groebner_basis(gens_of(R, "x^2 - y*z", "y^2 - x + z", "x*z - 1"))
    leads = [g.leading_monomial(gb.order) for g in gb.gens]
    for _ in range(200):
        f = random_poly(R, rng, max_deg=4, max_terms=5)
        r = normal_form(f, gb)
        assert normal_form(r, gb) == r
        for e in r.terms:
            assert not any(all(a <= b for a, b in zip(L, e)) for L in leads)
        assert gb.contains(f - r)


def test_membership_witness():
    res = submodule_member(QXY("x^2+y^2"), gens_of(QXY, "x", "y"))
    assert res.member
    assert res.coefficients[0] * QXY("x") + res.coefficients[1] * QXY("y") == QXY("x^2+y^2")
    assert [str(c) for c in res.coefficients] == ["x", "y"]


def test_unit_not_member():
    assert not is_member(QXY("1"), gens_of(QXY, "x", "y"))


def test_elimination_keep():
    R = ring_from_text("Q[x,y,z]")
    out = eliminate(gens_of(R, "y-x^2", "z-x^3"), ["y", "z"])
    assert out and all(not (g.variables_used() & {0}) for g in out)
    assert is_member(R("z^2-y^3"), out)


def test_colon_examples():
    R = QXY
    assert groebner_basis(colon(gens_of(R, "x^2"), R("x"))) == groebner_basis(gens_of(R, "x"))
    sat = saturate(gens_of(R, "x^2*y"), R("y"))
    assert groebner_basis(sat.generators, ring=R) == groebner_basis(gens_of(R, "x^2"))
    assert sat.exponent == 1
    assert groebner_basis(intersect(gens_of(R, "x"), gens_of(R, "y"))) == groebner_basis(gens_of(R, "x*y"))


def test_colon_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        colon(gens_of(QXY, "x"), QXY.zero())


seeds = st.integers(0, 10**9)


@given(seeds)
def test_colon_property(seed):
    rng = random.Random(seed)
    R = QXY
    I = [random_poly(R, rng, max_deg=3, max_terms=2) for _ in range(2)]
    f = random_poly(R, rng, max_deg=2, max_terms=2)
    if f.is_zero():
        return
    C = colon(I, f)
    gbI = groebner_basis(I, ring=R)
    assert all(gbI.contains(f * c) for c in C)
    assert all(groebner_basis(C, ring=R).contains(g) for g in I)


@given(seeds)
def test_saturation_stable(seed):
    rng = random.Random(seed)
    R = QXY
    I = [random_poly(R, rng, max_deg=3, max_terms=2) for _ in range(2)]
    f = R.var(rng.randrange(2))
    sat = saturate(I, f)
    once_more = colon(sat.generators, f) if sat.generators else []
    assert groebner_basis(once_more, ring=R) == groebner_basis(sat.generators, ring=R)


def test_colon_ideal_matches_intersection():
    R = QXY
    I = gens_of(R, "x^2*y", "x*y^3")
    C = colon_ideal(I, gens_of(R, "x", "y"))
    gbI = groebner_basis(I)
    for c in C:
        assert gbI.contains(c * R("x")) and gbI.contains(c * R("y"))


def test_koszul_syzygy():
    vecs = [ModuleVector([QXY("x")]), ModuleVector([QXY("y")])]
    syz = syzygies(vecs)
    assert len(syz) == 1
    s = syz[0]
    assert s == ModuleVector([QXY("y"), QXY("-x")]) or s == ModuleVector([QXY("-y"), QXY("x")])


def test_identity_columns_no_syzygies():
    cols = [ModuleVector.unit(QXY, 2, 0), ModuleVector.unit(QXY, 2, 1)]
    assert syzygies(cols) == []


@given(seeds)
def test_syzygies_annihilate(seed):
    rng = random.Random(seed)
    R = ring_from_text("F(3)[x,y,z]")
    cols = [ModuleVector([random_poly(R, rng, max_deg=2), random_poly(R, rng, max_deg=2)], R)
            for _ in range(3)]
    if all(c.is_zero() for c in cols):
        return
    for s in syzygies(cols):
        total = ModuleVector.zero(R, 2)
        for c, v in zip(s, cols):
            total = total + v.scale(c)
        assert total.is_zero()


def test_module_membership_witness():
    R = QXY
    cols = [ModuleVector([R("x"), R("y")]), ModuleVector([R("y^2"), R("0")])]
    v = cols[0].scale(R("x+1")) + cols[1].scale(R("y"))
    res = submodule_member(v, cols)
    assert res.member
    total = ModuleVector.zero(R, 2)
    for c, col in zip(res.coefficients, cols):
        total = total + col.scale(c)
    assert total == v
    assert not submodule_member(ModuleVector([R("1"), R("0")]), cols).member


def test_quotient_ring_membership():
    R = ring_from_text("Q[x,y]/(x^2 - y^3)")
    assert is_member(R("x^2"), [R("y")])
    res = submodule_member(R("x^2"), [R("y")])
    assert R.reduce(res.coefficients[0] * R("y") - R("x^2")).is_zero()


# --- exhaustive membership oracle ----------------------------------------

def _homogeneous(R, deg):
    p = R.characteristic
    monos = [e for e in monomials_up_to(R.nvars, deg) if sum(e) == deg]
    for coefs in itertools.product(range(p), repeat=len(monos)):
        if any(coefs):
            yield R.from_terms({m: c for m, c in zip(monos, coefs) if c})


def test_exhaustive_homogeneous_oracle_f2():
    """Every ideal of one or two forms of degree <= 2 in F_2[x,y]; all targets of degree 2,3.

    For homogeneous data the degree-bounded system is exact, so both answers must agree.
    """
    R = ring_from_text("F(2)[x,y]")
    forms = list(_homogeneous(R, 1)) + list(_homogeneous(R, 2))
    targets = list(_homogeneous(R, 2)) + list(_homogeneous(R, 3))
    ideals = [[g] for g in forms] + [list(c) for c in itertools.combinations(forms, 2)]
    checked = 0
    for I in ideals:
        gb = groebner_basis(I, ring=R)
        for f in targets:
            assert gb.contains(f) == bounded_member(f, I, f.degree()), (I, f)
            checked += 1
    assert checked == len(ideals) * len(targets)


def test_random_oracle_f3_three_vars():
    R = ring_from_text("F(3)[x,y,z]")
    rng = random.Random(5)
    for _ in range(60):
        I = [random_poly(R, rng, max_deg=2, max_terms=3) for _ in range(rng.randint(1, 3))]
        I = [g for g in I if not g.is_zero()]
        if not I:
            continue
        if rng.random() < 0.5:
            f = sum((g * random_poly(R, rng, max_deg=2, max_terms=2) for g in I), R.zero())
        else:
            f = random_poly(R, rng, max_deg=4, max_terms=3)
        gb = groebner_basis(I, ring=R)
        if bounded_member(f, I, 4):
            assert gb.contains(f)
        if gb.contains(f):
            w = submodule_member(f, I)
            bound = max([(c * g).degree() for c, g in zip(w.coefficients, I) if c] + [f.degree()])
            assert bounded_member(f, I, bound)
