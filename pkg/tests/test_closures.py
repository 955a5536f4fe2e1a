import json
import random

import pytest

from closurekit import (FPModule, Ideal, ModuleVector, SearchBounds, SubmoduleData, closure_member,
                        frobenius_closure_member, integral_closure_member, radical_closure_member,
                        ratliff_rush_member, ring_from_text, verify_certificate)
from closurekit.closures import (ClosureCertificate, NotFiniteError, compatible_certificate,
                                 compatible_element, delta_closure_member, identity_member,
                                 plus_witness_check, ratliff_rush_closure, support_closure,
                                 support_closure_member, symbolic_power)
from closurekit.groebner import is_member
from closurekit.harness import random_poly
from closurekit.ideals import CharacteristicError, ideal_equal, ideal_power

QXY = ring_from_text("Q[x,y]")
FERMAT5 = ring_from_text("F(5)[z,w,v]/(z^3+w^3+v^3)")


def I_(R, text):
    return Ideal.parse(R, text)


def radical_module_data():
    R = ring_from_text("Q[z,w]")
    N = [ModuleVector([R("z"), R("w")]), ModuleVector([R("z^2*w"), R("z")])]
    return SubmoduleData(FPModule.free(R, 2), N, [R("z*(1-w^2)"), R("0")])


def roundtrip(cert):
    again = ClosureCertificate.from_json(cert.to_json())
    assert again.to_dict() == json.loads(cert.to_json())
    assert verify_certificate(cert.to_json())
    return again


# --- radical --------------------------------------------------------------

def test_radical_module_example():
    S = radical_module_data()
    c = radical_closure_member(S)
    assert c.verdict == "member" and "fitting" in c.witness
    roundtrip(c)
    assert identity_member(S).verdict == "not_member"


def test_radical_zero_and_unit():
    R = ring_from_text("Q[x]")
    zero = SubmoduleData(FPModule.free(R, 2), [ModuleVector([R("x"), R("1")])], [R("0"), R("0")])
    assert radical_closure_member(zero).verdict == "member"
    c = radical_closure_member(SubmoduleData.ideal(I_(R, "x"), "1"))
    assert c.verdict == "not_member"


def test_radical_ideal_certificate():
    c = radical_closure_member((I_(QXY, "x^2*y, x*y^2"), QXY("x*y")))
    assert c.verdict == "member" and c.witness["exponent"] == 2
    roundtrip(c)


# --- Frobenius ------------------------------------------------------------

def test_frobenius_fermat_member_e1():
    c = frobenius_closure_member((I_(FERMAT5, "z, w"), FERMAT5("v^2")))
    assert c.verdict == "member" and c.witness["level"] == 1 and c.witness["q"] == 5
    roundtrip(c)


def test_frobenius_fermat_not_found_p7():
    R = ring_from_text("F(7)[z,w,v]/(z^3+w^3+v^3)")
    c = frobenius_closure_member((I_(R, "z, w"), R("v^2")), SearchBounds(e_max=3))
    assert c.verdict == "not_found_within_bound" and c.member is None


def test_frobenius_in_ideal_level0():
    c = frobenius_closure_member((I_(FERMAT5, "z, w"), FERMAT5("z*w + w^2")))
    assert c.witness["level"] == 0


def test_frobenius_char0():
    with pytest.raises(CharacteristicError):
        frobenius_closure_member((I_(QXY, "x"), QXY("y")))


def test_frobenius_purity_probe():
    R = ring_from_text("F(3)[x,y]")
    rng = random.Random(9)
    for _ in range(30):
        I = Ideal(R, [random_poly(R, rng, max_deg=2) for _ in range(2)])
        f = random_poly(R, rng, max_deg=2)
        c = frobenius_closure_member((I, f), SearchBounds(e_max=1))
        if c.verdict == "member":
            assert I.contains(f)


# --- Ratliff-Rush and Delta -------------------------------------------------

RR_I = "x^4, x^3*y, x*y^3, y^4"


def test_ratliff_rush_witness():
    I = I_(QXY, RR_I)
    c = ratliff_rush_member(I, "x^2*y^2")
    assert c.verdict == "member" and c.witness["level"] == 1
    assert not I.contains(QXY("x^2*y^2"))
    roundtrip(c)


def test_ratliff_rush_level0_and_domain():
    I = I_(QXY, "x")
    assert ratliff_rush_member(I, "x*y").witness["level"] == 0
    assert ideal_equal(ratliff_rush_closure(I), I)
    with pytest.raises(ValueError):
        ratliff_rush_member(Ideal(QXY, []), "x")


def test_ratliff_rush_closure_contains_element():
    rr = ratliff_rush_closure(I_(QXY, RR_I))
    assert rr.contains(QXY("x^2*y^2"))


def test_delta_closure():
    I = I_(QXY, RR_I)
    c = delta_closure_member(I, "x^2*y^2", [I])
    assert c.verdict == "member" and c.witness["factors"] == [0]
    c = delta_closure_member(I, "x^2*y^2", [I_(QXY, "x, y")])
    assert c.verdict == "member" and len(c.witness["factors"]) <= 2
    roundtrip(c)
    c = delta_closure_member(I, "x^4 + y^4", [I_(QXY, "x, y")])
    assert c.witness["factors"] == []
    with pytest.raises(ValueError):
        delta_closure_member(I, "x", [Ideal(QXY, [])])


# --- integral closure -------------------------------------------------------

def test_integral_examples():
    R = ring_from_text("Q[z,w]")
    c = integral_closure_member(I_(R, "z^2, w^2"), "z*w")
    assert c.verdict == "member" and c.witness["reduction_degree"] == 1
    roundtrip(c)
    c = integral_closure_member(I_(R, "z, w"), "1", SearchBounds(r_max=10))
    assert c.verdict == "not_found_within_bound"
    assert integral_closure_member(I_(R, "z, w"), "z").witness["reduction_degree"] == 0


# --- support closure ----------------------------------------------------------

def test_support_closure_examples():
    R = QXY
    S = SubmoduleData.ideal(I_(R, "x^2*y"), "x^2")
    sc = support_closure(S, I_(R, "y"))
    assert sc.exponent == 1
    assert ideal_equal(Ideal(R, [v[0] for v in sc.generators]), I_(R, "x^2"))
    c = support_closure_member(S, I_(R, "y"))
    assert c.verdict == "member" and c.witness["exponent"] == 1
    roundtrip(c)


def test_support_nilpotent():
    R = QXY
    sq = ideal_power(I_(R, "x, y"), 2)
    M = FPModule(R, 1, [ModuleVector([g]) for g in sq.gens])
    sc = support_closure(SubmoduleData(M, [], [R("1")]), I_(R, "x, y"))
    assert sc.exponent == 2
    assert Ideal(R, [v[0] for v in sc.generators] + list(sq.gens)).contains(R("1"))


def test_support_unit_J():
    R = QXY
    S = SubmoduleData.ideal(I_(R, "x*y"), "x")
    sc = support_closure(S, I_(R, "1"))
    assert ideal_equal(Ideal(R, [v[0] for v in sc.generators]), I_(R, "x*y"))
    assert support_closure_member(S, I_(R, "1")).verdict == "not_member"


# --- symbolic powers ------------------------------------------------------------

def test_symbolic_power_cone():
    R = ring_from_text("Q[x,y,z]/(x*z - y^2)")
    P = I_(R, "x, y")
    sp = symbolic_power(P, 2, "z")
    assert sp.ideal.contains(R("x"))
    assert not ideal_power(P, 2).contains(R("x"))


def test_symbolic_power_trivial():
    R = ring_from_text("Q[x,y,z]/(x*z - y^2)")
    P = I_(R, "x, y")
    assert ideal_equal(symbolic_power(P, 1, "z").ideal, P)
    assert ideal_equal(symbolic_power(I_(QXY, "x"), 3, "1").ideal, I_(QXY, "x^3"))
    with pytest.raises(ValueError):
        symbolic_power(P, 2, "y")


# --- plus witnesses and compatible elements ---------------------------------------

def test_plus_witness_member():
    R = ring_from_text("Q[x,y]/(x^2 - y^3)")
    S = ring_from_text("Q[x,y,t]/(x^2 - y^3, t^2 - y, t^3 - x)")
    c = plus_witness_check(R, S, I_(R, "y"), "x")
    assert c.verdict == "member"
    roundtrip(c)


def test_plus_witness_trivial_extension():
    c = plus_witness_check(QXY, QXY, I_(QXY, "x"), "x*y")
    assert c.verdict == "member"


def test_plus_witness_not_finite():
    R = ring_from_text("Q[x,y]/(x^2 - y^3)")
    S = ring_from_text("Q[x,y,t]/(x^2 - y^3, t*x - 1)")
    assert plus_witness_check(R, S, I_(R, "y"), "x").verdict == "witness_not_finite"


def test_plus_witness_not_cover():
    S = ring_from_text("Q[x,y,t]/(t^2 - t, x)")
    assert plus_witness_check(QXY, S, I_(QXY, "y"), "x").verdict == "witness_not_cover"


def test_compatible_cusp():
    R = ring_from_text("Q[x,y]/(x^2 - y^3)")
    S = ring_from_text("Q[x,y,t]/(x^2 - y^3, t^2 - y, t^3 - x)")
    c = compatible_element(R, S, "t")
    assert c.compatible and c.exponent == 3
    assert verify_certificate(compatible_certificate(R, S, "t"))
    assert compatible_element(R, S, "x + y").exponent == 1


def test_not_compatible():
    R = ring_from_text("Q[u]")
    S = ring_from_text("Q[u,t]/(u - t^2)")
    assert not compatible_element(R, S, "t").compatible
    with pytest.raises(NotFiniteError):
        compatible_element(R, ring_from_text("Q[u,t]/(u*t - 1)"), "t")


# --- dispatcher, tower, verification ------------------------------------------------

def _tower(I, f):
    frob = frobenius_closure_member((I, f), SearchBounds(e_max=2))
    integ = integral_closure_member(I, f, SearchBounds(r_max=4))
    rad = radical_closure_member((I, f))
    if I.contains(f):
        assert frob.member
    if frob.member:
        assert integ.member
    if integ.member:
        assert rad.member
    assert frob.verdict != "not_member" and integ.verdict != "not_member"
    return frob.member, integ.member, rad.member


def test_closure_tower():
    R = ring_from_text("F(2)[x,y,z]/(x^3+y^3+z^3)")
    # p = 2 mod 3: z^2 is in the Frobenius closure of (x, y) but not in (x, y)
    assert _tower(I_(R, "x, y"), R("z^2")) == (True, True, True)
    assert not I_(R, "x, y").contains(R("z^2"))
    rng = random.Random(13)
    seen = set()
    for _ in range(30):
        I = Ideal(R, [R.monomial([rng.randint(0, 2) for _ in range(3)]) for _ in range(2)])
        f = R.monomial([rng.randint(0, 2) for _ in range(3)])
        seen.add(_tower(I, f))
    assert len(seen) >= 3


def test_dispatcher():
    I = I_(QXY, "x^2")
    for op in ("identity", "radical", "integral", "ratliff_rush"):
        assert closure_member(op, (I, QXY("x^2*y"))).member
    assert closure_member("delta", (I, QXY("x^2")), delta=[I_(QXY, "x")]).member
    assert closure_member("support", SubmoduleData.ideal(I_(QXY, "x^2*y"), "x^2"), J=I_(QXY, "y")).member
    with pytest.raises(ValueError):
        closure_member("tight", (I, QXY("x")))


def test_tampered_certificate_rejected():
    c = integral_closure_member(I_(ring_from_text("Q[z,w]"), "z^2, w^2"), "z*w")
    d = c.to_dict()
    d["witness"]["coefficients"] = ["1"] + d["witness"]["coefficients"][1:]
    assert not verify_certificate(d)
    d = radical_closure_member((I_(QXY, "x^2"), QXY("x"))).to_dict()
    d["witness"]["exponent"] = 1
    assert not verify_certificate(d)


def test_bounds_validation():
    with pytest.raises(ValueError):
        SearchBounds(e_max=-1)
