import json
import random

import numpy as np
import pytest

from closurekit import Ideal, ring_from_text
from closurekit.partitions import (ConstructiblePiece, EmptyPieceError, NotInRadicalError,
                                   assemble_section, canonical_radical_partition, piece_member,
                                   restrict_global, verify_partition)
from closurekit.points import FiniteField, partition_coverage, piece_mask, variety

from gen import radical_instance

QXY = ring_from_text("Q[x,y]")


def test_principal_partition():
    res = canonical_radical_partition(Ideal.parse(QXY, "x"), "x")
    assert [(p.cut, str(p.multiplier)) for p in res.pieces] == [([], "x"), ([QXY("x")], "1")]
    assert [c["kind"] for c in res.certificates] == ["member", "nilpotent"]
    assert verify_partition(res)


def test_two_monomials_partition():
    res = canonical_radical_partition(Ideal.parse(QXY, "x^2*y, x*y^2"), "x*y")
    # the middle piece (R/(x^2 y))_{x y^2} is empty and dropped with a note
    assert len(res.pieces) == 2 and len(res.notes) == 1
    assert verify_partition(json.loads(res.to_json()))


def test_partition_requires_radical():
    with pytest.raises(NotInRadicalError):
        canonical_radical_partition(Ideal.parse(QXY, "x^2*y, x*y^2"), "x")


def test_tampered_partition():
    d = canonical_radical_partition(Ideal.parse(QXY, "x^2, y^3"), "x + y").to_dict()
    d["pieces"][-1]["certificate"]["exponent"] = 1
    assert not verify_partition(d)


def test_empty_piece_rejected():
    with pytest.raises(EmptyPieceError):
        ConstructiblePiece(QXY, [QXY("x^2")], QXY("x"))


def test_piece_member_examples():
    D = ConstructiblePiece(QXY, [], QXY("x"))
    pm = piece_member(D, Ideal.parse(QXY, "x"), "1")
    assert pm.member and pm.exponent == 1
    V = ConstructiblePiece(QXY, [QXY("x")], QXY("1"))
    assert piece_member(V, Ideal(QXY, []), "x").member
    assert not piece_member(D, Ideal.parse(QXY, "y"), "1").member


def test_piece_member_point_oracle():
    # f in J on the piece implies f vanishes wherever J does on the piece
    R = ring_from_text("F(3)[x,y]")
    F = FiniteField(3, 2)
    pts = variety(R, F)
    rng = random.Random(1)
    from closurekit.harness import random_poly
    from closurekit.points import evaluate
    for _ in range(20):
        g = random_poly(R, rng, max_deg=1)
        cut = [random_poly(R, rng, max_deg=2)] if rng.random() < 0.5 else []
        try:
            piece = ConstructiblePiece(R, cut, g)
        except EmptyPieceError:
            continue
        J = Ideal(R, [random_poly(R, rng, max_deg=2)])
        f = random_poly(R, rng, max_deg=2)
        if piece_member(piece, J, f).member:
            mask = piece_mask(piece, pts, F) & (evaluate(J.gens[0], pts, F) == 0)
            assert np.all(evaluate(f, pts, F)[mask] == 0)


def test_sections():
    Qx = ring_from_text("Q[x]")
    D = ConstructiblePiece(Qx, [], Qx("x"))
    V = ConstructiblePiece(Qx, [Qx("x")], Qx("1"))
    sec = assemble_section([D, V], ["(1)/(x)^1", "3"])
    assert sec.values[0][1] == 1 and not sec.global_restriction
    out = sec.to_list()
    assert out[0]["value"] == "(1)/(x)^1" and out[1]["cut"] == ["x"]
    assert assemble_section([D, V], ["0", "0"]).global_restriction
    assert restrict_global([D, V], "x + 1").global_restriction
    with pytest.raises(ValueError):
        assemble_section([D, V], ["1"])
    with pytest.raises(ValueError):
        assemble_section([D, V], ["1/(x+1)", "0"])


@pytest.mark.parametrize("ring,p", [("F(3)[x,y,z]", 3), ("Q[x,y,z]", 5)])
def test_random_partitions_cover(ring, p):
    R = ring_from_text(ring)
    rng = random.Random(17)
    fields = [FiniteField(p, 1), FiniteField(p, 2)] if R.characteristic else [FiniteField(p, 1)]
    for _ in range(10):
        gens, f = radical_instance(R, rng)
        res = canonical_radical_partition(Ideal(R, gens), f)
        assert verify_partition(res)
        for F in fields:
            # every point lies in exactly one piece (empty pieces only drop points-free sets)
            assert np.all(partition_coverage(res.pieces, R, F) == 1)
