import json
import random

import pytest
from hypothesis import given, strategies as st

from closurekit.cech import (CechComplex, CollapsePreconditionError, ComplexConditionError, FaceData,
                             cohomology_dims, collapse_check, constant_faces, from_faces, rank,
                             two_axes_faces)
from closurekit.poly import GF, QQ

from oracles import _reduce_rows


def test_two_axes():
    C = from_faces(two_axes_faces())
    h = cohomology_dims(C)
    assert h[0] == 0 and h[1] == 1


def test_zero_complex():
    C = CechComplex("Q", [2, 3, 1], [[[0, 0]] * 3, [[0, 0, 0]]])
    assert cohomology_dims(C) == [2, 3, 1]


def test_identity_complex_exact():
    C = CechComplex("F(5)", [0, 2, 2], [[[], []], [[1, 0], [0, 1]]])
    assert cohomology_dims(C) == [0, 0, 0]


def test_equal_faces_zero_at_odd_alternation():
    C = from_faces(constant_faces("Q", 2, 3))
    assert all(x == 0 for row in C.differentials[0] for x in row)
    assert C.differentials[1] == [[1, 0], [0, 1]]


def test_inconsistent_faces():
    bad = FaceData("Q", [1, 1, 1], [[[[1]], [[0]]], [[[1]], [[0]], [[0]]]])
    with pytest.raises(ComplexConditionError):
        from_faces(bad)


def test_collapse():
    assert collapse_check(constant_faces("Q", 2, 4))
    assert collapse_check(constant_faces("F(3)", 2, 5, [[1, 1], [0, 1]]))
    with pytest.raises(CollapsePreconditionError):
        collapse_check(FaceData("Q", [1, 1], [[[[1]], [[2]]]]))
    with pytest.raises(CollapsePreconditionError):
        collapse_check(FaceData("Q", [1, 1], [[[[0]], [[0]]]]))


def test_collapse_cohomology_pattern():
    F = constant_faces("Q", 3, 4)
    assert collapse_check(F)
    h = cohomology_dims(from_faces(F))
    assert h[0] == 3 and all(x == 0 for x in h[1:-1])


def test_json_forms():
    C = CechComplex.from_json(json.dumps({"field": "F(2)", "dims": [1, 1], "differentials": [[[1]]]}))
    assert cohomology_dims(C) == [0, 0]
    d = {"field": "Q", "dims": [0, 2, 6], "faces": two_axes_faces().faces}
    assert cohomology_dims(CechComplex.from_json(d))[1] == 1


def _random_complex(rng, K):
    """Random complex built as d_k = P_{k+1} E_k P_k^{-1}-style products that compose to zero."""
    n = rng.randint(1, 4)
    dims = [rng.randint(0, 3) for _ in range(n + 1)]
    diffs = []
    prev = None
    for k in range(n):
        rows, cols = dims[k + 1], dims[k]
        # choose d_k with d_k * d_{k-1} = 0 by zeroing columns spanned by the image of d_{k-1}
        D = [[K.convert(rng.randint(-2, 2)) for _ in range(cols)] for _ in range(rows)]
        if prev is not None and cols:
            img = [list(col) for col in zip(*prev)]  # columns of prev
            D = _kill_image(K, D, img, rows, cols)
        diffs.append(D)
        prev = D
    return CechComplex(K, dims, diffs)


def _kill_image(K, D, img, rows, cols):
    # project rows of D onto the orthogonal complement of span(img) (over the field, w.r.t. d * v = 0)
    basis = []
    for v in img:
        v = list(v)
        for b, piv in basis:
            if v[piv]:
                c = K.div(v[piv], b[piv])
                v = [K.sub(x, K.mul(c, y)) for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is not None:
            basis.append((v, piv))
    out = []
    for row in D:
        row = list(row)
        for b, piv in basis:
            s = K.zero
            for x, y in zip(row, b):
                s = K.add(s, K.mul(x, y))
            if s:
                c = K.div(s, b[piv])
                row[piv] = K.sub(row[piv], c)
        out.append(row)
    return out


@pytest.mark.parametrize("K", [QQ, GF(2), GF(7)], ids=["Q", "F2", "F7"])
@given(st.integers(0, 10**9))
def test_euler_characteristic(K, seed):
    try:
        C = _random_complex(random.Random(seed), K)
    except ComplexConditionError:
        return
    h = cohomology_dims(C)
    assert all(x >= 0 for x in h)
    assert sum((-1) ** k * x for k, x in enumerate(h)) == sum((-1) ** k * d for k, d in enumerate(C.dims))


def test_rank_matches_oracle():
    # p <= 256 goes through the table kernel, larger p through plain elimination
    rng = random.Random(4)
    for p in (3, 257, 65537):
        K = GF(p)
        for _ in range(30):
            r, c = rng.randint(1, 5), rng.randint(1, 5)
            A = [[rng.randrange(p) if rng.random() < 0.6 else 0 for _ in range(c)] for _ in range(r)]
            rows = [{j: x for j, x in enumerate(row) if x} for row in A]
            assert rank(K, A, r, c) == len(_reduce_rows(rows, p))
