"""Exactness of complexes of free modules: minor criteria and phantom exactness."""

from __future__ import annotations

from dataclasses import dataclass, field

from .closures import MEMBER, NOT_FOUND, SearchBounds, closure_member
from .groebner import ModuleVector, groebner_basis, submodule_member, syzygies
from .ideals import (FPModule, Ideal, Matrix, SubmoduleData, matmul, matrix_columns, minors_or_zero,
                     radical_member)
from .poly import PolyRing
from .text import print_canonical


class ComplexError(ValueError):
    pass


class RankConditionError(ValueError):
    pass


def _shape(A: Matrix, shape=None) -> tuple[int, int]:
    if shape is not None:
        return shape
    if not A:
        raise ComplexError("empty matrix needs an explicit shape")
    return len(A), len(A[0])


def _is_zero_matrix(A: Matrix, ring: PolyRing) -> bool:
    return all(ring.reduce(x).is_zero() for row in A for x in row)


@dataclass
class FreeComplex:
    """``F_m -> ... -> F_1 -> F_0 -> 0`` with ``maps[k]: F_{k+1} -> F_k`` as row-major matrices."""

    ring: PolyRing
    maps: list

    def __post_init__(self):
        R = self.ring
        self.maps = [[[R(x) for x in row] for row in A] for A in self.maps]
        if not self.maps:
            raise ComplexError("a complex needs at least one map")
        for A in self.maps:
            if not A or not A[0] or any(len(r) != len(A[0]) for r in A):
                raise ComplexError("maps must be nonempty rectangular matrices")
        for k in range(1, len(self.maps)):
            lo, hi = self.maps[k - 1], self.maps[k]
            if len(lo[0]) != len(hi):
                raise ComplexError(f"maps {k - 1} and {k} are not composable")
            if not _is_zero_matrix(matmul(lo, hi, R), R):
                raise ComplexError(f"maps {k - 1} and {k} do not compose to zero")

    @property
    def ranks(self) -> list[int]:
        """Free ranks ``f_0, ..., f_m``."""
        return [len(self.maps[0])] + [len(A[0]) for A in self.maps]


# ---------------------------------------------------------------------------
# minor criteria


@dataclass
class PairCertificate:
    exact: bool
    generators: list = field(default_factory=list)  # (i, j, product)
    coefficients: list | None = None
    relation_coefficients: list | None = None

    def __bool__(self):
        return self.exact

    def to_dict(self) -> dict:
        d = {"exact": self.exact,
             "generators": [{"i": i, "j": j, "product": print_canonical(g)} for i, j, g in self.generators]}
        if self.coefficients is not None:
            d["coefficients"] = [print_canonical(c) for c in self.coefficients]
            d["relation_coefficients"] = [print_canonical(c) for c in self.relation_coefficients]
        return d


def minor_product_ideal(alpha: Matrix, beta: Matrix, ring: PolyRing, alpha_shape=None, beta_shape=None):
    """``sum_{i+j=b} J_i(alpha) J_j(beta)`` with its labelled generators (``J_0 = (1)``)."""
    b, _a = _shape(alpha, alpha_shape)
    _c, b2 = _shape(beta, beta_shape)
    if b != b2:
        raise ComplexError(f"alpha has {b} rows but beta has {b2} columns")
    gens = []
    for i in range(b + 1):
        j = b - i
        Ji = minors_or_zero(alpha, i, ring, _shape(alpha, alpha_shape))
        Jj = minors_or_zero(beta, j, ring, _shape(beta, beta_shape))
        for g in Ji.gens:
            for h in Jj.gens:
                gh = ring.reduce(g * h)
                if gh:
                    gens.append((i, j, gh))
    return gens


def surjective_exact_pair(alpha: Matrix, beta: Matrix, ring: PolyRing, alpha_shape=None,
                          beta_shape=None) -> PairCertificate:
    """Exactness of ``R^a -> R^b -> R^c`` after every base change (minor-product criterion)."""
    if not _is_zero_matrix(matmul(beta, alpha, ring), ring):
        raise ComplexError("beta * alpha is not zero")
    gens = minor_product_ideal(alpha, beta, ring, alpha_shape, beta_shape)
    polys = [g for _, _, g in gens]
    if not polys:
        return PairCertificate(False, gens)
    mem = submodule_member(ring.one(), polys)
    if not mem:
        return PairCertificate(False, gens)
    return PairCertificate(True, gens, mem.coefficients, mem.relation_coefficients)


def matrix_rank(A: Matrix, ring: PolyRing, shape=None) -> int:
    """Largest ``k`` whose minors are not all nilpotent."""
    rows, cols = _shape(A, shape)
    zero = Ideal(ring, [])
    for k in range(min(rows, cols), 0, -1):
        J = minors_or_zero(A, k, ring, (rows, cols))
        if ring.is_quotient:
            if any(not radical_member(zero, g, witness=False) for g in J.gens):
                return k
        elif J.nonzero_gens():
            return k
    return 0


@dataclass
class ComplexCertificate:
    exact: bool
    expected_ranks: list
    failed_map: int | None = None


def surjective_exact_complex(C: FreeComplex) -> ComplexCertificate:
    """All ``J_{r_k}(maps[k]) = (1)`` where ``r_k = f_k - r_{k-1}`` (and ``r_{-1} = 0``).

    The ranks over ``R`` must match these expected values, including rank 0 for
    the implicit zero map leaving ``F_m``; otherwise :class:`RankConditionError`.
    """
    R = C.ring
    f = C.ranks
    expected = []
    prev = 0
    for k, A in enumerate(C.maps):
        r = f[k] - prev
        actual = matrix_rank(A, R)
        if r != actual:
            raise RankConditionError(f"map {k} has rank {actual}, the rank condition asks for {r}")
        expected.append(r)
        prev = r
    if f[-1] - prev != 0:
        raise RankConditionError(f"F_{len(C.maps)} has rank {f[-1]} but the last map has rank {prev}")
    for k, (A, r) in enumerate(zip(C.maps, expected)):
        J = minors_or_zero(A, r, R, _shape(A))
        if not J.gb().is_unit():
            return ComplexCertificate(False, expected, k)
    return ComplexCertificate(True, expected)


# ---------------------------------------------------------------------------
# phantom exactness


@dataclass
class PhantomResult:
    verdict: bool | None  # None: some membership ran out of search budget
    kernel: list
    certificates: list

    def __bool__(self):
        return bool(self.verdict)


def kernel_generators(beta: Matrix, ring: PolyRing, target: Matrix | None = None,
                      beta_shape=None) -> list[ModuleVector]:
    """Generators of ``ker(R^b -> R^c / im target)`` for the map given by ``beta``."""
    c, b = _shape(beta, beta_shape)
    cols = matrix_columns(beta, ring) if beta else [ModuleVector.zero(ring, c) for _ in range(b)]
    extra = matrix_columns(target, ring) if target else []
    if extra and len(extra[0]) != c:
        raise ComplexError("target presentation does not match the rows of beta")
    syz = syzygies(cols + extra)
    out = []
    for s in syz:
        v = ModuleVector(list(s)[:b], ring)
        if not v.is_zero() and v not in out:
            out.append(v)
    return out


def phantom_exact(alpha: Matrix, beta: Matrix, ring: PolyRing, closure: str = "identity",
                  bounds: SearchBounds | None = None, target: Matrix | None = None,
                  alpha_shape=None, beta_shape=None, **params) -> PhantomResult:
    """``ker beta ⊆ (im alpha)^cl`` inside ``R^b``, one closure certificate per kernel generator.

    ``target`` optionally presents the codomain of ``beta`` as ``R^c / im target``.
    """
    bounds = bounds or SearchBounds()
    b, _a = _shape(alpha, alpha_shape)
    c, b2 = _shape(beta, beta_shape)
    if b != b2:
        raise ComplexError(f"alpha has {b} rows but beta has {b2} columns")
    prod = matmul(beta, alpha, ring)
    if target:
        span = groebner_basis(matrix_columns(target, ring), ring=ring, rank=c)
        bad = any(not span.contains(v) for v in matrix_columns(prod, ring))
    else:
        bad = not _is_zero_matrix(prod, ring)
    if bad:
        raise ComplexError("beta * alpha is not zero")
    ker = kernel_generators(beta, ring, target, (c, b))
    image = matrix_columns(alpha, ring)
    certs = []
    verdict: bool | None = True
    for v in ker:
        cert = closure_member(closure, SubmoduleData(FPModule.free(ring, b), image, v), bounds, **params)
        certs.append(cert)
        if cert.verdict == MEMBER:
            continue
        if cert.verdict == NOT_FOUND:
            verdict = None if verdict else verdict
        else:
            verdict = False
    return PhantomResult(verdict, ker, certs)
