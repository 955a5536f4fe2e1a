"""Forcing algebras ``B = R[t_1..t_nu]/(D*t - m)`` and their two tests."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import ModuleVector, groebner_basis, submodule_member
from .ideals import (FPModule, Ideal, SubmoduleData, minors_or_zero,
                     quotient_presentation, radical_member)
from .poly import Poly, PolyRing


@dataclass
class ForcingAlgebra:
    base: PolyRing
    D: FPModule
    target: ModuleVector
    ring: PolyRing = field(repr=False)
    sign: int = -1

    @property
    def nu(self) -> int:
        return len(self.D.columns)

    @property
    def mu(self) -> int:
        return self.D.rank

    @property
    def fresh_variables(self) -> tuple:
        return self.ring.variables[self.base.nvars:]

    def forcing_relations(self) -> list[Poly]:
        """The ``mu`` affine-linear relations ``sum_j D_ij t_j - m_i``."""
        return forcing_equations(self.base, self.D, self.target, self.ring, self.sign)

    def base_change(self, target: PolyRing, images) -> "ForcingAlgebra":
        """``B ⊗_R S`` along the ring map sending base variable ``i`` to ``images[i]``."""
        cols = [c.map(lambda x: x.substitute(images, target)) for c in self.D.columns]
        tgt = ModuleVector([x.substitute(images, target) for x in self.target], target)
        return _build(target, FPModule(target, self.mu, cols), tgt, self.sign)


def forcing_equations(base: PolyRing, D: FPModule, m: ModuleVector, ring: PolyRing,
                      sign: int = -1) -> list[Poly]:
    """``sum_j D_ij t_j + sign * m_i``; ``sign = -1`` is ``D t - m``, ``+1`` gives ``f_1 t_1 + ... + f``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = base.nvars
    ts = [ring.var(n + j) for j in range(len(D.columns))]
    out = []
    for i in range(D.rank):
        acc = base.embed(m[i], ring) if sign > 0 else -base.embed(m[i], ring)
        for j, col in enumerate(D.columns):
            if col[i]:
                acc = acc + base.embed(col[i], ring) * ts[j]
        out.append(acc)
    return out


def _build(base: PolyRing, D: FPModule, m: ModuleVector, sign: int = -1) -> ForcingAlgebra:
    names = [f"t{j + 1}" for j in range(len(D.columns))]
    clash = set(names) & set(base.variables)
    if clash:
        raise ValueError(f"forcing variables collide with ring variables: {sorted(clash)}")
    if names:
        ext = base.extend(names)
        rels = forcing_equations(base, D, m, ext, sign)
        ring = ext.quotient([r for r in rels if r])
    else:
        # no columns: B = R/(m_1, ..., m_mu)
        ring = base.quotient([x for x in m if x])
    return ForcingAlgebra(base, D, m, ring, sign)


def build_forcing(data: SubmoduleData, sign: int = -1) -> ForcingAlgebra:
    """Forcing algebra of ``(M, N, m)`` after passing to ``(M/N, 0, m)``.

    The relations are ``D t - m`` by default; ``sign=+1`` uses ``D t + m``
    (so for an ideal, ``f_1 t_1 + ... + f_n t_n + f``).  The two algebras are
    isomorphic via ``t -> -t``.
    """
    Mbar, m = quotient_presentation(data)
    return _build(data.ring, Mbar, m, sign)


def relation_ideal_equal(A: PolyRing, B: PolyRing) -> bool:
    if A.variables != B.variables or A.field != B.field:
        return False
    amb = A.ambient
    return groebner_basis([Poly(amb, r) for r in A.relation_terms], ring=amb) == \
        groebner_basis([Poly(amb, r) for r in B.relation_terms], ring=amb)


@dataclass
class Section:
    exists: bool
    values: list | None = None

    def __bool__(self):
        return self.exists


def has_ring_section(F: ForcingAlgebra) -> Section:
    """A ring section ``B -> R`` exists iff ``m`` lies in the column span of ``D``."""
    if not F.D.columns:
        ok = all(F.base.reduce(x).is_zero() for x in F.target)
        return Section(ok, [] if ok else None)
    res = submodule_member(F.target, F.D.columns)
    if not res:
        return Section(False)
    values = res.coefficients if F.sign < 0 else [-c for c in res.coefficients]
    return Section(True, values)


@dataclass
class FittingCertificate:
    """Per minor size ``k``: for every generator of ``I_k([D|m])`` a radical exponent over ``I_k(D)``."""

    surjective: bool
    levels: list = field(default_factory=list)
    failed: tuple | None = None


def is_spec_surjective(F: ForcingAlgebra) -> FittingCertificate:
    """``Spec B -> Spec R`` is surjective iff ``I_k([D|m]) ⊆ rad I_k(D)`` for every ``k``.

    At a point the fiber is a linear system, solvable exactly when adjoining
    ``m`` does not raise the rank of ``D``.
    """
    R = F.base
    mu, nu = F.mu, F.nu
    D = F.D.matrix
    Dm = [list(D[i]) + [F.target[i]] for i in range(mu)] if nu else [[F.target[i]] for i in range(mu)]
    levels = []
    for k in range(1, mu + 1):
        if k > nu + 1:
            break
        big = minors_or_zero(Dm, k, R, (mu, nu + 1))
        small = minors_or_zero(D, k, R, (mu, nu)) if nu else Ideal(R, [])
        entries = []
        for g in big.gens:
            w = radical_member(small, g)
            if not w:
                return FittingCertificate(False, levels, (k, g))
            entries.append((g, w.exponent, w.witness, small))
        levels.append((k, entries))
    return FittingCertificate(True, levels)
