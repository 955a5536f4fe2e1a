"""Admissibility checks for closure operations on a corpus of small instances."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .closures import MEMBER, SearchBounds, closure_member, verify_certificate
from .groebner import ModuleVector
from .ideals import FPModule, SubmoduleData, quotient_presentation
from .poly import Poly, PolyRing
from .text import ring_from_text

IDEAL_ONLY = {"ratliff_rush", "integral", "delta"}
NOT_ORDER_PRESERVING = {"ratliff_rush"}


@dataclass
class HarnessConfig:
    extensivity: bool = True
    monotonicity: bool = True
    presentation: bool = True
    idempotence: bool = True

    @classmethod
    def default(cls, op: str) -> HarnessConfig:
        return cls(monotonicity=op not in NOT_ORDER_PRESERVING, presentation=op not in IDEAL_ONLY)


@dataclass
class HarnessReport:
    op: str
    instances: int = 0
    checks: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, name: str):
        self.checks[name] = self.checks.get(name, 0) + 1


def _extra_vector(S: SubmoduleData) -> ModuleVector:
    R = S.ring
    x = R.var(0)
    return ModuleVector([x] + [R.zero()] * (S.rank - 1), R)


def closure_axiom_harness(op: str, corpus, bounds: SearchBounds | None = None,
                          config: HarnessConfig | None = None, **params) -> HarnessReport:
    """Run extensivity, monotonicity, presentation independence and certificate checks.

    Monotonicity is refused for Ratliff-Rush closure, which is not order
    preserving; asking for it raises ``ValueError``.
    """
    bounds = bounds or SearchBounds()
    config = config or HarnessConfig.default(op)
    if config.monotonicity and op in NOT_ORDER_PRESERVING:
        raise ValueError(f"{op} closure is not order preserving; monotonicity is not asserted")
    rep = HarnessReport(op)
    if not config.monotonicity:
        rep.skipped.append("monotonicity: disabled by configuration")
    for idx, S in enumerate(corpus):
        if op in IDEAL_ONLY and not S.is_ideal_case():
            rep.skipped.append(f"instance {idx}: not an ideal")
            continue
        rep.instances += 1

        def verdict(data):
            return closure_member(op, data, bounds, **params)

        base = verdict(S)
        if config.extensivity:
            for j, n in enumerate(S.N):
                rep.count("extensivity")
                c = verdict(SubmoduleData(S.M, S.N, n))
                if c.verdict != MEMBER:
                    rep.violations.append(f"instance {idx}: generator {j} of N is not in its closure ({c.verdict})")
        if config.monotonicity and base.verdict == MEMBER:
            rep.count("monotonicity")
            bigger = SubmoduleData(S.M, list(S.N) + [_extra_vector(S)], S.m)
            c = verdict(bigger)
            if c.verdict != MEMBER:
                rep.violations.append(f"instance {idx}: membership lost after enlarging N ({c.verdict})")
        if config.presentation:
            rep.count("presentation")
            Mbar, m = quotient_presentation(S)
            quot = verdict(SubmoduleData(Mbar, [], m))
            lift = verdict(SubmoduleData(FPModule.free(S.ring, S.rank), S.lifted_columns(), S.m))
            if not (base.verdict == quot.verdict == lift.verdict):
                rep.violations.append(f"instance {idx}: verdict depends on presentation "
                                      f"({base.verdict}, {quot.verdict}, {lift.verdict})")
        if config.idempotence and base.verdict == MEMBER:
            rep.count("idempotence")
            if not verify_certificate(base.to_json()):
                rep.violations.append(f"instance {idx}: certificate does not re-verify")
    return rep


# ---------------------------------------------------------------------------
# random corpora


def random_poly(R: PolyRing, rng: random.Random, max_deg: int = 2, max_terms: int = 3) -> Poly:
    p = R.characteristic
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        e = [0] * R.nvars
        for _ in range(d):
            e[rng.randrange(R.nvars)] += 1
        c = rng.randint(1, p - 1) if p else rng.choice([-2, -1, 1, 2, 3])
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return R.from_terms(terms)


def random_vector(R: PolyRing, rank: int, rng: random.Random, **kw) -> ModuleVector:
    return ModuleVector([random_poly(R, rng, **kw) if rng.random() < 0.7 else R.zero() for _ in range(rank)], R)


def random_corpus(ring: PolyRing | str, count: int, seed: int = 0, max_rank: int = 2,
                  max_deg: int = 2) -> list[SubmoduleData]:
    """Small submodule instances; about half have ``m`` in the span of ``N``."""
    R = ring_from_text(ring) if isinstance(ring, str) else ring
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        mu = rng.randint(1, max_rank)
        cols = [random_vector(R, mu, rng, max_deg=max_deg) for _ in range(rng.randint(0, 1))]
        N = [random_vector(R, mu, rng, max_deg=max_deg) for _ in range(rng.randint(1, 2))]
        if rng.random() < 0.5:
            m = ModuleVector.zero(R, mu)
            for v in N:
                m = m + v.scale(random_poly(R, rng, max_deg=1))
        else:
            m = random_vector(R, mu, rng, max_deg=max_deg)
        out.append(SubmoduleData(FPModule(R, mu, cols), N, m))
    return out
