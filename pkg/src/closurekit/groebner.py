"""Buchberger's algorithm for ideals and submodules of free modules.

Internally a vector of ``R^mu`` is a dict keyed by ``(component, e_1, ..., e_n)``;
an ideal is the ``mu = 1`` case.  Module terms are ordered position over
term with component 0 highest, which is what the coefficient-tracking and
syzygy constructions below rely on.

Quotient rings ``A/rel`` are handled by one rule: computations run in the
ambient ring ``A`` with ``rel * e_i`` appended to the generators.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence, Union

from .poly import Block, GrevLex, MonomialOrder, Poly, PolyRing, RingMismatchError


class SaturationCutoffError(RuntimeError):
    def __init__(self, cutoff: int):
        super().__init__(f"saturation did not stabilize within {cutoff} colon steps")
        self.cutoff = cutoff


# ---------------------------------------------------------------------------
# module vectors


class ModuleVector:
    """Element of a free module ``R^mu``."""

    __slots__ = ("ring", "entries")

    def __init__(self, entries: Sequence[Poly], ring: PolyRing | None = None):
        entries = tuple(entries)
        if ring is None:
            if not entries:
                raise ValueError("cannot infer the ring of an empty vector")
            ring = entries[0].ring
        for x in entries:
            if x.ring != ring:
                raise RingMismatchError("vector entries live in different rings")
        self.ring = ring
        self.entries = entries

    @classmethod
    def unit(cls, ring: PolyRing, rank: int, i: int) -> ModuleVector:
        return cls([ring.one() if j == i else ring.zero() for j in range(rank)], ring)

    @classmethod
    def zero(cls, ring: PolyRing, rank: int) -> ModuleVector:
        return cls([ring.zero()] * rank, ring)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def _check(self, other):
        if len(other) != len(self) or other.ring != self.ring:
            raise RingMismatchError("incompatible module vectors")

    def __add__(self, other):
        self._check(other)
        return ModuleVector([a + b for a, b in zip(self.entries, other.entries)], self.ring)

    def __sub__(self, other):
        self._check(other)
        return ModuleVector([a - b for a, b in zip(self.entries, other.entries)], self.ring)

    def __neg__(self):
        return ModuleVector([-a for a in self.entries], self.ring)

    def scale(self, c: Poly) -> ModuleVector:
        return ModuleVector([c * a for a in self.entries], self.ring)

    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries)

    def map(self, fn) -> ModuleVector:
        return ModuleVector([fn(x) for x in self.entries])

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "ModuleVector(" + ", ".join(str(x) for x in self.entries) + ")"


Element = Union[Poly, ModuleVector]


def _to_internal(f: Element) -> dict:
    if isinstance(f, Poly):
        return {(0,) + e: c for e, c in f.terms.items()}
    out = {}
    for i, x in enumerate(f.entries):
        for e, c in x.terms.items():
            out[(i,) + e] = c
    return out


def _from_internal(d: dict, ring: PolyRing, rank: int | None) -> Element:
    if rank is None:
        return Poly(ring, {t[1:]: c for t, c in d.items()})
    comps = [dict() for _ in range(rank)]
    for t, c in d.items():
        comps[t[0]][t[1:]] = c
    return ModuleVector([Poly(ring, x) for x in comps], ring)


def relation_columns(ring: PolyRing, rank: int | None) -> list[Element]:
    """``rel_j * e_i`` for every relation and every component, component-major."""
    amb = ring.ambient
    rels = [Poly(ring, r) for r in ring.relation_terms]
    if rank is None:
        return rels
    out = []
    for i in range(rank):
        for r in rels:
            out.append(ModuleVector([r if j == i else ring.zero() for j in range(rank)], ring))
    return out


def _pshift(a: dict, s: tuple) -> dict:
    return {tuple(x + y for x, y in zip(e, s)): c for e, c in a.items()}


def _psub(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if p:
            v %= p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pmul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if p:
                v %= p
            out[e] = v
    return {e: c for e, c in out.items() if c}


# ---------------------------------------------------------------------------
# the engine


class _Engine:
    def __init__(self, ring: PolyRing, order: MonomialOrder, rank: int):
        self.ring = ring
        self.field = ring.field
        self.p = ring.field.characteristic
        self.order = order
        self.rank = rank
        self.n = ring.nvars
        self._keys: dict = {}

    # term helpers --------------------------------------------------------

    def key(self, t):
        k = self._keys.get(t)
        if k is None:
            k = (-t[0],) + self.order.key(t[1:])
            self._keys[t] = k
        return k

    def lead(self, f: dict):
        return max(f, key=self.key)

    @staticmethod
    def divides(a, b) -> bool:
        if a[0] != b[0]:
            return False
        for x, y in zip(a, b):
            if x > y:
                return False
        return True

    @staticmethod
    def lcm(a, b):
        return (a[0],) + tuple(x if x > y else y for x, y in zip(a[1:], b[1:]))

    @staticmethod
    def coprime(a, b) -> bool:
        for x, y in zip(a[1:], b[1:]):
            if x and y:
                return False
        return True

    def monic(self, f: dict, lt=None) -> dict:
        lt = lt if lt is not None else self.lead(f)
        c = f[lt]
        if c == 1:
            return f
        K = self.field
        inv = K.inv(c)
        return {t: K.mul(v, inv) for t, v in f.items()}

    # reduction -----------------------------------------------------------

    def nf(self, f: dict, basis: list, leads: list, cof: list | None = None) -> dict:
        """Full normal form of ``f`` by monic ``basis`` with lead terms ``leads``.

        With ``cof`` (one dict per basis element) the quotients are accumulated,
        so that ``f = rem + sum cof[r] * basis[r]``.
        """
        if not f or not basis:
            return dict(f)
        p = self.p
        f = dict(f)
        key = self.key
        heap = [tuple(-x for x in key(t)) + (t,) for t in f]
        heapq.heapify(heap)
        rem = {}
        divides = self.divides
        while heap:
            t = heapq.heappop(heap)[-1]
            c = f.get(t)
            if c is None:
                continue
            reducer = -1
            for idx, L in enumerate(leads):
                if divides(L, t):
                    reducer = idx
                    break
            del f[t]
            if reducer < 0:
                rem[t] = c
                continue
            g = basis[reducer]
            L = leads[reducer]
            shift = [x - y for x, y in zip(t[1:], L[1:])]
            if cof is not None:
                q = cof[reducer]
                st = tuple(shift)
                v = q.get(st, 0) + c
                if p:
                    v %= p
                if v:
                    q[st] = v
                else:
                    q.pop(st, None)
            for gt, gc in g.items():
                if gt == L:
                    continue
                nt = (gt[0],) + tuple(a + b for a, b in zip(gt[1:], shift))
                old = f.get(nt)
                if p:
                    v = ((0 if old is None else old) - c * gc) % p
                else:
                    v = (0 if old is None else old) - c * gc
                if v:
                    f[nt] = v
                    if old is None:
                        heapq.heappush(heap, tuple(-x for x in key(nt)) + (nt,))
                elif old is not None:
                    del f[nt]
        return rem

    def spoly(self, f: dict, Lf, g: dict, Lg) -> dict:
        lcm = self.lcm(Lf, Lg)
        sf = [x - y for x, y in zip(lcm[1:], Lf[1:])]
        sg = [x - y for x, y in zip(lcm[1:], Lg[1:])]
        out: dict = {}
        p = self.p
        for t, c in f.items():
            nt = (t[0],) + tuple(a + b for a, b in zip(t[1:], sf))
            out[nt] = c
        for t, c in g.items():
            nt = (t[0],) + tuple(a + b for a, b in zip(t[1:], sg))
            v = out.get(nt, 0) - c
            if p:
                v %= p
            if v:
                out[nt] = v
            else:
                out.pop(nt, None)
        return out

    # Buchberger ----------------------------------------------------------

    def groebner(self, gens: list, track: bool = False):
        """Reduced Gröbner basis of ``gens``.

        With ``track`` the basis is left unreduced and returned together with
        the lead terms and, per element, its coordinates in terms of ``gens``.
        """
        polys: list = []
        leads: list = []
        reps: list = []
        active: list = []
        pairs: list = []  # (sort key, i, j, lcm)
        self.spairs_reduced = 0
        k = len(gens)

        def act_basis():
            return [polys[i] for i in active], [leads[i] for i in active]

        def reduce_tracked(f, rep):
            b, ls = act_basis()
            if not track:
                return self.nf(f, b, ls), None
            cof = [dict() for _ in b]
            h = self.nf(f, b, ls, cof)
            for q, idx in zip(cof, active):
                if q:
                    rep = [_psub(a, _pmul(q, r, self.p), self.p) for a, r in zip(rep, reps[idx])]
            return h, rep

        def add(h, rep=None):
            Lh = self.lead(h)
            c = h[Lh]
            h = self.monic(h, Lh)
            if track:
                inv = self.field.inv(c)
                rep = [{t: self.field.mul(v, inv) for t, v in r.items()} for r in rep]
                reps.append(rep)
            hi = len(polys)
            polys.append(h)
            leads.append(Lh)
            ideal_case = self.rank == 1
            C = [(g, self.lcm(leads[g], Lh)) for g in active if leads[g][0] == Lh[0]]
            D = []
            while C:
                g1, l1 = C.pop(0)
                if (ideal_case and self.coprime(leads[g1], Lh)) or not (
                        any(self.divides(l2, l1) for _, l2 in C) or any(self.divides(l2, l1) for _, l2 in D)):
                    D.append((g1, l1))
            E = [(g, l) for g, l in D if not (ideal_case and self.coprime(leads[g], Lh))]
            kept = []
            for entry in pairs:
                _, i, j, l = entry
                if (self.divides(Lh, l) and self.lcm(leads[i], Lh) != l
                        and self.lcm(leads[j], Lh) != l):
                    continue
                kept.append(entry)
            pairs[:] = kept
            for g, l in E:
                pairs.append(((sum(l[1:]),) + self.key(l), g, hi, l))
            active[:] = [g for g in active if not self.divides(Lh, leads[g])] + [hi]

        zero = (0,) * self.n
        for gi, g in enumerate(gens):
            if not g:
                continue
            rep = [{zero: self.field.one} if a == gi else {} for a in range(k)] if track else None
            h, rep = reduce_tracked(g, rep)
            if h:
                add(h, rep)
        while pairs:
            best = min(range(len(pairs)), key=lambda a: pairs[a][0])
            _, i, j, _l = pairs.pop(best)
            s = self.spoly(polys[i], leads[i], polys[j], leads[j])
            self.spairs_reduced += 1
            rep = None
            if track:
                lcm = self.lcm(leads[i], leads[j])
                si = tuple(x - y for x, y in zip(lcm[1:], leads[i][1:]))
                sj = tuple(x - y for x, y in zip(lcm[1:], leads[j][1:]))
                rep = [_psub(_pshift(a, si), _pshift(b, sj), self.p) for a, b in zip(reps[i], reps[j])]
            h, rep = reduce_tracked(s, rep)
            if h:
                add(h, rep)
        if track:
            return [polys[i] for i in active], [leads[i] for i in active], [reps[i] for i in active]
        # reduced basis
        b, ls = act_basis()
        out = []
        for k in range(len(b)):
            others = b[:k] + b[k + 1:]
            ols = ls[:k] + ls[k + 1:]
            tail = dict(b[k])
            lt = ls[k]
            c = tail.pop(lt)
            red = self.nf(tail, others, ols)
            red[lt] = c
            out.append(red)
        out.sort(key=lambda f: self.key(self.lead(f)), reverse=True)
        return out


# ---------------------------------------------------------------------------
# public API


def _infer(gens: Sequence[Element], ring: PolyRing | None, rank: int | None):
    kinds = {isinstance(g, ModuleVector) for g in gens}
    if len(kinds) > 1:
        raise RingMismatchError("mixed polynomials and module vectors")
    if gens:
        ring = ring or gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator in {g.ring}, expected {ring}")
        if isinstance(gens[0], ModuleVector):
            lens = {len(g) for g in gens}
            if len(lens) != 1 or (rank is not None and lens != {rank}):
                raise RingMismatchError("module vectors of different lengths")
            rank = lens.pop()
    if ring is None:
        raise ValueError("cannot infer the ring of an empty generator list")
    return ring, rank


@dataclass(eq=False)
class GroebnerBasis:
    """Reduced Gröbner basis of ``gens + relations`` computed in the ambient ring."""

    ring: PolyRing
    order: MonomialOrder
    rank: int | None
    _internal: list = field(repr=False)
    reduced: bool = True

    @property
    def engine(self) -> _Engine:
        return _Engine(self.ring.ambient, self.order, self.rank or 1)

    @property
    def gens(self) -> list[Element]:
        return [_from_internal(g, self.ring, self.rank) for g in self._internal]

    def leads(self) -> list:
        eng = self._eng
        return [eng.lead(g) for g in self._internal]

    def __post_init__(self):
        self._eng = _Engine(self.ring.ambient, self.order, self.rank or 1)
        self._leads = [self._eng.lead(g) for g in self._internal]

    def reduce(self, f: Element) -> Element:
        d = self._eng.nf(_to_internal(f), self._internal, self._leads)
        return _from_internal(d, f.ring, self.rank)

    def contains(self, f: Element) -> bool:
        return not self._eng.nf(_to_internal(f), self._internal, self._leads)

    def is_unit(self) -> bool:
        return self.rank is None and any(not any(L[1:]) for L in self._leads)

    def canonical(self) -> frozenset:
        return frozenset(frozenset(g.items()) for g in self._internal)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.rank == other.rank
                and self.order == other.order and self.canonical() == other.canonical())

    def __len__(self):
        return len(self._internal)


def groebner_basis(gens: Sequence[Element], order: MonomialOrder | None = None, *,
                   ring: PolyRing | None = None, rank: int | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis; in a quotient ring the relations are appended."""
    gens = list(gens)
    ring, rank = _infer(gens, ring, rank)
    order = order or ring.order
    all_gens = [_to_internal(g) for g in gens] + [_to_internal(r) for r in relation_columns(ring, rank)]
    eng = _Engine(ring.ambient, order, rank or 1)
    basis = eng.groebner([g for g in all_gens if g])
    _STATS["bases"] += 1
    gb = GroebnerBasis(ring, order, rank, basis)
    if _CHECK_HOOK is not None:
        _CHECK_HOOK(gb)
    return gb


# test suites install a hook that re-runs the Buchberger criterion on every basis
_CHECK_HOOK = None
_STATS = {"bases": 0}


def set_check_hook(fn) -> None:
    global _CHECK_HOOK
    _CHECK_HOOK = fn


def buchberger_criterion(gb: GroebnerBasis) -> bool:
    """Every S-pair of the basis reduces to zero."""
    eng = gb._eng
    polys, leads = gb._internal, gb._leads
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if leads[i][0] != leads[j][0]:
                continue
            s = eng.spoly(polys[i], leads[i], polys[j], leads[j])
            if eng.nf(s, polys, leads):
                return False
    return True


def normal_form(f: Element, gb: GroebnerBasis) -> Element:
    if isinstance(f, ModuleVector) != (gb.rank is not None) or f.ring != gb.ring:
        raise RingMismatchError("element incompatible with the Gröbner basis")
    if gb.rank is not None and len(f) != gb.rank:
        raise RingMismatchError("vector length differs from basis rank")
    return gb.reduce(f)


def is_member(f: Element, gens: Sequence[Element], order: MonomialOrder | None = None) -> bool:
    rank = len(f) if isinstance(f, ModuleVector) else None
    gb = groebner_basis(list(gens), order, ring=f.ring, rank=rank)
    return gb.contains(f)


@dataclass
class Membership:
    """Outcome of a membership test with a coefficient witness.

    On success ``element == sum(coefficients[i] * cols[i]) +
    sum(relation_coefficients[k] * relation_columns[k])`` holds exactly in
    the ambient ring.
    """

    member: bool
    coefficients: list | None = None
    relation_coefficients: list | None = None

    def __bool__(self):
        return self.member


def _unit_internal(i: int, n: int, one) -> dict:
    return {(i,) + (0,) * n: one}


def submodule_member(v: Element, cols: Sequence[Element], order: MonomialOrder | None = None,
                     witness: bool = True) -> Membership:
    """Decide ``v in span(cols)`` and, when it is, return coefficients."""
    cols = list(cols)
    ring = v.ring
    rank = len(v) if isinstance(v, ModuleVector) else None
    _infer(cols + [v], ring, rank)
    if not groebner_basis(cols, order, ring=ring, rank=rank).contains(v):
        return Membership(False)
    if not witness:
        return Membership(True)
    coeffs, rel_coeffs = _lift(v, cols, ring, rank, order)
    return Membership(True, coeffs, rel_coeffs)


def _augmented(cols, ring, rank, order):
    """GB of ``(col_i, e_i)`` in ``R^(mu+k)``, first ``mu`` components highest."""
    mu = rank or 1
    n = ring.nvars
    every = list(cols) + relation_columns(ring, rank)
    aug = []
    for i, c in enumerate(every):
        d = _to_internal(c)
        d.update(_unit_internal(mu + i, n, ring.field.one))
        aug.append(d)
    eng = _Engine(ring.ambient, order or ring.order, mu + len(every))
    return eng, eng.groebner(aug), len(every)


def _lift(v, cols, ring, rank, order):
    """Coefficients of ``v`` over ``cols`` and the relation columns, by cofactor tracking."""
    every = list(cols) + relation_columns(ring, rank)
    eng = _Engine(ring.ambient, order or ring.order, rank or 1)
    basis, leads, reps = eng.groebner([_to_internal(c) for c in every], track=True)
    cof = [dict() for _ in basis]
    rem = eng.nf(_to_internal(v), basis, leads, cof)
    if rem:
        raise AssertionError("coefficient lift failed for a member")
    p = ring.characteristic
    coeffs = [dict() for _ in every]
    for q, rep in zip(cof, reps):
        if q:
            for a, r in enumerate(rep):
                if r:
                    coeffs[a] = _psub(coeffs[a], _pmul(q, r, p), p)
    ps = [Poly(ring, {e: (-c) % p if p else -c for e, c in d.items()}) for d in coeffs]
    k = len(cols)
    return ps[:k], ps[k:]


def syzygies(cols: Sequence[Element], order: MonomialOrder | None = None) -> list[ModuleVector]:
    """Generators of the kernel of ``R^k -> R^mu, c -> sum c_i cols_i``."""
    cols = list(cols)
    if not cols:
        raise ValueError("syzygies of an empty column list")
    ring, rank = _infer(cols, None, None)
    mu = rank or 1
    k = len(cols)
    eng, basis, total = _augmented(cols, ring, rank, order)
    out = []
    seen = set()
    for g in basis:
        if any(t[0] < mu for t in g):
            continue
        comps = [dict() for _ in range(k)]
        for t, c in g.items():
            if t[0] - mu < k:
                comps[t[0] - mu][t[1:]] = c
        vec = ModuleVector([Poly(ring, d) for d in comps], ring)
        if vec.is_zero():
            continue
        key = tuple(frozenset(x.terms.items()) for x in vec.entries)
        if key not in seen:
            seen.add(key)
            out.append(vec)
    return out


# ---------------------------------------------------------------------------
# ideal operations


class EliminationOrder(MonomialOrder):
    """Elimination order for the variables at ``indices``; ``inner`` breaks ties."""

    name = "elim"

    def __init__(self, indices, inner: MonomialOrder | None = None):
        self.indices = tuple(indices)
        self.inner = inner or GrevLex()
        self._g = GrevLex()

    def key(self, exps):
        return self._g.key([exps[i] for i in self.indices]) + self.inner.key(exps)

    def describe(self):
        return ("elim", self.indices, self.inner.describe())


def eliminate(gens: Sequence[Poly], keep: Sequence, ring: PolyRing | None = None) -> list[Poly]:
    """Generators of ``I ∩ K[keep]`` (computed with the relations appended)."""
    gens = list(gens)
    ring, _ = _infer(gens, ring, None)
    keep_idx = {k if isinstance(k, int) else ring.variables.index(k) for k in keep}
    elim = [i for i in range(ring.nvars) if i not in keep_idx]
    if not elim:
        return groebner_basis(gens, ring=ring).gens
    order = EliminationOrder(elim, ring.order)
    gb = groebner_basis(gens, order, ring=ring)
    return [g for g in gb.gens if not (g.variables_used() & set(elim))]


def _fresh_name(ring: PolyRing, base: str = "t") -> str:
    name = f"_{base}"
    while name in ring.variables:
        name += "_"
    return name


def intersect(I: Sequence[Poly], J: Sequence[Poly], ring: PolyRing | None = None) -> list[Poly]:
    """``I ∩ J`` via ``t*I + (1-t)*J`` and elimination of ``t``."""
    I, J = list(I), list(J)
    ring, _ = _infer(I + J, ring, None)
    if not I or not J:
        return []
    ext = ring.extend([_fresh_name(ring)])
    t = ext.var(ring.nvars)
    gens = [t * ring.embed(f, ext) for f in I] + [(1 - t) * ring.embed(g, ext) for g in J]
    gb = groebner_basis(gens, ext.order, ring=ext)
    out = []
    for g in gb.gens:
        if ring.nvars in g.variables_used():
            continue
        out.append(Poly(ring, {e[:-1]: c for e, c in g.terms.items()}))
    return out


def exact_divide(a: Poly, f: Poly) -> Poly:
    """``a / f`` when ``f`` divides ``a`` in the ambient polynomial ring."""
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    K = a.ring.field
    order = GrevLex()
    Lf, cf = f.leading_term(order)
    inv = K.inv(cf)
    rem = Poly(a.ring, dict(a.terms))
    q = {}
    while rem.terms:
        Lr, cr = rem.leading_term(order)
        shift = tuple(x - y for x, y in zip(Lr, Lf))
        if min(shift) < 0:
            raise ValueError("polynomial does not divide exactly")
        c = K.mul(cr, inv)
        q[shift] = c
        rem = rem - f.mul_monomial(shift, c)
    return Poly(a.ring, q)


def colon(I: Sequence[Poly], f: Poly) -> list[Poly]:
    """``(I : f) = (I ∩ (f)) / f``."""
    if f.is_zero():
        raise ZeroDivisionError("colon by the zero element")
    ring = f.ring
    amb = ring.ambient
    lifted = [Poly(amb, g.terms) for g in I] + ring.relations
    fa = Poly(amb, f.terms)
    if not lifted:
        return []
    inter = intersect(lifted, [fa], amb)
    return [Poly(ring, exact_divide(g, fa).terms) for g in inter]


def colon_ideal(I: Sequence[Poly], J: Sequence[Poly], ring: PolyRing | None = None) -> list[Poly]:
    I, J = list(I), list(J)
    ring, _ = _infer(I + J, ring, None)
    Jn = [g for g in J if not g.is_zero()]
    if not Jn:
        return [ring.one()]
    acc = None
    for g in Jn:
        c = colon(I, g)
        acc = c if acc is None else intersect(acc, c, ring)
    return acc


def ideal_gb(gens: Sequence[Poly], ring: PolyRing) -> GroebnerBasis:
    return groebner_basis(list(gens), ring=ring)


@dataclass
class Saturation:
    generators: list
    exponent: int
    steps: list = field(default_factory=list)


def saturate(I: Sequence[Poly], J, ring: PolyRing | None = None, cutoff: int = 50) -> Saturation:
    """``(I : J^∞)`` by iterated colon until the reduced bases agree.

    ``exponent`` is the first ``k`` with ``(I : J^k) = (I : J^{k+1})``.
    """
    I = list(I)
    Jl = [J] if isinstance(J, Poly) else list(J)
    ring, _ = _infer(I + Jl, ring, None)
    cur = I
    cur_gb = groebner_basis(cur, ring=ring)
    for k in range(cutoff + 1):
        nxt = colon_ideal(cur, Jl, ring)
        nxt_gb = groebner_basis(nxt, ring=ring)
        if nxt_gb == cur_gb:
            return Saturation(cur_gb.gens, k)
        cur, cur_gb = nxt, nxt_gb
    raise SaturationCutoffError(cutoff)


# ---------------------------------------------------------------------------
# submodule colon / saturation inside R^mu


def module_colon(cols: Sequence[ModuleVector], J: Sequence[Poly], rank: int,
                 ring: PolyRing) -> list[ModuleVector]:
    """``{v in R^mu : g*v in span(cols) for all g in J}`` via one syzygy computation."""
    J = [g for g in J if not g.is_zero()]
    if not J:
        return [ModuleVector.unit(ring, rank, i) for i in range(rank)]
    s = len(J)
    big = rank * s
    zero = ring.zero()
    aug = []
    for j in range(rank):
        entries = [zero] * big
        for b, g in enumerate(J):
            entries[b * rank + j] = g
        aug.append(ModuleVector(entries, ring))
    for b in range(s):
        for c in cols:
            entries = [zero] * big
            entries[b * rank: (b + 1) * rank] = c.entries
            aug.append(ModuleVector(entries, ring))
    out = []
    for syz in syzygies(aug):
        v = ModuleVector(syz.entries[:rank], ring)
        if not v.is_zero():
            out.append(v)
    return out


def module_saturate(cols: Sequence[ModuleVector], J: Sequence[Poly], rank: int, ring: PolyRing,
                    cutoff: int = 50) -> Saturation:
    cur = list(cols)
    cur_gb = groebner_basis(cur, ring=ring, rank=rank)
    steps = [cur_gb]
    for k in range(cutoff + 1):
        nxt = module_colon(cur, J, rank, ring)
        nxt_gb = groebner_basis(nxt, ring=ring, rank=rank)
        if nxt_gb == cur_gb:
            return Saturation(cur_gb.gens, k, steps)
        cur, cur_gb = nxt, nxt_gb
        steps.append(cur_gb)
    raise SaturationCutoffError(cutoff)
