"""Closure-membership tests returning machine-checkable certificates.

Every unbounded existential (Frobenius level, Ratliff-Rush level, reduction
degree, products of Delta-ideals) is searched up to :class:`SearchBounds`;
running out of budget yields ``not_found_within_bound``, which is never
reported as ``not_member``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .forcing import build_forcing, is_spec_surjective
from .groebner import (ModuleVector, SaturationCutoffError, groebner_basis, module_saturate,
                       relation_columns, saturate, submodule_member)
from .ideals import (CharacteristicError, FPModule, Ideal, SubmoduleData, determinant,
                     frobenius_module, ideal_equal, ideal_power, ideal_product, ideal_sum,
                     minors_or_zero, quotient_presentation, radical_member)
from .poly import Block, GrevLex, Permuted, Poly, PolyRing
from .text import dumps, print_canonical, print_ring, ring_from_text

MEMBER = "member"
NOT_MEMBER = "not_member"
NOT_FOUND = "not_found_within_bound"
NOT_FINITE = "witness_not_finite"
NOT_COVER = "witness_not_cover"


@dataclass
class SearchBounds:
    e_max: int = 4
    n_max: int = 10
    r_max: int = 10
    t_max: int = 6
    sat_max: int = 50

    def __post_init__(self):
        for k, v in asdict(self).items():
            if v < 0:
                raise ValueError(f"search bound {k} must be >= 0")


@dataclass
class ClosureCertificate:
    closure: str
    verdict: str
    witness: dict = field(default_factory=dict)
    query: dict = field(default_factory=dict)

    @property
    def member(self) -> bool | None:
        """True / False, or None when the search ran out of budget."""
        if self.verdict == MEMBER:
            return True
        if self.verdict == NOT_FOUND:
            return None
        return False

    def to_dict(self) -> dict:
        q = dict(self.query)
        q["closure"] = self.closure
        return {"query": q, "verdict": self.verdict, "witness": self.witness}

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> ClosureCertificate:
        q = dict(d["query"])
        return cls(q.pop("closure"), d["verdict"], d.get("witness", {}), q)

    @classmethod
    def from_json(cls, text: str) -> ClosureCertificate:
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# serialization helpers


def _s(p: Poly) -> str:
    return print_canonical(p)


def _sv(v) -> list[str]:
    return [_s(x) for x in v]


def _ideal_query(I: Ideal, f: Poly) -> dict:
    return {"ring": print_ring(I.ring), "ideal": [_s(g) for g in I.gens], "element": _s(I.ring(f))}


def _module_query(S: SubmoduleData) -> dict:
    return {"ring": print_ring(S.ring), "rank": S.rank,
            "presentation": [_sv(c) for c in S.M.columns],
            "submodule": [_sv(v) for v in S.N], "element": _sv(S.m)}


def _query(data) -> dict:
    if isinstance(data, SubmoduleData):
        return _module_query(data)
    I, f = data
    return _ideal_query(I, f)


def _combo(mem) -> dict:
    return {"coefficients": [_s(c) for c in mem.coefficients],
            "relation_coefficients": [_s(c) for c in mem.relation_coefficients]}


def _as_data(data) -> SubmoduleData:
    if isinstance(data, SubmoduleData):
        return data
    I, f = data
    return SubmoduleData.ideal(I, f)


def _as_ideal(data) -> tuple[Ideal, Poly]:
    if isinstance(data, SubmoduleData):
        if not data.is_ideal_case():
            raise ValueError("this closure is defined for ideals only")
        R = data.ring
        return Ideal(R, [v[0] for v in data.N]), data.m[0]
    I, f = data
    return I, I.ring(f)


def member_order(ring: PolyRing, polys) -> Permuted:
    """Grevlex with the variables used by fewest generators ranked highest.

    Pure Frobenius powers then lead with powers of the variables they use,
    coprime to relation leads in the remaining variables, which keeps the
    Gröbner bases of ``I^[q] + rel`` small.  Verdicts do not depend on it.
    """
    count = [0] * ring.nvars
    for f in polys:
        for i in f.variables_used():
            count[i] += 1
    perm = sorted(range(ring.nvars), key=lambda i: (count[i], i))
    return Permuted(perm, GrevLex())


# ---------------------------------------------------------------------------
# plain membership (the identity closure)


def identity_member(data) -> ClosureCertificate:
    S = _as_data(data)
    cols = S.lifted_columns()
    mem = submodule_member(S.m, cols) if cols else _zero_test(S)
    if mem:
        return ClosureCertificate("identity", MEMBER, _combo(mem), _query(data))
    return ClosureCertificate("identity", NOT_MEMBER, {}, _query(data))


def _zero_test(S: SubmoduleData):
    from .groebner import Membership
    R = S.ring
    if all(R.reduce(x).is_zero() for x in S.m):
        m = submodule_member(S.m, [ModuleVector.zero(R, S.rank)])
        return m
    return Membership(False)


# ---------------------------------------------------------------------------
# radical


def radical_closure_member(data) -> ClosureCertificate:
    """Ideals by Rabinowitsch; submodules by spec-surjectivity of the forcing algebra."""
    if not isinstance(data, SubmoduleData) or data.is_ideal_case():
        I, f = _as_ideal(data)
        w = radical_member(I, f)
        if not w:
            return ClosureCertificate("radical", NOT_MEMBER, {}, _ideal_query(I, f))
        wit = {"exponent": w.exponent}
        wit.update(_combo(w.witness))
        return ClosureCertificate("radical", MEMBER, wit, _ideal_query(I, f))
    S = data
    F = build_forcing(S)
    cert = is_spec_surjective(F)
    q = _module_query(S)
    if not cert.surjective:
        k, g = cert.failed
        return ClosureCertificate("radical", NOT_MEMBER, {"failed_minor_size": k, "failed_minor": _s(g)}, q)
    levels = []
    for k, entries in cert.levels:
        small = entries[0][3] if entries else None
        levels.append({
            "k": k,
            "minors_of_D": [_s(g) for g in small.gens] if small is not None else [],
            "entries": [dict({"minor": _s(g), "exponent": e}, **_combo(w)) for g, e, w, _ in entries],
        })
    return ClosureCertificate("radical", MEMBER, {"fitting": levels}, q)


jacobson_closure_member = radical_closure_member  # finitely generated algebras over a field are Jacobson


# ---------------------------------------------------------------------------
# Frobenius


def frobenius_closure_member(data, bounds: SearchBounds | None = None) -> ClosureCertificate:
    bounds = bounds or SearchBounds()
    S = _as_data(data)
    R = S.ring
    p = R.characteristic
    if not p:
        raise CharacteristicError("Frobenius closure needs positive characteristic")
    Mbar, m = quotient_presentation(S)
    for e in range(bounds.e_max + 1):
        FM, fm = frobenius_module(Mbar, m, e)
        if FM.columns:
            order = member_order(R, [x for c in FM.columns for x in c])
            mem = submodule_member(fm, FM.columns, order)
        else:
            mem = _zero_test(SubmoduleData(FM, [], fm))
        if mem:
            wit = {"level": e, "q": p ** e}
            wit.update(_combo(mem))
            return ClosureCertificate("frobenius", MEMBER, wit, _query(data))
    return ClosureCertificate("frobenius", NOT_FOUND, {"e_max": bounds.e_max}, _query(data))


# ---------------------------------------------------------------------------
# Ratliff-Rush and Delta closures


def _contained_with_witness(elems, target: Ideal):
    """Each element in ``target``; per-element coefficient data or None."""
    gb = target.gb()
    out = []
    for h in elems:
        if not gb.contains(h):
            return None
    for h in elems:
        mem = submodule_member(h, list(target.gens)) if target.gens else None
        out.append(dict({"element": _s(h)}, **_combo(mem)))
    return out


def ratliff_rush_member(I: Ideal, f, bounds: SearchBounds | None = None) -> ClosureCertificate:
    """``f in (I^{n+1} : I^n)`` for some ``n <= n_max``."""
    bounds = bounds or SearchBounds()
    if I.is_zero():
        raise ValueError("Ratliff-Rush closure of the zero ideal is not supported")
    R = I.ring
    f = R(f)
    q = _ideal_query(I, f)
    for n in range(bounds.n_max + 1):
        In = ideal_power(I, n)
        In1 = ideal_power(I, n + 1)
        wit = _contained_with_witness([R.reduce(f * g) for g in In.gens], In1)
        if wit is not None:
            return ClosureCertificate("ratliff_rush", MEMBER, {"level": n, "products": wit}, q)
    return ClosureCertificate("ratliff_rush", NOT_FOUND, {"n_max": bounds.n_max}, q)


def ratliff_rush_closure(I: Ideal, bounds: SearchBounds | None = None) -> Ideal:
    """Union of ``(I^{n+1} : I^n)``, stopped at two consecutive equal colons (or ``n_max``)."""
    from .groebner import colon_ideal
    bounds = bounds or SearchBounds()
    if I.is_zero():
        raise ValueError("Ratliff-Rush closure of the zero ideal is not supported")
    R = I.ring
    prev = None
    acc = I
    for n in range(1, bounds.n_max + 1):
        c = Ideal(R, colon_ideal(list(ideal_power(I, n + 1).gens), list(ideal_power(I, n).gens), R))
        acc = ideal_sum(acc, c)
        if prev is not None and ideal_equal(prev, c):
            break
        prev = c
    return Ideal(R, acc.gb().gens)


def _delta_products(delta: Sequence[Ideal], t_max: int):
    for count in range(t_max + 1):
        for combo in combinations_with_replacement(range(len(delta)), count):
            yield combo


def delta_closure_member(I: Ideal, f, delta_gens: Sequence[Ideal],
                         bounds: SearchBounds | None = None) -> ClosureCertificate:
    """First product ``a`` of Delta-ideals (by factor count) with ``f*a ⊆ I*a``."""
    bounds = bounds or SearchBounds()
    if not delta_gens:
        raise ValueError("Delta needs at least one generating ideal")
    if any(a.is_zero() for a in delta_gens):
        raise ValueError("zero ideal in Delta")
    R = I.ring
    f = R(f)
    q = _ideal_query(I, f)
    q["delta"] = [[_s(g) for g in a.gens] for a in delta_gens]
    for combo in _delta_products(delta_gens, bounds.t_max):
        a = Ideal(R, [R.one()])
        for i in combo:
            a = ideal_product(a, delta_gens[i])
        Ia = ideal_product(I, a)
        wit = _contained_with_witness([R.reduce(f * g) for g in a.gens], Ia)
        if wit is not None:
            return ClosureCertificate("delta", MEMBER, {"factors": list(combo), "products": wit}, q)
    return ClosureCertificate("delta", NOT_FOUND, {"t_max": bounds.t_max}, q)


# ---------------------------------------------------------------------------
# integral closure via reductions


def integral_closure_member(I: Ideal, f, bounds: SearchBounds | None = None) -> ClosureCertificate:
    """Least ``r <= r_max`` with ``(I,f)^{r+1} = I*(I,f)^r``."""
    bounds = bounds or SearchBounds()
    if I.is_zero():
        raise ValueError("integral closure test needs a nonzero ideal")
    R = I.ring
    f = R(f)
    q = _ideal_query(I, f)
    If = ideal_sum(I, Ideal(R, [f]))
    power = Ideal(R, [R.one()])  # (I,f)^r
    for r in range(bounds.r_max + 1):
        nxt = ideal_product(power, If)
        red = ideal_product(I, power)
        if ideal_equal(nxt, red):
            mem = submodule_member(f ** (r + 1), list(red.gens))
            wit = {"reduction_degree": r}
            wit.update(_combo(mem))
            return ClosureCertificate("integral", MEMBER, wit, q)
        power = nxt
    return ClosureCertificate("integral", NOT_FOUND, {"r_max": bounds.r_max}, q)


# ---------------------------------------------------------------------------
# support (Gabriel filter) closure


@dataclass
class SupportClosure:
    generators: list
    exponent: int
    certificate: dict


def support_closure(data: SubmoduleData, J: Ideal, bounds: SearchBounds | None = None) -> SupportClosure:
    """``(N :_M J^∞)`` as generators in ``R^mu`` (modulo the presentation)."""
    bounds = bounds or SearchBounds()
    S = _as_data(data)
    R, mu = S.ring, S.rank
    cols = S.lifted_columns()
    sat = module_saturate(cols, list(J.nonzero_gens()), mu, R, bounds.sat_max)
    k = sat.exponent
    Jk = ideal_power(J, k)
    rows = []
    for v in sat.generators:
        prods = []
        for h in Jk.gens:
            target = v.scale(h)
            mem = submodule_member(target, cols) if cols else _zero_test(SubmoduleData(S.M, [], target))
            prods.append(dict({"multiplier": _s(h)}, **_combo(mem)))
        rows.append({"generator": _sv(v), "products": prods})
    cert = {"exponent": k, "J": [_s(g) for g in J.gens], "generators": rows}
    return SupportClosure(sat.generators, k, cert)


def support_closure_member(data, J: Ideal, bounds: SearchBounds | None = None) -> ClosureCertificate:
    """``m in (N :_M J^∞)`` with the least ``k`` such that ``J^k m ⊆ N``."""
    bounds = bounds or SearchBounds()
    S = _as_data(data)
    R = S.ring
    cols = S.lifted_columns()
    q = _query(data)
    q["J"] = [_s(g) for g in J.gens]
    sat = module_saturate(cols, list(J.nonzero_gens()), S.rank, R, bounds.sat_max)
    gb = groebner_basis(sat.generators, ring=R, rank=S.rank)
    if not gb.contains(S.m):
        return ClosureCertificate("support", NOT_MEMBER, {"exponent_bound": sat.exponent}, q)
    for k in range(sat.exponent + 1):
        Jk = ideal_power(J, k)
        targets = [S.m.scale(h) for h in Jk.gens]
        if cols:
            span = groebner_basis(cols, ring=R, rank=S.rank)
            ok = all(span.contains(t) for t in targets)
        else:
            ok = all(all(R.reduce(x).is_zero() for x in t) for t in targets)
        if ok:
            prods = []
            for h, t in zip(Jk.gens, targets):
                mem = submodule_member(t, cols) if cols else _zero_test(SubmoduleData(S.M, [], t))
                prods.append(dict({"multiplier": _s(h)}, **_combo(mem)))
            return ClosureCertificate("support", MEMBER, {"exponent": k, "products": prods}, q)
    raise AssertionError("saturation member without a finite exponent")


# ---------------------------------------------------------------------------
# symbolic powers


@dataclass
class SymbolicPower:
    ideal: Ideal
    exponent: int
    certificate: dict


def symbolic_power(P: Ideal, n: int, s) -> SymbolicPower:
    """``(P^n : s^∞)`` for a user-supplied ``s`` outside ``P`` (primality of ``P`` is assumed)."""
    R = P.ring
    s = R(s)
    if P.contains(s):
        raise ValueError("the witness s must not lie in P")
    Pn = ideal_power(P, n)
    sat = saturate(list(Pn.gens), s, R)
    cert = {"s": _s(s), "s_not_in_P": True, "saturation_exponent": sat.exponent, "n": n}
    return SymbolicPower(Ideal(R, sat.generators), sat.exponent, cert)


# ---------------------------------------------------------------------------
# plus closure witnesses and compatible elements


class NotFiniteError(ValueError):
    pass


def _extension_check(R: PolyRing, S: PolyRing):
    """Integral equations for the new variables and the kernel test of ``R -> S``."""
    n = R.nvars
    if S.variables[:n] != R.variables or S.field != R.field:
        raise ValueError("the extension ring must list the base variables first")
    amb = S.ambient
    rels = [Poly(amb, r) for r in S.relation_terms]
    rels += [R.embed(Poly(R.ambient, r), amb) for r in R.relation_terms]
    order = Block(n, R.order, GrevLex())
    gb = groebner_basis(rels, order, ring=amb)
    equations = {}
    for g in gb.gens:
        lm = g.leading_monomial(order)
        used = [i for i, x in enumerate(lm) if x]
        if len(used) == 1 and used[0] >= n and used[0] not in equations:
            equations[used[0]] = g
    missing = [S.variables[i] for i in range(n, S.nvars) if i not in equations]
    kernel = [Poly(R, {e[:n]: c for e, c in g.terms.items()}) for g in gb.gens
              if not (g.variables_used() - set(range(n)))]
    return equations, missing, rels, order, kernel


def _equations_witness(S, equations, rels, order):
    out = []
    amb = S.ambient
    for i in sorted(equations):
        g = equations[i]
        mem = submodule_member(g, rels)
        out.append({"variable": S.variables[i], "lead": _s(Poly(amb, {g.leading_monomial(order): 1})),
                    "polynomial": _s(g),
                    "coefficients": [_s(c) for c in mem.coefficients]})
    return out


def plus_witness_check(R: PolyRing, S: PolyRing, I: Ideal, f) -> ClosureCertificate:
    """Check that ``S`` is a finite cover of ``R`` and that ``f in I*S``."""
    f = R(f)
    q = _ideal_query(I, f)
    q["witness_ring"] = print_ring(S)
    equations, missing, rels, order, kernel = _extension_check(R, S)
    if missing:
        return ClosureCertificate("plus", NOT_FINITE, {"missing_integral_equations": missing}, q)
    zero = Ideal(R, [])
    for g in kernel:
        if not radical_member(zero, g, witness=False):
            return ClosureCertificate("plus", NOT_COVER, {"kernel_element": _s(g)}, q)
    full = S.ambient.quotient(rels)
    fS = R.embed(Poly(R.ambient, f.terms), full)
    gens = [R.embed(Poly(R.ambient, g.terms), full) for g in I.gens]
    mem = submodule_member(fS, gens) if gens else _zero_in(full, fS)
    wit = {"integral_equations": _equations_witness(full, equations, rels, order)}
    if not mem:
        return ClosureCertificate("plus", NOT_MEMBER, wit, q)
    wit.update(_combo(mem))
    return ClosureCertificate("plus", MEMBER, wit, q)


def _zero_in(ring, f):
    from .groebner import Membership
    if not ring.reduce(f).is_zero():
        return Membership(False)
    return submodule_member(f, [ring.zero()])


@dataclass
class Compatibility:
    compatible: bool
    exponent: int | None
    tensor_ring: PolyRing
    difference: Poly
    witness: dict | None = None

    def __bool__(self):
        return self.compatible


def tensor_square(R: PolyRing, S: PolyRing):
    """``S ⊗_R S`` on two copies of the extension variables sharing the base."""
    n = R.nvars
    new = S.variables[n:]
    taken = set(S.variables)
    names1, names2 = [], []
    for v in new:
        a, b = f"{v}_1", f"{v}_2"
        while a in taken or b in taken:
            a, b = a + "_", b + "_"
        taken |= {a, b}
        names1.append(a)
        names2.append(b)
    variables = R.variables + tuple(names1) + tuple(names2)
    k = len(new)
    amb = PolyRing(R.field, variables)
    rels = [R.embed(Poly(R.ambient, r), amb) for r in R.relation_terms]
    for r in S.relation_terms:
        rels.append(Poly(amb, {e[:n] + e[n:] + (0,) * k: c for e, c in r.items()}))
        rels.append(Poly(amb, {e[:n] + (0,) * k + e[n:]: c for e, c in r.items()}))
    T = amb.quotient(rels)

    def first(p: Poly) -> Poly:
        return Poly(T, {e[:n] + e[n:] + (0,) * k: c for e, c in p.terms.items()})

    def second(p: Poly) -> Poly:
        return Poly(T, {e[:n] + (0,) * k + e[n:]: c for e, c in p.terms.items()})

    return T, first, second


def compatible_element(R: PolyRing, S: PolyRing, g) -> Compatibility:
    """``g ⊗ 1 - 1 ⊗ g`` nilpotent in ``S ⊗_R S``; returns the least nilpotency exponent."""
    g = S(g)
    _, missing, _, _, _ = _extension_check(R, S)
    if missing:
        raise NotFiniteError(f"no integral equation for {missing}")
    T, first, second = tensor_square(R, S)
    d = first(g) - second(g)
    w = radical_member(Ideal(T, []), d)
    if not w:
        return Compatibility(False, None, T, d)
    wit = {"exponent": w.exponent, "difference": _s(d), "tensor_ring": print_ring(T)}
    wit.update(_combo(w.witness))
    return Compatibility(True, w.exponent, T, d, wit)


# ---------------------------------------------------------------------------
# dispatcher


CLOSURES = ("identity", "radical", "frobenius", "support", "ratliff_rush", "integral", "delta")


def closure_member(op: str, data, bounds: SearchBounds | None = None, **params) -> ClosureCertificate:
    bounds = bounds or SearchBounds()
    if op == "identity":
        return identity_member(data)
    if op == "radical":
        return radical_closure_member(data)
    if op == "frobenius":
        return frobenius_closure_member(data, bounds)
    if op == "support":
        S = _as_data(data)
        J = params.get("J") or Ideal(S.ring, [S.ring.var(0)])
        return support_closure_member(S, J, bounds)
    I, f = _as_ideal(data)
    if op == "ratliff_rush":
        return ratliff_rush_member(I, f, bounds)
    if op == "integral":
        return integral_closure_member(I, f, bounds)
    if op == "delta":
        return delta_closure_member(I, f, params["delta"], bounds)
    raise ValueError(f"unknown closure {op!r}")


def compatible_certificate(R: PolyRing, S: PolyRing, g) -> ClosureCertificate:
    q = {"ring": print_ring(R), "witness_ring": print_ring(S), "element": _s(S(g))}
    c = compatible_element(R, S, g)
    if not c:
        return ClosureCertificate("compatible", NOT_MEMBER, {"difference": _s(c.difference)}, q)
    return ClosureCertificate("compatible", MEMBER, c.witness, q)


# ---------------------------------------------------------------------------
# certificate verification by direct arithmetic


class CertificateError(ValueError):
    pass


def _combination_holds(target, cols, coeffs, rel_coeffs, ring: PolyRing) -> bool:
    """``target == sum c_i cols_i + sum r_j rel_j`` exactly in the ambient ring."""
    rank = len(target) if isinstance(target, ModuleVector) else None
    rels = relation_columns(ring, rank)
    cols = list(cols)
    if len(coeffs) != len(cols) or len(rel_coeffs) != len(rels):
        return False
    amb = ring.ambient

    def lift(x):
        if isinstance(x, ModuleVector):
            return [Poly(amb, e.terms) for e in x]
        return [Poly(amb, x.terms)]

    acc = [-e for e in lift(target)]
    for c, col in zip(list(coeffs) + list(rel_coeffs), cols + rels):
        cc = Poly(amb, ring(c).terms)
        for i, e in enumerate(lift(col)):
            acc[i] = acc[i] + cc * e
    return all(a.is_zero() for a in acc)


def _vector(R: PolyRing, entries) -> ModuleVector:
    return ModuleVector([R(e) for e in entries], R)


def data_from_query(q: dict):
    """Rebuild ``(I, f)`` or :class:`SubmoduleData` from a certificate query."""
    R = ring_from_text(q["ring"])
    if "rank" in q:
        mu = q["rank"]
        M = FPModule(R, mu, [_vector(R, c) for c in q["presentation"]])
        return SubmoduleData(M, [_vector(R, v) for v in q["submodule"]], _vector(R, q["element"]))
    return Ideal(R, [R(g) for g in q["ideal"]]), R(q["element"])


def _check_products(elems, target: Ideal, rows) -> bool:
    if len(rows) != len(elems):
        return False
    R = target.ring
    for h, row in zip(elems, rows):
        if _s(h) != row["element"]:
            return False
        if not _combination_holds(h, target.gens, row["coefficients"], row["relation_coefficients"], R):
            return False
    return True


def _cols_or_zero(cols, R, rank):
    return cols if cols else [ModuleVector.zero(R, rank)]


def _verify(c: ClosureCertificate) -> bool:
    q, w = c.query, c.witness
    op = c.closure
    if op == "compatible":
        R, S = ring_from_text(q["ring"]), ring_from_text(q["witness_ring"])
        T, first, second = tensor_square(R, S)
        d = first(S(q["element"])) - second(S(q["element"]))
        if _s(d) != w["difference"] or print_ring(T) != w["tensor_ring"]:
            return False
        return _combination_holds(d ** w["exponent"], [], w["coefficients"], w["relation_coefficients"], T)
    if op == "plus":
        return _verify_plus(q, w)
    data = data_from_query(q)
    if op == "identity":
        S = _as_data(data)
        cols = _cols_or_zero(S.lifted_columns(), S.ring, S.rank)
        return _combination_holds(S.m, cols, w["coefficients"], w["relation_coefficients"], S.ring)
    if op == "radical":
        if "fitting" in w:
            return _verify_fitting(data, w["fitting"])
        I, f = data
        return _combination_holds(f ** w["exponent"], I.gens, w["coefficients"],
                                  w["relation_coefficients"], I.ring)
    if op == "frobenius":
        S = _as_data(data)
        FM, fm = frobenius_module(*quotient_presentation(S), w["level"])
        if S.ring.characteristic ** w["level"] != w["q"]:
            return False
        cols = _cols_or_zero(FM.columns, S.ring, S.rank)
        return _combination_holds(fm, cols, w["coefficients"], w["relation_coefficients"], S.ring)
    if op == "support":
        S = _as_data(data)
        R = S.ring
        J = Ideal(R, [R(g) for g in q["J"]])
        Jk = ideal_power(J, w["exponent"])
        cols = _cols_or_zero(S.lifted_columns(), R, S.rank)
        rows = w["products"]
        if len(rows) != len(Jk.gens):
            return False
        for h, row in zip(Jk.gens, rows):
            if _s(h) != row["multiplier"]:
                return False
            if not _combination_holds(S.m.scale(h), cols, row["coefficients"], row["relation_coefficients"], R):
                return False
        return True
    I, f = _as_ideal(data)
    R = I.ring
    if op == "ratliff_rush":
        n = w["level"]
        elems = [R.reduce(f * g) for g in ideal_power(I, n).gens]
        return _check_products(elems, ideal_power(I, n + 1), w["products"])
    if op == "delta":
        a = Ideal(R, [R.one()])
        delta = [Ideal(R, [R(g) for g in gens]) for gens in q["delta"]]
        for i in w["factors"]:
            a = ideal_product(a, delta[i])
        elems = [R.reduce(f * g) for g in a.gens]
        return _check_products(elems, ideal_product(I, a), w["products"])
    if op == "integral":
        r = w["reduction_degree"]
        power = Ideal(R, [R.one()])
        If = ideal_sum(I, Ideal(R, [f]))
        for _ in range(r):
            power = ideal_product(power, If)
        # the other generators of (I,f)^{r+1} already involve a factor from I
        red = ideal_product(I, power)
        return _combination_holds(f ** (r + 1), red.gens, w["coefficients"], w["relation_coefficients"], R)
    raise CertificateError(f"unknown closure {op!r}")


def _verify_fitting(S: SubmoduleData, levels) -> bool:
    R = S.ring
    Mbar, m = quotient_presentation(S)
    mu, nu = Mbar.shape
    D = Mbar.matrix
    Dm = [list(D[i]) + [m[i]] for i in range(mu)] if nu else [[m[i]] for i in range(mu)]
    ks = [lv["k"] for lv in levels]
    if ks != list(range(1, min(mu, nu + 1) + 1)):
        return False
    for lv in levels:
        k = lv["k"]
        big = minors_or_zero(Dm, k, R, (mu, nu + 1))
        small = minors_or_zero(D, k, R, (mu, nu)) if nu else Ideal(R, [])
        if [_s(g) for g in small.gens] != lv["minors_of_D"]:
            return False
        if [_s(g) for g in big.gens] != [e["minor"] for e in lv["entries"]]:
            return False
        for g, e in zip(big.gens, lv["entries"]):
            if not _combination_holds(g ** e["exponent"], small.gens, e["coefficients"],
                                      e["relation_coefficients"], R):
                return False
    return True


def _verify_plus(q, w) -> bool:
    R, S = ring_from_text(q["ring"]), ring_from_text(q["witness_ring"])
    n = R.nvars
    amb = S.ambient
    rels = [Poly(amb, r) for r in S.relation_terms]
    rels += [R.embed(Poly(R.ambient, r), amb) for r in R.relation_terms]
    order = Block(n, R.order, GrevLex())
    seen = set()
    for eq in w["integral_equations"]:
        g = amb(eq["polynomial"])
        i = S.variables.index(eq["variable"])
        lm = g.leading_monomial(order)
        if [j for j, x in enumerate(lm) if x] != [i]:
            return False
        if not _combination_holds(g, rels, eq["coefficients"], [], amb):
            return False
        seen.add(i)
    if seen != set(range(n, S.nvars)):
        return False
    full = amb.quotient(rels)
    fS = full(q["element"])
    gens = [full(g) for g in q["ideal"]]
    cols = gens if gens else [full.zero()]
    return _combination_holds(fS, cols, w["coefficients"], w["relation_coefficients"], full)


def verify_certificate(cert) -> bool:
    """Re-check a member certificate by ring arithmetic, without re-running any search."""
    if isinstance(cert, str):
        cert = ClosureCertificate.from_json(cert)
    elif isinstance(cert, dict):
        cert = ClosureCertificate.from_dict(cert)
    if cert.verdict != MEMBER:
        raise CertificateError(f"only member certificates carry a witness (got {cert.verdict!r})")
    try:
        return bool(_verify(cert))
    except (KeyError, IndexError, TypeError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc
