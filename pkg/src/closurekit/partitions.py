"""Locally closed pieces ``(R/a)_g``, the canonical radical chain and piecewise sections."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import groebner_basis, saturate, submodule_member
from .ideals import Ideal, radical_member
from .poly import Poly, PolyRing
from .text import print_canonical, ring_from_text


class EmptyPieceError(ValueError):
    pass


class NotInRadicalError(ValueError):
    pass


def _s(p: Poly) -> str:
    return print_canonical(p)


@dataclass
class ConstructiblePiece:
    """``(R/a)_g``: points where ``a`` vanishes and ``g`` does not."""

    ring: PolyRing
    cut: list
    multiplier: Poly

    def __post_init__(self):
        R = self.ring
        self.cut = [R(c) for c in self.cut]
        self.multiplier = R(self.multiplier)
        if is_empty_piece(R, self.cut, self.multiplier):
            raise EmptyPieceError(f"{_s(self.multiplier)} is nilpotent modulo the cut; the piece is empty")

    @property
    def cut_ideal(self) -> Ideal:
        return Ideal(self.ring, self.cut)

    def contains_point(self, point, evaluate) -> bool:
        """Membership of a point given an evaluation callback ``evaluate(poly, point)``."""
        return all(evaluate(c, point) == 0 for c in self.cut) and evaluate(self.multiplier, point) != 0

    def to_dict(self) -> dict:
        return {"cut": [_s(c) for c in self.cut], "multiplier": _s(self.multiplier)}


def is_empty_piece(R: PolyRing, cut, g) -> bool:
    return bool(radical_member(Ideal(R, cut), R(g), witness=False))


# ---------------------------------------------------------------------------
# membership on a piece


@dataclass
class PieceMembership:
    member: bool
    exponent: int | None = None
    coefficients: list | None = None
    relation_coefficients: list | None = None

    def __bool__(self):
        return self.member


def piece_member(piece: ConstructiblePiece, J: Ideal, f, witness: bool = True) -> PieceMembership:
    """``f in J`` on ``(R/a)_g``: the least ``k`` with ``g^k f in J + a``, with coefficients."""
    R = piece.ring
    f = R(f)
    gens = list(J.gens) + list(piece.cut)
    g = piece.multiplier
    sat = saturate(gens, g, R) if gens else None
    if sat is None:
        ok = R.reduce(f).is_zero()
        return PieceMembership(ok, 0 if ok else None, [] if ok else None, [] if ok else None)
    if not groebner_basis(sat.generators, ring=R).contains(f):
        return PieceMembership(False)
    span = groebner_basis(gens, ring=R)
    h = f
    k = 0
    while not span.contains(h):
        h = R.reduce(h * g)
        k += 1
        if k > sat.exponent + 1:
            raise AssertionError("saturation member without a finite exponent")
    if not witness:
        return PieceMembership(True, k)
    mem = submodule_member(g ** k * f, gens)
    return PieceMembership(True, k, mem.coefficients, mem.relation_coefficients)


# ---------------------------------------------------------------------------
# the canonical chain


@dataclass
class PartitionResult:
    ring: PolyRing
    ideal: list
    element: Poly
    pieces: list
    certificates: list
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"ring": str(self.ring), "ideal": [_s(g) for g in self.ideal], "element": _s(self.element),
                "pieces": [dict(p.to_dict(), certificate=c) for p, c in zip(self.pieces, self.certificates)],
                "notes": list(self.notes)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def canonical_radical_partition(I: Ideal, f) -> PartitionResult:
    """Chain ``(R/(f_1..f_k))_{f_{k+1}}`` for ``k < n`` and ``V(f_1..f_n)``, each with a certificate.

    On the open pieces ``f`` lies in ``I`` because ``f_{k+1}`` is invertible;
    on the closed piece ``f`` is nilpotent.  Empty pieces are dropped with a note.
    """
    R = I.ring
    f = R(f)
    gens = list(I.gens)
    rad = radical_member(I, f)
    if not rad:
        raise NotInRadicalError("the element is not in the radical of the ideal")
    pieces, certs, notes = [], [], []
    n = len(gens)
    for k in range(n):
        cut, g = gens[:k], gens[k]
        if is_empty_piece(R, cut, g):
            notes.append(f"piece {k} dropped: generator {k + 1} is nilpotent modulo the first {k}")
            continue
        piece = ConstructiblePiece(R, cut, g)
        pm = piece_member(piece, I, f)
        pieces.append(piece)
        certs.append({"kind": "member", "index": k, "exponent": pm.exponent,
                      "coefficients": [_s(c) for c in pm.coefficients],
                      "relation_coefficients": [_s(c) for c in pm.relation_coefficients]})
    if is_empty_piece(R, gens, R.one()):
        notes.append(f"piece {n} dropped: the ideal is the unit ideal")
    else:
        pieces.append(ConstructiblePiece(R, gens, R.one()))
        certs.append({"kind": "nilpotent", "index": n, "exponent": rad.exponent,
                      "coefficients": [_s(c) for c in rad.witness.coefficients],
                      "relation_coefficients": [_s(c) for c in rad.witness.relation_coefficients]})
    return PartitionResult(R, gens, f, pieces, certs, notes)


def verify_partition(result: PartitionResult | dict) -> bool:
    """Re-check every piece certificate by direct arithmetic."""
    from .closures import _combination_holds
    d = result.to_dict() if isinstance(result, PartitionResult) else result
    R = ring_from_text(d["ring"])
    gens = [R(g) for g in d["ideal"]]
    f = R(d["element"])
    n = len(gens)
    for p in d["pieces"]:
        c = p["certificate"]
        k = c["index"]
        cut = [R(x) for x in p["cut"]]
        g = R(p["multiplier"])
        if [_s(x) for x in cut] != [_s(x) for x in gens[:k]]:
            return False
        if c["kind"] == "member":
            if k >= n or _s(g) != _s(gens[k]):
                return False
            target = g ** c["exponent"] * f
            ok = _combination_holds(target, gens + cut, c["coefficients"], c["relation_coefficients"], R)
        else:
            ok = k == n and _combination_holds(f ** c["exponent"], gens, c["coefficients"],
                                               c["relation_coefficients"], R)
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# piecewise sections


@dataclass
class PiecewiseSection:
    pieces: list
    values: list  # (h, k) meaning h / g^k on the matching piece
    global_restriction: bool = False

    def to_list(self) -> list:
        out = []
        for p, (h, k) in zip(self.pieces, self.values):
            g = p.multiplier
            value = _s(h) if k == 0 else f"({_s(h)})/({_s(g)})^{k}"
            out.append({"cut": [_s(c) for c in p.cut], "multiplier": _s(g), "value": value})
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_list(), sort_keys=True, indent=2)


def _parse_value(piece: ConstructiblePiece, value) -> tuple[Poly, int]:
    R = piece.ring
    if isinstance(value, tuple):
        h, k = value
        if k < 0:
            raise ValueError("negative exponent in a denominator")
        return R(h), k
    if isinstance(value, Poly):
        return value, 0
    text = str(value)
    depth = 0
    for i, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0 and not text[i + 1:].strip()[:1].isdigit():
            num, den = text[:i], text[i + 1:]
            break
    else:
        return R(text), 0
    h = R(num)
    d = R(den)
    g = piece.multiplier
    cut = groebner_basis(piece.cut, ring=R) if piece.cut else None
    k, gk = 0, R.one()
    while k <= d.degree() + 1:
        diff = R.reduce(d - gk)
        if diff.is_zero() or (cut is not None and cut.contains(diff)):
            return h, k
        k += 1
        gk = gk * g
    raise ValueError(f"denominator {den.strip()!r} is not a power of the piece multiplier {_s(g)}")


def assemble_section(pieces: Sequence[ConstructiblePiece], elements: Sequence) -> PiecewiseSection:
    """One value ``h/g^k`` per piece; no gluing conditions since the pieces are disjoint."""
    if len(pieces) != len(elements):
        raise ValueError(f"{len(elements)} values for {len(pieces)} pieces")
    values = [_parse_value(p, e) for p, e in zip(pieces, elements)]
    reps = {_s(p.ring.reduce(h)) for p, (h, _) in zip(pieces, values)}
    same = all(k == 0 for _, k in values) and len(reps) <= 1
    return PiecewiseSection(list(pieces), values, global_restriction=bool(values) and same)


def restrict_global(pieces: Sequence[ConstructiblePiece], r) -> PiecewiseSection:
    if not pieces:
        raise ValueError("no pieces")
    R = pieces[0].ring
    return PiecewiseSection(list(pieces), [(R(r), 0) for _ in pieces], global_restriction=True)
