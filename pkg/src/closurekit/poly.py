"""Coefficient fields, monomial orders and sparse multivariate polynomials.

Polynomials are stored as ``{exponent tuple: coefficient}`` dictionaries
with no zero coefficients.  Elements of a quotient ring ``A/rel`` are kept
as representatives in the ambient ring ``A``; reduction modulo the
relations is an explicit operation (:meth:`PolyRing.reduce`).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce as _fold
from typing import Iterable, Mapping, Sequence


class RingMismatchError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# coefficient fields


class Field:
    """Base class for the two exact coefficient fields."""

    characteristic = 0

    def __call__(self, value):
        return self.convert(value)

    def __repr__(self):
        return str(self)


class RationalField(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise TypeError(f"cannot convert {value!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __str__(self):
        return "Q"


class PrimeField(Field):
    """F_p with elements represented by ints in ``[0, p)``."""

    zero = 0
    one = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not a prime")
        self.p = p
        self.characteristic = p

    def convert(self, value):
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot convert {value!r} into F({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if not a % self.p:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * pow(b, -1, self.p)) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __str__(self):
        return f"F({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# monomial orders
#
# Every order exposes ``key(exps)`` returning a flat tuple of ints; the order
# is the lexicographic comparison of keys.  Flat int tuples let the
# reduction loop negate keys for a min-heap.


class MonomialOrder:
    name = "?"

    def key(self, exps: Sequence[int]) -> tuple:
        raise NotImplementedError

    def max(self, monomials: Iterable[tuple]) -> tuple:
        return max(monomials, key=self.key)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.describe() == other.describe()

    def __hash__(self):
        return hash(self.describe())

    def describe(self):
        return self.name

    def __repr__(self):
        return f"MonomialOrder({self.describe()})"


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exps):
        return tuple(exps)


class GrevLex(MonomialOrder):
    """Degree first, ties broken so that a larger power of a later variable is smaller."""

    name = "grevlex"

    def key(self, exps):
        return (sum(exps),) + tuple(-e for e in reversed(exps))


class Block(MonomialOrder):
    """Block order: variables at positions ``>= split`` are compared first.

    Fresh variables are appended at the end of a ring, so ``Block(n)`` on an
    extension of an ``n``-variable ring eliminates the fresh variables.
    """

    name = "block"

    def __init__(self, split: int, low: MonomialOrder | None = None, high: MonomialOrder | None = None):
        self.split = split
        self.low = low or GrevLex()
        self.high = high or GrevLex()

    def key(self, exps):
        k = self.split
        return self.high.key(exps[k:]) + self.low.key(exps[:k])

    def describe(self):
        return ("block", self.split, self.low.describe(), self.high.describe())


class Permuted(MonomialOrder):
    """Apply ``inner`` after permuting variables: position ``i`` of the
    permuted exponent vector is original position ``perm[i]``."""

    name = "permuted"

    def __init__(self, perm: Sequence[int], inner: MonomialOrder | None = None):
        self.perm = tuple(perm)
        self.inner = inner or GrevLex()

    def key(self, exps):
        return self.inner.key([exps[i] for i in self.perm])

    def describe(self):
        return ("permuted", self.perm, self.inner.describe())


def lex() -> MonomialOrder:
    return Lex()


def grevlex() -> MonomialOrder:
    return GrevLex()


def block(split: int, low: MonomialOrder | None = None, high: MonomialOrder | None = None) -> MonomialOrder:
    return Block(split, low, high)


# ---------------------------------------------------------------------------
# rings and polynomials


class PolyRing:
    """``field[variables]`` optionally modulo a list of relation polynomials.

    The relations are stored as term dictionaries in the ambient ring.
    """

    def __init__(self, field: Field, variables: Sequence[str], relations: Iterable = (),
                 order: MonomialOrder | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        if not variables:
            raise ValueError("a ring needs at least one variable")
        self.field = field
        self.variables = variables
        self.nvars = len(variables)
        self.order = order or GrevLex()
        rels = []
        for r in relations:
            terms = r.terms if isinstance(r, Poly) else dict(r)
            terms = {e: field.convert(c) for e, c in terms.items()}
            terms = {e: c for e, c in terms.items() if c}
            if terms:
                rels.append(terms)
        self._relations = tuple(rels)
        self._key = (field, variables, tuple(frozenset(r.items()) for r in rels), self.order)
        self._hash = hash(self._key)
        self._ambient = None
        self._rel_gb = None

    # structure -----------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    @property
    def relations(self) -> list[Poly]:
        amb = self.ambient
        return [Poly(amb, r) for r in self._relations]

    @property
    def relation_terms(self) -> tuple:
        return self._relations

    @property
    def is_quotient(self) -> bool:
        return bool(self._relations)

    @property
    def ambient(self) -> PolyRing:
        if not self._relations:
            return self
        if self._ambient is None:
            self._ambient = PolyRing(self.field, self.variables, (), self.order)
        return self._ambient

    def quotient(self, relations: Iterable) -> PolyRing:
        """This ring modulo additional relations."""
        extra = [r.terms if isinstance(r, Poly) else r for r in relations]
        return PolyRing(self.field, self.variables, list(self._relations) + extra, self.order)

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return PolyRing(self.field, self.variables, self._relations, order)

    def extend(self, names: Sequence[str], relations: Iterable = (), order: MonomialOrder | None = None) -> PolyRing:
        """Append fresh variables (block order, fresh variables highest, by default)."""
        clash = set(names) & set(self.variables)
        if clash:
            raise ValueError(f"fresh variable names collide with ring variables: {sorted(clash)}")
        k = len(names)
        rels = [{e + (0,) * k: c for e, c in r.items()} for r in self._relations]
        rels += [r.terms if isinstance(r, Poly) else r for r in relations]
        return PolyRing(self.field, self.variables + tuple(names), rels,
                        order or Block(self.nvars, self.order, GrevLex()))

    def embed(self, p: Poly, target: PolyRing) -> Poly:
        """Map ``p`` into a ring whose variables extend this ring's variables."""
        if target.variables[: self.nvars] != self.variables:
            raise RingMismatchError("target ring does not extend the source ring")
        pad = (0,) * (target.nvars - self.nvars)
        return Poly(target, {e + pad: target.field.convert(c) for e, c in p.terms.items()}, clean=True)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PolyRing({self})"

    def __str__(self):
        from .text import print_ring
        return print_ring(self)

    # element constructors -----------------------------------------------

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c) -> Poly:
        c = self.field.convert(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gens(self) -> list[Poly]:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, which) -> Poly:
        i = which if isinstance(which, int) else self.variables.index(which)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def monomial(self, exps: Sequence[int], coef=1) -> Poly:
        return Poly(self, {tuple(exps): self.field.convert(coef)}, clean=True)

    def from_terms(self, terms: Mapping) -> Poly:
        return Poly(self, {tuple(e): self.field.convert(c) for e, c in terms.items()}, clean=True)

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            if value.ring.variables == self.variables:
                return Poly(self, {e: self.field.convert(c) for e, c in value.terms.items()}, clean=True)
            raise RingMismatchError(f"cannot coerce element of {value.ring} into {self}")
        if isinstance(value, str):
            from .text import parse_poly_in
            return parse_poly_in(value, self)
        return self.constant(value)

    def parse(self, text: str) -> Poly:
        from .text import parse_poly_in
        return parse_poly_in(text, self)

    # quotient arithmetic ---------------------------------------------------

    def relation_basis(self):
        """Reduced Gröbner basis of the relation ideal (cached)."""
        if self._rel_gb is None:
            from .groebner import groebner_basis
            self._rel_gb = groebner_basis([Poly(self.ambient, r) for r in self._relations], self.order)
        return self._rel_gb

    def reduce(self, p: Poly) -> Poly:
        """Normal form of ``p`` modulo the relations."""
        if not self._relations:
            return p
        nf = self.relation_basis().reduce(Poly(self.ambient, p.terms))
        return Poly(self, nf.terms)

    def equal(self, a: Poly, b: Poly) -> bool:
        return self.reduce(a - b).is_zero()


def _clean(terms: dict) -> dict:
    return {e: c for e, c in terms.items() if c}


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict, clean: bool = False):
        self.ring = ring
        self.terms = _clean(terms) if clean else terms
        self._hash = None

    # coercion ------------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = K.add(out.get(e, K.zero), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        K = self.ring.field
        return Poly(self.ring, {e: K.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.ring.field
        out: dict = {}
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = K.add(out.get(e, K.zero), K.mul(ca, cb))
        return Poly(self.ring, out, clean=True)

    __rmul__ = __mul__

    def scale(self, c) -> Poly:
        K = self.ring.field
        c = K.convert(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {e: K.mul(c, v) for e, v in self.terms.items()})

    def mul_monomial(self, exps: Sequence[int], c=None) -> Poly:
        K = self.ring.field
        c = K.one if c is None else K.convert(c)
        return Poly(self.ring, {tuple(x + y for x, y in zip(e, exps)): K.mul(c, v)
                                for e, v in self.terms.items()}, clean=True)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        p = self.ring.characteristic
        result = self.ring.one()
        base = self
        # (a+b)^p = a^p + b^p and c^p = c in F_p
        if p:
            while n and n % p == 0:
                base = base.frobenius(1)
                n //= p
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, e: int = 1) -> Poly:
        """Raise to the ``p^e`` power termwise (char p only)."""
        p = self.ring.characteristic
        if not p:
            raise ValueError("Frobenius needs positive characteristic")
        q = p ** e
        return Poly(self.ring, {tuple(q * x for x in ex): c for ex, c in self.terms.items()})

    # inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading_term(self, order: MonomialOrder | None = None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or self.ring.order
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order=None):
        return self.leading_term(order)[0]

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def evaluate(self, values: Sequence):
        """Evaluate at field values (characteristic arithmetic of the ring)."""
        K = self.ring.field
        total = K.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = K.mul(t, K.convert(v) ** k if K.characteristic == 0 else pow(v, k, K.p))
            total = K.add(total, t)
        return total

    def substitute(self, images: Sequence[Poly], target: PolyRing | None = None) -> Poly:
        """Ring map sending variable ``i`` to ``images[i]``."""
        target = target or (images[0].ring if images else self.ring)
        out = target.zero()
        cache: dict = {}
        for e, c in self.terms.items():
            t = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    t = t * cache[key]
            out = out + t
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        from .text import print_canonical
        return print_canonical(self)

    def __repr__(self):
        return f"Poly({self})"


def add(a: Poly, b: Poly) -> Poly:
    return a + b


def mul(a: Poly, b: Poly) -> Poly:
    return a * b


def pow_(a: Poly, n: int) -> Poly:
    return a ** n


def leading_term(p: Poly, order: MonomialOrder | None = None):
    return p.leading_term(order)


def poly_sum(polys: Iterable[Poly], ring: PolyRing) -> Poly:
    return _fold(lambda a, b: a + b, polys, ring.zero())
