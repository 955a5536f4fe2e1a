"""Random instance generators shared by the oracle-backed tests."""

import random

from closurekit.harness import random_poly


def radical_instance(R, rng: random.Random):
    """``(I, f)`` with ``f`` in the radical of ``I`` but usually not in ``I``.

    ``I = (a^2, b^2 + a*c)`` has ``a`` and ``b`` in its radical, and then
    ``f = a*s + b*t`` is too.
    """
    a = random_poly(R, rng, max_deg=1, max_terms=2)
    b = random_poly(R, rng, max_deg=1, max_terms=2)
    c = random_poly(R, rng, max_deg=1, max_terms=2)
    s = random_poly(R, rng, max_deg=2, max_terms=2)
    t = random_poly(R, rng, max_deg=2, max_terms=2)
    gens = [a * a, b * b + a * c]
    if rng.random() < 0.4:
        gens.append(random_poly(R, rng, max_deg=3, max_terms=2))
    return gens, a * s + b * t


def exact_pair_instance(R, rng: random.Random):
    """``(alpha, beta, alpha_shape, beta_shape)`` with ``beta * alpha = 0``."""
    def rp(d=1):
        return random_poly(R, rng, max_deg=d, max_terms=2)
    kind = rng.randrange(5)
    zero = R.zero()
    if kind == 0:  # Koszul-type on (u1, u2)
        u1, u2, r, s = rp(), rp(), rp(), rp()
        return [[u2 * s], [-u1 * s]], [[u1 * r, u2 * r]], (2, 1), (1, 2)
    if kind == 1:  # a row into zero
        a = rng.randint(1, 3)
        return [[rp() for _ in range(a)]], [[zero]], (1, a), (1, 1)
    if kind == 2:  # zero into multiplication
        return [[zero]], [[rp()]], (1, 1), (1, 1)
    if kind == 3:  # two columns in the kernel of a row
        v1, v2, a, b = rp(), rp(), rp(), rp()
        return [[v2 * a, v2 * b], [-v1 * a, -v1 * b]], [[v1, v2]], (2, 2), (1, 2)
    # block diagonal: unit-ish pieces with a random scalar polynomial
    g, h = rp(), rp()
    return [[g], [zero]], [[zero, h]], (2, 1), (1, 2)
