"""Exhaustive desk-scale corpus of finite-dimensional modules over GF(5) and GF(7).

Bounded strings are found by graph search: start at every ideal containing
sigma(t) (the irreducible factors of t(f(h))), climb along essential up-edges,
and stop at every ideal containing t.  Band modules are built on every cycle
through an ideal of small degree, with one-dimensional L for one scalar per isomorphism class and,
over prime residue fields, two-dimensional L from a list covering every
similarity class of GL_2.
"""

from __future__ import annotations

from itertools import product

from . import linalg as LA
from . import poly as P
from .bands import build_band, detect_band_data, pmodule
from .dynamics import forward_orbit
from .errors import NotEssential
from .strings import BOUNDED, build_string
from .universe import FinitePoly, sorted_ideals

PRIMES = (5, 7)
F_CHOICES = ((0, 0, 1), (1, 0, 1), (1, 2))  # h^2, h^2+1, 2h+1
T_CHOICES = ((0, 1), (-1, 1), (-2, 1))  # h, h-1, h-2


def universes(primes=PRIMES, fs=F_CHOICES, ts=T_CHOICES) -> list:
    return [FinitePoly(p, f, t) for p in primes for f in fs for t in ts]


def bounded_strings(u, max_n: int = 3) -> list:
    """Every bounded string with n <= max_n (simple or not)."""
    tf = P.compose(u.t, u.f, u.p)
    if P.deg(tf) < 1:
        raise ValueError("sigma(t) must be a nonconstant polynomial")
    bottoms = sorted_ideals(u.ideal(q) for q, _ in P.factor(P.monic(tf, u.p), u.p))
    out = []
    stack = [[b] for b in bottoms]
    while stack:
        chain = stack.pop()
        if u.t_in(chain[-1]):
            out.append(build_string(u, BOUNDED, chain))
        if len(chain) - 1 == max_n:
            continue
        for y in u.up(chain[-1]):
            if u.is_essential_edge(chain[-1], y):
                stack.append(chain + [y])
    out.sort(key=lambda s: [m.sort_key() for m in s.ideals])
    return out


def cycles(u, max_degree: int = 2) -> list:
    """Distinct down-cycles through ideals of degree <= max_degree, as band data."""
    from .universe import PolyIdeal

    seen, out = set(), []
    for d in range(1, max_degree + 1):
        for q in P.irreducibles(u.p, d):
            m = PolyIdeal(u.p, q)
            orbit = forward_orbit(u, m, 10000)
            key = frozenset(orbit.cycle)
            if key in seen:
                continue
            seen.add(key)
            try:
                out.append(detect_band_data(u, orbit.cycle[0]))
            except NotEssential:
                continue
    return out


def gl2_representatives(K) -> list:
    """Scalars and companion matrices of every monic quadratic with nonzero constant."""
    elems = list(K.elements())
    out = []
    for a in elems:
        if not K.is_zero(a):
            out.append([[a, K.zero], [K.zero, a]])
    for c0, c1 in product(elems, repeat=2):
        if K.is_zero(c0):
            continue
        out.append([[K.zero, K.neg(c0)], [K.one, K.neg(c1)]])
    return out


def scalar_classes(band) -> list:
    """One scalar per class of c ~ c s / sigma_bar(s): all units when sigma_bar is trivial."""
    K = band.field
    units = [c for c in K.elements() if not K.is_zero(c)]
    twist = {K.mul(s, K.inv(band.sbar(s))) for s in units}
    seen, reps = set(), []
    for c in units:
        if c not in seen:
            reps.append(c)
            seen.update(K.mul(c, x) for x in twist)
    return reps


def band_modules(u, max_d: int = 2, max_total_dim: int = 4) -> list:
    out = []
    for band in cycles(u):
        K = band.field
        if band.k * band.degree > max_total_dim:
            continue
        for c in scalar_classes(band):
            for v in ("M", "N"):
                out.append(build_band(band, pmodule(band, [[c]]), v))
        # two-dimensional L only over prime residue fields, where the list
        # above is a full set of similarity class representatives
        if max_d >= 2 and band.degree == 1 and 2 * band.k <= max_total_dim:
            for A in gl2_representatives(K):
                if not LA.is_invertible(K, A):
                    continue
                for v in ("M", "N"):
                    out.append(build_band(band, pmodule(band, A), v))
    return out


def full_corpus(max_n: int = 3, max_d: int = 2, max_total_dim: int = 4):
    """Yield (universe, module) pairs over every corpus universe."""
    for u in universes():
        for s in bounded_strings(u, max_n):
            yield u, s
        for b in band_modules(u, max_d, max_total_dim):
            yield u, b
