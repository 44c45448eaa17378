"""Computable presentations of (R, sigma, t).

Three backends are provided:

* ``FinitePoly(p, f, t)``: R = GF(p)[h], sigma(h) = f(h).  Points are monic
  irreducible polynomials; residue fields are GF(p)[h]/(m).
* ``PowerMap(n, zdot)``: R = C[h] with f(h) = h^n and t = h + zdot, restricted
  to the invariant set {0} together with the roots of unity.  A root of unity
  exp(2 pi i q) is stored as the exact angle q in [0, 1).
* ``Affine(a, b, t)``: R = Q[h] with f(h) = a h + b, restricted to rational
  points.

Every point m has a unique ``down(m)``, the point n with sigma(n) inside m.
Module-level functions at the bottom mirror the methods for callers that
prefer a functional style.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Union

import sympy

from . import linalg as LA
from . import poly as P
from .errors import (
    InvalidIdeal,
    NonPrimeModulus,
    NotAnEdge,
    NotEssential,
    NotFinite,
    ZeroLeadingCoefficient,
)
from .fields import ExtensionField, PrimeField, RationalField, SymbolicField

# ---------------------------------------------------------------- points


@dataclass(frozen=True)
class PolyIdeal:
    """The maximal ideal of GF(p)[h] generated by a monic irreducible polynomial."""

    p: int
    coeffs: P.Poly

    def __post_init__(self):
        c = P.norm(self.coeffs, self.p)
        object.__setattr__(self, "coeffs", c)
        if P.deg(c) < 1 or c[-1] != 1:
            raise InvalidIdeal(f"{P.render(c)} is not a monic polynomial of positive degree")
        if not P.is_irreducible(c, self.p):
            raise InvalidIdeal(f"{P.render(c)} is not irreducible over GF({self.p})")

    @property
    def degree(self) -> int:
        return P.deg(self.coeffs)

    def root(self) -> int | None:
        return (-self.coeffs[0]) % self.p if self.degree == 1 else None

    def render(self) -> str:
        if self.degree == 1:
            r = self.root()
            return "(h)" if r == 0 else f"(h-{r})"
        return f"({P.render(self.coeffs)})"

    def sort_key(self) -> tuple:
        if self.degree == 1:
            return (0, 1, (self.root(),))
        return (0, self.degree, self.coeffs)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Angle:
    """The root of unity exp(2 pi i q), q in [0, 1)."""

    q: Fraction

    def __post_init__(self):
        q = Fraction(self.q)
        object.__setattr__(self, "q", q - (q.numerator // q.denominator))

    def render(self) -> str:
        q = self.q
        return f"angle:{q.numerator}" if q.denominator == 1 else f"angle:{q.numerator}/{q.denominator}"

    def sort_key(self) -> tuple:
        return (1, self.q.denominator, self.q.numerator)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class ZeroPoint:
    def render(self) -> str:
        return "zero"

    def sort_key(self) -> tuple:
        return (1, 0, 0)

    def __str__(self) -> str:
        return "zero"


@dataclass(frozen=True)
class RationalPoint:
    chi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "chi", Fraction(self.chi))

    def render(self) -> str:
        c = self.chi
        return f"chi:{c.numerator}" if c.denominator == 1 else f"chi:{c.numerator}/{c.denominator}"

    def sort_key(self) -> tuple:
        return (2, self.chi.numerator, self.chi.denominator)

    def __str__(self) -> str:
        return self.render()


MaxIdeal = Union[PolyIdeal, Angle, ZeroPoint, RationalPoint]
ZERO_POINT = ZeroPoint()


@dataclass(frozen=True)
class Outside:
    """Marker for a zdot at which t vanishes on no stored point."""

    def render(self) -> str:
        return "outside"


OUTSIDE = Outside()


class _AllPoints:
    """Stands for every point of a universe (the t = 0 case)."""

    def __contains__(self, m) -> bool:
        return True

    def __iter__(self):
        return iter(())

    def __repr__(self) -> str:
        return "ALL_POINTS"


ALL_POINTS = _AllPoints()


@dataclass(frozen=True)
class ResidueElement:
    """A residue class r + m, with the value reduced modulo the home ideal."""

    home: Any
    value: Any

    def __str__(self) -> str:
        return f"{render_value(self.value, self.home)} mod {self.home.render()}"


def render_value(value, home) -> str:
    if isinstance(home, PolyIdeal):
        return P.render(value)
    return str(value)


def sorted_ideals(ideals) -> tuple:
    return tuple(sorted(set(ideals), key=lambda m: m.sort_key()))


# ---------------------------------------------------------------- backends


class _Universe:
    """Shared behaviour; subclasses supply down/up/residue data."""

    kind: str

    # residue helpers -------------------------------------------------

    def residue(self, m, value) -> ResidueElement:
        return ResidueElement(m, self.reduce_value(m, value))

    def zero_at(self, m) -> ResidueElement:
        return ResidueElement(m, self.field(m).zero)

    def one_at(self, m) -> ResidueElement:
        return ResidueElement(m, self.field(m).one)

    def vanishing(self, m) -> dict:
        return {"t_in": self.t_in(m), "sigma_t_in": self.sigma_t_in(m)}

    def is_edge(self, m_from, m_to) -> bool:
        return self.down(m_to) == m_from

    def require_edge(self, m_from, m_to) -> None:
        self.check_ideal(m_from)
        self.check_ideal(m_to)
        if not self.is_edge(m_from, m_to):
            raise NotAnEdge(f"down({m_to.render()}) is not {m_from.render()}")

    def t_in(self, m) -> bool:
        return self.field(m).is_zero(self.t_residue(m))

    def sigma_t_in(self, m) -> bool:
        return self.t_in(self.down(m))

    def sigma_t_residue(self, m):
        return self.sigma_residue(self.down(m), m, ResidueElement(self.down(m), self.t_residue(self.down(m)))).value


@dataclass(frozen=True)
class FinitePoly(_Universe):
    p: int
    f: P.Poly
    t: P.Poly
    kind = "finite_poly"

    def __post_init__(self):
        if not P.is_prime(self.p):
            raise NonPrimeModulus(f"{self.p} is not prime")
        object.__setattr__(self, "f", P.norm(self.f, self.p))
        object.__setattr__(self, "t", P.norm(self.t, self.p))

    def describe(self) -> dict:
        return {"backend": "finite_poly", "p": self.p, "f": list(self.f), "t": list(self.t)}

    def __str__(self) -> str:
        return f"GF({self.p})[h], sigma(h)={P.render(self.f)}, t={P.render(self.t)}"

    @property
    def scalar_field(self):
        return PrimeField(self.p)

    def ideal(self, coeffs) -> PolyIdeal:
        return PolyIdeal(self.p, tuple(coeffs))

    def check_ideal(self, m) -> None:
        if not isinstance(m, PolyIdeal) or m.p != self.p:
            raise InvalidIdeal(f"{m!r} is not a point of {self}")

    def parse_ideal(self, text: str) -> PolyIdeal:
        s = text.strip()
        try:
            if "," in s and "h" not in s:
                coeffs = P.parse_coeffs(s.strip("()"))
            else:
                coeffs = P.parse_expr(s, self.p)
        except ValueError as exc:
            raise InvalidIdeal(str(exc)) from None
        return self.ideal(P.norm(coeffs, self.p))

    def field(self, m) -> ExtensionField:
        return _ext_field(self.p, m.coeffs)

    def reduce_value(self, m, value) -> P.Poly:
        if isinstance(value, int):
            value = (value,)
        return P.rem(P.norm(value, self.p), m.coeffs, self.p)

    def f_coeffs(self) -> list:
        return list(self.f)

    def t_coeffs(self) -> list:
        return list(self.t)

    def t_residue(self, m) -> P.Poly:
        return P.rem(self.t, m.coeffs, self.p)

    def h_residue(self, m) -> P.Poly:
        return P.rem(P.H, m.coeffs, self.p)

    def t_in(self, m) -> bool:
        return not self.t_residue(m)

    def sigma_t_in(self, m) -> bool:
        return not P.compose_mod(self.t, self.f, m.coeffs, self.p)

    def t_roots(self):
        """Points containing t, or ALL_POINTS when t = 0."""
        if not self.t:
            return ALL_POINTS
        if len(self.t) == 1:
            return ()
        return sorted_ideals(PolyIdeal(self.p, q) for q, _ in P.factor(self.t, self.p))

    def down(self, m) -> PolyIdeal:
        self.check_ideal(m)
        return PolyIdeal(self.p, _finite_down(self.p, self.f, m.coeffs))

    def up(self, m, degree_bound: int | None = None) -> tuple:
        self.check_ideal(m)
        pulled = P.compose(m.coeffs, self.f, self.p)
        if not pulled:
            # f is constant and m = (h - f): every point maps down to m
            bound = m.degree if degree_bound is None else degree_bound
            return tuple(PolyIdeal(self.p, q) for d in range(1, bound + 1) for q in P.irreducibles(self.p, d))
        if P.deg(pulled) < 1:
            return ()
        return sorted_ideals(PolyIdeal(self.p, q) for q, _ in P.factor(pulled, self.p))

    def residue_map(self, m_from, m_to) -> list[list[int]]:
        """Matrix over GF(p) of r + m_from -> r(f) + m_to in the power bases."""
        self.require_edge(m_from, m_to)
        return _residue_map(self.p, self.f, m_from.coeffs, m_to.coeffs)

    def sigma_residue(self, m_from, m_to, x: ResidueElement) -> ResidueElement:
        self.require_edge(m_from, m_to)
        return ResidueElement(m_to, P.compose_mod(self.reduce_value(m_from, x.value), self.f, m_to.coeffs, self.p))

    def is_essential_edge(self, m_from, m_to) -> bool:
        M = self.residue_map(m_from, m_to)
        return LA.rank(PrimeField(self.p), M) == m_to.degree

    def invert_sigma(self, m_to, x: ResidueElement) -> ResidueElement:
        m_from = self.down(m_to)
        if not self.is_essential_edge(m_from, m_to):
            raise NotEssential(f"edge {m_from.render()} -> {m_to.render()} is not essential")
        F = PrimeField(self.p)
        M = self.residue_map(m_from, m_to)
        rhs = self.field(m_to).coords(self.reduce_value(m_to, x.value))
        s = LA.solve(F, M, rhs)
        return ResidueElement(m_from, P.norm(s, self.p))


@lru_cache(maxsize=None)
def _ext_field(p: int, m: P.Poly) -> ExtensionField:
    return ExtensionField(p, m)


@lru_cache(maxsize=65536)
def _finite_down(p: int, f: P.Poly, m: P.Poly) -> P.Poly:
    # minimal polynomial of a = f(theta) in GF(p)[h]/(m): collect powers of a
    # until the next one is dependent, then solve for the relation
    F = PrimeField(p)
    d = P.deg(m)
    a = P.rem(f, m, p)
    echelon = LA.Echelon(F, d)
    powers: list[P.Poly] = []
    cur = P.rem(P.ONE, m, p)
    while echelon.add(_pad(cur, d)) is not None:
        powers.append(cur)
        cur = P.mulmod(cur, a, m, p)
    coeffs = _dependency(F, powers, cur, d)
    return P.norm([(-c) % p for c in coeffs] + [1], p)


def _pad(v: P.Poly, d: int) -> list[int]:
    return list(v) + [0] * (d - len(v))


def _dependency(F, powers: list[P.Poly], target: P.Poly, d: int) -> list[int]:
    M = LA.transpose([_pad(v, d) for v in powers])
    rhs = _pad(target, d)
    sol = LA.solve(F, M, rhs)
    if sol is None:
        raise ArithmeticError("minimal polynomial search failed")
    return sol


@lru_cache(maxsize=65536)
def _residue_map(p: int, f: P.Poly, m_from: P.Poly, m_to: P.Poly) -> list[list[int]]:
    dt, df = P.deg(m_to), P.deg(m_from)
    cols = []
    for j in range(df):
        e = P.norm([0] * j + [1], p)
        img = P.compose_mod(e, f, m_to, p)
        cols.append(list(img) + [0] * (dt - len(img)))
    return LA.transpose(cols)


def _theta(m) -> Any:
    if isinstance(m, ZeroPoint):
        return sympy.Integer(0)
    q = m.q
    return sympy.exp(2 * sympy.pi * sympy.I * sympy.Rational(q.numerator, q.denominator))


ZDOT_SYMBOL = sympy.Symbol("zdot")


@dataclass(frozen=True)
class PowerMap(_Universe):
    """f(h) = h^n on {0} and the roots of unity; t = h + zdot."""

    n: int
    zdot: Any = OUTSIDE
    kind = "power_map"

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("exponent must be non-negative")
        if not isinstance(self.zdot, (Outside, Angle, ZeroPoint)):
            raise InvalidIdeal(f"zdot must be a stored point or Outside, got {self.zdot!r}")

    def describe(self) -> dict:
        return {"backend": "power_map", "n": self.n, "zdot": self.zdot.render()}

    def __str__(self) -> str:
        return f"C[h], sigma(h)=h^{self.n}, t vanishing at {self.zdot.render()}"

    @property
    def scalar_field(self):
        return SymbolicField()

    @property
    def zdot_value(self):
        if isinstance(self.zdot, Outside):
            return ZDOT_SYMBOL
        return -_theta(self.zdot)

    def check_ideal(self, m) -> None:
        if not isinstance(m, (Angle, ZeroPoint)):
            raise InvalidIdeal(f"{m!r} is not a point of {self}")

    def parse_ideal(self, text: str):
        return parse_point(text, ("angle", "zero"))

    def field(self, m) -> SymbolicField:
        return SymbolicField()

    def reduce_value(self, m, value):
        # a polynomial representative is evaluated at the point
        if isinstance(value, (tuple, list)):
            th = _theta(m)
            return sympy.expand(sum(sympy.sympify(c) * th**i for i, c in enumerate(value)))
        return sympy.sympify(value)

    def theta(self, m):
        return _theta(m)

    def f_coeffs(self) -> list:
        return [sympy.Integer(0)] * self.n + [sympy.Integer(1)]

    def t_coeffs(self) -> list:
        return [self.zdot_value, sympy.Integer(1)]

    def t_residue(self, m):
        return _theta(m) + self.zdot_value

    def h_residue(self, m):
        return _theta(m)

    def t_in(self, m) -> bool:
        self.check_ideal(m)
        return not isinstance(self.zdot, Outside) and m == self.zdot

    def sigma_t_in(self, m) -> bool:
        return self.t_in(self.down(m))

    def t_roots(self):
        return () if isinstance(self.zdot, Outside) else (self.zdot,)

    def down(self, m):
        self.check_ideal(m)
        if self.n == 0:
            return Angle(Fraction(0))
        if isinstance(m, ZeroPoint):
            return m
        return Angle(self.n * m.q)

    def up(self, m, degree_bound: int | None = None) -> tuple:
        self.check_ideal(m)
        n = self.n
        if n == 0:
            if m != Angle(Fraction(0)):
                return ()
            # every point maps to angle 0; list those with denominator <= bound
            bound = 1 if degree_bound is None else degree_bound
            pts = [ZERO_POINT] + [Angle(Fraction(a, b)) for b in range(1, bound + 1) for a in range(b)]
            return sorted_ideals(pts)
        if isinstance(m, ZeroPoint):
            return (m,)
        return sorted_ideals(Angle((m.q + k) / n) for k in range(n))

    def sigma_residue(self, m_from, m_to, x: ResidueElement) -> ResidueElement:
        self.require_edge(m_from, m_to)
        return ResidueElement(m_to, x.value)

    def is_essential_edge(self, m_from, m_to) -> bool:
        self.require_edge(m_from, m_to)
        return True

    def invert_sigma(self, m_to, x: ResidueElement) -> ResidueElement:
        return ResidueElement(self.down(m_to), x.value)


@dataclass(frozen=True)
class Affine(_Universe):
    """f(h) = a h + b over Q on rational points; t of degree at most one.

    ``allow_constant`` admits a = 0 (constant f); then ``up`` of the image
    point is all of Q and is refused.
    """

    a: Fraction
    b: Fraction
    t: tuple = (Fraction(0), Fraction(1))
    allow_constant: bool = field(default=False, compare=False)
    kind = "affine"

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        if a == 0 and not self.allow_constant:
            raise ZeroLeadingCoefficient("affine map needs a != 0")
        t = [Fraction(c) for c in self.t]
        while t and t[-1] == 0:
            t.pop()
        if len(t) > 2:
            raise ValueError("t must have degree at most one")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "t", tuple(t))

    def describe(self) -> dict:
        d = {"backend": "affine", "a": str(self.a), "b": str(self.b), "t": [str(c) for c in self.t]}
        if self.allow_constant:
            d["allow_constant"] = True
        return d

    def __str__(self) -> str:
        return f"Q[h], sigma(h)={self.a}h+{self.b}, t={list(map(str, self.t))}"

    @property
    def scalar_field(self):
        return RationalField()

    def check_ideal(self, m) -> None:
        if not isinstance(m, RationalPoint):
            raise InvalidIdeal(f"{m!r} is not a point of {self}")

    def parse_ideal(self, text: str):
        return parse_point(text, ("chi",))

    def field(self, m) -> RationalField:
        return RationalField()

    def reduce_value(self, m, value) -> Fraction:
        if isinstance(value, (tuple, list)):
            return sum((Fraction(c) * m.chi**i for i, c in enumerate(value)), Fraction(0))
        return Fraction(value)

    def f_coeffs(self) -> list:
        return [self.b, self.a]

    def t_coeffs(self) -> list:
        return list(self.t)

    def t_residue(self, m) -> Fraction:
        return self.reduce_value(m, self.t)

    def h_residue(self, m) -> Fraction:
        return m.chi

    def t_roots(self):
        if not self.t:
            return ALL_POINTS
        if len(self.t) == 1:
            return ()
        return (RationalPoint(-self.t[0] / self.t[1]),)

    def down(self, m) -> RationalPoint:
        self.check_ideal(m)
        return RationalPoint(self.a * m.chi + self.b)

    def up(self, m, degree_bound: int | None = None) -> tuple:
        self.check_ideal(m)
        if self.a == 0:
            if m.chi == self.b:
                raise NotFinite("every rational point maps to the image of a constant map")
            return ()
        return (RationalPoint((m.chi - self.b) / self.a),)

    def sigma_residue(self, m_from, m_to, x: ResidueElement) -> ResidueElement:
        self.require_edge(m_from, m_to)
        return ResidueElement(m_to, Fraction(x.value))

    def is_essential_edge(self, m_from, m_to) -> bool:
        self.require_edge(m_from, m_to)
        return True

    def invert_sigma(self, m_to, x: ResidueElement) -> ResidueElement:
        return ResidueElement(self.down(m_to), Fraction(x.value))


WeightUniverse = Union[FinitePoly, PowerMap, Affine]


# ---------------------------------------------------------------- parsing


def parse_point(text: str, allowed=("angle", "zero", "chi")):
    s = text.strip().lower()
    if s == "zero" and "zero" in allowed:
        return ZERO_POINT
    head, sep, tail = s.partition(":")
    if sep and head in allowed:
        try:
            val = Fraction(tail)
        except (ValueError, ZeroDivisionError):
            raise InvalidIdeal(f"cannot parse point {text!r}") from None
        if head == "angle":
            if not 0 <= val < 1:
                raise InvalidIdeal(f"angle {val} is outside [0, 1)")
            return Angle(val)
        return RationalPoint(val)
    raise InvalidIdeal(f"cannot parse point {text!r}")


def parse_ideal(u, text: str):
    return u.parse_ideal(text)


def make_universe(spec) -> WeightUniverse:
    """Build a universe from a description dict (the ``describe()`` format)."""
    if isinstance(spec, (FinitePoly, PowerMap, Affine)):
        return spec
    backend = spec.get("backend")
    if backend == "finite_poly":
        return FinitePoly(int(spec["p"]), tuple(int(c) for c in spec["f"]), tuple(int(c) for c in spec["t"]))
    if backend == "power_map":
        z = spec.get("zdot", "outside")
        if isinstance(z, str):
            z = OUTSIDE if z.strip().lower() == "outside" else parse_point(z, ("angle", "zero"))
        return PowerMap(int(spec["n"]), z)
    if backend == "affine":
        t = spec.get("t", ["0", "1"])
        return Affine(Fraction(spec["a"]), Fraction(spec["b"]), tuple(Fraction(c) for c in t),
                      allow_constant=bool(spec.get("allow_constant", False)))
    raise ValueError(f"unknown backend {backend!r}")


# ---------------------------------------------------------------- functional API


def down(u, m):
    return u.down(m)


def up(u, m, degree_bound: int | None = None) -> tuple:
    return u.up(m, degree_bound)


def vanishing(u, m) -> dict:
    u.check_ideal(m)
    return u.vanishing(m)


def sigma_residue(u, m_from, m_to, x: ResidueElement) -> ResidueElement:
    if x.home != m_from:
        raise InvalidIdeal("residue element does not live at the source ideal")
    return u.sigma_residue(m_from, m_to, x)


def is_essential_edge(u, m_from, m_to) -> bool:
    return u.is_essential_edge(m_from, m_to)


def invert_sigma(u, m_to, x: ResidueElement) -> ResidueElement:
    if x.home != m_to:
        raise InvalidIdeal("residue element does not live at the target ideal")
    return u.invert_sigma(m_to, x)
