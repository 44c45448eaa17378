"""Exact coefficient fields used by the linear-algebra routines.

Every field object exposes the same small protocol: ``zero``, ``one``,
``add``, ``sub``, ``neg``, ``mul``, ``inv``, ``is_zero``, ``eq``; finite
fields also expose ``size``, ``elements()`` and coordinate maps over the
prime field (``coords`` / ``from_coords``) so residue extensions can be
flattened into prime-field matrices.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Any

import sympy

from . import poly as P


class PrimeField:
    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1
        self.degree = 1

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    @property
    def size(self) -> int:
        return self.p

    @property
    def finite(self) -> bool:
        return True

    def __call__(self, x) -> int:
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def eq(self, a, b) -> bool:
        return (a - b) % self.p == 0

    def elements(self):
        return range(self.p)

    def coords(self, a) -> list[int]:
        return [a % self.p]

    def from_coords(self, v) -> int:
        return v[0] % self.p


class RationalField:
    """The rationals, with Fraction elements."""

    zero = Fraction(0)
    one = Fraction(1)
    p = 0
    degree = 1

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    @property
    def finite(self) -> bool:
        return False

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def coords(self, a) -> list[Fraction]:
        return [Fraction(a)]

    def from_coords(self, v) -> Fraction:
        return Fraction(v[0])


class ExtensionField:
    """GF(p)[h]/(m) for a monic irreducible m; elements are coefficient tuples."""

    def __init__(self, p: int, modulus: P.Poly):
        self.p = p
        self.modulus = modulus
        self.degree = P.deg(modulus)
        self.zero: P.Poly = P.ZERO
        self.one: P.Poly = P.ONE

    def __repr__(self) -> str:
        return f"GF({self.p})[h]/({P.render(self.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtensionField) and (other.p, other.modulus) == (self.p, self.modulus)

    def __hash__(self) -> int:
        return hash(("ext", self.p, self.modulus))

    @property
    def size(self) -> int:
        return self.p**self.degree

    @property
    def finite(self) -> bool:
        return True

    def __call__(self, x) -> P.Poly:
        if isinstance(x, int):
            return P.const(x, self.p)
        return P.rem(P.norm(x, self.p), self.modulus, self.p)

    def add(self, a, b):
        return P.add(a, b, self.p)

    def sub(self, a, b):
        return P.sub(a, b, self.p)

    def neg(self, a):
        return P.neg(a, self.p)

    def mul(self, a, b):
        return P.mulmod(a, b, self.modulus, self.p)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return P.inv_mod(a, self.modulus, self.p)

    def is_zero(self, a) -> bool:
        return not a

    def eq(self, a, b) -> bool:
        return a == b

    def elements(self):
        for c in product(range(self.p), repeat=self.degree):
            yield P.norm(c, self.p)

    def coords(self, a) -> list[int]:
        return list(a) + [0] * (self.degree - len(a))

    def from_coords(self, v) -> P.Poly:
        return P.norm(v, self.p)

    @cached_property
    def basis(self) -> list[P.Poly]:
        return [P.norm([0] * i + [1], self.p) for i in range(self.degree)]


class SymbolicField:
    """Exact complex scalars (cyclotomic values and a generic zdot) via sympy."""

    zero = sympy.Integer(0)
    one = sympy.Integer(1)
    p = 0
    degree = 1

    def __repr__(self) -> str:
        return "CC(exact)"

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolicField)

    def __hash__(self) -> int:
        return hash("CCexact")

    @property
    def finite(self) -> bool:
        return False

    def __call__(self, x) -> Any:
        return sympy.sympify(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a) -> bool:
        a = sympy.expand(a)
        if a == 0:
            return True
        # a clearly nonzero numeric value settles it; otherwise ask sympy for
        # a proof (plain simplify misses sums of roots of unity)
        if not a.free_symbols and abs(complex(sympy.N(a, 30))) > 1e-12:
            return False
        verdict = a.equals(0)
        if verdict is None:
            return sympy.simplify(sympy.expand_complex(a)) == 0
        return bool(verdict)

    def eq(self, a, b) -> bool:
        return self.is_zero(a - b)


def prime_field(p: int):
    return RationalField() if p == 0 else PrimeField(p)
