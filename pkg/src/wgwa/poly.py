"""Dense univariate polynomials over GF(p).

A polynomial a_0 + a_1 h + ... + a_n h^n is stored as the tuple
(a_0, a_1, ..., a_n) of integers in range(p) with a_n != 0; the zero
polynomial is the empty tuple.  All functions take the modulus p
explicitly and return freshly normalized tuples.

Factorization runs square-free decomposition, distinct-degree splitting
and Cantor-Zassenhaus equal-degree splitting.  For small inputs the linear
factors are cross-checked against a naive root scan.
"""

from __future__ import annotations

import random
from functools import lru_cache
from collections.abc import Iterable, Iterator
from itertools import product

Poly = tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)
H: Poly = (0, 1)

ROOT_SCAN_LIMIT = 10**4
_EDF_SEED = 0x5EED


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


def norm(a: Iterable[int], p: int) -> Poly:
    c = [x % p for x in a]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(a: Poly) -> int:
    """Degree, with deg(0) = -1."""
    return len(a) - 1


def const(c: int, p: int) -> Poly:
    return norm((c,), p)


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, y in enumerate(b):
        r[i] = (r[i] + y) % p
    return norm(r, p)


def neg(a: Poly, p: int) -> Poly:
    return tuple((-x) % p for x in a)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, neg(b, p), p)


def smul(c: int, a: Poly, p: int) -> Poly:
    return norm((c * x for x in a), p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ZERO
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return norm(r, p)


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i] * inv_lead % p
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                r[i - db + j] = (r[i - db + j] - c * y) % p
    return norm(q, p), norm(r[:db], p)


def rem(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return a
    return smul(pow(a[-1], p - 2, p), a, p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return ZERO, ZERO, ZERO
    c = pow(r0[-1], p - 2, p)
    return smul(c, r0, p), smul(c, s0, p), smul(c, t0, p)


def inv_mod(a: Poly, m: Poly, p: int) -> Poly:
    g, s, _ = xgcd(a, m, p)
    if g != ONE:
        raise ZeroDivisionError("polynomial is not invertible modulo m")
    return rem(s, m, p)


def mulmod(a: Poly, b: Poly, m: Poly, p: int) -> Poly:
    return rem(mul(a, b, p), m, p)


def powmod(a: Poly, e: int, m: Poly, p: int) -> Poly:
    result = rem(ONE, m, p)
    base = rem(a, m, p)
    while e:
        if e & 1:
            result = mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = mulmod(base, base, m, p)
    return result


def evaluate(a: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def compose(a: Poly, b: Poly, p: int) -> Poly:
    """a(b(h))."""
    acc: Poly = ZERO
    for c in reversed(a):
        acc = add(mul(acc, b, p), (c,), p)
    return acc


def compose_mod(a: Poly, b: Poly, m: Poly, p: int) -> Poly:
    """a(b(h)) mod m, by Horner in GF(p)[h]/(m)."""
    b = rem(b, m, p)
    acc: Poly = ZERO
    for c in reversed(a):
        acc = rem(add(mul(acc, b, p), (c,), p), m, p)
    return acc


def derivative(a: Poly, p: int) -> Poly:
    return norm((i * c for i, c in enumerate(a) if i), p)


def _frobenius_power(m: Poly, k: int, p: int) -> Poly:
    """h^(p^k) mod m."""
    x = rem(H, m, p)
    for _ in range(k):
        x = powmod(x, p, m, p)
    return x


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=1 << 16)
def is_irreducible(a: Poly, p: int) -> bool:
    """Rabin's irreducibility test."""
    n = deg(a)
    if n < 1:
        return False
    if n == 1:
        return True
    a = monic(a, p)
    if _frobenius_power(a, n, p) != rem(H, a, p):
        return False
    for q in _prime_factors(n):
        x = sub(_frobenius_power(a, n // q, p), H, p)
        if gcd(a, x, p) != ONE:
            return False
    return True


def _pth_root(a: Poly, p: int) -> Poly:
    # over GF(p) the p-th root of sum c_i h^(ip) is sum c_i h^i
    return norm(a[::p], p)


def squarefree_factorization(a: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic square-free parts with multiplicities; product equals monic(a)."""
    a = monic(a, p)
    if deg(a) < 1:
        return []
    out: list[tuple[Poly, int]] = []
    i = 1
    c = gcd(a, derivative(a, p), p)
    w = divmod_(a, c, p)[0]
    while w != ONE:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if z != ONE:
            out.append((z, i))
        i += 1
        w, c = y, divmod_(c, y, p)[0]
    if c != ONE:
        for g, j in squarefree_factorization(_pth_root(c, p), p):
            out.append((g, j * p))
    return out


def distinct_degree(a: Poly, p: int) -> list[tuple[Poly, int]]:
    """Split a square-free monic polynomial into products of equal-degree factors."""
    out = []
    x = rem(H, a, p)
    d = 0
    rest = a
    while deg(rest) >= 2 * (d + 1):
        d += 1
        x = powmod(x, p, rest, p)
        g = gcd(rest, sub(x, H, p), p)
        if g != ONE:
            out.append((g, d))
            rest = divmod_(rest, g, p)[0]
            x = rem(x, rest, p)
    if deg(rest) > 0:
        out.append((rest, deg(rest)))
    return out


def equal_degree(a: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles."""
    n = deg(a)
    if n == d:
        return [a]
    while True:
        b = norm([rng.randrange(p) for _ in range(n)], p)
        if deg(b) < 1:
            continue
        if p == 2:
            # trace map b + b^2 + ... + b^(2^(d-1))
            s, acc = rem(b, a, p), rem(b, a, p)
            for _ in range(d - 1):
                s = mulmod(s, s, a, p)
                acc = add(acc, s, p)
            g = gcd(a, acc, p)
        else:
            g = gcd(a, sub(powmod(b, (p**d - 1) // 2, a, p), ONE, p), p)
        if g != ONE and g != a:
            h = divmod_(a, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


def sort_key(a: Poly) -> tuple:
    return (len(a), tuple(reversed(a)))


def roots_by_scan(a: Poly, p: int) -> list[int]:
    return [x for x in range(p) if evaluate(a, x, p) == 0]


def factor(a: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of a with multiplicities, sorted deterministically."""
    if not a:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(_EDF_SEED)
    mult: dict[Poly, int] = {}
    for part, e in squarefree_factorization(a, p):
        for g, d in distinct_degree(part, p):
            for q in equal_degree(g, d, p, rng):
                mult[q] = mult.get(q, 0) + e
    out = sorted(mult.items(), key=lambda qe: sort_key(qe[0]))
    if p * max(deg(a), 1) <= ROOT_SCAN_LIMIT:
        linear = sorted((-q[0]) % p for q, _ in out if len(q) == 2)
        if linear != roots_by_scan(a, p):
            raise RuntimeError(f"factorization of {a} over GF({p}) disagrees with root scan")
    return out


def monic_polys(p: int, d: int) -> Iterator[Poly]:
    for tail in product(range(p), repeat=d):
        yield tuple(tail) + (1,)


def irreducibles(p: int, d: int) -> Iterator[Poly]:
    """All monic irreducible polynomials of degree d, in sort_key order."""
    found = [a for a in monic_polys(p, d) if is_irreducible(a, p)]
    yield from sorted(found, key=sort_key)


def _term(c: int, i: int, var: str) -> str:
    if i == 0:
        return str(c)
    mono = var if i == 1 else f"{var}^{i}"
    return mono if c == 1 else f"{c}{mono}"


def render(a: Poly, var: str = "h") -> str:
    if not a:
        return "0"
    parts = [_term(c, i, var) for i, c in reversed(list(enumerate(a))) if c]
    return "+".join(parts)


def parse_coeffs(text: str) -> list[int]:
    """Parse "0,0,1" (constant term first) into a list of integers."""
    items = [s.strip() for s in text.split(",")]
    if not items or any(s == "" for s in items):
        raise ValueError(f"bad coefficient list: {text!r}")
    return [int(s) for s in items]


def parse_expr(text: str, p: int | None = None) -> list[int]:
    """Parse a small polynomial expression in h such as "h^2-2" or "h+3".

    Returns integer coefficients (constant first); reduced mod p when given.
    """
    s = text.replace(" ", "").replace("−", "-")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ValueError("empty polynomial")
    s = s.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        if "h" in term:
            head, _, tail = term.partition("h")
            head = head.rstrip("*")
            c = int(head) if head else 1
            if tail.startswith("^"):
                e = int(tail[1:])
            elif tail == "":
                e = 1
            else:
                raise ValueError(f"bad term {term!r}")
        else:
            c, e = int(term), 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
    out = [coeffs.get(i, 0) for i in range(max(coeffs) + 1)]
    if p is not None:
        out = [c % p for c in out]
    return out

