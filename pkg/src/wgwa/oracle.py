"""Brute-force verification on flat matrix realizations.

A ``FiniteModule`` stores the matrices of h, X and Y on a finite basis over
the prime field (GF(p); rationals or exact complex scalars for the
characteristic-zero universes).  Everything below works on those matrices
alone: the string and band formulas are used only to fill them in.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import product
from typing import Any

import sympy

from . import linalg as LA
from . import poly as P
from .bands import BandModule, band_act
from .errors import BudgetExceeded, NotFinite
from .fields import ExtensionField, PrimeField, RationalField, SymbolicField, prime_field
from .strings import BOUNDED, StringElement, StringModule, Scalar, X, Y, string_act
from .universe import PolyIdeal, RationalPoint

DEFAULT_BUDGET = 10**6
RANDOM_TRIALS = 10**4


def default_budget() -> int:
    env = os.environ.get("WGWA_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class FiniteModule:
    field: Any
    dim: int
    H: list
    X: list
    Y: list
    f: list
    t: list

    @property
    def p(self) -> int:
        return self.field.p

    def to_dict(self) -> dict:
        enc = _encoder(self.field)
        mat = lambda M: [[enc(x) for x in row] for row in M]
        return {
            "p": self.p,
            "dim": self.dim,
            "H": mat(self.H),
            "X": mat(self.X),
            "Y": mat(self.Y),
            "f": [enc(c) for c in self.f],
            "t": [enc(c) for c in self.t],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteModule":
        F = prime_field(int(data["p"]))
        conv = lambda M: [[F(x) for x in row] for row in M]
        return cls(F, int(data["dim"]), conv(data["H"]), conv(data["X"]), conv(data["Y"]),
                   [F(c) for c in data["f"]], [F(c) for c in data["t"]])


def _encoder(F):
    if isinstance(F, PrimeField):
        return int
    return str


# ---------------------------------------------------------------- realization


def _basis_elements(K):
    if isinstance(K, ExtensionField):
        return K.basis
    return [K.one]


def _base_of(K):
    return PrimeField(K.p) if isinstance(K, ExtensionField) else K


def _coords(K, x):
    return K.coords(x) if isinstance(K, ExtensionField) else [x]


def to_matrices(module) -> FiniteModule:
    if isinstance(module, StringModule):
        if module.kind != BOUNDED:
            raise NotFinite(f"a {module.kind} string is infinite dimensional")
        return _string_matrices(module)
    if isinstance(module, BandModule):
        return _band_matrices(module)
    raise NotFinite(f"cannot realize {type(module).__name__} by matrices")


def _string_matrices(s: StringModule) -> FiniteModule:
    u = s.universe
    offsets, dim = {}, 0
    for i in s.positions():
        offsets[i] = dim
        dim += u.field(s.ideal_at(i)).degree
    base = _base_of(u.field(s.ideals[0]))
    mats = {g: LA.zeros(base, dim, dim) for g in ("H", "X", "Y")}
    for i in s.positions():
        m = s.ideal_at(i)
        K = u.field(m)
        for l, b in enumerate(_basis_elements(K)):
            col = offsets[i] + l
            elem = StringElement(i, u.residue(m, b) if isinstance(K, ExtensionField) else _res(m, b))
            for g, gen in (("H", Scalar((0, 1))), ("X", X), ("Y", Y)):
                out = string_act(s, gen, elem)
                if out is None:
                    continue
                K2 = u.field(out.value.home)
                for r, c in enumerate(_coords(K2, out.value.value)):
                    mats[g][offsets[out.position] + r][col] = c
    return FiniteModule(base, dim, mats["H"], mats["X"], mats["Y"],
                        [base(c) if isinstance(base, PrimeField) else c for c in u.f_coeffs()],
                        [base(c) if isinstance(base, PrimeField) else c for c in u.t_coeffs()])


def _res(m, value):
    from .universe import ResidueElement

    return ResidueElement(m, value)


def _band_matrices(bm: BandModule) -> FiniteModule:
    u = bm.universe
    K = bm.band.field
    base = _base_of(K)
    e = K.degree
    d, k = bm.d, bm.k
    block = d * e
    dim = k * block
    mats = {g: LA.zeros(base, dim, dim) for g in ("H", "X", "Y")}
    for j in range(k):
        for a in range(d):
            for l, b in enumerate(_basis_elements(K)):
                col = j * block + a * e + l
                v = [K.zero] * d
                v[a] = b
                for g, gen in (("H", (0, 1)), ("X", "X"), ("Y", "Y")):
                    pos, w = band_act(bm, gen, j, v)
                    for a2, x in enumerate(w):
                        for l2, c in enumerate(_coords(K, x)):
                            mats[g][pos * block + a2 * e + l2][col] = c
    return FiniteModule(base, dim, mats["H"], mats["X"], mats["Y"],
                        [base(c) if isinstance(base, PrimeField) else c for c in u.f_coeffs()],
                        [base(c) if isinstance(base, PrimeField) else c for c in u.t_coeffs()])


# ---------------------------------------------------------------- relations


def check_relations(fm: FiniteModule) -> dict:
    F = fm.field
    H, Xm, Ym = fm.H, fm.X, fm.Y
    fH = LA.poly_eval(F, fm.f, H)
    tH = LA.poly_eval(F, fm.t, H)
    tfH = LA.poly_eval(F, fm.t, fH)
    checks = [
        ("YX = t(h)", LA.matmul(F, Ym, Xm), tH),
        ("XY = sigma(t)(h)", LA.matmul(F, Xm, Ym), tfH),
        ("Xh = f(h)X", LA.matmul(F, Xm, H), LA.matmul(F, fH, Xm)),
        ("hY = Yf(h)", LA.matmul(F, H, Ym), LA.matmul(F, Ym, fH)),
    ]
    violations = [name for name, lhs, rhs in checks if not LA.equal(F, lhs, rhs)]
    return {"ok": not violations, "violations": violations}


# ---------------------------------------------------------------- simplicity


def closure(fm: FiniteModule, v, gens=None) -> LA.Echelon:
    """The smallest subspace containing v and stable under H, X, Y."""
    F = fm.field
    gens = gens if gens is not None else (fm.H, fm.X, fm.Y)
    ech = LA.Echelon(F, fm.dim)
    stack = [list(v)]
    while stack:
        row = ech.add(stack.pop())
        if row is None:
            continue
        if len(ech) == fm.dim:
            break
        for G in gens:
            stack.append(LA.matvec(F, G, row))
    return ech


def _projective(F, vectors):
    """Representatives of the lines in the span of ``vectors`` over GF(p)."""
    n = len(vectors)
    if n == 0:
        return
    dim = len(vectors[0])
    for lead in range(n):
        for tail in product(range(F.p), repeat=n - lead - 1):
            coeffs = [0] * lead + [1] + list(tail)
            v = [0] * dim
            for c, b in zip(coeffs, vectors):
                if c:
                    v = [(x + c * y) % F.p for x, y in zip(v, b)]
            yield v


def _seed_spaces(fm: FiniteModule) -> list:
    """Kernels of q(H) for the irreducible factors q of the characteristic polynomial.

    Any nonzero H-stable subspace meets one of them, so closures from their
    lines find every minimal submodule."""
    F = fm.field
    cp = P.norm(LA.charpoly(F, fm.H), F.p)
    spaces = []
    for q, _ in P.factor(cp, F.p):
        spaces.append(LA.nullspace(F, LA.poly_eval(F, list(q), fm.H)))
    return spaces


def brute_simple(fm: FiniteModule, budget: int | None = None, strategy: str = "eigen") -> bool:
    """Exhaustive simplicity test over GF(p).

    ``strategy="eigen"`` seeds closures from the lines of each ker q(H);
    ``strategy="full"`` seeds from every line of the module.
    """
    F = fm.field
    if fm.dim == 0:
        return False
    if not isinstance(F, PrimeField):
        raise NotFinite("exhaustive simplicity needs a finite prime field")
    budget = default_budget() if budget is None else budget
    if strategy == "full":
        spaces = [[[1 if i == j else 0 for i in range(fm.dim)] for j in range(fm.dim)]]
    else:
        spaces = _seed_spaces(fm)
    total = sum((F.p ** len(s) - 1) // (F.p - 1) for s in spaces)
    if total > budget:
        raise BudgetExceeded(f"{total} seed lines exceed the budget {budget}")
    for s in spaces:
        for v in _projective(F, s):
            if len(closure(fm, v)) < fm.dim:
                return False
    return True


def probably_simple(fm: FiniteModule, trials: int = RANDOM_TRIALS, seed: int = 0) -> str:
    """Randomized check: "not_simple" is certain, "probably_simple" is not."""
    F = fm.field
    rng = random.Random(seed)
    for _ in range(trials):
        v = [rng.randrange(F.p) for _ in range(fm.dim)]
        if not any(v):
            continue
        if len(closure(fm, v)) < fm.dim:
            return "not_simple"
    return "probably_simple"


def monomial_span(fm: FiniteModule, v, depth: int | None = None) -> int:
    """Dimension of the span of Y^i r(H) X^j v over all i, j, and powers of H."""
    F = fm.field
    depth = fm.dim if depth is None else depth
    xs = [list(v)]
    for _ in range(depth):
        xs.append(LA.matvec(F, fm.X, xs[-1]))
    hs = []
    for w in xs:
        cur = w
        for _ in range(depth + 1):
            hs.append(cur)
            cur = LA.matvec(F, fm.H, cur)
    ech = LA.Echelon(F, fm.dim)
    for w in hs:
        cur = w
        for _ in range(depth + 1):
            ech.add(cur)
            cur = LA.matvec(F, fm.Y, cur)
    return len(ech)


def invertible_or_nilpotent(F, M) -> bool:
    n = len(M)
    if n == 0 or LA.is_invertible(F, M):
        return True
    return LA.is_zero(F, LA.matpow(F, M, n))


# ---------------------------------------------------------------- weights


def generalized_weight_decomposition(fm: FiniteModule) -> dict:
    """Irreducible factor of charpoly(H) -> generalized and honest weight dimensions."""
    F = fm.field
    n = fm.dim
    out = {}
    for key, q in _factor_charpoly(fm):
        Q = LA.poly_eval(F, q, fm.H)
        weight = n - LA.rank(F, Q)
        general = n - LA.rank(F, LA.matpow(F, Q, n))
        out[key] = {"generalized_dim": general, "weight_dim": weight}
    return out


def _factor_charpoly(fm: FiniteModule):
    F = fm.field
    cp = LA.charpoly(F, fm.H)
    if isinstance(F, PrimeField):
        for q, _ in P.factor(P.norm(cp, F.p), F.p):
            yield PolyIdeal(F.p, q), list(q)
        return
    if isinstance(F, (RationalField, SymbolicField)):
        x = sympy.Symbol("x")
        expr = sum(sympy.sympify(c) * x**i for i, c in enumerate(cp))
        if isinstance(F, RationalField):
            _, factors = sympy.factor_list(expr, x, domain="QQ")
        else:
            _, factors = sympy.factor_list(sympy.expand(expr), x)
        for q, _ in factors:
            pq = sympy.Poly(q, x)
            lc = pq.LC()
            coeffs = [c / lc for c in reversed(pq.all_coeffs())]
            if isinstance(F, RationalField):
                coeffs = [F(sympy.Rational(c).p) / F(sympy.Rational(c).q) for c in coeffs]
            if len(coeffs) == 2 and isinstance(F, RationalField):
                key = RationalPoint(-coeffs[0])
            else:
                key = "(" + str(sympy.expand(q / lc)) + ")"
            yield key, coeffs
        return
    raise NotFinite(f"cannot factor over {F}")


# ---------------------------------------------------------------- isomorphism


def brute_isomorphic(fm1: FiniteModule, fm2: FiniteModule, budget: int | None = None) -> bool:
    """Search for an invertible S with S A1 = A2 S for A in (H, X, Y)."""
    F = fm1.field
    if fm1.dim != fm2.dim or fm1.field != fm2.field:
        return False
    if not isinstance(F, PrimeField):
        raise NotFinite("isomorphism search needs a finite prime field")
    n = fm1.dim
    budget = default_budget() if budget is None else budget
    rows = []
    for A1, A2 in ((fm1.H, fm2.H), (fm1.X, fm2.X), (fm1.Y, fm2.Y)):
        # (S A1 - A2 S)[a][c] = sum_b S[a][b] A1[b][c] - sum_b A2[a][b] S[b][c]
        for a in range(n):
            for c in range(n):
                row = [0] * (n * n)
                for b in range(n):
                    row[a * n + b] = (row[a * n + b] + A1[b][c]) % F.p
                    row[b * n + c] = (row[b * n + c] - A2[a][b]) % F.p
                rows.append(row)
    null = LA.nullspace(F, rows)
    if not null:
        return False
    if F.p ** len(null) > budget:
        raise BudgetExceeded(f"intertwiner space of size {F.p}^{len(null)} exceeds the budget")
    for coeffs in product(range(F.p), repeat=len(null)):
        if not any(coeffs):
            continue
        vec = [0] * (n * n)
        for c, b in zip(coeffs, null):
            if c:
                vec = [(x + c * y) % F.p for x, y in zip(vec, b)]
        S = [vec[a * n:(a + 1) * n] for a in range(n)]
        if LA.is_invertible(F, S):
            return True
    return False


def direct_sum(fm1: FiniteModule, fm2: FiniteModule) -> FiniteModule:
    F = fm1.field
    n1, n2 = fm1.dim, fm2.dim

    def blk(A, B):
        M = LA.zeros(F, n1 + n2, n1 + n2)
        for i in range(n1):
            M[i][:n1] = list(A[i])
        for i in range(n2):
            M[n1 + i][n1:] = list(B[i])
        return M

    return FiniteModule(F, n1 + n2, blk(fm1.H, fm2.H), blk(fm1.X, fm2.X), blk(fm1.Y, fm2.Y), fm1.f, fm1.t)
