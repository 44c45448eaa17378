"""Band modules on a periodic down-cycle.

Cycle positions are 0 .. k-1 with ``down(cycle[j+1]) == cycle[j]`` and
``down(cycle[0]) == cycle[k-1]``; X raises the position by one and Y lowers
it.  Every weight space is a copy of L = K^d, K the residue field at
cycle[0].  Position j carries the R-action through the inverse of
tau_j: K -> K_j, the residue isomorphism induced by sigma^j.  Going once
round the cycle induces the automorphism sigma_bar of K.

With this bookkeeping the maps between consecutive positions are K-linear
except across the wrap (between positions k-1 and 0), where X must be
sigma_bar-semilinear and Y sigma_bar^{-1}-semilinear.  The datum L is an
invertible d x d matrix A over K, acting as alpha(v) = A sigma_bar(v).

variant "M": Y is the identity away from the wrap and alpha^{-1} across it;
             X is sigma(t) times Y^{-1}.
variant "N": X is the identity away from the wrap and alpha across it;
             Y is t times X^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any

from . import linalg as LA
from .dynamics import forward_orbit
from .errors import FieldMismatch, FieldTooLarge, NotEssential, NotOnCycle
from .fields import ExtensionField, PrimeField

DEFAULT_BUDGET = 10**6


# ---------------------------------------------------------------- cycle data


@dataclass(frozen=True)
class BandData:
    universe: Any
    cycle: tuple
    field: Any  # K, the residue field at cycle[0]
    base: Any  # the prime field (or K itself for one-dimensional residues)
    tau: tuple  # tau[j]: K -> K_j as a matrix over ``base``; tau[k] is sigma_bar
    sigma_bar: tuple

    @property
    def k(self) -> int:
        return len(self.cycle)

    @property
    def degree(self) -> int:
        return self.field.degree

    @property
    def finite(self) -> bool:
        return bool(getattr(self.field, "finite", False))

    # element transport ----------------------------------------------------

    def _apply(self, M, c, src_field, dst_field):
        if not isinstance(src_field, ExtensionField):
            return c
        v = LA.matvec(self.base, M, src_field.coords(c))
        return dst_field.from_coords(v)

    def tau_apply(self, j: int, c):
        """tau_j(c) for c in K."""
        return self._apply(self.tau[j], c, self.field, self.universe.field(self.cycle[j % self.k]))

    def tau_inv(self, j: int, c):
        """tau_j^{-1}(c) for c in K_j."""
        return self._apply(_inv(self.base, self.tau[j]), c, self.universe.field(self.cycle[j]), self.field)

    def sbar(self, c):
        return self._apply(self.sigma_bar, c, self.field, self.field)

    def sbar_inv(self, c):
        return self._apply(_inv(self.base, self.sigma_bar), c, self.field, self.field)

    def sigma_bar_order(self) -> int:
        M = self.sigma_bar
        cur = M
        for r in range(1, self.degree + 1):
            if LA.equal(self.base, cur, LA.identity(self.base, self.degree)):
                return r
            cur = LA.matmul(self.base, cur, M)
        raise ArithmeticError("sigma_bar has order exceeding the extension degree")

    def describe(self) -> dict:
        order = self.sigma_bar_order()
        return {
            "cycle": [m.render() for m in self.cycle],
            "k": self.k,
            "residue_degree": self.degree,
            "sigma_bar_order": order,
            "sigma_bar": "identity" if order == 1 else f"order {order} automorphism",
        }


_INV_CACHE: dict = {}


def _inv(F, M):
    key = (F, tuple(map(tuple, M)))
    if key not in _INV_CACHE:
        _INV_CACHE[key] = LA.inverse(F, M)
    return _INV_CACHE[key]


def _base_field(u, m):
    K = u.field(m)
    return (PrimeField(K.p) if isinstance(K, ExtensionField) else K), K


def _edge_matrix(u, a, b, base):
    if hasattr(u, "residue_map"):
        return u.residue_map(a, b)
    return [[base.one]]


def detect_band_data(u, m, max_period: int = 10000) -> BandData:
    orbit = forward_orbit(u, m, max_period)
    if orbit.tail or not orbit.cycle:
        raise NotOnCycle(f"{m.render()} is not periodic under down within {max_period} steps")
    down_cycle = orbit.cycle  # m, down(m), down^2(m), ...
    cycle = (down_cycle[0],) + tuple(reversed(down_cycle[1:]))
    k = len(cycle)
    base, K = _base_field(u, m)
    e = K.degree
    tau = [LA.identity(base, e)]
    for j in range(k):
        a, b = cycle[j], cycle[(j + 1) % k]
        if not u.is_essential_edge(a, b):
            raise NotEssential(f"edge {a.render()} -> {b.render()} on the cycle is not essential", j + 1)
        tau.append(LA.matmul(base, _edge_matrix(u, a, b, base), tau[-1]))
    sb = tau[k]
    band = BandData(u, cycle, K, base, tuple(map(_freeze, tau[:k])), _freeze(sb))
    band.sigma_bar_order()  # the order must divide the extension degree
    return band


def _freeze(M):
    return tuple(tuple(r) for r in M)


# ---------------------------------------------------------------- L data


@dataclass(frozen=True)
class PModuleData:
    """An invertible d x d matrix A over K; alpha(v) = A sigma_bar(v)."""

    alpha: tuple
    field: Any = None

    @property
    def dim(self) -> int:
        return len(self.alpha)


def pmodule(band: BandData, alpha) -> PModuleData:
    K = band.field
    rows = tuple(tuple(K(x) if not _is_elem(K, x) else x for x in row) for row in alpha)
    return PModuleData(rows, K)


def _is_elem(K, x) -> bool:
    if isinstance(K, ExtensionField):
        return False
    return not isinstance(x, int)


def alpha_apply(band: BandData, L: PModuleData, v):
    K = band.field
    return LA.matvec(K, [list(r) for r in L.alpha], [band.sbar(c) for c in v])


def alpha_inv_apply(band: BandData, L: PModuleData, w):
    K = band.field
    Ainv = _inv(K, [list(r) for r in L.alpha])
    return [band.sbar_inv(c) for c in LA.matvec(K, Ainv, w)]


# ---------------------------------------------------------------- modules


@dataclass(frozen=True)
class BandModule:
    band: BandData
    L: PModuleData
    variant: str

    @property
    def universe(self):
        return self.band.universe

    @property
    def k(self) -> int:
        return self.band.k

    @property
    def d(self) -> int:
        return self.L.dim

    def describe(self) -> dict:
        K = self.band.field
        return {
            "cycle": [m.render() for m in self.band.cycle],
            "k": self.k,
            "dim": self.d,
            "alpha": [[_render_elem(K, x) for x in row] for row in self.L.alpha],
            "variant": self.variant,
        }


def _render_elem(K, x):
    if isinstance(K, ExtensionField):
        return list(K.coords(x))
    return str(x)


def build_band(band: BandData, L: PModuleData, variant: str) -> BandModule:
    if variant not in ("M", "N"):
        raise ValueError("variant must be 'M' or 'N'")
    if L.field is not None and L.field != band.field:
        raise FieldMismatch(f"L is defined over {L.field}, the cycle has residue field {band.field}")
    K = band.field
    A = [list(r) for r in L.alpha]
    if any(len(r) != len(A) for r in A) or not A:
        raise ValueError("alpha must be a nonempty square matrix")
    if not LA.is_invertible(K, A):
        raise ValueError("alpha must be invertible")
    return BandModule(band, L, variant)


def _scalar_at(bm: BandModule, j: int, residue_value):
    """The element of K by which a residue at cycle[j] acts on position j."""
    return bm.band.tau_inv(j, residue_value)


def _t_at(bm: BandModule, j: int):
    u, m = bm.universe, bm.band.cycle[j]
    return _scalar_at(bm, j, u.t_residue(m))


def _st_at(bm: BandModule, j: int):
    u, m = bm.universe, bm.band.cycle[j]
    return _scalar_at(bm, j, u.sigma_t_residue(m))


def _scale(K, c, v):
    return [K.mul(c, x) for x in v]


def band_act(bm: BandModule, gen, j: int, v):
    """Apply X, Y, or an R-element (coefficient tuple) to v in position j.

    Returns (new position, vector)."""
    K = bm.band.field
    k = bm.k
    b = bm.band
    if gen == "X":
        tgt = (j + 1) % k
        if bm.variant == "N":
            return tgt, (alpha_apply(b, bm.L, v) if j == k - 1 else list(v))
        u = alpha_apply(b, bm.L, v) if j == k - 1 else list(v)
        return tgt, _scale(K, _st_at(bm, tgt), u)
    if gen == "Y":
        tgt = (j - 1) % k
        if bm.variant == "M":
            return tgt, (alpha_inv_apply(b, bm.L, v) if j == 0 else list(v))
        u = alpha_inv_apply(b, bm.L, v) if j == 0 else list(v)
        return tgt, _scale(K, _t_at(bm, tgt), u)
    # an element of R
    m = b.cycle[j]
    c = _scalar_at(bm, j, bm.universe.reduce_value(m, gen))
    return j, _scale(K, c, v)


# ---------------------------------------------------------------- simplicity


def _closure_dim(K, d: int, apply, v) -> int:
    ech = LA.Echelon(K, d)
    stack = [v]
    while stack:
        row = ech.add(stack.pop())
        if row is not None:
            stack.append(apply(row))
    return len(ech)


def projective_points(K, d: int):
    """One representative per line of K^d (first nonzero coordinate is 1)."""
    elems = list(K.elements())
    for lead in range(d):
        for tail in product(elems, repeat=d - lead - 1):
            yield [K.zero] * lead + [K.one] + list(tail)


def pmodule_is_simple(band: BandData, L: PModuleData, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether K^d has no proper nonzero K-subspace stable under alpha."""
    d = L.dim
    if d == 1:
        return True
    K = band.field
    if not band.finite:
        raise FieldTooLarge("closure search needs a finite residue field when d > 1")
    npoints = (K.size**d - 1) // (K.size - 1)
    if npoints > budget:
        raise FieldTooLarge(f"{npoints} lines exceed the budget {budget}")
    apply = lambda row: alpha_apply(band, L, row)
    return all(_closure_dim(K, d, apply, v) == d for v in projective_points(K, d))


# ---------------------------------------------------------------- isomorphism


def _holonomy(bm: BandModule, r: int, gen: str):
    """Matrix over K_m (m = cycle[r] of bm) of gen^k on the weight space at m."""
    K = bm.band.field
    d = bm.d
    cols = []
    for i in range(d):
        v = [K.one if a == i else K.zero for a in range(d)]
        j = r
        for _ in range(bm.k):
            j, v = band_act(bm, gen, j, v)
        cols.append([bm.band.tau_apply(r, c) for c in v])
    return LA.transpose(cols)


def _rotation(b1: BandData, b2: BandData):
    """Position of b1's base point on b2's cycle, or None."""
    if b1.universe != b2.universe or set(b1.cycle) != set(b2.cycle):
        return None
    return b2.cycle.index(b1.cycle[0])


def band_iso(b1: BandModule, b2: BandModule, budget: int = DEFAULT_BUDGET) -> bool:
    if b1.d != b2.d:
        return False
    r = _rotation(b1.band, b2.band)
    if r is None:
        return False
    u = b1.universe
    t_free = not any(u.t_in(m) for m in b1.band.cycle)
    if b1.variant != b2.variant and not t_free:
        return False
    # compare the holonomy of an operator acting bijectively on both
    if b1.variant == b2.variant:
        gen = "Y" if b1.variant == "M" else "X"
    else:
        gen = "X"
    G1 = _holonomy(b1, 0, gen)
    G2 = _holonomy(b2, r, gen)
    twist = b1.band.sbar if gen == "X" else b1.band.sbar_inv
    return _semilinear_similar(b1.band, G1, G2, twist, budget)


def _semilinear_similar(band: BandData, G1, G2, twist, budget: int) -> bool:
    """Is there an invertible S over K with S G1 = G2 twist(S)?"""
    K = band.field
    d = len(G1)
    if not band.finite:
        if d != 1:
            raise FieldTooLarge("semilinear similarity over an infinite field needs d = 1")
        # s g1 = g2 s with trivial twist
        return K.eq(G1[0][0], G2[0][0])
    base = band.base
    e = band.degree
    basis_elems = [K.from_coords([1 if l == i else 0 for l in range(e)]) for i in range(e)]

    def residual(S):
        lhs = LA.matmul(K, S, G1)
        rhs = LA.matmul(K, G2, [[twist(x) for x in row] for row in S])
        diff = LA.sub(K, lhs, rhs)
        return [c for row in diff for x in row for c in K.coords(x)]

    unknowns = [(a, b, l) for a in range(d) for b in range(d) for l in range(e)]
    cols = []
    for a, b, l in unknowns:
        S = LA.zeros(K, d, d)
        S[a][b] = basis_elems[l]
        cols.append(residual(S))
    M = LA.transpose(cols)
    null = LA.nullspace(base, M)
    if not null:
        return False
    if base.p ** len(null) > budget:
        raise FieldTooLarge(f"intertwiner space of size {base.p}^{len(null)} exceeds the budget")

    def assemble(coeffs):
        vec = [0] * len(unknowns)
        for c, bv in zip(coeffs, null):
            if c:
                vec = [(x + c * y) % base.p for x, y in zip(vec, bv)]
        S = LA.zeros(K, d, d)
        for idx, (a, b, l) in enumerate(unknowns):
            if vec[idx]:
                S[a][b] = K.add(S[a][b], K.mul(K(vec[idx]), basis_elems[l]))
        return S

    for coeffs in product(range(base.p), repeat=len(null)):
        if not any(coeffs):
            continue
        if LA.is_invertible(K, assemble(coeffs)):
            return True
    return False


def alpha_family_scalar(bm: BandModule):
    """For d = 1 the parameter c with alpha = c."""
    return bm.L.alpha[0][0]


__all__ = [
    "BandData",
    "BandModule",
    "PModuleData",
    "alpha_apply",
    "alpha_inv_apply",
    "band_act",
    "band_iso",
    "build_band",
    "detect_band_data",
    "pmodule",
    "pmodule_is_simple",
    "projective_points",
]
