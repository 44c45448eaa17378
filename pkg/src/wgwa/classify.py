"""Classification of simple weight modules around a point, and the catalogues
for generalized Heisenberg algebras.

Every simple weight module is a string module or a band module whose support
lies in a single class of the down-dynamics.  ``classify_point`` walks that
class (the forward orbit plus a bounded upward exploration) and lists the
string and band families supported there.  ``heisenberg_catalogue`` does the
same for H(f) at a fixed central character, where t = h + zdot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import dynamics
from . import linalg as LA
from .corpus import scalar_classes
from .bands import BandModule, build_band, detect_band_data, pmodule, pmodule_is_simple
from .errors import (
    CertificateRequired,
    NoPredecessor,
    NotEssential,
    NotFinite,
    UnsupportedFSpec,
)
from .strings import (
    BOUNDED,
    DOUBLE_INFINITE,
    LEFT_INFINITE,
    RIGHT_INFINITE,
    DistinctTail,
    StringModule,
    build_string,
    string_is_simple,
)
from .universe import ALL_POINTS, OUTSIDE, ZERO_POINT, Affine, Angle, Outside, PowerMap, RationalPoint, ZeroPoint

SHAPES = {
    BOUNDED: "Q_n",
    RIGHT_INFINITE: "Q_inf",
    LEFT_INFINITE: "inf_Q",
    DOUBLE_INFINITE: "inf_Q_inf",
}

MAX_BRANCHES = 64


@dataclass(frozen=True)
class Bounds:
    orbit_steps: int = 1000
    up_depth: int = 3
    degree_bound: int | None = None

    def __post_init__(self):
        if self.orbit_steps < 1 or self.up_depth < 0:
            raise ValueError("bounds must be positive")


# ---------------------------------------------------------------- report types


@dataclass
class StringFamily:
    module: StringModule
    simple: bool | None  # None: undecided without a certificate
    note: str = ""

    @property
    def kind(self) -> str:
        return self.module.kind

    def to_dict(self) -> dict:
        d = self.module.describe()
        d["shape"] = SHAPES[self.kind]
        d["simple"] = self.simple
        if self.kind == BOUNDED:
            d["n"] = self.module.n
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class BandFamily:
    band: Any
    t_on_cycle: bool
    note: str = ""

    @property
    def variants(self) -> tuple:
        # M and N agree exactly when t avoids the whole cycle
        return ("M", "N") if self.t_on_cycle else ("M",)

    def module(self, alpha, variant: str = "M") -> BandModule:
        if not isinstance(alpha, (list, tuple)):
            alpha = [[alpha]]
        return build_band(self.band, pmodule(self.band, alpha), variant)

    def scalar_classes(self) -> list | None:
        """Representatives of the one-dimensional L up to twisted conjugacy (finite K)."""
        if not self.band.finite:
            return None
        return scalar_classes(self.band)

    def to_dict(self) -> dict:
        d = self.band.describe()
        d["t_on_cycle"] = self.t_on_cycle
        d["variants"] = list(self.variants)
        d["one_dim_simple"] = True
        d["m_equals_n"] = not self.t_on_cycle
        reps = self.scalar_classes()
        if reps is None:
            d["parameter"] = "c in K^*"
        else:
            d["parameter"] = "c in K^* up to c ~ c s / sigma_bar(s)"
            d["classes"] = len(reps)
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class ClassificationReport:
    point: Any
    class_kind: Any
    orbit: Any
    marks: list
    string_families: list
    band_families: list
    dead_points: list
    leaves: list
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "point": self.point.render(),
            "class_kind": self.class_kind.to_dict(),
            "orbit": self.orbit.to_dict(),
            "marks": self.marks,
            "string_families": [s.to_dict() for s in self.string_families],
            "band_families": [b.to_dict() for b in self.band_families],
            "dead_points": [m.render() for m in self.dead_points],
            "leaves": [m.render() for m in self.leaves],
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------- exploration


def _verdict(module: StringModule, certificate=None):
    try:
        return string_is_simple(module, certificate)
    except CertificateRequired:
        return None


def _upward_paths(u, start, depth: int, degree_bound, stop) -> list:
    """Upward paths from ``start`` of exactly ``depth`` essential steps avoiding ``stop``.

    Branches that die out earlier cannot carry an infinite string and are dropped."""
    paths = [[start]]
    for _ in range(depth):
        nxt = []
        for path in paths:
            try:
                ups = u.up(path[-1], degree_bound)
            except NotFinite:
                ups = ()
            nxt.extend(path + [y] for y in ups if not stop(y) and u.is_essential_edge(path[-1], y))
        paths = nxt[:MAX_BRANCHES]
    return paths


def _region(u, orbit, bounds: Bounds, notes: list) -> list:
    seen = dict.fromkeys(orbit.points())
    frontier = list(seen)
    for _ in range(bounds.up_depth):
        nxt = []
        for x in frontier:
            try:
                ups = u.up(x, bounds.degree_bound)
            except NotFinite as exc:
                notes.append(f"up of {x.render()} not enumerated: {exc}")
                continue
            for y in ups:
                if y not in seen:
                    seen[y] = None
                    nxt.append(y)
        frontier = nxt
    roots = u.t_roots()
    if roots is not ALL_POINTS:
        start = orbit.points()[0]
        for r in roots:
            if r not in seen and dynamics.same_class(u, start, r, bounds.orbit_steps) is True:
                seen[r] = None
                for y in dynamics.forward_orbit(u, r, bounds.orbit_steps).points():
                    seen.setdefault(y, None)
    return list(seen)


def _bounded_from_top(u, top, steps: int):
    """The simple bounded string with highest weight ``top`` (t in top), if any."""
    chain = [top]
    for _ in range(steps):
        cur = chain[-1]
        if u.sigma_t_in(cur):
            return build_string(u, BOUNDED, list(reversed(chain)))
        nxt = u.down(cur)
        if u.t_in(nxt) or nxt in chain or not u.is_essential_edge(nxt, cur):
            return None
        chain.append(nxt)
    return None


def _left_infinite(u, top, steps: int):
    orbit = dynamics.forward_orbit(u, top, steps)
    window = list(reversed(orbit.points()))
    try:
        return build_string(u, LEFT_INFINITE, window)
    except NotEssential:
        return None


def classify_point(u, m, bounds: Bounds | None = None) -> ClassificationReport:
    bounds = bounds or Bounds()
    u.check_ideal(m)
    notes: list = []
    orbit = dynamics.forward_orbit(u, m, bounds.orbit_steps)
    if not orbit.closed:
        notes.append(f"forward orbit did not close within {bounds.orbit_steps} steps")
    kind = dynamics.class_kind(u, m, bounds.orbit_steps)
    region = _region(u, orbit, bounds, notes)

    marks = []
    for x in region:
        v = u.vanishing(x)
        if v["t_in"] or v["sigma_t_in"] or x in orbit.points():
            marks.append({"ideal": x.render(), "t_in": v["t_in"], "sigma_t_in": v["sigma_t_in"]})

    strings: list[StringFamily] = []
    tops = [x for x in region if u.t_in(x)]
    for x in tops:
        s = _bounded_from_top(u, x, bounds.orbit_steps)
        if s is not None:
            strings.append(StringFamily(s, True))
        s = _left_infinite(u, x, bounds.orbit_steps)
        if s is not None:
            verdict = _verdict(s)
            if verdict is not False:
                strings.append(StringFamily(s, verdict))
    for y in region:
        if not u.sigma_t_in(y):
            continue
        for path in _upward_paths(u, y, bounds.up_depth, bounds.degree_bound, u.t_in):
            s = build_string(u, RIGHT_INFINITE, path)
            verdict = _verdict(s)
            if verdict is not False:
                strings.append(StringFamily(s, verdict, "window of one upward branch"))
    if not u.t_in(m) and not u.sigma_t_in(m):
        for path in _upward_paths(u, m, bounds.up_depth, bounds.degree_bound, u.t_in):
            if dynamics.on_cycle(u, path[-1], bounds.orbit_steps) is not False:
                continue  # continues periodically at best: the band case
            try:
                s = build_string(u, DOUBLE_INFINITE, path)
            except NotEssential:
                continue
            verdict = _verdict(s)
            if verdict is not False:
                strings.append(StringFamily(s, verdict, "window of one upward branch"))

    bands: list[BandFamily] = []
    if orbit.cycle:
        try:
            bd = detect_band_data(u, orbit.cycle[0], bounds.orbit_steps)
        except NotEssential as exc:
            notes.append(f"no band modules: {exc}")
        else:
            on = any(u.t_in(c) for c in bd.cycle)
            bands.append(BandFamily(bd, on, "t vanishes on the cycle: M and N give distinct families" if on else ""))

    dead = []
    for x in region:
        try:
            u.down(x)
        except NoPredecessor:
            dead.append(x)
    leaves = []
    for x in region:
        try:
            if not u.up(x, bounds.degree_bound):
                leaves.append(x)
        except NotFinite:
            pass

    return ClassificationReport(m, kind, orbit, marks, strings, bands, dead, leaves, notes)


def finite_instances(report: ClassificationReport, max_d: int = 2, budget: int = 10**5) -> list:
    """Concrete finite-dimensional simple modules named by a report (finite fields only)."""
    out = []
    for s in report.string_families:
        if s.kind == BOUNDED and s.simple:
            out.append(s.module)
    for bf in report.band_families:
        b = bf.band
        if not b.finite:
            continue
        K = b.field
        for d in range(1, max_d + 1):
            if K.size ** (d * d) > budget:
                break
            for A in _matrices(K, d):
                if not LA.is_invertible(K, A):
                    continue
                L = pmodule(b, A)
                if not pmodule_is_simple(b, L):
                    continue
                out.extend(build_band(b, L, v) for v in bf.variants)
    return out


def _matrices(K, d: int):
    from itertools import product

    elems = list(K.elements())
    for entries in product(elems, repeat=d * d):
        yield [list(entries[i * d:(i + 1) * d]) for i in range(d)]


# ---------------------------------------------------------------- Heisenberg catalogues


@dataclass(frozen=True)
class Constant:
    theta: Fraction


@dataclass(frozen=True)
class AffineMap:
    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class Power:
    n: int


def parse_f_spec(text: str):
    """``const:THETA``, ``affine:A,B`` or ``power:N``."""
    head, _, tail = text.strip().lower().partition(":")
    try:
        if head in ("const", "constant"):
            return Constant(Fraction(tail))
        if head == "affine":
            a, b = tail.split(",")
            return AffineMap(Fraction(a), Fraction(b))
        if head == "power":
            return Power(int(tail))
    except (ValueError, ZeroDivisionError):
        pass
    raise UnsupportedFSpec(f"cannot parse f specification {text!r}")


@dataclass
class CatalogueItem:
    label: str
    shape: str  # "string" | "module" | "family"
    support: list
    dimension: Any  # int or "infinite"
    simple: bool | None
    actions: dict = field(default_factory=dict)
    parameter: str | None = None
    build: Callable | None = field(default=None, repr=False)

    def instance(self, c=None):
        if self.build is None:
            raise NotFinite("no instance builder for this item")
        return self.build() if self.parameter is None else self.build(c)

    def to_dict(self) -> dict:
        d = {
            "label": self.label,
            "shape": self.shape,
            "support": [m.render() if hasattr(m, "render") else str(m) for m in self.support],
            "dimension": self.dimension,
            "simple": self.simple,
        }
        if self.actions:
            d["actions"] = dict(self.actions)
        if self.parameter:
            d["parameter"] = self.parameter
        return d


@dataclass
class CatalogueReport:
    f_spec: Any
    zdot: Any
    universe: Any
    items: list
    notes: list

    def count(self, shape: str) -> int:
        return sum(1 for it in self.items if it.shape == shape)

    def to_dict(self) -> dict:
        return {
            "f": _render_spec(self.f_spec),
            "zdot": self.zdot.render() if hasattr(self.zdot, "render") else str(self.zdot),
            "universe": self.universe.describe(),
            "items": [it.to_dict() for it in self.items],
            "notes": list(self.notes),
        }


def _only_simple(items: list, notes: list) -> list:
    kept = []
    for it in items:
        if it.simple is False:
            notes.append(f"{it.label}: not simple here")
        else:
            kept.append(it)
    return kept


def _render_spec(spec) -> str:
    if isinstance(spec, Constant):
        return f"const:{spec.theta}"
    if isinstance(spec, AffineMap):
        return f"affine:{spec.a},{spec.b}"
    return f"power:{spec.n}"


def heisenberg_catalogue(f_spec, zdot, bounds: Bounds | None = None) -> CatalogueReport:
    bounds = bounds or Bounds()
    if isinstance(f_spec, Constant):
        return _constant_catalogue(Fraction(f_spec.theta), Fraction(zdot))
    if isinstance(f_spec, AffineMap):
        return _affine_catalogue(f_spec, Fraction(zdot), bounds)
    if isinstance(f_spec, Power):
        return _power_catalogue(f_spec, zdot, bounds)
    raise UnsupportedFSpec(f"unsupported f specification {f_spec!r}")


def _one_dim_band(u, point):
    return detect_band_data(u, point, 16)


def _constant_catalogue(theta: Fraction, zdot: Fraction) -> CatalogueReport:
    u = Affine(Fraction(0), theta, (zdot, Fraction(1)), allow_constant=True)
    p_theta, p_root = RationalPoint(theta), RationalPoint(-zdot)
    band = _one_dim_band(u, p_theta)
    spec = Constant(theta)
    items = []
    if theta != -zdot:
        s = build_string(u, LEFT_INFINITE, [p_theta, p_root])
        items.append(CatalogueItem("N_down", "string", [p_theta, p_root], "infinite",
                                   string_is_simple(s), build=lambda s=s: s))
        items.append(CatalogueItem(
            "X=c, Y=(theta+zdot)/c", "family", [p_theta], 1, True,
            {"X": "c", "Y": f"{theta + zdot}/c"}, "c != 0",
            lambda c: build_band(band, pmodule(band, [[Fraction(c)]]), "N")))
    else:
        s = build_string(u, BOUNDED, [p_theta])
        items.append(CatalogueItem("X=0, Y=0", "module", [p_theta], 1, string_is_simple(s),
                                   {"X": "0", "Y": "0"}, build=lambda s=s: s))
        items.append(CatalogueItem(
            "X=c, Y=0", "family", [p_theta], 1, True, {"X": "c", "Y": "0"}, "c != 0",
            lambda c: build_band(band, pmodule(band, [[Fraction(c)]]), "N")))
        # variant M has Y = alpha^{-1}; alpha = 1/c makes Y act as c
        items.append(CatalogueItem(
            "Y=c, X=0", "family", [p_theta], 1, True, {"X": "0", "Y": "c"}, "c != 0",
            lambda c: build_band(band, pmodule(band, [[1 / Fraction(c)]]), "M")))
    return CatalogueReport(spec, zdot, u, items, ["the list is complete: every point other than theta "
                                                  "and -zdot has no preimage and t does not vanish there"])


def _affine_catalogue(spec: AffineMap, zdot: Fraction, bounds: Bounds) -> CatalogueReport:
    a, b = Fraction(spec.a), Fraction(spec.b)
    if a == 0:
        return _constant_catalogue(b, zdot)
    if a == 1 and b == 0:
        raise UnsupportedFSpec("f(h) = h gives a commutative algebra")
    u = Affine(a, b, (zdot, Fraction(1)))
    root = RationalPoint(-zdot)
    alpha = RationalPoint((-zdot - b) / a)
    depth = max(bounds.up_depth, 1)
    items = []
    notes = ["restricted to rational points; irrational orbits are not represented"]

    down_chain = [root]
    for _ in range(depth):
        down_chain.append(u.down(down_chain[-1]))
    s = build_string(u, LEFT_INFINITE, list(reversed(down_chain)))
    items.append(CatalogueItem("N_down through -zdot", "string", list(reversed(down_chain)), "infinite",
                               _verdict(s), build=lambda s=s: s))

    up_chain = [alpha]
    for _ in range(depth):
        up_chain.append(u.up(up_chain[-1])[0])
    s = build_string(u, RIGHT_INFINITE, up_chain)
    items.append(CatalogueItem("N_up from alpha with f(alpha) = -zdot", "string", up_chain, "infinite",
                               _verdict(s), build=lambda s=s: s))

    beta = _affine_generic_point(u, root)
    if beta is not None:
        chain = [beta]
        for _ in range(depth):
            chain.append(u.up(chain[-1])[0])
        s = build_string(u, DOUBLE_INFINITE, chain)
        items.append(CatalogueItem("N(beta) for each Z-chain avoiding -zdot", "string", chain, "infinite",
                                   _verdict(s), parameter="aperiodic Z-chain avoiding -zdot",
                                   build=lambda _c=None, s=s: s))
    else:
        notes.append("every rational point is periodic or meets -zdot: no double infinite strings")

    if a != 1:
        fixed = RationalPoint(b / (1 - a))
        bd = _one_dim_band(u, fixed)
        on = u.t_in(fixed)
        for variant in (("M", "N") if on else ("N",)):
            items.append(CatalogueItem(
                f"band {variant} at the fixed point", "family", [fixed], 1, True,
                {}, "c != 0",
                lambda c, v=variant, bd=bd: build_band(bd, pmodule(bd, [[Fraction(c)]]), v)))
    if a == -1:
        notes.append("f is an involution: every point off the fixed point lies on a 2-cycle "
                     "carrying its own band families")
    return CatalogueReport(spec, zdot, u, _only_simple(items, notes), notes)


def _affine_generic_point(u, root, tries: int = 64):
    for k in range(tries):
        x = RationalPoint(Fraction(k + 1, 1) if k % 2 == 0 else Fraction(-k, 3))
        if x == root or dynamics.reaches(u, x, root) or dynamics.reaches(u, root, x):
            continue
        if dynamics.on_cycle(u, x):
            continue
        return x
    return None


def repeated_weight_string(n: int = 2, lo: int = -3, top: int = 8, zdot=OUTSIDE) -> StringModule:
    """The double infinite string with Angle 0 at positions <= 0 and Angle 1/n^j at j >= 1."""
    u = PowerMap(n, zdot)
    window = [Angle(Fraction(0))] * (1 - lo) + [Angle(Fraction(1, n**j)) for j in range(1, top + 1)]
    return build_string(u, DOUBLE_INFINITE, window, lo=lo)


def _periodic_cycles(n: int, max_denominator: int) -> list:
    """Cycles of q -> n q among angles with denominator coprime to n."""
    from math import gcd

    seen, cycles = set(), []
    for D in range(1, max_denominator + 1):
        if gcd(D, n) != 1:
            continue
        for num in range(D):
            q = Fraction(num, D)
            if q.denominator != D or Angle(q) in seen:
                continue
            cyc, x = [], Angle(q)
            while x not in cyc:
                cyc.append(x)
                x = Angle(n * x.q)
            seen.update(cyc)
            cycles.append(cyc)
    return cycles


def _power_catalogue(spec: Power, zdot, bounds: Bounds) -> CatalogueReport:
    n = spec.n
    if n < 2:
        raise UnsupportedFSpec("the power catalogue needs n >= 2")
    if not isinstance(zdot, (Outside, Angle, ZeroPoint)):
        raise UnsupportedFSpec("zdot must be Outside or the stored point -zdot")
    u = PowerMap(n, zdot)
    items, notes = [], []
    max_den = max(bounds.up_depth, 1) * 2 + 1

    # the component {0}
    bd0 = _one_dim_band(u, ZERO_POINT)
    if zdot == ZERO_POINT:
        s = build_string(u, BOUNDED, [ZERO_POINT])
        items.append(CatalogueItem("X=0, Y=0 at 0", "module", [ZERO_POINT], 1, string_is_simple(s),
                                   {"X": "0", "Y": "0"}, build=lambda s=s: s))
        variants = ("N", "M")
    else:
        variants = ("N",)
    for v in variants:
        items.append(CatalogueItem(f"one-dimensional family {v} at 0", "family", [ZERO_POINT], 1, True,
                                   {}, "c != 0",
                                   lambda c, v=v: build_band(bd0, pmodule(bd0, [[c]]), v)))

    # roots of unity: periodic paths give bands
    for cyc in _periodic_cycles(n, max_den):
        bd = detect_band_data(u, cyc[0], bounds.orbit_steps)
        on = any(u.t_in(x) for x in bd.cycle)
        for v in (("M", "N") if on else ("M",)):
            items.append(CatalogueItem(f"band {v} on a {bd.k}-cycle", "family", list(bd.cycle), bd.k, True,
                                       {}, "c != 0",
                                       lambda c, v=v, bd=bd: build_band(bd, pmodule(bd, [[c]]), v)))

    # bounded strings need -zdot periodic
    root_periodic = not isinstance(zdot, Outside) and dynamics.on_cycle(u, zdot) is True
    if root_periodic and zdot != ZERO_POINT:
        orbit = dynamics.forward_orbit(u, zdot, bounds.orbit_steps)
        # bottom is the cycle point just below -zdot, so the chain ends at -zdot
        s = build_string(u, BOUNDED, list(reversed(orbit.cycle)))
        items.append(CatalogueItem("bounded string through the cycle of -zdot", "module",
                                   list(s.ideals), len(s.ideals), string_is_simple(s), build=lambda s=s: s))
    elif not root_periodic:
        notes.append("bounded string modules do not exist")
    else:
        notes.append("the only bounded string module is the one at 0")

    # strings through -zdot
    if not isinstance(zdot, Outside):
        orbit = dynamics.forward_orbit(u, zdot, bounds.orbit_steps)
        s = build_string(u, LEFT_INFINITE, list(reversed(orbit.points())))
        items.append(CatalogueItem("N_down with highest weight -zdot", "string", list(s.ideals), "infinite",
                                   _verdict(s), build=lambda s=s: s))
        for y in u.up(zdot):
            if y in orbit.points():
                continue
            path = _upward_paths(u, y, max(bounds.up_depth, 1), None, u.t_in)[0]
            s = build_string(u, RIGHT_INFINITE, path)
            items.append(CatalogueItem("N_up with lowest weight a preimage of -zdot", "string", path,
                                       "infinite", _verdict(s), build=lambda s=s: s))

    # the double infinite string with a repeated weight
    ex = repeated_weight_string(n, -3, 8, zdot)
    verdict = _verdict(ex, DistinctTail(t_free=True) if isinstance(zdot, Outside) else None)
    items.append(CatalogueItem("double infinite string 0,0,...,1/n,1/n^2,...", "string", list(ex.ideals),
                               "infinite", verdict, {"multiplicity at angle:0": "infinite"},
                               build=lambda ex=ex: ex))

    notes.append("band modules are finite dimensional")
    notes.append(f"bands listed for cycles with denominators up to {max_den}")
    notes.append("non-periodic paths avoiding -zdot give double infinite strings; "
                 "the component of non-zero non-roots of unity is not represented")
    return CatalogueReport(spec, zdot, u, _only_simple(items, notes), notes)

