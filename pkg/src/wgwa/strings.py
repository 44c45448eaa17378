"""String modules: weight spaces are residue fields strung along a down-chain.

A string is stored as a finite window of ideals at consecutive positions
``lo .. hi``.  Positions below the window of the left-open kinds (left
infinite, double infinite) are filled in by ``down``, which is a function;
positions above the window of the right-open kinds would need a choice among
``up`` preimages and raise ``WindowExhausted``.

Index sets by kind:

    bounded          0 .. n
    right_infinite   0, 1, 2, ...
    left_infinite    ..., -2, -1, 0
    double_infinite  all integers
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any

from . import dynamics
from .errors import (
    BoundaryConditionFailed,
    CertificateRequired,
    ChainBroken,
    InvalidCertificate,
    NotEssential,
    WindowExhausted,
)
from .universe import ALL_POINTS, ResidueElement

BOUNDED = "bounded"
RIGHT_INFINITE = "right_infinite"
LEFT_INFINITE = "left_infinite"
DOUBLE_INFINITE = "double_infinite"
KINDS = (BOUNDED, RIGHT_INFINITE, LEFT_INFINITE, DOUBLE_INFINITE)

_HAS_BOTTOM = (BOUNDED, RIGHT_INFINITE)  # Y kills position 0
_HAS_TOP = (BOUNDED, LEFT_INFINITE)  # X kills the top position
_OPEN_BELOW = (LEFT_INFINITE, DOUBLE_INFINITE)

ORBIT_BUDGET = 10000


# ---------------------------------------------------------------- data


@dataclass(frozen=True)
class StringModule:
    universe: Any
    kind: str
    lo: int
    ideals: tuple

    @property
    def hi(self) -> int:
        return self.lo + len(self.ideals) - 1

    @property
    def n(self) -> int | None:
        return self.hi if self.kind == BOUNDED else None

    @property
    def dimension(self) -> int | None:
        """Total dimension over the prime field, for bounded strings."""
        if self.kind != BOUNDED:
            return None
        return sum(self.universe.field(m).degree for m in self.ideals)

    def in_index_set(self, i: int) -> bool:
        if self.kind == BOUNDED:
            return 0 <= i <= self.hi
        if self.kind == RIGHT_INFINITE:
            return i >= 0
        if self.kind == LEFT_INFINITE:
            return i <= 0
        return True

    def ideal_at(self, i: int):
        if not self.in_index_set(i) or i > self.hi:
            raise WindowExhausted(i)
        if i >= self.lo:
            return self.ideals[i - self.lo]
        if self.kind not in _OPEN_BELOW:
            raise WindowExhausted(i)
        m = self.ideals[0]
        for _ in range(self.lo - i):
            m = self.universe.down(m)
        return m

    def positions(self) -> range:
        return range(self.lo, self.hi + 1)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "lo": self.lo,
            "window": [m.render() for m in self.ideals],
        }


@dataclass(frozen=True)
class StringElement:
    position: int
    value: ResidueElement


@dataclass(frozen=True)
class Scalar:
    """Multiplication by an element of R given by coefficients, constant first."""

    r: tuple


X = "X"
Y = "Y"


# ---------------------------------------------------------------- construction


def build_string(u, kind: str, ideals, lo: int | None = None, branch=()) -> StringModule:
    """Validate a window and return the module.

    ``lo`` is the position of the first ideal.  It is forced for the bounded
    and right infinite kinds (0) and for left infinite strings (the last
    ideal sits at 0).  ``branch`` lists further ideals appended on top.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown string kind {kind!r}")
    ideals = tuple(ideals) + tuple(branch)
    if not ideals:
        raise ValueError("a string needs at least one ideal")
    for m in ideals:
        u.check_ideal(m)
    if kind in _HAS_BOTTOM:
        lo = 0
    elif kind == LEFT_INFINITE:
        lo = -(len(ideals) - 1)
    elif lo is None:
        lo = 0
    mod = StringModule(u, kind, lo, ideals)

    for j in range(1, len(ideals)):
        if u.down(ideals[j]) != ideals[j - 1]:
            raise ChainBroken(f"down of position {lo + j} is not the ideal at {lo + j - 1}", lo + j)
    for j in range(1, len(ideals)):
        if not u.is_essential_edge(ideals[j - 1], ideals[j]):
            raise NotEssential(
                f"edge {ideals[j - 1].render()} -> {ideals[j].render()} is not essential", lo + j)
    if kind in _OPEN_BELOW:
        below = u.down(ideals[0])
        if not u.is_essential_edge(below, ideals[0]):
            raise NotEssential(f"edge {below.render()} -> {ideals[0].render()} is not essential", lo)
    if kind in _HAS_BOTTOM and not u.sigma_t_in(ideals[0]):
        raise BoundaryConditionFailed("sigma(t) is not in the lowest ideal", kind, "lower")
    if kind in _HAS_TOP and not u.t_in(ideals[-1]):
        raise BoundaryConditionFailed("t is not in the highest ideal", kind, "upper")
    return mod


# ---------------------------------------------------------------- action


def string_act(module: StringModule, gen, elem: StringElement):
    """Apply X, Y or Scalar(r) to a weight vector; None stands for zero."""
    u = module.universe
    i = elem.position
    m = module.ideal_at(i)
    value = elem.value if elem.value.home == m else u.residue(m, elem.value.value)
    F = u.field(m)
    if isinstance(gen, Scalar):
        return StringElement(i, ResidueElement(m, F.mul(value.value, u.reduce_value(m, gen.r))))
    if gen == X:
        if module.kind in _HAS_TOP and i == module.hi:
            return None
        target = module.ideal_at(i + 1)
        tr = ResidueElement(m, F.mul(u.t_residue(m), value.value))
        return StringElement(i + 1, u.sigma_residue(m, target, tr))
    if gen == Y:
        if module.kind in _HAS_BOTTOM and i == 0:
            return None
        module.ideal_at(i - 1)
        return StringElement(i - 1, u.invert_sigma(m, value))
    raise ValueError(f"unknown generator {gen!r}")


# ---------------------------------------------------------------- certificates


@dataclass(frozen=True)
class Periodic:
    """The whole sequence satisfies m_i = m_{i+k}."""

    k: int


@dataclass(frozen=True)
class EventuallyConstantTail:
    """Above some position the sequence is constant (hence constant everywhere)."""


@dataclass(frozen=True)
class DistinctTail:
    """Beyond the window the sequence never repeats; ``t_free`` says whether
    t avoids every ideal above the window (None: derive it)."""

    t_free: bool | None = None


def _t_roots(u):
    return u.t_roots()


def _lower_t_free(module: StringModule) -> bool:
    """t avoids every ideal strictly below the stored window."""
    u = module.universe
    roots = _t_roots(u)
    if roots is ALL_POINTS:
        return False
    start = module.ideals[0]
    for r in roots:
        hit = dynamics.reaches(u, start, r, ORBIT_BUDGET)
        if hit is None:
            raise CertificateRequired("downward orbit did not close within budget")
        if hit:
            return False
    return True


def _upper_t_free(module: StringModule):
    """t avoids every ideal above the window: True, False, or None (unknown)."""
    u = module.universe
    roots = _t_roots(u)
    if roots is ALL_POINTS:
        return False
    top = module.ideals[-1]
    for r in roots:
        hit = dynamics.reaches(u, r, top, ORBIT_BUDGET)
        if hit is None or hit:
            # some branch above the window could pass through r
            return None
    return True


def _window_t_free(module: StringModule, positions) -> bool:
    u = module.universe
    return not any(u.t_in(module.ideal_at(i)) for i in positions)


def _check_certificate(module: StringModule, cert) -> None:
    if cert is None:
        return
    if isinstance(cert, Periodic):
        if cert.k == 0:
            raise InvalidCertificate("period must be nonzero")
        k = abs(cert.k)
        ids = module.ideals
        for j in range(len(ids) - k):
            if ids[j] != ids[j + k]:
                raise InvalidCertificate(f"window contradicts period {k}")
        if dynamics.on_cycle(module.universe, ids[-1], ORBIT_BUDGET) is False:
            raise InvalidCertificate("top of window is not periodic under down")
    elif isinstance(cert, EventuallyConstantTail):
        if len(set(module.ideals)) != 1 or module.universe.down(module.ideals[0]) != module.ideals[0]:
            raise InvalidCertificate("a constant tail forces a constant sequence at a fixed point")
    elif not isinstance(cert, DistinctTail):
        raise InvalidCertificate(f"unknown certificate {cert!r}")


def _aperiodic(module: StringModule, cert) -> bool:
    if isinstance(cert, Periodic) or isinstance(cert, EventuallyConstantTail):
        return False
    if isinstance(cert, DistinctTail):
        return True
    # a periodic sequence lies entirely on a cycle of down
    top = module.ideals[-1]
    cyc = dynamics.on_cycle(module.universe, top, ORBIT_BUDGET)
    if cyc is False:
        return True
    raise CertificateRequired("window lies on a cycle; periodicity above the window is undecided")


def string_is_simple(module: StringModule, certificate=None) -> bool:
    """Simplicity criterion for each kind.

    bounded: t avoids m_0 .. m_{n-1}.  right infinite: t avoids every m_i,
    i >= 0.  left infinite: t avoids every m_i, i < 0.  double infinite:
    the sequence is aperiodic and t avoids every m_i.

    Information beyond the window comes from ``certificate`` or is derived
    from the down-dynamics; ``CertificateRequired`` is raised when neither
    settles the question.
    """
    _check_certificate(module, certificate)
    kind = module.kind
    if kind == BOUNDED:
        return _window_t_free(module, range(0, module.hi))
    if kind == LEFT_INFINITE:
        return _window_t_free(module, range(module.lo, 0)) and _lower_t_free(module)
    # right-open kinds: the window and the part above it
    if not _window_t_free(module, module.positions()):
        return False
    if kind == DOUBLE_INFINITE:
        if not _aperiodic(module, certificate):
            return False
        if not _lower_t_free(module):
            return False
    upper = certificate.t_free if isinstance(certificate, DistinctTail) else None
    if upper is None:
        upper = _upper_t_free(module)
    if upper is None:
        raise CertificateRequired("t-avoidance above the window is undecided; supply DistinctTail(t_free=...)")
    return upper


# ---------------------------------------------------------------- isomorphism


@dataclass(frozen=True)
class IsoResult:
    status: str  # "equal", "shift", "not_isomorphic"
    shift: int = 0
    window_certain: bool = False

    @property
    def isomorphic(self) -> bool:
        return self.status != "not_isomorphic"

    def to_dict(self) -> dict:
        return {"status": self.status, "shift": self.shift, "window_certain": self.window_certain}


NOT_ISOMORPHIC = IsoResult("not_isomorphic")


def string_iso(m1: StringModule, m2: StringModule) -> IsoResult:
    """Compare two strings over one universe.

    For double infinite strings a shift k means m1 at i equals m2 at i + k.
    Since down is a function, agreement at the top of the overlap forces
    agreement at every lower position; agreement above the shorter window is
    not observable, hence ``window_certain``.
    """
    if m1.universe != m2.universe or m1.kind != m2.kind:
        return NOT_ISOMORPHIC
    kind = m1.kind
    if kind == BOUNDED:
        return IsoResult("equal") if m1.ideals == m2.ideals else NOT_ISOMORPHIC
    if kind == LEFT_INFINITE:
        # everything is determined by the highest weight
        return IsoResult("equal") if m1.ideals[-1] == m2.ideals[-1] else NOT_ISOMORPHIC
    if kind == RIGHT_INFINITE:
        top = min(m1.hi, m2.hi)
        same = all(m1.ideal_at(i) == m2.ideal_at(i) for i in range(top + 1))
        if not same:
            return NOT_ISOMORPHIC
        return IsoResult("equal", 0, window_certain=True)
    k = _best_shift(m1, m2)
    if k is None:
        return NOT_ISOMORPHIC
    return IsoResult("equal" if k == 0 else "shift", k, window_certain=True)


def _lower_run(module: StringModule, span: int) -> list:
    """Ideals at positions hi, hi-1, ..., hi-span (extending below the window)."""
    out = []
    u = module.universe
    i = module.hi
    m = None
    for step in range(span + 1):
        pos = i - step
        if pos >= module.lo:
            m = module.ideal_at(pos)
        else:
            m = u.down(m)
        out.append(m)
    return out


def _best_shift(m1: StringModule, m2: StringModule):
    u = m1.universe
    extra = 0
    for mod in (m1, m2):
        orb = dynamics.forward_orbit(u, mod.ideals[0], ORBIT_BUDGET)
        extra = max(extra, len(orb.points()) + 1)
    span = len(m1.ideals) + len(m2.ideals) + extra
    run1 = _lower_run(m1, span)
    run2 = _lower_run(m2, span)
    candidates = set()
    # top of overlap in m1's frame is hi1: need m2 at hi1 + k equal to m1 at hi1
    for j, n in enumerate(run2):
        if n == run1[0]:
            candidates.add(m2.hi - j - m1.hi)
    # top of overlap is m2's top: m1 at hi2 - k equals m2 at hi2
    for j, n in enumerate(run1):
        if n == run2[0]:
            pos1 = m1.hi - j
            candidates.add(m2.hi - pos1)
    valid = [k for k in candidates if _shift_ok(m1, m2, k)]
    if not valid:
        return None
    return min(valid, key=lambda k: (abs(k), k))


def _shift_ok(m1: StringModule, m2: StringModule, k: int) -> bool:
    top = min(m1.hi, m2.hi - k)
    return m1.ideal_at(top) == m2.ideal_at(top + k)


# ---------------------------------------------------------------- support


def support_multiset(module: StringModule, window: tuple[int, int] | None = None) -> dict:
    """Ideal -> number of positions in ``window`` carrying it."""
    if window is None:
        window = (module.lo, module.hi)
    a, b = window
    counts = Counter(module.ideal_at(i) for i in range(a, b + 1))
    return dict(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))
