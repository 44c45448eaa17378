"""Orbits of the down map, the equivalence it generates, and DOT export."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import NoPredecessor


@dataclass(frozen=True)
class OrbitReport:
    tail: tuple
    cycle: tuple
    steps_used: int

    @property
    def closed(self) -> bool:
        return bool(self.cycle)

    def points(self) -> tuple:
        return self.tail + self.cycle

    def to_dict(self) -> dict:
        return {
            "tail": [m.render() for m in self.tail],
            "cycle": [m.render() for m in self.cycle],
            "steps_used": self.steps_used,
        }


@dataclass(frozen=True)
class Undetermined:
    budget: int

    def __bool__(self) -> bool:
        raise TypeError("an undetermined answer has no truth value")

    def to_dict(self) -> dict:
        return {"undetermined": True, "budget": self.budget}


@dataclass(frozen=True)
class Rooted:
    root: object

    def to_dict(self) -> dict:
        return {"kind": "rooted", "root": self.root.render()}


@dataclass(frozen=True)
class Unrooted:
    reason: str = ""

    def to_dict(self) -> dict:
        return {"kind": "unrooted", "reason": self.reason}


@dataclass(frozen=True)
class UndeterminedClass:
    budget: int

    def to_dict(self) -> dict:
        return {"kind": "undetermined", "budget": self.budget}


class _Sequence:
    """Lazily memoized iterates m, down(m), down(down(m)), ..."""

    def __init__(self, u, m, limit: int):
        self.u = u
        self.items = [m]
        self.limit = limit

    def __getitem__(self, i: int):
        while len(self.items) <= i:
            if len(self.items) > self.limit:
                raise _OutOfSteps
            self.items.append(self.u.down(self.items[-1]))
        return self.items[i]


class _OutOfSteps(Exception):
    pass


def forward_orbit(u, m, max_steps: int = 1000) -> OrbitReport:
    """Iterate down from m with Brent's cycle detection."""
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    u.check_ideal(m)
    seq = _Sequence(u, m, max_steps)
    try:
        power = lam = 1
        tortoise, hare = 0, 1
        while seq[tortoise] != seq[hare]:
            if power == lam:
                tortoise = hare
                power *= 2
                lam = 0
            hare += 1
            lam += 1
        mu = 0
        while seq[mu] != seq[mu + lam]:
            mu += 1
    except _OutOfSteps:
        return OrbitReport(tuple(seq.items), (), len(seq.items) - 1)
    return OrbitReport(tuple(seq.items[:mu]), tuple(seq.items[mu:mu + lam]), len(seq.items) - 1)


def reaches(u, src, target, max_steps: int = 10000):
    """Whether down^k(src) == target for some k >= 1; None if the budget binds."""
    if getattr(u, "kind", None) == "affine":
        return _affine_reaches(u.a, u.b, src.chi, target.chi)
    orbit = forward_orbit(u, src, max_steps)
    later = orbit.points()[1:] + orbit.cycle[:1]
    if target in later:
        return True
    return False if orbit.closed else None


def _affine_reaches(a, b, x, y) -> bool:
    # iterates of x -> a x + b in closed form
    if a == 0:
        return y == b
    if a == 1:
        if b == 0:
            return y == x
        k = (y - x) / b
        return k.denominator == 1 and k >= 1
    c = b / (1 - a)
    if x == c:
        return y == c
    rho = (y - c) / (x - c)
    if rho == 0:
        return False
    if a == -1:
        return rho in (-1, 1)
    power = a
    if abs(a) > 1:
        while abs(power) <= abs(rho):
            if power == rho:
                return True
            power *= a
        return False
    while abs(power) >= abs(rho):
        if power == rho:
            return True
        power *= a
    return False


def on_cycle(u, m, max_steps: int = 10000):
    """Whether m is periodic under down; None if the budget binds."""
    if getattr(u, "kind", None) == "affine":
        return _affine_reaches(u.a, u.b, m.chi, m.chi)
    return reaches(u, m, m, max_steps)


def same_class(u, m, n, bound: int = 1000):
    """True/False when certain, otherwise ``Undetermined(bound)``."""
    if m == n:
        return True
    if bound < 1:
        return Undetermined(bound)
    a = forward_orbit(u, m, bound)
    b = forward_orbit(u, n, bound)
    if set(a.points()) & set(b.points()):
        return True
    if a.closed and b.closed:
        return False
    return Undetermined(bound)


def class_kind(u, m, bound: int = 1000):
    """Rooted iff the class holds a point without a down-image.

    The class of m is rooted exactly when the forward orbit of m reaches such
    a point, so only the forward orbit needs inspecting.  All shipped
    backends have a total down map, so the orbit never stops and the answer
    is Unrooted with certainty; a backend that raises NoPredecessor yields a
    Rooted witness.
    """
    cur = m
    seen = {m}
    for _ in range(max(bound, 1)):
        try:
            nxt = u.down(cur)
        except NoPredecessor:
            return Rooted(cur)
        if nxt in seen:
            return Unrooted("forward orbit closes into a cycle; down is total")
        seen.add(nxt)
        cur = nxt
    if getattr(u, "kind", None) in ("finite_poly", "power_map", "affine"):
        return Unrooted("down is total on this backend")
    return UndeterminedClass(bound)


def upward_leaves(u, m, depth: int, degree_bound: int | None = None) -> tuple:
    """Points reachable from m by up-steps (at most ``depth``) whose up-set is empty."""
    from .universe import sorted_ideals

    leaves = []
    frontier = [m]
    seen = {m}
    for _ in range(depth):
        nxt = []
        for x in frontier:
            ups = u.up(x, degree_bound)
            if not ups:
                leaves.append(x)
            for y in ups:
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted_ideals(leaves)


@dataclass
class _Graph:
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)


def neighbourhood(u, seeds, depth: int, degree_bound: int | None = None) -> _Graph:
    """Breadth-first exploration along down and up; edges point m -> down(m)."""
    g = _Graph()
    dist = {}
    queue = deque()
    for s in seeds:
        if s not in dist:
            dist[s] = 0
            g.nodes.append(s)
            queue.append(s)
    edges = set()
    while queue:
        x = queue.popleft()
        if dist[x] >= depth:
            continue
        d = u.down(x)
        nbrs = [(x, d, d)] + [(y, x, y) for y in u.up(x, degree_bound)]
        for src, dst, new in nbrs:
            edges.add((src, dst))
            if new not in dist:
                dist[new] = dist[x] + 1
                g.nodes.append(new)
                queue.append(new)
    key = lambda m: m.sort_key()
    g.nodes.sort(key=key)
    g.edges = sorted(edges, key=lambda e: (key(e[0]), key(e[1])))
    return g


def export_dot(u, seeds, depth: int, degree_bound: int | None = None) -> str:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    g = neighbourhood(u, list(seeds), depth, degree_bound)
    lines = ["digraph wgwa {", "  rankdir=RL;"]
    for m in g.nodes:
        v = u.vanishing(m)
        flags = f"t_in={int(v['t_in'])} sigma_t_in={int(v['sigma_t_in'])}"
        style = ' peripheries=2' if v["t_in"] else ""
        lines.append(f'  "{m.render()}" [label="{m.render()}\\n{flags}"{style}];')
    for a, b in g.edges:
        lines.append(f'  "{a.render()}" -> "{b.render()}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
