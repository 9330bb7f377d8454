"""Monodromy graphs, polygons and the classification of generic covers of
the plane branched over ``x^n = y^m`` with ``gcd(n, m) = 1``.

A monodromy graph has ``d`` vertices (the sheets) and one edge per standard
generator; edge ``i`` joins the two sheets exchanged by the ``i``-th
generator.  Edge labels carry meaning, vertex labels do not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

from .symgroup import Permutation

Orientation = Literal["direct", "dual"]


class UnsupportedInput(ValueError):
    """Raised for inputs outside the classified range (e.g. gcd(n, m) > 1)."""


@dataclass(frozen=True)
class MonodromyGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        edges = tuple(tuple(sorted((int(a), int(b)))) for a, b in self.edges)
        for a, b in edges:
            if a == b or not (1 <= a <= self.vertex_count and 1 <= b <= self.vertex_count):
                raise ValueError(f"bad edge {{{a},{b}}} for {self.vertex_count} vertices")
        object.__setattr__(self, "edges", edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def relabel(self, mapping: dict[int, int]) -> MonodromyGraph:
        return MonodromyGraph(self.vertex_count, tuple((mapping[a], mapping[b]) for a, b in self.edges))

    def to_json(self) -> dict:
        return {"d": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> MonodromyGraph:
        return cls(int(data["d"]), tuple(tuple(e) for e in data["edges"]))

    @classmethod
    def from_transpositions(cls, perms: Sequence[Permutation]) -> MonodromyGraph:
        if not perms:
            raise ValueError("need at least one transposition")
        edges = []
        for p in perms:
            supp = p.support()
            if len(supp) != 2:
                raise ValueError(f"{p} is not a transposition")
            edges.append(supp)
        return cls(perms[0].degree, tuple(edges))


@dataclass(frozen=True)
class PolygonSpec:
    d: int
    valence: int
    increment: int

    def __post_init__(self) -> None:
        if self.d < 2 or self.valence < 1:
            raise ValueError(f"bad polygon data {self}")
        if not 1 <= self.increment < self.d:
            raise ValueError(f"increment must lie in 1..d-1, got {self.increment}")
        if math.gcd(self.increment, self.d) != 1:
            raise ValueError(f"increment {self.increment} is not prime to d={self.d}")

    @property
    def edge_count(self) -> int:
        return self.valence * self.d

    @property
    def min_compatible(self) -> int:
        """Smallest compatible exponent, ``j (d - j)``."""
        return self.increment * (self.d - self.increment)


def build_polygon(spec: PolygonSpec) -> MonodromyGraph:
    """Canonical polygon: edge ``1 + r j`` joins ``r+1`` and ``r+2`` (mod d),
    repeated every ``d`` labels."""
    d, j = spec.d, spec.increment
    by_class: dict[int, tuple[int, int]] = {}
    for r in range(d):
        by_class[(r * j) % d] = (r % d + 1, (r + 1) % d + 1)
    edges = tuple(by_class[label % d] for label in range(spec.edge_count))
    return MonodromyGraph(d, edges)


def check_polygon_axioms(g: MonodromyGraph, j: int) -> bool:
    """Two edges ``s, t`` share both ends iff ``s = t mod d``, exactly one end
    iff ``s - t = +-j mod d`` and nothing otherwise."""
    d, n = g.vertex_count, g.edge_count
    if d < 2 or n == 0 or n % d:
        return False
    plus, minus = j % d, (-j) % d
    for s in range(n):
        es = set(g.edges[s])
        for t in range(s + 1, n):
            shared = len(es & set(g.edges[t]))
            diff = (s - t) % d
            if diff == 0:
                expected = 2
            elif diff in (plus, minus):
                expected = 1
            else:
                expected = 0
            if shared != expected:
                return False
    return True


def graph_to_transpositions(g: MonodromyGraph) -> list[Permutation]:
    return [Permutation.transposition(g.vertex_count, a, b) for a, b in g.edges]


def polygon_increments(g: MonodromyGraph) -> list[int]:
    """All ``j`` in ``1..d-1`` for which ``g`` satisfies the polygon axioms."""
    d = g.vertex_count
    return [j for j in range(1, d) if math.gcd(j, d) == 1 and check_polygon_axioms(g, j)]


def find_relabeling(g: MonodromyGraph, target: MonodromyGraph) -> dict[int, int] | None:
    """A vertex bijection carrying ``g`` onto ``target`` edge-by-edge, if any.

    Edge labels are kept fixed.  Both graphs must be connected for the search
    to be exhaustive; it fixes the image of one edge (two choices) and
    propagates along shared vertices.
    """
    if g.vertex_count != target.vertex_count or g.edge_count != target.edge_count:
        return None
    if g.edge_count == 0:
        return None
    a0, b0 = g.edges[0]
    for first in (target.edges[0], target.edges[0][::-1]):
        mapping = {a0: first[0], b0: first[1]}
        if _propagate(g, target, mapping):
            return mapping
    return None


def _propagate(g: MonodromyGraph, target: MonodromyGraph, mapping: dict[int, int]) -> bool:
    changed = True
    while changed:
        changed = False
        for (a, b), (ta, tb) in zip(g.edges, target.edges):
            ends = {ta, tb}
            for x, y in ((a, b), (b, a)):
                if x in mapping and y not in mapping:
                    if mapping[x] not in ends:
                        return False
                    img = tb if mapping[x] == ta else ta
                    if img in mapping.values():
                        return False
                    mapping[y] = img
                    changed = True
    if len(mapping) != g.vertex_count:
        return False
    return all({mapping[a], mapping[b]} == {ta, tb} for (a, b), (ta, tb) in zip(g.edges, target.edges))


@dataclass(frozen=True)
class CoverClass:
    """Building data of a generic cover branched over ``x^n = y^m``.

    ``direct``: the polygon has ``n`` edges (one per generator of the
    ``x^n`` side) and ``compatible_exponent = m``.  ``dual``: the polygon has
    ``m`` edges and ``compatible_exponent = n``.
    """

    orientation: Orientation
    polygon: PolygonSpec
    compatible_exponent: int

    def __post_init__(self) -> None:
        if self.orientation not in ("direct", "dual"):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if self.compatible_exponent < 1:
            raise ValueError("compatible exponent must be positive")

    @property
    def d(self) -> int:
        return self.polygon.d

    @property
    def n(self) -> int:
        if self.orientation == "direct":
            return self.polygon.edge_count
        return self.compatible_exponent

    @property
    def m(self) -> int:
        if self.orientation == "direct":
            return self.compatible_exponent
        return self.polygon.edge_count

    def is_admissible(self) -> bool:
        p = self.polygon
        return 2 * p.increment < p.d and self.compatible_exponent % p.min_compatible == 0

    def graph(self) -> MonodromyGraph:
        return build_polygon(self.polygon)

    def transpositions(self) -> list[Permutation]:
        return graph_to_transpositions(self.graph())

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "valence": self.polygon.valence,
            "increment": self.polygon.increment,
            "orientation": self.orientation,
            "m": self.compatible_exponent,
        }

    @classmethod
    def from_json(cls, data: dict) -> CoverClass:
        spec = PolygonSpec(int(data["d"]), int(data["valence"]), int(data["increment"]))
        return cls(data["orientation"], spec, int(data["m"]))


def enumerate_generic_covers(n: int, m: int) -> list[CoverClass]:
    """All generic covers of degree ``d >= 3`` branched over ``x^n = y^m``.

    The degree-2 cover always exists and is not listed; see
    :func:`has_double_cover`.
    """
    if n < 1 or m < 1:
        raise UnsupportedInput("exponents must be positive")
    if math.gcd(n, m) != 1:
        raise UnsupportedInput(f"gcd({n}, {m}) != 1: classification needs coprime exponents")
    found = []
    for d in range(3, max(n, m) + 1):
        for j in range(1, (d + 1) // 2):
            if 2 * j >= d or math.gcd(j, d) != 1:
                continue
            jk = j * (d - j)
            if n % d == 0 and m % jk == 0:
                found.append(CoverClass("direct", PolygonSpec(d, n // d, j), m))
            if m % d == 0 and n % jk == 0:
                found.append(CoverClass("dual", PolygonSpec(d, m // d, j), n))
    return found


def has_double_cover(n: int, m: int) -> bool:
    """The double cover ``z^2 = x^n - y^m`` exists for every branch curve."""
    return True


def cover_class_to_parameters(c: CoverClass) -> tuple[int, int, int, int]:
    """``(h, k, a, b)`` such that the cover is ``F_{h,k,a,b}``."""
    p = c.polygon
    jk = p.min_compatible
    if c.compatible_exponent % jk:
        raise ValueError(f"j(d-j) = {jk} does not divide {c.compatible_exponent}")
    return p.increment, p.d - p.increment, p.valence, c.compatible_exponent // jk


def dualize(c: CoverClass) -> CoverClass:
    flipped: Orientation = "dual" if c.orientation == "direct" else "direct"
    return CoverClass(flipped, c.polygon, c.compatible_exponent)
