"""Permutations of {1, ..., d}.

Composition is left-to-right: ``compose(p, q)`` applies ``p`` first and then
``q``, which is the order in which loops are concatenated.  Points are
labelled from 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..degree}; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        if not images:
            raise ValueError("permutation degree must be >= 1")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, d: int) -> Permutation:
        return cls(tuple(range(1, d + 1)))

    @classmethod
    def transposition(cls, d: int, a: int, b: int) -> Permutation:
        if a == b or not (1 <= a <= d and 1 <= b <= d):
            raise ValueError(f"bad transposition ({a} {b}) in S_{d}")
        images = list(range(1, d + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, d: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, d + 1))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x - 1] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, e: int) -> Permutation:
        base = self if e >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(e)):
            result = compose(result, base)
        return result

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.images, start=1) if x != i)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def conjugate_by(self, s: Permutation) -> Permutation:
        """``s^-1 p s``: relabels every point ``i`` as ``s(i)``."""
        return compose(compose(s.inverse(), self), s)

    def to_json(self) -> list[int]:
        return list(self.images)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> Permutation:
        return cls(tuple(data))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(tuple(q.images[x - 1] for x in p.images))


def product(perms: Iterable[Permutation], d: int) -> Permutation:
    result = Permutation.identity(d)
    for p in perms:
        result = compose(result, p)
    return result


def is_transposition(p: Permutation) -> bool:
    return len(p.support()) == 2


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Cycle lengths in decreasing order, fixed points included."""
    lengths = [len(c) for c in p.cycles()]
    lengths += [1] * (p.degree - sum(lengths))
    return tuple(sorted(lengths, reverse=True))


def order(p: Permutation) -> int:
    return math.lcm(*cycle_type(p))


def orbit(perms: Sequence[Permutation], start: int, d: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for p in perms:
            # the group is finite, so forward images alone reach the orbit
            y = p(x)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def transitive(perms: Sequence[Permutation], d: int) -> bool:
    """Whether the subgroup generated by ``perms`` acts transitively on 1..d."""
    if any(p.degree != d for p in perms):
        raise ValueError("all permutations must have degree d")
    if d == 1:
        return True
    if not perms:
        return False
    return len(orbit(perms, 1, d)) == d
