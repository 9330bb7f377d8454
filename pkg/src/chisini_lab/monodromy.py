"""Checks of candidate monodromy assignments against the presentations

    G_{m,n} = < g_1..g_m | g_k = T g_{k+n} T^-1,  T = g_1 ... g_n >

(indices cyclic mod m, also inside ``T``), plus genericity, the projective
relator ``(g_1 ... g_m)^e = 1`` and an exhaustive search used as an oracle
for the classification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import CoverClass, PolygonSpec
from .symgroup import Permutation, compose, is_transposition, order, product, transitive


@dataclass(frozen=True)
class PresentationSpec:
    """``m`` generators, relation stride ``n``, optional projective exponent."""

    m: int
    n: int
    projective_exponent: int | None = None

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        if self.projective_exponent is not None and self.projective_exponent < 1:
            raise ValueError("projective exponent must be positive")

    @classmethod
    def projective(cls, m: int, n: int, poly_degree: int) -> PresentationSpec:
        """Presentation of the projective complement for a curve of degree ``poly_degree``."""
        if poly_degree % m:
            raise ValueError(f"m={m} does not divide the curve degree {poly_degree}")
        return cls(m, n, poly_degree // m)

    def to_json(self) -> dict:
        out = {"m": self.m, "n": self.n}
        if self.projective_exponent is not None:
            out["projective_exponent"] = self.projective_exponent
        return out

    @classmethod
    def from_json(cls, data: dict) -> PresentationSpec:
        return cls(int(data["m"]), int(data["n"]), data.get("projective_exponent"))


@dataclass(frozen=True)
class MonodromyAssignment:
    d: int
    taus: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        taus = tuple(self.taus)
        if self.d < 2:
            raise ValueError("degree-1 covers have no branching")
        if any(t.degree != self.d for t in taus):
            raise ValueError(f"all permutations must lie in S_{self.d}")
        object.__setattr__(self, "taus", taus)

    @property
    def generator_count(self) -> int:
        return len(self.taus)

    @classmethod
    def from_cover_class(cls, c: CoverClass) -> MonodromyAssignment:
        return cls(c.d, tuple(c.transpositions()))

    def to_json(self) -> list[list[int]]:
        return [t.to_json() for t in self.taus]


def presentation_for_class(c: CoverClass) -> PresentationSpec:
    """The presentation on the polygon's side: one generator per edge."""
    return PresentationSpec(c.polygon.edge_count, c.compatible_exponent)


def stride_product(taus: Sequence[Permutation], n: int) -> Permutation:
    m = len(taus)
    return product((taus[i % m] for i in range(n)), taus[0].degree)


def verify_gmn(a: MonodromyAssignment, p: PresentationSpec) -> bool:
    if a.generator_count != p.m:
        raise ValueError(f"assignment has {a.generator_count} generators, presentation {p.m}")
    T = stride_product(a.taus, p.n)
    T_inv = T.inverse()
    m = p.m
    for k in range(m):
        if compose(compose(T, a.taus[(k + p.n) % m]), T_inv) != a.taus[k]:
            return False
    return True


def verify_generic(a: MonodromyAssignment) -> bool:
    return bool(a.taus) and all(is_transposition(t) for t in a.taus) and transitive(a.taus, a.d)


def boundary_product(a: MonodromyAssignment) -> Permutation:
    return product(a.taus, a.d)


def verify_projective(a: MonodromyAssignment, p: PresentationSpec) -> bool:
    if p.projective_exponent is None:
        raise ValueError("presentation carries no projective exponent")
    return p.projective_exponent % order(boundary_product(a)) == 0


def pullback_building_data(c: CoverClass, a_factor: int, b_factor: int) -> CoverClass:
    """Effect of the base change ``(x, y) -> (x^a, y^b)``: valence times ``a``,
    compatible exponent times ``b``."""
    if a_factor < 1 or b_factor < 1:
        raise ValueError("base-change factors must be positive")
    p = c.polygon
    return CoverClass(
        c.orientation,
        PolygonSpec(p.d, p.valence * a_factor, p.increment),
        c.compatible_exponent * b_factor,
    )


def conjugate_assignment(a: MonodromyAssignment, s: Permutation) -> MonodromyAssignment:
    return MonodromyAssignment(a.d, tuple(t.conjugate_by(s) for t in a.taus))


def canonical_form(taus: Sequence[Permutation]) -> tuple[tuple[int, ...], ...]:
    """Representative of the simultaneous-conjugacy class of ``taus``.

    Transitive tuples are relabelled by breadth-first search from every start
    point (generators in order); the lexicographically smallest result wins.
    Two transitive tuples are conjugate iff their forms agree.  Intransitive
    tuples fall back to minimising over all of ``S_d``.
    """
    d = taus[0].degree
    if not transitive(taus, d):
        return _canonical_exhaustive(taus, d)
    best = None
    for start in range(1, d + 1):
        label = {start: 1}
        queue = [start]
        for x in queue:
            for t in taus:
                y = t(x)
                if y not in label:
                    label[y] = len(label) + 1
                    queue.append(y)
        form = tuple(_relabel_images(t, label) for t in taus)
        if best is None or form < best:
            best = form
    return best


def _relabel_images(t: Permutation, label: dict[int, int]) -> tuple[int, ...]:
    out = [0] * t.degree
    for i in range(1, t.degree + 1):
        out[label[i] - 1] = label[t(i)]
    return tuple(out)


def _canonical_exhaustive(taus: Sequence[Permutation], d: int) -> tuple[tuple[int, ...], ...]:
    if d > 8:
        raise ValueError("exhaustive canonical form limited to d <= 8")
    best = None
    for images in itertools.permutations(range(1, d + 1)):
        label = {i: images[i - 1] for i in range(1, d + 1)}
        form = tuple(_relabel_images(t, label) for t in taus)
        if best is None or form < best:
            best = form
    return best


# -- exhaustive search -------------------------------------------------------


def _restricted_growth(d: int, length: int) -> np.ndarray:
    """Every sequence of ``length`` transpositions of 1..d up to relabelling:
    new points are introduced in increasing order.  Shape (N, length, 2), 0-based."""
    pairs = [(a, b) for a in range(d) for b in range(a + 1, d)]
    # state: (sequences, used-count)
    seqs = np.zeros((1, 0, 2), dtype=np.int8)
    used = np.zeros(1, dtype=np.int8)
    for _ in range(length):
        new_seqs, new_used = [], []
        for u in np.unique(used):
            block = seqs[used == u]
            for a, b in pairs:
                if b > u + 1 or (b == u + 1 and a != u):
                    continue
                nu = max(u, b + 1)
                step = np.broadcast_to(np.array([a, b], dtype=np.int8), (block.shape[0], 1, 2))
                new_seqs.append(np.concatenate([block, step], axis=1))
                new_used.append(np.full(block.shape[0], nu, dtype=np.int8))
        seqs = np.concatenate(new_seqs)
        used = np.concatenate(new_used)
    return seqs


def _as_perm_arrays(pairs: np.ndarray, d: int) -> np.ndarray:
    """(N, L, 2) transposition pairs -> (N, L, d) image arrays (0-based)."""
    N, L, _ = pairs.shape
    perms = np.broadcast_to(np.arange(d, dtype=np.int8), (N, L, d)).copy()
    ii, ll = np.meshgrid(np.arange(N), np.arange(L), indexing="ij")
    a, b = pairs[..., 0], pairs[..., 1]
    perms[ii, ll, a] = b
    perms[ii, ll, b] = a
    return perms


def _compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Batch left-to-right composition: apply p, then q."""
    return np.take_along_axis(q, p.astype(np.intp), axis=-1)


def _inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    idx = np.broadcast_to(np.arange(p.shape[-1], dtype=p.dtype), p.shape)
    np.put_along_axis(inv, p.astype(np.intp), idx, axis=-1)
    return inv


def search_generic_assignments(m: int, n: int, d: int) -> set[tuple[tuple[int, ...], ...]]:
    """All generic transitive assignments ``m`` generators -> transpositions of
    S_d satisfying G_{m,n}, as canonical forms.

    Only ``min(m, n)`` images are free: when ``m > n`` the relation
    ``g_{k+n} = T^-1 g_k T`` determines the rest.  Candidates are enumerated
    up to relabelling, then every full tuple is re-checked with
    :func:`verify_gmn`.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    free = min(m, n)
    pairs = _restricted_growth(d, free)
    perms = _as_perm_arrays(pairs, d)
    if m > n:
        T = perms[:, 0]
        for i in range(1, n):
            T = _compose(T, perms[:, i])
        T_inv = _inverse(T)
        cols = [perms[:, i] for i in range(n)]
        for k in range(m - n):
            cols.append(_compose(_compose(T_inv, cols[k]), T))
        perms = np.stack(cols, axis=1)
    # transpositions only
    moved = (perms != np.arange(d, dtype=np.int8)).sum(axis=-1)
    perms = perms[(moved == 2).all(axis=1)]
    # vectorised relation check
    T = perms[:, 0]
    for i in range(1, n):
        T = _compose(T, perms[:, i % m])
    T_inv = _inverse(T)
    ok = np.ones(perms.shape[0], dtype=bool)
    for k in range(m):
        rhs = _compose(_compose(T, perms[:, (k + n) % m]), T_inv)
        ok &= (rhs == perms[:, k]).all(axis=-1)
    perms = np.unique(perms[ok], axis=0)
    presentation = PresentationSpec(m, n)
    found = set()
    for row in perms:
        taus = tuple(Permutation(tuple(int(x) + 1 for x in r)) for r in row)
        a = MonodromyAssignment(d, taus)
        if verify_generic(a) and verify_gmn(a, presentation):
            found.add(canonical_form(taus))
    return found


def certificate(a: MonodromyAssignment, p: PresentationSpec) -> dict:
    checks = {"gmn": verify_gmn(a, p), "generic": verify_generic(a)}
    if p.projective_exponent is not None:
        checks["projective"] = verify_projective(a, p)
    return {
        "d": a.d,
        "taus": a.to_json(),
        "presentation": p.to_json(),
        "checks": checks,
    }
