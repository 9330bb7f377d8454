"""Numeric monodromy of the covers

    h z^{h+k} - (h+k) x^a z^h + k y^{bh} = 0

(the fibre equation of ``F_{h,k,a,b}`` after eliminating ``w = y/z``).
Fibre roots are found by Aberth iteration and followed around loops in the
``x`` line at ``y = 1``, where the branch values are the ``a(h+k)``-th roots
of unity.  The result is a combinatorial check independent of the
presentation machinery.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .graphs import MonodromyGraph, PolygonSpec, build_polygon, find_relabeling, polygon_increments
from .symgroup import Permutation, is_transposition, order, product


class NumericFailure(RuntimeError):
    """Continuation or root finding did not meet its tolerances."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass(frozen=True)
class TrackingConfig:
    eps: float = 0.1
    solver_tol: float = 1e-12
    max_iter: int = 200
    min_separation: float = 1e-9
    motion_ratio: float = 1 / 3
    uniqueness_factor: float = 2.0
    initial_step: float = 0.05
    min_step: float = 1e-8
    workers: int | None = None

    def __post_init__(self) -> None:
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if self.solver_tol <= 0 or self.min_separation <= 0 or self.initial_step <= 0:
            raise ValueError("tolerances and steps must be positive")


@dataclass(frozen=True)
class FiberPolynomial:
    h: int
    k: int
    x: complex
    y: complex = 1.0
    a: int = 1
    b: int = 1

    def __post_init__(self) -> None:
        if self.h < 1 or self.k < 1 or math.gcd(self.h, self.k) != 1:
            raise ValueError("h, k must be coprime positive integers")
        if self.a < 1 or self.b < 1:
            raise ValueError("a, b must be positive")

    @property
    def degree(self) -> int:
        return self.h + self.k

    def coefficients(self) -> np.ndarray:
        """Highest degree first, as for :func:`numpy.polyval`."""
        h, k = self.h, self.k
        c = np.zeros(h + k + 1, dtype=complex)
        c[0] = h
        c[k] = -(h + k) * complex(self.x) ** self.a
        c[h + k] += k * complex(self.y) ** (self.b * h)
        return c


def relative_residual(coeffs: np.ndarray, roots: np.ndarray) -> float:
    """Backward error ``|P(z)| / sum |c_i| |z|^i``, maximised over roots."""
    vals = np.abs(np.polyval(coeffs, roots))
    scale = np.polyval(np.abs(coeffs), np.abs(roots))
    # scale vanishes only at an exact root z = 0
    ratio = np.divide(vals, scale, out=np.zeros_like(vals), where=scale > 0)
    return float(np.max(ratio))


def aberth(coeffs: np.ndarray, init: np.ndarray | None = None, tol: float = 1e-12, max_iter: int = 200) -> np.ndarray:
    """All roots of ``coeffs`` by Aberth-Ehrlich simultaneous iteration."""
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs) - 1
    if n < 1 or coeffs[0] == 0:
        raise ValueError("need a polynomial of positive degree with non-zero leading coefficient")
    zeros = 0
    while zeros < n and coeffs[n - zeros] == 0:
        zeros += 1
    if zeros and init is None:
        rest = aberth(coeffs[: n + 1 - zeros], None, tol, max_iter) if zeros < n else np.zeros(0, dtype=complex)
        return np.concatenate([rest, np.zeros(zeros, dtype=complex)])
    deriv = np.polyder(coeffs)
    if init is None:
        # circle of the Fujiwara radius, rotated off the real axis
        radius = 2 * max(abs(coeffs[i] / coeffs[0]) ** (1 / i) for i in range(1, n + 1))
        init = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    z = np.array(init, dtype=complex)
    for _ in range(max_iter):
        p = np.polyval(coeffs, z)
        dp = np.polyval(deriv, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            corr = ratio / (1 - ratio * inv.sum(axis=1))
        corr = np.where(np.isfinite(corr), corr, 0.0)
        z = z - corr
        if relative_residual(coeffs, z) <= tol and np.all(np.abs(corr) <= 1e-3 * (1 + np.abs(z))):
            return z
    res = relative_residual(coeffs, z)
    if res <= tol:
        return z
    raise NumericFailure("Aberth iteration did not converge", {"residual": res, "iterations": max_iter})


def fiber_roots(p: FiberPolynomial, config: TrackingConfig = TrackingConfig()) -> np.ndarray:
    return aberth(p.coefficients(), tol=config.solver_tol, max_iter=config.max_iter)


def double_root_polynomial(h: int, k: int) -> list[int]:
    """Integer coefficients (lowest degree first) of ``(hz+k)^{h+k} - (h+k)^{h+k} z^h``."""
    s = h + k
    coeffs = [math.comb(s, i) * h**i * k ** (s - i) for i in range(s + 1)]
    coeffs[h] -= s**s
    return coeffs


def _derivative_at_one(coeffs: list[int], order_: int) -> int:
    return sum(c * math.perm(i, order_) for i, c in enumerate(coeffs))


def verify_double_root_structure(h: int, k: int, config: TrackingConfig = TrackingConfig()) -> bool:
    """``z = 1`` is a double root and the other ``h+k-2`` roots are simple."""
    if math.gcd(h, k) != 1:
        raise ValueError("h, k must be coprime")
    c = double_root_polynomial(h, k)
    s = h + k
    exact = (
        _derivative_at_one(c, 0) == 0
        and _derivative_at_one(c, 1) == 0
        and _derivative_at_one(c, 2) == h * k * s ** (s - 1)
    )
    if not exact:
        return False
    # deflate the double root exactly, then check the rest numerically
    q = np.polydiv(np.array(c[::-1], dtype=float), np.array([1.0, -2.0, 1.0]))[0]
    if len(q) < 2:
        return True
    roots = aberth(q / q[0], tol=config.solver_tol, max_iter=config.max_iter)
    gaps = np.abs(roots[:, None] - roots[None, :]) + np.eye(len(roots))
    return bool(gaps.min() > 1e-6 and np.min(np.abs(roots - 1)) > 1e-6)


# -- loops and continuation ---------------------------------------------------------


@dataclass(frozen=True)
class TrackedLoop:
    """Counterclockwise along ``|x| = 1 - eps`` from angle 0 to the ``r``-th of
    ``branch_count`` roots of unity, once around it on a circle of radius
    ``eps``, then back.  ``reverse`` runs the same loop backwards."""

    target_branch_index: int
    branch_count: int
    eps: float = 0.1
    reverse: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.target_branch_index < self.branch_count:
            raise ValueError("branch index out of range")
        if not 0 < self.eps < math.sin(math.pi / self.branch_count):
            raise ValueError(f"eps must be below sin(pi/{self.branch_count}) to separate branch points")

    @property
    def base_point(self) -> complex:
        return 1 - self.eps

    @property
    def angle(self) -> float:
        return 2 * math.pi * self.target_branch_index / self.branch_count

    @property
    def length(self) -> float:
        return 2 * (1 - self.eps) * self.angle + 2 * math.pi * self.eps

    def point(self, s: float) -> complex:
        """Arc-length parametrisation, ``0 <= s <= length``."""
        if self.reverse:
            s = self.length - s
        rho, theta = 1 - self.eps, self.angle
        arc = rho * theta
        if s <= arc:
            return rho * np.exp(1j * s / rho)
        s -= arc
        circle = 2 * math.pi * self.eps
        if s <= circle:
            centre = np.exp(1j * theta)
            return centre - self.eps * centre * np.exp(1j * s / self.eps)
        s -= circle
        return rho * np.exp(1j * (theta - min(s, arc) / rho))


def standard_loops(h: int, k: int, a: int = 1, eps: float = 0.1) -> list[TrackedLoop]:
    n = a * (h + k)
    return [TrackedLoop(r, n, eps) for r in range(n)]


@dataclass
class LoopResult:
    permutation: Permutation
    steps: int
    max_residual: float
    min_separation: float
    rejected_steps: int = 0


def _min_gap(z: np.ndarray) -> float:
    gaps = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(gaps, np.inf)
    return float(gaps.min())


def _match(old: np.ndarray, new: np.ndarray, config: TrackingConfig) -> np.ndarray | None:
    """Assignment of new roots to old ones, or None when it is not unambiguous."""
    cost = np.abs(old[:, None] - new[None, :])
    rows, cols = linear_sum_assignment(cost)
    moved = cost[rows, cols]
    second = np.sort(cost, axis=1)[:, 1] if len(old) > 1 else np.full(len(old), np.inf)
    if np.any(moved * config.uniqueness_factor > second):
        return None
    if np.max(moved) > config.motion_ratio * _min_gap(old):
        return None
    perm = np.empty(len(old), dtype=int)
    perm[rows] = cols
    return perm


def _start_roots(h: int, k: int, a: int, b: int, x0: complex, config: TrackingConfig) -> np.ndarray:
    z = fiber_roots(FiberPolynomial(h, k, x0, 1.0, a, b), config)
    # deterministic labelling: by argument, then modulus
    keys = np.lexsort((np.round(np.abs(z), 9), np.round(np.angle(z), 9)))
    return z[keys]


def track_loop(h: int, k: int, loop: TrackedLoop, a: int = 1, b: int = 1, config: TrackingConfig = TrackingConfig()) -> LoopResult:
    start = _start_roots(h, k, a, b, loop.base_point, config)
    z = start.copy()
    s, step = 0.0, config.initial_step
    steps = rejected = 0
    worst_res, worst_gap = 0.0, _min_gap(z)
    while s < loop.length:
        t = min(s + step, loop.length)
        coeffs = FiberPolynomial(h, k, loop.point(t), 1.0, a, b).coefficients()
        try:
            new = aberth(coeffs, init=z, tol=config.solver_tol, max_iter=config.max_iter)
            perm = _match(z, new, config)
        except NumericFailure:
            perm = None
        if perm is None:
            rejected += 1
            step /= 2
            if step < config.min_step:
                raise NumericFailure(
                    "step size underflow while tracking",
                    {"loop": loop.target_branch_index, "s": s, "step": step},
                )
            continue
        z = new[perm]
        gap = _min_gap(z)
        if gap < config.min_separation:
            raise NumericFailure("fibre roots collided", {"loop": loop.target_branch_index, "s": t, "gap": gap})
        worst_gap = min(worst_gap, gap)
        worst_res = max(worst_res, relative_residual(coeffs, z))
        s = t
        steps += 1
        step = min(step * 1.5, config.initial_step)
    # identify end points with start points
    final = _match(start, z, config)
    if final is None:
        raise NumericFailure("loop did not close up on the fibre", {"loop": loop.target_branch_index})
    images = tuple(int(final[i]) + 1 for i in range(len(start)))
    return LoopResult(Permutation(images), steps, worst_res, worst_gap, rejected)


def _worker_count(config: TrackingConfig) -> int:
    if config.workers is not None:
        return max(1, config.workers)
    env = os.environ.get("CHISINI_LAB_THREADS")
    return max(1, int(env)) if env else 1


def track_loops(
    h: int,
    k: int,
    loops: list[TrackedLoop] | None = None,
    a: int = 1,
    b: int = 1,
    config: TrackingConfig = TrackingConfig(),
) -> list[LoopResult]:
    if math.gcd(h, k) != 1:
        raise ValueError("h, k must be coprime")
    if loops is None:
        loops = standard_loops(h, k, a, config.eps)
    workers = _worker_count(config)
    if workers == 1:
        return [track_loop(h, k, lp, a, b, config) for lp in loops]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda lp: track_loop(h, k, lp, a, b, config), loops))


def track_monodromy(
    h: int,
    k: int,
    loops: list[TrackedLoop] | None = None,
    a: int = 1,
    b: int = 1,
    config: TrackingConfig = TrackingConfig(),
) -> list[Permutation]:
    return [r.permutation for r in track_loops(h, k, loops, a, b, config)]


@dataclass
class PolygonCheck:
    passed: bool
    increment: int | None
    relabeling: dict[int, int] | None = field(default=None)


def match_polygon(perms: list[Permutation], valence: int, increment: int) -> PolygonCheck:
    """Relabel the sheets so the transposition graph becomes the canonical
    polygon with increment ``increment`` or ``d - increment``."""
    if not perms or not all(is_transposition(p) for p in perms):
        return PolygonCheck(False, None)
    g = MonodromyGraph.from_transpositions(perms)
    d = g.vertex_count
    for j in sorted({increment % d, (-increment) % d}):
        if j == 0 or math.gcd(j, d) != 1:
            continue
        target = build_polygon(PolygonSpec(d, valence, j))
        mapping = find_relabeling(g, target)
        if mapping is not None:
            return PolygonCheck(True, j, mapping)
    return PolygonCheck(False, None)


def numeric_vs_polygon(h: int, k: int, a: int = 1, b: int = 1, config: TrackingConfig = TrackingConfig()) -> dict:
    """Track every standard loop and compare with the predicted polygon
    (valence ``a``, increment ``h``)."""
    if math.gcd(h, k) != 1 or h + k < 3:
        raise ValueError("need coprime h, k with h + k >= 3")
    results = track_loops(h, k, None, a, b, config)
    perms = [r.permutation for r in results]
    check = match_polygon(perms, a, h)
    max_res = max(r.max_residual for r in results)
    all_transpositions = all(is_transposition(p) for p in perms)
    boundary = product(perms, h + k)
    passed = check.passed and all_transpositions and max_res < 1e-8
    out = {
        "h": h,
        "k": k,
        "a": a,
        "b": b,
        "transpositions": [list(p.support()) for p in perms],
        "polygon": {"d": h + k, "valence": a, "j": check.increment},
        "all_transpositions": all_transpositions,
        "graph_increments": polygon_increments(MonodromyGraph.from_transpositions(perms)) if all_transpositions else [],
        "boundary_order": order(boundary),
        "max_residual": max_res,
        "min_separation": min(r.min_separation for r in results),
        "steps": sum(r.steps for r in results),
        "eps": config.eps,
        "passed": passed,
    }
    return out
