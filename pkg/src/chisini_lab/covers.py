"""Cover descriptors, smoothness of the local models ``F_{h,k,a,b}``,
the two-cover family over ``g_{h+k}(x)^{hk} = f_{hk}(y)^{h+k}`` and its
certificates.

``F_{h,k,a,b}`` is the surface ``h z^k + k w^h = (h+k) x^a, z w = y^b``
projected to the ``(x, y)`` plane; it is branched over
``x^{a(h+k)} = y^{bhk}`` and its monodromy graph is a polygon with valence
``a`` and increment ``h``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .braid import CurveShape, braid_relations_hold, extend_assignment
from .graphs import CoverClass, PolygonSpec, cover_class_to_parameters, enumerate_generic_covers
from .invariants import BranchCurveData, Singularity, invariant_report
from .monodromy import (
    MonodromyAssignment,
    PresentationSpec,
    canonical_form,
    presentation_for_class,
    pullback_building_data,
    verify_generic,
    verify_gmn,
    verify_projective,
)
from .numeric import aberth
from .symgroup import Permutation, order, product

CERTIFICATE_VERSION = 1


class SplittingError(ValueError):
    """A smooth-ramification cover cannot have this local shape."""

    def __init__(self, clause: str, message: str):
        super().__init__(f"[{clause}] {message}")
        self.clause = clause


@dataclass(frozen=True)
class LocalSplitting:
    component_degrees: tuple[int, ...]
    isomorphism_sheets: int

    def to_json(self) -> dict:
        return {"components": list(self.component_degrees), "isomorphism_sheets": self.isomorphism_sheets}


def local_splitting(N: int, sing: Singularity) -> LocalSplitting:
    """Preimage of a small ball around a singular point of type
    ``x^{sn} = y^{sm}`` under a degree-``N`` cover with smooth ramification."""
    n, m, s = sing.n, sing.m, sing.s
    if N < s * (n + 1):
        raise SplittingError("degree", f"N={N} is below s(n+1)={s * (n + 1)}")
    if n >= 2 and m != n + 1:
        raise SplittingError("exponents", f"n={n} >= 2 forces m = n+1, got m={m}")
    return LocalSplitting((n + 1,) * s, N - (n + 1) * s)


def _curve_singularity_name(p: int, q: int) -> str:
    """Name of the plane singularity ``u^p = v^q``."""
    p, q = sorted((p, q))
    if p == 1:
        return "smooth"
    if (p, q) == (2, 2):
        return "node"
    if (p, q) == (2, 3):
        return "ordinary cusp"
    g = math.gcd(p, q)
    return f"type ({p},{q})" + (f", {g} branches" if g > 1 else "")


def smoothness(h: int, k: int, a: int = 1, b: int = 1) -> dict:
    """Smoothness of the surface ``F_{h,k,a,b}`` and of its ramification curve.

    The surface is smooth iff ``b = 1`` and (``a = 1`` or ``min(h,k) = 1``).
    The ramification curve is cut out by ``z^k = w^h``; it is smooth iff
    additionally ``a = 1`` and ``min(h,k) = 1``.
    """
    if min(h, k, a, b) < 1 or math.gcd(h, k) != 1:
        raise ValueError("need coprime positive h, k and positive a, b")
    lo, hi = sorted((h, k))
    surface = b == 1 and (a == 1 or lo == 1)
    ramification = surface and a == 1 and lo == 1
    out = {"surface_smooth": surface, "ramification_smooth": ramification}
    if surface and not ramification:
        if a == 1:
            out["ramification_singularity"] = {"equation": f"z^{hi} = w^{lo}", "name": _curve_singularity_name(lo, hi)}
        else:
            # min(h,k) = 1: the surface is a graph over (x, z) and R is z^hi = x^a
            out["ramification_singularity"] = {"equation": f"z^{hi} = x^{a}", "name": _curve_singularity_name(a, hi)}
    return out


# -- the family ---------------------------------------------------------------------


def _linear_product(var: str, count: int) -> str:
    return "".join(f"({var}-{i}w)" if i > 1 else f"({var}-w)" for i in range(1, count + 1))


@dataclass(frozen=True)
class FamilyCurve:
    """``g_{h+k}(x,w)^{hk} = f_{hk}(y,w)^{h+k}`` with
    ``g_l(x,w) = (x-w)(x-2w)...(x-lw)``."""

    h: int
    k: int

    def __post_init__(self) -> None:
        if min(self.h, self.k) < 1 or math.gcd(self.h, self.k) != 1:
            raise ValueError("h, k must be coprime positive integers")

    @property
    def x_roots(self) -> tuple[int, ...]:
        return tuple(range(1, self.h + self.k + 1))

    @property
    def y_roots(self) -> tuple[int, ...]:
        return tuple(range(1, self.h * self.k + 1))

    @property
    def degree(self) -> int:
        return self.h * self.k * (self.h + self.k)

    @property
    def point_count(self) -> int:
        return len(self.x_roots) * len(self.y_roots)

    def equation(self) -> str:
        s, p = self.h + self.k, self.h * self.k
        return f"[{_linear_product('x', s)}]^{p} = [{_linear_product('y', p)}]^{s}"

    def branch_data(self) -> BranchCurveData:
        s, p = self.h + self.k, self.h * self.k
        return BranchCurveData(self.degree, (Singularity(p, s, 1, self.point_count),))

    def shape(self, side: str) -> CurveShape:
        """Braid shape with the fibre taken over the ``y`` line (``side='y'``)
        or, using the symmetry of the equation, over the ``x`` line."""
        s, p = self.h + self.k, self.h * self.k
        if side == "y":
            return CurveShape((p,) * s, (s,) * p)
        if side == "x":
            return CurveShape((s,) * p, (p,) * s)
        raise ValueError("side must be 'x' or 'y'")


@dataclass
class CoverDescriptor:
    curve: FamilyCurve
    cover_class: CoverClass
    side: str
    provenance: list[str] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.cover_class.d

    @property
    def parameters(self) -> tuple[int, int, int, int]:
        return cover_class_to_parameters(self.cover_class)

    @property
    def assignment(self) -> MonodromyAssignment:
        return MonodromyAssignment.from_cover_class(self.cover_class)

    def presentation(self) -> PresentationSpec:
        local = presentation_for_class(self.cover_class)
        return PresentationSpec.projective(local.m, local.n, self.curve.degree)

    def checks(self) -> dict:
        a = self.assignment
        p = self.presentation()
        sm = smoothness(*self.parameters)
        shape = self.curve.shape(self.side)
        # every singular point has local type x^{hk} = y^{h+k}
        local_classes = enumerate_generic_covers(self.curve.h * self.curve.k, self.curve.h + self.curve.k)
        local = next((c for c in local_classes if c.d == self.degree and c.orientation == self.cover_class.orientation), None)
        full = extend_assignment(shape, a.taus)
        out = {
            "generic": verify_generic(a),
            "gmn": verify_gmn(a, p),
            "projective": verify_projective(a, p),
            "boundary_order_divides_exponent": p.projective_exponent % order(product(a.taus, a.d)) == 0,
            "local_equals_global": local is not None and pullback_building_data(local, 1, 1) == self.cover_class,
            "braid_relators": braid_relations_hold(shape, full, projective=True),
            "surface_smooth": sm["surface_smooth"],
        }
        return out

    def ramification(self) -> dict:
        sm = smoothness(*self.parameters)
        out = {"smooth": sm["ramification_smooth"]}
        if not sm["ramification_smooth"]:
            out["singular_points"] = self.curve.point_count
            out["local_type"] = sm["ramification_singularity"]
        else:
            sing = self.curve.branch_data().singularities[0]
            out["local_splitting"] = local_splitting(self.degree, sing).to_json()
        return out

    def to_json(self) -> dict:
        smooth_r = smoothness(*self.parameters)["ramification_smooth"]
        return {
            "degree": self.degree,
            "class": self.cover_class.to_json(),
            "side": self.side,
            "parameters": list(self.parameters),
            "taus": self.assignment.to_json(),
            "presentation": self.presentation().to_json(),
            "checks": self.checks(),
            "ramification": self.ramification(),
            "invariants": invariant_report(self.curve.branch_data(), self.degree, check_degree=smooth_r),
            "provenance": list(self.provenance),
        }


def counterexample_pair(t: int) -> tuple[CoverDescriptor, CoverDescriptor]:
    """Covers of degrees ``4t+2`` and ``4t+1`` with the same branch curve
    (``h = 2t``, ``k = 2t+1``)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    h, k = 2 * t, 2 * t + 1
    curve = FamilyCurve(h, k)
    # fibre generators over the x line: hk of them, polygon on 4t+2 sheets
    big = CoverClass("direct", PolygonSpec(h + k + 1, t, 1), h + k)
    # fibre generators over the y line: h+k of them, polygon on 4t+1 sheets
    small = CoverClass("dual", PolygonSpec(h + k, 1, h), h * k)
    return (
        CoverDescriptor(curve, big, "x", [f"polygon(d={h + k + 1}, valence={t}, increment=1)", "model F(1,4t+1,t,1)"]),
        CoverDescriptor(curve, small, "y", [f"polygon(d={h + k}, valence=1, increment={h})", "model F(2t,2t+1,1,1)"]),
    )


def pair_certificate(t: int) -> dict:
    first, second = counterexample_pair(t)
    c1, c2 = first.to_json(), second.to_json()
    curve = first.curve
    data = curve.branch_data().to_json()
    sing = data["singularities"][0]
    passed = all(c1["checks"].values()) and all(c2["checks"].values())
    return {
        "version": CERTIFICATE_VERSION,
        "t": t,
        "curve": {
            "h": curve.h,
            "k": curve.k,
            "equation": curve.equation(),
            "degree": curve.degree,
            "singular_points": sing["count"],
            "local_type": {"n": sing["n"], "m": sing["m"], "s": sing["s"]},
            "branch_data": data,
        },
        "covers": [c1, c2],
        "same_curve": json.dumps(data, sort_keys=True) == json.dumps(second.curve.branch_data().to_json(), sort_keys=True),
        "non_equivalent_by_degree": first.degree != second.degree,
        "passed": passed and first.degree != second.degree,
    }


def certify(cert: dict) -> dict:
    """Re-derive every check of a pair certificate from its stored data.

    The stored permutations are rechecked directly; the recomputed
    certificate must agree with the stored one field by field.
    """
    failures: list[str] = []
    try:
        t = int(cert["t"])
        fresh = pair_certificate(t)
    except (KeyError, TypeError, ValueError) as exc:
        return {"passed": False, "failures": [f"malformed certificate: {exc}"]}
    for key in ("version", "curve", "same_curve", "non_equivalent_by_degree"):
        if cert.get(key) != fresh[key]:
            failures.append(f"{key} differs from recomputation")
    stored = cert.get("covers", [])
    if len(stored) != 2:
        failures.append("expected two covers")
    for i, (old, new) in enumerate(zip(stored, fresh["covers"])):
        try:
            taus = tuple(Permutation(tuple(x)) for x in old["taus"])
            cls = CoverClass.from_json(old["class"])
            pres = PresentationSpec.from_json(old["presentation"])
            a = MonodromyAssignment(cls.d, taus)
        except (KeyError, TypeError, ValueError) as exc:
            failures.append(f"cover {i}: malformed ({exc})")
            continue
        if not (verify_generic(a) and verify_gmn(a, pres) and verify_projective(a, pres)):
            failures.append(f"cover {i}: stored assignment fails the presentation")
        if canonical_form(taus) != canonical_form(MonodromyAssignment.from_cover_class(cls).taus):
            failures.append(f"cover {i}: assignment is not conjugate to its class polygon")
        shape = FamilyCurve(int(cert["curve"]["h"]), int(cert["curve"]["k"])).shape(old.get("side", ""))
        if not braid_relations_hold(shape, extend_assignment(shape, taus), projective=True):
            failures.append(f"cover {i}: braid relators fail")
        for key in ("degree", "class", "parameters", "checks", "ramification", "invariants"):
            if old.get(key) != new[key]:
                failures.append(f"cover {i}: {key} differs from recomputation")
    if not fresh["passed"]:
        failures.append("recomputed checks fail")
    return {"passed": not failures, "failures": failures}


# -- arithmetic coincidence behind the family ------------------------------------------


def unique_sum_product_pair(bound: int = 100) -> dict:
    """Unordered pairs ``{(h,k), (h',k')}`` of coprime couples with
    ``h + k = h'k'`` and ``hk = h' + k'``, for ``h < k <= bound``."""
    if bound < 2:
        raise ValueError("bound must be >= 2")
    solutions = set()
    equal_sum_product = []
    for h in range(1, bound + 1):
        for k in range(h + 1, bound + 1):
            if math.gcd(h, k) != 1:
                continue
            if h + k == h * k:
                equal_sum_product.append([h, k])
            s, p = h * k, h + k  # h' + k' = s, h'k' = p
            disc = s * s - 4 * p
            if disc < 0:
                continue
            r = math.isqrt(disc)
            if r * r != disc or (s - r) % 2:
                continue
            h2, k2 = (s - r) // 2, (s + r) // 2
            if h2 < 1 or h2 == k2 or math.gcd(h2, k2) != 1 or (h2, k2) == (h, k):
                continue
            solutions.add(tuple(sorted(((h, k), (h2, k2)))))
    return {
        "bound": bound,
        "solutions": [[list(a), list(b)] for a, b in sorted(solutions)],
        "equal_sum_product": equal_sum_product,
        "argument": (
            "If both couples have entries >= 2 then hk >= h + k with equality only at (2,2), "
            "so the two equations force equality and coprimality fails. Hence one couple is (1,c); "
            "then the other satisfies h'k' = h' + k' + 1, i.e. (h'-1)(k'-1) = 2, giving (2,3) and (1,5)."
        ),
    }


# -- explicit surfaces ------------------------------------------------------------


def explicit_equation(k: int, samples: int = 20, seed: int = 0) -> dict:
    """The degree-``k+1`` cover ``z^{k+1} - (k+1) z f_k(x) + k g_{k+1}(y) = 0``
    (affine chart ``w = 1``), branched over ``g_{k+1}(y)^k = f_k(x)^{k+1}``.

    Spot checks: on the branch curve the fibre polynomial and its
    derivative share the root ``z = g/f``; off it the ``k+1`` roots are
    distinct.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    rng = np.random.default_rng(seed)
    f_coeffs = np.poly(np.arange(1, k + 1))
    g_coeffs = np.poly(np.arange(1, k + 2))

    def fiber(x: complex, y: complex) -> np.ndarray:
        c = np.zeros(k + 2, dtype=complex)
        c[0] = 1
        c[k] = -(k + 1) * np.polyval(f_coeffs, x)
        c[k + 1] = k * np.polyval(g_coeffs, y)
        return c

    def rel(c: np.ndarray, z: complex) -> float:
        return abs(np.polyval(c, z)) / np.polyval(np.abs(c), abs(z))

    on_curve = 0.0
    for _ in range(samples):
        x = complex(rng.uniform(0, k + 1), rng.uniform(-1, 1))
        F = np.polyval(f_coeffs, x)
        # g(y) = F^{(k+1)/k} for some k-th root choice
        target = F * F ** (1 / k) * np.exp(2j * np.pi * rng.integers(k) / k)
        ys = aberth(g_coeffs - np.r_[np.zeros(k + 1), target])
        y = ys[rng.integers(len(ys))]
        c = fiber(x, y)
        z0 = np.polyval(g_coeffs, y) / F
        on_curve = max(on_curve, rel(c, z0), rel(np.polyder(c), z0))
    off_gap = math.inf
    for _ in range(samples):
        x = complex(rng.uniform(0, k + 1), rng.uniform(-1, 1))
        y = complex(rng.uniform(0, k + 2), rng.uniform(-1, 1))
        roots = aberth(fiber(x, y))
        gaps = np.abs(roots[:, None] - roots[None, :]) + np.diag(np.full(k + 1, np.inf))
        off_gap = min(off_gap, float(gaps.min() / (1 + np.abs(roots).max())))
    f_text = _linear_product("x", k)
    g_text = _linear_product("y", k + 1)
    return {
        "k": k,
        "degree": k + 1,
        "equation": f"z^{k + 1} - {k + 1} z {f_text} + {k} {g_text} = 0",
        "branch_curve": f"[{g_text}]^{k} = [{f_text}]^{k + 1}",
        "on_curve_max_residual": on_curve,
        "off_curve_min_relative_gap": off_gap,
        "passed": on_curve <= 1e-8 and off_gap > 1e-8,
    }
