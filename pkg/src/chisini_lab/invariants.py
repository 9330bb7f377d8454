"""Exact invariants of a branch curve, of the smooth covers branched over it,
and the uniqueness bounds they imply.

A curve is described symbolically: even degree ``2d`` and singular points of
local type ``x^{sn} = y^{sm}`` with ``gcd(n, m) = 1``, normalised so that
``n <= m``.  All arithmetic is in integers and :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction


class InconsistentData(ValueError):
    """The curve data cannot come from a branch curve of a smooth generic cover."""


@dataclass(frozen=True)
class Singularity:
    n: int
    m: int
    s: int = 1
    count: int = 1

    def __post_init__(self) -> None:
        if min(self.n, self.m, self.s, self.count) < 1:
            raise ValueError("n, m, s, count must be positive")
        if math.gcd(self.n, self.m) != 1:
            raise ValueError(f"gcd({self.n}, {self.m}) != 1")
        if self.n > self.m:
            n, m = self.m, self.n
            object.__setattr__(self, "n", n)
            object.__setattr__(self, "m", m)

    @property
    def exponents(self) -> tuple[int, int]:
        return self.s * self.n, self.s * self.m

    def delta(self) -> int:
        a, b = self.exponents
        num = a * b - a - b + self.s
        if num % 2:
            raise InconsistentData(f"non-integral delta invariant for {self}")
        return num // 2

    def milnor(self) -> int:
        a, b = self.exponents
        return (a - 1) * (b - 1)

    def multiplicity(self) -> int:
        return min(self.exponents)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "s": self.s, "count": self.count}


def genus_from_singularities(degree: int, sings: list[Singularity]) -> int:
    g = (degree - 1) * (degree - 2) // 2 - sum(p.count * p.delta() for p in sings)
    if g < 0:
        raise InconsistentData(f"negative genus {g}")
    return g


@dataclass(frozen=True)
class BranchCurveData:
    degree: int
    singularities: tuple[Singularity, ...] = ()
    genus: int | None = None
    _genus: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self) -> None:
        if self.degree < 2 or self.degree % 2:
            raise InconsistentData("branch curve degree must be even and positive")
        sings = tuple(self.singularities)
        object.__setattr__(self, "singularities", sings)
        computed = genus_from_singularities(self.degree, list(sings))
        if self.genus is not None and self.genus != computed:
            warnings.warn(f"supplied genus {self.genus} differs from computed {computed}; using supplied", stacklevel=2)
        object.__setattr__(self, "_genus", computed if self.genus is None else self.genus)
        if self.sigma > 2 * self.g - 2 + 4 * self.d:
            raise InconsistentData("cusp-type count exceeds 2g - 2 + 4d")

    @property
    def d(self) -> int:
        return self.degree // 2

    @property
    def g(self) -> int:
        return self._genus

    @property
    def sigma(self) -> int:
        """``sum s_i (n_i - 1)`` over all singular points."""
        return sum(p.count * p.s * (p.n - 1) for p in self.singularities)

    @property
    def ramification_square(self) -> int:
        return 3 * self.d + self.g - 1

    def to_json(self) -> dict:
        return {"degree": self.degree, "singularities": [p.to_json() for p in self.singularities]}

    @classmethod
    def from_json(cls, data: dict) -> BranchCurveData:
        sings = tuple(
            Singularity(int(s["n"]), int(s["m"]), int(s.get("s", 1)), int(s.get("count", 1)))
            for s in data.get("singularities", [])
        )
        return cls(int(data["degree"]), sings, data.get("genus"))


def dual_degree(data: BranchCurveData) -> int:
    delta = 4 * data.d + 2 * data.g - 2 - data.sigma
    if delta < 0:
        raise InconsistentData(f"negative dual degree {delta}")
    return delta


def class_formula_dual_degree(data: BranchCurveData) -> int:
    """Class of the curve from Milnor numbers and multiplicities:
    ``D(D-1) - sum (mu_p + mult_p - 1)``."""
    D = data.degree
    return D * (D - 1) - sum(p.count * (p.milnor() + p.multiplicity() - 1) for p in data.singularities)


def r_squared(data: BranchCurveData) -> int:
    if data.ramification_square <= 0:
        raise InconsistentData("3d + g - 1 must be positive")
    return data.ramification_square


def hodge_bound(data: BranchCurveData) -> Fraction:
    """Upper bound ``4d^2 / R^2`` on the degree of any smooth cover."""
    return Fraction(4 * data.d**2, r_squared(data))


@dataclass(frozen=True)
class SurfaceInvariants:
    N: int
    K2: int
    e: int
    chi: int

    def noether_holds(self) -> bool:
        return 12 * self.chi == self.K2 + self.e

    def to_json(self) -> dict:
        return {"N": self.N, "K2": self.K2, "e": self.e, "chi": self.chi}


def min_cover_degree(data: BranchCurveData) -> int:
    return max((p.s * (p.n + 1) for p in data.singularities), default=2)


def surface_invariants(data: BranchCurveData, N: int, check_degree: bool = True) -> SurfaceInvariants:
    """``K^2``, ``e`` and ``chi`` of a smooth degree-``N`` cover branched over the curve.

    ``check_degree`` enforces ``N >= max s(n+1)``; the formulas themselves
    do not need it.
    """
    if N < 2:
        raise ValueError("cover degree must be at least 2")
    if check_degree and N < min_cover_degree(data):
        raise InconsistentData(f"no cover of degree {N}: need N >= {min_cover_degree(data)}")
    d, g, sig = data.d, data.g, data.sigma
    K2 = 9 * N - 9 * d + g - 1
    e = 3 * N + 2 * g - 2 - sig
    num = 3 * g - 3 - 9 * d - sig
    if num % 12:
        raise InconsistentData(f"chi not integral: (3g - 3 - 9d - sigma) = {num} not divisible by 12")
    return SurfaceInvariants(N, K2, e, N + num // 12)


def line_preimage_genus(data: BranchCurveData, N: int) -> int:
    """Genus of the preimage of a general line, from adjunction with
    ``K = -3E + R``: ``(K + E, E)/2 + 1``."""
    KE = -3 * N + 2 * data.d
    return (KE + N) // 2 + 1


def hurwitz_slice_holds(data: BranchCurveData, N: int) -> bool:
    """Riemann-Hurwitz for the restriction to a line: ``2 - 2g(E) = 2N - 2d``."""
    return 2 - 2 * line_preimage_genus(data, N) == 2 * N - data.degree


def chisini_bound(data: BranchCurveData) -> Fraction:
    A = r_squared(data)
    denom = 2 * A - data.sigma
    if denom <= 0:
        raise InconsistentData("2(3d + g - 1) - sigma must be positive")
    return Fraction(4 * A, denom)


DEGREE_THRESHOLD = 12


def bmy_report(data: BranchCurveData, N: int | None = None, check_degree: bool = True) -> dict:
    """Both Miyaoka-Yau style estimates and the uniqueness verdicts."""
    A = r_squared(data)
    d, g = data.d, data.g
    uniform = 4 + Fraction(8 * (g - 1), 9 * d + g - 1)
    report = {
        "chisini_bound": chisini_bound(data),
        "sigma_bmy_limit": 3 * d + Fraction(5 * (g - 1), 3),
        "sigma_within_bmy_limit": data.sigma <= 3 * d + Fraction(5 * (g - 1), 3),
        "uniform_estimate": uniform,
        "uniform_below_threshold": uniform < DEGREE_THRESHOLD,
        "ruled_uniform_estimate": Fraction(8),
        "degree_threshold": DEGREE_THRESHOLD,
        "threshold_note": "degree criterion applied as N >= 12; the strict form N > 12 is also in circulation",
    }
    if N is not None:
        inv = surface_invariants(data, N, check_degree)
        bound = report["chisini_bound"]
        report.update(
            {
                "N": N,
                "K2_le_3e": inv.K2 <= 3 * inv.e,
                "K2_le_2e": inv.K2 <= 2 * inv.e,
                "ruled_estimate": Fraction(8 * A, A + 3 * N),
                "unique_by_bound": N > bound,
                "unique_by_degree": N >= DEGREE_THRESHOLD,
            }
        )
    return report


def fiber_product_numbers(data: BranchCurveData, N1: int, N2: int) -> dict:
    """Intersection numbers on the normalised fibre product of two covers of
    degrees ``N1``, ``N2`` with the same branch curve."""
    if N1 < 2 or N2 < 2:
        raise ValueError("cover degrees must be at least 2")
    A, sig, d = r_squared(data), data.sigma, data.d
    R2 = 2 * A - sig
    C1 = (N2 - 2) * A - sig
    C2 = (N1 - 2) * A - sig
    table = {
        "R_dot_C1": sig,
        "R_dot_C2": sig,
        "R2": R2,
        "C1_2": C1,
        "C2_2": C2,
        "E2": N1 * N2,
        "E_dot_R": 4 * d,
        "E_dot_C1": 2 * d * (N1 - 2),
        "E_dot_C2": 2 * d * (N2 - 2),
        "hodge_det_C1": R2 * C1 - sig * sig,
        "hodge_det_C2": R2 * C2 - sig * sig,
        "singularities": [
            {"type": f"A{p.m - 1}" if p.m > 1 else "A0", "count": p.count} for p in data.singularities
        ],
    }
    assert table["hodge_det_C1"] == 2 * (N2 - 2) * A * A - N2 * A * sig
    assert table["hodge_det_C2"] == 2 * (N1 - 2) * A * A - N1 * A * sig
    return table


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    return value


def invariant_report(data: BranchCurveData, N: int | None = None, check_degree: bool = True) -> dict:
    out = {
        "d": data.d,
        "g": data.g,
        "sigma": data.sigma,
        "sigma_divisible_by_3": data.sigma % 3 == 0,
        "dual_degree": dual_degree(data),
        "class_formula_dual_degree": class_formula_dual_degree(data),
        "R2": r_squared(data),
        "hodge_bound": hodge_bound(data),
        "chisini_bound": chisini_bound(data),
    }
    if N is not None:
        inv = surface_invariants(data, N, check_degree)
        out["surface"] = inv.to_json()
        out["noether"] = inv.noether_holds()
        out["hurwitz_slice"] = hurwitz_slice_holds(data, N)
    return _jsonable(out)
