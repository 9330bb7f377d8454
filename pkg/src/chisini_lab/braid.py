"""Braid monodromy of curves ``g(x) = f(y)`` with

    g = prod (x - alpha_i)^{n_i},   f = prod (y - beta_j)^{m_j}

and the relators it induces on the free group of a vertical fibre.

Generators of the free group are numbered 1..D (``D = sum m_j``) block by
block: ``mu_{j,k}`` is flat index ``m_1 + ... + m_{j-1} + k``.  Words are
tuples of signed flat indices.

Conventions (fixed so that a single block reproduces ``G_{m,n}``):

* ``sigma_i`` acts by ``x_i -> x_i x_{i+1} x_i^-1``, ``x_{i+1} -> x_i``;
* a braid word acts letter by letter from the left, i.e. the first letter is
  applied to the generator first;
* the block rotation ``sigma~_j`` is ``sigma_{M_j - 1} ... sigma_{M_{j-1} + 1}``
  with ``M_j = m_1 + ... + m_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .symgroup import Permutation, compose, product


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        letters = tuple(int(x) for x in self.letters)
        if any(x == 0 for x in letters):
            raise ValueError("generator index 0 is not allowed")
        object.__setattr__(self, "letters", free_reduce(letters))

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple(-x for x in reversed(self.letters)))

    def is_trivial(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def to_json(self) -> list[int]:
        return list(self.letters)


@dataclass(frozen=True)
class BraidWord:
    strand_count: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.strand_count:
                raise ValueError(f"sigma_{abs(x)} out of range for {self.strand_count} strands")
        object.__setattr__(self, "letters", letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strand_count != self.strand_count:
            raise ValueError("strand counts differ")
        return BraidWord(self.strand_count, self.letters + other.letters)

    def __pow__(self, e: int) -> BraidWord:
        base = self if e >= 0 else self.inverse()
        return BraidWord(self.strand_count, base.letters * abs(e))

    def inverse(self) -> BraidWord:
        return BraidWord(self.strand_count, tuple(-x for x in reversed(self.letters)))

    def to_json(self) -> list[int]:
        return list(self.letters)


@dataclass(frozen=True)
class CurveShape:
    """Exponents of ``g`` (x side) and ``f`` (y side)."""

    x_exponents: tuple[int, ...]
    y_exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        xs = tuple(int(v) for v in self.x_exponents)
        ys = tuple(int(v) for v in self.y_exponents)
        if not xs or not ys or min(xs + ys) < 1:
            raise ValueError("exponents must be positive and non-empty")
        object.__setattr__(self, "x_exponents", xs)
        object.__setattr__(self, "y_exponents", ys)

    @property
    def strand_count(self) -> int:
        return sum(self.y_exponents)

    @property
    def n(self) -> int:
        return reduce(math.gcd, self.x_exponents)

    @property
    def m(self) -> int:
        return reduce(math.gcd, self.y_exponents)

    @property
    def is_nodal_type(self) -> bool:
        """All exponents <= 2 on one side: the projective complement is abelian."""
        return max(self.x_exponents) <= 2 or max(self.y_exponents) <= 2

    def offset(self, j: int) -> int:
        """``m_1 + ... + m_{j-1}`` for 1-based block ``j``."""
        return sum(self.y_exponents[: j - 1])

    def flat(self, j: int, k: int) -> int:
        """Flat index of ``mu_{j,k}``; ``k`` is taken mod ``m_j``."""
        mj = self.y_exponents[j - 1]
        return self.offset(j) + (k - 1) % mj + 1

    def symbol(self, i: int) -> tuple[int, int]:
        """Inverse of :meth:`flat`."""
        for j, mj in enumerate(self.y_exponents, start=1):
            if i <= mj:
                return j, i
            i -= mj
        raise ValueError("flat index out of range")

    @classmethod
    def single(cls, n: int, m: int) -> CurveShape:
        """One singular point of type ``x^n = y^m``."""
        return cls((n,), (m,))

    @classmethod
    def family(cls, h: int, k: int) -> CurveShape:
        """``g_{h+k}(x)^{hk} = f_{hk}(y)^{h+k}``."""
        return cls((h * k,) * (h + k), (h + k,) * (h * k))


# -- actions ------------------------------------------------------------------


def _letter_image(s: int, g: int) -> tuple[int, ...]:
    i = abs(s)
    if s > 0:
        if g == i:
            return (i, i + 1, -i)
        if g == i + 1:
            return (i,)
    else:
        if g == i:
            return (i + 1,)
        if g == i + 1:
            return (-(i + 1), i, i + 1)
    return (g,)


def _apply_letter(s: int, word: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        img = _letter_image(s, abs(x))
        out.extend(img if x > 0 else (-y for y in reversed(img)))
    return free_reduce(out)


def artin_apply(b: BraidWord, w: GroupWord) -> GroupWord:
    top = max((abs(x) for x in w.letters), default=0)
    if top > b.strand_count:
        raise ValueError(f"generator x_{top} outside {b.strand_count} strands")
    letters = w.letters
    for s in b.letters:
        letters = _apply_letter(s, letters)
    return GroupWord(letters)


def hurwitz_apply(b: BraidWord, taus: Sequence[Permutation]) -> list[Permutation]:
    """Images ``phi(b(x_i))`` for the homomorphism ``phi: x_i -> taus[i-1]``.

    Equivalent to evaluating :func:`artin_apply` words under ``phi`` but
    linear in the braid length.
    """
    if len(taus) != b.strand_count:
        raise ValueError("need one permutation per strand")
    t = list(taus)
    for s in reversed(b.letters):
        i = abs(s) - 1
        a, c = t[i], t[i + 1]
        if s > 0:
            t[i], t[i + 1] = compose(compose(a, c), a.inverse()), a
        else:
            t[i], t[i + 1] = c, compose(compose(c.inverse(), a), c)
    return t


def evaluate_word(w: GroupWord, taus: Sequence[Permutation]) -> Permutation:
    d = taus[0].degree
    return product((taus[x - 1] if x > 0 else taus[-x - 1].inverse() for x in w.letters), d)


# -- braid monodromy of the generators ------------------------------------------


def block_rotation(j: int, shape: CurveShape) -> BraidWord:
    """``sigma~_j = sigma_{M_j - 1} ... sigma_{M_{j-1} + 1}``."""
    start = shape.offset(j)
    mj = shape.y_exponents[j - 1]
    return BraidWord(shape.strand_count, tuple(range(start + mj - 1, start, -1)))


def braid_of_rho(i: int, shape: CurveShape) -> BraidWord:
    """Braid monodromy around ``x = alpha_i``: ``sigma~_1^{n_i} ... sigma~_s^{n_i}``."""
    if not 1 <= i <= len(shape.x_exponents):
        raise ValueError(f"rho_{i} out of range")
    ni = shape.x_exponents[i - 1]
    letters: tuple[int, ...] = ()
    for j in range(1, len(shape.y_exponents) + 1):
        letters += block_rotation(j, shape).letters * ni
    return BraidWord(shape.strand_count, letters)


def delta_conjugator(j: int, shape: CurveShape) -> BraidWord:
    """``T = (sigma_{M_j+1} ... sigma_{M_j + [m_{j+1}/2]}) sigma~_j``."""
    Mj = shape.offset(j + 1)
    half = shape.y_exponents[j] // 2
    first = tuple(range(Mj + 1, Mj + half + 1))
    return BraidWord(shape.strand_count, first + block_rotation(j, shape).letters)


def braid_of_delta(j: int, shift: int, shape: CurveShape) -> BraidWord:
    """Half-twist joining block ``j`` to block ``j+1``, conjugated by
    ``(sigma~_j sigma~_{j+1})^shift``.

    ``shift = 0`` is ``T^-1 sigma_{M_j} T``; its relators are equivalent to
    ``gamma_{j,1} = gamma_{j+1,[m_{j+1}/2]+1}``, and ``shift = t`` moves both
    second indices up by ``t``.
    """
    s = len(shape.y_exponents)
    if not 1 <= j <= s - 1:
        raise ValueError(f"Delta_{j} needs 1 <= j <= {s - 1}")
    T = delta_conjugator(j, shape)
    core = T.inverse() * BraidWord(shape.strand_count, (shape.offset(j + 1),)) * T
    R = block_rotation(j, shape) * block_rotation(j + 1, shape)
    return (R ** shift).inverse() * core * (R ** shift)


def delta_shift_count(j: int, shape: CurveShape) -> int:
    return math.lcm(shape.y_exponents[j - 1], shape.y_exponents[j])


def curve_braids(shape: CurveShape) -> list[BraidWord]:
    """One braid per distinct generator of the base: the rho_i (deduplicated
    by exponent) and every shifted Delta."""
    braids = [braid_of_rho(i, shape) for i in _distinct_rho(shape)]
    for j in range(1, len(shape.y_exponents)):
        braids.extend(braid_of_delta(j, t, shape) for t in range(delta_shift_count(j, shape)))
    return braids


def _distinct_rho(shape: CurveShape) -> list[int]:
    seen: dict[int, int] = {}
    for i, ni in enumerate(shape.x_exponents, start=1):
        seen.setdefault(ni, i)
    return sorted(seen.values())


def boundary_word(shape: CurveShape) -> GroupWord:
    """Loop around the line at infinity: ``mu_{1,1} ... mu_{s,m_s}``."""
    return GroupWord(tuple(range(1, shape.strand_count + 1)))


def relators_from_curve(shape: CurveShape, projective: bool = False) -> list[GroupWord]:
    """Relators ``x^-1 beta(x)`` over every curve braid and generator, plus the
    boundary loop when ``projective``."""
    if projective:
        if sum(shape.x_exponents) != shape.strand_count:
            raise ValueError("projective closure needs deg g = deg f")
        if shape.strand_count % shape.m:
            raise ValueError("m does not divide the curve degree")
    rels = []
    for b in curve_braids(shape):
        for g in range(1, shape.strand_count + 1):
            w = GroupWord((-g,) + artin_apply(b, GroupWord((g,))).letters)
            if not w.is_trivial():
                rels.append(w)
    if projective:
        rels.append(boundary_word(shape))
    return rels


def gamma_word(j: int, k: int, shape: CurveShape) -> GroupWord:
    """``gamma_{j,k} = (mu_{j,1} ... mu_{j,k-1}) mu_{j,k}^-1 (mu_{j,1} ... mu_{j,k-1})^-1``
    for any ``k >= 1``; block indices in the prefix run cyclically, so
    ``gamma_{j,k+m_j}`` is ``gamma_{j,k}`` conjugated by the whole block."""
    if k < 1:
        raise ValueError("k must be >= 1")
    prefix = tuple(shape.flat(j, i) for i in range(1, k))
    return GroupWord(prefix + (-shape.flat(j, k),) + tuple(-x for x in reversed(prefix)))


# -- permutation-level checks ------------------------------------------------------


def satisfies_relators(relators: Iterable[GroupWord], taus: Sequence[Permutation]) -> bool:
    return all(evaluate_word(r, taus).is_identity() for r in relators)


def _swap(pair: tuple[int, int], x: int) -> int:
    a, b = pair
    return b if x == a else a if x == b else x


def _hurwitz_pairs(b: BraidWord, pairs: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """:func:`hurwitz_apply` specialised to transpositions, stored as sorted
    pairs; conjugates of transpositions stay transpositions."""
    t = list(pairs)
    for s in reversed(b.letters):
        i = abs(s) - 1
        a, c = t[i], t[i + 1]
        if s > 0:
            t[i], t[i + 1] = tuple(sorted((_swap(a, c[0]), _swap(a, c[1])))), a
        else:
            t[i], t[i + 1] = c, tuple(sorted((_swap(c, a[0]), _swap(c, a[1]))))
    return t


def braid_relations_hold(shape: CurveShape, taus: Sequence[Permutation], projective: bool = False) -> bool:
    """Whether ``mu_i -> taus[i-1]`` kills every braid-derived relator.

    Uses the Hurwitz action: the relators of ``beta`` hold iff ``beta`` fixes
    the tuple.  Shifted Deltas are handled incrementally since
    ``R^-t Delta R^t`` fixes ``phi`` iff ``Delta`` fixes ``phi o R^t``.
    """
    taus = list(taus)
    if len(taus) != shape.strand_count:
        raise ValueError("need one permutation per strand")
    supports = [t.support() for t in taus]
    if all(len(sp) == 2 for sp in supports):
        state0: list = supports
        act = _hurwitz_pairs
    else:
        state0, act = taus, hurwitz_apply
    for i in _distinct_rho(shape):
        if act(braid_of_rho(i, shape), state0) != state0:
            return False
    for j in range(1, len(shape.y_exponents)):
        core = braid_of_delta(j, 0, shape)
        R = block_rotation(j, shape) * block_rotation(j + 1, shape)
        state = state0
        for _ in range(delta_shift_count(j, shape)):
            if act(core, state) != state:
                return False
            state = act(R, state)
    if projective:
        if not product(taus, taus[0].degree).is_identity():
            return False
    return True


def _from_gammas(gammas: Sequence[Permutation]) -> list[Permutation]:
    """Invert ``gamma_k = P mu_k^-1 P^-1`` with ``P = mu_1 ... mu_{k-1}``."""
    d = gammas[0].degree
    mus: list[Permutation] = []
    P = Permutation.identity(d)
    for g in gammas:
        mu = compose(compose(P.inverse(), g.inverse()), P)
        mus.append(mu)
        P = compose(P, mu)
    return mus


def _to_gammas(mus: Sequence[Permutation]) -> list[Permutation]:
    d = mus[0].degree
    out = []
    P = Permutation.identity(d)
    for mu in mus:
        out.append(compose(compose(P, mu.inverse()), P.inverse()))
        P = compose(P, mu)
    return out


def _gamma_at(gammas: Sequence[Permutation], block: Permutation, k: int) -> Permutation:
    """``gamma_k`` for any integer ``k``, given ``gamma_1..gamma_m`` and the
    block product ``C``: ``gamma_{k+m} = C gamma_k C^-1``."""
    q, r = divmod(k - 1, len(gammas))
    return gammas[r].conjugate_by(block ** (-q))


def extend_assignment(shape: CurveShape, taus: Sequence[Permutation]) -> list[Permutation]:
    """Lift ``mu_k -> taus[k-1]`` (k = 1..m, m = gcd of the block sizes) to all
    ``D`` fibre generators using ``mu_{1,k} = mu_{1,k+m}`` and the
    cancellation relations ``gamma_{j+1,l} = gamma_{j,l-[m_{j+1}/2]}``."""
    m = len(taus)
    ms = shape.y_exponents
    if m != shape.m:
        raise ValueError(f"expected {shape.m} permutations, got {m}")
    d = taus[0].degree
    mus = [taus[k % m] for k in range(ms[0])]
    out = list(mus)
    for j in range(1, len(ms)):
        gam = _to_gammas(mus)
        block = product(mus, d)
        half = ms[j] // 2
        mus = _from_gammas([_gamma_at(gam, block, l - half) for l in range(1, ms[j] + 1)])
        out.extend(mus)
    return out
