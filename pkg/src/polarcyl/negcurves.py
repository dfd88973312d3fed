"""Negative curve classes, ampleness and the (-1)-curve generality condition."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .picard import DivisorClass, SurfaceSpec, canonical_class, proper_transform


def _check_range(n: int):
    if not 1 <= n <= 8:
        raise ValueError(f"negative-class enumeration needs 1 <= n <= 8, got {n}")


def _degree_bound(n: int, target_sum_shift: int, extra_square: int) -> int:
    # Cauchy-Schwarz on sum(m) = 3d - s, sum(m^2) = d^2 + t:
    # (3d - s)^2 <= n (d^2 + t)
    d = 0
    last_ok = 0
    while d < 100:
        if (3 * d - target_sum_shift) ** 2 <= n * (d * d + extra_square):
            last_ok = d
        elif d > 3:
            break
        d += 1
    return last_ok


def _sorted_multiplicities(n: int, total: int, squares: int, cap: int):
    """Non-increasing tuples of ``n`` nonnegative ints with given sum and
    sum of squares, entries at most ``cap``."""

    def rec(k, total, squares, cap):
        if k == 0:
            if total == 0 and squares == 0:
                yield ()
            return
        # the largest remaining entry is at least ceil(total / k)
        lo = -(-total // k) if total > 0 else 0
        for m in range(min(cap, total, math.isqrt(squares)), lo - 1, -1):
            rest_t, rest_s = total - m, squares - m * m
            # remaining k-1 entries: sum^2 <= (k-1) * sum of squares
            if k == 1:
                if rest_t or rest_s:
                    continue
            elif rest_t * rest_t > (k - 1) * rest_s:
                continue
            for tail in rec(k - 1, rest_t, rest_s, m):
                yield (m,) + tail

    yield from rec(n, total, squares, cap)


def _distinct_permutations(seq):
    return set(permutations(seq))


@lru_cache(maxsize=None)
def _minus_one(n: int) -> tuple[DivisorClass, ...]:
    out = [DivisorClass.exceptional(i, n) for i in range(1, n + 1)]
    for d in range(1, _degree_bound(n, 1, 1) + 1):
        for ms in _sorted_multiplicities(n, 3 * d - 1, d * d + 1, d):
            for perm in _distinct_permutations(ms):
                out.append(DivisorClass.plane_curve(d, perm))
    return tuple(sorted(out, key=lambda c: c.coeffs))


@lru_cache(maxsize=None)
def _minus_two(n: int) -> tuple[DivisorClass, ...]:
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append(DivisorClass.exceptional(i, n) - DivisorClass.exceptional(j, n))
    for d in range(1, _degree_bound(n, 0, 2) + 1):
        for ms in _sorted_multiplicities(n, 3 * d, d * d + 2, d):
            for perm in _distinct_permutations(ms):
                out.append(DivisorClass.plane_curve(d, perm))
    return tuple(sorted(out, key=lambda c: c.coeffs))


def minus_one_classes(n: int) -> list[DivisorClass]:
    """All classes with ``c^2 = c.K = -1`` on a blow-up of ``n <= 8`` points."""
    _check_range(n)
    return list(_minus_one(n))


def minus_two_classes(n: int) -> list[DivisorClass]:
    """Sign representatives of the roots ``c^2 = -2, c.K = 0``.

    The representative has ``d >= 0`` and, when ``d == 0``, a positive first
    nonzero coefficient.  For ``d > 0`` every root on ``n <= 8`` points has
    nonnegative multiplicities, which the enumeration relies on.
    """
    _check_range(n)
    return list(_minus_two(n))


@dataclass(frozen=True)
class NegClassSet:
    n: int
    minus_one: tuple[DivisorClass, ...]
    minus_two: tuple[DivisorClass, ...]


def negative_classes(n: int) -> NegClassSet:
    _check_range(n)
    return NegClassSet(n, _minus_one(n), _minus_two(n))


def mori_generators(spec: SurfaceSpec) -> list[DivisorClass]:
    """Generators of the Mori cone of a general-position blow-up, n <= 8.

    For ``n >= 2`` these are the (-1)-classes.  The plane has the single ray
    ``H``; one point needs the fibre class ``H - E1`` alongside ``E1``.
    """
    if not spec.is_general:
        raise ValueError("Mori generators are only known for general-position surfaces")
    n = spec.n
    if n == 0:
        return [DivisorClass.line(0)]
    if n == 1:
        return [DivisorClass.exceptional(1, 1), DivisorClass.of(1, -1)]
    if n > 8:
        raise ValueError("the Mori cone is not finitely generated for n = 9")
    return list(_minus_one(n))


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AmpleReport:
    ample: bool
    partial: bool
    witness: DivisorClass | None = None
    witness_value: Fraction | None = None
    detail: str = ""

    def __bool__(self):
        return self.ample


def _tracked_curves(spec: SurfaceSpec) -> list[tuple[str, DivisorClass]]:
    tower = spec.tower
    cmap = spec.contraction()
    skip = set(tower.contracted)
    out = []
    for name in tower.curve_names():
        if name in skip:
            continue
        cls = proper_transform(spec, name)
        if cmap is not None:
            cls = cmap.project(cls)
        out.append((name, cls))
    return out


def is_ample(spec: SurfaceSpec, A: DivisorClass) -> AmpleReport:
    """Nakai-Moishezon against the known curve classes.

    Exact on general-position surfaces with ``n <= 8``.  On nine points only
    ``A^2``, the ``E_i`` and the anticanonical pencil are tested; on a tower
    only the declared curves are, and the result is flagged partial.
    """
    if len(A.coeffs) != spec.n + 1:
        raise ValueError("divisor rank does not match the surface")
    sq = A.square()
    if sq <= 0:
        return AmpleReport(False, not spec.is_general or spec.n == 9, None, sq, "A^2 <= 0")
    if spec.is_general and spec.n <= 8:
        curves = [(str(g), g) for g in mori_generators(spec)]
        partial = False
    elif spec.is_general:
        n = spec.n
        curves = [(f"E{i}", DivisorClass.exceptional(i, n)) for i in range(1, n + 1)]
        curves.append(("-K", -canonical_class(n)))
        partial = True
    else:
        curves = _tracked_curves(spec)
        partial = True
    for name, c in curves:
        v = A.dot(c)
        if v <= 0:
            return AmpleReport(False, partial, c, v, f"A.{name} = {v}")
    return AmpleReport(True, partial, None, None, "partial check" if partial else "")


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class StarReport:
    status: str  # "holds" | "conditional" | "violated" | "inconclusive"
    reason: str
    violations: tuple[tuple[str, DivisorClass, Fraction], ...] = field(default=())

    @property
    def usable(self) -> bool:
        return self.status in ("holds", "conditional")


def star_check(spec: SurfaceSpec) -> StarReport:
    """Does every smooth rational curve have self-intersection at least -1?"""
    if spec.is_general:
        if spec.n <= 8:
            return StarReport("holds", "general-position blow-up of at most 8 points")
        return StarReport(
            "conditional",
            "nine points: holds when every member of |-K| is irreducible",
        )
    K = spec.canonical
    bad = []
    for name, cls in _tracked_curves(spec):
        sq = cls.square()
        # declared curves are irreducible; genus 0 by adjunction means smooth rational
        if sq <= -2 and sq + cls.dot(K) == -2:
            bad.append((name, cls, sq))
    if bad:
        names = ", ".join(f"{n}^2 = {s}" for n, _, s in bad)
        return StarReport("violated", f"smooth rational curves with {names}", tuple(bad))
    return StarReport("inconclusive", "no declared curve violates the condition")
