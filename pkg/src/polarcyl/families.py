"""Explicit polarized surfaces with known cylinder behaviour.

* :func:`build_auxiliary` -- the conic-and-tangent-line cylinder on a blow-up
  of ``5 + k`` points, polarized by ``-K + x(G_1 + ... + G_k)``.
* :func:`nine_points` -- the same polarization shape on nine points, with the
  threshold certificate that pins ``mu = 1``.
* :func:`build_dp2` -- a ten-point tower and its contraction to a degree-two
  surface with (-2)-curves, where a cylinder exists although ``r + K^2 = 3``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .certify import Component, CylinderCertificate
from .cone import PeThresholdCertificate
from .negcurves import is_ample, star_check
from .picard import (
    CenterSpec,
    ContractionMap,
    DivisorClass,
    SurfaceSpec,
    TowerBuilder,
    as_rational,
    canonical_class,
    general_position,
    proper_transform,
)


class ParameterError(ValueError):
    pass


# --------------------------------------------------------------------------
# conic + tangent line


@dataclass(frozen=True)
class AuxiliaryParams:
    k: int
    eps1: Fraction
    eps2: Fraction
    x: Fraction
    # exceptional indices playing G_1..G_k; None means the last k
    g_indices: tuple[int, ...] | None = None

    def __post_init__(self):
        for name in ("eps1", "eps2", "x"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.g_indices is not None:
            object.__setattr__(self, "g_indices", tuple(self.g_indices))

    def violations(self) -> list[str]:
        k, e1, e2, x = self.k, self.eps1, self.eps2, self.x
        out = []
        if not 1 <= k <= 4:
            out.append(f"k = {k} outside 1..4 (the surface must have at most nine points)")
            return out
        if not Fraction(1, 2) > e1:
            out.append("1/2 > eps1 fails")
        if not e1 > e2 / 2:
            out.append("eps1 > eps2/2 fails")
        if not e2 / 2 > 0:
            out.append("eps2/2 > 0 fails")
        if not 1 > x:
            out.append("1 > x fails")
        if not x > 1 - (1 - 2 * e1) / (2 * k):
            out.append(f"x > 1 - (1 - 2*eps1)/(2k) = {1 - (1 - 2 * e1) / (2 * k)} fails")
        return out


@dataclass(frozen=True)
class AuxiliaryConstruction:
    spec: SurfaceSpec
    A: DivisorClass
    certificate: CylinderCertificate
    params: AuxiliaryParams

    @property
    def residual(self) -> DivisorClass:
        return self.certificate.divisor() - self.A


def build_auxiliary(params: AuxiliaryParams) -> AuxiliaryConstruction:
    """Surface, polarization and certificate for the conic construction.

    The five exceptional curves not listed in ``params.g_indices`` lie over
    the points of the conic.
    """
    bad = params.violations()
    if bad:
        raise ParameterError("; ".join(bad))
    k, e1, e2, x = params.k, params.eps1, params.eps2, params.x
    n = 5 + k
    g_indices = params.g_indices
    if g_indices is None:
        g_indices = list(range(6, n + 1))
    g_indices = list(g_indices)
    if len(g_indices) != k or len(set(g_indices)) != k or not all(1 <= i <= n for i in g_indices):
        raise ParameterError(f"need {k} distinct indices in 1..{n} for the G curves")
    conic_pts = [i for i in range(1, n + 1) if i not in g_indices]

    H = DivisorClass.line(n)
    E = {i: DivisorClass.exceptional(i, n) for i in range(1, n + 1)}
    conic = H * 2
    for i in conic_pts:
        conic = conic - E[i]
    spec = general_position(n)
    A = -canonical_class(n)
    for i in g_indices:
        A = A + x * E[i]

    pencil = (1 - 2 * e1) / (2 * k)
    comps = [
        Component(conic, "conic", 1 + e1 - e2 / 2),
        Component(H, "tangent line", e2),
    ]
    comps += [Component(E[i], f"E{i}", e1 - e2 / 2) for i in conic_pts]
    comps += [
        Component(H * 2 - E[g], f"pencil conic through E{g}", pencil) for g in g_indices
    ]
    comps += [Component(E[g], f"E{g}", x + pencil - 1) for g in g_indices]
    cert = CylinderCertificate(
        tuple(comps),
        A,
        "conic through five points, a tangent line, the pencil conics through the "
        "remaining points and all exceptional curves",
    )
    return AuxiliaryConstruction(spec, A, cert, params)


def match_auxiliary(spec: SurfaceSpec, A: DivisorClass) -> AuxiliaryParams | None:
    """Recognise ``A = -K + x * sum_{i in T} E_i`` with ``|T| = n - 5``.

    Returns admissible parameters with ``eps1 = eps2 = (1 - 2k(1-x))/4``
    and ``g_indices = T``, or ``None``.
    """
    if not spec.is_general or not 6 <= spec.n <= 9:
        return None
    n = spec.n
    k = n - 5
    offset = A + canonical_class(n)
    if offset.degree != 0:
        return None
    support = [i for i in range(1, n + 1) if offset.coeffs[i] != 0]
    if len(support) != k:
        return None
    values = {offset.coeffs[i] for i in support}
    if len(values) != 1:
        return None
    x = values.pop()
    if not (1 - Fraction(1, 2 * k) < x < 1):
        return None
    eps = (1 - 2 * k * (1 - x)) / 4
    params = AuxiliaryParams(k, eps, eps, x, tuple(support))
    if params.violations():
        return None
    return params


# --------------------------------------------------------------------------
# nine points


def nine_points(x, indices: Sequence[int] = (1, 2, 3, 4)) -> tuple[SurfaceSpec, DivisorClass, PeThresholdCertificate]:
    """Nine-point blow-up, ``A = -K + x(E_a + E_b + E_c + E_d)`` and the
    threshold certificate with decomposition ``x * sum E`` and witness ``H``."""
    x = as_rational(x)
    if not 0 < x < 1:
        raise ParameterError("the nine-points polarization needs 0 < x < 1")
    indices = list(indices)
    if len(indices) != 4 or len(set(indices)) != 4:
        raise ParameterError("need four distinct exceptional indices")
    spec = general_position(9)
    Es = [DivisorClass.exceptional(i, 9) for i in indices]
    A = -canonical_class(9)
    for e in Es:
        A = A + x * e
    cert = PeThresholdCertificate(1, tuple((e, x) for e in Es), {"H": 1})
    return spec, A, cert


def match_nine_points(spec: SurfaceSpec, A: DivisorClass) -> tuple[Fraction, list[int]] | None:
    """``(x, indices)`` when ``A = -K + x(E_a + ... + E_d)`` on nine points."""
    if not spec.is_general or spec.n != 9:
        return None
    offset = A + canonical_class(9)
    if offset.degree != 0:
        return None
    support = [i for i in range(1, 10) if offset.coeffs[i] != 0]
    values = {offset.coeffs[i] for i in support}
    if len(support) != 4 or len(values) != 1:
        return None
    x = values.pop()
    if not 0 < x < 1:
        return None
    return x, support


# --------------------------------------------------------------------------
# degree two with (-2)-curves


@dataclass(frozen=True)
class Dp2Params:
    eps: Fraction
    x: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", as_rational(self.eps))
        object.__setattr__(self, "x", as_rational(self.x))

    def violations(self) -> list[str]:
        e, x = self.eps, self.x
        out = []
        if not 0 < e < Fraction(1, 3):
            out.append("0 < eps < 1/3 fails")
        if not x > 0:
            out.append("x > 0 fails")
        if not e > x:
            out.append("eps > x fails")
        if not x > 3 * e - 1:
            out.append("x > 3*eps - 1 fails")
        return out


@dataclass(frozen=True)
class Dp2Check:
    name: str
    passed: bool
    required: bool
    detail: str
    residual: DivisorClass | None = None


@dataclass(frozen=True)
class Dp2Report:
    params: Dp2Params
    tower: SurfaceSpec  # the ten blow-ups, nothing contracted
    surface: SurfaceSpec  # after contracting L1, G, H
    contraction: ContractionMap
    A: DivisorClass  # pullback of -K_S + x*pi(L12) to the tower top
    certificate: CylinderCertificate
    checks: tuple[Dp2Check, ...]

    @property
    def ok(self) -> bool:
        """All checks the construction relies on hold."""
        return all(c.passed for c in self.checks if c.required)

    def check(self, name: str) -> Dp2Check:
        return next(c for c in self.checks if c.name == name)


DP2_CONTRACTED = ("L1", "G", "H")


def dp2_tower(contracted: Sequence[str] = ()) -> SurfaceSpec:
    """Lines ``L1, L2``, the line ``L12`` through ``P1, P2``; ``P1`` on ``L1``,
    ``P2..P7`` on ``L2``; then ``G`` over ``F1 & L1``, ``H`` over ``F1 & G``
    and ``E`` over a general point of ``H``."""
    b = TowerBuilder()
    for name in ("L1", "L2", "L12"):
        b.curve(name, 1)
    b.blow_up(CenterSpec.on_curves("F1", "L1", "L12"))
    b.blow_up(CenterSpec.on_curves("F2", "L2", "L12"))
    for i in range(3, 8):
        b.blow_up(CenterSpec.on_curves(f"F{i}", "L2"))
    b.blow_up(CenterSpec.intersection_of("G", "F1", "L1"))
    b.blow_up(CenterSpec.intersection_of("H", "F1", "G"))
    b.blow_up(CenterSpec.on_curves("E", "H"))
    return b.build(contracted)


class IdentityFailure(ValueError):
    def __init__(self, name: str, residual: DivisorClass):
        self.name = name
        self.residual = residual
        super().__init__(f"identity {name} fails with residual {residual}")


def _combo(spec: SurfaceSpec, terms) -> DivisorClass:
    out = DivisorClass.zero(spec.n)
    for name, coeff in terms:
        out = out + coeff * proper_transform(spec, name)
    return out


def build_dp2(params: Dp2Params) -> Dp2Report:
    """Replay the degree-two construction and check its class identities.

    Raises :class:`IdentityFailure` when an identity the construction
    depends on fails.  The report also records the twisted identity exactly
    as printed in the source, whose ``L1`` weight is ``2 - eps`` rather than
    the ``2 + x - eps`` the arithmetic requires, and the self-intersections
    of the pushed-forward curves.
    """
    bad = params.violations()
    if bad:
        raise ParameterError("; ".join(bad))
    e, x = params.eps, params.x
    tower = dp2_tower()
    surface = dp2_tower(DP2_CONTRACTED)
    cmap = surface.contraction()
    n = tower.n
    K = canonical_class(n)
    checks: list[Dp2Check] = []

    def identity(name, lhs, terms, required, note=""):
        res = _combo(tower, terms) - lhs
        ok = res.is_zero()
        checks.append(Dp2Check(name, ok, required, note or ("exact" if ok else f"residual {res}"), res))
        if required and not ok:
            raise IdentityFailure(name, res)

    F_rest = [(f"F{i}", e) for i in range(3, 8)]
    identity(
        "anticanonical",
        -K,
        [("L1", 2 - e), ("L2", 1 + e), ("F1", 1 - e), ("F2", e)] + F_rest
        + [("G", 2 - 2 * e), ("H", 2 - 3 * e), ("E", 1 - 3 * e)],
        True,
    )
    L12 = proper_transform(tower, "L12")
    twisted_tail = [("L2", 1 + e), ("F1", 1 - e), ("F2", e - x)] + F_rest + [
        ("G", 2 + x - 2 * e), ("H", 2 + x - 3 * e), ("E", 1 + x - 3 * e)
    ]
    identity("twisted", -K + x * L12, [("L1", 2 + x - e)] + twisted_tail, True)
    res = _combo(tower, [("L1", 2 - e)] + twisted_tail) - (-K + x * L12)
    checks.append(
        Dp2Check(
            "twisted-as-printed",
            res.is_zero(),
            False,
            "exact" if res.is_zero() else f"residual {res} (L1 weight 2 - eps instead of 2 + x - eps)",
            res,
        )
    )

    # contraction
    steps = [s.self_intersection for s in cmap.steps]
    shown = ", ".join(str(v) for v in steps)
    checks.append(
        Dp2Check("contraction-steps", steps == [-1, -1, -1], True, f"self-intersections [{shown}]")
    )

    A = cmap.project(-K + x * L12)
    push_terms = [("L2", 1 + e), ("F1", 1 - e), ("F2", e - x)] + F_rest + [("E", 1 + x - 3 * e)]
    pushed = DivisorClass.zero(n)
    for name, coeff in push_terms:
        pushed = pushed + coeff * cmap.project(proper_transform(tower, name))
    res = pushed - A
    checks.append(Dp2Check("pushforward", res.is_zero(), True,
                           "exact" if res.is_zero() else f"residual {res}", res))
    if not res.is_zero():
        raise IdentityFailure("pushforward", res)

    KS = surface.canonical
    checks.append(Dp2Check("K^2", KS.square() == 2, True, f"K_S^2 = {KS.square()}"))
    squares = {
        name: cmap.pushed_intersection(proper_transform(tower, name), proper_transform(tower, name))
        for name in ("E", "L2", "F1")
    }
    checks.append(Dp2Check("pi(L2)^2 = -2", squares["L2"] == -2, True, f"{squares['L2']}"))
    checks.append(Dp2Check("pi(E)^2 = -2", squares["E"] == -2, False, f"{squares['E']}"))
    checks.append(Dp2Check("pi(F1)^2", squares["F1"] == -2, False, f"{squares['F1']}"))
    star = star_check(surface)
    checks.append(Dp2Check("star-violated", star.status == "violated", True, star.reason))
    amp = is_ample(surface, A)
    checks.append(
        Dp2Check("ample (partial)", amp.ample, False,
                 "positive on every tracked curve" if amp.ample else amp.detail)
    )
    cert = CylinderCertificate(
        tuple(
            Component(cmap.project(proper_transform(tower, name)), f"pi({name})", coeff)
            for name, coeff in push_terms
        ),
        A,
        "images of L2, F1..F7 and E; complement is C^1 x C^*",
    )
    return Dp2Report(params, tower, surface, cmap, A, cert, tuple(checks))


# --------------------------------------------------------------------------


def log_pullback_coeff(coeffs: Sequence[tuple]) -> Fraction:
    """Weight of the exceptional curve in the log pullback of a point blow-up.

    ``coeffs`` pairs each boundary weight with the component's multiplicity
    at the point; the result is ``sum(weight * mult) - 1``.
    """
    return sum((as_rational(w) * m for w, m in coeffs), Fraction(0)) - 1
