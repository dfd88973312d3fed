"""Class-level checks for polar cylinder certificates.

A certificate lists curves ``C_i`` with weights ``lambda_i`` such that
``sum lambda_i C_i`` equals the polarization.  Class arithmetic can confirm
effectivity, the linear equivalence and the Picard-rank count a cylinder
complement forces; it cannot confirm irreducibility, so that part is only a
lint.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import rank
from .picard import (
    DimensionMismatch,
    DivisorClass,
    SurfaceSpec,
    as_rational,
    proper_transform,
)


@dataclass(frozen=True)
class Component:
    cls: DivisorClass
    label: str
    coeff: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_rational(self.coeff))


@dataclass(frozen=True)
class CylinderCertificate:
    components: tuple[Component, ...]
    target: DivisorClass
    removed_set_note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def divisor(self) -> DivisorClass:
        total = DivisorClass.zero(self.target.n)
        for c in self.components:
            total = total + c.coeff * c.cls
        return total

    def merged(self) -> list[tuple[DivisorClass, Fraction, list[str]]]:
        """Components grouped by class, weights added, first-seen order."""
        groups: dict[DivisorClass, tuple[Fraction, list[str]]] = {}
        for c in self.components:
            w, labels = groups.get(c.cls, (Fraction(0), []))
            groups[c.cls] = (w + c.coeff, labels + [c.label])
        return [(cls, w, labels) for cls, (w, labels) in groups.items()]


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass" | "fail" | "lint"
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]

    @property
    def accepted(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def __bool__(self):
        return self.accepted

    def get(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


def _known_curves(spec: SurfaceSpec) -> set[DivisorClass]:
    n = spec.n
    known = {DivisorClass.exceptional(i, n) for i in range(1, n + 1)}
    if spec.tower is not None:
        cmap = spec.contraction()
        for name in spec.tower.curve_names():
            cls = proper_transform(spec, name)
            known.add(cls)
            if cmap is not None:
                known.add(cmap.project(cls))
    return known


def verify_certificate(spec: SurfaceSpec, cert: CylinderCertificate) -> VerificationReport:
    if len(cert.target.coeffs) != spec.n + 1 or any(
        len(c.cls.coeffs) != spec.n + 1 for c in cert.components
    ):
        raise DimensionMismatch("certificate classes do not match the surface rank")
    checks = []

    negative = [c.label for c in cert.components if c.coeff < 0]
    checks.append(
        Check("effective", "fail" if negative else "pass",
              f"negative weights on {negative}" if negative else "all weights >= 0")
    )

    residual = cert.divisor() - cert.target
    checks.append(
        Check("identity", "pass" if residual.is_zero() else "fail",
              "sum of weighted components equals the target" if residual.is_zero()
              else f"residual {residual}")
    )

    support = [(cls, w) for cls, w, _ in cert.merged() if w > 0]
    needed = 10 - spec.K2
    span = rank([list(cls.coeffs) for cls, _ in support]) if support else 0
    checks.append(
        Check("picard-count", "pass" if len(support) >= needed else "fail",
              f"{len(support)} support components, rank Pic = {needed}, span rank {span}")
    )

    K = spec.canonical
    known = _known_curves(spec)
    odd = []
    for c in cert.components:
        cls = c.cls
        if cls in known:
            continue
        if cls.degree < 0 or cls.square() + cls.dot(K) < -2:
            odd.append(c.label)
    checks.append(
        Check("plausible-curves", "lint" if odd else "pass",
              f"unrecognised classes {odd}" if odd else "every component is a known or genus >= 0 class")
    )
    return VerificationReport(tuple(checks))


def adjoint_degree(spec: SurfaceSpec, cert: CylinderCertificate, fiber: DivisorClass) -> Fraction:
    """``(K + sum lambda_i C_i) . fiber``."""
    if len(fiber.coeffs) != spec.n + 1:
        raise DimensionMismatch("fiber class does not match the surface rank")
    return (spec.canonical + cert.divisor()).dot(fiber)
