"""Decide whether a polarized blow-up of the plane carries a polar cylinder."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .certify import CylinderCertificate, verify_certificate
from .cone import (
    FujitaData,
    NotAmple,
    PeThresholdCertificate,
    fujita_face,
    fujita_from_certificate,
)
from .families import build_auxiliary, match_auxiliary, match_nine_points
from .negcurves import is_ample, star_check
from .picard import DivisorClass, SurfaceSpec, canonical_class


class Reason(str, Enum):
    THEOREM_MAIN = "theorem-main"
    NINE_POINTS_LEMMA = "nine-points-lemma"
    DEL_PEZZO_1 = "del-pezzo-1"
    DEL_PEZZO_2 = "del-pezzo-2"
    AUXILIARY = "auxiliary-construction"
    STAR_UNVERIFIED = "star-unverified"
    OPEN_WINDOW = "open-window"
    NO_RULE = "no-applicable-rule"


class Status(str, Enum):
    NO_CYLINDER = "no-cylinder"
    CYLINDER = "cylinder"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CylinderVerdict:
    status: Status
    reason: Reason
    n: int
    K2: Fraction
    mu: Fraction | None
    r: int | None
    star: str
    certificate: CylinderCertificate | None = None
    detail: str = ""
    r_source: str = "lp"
    extra: dict = field(default_factory=dict, compare=False)


class ClassifyError(ValueError):
    pass


def proportional_to_anticanonical(A: DivisorClass) -> Fraction | None:
    """``t`` with ``A = t * (-K)`` and ``t > 0``, else ``None``."""
    minus_K = -canonical_class(A.n)
    t = A.degree / minus_K.degree
    if t > 0 and A == t * minus_K:
        return t
    return None


def classify(
    spec: SurfaceSpec, A: DivisorClass, aux: PeThresholdCertificate | None = None
) -> CylinderVerdict:
    n = spec.n
    if len(A.coeffs) != n + 1:
        raise ClassifyError("divisor rank does not match the surface")
    if spec.is_general and n == 9 and aux is None:
        raise ClassifyError("nine points need a pseudo-effective threshold certificate")
    K2 = spec.K2
    star = star_check(spec)
    amp = is_ample(spec, A)
    if not amp:
        raise NotAmple(f"A is not ample ({amp.detail})")

    def verdict(status, reason, fd=None, cert=None, detail=""):
        return CylinderVerdict(
            status, reason, n, K2,
            fd.mu if fd else None, fd.r if fd else None,
            star.status, cert, detail, fd.source if fd else "lp",
        )

    if not star.usable:
        return verdict(Status.UNKNOWN, Reason.STAR_UNVERIFIED, detail=star.reason)

    if n <= 8:
        fd: FujitaData = fujita_face(spec, A)
    else:
        fd = fujita_from_certificate(spec, A, aux)
    r = fd.r

    # with a certificate r is only a lower bound, too weak to apply the theorem
    if r + K2 <= 3 and fd.source == "lp":
        return verdict(Status.NO_CYLINDER, Reason.THEOREM_MAIN, fd,
                       detail=f"r_A + K^2 = {r + K2} <= 3")

    t = proportional_to_anticanonical(A)
    if t is not None and r == 0:
        if K2 >= 4:
            return verdict(Status.CYLINDER, Reason.DEL_PEZZO_1, fd,
                           detail=f"A = {t}(-K) and K^2 = {K2} >= 4")
        return verdict(Status.UNKNOWN, Reason.NO_RULE, fd,
                       detail="anticanonical polarization outside the del Pezzo range")
    if t is not None or r == 0:
        return verdict(Status.UNKNOWN, Reason.NO_RULE, fd,
                       detail="r_A = 0 and proportionality to -K disagree")

    params = match_auxiliary(spec, A)
    if params is not None:
        built = build_auxiliary(params)
        report = verify_certificate(spec, built.certificate)
        if report.accepted:
            return verdict(Status.CYLINDER, Reason.AUXILIARY, fd, built.certificate,
                           detail=f"k = {params.k}, x = {params.x}, eps1 = eps2 = {params.eps1}")

    if t is None and r >= 1 and K2 >= 3 and n <= 8:
        return verdict(Status.CYLINDER, Reason.DEL_PEZZO_2, fd,
                       detail=f"A not proportional to -K and K^2 = {K2} >= 3")

    nine = match_nine_points(spec, A)
    if nine is not None:
        x = nine[0]
        if x <= Fraction(1, 4):
            return verdict(Status.NO_CYLINDER, Reason.NINE_POINTS_LEMMA, fd,
                           detail=f"x = {x} <= 1/4")
        return verdict(Status.UNKNOWN, Reason.OPEN_WINDOW, fd,
                       detail=f"x = {x} lies in the unresolved window 1/4 < x <= 7/8")

    return verdict(Status.UNKNOWN, Reason.NO_RULE, fd,
                   detail=f"r_A + K^2 = {r + K2} >= 4 and no construction applies")


def explain(v: CylinderVerdict) -> str:
    lines = [f"verdict: {v.status.value} ({v.reason.value})"]
    mu = "?" if v.mu is None else str(v.mu)
    r = "?" if v.r is None else str(v.r)
    lines.append(f"n = {v.n}, K^2 = {v.K2}, mu_A = {mu}, r_A = {r} [{v.r_source}], star: {v.star}")
    if v.r is not None:
        lines.append(f"r_A + K^2 = {v.r + v.K2}")
    if v.reason is Reason.THEOREM_MAIN:
        lines.append("no cylinder: r_A + K^2 <= 3 and every smooth rational curve has self-intersection >= -1")
    elif v.reason is Reason.NINE_POINTS_LEMMA:
        lines.append("no cylinder: every effective D ~ A gives a log canonical pair when x <= 1/4")
    elif v.reason is Reason.DEL_PEZZO_1:
        lines.append("cylinder: anticanonical polarization on a del Pezzo surface of degree >= 4")
    elif v.reason is Reason.DEL_PEZZO_2:
        lines.append("cylinder: non-anticanonical polarization on a del Pezzo surface of degree >= 3")
    elif v.reason is Reason.OPEN_WINDOW:
        lines.append("unknown: no criterion decides 1/4 < x <= 7/8 on nine points")
    if v.detail:
        lines.append(v.detail)
    if v.certificate is not None:
        lines.append("certificate:")
        for c in v.certificate.components:
            lines.append(f"  {c.coeff} * [{c.label}] = {c.coeff} * ({c.cls})")
    return "\n".join(lines)
