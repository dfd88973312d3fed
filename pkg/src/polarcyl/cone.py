"""Effective-cone queries: membership, Fujita invariant and Fujita rank.

On a general-position blow-up of at most eight points the Mori cone is
closed, rational polyhedral and spanned by :func:`mori_generators`, so the
pseudo-effective threshold is the optimum of one linear program.  Nine
points are handled through :class:`PeThresholdCertificate` only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import rank
from .lp import LinearProgram, Status, lp_solve
from .negcurves import is_ample, mori_generators
from .picard import DivisorClass, SurfaceSpec, as_rational, canonical_class


class NotAmple(ValueError):
    pass


class CertificateModeRequired(ValueError):
    """Raised for nine-point surfaces, whose Mori cone is not polyhedral."""


@dataclass(frozen=True)
class Membership:
    feasible: bool
    decomposition: tuple[tuple[DivisorClass, Fraction], ...] = ()

    def __bool__(self):
        return self.feasible


@dataclass(frozen=True)
class FujitaData:
    mu: Fraction
    face_generators: tuple[int, ...]
    r: int
    generators: tuple[DivisorClass, ...] = field(repr=False, default=())
    # "lp" when computed exactly; "certificate" when r is the rank of a
    # certified decomposition, a lower bound for the true face dimension
    source: str = "lp"
    supporting_class: DivisorClass | None = field(default=None, repr=False)

    @property
    def face_classes(self) -> list[DivisorClass]:
        return [self.generators[i] for i in self.face_generators]


def _require_polyhedral(spec: SurfaceSpec):
    if not spec.is_general:
        raise ValueError("cone queries need a general-position surface")
    if spec.n > 8:
        raise CertificateModeRequired("n = 9: use a pseudo-effective threshold certificate")


def _columns(classes: Sequence[DivisorClass]) -> list[list[Fraction]]:
    r = len(classes[0].coeffs)
    return [[g.coeffs[i] for g in classes] for i in range(r)]


def cone_decomposition(
    D: DivisorClass, generators: Sequence[DivisorClass]
) -> Membership:
    """Write ``D`` as a nonnegative combination of ``generators`` if possible."""
    if D.is_zero():
        return Membership(True, ())
    A = _columns(generators)
    res = lp_solve(LinearProgram(c=[0] * len(generators), A_eq=A, b_eq=list(D.coeffs)))
    if res.status is not Status.OPTIMAL:
        return Membership(False)
    return Membership(
        True, tuple((g, c) for g, c in zip(generators, res.x) if c != 0)
    )


def in_effective_cone(spec: SurfaceSpec, D: DivisorClass) -> Membership:
    _require_polyhedral(spec)
    if len(D.coeffs) != spec.n + 1:
        raise ValueError("divisor rank does not match the surface")
    return cone_decomposition(D, mori_generators(spec))


def _threshold_lp(spec: SurfaceSpec, A: DivisorClass):
    _require_polyhedral(spec)
    if not is_ample(spec, A):
        raise NotAmple(f"{A} is not ample")
    gens = mori_generators(spec)
    K = canonical_class(spec.n)
    # columns: one per generator, last column is lambda with coefficient -A
    cols = _columns(gens)
    A_eq = [row + [-a] for row, a in zip(cols, A.coeffs)]
    c = [0] * len(gens) + [1]
    res = lp_solve(LinearProgram(c=c, A_eq=A_eq, b_eq=list(K.coeffs)))
    if res.status is not Status.OPTIMAL:
        raise RuntimeError(f"threshold program ended {res.status.value} for ample {A}")
    return gens, res


def fujita_invariant(spec: SurfaceSpec, A: DivisorClass) -> Fraction:
    """Least ``lambda`` with ``K + lambda*A`` effective."""
    _, res = _threshold_lp(spec, A)
    return res.value


def fujita_face(spec: SurfaceSpec, A: DivisorClass) -> FujitaData:
    """Threshold, smallest Mori-cone face through ``K + mu*A`` and its dimension.

    A generator is in the face iff it carries positive weight in some
    decomposition of ``K + mu*A``.  The threshold program's dual gives a nef
    functional vanishing on the face, which prunes the generators that need
    a positivity program of their own.
    """
    gens, res = _threshold_lp(spec, A)
    mu = res.value
    K = canonical_class(spec.n)
    x = K + mu * A
    y = res.duals
    # N(v) = -y.v is nonnegative on every generator and kills x; as a class
    # under the intersection form its coordinates are (-y0, y1, ..., yn)
    N = DivisorClass((-y[0],) + tuple(y[1:]))
    if x.is_zero():
        return FujitaData(mu, (), 0, tuple(gens), "lp", N)
    candidates = [i for i, g in enumerate(gens) if N.dot(g) == 0]
    sub = [gens[i] for i in candidates]
    cols = _columns(sub)
    face = []
    for k, i in enumerate(candidates):
        obj = [0] * len(sub)
        obj[k] = 1
        r = lp_solve(LinearProgram(c=obj, A_eq=cols, b_eq=list(x.coeffs), maximize=True))
        if r.status is Status.UNBOUNDED or (r.status is Status.OPTIMAL and r.value > 0):
            face.append(i)
    r_A = rank([list(gens[i].coeffs) for i in face]) if face else 0
    return FujitaData(mu, tuple(face), r_A, tuple(gens), "lp", N)


# --------------------------------------------------------------------------
# nine points


@dataclass(frozen=True)
class PeThresholdCertificate:
    """Evidence that ``mu`` is the pseudo-effective threshold of ``A``.

    ``decomposition`` writes ``K + mu*A`` as a nonnegative combination of
    effective classes; ``nef_witness`` maps attestor names (``"H"``,
    ``"H-E3"``, ``"-K"``) to nonnegative weights and must vanish on
    ``K + mu*A`` while staying positive on ``A``.  ``declared_effective``
    lists extra classes the caller vouches for.
    """

    mu: Fraction
    decomposition: tuple[tuple[DivisorClass, Fraction], ...]
    nef_witness: Mapping[str, Fraction]
    declared_effective: tuple[DivisorClass, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mu", as_rational(self.mu))
        object.__setattr__(
            self,
            "decomposition",
            tuple((c, as_rational(v)) for c, v in self.decomposition),
        )
        object.__setattr__(
            self, "nef_witness", {k: as_rational(v) for k, v in dict(self.nef_witness).items()}
        )
        object.__setattr__(self, "declared_effective", tuple(self.declared_effective))


def nef_attestors(spec: SurfaceSpec) -> dict[str, DivisorClass]:
    """Classes trusted to be nef: ``H``, ``H - E_i`` and, on nine points, ``-K``.

    ``-K`` is nef on nine points when ``|-K|`` is a base-point-free pencil.
    """
    n = spec.n
    H = DivisorClass.line(n)
    out = {"H": H}
    for i in range(1, n + 1):
        out[f"H-E{i}"] = H - DivisorClass.exceptional(i, n)
    if n == 9:
        out["-K"] = -canonical_class(n)
    return out


@dataclass(frozen=True)
class CheckReport:
    valid: bool
    failures: tuple[str, ...] = ()

    def __bool__(self):
        return self.valid


def verify_pe_threshold_certificate(
    spec: SurfaceSpec, A: DivisorClass, cert: PeThresholdCertificate
) -> CheckReport:
    n = spec.n
    K = canonical_class(n)
    attestors = nef_attestors(spec)
    failures = []
    unknown = [k for k in cert.nef_witness if k not in attestors]
    if unknown:
        failures.append(f"witness uses non-attestor classes {unknown}")
        return CheckReport(False, tuple(failures))
    if any(v < 0 for v in cert.nef_witness.values()):
        failures.append("witness has a negative weight")
    W = DivisorClass.zero(n)
    for k, v in cert.nef_witness.items():
        W = W + v * attestors[k]
    target = K + cert.mu * A
    total = DivisorClass.zero(n)
    allowed = {DivisorClass.exceptional(i, n) for i in range(1, n + 1)}
    allowed.update(cert.declared_effective)
    for cls, coeff in cert.decomposition:
        if coeff < 0:
            failures.append(f"negative coefficient {coeff} on {cls}")
        if cls not in allowed:
            failures.append(f"{cls} is neither an exceptional class nor declared effective")
        total = total + coeff * cls
    if total != target:
        failures.append(f"decomposition sums to {total}, expected {target}")
    if W.dot(target) != 0:
        failures.append(f"witness pairs to {W.dot(target)} with K + mu*A")
    if W.dot(A) <= 0:
        failures.append(f"witness pairs to {W.dot(A)} with A; cannot exclude smaller thresholds")
    return CheckReport(not failures, tuple(failures))


def fujita_from_certificate(
    spec: SurfaceSpec, A: DivisorClass, cert: PeThresholdCertificate
) -> FujitaData:
    """Fujita data read off a verified certificate.

    Every class with positive weight lies in the smallest face, so ``r`` is
    the rank of those classes: exact when they span the face, a lower bound
    otherwise.
    """
    report = verify_pe_threshold_certificate(spec, A, cert)
    if not report:
        raise ValueError("invalid threshold certificate: " + "; ".join(report.failures))
    classes = tuple(c for c, v in cert.decomposition if v > 0)
    r = rank([list(c.coeffs) for c in classes]) if classes else 0
    return FujitaData(cert.mu, tuple(range(len(classes))), r, classes, "certificate")
