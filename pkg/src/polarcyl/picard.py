"""Divisor classes on blow-ups of the projective plane.

Classes are exact rational vectors in the total-transform basis
``(H, E1, ..., En)``, so the intersection form is always
``diag(1, -1, ..., -1)``.  Surfaces are either general-position blow-ups
(:func:`general_position`) or explicit blow-up towers built with
:class:`TowerBuilder`, where incidences are declared rather than inferred.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import hermite_basis, rank, solve_exact


class DimensionMismatch(ValueError):
    pass


class ContractionError(ValueError):
    """A curve in a contraction sequence is not a (-1)-curve at its step."""

    def __init__(self, step: int, name: str, self_intersection, canonical_degree):
        self.step = step
        self.name = name
        self.self_intersection = self_intersection
        self.canonical_degree = canonical_degree
        super().__init__(
            f"step {step}: {name} has self-intersection {self_intersection} "
            f"and K-degree {canonical_degree}; expected -1 and -1"
        )


def as_rational(value) -> Fraction:
    """Parse ``int``, ``Fraction`` or a ``"p"``/``"p/q"`` string exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"not a rational: {value!r}") from None
        if q <= 0:
            raise ValueError(f"denominator must be positive: {value!r}")
        return Fraction(p, q)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class DivisorClass:
    """A class ``d*H + a1*E1 + ... + an*En`` stored as ``(d, a1, ..., an)``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a divisor class needs at least the H coefficient")

    @classmethod
    def of(cls, *coeffs) -> DivisorClass:
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls, n: int) -> DivisorClass:
        return cls((0,) * (n + 1))

    @classmethod
    def line(cls, n: int) -> DivisorClass:
        return cls((1,) + (0,) * n)

    @classmethod
    def exceptional(cls, i: int, n: int) -> DivisorClass:
        """The total transform ``E_i`` (1-based) on a blow-up of ``n`` points."""
        if not 1 <= i <= n:
            raise IndexError(f"exceptional index {i} outside 1..{n}")
        c = [0] * (n + 1)
        c[i] = 1
        return cls(tuple(c))

    @classmethod
    def plane_curve(cls, degree: int, multiplicities: Sequence[int]) -> DivisorClass:
        """Proper transform ``d*H - sum m_i E_i``."""
        return cls((degree,) + tuple(-m for m in multiplicities))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> Fraction:
        return self.coeffs[0]

    def _check(self, other: DivisorClass):
        if len(self.coeffs) != len(other.coeffs):
            raise DimensionMismatch(
                f"classes live on lattices of rank {len(self.coeffs)} and {len(other.coeffs)}"
            )

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(tuple(-a for a in self.coeffs))

    def __mul__(self, t) -> DivisorClass:
        t = as_rational(t)
        return DivisorClass(tuple(t * a for a in self.coeffs))

    __rmul__ = __mul__

    def dot(self, other: DivisorClass) -> Fraction:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))

    def square(self) -> Fraction:
        return self.dot(self)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        names = ["H"] + [f"E{i}" for i in range(1, len(self.coeffs))]
        terms = []
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def intersect(a: DivisorClass, b: DivisorClass) -> Fraction:
    return a.dot(b)


def canonical_class(n: int) -> DivisorClass:
    if n < 0:
        raise ValueError("blow-up count must be nonnegative")
    return DivisorClass((-3,) + (1,) * n)


def lin_comb(terms: Iterable[tuple], n: int) -> DivisorClass:
    """Sum of ``coeff * cls`` over ``(cls, coeff)`` pairs."""
    total = DivisorClass.zero(n)
    for cls, coeff in terms:
        total = total + as_rational(coeff) * cls
    return total


# --------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class CenterSpec:
    """Where a blow-up center sits.

    ``kind`` is one of ``"general"``, ``"on_curves"``, ``"intersection"`` or
    ``"on_exceptional"``.  ``name`` labels the resulting exceptional curve.
    """

    name: str
    kind: str = "general"
    curves: tuple[str, ...] = ()
    index: int | None = None

    KINDS = ("general", "on_curves", "intersection", "on_exceptional")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown center kind {self.kind!r}")
        object.__setattr__(self, "curves", tuple(self.curves))
        if self.kind == "intersection" and len(self.curves) != 2:
            raise ValueError("an intersection center names exactly two curves")
        if self.kind == "on_curves" and not self.curves:
            raise ValueError("an on_curves center names at least one curve")
        if self.kind == "on_exceptional" and self.index is None:
            raise ValueError("an on_exceptional center needs the blow-up index")

    @classmethod
    def general(cls, name: str) -> CenterSpec:
        return cls(name)

    @classmethod
    def on_curves(cls, name: str, *curves: str) -> CenterSpec:
        return cls(name, "on_curves", curves)

    @classmethod
    def intersection_of(cls, name: str, a: str, b: str) -> CenterSpec:
        return cls(name, "intersection", (a, b))

    @classmethod
    def on_exceptional(cls, name: str, index: int) -> CenterSpec:
        return cls(name, "on_exceptional", (), index)


@dataclass(frozen=True)
class CurveDecl:
    """A plane curve of the given degree; ``multiplicities[k]`` is its
    multiplicity at center ``k + 1``, filled in from the incidences."""

    name: str
    plane_degree: int
    multiplicities: tuple[int, ...] = ()


@dataclass(frozen=True)
class Tower:
    centers: tuple[CenterSpec, ...]
    curves: tuple[CurveDecl, ...]
    # exceptional_hits[j][k] == 1 when center k+1 lies on exceptional curve j+1
    exceptional_hits: tuple[tuple[int, ...], ...]
    contracted: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.centers)

    def curve_names(self) -> list[str]:
        return [c.name for c in self.curves] + [c.name for c in self.centers]


@dataclass(frozen=True)
class SurfaceSpec:
    """A blow-up of the plane at ``n`` points.

    With ``tower=None`` the points are in general position.  A tower surface
    may additionally name curves contracted after the blow-ups; classes on
    such a surface are represented by their pullbacks to the tower top.
    """

    n: int
    tower: Tower | None = None

    def __post_init__(self):
        if self.tower is None and not 0 <= self.n <= 9:
            raise ValueError("general-position blow-ups need 0 <= n <= 9")
        if self.tower is not None and self.tower.n != self.n:
            raise ValueError("tower length disagrees with n")

    @property
    def is_general(self) -> bool:
        return self.tower is None

    @property
    def rank(self) -> int:
        """Rank of the Picard lattice of the surface itself."""
        contracted = len(self.tower.contracted) if self.tower else 0
        return self.n + 1 - contracted

    @property
    def canonical(self) -> DivisorClass:
        K = canonical_class(self.n)
        cmap = self.contraction()
        return cmap.project(K) if cmap else K

    @property
    def K2(self) -> Fraction:
        return Fraction(10 - self.rank)

    def contraction(self) -> ContractionMap | None:
        if self.tower is None or not self.tower.contracted:
            return None
        return contract(self, self.tower.contracted)


def general_position(n: int) -> SurfaceSpec:
    return SurfaceSpec(n)


class TowerBuilder:
    """Build a blow-up tower step by step.

    >>> b = TowerBuilder()
    >>> b.curve("L", 1)
    >>> b.blow_up(CenterSpec.on_curves("F", "L"))
    >>> proper_transform(b.build(), "L")
    DivisorClass(coeffs=(Fraction(1, 1), Fraction(-1, 1)))
    """

    def __init__(self):
        self._centers: list[CenterSpec] = []
        self._curves: dict[str, tuple[int, list[int]]] = {}
        self._exc_hits: list[list[int]] = []

    def curve(self, name: str, plane_degree: int) -> None:
        if name in self._curves or any(c.name == name for c in self._centers):
            raise ValueError(f"duplicate curve name {name!r}")
        if plane_degree < 0:
            raise ValueError("plane degree must be nonnegative")
        self._curves[name] = (plane_degree, [0] * len(self._centers))

    def _current_class(self, name: str) -> DivisorClass:
        n = len(self._centers)
        if name in self._curves:
            d, mults = self._curves[name]
            return DivisorClass.plane_curve(d, mults + [0] * (n - len(mults)))
        for j, c in enumerate(self._centers):
            if c.name == name:
                hits = self._exc_hits[j] + [0] * (n - len(self._exc_hits[j]))
                coeffs = [0] * (n + 1)
                coeffs[j + 1] = 1
                for k, h in enumerate(hits):
                    coeffs[k + 1] -= h
                return DivisorClass(tuple(coeffs))
        raise KeyError(f"unknown curve {name!r}")

    def blow_up(self, center: CenterSpec) -> None:
        if center.name in self._curves or any(c.name == center.name for c in self._centers):
            raise ValueError(f"duplicate curve name {center.name!r}")
        if center.kind == "on_exceptional":
            if not 1 <= center.index <= len(self._centers):
                raise ValueError(f"no earlier blow-up with index {center.index}")
            on = [self._centers[center.index - 1].name]
        else:
            on = list(center.curves)
        for name in on:
            self._current_class(name)  # raises on unknown names
        if center.kind == "intersection":
            a, b = (self._current_class(x) for x in on)
            if a.dot(b) <= 0:
                raise ValueError(
                    f"{on[0]} and {on[1]} do not meet (intersection {a.dot(b)})"
                )
        if len(set(on)) != len(on):
            raise ValueError("a center lists the same curve twice")
        k = len(self._centers)
        self._centers.append(center)
        self._exc_hits.append([])
        for d, mults in self._curves.values():
            mults.extend([0] * (k + 1 - len(mults)))
        for hits in self._exc_hits:
            hits.extend([0] * (k + 1 - len(hits)))
        for name in on:
            if name in self._curves:
                self._curves[name][1][k] = 1
            else:
                j = next(i for i, c in enumerate(self._centers) if c.name == name)
                self._exc_hits[j][k] = 1

    def build(self, contracted: Sequence[str] = ()) -> SurfaceSpec:
        n = len(self._centers)
        curves = tuple(
            CurveDecl(name, d, tuple(m + [0] * (n - len(m))))
            for name, (d, m) in self._curves.items()
        )
        hits = tuple(tuple(h + [0] * (n - len(h))) for h in self._exc_hits)
        tower = Tower(tuple(self._centers), curves, hits, tuple(contracted))
        spec = SurfaceSpec(n, tower)
        if contracted:
            contract(spec, contracted)  # validate eagerly
        return spec


def proper_transform(spec: SurfaceSpec, name: str) -> DivisorClass:
    """Class of a declared curve's proper transform on the tower top.

    Exceptional curves are addressed by their center names; on a general
    position surface ``"E<i>"`` and ``"H"`` resolve to basis classes.
    """
    n = spec.n
    tower = spec.tower
    if tower is None:
        if name == "H":
            return DivisorClass.line(n)
        if name.startswith("E") and name[1:].isdigit():
            return DivisorClass.exceptional(int(name[1:]), n)
        raise KeyError(f"unknown curve {name!r}")
    for c in tower.curves:
        if c.name == name:
            return DivisorClass.plane_curve(c.plane_degree, c.multiplicities)
    for j, center in enumerate(tower.centers):
        if center.name == name:
            coeffs = [0] * (n + 1)
            coeffs[j + 1] = 1
            for k, h in enumerate(tower.exceptional_hits[j]):
                coeffs[k + 1] -= h
            return DivisorClass(tuple(coeffs))
    raise KeyError(f"unknown curve {name!r}")


# --------------------------------------------------------------------------
# contraction


@dataclass(frozen=True)
class ContractionStep:
    name: str
    cls: DivisorClass  # the curve's class on the surface at this step (ambient rep)
    self_intersection: Fraction
    canonical_degree: Fraction


@dataclass(frozen=True)
class ContractionMap:
    """Linear pushforward for a sequence of (-1)-curve contractions.

    ``contracted`` holds mutually orthogonal (-1)-classes in the source
    lattice; ``project`` is the orthogonal projection onto their complement,
    i.e. pullback after pushforward.  ``basis`` is an integral basis of that
    complement and ``gram`` its intersection matrix, which give the
    coordinates returned by :meth:`pushforward`.
    """

    source_rank: int
    steps: tuple[ContractionStep, ...]
    basis: tuple[DivisorClass, ...]
    gram: tuple[tuple[Fraction, ...], ...]

    @property
    def contracted(self) -> tuple[DivisorClass, ...]:
        return tuple(s.cls for s in self.steps)

    @property
    def target_rank(self) -> int:
        return len(self.basis)

    def project(self, D: DivisorClass) -> DivisorClass:
        out = D
        for c in self.contracted:
            out = out + D.dot(c) * c
        return out

    def pushforward(self, D: DivisorClass) -> DivisorClass:
        if len(D.coeffs) != self.source_rank:
            raise DimensionMismatch("class does not live on the source surface")
        p = self.project(D)
        cols = [list(b.coeffs) for b in self.basis]
        matrix = [[cols[j][i] for j in range(len(cols))] for i in range(self.source_rank)]
        y = solve_exact(matrix, list(p.coeffs))
        return DivisorClass(tuple(y))

    def form(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        """Intersection of two pushforward coordinate vectors."""
        return sum(
            a.coeffs[i] * self.gram[i][j] * b.coeffs[j]
            for i in range(len(a.coeffs))
            for j in range(len(b.coeffs))
        )

    def pushed_intersection(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        """``pi(a) . pi(b)`` for source classes ``a`` and ``b``."""
        return self.project(a).dot(self.project(b))

    @property
    def is_standard(self) -> bool:
        r = len(self.gram)
        return all(
            self.gram[i][j] == (0 if i != j else (1 if i == 0 else -1))
            for i in range(r)
            for j in range(r)
        )


def contract(spec: SurfaceSpec, order: Sequence) -> ContractionMap:
    """Contract curves one after another, checking each is a (-1)-curve.

    Entries of ``order`` are curve names or explicit :class:`DivisorClass`
    values.  Each class is first projected past the earlier contractions.
    """
    n = spec.n
    K = canonical_class(n)
    steps: list[ContractionStep] = []
    for k, item in enumerate(order, start=1):
        if isinstance(item, DivisorClass):
            name, cls = str(item), item
        else:
            name, cls = item, proper_transform(spec, item)
        if len(cls.coeffs) != n + 1:
            raise DimensionMismatch(f"step {k}: class has the wrong rank")
        for s in steps:
            cls = cls + cls.dot(s.cls) * s.cls
        sq, kd = cls.square(), cls.dot(K)
        if sq != -1 or kd != -1:
            raise ContractionError(k, name, sq, kd)
        steps.append(ContractionStep(name, cls, sq, kd))

    def proj(D):
        for s in steps:
            D = D + D.dot(s.cls) * s.cls
        return D

    images = [proj(DivisorClass.line(n))] + [
        proj(DivisorClass.exceptional(i, n)) for i in range(1, n + 1)
    ]
    rows = hermite_basis([[int(c) for c in v.coeffs] for v in images])
    basis = tuple(DivisorClass(tuple(r)) for r in rows)
    if len(basis) != n + 1 - len(steps):
        raise ContractionError(len(steps), "rank", len(basis), n + 1 - len(steps))
    gram = tuple(tuple(a.dot(b) for b in basis) for a in basis)
    return ContractionMap(n + 1, tuple(steps), basis, gram)


def lattice_rank(classes: Sequence[DivisorClass]) -> int:
    return rank([list(c.coeffs) for c in classes])
