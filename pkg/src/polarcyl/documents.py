"""JSON job documents: surfaces, divisors and certificates with exact rationals.

Rationals travel as ``"p"`` or ``"p/q"`` strings.  Parsing is strict so a
diagnostic can name the offending field; :func:`dump_job` writes the
canonical form (sorted keys, two-space indent), which :func:`parse_job`
reads back to an equal job.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .certify import Component, CylinderCertificate
from .cone import PeThresholdCertificate
from .picard import (
    CenterSpec,
    DivisorClass,
    SurfaceSpec,
    TowerBuilder,
    as_rational,
    general_position,
)

COMMANDS = ("classify", "fujita", "rays", "star-check", "verify-example", "verify-certificate")
EXAMPLES = ("auxiliary", "nine-points", "dp2")


class DocumentError(ValueError):
    """A malformed document; ``field`` is a dotted path to the culprit."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


@dataclass(frozen=True)
class Job:
    command: str
    surface: SurfaceSpec | None
    A: DivisorClass | None = None
    options: dict = field(default_factory=dict)


# --------------------------------------------------------------------------
# scalars


def rational_str(q) -> str:
    return str(as_rational(q))


def parse_rational(value: Any, where: str) -> Fraction:
    if not isinstance(value, str):
        raise DocumentError(where, f"expected a rational string like \"3/4\", got {value!r}")
    try:
        return as_rational(value)
    except (TypeError, ValueError) as exc:
        raise DocumentError(where, str(exc)) from None


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(where, f"expected an integer, got {value!r}")
    return value


def _str(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise DocumentError(where, f"expected a string, got {value!r}")
    return value


def _obj(value: Any, where: str) -> dict:
    if not isinstance(value, dict):
        raise DocumentError(where, f"expected an object, got {type(value).__name__}")
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(where, f"expected a list, got {type(value).__name__}")
    return value


def _known_keys(doc: dict, allowed: set[str], where: str):
    extra = sorted(set(doc) - allowed)
    if extra:
        raise DocumentError(f"{where}.{extra[0]}" if where else extra[0], "unknown field")


def parse_class(value: Any, where: str, n: int | None = None) -> DivisorClass:
    items = _list(value, where)
    if not items:
        raise DocumentError(where, "a class needs at least the H coefficient")
    cls = DivisorClass(tuple(parse_rational(v, f"{where}[{i}]") for i, v in enumerate(items)))
    if n is not None and len(cls.coeffs) != n + 1:
        raise DocumentError(where, f"expected {n + 1} coefficients, got {len(cls.coeffs)}")
    return cls


def class_doc(cls: DivisorClass) -> list[str]:
    return cls.as_strings()


# --------------------------------------------------------------------------
# surfaces


def parse_surface(value: Any, where: str = "surface") -> SurfaceSpec:
    doc = _obj(value, where)
    model = _str(doc.get("model", "general"), f"{where}.model")
    n = _int(doc.get("n"), f"{where}.n")
    if model == "general":
        _known_keys(doc, {"n", "model"}, where)
        if not 0 <= n <= 9:
            raise DocumentError(f"{where}.n", "general position needs 0 <= n <= 9")
        return general_position(n)
    if model != "tower":
        raise DocumentError(f"{where}.model", f"expected \"general\" or \"tower\", got {model!r}")
    _known_keys(doc, {"n", "model", "curves", "tower", "contracted"}, where)
    b = TowerBuilder()
    for i, c in enumerate(_list(doc.get("curves", []), f"{where}.curves")):
        here = f"{where}.curves[{i}]"
        c = _obj(c, here)
        _known_keys(c, {"name", "degree"}, here)
        try:
            b.curve(_str(c.get("name"), f"{here}.name"), _int(c.get("degree"), f"{here}.degree"))
        except ValueError as exc:
            if isinstance(exc, DocumentError):
                raise
            raise DocumentError(here, str(exc)) from None
    centers = _list(doc.get("tower", []), f"{where}.tower")
    for i, c in enumerate(centers):
        here = f"{where}.tower[{i}]"
        c = _obj(c, here)
        _known_keys(c, {"name", "kind", "curves", "index"}, here)
        name = _str(c.get("name"), f"{here}.name")
        kind = _str(c.get("kind", "general"), f"{here}.kind")
        curves = [_str(x, f"{here}.curves[{j}]") for j, x in enumerate(_list(c.get("curves", []), f"{here}.curves"))]
        index = c.get("index")
        if index is not None:
            index = _int(index, f"{here}.index")
        try:
            b.blow_up(CenterSpec(name, kind, tuple(curves), index))
        except (ValueError, KeyError) as exc:
            raise DocumentError(here, str(exc).strip("'\"")) from None
    if len(centers) != n:
        raise DocumentError(f"{where}.n", f"declares {n} blow-ups but the tower has {len(centers)}")
    contracted = [
        _str(x, f"{where}.contracted[{j}]")
        for j, x in enumerate(_list(doc.get("contracted", []), f"{where}.contracted"))
    ]
    try:
        return b.build(contracted)
    except (ValueError, KeyError) as exc:
        raise DocumentError(f"{where}.contracted", str(exc).strip("'\"")) from None


def surface_doc(spec: SurfaceSpec) -> dict:
    if spec.tower is None:
        return {"model": "general", "n": spec.n}
    t = spec.tower
    centers = []
    for c in t.centers:
        entry: dict = {"kind": c.kind, "name": c.name}
        if c.curves:
            entry["curves"] = list(c.curves)
        if c.index is not None:
            entry["index"] = c.index
        centers.append(entry)
    out = {
        "curves": [{"degree": c.plane_degree, "name": c.name} for c in t.curves],
        "model": "tower",
        "n": spec.n,
        "tower": centers,
    }
    if t.contracted:
        out["contracted"] = list(t.contracted)
    return out


# --------------------------------------------------------------------------
# certificates


def parse_threshold_certificate(value: Any, where: str, n: int) -> PeThresholdCertificate:
    doc = _obj(value, where)
    _known_keys(doc, {"mu", "decomposition", "nef_witness", "declared_effective"}, where)
    mu = parse_rational(doc.get("mu"), f"{where}.mu")
    decomposition = []
    for i, item in enumerate(_list(doc.get("decomposition", []), f"{where}.decomposition")):
        here = f"{where}.decomposition[{i}]"
        item = _obj(item, here)
        _known_keys(item, {"class", "coeff"}, here)
        decomposition.append(
            (parse_class(item.get("class"), f"{here}.class", n),
             parse_rational(item.get("coeff"), f"{here}.coeff"))
        )
    witness = {
        _str(k, f"{where}.nef_witness"): parse_rational(v, f"{where}.nef_witness.{k}")
        for k, v in _obj(doc.get("nef_witness", {}), f"{where}.nef_witness").items()
    }
    declared = [
        parse_class(c, f"{where}.declared_effective[{i}]", n)
        for i, c in enumerate(_list(doc.get("declared_effective", []), f"{where}.declared_effective"))
    ]
    return PeThresholdCertificate(mu, tuple(decomposition), witness, tuple(declared))


def threshold_certificate_doc(cert: PeThresholdCertificate) -> dict:
    out = {
        "decomposition": [
            {"class": class_doc(c), "coeff": rational_str(v)} for c, v in cert.decomposition
        ],
        "mu": rational_str(cert.mu),
        "nef_witness": {k: rational_str(v) for k, v in sorted(cert.nef_witness.items())},
    }
    if cert.declared_effective:
        out["declared_effective"] = [class_doc(c) for c in cert.declared_effective]
    return out


def parse_cylinder_certificate(
    value: Any, where: str, n: int, target: DivisorClass | None
) -> CylinderCertificate:
    doc = _obj(value, where)
    _known_keys(doc, {"components", "target", "note"}, where)
    comps = []
    for i, item in enumerate(_list(doc.get("components"), f"{where}.components")):
        here = f"{where}.components[{i}]"
        item = _obj(item, here)
        _known_keys(item, {"class", "label", "coeff"}, here)
        comps.append(
            Component(
                parse_class(item.get("class"), f"{here}.class", n),
                _str(item.get("label", f"C{i + 1}"), f"{here}.label"),
                parse_rational(item.get("coeff"), f"{here}.coeff"),
            )
        )
    if "target" in doc:
        target = parse_class(doc["target"], f"{where}.target", n)
    if target is None:
        raise DocumentError(f"{where}.target", "no target class and no top-level A")
    return CylinderCertificate(tuple(comps), target, _str(doc.get("note", ""), f"{where}.note"))


def cylinder_certificate_doc(cert: CylinderCertificate) -> dict:
    out = {
        "components": [
            {"class": class_doc(c.cls), "coeff": rational_str(c.coeff), "label": c.label}
            for c in cert.components
        ],
        "target": class_doc(cert.target),
    }
    if cert.removed_set_note:
        out["note"] = cert.removed_set_note
    return out


# --------------------------------------------------------------------------
# jobs

_OPTION_KEYS = {
    "classify": {"certificate"},
    "fujita": {"certificate"},
    "rays": {"kind"},
    "star-check": set(),
    "verify-example": {"example", "params"},
    "verify-certificate": {"certificate"},
}

_EXAMPLE_PARAMS = {
    "auxiliary": ({"eps1", "eps2", "x"}, {"k"}),
    "nine-points": ({"x"}, {"indices"}),
    "dp2": ({"eps", "x"}, set()),
}


def _parse_params(example: str, value: Any, where: str) -> dict:
    doc = _obj(value, where)
    rationals, others = _EXAMPLE_PARAMS[example]
    _known_keys(doc, rationals | others, where)
    out: dict = {}
    for key in sorted(rationals):
        if key not in doc:
            raise DocumentError(f"{where}.{key}", "missing")
        out[key] = parse_rational(doc[key], f"{where}.{key}")
    if "k" in others:
        out["k"] = _int(doc.get("k"), f"{where}.k")
    if "indices" in others and "indices" in doc:
        out["indices"] = [_int(v, f"{where}.indices[{i}]") for i, v in enumerate(_list(doc["indices"], f"{where}.indices"))]
    return out


def _params_doc(params: dict) -> dict:
    return {k: rational_str(v) if isinstance(v, Fraction) else v for k, v in params.items()}


def parse_job(doc: Any) -> Job:
    doc = _obj(doc, "document")
    _known_keys(doc, {"command", "surface", "A", "options"}, "")
    command = _str(doc.get("command"), "command")
    if command not in COMMANDS:
        raise DocumentError("command", f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    if command == "verify-example":
        # the example builds its own surface and divisor
        _known_keys(doc, {"command", "options"}, "")
        surface, n, A = None, None, None
    else:
        if "surface" not in doc:
            raise DocumentError("surface", "missing")
        surface = parse_surface(doc["surface"])
        n = surface.n
        A = parse_class(doc["A"], "A", n) if "A" in doc else None
    raw = _obj(doc.get("options", {}), "options")
    _known_keys(raw, _OPTION_KEYS[command], "options")
    options: dict = {}
    if command in ("classify", "fujita"):
        if A is None:
            raise DocumentError("A", f"{command} needs a divisor")
        if "certificate" in raw:
            options["certificate"] = parse_threshold_certificate(raw["certificate"], "options.certificate", n)
    elif command == "verify-certificate":
        if "certificate" not in raw:
            raise DocumentError("options.certificate", "missing")
        options["certificate"] = parse_cylinder_certificate(raw["certificate"], "options.certificate", n, A)
    elif command == "rays":
        kind = _str(raw.get("kind", "minus-one"), "options.kind")
        if kind not in ("minus-one", "minus-two"):
            raise DocumentError("options.kind", "expected \"minus-one\" or \"minus-two\"")
        options["kind"] = kind
    elif command == "verify-example":
        example = _str(raw.get("example"), "options.example")
        if example not in EXAMPLES:
            raise DocumentError("options.example", f"expected one of {', '.join(EXAMPLES)}")
        options["example"] = example
        options["params"] = _parse_params(example, raw.get("params", {}), "options.params")
    return Job(command, surface, A, options)


def job_doc(job: Job) -> dict:
    out: dict = {"command": job.command}
    if job.surface is not None:
        out["surface"] = surface_doc(job.surface)
    if job.A is not None:
        out["A"] = class_doc(job.A)
    opts: dict = {}
    for key, value in job.options.items():
        if isinstance(value, PeThresholdCertificate):
            opts[key] = threshold_certificate_doc(value)
        elif isinstance(value, CylinderCertificate):
            opts[key] = cylinder_certificate_doc(value)
        elif key == "params":
            opts[key] = _params_doc(value)
        else:
            opts[key] = value
    if opts:
        out["options"] = opts
    return out


def dumps(doc: Any, pretty: bool = True) -> str:
    if pretty:
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def loads_job(text: str) -> Job:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("document", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_job(doc)


def dump_job(job: Job, pretty: bool = True) -> str:
    return dumps(job_doc(job), pretty)
