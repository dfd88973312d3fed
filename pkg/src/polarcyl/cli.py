"""Command-line front end.

    python -m polarcyl fujita --input job.json --pretty

Each command reads one JSON job document (stdin when ``--input`` is absent)
and writes one JSON report.  Exit status: 0 when the computation succeeded
and every check passed, 1 when a check failed or a violation was found,
2 when the input could not be used.
"""
from __future__ import annotations

import argparse
import json
import sys

from .certify import verify_certificate
from .classify import ClassifyError, classify, explain
from .cone import (
    CertificateModeRequired,
    NotAmple,
    fujita_face,
    fujita_from_certificate,
    verify_pe_threshold_certificate,
)
from .documents import (
    COMMANDS,
    DocumentError,
    Job,
    class_doc,
    cylinder_certificate_doc,
    dumps,
    parse_job,
    rational_str,
    surface_doc,
)
from .families import (
    AuxiliaryParams,
    ParameterError,
    Dp2Params,
    build_auxiliary,
    build_dp2,
    nine_points,
)
from .negcurves import minus_one_classes, minus_two_classes, star_check

OK, FAILED, BAD_INPUT = 0, 1, 2


def _q(v) -> str | None:
    return None if v is None else rational_str(v)


def _report_checks(checks) -> list[dict]:
    return [{"name": c.name, "status": c.status, "detail": c.detail} for c in checks]


def _classify(job: Job) -> tuple[int, dict]:
    v = classify(job.surface, job.A, job.options.get("certificate"))
    out = {
        "status": v.status.value,
        "reason": v.reason.value,
        "n": v.n,
        "K2": rational_str(v.K2),
        "mu": _q(v.mu),
        "r": v.r,
        "r_source": v.r_source,
        "star": v.star,
        "detail": v.detail,
        "explain": explain(v).splitlines(),
    }
    if v.certificate is not None:
        out["certificate"] = cylinder_certificate_doc(v.certificate)
    return OK, out


def _fujita(job: Job) -> tuple[int, dict]:
    spec, A = job.surface, job.A
    cert = job.options.get("certificate")
    if spec.is_general and spec.n == 9:
        if cert is None:
            raise CertificateModeRequired("nine points need options.certificate")
        fd = fujita_from_certificate(spec, A, cert)
    else:
        fd = fujita_face(spec, A)
    return OK, {
        "mu": rational_str(fd.mu),
        "r": fd.r,
        "source": fd.source,
        "face": [class_doc(c) for c in fd.face_classes],
        "K2": rational_str(spec.K2),
    }


def _rays(job: Job) -> tuple[int, dict]:
    kind = job.options.get("kind", "minus-one")
    n = job.surface.n
    if not job.surface.is_general:
        raise DocumentError("surface.model", "rays are enumerated on general-position surfaces only")
    if not 1 <= n <= 8:
        raise DocumentError("surface.n", "rays need 1 <= n <= 8")
    classes = minus_one_classes(n) if kind == "minus-one" else minus_two_classes(n)
    return OK, {"kind": kind, "n": n, "count": len(classes), "classes": [class_doc(c) for c in classes]}


def _star(job: Job) -> tuple[int, dict]:
    rep = star_check(job.surface)
    out = {
        "status": rep.status,
        "reason": rep.reason,
        "violations": [
            {"curve": name, "class": class_doc(cls), "self_intersection": rational_str(sq)}
            for name, cls, sq in rep.violations
        ],
    }
    return (FAILED if rep.status == "violated" else OK), out


def _verify_example(job: Job) -> tuple[int, dict]:
    example = job.options["example"]
    p = job.options["params"]
    if example == "auxiliary":
        built = build_auxiliary(AuxiliaryParams(p["k"], p["eps1"], p["eps2"], p["x"]))
        rep = verify_certificate(built.spec, built.certificate)
        out = {
            "example": example,
            "surface": surface_doc(built.spec),
            "A": class_doc(built.A),
            "residual": class_doc(built.residual),
            "checks": _report_checks(rep.checks),
            "certificate": cylinder_certificate_doc(built.certificate),
        }
        return (OK if rep.accepted and built.residual.is_zero() else FAILED), out
    if example == "nine-points":
        spec, A, cert = nine_points(p["x"], p.get("indices", (1, 2, 3, 4)))
        check = verify_pe_threshold_certificate(spec, A, cert)
        v = classify(spec, A, cert)
        out = {
            "example": example,
            "A": class_doc(A),
            "threshold_certificate": {"valid": check.valid, "failures": list(check.failures)},
            "status": v.status.value,
            "reason": v.reason.value,
            "r": v.r,
        }
        if v.certificate is not None:
            out["certificate"] = cylinder_certificate_doc(v.certificate)
        return (OK if check.valid else FAILED), out
    rep = build_dp2(Dp2Params(p["eps"], p["x"]))
    out = {
        "example": example,
        "A": class_doc(rep.A),
        "checks": [
            {"name": c.name, "passed": c.passed, "required": c.required, "detail": c.detail}
            for c in rep.checks
        ],
        "certificate": cylinder_certificate_doc(rep.certificate),
    }
    return (OK if rep.ok else FAILED), out


def _verify_certificate(job: Job) -> tuple[int, dict]:
    rep = verify_certificate(job.surface, job.options["certificate"])
    out = {"accepted": rep.accepted, "checks": _report_checks(rep.checks)}
    return (OK if rep.accepted else FAILED), out


_HANDLERS = {
    "classify": _classify,
    "fujita": _fujita,
    "rays": _rays,
    "star-check": _star,
    "verify-example": _verify_example,
    "verify-certificate": _verify_certificate,
}


def run(job: Job) -> tuple[int, dict]:
    """Execute a parsed job; returns ``(exit status, report document)``."""
    try:
        code, body = _HANDLERS[job.command](job)
    except DocumentError as exc:
        return BAD_INPUT, {"command": job.command, "error": {"field": exc.field, "message": str(exc)}}
    except NotAmple as exc:
        return BAD_INPUT, {"command": job.command, "error": {"field": "A", "message": str(exc)}}
    except (CertificateModeRequired, ClassifyError, ParameterError) as exc:
        return BAD_INPUT, {"command": job.command, "error": {"field": "options", "message": str(exc)}}
    except ValueError as exc:
        # invalid threshold certificates and similar precondition failures
        return BAD_INPUT, {"command": job.command, "error": {"field": "options", "message": str(exc)}}
    return code, {"command": job.command, **body}


def run_text(command: str | None, text: str) -> tuple[int, dict]:
    """Parse a JSON document and run it.  ``command`` fills in a missing
    ``command`` field and must agree with one that is present."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        err = DocumentError("document", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
        return BAD_INPUT, {"command": command, "error": {"field": err.field, "message": str(err)}}
    if command is not None and isinstance(doc, dict):
        given = doc.setdefault("command", command)
        if given != command:
            err = DocumentError("command", f"document says {given!r} but {command!r} was requested")
            return BAD_INPUT, {"command": command, "error": {"field": err.field, "message": str(err)}}
    try:
        job = parse_job(doc)
    except DocumentError as exc:
        return BAD_INPUT, {"command": command, "error": {"field": exc.field, "message": str(exc)}}
    return run(job)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="polarcyl", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", help="job document (default: stdin)")
    parser.add_argument("--output", help="report destination (default: stdout)")
    parser.add_argument("--pretty", action="store_true", help="indent the report")
    args = parser.parse_args(argv)
    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return BAD_INPUT
    code, report = run_text(args.command, text)
    if "error" in report:
        print(report["error"]["message"], file=sys.stderr)
    payload = dumps(report, pretty=args.pretty)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
