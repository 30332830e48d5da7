"""Command-line front end.

All results go to stdout (or ``--out``) as JSON carrying
``"schema": "lnd-forge/v1"`` and a ``"kind"`` tag; diagnostics go to stderr.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .delta_module import (
    apply_md,
    element_from_json,
    element_to_json,
    in_m0,
    invariant_differential,
    omega_derivation,
    truncated_m0_basis,
)
from .derivation import apply, kernel_basis_to_json, kuroda_delta, mask_from_names, truncated_kernel_basis
from .errors import FormatError, LndError
from .invariant import build_invariant, certificate_from_json, certificate_to_json, verify_certificate
from .kernel_gens import combination_to_json, km_decompose
from .poly import poly_from_json, poly_to_json

SCHEMA = "lnd-forge/v1"

log = logging.getLogger("lndforge")


def _envelope(kind: str, body: dict) -> dict:
    return {"schema": SCHEMA, "kind": kind, **body}


def _read(path: str) -> dict:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: top level must be an object")
    schema = obj.get("schema")
    if schema is not None and schema != SCHEMA:
        raise FormatError(f"{path}: unsupported schema {schema!r}")
    return obj


def _kind(obj: dict) -> str:
    if "kind" in obj:
        return obj["kind"]
    if "terms" in obj:
        return "polynomial"
    if "steps" in obj:
        return "certificate"
    return "module_element"


def cmd_invariant(args) -> tuple[dict, int]:
    cert = build_invariant(args.n, args.ell)
    log.info("built certificate: %d steps, %d terms in G", len(cert.steps), len(cert.G))
    return _envelope("certificate", certificate_to_json(cert)), 0


def cmd_verify(args) -> tuple[dict, int]:
    obj = _read(args.inp)
    cert = certificate_from_json(obj)
    bad = verify_certificate(cert)
    for name in bad:
        log.info("violated: %s", name)
    return _envelope("verification", {"ok": not bad, "violations": bad}), 0 if not bad else 1


def cmd_decompose(args) -> tuple[dict, int]:
    h = poly_from_json(_read(args.inp))
    return _envelope("kernel_combination", combination_to_json(km_decompose(h))), 0


def cmd_oracle(args) -> tuple[dict, int]:
    if args.target == "m0":
        if args.mask:
            raise FormatError("--mask applies to the kernel oracle only")
        basis = truncated_m0_basis(omega_derivation(args.n), args.deg)
        body = {"n": args.n, "degree_bound": args.deg, "elements": [element_to_json(e) for e in basis]}
        return _envelope("m0_basis", body), 0
    mask = mask_from_names(args.n, args.mask.split(",")) if args.mask else None
    kb = truncated_kernel_basis(kuroda_delta(args.n), args.deg, mask)
    log.info("kernel basis: %d elements", len(kb))
    return _envelope("kernel_basis", {"n": args.n, **kernel_basis_to_json(kb)}), 0


def cmd_m0(args) -> tuple[dict, int]:
    e = invariant_differential(args.n, args.ell)
    rep = in_m0(omega_derivation(args.n), e)
    body = {
        "n": args.n,
        "ell": args.ell,
        "element": element_to_json(rep.element),
        "image": element_to_json(rep.image),
        "in_m0": rep.in_m0,
    }
    return _envelope("m0_report", body), 0


def cmd_apply(args) -> tuple[dict, int]:
    obj = _read(args.inp)
    kind = _kind(obj)
    if kind == "polynomial":
        p = poly_from_json(obj)
        return _envelope("polynomial", poly_to_json(apply(kuroda_delta(p.n), p))), 0
    if kind == "module_element":
        n = obj.get("n")
        coeffs = obj.get("coeffs", {k: v for k, v in obj.items() if k.startswith("d")})
        e = element_from_json(coeffs, n)
        image = apply_md(omega_derivation(e.n), e)
        return _envelope("module_element", {"n": e.n, "coeffs": element_to_json(image)}), 0
    raise FormatError(f"cannot apply a derivation to a {kind!r} file")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--verbose", action="store_true", help="progress on stderr")

    parser = argparse.ArgumentParser(prog="lnd-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", parents=[common], help="build an invariant certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("verify", parents=[common], help="recheck a certificate file")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], help="decompose a kernel polynomial")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("oracle", parents=[common], help="degree-truncated kernel or M0 basis")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--target", choices=["kernel", "m0"], default="kernel")
    p.add_argument("--mask", help="comma-separated variables, e.g. x2,x3,y2")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("m0", parents=[common], help="differential of an invariant and its image")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_m0)

    p = sub.add_parser("apply", parents=[common], help="apply delta or delta_M to a file")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_apply)
    return parser


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    handler = None
    if args.verbose:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.INFO)
    try:
        return _dispatch(parser, args)
    finally:
        if handler is not None:
            log.removeHandler(handler)
            log.setLevel(logging.NOTSET)


def _dispatch(parser, args) -> int:
    for name in ("n", "ell", "deg"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            parser.error(f"--{name} must be non-negative")
    try:
        payload, code = args.func(args)
    except LndError as exc:
        _emit({"error": exc.code, "message": str(exc)}, None)
        return 1
    except (ValueError, IndexError) as exc:
        _emit({"error": "invalid_argument", "message": str(exc)}, None)
        return 1
    except OSError as exc:
        _emit({"error": "io_error", "message": str(exc)}, None)
        return 1
    _emit(payload, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
