"""Command line interface: ``dqsym <verb> ...``.

Exit status is 0 on success, 2 on invalid arguments, 1 on internal failure
(and for ``verify`` when any check fails).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bases import expand, to_G_expansion
from .bicomp import GenBicomp, VarRef
from .hilbert import (
    CACHE_ENV,
    ComponentCache,
    dim_quotient,
    enumerate_hilbert_basis,
    hilbert_matrix,
    normal_form,
    verify_second_column,
)
from .phimap import PhiPreimage, Phi_forward, expand_XF_in_G, in_img_Phi, mul_var_G, phi, phi_inv
from .polyring import ComponentKey, Polynomial


class UsageError(Exception):
    """Bad user input; reported with exit status 2."""


def _bicomp_arg(text: str) -> GenBicomp:
    try:
        return GenBicomp.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _var_arg(text: str) -> VarRef:
    try:
        return VarRef.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _natural(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _check_length(name: str, g: GenBicomp, n: int) -> None:
    if len(g) > n:
        raise UsageError(f"argument {name}: {g} has length {len(g)} > n={n}")


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _cache_from(args) -> Optional[ComponentCache]:
    directory = getattr(args, "cache", None) or os.environ.get(CACHE_ENV)
    return ComponentCache(directory) if directory else None


def cmd_expand(args) -> int:
    if args.basis in ("M", "F") and not args.index.is_bicomposition:
        raise UsageError(f"argument --index: {args.index} is not a bicomposition (required for {args.basis})")
    _check_length("--index", args.index, args.n)
    poly = expand(args.basis, args.index, args.n)
    if args.as_ == "G":
        doc = to_G_expansion(poly, args.n).to_json()
    else:
        doc = poly.to_json()
    doc.update({"basis": args.basis, "index": str(args.index), "n": args.n, "as": args.as_})
    _emit(doc)
    return 0


def cmd_phi(args) -> int:
    v, e = args.var, args.index
    try:
        expansion = mul_var_G(v, e)
    except ValueError as exc:
        raise UsageError(f"argument --index: {exc}") from None
    _emit({"var": str(v), "index": str(e), "phi": str(phi(v, e)), "expansion": expansion.to_json()})
    return 0


def cmd_phi_inv(args) -> int:
    back = phi_inv(args.index)
    if back is None:
        _emit({"index": str(args.index), "preimage": None})
    else:
        v, e = back
        _emit({"index": str(args.index), "preimage": {"var": str(v), "index": str(e)}})
    return 0


def cmd_big_phi(args) -> int:
    if not args.beta.is_bicomposition or args.beta.size < 1:
        raise UsageError(f"argument --beta: {args.beta} must be a nonzero bicomposition")
    pre = PhiPreimage(args.alpha, args.beta)
    _emit({
        "alpha": str(pre.alpha),
        "beta": str(pre.beta),
        "image": str(Phi_forward(pre)),
        "expansion": expand_XF_in_G(pre).to_json(),
    })
    return 0


def cmd_member(args) -> int:
    pre = in_img_Phi(args.index)
    _emit({
        "index": str(args.index),
        "in_image": pre is not None,
        "preimage": None if pre is None else {"alpha": str(pre.alpha), "beta": str(pre.beta)},
    })
    return 0


def _load_poly(text: str) -> Polynomial:
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return Polynomial.from_json(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"argument --poly: {exc}") from None


def cmd_nf(args) -> int:
    p = _load_poly(args.poly)
    for m in p:
        _check_length("--poly", m, args.n)
    doc = normal_form(p, args.n).to_json()
    doc["n"] = args.n
    _emit(doc)
    return 0


def cmd_hilbert(args) -> int:
    hm = hilbert_matrix(args.n, _cache_from(args), args.max_total_degree, args.jobs)
    if args.csv:
        sys.stdout.write(hm.to_csv())
    else:
        _emit(hm.to_json())
    return 0


def cmd_basis(args) -> int:
    key = ComponentKey(args.n, args.a, args.b)
    report = dim_quotient(key, _cache_from(args))
    _emit({
        "report": report.to_dict(),
        "basis": [str(g) for g in enumerate_hilbert_basis(key)],
    })
    return 0


def cmd_verify(args) -> int:
    if args.n < 2:
        raise UsageError("argument --n: verify needs n >= 2")
    report = verify_second_column(args.n, _cache_from(args), args.jobs)
    if args.json:
        _emit(report.to_json())
    else:
        sys.stdout.write("\n".join(report.lines()) + "\n")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqsym",
        description="Bicomposition bases, the Phi rewrite map and Hilbert matrices of R_n/I_n.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("expand", help="expand an M, F or G basis element")
    p.add_argument("--basis", choices=["M", "F", "G"], required=True)
    p.add_argument("--index", type=_bicomp_arg, required=True, help='e.g. "2,0;0,2"')
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--as", dest="as_", choices=["mono", "G"], default="mono")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("phi", help="expand v * G_index and report the phi choice")
    p.add_argument("--var", type=_var_arg, required=True, help="x1, y2, ...")
    p.add_argument("--index", type=_bicomp_arg, required=True)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("phi-inv", help="undo one phi step")
    p.add_argument("--index", type=_bicomp_arg, required=True)
    p.set_defaults(func=cmd_phi_inv)

    p = sub.add_parser("big-phi", help="Phi image and G-expansion of X^alpha F_beta")
    p.add_argument("--alpha", type=_bicomp_arg, required=True)
    p.add_argument("--beta", type=_bicomp_arg, required=True)
    p.set_defaults(func=cmd_big_phi)

    p = sub.add_parser("member", help="is G_index in the image of Phi?")
    p.add_argument("--index", type=_bicomp_arg, required=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("nf", help="normal form of a polynomial modulo I_n")
    p.add_argument("--poly", required=True, help="polynomial JSON, or @path to a JSON file")
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("hilbert", help="Hilbert matrix of R_n/I_n")
    p.add_argument("--n", type=_positive, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--cache", help=f"component cache directory (default: ${CACHE_ENV})")
    p.add_argument("--max-total-degree", type=_natural, default=None)
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("basis", help="Hilbert basis and dimension report of one component")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--a", type=_natural, required=True)
    p.add_argument("--b", type=_natural, required=True)
    p.add_argument("--cache")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", help="check the second column of M_n")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--cache")
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dqsym {args.verb}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"dqsym {args.verb}: internal error: {exc!r}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
