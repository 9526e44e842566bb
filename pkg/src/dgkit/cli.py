"""Command-line front end.

Every subcommand reads JSON from a file ("-" for stdin) and writes a JSON
report to stdout.  Exit codes: 0 success, 1 domain error, 2 property
failure (harness), 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import model, serialize
from .complexes import cohomology, ext_dim
from .dold_kan import binomial_level_dims, denormalize, normalize, roundtrip_iso
from .errors import DomainError, NotAComplex
from .filtered import filtered_ext_dim
from .grassmann import shadow_flag, shadow_grass, validate_flag_point, validate_grass_point
from .harness import Budget, run_suite
from .mapping import mapping_space
from .model import lift_square

USAGE_EXIT = 64
DOMAIN_EXIT = 1
PROPERTY_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(USAGE_EXIT)


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON: {exc}") from None


def _emit(payload: Any) -> None:
    sys.stdout.write(serialize.dumps(payload) + "\n")


def _cmd_cohomology(args) -> int:
    c = serialize.parse_complex(_read_json(args.complex))
    h = cohomology(c)
    degrees = range(c.lo, c.hi + 1) if c.dims else ()
    _emit({"H": {str(n): h.dim(n) for n in degrees}})
    return 0


def _cmd_ext(args) -> int:
    m = serialize.parse_complex(_read_json(args.source))
    n = serialize.parse_complex(_read_json(args.target))
    _emit({"dim": ext_dim(m, n, args.i)})
    return 0


def _cmd_map_space(args) -> int:
    m = serialize.parse_complex(_read_json(args.source))
    n = serialize.parse_complex(_read_json(args.target))
    s = mapping_space(m, n, args.level)
    _emit({"levels": {str(lvl): s.dim(lvl) for lvl in range(s.top_level + 1)}})
    return 0


def _cmd_model_check(args) -> int:
    f = serialize.parse_chain_map(_read_json(args.map))
    from .complexes import is_quasi_iso

    _emit({
        "fibration": model.is_fibration(f),
        "trivial_fibration": model.is_trivial_fibration(f),
        "cofibration": model.is_cofibration(f),
        "trivial_cofibration": model.is_trivial_cofibration(f),
        "quasi_isomorphism": is_quasi_iso(f),
    })
    return 0


def _cmd_lift(args) -> int:
    square = _read_json(args.square)
    if not isinstance(square, dict):
        raise DomainError("lift input must be an object with i, p, f, g")
    i = serialize.parse_chain_map(square.get("i"), "$.i")
    p = serialize.parse_chain_map(square.get("p"), "$.p")
    f = serialize.parse_chain_map(square.get("f"), "$.f")
    g = serialize.parse_chain_map(square.get("g"), "$.g")
    h = lift_square(i, p, f, g)
    _emit({"lift": serialize.chain_map_to_json(h) if h is not None else None})
    return 0


def _cmd_factor(args) -> int:
    f = serialize.parse_chain_map(_read_json(args.map))
    if args.kind == "trivcof-fib":
        first, second = model.factor_trivcof_fib(f)
    else:
        first, second = model.factor_cof_trivfib(f)
    _emit({"first": serialize.chain_map_to_json(first),
           "second": serialize.chain_map_to_json(second)})
    return 0


def _cmd_rees(args) -> int:
    from .rees import rees

    m = serialize.parse_filtered(_read_json(args.filtered))
    _emit(serialize.graded_to_json(rees(m)))
    return 0


def _cmd_phi(args) -> int:
    from .rees import phi

    g = serialize.parse_graded(_read_json(args.graded))
    _emit(serialize.filtered_to_json(phi(g)))
    return 0


def _cmd_rees_audit(args) -> int:
    from .rees import rees_fibration_audit

    p = serialize.parse_filtered_map(_read_json(args.map))
    _emit({"ok": rees_fibration_audit(p)})
    return 0


def _cmd_dold_kan(args) -> int:
    v = serialize.parse_complex(_read_json(args.complex))
    s = denormalize(v, args.level)
    try:
        roundtrip_iso(v, args.level)
        roundtrip_ok = True
    except NotAComplex:
        roundtrip_ok = False
    nv = normalize(s)
    _emit({
        "levels": {str(n): s.dim(n) for n in range(s.top_level + 1)},
        "binomial": binomial_level_dims(v, args.level),
        "identities_ok": s.simplicial_identities_hold(),
        "roundtrip_ok": roundtrip_ok,
        "normalized": {str(-n): nv.dim(n) for n in nv.support()},
    })
    return 0


def _cmd_grass_shadow(args) -> int:
    p = serialize.parse_grass_point(_read_json(args.point))
    ok, problems = validate_grass_point(p)
    if not ok:
        _emit({"valid": False, "problems": problems})
        return DOMAIN_EXIT
    s = shadow_grass(p)
    _emit({"valid": True,
           "shadow": {str(i): {"dim": s.dim(i),
                               "basis": serialize.matrix_to_json(s.basis[i])}
                      for i in sorted(s.basis)}})
    return 0


def _cmd_flag_shadow(args) -> int:
    p = serialize.parse_flag_point(_read_json(args.point))
    ok, problems = validate_flag_point(p)
    if not ok:
        _emit({"valid": False, "problems": problems})
        return DOMAIN_EXIT
    shadows = shadow_flag(p)
    _emit({"valid": True,
           "levels": [{str(i): {"dim": sh.dim(i),
                                "basis": serialize.matrix_to_json(sh.basis[i])}
                       for i in sorted(sh.basis)} for sh in shadows]})
    return 0


def _cmd_harness(args) -> int:
    budget = Budget(max_dim=args.max_dim, deg_lo=args.deg_lo, deg_hi=args.deg_hi,
                    length=args.length)
    report = run_suite(args.suite, args.seed, args.count, budget)
    _emit(report)
    return 0 if report["ok"] else PROPERTY_EXIT


def build_parser() -> _Parser:
    parser = _Parser(prog="dgkit",
                     description="Exact homotopy computations with (filtered) complexes over Q")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", help="per-degree cohomology dimensions")
    p.add_argument("complex")
    p.set_defaults(fn=_cmd_cohomology)

    p = sub.add_parser("ext", help="Ext group dimension")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(fn=_cmd_ext)

    p = sub.add_parser("map-space", help="mapping space level dimensions")
    p.add_argument("--level", type=int, default=3)
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(fn=_cmd_map_space)

    p = sub.add_parser("model-check", help="all model-structure predicates of a map")
    p.add_argument("map")
    p.set_defaults(fn=_cmd_model_check)

    p = sub.add_parser("lift", help="solve a lifting square {i, p, f, g}")
    p.add_argument("square")
    p.set_defaults(fn=_cmd_lift)

    p = sub.add_parser("factor", help="factor a chain map")
    p.add_argument("--kind", choices=["trivcof-fib", "cof-trivfib"], default="trivcof-fib")
    p.add_argument("map")
    p.set_defaults(fn=_cmd_factor)

    p = sub.add_parser("rees", help="Rees construction of a filtered complex")
    p.add_argument("filtered")
    p.set_defaults(fn=_cmd_rees)

    p = sub.add_parser("phi", help="left adjoint of the Rees construction")
    p.add_argument("graded")
    p.set_defaults(fn=_cmd_phi)

    p = sub.add_parser("rees-audit", help="fibration preservation audit of a filtered map")
    p.add_argument("map")
    p.set_defaults(fn=_cmd_rees_audit)

    p = sub.add_parser("dold-kan", help="denormalize and check the round trip")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("complex")
    p.set_defaults(fn=_cmd_dold_kan)

    p = sub.add_parser("grass-shadow", help="validate a point and compute its shadow")
    p.add_argument("point")
    p.set_defaults(fn=_cmd_grass_shadow)

    p = sub.add_parser("flag-shadow", help="validate a flag point and compute its shadows")
    p.add_argument("point")
    p.set_defaults(fn=_cmd_flag_shadow)

    p = sub.add_parser("harness", help="run a registered property suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-dim", dest="max_dim", type=int, default=4)
    p.add_argument("--deg-lo", dest="deg_lo", type=int, default=-3)
    p.add_argument("--deg-hi", dest="deg_hi", type=int, default=3)
    p.add_argument("--length", type=int, default=3)
    p.set_defaults(fn=_cmd_harness)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_EXIT
    try:
        return args.fn(args)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return DOMAIN_EXIT


if __name__ == "__main__":
    sys.exit(main())
