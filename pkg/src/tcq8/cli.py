"""Command line: ``tcq8 <stage> [options]`` or ``tcq8 --revalidate cert.json``.

Exit status is 0 when every executed check passes, 1 on a mathematical
failure and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import certificate as certmod
from . import twisted as tw
from .barres import BarComplex, bar_betti_numbers, ring_relation_witnesses
from .chains import write_coordinate
from .coring import certify_lower_bounds
from .errors import ConstructionRejected, InvalidInput, InvalidParameter
from .fingroup import quaternion_group
from .fujii import build_fujii_complex, format_table, homology_table, table_mismatches

log = logging.getLogger("tcq8")


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False))


def cmd_verify_all(args) -> int:
    cert = certmod.build_certificate(
        n=args.n,
        m=args.m,
        fiber_dim=args.fiber_dim,
        max_dim=args.max_total_dim,
        skip_solve=args.skip_solve,
        expect_unsolvable=args.expect_unsolvable,
    )
    text = certmod.dumps(cert)
    out = Path(args.out)
    out.write_text(text, encoding="utf-8")
    if args.export is not None:
        cx = tw.build_twisted_complex(args.fiber_dim, args.max_total_dim)
        path = out.with_suffix(f".d{args.export}.coo")
        with open(path, "w") as fh:
            write_coordinate(cx.boundary_mod2(args.export), fh)
        print(f"wrote {path}")
    for name, st in cert["stages"].items():
        flag = "skipped" if st["skipped"] else ("pass" if st["passed"] else "FAIL")
        print(f"{name:<22} {flag}")
    print(f"conclusion: {cert['logic_chain']['conclusion']}")
    print(f"certificate written to {out}")
    if cert["failed_stages"]:
        print("failed stages: " + ", ".join(cert["failed_stages"]))
        return 1
    return 0


def cmd_homology(args) -> int:
    table = homology_table(args.n, args.m)
    print(f"N^{args.n}({args.m})")
    if args.coeff == "all":
        print(format_table(table))
    elif args.coeff == "Z":
        for k, (h, c) in enumerate(zip(table["homology"], table["cohomology"])):
            print(f"{k:>3}  H_k = {str(h):<14} H^k = {c}")
    else:
        for k, b in enumerate(table["cohomology_F2"]):
            print(f"{k:>3}  dim H^k(F2) = {b}")
    bad = table_mismatches(args.n, args.m)
    for b in bad:
        print("mismatch:", b)
    return 1 if bad else 0


def cmd_ring_relations(args) -> int:
    bar = BarComplex(quaternion_group(), args.max_total_dim)
    facts = ring_relation_witnesses(bar)
    if args.max_total_dim >= 7:
        facts["bar_betti_0_6"] = bar_betti_numbers(bar, 6)
    _print_json(facts)
    return 0 if facts["passed"] else 1


def cmd_lower_bound(args) -> int:
    lb = certify_lower_bounds()
    _print_json({"cat_lower_bound": lb.cat_lb, "tc_lower_bound": lb.tc_lb, **lb.witnesses})
    return 0 if lb.passed else 1


def cmd_twisted(args) -> int:
    res = tw.resolve_boundary_rule(tw.DEFAULT_FIBER_CUTOFF, args.max_total_dim)
    print(f"verbatim rule passes the gates: {res.verbatim_passed}")
    v = res.checks[0]
    print(f"  base projection: {v.rule.base_projection()}")
    print(f"candidates checked: {len(res.checks)}, surviving: {len(res.survivors)}")
    print(f"survivors give identical complexes: {res.survivors_identical}")
    print(res.accepted)
    cx = tw.build_twisted_complex(args.fiber_dim, args.max_total_dim, res.accepted)
    print(f"cell counts (fiber cut-off {args.fiber_dim}): {cx.cell_counts()}")
    if args.solve:
        r = tw.solve_main(cx, refute=True)
        print(f"delta u = w: {r.outcome.status} (equations {r.n_equations}, unknowns {r.n_unknowns}, rank {r.outcome.rank})")
        if r.u is not None:
            print(f"  witness |u| = {len(r.u)}, verified: {r.verified}")
            ok = bool(r.verified)
        else:
            print(f"  refuting 6-cycle of {len(r.refuting_cycle)} cells, verified: {r.refutation_verified}")
            ok = bool(r.refutation_verified)
        expect_solvable = not args.expect_unsolvable
        return 0 if ok and r.solvable == expect_solvable else 1
    return 0


def cmd_solve_eqa(args) -> int:
    res = tw.resolve_boundary_rule()
    cx = tw.TwistedComplex(res.accepted, tw.DEFAULT_FIBER_CUTOFF, 4)
    out = tw.solve_eqA(cx)
    print(out["status"])
    print(f"equations {out['equations']}, unknowns {out['unknowns']}, rank {out['rank']}")
    if out["status"] == "solvable":
        print(f"witness of {len(out['witness'])} cells, verified: {out['witness_verified']}")
        return 0 if out["witness_verified"] else 1
    print(f"refuting 4-cycle of {len(out['refuting_chain'])} cells, verified: {out['refutation_verified']}")
    return 1


def cmd_export_matrix(args) -> int:
    if args.target == "fujii":
        cx = build_fujii_complex(args.n, args.m)
        M = cx.boundary(args.dim)
    elif args.target == "bar":
        cx = BarComplex(quaternion_group(), max(args.dim, 1))
        M = cx.boundary(args.dim)
    else:
        cx = tw.build_twisted_complex(args.fiber_dim, args.max_total_dim)
        M = cx.boundary_mod2(args.dim)
    if not 1 <= args.dim <= cx.top_dim:
        raise InvalidParameter(f"--dim must lie in 1..{cx.top_dim}")
    if args.out == "-":
        write_coordinate(M, sys.stdout)
    else:
        with open(args.out, "w") as fh:
            write_coordinate(M, fh)
        print(f"wrote {args.out} ({M.shape[0]} x {M.shape[1]})")
    return 0


def cmd_revalidate(path: str) -> int:
    cert = json.loads(Path(path).read_text(encoding="utf-8"))
    checks = certmod.revalidate(cert)
    for k, v in checks.items():
        print(f"{k:<24} {'ok' if v else 'FAIL'}")
    return 0 if all(checks.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tcq8", description="Certify TC(S^3/Q8) = 6 by exact mod-2 computation.")
    p.add_argument("--revalidate", metavar="CERT", help="recheck the witnesses stored in a certificate")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command")

    def common(sp, nm=False, fiber=False):
        if nm:
            sp.add_argument("--n", type=int, default=0)
            sp.add_argument("--m", type=int, default=2)
        if fiber:
            sp.add_argument("--fiber-dim", type=int, choices=(5, 6), default=5)
        sp.add_argument("--max-total-dim", type=int, default=7)

    va = sub.add_parser("verify-all", help="run every stage and write a certificate")
    common(va, nm=True, fiber=True)
    va.add_argument("--out", default="certificate.json")
    va.add_argument("--export", type=int, metavar="DIM", help="also export the twisted boundary of this degree")
    va.add_argument("--skip-solve", action="store_true")
    va.add_argument("--expect-unsolvable", action="store_true", help="at --fiber-dim 6, expect delta u = w to be inconsistent")
    va.set_defaults(func=cmd_verify_all)

    h = sub.add_parser("homology", help="(co)homology of N^n(m)")
    h.add_argument("--n", type=int, default=0)
    h.add_argument("--m", type=int, default=2)
    h.add_argument("--coeff", choices=("Z", "F2", "all"), default="all")
    h.set_defaults(func=cmd_homology)

    r = sub.add_parser("ring-relations", help="bar-level witnesses for the ring structure")
    r.add_argument("--max-total-dim", type=int, default=7)
    r.set_defaults(func=cmd_ring_relations)

    lb = sub.add_parser("lower-bound", help="cup-length and zero-divisor lower bounds")
    lb.set_defaults(func=cmd_lower_bound)

    t = sub.add_parser("twisted", help="boundary rule resolution and the main solve")
    common(t, fiber=True)
    t.add_argument("--solve", action="store_true")
    t.add_argument("--expect-unsolvable", action="store_true")
    t.set_defaults(func=cmd_twisted)

    e = sub.add_parser("solve-eqa", help="solve delta u' = x-pullback on the 3- and 4-cells")
    e.set_defaults(func=cmd_solve_eqa)

    x = sub.add_parser("export-matrix", help="write a boundary matrix in coordinate format")
    common(x, nm=True, fiber=True)
    x.add_argument("--dim", type=int, required=True)
    x.add_argument("--target", choices=("fujii", "bar", "twisted"), default="twisted")
    x.add_argument("--out", default="-")
    x.set_defaults(func=cmd_export_matrix)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        if args.revalidate:
            return cmd_revalidate(args.revalidate)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 2
        if getattr(args, "max_total_dim", 7) < 4:
            raise InvalidParameter("--max-total-dim must be at least 4")
        return args.func(args)
    except (InvalidParameter, InvalidInput) as exc:
        print(f"tcq8: error: {exc}", file=sys.stderr)
        return 2
    except (ConstructionRejected, AssertionError) as exc:
        print(f"tcq8: failure: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"tcq8: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
