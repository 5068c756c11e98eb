"""Command-line interface.

Exit codes: 0 verified, 1 finding (an expected mathematical violation),
2 invalid system, 3 I/O, parse or usage error, 4 internal identity failure.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import dilation as D
from . import lattice as L
from .crossed import NormalFormError
from .dynsys import InvalidSystemError, simplicity_verdict, validate_system
from .io import InputError, dumps, load_system, one_based, system_to_json
from .scalars import format_fn
from .search import search
from .shilov import (
    BoundaryInvarianceError,
    boundary_invariance_check,
    envelope_criterion,
    shilov_subspace,
    subgroup_compat,
    tower_subspace,
)
from .support_model import compare_kernels

EXIT_OK, EXIT_FINDING, EXIT_INVALID, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


def _load(path: str):
    sys_ = load_system(path)
    report = validate_system(sys_)
    if not report.ok:
        raise InvalidSystemError(report.message)
    return sys_


def _grid(args, sys_):
    spec = sys_.order
    if args.grid is None:
        pts = [spec.zero()] + [spec.unit(i) for i in range(spec.rank)]
    else:
        try:
            pts = L.parse_grid(args.grid, spec)
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad --grid: {exc}") from exc
    return L.grid_closure(pts, spec)


def _fmt_point_set(pts) -> str:
    return "{" + ", ".join("(" + L.format_point(p) + ")" for p in sorted(pts)) + "}"


def _fmt_zero_set(zs) -> str:
    return "{" + ",".join(str(z) for z in one_based(zs)) + "}"


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(dumps(payload))
    else:
        print("\n".join(lines))


def cmd_validate(args) -> int:
    sys_ = load_system(args.system)
    report = validate_system(sys_)
    payload = {"valid": report.ok, "message": report.message}
    lines = [report.message]
    if report.ok:
        per = [{"index": c, "period": p} for c, p in sys_.periodicity_data]
        payload["periodicity"] = per
        lines.append("periodicity (index, period): " + ", ".join(f"({c}, {p})" for c, p in sys_.periodicity_data))
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_dilation_check(args) -> int:
    sys_ = _load(args.system)
    radius = max(2, sys_.max_window)
    if args.box_radius is not None:
        if args.box_radius < sys_.max_window:
            raise UsageError(
                f"--box-radius {args.box_radius} is below the periodicity bound {sys_.max_window}"
            )
        radius = args.box_radius
    report = D.verify_nica_axioms(sys_, radius)
    grid = sorted(_grid(args, sys_))
    elems = [D.basis_element(sys_, g, z) for g in grid for z in range(sys_.points)]
    spec = sys_.order
    lo = tuple(a - 1 for a in L.meet_all(grid, spec))
    hi = tuple(a + w for a, w in zip(L.join_all(grid, spec), sys_.window))
    box = L.enum_box(lo, hi, spec)
    ok_grid = all(D.product_oracle_holds(x, y, box) for x in elems for y in elems)
    checks = list(report.checks) + [
        D.Check("entrywise product oracle on grid", ok_grid, f"{len(elems) ** 2} pairs")
    ]
    passed = all(c.passed for c in checks)
    payload = {
        "radius": radius,
        "grid": [L.format_point(g) for g in grid],
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
        "passed": passed,
    }
    lines = [f"box radius {radius}, grid {_fmt_point_set(grid)}"]
    lines += [f"[{'PASS' if c.passed else 'FAIL'}] {c.name} ({c.detail})" for c in checks]
    _emit(args, payload, lines)
    return EXIT_OK if passed else EXIT_INTERNAL


def cmd_shilov(args) -> int:
    sys_ = _load(args.system)
    grid = _grid(args, sys_)
    sub = shilov_subspace(sys_, grid)
    inv = boundary_invariance_check(sub)
    _, tower = tower_subspace(sys_, grid)
    agree = tower == sub.subspace
    basis = [D.format_element(b) for b in sub.basis]
    payload = {
        "grid": [L.format_point(g) for g in sub.grid],
        "dimension": sub.dimension,
        "basis": basis,
        "checks": {"boundary": inv.boundary, "invariance": inv.invariance, "oracle_agreement": agree},
    }
    lines = [f"grid {_fmt_point_set(sub.grid)}", f"boundary subspace dimension {sub.dimension}"]
    for k, b in enumerate(sub.basis, 1):
        terms = "  ".join(f"[{L.format_point(g)}] {format_fn(a)}" for g, a in sorted(b.coeffs.items()))
        lines.append(f"  basis {k}: {terms}")
    lines.append(f"meets iota(A) trivially: {'yes' if inv.boundary else 'no'}")
    lines.append(f"shift invariant: {'yes' if inv.invariance else 'no'}")
    lines.append(f"agrees with the ideal tower: {'yes' if agree else 'NO'}")
    _emit(args, payload, lines)
    return EXIT_OK if agree else EXIT_FINDING


def cmd_envelope_report(args) -> int:
    sys_ = _load(args.system)
    r = envelope_criterion(sys_)
    payload = {
        "is_envelope": r.is_envelope,
        "families_checked": r.checked,
    }
    if r.is_envelope:
        lines = ["product cover is the C*-envelope: every K_F examined is essential"]
    else:
        payload["witness"] = {
            "F": [L.format_point(g) for g in r.witness],
            "kernel_zero_set": one_based(r.kernel_zero_set),
            "annihilator_zero_set": one_based(r.annihilator_zero_set),
        }
        lines = [
            f"product cover is NOT the C*-envelope; witness F={_fmt_point_set(r.witness)}",
            f"K_F vanishes on {_fmt_zero_set(r.kernel_zero_set)}; its annihilator vanishes on "
            f"{_fmt_zero_set(r.annihilator_zero_set)} and is nonzero",
        ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_kernel_compare(args) -> int:
    sys_ = _load(args.system)
    if sys_.order.kind != "product":
        raise UsageError("dfk-compare needs a product-order system")
    grid = _grid(args, sys_)
    r = compare_kernels(sys_, grid)
    payload = {
        "grid": [L.format_point(g) for g in r.grid],
        "supports": [{"S": [i + 1 for i in S], "zero_set": one_based(zs)} for S, zs in r.supports],
        "kernel_dim": r.kernel_dim,
        "tower_dim": r.tower_dim,
        "agreement": r.agreement,
    }
    lines = [f"grid {_fmt_point_set(r.grid)}"]
    for S, zs in r.supports:
        lines.append(f"  support {{{','.join(str(i + 1) for i in S)}}}: Q vanishes on {_fmt_zero_set(zs)}")
    lines.append(f"comparison kernel dimension {r.kernel_dim}, ideal tower dimension {r.tower_dim}")
    if r.agreement:
        lines.append("kernels agree")
    else:
        payload["witness"] = D.format_element(r.witness)
        lines.append(f"kernels DIFFER; witness {r.witness!r}")
    _emit(args, payload, lines)
    return EXIT_OK if r.agreement else EXIT_FINDING


def cmd_subgroup_compat(args) -> int:
    sys_ = _load(args.system)
    if not args.subgroup:
        raise UsageError("--subgroup is required (coord:i or index:k)")
    grid = None
    if args.grid is not None:
        try:
            grid = L.parse_grid(args.grid, L.OrderSpec.chain([1]))
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad --grid (subgroup coordinates are integers): {exc}") from exc
    try:
        r = subgroup_compat(sys_, args.subgroup, grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {
        "subgroup": r.subgroup,
        "grid": [L.format_point(g) for g in r.grid],
        "isometric": r.isometric,
        "subgroup_dim": r.sub_dim,
        "restricted_dim": r.full_dim,
        "J_in_I": r.sub_in_full,
        "I_in_J": r.full_in_sub,
        "compatible": r.compatible,
    }
    verdict = "holds" if r.compatible else "FAILS"
    lines = [
        f"subgroup {r.subgroup}, grid {_fmt_point_set(r.grid)} (subgroup coordinates)",
        f"sup-norms agree on {r.norm_checks} probe elements: {'yes' if r.isometric else 'NO'}",
        f"subgroup boundary subspace J: dimension {r.sub_dim}; I restricted: dimension {r.full_dim}",
        f"direct-limit compatibility (J = I ∩ C) {verdict}",
    ]
    if r.witness is not None:
        payload["witness"] = D.format_element(r.witness)
        lines.append(f"witness element: {r.witness!r}")
    if r.violation is not None:
        h, entry, why = r.violation
        payload["violation"] = {"h": L.format_point(h), "entry": format_fn(entry), "reason": why}
        lines.append(f"offending entry at {L.format_point(h)}: {format_fn(entry)} ({why})")
    _emit(args, payload, lines)
    if not r.isometric:
        return EXIT_INTERNAL
    return EXIT_OK if r.compatible else EXIT_FINDING


def cmd_simplicity(args) -> int:
    sys_ = _load(args.system)
    r = simplicity_verdict(sys_)
    v, w = r.maps.witness
    payload = {
        "verdict": r.verdict,
        "minimal": r.minimality.minimal,
        "distinct_maps": r.maps.distinct,
        "collision": [L.format_point(v), L.format_point(w)],
    }
    lines = [r.verdict]
    if r.minimality.minimal:
        lines.append("system is minimal")
    else:
        payload["invariant_subset"] = one_based(r.minimality.witness)
        lines.append(f"not minimal: {_fmt_zero_set(r.minimality.witness)} is a proper invariant subset")
    lines.append(f"exponent collision: phi^({L.format_point(v)}) = phi^({L.format_point(w)})")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_search(args) -> int:
    if args.points is None or args.rank is None or args.target is None:
        raise UsageError("search needs --target, --points and --rank")
    try:
        r = search(args.target, args.points, args.rank, args.seed, args.bijective, args.max_hits)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    mode = "exhaustive" if r.exhaustive else f"sampled (seed {args.seed})"
    hits = []
    for h in r.hits:
        w = {}
        for k, v in h.witness.items():
            if isinstance(v, D.DilationElement):
                w[k] = D.format_element(v)
            elif k == "violation":
                w[k] = {"h": L.format_point(v[0]), "entry": format_fn(v[1]), "reason": v[2]}
            elif k == "eventual_image":
                w[k] = one_based(v)
            elif k == "function":
                w[k] = format_fn(v)
            else:
                w[k] = v
        hits.append({"system": system_to_json(h.system), "witness": w})
    payload = {
        "target": r.target, "points": r.points, "rank": r.rank, "mode": mode,
        "space_size": r.space_size, "examined": r.examined, "hits": hits,
    }
    lines = [f"search {r.target}: {r.points} points, rank {r.rank}, {mode} over {r.space_size} candidates"]
    lines.append(f"examined {r.examined}")
    if not hits:
        lines.append("no hit")
    for k, h in enumerate(hits, 1):
        lines.append(f"hit {k}:")
        lines.append(dumps(h["system"]))
        lines.append("witness: " + dumps(h["witness"]))
    _emit(args, payload, lines)
    return EXIT_FINDING if hits else EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "dilation-check": cmd_dilation_check,
    "shilov": cmd_shilov,
    "envelope-report": cmd_envelope_report,
    "dfk-compare": cmd_kernel_compare,
    "subgroup-compat": cmd_subgroup_compat,
    "simplicity": cmd_simplicity,
    "search": cmd_search,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="semicross",
        description="Exact dilations, boundary ideals and envelopes for finite dynamical systems.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        c = sub.add_parser(name)
        if name != "search":
            c.add_argument("system", help="system file (JSON)")
        c.add_argument("--grid", help='grid literal, e.g. "0,0;1,0;0,1"')
        c.add_argument("--json", action="store_true", help="machine-readable output")
        if name == "dilation-check":
            c.add_argument("--box-radius", type=int)
        if name == "subgroup-compat":
            c.add_argument("--subgroup", help="coord:i or index:k")
        if name == "search":
            c.add_argument("--target", choices=["prop68", "boundary", "drift"])
            c.add_argument("--points", type=int)
            c.add_argument("--rank", type=int)
            c.add_argument("--seed", type=int, default=0)
            c.add_argument("--bijective", action="store_true", help="only bijective maps")
            c.add_argument("--max-hits", type=int, default=3)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except InvalidSystemError as exc:
        print(f"invalid system: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InputError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NormalFormError, BoundaryInvarianceError) as exc:
        print(f"internal identity failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
