"""Command-line front door: ``engel-lab analyze|verify|search``.

JSON is the contract; ``--format text`` prints a short human summary.
Exit codes: 0 ok, 1 check failure, 2 usage, 3 capacity.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import DEFAULT_MAX_N, DEFAULT_SAMPLES, DEFAULT_SEED, RunConfig, default_cap
from .errors import CapacityError, EngelLabError, UsageError
from .group import FiniteGroup, closure
from .specs import parse_group_spec
from .verify import (
    SEARCH_PREDICATES,
    GroupContext,
    Skip,
    load_zoo,
    resolve_suite,
    run_check,
    search_report,
)


def _labels(G: FiniteGroup, mask_or_elements) -> list[str]:
    arr = np.asarray(mask_or_elements)
    idx = np.flatnonzero(arr) if arr.dtype == bool else np.sort(arr)
    return [G.labels[int(i)] for i in idx]


def structure_json(ctx: GroupContext) -> dict:
    G, S = ctx.G, ctx.structure
    rad = S.radicals
    return {
        "order": S.order,
        "abelian": S.abelian,
        "nilpotent": S.nilpotent,
        "soluble": S.soluble,
        "nilpotency_class": S.nilpotency_class,
        "derived_length": S.derived_length,
        "exponent": int(G.exponent),
        "upper_central_orders": [t.order for t in S.upper_central.terms],
        "lower_central_orders": [t.order for t in S.lower_central.terms],
        "derived_orders": [t.order for t in S.derived.terms],
        "center": _labels(G, G.center_mask),
        "hypercenter": _labels(G, S.hypercenter.mask),
        "radicals": {
            "fitting": _labels(G, rad.fitting.mask),
            "baer": _labels(G, rad.baer.mask),
            "gruenberg": _labels(G, rad.gruenberg.mask),
            "hirsch_plotkin": _labels(G, rad.hirsch_plotkin.mask),
        },
    }


def engel_json(ctx: GroupContext) -> dict:
    G = ctx.G
    E = ctx.engel
    L2 = E.L(2)
    return {
        "max_n": E.max_n,
        "L": {str(n): _labels(G, E.L(n)) for n in range(1, E.max_n + 1)},
        "R": {str(n): _labels(G, E.R(n)) for n in range(1, E.max_n + 1)},
        "L_set": _labels(G, E.L_set),
        "R_set": _labels(G, E.R_set),
        "L_bar": _labels(G, E.L_bar),
        "R_bar": _labels(G, E.R_bar),
        "rho": _labels(G, E.rho),
        "rho_bar": _labels(G, E.rho_bar),
        "left_length": {G.labels[i]: int(v) for i, v in enumerate(E.left_length)},
        "right_length": {G.labels[i]: int(v) for i, v in enumerate(E.right_length)},
        "flags": {
            "L_2_is_whole": bool(L2.all()),
            "L_2_generates": closure(G, np.flatnonzero(L2)).is_whole,
            "R_2_is_subgroup": closure(G, np.flatnonzero(E.R(2))).order == int(E.R(2).sum()),
        },
    }


def _group_entry(ctx: GroupContext, *, with_engel: bool) -> dict:
    entry: dict = {"spec": ctx.spec}
    if ctx.black_box:
        entry.update({"order": None, "black_box": True, "structure": None, "engel": None})
        return entry
    entry["order"] = ctx.G.order
    entry["structure"] = structure_json(ctx)
    if with_engel:
        try:
            entry["engel"] = engel_json(ctx)
        except Skip as exc:
            entry["engel"] = None
            entry["engel_skipped"] = str(exc)
    return entry


def _specs(config: RunConfig, default_zoo: str | None) -> list[str]:
    if config.groups:
        return [str(parse_group_spec(s)) for s in config.groups]
    zoo = config.zoo or default_zoo
    if zoo is None:
        raise UsageError("give --group or --zoo")
    return [str(parse_group_spec(s)) for s in load_zoo(zoo)]


def _report(config: RunConfig, groups: list[dict], **extra) -> dict:
    return {
        "meta": {"version": __version__, "seed": config.seed, "config": config.as_dict()},
        "groups": groups,
        **extra,
    }


def cmd_analyze(config: RunConfig) -> tuple[dict, int]:
    groups = []
    for spec in _specs(config, None):
        ctx = GroupContext(spec, config.limits)
        groups.append(_group_entry(ctx, with_engel=True))
    return _report(config, groups), 0


def cmd_verify(config: RunConfig) -> tuple[dict, int]:
    check_ids = resolve_suite(config.suite)
    groups = []
    failed = False
    for spec in _specs(config, "default"):
        ctx = GroupContext(spec, config.limits)
        entry = _group_entry(ctx, with_engel=False)
        results = [run_check(c, ctx) for c in check_ids]
        failed |= any(r.outcome == "fail" for r in results)
        entry["checks"] = [r.to_dict() for r in results]
        groups.append(entry)
    return _report(config, groups), int(failed)


def cmd_search(config: RunConfig) -> tuple[dict, int]:
    if config.predicate not in SEARCH_PREDICATES:
        raise UsageError(f"--predicate must be one of {', '.join(SEARCH_PREDICATES)}")
    zoo = _specs(config, "search2")
    rep = search_report(config.predicate, zoo, limits=config.limits)
    return _report(config, [], search=rep.to_dict()), 0


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "search": cmd_search}


def render_text(report: dict) -> str:
    lines = [f"engel-lab {report['meta']['version']}  seed={report['meta']['seed']}"]
    for g in report["groups"]:
        if g.get("black_box"):
            lines.append(f"{g['spec']}: black-box group")
        else:
            s = g["structure"]
            lines.append(
                f"{g['spec']}: order {g['order']}, class {s['nilpotency_class']}, "
                f"derived length {s['derived_length']}, |Fitt| {len(s['radicals']['fitting'])}, "
                f"|hypercenter| {len(s['hypercenter'])}"
            )
        e = g.get("engel")
        if e:
            ls = " ".join(f"L{n}={len(v)}" for n, v in e["L"].items())
            rs = " ".join(f"R{n}={len(v)}" for n, v in e["R"].items())
            lines.append(f"  |L|={len(e['L_set'])} |R|={len(e['R_set'])} |rho|={len(e['rho'])}")
            lines.append(f"  {ls}")
            lines.append(f"  {rs}")
        for c in g.get("checks", []):
            tail = ""
            if c["outcome"] == "fail":
                tail = f"  witness={json.dumps(c['witness'])}"
            elif c["outcome"] == "skipped":
                tail = f"  ({c['reason']})"
            lines.append(f"  [{c['outcome']:7}] {c['id']}{tail}")
    if "search" in report:
        s = report["search"]
        lines.append(f"search {s['predicate']}: {s['outcome']} over {len(s['searched'])} groups")
        if s["witness"]:
            lines.append(f"  {s['witness']['group']}: {json.dumps(s['witness']['witness'])}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="engel-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze", "structure and Engel report per group"),
        ("verify", "run catalog checks"),
        ("search", "bounded witness search"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-g", "--group", action="append", default=[], help="group spec (repeatable)")
        p.add_argument("--zoo", help="'default' or a file with one spec per line")
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
        p.add_argument("--cap", type=int, default=None, help="order cap (default 4096 or $ENGEL_LAB_CAP)")
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if name == "verify":
            p.add_argument("--suite", default="all", help="'all' or comma-separated check ids")
        if name == "search":
            p.add_argument("--predicate", required=True, choices=SEARCH_PREDICATES)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    for flag in ("max_n", "samples"):
        if getattr(args, flag) < 1:
            raise UsageError(f"--{flag.replace('_', '-')} must be positive")
    cap = args.cap if args.cap is not None else default_cap()
    if cap < 1:
        raise UsageError("--cap must be positive")
    return RunConfig(
        command=args.command,
        groups=tuple(args.group),
        zoo=args.zoo,
        suite=getattr(args, "suite", "all"),
        predicate=getattr(args, "predicate", None),
        max_n=args.max_n,
        cap=cap,
        samples=args.samples,
        seed=args.seed,
        out=args.out,
        format=args.format,
    )


def run(config: RunConfig) -> tuple[str, int]:
    report, code = COMMANDS[config.command](config)
    if config.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = render_text(report)
    return text, code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        text, code = run(config)
    except (EngelLabError, ValueError) as exc:
        code = exc.exit_code if isinstance(exc, EngelLabError) else 2
        kind = "capacity" if isinstance(exc, CapacityError) else "error"
        print(f"engel-lab: {kind}: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"engel-lab: error: {exc}", file=sys.stderr)
        return 2
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
