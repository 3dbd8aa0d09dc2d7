"""Command-line surface: table generation and verification runs.

Every subcommand builds a plain-dict report, serializes it as csv or json,
and exits 0 only when all verification flags in the report are true (1 on a
failed flag, 2 on usage errors).  Output is byte-deterministic for a fixed
config, including the seed and regardless of PHIRING_WORKERS.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass

from . import charspace, oracle, phi, rograde, ssq, superalg
from .charspace import Character, GroupContext

WORKERS_ENV = "PHIRING_WORKERS"
BUDGET_ENV = "PHIRING_COLUMN_BUDGET"
DEFAULT_COLUMN_BUDGET = 20000


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    command: str
    p: int | None = None
    n: int | None = None
    cutoff: int | None = None
    arrangement: tuple[tuple[int, ...], ...] | None = None
    fmt: str = "csv"
    verbatim: bool = False
    seed: int = 0
    weight: int | None = None
    mult: tuple[tuple[tuple[int, ...], int], ...] = ()
    k: int | None = None
    max_mult: int = 0
    k_min: int = 0
    k_max: int = 0
    sample: int | None = None
    sample_max_size: int = 4
    workers: int = 1
    column_budget: int = DEFAULT_COLUMN_BUDGET
    lines_spec: str = ""
    arrangement_meta: tuple[int, int, list] | None = None


def _context(config: JobConfig) -> GroupContext:
    if config.p is None:
        raise UsageError("--p is required")
    if config.n is None:
        raise UsageError("--n is required")
    try:
        return GroupContext(config.p, config.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _require_cutoff(config: JobConfig) -> int:
    if config.cutoff is None or config.cutoff < 0:
        raise UsageError("--cutoff must be a nonnegative integer")
    return config.cutoff


def _check_budget(num_gens: int, weight: int, config: JobConfig) -> None:
    estimate = superalg.free_monomial_count(num_gens, weight)
    if estimate > config.column_budget:
        raise UsageError(
            "cutoff too large: weight %d needs ~%d matrix columns, budget is %d "
            "(raise %s to override)" % (weight, estimate, config.column_budget, BUDGET_ENV)
        )


def _parse_character(text: str, ctx: GroupContext, flag: str) -> Character:
    parts = text.split(",")
    if len(parts) != ctx.n:
        raise UsageError("%s: character %r must have %d coordinates" % (flag, text, ctx.n))
    try:
        coords = tuple(int(c) % ctx.p for c in parts)
    except ValueError:
        raise UsageError("%s: character %r has non-integer coordinates" % (flag, text)) from None
    if not any(coords):
        raise UsageError("%s: character %r is zero mod p" % (flag, text))
    return Character(coords)


def _parse_lines_spec(text: str, ctx: GroupContext, flag: str):
    lines = []
    for item in text.split(";"):
        chi = _parse_character(item, ctx, flag)
        lines.append(charspace.line_of(chi, ctx))
    return tuple(sorted(set(lines)))


def _load_arrangement(config: JobConfig):
    """Arrangement file: {"p": int, "n": int, "lines": [[int, ...], ...]};
    characters are canonicalized and deduplicated by line."""
    if config.arrangement is None:
        return None
    p, n, rows = config.arrangement_meta  # set by _read_arrangement_file
    if config.p is not None and config.p != p:
        raise UsageError("--p disagrees with the arrangement file (%d vs %d)" % (config.p, p))
    if config.n is not None and config.n != n:
        raise UsageError("--n disagrees with the arrangement file (%d vs %d)" % (config.n, n))
    config.p, config.n = p, n
    ctx = _context(config)
    lines = []
    for row in rows:
        chi = _parse_character(",".join(str(v) for v in row), ctx, "arrangement")
        lines.append(charspace.line_of(chi, ctx))
    return tuple(sorted(set(lines)))


def _coords_str(coords) -> str:
    return " ".join(str(c) for c in coords)


def _bool_str(b: bool) -> str:
    return "true" if b else "false"


# ---------------------------------------------------------------- commands


def _cmd_lines(config: JobConfig):
    ctx = _context(config)
    lines = charspace.enumerate_lines(ctx)
    report = {
        "command": "lines",
        "p": ctx.p,
        "n": ctx.n,
        "count": len(lines),
        "lines": [list(line.rep.coords) for line in lines],
    }
    rows = [[_coords_str(line.rep.coords)] for line in lines]
    return report, rows, True


def _cmd_fn_enum(config: JobConfig):
    ctx = _context(config)
    subsets = charspace.enumerate_Fn(ctx)
    report = {
        "command": "fn-enum",
        "p": ctx.p,
        "n": ctx.n,
        "count": len(subsets),
        "subsets": [[list(chi.coords) for chi in sub.elems] for sub in subsets],
    }
    rows = [["size", "subset"]]
    for sub in subsets:
        rows.append([str(sub.size), ";".join(_coords_str(chi.coords) for chi in sub.elems)])
    return report, rows, True


def _cmd_series(config: JobConfig):
    ctx = _context(config)
    cutoff = _require_cutoff(config)
    series = phi.closed_form_series(ctx, cutoff)
    report = {
        "command": "series",
        "p": ctx.p,
        "n": ctx.n,
        "cutoff": cutoff,
        "coeffs": list(series.coeffs),
    }
    rows = [[str(c) for c in series.coeffs]]
    return report, rows, True


def _cmd_phi_verify(config: JobConfig):
    ctx = _context(config)
    cutoff = _require_cutoff(config)
    gens = ctx.num_characters if config.verbatim else ctx.num_lines
    _check_budget(gens, cutoff, config)
    rep = phi.verify_phi(ctx, cutoff, verbatim_mode=config.verbatim, workers=config.workers)
    report = {
        "command": "phi-verify",
        "p": ctx.p,
        "n": ctx.n,
        "cutoff": cutoff,
        "verbatim": config.verbatim,
        "closed_form": list(rep.closed_form),
        "presentation": list(rep.presentation),
        "oracle": list(rep.oracle),
        "equal": list(rep.equal),
        "mismatched_weights": list(rep.mismatched_weights),
        "ok": rep.ok,
    }
    rows = [["weight"] + [str(w) for w in range(cutoff + 1)]]
    rows.append(["closed-form"] + [str(v) for v in rep.closed_form])
    rows.append(["presentation"] + [str(v) for v in rep.presentation])
    rows.append(["oracle"] + [str(v) for v in rep.oracle])
    rows.append(["equal"] + [_bool_str(v) for v in rep.equal])
    return report, rows, rep.ok


def _cmd_phi_basis(config: JobConfig):
    ctx = _context(config)
    if config.weight is None or config.weight < 0:
        raise UsageError("--weight must be a nonnegative integer")
    gens = ctx.num_characters if config.verbatim else ctx.num_lines
    _check_budget(gens, config.weight, config)
    pres = phi.build_phi_presentation(ctx, verbatim_mode=config.verbatim)
    basis = superalg.monomial_basis(pres, config.weight)
    report = {
        "command": "phi-basis",
        "p": ctx.p,
        "n": ctx.n,
        "weight": config.weight,
        "verbatim": config.verbatim,
        "dimension": len(basis),
        "basis": [str(m) for m in basis],
    }
    rows = [[str(m)] for m in basis]
    return report, rows, True


def _page_rows(table, cutoff: int):
    rows = [["s"] + [str(d) for d in range(cutoff + 1)]]
    for s in range(cutoff + 1):
        rows.append([str(s)] + [str(table.entries[(s, d)]) for d in range(cutoff + 1)])
    return rows


def _cmd_e1_table(config: JobConfig):
    ctx = _context(config)
    cutoff = _require_cutoff(config)
    table = ssq.e1_table(ctx, cutoff)
    report = {
        "command": "e1-table",
        "p": ctx.p,
        "n": ctx.n,
        "cutoff": cutoff,
        "entries": [[table.entries[(s, d)] for d in range(cutoff + 1)] for s in range(cutoff + 1)],
    }
    return report, _page_rows(table, cutoff), True


def _cmd_e2_table(config: JobConfig):
    ctx = _context(config)
    cutoff = _require_cutoff(config)
    table = ssq.e2_table(ctx, cutoff)
    report = {
        "command": "e2-table",
        "p": ctx.p,
        "n": ctx.n,
        "cutoff": cutoff,
        "entries": [[table.entries[(s, d)] for d in range(cutoff + 1)] for s in range(cutoff + 1)],
    }
    return report, _page_rows(table, cutoff), True


def _cmd_collapse_check(config: JobConfig):
    ctx = _context(config)
    cutoff = _require_cutoff(config)
    rep = ssq.collapse_check(ctx, cutoff)
    report = {
        "command": "collapse-check",
        "p": ctx.p,
        "n": ctx.n,
        "cutoff": cutoff,
        "e2_totals": list(rep.e2_totals),
        "closed_form": list(rep.closed_form),
        "equal": list(rep.equal),
        "e2_dominated_by_e1": rep.dominated,
        "ok": rep.ok,
    }
    rows = [["weight"] + [str(d) for d in range(cutoff + 1)]]
    rows.append(["e2-total"] + [str(v) for v in rep.e2_totals])
    rows.append(["closed-form"] + [str(v) for v in rep.closed_form])
    rows.append(["equal"] + [_bool_str(v) for v in rep.equal])
    rows.append(["e2<=e1", _bool_str(rep.dominated)])
    return report, rows, rep.ok


def _parse_mult(config: JobConfig, ctx: GroupContext) -> dict[Character, int]:
    mults: dict[Character, int] = {}
    for coords, count in config.mult:
        chi = _parse_character(",".join(str(v) for v in coords), ctx, "--mult")
        mults[chi] = mults.get(chi, 0) + count
    return mults


def _cmd_ro_dim(config: JobConfig):
    ctx = _context(config)
    if config.k is None:
        raise UsageError("--k is required")
    try:
        md = rograde.multidegree(ctx, _parse_mult(config, ctx), config.k)
    except ValueError as exc:
        raise UsageError("--mult: %s" % exc) from None
    dim = rograde.ro_dimension(ctx, md)
    report = {
        "command": "ro-dim",
        "p": ctx.p,
        "n": ctx.n,
        "mult": [[_coords_str(label.rep.coords), m] for label, m in md.m],
        "k": config.k,
        "dimension": dim,
    }
    return report, [[str(dim)]], True


def _md_str(md: rograde.MultiDegree) -> str:
    if not md.m:
        return "-"
    return ";".join("%s:%d" % (_coords_str(label.rep.coords), m) for label, m in md.m)


def _cmd_ro_table(config: JobConfig):
    ctx = _context(config)
    if config.max_mult < 0:
        raise UsageError("--max-mult must be nonnegative")
    if config.k_max < config.k_min:
        raise UsageError("--k-max must be >= --k-min")
    table = rograde.ro_table(ctx, config.max_mult, (config.k_min, config.k_max))
    report = {
        "command": "ro-table",
        "p": ctx.p,
        "n": ctx.n,
        "max_mult": config.max_mult,
        "k_range": [config.k_min, config.k_max],
        "entries": [
            {"mult": _md_str(md), "k": md.k, "dimension": dim}
            for md, dim in table.entries.items()
        ],
    }
    rows = [["multidegree", "k", "dimension"]]
    for md, dim in table.entries.items():
        rows.append([_md_str(md), str(md.k), str(dim)])
    return report, rows, True


def _cmd_localize(config: JobConfig):
    file_lines = _load_arrangement(config)
    ctx = _context(config)
    cutoff = _require_cutoff(config)
    arrangements = []
    if file_lines is not None:
        arrangements.append(file_lines)
    if config.lines_spec:
        arrangements.append(_parse_lines_spec(config.lines_spec, ctx, "--lines"))
    if config.sample:
        rng = random.Random(config.seed)
        pool = list(charspace.enumerate_lines(ctx))
        for _ in range(config.sample):
            size = rng.randint(1, max(1, config.sample_max_size))
            arrangements.append(tuple(sorted(rng.sample(pool, min(size, len(pool))))))
    if not arrangements:
        raise UsageError("localize needs --lines, --arrangement, or --sample")
    for lines in arrangements:
        _check_budget(len(lines), cutoff, config)
    results = [
        rograde.localized_hilbert(ctx, lines, cutoff, workers=config.workers)
        for lines in arrangements
    ]
    report = {
        "command": "localize",
        "p": ctx.p,
        "n": ctx.n,
        "cutoff": cutoff,
        "results": [
            {
                "lines": [list(line.rep.coords) for line in res.lines],
                "oracle": list(res.oracle),
                "presentation": list(res.presentation),
                "equal": list(res.equal),
            }
            for res in results
        ],
        "ok": all(res.ok for res in results),
    }
    rows = [["arrangement", "source"] + [str(w) for w in range(cutoff + 1)]]
    for res in results:
        name = ";".join(_coords_str(line.rep.coords) for line in res.lines)
        rows.append([name, "oracle"] + [str(v) for v in res.oracle])
        rows.append([name, "presentation"] + [str(v) for v in res.presentation])
        rows.append([name, "equal"] + [_bool_str(v) for v in res.equal])
    return report, rows, report["ok"]


def _cmd_relation_check(config: JobConfig):
    ctx = _context(config)
    pres = phi.build_phi_presentation(ctx, verbatim_mode=config.verbatim)
    vanished = 0
    for rel in pres.relations:
        if oracle.relation_image(rel, ctx).is_zero():
            vanished += 1
    ok = vanished == len(pres.relations)
    report = {
        "command": "relation-check",
        "p": ctx.p,
        "n": ctx.n,
        "verbatim": config.verbatim,
        "relations": len(pres.relations),
        "vanished": vanished,
        "ok": ok,
    }
    rows = [["relations", "vanished", "ok"], [str(len(pres.relations)), str(vanished), _bool_str(ok)]]
    return report, rows, ok


_COMMANDS = {
    "lines": _cmd_lines,
    "fn-enum": _cmd_fn_enum,
    "series": _cmd_series,
    "phi-verify": _cmd_phi_verify,
    "phi-basis": _cmd_phi_basis,
    "e1-table": _cmd_e1_table,
    "e2-table": _cmd_e2_table,
    "collapse-check": _cmd_collapse_check,
    "ro-dim": _cmd_ro_dim,
    "ro-table": _cmd_ro_table,
    "localize": _cmd_localize,
    "relation-check": _cmd_relation_check,
}


def run(config: JobConfig) -> tuple[int, str]:
    """Dispatch one job; returns (exit status, serialized report)."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        raise UsageError("unknown command %r" % config.command)
    report, rows, ok = handler(config)
    if config.fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        text = buf.getvalue()
    return (0 if ok else 1), text


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phiring",
        description="Exact coefficient-ring tables for (Z/p)^n-equivariant cohomology",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, cutoff=False, weight=False, verbatim=False, extra=None):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--p", type=int, help="odd prime")
        sp.add_argument("--n", type=int, help="rank of the group")
        if cutoff:
            sp.add_argument("--cutoff", type=int, help="largest weight computed")
        if weight:
            sp.add_argument("--weight", type=int, help="weight of the graded piece")
        if verbatim:
            sp.add_argument(
                "--verbatim",
                action="store_true",
                help="use the character-indexed presentation with no u identification",
            )
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--seed", type=int, default=0)
        if extra:
            extra(sp)
        return sp

    add("lines", "list the canonical line representatives")
    add("fn-enum", "list the echelon subsets")
    add("series", "closed-form Poincare series coefficients", cutoff=True)
    add("phi-verify", "closed form vs presentation vs oracle", cutoff=True, verbatim=True)
    add("phi-basis", "monomial basis of one graded piece", weight=True, verbatim=True)
    add("e1-table", "first-page dimensions", cutoff=True)
    add("e2-table", "second-page dimensions", cutoff=True)
    add("collapse-check", "second page against the closed form", cutoff=True)

    def ro_dim_extra(sp):
        sp.add_argument("--mult", default="", help="multidegree, e.g. '1,0:1;0,1:2'")
        sp.add_argument("--k", type=int, help="integer shift")

    add("ro-dim", "dimension of one representation-graded piece", extra=ro_dim_extra)

    def ro_table_extra(sp):
        sp.add_argument("--max-mult", type=int, default=2)
        sp.add_argument("--k-min", type=int, default=0)
        sp.add_argument("--k-max", type=int, default=4)

    add("ro-table", "representation-graded dimension table", extra=ro_table_extra)

    def localize_extra(sp):
        sp.add_argument("--lines", dest="lines_spec", default="", help="e.g. '1,0;0,1'")
        sp.add_argument("--arrangement", help="JSON file {p, n, lines}")
        sp.add_argument("--sample", type=int, help="number of random arrangements")
        sp.add_argument("--sample-max-size", type=int, default=4)

    add("localize", "oracle vs candidate presentation on a line set", cutoff=True, extra=localize_extra)
    add("relation-check", "verify every relation vanishes in the oracle", verbatim=True)
    return parser


def _parse_mult_spec(text: str) -> tuple[tuple[tuple[int, ...], int], ...]:
    if not text:
        return ()
    out = []
    for item in text.split(";"):
        if ":" not in item:
            raise UsageError("--mult item %r must look like coords:count" % item)
        coords_text, count_text = item.rsplit(":", 1)
        try:
            coords = tuple(int(v) for v in coords_text.split(","))
            count = int(count_text)
        except ValueError:
            raise UsageError("--mult item %r is malformed" % item) from None
        out.append((coords, count))
    return tuple(out)


def _read_arrangement_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError("arrangement file %s: %s" % (path, exc)) from None
    for key in ("p", "n", "lines"):
        if key not in data:
            raise UsageError("arrangement file %s: missing field %r" % (path, key))
    return int(data["p"]), int(data["n"]), data["lines"]


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError("%s must be an integer, got %r" % (name, raw)) from None
    if value < 1:
        raise UsageError("%s must be >= 1" % name)
    return value


def config_from_args(argv) -> JobConfig:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = JobConfig(
        command=args.command,
        p=args.p,
        n=args.n,
        cutoff=getattr(args, "cutoff", None),
        fmt=args.format,
        verbatim=getattr(args, "verbatim", False),
        seed=args.seed,
        weight=getattr(args, "weight", None),
        k=getattr(args, "k", None),
        max_mult=getattr(args, "max_mult", 0),
        k_min=getattr(args, "k_min", 0),
        k_max=getattr(args, "k_max", 0),
        sample=getattr(args, "sample", None),
        sample_max_size=getattr(args, "sample_max_size", 4),
        workers=_env_int(WORKERS_ENV, 1),
        column_budget=_env_int(BUDGET_ENV, DEFAULT_COLUMN_BUDGET),
    )
    config.lines_spec = getattr(args, "lines_spec", "")
    if getattr(args, "mult", ""):
        config.mult = _parse_mult_spec(args.mult)
    arrangement_path = getattr(args, "arrangement", None)
    if arrangement_path:
        config.arrangement_meta = _read_arrangement_file(arrangement_path)
        config.arrangement = tuple(tuple(row) for row in config.arrangement_meta[2])
    return config


def main(argv=None) -> int:
    try:
        config = config_from_args(sys.argv[1:] if argv is None else argv)
        status, text = run(config)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
