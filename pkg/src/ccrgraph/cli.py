"""Command line front end.

Every subcommand writes one JSON report (or text / DOT) to standard output
and diagnostics to standard error.  ``classify`` exits with 0, 10 or 20 for
CCR, GCR_not_CCR and not_GCR; input and usage errors exit with 64.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence, TextIO

from . import __version__
from .classify import CCR, GCR_NOT_CCR, NOT_GCR, Verdict, classify_graph, classify_product
from .fields import FieldError, parse_field
from .graph import Graph, GraphError, condensation_dot, parse_graph, scc_decompose
from .groupoid import (
    GroupoidError,
    SteinbergElement,
    convolve,
    convolve_direct,
    involute,
    parse_groupoid,
)
from .groups import GroupError, parse_group, rotation_subgroup
from .linalg import identity, mat_add, mat_scale, zeros
from .paths import PathError, orbit_intersection_size
from .repn import (
    MatrixAlgebraModule,
    ReprError,
    chop,
    clifford_check,
    corner_simples_check,
    group_element_matrix,
    matrix_amplification_check,
    regular_module,
)
from .topology import (
    PreconditionError,
    TopologyVerdict,
    check_condition_M,
    check_condition_N,
    oracle_condition,
    orbit_closure,
    orbit_representatives,
)

EXIT_CODES = {CCR: 0, GCR_NOT_CCR: 10, NOT_GCR: 20}
EXIT_USAGE = 64

INPUT_ERRORS = (GraphError, PathError, GroupoidError, GroupError, FieldError, ReprError,
                PreconditionError, OSError, json.JSONDecodeError, KeyError, TypeError, ValueError)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    depth: int = 6
    seed: int = 0
    field: str = ""
    format: str = "json"

    def to_json(self) -> dict:
        return asdict(self)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _dump(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _name(path: str) -> str:
    return Path(path).name


# text rendering -----------------------------------------------------------

def _path_text(doc: dict) -> str:
    head = "·".join(doc["prefix"])
    if doc.get("cycle") is not None:
        tail = "(" + "·".join(doc["cycle"]) + ")^∞"
        return f"{head}·{tail}" if head else tail
    return (head + "·" if head else "") + f"[{doc['terminus']}]"


def _card_text(c: dict) -> str:
    return str(c["n"]) if c.get("finite") else "∞"


def _witness_text(w: dict | None) -> str:
    if not w:
        return "none"
    if w.get("kind") == "cycle-pair":
        cycles = ", ".join("(" + "·".join(c) + ")" for c in w["cycles"])
        return f"distinct cycles {cycles} at {w['vertex']}"
    if w.get("kind") == "infinite-intersection":
        pump = "·".join(w.get("pump") or []) or "?"
        return f"x = {_path_text(w['x'])}, v = {w['v']}, |Z(v)∩Orb_x| = ∞ via pump {pump}"
    return json.dumps(w, sort_keys=True)


def _verdict_text(v: dict) -> str:
    return f"condition {v['condition']}: {v['status']} [{v['method']}]; witness: {_witness_text(v['witness'])}"


def _render_text(report: dict) -> str:
    lines = []
    if "level" in report:
        lines.append(f"level: {report['level']} ({report['field_status']})")
        lines.append(_verdict_text(report["condition_M"]))
        lines.append(_verdict_text(report["condition_N"]))
        lines += [f"caveat: {c}" for c in report.get("caveats", [])]
    elif "verdict" in report:
        lines.append(_verdict_text(report["verdict"]))
    elif "orbits" in report:
        for o in report["orbits"]:
            sizes = ", ".join(f"{v}: {_card_text(s)}" for v, s in sorted(o["intersections"].items()))
            lines.append(f"{o['text']}  closed={o['is_closed']}  |Z(v)∩Orb| {sizes}")
    elif "check" in report:
        lines.append(f"check {report['check']}: {'passed' if report.get('passed', True) else 'FAILED'}"
                     f" over {report['field']}")
        for key in ("factors", "base_factors", "amplified_factors", "corner_factors"):
            for f in report.get(key, []):
                lines.append(f"  {key}: dim {f['dimension']} x{f['multiplicity']}"
                             f" endo_dim {f['endo_dim']}")
    else:
        lines.append(_dump({k: v for k, v in report.items() if k != "config"}).rstrip())
    lines.append(f"seed: {report['config']['seed']}")
    return "\n".join(lines) + "\n"


# subcommands --------------------------------------------------------------

def _classify_one(path: str, cfg: RunConfig, method: str) -> tuple[dict, int]:
    g = _load_graph(path)
    verdict: Verdict = classify_graph(g, cfg.field or "complex", method)
    report = verdict.to_json()
    report["input"] = _name(path)
    report["config"] = cfg.to_json()
    return report, EXIT_CODES[verdict.level]


def _write_atomic(target: Path, text: str) -> None:
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix="." + target.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cmd_classify(args, cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    if args.batch:
        return _classify_batch(args, cfg, out, err)
    if args.graph and len(args.graph) > 1:
        graphs = [_load_graph(p) for p in args.graph]
        verdict = classify_product(graphs, cfg.field or "complex", args.method)
        report = verdict.to_json()
        report["input"] = [_name(p) for p in args.graph]
        report["config"] = cfg.to_json()
        code = EXIT_CODES[verdict.level]
    elif args.graph:
        report, code = _classify_one(args.graph[0], cfg, args.method)
    else:
        raise UsageError("classify needs --graph or --batch")
    if cfg.format == "dot":
        if len(args.graph) != 1:
            raise UsageError("dot output needs a single graph")
        out.write(condensation_dot(_load_graph(args.graph[0])))
    else:
        _emit(report, cfg, out)
    return code


def _classify_batch(args, cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    src = Path(args.batch)
    if not src.is_dir():
        raise OSError(f"not a directory: {src}")
    files = sorted(p for p in src.iterdir() if p.suffix == ".json")
    dest = Path(args.out) if args.out else None

    def work(p: Path) -> dict:
        try:
            report, code = _classify_one(str(p), cfg, args.method)
        except INPUT_ERRORS as exc:
            print(f"{p.name}: {exc}", file=err)
            return {"input": p.name, "error": str(exc), "exit_code": EXIT_USAGE}
        if dest is not None:
            _write_atomic(dest / (p.stem + ".report.json"), _dump(report))
        return {"input": p.name, "level": report["level"], "exit_code": code}

    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        rows = list(pool.map(work, files))
    summary = {"config": cfg.to_json(), "reports": rows, "count": len(rows)}
    _emit(summary, cfg, out)
    codes = [r["exit_code"] for r in rows]
    return max(codes) if codes else 0


def _verdict_report(v: TopologyVerdict, path: str, cfg: RunConfig) -> dict:
    return {"input": _name(path), "verdict": v.to_json(), "config": cfg.to_json()}


def _cmd_check(condition: str):
    def run(args, cfg: RunConfig, out: TextIO, err: TextIO) -> int:
        g = _load_graph(args.graph)
        check = check_condition_M if condition == "M" else check_condition_N
        if cfg.format == "dot":
            out.write(condensation_dot(g))
            return 0
        _emit(_verdict_report(check(g, args.method), args.graph, cfg), cfg, out)
        return 0
    return run


def _cmd_orbits(args, cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    g = _load_graph(args.graph)
    if cfg.format == "dot":
        out.write(condensation_dot(g))
        return 0
    scc = scc_decompose(g)
    rows = []
    for x in orbit_representatives(g, scc):
        row = {"x": x.to_json(), "text": str(x)}
        row["intersections"] = {
            v: orbit_intersection_size(g, x, v).to_json() for v in g.vertices}
        try:
            c = orbit_closure(g, x)
            row.update({"closure": [o.to_json() for o in c.orbits],
                        "is_closed": c.is_closed, "is_locally_closed": c.is_locally_closed})
        except PreconditionError as exc:
            row.update({"closure": None, "is_closed": None, "is_locally_closed": None,
                        "closure_note": str(exc)})
        rows.append(row)
    _emit({"input": _name(args.graph), "orbits": rows, "config": cfg.to_json()}, cfg, out)
    return 0


def _cmd_oracle(args, cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    g = _load_graph(args.graph)
    v = oracle_condition(g, args.condition, cfg.depth)
    decider = check_condition_M if args.condition == "M" else check_condition_N
    structural = decider(g, "structural")
    report = _verdict_report(v, args.graph, cfg)
    report["structural"] = structural.to_json()
    report["agrees"] = None if v.holds is None else v.holds == structural.holds
    _emit(report, cfg, out)
    return 0


def _coeffs(doc: Any, F) -> dict:
    if not isinstance(doc, dict):
        raise ValueError("coefficient map must be a JSON object")
    out = {}
    for a, c in doc.items():
        if isinstance(c, str) and "/" in c:
            num, den = c.split("/")
            out[a] = F.div(F.from_int(int(num)), F.from_int(int(den)))
        else:
            out[a] = F.from_int(int(c))
    return out


def _cmd_convolve(args, cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    F = parse_field(cfg.field or "QQ")
    G = parse_groupoid(_read_json(args.groupoid))
    f = SteinbergElement(G, _coeffs(_read_json(args.f), F), F)
    g = SteinbergElement(G, _coeffs(_read_json(args.g), F), F)
    prod = convolve(f, g)
    report = {
        "inputs": {"groupoid": _name(args.groupoid), "f": _name(args.f), "g": _name(args.g)},
        "field": F.name,
        "product": prod.to_json(),
        "direct_sum_agrees": prod == convolve_direct(f, g),
        "involution_law": involute(prod) == convolve(involute(g), involute(f)),
        "config": cfg.to_json(),
    }
    _emit(report, cfg, out)
    return 0


def _subgroup(G, spec: str | None) -> tuple[int, ...]:
    if spec in (None, "rotations"):
        return rotation_subgroup(G)
    if spec == "all":
        return tuple(range(G.order))
    return G.subgroup([s.strip() for s in spec.split(",")])


def _cmd_repn(args, cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    F = parse_field(cfg.field or "7")
    if args.check == "corner" and args.module:
        doc = _read_json(args.module)
        gens = [[[F.from_int(int(a)) for a in row] for row in m] for m in doc["generators"]]
        M = MatrixAlgebraModule(F, gens, len(gens[0]))
        e = [[F.from_int(int(a)) for a in row] for row in _read_json(args.idempotent)]
        report = corner_simples_check(M, e, cfg.seed)
    else:
        if not args.group:
            raise UsageError(f"repn-check {args.check} needs --group")
        G = parse_group(_read_json(args.group) if args.group.endswith(".json") else args.group)
        if args.check == "chop":
            M = regular_module(G, F, split=args.split)
            report = {"check": "chop", "group": G.name, **chop(M, cfg.seed).to_json()}
        elif args.check == "clifford":
            report = clifford_check(G, _subgroup(G, args.subgroup), F, cfg.seed, split=args.split)
        elif args.check == "amplification":
            M = regular_module(G, F, split=args.split)
            report = matrix_amplification_check(M, args.n, cfg.seed)
            report["group"] = G.name
        elif args.check == "corner":
            M = regular_module(G, F)
            if args.averaging is None:
                e = identity(F, G.order)
            else:
                H = _subgroup(G, args.averaging)
                e = zeros(F, G.order)
                for h in H:
                    e = mat_add(F, e, group_element_matrix(G, F, h))
                e = mat_scale(F, F.inv(F.from_int(len(H))), e)
            report = corner_simples_check(M, e, cfg.seed)
            report["group"] = G.name
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(f"unknown check {args.check}")
    report["config"] = cfg.to_json()
    _emit(report, cfg, out)
    return 0 if report.get("passed", True) else 1


def _emit(report: dict, cfg: RunConfig, out: TextIO) -> None:
    if cfg.format == "text":
        out.write(_render_text(report))
    elif cfg.format == "json":
        out.write(_dump(report))
    else:
        raise UsageError(f"format {cfg.format!r} is not available for {cfg.subcommand}")


# parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ccrgraph", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)

    def common(sp, *, depth: bool = False, field_help: str = "field"):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=("json", "text", "dot"), default="json")
        sp.add_argument("--field", default="", help=field_help)
        if depth:
            sp.add_argument("--depth", type=int, default=6)

    c = sub.add_parser("classify", help="CCR / GCR level of a graph or product of graphs")
    c.add_argument("--graph", action="append", help="graph JSON (repeat for a product)")
    c.add_argument("--batch", help="directory of graph JSON files")
    c.add_argument("--out", help="directory for per-file batch reports")
    c.add_argument("--workers", type=int, default=4)
    c.add_argument("--method", choices=("structural", "automaton"), default="structural")
    common(c, field_help="field class, e.g. complex (default) or GF(7)")

    for name in ("check-m", "check-n"):
        s = sub.add_parser(name, help=f"decide condition {name[-1].upper()}")
        s.add_argument("--graph", required=True)
        s.add_argument("--method", choices=("structural", "automaton"), default="structural")
        common(s)

    o = sub.add_parser("orbits", help="orbit representatives, intersections and closures")
    o.add_argument("--graph", required=True)
    common(o)

    r = sub.add_parser("oracle", help="bounded brute-force check of M or N")
    r.add_argument("--graph", required=True)
    r.add_argument("--condition", choices=("M", "N"), required=True)
    common(r, depth=True)

    v = sub.add_parser("convolve", help="convolution product on a finite groupoid")
    v.add_argument("--groupoid", required=True)
    v.add_argument("--f", required=True)
    v.add_argument("--g", required=True)
    common(v, field_help="exact field: QQ (default) or a prime power")

    q = sub.add_parser("repn-check", help="representation engine checks")
    q.add_argument("check", choices=("chop", "clifford", "amplification", "corner"))
    q.add_argument("--group", help="preset name (C4, S3, D4, Q8) or table JSON")
    q.add_argument("--subgroup", help="comma separated labels, 'rotations' or 'all'")
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--split", action="store_true", help="extend to a splitting field")
    q.add_argument("--averaging", help="subgroup for the averaging idempotent (corner)")
    q.add_argument("--module", help="module JSON with generators (corner)")
    q.add_argument("--idempotent", help="idempotent matrix JSON (corner)")
    common(q, field_help="exact field: a prime power (default 7) or QQ")
    return p


HANDLERS: dict[str, Callable] = {
    "classify": _cmd_classify,
    "check-m": _cmd_check("M"),
    "check-n": _cmd_check("N"),
    "orbits": _cmd_orbits,
    "oracle": _cmd_oracle,
    "convolve": _cmd_convolve,
    "repn-check": _cmd_repn,
}


def _inputs(args) -> list[str]:
    out = []
    for key in ("graph", "batch", "groupoid", "f", "g", "group", "module", "idempotent"):
        val = getattr(args, key, None)
        if val:
            out += [_name(x) for x in (val if isinstance(val, list) else [val])]
    return out


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not args.subcommand:
            raise UsageError("missing subcommand")
        depth = getattr(args, "depth", 6)
        if depth < 1:
            raise UsageError("--depth must be at least 1")
        cfg = RunConfig(args.subcommand, _inputs(args), depth, args.seed, args.field, args.format)
        return HANDLERS[args.subcommand](args, cfg, out, err)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
