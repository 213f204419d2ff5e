"""Command-line front end: ``polsyz <command> <input.mon> [options]``.

Exit codes: 0 ok, 1 usage or parse error, 2 incohesive input, 3 internal
invariant breach.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .bowtie import enumerate_bowties, is_polarizable
from .graph_core import (
    IncohesiveError,
    InvariantError,
    ParseError,
    algebra_dimension,
    as_graph,
    edge_graph,
    edge_graph_dot,
    graph_diameter,
    is_bipartite,
    is_linearly_presented,
    parse_monomial_set,
    pinch,
    require_cohesive,
    to_dot,
)
from .oracle import mu_Z, polarizable_oracle, slice_reports
from .syzygy import generators_P, generators_Z, generic_rank, p_binomial
from .walks import classify_non_split, enumerate_closed_walks, enumerate_non_split_walks, is_split

COMMANDS = ("analyze", "walks", "bowties", "syzygies", "oracle", "pinch", "export")


@dataclass(frozen=True)
class RunConfig:
    input: str
    command: str
    max_walk_len: int = 8
    degree_bound: int = 8
    fmt: str = "json"
    seed: int = 0
    module: str = "Z"
    include_all: bool = False
    pinch_pair: tuple = None
    output: str = None

    def __post_init__(self):
        if self.max_walk_len < 1 or self.degree_bound < 1:
            raise ValueError("bounds must be positive")

    def meta(self):
        return {
            "command": self.command,
            "input": self.input,
            "max_walk_len": self.max_walk_len,
            "degree_bound": self.degree_bound,
            "seed": self.seed,
        }


def _load(cfg):
    if cfg.input == "-":
        text = sys.stdin.read()
    else:
        with open(cfg.input, encoding="utf-8") as fh:
            text = fh.read()
    return parse_monomial_set(text)


def _diameter(f):
    d = graph_diameter(edge_graph(f))
    return None if d == math.inf else d


def cmd_analyze(cfg, f=None):
    f = f if f is not None else _load(cfg)
    require_cohesive(f)
    rep = is_polarizable(f)
    dim = algebra_dimension(f)
    doc = {
        "meta": cfg.meta(),
        "n": f.n,
        "m": f.m,
        "dimension": dim,
        "bipartite": is_bipartite(f).bipartite,
        "edge_graph_diameter": _diameter(f),
        "linearly_presented": is_linearly_presented(f),
    }
    doc.update(rep.to_dict())
    if rep.polarizable and dim == f.n:
        doc["note"] = "polarizable with dimension n: the map is birational onto its image"
    return doc


def cmd_walks(cfg, f=None):
    f = f if f is not None else _load(cfg)
    g = as_graph(f)
    require_cohesive(g)
    if cfg.include_all:
        walks = enumerate_closed_walks(g, cfg.max_walk_len)
    else:
        walks = enumerate_non_split_walks(g, cfg.max_walk_len)
    out = []
    for w in walks:
        d = w.to_dict()
        d["length"] = len(w)
        d["split"] = is_split(w)
        if not d["split"]:
            c = classify_non_split(w)
            d["class"] = c.kind
            d["valid_configuration"] = c.valid
            d["binomial"] = str(p_binomial(w))
        out.append(d)
    return {"meta": cfg.meta(), "count": len(out), "walks": out}


def cmd_bowties(cfg, f=None):
    f = f if f is not None else _load(cfg)
    g = as_graph(f)
    require_cohesive(g)
    ties = enumerate_bowties(g, induced_only=not cfg.include_all)
    return {
        "meta": cfg.meta(),
        "induced_only": not cfg.include_all,
        "count": len(ties),
        "bowties": [b.to_dict() for b in ties],
    }


def cmd_syzygies(cfg, f=None):
    f = f if f is not None else _load(cfg)
    if cfg.module == "Z":
        gens = generators_Z(f)
    else:
        gens = generators_P(f, cfg.max_walk_len)
    doc = {
        "meta": cfg.meta(),
        "module": cfg.module,
        "count": len(gens),
        "generic_rank": generic_rank(gens, seed=cfg.seed),
        "expected_rank": f.m - algebra_dimension(f),
        "vectors": [v.to_dict() for v in gens],
    }
    if cfg.module == "P":
        doc["truncated"] = gens.truncated
    return doc


def cmd_oracle(cfg, f=None):
    f = f if f is not None else _load(cfg)
    require_cohesive(f)
    zg = generators_Z(f)
    reports = slice_reports(f, cfg.degree_bound, zg)
    verdict = polarizable_oracle(f, cfg.degree_bound)
    decided = is_polarizable(f).polarizable
    return {
        "meta": cfg.meta(),
        "slices": [r.to_dict() for r in reports],
        "summary": {
            "polarizable_oracle": verdict.value,
            "first_failure": list(verdict.first_failure) if verdict.first_failure else None,
            "mu_Z": mu_Z(f, cfg.degree_bound).mu,
            "agree_with_theorem": verdict.value == decided,
        },
    }


def cmd_pinch(cfg, f=None):
    f = f if f is not None else _load(cfg)
    i, j = cfg.pinch_pair
    res = pinch(f, i, j)
    return {
        "meta": cfg.meta(),
        "pinched": [i, j],
        "collapsed": [list(c) for c in res.collapsed],
        "relabel": {str(k): v for k, v in sorted(res.relabel.items())},
        "mon": res.f.to_mon(),
    }


def cmd_export(cfg, f=None):
    f = f if f is not None else _load(cfg)
    return {
        "meta": cfg.meta(),
        "mon": f.to_mon(),
        "dot": to_dot(f),
        "edge_graph_dot": edge_graph_dot(f),
    }


HANDLERS = {
    "analyze": cmd_analyze,
    "walks": cmd_walks,
    "bowties": cmd_bowties,
    "syzygies": cmd_syzygies,
    "oracle": cmd_oracle,
    "pinch": cmd_pinch,
    "export": cmd_export,
}


def _text(doc, indent=0):
    pad = "  " * indent
    lines = []
    for k in sorted(doc):
        v = doc[k]
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}: {len(v)} item(s)")
            for item in v:
                lines.append(f"{pad}  - " + json.dumps(item, sort_keys=True))
        elif isinstance(v, str) and "\n" in v:
            lines.append(f"{pad}{k}:")
            lines.extend(pad + "  " + ln for ln in v.rstrip("\n").split("\n"))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v)}")
    return lines


def render(cfg, doc):
    if cfg.fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if cfg.fmt == "dot":
        if "dot" in doc:
            return doc["dot"]
        if "mon" in doc:
            return to_dot(parse_monomial_set(doc["mon"]))
        raise ValueError(f"--dot is not available for '{cfg.command}'")
    if cfg.command in ("pinch", "export") and cfg.fmt == "text":
        return doc["mon"]
    return "\n".join(_text(doc)) + "\n"


def build_parser():
    ap = argparse.ArgumentParser(prog="polsyz", description=__doc__.split("\n")[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", help=".mon file, or - for stdin")
    ap.add_argument("--max-walk-len", type=int, default=8)
    ap.add_argument("--degree-bound", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--module", choices=("Z", "P"), default="Z",
                    help="syzygy module for the syzygies command")
    ap.add_argument("--all", dest="include_all", action="store_true",
                    help="walks: include split walks; bowties: include non-induced")
    ap.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"),
                    help="variables of the proper edge to pinch")
    ap.add_argument("-o", "--output", help="write to a file instead of stdout")
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    fmt.add_argument("--dot", dest="fmt", action="store_const", const="dot")
    ap.set_defaults(fmt="json")
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if args.command == "pinch" and not args.pair:
        print("error: pinch needs --pair I J", file=sys.stderr)
        return 1
    try:
        cfg = RunConfig(args.input, args.command, args.max_walk_len, args.degree_bound,
                        args.fmt, args.seed, args.module, args.include_all,
                        tuple(args.pair) if args.pair else None, args.output)
        out = render(cfg, HANDLERS[cfg.command](cfg))
    except IncohesiveError as exc:
        doc = {"error": "incohesive", "partition": exc.partition}
        print(json.dumps(doc, sort_keys=True), file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return 3
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
