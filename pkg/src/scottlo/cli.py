"""The `scottlo` command.

    scottlo le LHS RHS ALPHA          exit 0 True, 1 False, 2 Inconclusive
    scottlo classify TERM             exit 0 exact label, 2 bracket only
    scottlo verify-suite --suite S    exit 1 if any member fails
    scottlo game LHS RHS ALPHA --role forall|exists
    scottlo fs STRUCTURE.json --depth D

Exit codes above 2 are errors: 3 unreadable input, 4 a bound or cap was hit
before anything could be said, 5 file trouble.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import __version__, fs
from .classifier import Classifier, SSCLabel, fs_ssc_transfer
from .engine import Engine, Outcome, UnsupportedLevel, UnsupportedShape
from .game import FORALL, EXISTS, Game, IllegalMove
from .oracle import CapExceeded, structure_from_json
from .suites import FAIL, SUITES, run_suite
from .terms import TermError, render

EXIT_TRUE, EXIT_FALSE, EXIT_UNKNOWN = 0, 1, 2
EXIT_INPUT, EXIT_BOUND, EXIT_FILE = 3, 4, 5

INT_KEYS = ("params", "seed", "depth", "universe_cap", "depth_cap")
FLOAT_KEYS = ("budget", "classify_budget")


def read_config(path: str | Path | None = None) -> dict:
    """Packaged defaults, overlaid with `path` when given."""
    text = resources.files("scottlo").joinpath("scottlo.cfg").read_text(encoding="utf-8")
    cfg = _parse_cfg(text)
    if path:
        cfg.update(_parse_cfg(Path(path).read_text(encoding="utf-8")))
    return cfg


def _parse_cfg(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, value = key.strip(), value.strip()
        if key in INT_KEYS:
            out[key] = int(value)
        elif key in FLOAT_KEYS:
            out[key] = float(value)
        elif key == "cuts":
            out[key] = None if value == "auto" else int(value)
        else:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
    return out


def _settings(args) -> dict:
    cfg = read_config(args.config)
    for key in ("cuts", "params", "seed", "depth"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if getattr(args, "budget", None) is not None:
        cfg["budget"] = args.budget
    return cfg


def _engine(cfg: dict, args, budget_key: str = "budget") -> Engine:
    budget = cfg.get(budget_key) or None
    return Engine(cuts=cfg.get("cuts"), params=cfg["params"], cache=args.cache, budget=budget)


def _save_cache(engine: Engine, args):
    if args.cache:
        engine.save_cache(args.cache)


def _emit(args, data: dict, text: str):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _level(args) -> int:
    alpha = args.alpha_pos if args.alpha_pos is not None else args.alpha
    if alpha is None:
        raise TermError("missing level: give ALPHA or --alpha")
    return alpha


# ---------------------------------------------------------------- subcommands

def cmd_le(args) -> int:
    cfg = _settings(args)
    engine = _engine(cfg, args)
    v = engine.check_le(args.lhs, args.rhs, _level(args))
    _save_cache(engine, args)
    lines = [f"{v.lhs} <=_{v.alpha} {v.rhs}: {v.outcome.value}",
             f"bounds: C={v.bounds['C']} P={v.bounds['P']}  ({v.elapsed_ms:.0f} ms)"]
    for key, val in v.certificate.items():
        lines.append(f"  {key}: {val}")
    _emit(args, v.to_json(), "\n".join(lines))
    return {Outcome.TRUE: EXIT_TRUE, Outcome.FALSE: EXIT_FALSE}.get(v.outcome, EXIT_UNKNOWN)


def cmd_classify(args) -> int:
    cfg = _settings(args)
    engine = _engine(cfg, args, "classify_budget")
    r = Classifier(engine).classify(args.term)
    _save_cache(engine, args)
    label = str(r.upper) if r.exact else f"between {r.lower} and {r.upper or '?'}"
    lines = [f"{render(r.term)}: {label}"]
    for ev in r.evidence:
        detail = f" ({ev['detail']})" if ev.get("detail") else ""
        lines.append(f"  {ev['claim']}: {ev['rule']}{detail}")
    _emit(args, r.to_json(), "\n".join(lines))
    return EXIT_TRUE if r.exact else EXIT_UNKNOWN


def cmd_verify_suite(args) -> int:
    cfg = _settings(args)
    name = args.suite_pos or args.suite
    if name not in SUITES:
        raise TermError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    engine = None if name == "fs-lemmas" else _engine(cfg, args)
    rows = run_suite(name, seed=cfg["seed"], engine=engine)
    if engine is not None:
        _save_cache(engine, args)
    counts = {s: sum(r.status == s for r in rows) for s in ("pass", "fail", "inconclusive")}
    data = {"suite": name, "seed": cfg["seed"], "counts": counts, "results": [r.to_json() for r in rows]}
    lines = [f"{r.status:<12} {r.claim}  [expected {r.expected}; got {r.observed}]" for r in rows]
    lines.append(f"{name}: {counts['pass']} pass, {counts['fail']} fail, {counts['inconclusive']} inconclusive")
    _emit(args, data, "\n".join(lines))
    return EXIT_FALSE if any(r.status == FAIL for r in rows) else EXIT_TRUE


def cmd_game(args, stdin=None, out=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    cfg = _settings(args)
    g = Game(args.lhs, args.rhs, _level(args), role=args.role, engine=_engine(cfg, args))
    print("\n".join(g.transcript), file=out)
    while not g.finished:
        print(g.prompt(), file=out)
        print("> ", end="", file=out, flush=True)
        line = stdin.readline()
        if not line:
            print("\ninput closed, game abandoned", file=out)
            break
        try:
            print(g.play(line), file=out)
        except IllegalMove as exc:
            print(f"illegal move: {exc}", file=out)
    if args.transcript:
        g.save(args.transcript)
    if g.finished:
        print(g.prompt(), file=out)
        return EXIT_TRUE
    return EXIT_UNKNOWN


def cmd_fs(args) -> int:
    cfg = _settings(args)
    s = structure_from_json(Path(args.structure).read_text(encoding="utf-8"))
    tree = fs.tree_of_tuples(s, cfg["depth"], universe_cap=cfg["universe_cap"], depth_cap=cfg["depth_cap"])
    order = fs.order_of_tree(tree)
    own = SSCLabel.parse(fs.structure_ssc(s))
    image = fs_ssc_transfer(own)
    data = {"tree": fs.tree_to_json(tree), "order": render(order),
            "structure_ssc": str(own), "transfer": str(image)}
    text = "\n".join([fs.dump_tree(tree), "", f"order: {render(order)}",
                      f"structure: {own}  ->  tree of tuples: {image}"])
    _emit(args, data, text)
    return EXIT_TRUE


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file overriding the packaged defaults")
    common.add_argument("--cuts", type=int, help="cut bound C (default: from the terms)")
    common.add_argument("--params", type=int, help="parameter bound P")
    common.add_argument("--budget", type=float, help="seconds per engine query, 0 for none")
    common.add_argument("--seed", type=int)
    common.add_argument("--cache", help="engine cache file, read at start and written at exit")
    common.add_argument("--json", action="store_true", help="machine-readable report")

    p = argparse.ArgumentParser(prog="scottlo", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"scottlo {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def leveled(name, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("lhs")
        sp.add_argument("rhs")
        sp.add_argument("alpha_pos", nargs="?", type=int, metavar="ALPHA")
        sp.add_argument("--alpha", type=int)
        return sp

    leveled("le", "decide LHS <=_ALPHA RHS").set_defaults(func=cmd_le)

    sp = sub.add_parser("classify", parents=[common], help="Scott sentence complexity of a term")
    sp.add_argument("term")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify-suite", parents=[common], help="run a named check suite")
    sp.add_argument("suite_pos", nargs="?", metavar="SUITE")
    sp.add_argument("--suite", default="paper-relations", choices=sorted(SUITES))
    sp.set_defaults(func=cmd_verify_suite)

    sp = leveled("game", "play the back-and-forth game against the engine")
    sp.add_argument("--role", choices=(FORALL, EXISTS), default=FORALL)
    sp.add_argument("--transcript", help="save the session here")
    sp.set_defaults(func=cmd_game)

    sp = sub.add_parser("fs", parents=[common], help="tree of tuples and its linear order")
    sp.add_argument("structure", help="structure JSON file")
    sp.add_argument("--depth", type=int)
    sp.set_defaults(func=cmd_fs)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TermError, ValueError) as exc:
        if isinstance(exc, (CapExceeded, UnsupportedShape, UnsupportedLevel)):
            print(f"scottlo: {exc}", file=sys.stderr)
            return EXIT_BOUND
        if isinstance(exc, json.JSONDecodeError):
            print(f"scottlo: bad JSON: {exc}", file=sys.stderr)
            return EXIT_FILE
        print(f"scottlo: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, KeyError) as exc:
        print(f"scottlo: {exc}", file=sys.stderr)
        return EXIT_FILE
    except RuntimeError as exc:
        print(f"scottlo: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
