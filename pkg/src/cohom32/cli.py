"""Command-line front end: ``cohom32 <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource cap hit.
Progress goes to standard error; results go to standard output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bar import class_is_zero, coboundary, format_combination, identify, restrict
from .catalog import NamedClassCatalog
from .config import MiB, ResourceCapError, get_config, set_config
from .graded import PresentationError, RingPresentation, hilbert
from .groups import BUILTIN_NAMES, SUBGROUPS, builtin, canonical_name, named_subgroup
from .pcgroups import GroupError, center, cyclic_structure, is_abelian
from .resolution import extend_resolution
from .verify import all_passed, format_report, report_digest, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _emit(args, doc: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


# -- commands ------------------------------------------------------------------------------


def cmd_groups(args) -> int:
    if args.action == "list":
        rows = []
        for name in BUILTIN_NAMES:
            G = builtin(name)
            rows.append({"name": name, "order": G.order, "abelian": is_abelian(G)})
        text = "\n".join(f"{r['name']:<8} order {r['order']:<3} {'abelian' if r['abelian'] else 'nonabelian'}"
                         for r in rows)
        _emit(args, {"groups": rows}, text)
        return EXIT_OK
    if not args.name:
        raise UsageError("groups show needs a group name")
    G = builtin(args.name)
    doc = {
        "name": G.name,
        "order": G.order,
        "presentation": G.to_json(),
        "center": [z.word() for z in center(G)],
        "element_orders": {str(k): v for k, v in cyclic_structure(G)},
        "digest": G.digest(),
    }
    lines = [G.describe(), f"order: {G.order}", f"center: {', '.join(doc['center'])}",
             "element orders: " + " ".join(f"{k}:{v}" for k, v in doc["element_orders"].items())]
    subs = [k for k, (parent, _, _) in SUBGROUPS.items() if parent == G.name]
    if subs:
        lines.append("named subgroups: " + " ".join(subs))
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_betti(args) -> int:
    G = builtin(args.group)
    cache = False if args.no_cache else (Path(args.cache) if args.cache else True)
    R = extend_resolution(G, args.max_degree, cache=cache,
                          progress=lambda n, b: _progress(f"{G.name}: b_{n} = {b}"))
    betti = list(R.betti[: args.max_degree + 1])
    _emit(args, {"group": G.name, "betti": betti}, " ".join(map(str, betti)))
    return EXIT_OK


def cmd_cocycle(args) -> int:
    cat = NamedClassCatalog()
    c = cat(args.group, args.symbol)
    delta = int(coboundary(c).values.sum())
    nonzero = delta == 0 and not class_is_zero(c)
    ok = delta == 0 and nonzero
    doc = {"group": c.group.name, "symbol": args.symbol, "degree": c.degree, "cocycle": delta == 0,
           "delta_support": delta, "class_nonzero": nonzero, "status": "pass" if ok else "fail"}
    text = (f"{c.group.name} {args.symbol} (degree {c.degree}): cocycle {'yes' if delta == 0 else 'no'}, "
            f"class nonzero {'yes' if nonzero else 'no'} -> {'pass' if ok else 'fail'}")
    _emit(args, doc, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_restrict(args) -> int:
    cat = NamedClassCatalog()
    parent, _, _ = SUBGROUPS.get(args.subgroup, (None, None, None))
    if parent is None:
        raise UsageError(f"unknown subgroup {args.subgroup}; known: {', '.join(SUBGROUPS)}")
    if canonical_name(args.group) != parent:
        raise UsageError(f"{args.subgroup} is a subgroup of {parent}, not of {args.group}")
    c = cat(parent, args.symbol)
    r = restrict(c, named_subgroup(args.subgroup)[1])
    comb = identify(r, cat.monomial_basis(args.subgroup, r.degree))
    value = format_combination(comb)
    doc = {"group": parent, "symbol": args.symbol, "subgroup": args.subgroup, "restriction": value}
    _emit(args, doc, f"res {args.symbol} = {value}")
    return EXIT_OK if comb is not None else EXIT_FAIL


def cmd_hilbert(args) -> int:
    try:
        text = Path(args.presentation).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    P = RingPresentation.parse(text)
    h = hilbert(P, args.max_degree)
    _emit(args, {"presentation": P.to_text(), "hilbert": h}, " ".join(map(str, h)))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_all(args.max_degree, progress=_progress)
    report_text = json.dumps(report, indent=2, sort_keys=True)
    if args.report:
        Path(args.report).write_text(report_text + "\n")
    if args.json or args.format == "json":
        print(report_text)
    else:
        print(format_report(report))
        print(f"report digest: {report_digest(report)}")
    return EXIT_OK if all_passed(report) else EXIT_FAIL


def cmd_cache(args) -> int:
    d = get_config().cache_dir
    files = sorted(d.glob("*.json")) if d.is_dir() else []
    if args.action == "clear":
        for f in files:
            f.unlink()
        _emit(args, {"cache_dir": str(d), "removed": len(files)}, f"removed {len(files)} files from {d}")
    else:
        size = sum(f.stat().st_size for f in files)
        _emit(args, {"cache_dir": str(d), "files": [f.name for f in files], "bytes": size},
              "\n".join([f"cache: {d}", *(f.name for f in files), f"{len(files)} files, {size} bytes"]))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cohom32", description="Mod-2 cohomology workbench for 32G3f.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--format", choices=("text", "json"), default=None, help="output format")
    p.add_argument("--memory-cap", type=int, metavar="MIB", help="memory cap in MiB (at least 64)")
    p.add_argument("--cache-dir", help="resolution cache directory (default: $COHOM32_CACHE or ~/.cache/cohom32)")
    p.add_argument("--threads", type=int, help="worker threads for linear algebra")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("groups", help="list or show the built-in groups")
    g.add_argument("action", choices=("list", "show"))
    g.add_argument("name", nargs="?")
    g.set_defaults(func=cmd_groups)

    b = sub.add_parser("betti", help="Betti numbers from the minimal resolution")
    b.add_argument("group")
    b.add_argument("--max-degree", type=int, default=None)
    b.add_argument("--cache", metavar="DIR")
    b.add_argument("--no-cache", action="store_true")
    b.set_defaults(func=cmd_betti)

    c = sub.add_parser("cocycle", help="check a catalog cocycle")
    c.add_argument("action", choices=("check",))
    c.add_argument("group")
    c.add_argument("symbol")
    c.set_defaults(func=cmd_cocycle)

    r = sub.add_parser("restrict", help="identify the restriction of a catalog class")
    r.add_argument("group")
    r.add_argument("symbol")
    r.add_argument("--subgroup", required=True)
    r.set_defaults(func=cmd_restrict)

    h = sub.add_parser("hilbert", help="Hilbert function of a presentation file")
    h.add_argument("--presentation", required=True, metavar="FILE")
    h.add_argument("--max-degree", type=int, default=None)
    h.set_defaults(func=cmd_hilbert)

    v = sub.add_parser("verify-paper", help="run checks C1..C17")
    v.add_argument("--max-degree", type=int, default=None)
    v.add_argument("--report", metavar="FILE")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("cache", help="inspect or clear the resolution cache")
    k.add_argument("action", choices=("info", "clear"))
    k.set_defaults(func=cmd_cache)
    return p


def _configure(args) -> None:
    cfg = get_config()
    kw = {}
    if args.memory_cap is not None:
        kw["memory_cap"] = args.memory_cap * MiB
    if args.cache_dir:
        kw["cache_dir"] = Path(args.cache_dir)
    if args.threads is not None:
        kw["threads"] = args.threads
    if args.format is not None:
        kw["output_format"] = args.format
    if getattr(args, "max_degree", None) is not None:
        kw["maxdeg"] = args.max_degree
    cfg = cfg.replace(**kw)
    set_config(cfg)
    args.format = cfg.output_format
    if hasattr(args, "max_degree") and args.max_degree is None:
        args.max_degree = cfg.maxdeg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    prev = get_config()
    try:
        _configure(args)
        return args.func(args)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, GroupError, PresentationError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"cohom32: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        set_config(prev)


if __name__ == "__main__":
    sys.exit(main())
