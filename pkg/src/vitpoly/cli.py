"""Command-line front end.

Every flag may also come from a JSON config file (``--config``): top-level
keys apply to all subcommands, a nested object named after a subcommand
applies to that one only, and flags given on the command line win.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, census, classify, dp, hull, propagate, regions, store, structure
from .model import MarkovChain, WeightScheme

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_MISSING = 3
EXIT_SCHEMA = 4
EXIT_BUDGET = 5
EXIT_CHECK_FAILED = 6

log = logging.getLogger("vitpoly")


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _matrix(text: str) -> tuple[tuple[Fraction, ...], ...]:
    """``"a,b;c,d"`` -> rows of rationals."""
    try:
        return tuple(tuple(Fraction(x) for x in row.split(",")) for row in text.split(";"))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad matrix {text!r}; use rows 'a,b;c,d'") from exc


def _vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}; use 'a,b,c'") from exc


def _store(args) -> store.CatalogStore | None:
    if args.no_cache:
        return None
    return store.CatalogStore(args.cache_dir)


def _budget(args) -> classify.SearchBudget:
    return classify.SearchBudget(restarts=args.restarts, steps=args.steps, seed=args.seed)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = {"n_from": "from", "n_to": "to"}
        raise UsageError("missing required option(s): "
                         + ", ".join("--" + flags.get(m, m).replace("_", "-") for m in missing))


def _catalog(args, classified: bool = False):
    """Catalog from ``--catalog``, else the cache, else computed (and cached)."""
    if getattr(args, "catalog", None):
        p = Path(args.catalog)
        if not p.exists():
            raise FileNotFoundError(f"catalog file not found: {p}")
        return store.load_catalog(p), p
    _need(args, "states", "length")
    cache = _store(args)
    cat = cache.load(args.states, args.length, args.start) if cache else None
    if cat is None:
        cat = propagate.enumerate_catalog(args.states, args.length, args.start, cache=cache,
                                          max_candidates=args.max_candidates)
    if classified and all(e.status == propagate.MINWEIGHT for e in cat.entries):
        cat = classify.classify_catalog(cat, _budget(args))
    if cache is not None:
        cache.save(cat)
    return cat, (cache.path(cat.k, cat.n, cat.start) if cache else None)


def _summary(cat) -> str:
    lines = [f"k={cat.k} n={cat.n} start={cat.start}: {len(cat)} vertices"]
    width = max((len(str(e.representative)) for e in cat.entries), default=8)
    lines.append(f"{'sequence':<{width}}  {'status':<15} tag")
    for e in cat.entries:
        lines.append(f"{str(e.representative):<{width}}  {e.status:<15} {e.tag or ''}".rstrip())
    counts = cat.status_counts()
    lines.append("totals: " + ", ".join(f"{s}={counts[s]}" for s in propagate.STATUSES))
    return "\n".join(lines)


def cmd_enumerate(args) -> int:
    _need(args, "states", "length")
    cache = _store(args)
    cat = propagate.enumerate_catalog(args.states, args.length, args.start, cache=cache,
                                      max_candidates=args.max_candidates)
    if cache is not None and args.start != 0:
        cache.save(cat)
    if args.out:
        store.save_catalog(args.out, cat)
    print(f"k={cat.k} n={cat.n} start={cat.start}: {len(cat)} vertices")
    for e in cat.entries:
        print(f"{e.representative}  {' '.join(map(str, e.counts))}")
    return EXIT_OK


def cmd_classify(args) -> int:
    cat, path = _catalog(args)
    cat = classify.classify_catalog(cat, _budget(args))
    if path is not None:
        store.save_catalog(path, cat)
    if args.out:
        store.save_catalog(args.out, cat)
    print(_summary(cat))
    return EXIT_OK


def cmd_census(args) -> int:
    _need(args, "states", "n_from", "n_to")
    table = census.run_census(args.states, args.n_from, args.n_to, _budget(args),
                              classified=not args.no_classify, all_starts=args.all_starts,
                              cache=_store(args), max_candidates=args.max_candidates)
    text = table.to_csv()
    if args.out:
        Path(args.out).write_text(text)
    if args.markdown:
        Path(args.markdown).write_text(table.to_markdown())
    sys.stdout.write(text)
    if table.gaps:
        print(f"budget exhausted; missing lengths: {' '.join(map(str, table.gaps))}",
              file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_polytope(args) -> int:
    if args.combined:
        _need(args, "length")
        ps, rep = propagate.combined_polytope(args.length, args.states or 2)
    else:
        cat, _ = _catalog(args)
        ps = hull.PointSet(cat.k ** 2, tuple(cat.points()))
        rep = hull.vertices(ps)
        if args.edges or args.out:
            rep.edges = hull.edges(ps, rep)
        if args.f_vector or args.out:
            rep.f_vector = hull.f_vector(ps, args.max_face_dim, rep)
    if args.out:
        store.write_json(args.out, store.polytope_to_json(ps, rep))
    if args.poly:
        Path(args.poly).write_text(store.poly_text(ps, rep))
    if args.f_vector:
        print(" ".join(map(str, rep.f_vector)))
    else:
        print(f"{len(rep.vertex_indices)} vertices among {len(ps)} points")
        if rep.edges is not None:
            print(f"{len(rep.edges)} edges")
    return EXIT_OK


def cmd_validate(args) -> int:
    lengths = ([args.length] if args.length is not None
               else list(range(args.n_from, args.n_to + 1)) if args.n_from is not None else None)
    if args.catalog:
        lengths = [None]
    elif lengths is None:
        raise UsageError("give --length, --from/--to, or --catalog")
    report = []
    failures = 0
    print(f"{'n':>3}  {'sequence':<24} {'period':<6} {'r':>3}  result")
    for n in lengths:
        if n is not None:
            args.length = n
        cat, _ = _catalog(args, classified=True)
        for v in structure.validate_catalog(cat):
            failures += not v.ok
            reasons = list(v.failed_bounds)
            if v.subword_violations:
                reasons.append(f"subwordx{v.subword_violations}")
            if not v.period_allowed:
                reasons.append("period")
            print(f"{cat.n:>3}  {v.sequence:<24} {v.period or '-':<6} {v.repetitions:>3}  "
                  + ("pass" if v.ok else "FAIL " + ",".join(reasons)))
            report.append({"k": cat.k, "n": cat.n, "start": cat.start, "sequence": v.sequence,
                           "period": v.period, "repetitions": v.repetitions, "extra": v.extra,
                           "failed_bounds": list(v.failed_bounds),
                           "subword_violations": v.subword_violations,
                           "period_allowed": v.period_allowed, "ok": v.ok})
    print(f"{len(report) - failures} passed, {failures} failed")
    if args.out:
        store.write_json(args.out, {"schema_version": store.SCHEMA_VERSION, "kind": "validation",
                                    "entries": report})
    if failures:
        raise CheckFailed(f"{failures} structural violations")
    return EXIT_OK


def cmd_regions(args) -> int:
    subs = ["pi0", "pi1"] if args.subspace == "both" else [args.subspace]
    ok = True
    out = []
    for sub in subs:
        sample = regions.sample_regions(args.length, sub, args.step)
        out.append(sample.to_csv() if not out else sample.to_csv().split("\n", 1)[1])
        if args.check:
            cat, _ = _catalog(argparse.Namespace(**{**vars(args), "states": 2,
                                                     "start": regions.SUBSPACES[sub]}),
                              classified=True)
            stray = regions.outside_catalog(sample, cat)
            b = regions.boundary_check(sample)
            print(f"{sub}: {len(sample.cells)} cells, {len(sample.ties())} ties, "
                  f"{len(sample.class_counts())} classes, {len(stray)} outside catalog; "
                  f"boundary {b.a}|{b.b}: {b.a_cells}/{b.b_cells} cells, "
                  f"{len(b.misplaced)} misplaced, {b.adjacent_pairs} adjacent switches",
                  file=sys.stderr)
            ok = ok and not stray and b.ok
    text = "".join(out)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if not ok:
        raise CheckFailed("region sampling check failed")
    return EXIT_OK


def cmd_viterbi(args) -> int:
    _need(args, "length")
    if (args.matrix is None) == (args.weights is None):
        raise UsageError("give exactly one of --matrix or --weights")
    if args.matrix is not None:
        k = len(args.matrix)
        pi = args.pi if args.pi is not None else tuple(Fraction(int(i == (args.start or 0)))
                                                       for i in range(k))
        try:
            chain = MarkovChain(k, pi, args.matrix)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        opt = dp.viterbi(chain, args.length, cap=args.cap, start=args.start)
        label = "probability"
    else:
        try:
            ws = WeightScheme(len(args.weights), args.weights, args.omega)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        start = args.start if args.start is not None or ws.omega is not None else 0
        opt = dp.min_weight(ws, args.length, start=start, cap=args.cap)
        label = "weight"
    print(f"{label} {store.frac_str(opt.value)}")
    print(f"tie {str(opt.tie_flag).lower()}")
    for s in opt.argmax_paths:
        print(f"path {s}")
    if opt.cap_hit:
        print(f"(path list truncated at {args.cap})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vitpoly", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default option values")
    common.add_argument("--cache-dir", help=f"catalog cache (default ${store.CACHE_ENV} "
                                            "or ~/.cache/vitpoly)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("-v", "--verbose", action="store_true")

    cat_opts = argparse.ArgumentParser(add_help=False)
    cat_opts.add_argument("--states", "-k", type=int)
    cat_opts.add_argument("--length", "-n", type=int)
    cat_opts.add_argument("--start", type=int, default=0)
    cat_opts.add_argument("--max-candidates", type=int, default=propagate.DEFAULT_MAX_CANDIDATES)

    search = argparse.ArgumentParser(add_help=False)
    d = classify.SearchBudget()
    search.add_argument("--restarts", type=int, default=d.restarts)
    search.add_argument("--steps", type=int, default=d.steps)
    search.add_argument("--seed", type=int, default=d.seed)

    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", parents=[common, cat_opts], help="min-weight vertex catalog")
    s.add_argument("--out", help="write the catalog JSON here")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("classify", parents=[common, cat_opts, search],
                       help="certify catalog entries as Viterbi")
    s.add_argument("--catalog", help="catalog JSON to update in place")
    s.add_argument("--out", help="also write the classified catalog here")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("census", parents=[common, search], help="counts over a range of lengths")
    s.add_argument("--states", "-k", type=int)
    s.add_argument("--from", dest="n_from", type=int)
    s.add_argument("--to", dest="n_to", type=int)
    s.add_argument("--no-classify", action="store_true", help="vertex counts only")
    s.add_argument("--all-starts", action="store_true", help="sum over every start state")
    s.add_argument("--max-candidates", type=int, default=propagate.DEFAULT_MAX_CANDIDATES)
    s.add_argument("--out", help="CSV file")
    s.add_argument("--markdown", help="Markdown summary file")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("polytope", parents=[common, cat_opts], help="hull combinatorics")
    s.add_argument("--f-vector", action="store_true", help="print the face counts only")
    s.add_argument("--edges", action="store_true")
    s.add_argument("--combined", action="store_true",
                   help="both start polytopes with an extra start coordinate")
    s.add_argument("--max-face-dim", type=int, default=hull.DEFAULT_MAX_FACE_DIM)
    s.add_argument("--catalog", help="use this catalog JSON")
    s.add_argument("--out", help="polytope JSON")
    s.add_argument("--poly", help="plain-text point list")
    s.set_defaults(func=cmd_polytope)

    s = sub.add_parser("validate", parents=[common, cat_opts, search],
                       help="structural checks on certified entries")
    s.add_argument("--from", dest="n_from", type=int)
    s.add_argument("--to", dest="n_to", type=int)
    s.add_argument("--catalog", help="validate this classified catalog JSON")
    s.add_argument("--out", help="JSON report")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("regions", parents=[common, search],
                       help="sample two-state Viterbi regions on a grid")
    s.add_argument("--length", "-n", type=int, default=3)
    s.add_argument("--subspace", choices=["pi0", "pi1", "both"], default="pi0")
    s.add_argument("--step", type=_frac, default=Fraction(1, 100))
    s.add_argument("--check", action="store_true",
                   help="check catalog membership and the 0000/0111 boundary")
    s.add_argument("--max-candidates", type=int, default=propagate.DEFAULT_MAX_CANDIDATES)
    s.add_argument("--out", help="CSV file (default stdout)")
    s.set_defaults(func=cmd_regions, catalog=None)

    s = sub.add_parser("viterbi", parents=[common], help="exact optimal paths for one chain")
    s.add_argument("--length", "-n", type=int)
    s.add_argument("--matrix", type=_matrix, help="transition matrix 'a,b;c,d'")
    s.add_argument("--pi", type=_vector, help="initial distribution (default: point mass)")
    s.add_argument("--weights", type=_matrix, help="weight matrix 'a,b;c,d' (min-weight mode)")
    s.add_argument("--omega", type=_vector, help="initial weights (min-weight mode)")
    s.add_argument("--start", type=int)
    s.add_argument("--cap", type=int, default=dp.DEFAULT_CAP, help="max paths listed")
    s.set_defaults(func=cmd_viterbi)
    return p


def _dest(key: str) -> str:
    d = key.replace("-", "_")
    return {"from": "n_from", "to": "n_to"}.get(d, d)


def _config_defaults(path: str, command: str, parser: argparse.ArgumentParser) -> dict:
    """Option defaults for ``command`` from a JSON config file."""
    try:
        cfg = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise store.SchemaError(f"config {path}: not valid JSON ({exc})") from exc
    if not isinstance(cfg, dict):
        raise store.SchemaError(f"config {path}: top-level object expected")
    subs = parser._subparsers._group_actions[0].choices
    known_anywhere = {a.dest for sp in subs.values() for a in sp._actions}
    actions = {a.dest: a for a in subs[command]._actions if a.dest not in ("help", "config")}
    section = cfg.get(command, {})
    if not isinstance(section, dict):
        raise store.SchemaError(f"config {path}: section {command!r} must be an object")
    out = {}
    for key, value in cfg.items():
        if key in subs:
            continue
        if isinstance(value, dict) or _dest(key) not in known_anywhere:
            raise store.SchemaError(f"config {path}: unknown option {key!r}")
        if _dest(key) in actions:
            out[_dest(key)] = value
    for key, value in section.items():
        if _dest(key) not in actions:
            raise store.SchemaError(f"config {path}: unknown option {key!r} for {command}")
        out[_dest(key)] = value
    for dest, value in out.items():
        conv = actions[dest].type
        if conv is not None and value is not None:
            try:
                out[dest] = conv(str(value)) if conv in (_frac, _matrix, _vector) else conv(value)
            except (TypeError, ValueError, argparse.ArgumentTypeError) as exc:
                raise store.SchemaError(f"config {path}: bad value for {dest}: {exc}") from exc
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.config:
            sub = parser._subparsers._group_actions[0].choices[args.command]
            sub.set_defaults(**_config_defaults(args.config, args.command, parser))
            args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except store.SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except propagate.BudgetExceeded as exc:
        done = exc.completed.n if exc.completed is not None else "none"
        print(f"error: {exc} (last complete length: {done})", file=sys.stderr)
        return EXIT_BUDGET
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
