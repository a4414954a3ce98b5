"""Command line front end.

    b0kit table --p 5 [--json out.json] [--workers N]
    b0kit group (--family ID | --file F) --p P --mode {b0,multiplier,quickcheck}
    b0kit verify identities (--family ID | --file F) --p P [--law L] [--samples N] [--seed S]
    b0kit verify noether [--p P] [--script NAME] [--literal]
    b0kit verify hk (--family ID | --file F) --p P --normal a3,b,g
    b0kit list

Exit codes: 0 when every comparison succeeded, 1 for a domain failure or a
verdict mismatch, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .errors import B0KitError, BudgetExceeded, InconsistentPresentation, PreconditionError
from .pc.presentation import is_prime
from .report import RunReport

# ----------------------------------------------------------------------------
# workers (module level so they pickle)


def _table_row(args: tuple[str, int, int | None]) -> dict:
    fid, p, budget = args
    from .catalog import family_presentation, get_family
    from .multiplier.bogomolov import bogomolov_multiplier

    entry = get_family(fid)
    row = {"family": fid, "index": entry.index, "class": entry.nilpotency_class,
           "expected": entry.expected}
    t0 = time.perf_counter()
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            pres = family_presentation(fid, p)
        res = bogomolov_multiplier(pres, budget)
    except BudgetExceeded as exc:
        row.update(verdict="Inconclusive", match=None, error=str(exc))
    except (PreconditionError, InconsistentPresentation) as exc:
        # e.g. phi43 at p = 3, or a family whose relations collapse at small p
        row.update(verdict="NotApplicable", match=None, error=str(exc))
    else:
        row.update(verdict=res.verdict, match=res.verdict == entry.expected,
                   order=pres.order, m=list(res.m.invariants), m0=list(res.m0.invariants),
                   b0=list(res.b0.invariants), witnesses=res.generator_log,
                   pairs_examined=res.pairs_examined, classes=res.classes, early_exit=res.early_exit,
                   notes=list(pres.notes), timings=dict(res.timings))
        row["warnings"] = [str(w.message) for w in caught]
    row.setdefault("timings", {})["elapsed_s"] = round(time.perf_counter() - t0, 3)
    return row


def run_table(p: int, workers: int = 1, budget: int | None = None, seed: int = 0) -> RunReport:
    """B0 for every transcribed family, compared with the Table 1 verdicts."""
    from .catalog import list_families

    t0 = time.perf_counter()
    ids = [e.family_id for e in list_families(include_untranscribed=False)]
    jobs = [(fid, p, budget) for fid in ids]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_table_row, jobs))
    else:
        rows = [_table_row(j) for j in jobs]
    # canonical catalog order regardless of completion order
    order = {fid: i for i, fid in enumerate(ids)}
    rows.sort(key=lambda r: order[r["family"]])
    rep = RunReport("table", {"p": p}, rows, seed, __version__)
    if p == 3:
        rep.warnings.append("p>3 assumption violated: the classification is stated for p > 3")
    mismatches = [r["family"] for r in rows if r["match"] is False]
    budget_hits = [r["family"] for r in rows if r["verdict"] == "Inconclusive"]
    skipped = [r["family"] for r in rows if r["verdict"] == "NotApplicable"]
    rep.summary = {"rows": len(rows),
                   "nontrivial": [r["family"] for r in rows if r["verdict"] == "Nontrivial"],
                   "mismatches": mismatches, "budget_exceeded": budget_hits, "not_applicable": skipped,
                   "all_match": not mismatches and not budget_hits}
    rep.timings = {"elapsed_s": round(time.perf_counter() - t0, 3), "workers": workers}
    return rep


# ----------------------------------------------------------------------------

def _load_group(args):
    from .catalog import family_presentation
    from .pc.elements import check_consistency
    from .pc.presentation import parse_presentation
    from .errors import InconsistentPresentation

    if args.family:
        params = dict(kv.split("=", 1) for kv in (args.param or []))
        params = {k: int(v) for k, v in params.items()}
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            pres = family_presentation(args.family, args.p, params or None)
        return pres, [str(w.message) for w in caught]
    with open(args.file) as fh:
        text = fh.read()
    pres = parse_presentation(text, p=args.p, name=args.file)
    bad = check_consistency(pres)
    if bad:
        raise InconsistentPresentation(bad)
    return pres, []


def run_group(args) -> tuple[RunReport, int]:
    from .catalog import get_family
    from .multiplier.bogomolov import bogomolov_multiplier, schur_multiplier
    from .pc.structure import quick_vanish_check

    t0 = time.perf_counter()
    pres, warn = _load_group(args)
    src = {"family": args.family} if args.family else {"file": args.file}
    res: dict = {"group": pres.name, "order": pres.order, "mode": args.mode}
    code = 0
    if args.mode == "b0":
        r = bogomolov_multiplier(pres, args.budget)
        res.update(verdict=r.verdict, m=list(r.m.invariants), m0=list(r.m0.invariants),
                   b0=list(r.b0.invariants), witnesses=r.generator_log, pairs_examined=r.pairs_examined,
                   classes=r.classes, early_exit=r.early_exit, timings=r.timings)
        if args.family:
            expected = get_family(args.family).expected
            res["expected"] = expected
            res["match"] = expected == r.verdict
            code = 0 if res["match"] else 1
    elif args.mode == "multiplier":
        m = schur_multiplier(pres)
        res.update(verdict="Trivial" if m.is_trivial else "Nontrivial", m=list(m.invariants))
    else:
        check = quick_vanish_check(pres, args.budget)
        res.update(check=check, verdict="Trivial" if check == "Vanishes" else "NotApplicable",
                   criterion="distinct absolute elements as commutators of generators")
    rep = RunReport("group", {**src, "p": args.p, "mode": args.mode}, [res], None, __version__, warn)
    rep.timings = {"elapsed_s": round(time.perf_counter() - t0, 3)}
    return rep, code


def run_verify(args) -> tuple[RunReport, int]:
    t0 = time.perf_counter()
    if args.target == "identities":
        from .pc.identities import LAWS, verify_identities

        pres, warn = _load_group(args)
        laws = tuple(args.law) if args.law else LAWS
        reports = verify_identities(pres, laws, args.samples, args.seed, args.budget)
        results = [r.to_dict() for r in reports]
        code = 0
        if any(r.verdict == "Fail" for r in reports):
            code = 1
        if args.law and any(r.refused for r in reports):
            code = 1
        src = {"family": args.family} if args.family else {"file": args.file}
        rep = RunReport("verify identities", {**src, "p": args.p, "laws": list(laws),
                                              "samples": args.samples}, results, args.seed, __version__, warn)
    elif args.target == "noether":
        from .monomial import SCRIPT_NAMES, build_script, load_script, shipped_script, verify_script

        names = args.script or list(SCRIPT_NAMES)
        unknown = [n for n in names if n not in SCRIPT_NAMES and not n.endswith(".json")]
        if unknown:
            raise PreconditionError(f"unknown script {unknown[0]!r}; shipped: {', '.join(SCRIPT_NAMES)}")
        results = []
        for name in names:
            if args.literal:
                script = load_script(build_script(name, args.p, literal=True))
            elif name.endswith(".json"):
                script = load_script(name)
            else:
                script = shipped_script(name, args.p)
            results.append(verify_script(script, args.budget).to_dict())
        code = 0 if all(r["outcome"] == "Pass" for r in results) else 1
        rep = RunReport("verify noether", {"p": args.p, "scripts": names, "literal": args.literal},
                        results, None, __version__)
    else:
        from .hoshikang import hk_certificate

        pres, warn = _load_group(args)
        normal = [s.strip() for s in args.normal.split(",") if s.strip()]
        cert = hk_certificate(pres, normal, args.budget)
        result = cert.to_dict()
        code = 0 if cert.verdict == "Nontrivial" else 1
        src = {"family": args.family} if args.family else {"file": args.file}
        rep = RunReport("verify hk", {**src, "p": args.p, "normal": normal}, [result], None,
                        __version__, warn)
    rep.timings = {"elapsed_s": round(time.perf_counter() - t0, 3)}
    return rep, code


def run_list() -> RunReport:
    from .catalog import list_families

    rows = [{"family": e.family_id, "index": e.index, "class": e.nilpotency_class,
             "expected": e.expected, "table1": e.table1_verdict, "transcribed": e.transcribed}
            for e in list_families()]
    return RunReport("list", {}, rows, None, __version__)


# ----------------------------------------------------------------------------
# printing

def _fmt(inv) -> str:
    return " x ".join(f"C{d}" for d in inv) if inv else "1"


def _print(rep: RunReport, out=None) -> None:
    out = out or sys.stdout
    for w in rep.warnings:
        print(f"warning: {w}", file=out)
    if rep.command == "table":
        print(f"{'family':<12} {'class':>5} {'M(G)':<40} {'B0(G)':<8} {'verdict':<12} expected", file=out)
        for r in rep.results:
            if "error" in r:
                print(f"{r['family']:<12} {r['class']:>5} {r['verdict']}: {r['error']}", file=out)
                continue
            mark = "ok" if r["match"] else "MISMATCH"
            print(f"{r['family']:<12} {r['class']:>5} {_fmt(r['m']):<40} {_fmt(r['b0']):<8} "
                  f"{r['verdict']:<12} {r['expected']} {mark}", file=out)
        s = rep.summary
        print(f"{s['rows']} rows, nontrivial: {', '.join(s['nontrivial']) or 'none'}, "
              f"mismatches: {len(s['mismatches'])}, budget exceeded: {len(s['budget_exceeded'])}", file=out)
    elif rep.command == "group":
        r = rep.results[0]
        if r["mode"] == "b0":
            extra = f" (expected {r['expected']})" if "expected" in r else ""
            print(f"{r['group']}: M = {_fmt(r['m'])}, M0 = {_fmt(r['m0'])}, B0 = {_fmt(r['b0'])}: "
                  f"{r['verdict']}{extra}", file=out)
        elif r["mode"] == "multiplier":
            print(f"{r['group']}: M = {_fmt(r['m'])}", file=out)
        else:
            print(f"{r['group']}: {r['check']}", file=out)
    elif rep.command == "verify identities":
        for r in rep.results:
            why = f" ({r['refused']})" if r["refused"] else ""
            print(f"{r['law']:<8} {r['outcome']:<14} samples={r['samples']} "
                  f"failures={r['failure_count']}{why}", file=out)
    elif rep.command == "verify noether":
        for r in rep.results:
            tail = f": {r['first_violation']}" if r["first_violation"] else ""
            print(f"{r['script']:<12} p={r['prime']} {r['outcome']} ({len(r['stages'])} stages){tail}", file=out)
    elif rep.command == "verify hk":
        r = rep.results[0]
        print(f"N = <{', '.join(r['normal_generators'])}> of order {r['n_order']}", file=out)
        print(f"H1(N)^G = {_fmt(r['h1_fixed'])} generated by {', '.join(r['h1_fixed_generators']) or '0'}",
              file=out)
        print(f"H2(G/N, Q/Z) = {_fmt(r['h2_quotient'])}: transgression {r['obstruction']}", file=out)
        wit = f", witness {tuple(r['witness'])}" if r["witness"] else ""
        print(f"bicyclic image condition: {r['bicyclic_condition']}{wit}", file=out)
        print(f"verdict: {r['verdict']}", file=out)
    elif rep.command == "list":
        for r in rep.results:
            print(f"{r['family']:<12} index {r['index']:>2} class {r['class']} "
                  f"Table 1: {r['table1']:<10} {'' if r['transcribed'] else '(not transcribed)'}", file=out)


# ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="b0kit", description="Bogomolov multipliers of p-groups")
    ap.add_argument("--version", action="version", version=f"b0kit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, p_required=True):
        sp.add_argument("--p", type=int, required=p_required, default=None if p_required else 5)
        sp.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
        sp.add_argument("--budget", type=int, default=None, help="enumeration budget (default B0KIT_BUDGET)")

    def source(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--family")
        g.add_argument("--file")
        sp.add_argument("--param", action="append", metavar="K=V", help="family parameter override")

    t = sub.add_parser("table", help="reproduce Table 1 for the transcribed families")
    common(t)
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("group", help="one group")
    common(g)
    source(g)
    g.add_argument("--mode", choices=("b0", "multiplier", "quickcheck"), default="b0")

    v = sub.add_parser("verify", help="identity suites, Noether scripts, HK certificates")
    vs = v.add_subparsers(dest="target", required=True)
    vi = vs.add_parser("identities")
    common(vi)
    source(vi)
    vi.add_argument("--law", action="append", choices=("L2.1.1", "L2.1.4", "L2.1.7", "L2.2", "L2.3"))
    vi.add_argument("--samples", type=int, default=1000)
    vi.add_argument("--seed", type=int, default=0)
    vn = vs.add_parser("noether")
    common(vn, p_required=False)
    vn.add_argument("--script", action="append", help="shipped script name or a JSON path")
    vn.add_argument("--literal", action="store_true", help="use the printed tables without corrections")
    vh = vs.add_parser("hk")
    common(vh)
    source(vh)
    vh.add_argument("--normal", required=True, help="comma-separated generators of N")

    sub.add_parser("list", help="catalog of families").add_argument("--json", metavar="PATH")
    return ap


def _emit(rep: RunReport, path: str | None) -> None:
    if path == "-":
        sys.stdout.write(rep.to_json())
        return
    _print(rep)
    if path:
        with open(path, "w") as fh:
            fh.write(rep.to_json())


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    p = getattr(args, "p", None)
    if p is not None and not is_prime(p):
        ap.error(f"--p {p} is not prime")
    if getattr(args, "workers", 1) < 1:
        ap.error("--workers must be positive")
    try:
        if args.command == "table":
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                rep = run_table(p, args.workers, args.budget, args.seed)
            code = 0 if rep.summary["all_match"] else 1
        elif args.command == "group":
            rep, code = run_group(args)
        elif args.command == "verify":
            rep, code = run_verify(args)
        else:
            rep, code = run_list(), 0
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except B0KitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(rep, getattr(args, "json", None))
    return code


if __name__ == "__main__":
    sys.exit(main())
