"""Command-line driver: ``gqbci spectrum ...`` and ``gqbci verify ...``.

stdout carries exactly one JSON document; diagnostics go to stderr.
Exit codes: 0 expected verdict reproduced, 1 contradicted (or routes
disagree), 2 usage or parse error, 3 a guard bound was exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bci import (DEFAULT_MAX_N, OutOfScope, crosscheck_fif_2bci, is_fif, is_m_bci,
                  predicted_3bci, verify_lemma_3_3, verify_theorem_1)
from .bicayley import build, connection_set
from .group import GQ, InvalidParameter, TooLarge
from .spectra import ConsistencyError, SpectrumSummary, charpoly_exact, spectrum_via_reps

EXIT_OK, EXIT_CONTRADICTED, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_n_range(text: str) -> list[int]:
    """``7`` or ``lo..hi`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if lo_i > hi_i:
                raise ValueError
            return list(range(lo_i, hi_i + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad n or n-range {text!r}; use N or LO..HI") from None


def _summary_json(s: SpectrumSummary) -> dict:
    ints = sorted({round(v) for v, _ in s.eigenvalues if abs(v - round(v)) < 1e-6})
    return {
        "source": s.source,
        "charpoly": [str(c) for c in s.charpoly],
        "eigenvalues": [{"value": round(v, 12), "multiplicity": m} for v, m in s.eigenvalues],
        "integer_eigenvalues": [{"value": r, "multiplicity": s.multiplicity(r)} for r in ints],
    }


def cmd_spectrum(args) -> tuple[dict, int]:
    n = parse_n_range(args.n)
    if len(n) != 1:
        raise UsageError("spectrum takes a single n")
    g = GQ(n[0])
    try:
        S = connection_set(g, args.set)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    routes = ["reps", "exact"] if args.route == "both" else [args.route]
    result: dict = {"n": g.n, "set": S.render(), "route": args.route}
    summaries = {}
    for route in routes:
        if route == "reps":
            summaries[route] = spectrum_via_reps(S)
        else:
            summaries[route] = charpoly_exact(build(S))
    code = EXIT_OK
    if len(summaries) == 2:
        agree = summaries["reps"].charpoly == summaries["exact"].charpoly
        result["routes_agree"] = agree
        result["max_residue"] = summaries["reps"].max_residue
        if not agree:
            print("route disagreement:", file=sys.stderr)
            print(f"  reps : {list(summaries['reps'].charpoly)}", file=sys.stderr)
            print(f"  exact: {list(summaries['exact'].charpoly)}", file=sys.stderr)
            code = EXIT_CONTRADICTED
    main = summaries.get("exact") or summaries["reps"]
    result.update(_summary_json(main))
    if args.csv:
        _write(args.csv, main.to_csv())
    return result, code


def cmd_verify(args) -> tuple[dict, int]:
    ns = parse_n_range(args.n)
    what = args.what
    timing = not args.no_timing
    if what == "theorem1":
        rows = verify_theorem_1(ns, max_n=args.max_n, jobs=args.jobs)
        for r in rows:
            if r.error:
                print(f"n={r.n}: {r.error}", file=sys.stderr)
        doc = {"rows": [r.to_json(timing) for r in rows]}
        # a contradiction outranks a guard hit on some other n
        if not all(r.agrees for r in rows if r.error is None):
            return doc, EXIT_CONTRADICTED
        return doc, EXIT_GUARD if any(r.error for r in rows) else EXIT_OK
    out = []
    ok = True
    for n in ns:
        if what == "fif":
            rep = is_fif(n)
            ok &= rep.holds == predicted_3bci(n)
            out.append(rep.to_json())
        elif what == "bci":
            rep = is_m_bci(n, args.m, max_n=args.max_n, jobs=args.jobs)
            ok &= rep.holds == (args.m == 1 or predicted_3bci(n))
            out.append(rep.to_json(timing))
        elif what == "fif2bci":
            agree = crosscheck_fif_2bci(n, max_n=args.max_n, jobs=args.jobs)
            ok &= agree
            out.append({"n": n, "agree": agree})
        elif what == "lemma33":
            checks = verify_lemma_3_3(n)
            ok &= all(c.ok for c in checks)
            out.append({"n": n, "pairs": [c.to_json() for c in checks]})
        elif what == "homogeneous":
            holds, cex = GQ(n).is_homogeneous(max_n=args.max_n)
            entry = {"n": n, "homogeneous": holds, "asserted": n % 2 == 1}
            if cex is not None:
                h, k, tab = cex
                r = GQ(n).render
                entry["counterexample"] = {"H": [r(x) for x in h.carrier], "K": [r(x) for x in k.carrier],
                                           "map": [r(x) for x in tab]}
            if n % 2 == 1:
                ok &= holds
            out.append(entry)
    return {"results": out}, EXIT_OK if ok else EXIT_CONTRADICTED


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gqbci", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="characteristic polynomial and spectrum of BCay(Q_4n, S)")
    sp.add_argument("--n", required=True)
    sp.add_argument("--set", required=True, help='e.g. "1,a,b" or "1,a^2,b*a^3"')
    sp.add_argument("--route", choices=["reps", "exact", "both"], default="exact")

    vp = sub.add_parser("verify", help="reproduce a verdict")
    vp.add_argument("what", choices=["fif", "bci", "fif2bci", "theorem1", "lemma33", "homogeneous"])
    vp.add_argument("--n", required=True, help="N or LO..HI")
    vp.add_argument("--m", type=int, default=3)
    vp.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="guard bound on n")

    for q in (sp, vp):
        q.add_argument("--jobs", type=int, default=1)
        q.add_argument("--no-timing", action="store_true")
        q.add_argument("--out", help="also write the JSON document here")
        q.add_argument("--csv", help="write the spectrum CSV here (spectrum only)")
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command == "spectrum":
            result, code = cmd_spectrum(args)
        else:
            result, code = cmd_verify(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OutOfScope, InvalidParameter) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooLarge as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTED
    doc = {
        "command": ["gqbci", *argv],
        "tool_version": __version__,
        "parameters": {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "csv", "jobs")},
        "result": result,
    }
    if not args.no_timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    sys.stdout.write(text)
    if args.out:
        _write(args.out, text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
