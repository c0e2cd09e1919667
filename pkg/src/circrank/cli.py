"""Command-line surface: info, construct, search, verify, table, fixtures.

Exit codes: 0 success, 1 verification/fixture failure, 2 usage error,
3 cap or limit exceeded, 4 internal inconsistency (a theorem value and a
search value disagree).  All numeric JSON output is emitted as decimal
strings with 17 significant digits; the human tables are rendered from
the same JSON rows.
"""

import argparse
import json
import sys

import numpy as np

from .algebra import Tolerance
from .construct import (
    CertificateBundle,
    ConstructionFailedError,
    ParityError,
    RootSet,
    caratheodory_polynomial,
    consecutive_certificate,
    prime_certificate,
    rank_spectrum_consecutive,
    real_consecutive_certificate,
)
from .graph import (
    UnsupportedFamilyError,
    format_graph,
    is_consecutive,
    is_prime,
    mr_lower_bound,
    parse_graph,
    zero_forcing_consecutive,
)
from .polycert import induced_graph, vanishing_exponents
from .search import (
    BALANCED,
    COMPLEX,
    CapExceededError,
    InternalInconsistencyError,
    min_terms_search,
    parameter_report,
)
from .verify import verify_certificate

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_INCONSISTENT = 4


def _emit(data, out=None):
    text = json.dumps(data, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_graph_arg(text):
    try:
        return parse_graph(text)
    except ValueError as err:
        print("error: %s" % err, file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def cmd_info(args):
    g = _parse_graph_arg(args.graph)
    k = is_consecutive(g)
    info = {
        "graph": format_graph(g),
        "n": g.n,
        "degree": g.degree,
        "consecutive": k,
        "prime": is_prime(g.n),
        "complete": g.is_complete(),
        "edgeless": g.is_edgeless(),
        "bounds": {},
    }
    if k is not None:
        info["bounds"]["zero_forcing"] = zero_forcing_consecutive(g)
        info["bounds"]["mr_lower_bound"] = mr_lower_bound(g)
        info["bounds"]["theorem_mscr"] = g.n - g.degree
        if g.n % 2 == 1:
            info["bounds"]["theorem_mscr_real"] = g.n - g.degree
    if is_prime(g.n):
        info["bounds"]["theorem_mscr"] = g.n - g.degree
    _emit(info, args.out)
    return EXIT_OK


def cmd_construct(args):
    g = _parse_graph_arg(args.graph)
    try:
        if args.method == "consecutive":
            payload = consecutive_certificate(g).to_json()
        elif args.method == "real-consecutive":
            payload = real_consecutive_certificate(g).to_json()
        elif args.method == "prime":
            payload = prime_certificate(g, seed=args.seed).to_json()
        elif args.method == "spectrum":
            payload = [b.to_json() for b in rank_spectrum_consecutive(g)]
        elif args.method == "caratheodory":
            w = RootSet(n=g.n, exponents=frozenset(set(range(1, g.n)) - set(g.residues)))
            rng = np.random.default_rng(args.seed) if args.seed else None
            poly = caratheodory_polynomial(w, rng=rng)
            realized = induced_graph(poly)
            extra = sorted(vanishing_exponents(poly) - set(w.exponents))
            if extra:
                # the reduction may vanish at extra roots; the bundle
                # certifies the graph it actually realizes
                print(
                    "warning: extra zeros at exponents %s; certificate is for %s"
                    % (extra, format_graph(realized)),
                    file=sys.stderr,
                )
            bundle = CertificateBundle(
                graph=realized,
                mode="C",
                polynomial=poly,
                claimed_rank=poly.term_count,
                construction={
                    "method": "caratheodory",
                    "requested_graph": format_graph(g),
                    "extra_zeros": [int(e) for e in extra],
                },
                seed=args.seed,
            )
            payload = bundle.to_json()
        else:  # pragma: no cover - argparse restricts choices
            raise SystemExit(EXIT_USAGE)
    except (UnsupportedFamilyError, ParityError, ValueError) as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_USAGE
    except ConstructionFailedError as err:
        print("construction failed: %s" % err, file=sys.stderr)
        return EXIT_INCONSISTENT
    _emit(payload, args.out)
    return EXIT_OK


def cmd_search(args):
    g = _parse_graph_arg(args.graph)

    def progress(k, level_total, examined, found):
        print(
            "search: level k=%d, %d supports at level, %d examined total%s"
            % (k, level_total, examined, ", achieved" if found else ""),
            file=sys.stderr,
        )

    try:
        result = min_terms_search(
            g, args.mode, cap=args.cap, seed=args.seed, jobs=args.jobs,
            progress=progress if args.progress else None,
        )
    except CapExceededError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_CAP
    _emit(result.to_json(), args.out)
    return EXIT_OK


def cmd_verify(args):
    tol = Tolerance(zero_eps=args.tol_zero, rank_eps=args.tol_rank)
    try:
        with open(args.file) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        print("error: cannot read bundle: %s" % err, file=sys.stderr)
        return EXIT_USAGE
    bundles = data if isinstance(data, list) else [data]
    try:
        reports = [verify_certificate(CertificateBundle.from_json(b), tol) for b in bundles]
    except (KeyError, ValueError) as err:
        print("error: malformed bundle: %s" % err, file=sys.stderr)
        return EXIT_USAGE
    payload = [r.to_json() for r in reports]
    _emit(payload if isinstance(data, list) else payload[0], args.out)
    return EXIT_OK if all(r.verdict for r in reports) else EXIT_VERIFY_FAIL


def _consecutive_family(n_max):
    for n in range(3, n_max + 1):
        for k in range(1, n // 2 + 1):
            residues = sorted({r % n for j in range(1, k + 1) for r in (j, n - j)})
            yield n, k, residues


def cmd_table(args):
    rows = []
    try:
        if args.family == "consecutive":
            if args.n_max is None:
                print("error: --n-max required for the consecutive family", file=sys.stderr)
                return EXIT_USAGE
            if args.n_max > args.cap:
                print("error: --n-max exceeds --cap=%d" % args.cap, file=sys.stderr)
                return EXIT_CAP
            from .graph import new_graph

            for n, k, residues in _consecutive_family(args.n_max):
                g = new_graph(n, residues)
                theorem = n - g.degree
                res = min_terms_search(g, COMPLEX, cap=args.cap, seed=args.seed)
                rows.append({
                    "graph": format_graph(g),
                    "n": n,
                    "k": k,
                    "theorem_mscr": theorem,
                    "search_mscr": res.k,
                    "zero_forcing_bound": mr_lower_bound(g),
                    "agree": res.k == theorem,
                })
                if res.k != theorem and res.certified_optimal:
                    raise InternalInconsistencyError(
                        "search disagrees with the consecutive theorem on %s" % g
                    )
        elif args.family == "prime":
            if args.p_max is None:
                print("error: --p-max required for the prime family", file=sys.stderr)
                return EXIT_USAGE
            if args.p_max > args.cap:
                print("error: --p-max exceeds --cap=%d" % args.cap, file=sys.stderr)
                return EXIT_CAP
            from .graph import new_graph

            for p in range(3, args.p_max + 1):
                if not is_prime(p):
                    continue
                reps = list(range(1, p // 2 + 1))
                for mask in range(1 << len(reps)):
                    residues = []
                    for i, j in enumerate(reps):
                        if mask >> i & 1:
                            residues += [j, p - j]
                    g = new_graph(p, residues)
                    theorem = p - g.degree
                    res = min_terms_search(g, COMPLEX, cap=args.cap, seed=args.seed)
                    cert = prime_certificate(g, seed=args.seed)
                    rows.append({
                        "graph": format_graph(g),
                        "p": p,
                        "theorem_mscr": theorem,
                        "search_mscr": res.k,
                        "certificate_rank": cert.claimed_rank,
                        "agree": res.k == theorem == cert.claimed_rank,
                    })
                    if not rows[-1]["agree"] and res.certified_optimal:
                        raise InternalInconsistencyError(
                            "search disagrees with the prime theorem on %s" % g
                        )
        else:  # pragma: no cover
            return EXIT_USAGE
    except CapExceededError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_CAP
    except InternalInconsistencyError as err:
        print("INTERNAL INCONSISTENCY: %s" % err, file=sys.stderr)
        return EXIT_INCONSISTENT

    if args.json or args.out:
        _emit(rows, args.out)
    if not args.json:
        cols = list(rows[0].keys()) if rows else []
        widths = [max(len(c), max((len(str(r[c])) for r in rows), default=0)) for c in cols]
        print("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
        for r in rows:
            print("  ".join(str(r[c]).ljust(w) for c, w in zip(cols, widths)))
    return EXIT_OK


def cmd_fixtures(args):
    from .fixtures import run_fixtures

    ok, inconsistent = run_fixtures(seed=args.seed, verbose=True)
    if inconsistent:
        return EXIT_INCONSISTENT
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def build_parser():
    p = argparse.ArgumentParser(
        prog="circrank",
        description="minimum circulant rank certificates for circulant graphs",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("info", help="graph facts and known bounds")
    sp.add_argument("graph")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("construct", help="emit a certificate bundle")
    sp.add_argument("--method", required=True,
                    choices=["consecutive", "real-consecutive", "caratheodory",
                             "prime", "spectrum"])
    sp.add_argument("graph")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("search", help="exhaustive minimum-term search")
    sp.add_argument("--mode", default=COMPLEX, choices=["complex", "balanced", "weight"])
    sp.add_argument("graph")
    sp.add_argument("--cap", type=int, default=20)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--progress", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="re-validate a certificate bundle file")
    sp.add_argument("file")
    sp.add_argument("--tol-zero", type=float, default=1e-9)
    sp.add_argument("--tol-rank", type=float, default=1e-9)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table", help="family tables with theorem/search cross-checks")
    sp.add_argument("--family", required=True, choices=["consecutive", "prime"])
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--p-max", type=int)
    sp.add_argument("--cap", type=int, default=20)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("fixtures", help="run the built-in worked-example suite")
    sp.set_defaults(func=cmd_fixtures)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code = args.func(args)
    except InternalInconsistencyError as err:
        print("INTERNAL INCONSISTENCY: %s" % err, file=sys.stderr)
        code = EXIT_INCONSISTENT
    except SystemExit as err:
        if argv is None:
            raise
        code = err.code if isinstance(err.code, int) else EXIT_USAGE
    if argv is None:
        raise SystemExit(code)
    return code


if __name__ == "__main__":
    main()
