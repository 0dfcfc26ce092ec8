"""Command-line entry point: ``deckrecon <subcommand> ...``.

Standard output carries only the result (JSON by default, tab-delimited
lines with ``--output text``); progress and warnings go to standard error.

Exit codes: 0 success, 2 usage error, 3 identity or theorem violation,
4 input is not a modified deck of anything.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from math import comb
from pathlib import Path

from . import catalog as catalog_mod
from . import graph6, identities, reconstruct, spectral
from .canon import MAX_VERTICES
from .catalog import DeckVector, get_catalog, singleton
from .graph import Graph, num_slots
from .operators import apply, build_d, build_D, build_Delta

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VIOLATION = 3
EXIT_NO_PREIMAGE = 4

log = logging.getLogger("deckrecon")


class UsageError(Exception):
    pass


def _emit(payload, output: str):
    if output == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in _text_lines(payload)))


def _text_lines(payload, prefix=""):
    if isinstance(payload, list):
        for i, item in enumerate(payload):
            if isinstance(item, (dict, list)):
                yield from _text_lines(item, f"{prefix}{i}.")
            else:
                yield f"{prefix}{i}\t{item}"
        return
    for key, value in payload.items():
        if isinstance(value, dict):
            yield from _text_lines(value, f"{prefix}{key}.")
        elif isinstance(value, list) and any(isinstance(x, (dict, list)) for x in value):
            yield from _text_lines(value, f"{prefix}{key}.")
        elif isinstance(value, list):
            yield f"{prefix}{key}\t" + ",".join(str(x) for x in value)
        else:
            yield f"{prefix}{key}\t{'' if value is None else value}"


def _graphs(source: str) -> list[Graph]:
    """A graph6 string, or ``@path`` to a file of graph6 lines."""
    try:
        if source.startswith("@"):
            graphs = list(graph6.read_lines(Path(source[1:]).read_text().splitlines()))
            if not graphs:
                raise UsageError(f"no graphs in {source[1:]}")
            return graphs
        return [graph6.decode(source)]
    except graph6.Graph6Error as exc:
        raise UsageError(f"bad graph6 input: {exc}") from None
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _collection(args) -> DeckVector:
    graphs = _graphs(args.g6)
    n, m = graphs[0].n, graphs[0].edge_count
    if args.n is not None and args.n != n:
        raise UsageError(f"--n {args.n} disagrees with the graph6 input (n={n})")
    if any(g.n != n or g.edge_count != m for g in graphs):
        raise UsageError("all input graphs must share n and edge count")
    _check_n(n)
    return DeckVector.from_graphs(get_catalog(n, m), graphs)


def _check_n(n):
    if not 1 <= n <= MAX_VERTICES:
        raise UsageError(f"n must be in 1..{MAX_VERTICES}")


def _check_nm(n, m):
    _check_n(n)
    if m is not None and not 0 <= m <= num_slots(n):
        raise UsageError(f"m must be in 0..{num_slots(n)} for n={n}")


def _m_values(args):
    _check_nm(args.n, args.m)
    return range(num_slots(args.n) + 1) if args.m is None else [args.m]


def _run_grid(fn, points, jobs):
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, points))
    return [fn(p) for p in points]


def cmd_catalog(args):
    out = []
    for m in _m_values(args):
        cat = get_catalog(args.n, m)
        if args.export:
            stem = Path(args.export)
            if args.m is None:
                stem = stem.with_name(f"{stem.name}-m{m}")
            catalog_mod.write_catalog(cat, stem)
        out.append({"n": cat.n, "m": cat.m, "count": len(cat), "graph6": cat.graph6_lines()})
    return out[0] if args.m is not None else {"n": args.n, "catalogs": out}, EXIT_OK


def cmd_deck(args):
    X = _collection(args)
    if not 0 <= args.k <= X.catalog.m:
        raise UsageError(f"k must be in 0..{X.catalog.m}")
    return apply(build_d(X.catalog.n, X.catalog.m, args.k), X).to_json(), EXIT_OK


def cmd_modified_deck(args):
    X = _collection(args)
    n, m = X.catalog.n, X.catalog.m
    if args.disjoint:
        if not 0 <= args.k <= min(m, num_slots(n) - m):
            raise UsageError(f"k must be in 0..{min(m, num_slots(n) - m)}")
        M = build_D(n, m, args.k)
    else:
        if not 0 <= args.k <= m:
            raise UsageError(f"k must be in 0..{m}")
        M = build_Delta(n, m, args.k)
    return apply(M, X).to_json(), EXIT_OK


def cmd_matrix(args):
    _check_nm(args.n, args.m)
    build = {"d": build_d, "D": build_D, "Delta": build_Delta}[args.kind]
    try:
        M = build(args.n, args.m, args.i)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.figure:
        from .plotting import plot_operator
        plot_operator(M, args.figure)
        log.info("wrote %s", args.figure)
    return M.to_json(), EXIT_OK


def _identity_point(point):
    which, n, m, i, full = point
    return identities.check(which, n, m, i, full).to_json()


def _corollary_reports(n, m, k):
    cat = get_catalog(n, m)
    out = []
    for a in range(len(cat)):
        for b in range(a + 1, len(cat)):
            X = singleton(cat, cat[a]) - singleton(cat, cat[b])
            rep = identities.check_corollary(n, m, k, X)
            if rep.premise:
                d = rep.to_json()
                d["pair"] = [graph6.encode(cat[a]), graph6.encode(cat[b])]
                out.append(d)
    return out


def cmd_verify_identity(args):
    which = ["deld", "recursion", "deldel"] if args.which == "all" else [args.which]
    if args.which == "corollary":
        reports = []
        for m in _m_values(args):
            ks = [args.i] if args.i is not None else range(1, m + 1)
            for k in ks:
                if not 0 <= k <= m:
                    raise UsageError(f"k must be in 0..{m}")
                reports.extend(_corollary_reports(args.n, m, k))
    else:
        points = []
        for m in _m_values(args):
            for w in which:
                orders = identities.valid_orders(w, args.n, m)
                if args.i is not None:
                    if args.i not in identities.valid_orders(w, args.n, m, [args.i]):
                        if args.m is not None and len(which) == 1:
                            raise UsageError(f"order {args.i} out of range for {w} at m={m}")
                        continue
                    orders = [args.i]
                points.extend((w, args.n, m, i, args.full_diff) for i in orders)
        log.info("checking %d identity instances", len(points))
        reports = _run_grid(_identity_point, points, args.jobs)
    ok = all(r["holds"] for r in reports)
    payload = reports[0] if len(reports) == 1 else {"all_hold": ok, "reports": reports}
    return payload, EXIT_OK if ok else EXIT_VIOLATION


def cmd_spectrum(args):
    try:
        cert = spectral.certify_spectrum(args.N, args.m, args.budget, args.rank_method)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.figure:
        from .plotting import plot_spectrum
        plot_spectrum(cert, args.figure)
        log.info("wrote %s", args.figure)
    return cert.to_json(), EXIT_OK if cert.valid else EXIT_VIOLATION


def cmd_intertwine(args):
    _check_nm(args.n, args.m)
    try:
        rep = spectral.check_intertwining(args.n, args.m, args.budget)
    except spectral.BudgetExceeded as exc:
        raise UsageError(str(exc)) from None
    ok = rep.holds and rep.full_row_rank and rep.one_per_column
    return rep.to_json(), EXIT_OK if ok else EXIT_VIOLATION


def cmd_certify_invertibility(args):
    _check_nm(args.n, args.m)
    if args.r < 1:
        raise UsageError("r must be >= 1")
    cert = spectral.invertibility_certificate(args.n, args.m, args.r, args.check_matrix)
    ok = cert.case_analysis_ok and not (cert.invertible and cert.matrix_nonsingular is False)
    return cert.to_json(), EXIT_OK if ok else EXIT_VIOLATION


def cmd_reconstruct(args):
    _check_nm(args.n, args.m)
    if not 0 <= args.k <= args.m:
        raise UsageError(f"k must be in 0..{args.m}")
    if (args.deck_file is None) == (args.from_g6 is None):
        raise UsageError("give exactly one of --deck-file or --from-g6")
    if args.deck_file is not None:
        try:
            data = json.loads(Path(args.deck_file).read_text())
            v = DeckVector.from_json(data)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read modified deck: {exc}") from None
    else:
        args.g6 = args.from_g6
        X = _collection(args)
        v = apply(build_Delta(X.catalog.n, X.catalog.m, args.k), X)
    if (v.catalog.n, v.catalog.m) != (args.n, args.m):
        raise UsageError(f"deck is over U({v.catalog.n},{v.catalog.m}), expected U({args.n},{args.m})")
    if v.signed:
        raise UsageError("modified deck has negative counts")
    res = reconstruct.reconstruct_deck(args.n, args.m, args.k, v)
    code = {reconstruct.RECONSTRUCTED: EXIT_OK, reconstruct.NO_PREIMAGE: EXIT_NO_PREIMAGE,
            reconstruct.VIOLATION: EXIT_VIOLATION}[res.status]
    return res.to_json(), code


def _theorem_point(point):
    return reconstruct.verify_theorem(*point).to_json()


def cmd_verify_theorem(args):
    points = [(args.n, m, args.k) for m in _m_values(args) if args.k <= m]
    if not points or args.k < 0:
        raise UsageError("no (m, k) with 0 <= k <= m")
    reports = _run_grid(_theorem_point, points, args.jobs)
    ok = all(r["holds"] for r in reports)
    payload = reports[0] if len(reports) == 1 else {"all_hold": ok, "reports": reports}
    return payload, EXIT_OK if ok else EXIT_VIOLATION


def cmd_lovasz_rank(args):
    _check_nm(args.n, args.p)
    if not 0 <= args.k <= args.p:
        raise UsageError(f"k must be in 0..{args.p}")
    rep = reconstruct.lovasz_rank_check(args.n, args.p, args.k)
    return rep.to_json(), EXIT_OK if rep.consistent else EXIT_VIOLATION


def cmd_complement_equiv(args):
    if args.g6 is not None:
        P = _collection(args)
        n, m = P.catalog.n, P.catalog.m
        collections = [P]
    else:
        if args.n is None or args.m is None:
            raise UsageError("give --g6, or both --n and --m")
        _check_nm(args.n, args.m)
        n, m = args.n, args.m
        cat = get_catalog(n, m)
        collections = [DeckVector(cat, [1] * len(cat))]
    if not 0 <= args.r <= m:
        raise UsageError(f"r must be in 0..{m}")
    ok = all(reconstruct.complement_equivalence(n, m, args.r, P) for P in collections)
    payload = {"n": n, "m": m, "r": args.r,
               "collection": collections[0].to_json(), "holds": ok}
    return payload, EXIT_OK if ok else EXIT_VIOLATION


def cmd_pipeline(args):
    _check_nm(args.n, args.m)
    if not 1 <= args.k <= args.m:
        raise UsageError(f"k must be in 1..{args.m}")
    rep = reconstruct.theorem_pipeline(args.n, args.m, args.k)
    return rep.to_json(), EXIT_OK if rep.covered else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--cache-dir", help=f"catalog cache (default: ${catalog_mod.CACHE_ENV} "
                                            "or ~/.cache/deckrecon)")
    common.add_argument("--no-cache", action="store_true", help="do not touch the disk cache")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker processes for parameter grids")
    common.add_argument("--budget", type=int, default=spectral.DEFAULT_BUDGET,
                        help="largest C(N, m) for Johnson-graph matrices")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="deckrecon", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("catalog", cmd_catalog, "list U(n, m) in catalog order")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, help="edge count (default: every m)")
    sp.add_argument("--export", metavar="STEM", help="also write STEM.g6 and STEM.json")

    for name, fn, help in (("deck", cmd_deck, "k-edge deck of a graph or collection"),
                           ("modified-deck", cmd_modified_deck, "modified k-deck")):
        sp = add(name, fn, help)
        sp.add_argument("--g6", required=True, help="graph6 string or @file")
        sp.add_argument("--n", type=int)
        sp.add_argument("--k", type=int, required=True)
        if name == "modified-deck":
            sp.add_argument("--disjoint", action="store_true",
                            help="added edges must be non-edges of the original graph")

    sp = add("matrix", cmd_matrix, "operator matrix as JSON triplets")
    sp.add_argument("--kind", choices=("d", "D", "Delta"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--i", "--k", dest="i", type=int, required=True)
    sp.add_argument("--figure", metavar="PNG", help="also render a heatmap")

    sp = add("verify-identity", cmd_verify_identity, "check operator identities exactly")
    sp.add_argument("--which", choices=("deld", "recursion", "deldel", "corollary", "all"),
                    default="all")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, help="default: every m")
    sp.add_argument("--i", "--s", "--k", dest="i", type=int, help="default: every order 0..3")
    sp.add_argument("--full-diff", action="store_true")

    sp = add("spectrum", cmd_spectrum, "certify the spectrum of m I + J(N, m)")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--rank-method", choices=("auto", "modular", "bareiss"), default="auto")
    sp.add_argument("--figure", metavar="PNG", help="also render the multiplicities")

    sp = add("intertwine", cmd_intertwine, "check Delta_1 P = P B")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = add("certify-invertibility", cmd_certify_invertibility,
             "eigenvalues of (r-1)(2m-r-N) I + Delta_1")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--check-matrix", action="store_true",
                    help="also test the matrix on U(n, m) for singularity")

    sp = add("reconstruct", cmd_reconstruct, "k-edge deck from a modified k-deck")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--deck-file", help="JSON deck vector (as printed by modified-deck)")
    sp.add_argument("--from-g6", help="use the modified deck of this graph (or @file)")

    sp = add("verify-theorem", cmd_verify_theorem, "exhaustive pairwise theorem check")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, help="default: every m >= k")
    sp.add_argument("--k", type=int, required=True)

    sp = add("lovasz-rank", cmd_lovasz_rank, "rank of d_k on U(n, p) against 2p-k+1 > N")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("complement-equiv", cmd_complement_equiv,
             "check (Delta_r X_P)^c = d_r X_P' for complemented decks")
    sp.add_argument("--g6", help="collection as graph6 string or @file")
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--r", type=int, required=True)

    sp = add("pipeline", cmd_pipeline, "which branch of the induction covers (n, m, k)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(stream=sys.stderr, format="%(name)s: %(message)s",
                        level=logging.INFO if args.verbose else logging.WARNING)
    if args.no_cache:
        catalog_mod.configure_cache(None)
    else:
        catalog_mod.configure_cache(args.cache_dir or catalog_mod.default_cache_dir())
    try:
        payload, code = args.func(args)
    except UsageError as exc:
        print(f"deckrecon {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(payload, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
