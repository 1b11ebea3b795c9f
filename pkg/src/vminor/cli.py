"""Command-line front-end: ``vm <subcommand> ...``.

Graphs come from ``--graph`` (graph6, or a JSON object with a labels
sidecar) or ``--file`` (one graph per line, ``-`` for stdin).  JSON results
go to stdout, one line per input graph; summaries go to stderr.

Exit codes: 0 success, 1 negative decision, 2 usage or parse error,
3 capacity limit reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import constructions as C
from . import depth as D
from .errors import CapacityError, GraphFormatError, PreconditionError, VMError
from .gf2 import adjacency_matrix, graph_of, principal_pivot
from .graph import (
    Graph,
    as_mask,
    from_graph6,
    graph_from_json,
    graph_to_json,
    local_complement,
    pivot_edge,
    to_graph6,
)
from .minors import (
    CertificateError,
    MinorCertificate,
    is_pivot_minor,
    is_vertex_minor,
    local_equivalence_orbit,
    pivot_minor_to_vertex_minor,
    verify_certificate,
)

OK, NEGATIVE, USAGE, CAPACITY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"vm: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


# --- input --------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    text = text.strip()
    if text.startswith("{"):
        try:
            return graph_from_json(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise GraphFormatError(f"bad graph JSON: {exc}") from None
    return from_graph6(text)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def load_graphs(args) -> list[Graph]:
    if args.graph is not None:
        return [parse_graph(args.graph)]
    if args.file is None:
        raise PreconditionError("give a graph with --graph or --file")
    out = []
    for lineno, line in enumerate(_read_text(args.file).splitlines(), 1):
        if line.strip():
            try:
                out.append(parse_graph(line))
            except GraphFormatError as exc:
                raise GraphFormatError(f"line {lineno}: {exc}") from None
    return out


def _dump(obj) -> str:
    return obj if isinstance(obj, str) else json.dumps(obj)


# --- per-graph handlers ---------------------------------------------------------
# Each takes (G, args) and returns (output, ok).  Module-level so batch mode
# can ship them to worker processes.


def do_lc(G, args):
    for v in args.vertex:
        G = local_complement(G, G.index_of(v))
    return to_graph6(G), True


def do_pivot(G, args):
    if args.set is not None:
        X = as_mask(G, [G.index_of(v) for v in args.set])
        return to_graph6(graph_of(principal_pivot(adjacency_matrix(G), X), G)), True
    u, v = args.edge
    return to_graph6(pivot_edge(G, G.index_of(u), G.index_of(v))), True


def do_orbit(G, args):
    orbit = local_equivalence_orbit(G, args.node_limit)
    members = [
        {"graph6": to_graph6(K), "script": [s.to_json() for s in script]}
        for K, script in orbit.members.values()
    ]
    return {"graph6": to_graph6(G), "size": len(orbit), "truncated": orbit.truncated, "members": members}, True


def do_vertex_minor(G, args):
    cert = is_vertex_minor(G, parse_graph(args.minor), node_limit=args.node_limit)
    return (None, False) if cert is None else (cert.to_json(), True)


def do_pivot_minor(G, args):
    cert = is_pivot_minor(G, parse_graph(args.minor))
    if cert is None:
        return None, False
    if args.as_vertex_minor:
        cert = pivot_minor_to_vertex_minor(cert)
    return cert.to_json(), True


def do_tree_depth(G, args):
    td, T = D.tree_depth(G)
    return {"graph6": to_graph6(G), "td": td, "witness": T.to_json()}, True


def do_sc_depth(G, args):
    k, dec = D.sc_depth(G, limit=args.limit)
    return {"graph6": to_graph6(G), "kind": "sc", "depth": k, "decomposition": D.sc_to_json(dec)}, True


def do_bsc_depth(G, args):
    k, dec = D.bsc_depth(G, limit=args.limit)
    return {"graph6": to_graph6(G), "kind": "bsc", "depth": k, "decomposition": D.sc_to_json(dec)}, True


def do_tree_model(G, args):
    TM = D.find_tree_model(G, args.depth, args.colors)
    if TM is None:
        return None, False
    return {"graph6": to_graph6(G), "tree_model": TM.to_json()}, True


def do_sc_to_host(G, args):
    _, dec = D.sc_depth(G, limit=args.limit)
    return C.sc_to_vertex_minor_host(dec, G.labels).to_certificate().to_json(), True


def do_bsc_to_host(G, args):
    _, dec = D.bsc_depth(G, limit=args.limit)
    return C.bsc_to_pivot_minor_host(dec, G.labels).to_certificate().to_json(), True


def do_pivot_decompose(G, args):
    X = [G.index_of(v) for v in args.set]
    s = None if args.last is None else G.index_of(args.last)
    P = C.decompose_set_pivot(G, X, s)
    result = graph_of(principal_pivot(adjacency_matrix(G), as_mask(G, X)), G)
    return {
        "graph6": to_graph6(G),
        "X": sorted(G.ids[i] for i in X),
        "s": G.ids[P.s],
        "pairs": [[G.ids[a], G.ids[b]] for a, b in P.pairs],
        "result": to_graph6(result),
    }, True


# --- verification -----------------------------------------------------------------


def check_document(doc: dict) -> None:
    """Raise VMError unless ``doc`` (anything this CLI emits) is sound."""
    if not isinstance(doc, dict):
        raise CertificateError("expected a JSON object")
    if doc.get("kind") in ("vertex-minor", "pivot-minor"):
        cert = MinorCertificate.from_json(doc)
        verify_certificate(cert)
        if "tree_depth_witness" in doc:
            T = D.TreeDepthDecomposition.from_json(doc["tree_depth_witness"])
            why = D.td_violation(cert.host, T, int(doc["td_bound"]))
            if why is not None:
                raise CertificateError(f"tree-depth witness: {why}")
        return
    if "witnesses" in doc and "bound" in doc:
        for w in doc["witnesses"]:
            if w.get("certificate") is not None:
                check_document(w["certificate"])
        return
    G = parse_graph(doc["graph6"]) if "graph6" in doc else None
    if G is None:
        raise CertificateError("unrecognised document")
    if "td" in doc:
        T = D.TreeDepthDecomposition.from_json(doc["witness"])
        why = D.td_violation(G, T, int(doc["td"]))
        if why is not None:
            raise CertificateError(f"tree-depth witness: {why}")
    elif doc.get("kind") in ("sc", "bsc"):
        dec = D.sc_from_json(doc["decomposition"])
        ev = D.eval_sc if doc["kind"] == "sc" else D.eval_bsc
        if ev(dec).rows != G.rows or D.decomposition_depth(dec) > int(doc["depth"]):
            raise CertificateError("decomposition does not evaluate to the graph")
    elif "tree_model" in doc:
        if D.eval_tree_model(D.TreeModel.from_json(doc["tree_model"])).rows != G.rows:
            raise CertificateError("tree-model does not evaluate to the graph")
    elif "pairs" in doc:
        X = [G.index_of(v) for v in doc["X"]]
        cur = G
        for u, v in doc["pairs"]:
            cur = pivot_edge(cur, cur.index_of(u), cur.index_of(v))
        covered = sorted(v for p in doc["pairs"] for v in p)
        if covered != sorted(doc["X"]) or doc["s"] not in doc["pairs"][-1]:
            raise CertificateError("pairs do not partition X with s last")
        want = principal_pivot(adjacency_matrix(G), as_mask(G, X))
        if cur.rows != want.rows or to_graph6(cur) != doc["result"]:
            raise CertificateError("edge pivots do not reproduce the set pivot")
    elif "members" in doc:
        start = G
        for m in doc["members"]:
            cur = start
            for step in m["script"]:
                cur = local_complement(cur, cur.index_of(step["v"]))
            if to_graph6(cur) != m["graph6"]:
                raise CertificateError("orbit member does not replay")
    else:
        raise CertificateError("unrecognised document")


def cmd_verify(args) -> int:
    text = _read_text(args.path)
    docs = []
    try:
        docs = [json.loads(text)]
    except json.JSONDecodeError:
        for lineno, line in enumerate(text.splitlines(), 1):
            if line.strip():
                try:
                    docs.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise GraphFormatError(f"line {lineno}: {exc}") from None
    bad = 0
    for i, doc in enumerate(docs):
        try:
            check_document(doc)
        except (VMError, KeyError, TypeError, ValueError) as exc:
            bad += 1
            print(f"document {i}: REJECTED: {exc}", file=sys.stderr)
    print(f"{len(docs) - bad}/{len(docs)} documents verified", file=sys.stderr)
    return NEGATIVE if bad else OK


# --- whole-run commands ---------------------------------------------------------------


def cmd_hn(args) -> int:
    print(json.dumps(graph_to_json(C.make_hn(args.n))))
    return OK


def cmd_hn_path(args) -> int:
    cert = C.hn_path_certificate(args.n)
    print(cert.dumps())
    print(f"H_{args.n}: induced path with {args.n} edges as a pivot-minor", file=sys.stderr)
    return OK


def cmd_clique_bound(args) -> int:
    graphs = None
    if args.file is not None:
        graphs = load_graphs(argparse.Namespace(graph=None, file=args.file))
    report = C.clique_bound_experiment(args.d, args.n_max, graphs, threads=args.threads)
    print(json.dumps(report.to_json()))
    print(
        f"d={report.d}: largest clique pivot-minor {report.max_found} over {report.checked} graphs, "
        f"bound {report.bound}",
        file=sys.stderr,
    )
    return OK if report.holds else NEGATIVE


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    failures = run_selftest(sys.stderr)
    return NEGATIVE if failures else OK


GRAPH_COMMANDS = {
    "lc": do_lc,
    "pivot": do_pivot,
    "orbit": do_orbit,
    "vertex-minor": do_vertex_minor,
    "pivot-minor": do_pivot_minor,
    "tree-depth": do_tree_depth,
    "sc-depth": do_sc_depth,
    "bsc-depth": do_bsc_depth,
    "tree-model": do_tree_model,
    "sc-to-host": do_sc_to_host,
    "bsc-to-host": do_bsc_to_host,
    "pivot-decompose": do_pivot_decompose,
}


def _run_one(job):
    name, G, args = job
    return GRAPH_COMMANDS[name](G, args)


def cmd_graph(args) -> int:
    graphs = load_graphs(args)
    jobs = [(args.command, G, args) for G in graphs]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.threads) as ex:
            results = list(ex.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    negatives = 0
    for G, (out, ok) in zip(graphs, results):
        if ok:
            print(_dump(out))
        else:
            negatives += 1
            print(f"{to_graph6(G)}: no", file=sys.stderr)
    if len(graphs) > 1:
        print(f"{len(graphs) - negatives}/{len(graphs)} positive", file=sys.stderr)
    return NEGATIVE if negatives else OK


# --- argument grammar -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vm", description="Vertex-minors, pivot-minors and shrub-depth tooling.")
    p.add_argument("--threads", type=int, default=1, help="worker processes for batch and search jobs (default 1)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, help):
        sp = sub.add_parser(name, help=help)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--graph", help="graph6 string or JSON {graph6, labels}")
        src.add_argument("--file", help="one graph per line; '-' reads stdin")
        sp.add_argument("--threads", type=int, default=argparse.SUPPRESS)
        return sp

    sp = graph_cmd("lc", "local complementation at each --vertex in turn")
    sp.add_argument("--vertex", type=int, action="append", required=True)

    sp = graph_cmd("pivot", "pivot an edge, or principal pivot on a vertex set")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--edge", type=int, nargs=2, metavar=("U", "V"))
    g.add_argument("--set", type=int, nargs="+", metavar="V")

    sp = graph_cmd("orbit", "local-equivalence orbit up to isomorphism (exploratory)")
    sp.add_argument("--node-limit", type=int, default=None, help="defaults to $VM_NODE_LIMIT or 100000")

    sp = graph_cmd("vertex-minor", "decide whether --minor is a vertex-minor")
    sp.add_argument("--minor", required=True)
    sp.add_argument("--node-limit", type=int, default=None)

    sp = graph_cmd("pivot-minor", "decide whether --minor is a pivot-minor")
    sp.add_argument("--minor", required=True)
    sp.add_argument("--as-vertex-minor", action="store_true", help="emit the LC-only form of the certificate")

    graph_cmd("tree-depth", "exact tree-depth with an optimal forest")
    for name in ("sc-depth", "bsc-depth", "sc-to-host", "bsc-to-host"):
        sp = graph_cmd(name, {
            "sc-depth": "SC-depth with a decomposition",
            "bsc-depth": "BSC-depth with a decomposition",
            "sc-to-host": "shallow host having the graph as a vertex-minor",
            "bsc-to-host": "shallow host having the graph as a pivot-minor",
        }[name])
        sp.add_argument("--limit", type=int, default=7, help="largest n searched (default 7)")

    sp = graph_cmd("tree-model", "find a tree-model of given depth and colour count")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--colors", type=int, required=True)

    sp = graph_cmd("pivot-decompose", "split a principal pivot into edge pivots")
    sp.add_argument("--set", type=int, nargs="+", required=True, metavar="V")
    sp.add_argument("--last", type=int, default=None, help="vertex that must be in the last pair")

    sp = sub.add_parser("hn", help="the threshold graph H_n with labels")
    sp.add_argument("--n", type=int, required=True)
    sp = sub.add_parser("hn-path", help="pivot-minor certificate for a long path in H_n")
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("clique-bound", help="largest clique pivot-minor at bounded tree-depth")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--file", default=None, help="graph6 corpus instead of the built-in enumeration")
    sp.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    sp = sub.add_parser("verify", help="check a certificate or report emitted by vm")
    sp.add_argument("path", help="JSON file, JSON-lines file, or '-'")

    sub.add_parser("selftest", help="quick internal property battery")
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code if isinstance(exc.code, int) else USAGE
    if args.threads < 1:
        print("vm: --threads must be positive", file=sys.stderr)
        return USAGE
    try:
        if args.command in GRAPH_COMMANDS:
            return cmd_graph(args)
        return {
            "hn": cmd_hn,
            "hn-path": cmd_hn_path,
            "clique-bound": cmd_clique_bound,
            "verify": cmd_verify,
            "selftest": cmd_selftest,
        }[args.command](args)
    except CapacityError as exc:
        print(f"vm: capacity: {exc}", file=sys.stderr)
        return CAPACITY
    except (VMError, ValueError, OSError) as exc:
        print(f"vm: {exc}", file=sys.stderr)
        return USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
