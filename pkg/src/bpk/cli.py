"""Command line front end.

Exit codes: 0 ok, 2 invalid input, 3 verification failure, 4 resource guard.
Reports are UTF-8 JSON on stdout or ``--out``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .chains import EliminationTrace, Pattern
from .errors import BPKError, InvalidNetwork, PathCountGuardExceeded
from .network import (NetworkSpec, load_network, network_to_json, path_from_json, path_to_json)
from .oracle import certify_basis, default_cap, enumerate_all_paths
from .pipeline import analyze_substructures, build_basis
from .subroutine import subroutine_basis

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_GUARD = 0, 2, 3, 4


def render(obj, depth: int = 0) -> str:
    """JSON with the top levels spread over lines and everything deeper
    inline, so each path or trace step sits on one line."""
    pad, inner = "  " * depth, "  " * (depth + 1)
    if depth < 2 and isinstance(obj, dict) and obj:
        body = ",\n".join(f"{inner}{json.dumps(str(k))}: {render(v, depth + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, list) and obj and all(isinstance(v, (list, dict)) for v in obj) and (
            depth < 2 or (depth < 3 and all(isinstance(v, dict) for v in obj))):
        body = ",\n".join(inner + render(v, depth + 1) for v in obj)
        return "[\n" + body + "\n" + pad + "]"
    return json.dumps(obj, separators=(", ", ": "))


def _dump(obj, out: str | None) -> None:
    text = render(obj) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pattern_json(p: Pattern) -> list:
    return [[list(e.tail), list(e.head)] for e in p]


def trace_to_json(trace: EliminationTrace, chains) -> dict:
    steps = []
    for s in trace.steps:
        steps.append({
            "kind": s.kind, "chain": s.chain, "parent": s.parent, "child": s.child,
            "shared_pairs": [list(p) for p in s.shared_pairs],
            "groups": [{
                "segment": [list(p) for p in g.segment],
                "unshared": _pattern_json(g.unshared),
                "shared_counts": [{"pattern": _pattern_json(k), "count": n}
                                  for k, n in sorted(g.shared_counts.items(), key=lambda kv: kv[0])],
                "best_shared": _pattern_json(g.best_shared),
                "repeated_child_unshared": [{"pattern": _pattern_json(k), "count": n}
                                            for k, n in sorted(g.repeated_child_unshared.items())],
                "discarded": [path_to_json(p) for p in g.discarded],
            } for g in s.groups if g.discarded or g.repeated_child_unshared],
            "discarded": [path_to_json(p) for p in s.discarded],
        })
    return {
        "chains": [c.indices for c in chains],
        "Q": trace.Q,
        "partners": {str(k): v for k, v in sorted(trace.partners.items())},
        "Sh": trace.Sh,
        "steps": steps,
        "discarded_underlying": [path_to_json(p) for p in trace.discarded_underlying],
    }


def basis_document(spec: NetworkSpec, paths, stats: dict, trace: dict | None = None) -> dict:
    doc = {"paths": [path_to_json(p) for p in paths], "stats": stats}
    if trace is not None:
        doc["trace"] = trace
    if spec.weights:
        doc["weights"] = network_to_json(spec)["weights"]
    return doc


def cmd_validate(args) -> int:
    _dump(network_to_json(load_network(args.spec)), args.out)
    return EXIT_OK


def cmd_substructures(args) -> int:
    spec = load_network(args.spec)
    rep = analyze_substructures(spec, default_cap())
    sel = rep.selection
    _dump({
        "substructures": [{"index": i, "layers": list(p.layers), "beta": list(b), "alpha": list(a),
                           "U": sorted(u.members)}
                          for i, (p, a, b, u) in enumerate(zip(rep.paths, rep.alphas, rep.betas, rep.u_sets))],
        "selection": {"selected": sel.selected, "R": sel.R, "order": sel.order,
                      "skipped": [{"index": i, "reason": why} for i, why in sel.skipped],
                      "warnings": sel.warnings},
    }, args.out)
    return EXIT_OK


def cmd_subroutine(args) -> int:
    spec = load_network(args.spec)
    b = subroutine_basis(spec)
    stats = {"m": spec.m, "H": spec.hidden_count, "B": len(b), "direct": b.direct_count, "cross": b.cross_count}
    _dump(basis_document(spec, b.paths, stats), args.out)
    return EXIT_OK


def cmd_basis(args) -> int:
    spec = load_network(args.spec)
    t0 = time.perf_counter()
    res = build_basis(spec, threads=args.threads, cap=default_cap())
    trace = trace_to_json(res.trace, res.chains) if args.emit_trace else None
    _dump(basis_document(spec, res.paths, res.stats.to_json(), trace), args.out)
    if args.timings:
        # wall times vary run to run, so they never go into the basis file
        times = dict(res.stats.timings, total=time.perf_counter() - t0)
        print(json.dumps({k: round(v, 6) for k, v in times.items()}), file=sys.stderr)
    return EXIT_OK


def _load_basis(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InvalidNetwork(f"cannot read basis file {path}: {exc}") from None
    raw = doc.get("paths") if isinstance(doc, dict) else doc
    if not isinstance(raw, list):
        raise InvalidNetwork(f"basis file {path} has no 'paths' list")
    return [path_from_json(p) for p in raw]


def cmd_verify(args) -> int:
    spec = load_network(args.spec)
    B = _load_basis(args.basis)
    verdict = certify_basis(B, spec, default_cap())
    _dump(verdict.to_json(B), args.out)
    return EXIT_OK if verdict.ok else EXIT_VERIFY


def cmd_oracle_rank(args) -> int:
    spec = load_network(args.spec)
    space = enumerate_all_paths(spec, default_cap())
    _dump({"paths": len(space.all_paths), "rank": space.rank, "m": spec.m, "H": spec.hidden_count},
          args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bpk", description="Basis path sets of layered networks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("spec", help="network JSON file")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "check a network file and print it normalized")
    add("substructures", cmd_substructures, "substructure paths, encodings and selection")
    add("subroutine", cmd_subroutine, "basis of a network without skip connections")
    p = add("basis", cmd_basis, "full basis path set construction")
    p.add_argument("--emit-trace", action="store_true", help="include the elimination trace")
    p.add_argument("--threads", type=int, default=1, help="workers for per-substructure bases")
    p.add_argument("--timings", action="store_true", help="print phase wall times to stderr")
    p = add("verify", cmd_verify, "certify a basis file against the network")
    p.add_argument("basis", help="basis JSON file")
    add("oracle-rank", cmd_oracle_rank, "rank of all input-to-output paths")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PathCountGuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InvalidNetwork as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BPKError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
