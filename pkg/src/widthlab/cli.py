"""Command-line front end: ``widthlab {gen,compute,certify,verify,export}``.

stdout always carries exactly one JSON document (or DOT text for
``export --dot``); diagnostics go to stderr. Exit codes: 0 ok, 1 invalid
certificate, 2 input error, 3 size cap or budget, 4 failed self-verification.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import certificates as cert
from .constructions import (build_separator_graph, contract_layered_decomposition, find_respecting_model,
                            find_tree_in_host, ltw1_subdivision, product_to_layered, tree_host_degree,
                            witness)
from .decomp import HPartition, Layering, bfs_layering, verify_layering
from .errors import (BudgetExceeded, CapExceeded, ConstructionError, GraphFormatError, InvalidCertificate,
                     PreconditionError, SubdivisionError)
from .graph import (Graph, build_dary_tree, complete_graph, cycle_graph, dumps, export_dot, graph_from_obj,
                    graph_to_obj, loads, path_graph, product, subdivide, subdivision_from_obj)
from .oracles import (exact_layered_pathwidth, exact_layered_treewidth, exact_pathwidth, exact_row_pathwidth,
                      exact_row_treewidth, exact_treewidth, host_decomposition)

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_CAP, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class SelfCheckFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- io helpers

def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_graph(path: str) -> Graph:
    obj = loads(_read(path))
    # certificate envelopes and subdivision files are accepted wherever a graph is
    if isinstance(obj, dict) and "graph" in obj and "kind" in obj:
        return graph_from_obj(obj["graph"], "$.graph")
    return graph_from_obj(obj)


def _write(path: str, obj) -> str:
    Path(path).write_bytes(dumps(obj))
    print(f"wrote {path}", file=sys.stderr)
    return path


def _emit(obj) -> None:
    sys.stdout.buffer.write(dumps(obj))


def _positive(name: str, value: int, low: int = 1) -> int:
    if value < low:
        raise UsageError(f"--{name} must be at least {low}, got {value}")
    return value


def _checked(env: dict) -> dict:
    """Round-trip an envelope through bytes and the verifier before anything is written."""
    verdict = cert.verify_bytes(dumps(env))
    if not verdict:
        raise SelfCheckFailed(f"{env['kind']} failed re-verification: {verdict.violation}")
    return env


def _load_envelope(path: str, kind: str) -> tuple[Graph, dict]:
    graph, got, payload = cert.parse_envelope(_read(path))
    if got != kind:
        raise GraphFormatError(f"expected a {kind} certificate, found {got}", "$.kind")
    return graph, payload


# ---------------------------------------------------------------- gen

def _gen(args) -> dict:
    meta = None
    fam = args.family
    if fam == "complete":
        g = complete_graph(_positive("n", args.n))
    elif fam == "path":
        g = path_graph(_positive("n", args.n))
    elif fam == "cycle":
        g = cycle_graph(_positive("n", args.n, 3))
    elif fam == "dary":
        g, m = build_dary_tree(_positive("d", args.d), _positive("h", args.h, 0))
        meta = m.to_obj()
    elif fam == "separator":
        g, m = build_separator_graph(_positive("s", args.s, 0), _positive("k", args.k, 0),
                                     _positive("w", args.w), args.budget)
        meta = m.to_obj()
    elif fam == "subdivide":
        base = _read_graph(args.graph)
        bound = _positive("s", args.s, 0)
        if args.seed is None:
            sub = subdivide(base, bound)
        else:
            rng = random.Random(args.seed)
            sub = subdivide(base, {e: rng.randint(0, bound) for e in base.edges})
        g = sub.derived
        env = cert.subdivision_envelope(sub)
        return _finish_gen(args, env, g, None)
    elif fam == "product":
        g = product(_read_graph(args.a), _read_graph(args.b), args.kind)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {fam}")
    return _finish_gen(args, graph_to_obj(g), g, meta)


def _finish_gen(args, obj: dict, g: Graph, meta: dict | None) -> dict:
    if args.meta_out and meta is None:
        raise UsageError(f"family {args.family} has no meta output")
    if args.out is None:
        return obj
    report = {"family": args.family, "n": g.n, "m": g.m, "files": {"graph": _write(args.out, obj)}}
    if meta is not None:
        meta_path = args.meta_out or f"{args.out}.meta.json"
        report["files"]["meta"] = _write(meta_path, meta)
    return report


# ---------------------------------------------------------------- compute

def _witness_envelope(param: str, g: Graph, witness) -> dict:
    if param in ("tw", "pw"):
        return cert.envelope(g, "tree_decomposition", cert.td_to_obj(witness))
    if param in ("ltw", "lpw"):
        return cert.envelope(g, "layered_decomposition", cert.ld_to_obj(witness))
    kind = "rtw" if param == "rtw" else "rpw"
    _, td = host_decomposition(witness, kind)
    return cert.envelope(g, "product_embedding", cert.embedding_to_obj(witness, td))


ORACLES = {
    "tw": exact_treewidth, "pw": exact_pathwidth,
    "ltw": exact_layered_treewidth, "lpw": exact_layered_pathwidth,
    "rtw": exact_row_treewidth, "rpw": exact_row_pathwidth,
}


def _compute(args) -> dict:
    g = _read_graph(args.graph)
    value, wit = ORACLES[args.param](g, max_n=args.max_n)
    env = _checked(_witness_envelope(args.param, g, wit))
    return cert.oracle_result(args.param, value, env)


# ---------------------------------------------------------------- certify

def _layering_for(g: Graph, payload: dict | None) -> Layering:
    if payload is not None and "layering" in payload:
        return cert.layering_from_obj(payload["layering"], "$.payload.layering")
    if g.is_connected():
        return bfs_layering(g)
    raise UsageError("partition file needs a layering for a disconnected graph")


def _load_partition(path: str | None, g: Graph) -> tuple[HPartition, Layering]:
    if path is None:
        return HPartition.singletons(g), _layering_for(g, None)
    graph, payload = _load_envelope(path, "h_partition")
    if graph != g.without_labels() and graph != g:
        raise PreconditionError("partition file is over a different graph")
    hp = cert.hp_from_obj(payload, "$.payload")
    layering = _layering_for(g, payload)
    verify_layering(g, layering).raise_if_invalid()
    return hp, layering


def _certify(args) -> dict:
    kind = args.kind
    files: dict[str, str] = {}
    if kind == "ltw1":
        g = _read_graph(args.graph)
        if args.decomposition:
            dg, payload = _load_envelope(args.decomposition, "layered_decomposition")
            if dg != g:
                raise PreconditionError("decomposition file is over a different graph")
            ld = cert.ld_from_obj(payload, "$.payload")
        else:
            _, ld = exact_layered_treewidth(g, max_n=args.max_n)
        sub, out = ltw1_subdivision(g, ld)
        env = _checked(cert.envelope(sub.derived, "layered_decomposition", cert.ld_to_obj(out)))
        files["certificate"] = _write(args.out, env)
        if args.sub_out:
            files["subdivision"] = _write(args.sub_out, _checked(cert.subdivision_envelope(sub)))
        return {"kind": kind, "width": 1, "s_bound": sub.s_bound, "files": files}
    if kind == "contract":
        sg, sp = _load_envelope(args.subdivision, "subdivision")
        sub = subdivision_from_obj(sp, "$.payload")
        dg, payload = _load_envelope(args.decomposition, "layered_decomposition")
        if dg != sub.derived:
            raise PreconditionError("decomposition is not over the subdivided graph")
        out = contract_layered_decomposition(sub, cert.ld_from_obj(payload, "$.payload"), args.r)
        env = _checked(cert.envelope(sub.base, "layered_decomposition", cert.ld_to_obj(out)))
        files["certificate"] = _write(args.out, env)
        return {"kind": kind, "width": cert.verify_envelope(sub.base, env["kind"], env["payload"]).width,
                "files": files}
    if kind == "product-to-layered":
        g, payload = _load_envelope(args.embedding, "product_embedding")
        pe = cert.embedding_from_obj(payload, g, "$.payload")
        if "host_decomposition" in payload:
            td = cert.td_from_obj(payload["host_decomposition"], "$.payload.host_decomposition")
        else:
            _, td = exact_treewidth(pe.host, max_n=args.max_n)
        out = product_to_layered(pe, td)
        env = _checked(cert.envelope(g, "layered_decomposition", cert.ld_to_obj(out)))
        files["certificate"] = _write(args.out, env)
        return {"kind": kind, "width": cert.verify_envelope(g, env["kind"], env["payload"]).width,
                "files": files}
    if kind == "model":
        base, meta = build_separator_graph(_positive("s", args.s, 0), _positive("k", args.k, 0),
                                           _positive("w", args.w), args.budget)
        sub = base
        if args.subdivision:
            _, sp = _load_envelope(args.subdivision, "subdivision")
            sub = subdivision_from_obj(sp, "$.payload")
            if sub.base != base:
                raise PreconditionError("subdivision is not of the requested separator graph")
        g = sub if isinstance(sub, Graph) else sub.derived
        hp, layering = _load_partition(args.partition, g)
        model = find_respecting_model(sub, meta, hp, layering)
        env = _checked(cert.envelope(g, "minor_model", cert.model_to_obj(model, hp)))
        files["certificate"] = _write(args.out, env)
        return {"kind": kind, "t": model.t, "branch_set_sizes": [len(b) for b in model.branch_sets],
                "files": files}
    if kind == "tree-host":
        h, w, ell = _positive("h", args.h, 0), _positive("w", args.w), _positive("ell", args.ell)
        d = args.d if args.d is not None else tree_host_degree(h, w, ell)
        tree, meta = build_dary_tree(_positive("d", d), h)
        hp, layering = _load_partition(args.partition, tree)
        emb = find_tree_in_host(meta, hp, layering, w, ell)
        payload = {"ell": ell, "h": h, "map": list(emb), "root": hp.part_of[meta.root]}
        env = _checked(cert.envelope(hp.host, "tree_embedding", payload))
        files["certificate"] = _write(args.out, env)
        return {"kind": kind, "d": d, "host_n": hp.host.n, "files": files}
    if kind == "witness":
        wit = witness(_positive("k", args.k), args.budget)
        env = _checked(cert.envelope(wit.graph, "layered_decomposition", cert.ld_to_obj(wit.certificate)))
        files["certificate"] = _write(args.out, env)
        if args.sub_out:
            files["subdivision"] = _write(args.sub_out, _checked(cert.subdivision_envelope(wit.subdivision)))
        if args.meta_out:
            files["meta"] = _write(args.meta_out, wit.meta.to_obj())
        return {"kind": kind, "k": args.k, "s": wit.meta.s, "n": wit.graph.n, "width": 1,
                "s_bound": wit.subdivision.s_bound, "files": files}
    raise UsageError(f"unknown certificate kind {kind}")  # pragma: no cover


# ---------------------------------------------------------------- verify / export

def _verify(args) -> tuple[dict, int]:
    graph, kind, payload = cert.parse_envelope(_read(args.certificate))
    verdict = cert.verify_envelope(graph, kind, payload)
    report = {"kind": kind, "valid": verdict.valid, "width": verdict.width}
    if not verdict:
        report["violation"] = verdict.violation.to_obj()
        print(f"invalid {kind}: {verdict.violation}", file=sys.stderr)
        return report, EXIT_INVALID
    return report, EXIT_OK


def _export(args) -> bytes:
    g = _read_graph(args.graph)
    return export_dot(g) if args.dot else dumps(graph_to_obj(g))


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="widthlab", description="Exact width oracles, certificates and separating families.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a graph family")
    gen.add_argument("family", choices=["complete", "path", "cycle", "dary", "separator", "subdivide", "product"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--d", type=int)
    gen.add_argument("--h", type=int)
    gen.add_argument("--s", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--w", type=int, default=1)
    gen.add_argument("--graph", help="input graph for subdivide")
    gen.add_argument("--seed", type=int, help="subdivide: random counts in [0, s] instead of exactly s")
    gen.add_argument("--a", help="first factor for product")
    gen.add_argument("--b", help="second factor for product")
    gen.add_argument("--kind", default="strong", choices=["strong", "cartesian", "direct"])
    gen.add_argument("--budget", type=int, default=10 ** 6)
    gen.add_argument("--out")
    gen.add_argument("--meta-out")

    comp = sub.add_parser("compute", help="run an exact oracle")
    comp.add_argument("param", choices=sorted(ORACLES))
    comp.add_argument("graph")
    comp.add_argument("--max-n", type=int)

    cer = sub.add_parser("certify", help="run a construction and write its certificate")
    cer.add_argument("kind", choices=["ltw1", "contract", "product-to-layered", "model", "tree-host", "witness"])
    cer.add_argument("--graph")
    cer.add_argument("--decomposition")
    cer.add_argument("--subdivision")
    cer.add_argument("--embedding")
    cer.add_argument("--partition", help="h_partition certificate (with layering); default singletons")
    cer.add_argument("--r", type=int)
    cer.add_argument("--s", type=int)
    cer.add_argument("--k", type=int)
    cer.add_argument("--w", type=int, default=1)
    cer.add_argument("--h", type=int)
    cer.add_argument("--d", type=int)
    cer.add_argument("--ell", type=int)
    cer.add_argument("--max-n", type=int)
    cer.add_argument("--budget", type=int, default=10 ** 6)
    cer.add_argument("--out", required=True)
    cer.add_argument("--sub-out")
    cer.add_argument("--meta-out")

    ver = sub.add_parser("verify", help="check a certificate file")
    ver.add_argument("certificate")

    exp = sub.add_parser("export", help="print a graph as JSON or DOT")
    exp.add_argument("graph")
    exp.add_argument("--dot", action="store_true")
    return p


REQUIRED = {
    ("gen", "complete"): ["n"], ("gen", "path"): ["n"], ("gen", "cycle"): ["n"],
    ("gen", "dary"): ["d", "h"], ("gen", "separator"): ["s", "k"],
    ("gen", "subdivide"): ["graph", "s"], ("gen", "product"): ["a", "b"],
    ("certify", "ltw1"): ["graph"], ("certify", "contract"): ["subdivision", "decomposition"],
    ("certify", "product-to-layered"): ["embedding"], ("certify", "model"): ["s", "k"],
    ("certify", "tree-host"): ["h", "ell"], ("certify", "witness"): ["k"],
}


def _require(args) -> None:
    key = (args.command, getattr(args, "family", None) or getattr(args, "kind", None))
    missing = [f"--{name.replace('_', '-')}" for name in REQUIRED.get(key, []) if getattr(args, name) is None]
    if missing:
        raise UsageError(f"{' '.join(key)} needs {', '.join(missing)}")


def run(argv: list[str] | None = None) -> int:
    code, out = EXIT_OK, None
    try:
        args = build_parser().parse_args(argv)
        _require(args)
        if args.command == "gen":
            out = _gen(args)
        elif args.command == "compute":
            out = _compute(args)
        elif args.command == "certify":
            out = _certify(args)
        elif args.command == "verify":
            out, code = _verify(args)
        else:
            sys.stdout.buffer.write(_export(args))
            return EXIT_OK
    except InvalidCertificate as exc:
        code, out = EXIT_INVALID, _error("invalid-certificate", exc)
    except (UsageError, GraphFormatError, PreconditionError, SubdivisionError) as exc:
        code, out = EXIT_INPUT, _error("input", exc)
    except (CapExceeded, BudgetExceeded) as exc:
        code, out = EXIT_CAP, _error("resource", exc)
    except (SelfCheckFailed, ConstructionError) as exc:
        code, out = EXIT_INTERNAL, _error("internal", exc)
    except ValueError as exc:
        code, out = EXIT_INPUT, _error("input", exc)
    _emit(out)
    return code


def _error(category: str, exc: Exception) -> dict:
    print(f"widthlab: {exc}", file=sys.stderr)
    return {"error": {"category": category, "type": type(exc).__name__, "message": str(exc)}}


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
