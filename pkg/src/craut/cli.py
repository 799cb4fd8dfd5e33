"""Command-line driver: ``craut reduce | lrg | tangency | autcr | bracket-table``.

Exit codes: 0 success, 1 usage or parse error, 2 model validation failure,
3 inconsistent system, 4 unconverged bounds.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .cr.model import ModelSpec, degree_bounds, load_model
from .cr.tangency import tangency_system
from .diffalg import DiffRing, LinDiffPoly, Ranking, parse_poly
from .diffalg.reduction import Reducer
from .errors import ModelValidationError, ParseError, UnconvergedError
from .lie.fields import HoloVectorField
from .lie.reference import REFERENCE_MODELS, compare_tables, load_reference
from .lie.solve import solve_autcr
from .lie.structure import (format_combination, grading, render_table,
                            structure_constants)
from .lrg import lrg, power_series_solution, system_to_json, ring_to_json
from .lrg.systemfile import (SystemDoc, infer_ring, load_system, parse_blocks,
                             render_system_text)

EXIT_OK, EXIT_USAGE, EXIT_MODEL, EXIT_INCONSISTENT, EXIT_UNCONVERGED = 0, 1, 2, 3, 4

log = logging.getLogger("craut")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    model: str | None
    ranking: str
    blocks: list | None
    deg_z: int | None
    deg_w: int | None
    fmt: str
    stabilize: bool
    threads: int


def thread_cap(env: dict | None = None) -> int:
    """Validated ``CRAUT_THREADS``; the pipeline itself runs sequentially."""
    env = os.environ if env is None else env
    raw = env.get("CRAUT_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"CRAUT_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"CRAUT_THREADS must be a positive integer, got {raw!r}")
    return n


def _config(args) -> RunConfig:
    return RunConfig(
        model=getattr(args, "model", None),
        ranking=args.ranking,
        blocks=parse_blocks(args.blocks) if args.blocks else None,
        deg_z=getattr(args, "deg_z", None),
        deg_w=getattr(args, "deg_w", None),
        fmt=args.format,
        stabilize=not getattr(args, "no_stabilize", False),
        threads=thread_cap(),
    )


def _emit(obj, fmt: str, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    sys.stdout.flush()


def _model(cfg: RunConfig) -> ModelSpec:
    if not cfg.model:
        raise UsageError("--model is required")
    try:
        return load_model(cfg.model)
    except FileNotFoundError as e:
        raise UsageError(str(e)) from None


# -- reduce -----------------------------------------------------------------

def _reduce_ring(args, texts: Sequence[str]) -> tuple[DiffRing, list[LinDiffPoly], SystemDoc | None]:
    if args.system:
        doc = load_system(args.system)
        return doc.ring, list(doc.polys), doc
    return infer_ring(texts, conjugates=True), [], None


def cmd_reduce(args) -> int:
    cfg = _config(args)
    ring, Q, doc = _reduce_ring(args, list(args.expr) + list(args.by or []))
    Q += [parse_poly(t, ring) for t in args.by or []]
    kind = cfg.ranking if args.ranking_given or doc is None else doc.kind
    blocks = cfg.blocks if cfg.blocks is not None else (doc.blocks if doc else None)
    r = Ranking(ring, kind, blocks)
    red = Reducer(Q, r, extended=args.extended)
    results = []
    lines = []
    for text in args.expr:
        p = parse_poly(text, ring)
        rem, cert = red.reduce(p)
        irreducible = not any(red.is_reducible(d) for d in rem.terms)
        steps = [{
            "reductor": Q.index(s.q) + 1 if s.q in Q else None,
            "conjugate": s.conjugate,
            "operator": list(s.theta),
            "coefficient": str(s.coeff),
        } for s in cert]
        results.append({"input": p.to_text(r), "remainder": rem.to_text(r),
                        "irreducible": irreducible, "inconsistent": cert.inconsistent,
                        "certificate": steps})
        lines.append(rem.to_text(r))
        if args.verbose_cert:
            for s in steps:
                target = f"bar(q{s['reductor']})" if s["conjugate"] else f"q{s['reductor']}"
                lines.append(f"  {s['coefficient']} * d{s['operator']} {target}")
            lines.append(f"  irreducible: {'yes' if irreducible else 'no'}")
    doc_out = {"ring": ring_to_json(ring), "ranking": r.descriptor(),
               "reductors": [q.to_text(r) for q in Q], "extended": args.extended,
               "results": results}
    _emit(doc_out, cfg.fmt, "\n".join(lines))
    return EXIT_INCONSISTENT if red.inconsistent else EXIT_OK


# -- lrg --------------------------------------------------------------------

def cmd_lrg(args) -> int:
    cfg = _config(args)
    try:
        doc = load_system(args.file)
    except FileNotFoundError as e:
        raise UsageError(f"no such system file: {e}") from None
    kind = cfg.ranking if args.ranking_given else doc.kind
    blocks = cfg.blocks if cfg.blocks is not None else doc.blocks
    r = doc.ranking(kind, blocks)
    G = lrg(doc.polys, r, strategy=args.strategy)
    out = system_to_json(G)
    text = render_system_text(doc.ring, r, G.generators)
    if G.inconsistent:
        _emit(out, cfg.fmt, "# inconsistent\n" + text)
        return EXIT_INCONSISTENT
    if args.series is not None:
        S = power_series_solution(G, args.series)
        out["series"] = {"order": args.series, "coefficients": S.to_json()}
        prim = [u.name for u in doc.ring.indeterminates]
        series_lines = [f"# {name} = {S.as_text(name)}" for name in prim]
        text = text + "\n".join(series_lines) + "\n"
    _emit(out, cfg.fmt, text)
    return EXIT_OK


# -- tangency -----------------------------------------------------------------

def _index_key(s: str, n: int) -> tuple[int, tuple, tuple]:
    parts = [p.strip() for p in (s.split(";") if ";" in s else s.split(","))]
    try:
        if n == 1 and len(parts) == 3:
            j, mu, nu = (int(p) for p in parts)
            return j, (mu,), (nu,)
        if len(parts) == 3:
            j = int(parts[0])
            mu = tuple(int(x) for x in parts[1].split())
            nu = tuple(int(x) for x in parts[2].split())
            if len(mu) == len(nu) == n:
                return j, mu, nu
    except ValueError:
        pass
    raise UsageError(f"bad --index {s!r}; expected j,mu,nu")


def _fmt_index(key) -> str:
    j, mu, nu = key
    if len(mu) == 1:
        return f"{j},{mu[0]},{nu[0]}"
    return f"{j};{' '.join(map(str, mu))};{' '.join(map(str, nu))}"


def cmd_tangency(args) -> int:
    cfg = _config(args)
    m = _model(cfg)
    bounds = degree_bounds(m, cfg.deg_z, cfg.deg_w)[0]
    ts = tangency_system(m, bounds, apply_lemma=not args.no_lemma)
    r = ts.ranking(cfg.ranking, cfg.blocks)
    if args.index:
        key = _index_key(args.index, m.n)
        p = ts.equation(*key)
        _emit({"index": _fmt_index(key), "equation": p.to_text(r)}, cfg.fmt, p.to_text(r))
        return EXIT_OK
    eqs = [(k, p) for k, p in ts.index.items() if not p.is_zero()]
    doc = {
        "model": m.name,
        "bounds": bounds.to_json(),
        "ring": ring_to_json(ts.ring),
        "ranking": r.descriptor(),
        "unknowns": ts.catalog.names(),
        "forced_zero": list(ts.forced_zero),
        "unresolved": list(ts.unresolved),
        "polynomials": [p.to_text(r) for _, p in eqs],
        "indices": [_fmt_index(k) for k, _ in eqs],
    }
    body = render_system_text(ts.ring, r, []).splitlines()
    body = [f"# model {m.name}: {len(eqs)} equations in {len(ts.catalog)} unknowns"] + body
    if ts.forced_zero:
        body.append("# forced to vanish: " + ", ".join(ts.forced_zero))
    body += [f"{p.to_text(r)}  # ({_fmt_index(k)})" for k, p in eqs]
    _emit(doc, cfg.fmt, "\n".join(body))
    return EXIT_OK


# -- autcr --------------------------------------------------------------------

def _presentation_doc(name: str, basis, weights, n: int, k: int,
                      brackets: bool = True) -> tuple[dict, str]:
    # a truncated basis need not close under the bracket
    table = structure_constants(basis) if brackets else {}
    g = grading(basis, weights, table if brackets else None)
    doc = {
        "model": name,
        "n": n,
        "k": k,
        "dimension": len(basis),
        "weights": list(weights),
        "basis": [X.to_text() for X in basis],
        "grading": {str(d): [i + 1 for i in idx] for d, idx in g.layers.items()},
        "brackets": [[a + 1, b + 1, format_combination(c)]
                     for (a, b), c in sorted(table.items()) if any(c.values())],
    }
    lines = [f"dimension: {len(basis)}"]
    lines += [f"X{i + 1} = {X.to_text()}" for i, X in enumerate(basis)]
    lines.append("grading: " + "  ".join(
        f"g{d}=<{', '.join(f'X{i + 1}' for i in idx)}>" for d, idx in g.layers.items()))
    lines.append("layer dimensions: " + ", ".join(str(len(v)) for v in g.layers.values()))
    if brackets:
        lines.append("brackets:")
        lines += [f"  [X{a}, X{b}] = {c}" for a, b, c in doc["brackets"]]
    else:
        del doc["brackets"]
    return doc, "\n".join(lines)


def cmd_autcr(args) -> int:
    cfg = _config(args)
    m = _model(cfg)
    bounds = degree_bounds(m, cfg.deg_z, cfg.deg_w)[0]
    res = solve_autcr(m, bounds, stabilize=cfg.stabilize, ranking=cfg.ranking, blocks=cfg.blocks)
    for key, t in res.timings.items():
        log.info("%s: %.2fs", key, t)
    alg = res.algebra
    doc, text = _presentation_doc(m.name, alg.basis, alg.weights, m.n, m.k,
                                  brackets=res.converged is not False)
    doc["bounds"] = bounds.to_json()
    doc["converged"] = res.converged
    doc["dimension_next"] = res.dimension_next
    head = [f"model: {m.name}"]
    if res.converged is not None:
        state = "converged" if res.converged else "UNCONVERGED"
        head.append(f"stabilization: {state} (dimension {alg.dimension} at bounds, "
                    f"{res.dimension_next} at bounds+1)")
    _emit(doc, cfg.fmt, "\n".join(head) + "\n" + text)
    if res.converged is False:
        sys.stderr.write(str(UnconvergedError(alg.dimension, res.dimension_next)) + "\n")
        return EXIT_UNCONVERGED
    return EXIT_OK


# -- bracket-table ------------------------------------------------------------

def _basis_from_doc(path: str) -> tuple[str, list[HoloVectorField], tuple[int, ...] | None]:
    data = json.loads(Path(path).read_text())
    n, k = data["n"], data["k"]
    basis = [HoloVectorField.parse(t, n, k) for t in data["basis"]]
    return data.get("model", Path(path).stem), basis, tuple(data["weights"]) if "weights" in data else None


def cmd_bracket_table(args) -> int:
    cfg = _config(args)
    printed = None
    if args.reference:
        ref = load_reference(args.reference)
        m = load_model(ref.model)
        name, basis, weights = ref.model, ref.basis, (1,) * m.n + m.weights
        printed = ref.table
    elif args.basis:
        name, basis, weights = _basis_from_doc(args.basis)
        if weights is None:
            m = _model(cfg)
            weights = (1,) * m.n + m.weights
    else:
        m = _model(cfg)
        bounds = degree_bounds(m, cfg.deg_z, cfg.deg_w)[0]
        res = solve_autcr(m, bounds, stabilize=False, ranking=cfg.ranking, blocks=cfg.blocks)
        name, basis, weights = m.name, res.algebra.basis, res.algebra.weights
    doc, text = _presentation_doc(name, basis, weights, basis[0].n, basis[0].k)
    table = structure_constants(basis)
    text = text + "\n" + render_table(table, len(basis))
    if printed is not None:
        mism = compare_tables(table, printed, len(basis))
        doc["mismatches"] = [str(x) for x in mism]
        text += "\n" + ("table matches the reference" if not mism else
                        "\n".join(f"mismatch {x}" for x in mism))
    _emit(doc, cfg.fmt, text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="craut", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, model=True, bounds=True):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--ranking", choices=("orderly", "elim", "elimination"), default=None)
        sp.add_argument("--blocks", help='block order, e.g. "u,v" or "[u,v],w"')
        if model:
            sp.add_argument("--model", help="model file or bundled name (m1, m2, m3, heisenberg)")
        if bounds:
            sp.add_argument("--deg-z", type=int, help="z-degree bound for every coefficient")
            sp.add_argument("--deg-w", type=int, help="bound on the weighted degree of fields")

    sp = sub.add_parser("reduce", help="(extended) Ritt reduction of expressions")
    sp.add_argument("expr", nargs="+", help="polynomials to reduce")
    sp.add_argument("--by", action="append", help="reductor polynomial (repeatable)")
    sp.add_argument("--system", help="system file supplying the ring and reductors")
    sp.add_argument("--extended", action="store_true", help="also reduce by the bars of the reductors")
    sp.add_argument("--certificate", dest="verbose_cert", action="store_true",
                    help="print the reduction steps in text mode")
    common(sp, model=False, bounds=False)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("lrg", help="canonical system of a linear PDE system")
    sp.add_argument("file", help="system file (text or JSON) or bundled name 'example'")
    sp.add_argument("--series", type=int, help="also print power series to this order")
    sp.add_argument("--strategy", choices=("normal", "fifo"), default="normal")
    common(sp, model=False, bounds=False)
    sp.set_defaults(func=cmd_lrg)

    sp = sub.add_parser("tangency", help="tangency PDE system of a rigid model")
    sp.add_argument("--index", help="print one equation, j,mu,nu")
    sp.add_argument("--no-lemma", action="store_true", help="keep unknowns the truncation lemma removes")
    common(sp)
    sp.set_defaults(func=cmd_tangency)

    sp = sub.add_parser("autcr", help="Lie algebra of infinitesimal CR-automorphisms")
    sp.add_argument("--no-stabilize", action="store_true", help="skip the bounds+1 check")
    common(sp)
    sp.set_defaults(func=cmd_autcr)

    sp = sub.add_parser("bracket-table", help="commutator table of a basis")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--basis", help="JSON document from 'autcr --format json'")
    src.add_argument("--reference", choices=REFERENCE_MODELS,
                     help="bundled reference basis; its printed table is compared")
    common(sp)
    sp.set_defaults(func=cmd_bracket_table)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    args.ranking_given = args.ranking is not None
    if args.ranking is None:
        args.ranking = "orderly"
    try:
        return args.func(args)
    except ModelValidationError as e:
        sys.stderr.write("model validation failed:\n")
        for prob in e.problems:
            sys.stderr.write(f"  - {prob}\n")
        return EXIT_MODEL
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_USAGE
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except UnconvergedError as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_UNCONVERGED
    except (KeyError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
