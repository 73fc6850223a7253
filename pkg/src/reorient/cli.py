"""Batch command-line front end.

Verbs: check, solve, poly, approx, reduce, verify-reduction, gen.  Every
run prints a Report (text or JSON) and exits 0 for feasible, 1 for
infeasible and 2 for errors (parse failures, size caps, bad flags).
Reports are deterministic for fixed inputs and seeds; the timing field is
informational and excluded from golden comparisons.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import connectivity as conn
from . import exact, generators, io, polyalg, reductions
from .core import GraphError, MixedGraph, PartialOrientation
from .result import SolveResult

EXIT_FEASIBLE = 0
EXIT_INFEASIBLE = 1
EXIT_ERROR = 2


def _jsonify(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else str(value.numerator)
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if isinstance(value, PartialOrientation):
        return {
            "decisions": [list(d) if d is not None else None for d in value.decisions],
            "oriented": value.oriented_count,
        }
    if isinstance(value, polyalg.BranchingPacking):
        return {
            "root": value.root,
            "direction": value.direction,
            "branchings": [list(b) for b in value.branchings],
        }
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, bool) or value is None or isinstance(value, (int, float, str)):
        return value
    return str(value)


class Report:
    def __init__(self, command: str, status: str, *, optimum=None, witness=None,
                 detail=None, instance_hash=None, extras=None):
        self.command = command
        self.status = status
        self.optimum = optimum
        self.witness = witness
        self.detail = detail
        self.instance_hash = instance_hash
        self.extras = extras or {}
        self.timing_ms = 0.0

    def to_dict(self) -> dict:
        doc = {
            "command": self.command,
            "status": self.status,
            "optimum": _jsonify(self.optimum),
            "witness": _jsonify(self.witness),
            "detail": self.detail,
            "instance_hash": self.instance_hash,
        }
        for k in sorted(self.extras):
            doc[k] = _jsonify(self.extras[k])
        doc["timing_ms"] = round(self.timing_ms, 3)
        return doc

    def render(self, fmt: str) -> str:
        doc = self.to_dict()
        if fmt == "json":
            return json.dumps(doc, indent=2)
        lines = [f"{k}: {json.dumps(v) if not isinstance(v, str) else v}"
                 for k, v in doc.items() if v is not None]
        return "\n".join(lines)

    @property
    def exit_code(self) -> int:
        if self.status == "feasible":
            return EXIT_FEASIBLE
        if self.status == "infeasible":
            return EXIT_INFEASIBLE
        return EXIT_ERROR


def _load_graph(path: str) -> tuple[MixedGraph, str]:
    text = io.read_text(path)
    g = io.parse_graph(text)
    return g, io.instance_hash(io.emit_graph(g))


def _from_solve_result(command: str, res: SolveResult, instance_hash=None,
                       budget=None, maximize=False, extras=None) -> Report:
    status = res.status
    if budget is not None and res.feasible:
        ok = res.optimum >= budget if maximize else res.optimum <= budget
        status = "feasible" if ok else "infeasible"
    return Report(
        command,
        status,
        optimum=res.optimum,
        witness=res.witness,
        detail=res.detail,
        instance_hash=instance_hash,
        extras=extras,
    )


# ---------------------------------------------------------------------------
# check


def _cmd_check(args) -> Report:
    g, h = _load_graph(args.input)
    mode = args.mode
    extras = {}
    if mode == "strong":
        ok = conn.is_strong(g)
    elif mode == "k-strong":
        ok = conn.is_k_strong(g, args.k)
    elif mode == "arc-strong":
        ok = conn.is_k_arc_strong(g, args.k)
    elif mode == "orientation-condition":
        ok = conn.check_kstrong_orientation_condition(g, args.k)
    elif mode == "edge-connectivity":
        val = conn.edge_connectivity(g)
        extras["edge_connectivity"] = val if val != float("inf") else "inf"
        ok = args.k is None or val >= args.k
    elif mode == "bridges":
        br = conn.bridges(g)
        extras["bridges"] = br
        ok = not br
    elif mode == "cactus":
        pairs = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)]

        def lam(p):
            return conn.local_edge_connectivity(g, p[0], p[1])

        if args.threads > 1:
            with ThreadPoolExecutor(max_workers=args.threads) as pool:
                vals = list(pool.map(lam, pairs))
        else:
            vals = [lam(p) for p in pairs]
        ok = all(v == 2 for v in vals)
    elif mode == "local":
        val = conn.local_arc_connectivity(g, args.source, args.target)
        extras["lambda"] = val
        ok = args.k is None or val >= args.k
    elif mode == "cuts":
        cuts = conn.enumerate_cuts_up_to(g, args.k if args.k is not None else g.m_edges)
        extras["cuts"] = [sorted(c.side) for c in cuts]
        ok = True
    else:
        raise GraphError(f"unknown check mode {mode}")
    return Report("check", "feasible" if ok else "infeasible",
                  instance_hash=h, extras=extras)


# ---------------------------------------------------------------------------
# solve


def _cmd_solve(args) -> Report:
    g, h = _load_graph(args.input)
    prob = args.problem
    wmap = io.parse_weights(io.read_text(args.weights)) if args.weights else None
    if prob == "m2sar":
        res = exact.min_reversals(g, exact.Strong(2))
        return _from_solve_result("solve m2sar", res, h, args.budget)
    if prob == "mkasr":
        res = exact.min_reversals(g, exact.ArcStrong(args.k or 1))
        return _from_solve_result("solve mkasr", res, h, args.budget)
    if prob == "3sdo":
        res = exact.min_deorientations(g, exact.Strong(3))
        return _from_solve_result("solve 3sdo", res, h, args.budget)
    if prob == "deor-strong":
        res = exact.min_deorientations(g, exact.Strong(args.ell or 1))
        return _from_solve_result("solve deor-strong", res, h, args.budget)
    if prob == "deor-arc":
        res = exact.min_deorientations(g, exact.ArcStrong(args.k or 1))
        return _from_solve_result("solve deor-arc", res, h, args.budget)
    if prob == "lcdo":
        req = io.parse_requirement(io.read_text(args.requirement))
        res = exact.min_deorientations(g, req)
        return _from_solve_result("solve lcdo", res, h, args.budget)
    if prob == "doubling":
        weights = io.edge_weight_list(g, wmap) if wmap else None
        res = exact.min_doubling(g, args.c or 4, weights,
                                 require_vertex_condition=args.vertex_condition)
        return _from_solve_result("solve doubling", res, h, args.budget)
    if prob == "maxpo":
        target = exact.Strong(2) if args.target == "2-strong" else exact.ArcStrong(2)
        res = exact.max_partial_orientation(g, target)
        return _from_solve_result("solve maxpo", res, h, args.budget, maximize=True)
    if prob == "vc":
        res = exact.vertex_cover(g)
        return _from_solve_result("solve vc", res, h, args.budget)
    if prob == "max2sat":
        sat = io.parse_sat(io.read_text(args.input))
        res = exact.max2sat(sat)
        hh = io.instance_hash(io.emit_sat(sat))
        return _from_solve_result("solve max2sat", res, hh, args.budget, maximize=True)
    if prob == "lco":
        req = io.parse_requirement(io.read_text(args.requirement))
        res = exact.best_orientation_for_requirement(g, req)
        return _from_solve_result("solve lco", res, h)
    if prob == "i2vcomg":
        t_set = _parse_tset(args.t)
        res = exact.i2vcomg(g, t_set)
        return _from_solve_result("solve i2vcomg", res, h)
    raise GraphError(f"unknown problem {prob}")


def _parse_tset(spec: str | None) -> list[int]:
    if not spec:
        return []
    return [int(x) for x in spec.split(",") if x != ""]


# ---------------------------------------------------------------------------
# poly / approx


def _cmd_poly(args) -> Report:
    g, h = _load_graph(args.input)
    wmap = io.parse_weights(io.read_text(args.weights)) if args.weights else None
    if args.algorithm == "w23eda":
        weights = io.edge_weight_list(g, wmap) if wmap else None
        res = polyalg.w23eda(g, weights)
        return _from_solve_result("poly w23eda", res, h, args.budget)
    if args.algorithm == "degrees":
        res = polyalg.degree_deorientation(g, args.k or 1)
        return _from_solve_result("poly degrees", res, h, args.budget)
    if args.algorithm == "robbins":
        res = polyalg.robbins_partial_orientation(g, args.k or 0)
        return _from_solve_result("poly robbins", res, h)
    raise GraphError(f"unknown algorithm {args.algorithm}")


def _cmd_approx(args) -> Report:
    g, h = _load_graph(args.input)
    if args.algorithm == "deor":
        res = polyalg.deor_k_arc_2approx(g, args.k or 1, args.root)
        return _from_solve_result("approx deor", res, h)
    if args.algorithm == "m4eda":
        res = polyalg.m4eda_approx(g)
        return _from_solve_result("approx m4eda", res, h)
    raise GraphError(f"unknown algorithm {args.algorithm}")


# ---------------------------------------------------------------------------
# reduce / verify-reduction


def _deliver(path: str | None, text: str, extras: dict, key: str) -> None:
    """Write instance text to a file, or carry it inside the report."""
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        extras[key] = text


def _cmd_reduce(args) -> Report:
    name = args.name
    extras: dict = {}
    if name == "class-g":
        g, h = _load_graph(args.input)
        inst = reductions.class_g_instance(g)
        extras.update(vertices=inst.graph.n, cover_shift=inst.cover_shift)
        _deliver(args.output, io.emit_graph(inst.graph), extras, "instance_text")
        _deliver(args.sidecar, io.emit_labels(inst.graph, inst.vertex_labels), extras, "sidecar_text")
        return Report("reduce class-g", "feasible", instance_hash=h, extras=extras)
    if name == "m2sar":
        g, h = _load_graph(args.input)
        w = reductions.reduce_i2vcomg_to_m2sar(g, _parse_tset(args.t))
        extras.update(budget=w.budget, vertices=w.digraph.n)
        _deliver(args.output, io.emit_graph(w.digraph), extras, "instance_text")
        _deliver(args.sidecar, io.emit_labels(w.digraph, w.vertex_labels), extras, "sidecar_text")
        return Report("reduce m2sar", "feasible", instance_hash=h, extras=extras)
    if name == "vc-4eda":
        g, h = _load_graph(args.input)
        w = reductions.reduce_vc_to_4eda(g, args.k)
        extras.update(budget=w.budget, vertices=w.graph.n)
        _deliver(args.output, io.emit_graph(w.graph), extras, "instance_text")
        _deliver(args.sidecar, io.emit_labels(w.graph, w.vertex_labels), extras, "sidecar_text")
        return Report("reduce vc-4eda", "feasible", instance_hash=h, extras=extras)
    if name == "3sdo":
        sat = io.parse_sat(io.read_text(args.input))
        h = io.instance_hash(io.emit_sat(sat))
        w = reductions.reduce_s3bmax2sat_to_3sdo(sat, args.ell if args.ell is not None else len(sat.clauses))
        extras.update(budget=w.budget, vertices=w.digraph.n)
        _deliver(args.output, io.emit_graph(w.digraph), extras, "instance_text")
        _deliver(args.sidecar, io.emit_labels(w.digraph, w.vertex_labels), extras, "sidecar_text")
        return Report("reduce 3sdo", "feasible", instance_hash=h, extras=extras)
    if name == "s3b-normalize":
        sat = io.parse_sat(io.read_text(args.input))
        h = io.instance_hash(io.emit_sat(sat))
        norm, flips = reductions.normalize_to_s3bmax2sat(sat)
        extras.update(flipped=list(flips))
        _deliver(args.output, io.emit_sat(norm), extras, "instance_text")
        return Report("reduce s3b-normalize", "feasible", instance_hash=h, extras=extras)
    if name == "lstrong":
        g, h = _load_graph(args.input)
        w = reductions.lift_3sdo_to_lstrong(g, args.ell or 4, args.budget)
        extras.update(added=list(w.added), budget=w.budget)
        _deliver(args.output, io.emit_graph(w.digraph), extras, "instance_text")
        return Report("reduce lstrong", "feasible", instance_hash=h, extras=extras)
    if name == "lco-harden":
        g, h = _load_graph(args.input)
        req = io.parse_requirement(io.read_text(args.requirement))
        w = reductions.harden_lco(g, req)
        extras.update(apexes=[w.a, w.b])
        _deliver(args.output, io.emit_graph(w.graph), extras, "instance_text")
        _deliver(args.sidecar, io.emit_requirement(w.hardened), extras, "requirement_text")
        return Report("reduce lco-harden", "feasible", instance_hash=h, extras=extras)
    if name == "lco-lcdo":
        g, h = _load_graph(args.input)
        req = io.parse_requirement(io.read_text(args.requirement))
        w = reductions.reduce_lco_to_lcdo(g, req)
        extras.update(budget=w.budget)
        _deliver(args.output, io.emit_graph(w.digraph), extras, "instance_text")
        _deliver(args.sidecar, io.emit_requirement(w.lifted_requirement), extras, "requirement_text")
        return Report("reduce lco-lcdo", "feasible", instance_hash=h, extras=extras)
    raise GraphError(f"unknown reduction {name}")


def _cmd_verify_reduction(args) -> Report:
    name = args.name
    if name == "m2sar":
        g, h = _load_graph(args.input)
        t_set = _parse_tset(args.t)
        w = reductions.reduce_i2vcomg_to_m2sar(g, t_set)
        src = exact.i2vcomg(g, t_set)
        tgt = exact.min_reversals(w.digraph, exact.Strong(2), budget=w.budget)
        src_pos = src.feasible
        tgt_pos = tgt.feasible
        ok = src_pos == tgt_pos
        return Report("verify-reduction m2sar", "feasible" if ok else "infeasible",
                      instance_hash=h,
                      extras={"source_positive": src_pos, "target_positive": tgt_pos,
                              "budget": w.budget})
    if name == "3sdo":
        sat = io.parse_sat(io.read_text(args.input))
        h = io.instance_hash(io.emit_sat(sat))
        ell = args.ell if args.ell is not None else len(sat.clauses)
        w = reductions.reduce_s3bmax2sat_to_3sdo(sat, ell)
        best = exact.max2sat(sat)
        deor = exact.min_deorientations(w.digraph, exact.Strong(3))
        src_pos = best.optimum >= ell
        tgt_pos = deor.feasible and deor.optimum <= w.budget
        ok = src_pos == tgt_pos
        return Report("verify-reduction 3sdo", "feasible" if ok else "infeasible",
                      instance_hash=h,
                      extras={"source_positive": src_pos, "target_positive": tgt_pos,
                              "max_satisfied": best.optimum, "min_deorientations": deor.optimum,
                              "budget": w.budget})
    if name == "vc-4eda":
        g, h = _load_graph(args.input)
        w = reductions.reduce_vc_to_4eda(g, args.k)
        ok_hv = all(
            conn.is_k_edge_connected(w.graph.delete_vertices([a])[0], 2)
            for a in range(w.graph.n)
        )
        sides = conn.small_edge_cut_sides(w.graph, 3)
        full = frozenset(range(w.graph.n))
        canon = lambda s: min(s, full - s, key=lambda fs: (len(fs), sorted(fs)))
        ok_cuts = {canon(s) for s in sides} == {
            canon(s) for s in w.three_cut_inventory()
        }
        cover = exact.vertex_cover(g)
        lift = w.lift_cover(cover.witness)
        ok_lift = conn.is_k_edge_connected(w.graph.double_edges(lift), 4) and len(
            lift
        ) == cover.optimum + g.n
        ok = ok_hv and ok_cuts and ok_lift
        return Report("verify-reduction vc-4eda", "feasible" if ok else "infeasible",
                      instance_hash=h,
                      extras={"deletions_2ec": ok_hv, "cut_inventory": ok_cuts,
                              "cover_lift": ok_lift})
    if name == "lco-lcdo":
        g, h = _load_graph(args.input)
        req = io.parse_requirement(io.read_text(args.requirement))
        w = reductions.reduce_lco_to_lcdo(g, req)
        src = exact.best_orientation_for_requirement(g, req)
        tgt = exact.min_deorientations(w.digraph, w.lifted_requirement)
        src_pos = src.feasible
        tgt_pos = tgt.feasible and tgt.optimum <= w.budget
        ok = src_pos == tgt_pos
        return Report("verify-reduction lco-lcdo", "feasible" if ok else "infeasible",
                      instance_hash=h,
                      extras={"source_positive": src_pos, "target_positive": tgt_pos})
    raise GraphError(f"unknown reduction {name}")


# ---------------------------------------------------------------------------
# gen


def _cmd_gen(args) -> Report:
    kind = args.kind
    extras: dict = {}
    if kind == "rocket":
        r = generators.gen_rocket(args.k or 1, args.direction)
        extras.update(vertices=r.graph.n, arcs=r.graph.m_arcs, tip_arc=r.tip_arc)
        _deliver(args.output, io.emit_graph(r.graph), extras, "instance_text")
        return Report("gen rocket", "feasible", extras=extras)
    if kind == "random-digraph":
        g = generators.random_digraph(args.n, args.m, args.seed)
        extras.update(instance=io.instance_hash(io.emit_graph(g)))
        _deliver(args.output, io.emit_graph(g), extras, "instance_text")
        return Report("gen random-digraph", "feasible", extras=extras)
    if kind == "cactus":
        g = generators.random_cactus(args.n, args.seed)
        pairs_ok = all(
            conn.local_edge_connectivity(g, u, v) == 2
            for u in range(g.n)
            for v in range(u + 1, g.n)
        )
        if not pairs_ok:
            raise GraphError("generated graph failed the cactus check")
        extras.update(instance=io.instance_hash(io.emit_graph(g)))
        _deliver(args.output, io.emit_graph(g), extras, "instance_text")
        return Report("gen cactus", "feasible", extras=extras)
    if kind == "class-g":
        g, h = _load_graph(args.input)
        inst = reductions.class_g_instance(g)
        _deliver(args.output, io.emit_graph(inst.graph), extras, "instance_text")
        return Report("gen class-g", "feasible", instance_hash=h, extras=extras)
    if kind == "s3b-sat":
        sat = generators.random_s3b_sat(args.vars, args.seed)
        if not sat.is_special_three_bounded():
            raise GraphError("generated instance failed the shape check")
        extras.update(clauses=len(sat.clauses))
        _deliver(args.output, io.emit_sat(sat), extras, "instance_text")
        return Report("gen s3b-sat", "feasible", extras=extras)
    raise GraphError(f"unknown generator {kind}")


# ---------------------------------------------------------------------------
# argument surface


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reorient",
                                description="connectivity workbench for arc reversals, "
                                            "partial orientations and deorientations")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, input_required=True):
        if input_required:
            sp.add_argument("--input", required=True)
        sp.add_argument("--k", type=int, default=None)
        sp.add_argument("--ell", type=int, default=None)
        sp.add_argument("--budget", type=int, default=None)
        sp.add_argument("--weights", default=None)
        sp.add_argument("--requirement", default=None)
        sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("check", help="run a connectivity oracle")
    sp.add_argument("--mode", required=True,
                    choices=("strong", "k-strong", "arc-strong", "orientation-condition",
                             "edge-connectivity", "bridges", "cactus", "local", "cuts"))
    sp.add_argument("--source", type=int, default=0)
    sp.add_argument("--target", type=int, default=1)
    common(sp)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("solve", help="run an exact solver")
    sp.add_argument("problem",
                    choices=("m2sar", "mkasr", "3sdo", "deor-strong", "deor-arc",
                             "lcdo", "doubling", "maxpo", "vc", "max2sat", "lco",
                             "i2vcomg"))
    sp.add_argument("--c", type=int, default=None)
    sp.add_argument("--t", default=None)
    sp.add_argument("--target", choices=("2-strong", "2-arc-strong"),
                    default="2-arc-strong")
    sp.add_argument("--vertex-condition", action="store_true")
    common(sp)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("poly", help="run a polynomial algorithm")
    sp.add_argument("algorithm", choices=("w23eda", "degrees", "robbins"))
    common(sp)
    sp.set_defaults(func=_cmd_poly)

    sp = sub.add_parser("approx", help="run an approximation algorithm")
    sp.add_argument("algorithm", choices=("deor", "m4eda"))
    sp.add_argument("--root", type=int, default=0)
    common(sp)
    sp.set_defaults(func=_cmd_approx)

    sp = sub.add_parser("reduce", help="build a target instance with provenance")
    sp.add_argument("name", choices=("class-g", "m2sar", "vc-4eda", "3sdo",
                                     "s3b-normalize", "lstrong", "lco-harden",
                                     "lco-lcdo"))
    sp.add_argument("--t", default=None)
    sp.add_argument("--output", default=None)
    sp.add_argument("--sidecar", default=None)
    common(sp)
    sp.set_defaults(func=_cmd_reduce)

    sp = sub.add_parser("verify-reduction", help="run the equivalence referee")
    sp.add_argument("name", choices=("m2sar", "3sdo", "vc-4eda", "lco-lcdo"))
    sp.add_argument("--t", default=None)
    common(sp)
    sp.set_defaults(func=_cmd_verify_reduction)

    sp = sub.add_parser("gen", help="generate instances")
    sp.add_argument("kind", choices=("rocket", "random-digraph", "cactus",
                                     "class-g", "s3b-sat"))
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--m", type=int, default=6)
    sp.add_argument("--vars", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--direction", choices=("out", "in"), default="out")
    sp.add_argument("--input", default=None)
    sp.add_argument("--output", default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.set_defaults(func=_cmd_gen)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        report = args.func(args)
    except GraphError as exc:
        report = Report(args.verb, "error", detail=str(exc))
    except FileNotFoundError as exc:
        report = Report(args.verb, "error", detail=str(exc))
    report.timing_ms = (time.monotonic() - start) * 1000.0
    out = report.render(args.format)
    stream = sys.stdout if report.exit_code != EXIT_ERROR else sys.stderr
    print(out, file=stream)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
