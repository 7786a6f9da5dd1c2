"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage or parse error, 3 a computed
fact contradicts a theorem (engine bug or corrupted data).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .errors import DomainError, ParseError, QOrbitalError, ResourceError, TheoremViolation
from .groups import PermGroup, cycle_string

DEFAULT_FIXTURES = Path(__file__).parent / "fixtures"


def fixtures_dir(args) -> Path:
    if getattr(args, "fixtures", None):
        return Path(args.fixtures)
    env = os.environ.get("QORBITAL_FIXTURES")
    return Path(env) if env else DEFAULT_FIXTURES


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _group_json(G) -> dict:
    return {
        "order": G.order,
        "structure": G.structure(),
        "generators": sorted(cycle_string(g) for g in G.generators),
    }


def _build(args):
    from .dsl import build

    b = build(args.layout)
    if b.n > args.max_n:
        raise ResourceError(f"layout has N = {b.n} > --max-n {args.max_n}")
    return b


def _pairs(c) -> str:
    return " ".join(f"({i},{k})" for i, k in sorted(c))


def _classical(b):
    from .algebra import classical_version

    if "pattern" in b.extra:
        return b.extra["pattern"].classical_version(b.u)
    return classical_version(b.u)


# -- commands -----------------------------------------------------------------------


def cmd_orbits(args, out):
    from .orbitals import orbits

    b = _build(args)
    part = orbits(b.u)
    if args.json:
        out.write(_dump(part.to_json()) + "\n")
        return
    out.write(f"{b.expr}: N = {b.n}, {len(part)} orbit(s)\n")
    for s in part.as_sets():
        out.write("  {" + ",".join(str(i) for i in sorted(s)) + "}\n")


def cmd_orbitals(args, out):
    from .orbitals import orbitals

    b = _build(args)
    orb = orbitals(b.u)
    if args.json:
        out.write(_dump(orb.to_json()) + "\n")
        return
    out.write(f"{b.expr}: N = {b.n}, {len(orb)} orbital(s), {len(orb.nondiagonal())} off the diagonal\n")
    for idx, c in enumerate(orb.sets()):
        tag = "diag" if orb.diagonal[idx] else f"inv=o{orb.inverse[idx]}"
        out.write(f"  o{idx} [{tag}] {_pairs(c)}\n")
    for a in orb.anomalies:
        out.write(f"  warning: {a}\n")


def cmd_graphs(args, out):
    from .graphs import export_dot, invariant_graphs

    b = _build(args)
    gs = invariant_graphs(b.u)
    if args.dot:
        for X in gs:
            out.write(export_dot(X))
        return
    if args.json:
        out.write(_dump([X.to_json() for X in gs]) + "\n")
        return
    out.write(f"{b.expr}: {len(gs)} invariant graph(s)\n")
    for idx, X in enumerate(gs):
        out.write(f"  X{idx}: {len(X.edges)} edge(s) " + " ".join(f"{i}-{j}" for i, j in X.sorted_edges()) + "\n")


def _read_graph(text: str, n: int):
    from .graphs import Graph

    p = Path(text)
    if text.endswith(".json") or p.is_file():
        try:
            return Graph.from_json(json.loads(p.read_text()))
        except OSError as exc:
            raise DomainError(f"cannot read {text}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    edges = []
    col = 1
    for tok in text.split(","):
        tok_s = tok.strip()
        if tok_s:
            try:
                i, j = (int(x) for x in tok_s.split("-"))
            except ValueError:
                raise ParseError(f"bad edge {tok_s!r}, expected i-j", 1, col) from None
            edges.append((i, j))
        col += len(tok) + 1
    try:
        return Graph.from_one_based(n, edges)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def cmd_act_check(args, out):
    from .graphs import acts_on

    b = _build(args)
    X = _read_graph(args.graph, b.n)
    ok = acts_on(b.u, X)
    if args.json:
        out.write(_dump({"layout": str(b.expr), "graph": X.to_json(), "acts": ok}) + "\n")
    else:
        out.write(f"acts={'true' if ok else 'false'}\n")


def cmd_preserve(args, out):
    from .graphs import orbital_preserving_group

    b = _build(args)
    G = orbital_preserving_group(b.u, symmetric=not args.directed)
    if args.json:
        out.write(_dump({"layout": str(b.expr), "group": _group_json(G)}) + "\n")
    else:
        out.write(f"order={G.order} structure={G.structure()}\n")
        for g in sorted(cycle_string(g) for g in G.generators):
            out.write(f"  {g}\n")


def cmd_frucht_check(args, out):
    from .graphs import frucht_obstruction

    b = _build(args)
    rep = frucht_obstruction(b.u, classical=_classical(b))
    res = {
        "layout": str(b.expr),
        "preserving_group": _group_json(rep["preserving_group"]),
        "classical_version": _group_json(rep["classical_version"]),
        "obstructed": rep["obstructed"],
        "witness": cycle_string(rep["witness"]) if rep["witness"] is not None else None,
    }
    if b.expr.kind == "kp" and "u0" in b.layout.instances:
        from .kac_paljutkin import kp_d4_obstruction

        d4 = kp_d4_obstruction(b.layout)
        res["d4"] = {"order": d4["group_order"], "abelian": d4["abelian"],
                     "obstructed": d4["obstructed"], "witness": d4["witness_cycles"],
                     "witness_b": list(d4["witness"][0]) if d4["witness"] else None}
    if args.json:
        out.write(_dump(res) + "\n")
        return
    out.write(f"obstructed={'true' if res['obstructed'] else 'false'}\n")
    out.write(f"preserving group: order {res['preserving_group']['order']} "
              f"({res['preserving_group']['structure']})\n")
    out.write(f"classical version: order {res['classical_version']['order']} "
              f"({res['classical_version']['structure']})\n")
    if res["witness"]:
        out.write(f"witness: {res['witness']}\n")
    if "d4" in res:
        d = res["d4"]
        out.write(f"D4 copy: order {d['order']}, witness {d['witness']} at b={tuple(d['witness_b'])}\n")


def cmd_frucht_build(args, out):
    from .duals import builtin_group, parse_element
    from .graphs import automorphism_group, export_dot, frucht_graph

    G = builtin_group(args.group)
    S = [parse_element(G, t) for t in args.gens]
    X = frucht_graph(G, S)
    if args.dot:
        out.write(export_dot(X))
        return
    aut = automorphism_group(X, bound=max(32, X.n))
    if args.json:
        out.write(_dump({"group": G.label, "graph": X.to_json(), "aut": _group_json(aut)}) + "\n")
    else:
        out.write(f"{G.label}: {X.n} vertices, {len(X.edges)} edges, |Aut| = {aut.order}\n")


def cmd_classical(args, out):
    b = _build(args)
    cl = _classical(b)
    if args.json:
        out.write(_dump({"layout": str(b.expr), "classical_version": _group_json(cl),
                         "elements": sorted(cycle_string(g) for g in cl.elements)}) + "\n")
        return
    out.write(f"order={cl.order} structure={cl.structure()}\n")
    for g in sorted(cycle_string(g) for g in cl.elements):
        out.write(f"  {g}\n")


def _sup(name: str) -> str:
    return name if len(name) == 1 else "{" + name + "}"


def cmd_totality(args, out):
    from .duals import builtin_group, totality_check

    def one(label):
        return totality_check(builtin_group(label))

    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        reports = list(pool.map(one, args.groups))
    if args.json:
        out.write(_dump(reports) + "\n")
        return
    for label, rep in zip(args.groups, reports):
        out.write(f"{label}: {len(rep['classes'])} classes, total={'true' if rep['total'] else 'false'}\n")
        for w in rep["witnesses"][: args.limit]:
            out.write(f"  u^{_sup(w['p'])}_{w['i']}{w['j']} u^{_sup(w['q'])}_{w['k']}{w['l']} = 0\n")
        extra = len(rep["witnesses"]) - args.limit
        if extra > 0:
            out.write(f"  ... {extra} more\n")


def cmd_lift(args, out):
    from .duals import free_product_lift
    from .orbitals import orbitals

    b = _build(args)
    if b.expr.kind != "dual":
        raise DomainError("lift needs a dual(...) layout")
    lifted = free_product_lift(b.extra["embedding"])
    same = orbitals(lifted.u).as_partition() == orbitals(b.u).as_partition()
    res = {"layout": str(b.expr), "free_product": "*".join(f"Z{o}" for o in lifted.group.orders),
           "same_orbitals": same}
    if args.json:
        out.write(_dump(res) + "\n")
    else:
        out.write(f"lifted to {res['free_product']}, same orbitals={'true' if same else 'false'}\n")


def cmd_liberate(args, out):
    from .duals import builtin_group, liberation

    lib = liberation(builtin_group(args.G), builtin_group(args.gamma))
    _, perms, _, hom_ok = lib.character_group()
    H = PermGroup.from_elements(lib.u.n, perms)
    res = {"G": args.G, "gamma": args.gamma, "N": lib.u.n, "characters": len(perms),
           "character_group": _group_json(H), "phi_homomorphism": hom_ok}
    if args.json:
        out.write(_dump(res) + "\n")
    else:
        out.write(f"N={res['N']} characters={res['characters']} structure={H.structure()} "
                  f"phi_hom={'true' if hom_ok else 'false'}\n")


def cmd_kp_report(args, out):
    from .dsl import build
    from .kac_paljutkin import kp_catalog, kp_d4_obstruction, kp_orbitals
    from .magic import generates, is_transitive_magic_rep, verify_magic

    b = build(args.layout)
    if b.expr.kind != "kp":
        raise DomainError("kp-report needs a kp{...} layout")
    cat = kp_catalog()
    reps = {}
    for name in sorted(cat):
        u = cat[name]
        ok, _ = is_transitive_magic_rep(u)
        gen, dim = generates(u)
        reps[name] = {"magic": not verify_magic(u), "transitive": ok, "generates": gen, "dimension": dim}
    _, orb = kp_orbitals(b.layout)
    res = {"layout": str(b.expr), "catalog": reps, "classes": orb["classes"],
           "type_counts": orb["type_counts"], "closure_needed": orb["closure_needed"]}
    if "u0" in b.layout.instances:
        d4 = kp_d4_obstruction(b.layout)
        res["d4"] = {"order": d4["group_order"], "abelian": d4["abelian"],
                     "classical": d4["classical_structure"], "obstructed": d4["obstructed"],
                     "witness": d4["witness_cycles"]}
    if args.json:
        out.write(_dump(res) + "\n")
        return
    for name, r in reps.items():
        out.write(f"{name:4s} magic={r['magic']} transitive={r['transitive']} "
                  f"generates={r['generates']} dim={r['dimension']}\n")
    out.write(f"{res['layout']}: {res['classes']} orbitals\n")
    for k, v in res["type_counts"].items():
        out.write(f"  {k}: {','.join(str(x) for x in v)}\n")
    if "d4" in res:
        d = res["d4"]
        out.write(f"D4 order {d['order']}, classical {d['classical']}, obstructed={d['obstructed']}, "
                  f"witness {d['witness']}\n")


def cmd_h2p_report(args, out):
    from .dsl import build
    from .graphs import frucht_obstruction, invariant_graphs, orbital_preserving_group
    from .h2plus import h2p_engine, h2p_xprime_check, section8_partial, ten_vertex_experiment

    eng = h2p_engine()
    orb = eng["orbitals"]
    u = eng["magic"]
    P = eng["pattern"]
    cl = P.classical_version()
    res = {
        "model_violations": eng["model_violations"],
        "orbitals": [sorted(list(p) for p in c) for c in orb.sets(orb.nondiagonal())],
        "graphs": len(invariant_graphs(u, orb)),
        "preserving_group": _group_json(orbital_preserving_group(u, orb=orb)),
        "classical_version": _group_json(cl),
        "obstructed": frucht_obstruction(u, orb, cl)["obstructed"],
        "xprime": h2p_xprime_check()["ok"],
    }
    if args.layout:
        b = build(args.layout)
        if b.layout is None:
            raise DomainError("h2p-report needs a layout over u0, x, one")
        res["section8"] = section8_partial(b.layout)
    if args.experiment:
        exp = ten_vertex_experiment()
        res["experiment"] = {k: v for k, v in exp.items() if k != "rows"}
        counts: dict = {}
        for r in exp["rows"]:
            counts[r["h2p_acts"]] = counts.get(r["h2p_acts"], 0) + 1
        res["experiment"]["verdicts"] = counts
        res["experiment"]["figure"] = [r for r in exp["rows"] if r["is_figure"]]
    if args.json:
        out.write(_dump(res) + "\n")
        return
    out.write(f"orbitals off the diagonal: {len(res['orbitals'])}\n")
    for c in res["orbitals"]:
        out.write("  " + " ".join(f"({i},{k})" for i, k in c) + "\n")
    out.write(f"invariant graphs: {res['graphs']}\n")
    out.write(f"preserving group: {res['preserving_group']['structure']} "
              f"(order {res['preserving_group']['order']})\n")
    out.write(f"classical version: {res['classical_version']['structure']}, "
              f"obstructed={'true' if res['obstructed'] else 'false'}\n")
    out.write(f"x' representation: {'ok' if res['xprime'] else 'fails'}\n")
    if "section8" in res:
        s = res["section8"]
        out.write(f"{s['layout']}: {s['classes']} orbitals, match={s['match']}\n")
    if "experiment" in res:
        e = res["experiment"]
        out.write(f"ten-vertex experiment: {e['graphs']} graphs, verdicts "
                  + ", ".join(f"{k}={v}" for k, v in sorted(e["verdicts"].items())) + "\n")


def _replay_one(case: dict, base: Path):
    expected = case.get("stdout")
    if expected is None and "stdout_file" in case:
        expected = (base / case["stdout_file"]).read_text()
    code, stdout, _ = run(case["argv"])
    ok = code == case.get("exit", 0) and (expected is None or stdout == expected)
    return case.get("name", " ".join(case["argv"])), ok, code


def cmd_replay(args, out):
    base = fixtures_dir(args)
    cases = []
    for path in sorted((base / "replay").glob("cases*.json")):
        data = json.loads(path.read_text())
        cases.extend(data if isinstance(data, list) else [data])
    if not cases:
        raise DomainError(f"no replay cases under {base / 'replay'}")
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = list(pool.map(lambda c: _replay_one(c, base / "replay"), cases))
    failed = [r for r in results if not r[1]]
    for name, ok, code in results:
        out.write(f"{'ok  ' if ok else 'FAIL'} {name} (exit {code})\n")
    out.write(f"{len(results) - len(failed)}/{len(results)} replay cases match\n")
    if failed:
        raise DomainError(f"{len(failed)} replay case(s) differ")


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--dot", action="store_true", help="Graphviz output where it applies")
    common.add_argument("--max-n", type=int, default=64, help="refuse layouts with more points")
    common.add_argument("--fixtures", help="fixtures directory (default: $QORBITAL_FIXTURES or bundled)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for independent checks")

    p = argparse.ArgumentParser(prog="qorbital", description="Orbitals and invariant graphs of quantum permutation groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, layout=True, layout_optional=False):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if layout:
            if layout_optional:
                sp.add_argument("layout", nargs="?")
            else:
                sp.add_argument("layout", help="layout expression, e.g. 'dual(S3){(12),(123)}'")
        sp.set_defaults(func=fn)
        return sp

    add("orbits", cmd_orbits, "orbits of the magic unitary")
    add("orbitals", cmd_orbitals, "orbital partition")
    add("graphs", cmd_graphs, "all invariant graphs")
    sp = add("act-check", cmd_act_check, "does the layout act on a graph")
    sp.add_argument("graph", help="JSON file {n, edges} or an edge list like '1-2,2-3'")
    sp = add("preserve", cmd_preserve, "classical group preserving every orbital")
    sp.add_argument("--directed", action="store_true", help="preserve each orbital rather than o and its inverse")
    add("frucht-check", cmd_frucht_check, "orbital obstruction to the Frucht property")
    sp = add("frucht-build", cmd_frucht_build, "graph with a prescribed automorphism group", layout=False)
    sp.add_argument("group")
    sp.add_argument("gens", nargs="+", help="generators, e.g. (12) (123)")
    add("classical", cmd_classical, "classical version through the character map")
    sp = add("totality", cmd_totality, "vanishing products between inequivalent Fourier blocks", layout=False)
    sp.add_argument("groups", nargs="+")
    sp.add_argument("--limit", type=int, default=10, help="witnesses printed per group")
    add("lift", cmd_lift, "free-product lift of a group dual layout")
    sp = add("liberate", cmd_liberate, "liberation of G through a perfect group", layout=False)
    sp.add_argument("G")
    sp.add_argument("gamma")
    sp = add("kp-report", cmd_kp_report, "Kac-Paljutkin catalog, orbitals and D4 obstruction", layout_optional=True)
    sp.set_defaults(layout="kp{u0,w,x,y,z,one}")
    sp = add("h2p-report", cmd_h2p_report, "H2+ pattern engine", layout_optional=True)
    sp.add_argument("--experiment", action="store_true", help="run the ten-vertex experiment")
    add("replay", cmd_replay, "replay the fixtures corpus", layout=False)
    return p


def run(argv) -> tuple[int, str, str]:
    """Run one command; returns ``(exit code, stdout, stderr)``."""
    out_buf, err_buf = io.StringIO(), io.StringIO()
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err_buf), contextlib.redirect_stdout(out_buf):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), out_buf.getvalue(), err_buf.getvalue()
    try:
        args.func(args, out_buf)
        code = 0
    except ParseError as exc:
        err_buf.write(f"parse error: {exc}\n")
        code = 2
    except TheoremViolation as exc:
        err_buf.write(f"theorem violation: {exc}\n")
        code = 3
    except (DomainError, QOrbitalError) as exc:
        err_buf.write(f"error: {exc}\n")
        code = 1
    return code, out_buf.getvalue(), err_buf.getvalue()


def main(argv=None) -> int:
    code, stdout, stderr = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
