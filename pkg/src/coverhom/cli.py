"""Command-line surface.

Commands: analyze, cover-power, construct, betti, check-vd,
check-shellable, verify-paper.  Reports are JSON on stdout and embed their
inputs, so a run can be reproduced from its own report.

Exit codes: 0 all verdicts as expected, 1 verification failure, 2 input
error, 3 size limit exceeded.
"""

import json
import sys
import time

import click

from . import __version__, jsonio, verify
from .complexes import (
    find_leaves,
    good_leaf_certificate,
    good_leaf_order,
    good_vertex_sequences,
    hypergraph_of,
    is_connected,
    is_forest,
    is_grafted,
    is_simplicial_tree,
    is_unmixed,
    minimal_vertex_covers,
)
from .construction import prepare_run, run_string, terminal_decomposition, trace_records
from .errors import CoverhomError, InputError, SizeLimitExceeded
from .homological import (
    betti_numbers,
    find_linear_quotients_order,
    has_linear_quotients,
    is_componentwise_linear,
    is_shellable,
    is_vertex_decomposable_complex,
    is_vertex_decomposable_hypergraph,
    regularity,
    shelling_from_vd,
    shelling_to_linear_quotients,
)
from .ideals import cover_ideal, power, symbolic_power


def _emit(report, code=0):
    click.echo(json.dumps(report, indent=1, sort_keys=True))
    sys.exit(code)


def _report(command, inputs, verdicts, certificates=None, started=None):
    return {
        "command": command,
        "inputsDigest": jsonio.inputs_digest(inputs),
        "inputs": inputs,
        "verdicts": verdicts,
        "certificates": certificates or {},
        "timings": {"seconds": round(time.time() - started, 3) if started else None},
        "toolVersion": __version__,
    }


def _load(path, want):
    data = jsonio.load_json(path)
    kind, obj = jsonio.detect_and_parse(data)
    if kind != want:
        raise InputError(f"{path} holds a {kind}; expected a {want}")
    return data, obj


def _run(func):
    try:
        func()
    except SizeLimitExceeded as exc:
        click.echo(json.dumps({"error": str(exc), "kind": "size-limit"}))
        sys.exit(3)
    except (InputError, CoverhomError, OSError) as exc:
        click.echo(json.dumps({"error": str(exc), "kind": "input"}))
        sys.exit(2)


@click.group()
@click.version_option(__version__)
def main():
    """Exact combinatorics of cover ideals and layered hypergraphs."""


@main.command()
@click.argument("path", type=click.Path(exists=True))
@click.option("--max-facets", default=12, show_default=True)
def analyze(path, max_facets):
    """Structural report: leaves, good leaves, orders, covers, grafting."""

    def go():
        t0 = time.time()
        data, delta = _load(path, "complex")
        labels = delta.labels
        leaves = [
            {"facet": f, "branch": b} for f, b in find_leaves(delta)
        ]
        good = {}
        for f in range(delta.t):
            cert = good_leaf_certificate(delta, f)
            if cert is not None:
                good[str(f)] = {
                    "chain": list(cert.chain),
                    "intersections": [list(i) for i in cert.intersections],
                    "sequences": [
                        [labels[v] for v in s]
                        for s in good_vertex_sequences(delta, f)
                    ],
                }
        order = good_leaf_order(delta)
        h = hypergraph_of(delta)
        verdicts = {
            "connected": is_connected(delta),
            "forest": is_forest(delta),
            "tree": is_simplicial_tree(delta),
            "unmixed": is_unmixed(h),
            "grafted": is_grafted(delta, max_facets=max_facets),
        }
        certificates = {
            "leaves": leaves,
            "goodLeaves": good,
            "goodLeafOrder": list(order) if order else None,
            "minimalCovers": [
                [labels[v] for v in c] for c in minimal_vertex_covers(h)
            ],
        }
        _emit(_report("analyze", data, verdicts, certificates, t0))

    _run(go)


@main.command("cover-power")
@click.argument("path", type=click.Path(exists=True))
@click.argument("k", type=int)
@click.option("--symbolic", is_flag=True, help="use the symbolic power")
@click.option("--field", default="Q", show_default=True)
@click.option("--max-generators", default=20, show_default=True)
@click.option("--max-polarized", default=22, show_default=True)
def cover_power(path, k, symbolic, field, max_generators, max_polarized):
    """Cover ideal power with linear-quotient and linearity verdicts."""

    def go():
        t0 = time.time()
        data, delta = _load(path, "complex")
        j = cover_ideal(hypergraph_of(delta))
        jk = symbolic_power(j, k) if symbolic else power(j, k)
        try:
            lq = find_linear_quotients_order(
                jk, exhaustive_cap=max_generators, field=field,
                max_polarized=max_polarized,
            )
        except SizeLimitExceeded:
            lq = None
        order = None
        if lq is not None:
            order = [
                {delta.labels[i]: e for i, e in enumerate(g) if e}
                for g in lq.order
            ]
        verdicts = {
            "k": k,
            "symbolic": bool(symbolic),
            "coverIdealGenerators": j.num_gens,
            "powerGenerators": jk.num_gens,
            "linearQuotientsFound": lq is not None,
            "componentwiseLinear": is_componentwise_linear(
                jk, field, lq_order=(lq.order if lq else None),
                max_polarized=max_polarized,
            ),
            "regularity": regularity(jk, field, max_polarized),
        }
        _emit(_report("cover-power", data, verdicts, {"order": order}, t0))

    _run(go)


@main.command()
@click.argument("path", type=click.Path(exists=True))
@click.option("--k", "kvec", default=None, help="comma-separated budgets")
@click.option("--string", "letters", default=None, help="step letters, e.g. LDLL")
@click.option("--trace", is_flag=True, help="include the per-step trace")
def construct(path, kvec, letters, trace):
    """Run the layered contraction/deletion recursion to its fixed point."""

    def go():
        t0 = time.time()
        data = jsonio.load_json(path)
        kind, obj = jsonio.detect_and_parse(data)
        if kind == "run":
            delta = jsonio.complex_from_json(obj["complex"])
            k = tuple(obj["k"]) if kvec is None else _parse_k(kvec)
            ls = obj.get("string", "") if letters is None else letters
        elif kind == "complex":
            delta = obj
            if kvec is None or letters is None:
                raise InputError("--k and --string are required for a complex input")
            k = _parse_k(kvec)
            ls = letters
        else:
            raise InputError(f"{path} holds a {kind}; expected complex or run")
        run = prepare_run(delta, k)
        states, a = run_string(run, ls)
        blocks = terminal_decomposition(states[-1])
        labels = delta.labels
        verdicts = {
            "alpha": a,
            "steps": [
                {"u": labels[u], "c": c, "P": p} for u, c, p in states[-1].history
            ],
            "terminalBlocks": [
                {"facet": i, "budget": kb} for i, kb in blocks
            ],
        }
        certificates = {}
        if trace:
            certificates["trace"] = trace_records(states, ls)
        _emit(_report("construct", data, verdicts, certificates, t0))

    _run(go)


def _parse_k(text):
    try:
        return tuple(int(p) for p in str(text).split(","))
    except ValueError:
        raise InputError(f"bad k-vector {text!r}") from None


@main.command()
@click.argument("path", type=click.Path(exists=True))
@click.option("--field", default="Q", show_default=True)
@click.option("--max-polarized", default=22, show_default=True)
def betti(path, field, max_polarized):
    """Graded Betti table of a monomial ideal."""

    def go():
        t0 = time.time()
        data, ideal = _load(path, "ideal")
        table = betti_numbers(ideal, field, max_polarized)
        verdicts = {
            "betti": jsonio.betti_to_json(table),
            "regularity": table.regularity(),
        }
        _emit(_report("betti", data, verdicts, None, t0))

    _run(go)


@main.command("check-vd")
@click.argument("path", type=click.Path(exists=True))
@click.option("--max-vertices", default=24, show_default=True)
def check_vd(path, max_vertices):
    """Vertex-decomposability certificate for a complex or hypergraph."""

    def go():
        t0 = time.time()
        data = jsonio.load_json(path)
        kind, obj = jsonio.detect_and_parse(data)
        if kind == "complex":
            node = is_vertex_decomposable_complex(obj, max_vertices)
            cert = _complex_tree_json(obj, node) if node else None
            ok = node is not None
        elif kind == "hypergraph":
            node = is_vertex_decomposable_hypergraph(obj, max_vertices)
            cert = _hyper_tree_json(node) if node else None
            ok = node is not None
        else:
            raise InputError(f"{path} holds a {kind}")
        _emit(
            _report(
                "check-vd", data, {"vertexDecomposable": ok}, {"tree": cert}, t0
            )
        )

    _run(go)


def _complex_tree_json(delta, node, depth=0):
    if node[0] == "simplex":
        return {"leaf": "simplex", "facets": [list(f) for f in node[1]]}
    _, x, _, ln, dn = node
    return {
        "shed": delta.labels[x],
        "link": _complex_tree_json(delta, ln, depth + 1),
        "deletion": _complex_tree_json(delta, dn, depth + 1),
    }


def _hyper_tree_json(node, seen=None):
    seen = seen if seen is not None else {}
    key = id(node)
    if key in seen:
        return {"ref": seen[key]}
    ident = len(seen)
    seen[key] = ident
    if node.is_leaf:
        return {"id": ident, "leaf": "isolated"}
    return {
        "id": ident,
        "shed": node.vertex,
        "link": _hyper_tree_json(node.link_child, seen),
        "deletion": _hyper_tree_json(node.del_child, seen),
    }


@main.command("check-shellable")
@click.argument("path", type=click.Path(exists=True))
@click.option("--max-facets", default=12, show_default=True)
@click.option("--max-vertices", default=24, show_default=True)
def check_shellable(path, max_facets, max_vertices):
    """Shelling order of a complex, or of the independence complex of a
    hypergraph (derived from a decomposition certificate)."""

    def go():
        t0 = time.time()
        data = jsonio.load_json(path)
        kind, obj = jsonio.detect_and_parse(data)
        if kind == "complex":
            order = is_shellable(obj, max_facets, max_vertices)
            cert = (
                [[obj.labels[v] for v in f] for f in order] if order else None
            )
        elif kind == "hypergraph":
            node = is_vertex_decomposable_hypergraph(obj, max_vertices=64)
            if node is None:
                cert = None
            else:
                sh = shelling_from_vd(obj, node)
                lq = shelling_to_linear_quotients(obj, sh)
                assert has_linear_quotients(cover_ideal(obj), lq.order)
                cert = [[obj.labels[v] for v in f] for f in sh]
        else:
            raise InputError(f"{path} holds a {kind}")
        _emit(
            _report(
                "check-shellable",
                data,
                {"shellable": cert is not None},
                {"order": cert},
                t0,
            )
        )

    _run(go)


@main.command("verify-paper")
@click.option(
    "--suite",
    required=True,
    help="examples | theorem1 | theorem2 | regularity | construction-lemmas"
    " | counterexamples | all",
)
def verify_paper(suite):
    """Run a bundled verification suite; nonzero exit on any failure."""

    def go():
        t0 = time.time()
        checks, elapsed = verify.run_suite(suite)
        failed = [c for c in checks if not c["passed"]]
        report = _report(
            "verify-paper",
            {"suite": suite},
            {
                "total": len(checks),
                "failed": len(failed),
                "checks": checks,
            },
            None,
            t0,
        )
        _emit(report, 0 if not failed else 1)

    _run(go)


if __name__ == "__main__":
    main()
