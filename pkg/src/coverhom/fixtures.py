"""Bundled fixtures: three tree complexes, a chain hypergraph, the classical
Sturmfels and Terai ideals, and the six-vertex projective plane."""

import importlib.resources

from . import jsonio

_COMPLEXES = {"tree_a", "tree_b", "tree_c", "projective_plane"}
_HYPERGRAPHS = {"chain_hypergraph"}
_IDEALS = {"sturmfels", "terai"}


def list_fixtures():
    return sorted(_COMPLEXES | _HYPERGRAPHS | _IDEALS)


def fixture_path(name):
    res = importlib.resources.files("coverhom") / "fixtures" / f"{name}.json"
    return str(res)


def load_fixture(name):
    data = jsonio.load_json(fixture_path(name))
    if name in _COMPLEXES:
        return jsonio.complex_from_json(data)
    if name in _HYPERGRAPHS:
        return jsonio.hypergraph_from_json(data)
    if name in _IDEALS:
        return jsonio.ideal_from_json(data)
    raise KeyError(name)


def tree_a():
    return load_fixture("tree_a")


def tree_b():
    return load_fixture("tree_b")


def tree_c():
    return load_fixture("tree_c")


def chain_hypergraph():
    return load_fixture("chain_hypergraph")


def sturmfels_ideal():
    return load_fixture("sturmfels")


def terai_ideal():
    return load_fixture("terai")


def projective_plane():
    return load_fixture("projective_plane")
