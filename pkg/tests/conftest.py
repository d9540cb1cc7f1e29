import pytest

from sftkit.core import Digraph, Sft1D, full_shift, sft_from_edges


@pytest.fixture(scope="session")
def golden():
    return Sft1D.from_words("01", "11")


@pytest.fixture(scope="session")
def coding_sft():
    """The 3-symbol SFT whose graph is a 3-cycle plus a chord and a loop."""
    return sft_from_edges("abc", [("a", "b"), ("b", "c"), ("c", "a"), ("c", "b"), ("c", "c")])


@pytest.fixture(scope="session")
def full2():
    return full_shift("01")


def graph(edge_spec, vertices=None):
    """Digraph from 'uv' strings over 1-char vertex names."""
    edges = {(e[0], e[1]) for e in edge_spec}
    if vertices is None:
        vertices = sorted({x for e in edges for x in e})
    return Digraph(tuple(vertices), frozenset(edges))


# the three graphs of the decidability-condition example
@pytest.fixture(scope="session")
def graph_reflexive():
    return graph(["ab", "bc", "ca", "cb", "aa", "bb", "cc"])


@pytest.fixture(scope="session")
def graph_symmetric():
    return graph(["ab", "ba", "bc", "cb", "ca", "ac", "bb", "cc"])


@pytest.fixture(scope="session")
def graph_statesplit():
    # classes {a,d,e} -> {b,f} -> {c} -> back
    edges = []
    for x in "ade":
        for y in "bf":
            edges.append(x + y)
    for y in "bf":
        edges.append(y + "c")
    for x in "ade":
        edges.append("c" + x)
    return graph(edges, vertices=tuple("abcdef"))


# Table-of-main-cases exemplar graphs, keyed by the expected dispatch tag
def table_exemplars():
    out = {}
    # 1.1: 5-cycle a->b->c->d->e->a with back chords b->a, c->b and a loop on e
    out["1.1"] = graph(["ab", "bc", "cd", "de", "ea", "ba", "cb", "ee"])
    # 1.2: same 5-cycle, bidirectional a<->b, chord c->b, loop on b
    out["1.2"] = graph(["ab", "bc", "cd", "de", "ea", "ba", "cb", "bb"])
    # 1.3: 5-cycle v->a->c->d->u->v with a->v, c->a chords; loops on v, c, d, u
    out["1.3"] = graph(
        ["VA", "AC", "CD", "DU", "UV", "AV", "CA", "VV", "CC", "DD", "UU"],
        vertices=tuple("VACDU"),
    )
    # 2.1: 5-cycle with bidirectional a<->b and chord c->b, no loops
    out["2.1"] = graph(["ab", "bc", "cd", "de", "ea", "ba", "cb"])
    # 2.2: 5-cycle plus a pendant bidirectional edge a<->f
    out["2.2"] = graph(["ab", "bc", "cd", "de", "ea", "af", "fa"])
    # 3.1: 5-cycle plus a 3-step detour c->f->g->d bypassing the edge c->d
    out["3.1"] = graph(["ab", "bc", "cd", "de", "ea", "cf", "fg", "gd"])
    # 3.2: 5-cycle plus a parallel path b->f->g->e and chord c->g
    out["3.2"] = graph(["ab", "bc", "cd", "de", "ea", "bf", "fg", "ge", "cg"])
    # 3.3: 5-cycle plus a disjoint 3-cycle a->f->g->a sharing only a
    out["3.3"] = graph(["ab", "bc", "cd", "de", "ea", "af", "fg", "ga"])
    return out


@pytest.fixture(scope="session")
def exemplars():
    return table_exemplars()
