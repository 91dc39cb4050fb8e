import itertools
import json

import networkx as nx
import pytest

from grouporders.census import (
    SHAPE_NAMES, admissible_squarefree, canonical_form, census, enumerate_graphs,
    is_monotone_in_labels, label_sweep, labels_realizable, realize, shape_name,
)
from grouporders.graph import build_graph, central_masks
from grouporders.classifier import classify
from grouporders.holder import AbstractGraph, g_holder, path_count


def networkx_classes(max_v, max_deg=2):
    """Isomorphism classes of weakly connected DAGs, counted independently."""
    reps = []
    for size in range(2, max_v + 1):
        pairs = list(itertools.permutations(range(size), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            g = nx.DiGraph(edges)
            g.add_nodes_from(range(size))
            if not nx.is_weakly_connected(g) or not nx.is_directed_acyclic_graph(g):
                continue
            if max(d for _, d in g.in_degree()) > max_deg or max(d for _, d in g.out_degree()) > max_deg:
                continue
            if not any(nx.is_isomorphic(g, h) for h in reps):
                reps.append(g)
    return len(reps)


def test_enumeration_small():
    assert [sorted(g.edges) for g in enumerate_graphs(2)] == [[(0, 1)]]
    keys = {canonical_form(g.size, g.edges) for g in enumerate_graphs(3)}
    assert canonical_form(3, AbstractGraph.path(3).edges) in keys
    assert [len(enumerate_graphs(v)) for v in range(2, 7)] == [1, 5, 19, 86, 456]


@pytest.mark.parametrize("max_v", [2, 3, 4])
def test_enumeration_matches_networkx(max_v):
    assert len(enumerate_graphs(max_v)) == networkx_classes(max_v)


def test_enumeration_rejects_bad_bounds():
    with pytest.raises(ValueError):
        enumerate_graphs(7)
    with pytest.raises(ValueError):
        enumerate_graphs(4, 3, 2)


def test_canonical_form_is_invariant():
    for g in enumerate_graphs(5):
        for perm in itertools.islice(itertools.permutations(range(g.size)), 30):
            moved = {(perm[i], perm[j]) for i, j in g.edges}
            assert canonical_form(g.size, moved) == canonical_form(g.size, g.edges)


def _summary(report):
    return sorted((e.g, e.name, tuple(sorted((e.labels or {}).values()))) for e in report.entries)


def test_census_targets():
    assert _summary(admissible_squarefree(6)) == [(6, "Q", ()), (6, "triangle", (2,))]
    assert _summary(admissible_squarefree(7)) == [
        (7, "star", (5,)), (7, "star+tail", (3,)), (7, "triangle", (3,))]


def test_census_report_json_is_stable():
    a, b = census(5).to_json(), census(5).to_json()
    assert a == b and '"Q"' in a


def test_labels_realizable():
    tri = SHAPE_NAMES["triangle"]
    assert labels_realizable(tri, {0: 2})
    assert labels_realizable(tri, {0: 3})
    assert not labels_realizable(tri, {1: 2})  # 2 must be a source
    star = SHAPE_NAMES["star"]
    assert labels_realizable(star, {0: 2})  # 30
    assert labels_realizable(star, {0: 5})
    assert not labels_realizable(star, {1: 2})
    # 7 - 1 has only one odd prime divisor, too few for two in-arrows
    assert not labels_realizable(SHAPE_NAMES["K"], {2: 7})
    assert not labels_realizable(tri, {0: 3, 1: 5})  # 5 != 1 (mod 3)


def test_label_sweep_star():
    values = dict((lab[0], g) for lab, g in label_sweep(SHAPE_NAMES["star"]))
    assert values[5] == 7 and values[3] == 5


def test_monotone_in_labels():
    for g in enumerate_graphs(5):
        assert is_monotone_in_labels(g)


def test_shape_names():
    assert shape_name(SHAPE_NAMES["Q"]) == "Q"
    assert shape_name(AbstractGraph.path(4)) == "path4"
    assert shape_name(AbstractGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])) is None


def test_realize_examples():
    assert realize(SHAPE_NAMES["Q"], 10**4) == 7455
    assert realize(AbstractGraph.path(2), 10) == 6
    assert realize(SHAPE_NAMES["triangle"].with_label(0, 2), 50) == 42
    assert realize(SHAPE_NAMES["Q"], 7000) is None


def test_census_entries_realize_with_matching_count():
    for e in census(5).entries:
        n = realize(e.labelled_graph(), 10**5)
        assert n is not None
        assert g_holder(build_graph(n)) == e.g
        assert classify(n).k == e.g


def test_q_is_enumerated_at_four_vertices():
    keys = {canonical_form(g.size, g.edges) for g in enumerate_graphs(4)}
    q = SHAPE_NAMES["Q"]
    assert canonical_form(q.size, q.edges) in keys


def test_no_path_is_admissible():
    names = [e.name or "" for e in census(6).entries]
    assert not any(name.startswith("path") for name in names)
    assert all(path_count(k) not in (6, 7) for k in range(1, 10))


def test_entries_serialize_in_the_documented_shape():
    doc = json.loads(census(5).to_json())
    assert set(doc) == {"params", "entries"}
    for entry in doc["entries"]:
        assert entry["labels"] is None or set(entry["labels"]) == {"p"}
        assert isinstance(entry["g"], int) and entry["graph"]["edges"]


def test_regular_count_equals_central_subsets():
    for g in enumerate_graphs(5):
        if g.is_regular():
            assert g_holder(g) == len(central_masks(g.out_masks()))
