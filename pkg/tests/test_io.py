import random
import re

import pytest
from hypothesis import given, strategies as st

from smalehom import io
from smalehom.errors import ValidationError
from smalehom.fiber import putnam_complex, solenoid_preset
from smalehom.graphs import fold_hom, full_shift, random_graph
from smalehom.linalg import IntMatrix


@given(st.lists(st.lists(st.integers(-10**30, 10**30), min_size=3, max_size=3), max_size=4))
def test_matrix_roundtrip_keeps_big_integers(rows):
    A = IntMatrix(len(rows), 3, rows)
    assert io.matrix_from_json(io.matrix_to_json(A)) == A


@given(st.integers(0, 10**6))
def test_graph_roundtrip(seed):
    G = random_graph(random.Random(seed))
    assert io.graph_from_json(io.graph_to_json(G)) == G


def test_hom_and_complex_roundtrip():
    pi = fold_hom(full_shift(2))
    back = io.hom_from_json(io.hom_to_json(pi))
    assert back.vmap == pi.vmap and back.emap == pi.emap
    for P in (solenoid_preset(3), putnam_complex(pi)):
        Q = io.complex_from_json(io.complex_to_json(P))
        assert (Q.ranks, Q.gammas, Q.boundaries, Q.provenance) == (P.ranks, P.gammas, P.boundaries, P.provenance)


@pytest.mark.parametrize("doc,where", [
    ({"rows": 1, "cols": 1}, "missing key 'entries'"),
    ({"rows": 1, "cols": 1, "entries": [["x"]]}, "$.entries[0][0]"),
    ({"rows": 1, "cols": 1, "entries": [[1.5]]}, "$.entries[0][0]"),
    ({"rows": 2, "cols": 1, "entries": [["1"]]}, "$.entries"),
])
def test_matrix_errors_have_paths(doc, where):
    with pytest.raises(ValidationError, match=re.escape(where)):
        io.matrix_from_json(doc)


def test_graph_errors_have_paths():
    with pytest.raises(ValidationError, match=r"\$\.edges\[0\]\.dst: unknown vertex 'b'"):
        io.graph_from_json({"vertices": ["a"], "edges": [{"id": "e", "src": "a", "dst": "b"}]})
    with pytest.raises(ValidationError, match=r"\$\.source"):
        io.hom_from_json({"source": {"vertices": 3, "edges": []}, "target": {}, "vertex_map": {}, "edge_map": {}})
