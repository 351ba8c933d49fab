"""File formats: JSON round-trips, schema rejection, DOT export."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fincube.cubemodel import identity_t
from fincube.harness import gen_collared, gen_cube, gen_space, mirror
from fincube.cylindrical import kappa_cyl
from fincube.serialize import (
    SchemaError,
    cube_to_doc,
    cube_to_dot,
    doc_to_cube,
    doc_to_precollared,
    doc_to_space,
    doc_to_tmap,
    index_to_str,
    precollared_to_doc,
    space_to_doc,
    space_to_dot,
    str_to_index,
    tmap_to_doc,
    tmap_to_dot,
)

from conftest import cube_strategy, space_strategy


@settings(max_examples=25, deadline=None)
@given(space_strategy())
def test_space_round_trip(X):
    # [TRIVIAL] export then import is the identity, structurally
    assert doc_to_space(space_to_doc(X)) == X


@settings(max_examples=20, deadline=None)
@given(cube_strategy(max_degree=3))
def test_cube_round_trip(u):
    assert doc_to_cube(cube_to_doc(u)) == u


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 2))
def test_collared_round_trip(seed, n):
    U = gen_collared(random.Random(seed), n, 5)
    V = doc_to_precollared(precollared_to_doc(U))
    assert V.cube == U.cube
    assert V.collars == U.collars
    assert V.ks == U.ks


@settings(max_examples=10, deadline=None)
@given(cube_strategy(max_degree=2, max_points=4))
def test_tmap_round_trip(u):
    f = identity_t(u)
    assert doc_to_tmap(tmap_to_doc(f)) == f
    for i in range(1, u.n + 1):
        k = kappa_cyl(u, mirror(u, i), u, i)
        assert doc_to_tmap(tmap_to_doc(k)) == k


def test_index_string_round_trip():
    # [TRIVIAL]
    assert str_to_index(index_to_str((-1, 0, 1)), 3) == (-1, 0, 1)
    assert str_to_index(index_to_str(()), 0) == ()
    with pytest.raises(SchemaError):
        str_to_index("7", 1)


def test_unknown_fields_rejected():
    # [TRIVIAL] unknown keys are schema errors, for every document kind
    rng = random.Random(1)
    X = gen_space(rng, 4)
    u = gen_cube(rng, 1, 4)
    doc = space_to_doc(X)
    doc["surprise"] = 1
    with pytest.raises(SchemaError):
        doc_to_space(doc)
    cdoc = cube_to_doc(u)
    cdoc["surprise"] = 1
    with pytest.raises(SchemaError):
        doc_to_cube(cdoc)
    tdoc = tmap_to_doc(identity_t(u))
    tdoc["surprise"] = 1
    with pytest.raises(SchemaError):
        doc_to_tmap(tdoc)


def test_schema_type_errors():
    # [TRIVIAL]
    with pytest.raises(SchemaError):
        doc_to_space({"elements": [1], "leq": []})
    with pytest.raises(SchemaError):
        doc_to_cube({"n": "x", "spaces": {}, "maps": []})


def test_dot_output_shape(rng):
    # [TRIVIAL] DOT output is a digraph mentioning every element
    X = gen_space(rng, 5)
    dot = space_to_dot(X)
    assert dot.startswith("digraph")
    for e in X.elements:
        assert f'"{e}"' in dot
    u = gen_cube(rng, 2, 4)
    cdot = cube_to_dot(u)
    assert cdot.startswith("digraph")
    assert cdot.count('subgraph "cluster_') == 9
    tdot = tmap_to_dot(identity_t(u))
    assert tdot.startswith("digraph")
