"""Finite-space layer: order topology, maps, colimits, homotopy tools."""

import itertools

import pytest
from hypothesis import given, settings

from fincube.finspace import (
    SpaceMap,
    ValidationError,
    chosen_pushout,
    classify_map,
    classify_subset,
    compose,
    core,
    cylinder,
    cylinder_map,
    identity,
    interval,
    is_homotopy_equivalence,
    is_pullback_square,
    is_pushout_square,
    make_space,
    poset_iso,
    product,
    pullback,
    quotient,
    subspace,
    sum_,
)

from conftest import space_strategy, span_strategy


# --- construction and subsets ------------------------------------------------


def test_make_space_transitive_closure():
    # [TRIVIAL] a <= b <= c forces a <= c
    X = make_space(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert X.leq("a", "c")
    assert not X.leq("c", "a")


def test_make_space_rejects_bad_input():
    # [TRIVIAL]
    with pytest.raises(ValidationError):
        make_space(["a", "a"])
    with pytest.raises(ValidationError):
        make_space(["a"], [("a", "zz")])


@settings(max_examples=25, deadline=None)
@given(space_strategy())
def test_up_sets_are_open_down_sets_closed(X):
    # [TRIVIAL] minimal open neighborhoods are up-sets; their complements closed
    for x in X.elements:
        flags = classify_subset(X, X.up_set(x))
        assert flags.open
        assert classify_subset(X, X.down_set(x)).closed


def test_continuity_is_monotonicity():
    # [DERIVED] oracle: exhaustive assignments on a 2-chain; exactly the
    # monotone ones are continuous
    C = make_space(["a", "b"], [("a", "b")])
    verdicts = {
        (fa, fb): classify_map(SpaceMap(C, C, {"a": fa, "b": fb})).continuous
        for fa, fb in itertools.product(C.elements, repeat=2)
    }
    assert verdicts == {
        ("a", "a"): True,
        ("a", "b"): True,
        ("b", "b"): True,
        ("b", "a"): False,
    }


def test_classify_map_flags():
    # [DERIVED] subspace inclusion is an embedding; a collapse is not injective
    X = make_space(["a", "b", "c"], [("a", "b"), ("a", "c")])
    incl = SpaceMap(subspace(X, {"a", "b"}), X, {"a": "a", "b": "b"})
    flags = classify_map(incl)
    assert flags.continuous and flags.embedding
    pt = make_space(["p"])
    collapse = SpaceMap(X, pt, {e: "p" for e in X.elements})
    assert not classify_map(collapse).embedding
    assert classify_map(identity(X)).homeomorphism


def test_order_reflection_required_for_embedding():
    # [DERIVED] injective + continuous but not order-reflecting: discrete pair
    # into a chain
    D = make_space(["a", "b"])
    C = make_space(["a", "b"], [("a", "b")])
    f = SpaceMap(D, C, {"a": "a", "b": "b"})
    assert classify_map(f).injective
    assert not classify_map(f).embedding


# --- sums, products, quotients ----------------------------------------------


def test_sum_is_disjoint_and_clopen():
    # [TRIVIAL]
    X, Y = make_space(["a"]), make_space(["a", "b"], [("a", "b")])
    S = sum_(X, Y)
    assert len(S.space) == 3
    assert classify_subset(S.space, S.inl.image()).clopen


@settings(max_examples=15, deadline=None)
@given(space_strategy(4), space_strategy(4))
def test_product_order_is_componentwise(X, Y):
    # [DERIVED] oracle: independent componentwise comparison
    P = product(X, Y)
    for p in P.space.elements:
        for q in P.space.elements:
            want = X.leq(P.proj1.assign[p], P.proj1.assign[q]) and Y.leq(
                P.proj2.assign[p], P.proj2.assign[q]
            )
            assert P.space.leq(p, q) == want


def test_quotient_collapses_classes():
    # [DERIVED] identifying the two endpoints of a 3-chain gives 2 points
    X = make_space(["a", "b", "c"], [("a", "b"), ("b", "c")])
    Q, proj = quotient(X, [("a", "c")])
    assert len(Q) == 2
    assert proj.assign["a"] == proj.assign["c"]


# --- pushouts and pullbacks ---------------------------------------------------


@settings(max_examples=20, deadline=None)
@given(span_strategy(closed=False))
def test_pushout_of_embeddings(span):
    # [PAPER] pushouts of embedding spans exist with embedding legs, and the
    # square is simultaneously a pullback
    f, g = span
    legs = chosen_pushout(f, g)
    assert classify_map(legs.leg_x).embedding
    assert classify_map(legs.leg_y).embedding
    assert compose(legs.leg_x, f) == compose(legs.leg_y, g)
    assert is_pullback_square(f, g, legs.leg_x, legs.leg_y)
    assert is_pushout_square(f, g, legs.leg_x, legs.leg_y)


@settings(max_examples=20, deadline=None)
@given(span_strategy(closed=True))
def test_pushout_of_closed_embeddings(span):
    # [PAPER] closed embeddings push out to closed embeddings
    f, g = span
    legs = chosen_pushout(f, g)
    assert classify_map(legs.leg_x).closed_embedding
    assert classify_map(legs.leg_y).closed_embedding


def test_pushout_identity_is_strict():
    # [TRIVIAL] structural unitarity: pushing out along an identity returns
    # the other map's codomain identically
    A = make_space(["a", "b"], [("a", "b")])
    X = make_space(["a", "b", "c"], [("a", "b"), ("b", "c")])
    f = SpaceMap(A, X, {"a": "a", "b": "b"})
    legs = chosen_pushout(identity(A), f)
    assert legs.leg_y == identity(X)
    assert legs.leg_x == f
    legs2 = chosen_pushout(f, identity(A))
    assert legs2.leg_x == identity(X)
    assert legs2.leg_y == f


def test_pullback_is_intersection_for_inclusions():
    # [DERIVED] pullback of two subspace inclusions has the intersection's size
    Z = make_space(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("c", "d")])
    X = subspace(Z, {"a", "b", "c"})
    Y = subspace(Z, {"a", "c", "d"})
    f = SpaceMap(X, Z, {e: e for e in X.elements})
    g = SpaceMap(Y, Z, {e: e for e in Y.elements})
    P, p1, p2 = pullback(f, g)
    assert len(P) == 2  # {a, c}
    assert is_pullback_square(p1, p2, f, g)


# --- interval, cylinder, homotopy tools ---------------------------------------


def test_interval_model():
    # [PAPER] the unit-length interval model has 3 points: two closed
    # endpoints under an open middle point
    I = interval(1)
    assert len(I.space) == 3
    assert classify_subset(I.space, {I.first}).closed
    assert classify_subset(I.space, {I.last}).closed
    (mid,) = [e for e in I.space.elements if e not in (I.first, I.last)]
    assert classify_subset(I.space, {mid}).open


def test_cylinder_sections_and_projection():
    # [PAPER] the cylinder's end sections are closed embeddings split by the
    # projection, which is a homotopy equivalence
    X = make_space(["a", "b"], [("a", "b")])
    c = cylinder(X)
    assert classify_map(c.d_minus).closed_embedding
    assert classify_map(c.d_plus).closed_embedding
    assert compose(c.e, c.d_minus) == identity(X)
    assert compose(c.e, c.d_plus) == identity(X)
    assert is_homotopy_equivalence(c.e)


def test_cylinder_map_naturality():
    # [TRIVIAL] cylinders are functorial and commute with the end sections
    X = make_space(["a", "b"], [("a", "b")])
    Y = make_space(["a", "b", "c"], [("a", "b"), ("b", "c")])
    f = SpaceMap(X, Y, {"a": "a", "b": "b"})
    cf = cylinder_map(f)
    assert compose(cf, cylinder(X).d_minus) == compose(cylinder(Y).d_minus, f)
    assert compose(cf, cylinder(X).d_plus) == compose(cylinder(Y).d_plus, f)


def test_core_removes_beat_points():
    # [DERIVED] oracle: hand-computed cores.  A chain retracts to a point; the
    # 4-point non-Hausdorff circle is already minimal.
    chain = make_space(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert len(core(chain).space) == 1
    circle = make_space(
        ["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]
    )
    assert len(core(circle).space) == 4
    c = core(chain)
    assert compose(c.retr, c.incl) == identity(c.space)


@settings(max_examples=20, deadline=None)
@given(space_strategy())
def test_poset_iso_finds_relabelings(X):
    # [DERIVED] an explicitly relabeled copy must be found isomorphic, and the
    # returned dictionary must be an order isomorphism
    Y = make_space(
        tuple(f"r_{e}" for e in X.elements),
        [(f"r_{a}", f"r_{b}") for (a, b) in X.pairs()],
    )
    iso = poset_iso(X, Y)
    assert iso is not None
    for a in X.elements:
        for b in X.elements:
            assert X.leq(a, b) == Y.leq(iso[a], iso[b])


def test_poset_iso_negative():
    # [TRIVIAL]
    assert poset_iso(make_space(["a"]), make_space(["a", "b"])) is None
    chain = make_space(["a", "b"], [("a", "b")])
    anti = make_space(["a", "b"])
    assert poset_iso(chain, anti) is None
