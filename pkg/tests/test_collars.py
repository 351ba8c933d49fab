"""Collar layer: collared cospans, the embedded-pushout lemma, concatenation."""

import random

import pytest

from fincube.finspace import (
    SpaceMap,
    ValidationError,
    chosen_pushout,
    compose,
    cylinder,
    cylinder_map,
    make_space,
)
from fincube.collars import (
    CubeOfMaps,
    HypothesisError,
    check_collared,
    concat_collared,
    concat_precollared,
    cyl_collared_degeneracy,
    lemma35_check,
    precollared_degeneracy,
    precollared_transpose,
)
from fincube.harness import (
    GenConfig,
    _build_empty_interface_pair,
    _lemma35_instance,
    collared_mirror,
    gen_collared,
    gen_space,
)


def _embedding_span():
    A = make_space(["a0", "a1"], [("a0", "a1")])
    X = make_space(["a0", "a1", "nx"], [("a0", "a1"), ("a1", "nx")])
    Y = make_space(["a0", "a1", "ny"], [("a0", "a1"), ("a1", "ny")])
    f = SpaceMap(A, X, {"a0": "a0", "a1": "a1"})
    g = SpaceMap(A, Y, {"a0": "a0", "a1": "a1"})
    return f, g


def _good_cube_of_maps():
    f, g = _embedding_span()
    legs = chosen_pushout(f, g)
    A = f.src
    return CubeOfMaps(
        ax=f,
        ay=g,
        xz=legs.leg_x,
        yz=legs.leg_y,
        a2x2=cylinder_map(f),
        a2y2=cylinder_map(g),
        x2z2=cylinder_map(legs.leg_x),
        y2z2=cylinder_map(legs.leg_y),
        va=cylinder(A).d_minus,
        vx=cylinder(f.dst).d_minus,
        vy=cylinder(g.dst).d_minus,
        vz=cylinder(legs.leg_x.dst).d_minus,
    )


def test_lemma_positive():
    # [PAPER] a pushout-of-embeddings square over its own cylinder satisfies
    # the lemma: the remaining vertical face is a pullback
    assert lemma35_check(_good_cube_of_maps())


def test_lemma_positive_seeded():
    # [PAPER] the same over a seeded batch of hypothesis cubes
    rng = random.Random(17)
    for _ in range(20):
        assert lemma35_check(_lemma35_instance(rng, 5))


def test_lemma_rejects_non_embedding():
    # [TRIVIAL] negative case hits the dedicated error class
    c = _good_cube_of_maps()
    pt = make_space(["p"])
    collapse = SpaceMap(c.ax.src, pt, {"a0": "p", "a1": "p"})
    include = SpaceMap(pt, c.va.dst, {"p": c.va.assign["a0"]})
    with pytest.raises(HypothesisError, match="embedding"):
        lemma35_check(c._replace(va=compose(include, collapse)))


def test_lemma_rejects_non_commuting_face():
    # [TRIVIAL]
    c = _good_cube_of_maps()
    with pytest.raises(HypothesisError, match="commute"):
        lemma35_check(c._replace(va=cylinder(c.ax.src).d_plus))


def test_lemma_rejects_non_pushout_top():
    # [TRIVIAL]
    from fincube.finspace import sum_

    c = _good_cube_of_maps()
    pt = make_space(["p"])
    S = sum_(c.xz.dst, pt)
    bad = c._replace(
        xz=compose(S.inl, c.xz),
        yz=compose(S.inl, c.yz),
        x2z2=cylinder_map(compose(S.inl, c.xz)),
        y2z2=cylinder_map(compose(S.inl, c.yz)),
        vz=cylinder(S.space).d_minus,
    )
    with pytest.raises(HypothesisError, match="pushout"):
        lemma35_check(bad)


def test_cylinder_degeneracy_is_collared():
    # [PAPER] the thirds-of-a-cylinder construction carries genuine collars
    X = make_space(["a", "b"], [("a", "b")])
    U = cyl_collared_degeneracy(X)
    result = check_collared(U)
    assert result.problem is None
    assert result.witness is not None


def test_collared_survives_cubical_operators():
    # [PAPER] degeneracy and transposition of collared cospans stay collared
    X = make_space(["a", "b"], [("a", "b")])
    U = cyl_collared_degeneracy(X)
    U2 = precollared_degeneracy(U, 1)
    assert check_collared(U2).problem is None
    assert check_collared(precollared_transpose(U2, 1)).problem is None


def test_collared_concatenation_seeded():
    # [PAPER] concatenating collared cospans yields collared cospans with a
    # re-derived witness, at degrees 1 and 2 in every direction
    rng = random.Random(23)
    for _ in range(10):
        n = rng.randint(1, 2)
        U = gen_collared(rng, n, 5)
        for i in range(1, n + 1):
            V = collared_mirror(U, i)
            out, witness = concat_collared(U, V, i)
            assert witness is not None
            assert check_collared(out).problem is None
            # the plain pre-collared path agrees on the underlying cube
            assert concat_precollared(U, V, i).cube == out.cube


def test_concat_over_empty_interface():
    # [PAPER] two one-sided collared cylinders over an empty shared face
    # concatenate to their disjoint pasting
    rng = random.Random(31)
    Y, Z = gen_space(rng, 4), gen_space(rng, 4)
    U, V = _build_empty_interface_pair(Y, Z)
    assert check_collared(U).problem is None
    assert check_collared(V).problem is None
    out, witness = concat_collared(U, V, 1)
    assert len(out.cube.grid[(0,)]) == 7 * (len(Y) + len(Z))
    assert check_collared(out).problem is None


def test_degenerate_cospan_is_collared():
    # [PAPER] degenerate cospans are collared (their collars are trivial and
    # every component falls in the trivially-collared part)
    from fincube.cubemodel import degree0
    from fincube.collars import PreCollaredCospan

    X = make_space(["a", "b"], [("a", "b")])
    U = precollared_degeneracy(PreCollaredCospan(degree0(X), {}, {}), 1)
    assert check_collared(U).problem is None


def test_uncollarable_cospan_is_rejected():
    # [DERIVED] a cospan that genuinely grows away from its ends cannot be
    # collared by trivial strips; the check names the offending collar
    from fincube.cubemodel import make_cube
    from fincube.collars import make_precollared, trivial_collar

    A = make_space(["a"])
    X = make_space(["a", "x"], [("a", "x")])
    inc = SpaceMap(A, X, {"a": "a"})
    u = make_cube(
        1, {(-1,): A, (0,): X, (1,): A}, {(1, (-1,)): inc, (1, (1,)): inc}
    )
    U = make_precollared(
        u,
        {(1, (-1,)): trivial_collar(inc), (1, (1,)): trivial_collar(inc)},
        {},
    )
    result = check_collared(U)
    assert result.problem is not None
    assert "collar at" in result.problem
