"""Acceptance gate: the ten headline guarantees, at their stated sizes.

Each criterion either runs the corresponding law suite at the required
instance count or re-checks the property directly.  Timings are asserted
where the criterion states a budget.
"""

import random
import time

import pytest

from fincube.finspace import (
    interval,
    is_pullback_square,
    make_space,
    poset_iso,
    product,
)
from fincube.cubemodel import (
    FacedSpace,
    ValidationError,
    all_indices,
    degree0,
    degeneracy,
    from_faced_space,
)
from fincube import cylindrical as cyl
from fincube.cubemodel import is_invertible_t
from fincube.harness import GenConfig, gen_space, run_suite

SEED = 2026


def _assert_green(report, allow_expected=()):
    for r in report.results:
        if r.status == "expected-fail-confirmed":
            assert r.law in allow_expected, f"unexpected quasi-law: {r.law}"
        else:
            assert r.status == "pass", (r.law, r.witness)


@pytest.fixture(scope="module")
def cfg200():
    return GenConfig(seed=SEED, instance_count=200)


def test_criterion_1_cubical_relations(cfg200):
    # all face/degeneracy/transposition relations hold exactly on 200 seeded
    # cubes of degree <= 3 over spaces with <= 6 points, in under 10 seconds
    t0 = time.monotonic()
    report = run_suite("cubical-relations", cfg200)
    elapsed = time.monotonic() - t0
    _assert_green(report)
    assert elapsed < 10.0, f"cubical relations took {elapsed:.1f}s"


def test_criterion_2_reduced_presentation(cfg200):
    # the reduced presentation generates the same operators on the same batch
    _assert_green(run_suite("reduced-presentation", cfg200))


def test_criterion_3_pushout_facts(cfg200):
    # pushouts of (closed) embedding spans: embedding legs, pullback squares,
    # and the universal property by exhaustive cocone enumeration on small
    # instances
    _assert_green(run_suite("pushout-facts", cfg200))


def test_criterion_4_collar_lemma(cfg200):
    # the embedded-pushout cube lemma on 200 hypothesis cubes, plus hand-built
    # violations rejected with the dedicated error class
    _assert_green(run_suite("collar-lemma", cfg200))


def test_criterion_5_collared_concatenation():
    # collared concatenation stays collared on 100 seeded pairs per direction
    # at degrees <= 2, including the empty-interface configuration and an
    # independent re-check of collar-image disjointness
    report = run_suite("collar-concat", GenConfig(seed=SEED, instance_count=100))
    _assert_green(report)


def test_criterion_6_strict_unitarity():
    # pasting with a degenerate cube is the identity, strictly (structural
    # equality, not isomorphism); covered as a law over seeded cubes
    report = run_suite("concat-geometry", GenConfig(seed=SEED, instance_count=50))
    _assert_green(report)
    (unit,) = [
        r for r in report.results if r.law == "strict unitarity of degenerate cubes"
    ]
    assert unit.status == "pass"


def test_criterion_7_quasi_degeneracy():
    # the pure-degeneracy relation fails for cylinder degeneracies — confirmed
    # as an expected failure with witnesses — and the symmetry comparison
    # repairs it invertibly; spot-check the universally quantified claim on a
    # fresh sample of nonempty spaces
    report = run_suite("quasi-degeneracy", GenConfig(seed=SEED, instance_count=100))
    _assert_green(
        report, allow_expected=("pure-degeneracy relation for cylinder degeneracies",)
    )
    (neq,) = [
        r
        for r in report.results
        if r.law == "pure-degeneracy relation for cylinder degeneracies"
    ]
    assert neq.status == "expected-fail-confirmed" and neq.witness is not None
    rng = random.Random(SEED + 1)
    for _ in range(25):
        X = gen_space(rng, 6)
        u = degree0(X)
        assert cyl.E(cyl.E(u, 1), 1) != cyl.E(cyl.E(u, 1), 2)


def test_criterion_8_weak_equivalences():
    # unit comparisons and projections are weak equivalences on 100 instances;
    # the left unit comparison is not invertible even on the point; pasted
    # ordinary degeneracies realize the cylinder degeneracy up to isomorphism
    report = run_suite(
        "cylindrical-comparisons", GenConfig(seed=SEED, instance_count=500)
    )
    _assert_green(report, allow_expected=("unit comparisons are invertible",))
    u = degree0(make_space(["p"]))
    lam, _ = cyl.unit_comparisons(degeneracy(u, 1), 1)
    assert cyl.is_weak_equivalence(lam)
    assert not is_invertible_t(lam)
    X = make_space(["a", "b"], [("a", "b")])
    got = cyl.cyl_concat(degeneracy(degree0(X), 1), degeneracy(degree0(X), 1), 1)
    want = cyl.E(degree0(X), 1)
    for t in all_indices(1):
        assert poset_iso(got.grid[t], want.grid[t]) is not None


def test_criterion_9_coherence():
    # pentagon, hexagon and the unit-interchange squares hold in both the flat
    # and the cylindrical calculus on 50 instances each; the unit triangle
    # holds flat and fails cylindrically, confirmed with a serialized witness
    flat = run_suite("coherence-flat", GenConfig(seed=SEED, instance_count=250))
    _assert_green(flat)
    cylr = run_suite(
        "coherence-cylindrical", GenConfig(seed=SEED, instance_count=250)
    )
    _assert_green(cylr, allow_expected=("unit triangle (cylindrical)",))
    (tri,) = [r for r in cylr.results if r.law == "unit triangle (cylindrical)"]
    assert tri.status == "expected-fail-confirmed"
    assert tri.witness is not None
    assert "one-plus-lambda" in tri.witness
    assert "rho-plus-one-after-kappa" in tri.witness


def test_criterion_10_faced_spaces():
    # carving a 2-cube out of the product of two unit intervals by its
    # coordinate faces yields pullback corner squares; overlapping faces of a
    # single direction are rejected
    I = interval(1)
    P = product(I.space, I.space)
    faces = {}
    for i, proj in ((1, P.proj1), (2, P.proj2)):
        faces[(i, -1)] = frozenset(
            p for p in P.space.elements if proj.assign[p] == I.first
        )
        faces[(i, 1)] = frozenset(
            p for p in P.space.elements if proj.assign[p] == I.last
        )
    u = from_faced_space(FacedSpace(P.space, faces))
    assert u.n == 2
    for t in [(-1, -1), (-1, 1), (1, -1), (1, 1)]:
        assert is_pullback_square(
            u.arrows[(1, t)],
            u.arrows[(2, t)],
            u.arrows[(2, (0, t[1]))],
            u.arrows[(1, (t[0], 0))],
        )
    X = make_space(["a", "b"])
    with pytest.raises(ValidationError, match="not disjoint"):
        from_faced_space(
            FacedSpace(X, {(1, -1): frozenset({"a"}), (1, 1): frozenset({"a"})})
        )
