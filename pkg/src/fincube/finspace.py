"""Finite topological spaces as finite preorders.

A finite space is determined by its specialization preorder: a subset is
open iff it is an up-set.  Continuous maps are exactly the monotone ones,
so every point-set notion used elsewhere in the package (embedding, clopen
partition, pushout, cylinder, homotopy equivalence) becomes a decidable
check on a finite relation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional


class ValidationError(ValueError):
    """A structural precondition or axiom failed; message names the culprit."""


# ---------------------------------------------------------------------------
# spaces


class FinSpace:
    """A finite preorder.  `up[x]` is the set of all y with x <= y (incl. x).

    Elements are opaque string identifiers; iteration order is the order in
    which elements were given, and all derived constructions preserve it, so
    equal inputs yield structurally equal outputs.
    """

    __slots__ = ("elements", "up", "_pos")

    def __init__(self, elements: tuple, up: dict):
        # internal constructor: `up` must already be reflexive-transitive.
        self.elements = tuple(elements)
        self.up = up
        self._pos = {e: i for i, e in enumerate(self.elements)}

    def leq(self, x, y) -> bool:
        return y in self.up[x]

    def up_set(self, x) -> frozenset:
        return self.up[x]

    def down_set(self, x) -> frozenset:
        return frozenset(y for y in self.elements if x in self.up[y])

    def is_up_set(self, subset) -> bool:
        return all(self.up[x] <= subset for x in subset)

    def is_down_set(self, subset) -> bool:
        sub = frozenset(subset)
        return all(self.down_set(x) <= sub for x in sub)

    def position(self, x) -> int:
        return self._pos[x]

    def __contains__(self, x):
        return x in self._pos

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, FinSpace)
            and self.elements == other.elements
            and self.up == other.up
        )

    def __hash__(self):
        return hash((self.elements, frozenset(self.up.items())))

    def __repr__(self):
        return f"FinSpace({list(self.elements)!r}, {len(self.pairs())} pairs)"

    def pairs(self):
        """All (x, y) with x <= y, in deterministic order."""
        return [
            (x, y)
            for x in self.elements
            for y in self.elements
            if y in self.up[x]
        ]


def make_space(elements: Iterable, leq_pairs: Iterable = ()) -> FinSpace:
    """Build a space from generating pairs; stores the reflexive-transitive
    closure of the given relation."""
    elems = tuple(elements)
    seen = set()
    for e in elems:
        if not isinstance(e, str):
            raise ValidationError(f"element id {e!r} is not a string")
        if e in seen:
            raise ValidationError(f"duplicate element id {e!r}")
        seen.add(e)
    pos = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    rows = [1 << i for i in range(n)]
    for a, b in leq_pairs:
        if a not in pos or b not in pos:
            raise ValidationError(f"pair ({a!r}, {b!r}) references unknown ids")
        rows[pos[a]] |= 1 << pos[b]
    # transitive closure, bitset Warshall
    changed = True
    while changed:
        changed = False
        for i in range(n):
            row = rows[i]
            new = row
            m = row
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                new |= rows[j]
            if new != row:
                rows[i] = new
                changed = True
    up = {}
    for i, e in enumerate(elems):
        up[e] = frozenset(elems[j] for j in range(n) if rows[i] >> j & 1)
    return FinSpace(elems, up)


def subspace(X: FinSpace, subset) -> FinSpace:
    """The subspace on `subset` with the induced order."""
    sub = frozenset(subset)
    for e in sub:
        if e not in X:
            raise ValidationError(f"unknown element {e!r}")
    elems = tuple(e for e in X.elements if e in sub)
    up = {e: X.up[e] & sub for e in elems}
    return FinSpace(elems, up)


@dataclass(frozen=True)
class SubsetFlags:
    open: bool
    closed: bool

    @property
    def clopen(self) -> bool:
        return self.open and self.closed


def classify_subset(X: FinSpace, subset) -> SubsetFlags:
    sub = frozenset(subset)
    for e in sub:
        if e not in X:
            raise ValidationError(f"unknown element {e!r}")
    return SubsetFlags(open=X.is_up_set(sub), closed=X.is_down_set(sub))


# ---------------------------------------------------------------------------
# maps


class SpaceMap:
    """A function between spaces; continuity (= monotonicity) is a property
    checked by `classify_map`, not enforced at construction, so that the
    validators can report it."""

    __slots__ = ("src", "dst", "assign")

    def __init__(self, src: FinSpace, dst: FinSpace, assign: dict):
        if set(assign) != set(src.elements):
            missing = sorted(set(src.elements) - set(assign))
            extra = sorted(set(assign) - set(src.elements))
            raise ValidationError(
                f"assignment is not total on the source (missing {missing}, extra {extra})"
            )
        for x, y in assign.items():
            if y not in dst:
                raise ValidationError(f"assign({x!r}) = {y!r} not in the target")
        self.src = src
        self.dst = dst
        self.assign = {e: assign[e] for e in src.elements}

    def __call__(self, x):
        return self.assign[x]

    def image(self) -> frozenset:
        return frozenset(self.assign.values())

    def is_identity(self) -> bool:
        return self.src == self.dst and all(v == k for k, v in self.assign.items())

    def __eq__(self, other):
        return (
            isinstance(other, SpaceMap)
            and self.src == other.src
            and self.dst == other.dst
            and self.assign == other.assign
        )

    def __hash__(self):
        return hash((self.src, self.dst, tuple(self.assign.items())))

    def __repr__(self):
        return f"SpaceMap({len(self.src)} -> {len(self.dst)})"


def identity(X: FinSpace) -> SpaceMap:
    return SpaceMap(X, X, {e: e for e in X.elements})


def compose(g: SpaceMap, f: SpaceMap) -> SpaceMap:
    """g after f."""
    if f.dst != g.src:
        raise ValidationError("composition mismatch: dst of first != src of second")
    return SpaceMap(f.src, g.dst, {x: g.assign[f.assign[x]] for x in f.src.elements})


@dataclass(frozen=True)
class MapFlags:
    continuous: bool
    injective: bool
    embedding: bool
    closed_embedding: bool
    homeomorphism: bool


def classify_map(f: SpaceMap) -> MapFlags:
    continuous = all(
        f.dst.leq(f.assign[x], f.assign[y])
        for x in f.src.elements
        for y in f.src.up[x]
    )
    injective = len(f.image()) == len(f.src)
    # embedding: injective and order-reflecting
    embedding = (
        continuous
        and injective
        and all(
            f.src.leq(x, y)
            for x in f.src.elements
            for y in f.src.elements
            if f.dst.leq(f.assign[x], f.assign[y])
        )
    )
    closed_embedding = embedding and f.dst.is_down_set(f.image())
    homeomorphism = embedding and len(f.src) == len(f.dst)
    return MapFlags(continuous, injective, embedding, closed_embedding, homeomorphism)


# ---------------------------------------------------------------------------
# sums, products, quotients


def _tagged(tag: str, e: str) -> str:
    return f"{tag}.{e}"


class Sum(NamedTuple):
    space: FinSpace
    inl: SpaceMap
    inr: SpaceMap


def sum_(X: FinSpace, Y: FinSpace) -> Sum:
    """Disjoint union; left elements are tagged "l.", right "r."."""
    elems = tuple(_tagged("l", e) for e in X.elements) + tuple(
        _tagged("r", e) for e in Y.elements
    )
    up = {_tagged("l", e): frozenset(_tagged("l", y) for y in X.up[e]) for e in X.elements}
    up.update(
        {_tagged("r", e): frozenset(_tagged("r", y) for y in Y.up[e]) for e in Y.elements}
    )
    S = FinSpace(elems, up)
    inl = SpaceMap(X, S, {e: _tagged("l", e) for e in X.elements})
    inr = SpaceMap(Y, S, {e: _tagged("r", e) for e in Y.elements})
    return Sum(S, inl, inr)


def _pair_id(a: str, b: str) -> str:
    esc = lambda s: (
        s.replace("\\", "\\\\").replace(",", "\\,").replace("(", "\\(").replace(")", "\\)")
    )
    return f"({esc(a)},{esc(b)})"


class Product(NamedTuple):
    space: FinSpace
    proj1: SpaceMap
    proj2: SpaceMap


def product(X: FinSpace, Y: FinSpace) -> Product:
    """Categorical product: pairs with the componentwise order."""
    pairs = [(a, b) for a in X.elements for b in Y.elements]
    elems = tuple(_pair_id(a, b) for a, b in pairs)
    up = {}
    for a, b in pairs:
        up[_pair_id(a, b)] = frozenset(
            _pair_id(c, d) for c in X.up[a] for d in Y.up[b]
        )
    P = FinSpace(elems, up)
    proj1 = SpaceMap(P, X, {_pair_id(a, b): a for a, b in pairs})
    proj2 = SpaceMap(P, Y, {_pair_id(a, b): b for a, b in pairs})
    return Product(P, proj1, proj2)


def pair_into_product(P: Product, f: SpaceMap, g: SpaceMap) -> SpaceMap:
    """The map <f, g> into a product built by `product`."""
    lookup = {
        (P.proj1.assign[e], P.proj2.assign[e]): e for e in P.space.elements
    }
    return SpaceMap(
        f.src, P.space, {x: lookup[(f.assign[x], g.assign[x])] for x in f.src.elements}
    )


def quotient(X: FinSpace, pairs: Iterable) -> tuple:
    """Quotient by the equivalence generated by `pairs`.

    Returns (Q, projection).  Class identifier = the member occurring first
    in X's element order; quotient order = transitive closure of the
    projected relation (this agrees with the quotient topology).
    """
    parent = {e: e for e in X.elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        if a not in X or b not in X:
            raise ValidationError(f"pair ({a!r}, {b!r}) references unknown ids")
        ra, rb = find(a), find(b)
        if ra != rb:
            # keep the earlier element as the root
            if X.position(ra) > X.position(rb):
                ra, rb = rb, ra
            parent[rb] = ra
    cls = {e: find(e) for e in X.elements}
    reps = []
    for e in X.elements:
        if cls[e] == e:
            reps.append(e)
    gen_pairs = [(cls[x], cls[y]) for x in X.elements for y in X.up[x]]
    Q = make_space(reps, gen_pairs)
    proj = SpaceMap(X, Q, cls)
    return Q, proj


# ---------------------------------------------------------------------------
# chosen pushouts


class PushoutLegs(NamedTuple):
    leg_x: SpaceMap  # X -> P
    leg_y: SpaceMap  # Y -> P


def chosen_pushout(f: SpaceMap, g: SpaceMap) -> PushoutLegs:
    """The distinguished pushout of the span X <-f- A -g-> Y.

    Identity legs are special-cased so that squares of identities and
    (f, 1)-spans have the strictly unitary choice; otherwise the pushout is
    the quotient of sum(X, Y) by f(a) ~ g(a).
    """
    if f.src != g.src:
        raise ValidationError("span legs do not share a domain")
    if f.is_identity():
        return PushoutLegs(g, identity(g.dst))
    if g.is_identity():
        return PushoutLegs(identity(f.dst), f)
    S = sum_(f.dst, g.dst)
    glue = [(S.inl.assign[f.assign[a]], S.inr.assign[g.assign[a]]) for a in f.src.elements]
    Q, proj = quotient(S.space, glue)
    return PushoutLegs(compose(proj, S.inl), compose(proj, S.inr))


def induced_from_pushout(
    legs: PushoutLegs, cx: SpaceMap, cy: SpaceMap
) -> SpaceMap:
    """The unique map out of a pushout determined by a commuting cocone.

    The legs of every pushout produced here are jointly surjective, so the
    mediating map can be read off preimages; consistency across members of a
    class is asserted.
    """
    P = legs.leg_x.dst
    if cx.dst != cy.dst:
        raise ValidationError("cocone targets differ")
    assign = {}
    for x in legs.leg_x.src.elements:
        p = legs.leg_x.assign[x]
        v = cx.assign[x]
        if p in assign and assign[p] != v:
            raise ValidationError(f"cocone is not compatible at class {p!r}")
        assign[p] = v
    for y in legs.leg_y.src.elements:
        p = legs.leg_y.assign[y]
        v = cy.assign[y]
        if p in assign and assign[p] != v:
            raise ValidationError(f"cocone is not compatible at class {p!r}")
        assign[p] = v
    if set(assign) != set(P.elements):
        raise ValidationError("pushout legs are not jointly surjective")
    return SpaceMap(P, cx.dst, assign)


def pullback(f: SpaceMap, g: SpaceMap) -> tuple:
    """The pullback of the cospan X -f-> Z <-g- Y, with its projections."""
    if f.dst != g.dst:
        raise ValidationError("cospan legs do not share a codomain")
    pairs = [
        (a, b)
        for a in f.src.elements
        for b in g.src.elements
        if f.assign[a] == g.assign[b]
    ]
    elems = tuple(_pair_id(a, b) for a, b in pairs)
    up = {}
    keys = set(elems)
    for a, b in pairs:
        up[_pair_id(a, b)] = frozenset(
            _pair_id(c, d) for c in f.src.up[a] for d in g.src.up[b]
        ) & keys
    P = FinSpace(elems, up)
    p1 = SpaceMap(P, f.src, {_pair_id(a, b): a for a, b in pairs})
    p2 = SpaceMap(P, g.src, {_pair_id(a, b): b for a, b in pairs})
    return P, p1, p2


def is_pullback_square(
    top: SpaceMap, left: SpaceMap, right: SpaceMap, bottom: SpaceMap
) -> bool:
    """Whether the commuting square

        A --top--> B
        |left      |right
        v          v
        C -bottom> D

    is a pullback: the mediating map into the enumerated pullback of
    (bottom, right) must be a homeomorphism."""
    if compose(right, top) != compose(bottom, left):
        raise ValidationError("square does not commute")
    P, p1, p2 = pullback(bottom, right)
    lookup = {(p1.assign[e], p2.assign[e]): e for e in P.elements}
    med = SpaceMap(
        top.src,
        P,
        {a: lookup[(left.assign[a], top.assign[a])] for a in top.src.elements},
    )
    return classify_map(med).homeomorphism


def is_pushout_square(
    f: SpaceMap, g: SpaceMap, p: SpaceMap, q: SpaceMap
) -> bool:
    """Whether the commuting cocone (p, q) on the span (f, g) is a pushout:
    the mediating map from the chosen pushout must be a homeomorphism."""
    if compose(p, f) != compose(q, g):
        raise ValidationError("cocone does not commute")
    legs = chosen_pushout(f, g)
    med = induced_from_pushout(legs, p, q)
    return classify_map(med).homeomorphism


# ---------------------------------------------------------------------------
# interval models and cylinders


@dataclass(frozen=True)
class IntervalModel:
    """The fence with 2k+1 points p0 < p1 > p2 < ... ; a finite model of
    [0, 1] whose endpoints p0, p2k are closed points."""

    k: int
    space: FinSpace

    @property
    def first(self) -> str:
        return "p0"

    @property
    def last(self) -> str:
        return f"p{2 * self.k}"


def interval(k: int = 1) -> IntervalModel:
    if k < 1:
        raise ValidationError("interval degree k must be >= 1")
    elems = [f"p{i}" for i in range(2 * k + 1)]
    pairs = []
    for j in range(2 * k + 1):
        if j % 2 == 0:
            if j > 0:
                pairs.append((f"p{j}", f"p{j - 1}"))
            if j < 2 * k:
                pairs.append((f"p{j}", f"p{j + 1}"))
    return IntervalModel(k, make_space(elems, pairs))


class Cylinder(NamedTuple):
    space: FinSpace
    d_minus: SpaceMap  # X -> IX, bottom end
    d_plus: SpaceMap  # X -> IX, top end
    e: SpaceMap  # IX -> X, collapse


def cylinder(X: FinSpace, k: int = 1) -> Cylinder:
    """IX = X x I_k with the two end sections and the projection."""
    I = interval(k)
    P = product(X, I.space)
    d_minus = pair_into_product(P, identity(X), SpaceMap(X, I.space, {e: I.first for e in X.elements}))
    d_plus = pair_into_product(P, identity(X), SpaceMap(X, I.space, {e: I.last for e in X.elements}))
    return Cylinder(P.space, d_minus, d_plus, P.proj1)


def cylinder_map(f: SpaceMap, k: int = 1) -> SpaceMap:
    """The cylinder functor on maps: f x id on X x I_k."""
    src = product(f.src, interval(k).space)
    dst = product(f.dst, interval(k).space)
    lookup = {(dst.proj1.assign[e], dst.proj2.assign[e]): e for e in dst.space.elements}
    return SpaceMap(
        src.space,
        dst.space,
        {
            e: lookup[(f.assign[src.proj1.assign[e]], src.proj2.assign[e])]
            for e in src.space.elements
        },
    )


def cylinder_open_part(X: FinSpace, k: int = 1) -> frozenset:
    """Elements of X x I_k lying over I_k minus its final endpoint: the
    finite-space reading of X x [0, 1[."""
    I = interval(k)
    P = product(X, I.space)
    return frozenset(e for e in P.space.elements if P.proj2.assign[e] != I.last)


# ---------------------------------------------------------------------------
# clopen components, cores, isomorphism, homotopy equivalence


def clopen_components(X: FinSpace) -> list:
    """Finest clopen partition: connected components of comparability."""
    seen = set()
    comps = []
    neighbours = {
        x: X.up[x] | frozenset(y for y in X.elements if x in X.up[y])
        for x in X.elements
    }
    for e in X.elements:
        if e in seen:
            continue
        comp = set()
        stack = [e]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(neighbours[x] - comp)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def _t0_collapse(X: FinSpace) -> tuple:
    """Quotient by x ~ y whenever x <= y <= x; a deformation retract."""
    pairs = [
        (x, y) for x in X.elements for y in X.up[x] if x in X.up[y] and x != y
    ]
    if not pairs:
        return X, identity(X), identity(X)
    Q, proj = quotient(X, pairs)
    sect = SpaceMap(Q, X, {q: q for q in Q.elements})
    return Q, sect, proj


def _find_beat_point(X: FinSpace):
    for x in X.elements:
        strict_up = X.up[x] - {x}
        if strict_up:
            mins = [y for y in X.elements if y in strict_up and strict_up <= X.up[y]]
            if mins:
                return x, mins[0]
        strict_down = X.down_set(x) - {x}
        if strict_down:
            maxs = [y for y in X.elements if y in strict_down and all(y in X.up[z] for z in strict_down)]
            if maxs:
                return x, maxs[0]
    return None


class Core(NamedTuple):
    space: FinSpace
    incl: SpaceMap  # C -> X
    retr: SpaceMap  # X -> C


def core(X: FinSpace) -> Core:
    """Minimal deformation retract: collapse order-equivalent points, then
    delete beat points one at a time (first in element order)."""
    C, incl, retr = _t0_collapse(X)
    while True:
        hit = _find_beat_point(C)
        if hit is None:
            break
        x, y = hit
        C2 = subspace(C, frozenset(C.elements) - {x})
        step_retr = SpaceMap(C, C2, {e: (y if e == x else e) for e in C.elements})
        step_incl = SpaceMap(C2, C, {e: e for e in C2.elements})
        incl = compose(incl, step_incl)
        retr = compose(step_retr, retr)
        C = C2
    return Core(C, incl, retr)


def _refine_colors(X: FinSpace):
    color = {x: (len(X.up[x]), len(X.down_set(x))) for x in X.elements}
    while True:
        new = {
            x: (
                color[x],
                tuple(sorted(color[y] for y in X.up[x])),
                tuple(sorted(color[y] for y in X.down_set(x))),
            )
            for x in X.elements
        }
        if len(set(new.values())) == len(set(color.values())):
            return color
        color = new


def poset_iso(X: FinSpace, Y: FinSpace) -> Optional[dict]:
    """Search for an order isomorphism X -> Y; returns the assignment dict
    or None.  Invariant colors prune the backtracking."""
    if len(X) != len(Y):
        return None
    cx = _refine_colors(X)
    cy = _refine_colors(Y)
    if sorted(cx.values()) != sorted(cy.values()):
        return None
    by_color = {}
    for y in Y.elements:
        by_color.setdefault(cy[y], []).append(y)
    order = sorted(X.elements, key=lambda x: (len(by_color.get(cx[x], [])), X.position(x)))
    assign = {}
    used = set()

    def ok(x, y):
        for x2, y2 in assign.items():
            if X.leq(x, x2) != Y.leq(y, y2) or X.leq(x2, x) != Y.leq(y2, y):
                return False
        return True

    def rec(i):
        if i == len(order):
            return True
        x = order[i]
        for y in by_color.get(cx[x], []):
            if y in used or not ok(x, y):
                continue
            assign[x] = y
            used.add(y)
            if rec(i + 1):
                return True
            del assign[x]
            used.remove(y)
        return False

    if rec(0):
        return dict(assign)
    return None


def is_homotopy_equivalence(f: SpaceMap) -> bool:
    """f is a homotopy equivalence iff its core composite is an isomorphism
    of the (minimal) cores."""
    cx = core(f.src)
    cy = core(f.dst)
    g = compose(cy.retr, compose(f, cx.incl))
    return classify_map(g).homeomorphism
