"""Pre-collared and collared cubical cospans.

A pre-collar extends each arrow of a cube of embeddings to its cylinder,
subject to an extension law and pullback squares across pairs of
directions.  A cube is *collared* in a direction when every clopen
component either consists of homeomorphisms with trivial collars (part 0)
or of disjoint closed-embedding collars whose sub-final-segment image is
open (part 1).  Concatenation preserves both structures; the pullback
propagation is the cube-of-maps lemma checked by `lemma35_check`.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .finspace import (
    FinSpace,
    SpaceMap,
    ValidationError,
    classify_map,
    compose,
    cylinder,
    cylinder_map,
    cylinder_open_part,
    identity,
    interval,
    is_pullback_square,
    is_pushout_square,
    product,
    subspace,
)
from .cubemodel import (
    CubicalCospan,
    all_indices,
    degree0,
    concat_with_legs,
    degeneracy,
    face,
    insert_at,
    drop_at,
    make_cube,
    set_at,
    sharp,
    swap_at,
    transpose,
)


class HypothesisError(ValidationError):
    """A lemma's hypotheses do not hold (distinct from a false conclusion)."""


# ---------------------------------------------------------------------------
# pre-collared cubes


class PreCollaredCospan:
    """cube plus collars[(i, t)]: cylinder(grid[t], ks[(i, t)]) -> grid[t^#i]."""

    __slots__ = ("cube", "collars", "ks")

    def __init__(self, cube: CubicalCospan, collars: dict, ks: dict):
        self.cube = cube
        self.collars = collars
        self.ks = ks

    def __eq__(self, other):
        # interval degrees are encoded in the collar sources (on nonempty
        # spaces), so structural equality compares cube and collar maps.
        return (
            isinstance(other, PreCollaredCospan)
            and self.cube == other.cube
            and self.collars == other.collars
        )

    def __repr__(self):
        return f"PreCollaredCospan(n={self.cube.n})"


def _cyl_space(X: FinSpace, k: int) -> FinSpace:
    return cylinder(X, k).space


def _cyl_arrow(f: SpaceMap, k_src: int, k_dst: int) -> SpaceMap:
    """f x id between cylinders; interval degrees may differ only when the
    source space is empty."""
    if len(f.src) == 0:
        return SpaceMap(_cyl_space(f.src, k_src), _cyl_space(f.dst, k_dst), {})
    if k_src != k_dst:
        raise ValidationError(
            f"interval degrees differ across a nonempty arrow ({k_src} vs {k_dst})"
        )
    return cylinder_map(f, k_src)


def make_precollared(cube: CubicalCospan, collars: dict, ks: dict) -> PreCollaredCospan:
    U = PreCollaredCospan(cube, dict(collars), dict(ks))
    problems = validate_precollared(U)
    if problems:
        raise ValidationError("; ".join(problems[:3]))
    return U


def validate_precollared(U: PreCollaredCospan) -> list:
    """All collar axioms, as a list of human-readable problems (empty = ok)."""
    problems = []
    cube = U.cube
    for i, t in cube.arrow_positions():
        f = cube.arrows[(i, t)]
        if not classify_map(f).embedding:
            problems.append(f"arrow ({i}, {t}) is not an embedding")
        if (i, t) not in U.collars:
            problems.append(f"missing collar ({i}, {t})")
            continue
        k = U.ks.get((i, t), 1)
        coll = U.collars[(i, t)]
        cyl = cylinder(cube.grid[t], k)
        if coll.src != cyl.space or coll.dst != cube.grid[sharp(t, i)]:
            problems.append(f"collar ({i}, {t}) has wrong endpoints")
            continue
        if not classify_map(coll).continuous:
            problems.append(f"collar ({i}, {t}) is not continuous")
        if compose(coll, cyl.d_minus) != f:
            problems.append(f"collar ({i}, {t}) violates the extension law")
    if problems:
        return problems
    # pullback squares across direction pairs
    for i, t in cube.arrow_positions():
        for j in range(1, cube.n + 1):
            if j == i or t[j - 1] == 0:
                continue
            kj = U.ks.get((j, t), 1)
            kj2 = U.ks.get((j, sharp(t, i)), 1)
            try:
                top = _cyl_arrow(cube.arrows[(i, t)], kj, kj2)
            except ValidationError as exc:
                problems.append(f"square ({i}, {j}) at {t}: {exc}")
                continue
            left = U.collars[(j, t)]
            right = U.collars[(j, sharp(t, i))]
            bottom = cube.arrows[(i, sharp(t, j))]
            if compose(right, top) != compose(bottom, left):
                problems.append(f"collar square ({i}, {j}) at {t} does not commute")
            elif not is_pullback_square(top, left, right, bottom):
                problems.append(f"collar square ({i}, {j}) at {t} is not a pullback")
    return problems


def trivial_collar(f: SpaceMap, k: int = 1) -> SpaceMap:
    """The collar u o e obtained by collapsing the cylinder first."""
    cyl = cylinder(f.src, k)
    return compose(f, cyl.e)


def precollared_face(U: PreCollaredCospan, j: int, alpha: int) -> PreCollaredCospan:
    cube = face(U.cube, j, alpha)
    collars, ks = {}, {}
    for i, t in cube.arrow_positions():
        old_i = i if i < j else i + 1
        old_t = insert_at(t, j, alpha)
        collars[(i, t)] = U.collars[(old_i, old_t)]
        ks[(i, t)] = U.ks.get((old_i, old_t), 1)
    return PreCollaredCospan(cube, collars, ks)


def precollared_degeneracy(U: PreCollaredCospan, j: int) -> PreCollaredCospan:
    cube = degeneracy(U.cube, j)
    collars, ks = {}, {}
    for i, t in cube.arrow_positions():
        if i == j:
            collars[(i, t)] = trivial_collar(identity(cube.grid[t]))
            ks[(i, t)] = 1
        else:
            old_i = i if i < j else i - 1
            old_t = drop_at(t, j)
            collars[(i, t)] = U.collars[(old_i, old_t)]
            ks[(i, t)] = U.ks.get((old_i, old_t), 1)
    return PreCollaredCospan(cube, collars, ks)


def precollared_transpose(U: PreCollaredCospan, j: int) -> PreCollaredCospan:
    cube = transpose(U.cube, j)
    collars, ks = {}, {}
    for i, t in cube.arrow_positions():
        old_i = j + 1 if i == j else (j if i == j + 1 else i)
        old_t = swap_at(t, j)
        collars[(i, t)] = U.collars[(old_i, old_t)]
        ks[(i, t)] = U.ks.get((old_i, old_t), 1)
    return PreCollaredCospan(cube, collars, ks)


def _pair_lookup(P) -> dict:
    return {
        (P.proj1.assign[e], P.proj2.assign[e]): e for e in P.space.elements
    }


def concat_precollared(U: PreCollaredCospan, V: PreCollaredCospan, i: int) -> PreCollaredCospan:
    """Concatenate pre-collared cubes: outer collars are pushed along the
    pushout legs; collars of other directions on the new central objects are
    induced through the cylinder of the pushout (the cylinder functor
    preserves pushouts)."""
    if precollared_face(U, i, 1) != precollared_face(V, i, -1):
        raise ValidationError(f"pre-collared faces in direction {i} differ")
    w, legs = concat_with_legs(U.cube, V.cube, i)
    collars, ks = {}, {}
    for j, t in w.arrow_positions():
        ti = t[i - 1]
        if j == i:
            src_side, leg = (U, "leg_x") if ti == -1 else (V, "leg_y")
            collars[(j, t)] = compose(
                getattr(legs[sharp(t, i)], leg), src_side.collars[(i, t)]
            )
            ks[(j, t)] = src_side.ks.get((i, t), 1)
        elif ti == -1:
            collars[(j, t)] = U.collars[(j, t)]
            ks[(j, t)] = U.ks.get((j, t), 1)
        elif ti == 1:
            collars[(j, t)] = V.collars[(j, t)]
            ks[(j, t)] = V.ks.get((j, t), 1)
        else:
            k = U.ks.get((j, t), 1)
            P = w.grid[t]
            t0 = sharp(t, j)
            IP = product(P, interval(k).space)
            IX = product(U.cube.grid[t], interval(k).space)
            IY = product(V.cube.grid[t], interval(k).space)
            x_pre = {}
            for x in U.cube.grid[t].elements:
                x_pre.setdefault(legs[t].leg_x.assign[x], x)
            y_pre = {}
            for y in V.cube.grid[t].elements:
                y_pre.setdefault(legs[t].leg_y.assign[y], y)
            ix_lookup = _pair_lookup(IX)
            iy_lookup = _pair_lookup(IY)
            cu = compose(legs[t0].leg_x, U.collars[(j, t)])
            cv = compose(legs[t0].leg_y, V.collars[(j, t)])
            assign = {}
            for e in IP.space.elements:
                p = IP.proj1.assign[e]
                s = IP.proj2.assign[e]
                if p in x_pre:
                    assign[e] = cu.assign[ix_lookup[(x_pre[p], s)]]
                elif p in y_pre:
                    assign[e] = cv.assign[iy_lookup[(y_pre[p], s)]]
                else:
                    raise ValidationError("pushout legs not jointly surjective")
            collars[(j, t)] = SpaceMap(IP.space, w.grid[t0], assign)
            ks[(j, t)] = k
    out = PreCollaredCospan(w, collars, ks)
    problems = validate_precollared(out)
    if problems:
        raise ValidationError(
            "concatenation result failed revalidation (implementation bug): "
            + problems[0]
        )
    return out


# ---------------------------------------------------------------------------
# cube-of-maps lemma


class CubeOfMaps(NamedTuple):
    """A commutative cube.  Top face A -> X, A -> Y, X -> Z, Y -> Z; bottom
    face the primed copy; verticals v*."""

    ax: SpaceMap
    ay: SpaceMap
    xz: SpaceMap
    yz: SpaceMap
    a2x2: SpaceMap
    a2y2: SpaceMap
    x2z2: SpaceMap
    y2z2: SpaceMap
    va: SpaceMap
    vx: SpaceMap
    vy: SpaceMap
    vz: SpaceMap


def lemma35_check(c: CubeOfMaps) -> bool:
    """Hypotheses: all maps embeddings, all faces commute, the face over the
    (ax, vx) edge and the bottom face are pullbacks, the top face is a
    pushout.  Returns whether the remaining vertical face (over yz) is a
    pullback; hypothesis failures raise HypothesisError."""
    for name, f in c._asdict().items():
        if not classify_map(f).embedding:
            raise HypothesisError(f"map {name} is not an embedding")
    squares = [
        ("top", compose(c.xz, c.ax), compose(c.yz, c.ay)),
        ("bottom", compose(c.x2z2, c.a2x2), compose(c.y2z2, c.a2y2)),
        ("front", compose(c.vx, c.ax), compose(c.a2x2, c.va)),
        ("side", compose(c.vy, c.ay), compose(c.a2y2, c.va)),
        ("right", compose(c.vz, c.xz), compose(c.x2z2, c.vx)),
        ("back", compose(c.vz, c.yz), compose(c.y2z2, c.vy)),
    ]
    for name, lhs, rhs in squares:
        if lhs != rhs:
            raise HypothesisError(f"{name} face does not commute")
    if not is_pullback_square(c.ax, c.va, c.vx, c.a2x2):
        raise HypothesisError("front face is not a pullback")
    if not is_pullback_square(c.a2x2, c.a2y2, c.x2z2, c.y2z2):
        raise HypothesisError("bottom face is not a pullback")
    if not is_pushout_square(c.ax, c.ay, c.xz, c.yz):
        raise HypothesisError("top face is not a pushout")
    return is_pullback_square(c.yz, c.vy, c.vz, c.y2z2)


# ---------------------------------------------------------------------------
# collared decomposition


class CollaredWitness(NamedTuple):
    # per direction i (1-based list): dict t -> (part0: frozenset, part1: frozenset)
    parts: tuple


class CollaredResult(NamedTuple):
    witness: Optional[CollaredWitness]
    problem: Optional[str]


def _components_of_cube(cube: CubicalCospan) -> list:
    """Connected components of the whole diagram: comparability inside each
    grid space plus all arrow edges.  Each component is a dict t -> set."""
    nodes = [(t, e) for t in all_indices(cube.n) for e in cube.grid[t].elements]
    adj = {v: set() for v in nodes}
    for t in all_indices(cube.n):
        X = cube.grid[t]
        for x in X.elements:
            for y in X.up[x]:
                adj[(t, x)].add((t, y))
                adj[(t, y)].add((t, x))
    for i, t in cube.arrow_positions():
        f = cube.arrows[(i, t)]
        t0 = sharp(t, i)
        for x in f.src.elements:
            adj[(t, x)].add((t0, f.assign[x]))
            adj[(t0, f.assign[x])].add((t, x))
    seen = set()
    comps = []
    for v in nodes:
        if v in seen:
            continue
        comp = set()
        stack = [v]
        while stack:
            w = stack.pop()
            if w in comp:
                continue
            comp.add(w)
            stack.extend(adj[w] - comp)
        seen |= comp
        by_t = {}
        for t, e in comp:
            by_t.setdefault(t, set()).add(e)
        comps.append(by_t)
    return comps


def _restrict_map(f: SpaceMap, src_sub, dst_sub) -> SpaceMap:
    """f restricted to subspaces (image must stay inside dst_sub)."""
    S = subspace(f.src, src_sub)
    D = subspace(f.dst, dst_sub)
    return SpaceMap(S, D, {e: f.assign[e] for e in S.elements})


def check_collared(U: PreCollaredCospan) -> CollaredResult:
    """Derive the collared decomposition, direction by direction.

    A component goes to part 0 of direction i iff every direction-i arrow
    restricts to a homeomorphism on it and every direction-i collar
    restricts to a trivial one; otherwise it goes to part 1, where the
    collars must restrict to closed embeddings with pairwise disjoint
    images and open sub-final-segment image."""
    problems = validate_precollared(U)
    if problems:
        return CollaredResult(None, problems[0])
    cube = U.cube
    comps = _components_of_cube(cube)
    parts = []
    for i in range(1, cube.n + 1):
        split = {
            t: [set(), set()] for t in all_indices(cube.n)
        }
        for comp in comps:
            part0 = True
            for j, t in cube.arrow_positions():
                if j != i:
                    continue
                src_set = comp.get(t, set())
                dst_set = comp.get(sharp(t, i), set())
                f = _restrict_map(cube.arrows[(i, t)], src_set, dst_set)
                if not classify_map(f).homeomorphism:
                    part0 = False
                    break
                coll = U.collars[(i, t)]
                cyl = cylinder(cube.grid[t], U.ks.get((i, t), 1))
                base = cyl.e
                arrow = cube.arrows[(i, t)]
                for e in coll.src.elements:
                    if base.assign[e] in src_set and coll.assign[e] != arrow.assign[base.assign[e]]:
                        part0 = False
                        break
                if not part0:
                    break
            idx = 0 if part0 else 1
            if not part0:
                # part-1 conditions on this component
                for j, t in cube.arrow_positions():
                    if j != i:
                        continue
                    t0 = sharp(t, i)
                    src_set = comp.get(t, set())
                    dst_set = comp.get(t0, set())
                    k = U.ks.get((i, t), 1)
                    cyl = cylinder(cube.grid[t], k)
                    sub_cyl = frozenset(
                        e for e in cyl.space.elements if cyl.e.assign[e] in src_set
                    )
                    coll = _restrict_map(U.collars[(i, t)], sub_cyl, dst_set)
                    if not classify_map(coll).closed_embedding:
                        return CollaredResult(
                            None,
                            f"direction {i}: collar at {t} does not restrict to a closed embedding",
                        )
                    open_part = cylinder_open_part(cube.grid[t], k) & sub_cyl
                    img = frozenset(coll.assign[e] for e in open_part)
                    if not coll.dst.is_up_set(img):
                        return CollaredResult(
                            None,
                            f"direction {i}: sub-final-segment image at {t} is not open",
                        )
                # disjointness of the two collar images over each center
                for t in all_indices(cube.n):
                    if t[i - 1] != 0:
                        continue
                    tm, tp = set_at(t, i, -1), set_at(t, i, 1)
                    ims = []
                    for side in (tm, tp):
                        coll = U.collars[(i, side)]
                        k = U.ks.get((i, side), 1)
                        cyl = cylinder(cube.grid[side], k)
                        src_set = comp.get(side, set())
                        ims.append(
                            frozenset(
                                coll.assign[e]
                                for e in coll.src.elements
                                if cyl.e.assign[e] in src_set
                            )
                        )
                    if ims[0] & ims[1]:
                        return CollaredResult(
                            None,
                            f"direction {i}: collar images overlap over center {t}",
                        )
            for t, es in comp.items():
                split[t][idx] |= es
        parts.append(
            {t: (frozenset(v[0]), frozenset(v[1])) for t, v in split.items()}
        )
    return CollaredResult(CollaredWitness(tuple(parts)), None)


def concat_collared(U: PreCollaredCospan, V: PreCollaredCospan, i: int):
    """Concatenate two collared cubes; re-derives the witness and asserts the
    disjointness of the pushed collar images over each new center."""
    for side, name in ((U, "left"), (V, "right")):
        res = check_collared(side)
        if res.witness is None:
            raise ValidationError(f"{name} input is not collared: {res.problem}")
    wU = check_collared(U).witness
    wV = check_collared(V).witness
    out = concat_precollared(U, V, i)
    w, legs = concat_with_legs(U.cube, V.cube, i)
    # (image-disjointness of the part-1 collars pushed into each new center)
    for t in all_indices(out.cube.n):
        if t[i - 1] != 0:
            continue
        tm, tp = set_at(t, i, -1), set_at(t, i, 1)
        im_u = _pushed_collar_image(U, wU, i, tm, t, legs[t].leg_x)
        im_v = _pushed_collar_image(V, wV, i, tp, t, legs[t].leg_y)
        if im_u & im_v:
            raise ValidationError(
                f"pushed collar images overlap over center {t} (implementation bug)"
            )
    res = check_collared(out)
    if res.witness is None:
        raise ValidationError(
            f"concatenation of collared cubes lost the witness: {res.problem}"
        )
    return out, res.witness


def _pushed_collar_image(U, witness, i, t_side, t_center, leg):
    coll = U.collars[(i, t_side)]
    k = U.ks.get((i, t_side), 1)
    cyl = cylinder(U.cube.grid[t_side], k)
    part1 = witness.parts[i - 1][t_side][1]
    return frozenset(
        leg.assign[coll.assign[e]]
        for e in coll.src.elements
        if cyl.e.assign[e] in part1
    )


# ---------------------------------------------------------------------------
# collared cylindrical degeneracies (thirds collars)


def _thirds_collar(X: FinSpace, reverse: bool) -> SpaceMap:
    """Embed X x I_1 onto the first (or last, reversed) third of X x I_3."""
    src = product(X, interval(1).space)
    dst = product(X, interval(3).space)
    lut = _pair_lookup(dst)
    assign = {}
    for e in src.space.elements:
        x = src.proj1.assign[e]
        j = int(src.proj2.assign[e][1:])
        assign[e] = lut[(x, f"p{6 - j}" if reverse else f"p{j}")]
    return SpaceMap(src.space, dst.space, assign)


def _thirds_end(X: FinSpace, sign: int) -> SpaceMap:
    dst = product(X, interval(3).space)
    lut = _pair_lookup(dst)
    p = "p0" if sign < 0 else "p6"
    return SpaceMap(X, dst.space, {x: lut[(x, p)] for x in X.elements})


def cyl_collared_degeneracy(arg) -> PreCollaredCospan:
    """The collared cylindrical degeneracy.

    For a space (or degree-0 cube) X: the cospan X -> X x I_3 <- X whose
    collars embed X x I_1 onto the first and last thirds.  For a degree-1
    pre-collared U: the degree-2 cube whose new direction 1 carries the
    thirds collars and whose direction 2 is U's structure, cylindered over
    I_3 on the middle row.
    """
    if isinstance(arg, FinSpace):
        arg = degree0(arg)
    if isinstance(arg, CubicalCospan) and arg.n == 0:
        X = arg.space()
        mid = product(X, interval(3).space).space
        cube = make_cube(
            1,
            {(-1,): X, (0,): mid, (1,): X},
            {(1, (-1,)): _thirds_end(X, -1), (1, (1,)): _thirds_end(X, 1)},
        )
        collars = {
            (1, (-1,)): _thirds_collar(X, reverse=False),
            (1, (1,)): _thirds_collar(X, reverse=True),
        }
        return make_precollared(cube, collars, {(1, (-1,)): 1, (1, (1,)): 1})
    if not isinstance(arg, PreCollaredCospan) or arg.cube.n != 1:
        raise ValidationError("expected a space, degree-0 cube, or degree-1 pre-collared cube")
    U = arg
    I3 = interval(3).space
    grid = {}
    for t in all_indices(2):
        a, t2 = t
        X = U.cube.grid[(t2,)]
        grid[t] = X if a != 0 else product(X, I3).space
    arrows = {}
    for t in all_indices(2):
        a, t2 = t
        X = U.cube.grid[(t2,)]
        if a != 0:
            arrows[(1, t)] = _thirds_end(X, a)
        if t2 != 0:
            f = U.cube.arrows[(1, (t2,))]
            arrows[(2, t)] = f if a != 0 else cylinder_map(f, 3)
    collars, ks = {}, {}
    for t in all_indices(2):
        a, t2 = t
        X = U.cube.grid[(t2,)]
        if a != 0:
            collars[(1, t)] = _thirds_collar(X, reverse=(a == 1))
            ks[(1, t)] = 1
        if t2 != 0:
            k = U.ks.get((1, (t2,)), 1)
            if a != 0:
                collars[(2, t)] = U.collars[(1, (t2,))]
            else:
                # the collar of the middle row: U's collar with the I_3
                # coordinate carried along
                X0 = U.cube.grid[(0,)]
                src = product(grid[t], interval(k).space)
                row = product(X, I3)
                dst = product(X0, I3)
                dlut = _pair_lookup(dst)
                ulut = _pair_lookup(product(X, interval(k).space))
                ucoll = U.collars[(1, (t2,))]
                assign = {}
                for e in src.space.elements:
                    xi = src.proj1.assign[e]
                    r = src.proj2.assign[e]
                    x = row.proj1.assign[xi]
                    s3 = row.proj2.assign[xi]
                    assign[e] = dlut[(ucoll.assign[ulut[(x, r)]], s3)]
                collars[(2, t)] = SpaceMap(src.space, dst.space, assign)
            ks[(2, t)] = k
    return make_precollared(make_cube(2, grid, arrows), collars, ks)
