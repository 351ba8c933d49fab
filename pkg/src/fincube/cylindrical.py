"""Cylindrical degeneracies and concatenation by standard homotopy pushouts.

`E` inserts a cylinder direction; `cyl_concat` glues consecutive cubes with
a mapping cylinder between the two legs instead of a pushout.  The
resulting structure is quasi-cubical: the pure-degeneracy relation fails
(E1E1 != E2E1, repaired by the invertible `sigma1`), the units are lax
(`unit_comparisons` produces weak equivalences that are generally not
invertible), while associativity (`kappa_cyl`), interchange (`chi_cyl`) and
the nullary interchange (`iota1`) are invertible special comparisons.
"""

from __future__ import annotations

from typing import NamedTuple

from .finspace import (
    FinSpace,
    SpaceMap,
    ValidationError,
    classify_map,
    compose,
    cylinder,
    cylinder_map,
    identity,
    interval,
    is_homotopy_equivalence,
    product,
    quotient,
    sum_,
)
from .cubemodel import (
    CubicalCospan,
    TransversalMap,
    all_indices,
    drop_at,
    face,
    is_invertible_t,
    is_special,
    make_cube,
    make_tmap,
    set_at,
    sharp,
)


# ---------------------------------------------------------------------------
# standard homotopy pushouts


class HomotopyPushout(NamedTuple):
    space: FinSpace
    leg_x: SpaceMap  # X -> P
    leg_y: SpaceMap  # Y -> P
    homotopy: SpaceMap  # cylinder(A) -> P


def standard_hpo(f: SpaceMap, g: SpaceMap) -> HomotopyPushout:
    """(X + IA + Y) / ~ with [f(a)] = [a, 0] and [g(a)] = [a, 1]."""
    if f.src != g.src:
        raise ValidationError("span legs do not share a domain")
    A = f.src
    cyl = cylinder(A)
    s1 = sum_(f.dst, cyl.space)
    s2 = sum_(s1.space, g.dst)
    inj_x = compose(s2.inl, s1.inl)
    inj_c = compose(s2.inl, s1.inr)
    inj_y = s2.inr
    glue = []
    for a in A.elements:
        glue.append((inj_x.assign[f.assign[a]], inj_c.assign[cyl.d_minus.assign[a]]))
        glue.append((inj_y.assign[g.assign[a]], inj_c.assign[cyl.d_plus.assign[a]]))
    Q, proj = quotient(s2.space, glue)
    return HomotopyPushout(
        Q, compose(proj, inj_x), compose(proj, inj_y), compose(proj, inj_c)
    )


def hpo_induced(
    h: HomotopyPushout, cx: SpaceMap, cy: SpaceMap, cc: SpaceMap
) -> SpaceMap:
    """The map out of a standard homotopy pushout determined by compatible
    maps on the three pieces (legs are jointly surjective)."""
    assign = {}
    for leg, cmap in ((h.leg_x, cx), (h.leg_y, cy), (h.homotopy, cc)):
        for e in leg.src.elements:
            p = leg.assign[e]
            v = cmap.assign[e]
            if assign.setdefault(p, v) != v:
                raise ValidationError(f"cocone is not compatible at class {p!r}")
    if set(assign) != set(h.space.elements):
        raise ValidationError("homotopy pushout legs are not jointly surjective")
    return SpaceMap(h.space, cx.dst, assign)


# ---------------------------------------------------------------------------
# cylindrical degeneracy


def E(u: CubicalCospan, i: int) -> CubicalCospan:
    """Insert a cylinder direction i: ends are copies of u, the middle layer
    is its cylinder, arrows are the end sections."""
    if not (1 <= i <= u.n + 1):
        raise ValidationError(f"cylindrical degeneracy index {i} out of range")
    n = u.n + 1
    grid = {}
    cyls = {}
    for t in all_indices(n):
        base = u.grid[drop_at(t, i)]
        if t[i - 1] != 0:
            grid[t] = base
        else:
            if drop_at(t, i) not in cyls:
                cyls[drop_at(t, i)] = cylinder(base)
            grid[t] = cyls[drop_at(t, i)].space
    arrows = {}
    for t in all_indices(n):
        for j in range(1, n + 1):
            if t[j - 1] == 0:
                continue
            if j == i:
                cyl = cyls[drop_at(t, i)]
                arrows[(j, t)] = cyl.d_minus if t[i - 1] == -1 else cyl.d_plus
            else:
                old_j = j if j < i else j - 1
                f = u.arrows[(old_j, drop_at(t, i))]
                arrows[(j, t)] = f if t[i - 1] != 0 else cylinder_map(f)
    return make_cube(n, grid, arrows)


def projection_p(u: CubicalCospan, i: int) -> TransversalMap:
    """The collapse E_i(u) -> u whose non-identity components are the
    cylinder projections."""
    src = E(u, i)
    comps = {}
    for t in all_indices(src.n):
        base = u.grid[drop_at(t, i)]
        if t[i - 1] != 0:
            comps[t] = identity(base)
        else:
            comps[t] = cylinder(base).e
    dst = make_cube(
        src.n,
        {t: u.grid[drop_at(t, i)] for t in all_indices(src.n)},
        {
            (j, t): (
                identity(u.grid[drop_at(t, i)])
                if j == i
                else u.arrows[(j if j < i else j - 1, drop_at(t, i))]
            )
            for t in all_indices(src.n)
            for j in range(1, src.n + 1)
            if t[j - 1] != 0
        },
    )
    return make_tmap(src, dst, comps)


def sigma1(u: CubicalCospan) -> TransversalMap:
    """The invertible special repair E1E1(u) -> E2E1(u): swap the two
    cylinder coordinates on the doubly-degenerate layer."""
    w = E(u, 1)
    lhs = E(w, 1)
    rhs = E(w, 2)
    comps = {}
    for t in all_indices(lhs.n):
        if t[0] != 0 or t[1] != 0:
            comps[t] = identity(lhs.grid[t])
        else:
            X = u.grid[t[2:]]
            P1 = product(X, interval(1).space)
            P2 = product(P1.space, interval(1).space)
            lut1 = {
                (P1.proj1.assign[e], P1.proj2.assign[e]): e
                for e in P1.space.elements
            }
            lut2 = {
                (P2.proj1.assign[e], P2.proj2.assign[e]): e
                for e in P2.space.elements
            }
            assign = {}
            for e in P2.space.elements:
                inner = P2.proj1.assign[e]
                r = P2.proj2.assign[e]
                x = P1.proj1.assign[inner]
                s = P1.proj2.assign[inner]
                assign[e] = lut2[(lut1[(x, r)], s)]
            comps[t] = SpaceMap(P2.space, P2.space, assign)
    out = make_tmap(lhs, rhs, comps)
    if not (is_special(out) and is_invertible_t(out)):
        raise ValidationError("sigma1 failed to be special invertible")
    return out


# ---------------------------------------------------------------------------
# cylindrical concatenation


class CylConcatResult(NamedTuple):
    cube: CubicalCospan
    hpos: dict  # center index t -> HomotopyPushout


def _check_consecutive(u, v, i):
    if u.n != v.n:
        raise ValidationError("degrees differ")
    if not (1 <= i <= u.n):
        raise ValidationError(f"direction {i} out of range for degree {u.n}")
    fu, fv = face(u, i, 1), face(v, i, -1)
    if fu != fv:
        raise ValidationError(f"faces in direction {i} differ")


def cyl_concat_with_legs(u: CubicalCospan, v: CubicalCospan, i: int) -> CylConcatResult:
    _check_consecutive(u, v, i)
    n = u.n
    grid = {}
    hpos = {}
    for t in all_indices(n):
        ti = t[i - 1]
        if ti == -1:
            grid[t] = u.grid[t]
        elif ti == 1:
            grid[t] = v.grid[t]
        else:
            f = u.arrows[(i, set_at(t, i, 1))]
            g = v.arrows[(i, set_at(t, i, -1))]
            hpos[t] = standard_hpo(f, g)
            grid[t] = hpos[t].space
    arrows = {}
    for t in all_indices(n):
        for j in range(1, n + 1):
            if t[j - 1] == 0:
                continue
            ti = t[i - 1]
            if j == i:
                h = hpos[sharp(t, i)]
                if ti == -1:
                    arrows[(j, t)] = compose(h.leg_x, u.arrows[(i, t)])
                else:
                    arrows[(j, t)] = compose(h.leg_y, v.arrows[(i, t)])
            elif ti == -1:
                arrows[(j, t)] = u.arrows[(j, t)]
            elif ti == 1:
                arrows[(j, t)] = v.arrows[(j, t)]
            else:
                tj = sharp(t, j)
                shared_arrow = u.arrows[(j, set_at(t, i, 1))]
                arrows[(j, t)] = hpo_induced(
                    hpos[t],
                    compose(hpos[tj].leg_x, u.arrows[(j, t)]),
                    compose(hpos[tj].leg_y, v.arrows[(j, t)]),
                    compose(hpos[tj].homotopy, cylinder_map(shared_arrow)),
                )
    return CylConcatResult(make_cube(n, grid, arrows), hpos)


def cyl_concat(u: CubicalCospan, v: CubicalCospan, i: int) -> CubicalCospan:
    """Cylindrical concatenation: glue a mapping cylinder between the legs."""
    return cyl_concat_with_legs(u, v, i).cube


def E_t(f: TransversalMap, i: int) -> TransversalMap:
    """Apply the cylinder degeneracy to a transversal map."""
    comps = {}
    for t in all_indices(f.src.n + 1):
        base = f.components[drop_at(t, i)]
        comps[t] = base if t[i - 1] != 0 else cylinder_map(base)
    return make_tmap(E(f.src, i), E(f.dst, i), comps)


def cyl_concat_t(f: TransversalMap, g: TransversalMap, i: int) -> TransversalMap:
    """Cylindrical concatenation of i-consecutive transversal maps."""
    hs = cyl_concat_with_legs(f.src, g.src, i)
    hd = cyl_concat_with_legs(f.dst, g.dst, i)
    comps = {}
    for t in all_indices(f.src.n):
        ti = t[i - 1]
        if ti == -1:
            comps[t] = f.components[t]
        elif ti == 1:
            comps[t] = g.components[t]
        else:
            shared = f.components[set_at(t, i, 1)]
            comps[t] = hpo_induced(
                hs.hpos[t],
                compose(hd.hpos[t].leg_x, f.components[t]),
                compose(hd.hpos[t].leg_y, g.components[t]),
                compose(hd.hpos[t].homotopy, cylinder_map(shared)),
            )
    return make_tmap(hs.cube, hd.cube, comps)


# ---------------------------------------------------------------------------
# weak equivalences


def is_weak_equivalence(f: TransversalMap) -> bool:
    return is_special(f) and all(
        is_homotopy_equivalence(f.components[t]) for t in all_indices(f.src.n)
    )


def same_vertices(u: CubicalCospan, v: CubicalCospan) -> bool:
    import itertools

    return u.n == v.n and all(
        u.grid[t] == v.grid[t] for t in itertools.product((-1, 1), repeat=u.n)
    )


def weak_equivalence_chain(u: CubicalCospan, v: CubicalCospan, chain) -> bool:
    """Validate a zig-zag of weak equivalences between u and v.

    `chain` is a list of (TransversalMap, direction) with direction "fwd"
    (current -> next) or "bwd" (next -> current)."""
    if not same_vertices(u, v):
        return False
    current = u
    for tmap, direction in chain:
        if direction == "fwd":
            if tmap.src != current:
                raise ValidationError("broken chain: source mismatch")
            nxt = tmap.dst
        elif direction == "bwd":
            if tmap.dst != current:
                raise ValidationError("broken chain: target mismatch")
            nxt = tmap.src
        else:
            raise ValidationError(f"unknown direction {direction!r}")
        if not is_weak_equivalence(tmap):
            return False
        current = nxt
    return current == v


# ---------------------------------------------------------------------------
# unit comparisons (lax)


def unit_comparisons(u: CubicalCospan, i: int):
    """(lambda_i(u), rho_i(u)): collapse the degenerate cylinder and the glue
    cylinder of E_i(face) (x)_i u (resp. u (x)_i E_i(face)) onto u."""
    lam_src, lam_hpos = cyl_concat_with_legs(E(face(u, i, -1), i), u, i)
    comps = {}
    for t in all_indices(u.n):
        if t[i - 1] != 0:
            comps[t] = identity(u.grid[t])
        else:
            g = u.arrows[(i, set_at(t, i, -1))]
            A = g.src
            collapse = compose(g, cylinder(A).e)
            comps[t] = hpo_induced(lam_hpos[t], collapse, identity(u.grid[t]), collapse)
    lam = make_tmap(lam_src, u, comps)

    rho_src, rho_hpos = cyl_concat_with_legs(u, E(face(u, i, 1), i), i)
    comps = {}
    for t in all_indices(u.n):
        if t[i - 1] != 0:
            comps[t] = identity(u.grid[t])
        else:
            f = u.arrows[(i, set_at(t, i, 1))]
            collapse = compose(f, cylinder(f.src).e)
            comps[t] = hpo_induced(rho_hpos[t], identity(u.grid[t]), collapse, collapse)
    rho = make_tmap(rho_src, u, comps)
    return lam, rho


# ---------------------------------------------------------------------------
# associativity


def kappa_cyl(u, v, w, i: int) -> TransversalMap:
    """Invertible special comparison u (x)_i (v (x)_i w) -> (u (x)_i v) (x)_i w,
    the canonical relabeling through the flat five-piece pasting."""
    vw, h_vw = cyl_concat_with_legs(v, w, i)
    lhs, h_l = cyl_concat_with_legs(u, vw, i)
    uv, h_uv = cyl_concat_with_legs(u, v, i)
    rhs, h_r = cyl_concat_with_legs(uv, w, i)
    comps = {}
    for t in all_indices(lhs.n):
        if t[i - 1] != 0:
            comps[t] = identity(lhs.grid[t])
        else:
            cu = compose(h_r[t].leg_x, h_uv[t].leg_x)
            c_cylA = compose(h_r[t].leg_x, h_uv[t].homotopy)
            cvw = hpo_induced(
                h_vw[t],
                compose(h_r[t].leg_x, h_uv[t].leg_y),
                h_r[t].leg_y,
                h_r[t].homotopy,
            )
            comps[t] = hpo_induced(h_l[t], cu, cvw, c_cylA)
    out = make_tmap(lhs, rhs, comps)
    if not (is_special(out) and is_invertible_t(out)):
        raise ValidationError("cylindrical associativity comparison not invertible")
    return out


# ---------------------------------------------------------------------------
# interchange: key tracing through the quaternary pasting


def _cyl_decode(A: FinSpace):
    """Decode elements of cylinder(A) as (base, coordinate) pairs."""
    P = product(A, interval(1).space)
    return {e: (P.proj1.assign[e], P.proj2.assign[e]) for e in P.space.elements}


def _hpo_piece_elements(h: HomotopyPushout):
    """For every class of an hpo, the tagged piece elements it contains."""
    members = {p: [] for p in h.space.elements}
    for tag, leg in (("x", h.leg_x), ("y", h.leg_y), ("c", h.homotopy)):
        for e in leg.src.elements:
            members[leg.assign[e]].append((tag, e))
    return members


def chi_cyl(x, y, z, u) -> TransversalMap:
    """Interchange comparison
    (x (x)_1 y) (x)_2 (z (x)_1 u) -> (x (x)_2 z) (x)_1 (y (x)_2 u).

    Both sides flatten to the same nine-piece pasting (four cubes, four glue
    cylinders, one doubly-cylindered corner); the comparison matches classes
    by their flattened keys, transposing the two corner coordinates."""
    A, h_A = cyl_concat_with_legs(x, y, 1)
    B, h_B = cyl_concat_with_legs(z, u, 1)
    lhs, h_L = cyl_concat_with_legs(A, B, 2)
    C, h_C = cyl_concat_with_legs(x, z, 2)
    D, h_D = cyl_concat_with_legs(y, u, 2)
    rhs, h_R = cyl_concat_with_legs(C, D, 1)
    comps = {}
    for t in all_indices(lhs.n):
        if t[0] != 0 or t[1] != 0:
            comps[t] = identity(lhs.grid[t])
            continue
        rest = t[2:]
        a_grid = x.grid[(1, 0) + rest]
        b_grid = z.grid[(1, 0) + rest]
        c_grid = x.grid[(0, 1) + rest]
        d_grid = y.grid[(0, 1) + rest]
        v_grid = x.grid[(1, 1) + rest]
        dec_a = _cyl_decode(a_grid)
        dec_b = _cyl_decode(b_grid)
        dec_c = _cyl_decode(c_grid)
        dec_d = _cyl_decode(d_grid)
        dec_v = _cyl_decode(v_grid)

        def inner_dir1_keys(members, dec_shared, tag_x, tag_y, tag_shared):
            # keys of an element of a direction-1 hpo (x/y pieces + Ia):
            # shared-cylinder coordinate is the direction-1 glue coordinate
            def keys(tagged):
                out = []
                for tag, e in tagged:
                    if tag == "x":
                        out.append((tag_x, e))
                    elif tag == "y":
                        out.append((tag_y, e))
                    else:
                        base, r1 = dec_shared[e]
                        out.append((tag_shared, base, r1, None))
                return out

            return {p: keys(tagged) for p, tagged in members.items()}

        keys_A = inner_dir1_keys(_hpo_piece_elements(h_A[t]), dec_a, "x0", "y0", "a")
        keys_B = inner_dir1_keys(_hpo_piece_elements(h_B[t]), dec_b, "z0", "u0", "b")
        # middle row of the left side: the direction-1 hpo at t2 = +1
        h_mid_l = h_A[set_at(t, 2, 1)]
        keys_mid_l = inner_dir1_keys(
            _hpo_piece_elements(h_mid_l), dec_v, "c", "d", "v"
        )
        dec_mid_l = _cyl_decode(h_mid_l.space)
        lhs_keys = {}
        for p, tagged in _hpo_piece_elements(h_L[t]).items():
            ks = []
            for tag, e in tagged:
                if tag == "x":
                    ks.extend(keys_A[e])
                elif tag == "y":
                    ks.extend(keys_B[e])
                else:
                    # cylinder over the middle row: outer coordinate is the
                    # direction-2 glue coordinate
                    q, r2 = dec_mid_l[e]
                    for key in keys_mid_l[q]:
                        if key[0] == "c":
                            ks.append(("a2", key[1], r2))  # c-piece with dir-2 coord
                        elif key[0] == "d":
                            ks.append(("d2", key[1], r2))
                        else:
                            ks.append(("v", key[1], key[2], r2))
            lhs_keys[p] = ks

        def inner_dir2_keys(members, dec_shared, tag_x, tag_y, tag_shared):
            def keys(tagged):
                out = []
                for tag, e in tagged:
                    if tag == "x":
                        out.append((tag_x, e))
                    elif tag == "y":
                        out.append((tag_y, e))
                    else:
                        base, r2 = dec_shared[e]
                        out.append((tag_shared, base, r2))
                return out

            return {p: keys(tagged) for p, tagged in members.items()}

        keys_C = inner_dir2_keys(_hpo_piece_elements(h_C[t]), dec_c, "x0", "z0", "a2")
        keys_D = inner_dir2_keys(_hpo_piece_elements(h_D[t]), dec_d, "y0", "u0", "d2")
        h_mid_r = h_C[set_at(t, 1, 1)]
        keys_mid_r = inner_dir2_keys(
            _hpo_piece_elements(h_mid_r), dec_v, "a", "b", "v"
        )
        dec_mid_r = _cyl_decode(h_mid_r.space)
        rhs_by_key = {}
        for p, tagged in _hpo_piece_elements(h_R[t]).items():
            for tag, e in tagged:
                if tag == "x":
                    for key in keys_C[e]:
                        rhs_by_key[key] = p
                elif tag == "y":
                    for key in keys_D[e]:
                        rhs_by_key[key] = p
                else:
                    q, r1 = dec_mid_r[e]
                    for key in keys_mid_r[q]:
                        if key[0] == "a":
                            rhs_by_key[("a", key[1], r1, None)] = p
                        elif key[0] == "b":
                            rhs_by_key[("b", key[1], r1, None)] = p
                        else:
                            rhs_by_key[("v", key[1], r1, key[2])] = p
        assign = {}
        for p, ks in lhs_keys.items():
            targets = {rhs_by_key[key] for key in ks}
            if len(targets) != 1:
                raise ValidationError(
                    f"interchange keys are ambiguous at class {p!r}: {sorted(targets)}"
                )
            assign[p] = targets.pop()
        comps[t] = SpaceMap(lhs.grid[t], rhs.grid[t], assign)
    out = make_tmap(lhs, rhs, comps)
    if not (is_special(out) and is_invertible_t(out)):
        raise ValidationError("cylindrical interchange comparison not invertible")
    return out


def iota1(x: CubicalCospan, y: CubicalCospan) -> TransversalMap:
    """Nullary interchange E1(x) (x)_2 E1(y) -> E1(x (x)_1 y): the glue
    cylinder of the cylinders is rebracketed as the cylinder of the glue."""
    Ex, Ey = E(x, 1), E(y, 1)
    lhs, h_L = cyl_concat_with_legs(Ex, Ey, 2)
    xy, h_xy = cyl_concat_with_legs(x, y, 1)
    rhs = E(xy, 1)
    comps = {}
    for t in all_indices(lhs.n):
        if t[0] != 0:
            comps[t] = identity(lhs.grid[t])
            continue
        if t[1] != 0:
            comps[t] = identity(lhs.grid[t])
            continue
        rest = t[2:]
        x0 = x.grid[(0,) + rest]
        y0 = y.grid[(0,) + rest]
        a_grid = x.grid[(1,) + rest]
        P_inner = h_xy[(0,) + rest]
        dec_x0 = _cyl_decode(x0)
        dec_y0 = _cyl_decode(y0)
        dec_a = _cyl_decode(a_grid)
        dec_Ia = _cyl_decode(cylinder(a_grid).space)
        lhs_keys = {}
        for p, tagged in _hpo_piece_elements(h_L[t]).items():
            ks = []
            for tag, e in tagged:
                if tag == "x":
                    b, s = dec_x0[e]
                    ks.append(("x", b, s))
                elif tag == "y":
                    b, s = dec_y0[e]
                    ks.append(("y", b, s))
                else:
                    inner, g = dec_Ia[e]
                    b, s = dec_a[inner]
                    ks.append(("a", b, s, g))
            lhs_keys[p] = ks
        # right side: cylinder over the inner hpo
        rhs_by_key = {}
        P_cyl = product(P_inner.space, interval(1).space)
        inner_members = _hpo_piece_elements(P_inner)
        for e in P_cyl.space.elements:
            q = P_cyl.proj1.assign[e]
            s = P_cyl.proj2.assign[e]
            for tag, m in inner_members[q]:
                if tag == "x":
                    rhs_by_key[("x", m, s)] = e
                elif tag == "y":
                    rhs_by_key[("y", m, s)] = e
                else:
                    b, g = dec_a[m]
                    rhs_by_key[("a", b, s, g)] = e
        assign = {}
        for p, ks in lhs_keys.items():
            targets = {rhs_by_key[key] for key in ks}
            if len(targets) != 1:
                raise ValidationError(f"iota keys are ambiguous at class {p!r}")
            assign[p] = targets.pop()
        comps[t] = SpaceMap(lhs.grid[t], rhs.grid[t], assign)
    out = make_tmap(lhs, rhs, comps)
    if not (is_special(out) and is_invertible_t(out)):
        raise ValidationError("nullary interchange comparison not invertible")
    return out
