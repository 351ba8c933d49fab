"""n-cubical cospans of finite spaces.

A degree-n cube is a 3^n grid of spaces indexed by multi-indices in
{-1, 0, +1}^n together with, for every direction i and every index whose
i-th coordinate is nonzero, an arrow toward the index with that coordinate
annihilated.  Faces, degeneracies, transpositions and pushout concatenation
give the grid its (symmetric, unitary) cubical structure; transversal maps
are the natural transformations between cubes of equal degree.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple

from .finspace import (
    FinSpace,
    SpaceMap,
    ValidationError,
    chosen_pushout,
    classify_map,
    compose,
    identity,
    induced_from_pushout,
    subspace,
)

# ---------------------------------------------------------------------------
# multi-indices (directions are 1-based, matching the written formulas)


def all_indices(n: int):
    return itertools.product((-1, 0, 1), repeat=n)


def sharp(t: tuple, i: int) -> tuple:
    """Annihilate the i-th coordinate (defined only when it is nonzero)."""
    if t[i - 1] == 0:
        raise ValidationError(f"sharp({t}, {i}): coordinate already zero")
    return t[: i - 1] + (0,) + t[i:]


def insert_at(t: tuple, i: int, val: int) -> tuple:
    return t[: i - 1] + (val,) + t[i - 1 :]


def drop_at(t: tuple, i: int) -> tuple:
    return t[: i - 1] + t[i:]


def swap_at(t: tuple, i: int) -> tuple:
    return t[: i - 1] + (t[i], t[i - 1]) + t[i + 1 :]


def set_at(t: tuple, i: int, val: int) -> tuple:
    return t[: i - 1] + (val,) + t[i:]


# ---------------------------------------------------------------------------
# cubes


class CubicalCospan:
    """grid: multi-index -> FinSpace; arrows[(i, t)]: grid[t] -> grid[t^#i]."""

    __slots__ = ("n", "grid", "arrows")

    def __init__(self, n: int, grid: dict, arrows: dict):
        self.n = n
        self.grid = grid
        self.arrows = arrows

    def space(self) -> FinSpace:
        """The underlying space of a degree-0 cube."""
        if self.n != 0:
            raise ValidationError("not a degree-0 cube")
        return self.grid[()]

    def arrow_positions(self):
        for t in all_indices(self.n):
            for i in range(1, self.n + 1):
                if t[i - 1] != 0:
                    yield i, t

    def __eq__(self, other):
        return (
            isinstance(other, CubicalCospan)
            and self.n == other.n
            and self.grid == other.grid
            and self.arrows == other.arrows
        )

    def __repr__(self):
        return f"CubicalCospan(n={self.n})"


def make_cube(n: int, grid: dict, arrows: dict) -> CubicalCospan:
    """Validate and normalize a cube: all 3^n positions present, every arrow
    continuous with the right endpoints, all mixed squares commuting."""
    norm_grid = {}
    for t in all_indices(n):
        if t not in grid:
            raise ValidationError(f"missing grid position {t}")
        norm_grid[t] = grid[t]
    norm_arrows = {}
    for t in all_indices(n):
        for i in range(1, n + 1):
            if t[i - 1] == 0:
                continue
            if (i, t) not in arrows:
                raise ValidationError(f"missing arrow ({i}, {t})")
            f = arrows[(i, t)]
            if f.src != norm_grid[t] or f.dst != norm_grid[sharp(t, i)]:
                raise ValidationError(f"arrow ({i}, {t}) has wrong endpoints")
            if not classify_map(f).continuous:
                raise ValidationError(f"arrow ({i}, {t}) is not continuous")
            norm_arrows[(i, t)] = f
    for t in all_indices(n):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if t[i - 1] == 0 or t[j - 1] == 0:
                    continue
                via_i = compose(norm_arrows[(j, sharp(t, i))], norm_arrows[(i, t)])
                via_j = compose(norm_arrows[(i, sharp(t, j))], norm_arrows[(j, t)])
                if via_i != via_j:
                    raise ValidationError(
                        f"square at t={t} in directions ({i}, {j}) does not commute"
                    )
    return CubicalCospan(n, norm_grid, norm_arrows)


def degree0(X: FinSpace) -> CubicalCospan:
    return CubicalCospan(0, {(): X}, {})


def cospan(u_minus: SpaceMap, u_plus: SpaceMap) -> CubicalCospan:
    """The degree-1 cube X- -> X0 <- X+."""
    if u_minus.dst != u_plus.dst:
        raise ValidationError("cospan legs do not share a codomain")
    return make_cube(
        1,
        {(-1,): u_minus.src, (0,): u_minus.dst, (1,): u_plus.src},
        {(1, (-1,)): u_minus, (1, (1,)): u_plus},
    )


def face(u: CubicalCospan, i: int, alpha: int) -> CubicalCospan:
    """The face operator: fix coordinate i at alpha."""
    if not (1 <= i <= u.n):
        raise ValidationError(f"face index {i} out of range for degree {u.n}")
    if alpha not in (-1, 1):
        raise ValidationError("face sign must be -1 or +1")
    n = u.n - 1
    grid = {t: u.grid[insert_at(t, i, alpha)] for t in all_indices(n)}
    arrows = {}
    for t in all_indices(n):
        for j in range(1, n + 1):
            if t[j - 1] == 0:
                continue
            old_j = j if j < i else j + 1
            arrows[(j, t)] = u.arrows[(old_j, insert_at(t, i, alpha))]
    return CubicalCospan(n, grid, arrows)


def degeneracy(u: CubicalCospan, i: int) -> CubicalCospan:
    """The ordinary degeneracy: insert a transversally constant direction i
    with identity arrows."""
    if not (1 <= i <= u.n + 1):
        raise ValidationError(f"degeneracy index {i} out of range for degree {u.n}")
    n = u.n + 1
    grid = {t: u.grid[drop_at(t, i)] for t in all_indices(n)}
    arrows = {}
    for t in all_indices(n):
        for j in range(1, n + 1):
            if t[j - 1] == 0:
                continue
            if j == i:
                arrows[(j, t)] = identity(grid[t])
            else:
                old_j = j if j < i else j - 1
                arrows[(j, t)] = u.arrows[(old_j, drop_at(t, i))]
    return CubicalCospan(n, grid, arrows)


def transpose(u: CubicalCospan, i: int) -> CubicalCospan:
    """Swap directions i and i+1 (defined for 1 <= i <= n-1)."""
    if not (1 <= i <= u.n - 1):
        raise ValidationError(f"transpose index {i} out of range for degree {u.n}")
    grid = {t: u.grid[swap_at(t, i)] for t in all_indices(u.n)}
    arrows = {}
    for t in all_indices(u.n):
        for j in range(1, u.n + 1):
            if t[j - 1] == 0:
                continue
            old_j = i + 1 if j == i else (i if j == i + 1 else j)
            arrows[(j, t)] = u.arrows[(old_j, swap_at(t, i))]
    return CubicalCospan(u.n, grid, arrows)


# ---------------------------------------------------------------------------
# concatenation


class ConcatResult(NamedTuple):
    cube: CubicalCospan
    legs: dict  # center index t (t_i = 0) -> PushoutLegs (u-side, v-side)


def _check_consecutive(u: CubicalCospan, v: CubicalCospan, i: int):
    if u.n != v.n:
        raise ValidationError("degrees differ")
    if not (1 <= i <= u.n):
        raise ValidationError(f"direction {i} out of range for degree {u.n}")
    fu, fv = face(u, i, 1), face(v, i, -1)
    if fu.grid != fv.grid or fu.arrows != fv.arrows:
        for t in all_indices(u.n - 1):
            if fu.grid[t] != fv.grid[t]:
                raise ValidationError(
                    f"faces differ at position {t}: shared face mismatch"
                )
        raise ValidationError("shared face arrows differ")


def concat_with_legs(u: CubicalCospan, v: CubicalCospan, i: int) -> ConcatResult:
    _check_consecutive(u, v, i)
    n = u.n
    grid = {}
    legs = {}
    for t in all_indices(n):
        ti = t[i - 1]
        if ti == -1:
            grid[t] = u.grid[t]
        elif ti == 1:
            grid[t] = v.grid[t]
        else:
            f = u.arrows[(i, set_at(t, i, 1))]
            g = v.arrows[(i, set_at(t, i, -1))]
            legs[t] = chosen_pushout(f, g)
            grid[t] = legs[t].leg_x.dst
    arrows = {}
    for t in all_indices(n):
        for j in range(1, n + 1):
            if t[j - 1] == 0:
                continue
            ti = t[i - 1]
            if j == i:
                if ti == -1:
                    arrows[(j, t)] = compose(legs[sharp(t, i)].leg_x, u.arrows[(i, t)])
                else:
                    arrows[(j, t)] = compose(legs[sharp(t, i)].leg_y, v.arrows[(i, t)])
            elif ti == -1:
                arrows[(j, t)] = u.arrows[(j, t)]
            elif ti == 1:
                arrows[(j, t)] = v.arrows[(j, t)]
            else:
                tj = sharp(t, j)
                arrows[(j, t)] = induced_from_pushout(
                    legs[t],
                    compose(legs[tj].leg_x, u.arrows[(j, t)]),
                    compose(legs[tj].leg_y, v.arrows[(j, t)]),
                )
    return ConcatResult(make_cube(n, grid, arrows), legs)


def concat(u: CubicalCospan, v: CubicalCospan, i: int) -> CubicalCospan:
    """Pushout concatenation u +_i v along the shared face."""
    return concat_with_legs(u, v, i).cube


# ---------------------------------------------------------------------------
# transversal maps


class TransversalMap:
    __slots__ = ("src", "dst", "components")

    def __init__(self, src: CubicalCospan, dst: CubicalCospan, components: dict):
        self.src = src
        self.dst = dst
        self.components = components

    def __eq__(self, other):
        return (
            isinstance(other, TransversalMap)
            and self.src == other.src
            and self.dst == other.dst
            and self.components == other.components
        )

    def __repr__(self):
        return f"TransversalMap(n={self.src.n})"


def make_tmap(src: CubicalCospan, dst: CubicalCospan, components: dict) -> TransversalMap:
    """Validate naturality and endpoints of a transversal map."""
    if src.n != dst.n:
        raise ValidationError("degrees differ")
    comp = {}
    for t in all_indices(src.n):
        if t not in components:
            raise ValidationError(f"missing component at {t}")
        c = components[t]
        if c.src != src.grid[t] or c.dst != dst.grid[t]:
            raise ValidationError(f"component at {t} has wrong endpoints")
        if not classify_map(c).continuous:
            raise ValidationError(f"component at {t} is not continuous")
        comp[t] = c
    for i, t in src.arrow_positions():
        lhs = compose(comp[sharp(t, i)], src.arrows[(i, t)])
        rhs = compose(dst.arrows[(i, t)], comp[t])
        if lhs != rhs:
            raise ValidationError(f"naturality fails at arrow ({i}, {t})")
    return TransversalMap(src, dst, comp)


def identity_t(u: CubicalCospan) -> TransversalMap:
    return TransversalMap(u, u, {t: identity(u.grid[t]) for t in all_indices(u.n)})


def compose_t(f: TransversalMap, g: TransversalMap) -> TransversalMap:
    """g after f (f: u -> v, g: v -> w)."""
    if f.dst != g.src:
        raise ValidationError("tmap composition mismatch")
    return TransversalMap(
        f.src,
        g.dst,
        {t: compose(g.components[t], f.components[t]) for t in all_indices(f.src.n)},
    )


def is_special(f: TransversalMap) -> bool:
    """All 2^n vertex components (indices without zeros) are identities."""
    return all(
        f.components[t].is_identity()
        for t in itertools.product((-1, 1), repeat=f.src.n)
    )


def is_invertible_t(f: TransversalMap) -> bool:
    return all(
        classify_map(f.components[t]).homeomorphism for t in all_indices(f.src.n)
    )


def invert_t(f: TransversalMap) -> TransversalMap:
    if not is_invertible_t(f):
        raise ValidationError("transversal map is not invertible")
    comps = {}
    for t in all_indices(f.src.n):
        c = f.components[t]
        comps[t] = SpaceMap(c.dst, c.src, {v: k for k, v in c.assign.items()})
    return TransversalMap(f.dst, f.src, comps)


def face_t(f: TransversalMap, i: int, alpha: int) -> TransversalMap:
    return make_tmap(
        face(f.src, i, alpha),
        face(f.dst, i, alpha),
        {
            t: f.components[insert_at(t, i, alpha)]
            for t in all_indices(f.src.n - 1)
        },
    )


def degen_t(f: TransversalMap, i: int) -> TransversalMap:
    return make_tmap(
        degeneracy(f.src, i),
        degeneracy(f.dst, i),
        {t: f.components[drop_at(t, i)] for t in all_indices(f.src.n + 1)},
    )


def transpose_t(f: TransversalMap, i: int) -> TransversalMap:
    return make_tmap(
        transpose(f.src, i),
        transpose(f.dst, i),
        {t: f.components[swap_at(t, i)] for t in all_indices(f.src.n)},
    )


def concat_t(f: TransversalMap, g: TransversalMap, i: int) -> TransversalMap:
    """Componentwise concatenation f +_i g; center components are induced on
    the pushouts."""
    src, src_legs = concat_with_legs(f.src, g.src, i)
    dst, dst_legs = concat_with_legs(f.dst, g.dst, i)
    comps = {}
    for t in all_indices(src.n):
        ti = t[i - 1]
        if ti == -1:
            comps[t] = f.components[t]
        elif ti == 1:
            comps[t] = g.components[t]
        else:
            comps[t] = induced_from_pushout(
                src_legs[t],
                compose(dst_legs[t].leg_x, f.components[t]),
                compose(dst_legs[t].leg_y, g.components[t]),
            )
    return make_tmap(src, dst, comps)


# ---------------------------------------------------------------------------
# comparisons of the unitary pushout structure


def kappa_cosp(u: CubicalCospan, v: CubicalCospan, w: CubicalCospan, i: int) -> TransversalMap:
    """Associativity comparison u +_i (v +_i w) -> (u +_i v) +_i w: an
    invertible special transversal map, identity off the center layer."""
    vw, legs_vw = concat_with_legs(v, w, i)
    lhs, legs_l = concat_with_legs(u, vw, i)
    uv, legs_uv = concat_with_legs(u, v, i)
    rhs, legs_r = concat_with_legs(uv, w, i)
    comps = {}
    for t in all_indices(lhs.n):
        if t[i - 1] != 0:
            comps[t] = identity(lhs.grid[t])
        else:
            cu = compose(legs_r[t].leg_x, legs_uv[t].leg_x)
            cvw = induced_from_pushout(
                legs_vw[t],
                compose(legs_r[t].leg_x, legs_uv[t].leg_y),
                legs_r[t].leg_y,
            )
            comps[t] = induced_from_pushout(legs_l[t], cu, cvw)
    out = make_tmap(lhs, rhs, comps)
    if not (is_special(out) and is_invertible_t(out)):
        raise ValidationError("associativity comparison failed to be special invertible")
    return out


def chi_cosp(
    x: CubicalCospan, y: CubicalCospan, z: CubicalCospan, u: CubicalCospan
) -> TransversalMap:
    """Interchange comparison
    (x +_1 y) +_2 (z +_1 u) -> (x +_2 z) +_1 (y +_2 u)."""
    A, legs_A = concat_with_legs(x, y, 1)
    B, legs_B = concat_with_legs(z, u, 1)
    lhs, legs_l = concat_with_legs(A, B, 2)
    C, legs_C = concat_with_legs(x, z, 2)
    D, legs_D = concat_with_legs(y, u, 2)
    rhs, legs_r = concat_with_legs(C, D, 1)
    comps = {}
    for t in all_indices(lhs.n):
        t1, t2 = t[0], t[1]
        if t1 != 0 and t2 != 0:
            comps[t] = identity(lhs.grid[t])
        elif t2 != 0:  # t1 == 0: both sides are the same direction-1 pushout
            comps[t] = identity(lhs.grid[t])
        elif t1 != 0:  # t2 == 0: same direction-2 pushout on both sides
            comps[t] = identity(lhs.grid[t])
        else:
            cA = induced_from_pushout(
                legs_A[t],
                compose(legs_r[t].leg_x, legs_C[t].leg_x),
                compose(legs_r[t].leg_y, legs_D[t].leg_x),
            )
            cB = induced_from_pushout(
                legs_B[t],
                compose(legs_r[t].leg_x, legs_C[t].leg_y),
                compose(legs_r[t].leg_y, legs_D[t].leg_y),
            )
            comps[t] = induced_from_pushout(legs_l[t], cA, cB)
    out = make_tmap(lhs, rhs, comps)
    if not (is_special(out) and is_invertible_t(out)):
        raise ValidationError("interchange comparison failed to be special invertible")
    return out


# ---------------------------------------------------------------------------
# faced spaces


class FacedSpace(NamedTuple):
    total: FinSpace
    faces: dict  # (i, alpha) -> frozenset of elements


def from_faced_space(F: FacedSpace) -> CubicalCospan:
    """The cube of intersections X(t) = face(t1, 1) n ... n face(tn, n)
    (coordinate 0 contributes the whole space), with inclusion arrows."""
    dirs = sorted({i for i, _ in F.faces})
    n = len(dirs)
    if dirs != list(range(1, n + 1)):
        raise ValidationError("face directions must be 1..n")
    total_set = frozenset(F.total.elements)
    for i in dirs:
        for alpha in (-1, 1):
            if (i, alpha) not in F.faces:
                raise ValidationError(f"missing face ({i}, {alpha:+d})")
            if not F.faces[(i, alpha)] <= total_set:
                raise ValidationError(f"face ({i}, {alpha:+d}) has unknown elements")
        if F.faces[(i, -1)] & F.faces[(i, 1)]:
            raise ValidationError(
                f"faces of direction {i} are not disjoint: "
                f"{sorted(F.faces[(i, -1)] & F.faces[(i, 1)])}"
            )

    def part(t):
        s = total_set
        for i in range(1, n + 1):
            if t[i - 1] != 0:
                s = s & F.faces[(i, t[i - 1])]
        return s

    grid = {t: subspace(F.total, part(t)) for t in all_indices(n)}
    arrows = {}
    for t in all_indices(n):
        for i in range(1, n + 1):
            if t[i - 1] != 0:
                src, dst = grid[t], grid[sharp(t, i)]
                arrows[(i, t)] = SpaceMap(src, dst, {e: e for e in src.elements})
    return make_cube(n, grid, arrows)


# ---------------------------------------------------------------------------
# reduced presentation of the symmetric operators


def s_word(u: CubicalCospan, i: int) -> CubicalCospan:
    """s_{i-1} ... s_1 applied to u (s_1 first)."""
    for j in range(1, i):
        u = transpose(u, j)
    return u


def s_word_rev(u: CubicalCospan, i: int) -> CubicalCospan:
    """s_1 ... s_{i-1} applied to u (s_{i-1} first)."""
    for j in reversed(range(1, i)):
        u = transpose(u, j)
    return u


def reduced_presentation_suite(cubes) -> list:
    """Check that faces/degeneracies defined through first-index operators
    and transposition words coincide with the direct operators, and that the
    generating relations of the reduced presentation hold.

    Returns a list of {"law", "status", "witness"} entries.
    """
    entries = []

    def check(law, failures):
        entries.append(
            {
                "law": law,
                "status": "pass" if not failures else "fail",
                "witness": failures[:1],
            }
        )

    fails_face, fails_degen = [], []
    f_dd, f_de, f_sd, f_es, f_ee = [], [], [], [], []
    for idx, u in enumerate(cubes):
        n = u.n
        for i in range(1, n + 1):
            for alpha in (-1, 1):
                if face(u, i, alpha) != face(s_word_rev(u, i), 1, alpha):
                    fails_face.append({"cube": idx, "i": i, "alpha": alpha})
        for i in range(1, n + 2):
            if degeneracy(u, i) != s_word(degeneracy(u, 1), i):
                fails_degen.append({"cube": idx, "i": i})
        if n >= 2:
            for alpha in (-1, 1):
                for beta in (-1, 1):
                    lhs = face(face(u, 1, beta), 1, alpha)
                    rhs = face(face(transpose(u, 1), 1, alpha), 1, beta)
                    if lhs != rhs:
                        f_dd.append({"cube": idx, "alpha": alpha, "beta": beta})
        for alpha in (-1, 1):
            if face(degeneracy(u, 1), 1, alpha) != u:
                f_de.append({"cube": idx, "alpha": alpha})
        for i in range(1, n - 1):
            for alpha in (-1, 1):
                lhs = transpose(face(u, 1, alpha), i)
                rhs = face(transpose(u, i + 1), 1, alpha)
                if lhs != rhs:
                    f_sd.append({"cube": idx, "i": i, "alpha": alpha})
        for i in range(1, n):
            lhs = degeneracy(transpose(u, i), 1)
            rhs = transpose(degeneracy(u, 1), i + 1)
            if lhs != rhs:
                f_es.append({"cube": idx, "i": i})
        lhs = degeneracy(degeneracy(u, 1), 1)
        rhs = transpose(degeneracy(degeneracy(u, 1), 1), 1)
        if lhs != rhs:
            f_ee.append({"cube": idx})
    check("face via first-face and transposition word", fails_face)
    check("degeneracy via first-degeneracy and transposition word", fails_degen)
    check("first-face commutation", f_dd)
    check("first-face of first-degeneracy is identity", f_de)
    check("transposition versus first-face", f_sd)
    check("first-degeneracy versus transposition", f_es)
    check("second-order degeneracy symmetry", f_ee)
    return entries
