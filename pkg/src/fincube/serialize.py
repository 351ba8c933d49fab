"""JSON document formats and Graphviz export.

One document per file.  A document may carry named spaces and maps plus
cubes and collared cubes:

    {"spaces": {name: SPACE}, "maps": {name: MAP},
     "cubes": {name: CUBE}, "collared": {name: COLLARED}}

    SPACE     = {"elements": [id, ...], "leq": [[a, b], ...]}
    MAP       = {"src": space-name, "dst": space-name, "assign": {id: id}}
    CUBE      = {"n": k, "spaces": {"t1,...,tn": SPACE},
                 "maps": [{"dir": i, "at": "t1,...,tn", "assign": {...}}]}
    COLLARED  = CUBE + {"collars": [{"dir": i, "at": "...", "k": k,
                                     "assign": {...}}]}

Collar assignments are keyed on the cylinder over the source layer; its
element ids are the pair ids produced by the product construction.
Parsers reject unknown fields (SchemaError), and re-run full structural
validation on everything they load.
"""

from __future__ import annotations

from typing import NamedTuple

from .finspace import FinSpace, SpaceMap, ValidationError, cylinder, make_space
from .cubemodel import (
    CubicalCospan,
    TransversalMap,
    all_indices,
    make_cube,
    make_tmap,
    sharp,
)
from .collars import PreCollaredCospan, make_precollared


class SchemaError(ValidationError):
    """Malformed document (unknown fields, wrong shapes, bad references)."""


def _check_keys(doc, allowed, what):
    if not isinstance(doc, dict):
        raise SchemaError(f"{what} must be an object, got {type(doc).__name__}")
    extra = set(doc) - set(allowed)
    if extra:
        raise SchemaError(f"unknown fields in {what}: {sorted(extra)}")


# ---------------------------------------------------------------------------
# spaces and maps


def _covers(X: FinSpace):
    out = []
    for x in X.elements:
        for y in X.elements:
            if x == y or not X.leq(x, y):
                continue
            if not any(z != x and z != y and X.leq(x, z) and X.leq(z, y)
                       for z in X.elements):
                out.append([x, y])
    return out


def space_to_doc(X: FinSpace) -> dict:
    return {"elements": list(X.elements), "leq": _covers(X)}


def doc_to_space(doc) -> FinSpace:
    _check_keys(doc, ("elements", "leq"), "space")
    if "elements" not in doc:
        raise SchemaError("space is missing 'elements'")
    elements = doc["elements"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise SchemaError("space 'elements' must be a list of strings")
    leq = doc.get("leq", [])
    if not isinstance(leq, list) or not all(
        isinstance(p, list) and len(p) == 2 for p in leq
    ):
        raise SchemaError("space 'leq' must be a list of [a, b] pairs")
    return make_space(elements, [tuple(p) for p in leq])


def _doc_to_assign(doc, what):
    if not isinstance(doc, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in doc.items()
    ):
        raise SchemaError(f"{what} 'assign' must map element ids to element ids")
    return dict(doc)


# ---------------------------------------------------------------------------
# cubes


def index_to_str(t) -> str:
    return ",".join(str(c) for c in t)


def str_to_index(s: str, n: int):
    if n == 0:
        if s != "":
            raise SchemaError(f"degree-0 position must be '', got {s!r}")
        return ()
    parts = s.split(",")
    if len(parts) != n or not all(p in ("-1", "0", "1") for p in parts):
        raise SchemaError(f"bad multi-index {s!r} for degree {n}")
    return tuple(int(p) for p in parts)


def cube_to_doc(u: CubicalCospan) -> dict:
    return {
        "n": u.n,
        "spaces": {index_to_str(t): space_to_doc(u.grid[t]) for t in all_indices(u.n)},
        "maps": [
            {"dir": i, "at": index_to_str(t), "assign": dict(u.arrows[(i, t)].assign)}
            for i, t in u.arrow_positions()
        ],
    }


def _doc_to_grid_arrows(doc, what):
    if not isinstance(doc.get("n"), int) or doc["n"] < 0:
        raise SchemaError(f"{what} 'n' must be a non-negative integer")
    n = doc["n"]
    spaces = doc.get("spaces")
    if not isinstance(spaces, dict):
        raise SchemaError(f"{what} 'spaces' must be an object")
    grid = {}
    for key, sdoc in spaces.items():
        grid[str_to_index(key, n)] = doc_to_space(sdoc)
    arrows = {}
    maps = doc.get("maps", [])
    if not isinstance(maps, list):
        raise SchemaError(f"{what} 'maps' must be a list")
    for mdoc in maps:
        _check_keys(mdoc, ("dir", "at", "assign"), f"{what} map entry")
        i = mdoc.get("dir")
        if not isinstance(i, int) or not (1 <= i <= n):
            raise SchemaError(f"map 'dir' must be in 1..{n}, got {i!r}")
        t = str_to_index(mdoc.get("at", ""), n)
        if t[i - 1] == 0:
            raise SchemaError(f"map at {t} has zero coordinate in direction {i}")
        if t not in grid or sharp(t, i) not in grid:
            raise SchemaError(f"map at {t} references a missing grid position")
        assign = _doc_to_assign(mdoc.get("assign", {}), what)
        arrows[(i, t)] = SpaceMap(grid[t], grid[sharp(t, i)], assign)
    return n, grid, arrows


def doc_to_cube(doc) -> CubicalCospan:
    _check_keys(doc, ("n", "spaces", "maps"), "cube")
    n, grid, arrows = _doc_to_grid_arrows(doc, "cube")
    return make_cube(n, grid, arrows)


# ---------------------------------------------------------------------------
# collared cubes


def precollared_to_doc(U: PreCollaredCospan) -> dict:
    doc = cube_to_doc(U.cube)
    doc["collars"] = [
        {
            "dir": i,
            "at": index_to_str(t),
            "k": U.ks[(i, t)],
            "assign": dict(U.collars[(i, t)].assign),
        }
        for (i, t) in sorted(U.collars, key=lambda p: (p[0], p[1]))
    ]
    return doc


def doc_to_precollared(doc) -> PreCollaredCospan:
    _check_keys(doc, ("n", "spaces", "maps", "collars"), "collared cube")
    n, grid, arrows = _doc_to_grid_arrows(doc, "collared cube")
    cube = make_cube(n, grid, arrows)
    collars = {}
    ks = {}
    cdocs = doc.get("collars", [])
    if not isinstance(cdocs, list):
        raise SchemaError("'collars' must be a list")
    for cdoc in cdocs:
        _check_keys(cdoc, ("dir", "at", "k", "assign"), "collar entry")
        i = cdoc.get("dir")
        if not isinstance(i, int) or not (1 <= i <= n):
            raise SchemaError(f"collar 'dir' must be in 1..{n}, got {i!r}")
        t = str_to_index(cdoc.get("at", ""), n)
        k = cdoc.get("k")
        if not isinstance(k, int) or k < 1:
            raise SchemaError(f"collar 'k' must be a positive integer, got {k!r}")
        if t not in grid or t[i - 1] == 0:
            raise SchemaError(f"collar at {t} direction {i} is not an end position")
        src = cylinder(grid[t], k).space
        assign = _doc_to_assign(cdoc.get("assign", {}), "collar")
        collars[(i, t)] = SpaceMap(src, grid[sharp(t, i)], assign)
        ks[(i, t)] = k
    return make_precollared(cube, collars, ks)


# ---------------------------------------------------------------------------
# transversal maps


def tmap_to_doc(f: TransversalMap) -> dict:
    return {
        "src": cube_to_doc(f.src),
        "dst": cube_to_doc(f.dst),
        "components": {
            index_to_str(t): dict(f.components[t].assign)
            for t in all_indices(f.src.n)
        },
    }


def doc_to_tmap(doc) -> TransversalMap:
    _check_keys(doc, ("src", "dst", "components"), "transversal map")
    src = doc_to_cube(doc.get("src"))
    dst = doc_to_cube(doc.get("dst"))
    comps_doc = doc.get("components")
    if not isinstance(comps_doc, dict):
        raise SchemaError("'components' must be an object")
    comps = {}
    for key, adoc in comps_doc.items():
        t = str_to_index(key, src.n)
        comps[t] = SpaceMap(src.grid[t], dst.grid[t], _doc_to_assign(adoc, "component"))
    return make_tmap(src, dst, comps)


# ---------------------------------------------------------------------------
# documents


class Document(NamedTuple):
    spaces: dict
    maps: dict
    cubes: dict
    collared: dict


def doc_to_document(doc) -> Document:
    _check_keys(doc, ("spaces", "maps", "cubes", "collared"), "document")
    spaces = {}
    for name, sdoc in (doc.get("spaces") or {}).items():
        spaces[name] = doc_to_space(sdoc)
    maps = {}
    for name, mdoc in (doc.get("maps") or {}).items():
        _check_keys(mdoc, ("src", "dst", "assign"), f"map {name!r}")
        for ref in ("src", "dst"):
            if mdoc.get(ref) not in spaces:
                raise SchemaError(f"map {name!r} references unknown space {mdoc.get(ref)!r}")
        maps[name] = SpaceMap(
            spaces[mdoc["src"]],
            spaces[mdoc["dst"]],
            _doc_to_assign(mdoc.get("assign", {}), f"map {name!r}"),
        )
    cubes = {}
    for name, cdoc in (doc.get("cubes") or {}).items():
        cubes[name] = doc_to_cube(cdoc)
    collared = {}
    for name, cdoc in (doc.get("collared") or {}).items():
        collared[name] = doc_to_precollared(cdoc)
    return Document(spaces, maps, cubes, collared)


def document_to_doc(d: Document) -> dict:
    out = {}
    if d.spaces:
        out["spaces"] = {name: space_to_doc(X) for name, X in d.spaces.items()}
    if d.maps:
        out["maps"] = {
            name: {
                "src": next(n for n, X in d.spaces.items() if X == f.src),
                "dst": next(n for n, X in d.spaces.items() if X == f.dst),
                "assign": dict(f.assign),
            }
            for name, f in d.maps.items()
        }
    if d.cubes:
        out["cubes"] = {name: cube_to_doc(u) for name, u in d.cubes.items()}
    if d.collared:
        out["collared"] = {name: precollared_to_doc(U) for name, U in d.collared.items()}
    return out


# ---------------------------------------------------------------------------
# Graphviz export


def _dot_quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def space_to_dot(X: FinSpace, name: str = "space") -> str:
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=BT;"]
    for e in X.elements:
        lines.append(f"  {_dot_quote(e)};")
    for a, b in _covers(X):
        lines.append(f"  {_dot_quote(a)} -> {_dot_quote(b)} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cube_to_dot(u: CubicalCospan, collars: dict = None, name: str = "cube") -> str:
    """One cluster per multi-index; covering edges inside clusters, direction
    arrows between them, collar arrows dashed."""
    lines = [f"digraph {_dot_quote(name)} {{", "  compound=true;", "  rankdir=BT;"]
    node = lambda t, e: _dot_quote(f"{index_to_str(t)}|{e}")
    for t in all_indices(u.n):
        X = u.grid[t]
        cname = "cluster_" + index_to_str(t).replace("-", "m").replace(",", "_")
        lines.append(f"  subgraph {_dot_quote(cname)} {{")
        lines.append(f"    label={_dot_quote(index_to_str(t) or '()')};")
        for e in X.elements:
            lines.append(f"    {node(t, e)} [label={_dot_quote(e)}];")
        for a, b in _covers(X):
            lines.append(f"    {node(t, a)} -> {node(t, b)} [arrowhead=none];")
        lines.append("  }")
    for i, t in u.arrow_positions():
        f = u.arrows[(i, t)]
        for e in f.src.elements:
            lines.append(
                f"  {node(t, e)} -> {node(sharp(t, i), f.assign[e])}"
                f" [color=blue, constraint=false];"
            )
    for (i, t), coll in (collars or {}).items():
        for e in coll.src.elements:
            lines.append(
                f"  {_dot_quote(f'{index_to_str(t)}.collar{i}|{e}')}"
                f" [label={_dot_quote(e)}, shape=box, style=dotted];"
            )
            lines.append(
                f"  {_dot_quote(f'{index_to_str(t)}.collar{i}|{e}')} ->"
                f" {node(sharp(t, i), coll.assign[e])}"
                f" [color=red, style=dashed, constraint=false];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def tmap_to_dot(f: TransversalMap, name: str = "tmap") -> str:
    lines = [f"digraph {_dot_quote(name)} {{", "  compound=true;"]
    for tag, cube in (("src", f.src), ("dst", f.dst)):
        lines.append(f"  subgraph {_dot_quote('cluster_' + tag)} {{")
        lines.append(f"    label={_dot_quote(tag)};")
        node = lambda t, e: _dot_quote(f"{tag}|{index_to_str(t)}|{e}")
        for t in all_indices(cube.n):
            for e in cube.grid[t].elements:
                lines.append(f"    {node(t, e)} [label={_dot_quote(e)}];")
            for a, b in _covers(cube.grid[t]):
                lines.append(f"    {node(t, a)} -> {node(t, b)} [arrowhead=none];")
        for i, t in cube.arrow_positions():
            g = cube.arrows[(i, t)]
            for e in g.src.elements:
                lines.append(
                    f"    {node(t, e)} -> {node(sharp(t, i), g.assign[e])}"
                    f" [color=blue, constraint=false];"
                )
        lines.append("  }")
    for t in all_indices(f.src.n):
        comp = f.components[t]
        for e in comp.src.elements:
            lines.append(
                f"  {_dot_quote(f'src|{index_to_str(t)}|{e}')} ->"
                f" {_dot_quote(f'dst|{index_to_str(t)}|{comp.assign[e]}')}"
                f" [color=darkgreen, style=dashed, constraint=false];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
