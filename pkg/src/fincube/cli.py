"""Command-line front end.

Exit codes: 0 = success / all laws pass, 1 = validation or law failure,
2 = usage or parse error.  Inputs are the JSON documents described in
README.md; `--format dot` emits Graphviz.
"""

from __future__ import annotations

import argparse
import json
import sys

from .finspace import ValidationError, core, poset_iso
from .collars import check_collared, validate_precollared
from . import cubemodel
from . import cylindrical
from .harness import SUITES, GenConfig, run_all, run_suite
from .serialize import (
    SchemaError,
    cube_to_doc,
    cube_to_dot,
    doc_to_cube,
    doc_to_precollared,
    doc_to_space,
    doc_to_tmap,
    precollared_to_doc,
    space_to_doc,
    space_to_dot,
    tmap_to_doc,
    tmap_to_dot,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class UsageError(Exception):
    pass


def _load_doc(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}")


def _kind_of(doc: dict) -> str:
    if not isinstance(doc, dict):
        raise SchemaError("top-level document must be an object")
    if "components" in doc:
        return "map"
    if "collars" in doc:
        return "collared"
    if "n" in doc:
        return "cube"
    if "elements" in doc:
        return "space"
    raise SchemaError(
        "unrecognized document: expected a space, cube, collared cube, or map"
    )


def _load_any(path: str):
    doc = _load_doc(path)
    kind = _kind_of(doc)
    value = {
        "space": doc_to_space,
        "cube": doc_to_cube,
        "collared": doc_to_precollared,
        "map": doc_to_tmap,
    }[kind](doc)
    return kind, value


def _load_cube(path: str):
    kind, value = _load_any(path)
    if kind == "collared":
        return value.cube
    if kind != "cube":
        raise UsageError(f"{path} holds a {kind}, expected a cube")
    return value


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_doc(kind, value):
    return {
        "space": space_to_doc,
        "cube": cube_to_doc,
        "collared": precollared_to_doc,
        "map": tmap_to_doc,
    }[kind](value)


def _to_dot(kind, value):
    if kind == "space":
        return space_to_dot(value)
    if kind == "cube":
        return cube_to_dot(value)
    if kind == "collared":
        return cube_to_dot(value.cube, collars=value.collars)
    return tmap_to_dot(value)


def _output(kind, value, fmt, out):
    if fmt == "json":
        _emit(json.dumps(_to_doc(kind, value), indent=2, sort_keys=True) + "\n", out)
    elif fmt == "dot":
        _emit(_to_dot(kind, value), out)
    else:
        _emit(_describe(kind, value) + "\n", out)


def _describe(kind, value) -> str:
    if kind == "space":
        return f"space with {len(value)} points"
    if kind == "cube":
        sizes = {
            ",".join(str(c) for c in t): len(value.grid[t]) for t in sorted(value.grid)
        }
        return f"cube of degree {value.n}; points per position: {sizes}"
    if kind == "collared":
        return (
            f"collared cube of degree {value.cube.n} "
            f"with {len(value.collars)} collars"
        )
    return f"map between cubes of degree {value.src.n}"


def _sign(s: str) -> int:
    if s in ("+", "+1", "1"):
        return 1
    if s in ("-", "-1"):
        return -1
    raise UsageError(f"--sign must be + or -, got {s!r}")


def build_parser() -> _Parser:
    p = _Parser(prog="fincube", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, help_, inputs=1, dir_=False, sign=False, k=False, seed=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("inputs", nargs=inputs, metavar="FILE")
        if dir_:
            sp.add_argument("--dir", type=int, required=True, help="direction index (1-based)")
        if sign:
            sp.add_argument("--sign", required=True, help="face side, + or -")
        if k:
            sp.add_argument("--k", type=int, default=1, help="interval subdivision degree")
        if seed:
            sp.add_argument("--seed", type=int, default=0, help="generator seed")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument(
            "--format", choices=("text", "json", "dot"), default="text", dest="fmt"
        )
        return sp

    add("validate", "parse and validate a space, cube, collared cube, or map")
    add("face", "take a face of a cube", dir_=True, sign=True)
    add("degen", "ordinary degeneracy of a cube", dir_=True)
    add("transpose", "swap two adjacent directions of a cube", dir_=True)
    add("concat", "paste two cubes along a shared face", inputs=2, dir_=True)
    add(
        "cyl-concat",
        "paste two cubes with a homotopy-pushout seam",
        inputs=2,
        dir_=True,
    )
    add("collar-check", "check that a pre-collared cube is collared")
    add("core", "minimal deformation retract of a space")
    add("compare", "compare two documents of the same kind", inputs=2)
    sp = add("suite", "run a law suite ('all' runs every suite)", seed=True)
    sp.add_argument("--count", type=int, default=25, help="instances per suite")
    add("export-dot", "emit a Graphviz rendering")
    return p


def run_command(args) -> int:
    verb = args.verb
    if verb == "validate":
        kind, value = _load_any(args.inputs[0])
        # cube and map constructors validate on the way in; re-check collars
        if kind == "collared":
            problems = validate_precollared(value)
            if problems:
                raise ValidationError(problems[0])
        _output(kind, value, args.fmt, args.out)
        return 0

    if verb in ("face", "degen", "transpose"):
        u = _load_cube(args.inputs[0])
        if verb == "face":
            v = cubemodel.face(u, args.dir, _sign(args.sign))
        elif verb == "degen":
            v = cubemodel.degeneracy(u, args.dir)
        else:
            v = cubemodel.transpose(u, args.dir)
        _output("cube", v, args.fmt, args.out)
        return 0

    if verb in ("concat", "cyl-concat"):
        u = _load_cube(args.inputs[0])
        v = _load_cube(args.inputs[1])
        op = cubemodel.concat if verb == "concat" else cylindrical.cyl_concat
        w = op(u, v, args.dir)
        _output("cube", w, args.fmt, args.out)
        return 0

    if verb == "collar-check":
        kind, value = _load_any(args.inputs[0])
        if kind != "collared":
            raise UsageError(f"{args.inputs[0]} holds a {kind}, expected a collared cube")
        result = check_collared(value)
        if result.problem is not None:
            _emit(f"not collared: {result.problem}\n", args.out)
            return 1
        if args.fmt == "json":
            doc = {
                "status": "collared",
                "parts": [
                    {
                        ",".join(str(c) for c in t): [sorted(a), sorted(b)]
                        for t, (a, b) in sorted(per_dir.items())
                    }
                    for per_dir in result.witness.parts
                ],
            }
            _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
        else:
            _emit("collared\n", args.out)
        return 0

    if verb == "core":
        kind, value = _load_any(args.inputs[0])
        if kind != "space":
            raise UsageError(f"{args.inputs[0]} holds a {kind}, expected a space")
        _output("space", core(value).space, args.fmt, args.out)
        return 0

    if verb == "compare":
        kind_a, a = _load_any(args.inputs[0])
        kind_b, b = _load_any(args.inputs[1])
        if kind_a != kind_b:
            raise UsageError(f"cannot compare a {kind_a} with a {kind_b}")
        if kind_a == "space":
            iso = poset_iso(a, b)
            if iso is None:
                _emit("not isomorphic\n", args.out)
                return 1
            if args.fmt == "json":
                _emit(json.dumps({"isomorphism": iso}, indent=2, sort_keys=True) + "\n", args.out)
            else:
                _emit(
                    "isomorphic: "
                    + " ".join(f"{x}->{iso[x]}" for x in sorted(iso))
                    + "\n",
                    args.out,
                )
            return 0
        if a == b:
            _emit("equal\n", args.out)
            return 0
        _emit("not equal\n", args.out)
        return 1

    if verb == "suite":
        name = args.inputs[0]
        if name != "all" and name not in SUITES:
            raise UsageError(
                f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))} or 'all'"
            )
        cfg = GenConfig(seed=args.seed, instance_count=args.count)
        reports = run_all(cfg) if name == "all" else [run_suite(name, cfg)]
        if args.fmt == "json":
            _emit(
                json.dumps([r.to_doc() for r in reports], indent=2, sort_keys=True)
                + "\n",
                args.out,
            )
        else:
            _emit("".join(r.to_text() for r in reports), args.out)
        return 0 if all(r.ok for r in reports) else 1

    if verb == "export-dot":
        kind, value = _load_any(args.inputs[0])
        _emit(_to_dot(kind, value), args.out)
        return 0

    raise UsageError(f"unknown verb {verb!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code = run_command(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        code = 2
    except SchemaError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        code = 2
    except ValidationError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        code = 1
    except SystemExit as exc:  # argparse --help path
        code = int(exc.code or 0)
    if argv is None:
        sys.exit(code)
    return code
