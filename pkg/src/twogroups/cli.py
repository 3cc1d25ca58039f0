"""Command-line surface: validate spec files, compute fusion data, cohomology.

Two output modes share one document model: ``--format structured`` (default)
prints a versioned JSON document with deterministic byte output, and
``--format text`` prints human-readable tables.  Exit codes: 0 success,
1 domain error (validation failure, size bound, nontrivial obstruction),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import re
import sys

from . import __version__
from .cohomology import (
    Cochain,
    QZCochain,
    cohomology,
    cohomology_torus,
    differential,
    is_cocycle,
    matrix_cell_bound,
    qz_differential,
    split_symmetric_2cocycle,
)
from .errors import PentagonViolation, SpecFileError, ToolkitError, UnknownSimple
from .fusion import (
    FusionSimple,
    decompose,
    describe_block_group,
    fuse,
    pentagon_check,
    simples,
)
from .groupalgebra import fourier, inverse_fourier, unit
from .groups import (
    AbelianGroup,
    Character,
    cyclic_group,
    generating_sequence,
    group_order_bound,
    trivial_action,
)
from .specfile import parse_spec_text, parse_symmetric_cocycle
from .tworep import IMPORTED_CLASSIFICATION, descriptors
from .twogroup import build_2group

SCHEMA = "twogroups.output/1"


# ---------------------------------------------------------------------------
# document assembly


def make_document(command: str, input_bytes: bytes | None, results, metadata) -> dict:
    doc = {
        "schema": SCHEMA,
        "command": command,
        "input": None
        if input_bytes is None
        else {"digest": "sha256:" + hashlib.sha256(input_bytes).hexdigest()},
        "results": results,
        "metadata": metadata,
    }
    return doc


def load_output_document(text: str) -> dict:
    """Re-parse a structured document, checking the schema version."""
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema: {doc.get('schema')!r}")
    for key in ("command", "results", "metadata"):
        if key not in doc:
            raise ValueError(f"document is missing {key!r}")
    return doc


def _bounds_metadata(args) -> dict:
    return {
        "max_group_order": group_order_bound(args.max_size),
        "max_matrix_cells": matrix_cell_bound(None),
    }


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# rendering helpers


def _render_simple(s: FusionSimple) -> str:
    return s.render()


def _cochain_entries(c: Cochain) -> list:
    out = []
    zero = c.module.zero()
    size = c.group.size
    for pos, value in enumerate(c.values):
        if value == zero:
            continue
        args = []
        rem = pos
        for _ in range(c.degree):
            args.append(rem % size)
            rem //= size
        out.append({"args": list(reversed(args)), "value": list(value)})
    return out


def _qz_cochain_entries(c: QZCochain) -> list:
    out = []
    size = c.group.size
    for pos, value in enumerate(c.values):
        if value.is_zero:
            continue
        args = []
        rem = pos
        for _ in range(c.degree):
            args.append(rem % size)
            rem //= size
        out.append({"args": list(reversed(args)), "value": str(value)})
    return out


_SIMPLE_RE = re.compile(r"^\(\s*(\d+)\s*,\s*(?:χ|chi|x)?\[([0-9,\s]*)\]\s*\)$")


def parse_simple(text: str, tg) -> FusionSimple:
    match = _SIMPLE_RE.match(text.strip())
    if not match:
        raise UnknownSimple(text)
    g = int(match.group(1))
    comps = tuple(int(x) for x in match.group(2).split(",") if x.strip() != "")
    if g >= tg.group.size or len(comps) != tg.coeff.rank:
        raise UnknownSimple(text)
    if any(c >= d for c, d in zip(comps, tg.coeff.invariant_factors)):
        raise UnknownSimple(text)
    return FusionSimple(g, Character(tg.coeff, comps))


# ---------------------------------------------------------------------------
# commands


def _load_spec(path: str):
    with open(path, "rb") as fh:
        raw = fh.read()
    spec = parse_spec_text(raw.decode("utf-8"))
    return raw, spec


def cmd_validate(args) -> tuple[dict, int, list[str]]:
    raw, spec = _load_spec(args.file)
    metadata = _bounds_metadata(args)
    try:
        tg = spec.build()
    except PentagonViolation as exc:
        results = {
            "valid": False,
            "witness": {"quadruple": list(exc.witness)},
            "reason": "pentagon identity fails",
        }
        doc = make_document("validate", raw, results, metadata)
        return doc, 1, [f"INVALID: pentagon fails at {exc.witness}"]
    results = {
        "valid": True,
        "group_order": tg.group.size,
        "coefficients": list(tg.coeff.invariant_factors),
        "action_trivial": tg.action.is_trivial(),
        "alpha_zero": tg.alpha.is_zero(),
    }
    doc = make_document("validate", raw, results, metadata)
    lines = [
        "VALID",
        f"  base group order: {tg.group.size}",
        f"  coefficients: {list(tg.coeff.invariant_factors)}",
        f"  action: {'trivial' if tg.action.is_trivial() else 'nontrivial'}",
        f"  associator: {'zero' if tg.alpha.is_zero() else 'nonzero'}",
    ]
    return doc, 0, lines


def cmd_fusion(args) -> tuple[dict, int, list[str]]:
    raw, spec = _load_spec(args.file)
    tg = spec.build()
    metadata = _bounds_metadata(args)
    objects = simples(tg)
    if args.simple:
        left = parse_simple(args.simple[0], tg)
        right = parse_simple(args.simple[1], tg)
        product = fuse(tg, left, right)
        results = {
            "left": _render_simple(left),
            "right": _render_simple(right),
            "product": _render_simple(product) if product else "0",
        }
        doc = make_document("fusion", raw, results, metadata)
        return doc, 0, [f"{results['left']} * {results['right']} = {results['product']}"]
    table = []
    for s1 in objects:
        row = []
        for s2 in objects:
            product = fuse(tg, s1, s2)
            row.append(_render_simple(product) if product else "0")
        table.append(row)
    results = {
        "simples": [_render_simple(s) for s in objects],
        "table": table,
    }
    doc = make_document("fusion", raw, results, metadata)
    lines = ["fusion table (rows * columns):"]
    width = max(len(x) for row in table for x in row + [""]) + 1
    header = " " * 12 + "".join(f"{_render_simple(s):>{width}}" for s in objects)
    lines.append(header)
    for s1, row in zip(objects, table):
        lines.append(f"{_render_simple(s1):>12}" + "".join(f"{x:>{width}}" for x in row))
    return doc, 0, lines


def cmd_decompose(args) -> tuple[dict, int, list[str]]:
    raw, spec = _load_spec(args.file)
    tg = spec.build()
    report = decompose(tg)
    blocks = []
    for block in report.blocks:
        stab_group = block.summand.stab_group
        gens = generating_sequence(stab_group)
        blocks.append(
            {
                "label": block.label,
                "characters": [str(c) for c in block.characters],
                "representative": str(block.representative),
                "orbit_size": block.size,
                "stabilizer": list(block.stabilizer),
                "stabilizer_generators": [block.stabilizer[i] for i in gens],
                "pointed_group": describe_block_group(block),
                "matrix": [list(row) for row in block.matrix],
                "cocycle": _qz_cochain_entries(block.summand.cocycle),
                "cocycle_class_trivial": block.summand.cocycle_trivial,
            }
        )
    results = {
        "component_count": report.component_count,
        "simple_count": report.simple_count,
        "unit_summands": report.unit_count,
        "blocks": blocks,
    }
    metadata = _bounds_metadata(args)
    doc = make_document("decompose", raw, results, metadata)
    lines = [
        f"{report.component_count} component(s); {report.simple_count} simples; "
        f"{report.unit_count} unit summands"
    ]
    for i, block in enumerate(report.blocks, start=1):
        desc = describe_block_group(block)
        cls = "trivial class" if block.summand.cocycle_trivial else "nontrivial class"
        if block.label == "pointed":
            lines.append(f"component {i}: pointed({desc}, {cls})")
        elif block.label == "matrix":
            lines.append(
                f"component {i}: matrix({block.size}x{block.size}, diagonal trivial stabilizer)"
            )
        else:
            lines.append(
                f"component {i}: general({block.size}x{block.size} block, pointed({desc}, {cls}))"
            )
        lines.append(f"  characters: {', '.join(str(c) for c in block.characters)}")
    return doc, 0, lines


def cmd_cohomology(args) -> tuple[dict, int, list[str]]:
    raw, spec = _load_spec(args.file)
    metadata = _bounds_metadata(args)
    if args.coefficients == "torus":
        torus = cohomology_torus(spec.group, args.degree)
        factors = list(torus.group.invariant_factors)
        generators = [_qz_cochain_entries(rep) for rep in torus.group.representatives]
        metadata["torsion_bound"] = torus.torsion_bound
        metadata["stabilized"] = torus.stabilized
        metadata["policy"] = (
            "roots of unity modeled additively at a finite denominator bound; "
            "stability confirmed by one enlargement step"
        )
        results = {
            "degree": args.degree,
            "coefficients": "torus",
            "invariant_factors": factors,
            "order": torus.group.order,
            "generators": generators,
        }
    else:
        group_coh = cohomology(spec.action, args.degree)
        factors = list(group_coh.invariant_factors)
        generators = [_cochain_entries(rep) for rep in group_coh.representatives]
        results = {
            "degree": args.degree,
            "coefficients": "module",
            "invariant_factors": factors,
            "order": group_coh.order,
            "generators": generators,
        }
    doc = make_document("cohomology", raw, results, metadata)
    shape = " x ".join(f"Z/{d}" for d in factors) if factors else "trivial"
    lines = [f"H^{args.degree} = {shape}"]
    return doc, 0, lines


def cmd_tworep(args) -> tuple[dict, int, list[str]]:
    raw, spec = _load_spec(args.file)
    tg = spec.build()
    report = descriptors(tg, max_order=args.max_size)
    results = {
        "component_count": report.component_count,
        "simple_count": report.simple_count,
        "per_component": list(report.per_component),
        "trivial_rep_endohom": {
            "label": report.trivial_rep_endohom[0],
            "irreducibles": report.trivial_rep_endohom[1],
        },
        "regular": {
            "copies": report.regular_descriptor[0],
            "factor": report.regular_descriptor[1],
            "irreducibles_per_factor": report.regular_descriptor[2],
        },
        "regular_endohom": {
            "label": report.regular_endohom[0],
            "simples": report.regular_endohom[1],
        },
    }
    metadata = _bounds_metadata(args)
    metadata["imported_classification"] = IMPORTED_CLASSIFICATION
    doc = make_document("tworep", raw, results, metadata)
    lines = [
        f"components: {report.component_count}",
        f"simple 2-representations: {report.simple_count} "
        f"(per component: {list(report.per_component)})",
        f"trivial-object endo-hom: {report.trivial_rep_endohom[0]} with "
        f"{report.trivial_rep_endohom[1]} irreducible(s)",
        f"regular object: {report.regular_descriptor[0]} copies of "
        f"{report.regular_descriptor[1]}, {report.regular_descriptor[2]} irreducible(s) each",
    ]
    return doc, 0, lines


def cmd_split_symmetric(args) -> tuple[dict, int, list[str]]:
    with open(args.file, "rb") as fh:
        raw = fh.read()
    phi = parse_symmetric_cocycle(raw.decode("utf-8"))
    gamma = split_symmetric_2cocycle(phi)
    verified = (qz_differential(gamma) - phi).is_zero()
    assert verified
    results = {
        "gamma": _qz_cochain_entries(gamma),
        "verified": verified,
        "denominator_bound": gamma.denominator_bound,
    }
    metadata = _bounds_metadata(args)
    doc = make_document("split-symmetric", raw, results, metadata)
    lines = ["split verified: d(gamma) = phi"]
    for entry in results["gamma"]:
        lines.append(f"  gamma{tuple(entry['args'])} = {entry['value']}")
    if len(lines) == 1:
        lines.append("  gamma = 0")
    return doc, 0, lines


def cmd_selfcheck(args) -> tuple[dict, int, list[str]]:
    rng = random.Random(args.seed)
    trials = args.trials
    checks: dict[str, str] = {}

    substrates = []
    for n in (2, 3, 4):
        group = cyclic_group(n)
        for factors in ((2,), (3,), (2, 2)):
            module = AbelianGroup(factors)
            substrates.append(trivial_action(group, module))

    for _ in range(trials):
        action = rng.choice(substrates)
        degree = rng.randrange(0, 3)
        table = [
            tuple(rng.randrange(d) for d in action.module.invariant_factors)
            for _ in range(action.group.size**degree)
        ]
        c = Cochain(degree, action, tuple(table))
        if not is_cocycle(differential(c)).ok:
            checks["d_after_d_is_zero"] = "FAIL"
            break
    checks.setdefault("d_after_d_is_zero", "ok")

    for _ in range(trials):
        module = AbelianGroup(rng.choice([(2,), (3,), (4,), (2, 2), (6,)]))
        coeffs = inverse_fourier(
            module,
            [
                unit(module).coeffs[0] * rng.randrange(-3, 4)
                for _ in range(module.order)
            ],
        )
        if inverse_fourier(module, fourier(coeffs)) != coeffs:
            checks["fourier_round_trip"] = "FAIL"
            break
    checks.setdefault("fourier_round_trip", "ok")

    for _ in range(max(1, trials // 4)):
        action = rng.choice(substrates)
        beta = Cochain(
            2,
            action,
            tuple(
                tuple(rng.randrange(d) for d in action.module.invariant_factors)
                for _ in range(action.group.size**2)
            ),
        )
        tg = build_2group(action.group, action.module, action, differential(beta))
        if not pentagon_check(tg).ok:
            checks["pentagon_on_coboundaries"] = "FAIL"
            break
    checks.setdefault("pentagon_on_coboundaries", "ok")

    failed = any(v != "ok" for v in checks.values())
    results = {"seed": args.seed, "trials": trials, "checks": checks}
    doc = make_document("selfcheck", None, results, _bounds_metadata(args))
    lines = [f"{name}: {status}" for name, status in sorted(checks.items())]
    return doc, 1 if failed else 0, lines


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twogroups",
        description="Exact computations with finite 2-groups given by "
        "(group, coefficients, action, associator) data.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--format",
        choices=["structured", "text"],
        default="structured",
        help="structured JSON (deterministic; default) or plain text",
    )
    parser.add_argument(
        "--max-size",
        type=int,
        default=None,
        help="override the group-order bound for subgroup enumeration "
        "(default 24 or TWOGROUPS_MAX_SIZE)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a 2-group specification file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("fusion", help="fusion table or a single product")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--table", action="store_true", help="full table (default)")
    group.add_argument(
        "--simple",
        nargs=2,
        metavar=("S1", "S2"),
        help="two simples like '(1, χ[2])' (ASCII: '(1, x[2])')",
    )
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("decompose", help="block decomposition of the fusion category")
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("cohomology", help="group cohomology of the spec's data")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True, choices=range(0, 5))
    p.add_argument(
        "--coefficients",
        choices=["A", "module", "torus"],
        default="A",
        help="'A' (the file's module with its action) or 'torus' (roots of unity)",
    )
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("tworep", help="2-representation counts and descriptors")
    p.add_argument("file")
    p.set_defaults(func=cmd_tworep)

    p = sub.add_parser("split-symmetric", help="split a symmetric 2-cocycle over Q/Z")
    p.add_argument("file")
    p.set_defaults(func=cmd_split_symmetric)

    p = sub.add_parser("selfcheck", help="randomized property checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=25)
    p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "cohomology" and args.coefficients == "A":
        args.coefficients = "module"
    try:
        doc, code, lines = args.func(args)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ToolkitError as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
        if hasattr(exc, "witness"):
            error["witness"] = list(exc.witness)
        if hasattr(exc, "pair"):
            error["witness"] = list(exc.pair)
        doc = make_document(args.command, None, {"error": error}, {})
        if args.format == "text":
            print(f"error: {exc}")
        else:
            sys.stdout.write(_dump(doc))
        return 1
    if args.format == "text":
        for line in lines:
            print(line)
    else:
        sys.stdout.write(_dump(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
