"""Parsing of 2-group specification files (JSON, UTF-8).

A file describes the quadruple (G, A, action, alpha):

    {
      "group":        {"kind": "cyclic", "n": 2}
                      | {"kind": "table", "mul": [[0, 1], [1, 0]]}
                      | {"kind": "product", "factors": [<group>, ...]},
      "coefficients": {"invariant_factors": [3]},        (or a bare list)
      "action":       {"by_element": {"1": [[-1]]}}      (optional; trivial)
                      | {"by_generators": {"1": [[-1]]}},
      "alpha":        [{"g": 1, "h": 1, "k": 1, "value": [1]}, ...]
                      | dense [g][h][k] -> value nesting  (optional; zero)
    }

Sparse alpha entries not listed default to 0.  Errors carry the JSON path of
the offending field.  The same parser also reads 2-cochain files for the
symmetric splitter (see ``parse_symmetric_cocycle``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import Cochain, QZCochain, zero_cochain
from .errors import SpecFileError
from .groups import (
    AbelianGroup,
    FiniteGroup,
    GroupAction,
    build_action,
    build_group,
    cyclic_group,
    direct_product,
    subgroup_closure,
    trivial_action,
)
from .qz import QZ
from .twogroup import Skeletal2Group, build_2group


def _require(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise SpecFileError(path, "expected an object")
    if key not in obj:
        raise SpecFileError(f"{path}.{key}" if path else key, "missing required field")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SpecFileError(f"{path}.{key}" if path else key, f"expected {kind.__name__}")
    return value


def _check_keys(obj, allowed, path):
    extra = set(obj) - set(allowed)
    if extra:
        raise SpecFileError(path, f"unknown field(s): {', '.join(sorted(extra))}")


def _parse_group(node, path) -> FiniteGroup:
    kind = _require(node, "kind", path, str)
    if kind == "cyclic":
        _check_keys(node, {"kind", "n"}, path)
        n = _require(node, "n", path, int)
        if n < 1:
            raise SpecFileError(f"{path}.n", "order must be positive")
        return cyclic_group(n)
    if kind == "table":
        _check_keys(node, {"kind", "mul"}, path)
        mul = _require(node, "mul", path, list)
        try:
            return build_group(mul)
        except Exception as exc:  # noqa: BLE001 - rewrap with the field position
            raise SpecFileError(f"{path}.mul", str(exc)) from exc
    if kind == "product":
        _check_keys(node, {"kind", "factors"}, path)
        factors = _require(node, "factors", path, list)
        if not factors:
            raise SpecFileError(f"{path}.factors", "product needs at least one factor")
        group = _parse_group(factors[0], f"{path}.factors[0]")
        for i, sub in enumerate(factors[1:], start=1):
            group = direct_product(group, _parse_group(sub, f"{path}.factors[{i}]"))
        return group
    raise SpecFileError(f"{path}.kind", f"unknown group kind {kind!r}")


def _parse_coefficients(node, path) -> AbelianGroup:
    if isinstance(node, list):
        factors = node
    else:
        _check_keys(node, {"invariant_factors"}, path)
        factors = _require(node, "invariant_factors", path, list)
    if not all(isinstance(d, int) for d in factors):
        raise SpecFileError(path, "invariant factors must be integers")
    if any(d < 2 for d in factors):
        raise SpecFileError(path, "invariant factors must be >= 2")
    for a, b in zip(factors, factors[1:]):
        if b % a:
            raise SpecFileError(path, "factors must form a divisibility chain d1 | d2 | ...")
    return AbelianGroup(tuple(factors))


def _parse_matrix(node, rank, path):
    if not isinstance(node, list) or len(node) != rank:
        raise SpecFileError(path, f"expected a {rank}x{rank} integer matrix")
    for i, row in enumerate(node):
        if not isinstance(row, list) or len(row) != rank or not all(isinstance(x, int) for x in row):
            raise SpecFileError(f"{path}[{i}]", f"expected a row of {rank} integers")
    return [tuple(row) for row in node]


def _parse_action(node, group: FiniteGroup, module: AbelianGroup, path) -> GroupAction:
    if node is None:
        return trivial_action(group, module)
    _check_keys(node, {"by_element", "by_generators"}, path)
    if ("by_element" in node) == ("by_generators" in node):
        raise SpecFileError(path, "give exactly one of by_element / by_generators")
    rank = module.rank

    def parse_entries(sub, subpath):
        entries = {}
        for key, mat in sub.items():
            try:
                g = int(key)
            except ValueError:
                raise SpecFileError(f"{subpath}.{key}", "keys must be element indices") from None
            if not 0 <= g < group.size:
                raise SpecFileError(f"{subpath}.{key}", "element index out of range")
            entries[g] = _parse_matrix(mat, rank, f"{subpath}.{key}")
        return entries

    if "by_element" in node:
        entries = parse_entries(_require(node, "by_element", path, dict), f"{path}.by_element")
        missing = [g for g in group.elements() if g not in entries]
        if missing:
            raise SpecFileError(f"{path}.by_element", f"missing matrices for elements {missing}")
        matrices = [entries[g] for g in group.elements()]
    else:
        entries = parse_entries(_require(node, "by_generators", path, dict), f"{path}.by_generators")
        generated = subgroup_closure(group, entries.keys())
        if len(generated) != group.size:
            raise SpecFileError(f"{path}.by_generators", "given elements do not generate the group")
        matrices = _propagate_generator_matrices(group, module, entries, f"{path}.by_generators")
    try:
        return build_action(group, module, matrices)
    except Exception as exc:  # noqa: BLE001 - rewrap with position
        raise SpecFileError(path, str(exc)) from exc


def _propagate_generator_matrices(group, module, entries, path):
    """Extend matrices on a generating set along the Cayley graph."""
    k = module.rank
    d = module.invariant_factors
    identity = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))

    def matmul(a, b):
        return tuple(
            tuple(sum(a[i][t] * b[t][j] for t in range(k)) % d[i] for j in range(k))
            for i in range(k)
        )

    known: dict[int, tuple] = {group.identity: identity}
    for g, mat in entries.items():
        known[g] = tuple(tuple(x % d[i] for x in row) for i, row in enumerate(mat))
    frontier = list(known)
    while frontier:
        x = frontier.pop(0)
        for g in list(entries) + [group.identity]:
            y = group.mul[x][g]
            if y not in known:
                known[y] = matmul(known[x], known[g])
                frontier.append(y)
    if len(known) != group.size:
        raise SpecFileError(path, "could not propagate matrices to the whole group")
    # consistency across different words is certified by build_action afterwards
    return [known[g] for g in group.elements()]


def _parse_alpha(node, action: GroupAction, path) -> Cochain:
    group, module = action.group, action.module
    if node is None:
        return zero_cochain(action, 3)
    size = group.size
    table = [list(module.zero()) for _ in range(size**3)]

    def check_value(vec, vpath):
        if (
            not isinstance(vec, list)
            or len(vec) != module.rank
            or not all(isinstance(x, int) for x in vec)
        ):
            raise SpecFileError(vpath, f"expected a vector of {module.rank} integers")
        for x, dmod in zip(vec, module.invariant_factors):
            if not 0 <= x < dmod:
                raise SpecFileError(vpath, f"entry {x} outside the range of Z/{dmod}")
        return tuple(vec)

    if isinstance(node, list) and (not node or isinstance(node[0], dict)):
        for i, entry in enumerate(node):
            epath = f"{path}[{i}]"
            _check_keys(entry, {"g", "h", "k", "value"}, epath)
            g = _require(entry, "g", epath, int)
            h = _require(entry, "h", epath, int)
            k = _require(entry, "k", epath, int)
            for name, idx in (("g", g), ("h", h), ("k", k)):
                if not 0 <= idx < size:
                    raise SpecFileError(f"{epath}.{name}", "element index out of range")
            value = check_value(_require(entry, "value", epath, list), f"{epath}.value")
            table[(g * size + h) * size + k] = list(value)
    elif isinstance(node, list):
        if len(node) != size:
            raise SpecFileError(path, f"dense table must have {size} layers")
        for g, layer in enumerate(node):
            if not isinstance(layer, list) or len(layer) != size:
                raise SpecFileError(f"{path}[{g}]", f"expected {size} rows")
            for h, row in enumerate(layer):
                if not isinstance(row, list) or len(row) != size:
                    raise SpecFileError(f"{path}[{g}][{h}]", f"expected {size} entries")
                for k, vec in enumerate(row):
                    value = check_value(vec, f"{path}[{g}][{h}][{k}]")
                    table[(g * size + h) * size + k] = list(value)
    else:
        raise SpecFileError(path, "alpha must be a sparse entry list or a dense table")
    return Cochain(3, action, tuple(tuple(v) for v in table))


@dataclass(frozen=True)
class TwoGroupSpec:
    """Parsed pieces of a specification file, before pentagon validation."""

    group: FiniteGroup
    coefficients: AbelianGroup
    action: GroupAction
    alpha: Cochain

    def build(self) -> Skeletal2Group:
        return build_2group(self.group, self.coefficients, self.action, self.alpha)


def parse_spec_text(text: str) -> TwoGroupSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError("", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SpecFileError("", "top level must be an object")
    _check_keys(doc, {"group", "coefficients", "action", "alpha"}, "")
    group = _parse_group(_require(doc, "group", "", dict), "group")
    coeff = _parse_coefficients(_require(doc, "coefficients", ""), "coefficients")
    action = _parse_action(doc.get("action"), group, coeff, "action")
    alpha = _parse_alpha(doc.get("alpha"), action, "alpha")
    return TwoGroupSpec(group=group, coefficients=coeff, action=action, alpha=alpha)


def _parse_qz(node, path) -> QZ:
    if isinstance(node, int):
        if node != 0:
            raise SpecFileError(path, "integer values other than 0 are not in [0, 1)")
        return QZ()
    if isinstance(node, str):
        parts = node.split("/")
        try:
            if len(parts) == 1:
                frac = Fraction(int(parts[0]))
            elif len(parts) == 2:
                frac = Fraction(int(parts[0]), int(parts[1]))
            else:
                raise ValueError
        except (ValueError, ZeroDivisionError):
            raise SpecFileError(path, f"cannot parse {node!r} as p/q") from None
        if not 0 <= frac < 1:
            raise SpecFileError(path, "values must lie in [0, 1)")
        return QZ.from_fraction(frac)
    raise SpecFileError(path, "expected a string 'p/q' or 0")


def parse_symmetric_cocycle(text: str) -> QZCochain:
    """Read a Q/Z-valued 2-cochain over an abelian group.

    Format: {"group": {"invariant_factors": [...]}, "values": [{"a": [...],
    "b": [...], "value": "p/q"}, ...]}; unlisted pairs are 0.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError("", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SpecFileError("", "top level must be an object")
    _check_keys(doc, {"group", "values"}, "")
    module = _parse_coefficients(_require(doc, "group", ""), "group")
    base = module.multiplication_table()
    size = base.size
    values = [QZ()] * size**2

    def element_index(vec, vpath):
        if (
            not isinstance(vec, list)
            or len(vec) != module.rank
            or not all(isinstance(x, int) for x in vec)
        ):
            raise SpecFileError(vpath, f"expected a vector of {module.rank} integers")
        for x, dmod in zip(vec, module.invariant_factors):
            if not 0 <= x < dmod:
                raise SpecFileError(vpath, f"entry {x} outside the range of Z/{dmod}")
        return module.element_index(vec)

    for i, entry in enumerate(_require(doc, "values", "", list)):
        epath = f"values[{i}]"
        _check_keys(entry, {"a", "b", "value"}, epath)
        a = element_index(_require(entry, "a", epath, list), f"{epath}.a")
        b = element_index(_require(entry, "b", epath, list), f"{epath}.b")
        values[a * size + b] = _parse_qz(_require(entry, "value", epath), f"{epath}.value")
    return QZCochain(2, base, tuple(values))
