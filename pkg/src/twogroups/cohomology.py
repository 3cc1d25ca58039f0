"""Group cohomology of finite groups via the inhomogeneous bar complex.

Cochains of degree n are dense tables G^n -> M.  The differential is

    (d c)(g1, ..., g_{n+1}) = g1 . c(g2, ..., g_{n+1})
                              + sum_i (-1)^i c(..., g_i g_{i+1}, ...)
                              + (-1)^{n+1} c(g1, ..., g_n)

written additively; its degree-3 vanishing is the pentagon identity for a
skeletal 2-group's associator.  Cohomology groups are computed exactly by
lifting to integer lattices and reducing with Smith normal form.

Cochains are deliberately NOT normalized (no requirement c(..., e, ...) = 0):
unitors of skeletal 2-groups read off entries like c(e, e, g).

Roots-of-unity coefficients are modeled additively as Q/Z (QZCochain).  A
class with denominators dividing M is trivial over Q/Z if and only if it
becomes a coboundary after pushing into denominators M * |G|, because |G|
kills cohomology in positive degrees and every obstruction from a finite
stage dies by then; this bound drives both the symmetric splitter and the
torus-coefficient cohomology below, so no unbounded search is ever needed.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import snf
from .errors import MismatchedData, NonAbelianBase, NotACocycle, NotSymmetric, SizeBound
from .groups import AbelianGroup, FiniteGroup, GroupAction, trivial_action
from .qz import QZ
from .snf import CancelToken

DEFAULT_MATRIX_CELLS = 1 << 23


def matrix_cell_bound(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("TWOGROUPS_MAX_CELLS")
    return int(env) if env else DEFAULT_MATRIX_CELLS


def _tuple_pos(size: int, tup: tuple[int, ...]) -> int:
    idx = 0
    for t in tup:
        idx = idx * size + t
    return idx


def _tuples(size: int, degree: int):
    return itertools.product(range(size), repeat=degree)


# ---------------------------------------------------------------------------
# cochains with coefficients in a finite module


@dataclass(frozen=True)
class Cochain:
    """A dense table G^degree -> M, with M carried by ``action``.

    ``values`` is indexed by the mixed-radix position of the argument tuple;
    a degree-0 cochain is the single module element ``values[0]``.
    """

    degree: int
    action: GroupAction
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        expected = self.group.size**self.degree
        if len(self.values) != expected:
            raise ValueError(f"expected {expected} table entries, got {len(self.values)}")

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    @property
    def module(self) -> AbelianGroup:
        return self.action.module

    def value(self, gs: tuple[int, ...]) -> tuple[int, ...]:
        return self.values[_tuple_pos(self.group.size, gs)]

    def __add__(self, other: "Cochain") -> "Cochain":
        _check_compatible(self, other)
        module = self.module
        vals = tuple(module.add(a, b) for a, b in zip(self.values, other.values))
        return Cochain(self.degree, self.action, vals)

    def __sub__(self, other: "Cochain") -> "Cochain":
        _check_compatible(self, other)
        module = self.module
        vals = tuple(module.sub(a, b) for a, b in zip(self.values, other.values))
        return Cochain(self.degree, self.action, vals)

    def __neg__(self) -> "Cochain":
        module = self.module
        return Cochain(self.degree, self.action, tuple(module.neg(a) for a in self.values))

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in v) for v in self.values)


def _check_compatible(a: Cochain, b: Cochain) -> None:
    if a.degree != b.degree:
        raise MismatchedData("cochains have different degrees")
    if a.action != b.action:
        raise MismatchedData("cochains have different groups, modules or actions")


def zero_cochain(action: GroupAction, degree: int) -> Cochain:
    zero = action.module.zero()
    count = action.group.size**degree
    return Cochain(degree, action, (zero,) * count)


def cochain_from_function(action: GroupAction, degree: int, fn) -> Cochain:
    module = action.module
    vals = tuple(module.reduce(fn(gs)) for gs in _tuples(action.group.size, degree))
    return Cochain(degree, action, vals)


def _differential_value(c: Cochain, hs: tuple[int, ...]) -> tuple[int, ...]:
    group, module = c.group, c.module
    n = c.degree
    total = c.action.apply(hs[0], c.value(hs[1:]))
    sign = 1
    for i in range(1, n + 1):
        sign = -sign
        merged = hs[: i - 1] + (group.mul[hs[i - 1]][hs[i]],) + hs[i + 1 :]
        term = c.value(merged)
        total = module.add(total, term if sign > 0 else module.neg(term))
    sign = -sign
    last = c.value(hs[:n])
    return module.add(total, last if sign > 0 else module.neg(last))


def differential(c: Cochain) -> Cochain:
    """The coboundary, one degree up.  Satisfies d(d(c)) = 0."""
    vals = tuple(_differential_value(c, hs) for hs in _tuples(c.group.size, c.degree + 1))
    return Cochain(c.degree + 1, c.action, vals)


@dataclass(frozen=True)
class CocycleCheck:
    """Outcome of a cocycle test; falsy with a witness tuple on failure."""

    witness: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.witness is None

    @property
    def ok(self) -> bool:
        return self.witness is None


def is_cocycle(c: Cochain) -> CocycleCheck:
    zero = c.module.zero()
    for hs in _tuples(c.group.size, c.degree + 1):
        if _differential_value(c, hs) != zero:
            return CocycleCheck(witness=hs)
    return CocycleCheck(witness=None)


# ---------------------------------------------------------------------------
# integer lifts


@lru_cache(maxsize=64)
def differential_matrix(action: GroupAction, degree: int) -> np.ndarray:
    """Integer lift of d: C^degree -> C^{degree+1} on mixed-radix coordinates."""
    group, module = action.group, action.module
    size, k = group.size, module.rank
    rows = size ** (degree + 1) * k
    cols = size**degree * k
    D = np.zeros((rows, cols), dtype=np.int64)
    for T, hs in enumerate(_tuples(size, degree + 1)):
        base = T * k
        mat = action.matrices[hs[0]]
        c = _tuple_pos(size, hs[1:]) * k
        for r in range(k):
            row = mat[r]
            for j in range(k):
                D[base + r, c + j] += row[j]
        sign = 1
        for i in range(1, degree + 1):
            sign = -sign
            merged = hs[: i - 1] + (group.mul[hs[i - 1]][hs[i]],) + hs[i + 1 :]
            c = _tuple_pos(size, merged) * k
            for r in range(k):
                D[base + r, c + r] += sign
        sign = -sign
        c = _tuple_pos(size, hs[:degree]) * k
        for r in range(k):
            D[base + r, c + r] += sign
    D.setflags(write=False)
    return D


def _relation_diagonal(module: AbelianGroup, tuples_count: int) -> np.ndarray:
    return np.diag(np.tile(np.array(module.invariant_factors, dtype=np.int64), tuples_count))


def cochain_to_vector(c: Cochain) -> np.ndarray:
    flat = [x for vec in c.values for x in vec]
    return np.array(flat, dtype=np.int64)


def vector_to_cochain(action: GroupAction, degree: int, vec) -> Cochain:
    module = action.module
    k = module.rank
    vals = tuple(
        module.reduce(tuple(int(vec[t * k + i]) for i in range(k)))
        for t in range(action.group.size**degree)
    )
    return Cochain(degree, action, vals)


def _check_cells(what: str, rows: int, cols: int, max_cells: int | None) -> None:
    bound = matrix_cell_bound(max_cells)
    if rows * cols > bound:
        raise SizeBound(what, rows * cols, bound)


def cocycle_lattice(
    action: GroupAction,
    degree: int,
    max_cells: int | None = None,
    cancel: CancelToken | None = None,
) -> np.ndarray:
    """Basis of the lattice of integer lifts of degree-``degree`` cocycles."""
    group, module = action.group, action.module
    a_n = group.size**degree * module.rank
    a_next = group.size ** (degree + 1) * module.rank
    _check_cells(f"H^{degree} kernel computation", a_next, a_n + a_next, max_cells)
    D = differential_matrix(action, degree)
    factors = np.array(module.invariant_factors, dtype=np.int64)
    row_moduli = np.tile(factors, group.size ** (degree + 1))
    col_moduli = np.tile(factors, group.size**degree)
    gens = snf.congruence_kernel(D, row_moduli, col_moduli, cancel=cancel)
    return snf.column_lattice_basis(gens, cancel=cancel)


def coboundary_generators(action: GroupAction, degree: int) -> np.ndarray:
    """Generators of lifted coboundaries plus module relations in C^degree."""
    group, module = action.group, action.module
    rel = _relation_diagonal(module, group.size**degree)
    if degree == 0:
        return rel
    return np.hstack([differential_matrix(action, degree - 1), rel])


@dataclass(frozen=True)
class CohomologyGroup:
    """Invariant factors of H^n plus representative cocycles for generators."""

    invariant_factors: tuple[int, ...]
    representatives: tuple = ()

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors


def cohomology(
    action: GroupAction,
    degree: int,
    max_cells: int | None = None,
    cancel: CancelToken | None = None,
    with_representatives: bool = True,
) -> CohomologyGroup:
    """H^degree(G; M) as a finite abelian group, via Smith normal form.

    Lifts cocycles and coboundaries to integer lattices (module relations
    adjoined) and reads the quotient off the Smith form.
    """
    if not 0 <= degree <= 4:
        raise ValueError("degree must be between 0 and 4")
    module = action.module
    if module.rank == 0:
        return CohomologyGroup(invariant_factors=())
    kernel = cocycle_lattice(action, degree, max_cells=max_cells, cancel=cancel)
    bounds = coboundary_generators(action, degree)
    factors, reps = snf.quotient_invariants(
        kernel, bounds, need_representatives=with_representatives, cancel=cancel
    )
    representatives = tuple(
        vector_to_cochain(action, degree, vec) for vec in reps
    )
    for rep in representatives:
        assert is_cocycle(rep).ok
    return CohomologyGroup(invariant_factors=tuple(factors), representatives=representatives)


def coboundary_witness(
    z: Cochain,
    max_cells: int | None = None,
    cancel: CancelToken | None = None,
) -> Cochain | None:
    """A cochain w with d(w) = z exactly, or None when [z] is nontrivial."""
    check = is_cocycle(z)
    if not check:
        raise NotACocycle(check.witness)
    if z.degree < 1:
        raise ValueError("witnesses exist for degrees >= 1")
    group, module = z.group, z.module
    a_n = group.size**z.degree * module.rank
    a_prev = group.size ** (z.degree - 1) * module.rank
    _check_cells("coboundary solve", a_n, a_prev + a_n, max_cells)
    system = coboundary_generators(z.action, z.degree)
    sol = snf.solve_matrix(system, cochain_to_vector(z), cancel=cancel)
    if sol is None:
        return None
    witness = vector_to_cochain(z.action, z.degree - 1, sol[:a_prev, 0])
    assert differential(witness) == z
    return witness


def cohomologous(a: Cochain, b: Cochain, **kwargs) -> Cochain | None:
    """Witness w with b - a = d(w), or None when the classes differ."""
    _check_compatible(a, b)
    for c in (a, b):
        check = is_cocycle(c)
        if not check:
            raise NotACocycle(check.witness)
    return coboundary_witness(b - a, **kwargs)


# ---------------------------------------------------------------------------
# cochains with roots-of-unity coefficients (Q/Z)


@dataclass(frozen=True)
class QZCochain:
    """A dense table G^degree -> Q/Z.

    ``multipliers`` optionally gives an action by integer unit multipliers
    per group element (e.g. -1 for inversion); None means trivial action.
    All values have denominators dividing ``denominator_bound``.
    """

    degree: int
    group: FiniteGroup
    values: tuple[QZ, ...]
    multipliers: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        expected = self.group.size**self.degree
        if len(self.values) != expected:
            raise ValueError(f"expected {expected} table entries, got {len(self.values)}")
        if self.multipliers is not None and len(self.multipliers) != self.group.size:
            raise ValueError("one multiplier per group element required")

    def value(self, gs: tuple[int, ...]) -> QZ:
        return self.values[_tuple_pos(self.group.size, gs)]

    @property
    def denominator_bound(self) -> int:
        return snf.lcm_many(v.denominator for v in self.values)

    def _act(self, g: int, v: QZ) -> QZ:
        if self.multipliers is None:
            return v
        return v.scaled(self.multipliers[g])

    def __sub__(self, other: "QZCochain") -> "QZCochain":
        if (self.degree, self.group, self.multipliers) != (
            other.degree,
            other.group,
            other.multipliers,
        ):
            raise MismatchedData("Q/Z cochains are not comparable")
        vals = tuple(a - b for a, b in zip(self.values, other.values))
        return QZCochain(self.degree, self.group, vals, self.multipliers)

    def is_zero(self) -> bool:
        return all(v.is_zero for v in self.values)


def zero_qz_cochain(group: FiniteGroup, degree: int) -> QZCochain:
    return QZCochain(degree, group, (QZ(),) * group.size**degree)


def qz_cochain_from_function(group: FiniteGroup, degree: int, fn) -> QZCochain:
    return QZCochain(degree, group, tuple(fn(gs) for gs in _tuples(group.size, degree)))


def _qz_differential_value(c: QZCochain, hs: tuple[int, ...]) -> QZ:
    group = c.group
    n = c.degree
    total = c._act(hs[0], c.value(hs[1:]))
    sign = 1
    for i in range(1, n + 1):
        sign = -sign
        merged = hs[: i - 1] + (group.mul[hs[i - 1]][hs[i]],) + hs[i + 1 :]
        term = c.value(merged)
        total = total + (term if sign > 0 else -term)
    sign = -sign
    last = c.value(hs[:n])
    return total + (last if sign > 0 else -last)


def qz_differential(c: QZCochain) -> QZCochain:
    vals = tuple(_qz_differential_value(c, hs) for hs in _tuples(c.group.size, c.degree + 1))
    return QZCochain(c.degree + 1, c.group, vals, c.multipliers)


def qz_is_cocycle(c: QZCochain) -> CocycleCheck:
    for hs in _tuples(c.group.size, c.degree + 1):
        if not _qz_differential_value(c, hs).is_zero:
            return CocycleCheck(witness=hs)
    return CocycleCheck(witness=None)


def symmetry_violation(c: QZCochain) -> tuple[int, int] | None:
    """A pair (a, b) with c(a, b) != c(b, a), or None when symmetric."""
    if c.degree != 2:
        raise ValueError("symmetry is a property of 2-cochains")
    for a in c.group.elements():
        for b in range(a + 1, c.group.size):
            if c.value((a, b)) != c.value((b, a)):
                return (a, b)
    return None


def _embed_qz(c: QZCochain, modulus: int) -> Cochain:
    """Realise values with denominators dividing ``modulus`` inside Z/modulus."""
    module = AbelianGroup((modulus,))
    if c.multipliers is None:
        action = trivial_action(c.group, module)
    else:
        from .groups import build_action

        action = build_action(
            c.group, module, [[[u % modulus]] for u in c.multipliers]
        )
    vals = []
    for v in c.values:
        if modulus % v.denominator:
            raise ValueError("modulus does not clear the denominators")
        vals.append((v.numerator * (modulus // v.denominator) % modulus,))
    return Cochain(c.degree, action, tuple(vals))


def _qz_from_cochain(c: Cochain, modulus: int, multipliers) -> QZCochain:
    vals = tuple(QZ.of(v[0], modulus) for v in c.values)
    return QZCochain(c.degree, c.action.group, vals, multipliers)


def qz_coboundary_witness(
    z: QZCochain,
    max_cells: int | None = None,
    cancel: CancelToken | None = None,
) -> QZCochain | None:
    """Witness for triviality of [z] with Q/Z coefficients, or None.

    Solving at denominators M * |G| is complete: a finite-stage class dies in
    the colimit over all denominators iff it dies at that stage.
    """
    check = qz_is_cocycle(z)
    if not check:
        raise NotACocycle(check.witness)
    if z.is_zero():
        return zero_qz_cochain(z.group, z.degree - 1)
    modulus = max(2, z.denominator_bound * z.group.size)
    lifted = _embed_qz(z, modulus)
    witness = coboundary_witness(lifted, max_cells=max_cells, cancel=cancel)
    if witness is None:
        return None
    out = _qz_from_cochain(witness, modulus, z.multipliers)
    assert qz_differential(out) - z == zero_qz_cochain(z.group, z.degree)
    return out


def qz_cohomologous(a: QZCochain, b: QZCochain, **kwargs) -> QZCochain | None:
    for c in (a, b):
        check = qz_is_cocycle(c)
        if not check:
            raise NotACocycle(check.witness)
    return qz_coboundary_witness(b - a, **kwargs)


def split_symmetric_2cocycle(
    phi: QZCochain,
    max_cells: int | None = None,
    cancel: CancelToken | None = None,
) -> QZCochain:
    """Split a symmetric 2-cocycle over an abelian group: Gamma with d(Gamma) = phi.

    This always succeeds because Q/Z is divisible; concretely the solve runs
    over Z/M' for M' = M * |base group| and that modulus already suffices,
    with doubling kept as a safety net.
    """
    if phi.degree != 2:
        raise ValueError("expected a 2-cochain")
    if not phi.group.is_abelian():
        raise NonAbelianBase()
    if phi.multipliers is not None and any(
        u % phi.denominator_bound != 1 % phi.denominator_bound for u in phi.multipliers
    ):
        raise ValueError("symmetric splitting requires a trivial coefficient action")
    pair = symmetry_violation(phi)
    if pair is not None:
        raise NotSymmetric(pair)
    check = qz_is_cocycle(phi)
    if not check:
        raise NotACocycle(check.witness)
    if phi.is_zero():
        return zero_qz_cochain(phi.group, 1)

    modulus = max(2, phi.denominator_bound * phi.group.size)
    for _ in range(64):
        lifted = _embed_qz(phi, modulus)
        witness = coboundary_witness(lifted, max_cells=max_cells, cancel=cancel)
        if witness is not None:
            gamma = _qz_from_cochain(witness, modulus, None)
            assert qz_differential(gamma) - phi == zero_qz_cochain(phi.group, 2)
            return gamma
        modulus *= 2
    raise AssertionError("unreachable: symmetric 2-cocycles split at the first modulus")


# ---------------------------------------------------------------------------
# cohomology with Q/Z (torus) coefficients


@dataclass(frozen=True)
class TorusCohomology:
    """H^n(G; Q/Z): the stable value over growing finite denominator bounds.

    ``torsion_bound`` is the modulus at which the reported value was computed
    and confirmed stable; since |G| kills positive-degree classes, the first
    enlargement step is already exact and ``stabilized`` is always True.
    """

    group: CohomologyGroup
    torsion_bound: int
    stabilized: bool


def _stable_image(
    group: FiniteGroup,
    degree: int,
    small: int,
    large: int,
    with_representatives: bool,
    max_cells: int | None,
    cancel: CancelToken | None,
):
    """Image of H^n(G; Z/small) -> H^n(G; Z/large) as a finite abelian group."""
    action_small = trivial_action(group, AbelianGroup((small,)))
    z_small = cocycle_lattice(action_small, degree, max_cells=max_cells, cancel=cancel)
    pushed = z_small * (large // small)
    action_large = trivial_action(group, AbelianGroup((large,)))
    bounds = coboundary_generators(action_large, degree)
    sup = np.hstack([pushed, bounds])
    factors, reps = snf.quotient_invariants(
        sup, bounds, need_representatives=with_representatives, cancel=cancel
    )
    representatives = tuple(
        _qz_from_cochain(
            vector_to_cochain(action_large, degree, vec), large, None
        )
        for vec in reps
    )
    return tuple(factors), representatives


def cohomology_torus(
    group: FiniteGroup,
    degree: int,
    max_cells: int | None = None,
    cancel: CancelToken | None = None,
    with_representatives: bool = True,
) -> TorusCohomology:
    """H^degree(G; Q/Z) with trivial action, degree >= 1.

    Computes the stable image of the cohomology at a finite denominator bound
    inside the next enlargement (factor |G|), confirming stability by one
    more step, and records the bound used.
    """
    if degree < 1:
        raise ValueError("torus coefficients need degree >= 1 (H^0 is infinite)")
    if degree > 4:
        raise ValueError("degree must be at most 4")
    factor = max(2, group.size)
    small = factor
    prev: tuple | None = None
    prev_reps: tuple = ()
    prev_bound = small
    for _ in range(8):
        large = small * factor
        factors, reps = _stable_image(
            group, degree, small, large, with_representatives, max_cells, cancel
        )
        if prev is not None and factors == prev:
            return TorusCohomology(
                group=CohomologyGroup(invariant_factors=prev, representatives=prev_reps),
                torsion_bound=prev_bound,
                stabilized=True,
            )
        prev, prev_reps, prev_bound = factors, reps, large
        small = large
    raise AssertionError("unreachable: the first enlargement is already stable")
