"""The multi-fusion category attached to a skeletal 2-group.

Simple objects are pairs (g, rho) of a base-group element and a character of
the coefficient group; fusion is (g, rho) x (h, sigma) = (gh, rho) exactly
when rho = g . sigma under the dual action, and the associator on a
composable triple is the scalar rho(alpha(g, h, k)) in Q/Z.  Blocks of the
category correspond to orbits of the dual action; each block carries a
pointed diagonal datum (stabilizer subgroup, restricted 3-cocycle).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cohomology import (
    QZCochain,
    qz_coboundary_witness,
    qz_cochain_from_function,
    qz_is_cocycle,
)
from .errors import ZeroComposite
from .groups import (
    Character,
    FiniteGroup,
    GroupAction,
    OrbitDecomposition,
    abelian_invariants_from_table,
    act_on_character,
    dual_action,
    dual_group,
    orbit_decomposition,
    subgroup_as_group,
)
from .qz import QZ
from .twogroup import Skeletal2Group


@dataclass(frozen=True)
class FusionSimple:
    """The simple object (g, rho)."""

    g: int
    rho: Character

    def render(self) -> str:
        return f"({self.g}, {self.rho})"


@lru_cache(maxsize=128)
def _dual(action: GroupAction) -> GroupAction:
    return dual_action(action)


@lru_cache(maxsize=128)
def _orbits(action: GroupAction) -> OrbitDecomposition:
    return orbit_decomposition(_dual(action))


def simples(tg: Skeletal2Group) -> list[FusionSimple]:
    """All |G| * |A^| simples, g-major with characters in canonical order."""
    chars = dual_group(tg.coeff)
    return [FusionSimple(g, rho) for g in tg.group.elements() for rho in chars]


def fuse(tg: Skeletal2Group, s1: FusionSimple, s2: FusionSimple) -> FusionSimple | None:
    """The fusion product, or None for the zero object."""
    if s1.rho != act_on_character(_dual(tg.action), s1.g, s2.rho):
        return None
    return FusionSimple(tg.group.mul[s1.g][s2.g], s1.rho)


def associator_scalar(
    tg: Skeletal2Group, s1: FusionSimple, s2: FusionSimple, s3: FusionSimple
) -> QZ:
    """rho(alpha(g, h, k)) on a composable triple; ZeroComposite otherwise."""
    inner = fuse(tg, s1, s2)
    if inner is None or fuse(tg, inner, s3) is None:
        raise ZeroComposite()
    return s1.rho.evaluate(tg.alpha.value((s1.g, s2.g, s3.g)))


def unit_summands(tg: Skeletal2Group) -> list[FusionSimple]:
    """The tensor unit decomposes as the sum of (e, rho) over all characters."""
    e = tg.group.identity
    return [FusionSimple(e, rho) for rho in dual_group(tg.coeff)]


def dual_simple(tg: Skeletal2Group, s: FusionSimple) -> FusionSimple:
    """(g, rho)* = (g^-1, g^-1 . rho); an involution on simples."""
    ginv = tg.group.inv[s.g]
    return FusionSimple(ginv, act_on_character(_dual(tg.action), ginv, s.rho))


def hom_component(tg: Skeletal2Group, rho: Character, sigma: Character) -> list[FusionSimple]:
    """Simples between unit summands: {(g, rho) | g . sigma = rho}."""
    dual = _dual(tg.action)
    return [
        FusionSimple(g, rho)
        for g in tg.group.elements()
        if act_on_character(dual, g, sigma) == rho
    ]


def scalar_pentagon_violation(
    tg: Skeletal2Group, alpha_values=None
) -> tuple[tuple[int, int, int, int], Character] | None:
    """First failing (quadruple, character) of the scalar pentagon, if any.

    ``alpha_values`` optionally overrides the stored associator table (same
    indexing), which lets tests corrupt single entries past validation.
    """
    group = tg.group
    alpha = tg.alpha if alpha_values is None else None
    size = group.size

    def alpha_at(g, h, k):
        if alpha is not None:
            return alpha.value((g, h, k))
        return alpha_values[(g * size + h) * size + k]

    dual = _dual(tg.action)
    chars = dual_group(tg.coeff)
    for rho in chars:
        for g in group.elements():
            for h in group.elements():
                gh = group.mul[g][h]
                for k in group.elements():
                    hk = group.mul[h][k]
                    ghk = group.mul[gh][k]
                    for length in group.elements():
                        lhs = (
                            rho.evaluate(tg.action.apply(g, alpha_at(h, k, length)))
                            + rho.evaluate(alpha_at(g, hk, length))
                            + rho.evaluate(alpha_at(g, h, k))
                        )
                        rhs = rho.evaluate(alpha_at(g, h, group.mul[k][length])) + rho.evaluate(
                            alpha_at(gh, k, length)
                        )
                        if lhs != rhs:
                            return (g, h, k, length), rho
    return None


@dataclass(frozen=True)
class PentagonReport:
    """Falsy with a ((g, h, k, l), character) witness on failure."""

    witness: tuple | None

    def __bool__(self) -> bool:
        return self.witness is None

    @property
    def ok(self) -> bool:
        return self.witness is None


def pentagon_check(tg: Skeletal2Group, alpha_values=None) -> PentagonReport:
    """Scalar pentagon over all composable quadruples of simples.

    Always passes for a validated 2-group; the override hook exists so a
    corrupted associator table is caught with a witness.
    """
    return PentagonReport(witness=scalar_pentagon_violation(tg, alpha_values))


def diagonal_image(tg: Skeletal2Group, s: FusionSimple) -> list[tuple[FusionSimple, FusionSimple]]:
    """Image of a simple under the diagonal: all ((g, sigma), (g, tau)), sigma + tau = rho."""
    out = []
    for sigma in dual_group(tg.coeff):
        tau = s.rho - sigma
        out.append((FusionSimple(s.g, sigma), FusionSimple(s.g, tau)))
    return out


# ---------------------------------------------------------------------------
# block decomposition


@dataclass(frozen=True)
class PointedSummand:
    """Diagonal pointed datum of a block: (Stab(rho), (rho . alpha)|_Stab).

    ``stab_group`` reindexes the stabilizer as a standalone group in the
    order of ``stabilizer``; the cocycle lives over it with trivial action.
    """

    base_character: Character
    stabilizer: tuple[int, ...]
    stab_group: FiniteGroup
    cocycle: QZCochain
    cocycle_trivial: bool
    trivialization: QZCochain | None


@dataclass(frozen=True)
class OrbitBlock:
    """One indecomposable block: an orbit of characters plus its shape data.

    ``matrix[i][j]`` counts simples in the hom-component from orbit element j
    to orbit element i (always |Stab| within an orbit).  ``label`` is
    "pointed" for singleton orbits, "matrix" when all stabilizers are
    trivial, "general" otherwise.
    """

    characters: tuple[Character, ...]
    representative: Character
    stabilizer: tuple[int, ...]
    size: int
    matrix: tuple[tuple[int, ...], ...]
    summand: PointedSummand
    label: str

    @property
    def simple_count(self) -> int:
        return sum(sum(row) for row in self.matrix)


@dataclass(frozen=True)
class MultiFusionReport:
    """Full block decomposition of the fusion category of a 2-group."""

    blocks: tuple[OrbitBlock, ...]
    simple_count: int
    unit_count: int

    @property
    def component_count(self) -> int:
        return len(self.blocks)


def pointed_summand(tg: Skeletal2Group, rho: Character, stabilizer: tuple[int, ...]) -> PointedSummand:
    stab_group = subgroup_as_group(tg.group, stabilizer)
    members = stabilizer

    def value(gs):
        g, h, k = (members[i] for i in gs)
        return rho.evaluate(tg.alpha.value((g, h, k)))

    cocycle = qz_cochain_from_function(stab_group, 3, value)
    assert qz_is_cocycle(cocycle).ok
    witness = qz_coboundary_witness(cocycle)
    return PointedSummand(
        base_character=rho,
        stabilizer=stabilizer,
        stab_group=stab_group,
        cocycle=cocycle,
        cocycle_trivial=witness is not None,
        trivialization=witness,
    )


def _block_label(orbit_size: int, stabilizer_order: int) -> str:
    if orbit_size == 1:
        return "pointed"
    if stabilizer_order == 1:
        return "matrix"
    return "general"


def decompose(tg: Skeletal2Group) -> MultiFusionReport:
    """Split the category into blocks indexed by orbits of the dual action.

    Per block: the orbit, the stabilizer of its smallest character, the
    matrix of hom-component sizes, and the diagonal pointed summand with its
    restricted cocycle and the cocycle's triviality status.
    """
    orbits = _orbits(tg.action)
    chars = dual_group(tg.coeff)
    dual = _dual(tg.action)
    blocks = []
    for orbit, stab in zip(orbits.orbits, orbits.stabilizers):
        members = tuple(chars[i] for i in orbit)
        rep = members[0]
        matrix = tuple(
            tuple(
                sum(
                    1
                    for g in tg.group.elements()
                    if act_on_character(dual, g, src) == dst
                )
                for src in members
            )
            for dst in members
        )
        summand = pointed_summand(tg, rep, stab)
        blocks.append(
            OrbitBlock(
                characters=members,
                representative=rep,
                stabilizer=stab,
                size=len(members),
                matrix=matrix,
                summand=summand,
                label=_block_label(len(members), len(stab)),
            )
        )
    report = MultiFusionReport(
        blocks=tuple(blocks),
        simple_count=tg.group.size * tg.coeff.order,
        unit_count=tg.coeff.order,
    )
    assert sum(b.simple_count for b in report.blocks) == report.simple_count
    return report


def describe_block_group(block: OrbitBlock) -> str:
    """Readable name for the pointed group of a block."""
    group = block.summand.stab_group
    if group.size == 1:
        return "trivial"
    if group.is_abelian():
        return "C" + "xC".join(str(d) for d in abelian_invariants_from_table(group))
    return f"order {group.size} (nonabelian)"
