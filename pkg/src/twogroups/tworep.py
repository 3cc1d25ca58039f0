"""Derived invariants of the 2-representation theory of a finite 2-group.

The component count is the number of dual-action orbits.  Simple counts per
component use the classification of indecomposable semisimple module
categories over a pointed fusion category (group H, 3-cocycle omega) by pairs
(subgroup L up to conjugacy with [omega|_L] trivial, a torsor under
H^2(L; Q/Z)); that classification is imported background, not something this
package derives, and outputs flag it as such.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import (
    QZCochain,
    cohomology_torus,
    qz_coboundary_witness,
    qz_cochain_from_function,
)
from .fusion import MultiFusionReport, decompose
from .groups import conjugacy_class_count, subgroup_as_group, subgroups
from .twogroup import Skeletal2Group

IMPORTED_CLASSIFICATION = (
    "module categories over a pointed fusion category (H, omega) are classified "
    "by pairs (L <= H up to conjugacy with [omega|_L] = 0, psi in an H^2(L; Q/Z) torsor)"
)


def component_count(tg: Skeletal2Group) -> int:
    """Number of indecomposable summands = number of dual-action orbits."""
    return decompose(tg).component_count


def _restrict_cocycle(omega: QZCochain, members: tuple[int, ...]) -> QZCochain:
    sub = subgroup_as_group(omega.group, members)

    def value(gs):
        return omega.value(tuple(members[i] for i in gs))

    return qz_cochain_from_function(sub, 3, value)


def _component_simple_count(summand, max_order: int | None) -> int:
    """Count module-category pairs (L, psi) for one pointed block."""
    lattice = subgroups(summand.stab_group, max_order=max_order)
    total = 0
    for members in lattice.representatives():
        restricted = _restrict_cocycle(summand.cocycle, members)
        if qz_coboundary_witness(restricted) is None:
            continue
        sub = subgroup_as_group(summand.stab_group, members)
        if sub.size == 1:
            total += 1
            continue
        h2 = cohomology_torus(sub, 2, with_representatives=False)
        total += h2.group.order
    return total


@dataclass(frozen=True)
class TwoRepCount:
    total: int
    per_component: tuple[int, ...]


def simple_2rep_count(tg: Skeletal2Group, max_order: int | None = None) -> TwoRepCount:
    """Number of simple 2-representations, with the per-block breakdown.

    Depends only on the cohomology class of the associator: restriction
    triviality and the H^2 torsor sizes are class invariants.
    """
    report = decompose(tg)
    per = []
    for block in report.blocks:
        per.append(_component_simple_count(block.summand, max_order))
    return TwoRepCount(total=sum(per), per_component=tuple(per))


@dataclass(frozen=True)
class TwoRepReport:
    """Headline descriptors of the 2-representation 2-category."""

    component_count: int
    simple_count: int
    per_component: tuple[int, ...]
    trivial_rep_endohom: tuple[str, int]  # (label, irreducible count)
    regular_descriptor: tuple[int, str, int]  # (copies, factor label, irreducibles each)
    regular_endohom: tuple[str, int]  # (label, simple count)


def descriptors(tg: Skeletal2Group, max_order: int | None = None) -> TwoRepReport:
    """Assemble the report: counts plus endo-hom and regular-object shapes.

    The endo-hom of the trivial 2-representation is representations of the
    base group (irreducibles = conjugacy classes); the regular object is
    |G| copies of representations of the coefficient group; its endo-hom is
    the fusion category itself with the reversed product.
    """
    counts = simple_2rep_count(tg, max_order=max_order)
    return TwoRepReport(
        component_count=component_count(tg),
        simple_count=counts.total,
        per_component=counts.per_component,
        trivial_rep_endohom=("rep(pi1)", conjugacy_class_count(tg.group)),
        regular_descriptor=(tg.group.size, "rep(pi2)", tg.coeff.order),
        regular_endohom=("fusion category, reversed product", tg.group.size * tg.coeff.order),
    )


def consistency_check(tg: Skeletal2Group, report: MultiFusionReport | None = None) -> bool:
    """Cross-module invariant: component count equals the block count."""
    if report is None:
        report = decompose(tg)
    return component_count(tg) == report.component_count
