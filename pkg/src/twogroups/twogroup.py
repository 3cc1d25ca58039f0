"""Skeletal finite 2-groups presented by (G, A, action, alpha).

Objects are the elements of G, morphisms g -> g are the elements of A, and
the degree-3 cochain alpha is the associator; the pentagon identity is the
cocycle condition, verified exhaustively on construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import Cochain, cohomologous, is_cocycle, zero_cochain
from .errors import MismatchedData, MismatchedPostnikovData, PentagonViolation, SizeBound
from .groups import (
    AbelianGroup,
    FiniteGroup,
    GroupAction,
    group_automorphisms,
    group_order_bound,
    module_automorphisms,
    trivial_action,
)


@dataclass(frozen=True)
class TwoGroupMorphism:
    """The morphism a: g -> g.  Hom-sets off the diagonal are empty."""

    object: int
    auto: tuple[int, ...]


@dataclass(frozen=True)
class Skeletal2Group:
    """A validated skeletal 2-group: base group, coefficients, action, associator."""

    group: FiniteGroup
    coeff: AbelianGroup
    action: GroupAction
    alpha: Cochain

    def morphism(self, g: int, a) -> TwoGroupMorphism:
        return TwoGroupMorphism(object=g, auto=self.coeff.reduce(a))

    def identity_morphism(self, g: int) -> TwoGroupMorphism:
        return TwoGroupMorphism(object=g, auto=self.coeff.zero())

    def compose(self, m1: TwoGroupMorphism, m2: TwoGroupMorphism) -> TwoGroupMorphism:
        """Vertical composition: addition in A on a shared object."""
        if m1.object != m2.object:
            raise MismatchedData("morphisms between distinct objects do not compose")
        return TwoGroupMorphism(m1.object, self.coeff.add(m1.auto, m2.auto))

    def tensor_morphism(self, m1: TwoGroupMorphism, m2: TwoGroupMorphism) -> TwoGroupMorphism:
        """(g, a) tensor (h, b) = (g h, a + g.b)."""
        obj = self.group.mul[m1.object][m2.object]
        return TwoGroupMorphism(obj, self.coeff.add(m1.auto, self.action.apply(m1.object, m2.auto)))

    def associator(self, g: int, h: int, k: int) -> tuple[int, ...]:
        return self.alpha.value((g, h, k))

    def unitors(self, g: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(left, right) unitors: (-alpha(e, e, g), alpha(g, e, e))."""
        e = self.group.identity
        return self.coeff.neg(self.alpha.value((e, e, g))), self.alpha.value((g, e, e))

    def inverse_object(self, g: int) -> int:
        return self.group.inv[g]

    def __repr__(self) -> str:
        return (
            f"Skeletal2Group(|G|={self.group.size}, "
            f"A={self.coeff.invariant_factors}, |alpha|={'0' if self.alpha.is_zero() else '!=0'})"
        )


def build_2group(
    group: FiniteGroup,
    coeff: AbelianGroup,
    action: GroupAction | None = None,
    alpha: Cochain | None = None,
) -> Skeletal2Group:
    """Assemble and validate a skeletal 2-group.

    The pentagon for the associator is checked over all |G|^4 quadruples;
    a failure names the offending quadruple.
    """
    if action is None:
        action = trivial_action(group, coeff)
    if action.group != group or action.module != coeff:
        raise MismatchedData("action does not match the supplied group and module")
    if alpha is None:
        alpha = zero_cochain(action, 3)
    if alpha.degree != 3 or alpha.action != action:
        raise MismatchedData("alpha must be a degree-3 cochain over the supplied action")
    check = is_cocycle(alpha)
    if not check:
        raise PentagonViolation(check.witness)
    return Skeletal2Group(group=group, coeff=coeff, action=action, alpha=alpha)


@dataclass(frozen=True)
class Equivalence:
    """Witness of a monoidal equivalence between two presentations.

    ``witness`` is the 2-cochain beta with alpha' - alpha = d(beta), after
    transporting along the recorded relabellings (identity unless the search
    up to automorphisms was requested).
    """

    witness: Cochain
    group_map: tuple[int, ...]
    module_map: tuple[tuple[int, ...], ...]


def _identity_maps(tg: Skeletal2Group):
    perm = tuple(tg.group.elements())
    k = tg.coeff.rank
    mat = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    return perm, mat


def equivalent_2groups(
    first: Skeletal2Group,
    second: Skeletal2Group,
    up_to_automorphism: bool = False,
    max_order: int | None = None,
) -> Equivalence | None:
    """Equivalence with identity underlying data, or None.

    With ``up_to_automorphism`` the comparison additionally quotients by
    compatible relabellings of G and A (an extension beyond the plain
    criterion that identity-functor equivalences correspond to cohomologous
    associators).
    """
    if first.group != second.group:
        raise MismatchedPostnikovData("base groups differ")
    if first.coeff != second.coeff:
        raise MismatchedPostnikovData("coefficient groups differ")

    if not up_to_automorphism:
        if first.action != second.action:
            raise MismatchedPostnikovData("actions differ")
        witness = cohomologous(first.alpha, second.alpha)
        if witness is None:
            return None
        perm, mat = _identity_maps(first)
        return Equivalence(witness=witness, group_map=perm, module_map=mat)

    bound = group_order_bound(max_order)
    if first.group.size > bound:
        raise SizeBound("equivalence search", first.group.size, bound)

    from .cohomology import cochain_from_function

    for perm in group_automorphisms(first.group, max_order=max_order):
        for auto in module_automorphisms(first.coeff):
            mat_apply = lambda vec: auto.apply(0, vec)  # noqa: E731
            compatible = all(
                mat_apply(first.action.apply(g, a))
                == second.action.apply(perm[g], mat_apply(a))
                for g in first.group.elements()
                for a in first.coeff.elements()
            )
            if not compatible:
                continue
            inv_perm = [0] * len(perm)
            for i, p in enumerate(perm):
                inv_perm[p] = i
            transported = cochain_from_function(
                second.action,
                3,
                lambda gs: mat_apply(
                    first.alpha.value((inv_perm[gs[0]], inv_perm[gs[1]], inv_perm[gs[2]]))
                ),
            )
            witness = cohomologous(transported, second.alpha)
            if witness is not None:
                return Equivalence(
                    witness=witness, group_map=tuple(perm), module_map=auto.matrices[0]
                )
    return None
