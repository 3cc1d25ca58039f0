"""The group algebra k[A] of a finite abelian group, over exact cyclotomics.

Carries the Fourier idempotents p_rho = (1/|A|) sum_a rho(a)^-1 a, the induced
algebra isomorphism with functions on the character group, and the group-like
element test used when reconstructing group elements from the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CyclotomicRational, root_of_unity
from .errors import MismatchedData
from .groups import AbelianGroup, Character, dual_group


@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    """An element of k[A]: one cyclotomic coefficient per group element.

    Coefficients are indexed by the canonical element order of ``module``;
    multiplication is convolution and the basis element at 0 is the unit.
    """

    module: AbelianGroup
    coeffs: tuple[CyclotomicRational, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.module.order:
            raise ValueError("one coefficient per group element required")

    def coefficient(self, element) -> CyclotomicRational:
        return self.coeffs[self.module.element_index(element)]

    def _check(self, other: "GroupAlgebraElement") -> None:
        if self.module != other.module:
            raise MismatchedData("elements live in different group algebras")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        return GroupAlgebraElement(
            self.module, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        return GroupAlgebraElement(
            self.module, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        """Convolution product."""
        self._check(other)
        module = self.module
        elems = list(module.elements())
        out = [CyclotomicRational.zero() for _ in elems]
        for i, a in enumerate(elems):
            ca = self.coeffs[i]
            if ca.is_zero:
                continue
            for j, b in enumerate(elems):
                cb = other.coeffs[j]
                if cb.is_zero:
                    continue
                k = module.element_index(module.add(a, b))
                out[k] = out[k] + ca * cb
        return GroupAlgebraElement(module, tuple(out))

    def scale(self, factor) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.module, tuple(c * factor for c in self.coeffs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.module == other.module and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash(("GroupAlgebraElement", self.module))

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def __str__(self) -> str:
        parts = [
            f"({c})*{vec}"
            for c, vec in zip(self.coeffs, self.module.elements())
            if not c.is_zero
        ]
        return " + ".join(parts) if parts else "0"


def zero_element(module: AbelianGroup) -> GroupAlgebraElement:
    return GroupAlgebraElement(module, (CyclotomicRational.zero(),) * module.order)


def basis_element(module: AbelianGroup, element) -> GroupAlgebraElement:
    coeffs = [CyclotomicRational.zero()] * module.order
    coeffs[module.element_index(element)] = CyclotomicRational.one()
    return GroupAlgebraElement(module, tuple(coeffs))


def unit(module: AbelianGroup) -> GroupAlgebraElement:
    return basis_element(module, module.zero())


def idempotent(module: AbelianGroup, rho: Character) -> GroupAlgebraElement:
    """p_rho = (1/|A|) sum_a rho(a)^-1 a, the primitive idempotent at rho."""
    scale = Fraction(1, module.order)
    coeffs = [
        root_of_unity(-rho.evaluate(a)) * scale for a in module.elements()
    ]
    return GroupAlgebraElement(module, tuple(coeffs))


def fourier(x: GroupAlgebraElement) -> tuple[CyclotomicRational, ...]:
    """Coordinates of x in the idempotent basis: x = sum_rho xhat(rho) p_rho.

    Indexed by the canonical character order; this is an algebra isomorphism
    onto functions on the character group (pointwise product).
    """
    module = x.module
    out = []
    for rho in dual_group(module):
        total = CyclotomicRational.zero()
        for a in module.elements():
            c = x.coefficient(a)
            if not c.is_zero:
                total = total + c * root_of_unity(rho.evaluate(a))
        out.append(total)
    return tuple(out)


def inverse_fourier(module: AbelianGroup, values) -> GroupAlgebraElement:
    """Reassemble sum_rho values[rho] p_rho from idempotent coordinates."""
    values = tuple(values)
    characters = dual_group(module)
    if len(values) != len(characters):
        raise ValueError("one value per character required")
    scale = Fraction(1, module.order)
    coeffs = []
    for a in module.elements():
        total = CyclotomicRational.zero()
        for rho, v in zip(characters, values):
            if not v.is_zero:
                total = total + v * root_of_unity(-rho.evaluate(a))
        coeffs.append(total * scale)
    return GroupAlgebraElement(module, tuple(coeffs))


def is_group_like(x: GroupAlgebraElement) -> bool:
    """Whether x satisfies the group-like equations.

    Writing x = sum c_a a, the comultiplication a -> a (x) a and counit
    a -> 1 make x group-like iff c_a c_b = 0 for a != b, c_a^2 = c_a and
    sum_a c_a = 1; the solutions are exactly the basis elements.
    """
    coeffs = x.coeffs
    n = len(coeffs)
    total = CyclotomicRational.zero()
    for i in range(n):
        ci = coeffs[i]
        total = total + ci
        if ci * ci != ci:
            return False
        for j in range(i + 1, n):
            if not (ci * coeffs[j]).is_zero:
                return False
    return total == CyclotomicRational.one()


def enumerate_group_likes(module: AbelianGroup) -> list[GroupAlgebraElement]:
    """All group-like elements of k[A]: exactly the |A| basis elements."""
    out = []
    for a in module.elements():
        candidate = basis_element(module, a)
        assert is_group_like(candidate)
        out.append(candidate)
    return out
