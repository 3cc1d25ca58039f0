"""Finite groups, finite abelian groups, actions, characters and orbits.

Groups are explicit multiplication tables over element indices 0..n-1, so all
validation is exhaustive.  Abelian groups are given by invariant factors and
their elements are residue vectors.  Characters take values in Q/Z, with the
lexicographic enumeration fixed once here so that every orbit, stabilizer and
fusion computation downstream refers to stable indices.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    InvalidAction,
    MismatchedData,
    NoIdentity,
    NoInverse,
    NotAssociative,
    SizeBound,
)
from .qz import QZ

DEFAULT_GROUP_BOUND = 24


def group_order_bound(override: int | None = None) -> int:
    """Configured bound for subgroup/automorphism enumeration."""
    if override is not None:
        return override
    env = os.environ.get("TWOGROUPS_MAX_SIZE")
    return int(env) if env else DEFAULT_GROUP_BOUND


# ---------------------------------------------------------------------------
# finite groups


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group presented by its multiplication table.

    ``mul[a][b]`` is the index of the product a*b; ``identity`` and ``inv``
    are derived during validation and stored for O(1) access.
    """

    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.mul)

    def elements(self) -> range:
        return range(self.size)

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def is_abelian(self) -> bool:
        n = self.size
        return all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(n))

    def element_order(self, a: int) -> int:
        x, n = a, 1
        while x != self.identity:
            x = self.mul[x][a]
            n += 1
        return n

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.size})"


def build_group(table) -> FiniteGroup:
    """Validate a square multiplication table and return the group.

    Raises NotAssociative / NoIdentity / NoInverse naming a witness.
    """
    mul = tuple(tuple(int(x) for x in row) for row in table)
    n = len(mul)
    if n == 0:
        raise NoIdentity()
    for row in mul:
        if len(row) != n or any(not 0 <= x < n for x in row):
            raise ValueError("table must be square over indices 0..n-1")

    identity = None
    for e in range(n):
        if all(mul[e][x] == x and mul[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    for a in range(n):
        for b in range(n):
            ab = mul[a][b]
            row_ab = mul[ab]
            row_a = mul[a]
            for c in range(n):
                if row_ab[c] != row_a[mul[b][c]]:
                    raise NotAssociative(a, b, c)

    inv = [None] * n
    for a in range(n):
        for b in range(n):
            if mul[a][b] == identity and mul[b][a] == identity:
                inv[a] = b
                break
        if inv[a] is None:
            raise NoInverse(a)

    return FiniteGroup(mul=mul, identity=identity, inv=tuple(inv))


def trivial_group() -> FiniteGroup:
    return build_group([[0]])


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return build_group(table)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Direct product with index (a, b) -> a*|H| + b."""
    nh = h.size
    table = [
        [g.mul[a1][a2] * nh + h.mul[b1][b2] for a2 in range(g.size) for b2 in range(nh)]
        for a1 in range(g.size)
        for b1 in range(nh)
    ]
    return build_group(table)


def conjugacy_class_count(group: FiniteGroup) -> int:
    """Number of conjugacy classes (= number of irreducible representations)."""
    seen: set[int] = set()
    count = 0
    for x in group.elements():
        if x in seen:
            continue
        count += 1
        for g in group.elements():
            seen.add(group.conjugate(g, x))
    return count


def subgroup_closure(group: FiniteGroup, generators) -> tuple[int, ...]:
    """Smallest subgroup containing the generators, as a sorted index tuple."""
    members = {group.identity}
    frontier = [group.identity]
    gens = set(generators) | {group.identity}
    for g in gens:
        if g not in members:
            members.add(g)
            frontier.append(g)
    while frontier:
        x = frontier.pop()
        for y in list(members):
            for z in (group.mul[x][y], group.mul[y][x]):
                if z not in members:
                    members.add(z)
                    frontier.append(z)
    return tuple(sorted(members))


@dataclass(frozen=True)
class SubgroupLattice:
    """All subgroups of a group, grouped into conjugacy classes.

    ``subgroups`` is sorted by (order, elements); ``classes`` holds indices
    into it, one tuple per conjugacy class, each led by its smallest member.
    """

    subgroups: tuple[tuple[int, ...], ...]
    classes: tuple[tuple[int, ...], ...]

    def representatives(self) -> list[tuple[int, ...]]:
        return [self.subgroups[cls[0]] for cls in self.classes]


def subgroups(group: FiniteGroup, max_order: int | None = None) -> SubgroupLattice:
    """Enumerate every subgroup by closing generator sets, breadth first."""
    bound = group_order_bound(max_order)
    if group.size > bound:
        raise SizeBound("subgroup enumeration", group.size, bound)

    found: set[tuple[int, ...]] = set()
    queue: list[tuple[int, ...]] = [(group.identity,)]
    found.add((group.identity,))
    while queue:
        sub = queue.pop()
        for g in group.elements():
            if g in sub:
                continue
            bigger = subgroup_closure(group, sub + (g,))
            if bigger not in found:
                found.add(bigger)
                queue.append(bigger)

    subs = sorted(found, key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(subs)}
    assigned: set[int] = set()
    classes = []
    for i, sub in enumerate(subs):
        if i in assigned:
            continue
        orbit = set()
        for g in group.elements():
            conj = tuple(sorted(group.conjugate(g, x) for x in sub))
            orbit.add(index[conj])
        cls = tuple(sorted(orbit))
        assigned.update(cls)
        classes.append(cls)
    classes.sort(key=lambda c: c[0])
    return SubgroupLattice(subgroups=tuple(subs), classes=tuple(classes))


def subgroup_as_group(group: FiniteGroup, members: tuple[int, ...]) -> FiniteGroup:
    """Restrict the multiplication table to a subgroup.

    Elements are reindexed in the order given by ``members``; the returned
    group's index i corresponds to ambient element members[i].
    """
    pos = {g: i for i, g in enumerate(members)}
    table = [[pos[group.mul[a][b]] for b in members] for a in members]
    return build_group(table)


# ---------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """Direct sum of Z/d_i, each d_i >= 2; elements are residue vectors.

    The empty factor list is the trivial group, whose only element is ().
    Elements are enumerated lexicographically; ``element_index`` realises the
    mixed-radix bijection used as the canonical order everywhere.
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError("invariant factors must be >= 2")

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.invariant_factors) if self.invariant_factors else 1

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def reduce(self, vec) -> tuple[int, ...]:
        return tuple(int(v) % d for v, d in zip(vec, self.invariant_factors, strict=True))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors, strict=True))

    def neg(self, a) -> tuple[int, ...]:
        return tuple((-x) % d for x, d in zip(a, self.invariant_factors, strict=True))

    def sub(self, a, b) -> tuple[int, ...]:
        return self.add(a, self.neg(b))

    def elements(self):
        """All residue vectors in lexicographic order."""
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def element_index(self, vec) -> int:
        idx = 0
        for v, d in zip(vec, self.invariant_factors, strict=True):
            idx = idx * d + v
        return idx

    def index_element(self, idx: int) -> tuple[int, ...]:
        vec = []
        for d in reversed(self.invariant_factors):
            vec.append(idx % d)
            idx //= d
        return tuple(reversed(vec))

    def multiplication_table(self) -> FiniteGroup:
        """The same group as an explicit table, in element-index order."""
        elems = list(self.elements())
        table = [[self.element_index(self.add(a, b)) for b in elems] for a in elems]
        return build_group(table)

    def __repr__(self) -> str:
        return f"AbelianGroup{self.invariant_factors}"


def abelian_invariants_from_table(group: FiniteGroup) -> tuple[int, ...]:
    """Invariant factors of an abelian group given by its table.

    Matches the multiset of element orders against all candidate factor
    chains; for abelian groups that multiset is a complete invariant.
    """
    if not group.is_abelian():
        raise ValueError("group is not abelian")
    orders = sorted(group.element_order(a) for a in group.elements())

    def chains(total: int, minimum: int):
        if total == 1:
            yield ()
        for d in range(max(2, minimum), total + 1):
            if total % d == 0:
                for rest in chains(total // d, d):
                    yield (d,) + rest

    for chain in chains(group.size, 2):
        candidate = AbelianGroup(chain)
        cand_orders = sorted(
            math.lcm(*(d // math.gcd(d, v) for v, d in zip(vec, chain)), 1)
            for vec in candidate.elements()
        )
        if cand_orders == orders:
            return chain
    raise AssertionError("unreachable: every abelian table matches some chain")


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True)
class GroupAction:
    """An action of a finite group on an abelian group by automorphisms.

    ``matrices[g]`` is a rank x rank integer matrix applied to residue
    vectors; row i is stored reduced mod the i-th invariant factor.
    """

    group: FiniteGroup
    module: AbelianGroup
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def apply(self, g: int, vec) -> tuple[int, ...]:
        mat = self.matrices[g]
        d = self.module.invariant_factors
        return tuple(
            sum(row[j] * vec[j] for j in range(len(row))) % d[i]
            for i, row in enumerate(mat)
        )

    def is_trivial(self) -> bool:
        ident = _identity_matrix(self.module)
        return all(m == ident for m in self.matrices)

    def __repr__(self) -> str:
        kind = "trivial" if self.is_trivial() else "nontrivial"
        return f"GroupAction({kind}, |G|={self.group.size}, A={self.module.invariant_factors})"


def _identity_matrix(module: AbelianGroup) -> tuple[tuple[int, ...], ...]:
    k = module.rank
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def _reduce_matrix(module: AbelianGroup, mat) -> tuple[tuple[int, ...], ...]:
    k = module.rank
    rows = [tuple(int(x) for x in row) for row in mat]
    if len(rows) != k or any(len(r) != k for r in rows):
        raise InvalidAction(f"matrix must be {k}x{k}")
    d = module.invariant_factors
    return tuple(tuple(x % d[i] for x in rows[i]) for i in range(k))


def build_action(group: FiniteGroup, module: AbelianGroup, matrices) -> GroupAction:
    """Validate per-element matrices as a homomorphism G -> Aut(A)."""
    if len(matrices) != group.size:
        raise InvalidAction("one matrix per group element required")
    mats = tuple(_reduce_matrix(module, m) for m in matrices)
    d = module.invariant_factors
    k = module.rank

    for g, mat in enumerate(mats):
        # well-defined on residues: changing a_j by d_j must not move row i mod d_i
        for i in range(k):
            for j in range(k):
                if (mat[i][j] * d[j]) % d[i] != 0:
                    raise InvalidAction(
                        f"matrix for element {g} is not well-defined on Z/{d[j]} -> Z/{d[i]}"
                    )

    action = GroupAction(group=group, module=module, matrices=mats)

    if mats[group.identity] != _identity_matrix(module):
        raise InvalidAction("identity element must act as the identity")
    for g, mat in enumerate(mats):
        seen = {action.apply(g, vec) for vec in module.elements()}
        if len(seen) != module.order:
            raise InvalidAction(f"matrix for element {g} is not invertible")
    for g in group.elements():
        for h in group.elements():
            gh = group.mul[g][h]
            for vec in module.elements():
                if action.apply(gh, vec) != action.apply(g, action.apply(h, vec)):
                    raise InvalidAction(
                        f"matrices do not respect multiplication at ({g}, {h})"
                    )
    return action


def trivial_action(group: FiniteGroup, module: AbelianGroup) -> GroupAction:
    ident = _identity_matrix(module)
    return GroupAction(group=group, module=module, matrices=(ident,) * group.size)


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class Character:
    """A character of A valued in Q/Z: a -> sum_i c_i a_i / d_i."""

    module: AbelianGroup
    components: tuple[int, ...]

    def evaluate(self, vec) -> QZ:
        total = QZ()
        for c, v, d in zip(self.components, vec, self.module.invariant_factors, strict=True):
            total = total + QZ.of(c * v, d)
        return total

    @property
    def index(self) -> int:
        return self.module.element_index(self.components)

    @property
    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.components)

    def __add__(self, other: "Character") -> "Character":
        if self.module != other.module:
            raise MismatchedData("characters live on different modules")
        return Character(self.module, self.module.add(self.components, other.components))

    def __neg__(self) -> "Character":
        return Character(self.module, self.module.neg(self.components))

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __str__(self) -> str:
        return "χ[" + ",".join(str(c) for c in self.components) + "]"


def dual_group(module: AbelianGroup) -> tuple[Character, ...]:
    """All characters, in the canonical lexicographic order."""
    return tuple(Character(module, vec) for vec in module.elements())


def dual_action(action: GroupAction) -> GroupAction:
    """The action on characters: (g . rho)(a) = rho(g^-1 . a).

    The matrix on component vectors is the weighted transpose of the matrix
    of g^-1; the required divisibility is exactly the well-definedness of the
    original matrices.  The result acts on an abelian group with the same
    invariant factors, identified with the character group by component
    vectors.
    """
    module = action.module
    d = module.invariant_factors
    k = module.rank
    group = action.group
    mats = []
    for g in group.elements():
        inv_mat = action.matrices[group.inv[g]]
        rows = []
        for j in range(k):
            row = []
            for i in range(k):
                num = inv_mat[i][j] * d[j]
                assert num % d[i] == 0
                row.append((num // d[i]) % d[j])
            rows.append(tuple(row))
        mats.append(tuple(rows))
    return build_action(group, module, mats)


def act_on_character(dual: GroupAction, g: int, rho: Character) -> Character:
    return Character(rho.module, dual.apply(g, rho.components))


# ---------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class OrbitDecomposition:
    """Orbits of a validated action on its module's element set.

    Orbits are tuples of element indices, sorted internally and ordered by
    their smallest member; the representative of an orbit is that smallest
    index.  ``stabilizers[k]`` is the stabilizer subgroup of orbit k's
    representative, as a sorted tuple of group elements.
    """

    action: GroupAction
    orbits: tuple[tuple[int, ...], ...]
    stabilizers: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.orbits)

    def orbit_of(self, element_index: int) -> int:
        for k, orbit in enumerate(self.orbits):
            if element_index in orbit:
                return k
        raise KeyError(element_index)

    def transporter(self, src_index: int, dst_index: int) -> tuple[int, ...]:
        """All g with g . src = dst (empty when in different orbits)."""
        module = self.action.module
        src = module.index_element(src_index)
        dst = module.index_element(dst_index)
        return tuple(
            g for g in self.action.group.elements() if self.action.apply(g, src) == dst
        )


def orbit_decomposition(action: GroupAction) -> OrbitDecomposition:
    module = action.module
    group = action.group
    remaining = set(range(module.order))
    orbits = []
    stabilizers = []
    while remaining:
        rep = min(remaining)
        rep_vec = module.index_element(rep)
        orbit = set()
        stab = []
        for g in group.elements():
            image = module.element_index(action.apply(g, rep_vec))
            orbit.add(image)
            if image == rep:
                stab.append(g)
        orbits.append(tuple(sorted(orbit)))
        stabilizers.append(tuple(stab))
        remaining -= orbit
    return OrbitDecomposition(action=action, orbits=tuple(orbits), stabilizers=tuple(stabilizers))


# ---------------------------------------------------------------------------
# automorphisms (used by equivalence testing up to relabelling)


@lru_cache(maxsize=None)
def generating_sequence(group: FiniteGroup) -> tuple[int, ...]:
    """A short generating tuple, greedy by element order."""
    gens: tuple[int, ...] = ()
    span = {group.identity}
    for g in sorted(group.elements(), key=group.element_order, reverse=True):
        if g not in span:
            gens = gens + (g,)
            span = set(subgroup_closure(group, gens))
        if len(span) == group.size:
            break
    return gens


def group_automorphisms(group: FiniteGroup, max_order: int | None = None) -> list[tuple[int, ...]]:
    """All automorphisms as permutation tuples (brute force over generators)."""
    bound = group_order_bound(max_order)
    if group.size > bound:
        raise SizeBound("automorphism enumeration", group.size, bound)
    gens = generating_sequence(group)
    if not gens:
        return [(group.identity,)]

    orders = [group.element_order(g) for g in group.elements()]
    autos = []
    candidates = [
        [h for h in group.elements() if orders[h] == orders[g]] for g in gens
    ]
    words: dict[int, tuple[int, ...]] = {group.identity: ()}
    frontier = [group.identity]
    while frontier:
        x = frontier.pop(0)
        for i, g in enumerate(gens):
            y = group.mul[x][g]
            if y not in words:
                words[y] = words[x] + (i,)
                frontier.append(y)

    for images in itertools.product(*candidates):
        perm = []
        ok = True
        for x in group.elements():
            y = group.identity
            for i in words[x]:
                y = group.mul[y][images[i]]
            perm.append(y)
        if len(set(perm)) != group.size:
            continue
        for a in group.elements():
            for b in group.elements():
                if perm[group.mul[a][b]] != group.mul[perm[a]][perm[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            autos.append(tuple(perm))
    return autos


def module_automorphisms(module: AbelianGroup, max_count: int = 1 << 20) -> list[GroupAction]:
    """Automorphisms of an abelian group, each as a single matrix.

    Returned as one-element actions of the trivial group for reuse of the
    matrix plumbing; callers use ``.matrices[0]``.
    """
    k = module.rank
    d = module.invariant_factors
    if module.order == 1:
        return [trivial_action(trivial_group(), module)]
    total = math.prod(d[i] for i in range(k) for _ in range(k))
    if total > max_count:
        raise SizeBound("module automorphism enumeration", total, max_count)
    triv = trivial_group()
    autos = []
    ranges = [range(d[i]) for i in range(k) for _ in range(k)]
    for flat in itertools.product(*ranges):
        mat = tuple(tuple(flat[i * k + j] for j in range(k)) for i in range(k))
        try:
            mats = _reduce_matrix(module, mat)
        except InvalidAction:
            continue
        ok = all((mats[i][j] * d[j]) % d[i] == 0 for i in range(k) for j in range(k))
        if not ok:
            continue
        action = GroupAction(group=triv, module=module, matrices=(mats,))
        seen = {action.apply(0, vec) for vec in module.elements()}
        if len(seen) == module.order:
            autos.append(action)
    return autos
