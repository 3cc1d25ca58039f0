"""Exact integer linear algebra: Smith normal form, kernels, lattice quotients.

Everything here is exact.  Matrices are eliminated with numpy int64 while all
entries stay below a guard bound; if elimination would risk overflow the whole
computation restarts on an object-dtype array holding Python integers, so
results are always arbitrary-precision correct.  Pivots are chosen with
minimal nonzero absolute value to limit entry growth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OperationCancelled

_GUARD = 1 << 30  # int64-safe: |q| * |entry| + |entry| stays below 2^63


class CancelToken:
    """Cooperative cancellation for long-running eliminations."""

    def __init__(self) -> None:
        self.cancelled = False

    def cancel(self) -> None:
        self.cancelled = True

    def check(self) -> None:
        if self.cancelled:
            raise OperationCancelled()


class _NeedExact(Exception):
    """Raised internally when int64 elimination would risk overflow."""


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def as_int_matrix(rows) -> np.ndarray:
    """Copy input into an int64 array, or object dtype if entries are large."""
    if isinstance(rows, np.ndarray) and rows.dtype == np.int64:
        return rows.astype(np.int64, copy=True)
    data = [[int(x) for x in row] for row in rows]
    big = any(abs(x) >= _GUARD for row in data for x in row)
    return np.array(data, dtype=object if big else np.int64)


@dataclass
class SmithForm:
    """S = left @ A @ right with left/right unimodular, S diagonal.

    ``diagonal`` holds min(m, n) entries, nonnegative, each dividing the
    next among the nonzero ones; ``rank`` counts the nonzero entries.
    ``left_inverse`` (optional) is the inverse of ``left``, tracked during
    elimination so callers never invert a transform themselves.
    """

    diagonal: list[int]
    rank: int
    left: np.ndarray | None
    right: np.ndarray | None
    left_inverse: np.ndarray | None = None


def smith_normal_form(
    matrix,
    need_left: bool = True,
    need_right: bool = True,
    need_left_inverse: bool = False,
    cancel: CancelToken | None = None,
) -> SmithForm:
    A = as_int_matrix(matrix)
    try:
        if A.dtype == np.int64:
            return _smith_core(
                A.copy(), need_left, need_right, need_left_inverse, exact=False, cancel=cancel
            )
    except _NeedExact:
        pass
    return _smith_core(
        A.astype(object), need_left, need_right, need_left_inverse, exact=True, cancel=cancel
    )


def _guard(arr: np.ndarray, exact: bool) -> None:
    if not exact and arr.size and int(np.abs(arr).max()) > _GUARD:
        raise _NeedExact()


def _identity(n: int, dtype) -> np.ndarray:
    # np.eye(dtype=object) would hold floats; go through int64
    eye = np.eye(n, dtype=np.int64)
    return eye.astype(dtype) if dtype is not np.int64 else eye


def _smith_core(A, need_left, need_right, need_left_inverse, exact, cancel):
    m, n = A.shape
    dtype = A.dtype
    L = _identity(m, dtype) if need_left else None
    R = _identity(n, dtype) if need_right else None
    Li = _identity(m, dtype) if need_left_inverse else None

    def negate_row(t):
        A[t, :] = -A[t, :]
        if L is not None:
            L[t, :] = -L[t, :]
        if Li is not None:
            Li[:, t] = -Li[:, t]

    def swap_rows(i, j):
        if i != j:
            A[[i, j], :] = A[[j, i], :]
            if L is not None:
                L[[i, j], :] = L[[j, i], :]
            if Li is not None:
                Li[:, [i, j]] = Li[:, [j, i]]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            if R is not None:
                R[:, [i, j]] = R[:, [j, i]]

    def reduce_rows(rows, q, t):
        # rows -= q * row_t; inverse transform adds them back into column t
        A[rows, :] -= q[:, None] * A[t, :]
        _guard(A[rows, :], exact)
        if L is not None:
            L[rows, :] -= q[:, None] * L[t, :]
            _guard(L[rows, :], exact)
        if Li is not None:
            Li[:, t] += np.dot(Li[:, rows], q)
            _guard(Li[:, t], exact)

    rank = 0
    for t in range(min(m, n)):
        if cancel is not None:
            cancel.check()
        sub = A[t:, t:]
        if not sub.size:
            break
        absval = np.abs(sub)
        _guard(sub, exact)
        nz = np.nonzero(absval)
        if len(nz[0]) == 0:
            break
        # minimal nonzero absolute value pivot, to limit entry growth
        vals = absval[nz]
        k = int(np.argmin(vals))
        pi, pj = int(nz[0][k]) + t, int(nz[1][k]) + t
        swap_rows(t, pi)
        swap_cols(t, pj)
        if A[t, t] < 0:
            negate_row(t)

        while True:
            col = A[t + 1 :, t]
            idx = np.nonzero(col)[0]
            if idx.size:
                pivot = int(A[t, t])
                q = col[idx] // pivot
                reduce_rows(idx + t + 1, q, t)
                col = A[t + 1 :, t]
                idx = np.nonzero(col)[0]
                if idx.size:
                    # a remainder smaller than the pivot exists; promote it
                    k = int(np.argmin(np.abs(col[idx])))
                    swap_rows(t, int(idx[k]) + t + 1)
                    if A[t, t] < 0:
                        negate_row(t)
                    continue
            row = A[t, t + 1 :]
            jdx = np.nonzero(row)[0]
            if jdx.size:
                pivot = int(A[t, t])
                q = row[jdx] // pivot
                cols = jdx + t + 1
                A[:, cols] -= q[None, :] * A[:, [t]]
                if R is not None:
                    R[:, cols] -= q[None, :] * R[:, [t]]
                    _guard(R[:, cols], exact)
                _guard(A[:, cols], exact)
                row = A[t, t + 1 :]
                jdx = np.nonzero(row)[0]
                if jdx.size:
                    k = int(np.argmin(np.abs(row[jdx])))
                    swap_cols(t, int(jdx[k]) + t + 1)
                    if A[t, t] < 0:
                        negate_row(t)
                    continue
                # column ops may have disturbed the cleared column
                if np.any(A[t + 1 :, t]):
                    continue
            break
        rank = t + 1

    diag = [int(A[i, i]) for i in range(min(m, n))]
    rank = sum(1 for d in diag if d != 0)

    # enforce the divisibility chain d1 | d2 | ... on the nonzero diagonal
    for i in range(rank):
        if diag[i] == 1:
            continue
        for j in range(i + 1, rank):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            x, y, g = _xgcd(a, b)
            lcm = a // g * b
            if not exact and max(abs(x) * a, abs(y) * b, lcm) > _GUARD:
                raise _NeedExact()
            # col_i += col_j; mix rows i,j; then clear the (i, j) entry
            if R is not None:
                R[:, i] += R[:, j]
                _guard(R[:, i], exact)
            if L is not None:
                li, lj = L[i, :].copy(), L[j, :].copy()
                L[i, :] = x * li + y * lj
                L[j, :] = (-(b // g)) * li + (a // g) * lj
                _guard(L[[i, j], :], exact)
            if Li is not None:
                # inverse of [[x, y], [-b/g, a/g]] is [[a/g, -y], [b/g, x]]
                ci, cj = Li[:, i].copy(), Li[:, j].copy()
                Li[:, i] = (a // g) * ci + (b // g) * cj
                Li[:, j] = (-y) * ci + x * cj
                _guard(Li[:, [i, j]], exact)
            if R is not None:
                R[:, j] -= (y * b // g) * R[:, i]
                _guard(R[:, j], exact)
            diag[i], diag[j] = g, lcm
        # after one sweep diag[i] divides every later entry

    return SmithForm(diagonal=diag, rank=rank, left=L, right=R, left_inverse=Li)


def kernel_basis(matrix, cancel: CancelToken | None = None) -> np.ndarray:
    """Basis (as columns) of the integer kernel lattice {x : A x = 0}."""
    A = as_int_matrix(matrix)
    if A.shape[0] == 0:
        return np.eye(A.shape[1], dtype=np.int64)
    form = smith_normal_form(A, need_left=False, need_right=True, cancel=cancel)
    return form.right[:, form.rank :]


def solve_matrix(matrix, rhs, cancel: CancelToken | None = None) -> np.ndarray | None:
    """One integer solution X of A X = B, or None when none exists."""
    A = as_int_matrix(matrix)
    B = as_int_matrix(rhs)
    if B.ndim == 1:
        B = B[:, None]
    m, n = A.shape
    form = smith_normal_form(A, need_left=True, need_right=True, cancel=cancel)
    C = exact_matmul(form.left, B)
    Y = np.zeros((n, B.shape[1]), dtype=C.dtype)
    for i in range(m):
        d = form.diagonal[i] if i < len(form.diagonal) else 0
        if d == 0:
            if np.any(C[i, :]):
                return None
            continue
        row = C[i, :]
        if np.any(row % d):
            return None
        Y[i, :] = row // d
    if m < n:
        pass  # remaining rows of Y stay zero
    return exact_matmul(form.right, Y)


def exact_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product that never overflows: int64 fast path, else Python ints."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.dtype == np.int64 and B.dtype == np.int64:
        inner = A.shape[1] if A.ndim == 2 else A.shape[0]
        ma = int(np.abs(A).max(initial=0))
        mb = int(np.abs(B).max(initial=0))
        if ma * mb * max(inner, 1) < (1 << 62):
            return A @ B
    return np.dot(A.astype(object), B.astype(object))


def column_lattice_basis(matrix, cancel: CancelToken | None = None) -> np.ndarray:
    """Basis of the lattice spanned by the columns, via column echelon form."""
    A = as_int_matrix(matrix)
    try:
        if A.dtype == np.int64:
            return _column_basis_core(A.copy(), exact=False, cancel=cancel)
    except _NeedExact:
        pass
    return _column_basis_core(as_int_matrix(matrix).astype(object), exact=True, cancel=cancel)


def _column_basis_core(A, exact, cancel):
    m, n = A.shape
    r = 0
    for i in range(m):
        if r == n:
            break
        if cancel is not None:
            cancel.check()
        while True:
            row = A[i, r:]
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                break
            k = int(nz[np.argmin(np.abs(row[nz]))]) + r
            if k != r:
                A[:, [r, k]] = A[:, [k, r]]
            if A[i, r] < 0:
                A[:, r] = -A[:, r]
            jdx = np.nonzero(A[i, r + 1 :])[0]
            if jdx.size == 0:
                break
            cols = jdx + r + 1
            q = A[i, cols] // A[i, r]
            A[:, cols] -= A[:, [r]] * q[None, :]
            _guard(A[:, cols], exact)
            # remainders are smaller than the pivot; loop promotes the least
        if A[i, r] != 0:
            r += 1
    return A[:, :r]


def congruence_kernel(D, row_moduli, col_moduli, cancel: CancelToken | None = None) -> np.ndarray:
    """Generators of the lattice {x : (D x)_r = 0 mod row_moduli[r]}.

    Requires that D carries the diagonal lattice into the row relations,
    i.e. row_moduli[r] divides D[r, i] * col_moduli[i] for all r, i (true
    for lifted differentials by the well-definedness of the module action);
    the solution lattice then contains diag(col_moduli), which keeps every
    intermediate entry reduced and the whole computation in small integers.

    Works by imposing one congruence row at a time on a shrinking column
    basis; unimodular column operations plus a single column scaling per
    binding row realise each constraint.
    """
    D = np.asarray(D, dtype=np.int64)
    rows, n = D.shape
    col_mod = np.asarray(col_moduli, dtype=np.int64)
    B = np.eye(n, dtype=np.int64)
    for r in range(rows):
        if cancel is not None and r % 64 == 0:
            cancel.check()
        d = int(row_moduli[r])
        drow = D[r, :]
        if not drow.any():
            continue
        c = (drow @ B) % d
        if not c.any():
            continue
        while True:
            nzc = np.nonzero(c)[0]
            if nzc.size <= 1:
                break
            p = int(nzc[np.argmin(c[nzc])])
            others = nzc[nzc != p]
            q = c[others] // c[p]
            B[:, others] -= B[:, [p]] * q[None, :]
            B[:, others] %= col_mod[:, None]
            c[others] = (c[others] - q * c[p]) % d
        nzc = np.nonzero(c)[0]
        if nzc.size == 0:
            continue
        p = int(nzc[0])
        scale = d // math.gcd(int(c[p]), d)
        if scale > 1:
            B[:, p] *= scale
            B[:, p] %= col_mod
    return np.hstack([B, np.diag(col_mod)])


def quotient_invariants(
    sup_generators,
    sub_generators,
    need_representatives: bool = False,
    cancel: CancelToken | None = None,
) -> tuple[list[int], list[np.ndarray]]:
    """Invariant factors (each >= 2) of L/S for lattices S <= L in Z^a.

    Both lattices are given by generating columns; L must have full rank a
    and S must have finite index in L (both always hold for the cohomology
    quotients computed here).  Optionally returns one ambient representative
    vector per invariant factor.
    """
    K = column_lattice_basis(sup_generators, cancel=cancel)
    a = K.shape[0]
    if K.shape[1] != a:
        raise ValueError("superlattice does not have full rank")
    Y = solve_matrix(K, sub_generators, cancel=cancel)
    if Y is None:
        raise ValueError("sub_generators do not lie in the superlattice")
    form = smith_normal_form(Y, need_left=need_representatives, need_right=False, cancel=cancel)
    diag = form.diagonal + [0] * (a - len(form.diagonal))
    if any(d == 0 for d in diag[:a]) and form.rank < a:
        raise ValueError("sublattice does not have finite index")
    factors = [d for d in diag if d not in (0, 1)]
    reps: list[np.ndarray] = []
    if need_representatives and factors:
        inv = solve_matrix(form.left, np.eye(a, dtype=np.int64), cancel=cancel)
        assert inv is not None  # left transform is unimodular
        positions = [i for i, d in enumerate(diag) if d not in (0, 1)]
        for i in positions:
            reps.append(exact_matmul(K, inv[:, i : i + 1])[:, 0])
    return factors, reps


def lcm_many(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out
