"""Exact integer matrices and Smith normal form.

The decomposition returned by :func:`smith_normal_form` satisfies
``U * A * V = D`` with ``U`` and ``V`` unimodular and ``D`` diagonal with
nonnegative entries ``d_1 | d_2 | ...``.  Pivoting is deterministic:
the pivot is always the entry of smallest absolute value in the working
submatrix, ties broken row-major, so certificates derived from the
decomposition are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(
            len(r) != self.cols for r in self.entries
        ):
            raise ValueError("entry shape does not match declared dimensions")
        for row in self.entries:
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ValueError(f"matrix entry is not an exact integer: {x!r}")

    @staticmethod
    def from_rows(rows: list[list[int]]) -> "IntegerMatrix":
        m = len(rows)
        n = len(rows[0]) if rows else 0
        return IntegerMatrix(m, n, tuple(tuple(int(x) for x in r) for r in rows))

    @staticmethod
    def identity(n: int) -> "IntegerMatrix":
        return IntegerMatrix(
            n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )

    @staticmethod
    def zero(m: int, n: int) -> "IntegerMatrix":
        return IntegerMatrix(m, n, tuple(tuple(0 for _ in range(n)) for _ in range(m)))

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.entries[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def matmul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = [
            [
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)
            ]
            for i in range(self.rows)
        ]
        return IntegerMatrix.from_rows(out) if out else IntegerMatrix.zero(self.rows, other.cols)

    def matvec(self, vec: list) -> list:
        if self.cols != len(vec):
            raise ValueError("dimension mismatch in matrix-vector product")
        return [
            sum(self.entries[i][k] * vec[k] for k in range(self.cols))
            for i in range(self.rows)
        ]

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)


def determinant(A: IntegerMatrix) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    m = A.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _swap_rows(M: list[list[int]], i: int, j: int) -> None:
    M[i], M[j] = M[j], M[i]


def _swap_cols(M: list[list[int]], i: int, j: int) -> None:
    for row in M:
        row[i], row[j] = row[j], row[i]


def _row_add(M: list[list[int]], dst: int, src: int, factor: int) -> None:
    row_s = M[src]
    row_d = M[dst]
    for k in range(len(row_d)):
        row_d[k] += factor * row_s[k]


def _col_add(M: list[list[int]], dst: int, src: int, factor: int) -> None:
    for row in M:
        row[dst] += factor * row[src]


def _negate_row(M: list[list[int]], i: int) -> None:
    M[i] = [-x for x in M[i]]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b, g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def smith_normal_form(
    A: IntegerMatrix,
) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(U, D, V)`` with ``U @ A @ V = D`` in Smith normal form."""
    m, n = A.rows, A.cols
    D = A.to_lists()
    U = IntegerMatrix.identity(m).to_lists()
    V = IntegerMatrix.identity(n).to_lists()

    def pick_pivot(t: int) -> tuple[int, int] | None:
        best: tuple[int, int, int] | None = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(D[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        return None if best is None else (best[1], best[2])

    t = 0
    while t < min(m, n):
        loc = pick_pivot(t)
        if loc is None:
            break
        while True:
            pi, pj = loc
            if pi != t:
                _swap_rows(D, t, pi)
                _swap_rows(U, t, pi)
            if pj != t:
                _swap_cols(D, t, pj)
                _swap_cols(V, t, pj)
            if D[t][t] < 0:
                _negate_row(D, t)
                _negate_row(U, t)
            piv = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // piv
                    if q:
                        _row_add(D, i, t, -q)
                        _row_add(U, i, t, -q)
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // piv
                    if q:
                        _col_add(D, j, t, -q)
                        _col_add(V, j, t, -q)
            if all(D[i][t] == 0 for i in range(t + 1, m)) and all(
                D[t][j] == 0 for j in range(t + 1, n)
            ):
                break
            loc = pick_pivot(t)
            assert loc is not None
        t += 1

    # Divisibility chain d_i | d_{i+1}; zero diagonal entries go last.
    r = min(m, n)
    changed = True
    while changed:
        changed = False
        for i in range(r):
            for j in range(i + 1, r):
                a, b = D[i][i], D[j][j]
                if a == 0 and b == 0:
                    continue
                if a == 0 and b != 0:
                    _swap_rows(D, i, j)
                    _swap_rows(U, i, j)
                    _swap_cols(D, i, j)
                    _swap_cols(V, i, j)
                    changed = True
                    continue
                if b % a == 0:
                    continue
                # Combine the (i, j) diagonal block into (gcd, lcm).
                _row_add(D, i, j, 1)
                _row_add(U, i, j, 1)
                g, x, y = _egcd(a, b)
                # Unimodular column pair: det = (x*a + y*b)/g = 1.
                for row in (D, V):
                    for rr in row:
                        ci, cj = rr[i], rr[j]
                        rr[i] = x * ci + y * cj
                        rr[j] = (-(b // g)) * ci + (a // g) * cj
                q = (y * b) // g
                _row_add(D, j, i, -q)
                _row_add(U, j, i, -q)
                if D[i][i] < 0:
                    _negate_row(D, i)
                    _negate_row(U, i)
                if D[j][j] < 0:
                    _negate_row(D, j)
                    _negate_row(U, j)
                changed = True

    return (
        IntegerMatrix.from_rows(U),
        IntegerMatrix.from_rows(D),
        IntegerMatrix.from_rows(V),
    )


def invariant_factors(D: IntegerMatrix) -> tuple[int, ...]:
    """Nonzero diagonal entries of a Smith form, in chain order."""
    return tuple(d for d in D.diagonal() if d != 0)


def solve_integer_system(
    A: IntegerMatrix, b: list[int]
) -> tuple[bool, list[int] | tuple]:
    """Solve ``A x = b`` over the integers.

    Returns ``(True, x)`` with an exact solution, or ``(False, residue)``
    where the residue lists the coordinates of ``U b`` that violate
    divisibility by the invariant factors (or are nonzero beyond the
    rank).
    """
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    U, D, V = smith_normal_form(A)
    y = U.matvec([int(v) for v in b])
    diag = D.diagonal()
    residue = []
    z = [0] * D.cols
    for i in range(len(y)):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i] != 0:
                residue.append((i, y[i], 0))
        elif y[i] % d != 0:
            residue.append((i, y[i], d))
        elif i < D.cols:
            z[i] = y[i] // d
    if residue:
        return False, tuple(residue)
    x = [
        sum(V.entries[i][j] * z[j] for j in range(D.cols)) for i in range(V.rows)
    ]
    return True, x
