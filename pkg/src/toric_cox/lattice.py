"""Exact integer linear algebra.

Matrices are plain lists of rows of Python ints, so there is no overflow.
Everything here returns fresh objects and never mutates its arguments.

The main entry points are

* :func:`smith_normal_form` and :func:`hermite_normal_form`,
* :func:`kernel_basis`, :func:`solve_integer`, :func:`saturation`,
* :class:`FinAbGroup` (a cokernel ``Z^rows / colspan(m)``) and
  :class:`Subgroup` (a subgroup of such a group, stored canonically).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Matrix = list[list[int]]
Vector = tuple[int, ...]

INFINITE = math.inf


# ---------------------------------------------------------------- basics


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy_matrix(m: Sequence[Sequence[int]]) -> Matrix:
    return [[int(x) for x in row] for row in m]


def transpose(m: Sequence[Sequence[int]], cols: Optional[int] = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        orow = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                brow = b[k]
                for j in range(cols):
                    orow[j] += x * brow[j]
    return out


def matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def shape(m: Sequence[Sequence[int]], cols: Optional[int] = None) -> tuple[int, int]:
    if m:
        return len(m), len(m[0])
    return 0, cols or 0


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return g


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = copy_matrix(m)
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over Q (exact)."""
    return len(hermite_normal_form(m))


def rational_rank(m: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a matrix with Fraction (or int) entries."""
    a = [[Fraction(x) for x in row] for row in m]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / p
                ai, ar = a[i], a[r]
                for j in range(c, cols):
                    ai[j] -= f * ar[j]
        r += 1
    return r


# ------------------------------------------------------- smith normal form


def smith_normal_form(m: Sequence[Sequence[int]], cols: Optional[int] = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U*m*V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with nonnegative
    entries ``d1 | d2 | ...``. Pivots are chosen by smallest absolute value,
    ties broken row-major, so the output is deterministic.
    """
    U, D, V, _ = _snf(m, cols)
    return U, D, V


def _snf(m: Sequence[Sequence[int]], cols: Optional[int] = None):
    rows, ncols = shape(m, cols)
    A = copy_matrix(m)
    U = identity(rows)
    Uinv = identity(rows)
    V = identity(ncols)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
        for row in Uinv:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(rows, ncols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, ncols):
                    x = A[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return U, A, V, Uinv
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, ncols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, ncols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
            for row in Uinv:
                row[t] = -row[t]
    return U, A, V, Uinv


def invariant_factors(m: Sequence[Sequence[int]], cols: Optional[int] = None) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    _, D, _ = smith_normal_form(m, cols)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


# ----------------------------------------------------- hermite normal form


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> list[Vector]:
    """Row-style HNF of the lattice spanned by ``rows``.

    Zero rows are dropped. Pivots are positive and strictly increase in
    column; entries above a pivot lie in ``[0, pivot)``. Two generating sets
    span the same lattice iff their HNFs are equal.
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    p = 0
    for col in range(ncols):
        if p == len(A):
            break
        while True:
            nz = [i for i in range(p, len(A)) if A[i][col]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(A[i][col]), i))
            A[p], A[k] = A[k], A[p]
            done = True
            piv = A[p][col]
            for i in range(p + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // piv
                    A[i] = [x - q * y for x, y in zip(A[i], A[p])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if p < len(A) and A[p][col]:
            if A[p][col] < 0:
                A[p] = [-x for x in A[p]]
            piv = A[p][col]
            for i in range(p):
                q = A[i][col] // piv
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[p])]
            p += 1
    return [tuple(r) for r in A[:p]]


def reduce_mod_lattice(v: Sequence[int], hnf: Sequence[Sequence[int]]) -> Vector:
    """Canonical representative of ``v`` modulo the lattice with basis ``hnf``."""
    w = list(v)
    for row in hnf:
        col = next(j for j, x in enumerate(row) if x)
        q = w[col] // row[col]
        if q:
            w = [x - q * y for x, y in zip(w, row)]
    return tuple(w)


def in_lattice(v: Sequence[int], hnf: Sequence[Sequence[int]]) -> bool:
    return not any(reduce_mod_lattice(v, hnf))


# --------------------------------------------------- kernels and solving


def kernel_basis(m: Sequence[Sequence[int]], cols: Optional[int] = None) -> list[Vector]:
    """HNF basis of the integer kernel ``{x : m x = 0}``."""
    rows, ncols = shape(m, cols)
    if rows == 0:
        return [tuple(r) for r in identity(ncols)]
    U, D, V = smith_normal_form(m, ncols)
    r = sum(1 for i in range(min(rows, ncols)) if D[i][i])
    basis = [tuple(V[i][j] for i in range(ncols)) for j in range(r, ncols)]
    return hermite_normal_form(basis)


def solve_integer(m: Sequence[Sequence[int]], b: Sequence[int], cols: Optional[int] = None) -> Optional[Vector]:
    """Some integer ``x`` with ``m x = b``, or ``None``.

    The particular solution is taken from the Smith form with free
    coordinates set to zero, then reduced modulo the kernel HNF, which
    makes the answer deterministic and small.
    """
    rows, ncols = shape(m, cols)
    if len(b) != rows:
        raise ValueError("right-hand side has wrong length")
    if rows == 0:
        return tuple([0] * ncols)
    U, D, V = smith_normal_form(m, ncols)
    c = matvec(U, b)
    y = [0] * ncols
    for i in range(rows):
        d = D[i][i] if i < ncols else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    x = matvec(V, y)
    return reduce_mod_lattice(x, kernel_basis(m, ncols))


def saturation(rows: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """HNF basis of ``span_Q(rows) ∩ Z^n``."""
    ortho = kernel_basis(list(rows), n) if rows else [tuple(r) for r in identity(n)]
    if not ortho:
        return [tuple(r) for r in identity(n)]
    return kernel_basis(ortho, n)


def lattice_intersection(b1: Sequence[Sequence[int]], b2: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """HNF basis of the intersection of two lattices in ``Z^n``."""
    b1 = [tuple(r) for r in b1 if any(r)]
    b2 = [tuple(r) for r in b2 if any(r)]
    if not b1 or not b2:
        return []
    # y*B1 = z*B2  <=>  (y, z) in ker of [B1; -B2]^T
    stacked = [list(r) for r in b1] + [[-x for x in r] for r in b2]
    ker = kernel_basis(transpose(stacked), len(stacked))
    gens = []
    for w in ker:
        y = w[: len(b1)]
        gens.append(tuple(sum(y[i] * b1[i][j] for i in range(len(b1))) for j in range(n)))
    return hermite_normal_form(gens)


def coordinates_in(v: Sequence[int], basis: Sequence[Sequence[int]]) -> Optional[Vector]:
    """Integer coordinates of ``v`` in the given row basis, if any."""
    if not basis:
        return () if not any(v) else None
    return solve_integer(transpose(basis), v, len(basis))


def unimodular_inverse(m: Sequence[Sequence[int]]) -> Matrix:
    n = len(m)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve_integer(m, e, n)
        if x is None:
            raise ValueError("matrix is not unimodular")
        cols.append(x)
    return transpose(cols)


# ------------------------------------------------------ abelian groups


@dataclass(frozen=True)
class FinAbGroup:
    """The cokernel ``Z^rows / colspan(presentation)``.

    Elements are tuples ``(t_1, ..., t_s, f_1, ..., f_r)``: torsion
    coordinates reduced modulo the invariant factors, then free ones.
    """

    presentation: tuple[tuple[int, ...], ...]
    rows: int
    invariant_factors: tuple[int, ...]
    free_rank: int
    _U: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _Uinv: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _index: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Modulus of each coordinate, 0 for free ones."""
        return self.invariant_factors + (0,) * self.free_rank

    @property
    def order(self) -> float | int:
        if self.free_rank:
            return INFINITE
        return math.prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    @property
    def is_free(self) -> bool:
        return not self.invariant_factors

    def zero(self) -> Vector:
        return (0,) * self.rank

    def reduce(self, x: Sequence[int]) -> Vector:
        return tuple(v % d if d else v for v, d in zip(x, self.moduli))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x: Sequence[int]) -> Vector:
        return self.reduce([-a for a in x])

    def sub(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return self.reduce([a - b for a, b in zip(x, y)])

    def scale(self, k: int, x: Sequence[int]) -> Vector:
        return self.reduce([k * a for a in x])

    def is_element(self, x: Sequence[int]) -> bool:
        return len(x) == self.rank and tuple(x) == self.reduce(x)

    def project(self, v: Sequence[int]) -> Vector:
        """Class of ``v`` in ``Z^rows``."""
        if len(v) != self.rows:
            raise ValueError("vector has wrong length")
        y = matvec(self._U, v)
        return self.reduce([y[i] for i in self._index])

    def lift(self, x: Sequence[int]) -> Vector:
        """A vector of ``Z^rows`` whose class is ``x``."""
        out = [0] * self.rows
        for coord, i in zip(x, self._index):
            if coord:
                for r in range(self.rows):
                    out[r] += coord * self._Uinv[r][i]
        return tuple(out)

    def element_order(self, x: Sequence[int]) -> float | int:
        x = self.reduce(x)
        if any(x[len(self.invariant_factors):]):
            return INFINITE
        o = 1
        for a, d in zip(x, self.invariant_factors):
            o = math.lcm(o, d // math.gcd(a, d))
        return o

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def elements_in_box(self, lo: int, hi: int) -> list[Vector]:
        """Torsion coordinates over all residues, free ones in ``[lo, hi]``."""
        import itertools

        ranges = [range(d) for d in self.invariant_factors]
        ranges += [range(lo, hi + 1)] * self.free_rank
        return [tuple(p) for p in itertools.product(*ranges)]


def cokernel(m: Sequence[Sequence[int]], rows: Optional[int] = None) -> FinAbGroup:
    """The group ``Z^rows / colspan(m)`` with projection and lifts."""
    nrows = len(m) if m else (rows or 0)
    ncols = len(m[0]) if m else 0
    U, D, V, Uinv = _snf(m if m else [[] for _ in range(nrows)], ncols)
    diag = [D[i][i] if i < ncols else 0 for i in range(nrows)]
    tors = [i for i in range(nrows) if diag[i] > 1]
    free = [i for i in range(nrows) if diag[i] == 0]
    return FinAbGroup(
        presentation=tuple(tuple(r) for r in m),
        rows=nrows,
        invariant_factors=tuple(diag[i] for i in tors),
        free_rank=len(free),
        _U=tuple(tuple(r) for r in U),
        _Uinv=tuple(tuple(r) for r in Uinv),
        _index=tuple(tors + free),
    )


def abstract_group(invariants: Sequence[int], free_rank: int) -> FinAbGroup:
    """``Z/d1 + ... + Z^r`` presented by the diagonal matrix."""
    n = len(invariants) + free_rank
    m = zeros(n, len(invariants))
    for i, d in enumerate(invariants):
        m[i][i] = d
    return cokernel(m, n)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup of a :class:`FinAbGroup`.

    Stored as the lattice ``L`` in ``Z^rank`` of all representatives of its
    elements; ``basis`` is the HNF of ``L`` and is what equality compares.
    """

    ambient: FinAbGroup
    basis: tuple[Vector, ...]

    def __init__(self, ambient: FinAbGroup, generators: Iterable[Sequence[int]] = ()):
        gens = [ambient.reduce(g) for g in generators]
        for g in gens:
            if len(g) != ambient.rank:
                raise ValueError("generator has wrong length")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", tuple(hermite_normal_form(gens + _relations(ambient))))

    @classmethod
    def _from_lattice(cls, ambient: FinAbGroup, lattice: Iterable[Sequence[int]]) -> "Subgroup":
        s = object.__new__(cls)
        object.__setattr__(s, "ambient", ambient)
        object.__setattr__(s, "basis", tuple(hermite_normal_form(list(lattice) + _relations(ambient))))
        return s

    @classmethod
    def whole(cls, ambient: FinAbGroup) -> "Subgroup":
        return cls(ambient, [tuple(int(i == j) for j in range(ambient.rank)) for i in range(ambient.rank)])

    @property
    def generators(self) -> list[Vector]:
        """Canonical generating set: reduced HNF rows that are nonzero."""
        out = []
        for row in self.basis:
            g = self.ambient.reduce(row)
            if any(g) and g not in out:
                out.append(g)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"Subgroup({self.ambient.describe()}, generators={self.generators})"

    def contains(self, x: Sequence[int]) -> bool:
        return in_lattice(x, self.basis)

    def issubset(self, other: "Subgroup") -> bool:
        _same_ambient([self, other])
        return all(other.contains(b) for b in self.basis)

    def quotient(self) -> FinAbGroup:
        """``ambient / self``."""
        n = self.ambient.rank
        return cokernel(transpose(list(self.basis), n) if self.basis else zeros(n, 0), n)

    def as_group(self) -> FinAbGroup:
        """``self`` as an abstract group, ``L / R``."""
        rel = _relations(self.ambient)
        coords = [coordinates_in(r, self.basis) for r in rel]
        k = len(self.basis)
        return cokernel(transpose(coords, k) if coords else zeros(k, 0), k)

    @property
    def is_trivial(self) -> bool:
        return not self.generators


def _relations(g: FinAbGroup) -> list[Vector]:
    n = g.rank
    return [tuple(d if j == i else 0 for j in range(n)) for i, d in enumerate(g.invariant_factors)]


def _same_ambient(gs: Sequence[Subgroup]) -> None:
    for s in gs[1:]:
        if s.ambient != gs[0].ambient:
            raise ValueError("subgroups live in different ambient groups")


def subgroup_intersection(gs: Sequence[Subgroup]) -> Subgroup:
    if not gs:
        raise ValueError("need at least one subgroup")
    _same_ambient(gs)
    n = gs[0].ambient.rank
    basis = list(gs[0].basis)
    for s in gs[1:]:
        basis = lattice_intersection(basis, s.basis, n)
    return Subgroup._from_lattice(gs[0].ambient, basis)


def subgroup_sum(gs: Sequence[Subgroup]) -> Subgroup:
    _same_ambient(gs)
    return Subgroup._from_lattice(gs[0].ambient, [b for s in gs for b in s.basis])


def subgroup_index(s: Subgroup) -> float | int:
    """``[ambient : s]``, or :data:`INFINITE`."""
    return s.quotient().order
