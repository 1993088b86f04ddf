"""Exact linear algebra over GF(2) with bit-packed rows.

Matrices store one Python int per row; bit j of a row is the entry in
column j.  Column vectors are plain ints with bit j = coordinate j.
Everything is immutable; all operations return fresh values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional


def _bits(x: int):
    """Iterate over the set bit positions of x, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class BitMatrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        mask = (1 << self.cols) - 1
        for r in self.data:
            if r & ~mask:
                raise ValueError("row exceeds column count")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(rows: int, cols: int) -> "BitMatrix":
        return BitMatrix(rows, cols, (0,) * rows)

    @staticmethod
    def identity(n: int) -> "BitMatrix":
        return BitMatrix(n, n, tuple(1 << i for i in range(n)))

    @staticmethod
    def from_rows(entries: Iterable[Iterable[int]], cols: Optional[int] = None) -> "BitMatrix":
        data = []
        width = cols
        for row in entries:
            row = list(row)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("ragged rows")
            data.append(sum((b & 1) << j for j, b in enumerate(row)))
        if width is None:
            width = 0
        return BitMatrix(len(data), width, tuple(data))

    @staticmethod
    def from_ints(rows: int, cols: int, data: Iterable[int]) -> "BitMatrix":
        return BitMatrix(rows, cols, tuple(data))

    # -- basic access ------------------------------------------------------

    def row(self, i: int) -> int:
        return self.data[i]

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def is_zero(self) -> bool:
        return not any(self.data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(r == 1 << i for i, r in enumerate(self.data))

    # -- arithmetic --------------------------------------------------------

    def add(self, other: "BitMatrix") -> "BitMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def mul(self, other: "BitMatrix") -> "BitMatrix":
        """Matrix product self @ other over GF(2)."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch in mul")
        out = []
        for r in self.data:
            acc = 0
            for j in _bits(r):
                acc ^= other.data[j]
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: int) -> int:
        """Matrix times column vector: bit i of the result is <row_i, v>."""
        out = 0
        for i, r in enumerate(self.data):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            for j in _bits(r):
                out[j] |= 1 << i
        return BitMatrix(self.cols, self.rows, tuple(out))

    # -- block assembly ----------------------------------------------------

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        data = tuple(a | (b << self.cols) for a, b in zip(self.data, other.data))
        return BitMatrix(self.rows, self.cols + other.cols, data)

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return BitMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    @staticmethod
    def block_diag(blocks: Iterable["BitMatrix"]) -> "BitMatrix":
        data: list[int] = []
        rows = cols = 0
        for b in blocks:
            data.extend(r << cols for r in b.data)
            rows += b.rows
            cols += b.cols
        return BitMatrix(rows, cols, tuple(data))

    def kron(self, other: "BitMatrix") -> "BitMatrix":
        """Kronecker product; index (i1, i2) maps to i1 * other.rows + i2."""
        data = []
        for r1 in self.data:
            expand = 0
            for j in _bits(r1):
                expand |= ((1 << other.cols) - 1) << (j * other.cols)
            for r2 in other.data:
                row = 0
                for j in _bits(r1):
                    row |= r2 << (j * other.cols)
                data.append(row)
        return BitMatrix(self.rows * other.rows, self.cols * other.cols, tuple(data))

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "BitMatrix":
        cols = list(col_idx)
        rows_sel = [self.data[i] for i in row_idx]
        k = len(cols)
        if k == 0 or not rows_sel:
            return BitMatrix(len(rows_sel), k, (0,) * len(rows_sel))
        if all(b > a for a, b in zip(cols, cols[1:])):
            # splice maximal contiguous runs with mask-and-shift per row
            runs = []
            start = prev = cols[0]
            for j in cols[1:]:
                if j == prev + 1:
                    prev = j
                else:
                    runs.append((start, prev - start + 1))
                    start = prev = j
            runs.append((start, prev - start + 1))
            out = []
            for r in rows_sel:
                acc = 0
                pos = 0
                for a, width in runs:
                    acc |= ((r >> a) & ((1 << width) - 1)) << pos
                    pos += width
                out.append(acc)
            return BitMatrix(len(out), k, tuple(out))
        out = []
        for r in rows_sel:
            v = 0
            for kk, j in enumerate(cols):
                if (r >> j) & 1:
                    v |= 1 << kk
            out.append(v)
        return BitMatrix(len(out), k, tuple(out))

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["BitMatrix", tuple[int, ...]]:
        """Reduced row-echelon form and the pivot column indices."""
        work = list(self.data)
        pivots = []
        prow = 0
        for col in range(self.cols):
            sel = None
            for r in range(prow, len(work)):
                if (work[r] >> col) & 1:
                    sel = r
                    break
            if sel is None:
                continue
            work[prow], work[sel] = work[sel], work[prow]
            for r in range(len(work)):
                if r != prow and ((work[r] >> col) & 1):
                    work[r] ^= work[prow]
            pivots.append(col)
            prow += 1
            if prow == len(work):
                break
        return BitMatrix(self.rows, self.cols, tuple(work)), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "BitMatrix":
        """Basis of the null space {x : self @ x = 0}, one vector per row."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        basis = []
        for f in free:
            v = 1 << f
            for i, p in enumerate(pivots):
                if (red.data[i] >> f) & 1:
                    v |= 1 << p
            basis.append(v)
        return BitMatrix(len(basis), self.cols, tuple(basis))

    def solve(self, b: int) -> Optional[int]:
        """Some x with self @ x = b, or None if the system is inconsistent."""
        return self.solve_many((b,))[0]

    def solve_many(self, bs) -> list[Optional[int]]:
        """Solve self @ x = b for several right-hand sides with one elimination."""
        bs = tuple(bs)
        k = len(bs)
        if k == 0:
            return []
        aug_rows = []
        for i, r in enumerate(self.data):
            extra = 0
            for j, b in enumerate(bs):
                extra |= ((b >> i) & 1) << j
            aug_rows.append(r | (extra << self.cols))
        red, pivots = BitMatrix(self.rows, self.cols + k, tuple(aug_rows)).rref()
        n_piv = 0
        for p in pivots:
            if p < self.cols:
                n_piv += 1
            else:
                break
        # rows past the coefficient pivots witness inconsistent right-hand sides
        bad = 0
        for i in range(n_piv, self.rows):
            bad |= red.data[i] >> self.cols
        out: list[Optional[int]] = []
        for j in range(k):
            if (bad >> j) & 1:
                out.append(None)
                continue
            x = 0
            for i in range(n_piv):
                if (red.data[i] >> (self.cols + j)) & 1:
                    x |= 1 << pivots[i]
            out.append(x)
        return out

    def inverse(self) -> Optional["BitMatrix"]:
        if self.rows != self.cols:
            return None
        n = self.rows
        aug = self.hstack(BitMatrix.identity(n))
        red, pivots = aug.rref()
        if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
            return None
        mask = (1 << n) - 1
        return BitMatrix(n, n, tuple((r >> n) & mask for r in red.data[:n]))


def solve_system(rows: list[int], n_unknowns: int, rhs: Optional[list[int]] = None) -> Optional[int]:
    """Solve a sparse GF(2) system given as bitmask rows; rhs defaults to 0."""
    if rhs is None:
        rhs = [0] * len(rows)
    mat = BitMatrix(len(rows), n_unknowns, tuple(rows))
    b = sum((v & 1) << i for i, v in enumerate(rhs))
    return mat.solve(b)


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(2)^ambient with basis rows in reduced echelon form.

    The stored basis is canonical: two subspaces are equal iff their
    dataclass fields are bit-identical.
    """

    ambient: int
    basis: BitMatrix

    def __post_init__(self):
        if self.basis.cols != self.ambient:
            raise ValueError("basis width mismatch")

    @staticmethod
    def span(ambient: int, vectors: Iterable[int]) -> "Subspace":
        mat = BitMatrix(0, ambient, ())
        vecs = tuple(vectors)
        if vecs:
            mat = BitMatrix(len(vecs), ambient, vecs)
        red, pivots = mat.rref()
        return Subspace(ambient, BitMatrix(len(pivots), ambient, red.data[: len(pivots)]))

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(ambient, BitMatrix(0, ambient, ()))

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(ambient, BitMatrix.identity(ambient))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def vectors(self) -> tuple[int, ...]:
        return self.basis.data

    def reduce(self, v: int) -> int:
        """Canonical residue of v modulo this subspace."""
        for b in self.basis.data:
            pivot = b & -b
            if v & pivot:
                v ^= b
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis.data)

    def coords(self, v: int) -> Optional[int]:
        """Coefficients of v in the stored basis, or None if v is outside."""
        out = 0
        for i, b in enumerate(self.basis.data):
            pivot = b & -b
            if v & pivot:
                v ^= b
                out |= 1 << i
        return out if v == 0 else None

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Subspace.span(self.ambient, self.basis.data + other.basis.data)

    def perp(self) -> "Subspace":
        """Orthogonal complement for the standard dot product."""
        return _perp_cached(self)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return self.perp().add(other.perp()).perp()

    def complement(self) -> "Subspace":
        """Complement spanned by the non-pivot coordinates (deterministic)."""
        pivots = {b.bit_length() - 1 for b in (r & -r for r in self.basis.data)}
        vecs = [1 << j for j in range(self.ambient) if j not in pivots]
        return Subspace.span(self.ambient, vecs)

    def map_through(self, m: BitMatrix) -> "Subspace":
        """Image of this subspace under the matrix m (acting on columns)."""
        if m.cols != self.ambient:
            raise ValueError("shape mismatch")
        return Subspace.span(m.rows, tuple(m.apply(v) for v in self.basis.data))


@lru_cache(maxsize=65536)
def _perp_cached(s: "Subspace") -> "Subspace":
    return Subspace.span(s.ambient, s.basis.kernel().data)


def image(m: BitMatrix) -> Subspace:
    """Column space of m as a subspace of GF(2)^rows."""
    return Subspace.span(m.rows, m.transpose().data)


def kernel_space(m: BitMatrix) -> Subspace:
    return Subspace.span(m.cols, m.kernel().data)


@dataclass(frozen=True)
class C2Module:
    """Finite-dimensional module over the group algebra of the order-2 group.

    sigma is the matrix of the involution generator.
    """

    dim: int
    sigma: BitMatrix

    def __post_init__(self):
        if self.sigma.rows != self.dim or self.sigma.cols != self.dim:
            raise ValueError("sigma shape mismatch")
        if not self.sigma.mul(self.sigma).is_identity():
            raise ValueError("sigma is not an involution")

    @staticmethod
    def trivial(n: int = 1) -> "C2Module":
        return C2Module(n, BitMatrix.identity(n))

    @staticmethod
    def free(b: int = 1) -> "C2Module":
        swap = BitMatrix.from_rows([[0, 1], [1, 0]])
        return C2Module(2 * b, BitMatrix.block_diag([swap] * b))

    @staticmethod
    def standard(a: int, b: int) -> "C2Module":
        """Direct sum of a trivial and b free summands, in that block order."""
        blocks = [BitMatrix.identity(a)] if a else []
        swap = BitMatrix.from_rows([[0, 1], [1, 0]])
        blocks.extend([swap] * b)
        return C2Module(a + 2 * b, BitMatrix.block_diag(blocks))

    def is_zero(self) -> bool:
        return self.dim == 0

    def norm(self) -> BitMatrix:
        """The matrix 1 + sigma."""
        return self.sigma.add(BitMatrix.identity(self.dim))

    def direct_sum(self, other: "C2Module") -> "C2Module":
        return C2Module(self.dim + other.dim, BitMatrix.block_diag([self.sigma, other.sigma]))

    def tensor(self, other: "C2Module") -> "C2Module":
        return C2Module(self.dim * other.dim, self.sigma.kron(other.sigma))

    def dual(self) -> "C2Module":
        return C2Module(self.dim, self.sigma.transpose())

    def module_split(self) -> tuple[int, int]:
        """Multiplicities (a, b) of the trivial and the free indecomposable."""
        b = self.norm().rank()
        return self.dim - 2 * b, b

    def standard_split(self) -> tuple[int, int, BitMatrix]:
        """Explicit splitting: (a, b, U) with U an isomorphism standard(a, b) -> self.

        Columns of U are the images of the standard basis vectors.
        """
        n = self.norm()
        img = image(n)
        b = img.dim
        a = self.dim - 2 * b
        free_cols = []
        for v in n.solve_many(img.basis.data):
            free_cols.append((v, self.sigma.apply(v)))
        fixed = kernel_space(n)
        # Extend the norm image to a basis of the fixed subspace.
        seen = img
        trivial_cols = []
        for w in fixed.basis.data:
            if not seen.contains(w):
                trivial_cols.append(w)
                seen = seen.add(Subspace.span(self.dim, (w,)))
        cols = trivial_cols + [c for pair in free_cols for c in pair]
        u_mat = BitMatrix(len(cols), self.dim, tuple(cols)).transpose()
        if u_mat.inverse() is None:
            raise AssertionError("standard_split produced a singular basis")
        return a, b, u_mat


def equivariance_rows(target: C2Module, source: C2Module) -> tuple[int, ...]:
    """Linear constraints on X (target.dim x source.dim, row-major unknowns)
    expressing sigma_target @ X = X @ sigma_source."""
    if source.dim <= 16 and target.dim <= 16:
        return _equivariance_rows_cached(target, source)
    return _equivariance_rows_raw(target, source)


@lru_cache(maxsize=4096)
def _equivariance_rows_cached(target, source):
    return _equivariance_rows_raw(target, source)


def _equivariance_rows_raw(target: C2Module, source: C2Module) -> tuple[int, ...]:
    da, db = source.dim, target.dim
    sa, sb = source.sigma, target.sigma
    sa_t = sa.transpose()
    rows = []
    for i in range(db):
        for j in range(da):
            r = 0
            for k in _bits(sb.data[i]):
                r ^= 1 << (k * da + j)
            for k in _bits(sa_t.data[j]):
                r ^= 1 << (i * da + k)
            if r:
                rows.append(r)
    return tuple(rows)


def hom_basis_c2(source: C2Module, target: C2Module) -> list[BitMatrix]:
    """Basis of the space of equivariant matrices source -> target."""
    da, db = source.dim, target.dim
    if da == 0 or db == 0:
        return []
    rows = equivariance_rows(target, source)
    sol = BitMatrix(len(rows), db * da, tuple(rows)).kernel() if rows \
        else BitMatrix.identity(db * da)
    out = []
    for v in sol.data:
        out.append(BitMatrix(db, da, tuple((v >> (i * da)) & ((1 << da) - 1) for i in range(db))))
    return out


def quotient_module(module: C2Module, sub: Subspace, below: Subspace) -> tuple[C2Module, BitMatrix]:
    """Subquotient sub/below with the induced involution.

    Returns (Q, reps) where rows of reps are coset representatives in the
    ambient coordinates of `module`.  Requires below <= sub, both stable.
    """
    if not sub.contains_space(below):
        raise ValueError("not a subquotient: below is not contained in sub")
    reps = []
    residue = below
    for v in sub.basis.data:
        if residue.reduce(v):
            reps.append(v)
            residue = residue.add(Subspace.span(module.dim, (v,)))
    k = len(reps)
    solver = BitMatrix(k + below.dim, module.dim, tuple(reps) + below.basis.data).transpose()
    coeffs = solver.solve_many(module.sigma.apply(v) for v in reps)
    rows = []
    for coeff in coeffs:
        if coeff is None:
            raise ValueError("subquotient is not sigma-stable")
        rows.append(coeff & ((1 << k) - 1))
    sigma_q = BitMatrix(k, k, tuple(rows)).transpose()
    return C2Module(k, sigma_q), BitMatrix(k, module.dim, tuple(reps))


def induced_map(reps_src: BitMatrix, reps_tgt: BitMatrix, below_tgt: Subspace, m: BitMatrix) -> BitMatrix:
    """Matrix induced on subquotients by m, in the given representative bases."""
    k_tgt = reps_tgt.rows
    solver = BitMatrix(k_tgt + below_tgt.dim, m.rows, reps_tgt.data + below_tgt.basis.data).transpose()
    cols = []
    for coeff in solver.solve_many(m.apply(v) for v in reps_src.data):
        if coeff is None:
            raise ValueError("map does not descend to subquotient")
        cols.append(coeff & ((1 << k_tgt) - 1))
    return BitMatrix(len(cols), k_tgt, tuple(cols)).transpose()
