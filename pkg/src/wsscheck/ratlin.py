"""Exact linear algebra over the rationals.

Everything downstream (filtrations, spectral sequence pages, pairing and
signature checks) reduces to a handful of subspace operations implemented
here.  Matrices are dense with arbitrary-precision rational entries; scalars
are kept as plain ints whenever the value is integral and as
``fractions.Fraction`` otherwise, which keeps the common integer-data case on
the fast native path.  All values are immutable and all operations are pure,
so results can be shared freely between threads.

Canonical forms: a matrix has a unique reduced row echelon form, and a
subspace is always stored with its basis in reduced column echelon form (the
transpose of the RREF of the transposed generator matrix).  Subspace equality
is therefore literal basis equality, and re-running any computation yields
bit-identical results.

Rationals serialize as strings ``"p/q"`` (or ``"p"`` when the denominator is
one) in every file format.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, InvalidForm

Rat = Fraction


def as_rat(x):
    """Coerce an int, Fraction or "p/q" string to a canonical exact scalar."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, str):
        f = Fraction(x)  # ValueError / ZeroDivisionError propagate to callers
        return int(f) if f.denominator == 1 else f
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(x) -> str:
    """Canonical string form "p/q" or "p"."""
    return str(Fraction(x))


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class RatMatrix:
    """Dense matrix of exact rationals, row-major, immutable."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows, *, cols=None):
        rows = [list(r) for r in rows]
        nr = len(rows)
        if nr == 0:
            if cols is None:
                raise DimensionMismatch("column count required for empty matrix")
            return cls(0, cols, ())
        nc = len(rows[0])
        if cols is not None and cols != nc:
            raise DimensionMismatch("declared column count disagrees with rows")
        for r in rows:
            if len(r) != nc:
                raise DimensionMismatch("ragged rows")
        return cls(nr, nc, tuple(as_rat(x) for row in rows for x in row))

    @classmethod
    def from_cols(cls, cols, *, rows=None):
        cols = [list(c) for c in cols]
        if not cols:
            if rows is None:
                raise DimensionMismatch("row count required for empty matrix")
            return cls(rows, 0, ())
        return cls.from_rows(list(zip(*cols)), cols=len(cols))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, vec):
        vec = list(vec)
        return cls(len(vec), 1, tuple(as_rat(x) for x in vec))

    @classmethod
    def block_diag(cls, blocks):
        blocks = list(blocks)
        nr = sum(b.rows for b in blocks)
        nc = sum(b.cols for b in blocks)
        placements = []
        ro = co = 0
        for b in blocks:
            placements.append((ro, co, b))
            ro += b.rows
            co += b.cols
        return cls.assemble(nr, nc, placements)

    @classmethod
    def assemble(cls, rows, cols, placements):
        """Build a rows x cols matrix from (row_offset, col_offset, block) triples."""
        out = [0] * (rows * cols)
        for ro, co, blk in placements:
            if ro + blk.rows > rows or co + blk.cols > cols:
                raise DimensionMismatch("block placement out of range")
            be = blk.entries
            bc = blk.cols
            for i in range(blk.rows):
                base = (ro + i) * cols + co
                brow = be[i * bc:(i + 1) * bc]
                for j in range(bc):
                    v = brow[j]
                    if v:
                        out[base + j] = _norm(out[base + j] + v)
        return cls(rows, cols, tuple(out))

    # -- access ------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def row_list(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col_tuple(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self):
        return [self.col_tuple(j) for j in range(self.cols)]

    def submatrix(self, row_idx, col_idx):
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        ent = tuple(self.entry(i, j) for i in row_idx for j in col_idx)
        return RatMatrix(len(row_idx), len(col_idx), ent)

    def is_zero(self):
        return all(x == 0 for x in self.entries)

    # -- arithmetic ----------------------------------------------------------

    def transpose(self):
        return RatMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in +")
        return RatMatrix(
            self.rows,
            self.cols,
            tuple(_norm(a + b) for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in -")
        return RatMatrix(
            self.rows,
            self.cols,
            tuple(_norm(a - b) for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self):
        return RatMatrix(self.rows, self.cols, tuple(_norm(-a) for a in self.entries))

    def scaled(self, c):
        c = as_rat(c)
        return RatMatrix(self.rows, self.cols, tuple(_norm(c * a) for a in self.entries))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = [0] * (n * p)
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            base = i * p
            for k in range(m):
                av = arow[k]
                if av == 0:
                    continue
                brow = b[k * p:(k + 1) * p]
                for j in range(p):
                    bv = brow[j]
                    if bv:
                        out[base + j] = out[base + j] + av * bv
        return RatMatrix(n, p, tuple(_norm(v) for v in out))

    def matrix_power(self, k):
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        out = RatMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        ent = []
        for i in range(self.rows):
            ent.extend(self.entries[i * self.cols:(i + 1) * self.cols])
            ent.extend(other.entries[i * other.cols:(i + 1) * other.cols])
        return RatMatrix(self.rows, self.cols + other.cols, tuple(ent))

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return RatMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def kron(self, other):
        n, m = self.rows, self.cols
        p, q = other.rows, other.cols
        out = [0] * (n * p * m * q)
        width = m * q
        for i in range(n):
            for j in range(m):
                a = self.entry(i, j)
                if a == 0:
                    continue
                for r in range(p):
                    base = (i * p + r) * width + j * q
                    for c in range(q):
                        b = other.entry(r, c)
                        if b:
                            out[base + c] = _norm(a * b)
        return RatMatrix(n * p, m * q, tuple(out))

    def apply(self, vec):
        """Matrix-vector product, vectors as tuples."""
        vec = list(vec)
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        out = []
        for i in range(self.rows):
            acc = 0
            row = self.entries[i * self.cols:(i + 1) * self.cols]
            for a, x in zip(row, vec):
                if a and x:
                    acc = acc + a * x
            out.append(_norm(acc))
        return tuple(out)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [rat_str(x) for x in self.entries],
        }

    @classmethod
    def from_json_dict(cls, d):
        ent = tuple(as_rat(x) for x in d["entries"])
        return cls(int(d["rows"]), int(d["cols"]), ent)


# -- echelon forms ---------------------------------------------------------


def _int_row(row):
    """Scale a row of ints/Fractions to coprime integers (row-space preserving)."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            d = x.denominator
            den = den * d // gcd(den, d)
    if den == 1:
        ints = [x if type(x) is int else int(x) for x in row]
    else:
        ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        if v:
            g = gcd(g, v)
            if g == 1:
                return ints
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def rref(m: RatMatrix):
    """Reduced row echelon form (pivots 1) and the tuple of pivot columns.

    Internally fraction-free: rows are scaled to coprime integers and the
    elimination uses integer cross-multiplication, dividing out by the pivot
    only at the end.  The result is the canonical RREF over Q.
    """
    nr, nc = m.rows, m.cols
    rows = [_int_row(m.entries[i * nc:(i + 1) * nc]) for i in range(nr)]
    pivots = []
    pr = 0
    for pc in range(nc):
        pivot = None
        for r in range(pr, nr):
            if rows[r][pc]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[pr], rows[pivot] = rows[pivot], rows[pr]
        prow = rows[pr]
        pv = prow[pc]
        for r in range(nr):
            if r == pr:
                continue
            f = rows[r][pc]
            if not f:
                continue
            rr = rows[r]
            new = [pv * a - f * b for a, b in zip(rr, prow)]
            g = 0
            for v in new:
                if v:
                    g = gcd(g, v)
                    if g == 1:
                        break
            rows[r] = [v // g for v in new] if g > 1 else new
        pivots.append(pc)
        pr += 1
        if pr == nr:
            break
    out = []
    for idx in range(nr):
        if idx < len(pivots):
            row = rows[idx]
            pv = row[pivots[idx]]
            if pv == 1:
                out.extend(row)
            else:
                out.extend(_norm(Fraction(v, pv)) for v in row)
        else:
            out.extend([0] * nc)
    return RatMatrix(nr, nc, tuple(out)), tuple(pivots)


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def solve_matrix(a: RatMatrix, b: RatMatrix):
    """Exact solution X of a @ X = b with free variables zero; None if none."""
    if a.rows != b.rows:
        raise DimensionMismatch("solve: row mismatch")
    r, piv = rref(a.hstack(b))
    if any(p >= a.cols for p in piv):
        return None
    out = [[0] * b.cols for _ in range(a.cols)]
    for ri, pc in enumerate(piv):
        for j in range(b.cols):
            out[pc][j] = r.entry(ri, a.cols + j)
    return RatMatrix.from_rows(out, cols=b.cols)


def solve(a: RatMatrix, b):
    """Solve a @ x = b for a vector b (tuple); None if inconsistent."""
    x = solve_matrix(a, RatMatrix.column(b))
    return None if x is None else x.col_tuple(0)


def inverse(m: RatMatrix) -> RatMatrix:
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    x = solve_matrix(m, RatMatrix.identity(m.rows))
    if x is None:
        raise InvalidForm("matrix is singular")
    return x


# -- subspaces ----------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n, basis columns in reduced column echelon form."""

    ambient_dim: int
    basis: RatMatrix

    @property
    def dim(self):
        return self.basis.cols

    @classmethod
    def span(cls, ambient_dim, vectors):
        """Canonical subspace spanned by the given vectors (tuples or a matrix)."""
        if isinstance(vectors, RatMatrix):
            if vectors.rows != ambient_dim:
                raise DimensionMismatch("generator matrix has wrong ambient dim")
            vecs = vectors.columns()
        else:
            vecs = [tuple(v) for v in vectors]
            for v in vecs:
                if len(v) != ambient_dim:
                    raise DimensionMismatch("generator has wrong length")
        r, piv = rref(RatMatrix.from_rows(vecs, cols=ambient_dim))
        cols = [r.row_list(i) for i in range(len(piv))]
        return cls(ambient_dim, RatMatrix.from_cols(cols, rows=ambient_dim))

    @classmethod
    def zero(cls, ambient_dim):
        return cls.span(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, RatMatrix.identity(ambient_dim))

    def contains_vector(self, v) -> bool:
        v = tuple(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector has wrong length")
        if all(x == 0 for x in v):
            return True
        if self.dim == 0:
            return False
        return solve(self.basis, v) is not None

    def to_json_dict(self):
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json_dict()}


def _same_ambient(u: Subspace, w: Subspace):
    if u.ambient_dim != w.ambient_dim:
        raise DimensionMismatch(
            f"ambient dims differ: {u.ambient_dim} vs {w.ambient_dim}"
        )


def kernel(m: RatMatrix) -> Subspace:
    """Basis of {v : m v = 0}; rank-nullity holds by construction."""
    r, piv = rref(m)
    pivset = set(piv)
    cols = []
    for fcol in range(m.cols):
        if fcol in pivset:
            continue
        v = [0] * m.cols
        v[fcol] = 1
        for ri, pc in enumerate(piv):
            x = r.entry(ri, fcol)
            if x:
                v[pc] = _norm(-x)
        cols.append(tuple(v))
    return Subspace.span(m.cols, cols)


def image(m: RatMatrix) -> Subspace:
    """Column space of m."""
    return Subspace.span(m.rows, m.columns())


def intersect(u: Subspace, w: Subspace) -> Subspace:
    _same_ambient(u, w)
    if u.dim == 0 or w.dim == 0:
        return Subspace.zero(u.ambient_dim)
    ker = kernel(u.basis.hstack(w.basis))
    vecs = []
    for idx in range(ker.dim):
        z = ker.basis.col_tuple(idx)
        vecs.append(u.basis.apply(z[:u.dim]))
    return Subspace.span(u.ambient_dim, vecs)


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    _same_ambient(u, w)
    return Subspace.span(u.ambient_dim, u.basis.columns() + w.basis.columns())


def contains(u: Subspace, w: Subspace) -> bool:
    """True iff every basis vector of w lies in u."""
    _same_ambient(u, w)
    if w.dim == 0:
        return True
    if u.dim == 0:
        return False
    return rank(u.basis.hstack(w.basis)) == u.dim


def signature(s: RatMatrix):
    """(positive, negative, zero) inertia of a symmetric matrix.

    Congruence diagonalization with exact pivoting; Sylvester's law makes the
    answer basis-independent.  Never touches floating point.
    """
    if s.rows != s.cols:
        raise InvalidForm("signature requires a square matrix")
    n = s.rows
    a = [[s.entry(i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise InvalidForm("signature requires a symmetric matrix")
    pos = neg = zero = 0
    idx = list(range(n))
    while idx:
        dpivot = None
        for i in idx:
            if a[i][i] != 0:
                dpivot = i
                break
        if dpivot is None:
            off = None
            for i in idx:
                for j in idx:
                    if i != j and a[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                zero += len(idx)
                break
            i, j = off
            # congruence by e_i <- e_i + e_j turns the diagonal entry into 2a_ij
            for k in idx:
                a[i][k] = _norm(a[i][k] + a[j][k])
            for k in idx:
                a[k][i] = _norm(a[k][i] + a[k][j])
            continue
        d = a[dpivot][dpivot]
        if d > 0:
            pos += 1
        else:
            neg += 1
        others = [r for r in idx if r != dpivot]
        colvals = {r: a[r][dpivot] for r in others}
        prow = a[dpivot]
        for r in others:
            fr = colvals[r]
            if not fr:
                continue
            q = Fraction(fr) / Fraction(d)
            ar = a[r]
            for k in others:
                pk = prow[k]
                if pk:
                    ar[k] = _norm(ar[k] - q * pk)
        idx.remove(dpivot)
    return (pos, neg, zero)


def quotient_map(ambient_dim: int, u: Subspace) -> RatMatrix:
    """A surjection Q with kernel exactly u; rows(Q) = ambient_dim - dim u.

    The basis of u is completed greedily by standard basis vectors; Q reads
    off the complement coordinates in the resulting basis.
    """
    if u.ambient_dim != ambient_dim:
        raise DimensionMismatch("subspace has wrong ambient dimension")
    n = ambient_dim
    aug = u.basis.hstack(RatMatrix.identity(n))
    _, piv = rref(aug)
    chosen = [p - u.dim for p in piv if p >= u.dim]
    cols = u.basis.columns() + [
        tuple(1 if i == e else 0 for i in range(n)) for e in chosen
    ]
    t = RatMatrix.from_cols(cols, rows=n)
    tinv = inverse(t)
    return tinv.submatrix(range(u.dim, n), range(n))


def coords_in_span(basis: RatMatrix, v):
    """Coordinates of v in the given basis columns, or None if outside."""
    return solve(basis, v)
