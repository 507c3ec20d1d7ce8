"""Sparse exact matrices and fraction-free elimination.

Matrices hold ExactScalar (or FloatScalar) entries in row dicts; stored
zeros are never kept, so equality is structural.  Rank/kernel go through
Bareiss-style fraction-free elimination after clearing denominators, which
keeps intermediate entries polynomially sized.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .scalars import ExactScalar, FloatScalar, ZERO, ONE, rat


class Matrix:
    """Sparse matrix over ExactScalar (exact=True) or FloatScalar."""

    __slots__ = ("nrows", "ncols", "rows", "exact")

    def __init__(self, nrows: int, ncols: int, exact: bool = True):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [dict() for _ in range(nrows)]
        self.exact = exact

    # -- construction --

    @staticmethod
    def zeros(nrows: int, ncols: int, exact: bool = True) -> "Matrix":
        return Matrix(nrows, ncols, exact)

    @staticmethod
    def identity(n: int, exact: bool = True) -> "Matrix":
        m = Matrix(n, n, exact)
        one = ONE if exact else FloatScalar(1.0)
        for i in range(n):
            m.rows[i][i] = one
        return m

    @staticmethod
    def from_rows(data, exact: bool = True) -> "Matrix":
        """Build from a list of lists; entries coerced via rat()/FloatScalar."""
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        m = Matrix(nrows, ncols, exact)
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                m.set(i, j, v)
        return m

    def _coerce_entry(self, v):
        if self.exact:
            if isinstance(v, ExactScalar):
                return v
            return rat(v) if isinstance(v, (int, Fraction, str)) else ExactScalar(v)
        return v if isinstance(v, FloatScalar) else FloatScalar(v)

    def set(self, i: int, j: int, v) -> None:
        v = self._coerce_entry(v)
        if v.is_zero():
            self.rows[i].pop(j, None)
        else:
            self.rows[i][j] = v

    def get(self, i: int, j: int):
        v = self.rows[i].get(j)
        if v is None:
            return ZERO if self.exact else FloatScalar(0.0)
        return v

    def copy(self) -> "Matrix":
        m = Matrix(self.nrows, self.ncols, self.exact)
        m.rows = [dict(r) for r in self.rows]
        return m

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    # -- algebra --

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        out = self.copy()
        for i, row in enumerate(other.rows):
            orow = out.rows[i]
            for j, v in row.items():
                w = orow.get(j)
                s = v if w is None else w + v
                if s.is_zero():
                    orow.pop(j, None)
                else:
                    orow[j] = s
        return out

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        out = Matrix(self.nrows, self.ncols, self.exact)
        out.rows = [{j: -v for j, v in r.items()} for r in self.rows]
        return out

    def scale(self, s) -> "Matrix":
        s = self._coerce_entry(s)
        out = Matrix(self.nrows, self.ncols, self.exact)
        if s.is_zero():
            return out
        out.rows = [{j: s * v for j, v in r.items()} for r in self.rows]
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = Matrix(self.nrows, other.ncols, self.exact)
        for i, arow in enumerate(self.rows):
            if not arow:
                continue
            acc: dict = {}
            for k, av in arow.items():
                brow = other.rows[k]
                for j, bv in brow.items():
                    prod = av * bv
                    cur = acc.get(j)
                    acc[j] = prod if cur is None else cur + prod
            out.rows[i] = {j: v for j, v in acc.items() if not v.is_zero()}
        return out

    def transpose(self) -> "Matrix":
        out = Matrix(self.ncols, self.nrows, self.exact)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out.rows[j][i] = v
        return out

    def dagger(self) -> "Matrix":
        """Conjugate transpose."""
        out = Matrix(self.ncols, self.nrows, self.exact)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out.rows[j][i] = v.conjugate()
        return out

    def kron(self, other: "Matrix") -> "Matrix":
        out = Matrix(self.nrows * other.nrows, self.ncols * other.ncols,
                     self.exact)
        for i1, r1 in enumerate(self.rows):
            for j1, v1 in r1.items():
                for i2, r2 in enumerate(other.rows):
                    orow = out.rows[i1 * other.nrows + i2]
                    for j2, v2 in r2.items():
                        p = v1 * v2
                        if not p.is_zero():
                            orow[j1 * other.ncols + j2] = p
        return out

    def trace(self):
        t = ZERO if self.exact else FloatScalar(0.0)
        for i in range(min(self.nrows, self.ncols)):
            v = self.rows[i].get(i)
            if v is not None:
                t = t + v
        return t

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.exact == other.exact
                and all(a == b for a, b in zip(self.rows, other.rows)))

    def __hash__(self):
        return hash((self.shape,
                     tuple(tuple(sorted(r.items())) for r in self.rows)))

    def max_abs_dev(self, other: "Matrix") -> float:
        """Largest |a_ij - b_ij| as floats; for float-mode comparisons."""
        self._check_same_shape(other)
        dev = 0.0
        for i in range(self.nrows):
            cols = set(self.rows[i]) | set(other.rows[i])
            for j in cols:
                dev = max(dev, abs(self.get(i, j).to_complex()
                                   - other.get(i, j).to_complex()))
        return dev

    def is_scalar_multiple_of_identity(self):
        """Return the scalar if self == s*I, else None."""
        if self.nrows != self.ncols:
            return None
        if self.nrows == 0:
            return ZERO if self.exact else FloatScalar(0.0)
        s = self.get(0, 0)
        expect = Matrix.identity(self.nrows, self.exact).scale(s)
        return s if self == expect else None

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # -- conversions --

    def to_dense(self):
        return [[self.get(i, j) for j in range(self.ncols)]
                for i in range(self.nrows)]

    def to_complex(self):
        import numpy as np
        arr = np.zeros((self.nrows, self.ncols), dtype=complex)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                arr[i, j] = v.to_complex()
        return arr

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def kron(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)


# -- fraction-free elimination ---------------------------------------------


def _clear_denominators(m: Matrix) -> Matrix:
    """Scale each row by a positive integer so entries lie in Z[i, sqrt2]."""
    out = m.copy()
    for row in out.rows:
        if not row:
            continue
        lcm = 1
        for v in row.values():
            d = v._den
            lcm = lcm * d // gcd(lcm, d)
        if lcm != 1:
            s = rat(lcm)
            for j in list(row):
                row[j] = row[j] * s
    return out


def _divexact(x: ExactScalar, y: ExactScalar) -> ExactScalar:
    z = x / y
    if z._den != 1:
        raise ArithmeticError("non-exact division in fraction-free step")
    return z


def _bareiss_step(u: Matrix, prow: int, col: int, prev: ExactScalar):
    """One fraction-free elimination step on all rows below prow.

    Rows with a zero pivot-column entry still get the pval/prev rescale;
    Bareiss exactness relies on updating the whole remaining block.
    """
    pivot_row = u.rows[prow]
    pval = pivot_row[col]
    same_scale = pval == prev
    for i in range(prow + 1, u.nrows):
        row = u.rows[i]
        xval = row.pop(col, None)
        if xval is None:
            if same_scale or not row:
                continue
            for j in list(row):
                v = _divexact(row[j] * pval, prev)
                if v.is_zero():
                    del row[j]
                else:
                    row[j] = v
            continue
        cols = set(row) | set(pivot_row)
        cols.discard(col)
        for j in cols:
            a = row.get(j, ZERO)
            b = pivot_row.get(j, ZERO)
            v = _divexact(a * pval - xval * b, prev)
            if v.is_zero():
                row.pop(j, None)
            else:
                row[j] = v
    return pval


def echelon(m: Matrix):
    """Fraction-free row echelon form.

    Returns (U, pivots) where pivots is a list of (row, col) pairs; U is a
    working copy with exact ring entries (exact mode) or floats.
    """
    if not m.exact:
        return _echelon_float(m)
    u = _clear_denominators(m)
    pivots = []
    prev = ONE
    prow = 0
    for col in range(u.ncols):
        piv = None
        for i in range(prow, u.nrows):
            if col in u.rows[i]:
                piv = i
                break
        if piv is None:
            continue
        if piv != prow:
            u.rows[prow], u.rows[piv] = u.rows[piv], u.rows[prow]
        prev = _bareiss_step(u, prow, col, prev)
        pivots.append((prow, col))
        prow += 1
        if prow == u.nrows:
            break
    return u, pivots


def _echelon_float(m: Matrix):
    u = m.copy()
    pivots = []
    prow = 0
    for col in range(u.ncols):
        best, bmag = None, 1e-10
        for i in range(prow, u.nrows):
            v = u.rows[i].get(col)
            if v is not None and abs(v.v) > bmag:
                best, bmag = i, abs(v.v)
        if best is None:
            continue
        if best != prow:
            u.rows[prow], u.rows[best] = u.rows[best], u.rows[prow]
        pval = u.rows[prow][col]
        for i in range(prow + 1, u.nrows):
            row = u.rows[i]
            xval = row.pop(col, None)
            if xval is None:
                continue
            f = xval / pval
            for j, b in u.rows[prow].items():
                if j == col:
                    continue
                nv = row.get(j, FloatScalar(0.0)) - f * b
                if nv.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = nv
        pivots.append((prow, col))
        prow += 1
        if prow == u.nrows:
            break
    return u, pivots


def rank(m: Matrix) -> int:
    return len(echelon(m)[1])


def kernel(m: Matrix) -> Matrix:
    """Right kernel basis, ncols x k.

    Free coordinates carry an identity block: for the j-th free column f_j
    the basis vector has entry 1 at f_j and 0 at the other free columns, so
    coordinates w.r.t. this basis can be read off the free rows.
    """
    u, pivots = echelon(m)
    pivot_cols = [c for _, c in pivots]
    free_cols = [j for j in range(m.ncols) if j not in set(pivot_cols)]
    out = Matrix(m.ncols, len(free_cols), m.exact)
    one = ONE if m.exact else FloatScalar(1.0)
    for k, f in enumerate(free_cols):
        x = {f: one}
        for (r, c) in reversed(pivots):
            acc = None
            row = u.rows[r]
            for j, v in row.items():
                if j == c:
                    continue
                xv = x.get(j)
                if xv is not None:
                    t = v * xv
                    acc = t if acc is None else acc + t
            if acc is not None and not acc.is_zero():
                x[c] = -acc / row[c]
        for j, v in x.items():
            if not v.is_zero():
                out.rows[j][k] = v
    return out


def rank_and_kernel(m: Matrix):
    return rank(m), kernel(m)


def column_space_rank(*mats: Matrix) -> int:
    """Rank of the concatenation [A | B | ...]."""
    nrows = mats[0].nrows
    total = sum(mm.ncols for mm in mats)
    cat = Matrix(nrows, total, mats[0].exact)
    off = 0
    for mm in mats:
        if mm.nrows != nrows:
            raise ValueError("row mismatch in concatenation")
        for i, row in enumerate(mm.rows):
            for j, v in row.items():
                cat.rows[i][off + j] = v
        off += mm.ncols
    return rank(cat)


def intersection_dim(a: Matrix, b: Matrix) -> int:
    """dim(colspace(a) & colspace(b)) by inclusion-exclusion on ranks."""
    ra, rb = rank(a), rank(b)
    return ra + rb - column_space_rank(a, b)


def is_positive_definite(h: Matrix) -> bool:
    """Exact Sylvester test: all leading principal minors > 0.

    Requires a Hermitian matrix; minors are checked to be real and their
    signs evaluated exactly in Q(sqrt2).
    """
    if h.nrows != h.ncols:
        raise ValueError("not square")
    if not h.exact:
        import numpy as np
        try:
            np.linalg.cholesky(h.to_complex())
            return True
        except np.linalg.LinAlgError:
            return False
    if h != h.dagger():
        raise ValueError("not Hermitian")
    if h.nrows == 0:
        return True
    # global denominator clearing keeps minors positive-scaled
    lcm = 1
    for row in h.rows:
        for v in row.values():
            d = v._den
            lcm = lcm * d // gcd(lcm, d)
    u = h.scale(lcm) if lcm != 1 else h.copy()
    prev = ONE
    for k in range(u.nrows):
        pval = u.rows[k].get(k)
        if pval is None or pval.is_zero():
            return False
        if pval.sign_real() <= 0:
            return False
        prev = _bareiss_step(u, k, k, prev)
    return True


def leading_principal_minors(h: Matrix):
    """Exact leading principal minors d_1..d_n via Bareiss pivots.

    Returns None entries past the first singular leading block.
    """
    if not h.exact or h.nrows != h.ncols:
        raise ValueError("exact square matrix required")
    lcm = 1
    for row in h.rows:
        for v in row.values():
            d = v._den
            lcm = lcm * d // gcd(lcm, d)
    u = h.scale(lcm) if lcm != 1 else h.copy()
    scale_back = rat(Fraction(1, lcm)) if lcm != 1 else ONE
    minors = []
    prev = ONE
    for k in range(u.nrows):
        pval = u.rows[k].get(k)
        if pval is None or pval.is_zero():
            minors.append(None)
            break
        # Bareiss pivot at step k is the (k+1)-st leading minor of u = lcm*h
        minors.append(pval * _power(scale_back, k + 1))
        prev = _bareiss_step(u, k, k, prev)
    while len(minors) < u.nrows:
        minors.append(None)
    return minors


def _power(x: ExactScalar, k: int) -> ExactScalar:
    out = ONE
    for _ in range(k):
        out = out * x
    return out


def determinant(m: Matrix) -> ExactScalar:
    """Exact determinant via fraction-free elimination with row swaps."""
    if m.nrows != m.ncols:
        raise ValueError("not square")
    if m.nrows == 0:
        return ONE
    lcm = 1
    for row in m.rows:
        for v in row.values():
            d = v._den
            lcm = lcm * d // gcd(lcm, d)
    u = m.scale(lcm) if lcm != 1 else m.copy()
    sign = 1
    prev = ONE
    for k in range(u.nrows):
        piv = None
        for i in range(k, u.nrows):
            if k in u.rows[i]:
                piv = i
                break
        if piv is None:
            return ZERO
        if piv != k:
            u.rows[k], u.rows[piv] = u.rows[piv], u.rows[k]
            sign = -sign
        prev = _bareiss_step(u, k, k, prev)
    det = u.rows[u.nrows - 1].get(u.nrows - 1, ZERO)
    if sign < 0:
        det = -det
    if lcm != 1:
        det = det * _power(rat(Fraction(1, lcm)), m.nrows)
    return det
