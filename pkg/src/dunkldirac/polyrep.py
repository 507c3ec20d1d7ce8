"""Standard modules for the rational Cherednik algebra as graded matrices.

A ModuleFamily packages C[x_1..x_n] tensor tau, truncated at a top degree N,
together with the operators acting on it: multiplication x_i (degree +1),
Dunkl operators y_i (degree -1), and the group action (degree 0).  Each
operator is a GradedOperator: one exact matrix per source degree, with a
block present only where both source and target degrees sit inside the
truncation window.  Identity checks quantify over the block keys both sides
share, so a composite that would need data above degree N loses those keys
instead of producing wrong matrices.

Degrees below zero are genuinely zero dimensional rather than truncated:
block(m) for m < 0 is a synthesized matrix with zero columns, which makes
compositions like x_i y_i exact all the way down to degree 0.

The Dunkl operator acts on f tensor u by

    y (f (x) u) = d_y f (x) u + sum_a c_a <a, y> (f - s_a f)/a(x) (x) tau(s_a) u

with the division by the linear form a(x) performed exactly (synthetic
division along a coordinate where a has a nonzero coefficient; the remainder
is asserted zero).
"""

from fractions import Fraction
from math import comb

from .linalg import Matrix, is_positive_definite, kernel
from .scalars import ONE, ZERO, ExactScalar, rat


def _csc(v):
    if isinstance(v, ExactScalar):
        return v
    if isinstance(v, str):
        return ExactScalar.parse(v)
    return rat(v)


def _madd(mat: Matrix, i: int, j: int, v) -> None:
    # accumulate into a sparse entry, dropping exact zeros
    row = mat.rows[i]
    cur = row.get(j)
    new = v if cur is None else cur + v
    if new.is_zero():
        row.pop(j, None)
    else:
        row[j] = new


class Polynomial:
    """Exact multivariate polynomial, exponent tuple -> scalar."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.coeffs = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _csc(v)
                if not v.is_zero():
                    self.coeffs[tuple(e)] = v

    @staticmethod
    def zero(n: int) -> "Polynomial":
        return Polynomial(n)

    @staticmethod
    def one(n: int) -> "Polynomial":
        return Polynomial(n, {(0,) * n: ONE})

    @staticmethod
    def variable(n: int, i: int) -> "Polynomial":
        """x_i, 1-based to match the printing grammar."""
        if not (1 <= i <= n):
            raise ValueError(f"variable index {i} out of range 1..{n}")
        e = tuple(1 if k == i - 1 else 0 for k in range(n))
        return Polynomial(n, {e: ONE})

    @staticmethod
    def monomial(n: int, exps, coeff=ONE) -> "Polynomial":
        return Polynomial(n, {tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.coeffs}
        return len(degs) <= 1

    def homogeneous_part(self, m: int) -> "Polynomial":
        return Polynomial(self.n, {e: v for e, v in self.coeffs.items()
                                   if sum(e) == m})

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            cur = out.get(e)
            new = v if cur is None else cur + v
            if new.is_zero():
                out.pop(e, None)
            else:
                out[e] = new
        p = Polynomial(self.n)
        p.coeffs = out
        return p

    def __neg__(self) -> "Polynomial":
        p = Polynomial(self.n)
        p.coeffs = {e: -v for e, v in self.coeffs.items()}
        return p

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, s) -> "Polynomial":
        s = _csc(s)
        p = Polynomial(self.n)
        if not s.is_zero():
            p.coeffs = {e: v * s for e, v in self.coeffs.items()}
        return p

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        out: dict = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t = v1 * v2
                cur = out.get(e)
                new = t if cur is None else cur + t
                if new.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = new
        p = Polynomial(self.n)
        p.coeffs = out
        return p

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self, i: int) -> "Polynomial":
        """d/dx_i, 1-based."""
        out: dict = {}
        k = i - 1
        for e, v in self.coeffs.items():
            if e[k] == 0:
                continue
            e2 = e[:k] + (e[k] - 1,) + e[k + 1:]
            out[e2] = v * rat(e[k])
        p = Polynomial(self.n)
        p.coeffs = out
        return p

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.n == other.n
                and self.coeffs == other.coeffs)

    def sorted_terms(self):
        """(exponent, coeff) pairs, graded-lex descending."""
        return [(e, self.coeffs[e]) for e in
                sorted(self.coeffs, key=lambda e: (sum(e), e), reverse=True)]

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for e, v in self.sorted_terms():
            mono = " ".join(
                f"x{k + 1}" if d == 1 else f"x{k + 1}^{d}"
                for k, d in enumerate(e) if d > 0)
            if not mono:
                bits.append(str(v))
            elif v == ONE:
                bits.append(mono)
            elif v == -ONE:
                bits.append(f"-{mono}")
            else:
                sv = str(v)
                if " " in sv:
                    sv = f"({sv})"
                bits.append(f"{sv} {mono}")
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out

    __repr__ = __str__

    @staticmethod
    def parse(n: int, text: str) -> "Polynomial":
        """Parse the __str__ grammar: signed sums of '<coef> x1^2 x3'."""
        out = Polynomial(n)
        for sgn, body in _signed_chunks(text):
            if not body:
                raise ValueError(f"malformed polynomial: {text!r}")
            exps = [0] * n
            coeff_toks = []
            for tok in body.split():
                if tok.startswith("x") and tok[1:].split("^")[0].isdigit():
                    parts = tok[1:].split("^")
                    k = int(parts[0])
                    if not (1 <= k <= n):
                        raise ValueError(f"variable out of range: {tok}")
                    exps[k - 1] += int(parts[1]) if len(parts) > 1 else 1
                else:
                    coeff_toks.append(tok)
            cstr = " ".join(coeff_toks).strip()
            if cstr.startswith("(") and cstr.endswith(")"):
                cstr = cstr[1:-1]
            coeff = ExactScalar.parse(cstr) if cstr else ONE
            if sgn < 0:
                coeff = -coeff
            out = out + Polynomial.monomial(n, exps, coeff)
        return out


def _signed_chunks(text: str):
    """Split on top-level + and -, keeping signs; parentheses protected."""
    t = text.strip()
    if not t:
        raise ValueError("empty expression")
    chunks = []
    cur, sign, depth = "", 1, 0
    if t[0] in "+-":
        sign = -1 if t[0] == "-" else 1
        t = t[1:]
    for ch in t:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0:
            chunks.append((sign, cur.strip()))
            sign = -1 if ch == "-" else 1
            cur = ""
        else:
            cur += ch
    chunks.append((sign, cur.strip()))
    return chunks


def act(g, f: Polynomial) -> Polynomial:
    """Group action (w.f)(x) = f(w^{-1} x).

    For orthogonal w this sends x_i to sum_j w_{ji} x_j, i.e. each variable
    maps to the linear form read off a column of the matrix.
    """
    n = f.n
    forms = []
    for i in range(n):
        coeffs = {}
        for j in range(n):
            v = g.mat.get(j, i)
            if not v.is_zero():
                coeffs[tuple(1 if k == j else 0 for k in range(n))] = v
        forms.append(Polynomial(n, coeffs))
    pow_cache: dict = {}

    def fpow(i, k):
        key = (i, k)
        got = pow_cache.get(key)
        if got is None:
            got = forms[i] ** k
            pow_cache[key] = got
        return got

    out = Polynomial(n)
    for e, v in f.coeffs.items():
        term = Polynomial.one(n).scale(v)
        for i, d in enumerate(e):
            if d:
                term = term * fpow(i, d)
        out = out + term
    return out


def divide_by_linear(f: Polynomial, form: Polynomial) -> Polynomial:
    """Exact quotient f / form for a linear form, ValueError if inexact.

    Synthetic division along the first coordinate p where the form has a
    nonzero coefficient: writing f = sum_j g_j x_p^j and form = a x_p + S,
    the quotient coefficients satisfy g_j = a q_{j-1} + S q_j and are solved
    descending from the top degree; the leftover g_0 - S q_0 must vanish.
    """
    n = f.n
    pivot, a = None, None
    for k in range(n):
        e = tuple(1 if j == k else 0 for j in range(n))
        v = form.coeffs.get(e)
        if v is not None:
            pivot, a = k, v
            break
    if pivot is None or form.degree() != 1 or (0,) * n in form.coeffs:
        raise ValueError("divisor is not a homogeneous linear form")
    if f.is_zero():
        return Polynomial.zero(n)
    s_part = Polynomial(n, {e: v for e, v in form.coeffs.items()
                            if e[pivot] == 0})
    parts: dict = {}
    for e, v in f.coeffs.items():
        j = e[pivot]
        e0 = e[:pivot] + (0,) + e[pivot + 1:]
        parts.setdefault(j, Polynomial(n)).coeffs[e0] = v
    d = max(parts)
    ainv = a.inverse()
    q: dict = {}
    for j in range(d, 0, -1):
        g = parts.get(j, Polynomial.zero(n))
        if j in q:
            g = g - s_part * q[j]
        q[j - 1] = g.scale(ainv)
    r = parts.get(0, Polynomial.zero(n))
    if 0 in q:
        r = r - s_part * q[0]
    if not r.is_zero():
        raise ValueError("nonzero remainder in linear division")
    out = Polynomial(n)
    for j, qj in q.items():
        xp = Polynomial.monomial(n, tuple(j if k == pivot else 0
                                          for k in range(n)))
        out = out + qj * xp
    return out


def root_form(rs, root_idx: int) -> Polynomial:
    alpha = rs.positive_roots[root_idx]
    return Polynomial(rs.n, {tuple(1 if k == j else 0 for k in range(rs.n)): v
                             for j, v in enumerate(alpha) if not v.is_zero()})


def dunkl_apply(yvec, f: Polynomial, rs, param) -> Polynomial:
    """Dunkl operator for the direction y on a bare polynomial.

    D_y f = d_y f + sum_a c_a <a, y> (f - s_a f)/a(x).  The tensor factor of
    a standard module is handled by the matrix builders, not here.
    """
    n = rs.n
    yv = [_csc(v) for v in yvec]
    out = Polynomial.zero(n)
    for i, v in enumerate(yv):
        if not v.is_zero():
            out = out + f.derivative(i + 1).scale(v)
    for r in range(len(rs.positive_roots)):
        c = rat(param.of_root(rs, r))
        if c.is_zero():
            continue
        alpha = rs.positive_roots[r]
        pair = ZERO
        for ai, vi in zip(alpha, yv):
            pair = pair + ai * vi
        if pair.is_zero():
            continue
        diff = f - act(rs.reflection(r), f)
        if diff.is_zero():
            continue
        out = out + divide_by_linear(diff, root_form(rs, r)).scale(c * pair)
    return out


# -- W-representations for the tensor factor ---------------------------------


class TauRep:
    """Finite-dimensional W-representation with an invariant Hermitian form.

    mats[k] is the matrix of the k-th group element (indices of the
    ReflectionGroup enumeration); form defaults to the identity.
    """

    __slots__ = ("name", "dim", "mats", "form")

    def __init__(self, name: str, dim: int, mats, form=None):
        self.name = name
        self.dim = dim
        self.mats = list(mats)
        self.form = form if form is not None else Matrix.identity(dim)
        if self.form.dagger() != self.form:
            raise ValueError("tau form is not Hermitian")

    def mat(self, w_index: int) -> Matrix:
        return self.mats[w_index]


def trivial_rep(group) -> TauRep:
    one = Matrix.identity(1)
    return TauRep("trivial", 1, [one] * group.order)


def sign_rep(group) -> TauRep:
    mats = []
    for g in group.elements:
        m = Matrix(1, 1)
        m.set(0, 0, g.det())
        mats.append(m)
    return TauRep("sign", 1, mats)


def reflection_rep(group) -> TauRep:
    """The ambient action of W on R^n."""
    return TauRep("reflection", group.rs.n, [g.mat for g in group.elements])


def custom_rep(group, simple_mats: dict, form=None,
               name: str = "custom") -> TauRep:
    """Representation from matrices for the simple reflections.

    simple_mats maps simple-root indices to matrices; the extension to all
    of W goes along words in the simple generators, and both the
    homomorphism property and invariance of the supplied form are verified.
    """
    rs = group.rs
    simples = rs.simple_root_indices()
    if set(simple_mats) != set(simples):
        raise ValueError(f"need matrices exactly for simple roots {simples}")
    dim = simple_mats[simples[0]].nrows
    gen_elems = [group.reflection_element_index(i) for i in simples]
    mats: list = [None] * group.order
    mats[0] = Matrix.identity(dim)
    frontier = [0]
    while frontier:
        nxt = []
        for ei in frontier:
            for si, root_idx in zip(gen_elems, simples):
                h = group.mul(ei, si)
                if mats[h] is None:
                    mats[h] = mats[ei] @ simple_mats[root_idx]
                    nxt.append(h)
        frontier = nxt
    if any(m is None for m in mats):
        raise ValueError("simple reflections do not generate the group")
    for u in range(group.order):
        for v in range(group.order):
            if mats[group.mul(u, v)] != mats[u] @ mats[v]:
                raise ValueError(
                    f"matrices are not a representation at pair ({u}, {v})")
    rep = TauRep(name, dim, mats, form)
    for si in gen_elems:
        if mats[si].dagger() @ rep.form @ mats[si] != rep.form:
            raise ValueError("form is not W-invariant")
    return rep


def builtin_rep(group, name: str) -> TauRep:
    if name == "trivial":
        return trivial_rep(group)
    if name == "sign":
        return sign_rep(group)
    if name == "reflection":
        return reflection_rep(group)
    raise ValueError(f"unknown built-in representation {name!r}")


# -- graded operators ---------------------------------------------------------


class GradedOperator:
    """Per-degree exact matrices with a fixed degree shift.

    blocks[m] maps the degree-m slice into degree m + shift; only source
    degrees where the operator is honestly known are stored.  Negative
    source degrees are zero dimensional and synthesized on demand, so they
    never constrain compositions.
    """

    __slots__ = ("family", "shift", "blocks")

    def __init__(self, family: "ModuleFamily", shift: int, blocks: dict):
        self.family = family
        self.shift = shift
        self.blocks = blocks

    def degrees(self):
        return sorted(self.blocks)

    def block(self, m: int):
        """Stored block, or a synthesized zero-column matrix below degree 0.

        Returns None where the operator is not known (clipped at the top of
        the truncation window).
        """
        if m >= 0:
            return self.blocks.get(m)
        t = m + self.shift
        if t > self.family.max_degree:
            return None
        return Matrix(self.family.dim(t) if t >= 0 else 0, 0)

    def _need_same(self, other, want_shift=True):
        if self.family is not other.family:
            raise ValueError("operators live on different module families")
        if want_shift and self.shift != other.shift:
            raise ValueError(
                f"degree shift mismatch: {self.shift} vs {other.shift}")

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._need_same(other)
        out = {m: self.blocks[m] + other.blocks[m]
               for m in self.blocks if m in other.blocks}
        return GradedOperator(self.family, self.shift, out)

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + (-other)

    def __neg__(self) -> "GradedOperator":
        return GradedOperator(self.family, self.shift,
                              {m: -b for m, b in self.blocks.items()})

    def scale(self, s) -> "GradedOperator":
        s = _csc(s)
        return GradedOperator(self.family, self.shift,
                              {m: b.scale(s) for m, b in self.blocks.items()})

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        """self composed after other; keys survive only when the chain does."""
        self._need_same(other, want_shift=False)
        out = {}
        for m, b in other.blocks.items():
            a = self.block(m + other.shift)
            if a is None:
                continue
            out[m] = a @ b
        return GradedOperator(self.family, self.shift + other.shift, out)

    def __pow__(self, k: int) -> "GradedOperator":
        if k < 1:
            raise ValueError("power must be >= 1")
        out = self
        for _ in range(k - 1):
            out = out @ self
        return out

    def commutator(self, other: "GradedOperator") -> "GradedOperator":
        return (self @ other) - (other @ self)

    def anticommutator(self, other: "GradedOperator") -> "GradedOperator":
        return (self @ other) + (other @ self)

    def __eq__(self, other):
        return (isinstance(other, GradedOperator)
                and self.family is other.family and self.shift == other.shift
                and self.blocks == other.blocks)

    def matches(self, other: "GradedOperator") -> bool:
        """Equality on the degrees both sides know about."""
        self._need_same(other)
        common = set(self.blocks) & set(other.blocks)
        if not common:
            raise ValueError("no common valid degrees to compare")
        return all(self.blocks[m] == other.blocks[m] for m in common)

    def first_mismatch(self, other: "GradedOperator"):
        """(degree, (row, col), lhs, rhs) of the first difference, or None."""
        self._need_same(other)
        common = sorted(set(self.blocks) & set(other.blocks))
        if not common:
            raise ValueError("no common valid degrees to compare")
        for m in common:
            a, b = self.blocks[m], other.blocks[m]
            if a == b:
                continue
            spots = sorted({(i, j) for i, row in enumerate(a.rows)
                            for j in row}
                           | {(i, j) for i, row in enumerate(b.rows)
                              for j in row})
            for (i, j) in spots:
                if a.get(i, j) != b.get(i, j):
                    return (m, (i, j), a.get(i, j), b.get(i, j))
        return None

    def is_zero(self) -> bool:
        if not self.blocks:
            raise ValueError("operator has no valid degrees")
        return all(b.is_zero() for b in self.blocks.values())


# -- the module family --------------------------------------------------------


class ModuleFamily:
    """Truncated standard module M_c(tau) with cached operator matrices."""

    def __init__(self, rs, param, tau, max_degree: int = 6):
        if max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        self.rs = rs
        self.group = rs.group()
        self.param = param
        self.tau = tau if isinstance(tau, TauRep) else \
            builtin_rep(self.group, tau)
        self.n = rs.n
        self.max_degree = max_degree
        self._monos = []
        self._mono_pos = []
        for m in range(max_degree + 1):
            monos = sorted(_monomials(self.n, m), reverse=True)
            self._monos.append(monos)
            self._mono_pos.append({e: k for k, e in enumerate(monos)})
        self._x_ops = None
        self._y_ops = None
        self._dd_ops: dict = {}
        self._w_ops: dict = {}
        self._lap = None
        self._gram: list = []
        self._root_forms = [root_form(rs, r)
                            for r in range(len(rs.positive_roots))]
        self._cs = [rat(param.of_root(rs, r))
                    for r in range(len(rs.positive_roots))]

    # -- bases ---------------------------------------------------------------

    def monomials(self, m: int):
        return self._monos[m]

    def dim(self, m: int) -> int:
        if m < 0:
            return 0
        if m > self.max_degree:
            raise ValueError(f"degree {m} beyond truncation {self.max_degree}")
        return len(self._monos[m]) * self.tau.dim

    def basis_index(self, m: int, exps, t: int) -> int:
        return self._mono_pos[m][tuple(exps)] * self.tau.dim + t

    def basis_labels(self, m: int):
        return [(e, t) for e in self._monos[m] for t in range(self.tau.dim)]

    def _add_poly(self, mat: Matrix, m_target: int, col: int,
                  poly: Polynomial, tau_col) -> None:
        # tau_col: list of (row_t, scalar) pairs for the tensor factor
        pos = self._mono_pos[m_target]
        td = self.tau.dim
        for e, v in poly.coeffs.items():
            base = pos[e] * td
            for t, tv in tau_col:
                _madd(mat, base + t, col, v * tv)

    def _tau_column(self, w_index: int, t: int):
        mat = self.tau.mat(w_index)
        out = []
        for k in range(self.tau.dim):
            v = mat.get(k, t)
            if not v.is_zero():
                out.append((k, v))
        return out

    # -- atomic operators ------------------------------------------------------

    def x_op(self, i: int) -> GradedOperator:
        """Multiplication by x_i, 1-based."""
        if self._x_ops is None:
            self._x_ops = [self._build_x(k) for k in range(self.n)]
        return self._x_ops[i - 1]

    def _build_x(self, k: int) -> GradedOperator:
        blocks = {}
        td = self.tau.dim
        for m in range(self.max_degree):
            mat = Matrix(self.dim(m + 1), self.dim(m))
            pos2 = self._mono_pos[m + 1]
            for p, e in enumerate(self._monos[m]):
                e2 = e[:k] + (e[k] + 1,) + e[k + 1:]
                base2 = pos2[e2] * td
                for t in range(td):
                    mat.set(base2 + t, p * td + t, ONE)
            blocks[m] = mat
        return GradedOperator(self, 1, blocks)

    def y_op(self, i: int) -> GradedOperator:
        """Dunkl operator along e_i, 1-based."""
        if self._y_ops is None:
            self._build_y()
        return self._y_ops[i - 1]

    def _quotients(self, m: int):
        """Per positive root r, per degree-m monomial p: (x^e - s_r x^e)/a_r."""
        out = []
        for r in range(len(self.rs.positive_roots)):
            s = self.rs.reflection(r)
            form = self._root_forms[r]
            per_mono = []
            for e in self._monos[m]:
                mono = Polynomial.monomial(self.n, e)
                diff = mono - act(s, mono)
                per_mono.append(Polynomial.zero(self.n) if diff.is_zero()
                                else divide_by_linear(diff, form))
            out.append(per_mono)
        return out

    def _build_y(self) -> None:
        n, td, N = self.n, self.tau.dim, self.max_degree
        roots = self.rs.positive_roots
        refl_tau_cols = [
            [self._tau_column(
                self.group.reflection_element_index(r), t)
             for t in range(td)]
            for r in range(len(roots))]
        ops = [dict() for _ in range(n)]
        for m in range(N + 1):
            mats = [Matrix(self.dim(m - 1), self.dim(m)) for _ in range(n)]
            if m > 0:
                quot = self._quotients(m)
                for p, e in enumerate(self._monos[m]):
                    mono = Polynomial.monomial(n, e)
                    for i in range(n):
                        d = mono.derivative(i + 1)
                        if not d.is_zero():
                            for t in range(td):
                                self._add_poly(mats[i], m - 1, p * td + t,
                                               d, [(t, ONE)])
                    for r, c in enumerate(self._cs):
                        if c.is_zero():
                            continue
                        qp = quot[r][p]
                        if qp.is_zero():
                            continue
                        for i in range(n):
                            w = c * roots[r][i]
                            if w.is_zero():
                                continue
                            for t in range(td):
                                self._add_poly(
                                    mats[i], m - 1, p * td + t,
                                    qp.scale(w), refl_tau_cols[r][t])
            for i in range(n):
                ops[i][m] = mats[i]
        self._y_ops = [GradedOperator(self, -1, b) for b in ops]

    def divided_difference_op(self, root_idx: int) -> GradedOperator:
        """f tensor u -> (f - s_a f)/a(x) tensor u, no tau factor."""
        got = self._dd_ops.get(root_idx)
        if got is not None:
            return got
        td = self.tau.dim
        blocks = {}
        for m in range(self.max_degree + 1):
            mat = Matrix(self.dim(m - 1), self.dim(m))
            if m > 0:
                s = self.rs.reflection(root_idx)
                form = self._root_forms[root_idx]
                for p, e in enumerate(self._monos[m]):
                    mono = Polynomial.monomial(self.n, e)
                    diff = mono - act(s, mono)
                    if diff.is_zero():
                        continue
                    qp = divide_by_linear(diff, form)
                    for t in range(td):
                        self._add_poly(mat, m - 1, p * td + t, qp, [(t, ONE)])
            blocks[m] = mat
        op = GradedOperator(self, -1, blocks)
        self._dd_ops[root_idx] = op
        return op

    def w_op(self, w_index: int) -> GradedOperator:
        """pi(w) tensor tau(w) on every slice."""
        got = self._w_ops.get(w_index)
        if got is not None:
            return got
        g = self.group.elements[w_index]
        td = self.tau.dim
        tau_cols = [self._tau_column(w_index, t) for t in range(td)]
        blocks = {}
        for m in range(self.max_degree + 1):
            mat = Matrix(self.dim(m), self.dim(m))
            for p, e in enumerate(self._monos[m]):
                img = act(g, Polynomial.monomial(self.n, e))
                for t in range(td):
                    self._add_poly(mat, m, p * td + t, img, tau_cols[t])
            blocks[m] = mat
        op = GradedOperator(self, 0, blocks)
        self._w_ops[w_index] = op
        return op

    def reflection_op(self, root_idx: int) -> GradedOperator:
        return self.w_op(self.group.reflection_element_index(root_idx))

    def scalar_op(self, v) -> GradedOperator:
        v = _csc(v)
        blocks = {m: Matrix.identity(self.dim(m)).scale(v)
                  for m in range(self.max_degree + 1)}
        return GradedOperator(self, 0, blocks)

    def identity_op(self) -> GradedOperator:
        return self.scalar_op(ONE)

    # -- composites ------------------------------------------------------------

    def laplacian(self) -> GradedOperator:
        """Dunkl Laplacian sum_i y_i^2, shift -2, valid on all degrees."""
        if self._lap is None:
            acc = None
            for i in range(1, self.n + 1):
                sq = self.y_op(i) @ self.y_op(i)
                acc = sq if acc is None else acc + sq
            self._lap = acc
        return self._lap

    def from_group_algebra(self, coeffs: dict) -> GradedOperator:
        """Operator of sum_w coeffs[w] . w for element indices w."""
        acc = None
        for w, v in sorted(coeffs.items()):
            term = self.w_op(w).scale(v)
            acc = term if acc is None else acc + term
        return acc if acc is not None else self.scalar_op(0)


def _monomials(n: int, m: int):
    if n == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in _monomials(n - 1, m - first):
            yield (first,) + rest


# -- relation machinery --------------------------------------------------------


def s_op(family: ModuleFamily, i: int, j: int) -> GradedOperator:
    """Matrix of S_ij = delta_ij + sum_a c_a <a, y_j> <x_i, a_v> s_a.

    Symmetric in (i, j); equals the commutator [y_i, x_j] on the module.
    Indices are 1-based.
    """
    rs = family.rs
    acc = family.scalar_op(1 if i == j else 0)
    for r, c in enumerate(family._cs):
        if c.is_zero():
            continue
        w = c * rs.positive_roots[r][j - 1] * rs.coroots[r][i - 1]
        if w.is_zero():
            continue
        acc = acc + family.reflection_op(r).scale(w)
    return acc


def center_op(family: ModuleFamily) -> GradedOperator:
    """Matrix of the central sum of reflections sum_a c_a s_a."""
    acc = family.scalar_op(0)
    for r, c in enumerate(family._cs):
        if c.is_zero():
            continue
        acc = acc + family.reflection_op(r).scale(c)
    return acc


def operator_matrix(family: ModuleFamily, expr: str) -> GradedOperator:
    """Assemble a GradedOperator from a word expression.

    Grammar: signed sums of terms '<coef> <letters>', letters composed left
    to right as operators.  Letters: x<i> and y<i> (1-based coordinates),
    s<r> (reflection for positive root r, 0-based), w<k> (group element k),
    e (identity).  Example: 'x1 y1 - y1 x1 + 2 s0'.
    """
    total = None
    for sgn, body in _signed_chunks(expr):
        if not body:
            raise ValueError(f"malformed operator expression: {expr!r}")
        letters = []
        coeff_toks = []
        for tok in body.split():
            if tok == "e":
                letters.append(("e", 0))
            elif tok[0] in "xysw" and tok[1:].isdigit():
                letters.append((tok[0], int(tok[1:])))
            else:
                coeff_toks.append(tok)
        cstr = " ".join(coeff_toks).strip()
        if cstr.startswith("(") and cstr.endswith(")"):
            cstr = cstr[1:-1]
        coeff = ExactScalar.parse(cstr) if cstr else ONE
        if sgn < 0:
            coeff = -coeff
        op = family.identity_op()
        for kind, k in letters:
            if kind == "x":
                nxt = family.x_op(k)
            elif kind == "y":
                nxt = family.y_op(k)
            elif kind == "s":
                nxt = family.reflection_op(k)
            elif kind == "w":
                nxt = family.w_op(k)
            else:
                nxt = family.identity_op()
            op = op @ nxt
        op = op.scale(coeff)
        total = op if total is None else total + op
    if total is None:
        raise ValueError("empty operator expression")
    return total


def _zero_like(op: GradedOperator) -> GradedOperator:
    return GradedOperator(op.family, op.shift,
                          {m: Matrix(b.nrows, b.ncols)
                           for m, b in op.blocks.items()})


def _record(report: dict, name: str, lhs: GradedOperator,
            rhs: GradedOperator) -> None:
    report["checks"] += 1
    bad = lhs.first_mismatch(rhs)
    if bad is not None:
        report["pass"] = False
        m, (r, c), a, b = bad
        report["failures"].append({
            "relation": name, "degree": m, "entry": [r, c],
            "lhs": str(a), "rhs": str(b)})


def rca_relation_check(family: ModuleFamily) -> dict:
    """Exact verification of the defining commutation relations.

    Checks, blockwise on every shared degree: [x_i, x_j] = 0,
    [y_i, y_j] = 0, [y_i, x_j] = S_ji, and sum_i S_ii = n + 2 Z.
    """
    n = family.n
    report = {"pass": True, "checks": 0, "failures": []}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            xx = family.x_op(i).commutator(family.x_op(j))
            _record(report, f"[x{i},x{j}]", xx, _zero_like(xx))
            yy = family.y_op(i).commutator(family.y_op(j))
            _record(report, f"[y{i},y{j}]", yy, _zero_like(yy))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            _record(report, f"[y{i},x{j}]",
                    family.y_op(i).commutator(family.x_op(j)),
                    s_op(family, j, i))
    trace = None
    for i in range(1, n + 1):
        t = family.y_op(i).commutator(family.x_op(i))
        trace = t if trace is None else trace + t
    _record(report, "sum_i S_ii = n + 2Z",
            trace, family.scalar_op(n) + center_op(family).scale(2))
    return report


# -- harmonics and the contravariant form ---------------------------------------


def harmonic_subspace(family: ModuleFamily, m: int) -> Matrix:
    """Exact kernel basis of the Dunkl Laplacian on the degree-m slice."""
    return kernel(family.laplacian().blocks[m])


def harmonic_dims(family: ModuleFamily):
    return [harmonic_subspace(family, m).ncols
            for m in range(family.max_degree + 1)]


def classical_harmonic_dim(n: int, m: int) -> int:
    """dim of degree-m harmonics for the ordinary Laplacian, trivial tau."""
    below = comb(m - 2 + n - 1, n - 1) if m >= 2 else 0
    return comb(m + n - 1, n - 1) - below


def contravariant_form(family: ModuleFamily, m: int) -> Matrix:
    """Gram matrix of the pairing that makes y_i adjoint to x_i.

    G_0 is the invariant form on tau; for higher degrees each basis vector
    x^a tensor u with first nonzero exponent at p satisfies
    G_m(x^a u, v) = G_{m-1}(x^{a-e_p} u, y_p v), pulling one variable off at
    a time.  Equivalently G_m(x^a u, x^b v) pairs u against the degree-0
    component of the Dunkl word D^a applied to x^b v.
    """
    if m > family.max_degree:
        raise ValueError("degree beyond truncation")
    while len(family._gram) <= m:
        k = len(family._gram)
        if k == 0:
            family._gram.append(family.tau.form.copy())
            continue
        td = family.tau.dim
        prev = family._gram[k - 1]
        pulled: dict = {}
        mat = Matrix(family.dim(k), family.dim(k))
        for p_idx, e in enumerate(family.monomials(k)):
            pivot = next(i for i in range(family.n) if e[i] > 0)
            pm = pulled.get(pivot)
            if pm is None:
                pm = prev @ family.y_op(pivot + 1).blocks[k]
                pulled[pivot] = pm
            e2 = e[:pivot] + (e[pivot] - 1,) + e[pivot + 1:]
            for t in range(td):
                row = family.basis_index(k, e, t)
                src = family.basis_index(k - 1, e2, t)
                for col, v in pm.rows[src].items():
                    if not v.is_zero():
                        mat.set(row, col, v)
        if mat.dagger() != mat:
            raise RuntimeError("contravariant form came out non-Hermitian")
        family._gram.append(mat)
    return family._gram[m]


def positivity_check(gram: Matrix) -> bool:
    """Exact Sylvester test: all leading principal minors positive."""
    return is_positive_definite(gram)


def adjointness_check(family: ModuleFamily) -> bool:
    """x_i^dagger G_{m+1} = G_m y_i for all i and all degrees below the top."""
    for m in range(family.max_degree):
        g_low = contravariant_form(family, m)
        g_high = contravariant_form(family, m + 1)
        for i in range(1, family.n + 1):
            lhs = family.x_op(i).blocks[m].dagger() @ g_high
            rhs = g_low @ family.y_op(i).blocks[m + 1]
            if lhs != rhs:
                return False
    return True


def matrix_csv(mat: Matrix) -> str:
    """CSV export, one compact ExactScalar cell per entry."""
    lines = []
    for i in range(mat.nrows):
        lines.append(",".join(mat.get(i, j).compact()
                              for j in range(mat.ncols)))
    return "\n".join(lines)
