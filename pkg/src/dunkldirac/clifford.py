"""Clifford algebra on n Euclidean generators and its spinor representation.

Monomials c_S are encoded as bitmasks over sorted index sets; the product
sign counts the transpositions needed to merge two sorted monomials, with
c_i^2 = +1.  The spinor representation is the standard Fock-space model
with Pauli-type matrices; for odd n the last generator is the signed
product of the others ("+" class).
"""
from __future__ import annotations

from .linalg import Matrix
from .scalars import ExactScalar, IUNIT, ONE, ZERO, rat


def _merge_sign_and_mask(s: int, t: int) -> tuple[int, int]:
    """Multiply monomials c_S * c_T: returns (sign, mask of S xor T)."""
    sign = 1
    cur = s
    while t:
        low = t & -t
        t ^= low
        # bits of cur strictly above this generator
        above = cur & ~((low << 1) - 1)
        if above.bit_count() & 1:
            sign = -sign
        cur ^= low
    return sign, cur


def _mask_indices(mask: int):
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class CliffordElement:
    """Element of the Clifford algebra: dict bitmask -> ExactScalar."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: dict | None = None):
        self.n = n
        self.coeffs = {}
        if coeffs:
            for m, v in coeffs.items():
                if m >> n:
                    raise ValueError(f"generator index beyond n={n}")
                if not v.is_zero():
                    self.coeffs[m] = v

    @staticmethod
    def scalar(n: int, v) -> "CliffordElement":
        v = v if isinstance(v, ExactScalar) else rat(v)
        return CliffordElement(n, {0: v})

    @staticmethod
    def generator(n: int, i: int) -> "CliffordElement":
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range")
        return CliffordElement(n, {1 << (i - 1): ONE})

    @staticmethod
    def monomial(n: int, indices, coeff=ONE) -> "CliffordElement":
        mask = 0
        for i in indices:
            bit = 1 << (i - 1)
            if mask & bit:
                raise ValueError("repeated index in monomial")
            mask |= bit
        return CliffordElement(n, {mask: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for m, v in other.coeffs.items():
            w = out.get(m)
            s = v if w is None else w + v
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return CliffordElement(self.n, out)

    def __neg__(self):
        return CliffordElement(self.n, {m: -v for m, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def _coerce(self, other) -> "CliffordElement":
        if isinstance(other, CliffordElement):
            if other.n != self.n:
                raise ValueError("mixed generator counts")
            return other
        return CliffordElement.scalar(self.n, other)

    def __mul__(self, other):
        if isinstance(other, (int, ExactScalar)):
            s = other if isinstance(other, ExactScalar) else rat(other)
            return CliffordElement(
                self.n, {m: v * s for m, v in self.coeffs.items()})
        other = self._coerce(other)
        acc: dict = {}
        for s, sv in self.coeffs.items():
            for t, tv in other.coeffs.items():
                sign, mask = _merge_sign_and_mask(s, t)
                v = sv * tv
                if sign < 0:
                    v = -v
                cur = acc.get(mask)
                nv = v if cur is None else cur + v
                if nv.is_zero():
                    acc.pop(mask, None)
                else:
                    acc[mask] = nv
        return CliffordElement(self.n, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, ExactScalar)):
            return self * other
        return NotImplemented

    def scale(self, s) -> "CliffordElement":
        return self * (s if isinstance(s, ExactScalar) else rat(s))

    # -- involutions -------------------------------------------------------

    def grading_sign(self) -> "CliffordElement":
        """epsilon: multiply odd-degree monomials by -1."""
        return CliffordElement(
            self.n,
            {m: (-v if m.bit_count() & 1 else v)
             for m, v in self.coeffs.items()})

    def reversal(self) -> "CliffordElement":
        """Transpose: reverse each monomial, sign (-1)^(k(k-1)/2)."""
        out = {}
        for m, v in self.coeffs.items():
            k = m.bit_count()
            if (k * (k - 1) // 2) & 1:
                v = -v
            out[m] = v
        return CliffordElement(self.n, out)

    def star(self) -> "CliffordElement":
        """The anti-linear anti-involution epsilon o reversal, with complex
        conjugation of coefficients."""
        out = {}
        for m, v in self.coeffs.items():
            k = m.bit_count()
            if ((k * (k + 1)) // 2) & 1:
                out[m] = -v.conjugate()
            else:
                out[m] = v.conjugate()
        return CliffordElement(self.n, out)

    def conjugate_reversal(self) -> "CliffordElement":
        """Anti-linear reversal, without the grading sign.

        With c_i^2 = +1 the spinor matrices of the generators are Hermitian,
        so this (not star) is the involution matching the matrix adjoint;
        the two agree on the even subalgebra.
        """
        out = {}
        for m, v in self.coeffs.items():
            k = m.bit_count()
            if (k * (k - 1) // 2) & 1:
                out[m] = -v.conjugate()
            else:
                out[m] = v.conjugate()
        return CliffordElement(self.n, out)

    def spinorial_norm(self) -> "CliffordElement":
        return self.star() * self

    def is_even(self) -> bool:
        return all(m.bit_count() % 2 == 0 for m in self.coeffs)

    def is_odd(self) -> bool:
        return all(m.bit_count() % 2 == 1 for m in self.coeffs)

    def degree_parts(self):
        """Dict degree -> CliffordElement."""
        parts: dict = {}
        for m, v in self.coeffs.items():
            parts.setdefault(m.bit_count(), {})[m] = v
        return {k: CliffordElement(self.n, d) for k, d in sorted(parts.items())}

    def scalar_part(self) -> ExactScalar:
        return self.coeffs.get(0, ZERO)

    # -- structure -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, ExactScalar)):
            other = CliffordElement.scalar(self.n, other)
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.coeffs.items()))))

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for m in sorted(self.coeffs):
            v = self.coeffs[m]
            mono = " ".join(f"c{i}" for i in _mask_indices(m))
            if m == 0:
                bits.append(str(v))
            elif v == ONE:
                bits.append(mono)
            elif v == -ONE:
                bits.append(f"-{mono}")
            elif v.is_rational() or v.is_real() or v in (IUNIT, -IUNIT):
                sv = str(v)
                if " " in sv:
                    sv = f"({sv})"
                bits.append(f"{sv} {mono}")
            else:
                bits.append(f"({v}) {mono}")
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out

    __repr__ = __str__

    @staticmethod
    def parse(n: int, text: str) -> "CliffordElement":
        """Parse the __str__ grammar: signed sums of '<coef> c1 c3' terms."""
        t = text.strip()
        if not t:
            raise ValueError("empty element")
        # normalize separators, then split into signed chunks
        chunks = []
        cur, sign = "", 1
        depth = 0
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
        out = CliffordElement(n)
        for sgn, body in chunks:
            if not body:
                raise ValueError(f"malformed element: {text!r}")
            toks = body.split()
            idxs = []
            coeff_toks = []
            for tok in toks:
                if tok.startswith("c") and tok[1:].isdigit():
                    idxs.append(int(tok[1:]))
                else:
                    coeff_toks.append(tok)
            cstr = " ".join(coeff_toks).strip()
            if cstr.startswith("(") and cstr.endswith(")"):
                cstr = cstr[1:-1]
            coeff = ExactScalar.parse(cstr) if cstr else ONE
            if sgn < 0:
                coeff = -coeff
            out = out + CliffordElement.monomial(n, idxs, coeff)
        return out


def vector_embed(n: int, vec) -> CliffordElement:
    """iota: R^n -> degree-1 Clifford elements, e_i -> c_i."""
    if len(vec) != n:
        raise ValueError("vector length mismatch")
    coeffs = {}
    for i, v in enumerate(vec):
        v = v if isinstance(v, ExactScalar) else rat(v)
        if not v.is_zero():
            coeffs[1 << i] = v
    return CliffordElement(n, coeffs)


def anticommutator_check(n: int) -> bool:
    """c_i c_j + c_j c_i = 2 delta_ij for all pairs."""
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ci = CliffordElement.generator(n, i)
            cj = CliffordElement.generator(n, j)
            want = CliffordElement.scalar(n, 2 if i == j else 0)
            if ci * cj + cj * ci != want:
                return False
    return True


class SpinorRep:
    """Spinor representation sigma of the Clifford algebra, dim 2^floor(n/2).

    Even n: Jordan-Wigner chains of Pauli matrices (entries 0, +-1, +-i).
    Odd n = 2k+1: sigma(c_n) := i^k sigma(c_1) ... sigma(c_2k), the "+"
    equivalence class.
    """

    def __init__(self, n: int):
        self.n = n
        k = n // 2
        self.dim = 1 << k
        px = Matrix.from_rows([[0, 1], [1, 0]])
        py = Matrix.from_rows([[ZERO, -IUNIT], [IUNIT, ZERO]])
        pz = Matrix.from_rows([[1, 0], [0, -1]])
        gens = []
        for j in range(1, k + 1):
            for p in (px, py):
                m = Matrix.identity(1)
                for slot in range(1, k + 1):
                    if slot < j:
                        m = m.kron(pz)
                    elif slot == j:
                        m = m.kron(p)
                    else:
                        m = m.kron(Matrix.identity(2))
                gens.append(m)
        if n % 2 == 1:
            last = Matrix.identity(self.dim)
            for g in gens:
                last = last @ g
            phase = ONE
            for _ in range(k):
                phase = phase * IUNIT
            gens.append(last.scale(phase))
        self.generators = gens
        self._cache: dict = {}

    def sigma(self, elem: CliffordElement) -> Matrix:
        """Matrix of a Clifford element."""
        if elem.n != self.n:
            raise ValueError("generator count mismatch")
        out = Matrix(self.dim, self.dim)
        for mask, v in elem.coeffs.items():
            out = out + self._monomial_matrix(mask).scale(v)
        return out

    def _monomial_matrix(self, mask: int) -> Matrix:
        m = self._cache.get(mask)
        if m is None:
            m = Matrix.identity(self.dim)
            for i in _mask_indices(mask):
                m = m @ self.generators[i - 1]
            self._cache[mask] = m
        return m
