"""Root systems, reflection groups and reflection-invariant parameters.

Roots live in R^n with coordinates in Q(i, sqrt2) (real ones in practice);
the ambient pairing is the standard dot product, so a vector serves both
as a linear form (x-side) and as a point (y-side).  Positive roots are the
ones whose first nonzero coordinate is positive.
"""
from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix, determinant
from .scalars import (ExactScalar, FloatScalar, ONE, ZERO, as_fraction, rat,
                      sqrt_in_real_subfield)

GROUP_ORDER_BOUND = 384


def _scalar(v, exact=True):
    if exact:
        if isinstance(v, ExactScalar):
            return v
        return rat(v) if isinstance(v, (int, Fraction, str)) else ExactScalar(v)
    return v if isinstance(v, FloatScalar) else FloatScalar(v)


def dot(u, v):
    acc = None
    for a, b in zip(u, v):
        t = a * b
        acc = t if acc is None else acc + t
    return acc


class GroupElement:
    """Orthogonal n x n matrix over the exact field, hashable."""

    __slots__ = ("mat", "_key", "_det")

    def __init__(self, mat: Matrix):
        self.mat = mat
        self._key = tuple(tuple(sorted(r.items())) for r in mat.rows)
        self._det = None

    @property
    def n(self) -> int:
        return self.mat.nrows

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.mat @ other.mat)

    def inverse(self) -> "GroupElement":
        # orthogonal: inverse is the transpose
        return GroupElement(self.mat.transpose())

    def det(self):
        if self._det is None:
            self._det = determinant(self.mat)
        return self._det

    def is_identity(self) -> bool:
        return self.mat == Matrix.identity(self.n, self.mat.exact)

    def apply(self, vec):
        """Matrix action on a coordinate vector (tuple of scalars)."""
        out = []
        for i in range(self.n):
            acc = None
            for j, v in self.mat.rows[i].items():
                t = v * vec[j]
                acc = t if acc is None else acc + t
            out.append(acc if acc is not None else ZERO)
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"GroupElement({self.mat.to_dense()})"


class ParamFunction:
    """Reflection-orbit invariant multiplicity function c."""

    def __init__(self, values: dict):
        self.values = {k: as_fraction(v) for k, v in values.items()}

    @staticmethod
    def from_config(spec, rs: "RootSystem") -> "ParamFunction":
        """Accept a bare rational (all orbits) or a dict keyed by orbit label."""
        labels = rs.orbit_labels()
        if isinstance(spec, dict):
            unknown = set(spec) - set(labels)
            if unknown:
                raise ValueError(f"unknown orbit labels {sorted(unknown)}; "
                                 f"expected {sorted(set(labels))}")
            missing = set(labels) - set(spec)
            if missing:
                raise ValueError(f"missing orbit labels {sorted(missing)}")
            return ParamFunction({k: as_fraction(v) for k, v in spec.items()})
        c = as_fraction(spec)
        return ParamFunction({lab: c for lab in set(labels)})

    def of_root(self, rs: "RootSystem", idx: int) -> Fraction:
        return self.values[rs.orbit_labels()[idx]]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values.values())

    def label(self) -> str:
        items = sorted(self.values.items())
        if len({v for _, v in items}) == 1:
            from .scalars import format_fraction
            return format_fraction(items[0][1])
        from .scalars import format_fraction
        return ";".join(f"{k}={format_fraction(v)}" for k, v in items)


class RootSystem:
    """Reduced root system with stored coroots and the generated group."""

    def __init__(self, n: int, positive_roots, name: str = "custom",
                 exact: bool = True, coroots=None):
        self.n = n
        self.name = name
        self.exact = exact
        self.positive_roots = [tuple(_scalar(x, exact) for x in r)
                               for r in positive_roots]
        for r in self.positive_roots:
            if len(r) != n:
                raise ValueError("root dimension mismatch")
            if all(x.is_zero() for x in r):
                raise ValueError("zero root")
        self.norms_sq = [dot(r, r) for r in self.positive_roots]
        if coroots is not None:
            self.coroots = [tuple(_scalar(x, exact) for x in r)
                            for r in coroots]
        else:
            self.coroots = [tuple(x * n2.inverse() * 2 for x in r)
                            for r, n2 in zip(self.positive_roots,
                                             self.norms_sq)]
        self._root_norms = None
        self._reflections = None
        self._orbit_labels = None
        self._group = None

    # -- lengths ---------------------------------------------------------

    def root_norm(self, idx: int):
        """|alpha| as a field element; errors if it leaves the field."""
        if self._root_norms is None:
            self._root_norms = [None] * len(self.positive_roots)
        if self._root_norms[idx] is None:
            if self.exact:
                s = sqrt_in_real_subfield(self.norms_sq[idx])
                if s is None:
                    raise ValueError(
                        f"|root|^2 = {self.norms_sq[idx]} has no square root "
                        "in Q(sqrt2); use the float backend")
            else:
                s = FloatScalar(self.norms_sq[idx].to_complex() ** 0.5)
            self._root_norms[idx] = s
        return self._root_norms[idx]

    def coroot_norm(self, idx: int):
        cr = self.coroots[idx]
        n2 = dot(cr, cr)
        if self.exact:
            s = sqrt_in_real_subfield(n2)
            if s is None:
                raise ValueError("|coroot| outside Q(sqrt2)")
            return s
        return FloatScalar(n2.to_complex() ** 0.5)

    # -- reflections and the group ---------------------------------------

    def reflection(self, idx: int) -> GroupElement:
        """s_alpha(y) = y - <alpha, y> alpha-check, as an orthogonal matrix."""
        if self._reflections is None:
            self._reflections = [None] * len(self.positive_roots)
        if self._reflections[idx] is None:
            alpha = self.positive_roots[idx]
            cr = self.coroots[idx]
            m = Matrix.identity(self.n, self.exact)
            for i in range(self.n):
                for j in range(self.n):
                    v = m.get(i, j) - cr[i] * alpha[j]
                    m.set(i, j, v)
            g = GroupElement(m)
            self._check_involution(g, idx)
            self._reflections[idx] = g
        return self._reflections[idx]

    def _check_involution(self, g: GroupElement, idx: int):
        if self.exact:
            if not (g * g).is_identity():
                raise ValueError(f"reflection {idx} is not an involution; "
                                 "check <alpha, alpha-check> = 2")

    def reflections(self):
        return [self.reflection(i) for i in range(len(self.positive_roots))]

    def pairing_check(self) -> bool:
        """Validate stored coroots: <a, a-check> = 2 and proportionality
        <x_i, a-check> = (|a-check|^2 / 2) <a, y_i>."""
        for r, cr in zip(self.positive_roots, self.coroots):
            if dot(r, cr) != rat(2):
                return False
            half_crn = dot(cr, cr) * rat(Fraction(1, 2))
            for ri, cri in zip(r, cr):
                if cri != half_crn * ri:
                    return False
        return True

    def group(self) -> "ReflectionGroup":
        if self._group is None:
            self._group = ReflectionGroup(self)
        return self._group

    # -- orbits ------------------------------------------------------------

    def _root_index(self, vec):
        """Index of +-vec among positive roots, or None."""
        for k, r in enumerate(self.positive_roots):
            if all((a - b).is_zero() for a, b in zip(r, vec)):
                return k
            if all((a + b).is_zero() for a, b in zip(r, vec)):
                return k
        return None

    def orbit_labels(self):
        """Per-root orbit label; 'all' for a single orbit, 'short'/'long'
        when exactly two orbits of distinct length, else 'orb<k>'."""
        if self._orbit_labels is not None:
            return self._orbit_labels
        nroots = len(self.positive_roots)
        parent = list(range(nroots))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

        for gi in range(nroots):
            g = self.reflection(gi)
            for ai in range(nroots):
                img = g.apply(self.positive_roots[ai])
                k = self._root_index(img)
                if k is None:
                    raise ValueError("root system not closed under W")
                union(ai, k)
        reps = sorted({find(i) for i in range(nroots)})
        if len(reps) == 1:
            labels = ["all"] * nroots
        elif len(reps) == 2:
            n0 = self.norms_sq[reps[0]]
            n1 = self.norms_sq[reps[1]]
            if n0 != n1:
                short_rep = reps[0] if (n0 - n1).sign_real() < 0 else reps[1]
                labels = ["short" if find(i) == short_rep else "long"
                          for i in range(nroots)]
            else:
                labels = [f"orb{reps.index(find(i))}" for i in range(nroots)]
        else:
            labels = [f"orb{reps.index(find(i))}" for i in range(nroots)]
        self._orbit_labels = labels
        return labels

    def simple_root_indices(self):
        """alpha is simple iff s_alpha permutes the other positive roots."""
        out = []
        for i in range(len(self.positive_roots)):
            s = self.reflection(i)
            ok = True
            for j, beta in enumerate(self.positive_roots):
                if j == i:
                    continue
                img = s.apply(beta)
                if not self._is_positive_vec(img):
                    ok = False
                    break
            if ok:
                out.append(i)
        return out

    def _is_positive_vec(self, vec) -> bool:
        for x in vec:
            if x.is_zero():
                continue
            if self.exact:
                return x.sign_real() > 0
            return x.v.real > 0
        return False

    def __repr__(self):
        return (f"RootSystem({self.name}, n={self.n}, "
                f"{len(self.positive_roots)} positive roots)")


class ReflectionGroup:
    """BFS closure of the reflections, with lex-first shortest words.

    Elements are enumerated breadth-first over all reflection generators in
    root order, so words[i] is the lexicographically first factorization of
    elements[i] of minimal reflection length.
    """

    def __init__(self, rs: RootSystem, bound: int = GROUP_ORDER_BOUND):
        self.rs = rs
        gens = rs.reflections()
        ident = GroupElement(Matrix.identity(rs.n, rs.exact))
        self.elements = [ident]
        self.words = [()]
        self.index = {self._key(ident): 0}
        frontier = [0]
        while frontier:
            next_frontier = []
            for ei in frontier:
                g = self.elements[ei]
                w = self.words[ei]
                for gi, s in enumerate(gens):
                    h = g * s
                    k = self._key(h)
                    if k not in self.index:
                        self.index[k] = len(self.elements)
                        self.elements.append(h)
                        self.words.append(w + (gi,))
                        next_frontier.append(len(self.elements) - 1)
                        if len(self.elements) > bound:
                            raise ValueError(
                                f"group order exceeds bound {bound}")
            frontier = next_frontier
        self.order = len(self.elements)
        self._reflection_idx = [self.index_of(s) for s in gens]
        self._mul_cache: dict = {}
        self._inv_cache: dict = {}

    def _key(self, g: GroupElement):
        if self.rs.exact:
            return g._key
        return tuple(tuple((j, round(v.v.real, 9), round(v.v.imag, 9))
                           for j, v in sorted(r.items()))
                     for r in g.mat.rows)

    def index_of(self, g: GroupElement) -> int:
        return self.index[self._key(g)]

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        out = self._mul_cache.get(key)
        if out is None:
            out = self.index_of(self.elements[i] * self.elements[j])
            self._mul_cache[key] = out
        return out

    def inv(self, i: int) -> int:
        out = self._inv_cache.get(i)
        if out is None:
            out = self.index_of(self.elements[i].inverse())
            self._inv_cache[i] = out
        return out

    def reflection_element_index(self, root_idx: int) -> int:
        return self._reflection_idx[root_idx]

    def identity_index(self) -> int:
        return 0

    def minus_identity_index(self):
        m = Matrix.identity(self.rs.n, self.rs.exact).scale(-1)
        return self.index.get(self._key(GroupElement(m)))

    def has_minus_identity(self) -> bool:
        return self.minus_identity_index() is not None

    def element_order(self, i: int) -> int:
        k, cur = 1, i
        while cur != 0:
            cur = self.mul(cur, i)
            k += 1
        return k

    def conjugacy_classes(self):
        """List of sorted element-index lists, deterministic order."""
        seen = set()
        classes = []
        for i in range(self.order):
            if i in seen:
                continue
            cls = set()
            for g in range(self.order):
                cls.add(self.mul(self.mul(g, i), self.inv(g)))
            classes.append(sorted(cls))
            seen |= cls
        return classes


def wedge2_trivial_elements(rs: RootSystem):
    """Indices of group elements acting trivially on Lambda^2 R^n.

    Returns them as a sorted list; {1} or {1, -1} by the classification.
    """
    if rs.n < 2:
        raise ValueError("wedge^2 needs n >= 2")
    grp = rs.group()
    out = []
    pairs = [(k, l) for k in range(rs.n) for l in range(rs.n) if k < l]
    for idx, g in enumerate(grp.elements):
        trivial = True
        for (i, j) in pairs:
            for (k, l) in pairs:
                # coefficient of e_k ^ e_l in g e_i ^ g e_j
                v = (g.mat.get(k, i) * g.mat.get(l, j)
                     - g.mat.get(l, i) * g.mat.get(k, j))
                want = ONE if (k, l) == (i, j) else ZERO
                if v != want:
                    trivial = False
                    break
            if not trivial:
                break
        if trivial:
            out.append(idx)
    return out


# -- built-in systems --------------------------------------------------------


def _sym_roots(n: int):
    return [[1 if k == i else (-1 if k == j else 0) for k in range(n)]
            for i in range(n) for j in range(i + 1, n)]


def _type_b_roots(n: int):
    roots = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            roots.append([1 if k == i else (-1 if k == j else 0)
                          for k in range(n)])
            roots.append([1 if k == i or k == j else 0 for k in range(n)])
    return roots


def _type_d_roots(n: int):
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            roots.append([1 if k == i else (-1 if k == j else 0)
                          for k in range(n)])
            roots.append([1 if k == i or k == j else 0 for k in range(n)])
    return roots


def root_system(name_or_spec, exact: bool = True) -> RootSystem:
    """Built-in root systems by name, or a custom list of positive roots.

    Names: S2..S9 (type A_{n-1} on R^n), A1 (rank one on R^1), B2..B9,
    D2..D9, I2(4) as an alias for B2.  A custom spec is a dict
    {"roots": [[...], ...]} with rational or rational*sqrt2 entries
    ('p/q' or 'p/q*sqrt2' strings).
    """
    if isinstance(name_or_spec, dict):
        roots = [[_parse_root_entry(x) for x in r]
                 for r in name_or_spec["roots"]]
        n = len(roots[0])
        return RootSystem(n, roots, name=name_or_spec.get("name", "custom"),
                          exact=exact)
    name = str(name_or_spec).strip()
    if name == "I2(4)":
        name = "B2"
    if name == "A1":
        return RootSystem(1, [[1]], name="A1", exact=exact)
    kind, num = name[0], name[1:]
    if not num.isdigit():
        raise ValueError(f"unknown root system {name!r}")
    k = int(num)
    if kind == "S" and k >= 2:
        return RootSystem(k, _sym_roots(k), name=name, exact=exact)
    if kind == "B" and k >= 2:
        return RootSystem(k, _type_b_roots(k), name=name, exact=exact)
    if kind == "D" and k >= 2:
        return RootSystem(k, _type_d_roots(k), name=name, exact=exact)
    raise ValueError(f"unknown root system {name!r}")


def _parse_root_entry(x):
    if isinstance(x, str) and "sqrt2" in x:
        coef = x.replace("sqrt2", "").replace("*", "").strip()
        f = as_fraction(coef) if coef not in ("", "+", "-") else \
            Fraction(1) if coef != "-" else Fraction(-1)
        return ExactScalar(0, f)
    return rat(as_fraction(x))
