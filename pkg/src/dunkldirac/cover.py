"""Double cover of a reflection group inside the Clifford algebra.

Each group element gets a canonical lift: the product of reflection lifts
iota(coroot)/|coroot| along its breadth-first shortest word.  Products of
lifts agree with the lift of the product up to a sign, the cocycle mu, and
the group algebra of the cover splits into a plain part (central involution
sent to +1) and a mu-twisted part (sent to -1).  Elements are stored as
coefficients on the group basis of the two parts separately; the twisted
part is NOT modeled as its image in the Clifford algebra, which can be a
proper quotient.

When -1 is in the group, the cover is extended by an extra central order-2
generator g mapping to (group element -1) tensor (Clifford identity).
"""
from __future__ import annotations

from .clifford import CliffordElement, vector_embed
from .roots import ReflectionGroup, RootSystem
from .scalars import ExactScalar, ONE, ZERO, rat


class PinCover:
    """Canonical lifts, the sign cocycle, and star signs for one group."""

    def __init__(self, rs: RootSystem):
        if not rs.exact:
            raise ValueError("the double cover needs the exact backend")
        self.rs = rs
        self.group: ReflectionGroup = rs.group()
        self.n = rs.n
        self._refl_lifts = [self._unit_coroot(i)
                            for i in range(len(rs.positive_roots))]
        self.lifts = []
        for word in self.group.words:
            lift = CliffordElement.scalar(self.n, 1)
            for r in word:
                lift = lift * self._refl_lifts[r]
            self.lifts.append(lift)
        self._mu: dict = {}
        self._nu: dict = {}
        self.g_index = self.group.minus_identity_index()

    def _unit_coroot(self, idx: int) -> CliffordElement:
        cr = self.rs.coroots[idx]
        nrm = self.rs.coroot_norm(idx)
        return vector_embed(self.n, cr) * nrm.inverse()

    def reflection_lift(self, root_idx: int) -> CliffordElement:
        return self._refl_lifts[root_idx]

    def lift(self, elem_idx: int) -> CliffordElement:
        return self.lifts[elem_idx]

    def cocycle(self, i: int, j: int) -> int:
        """mu(u, v) = +-1 with lift(u) lift(v) = mu(u, v) lift(uv)."""
        key = (i, j)
        out = self._mu.get(key)
        if out is None:
            prod = self.lifts[i] * self.lifts[j]
            k = self.group.mul(i, j)
            if prod == self.lifts[k]:
                out = 1
            elif prod == -self.lifts[k]:
                out = -1
            else:
                raise RuntimeError(
                    "lift product is not a signed lift; cover is corrupted")
            self._mu[key] = out
        return out

    def star_sign(self, i: int) -> int:
        """nu(w) = det(w) mu(w, w^-1), the twisted-part star coefficient."""
        out = self._nu.get(i)
        if out is None:
            d = self.group.elements[i].det()
            ds = 1 if d == ONE else -1
            out = ds * self.cocycle(i, self.group.inv(i))
            self._nu[i] = out
        return out

    def has_g(self) -> bool:
        return self.g_index is not None

    # -- structure checks -------------------------------------------------

    def projection_check(self) -> bool:
        """epsilon(lift) iota(y) lift^-1 = iota(w y) on basis vectors.

        lift^-1 = reversal(lift) since the factors are unit vectors.
        """
        for i, g in enumerate(self.group.elements):
            lift = self.lifts[i]
            linv = lift.reversal()
            if (lift * linv).scalar_part() != ONE:
                return False
            for j in range(self.n):
                basis = [ONE if k == j else ZERO for k in range(self.n)]
                lhs = lift.grading_sign() * vector_embed(self.n, basis) * linv
                if lhs != vector_embed(self.n, g.apply(basis)):
                    return False
        return True

    def conjugation_sign_check(self) -> bool:
        """lift(a) lift(b) lift(a) = -s-tilde of the reflected root, over all
        pairs of positive roots."""
        rs = self.rs

        def exact_match(vec):
            for k, r in enumerate(rs.positive_roots):
                if all((x - y).is_zero() for x, y in zip(r, vec)):
                    return k
            return None

        for a in range(len(rs.positive_roots)):
            sa = rs.reflection(a)
            la = self._refl_lifts[a]
            for b in range(len(rs.positive_roots)):
                lhs = la * self._refl_lifts[b] * la
                gvec = sa.apply(rs.positive_roots[b])
                idx = exact_match(gvec)
                if idx is not None:
                    want = -self._refl_lifts[idx]
                else:
                    idx = exact_match([-x for x in gvec])
                    if idx is None:
                        return False
                    want = self._refl_lifts[idx]
                if lhs != want:
                    return False
        return True

    def braid_sign_check(self) -> bool:
        """(lift(a) lift(b))^m = (-1)^(m-1) for simple roots a, b, where m is
        the order of s_a s_b in the group."""
        simples = self.rs.simple_root_indices()
        grp = self.group
        for a in simples:
            for b in simples:
                ia = grp.reflection_element_index(a)
                ib = grp.reflection_element_index(b)
                m = grp.element_order(grp.mul(ia, ib)) if ia != ib else 1
                prod = self._refl_lifts[a] * self._refl_lifts[b]
                acc = CliffordElement.scalar(self.n, 1)
                for _ in range(m):
                    acc = acc * prod
                want = CliffordElement.scalar(self.n, 1 if (m - 1) % 2 == 0
                                              else -1)
                if acc != want:
                    return False
        return True

    def cocycle_identity_check(self) -> bool:
        """mu(u,v) mu(uv,w) = mu(v,w) mu(u,vw), full scan."""
        grp = self.group
        for u in range(grp.order):
            for v in range(grp.order):
                muv = self.cocycle(u, v)
                uv = grp.mul(u, v)
                for w in range(grp.order):
                    if (muv * self.cocycle(uv, w)
                            != self.cocycle(v, w)
                            * self.cocycle(u, grp.mul(v, w))):
                        return False
        return True


def _dict_add(acc: dict, key, val) -> None:
    cur = acc.get(key)
    s = val if cur is None else cur + val
    if s.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = s


class GroupAlgebraElement:
    """Element of the plain group algebra CW, coefficients on element
    indices."""

    __slots__ = ("cover", "coeffs")

    def __init__(self, cover: PinCover, coeffs: dict | None = None):
        self.cover = cover
        self.coeffs = {k: v for k, v in (coeffs or {}).items()
                       if not v.is_zero()}

    @staticmethod
    def from_element(cover: PinCover, idx: int, coeff=ONE):
        return GroupAlgebraElement(cover, {idx: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _dict_add(out, k, v)
        return GroupAlgebraElement(self.cover, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GroupAlgebraElement(self.cover,
                                   {k: -v for k, v in self.coeffs.items()})

    def scale(self, s):
        s = s if isinstance(s, ExactScalar) else rat(s)
        return GroupAlgebraElement(self.cover,
                                   {k: v * s for k, v in self.coeffs.items()})

    def __mul__(self, other):
        grp = self.cover.group
        out: dict = {}
        for i, vi in self.coeffs.items():
            for j, vj in other.coeffs.items():
                _dict_add(out, grp.mul(i, j), vi * vj)
        return GroupAlgebraElement(self.cover, out)

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"GroupAlgebraElement({self.coeffs})"


class HatElement:
    """Element of the (possibly extended) cover algebra.

    Stored as four coefficient dicts over group-element indices:
    p ("plain part"), m (twisted part), and gp/gm for the coefficients of
    the extra central generator g when -1 is in the group.  Plain and
    twisted parts are orthogonal ideals; the twisted part multiplies
    through the cocycle.
    """

    __slots__ = ("cover", "p", "m", "gp", "gm")

    def __init__(self, cover: PinCover, p=None, m=None, gp=None, gm=None):
        self.cover = cover
        self.p = {k: v for k, v in (p or {}).items() if not v.is_zero()}
        self.m = {k: v for k, v in (m or {}).items() if not v.is_zero()}
        self.gp = {k: v for k, v in (gp or {}).items() if not v.is_zero()}
        self.gm = {k: v for k, v in (gm or {}).items() if not v.is_zero()}
        if (self.gp or self.gm) and not cover.has_g():
            raise ValueError("g-extension only exists when -1 is in the group")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(cover: PinCover) -> "HatElement":
        return HatElement(cover)

    @staticmethod
    def one(cover: PinCover) -> "HatElement":
        return HatElement(cover, p={0: ONE}, m={0: ONE})

    @staticmethod
    def from_lift(cover: PinCover, idx: int, coeff=ONE) -> "HatElement":
        """Image of the canonical lift of group element idx: both parts."""
        return HatElement(cover, p={idx: coeff}, m={idx: coeff})

    @staticmethod
    def g(cover: PinCover) -> "HatElement":
        return HatElement(cover, gp={0: ONE}, gm={0: ONE})

    def is_zero(self) -> bool:
        return not (self.p or self.m or self.gp or self.gm)

    def __add__(self, other):
        def merged(a, b):
            out = dict(a)
            for k, v in b.items():
                _dict_add(out, k, v)
            return out
        return HatElement(self.cover, merged(self.p, other.p),
                          merged(self.m, other.m),
                          merged(self.gp, other.gp),
                          merged(self.gm, other.gm))

    def __neg__(self):
        neg = lambda d: {k: -v for k, v in d.items()}
        return HatElement(self.cover, neg(self.p), neg(self.m),
                          neg(self.gp), neg(self.gm))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "HatElement":
        s = s if isinstance(s, ExactScalar) else rat(s)
        sc = lambda d: {k: v * s for k, v in d.items()}
        return HatElement(self.cover, sc(self.p), sc(self.m),
                          sc(self.gp), sc(self.gm))

    def __mul__(self, other: "HatElement") -> "HatElement":
        grp = self.cover.group
        mu = self.cover.cocycle
        p: dict = {}
        m: dict = {}
        gp: dict = {}
        gm: dict = {}

        def plain(a, b, out):
            for i, vi in a.items():
                for j, vj in b.items():
                    _dict_add(out, grp.mul(i, j), vi * vj)

        def twisted(a, b, out):
            for i, vi in a.items():
                for j, vj in b.items():
                    v = vi * vj
                    if mu(i, j) < 0:
                        v = -v
                    _dict_add(out, grp.mul(i, j), v)

        plain(self.p, other.p, p)
        plain(self.gp, other.gp, p)
        plain(self.p, other.gp, gp)
        plain(self.gp, other.p, gp)
        twisted(self.m, other.m, m)
        twisted(self.gm, other.gm, m)
        twisted(self.m, other.gm, gm)
        twisted(self.gm, other.m, gm)
        return HatElement(self.cover, p, m, gp, gm)

    def commutator(self, other: "HatElement") -> "HatElement":
        return self * other - other * self

    def star(self) -> "HatElement":
        grp = self.cover.group
        nu = self.cover.star_sign

        def plain(d):
            return {grp.inv(k): v.conjugate() for k, v in d.items()}

        def twisted(d):
            out = {}
            for k, v in d.items():
                w = v.conjugate()
                if nu(k) < 0:
                    w = -w
                out[grp.inv(k)] = w
            return out

        return HatElement(self.cover, plain(self.p), twisted(self.m),
                          plain(self.gp), twisted(self.gm))

    def __eq__(self, other):
        if not isinstance(other, HatElement):
            return NotImplemented
        return (self.p == other.p and self.m == other.m
                and self.gp == other.gp and self.gm == other.gm)

    def __repr__(self):
        return (f"HatElement(p={self.p}, m={self.m}, "
                f"gp={self.gp}, gm={self.gm})")

    # -- structure ----------------------------------------------------------

    def twisted_part(self) -> "HatElement":
        return HatElement(self.cover, m=self.m, gm=self.gm)

    def plain_part(self) -> "HatElement":
        return HatElement(self.cover, p=self.p, gp=self.gp)

    def rho_terms(self) -> dict:
        """Formal image under rho: dict group index -> CliffordElement.

        The plain part dies; a twisted basis element goes to (element,
        canonical lift); a g-factor multiplies the group element by -1 and
        leaves the Clifford factor alone.
        """
        cov = self.cover
        out: dict = {}
        for k, v in self.m.items():
            cur = out.get(k)
            term = cov.lifts[k] * v
            out[k] = term if cur is None else cur + term
        for k, v in self.gm.items():
            kk = cov.group.mul(cov.g_index, k)
            term = cov.lifts[k] * v
            cur = out.get(kk)
            out[kk] = term if cur is None else cur + term
        return {k: v for k, v in out.items() if not v.is_zero()}


def is_admissible(elem: HatElement):
    """Central and star-fixed; returns (flag, list of failed conditions).

    Centrality is tested against the generators of each ideal: the simple
    reflections in the plain part and their lifts in the twisted part.
    """
    cov = elem.cover
    grp = cov.group
    failures = []
    for r in cov.rs.simple_root_indices():
        i = grp.reflection_element_index(r)
        gen_p = HatElement(cov, p={i: ONE})
        gen_m = HatElement(cov, m={i: ONE})
        if not elem.commutator(gen_p).is_zero():
            failures.append(f"does not commute with plain s[{r}]")
        if not elem.commutator(gen_m).is_zero():
            failures.append(f"does not commute with twisted s[{r}]")
    if cov.has_g():
        gen_g = HatElement.g(cov)
        if not elem.commutator(gen_g).is_zero():
            failures.append("does not commute with g")
    if elem.star() != elem:
        failures.append("not star-fixed")
    return (not failures), failures


# -- distinguished elements -------------------------------------------------


def center_shift(cover: PinCover, param) -> GroupAlgebraElement:
    """The central sum of reflections sum_a c_a s_a in the plain group
    algebra (no one-half; the half-normalized variant is the plain part
    of ztilde)."""
    rs = cover.rs
    out: dict = {}
    for idx in range(len(rs.positive_roots)):
        ca = rat(param.of_root(rs, idx))
        _dict_add(out, cover.group.reflection_element_index(idx), ca)
    return GroupAlgebraElement(cover, out)


def ztilde(cover: PinCover, param) -> HatElement:
    """1/2 sum_a c_a (lift of s_a), in both parts."""
    rs = cover.rs
    p: dict = {}
    for idx in range(len(rs.positive_roots)):
        ca = rat(param.of_root(rs, idx)) * rat("1/2")
        _dict_add(p, cover.group.reflection_element_index(idx), ca)
    return HatElement(cover, p=dict(p), m=dict(p))


def build_C2(cover: PinCover, param) -> HatElement:
    zt = ztilde(cover, param)
    c2 = zt * zt
    ok, failures = is_admissible(c2)
    if not ok:
        raise RuntimeError(f"C2 failed its admissibility check: {failures}")
    return c2


def build_T(cover: PinCover, param, i: int) -> GroupAlgebraElement:
    """T_i = 1/2 sum_a c_a <x_i, coroot_a>/|coroot_a| s_a."""
    rs = cover.rs
    out: dict = {}
    for idx in range(len(rs.positive_roots)):
        comp = rs.coroots[idx][i]
        if comp.is_zero():
            continue
        ca = (rat(param.of_root(rs, idx)) * rat("1/2") * comp
              * rs.coroot_norm(idx).inverse())
        _dict_add(out, cover.group.reflection_element_index(idx), ca)
    return GroupAlgebraElement(cover, out)


def build_T_bullet(cover: PinCover, param, i: int) -> GroupAlgebraElement:
    """The bullet variant 1/2 sum_a c_a <a, y_i>/|a| s_a; equals build_T."""
    rs = cover.rs
    out: dict = {}
    for idx in range(len(rs.positive_roots)):
        comp = rs.positive_roots[idx][i]
        if comp.is_zero():
            continue
        ca = (rat(param.of_root(rs, idx)) * rat("1/2") * comp
              * rs.root_norm(idx).inverse())
        _dict_add(out, cover.group.reflection_element_index(idx), ca)
    return GroupAlgebraElement(cover, out)


def build_Z3(cover: PinCover, param) -> GroupAlgebraElement:
    """1/4 sum_{a,b} c_a c_b <b, coroot_a> / (|coroot_a| |b|) s_a s_b.

    Centrality in the plain group algebra is verified against every group
    element before returning.
    """
    rs = cover.rs
    grp = cover.group
    out: dict = {}
    for a in range(len(rs.positive_roots)):
        ca = rat(param.of_root(rs, a)) * rs.coroot_norm(a).inverse()
        ia = grp.reflection_element_index(a)
        for b in range(len(rs.positive_roots)):
            pair = sum((x * y for x, y in zip(rs.positive_roots[b],
                                              rs.coroots[a])), ZERO)
            if pair.is_zero():
                continue
            cb = rat(param.of_root(rs, b)) * rs.root_norm(b).inverse()
            ib = grp.reflection_element_index(b)
            _dict_add(out, grp.mul(ia, ib),
                      ca * cb * pair * rat("1/4"))
    z3 = GroupAlgebraElement(cover, out)
    for w in range(grp.order):
        gw = GroupAlgebraElement.from_element(cover, w)
        if not z3.commutator(gw).is_zero():
            raise RuntimeError("Z3 is not central in the group algebra")
    return z3


def jucys_murphy(cover: PinCover, k: int) -> HatElement:
    """Twisted-part sum of the transpositions (i k), i < k, for symmetric
    groups in their permutation realization; m_1 = 0."""
    rs = cover.rs
    m: dict = {}
    found_k = False
    for idx, root in enumerate(rs.positive_roots):
        spots = {j: v for j, v in enumerate(root) if not v.is_zero()}
        vals = sorted(str(v) for v in spots.values())
        if len(spots) != 2 or vals != ["-1", "1"]:
            raise ValueError("Jucys-Murphy elements need transposition roots")
        lo, hi = sorted(spots)
        if hi == k - 1:
            found_k = True
            _dict_add(m, cover.group.reflection_element_index(idx), ONE)
    if not found_k and k != 1:
        raise ValueError(f"index {k} out of range for this group")
    return HatElement(cover, m=m)


def jm_elements(cover: PinCover) -> list:
    """The elements m_1 = 0, m_2, ..., m_n, with build-time validation of
    the all-positive sign convention: the m_k must be star-negated and
    pairwise anticommuting, and every square star-fixed.  (The squares
    generate a commutative subalgebra but are individually central only
    for n <= 3; centrality belongs to their symmetric polynomials.)"""
    out = [jucys_murphy(cover, k) for k in range(1, cover.n + 1)]
    for k, mk in enumerate(out, start=1):
        if mk.star() != -mk:
            raise RuntimeError(
                f"Jucys-Murphy element {k} (all-positive convention) "
                "is not star-negated")
        sq = mk * mk
        if sq.star() != sq:
            raise RuntimeError(
                f"square of Jucys-Murphy element {k} is not star-fixed")
        for j in range(k - 1):
            anti = out[j] * mk + mk * out[j]
            if not anti.is_zero():
                raise RuntimeError(
                    f"Jucys-Murphy elements {j + 1} and {k} (all-positive "
                    "convention) do not anticommute")
    return out


def jm_symmetric_elements(cover: PinCover) -> dict:
    """e1 = sum of squares and e2 = second elementary symmetric polynomial
    of the squared Jucys-Murphy elements."""
    squares = [mk * mk for mk in jm_elements(cover)[1:]]
    e1 = HatElement.zero(cover)
    for s in squares:
        e1 = e1 + s
    e2 = HatElement.zero(cover)
    for a in range(len(squares)):
        for b in range(a + 1, len(squares)):
            e2 = e2 + squares[a] * squares[b]
    return {"e1": e1, "e2": e2, "squares": squares}
