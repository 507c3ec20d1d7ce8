"""Angular momentum algebra operators and their defining identities.

Everything here lives on a ModuleFamily: M_ij = x_i y_j - x_j y_i, the
group-algebra coefficients S_ij = [y_i, x_j], the central reflection sum Z,
the sl(2) triple H, X, Y, its Casimir, and the angular momentum square.
The check functions verify the algebra's commutation and crossing
relations, the centralizer property of the triple, and the closed-form
expressions tying the Casimir to the angular momentum square, all as exact
matrix identities on every degree both sides of an equation know about.

Reports are lists of {check_id, status, witness} records; a witness pins
the first differing matrix entry (degree, position, both values).
"""

from .linalg import Matrix
from .polyrep import GradedOperator, ModuleFamily, center_op, s_op
from .scalars import rat


class AmaContext:
    """Cached operator bundle for one (root system, c, tau, degree) choice.

    The constructor verifies the normal-ordering identity
    H = x.y + n/2 + Z; everything else is built lazily.
    """

    def __init__(self, family: ModuleFamily):
        self.family = family
        self.rs = family.rs
        self.n = family.n
        self._m: dict = {}
        self._s: dict = {}
        self._cache: dict = {}
        if not self._sym_h().matches(self.H):
            raise RuntimeError("H = x.y + n/2 + Z failed at build time")

    # -- generators ------------------------------------------------------------

    def x(self, i: int) -> GradedOperator:
        return self.family.x_op(i)

    def y(self, i: int) -> GradedOperator:
        return self.family.y_op(i)

    def w(self, w_index: int) -> GradedOperator:
        return self.family.w_op(w_index)

    def M(self, i: int, j: int) -> GradedOperator:
        """Angular momentum x_i y_j - x_j y_i; antisymmetric, M_ii = 0."""
        if i == j:
            return self.family.scalar_op(0)
        if i > j:
            return -self.M(j, i)
        got = self._m.get((i, j))
        if got is None:
            got = (self.x(i) @ self.y(j)) - (self.x(j) @ self.y(i))
            self._m[(i, j)] = got
        return got

    def S(self, i: int, j: int) -> GradedOperator:
        got = self._s.get((i, j))
        if got is None:
            got = s_op(self.family, i, j)
            self._s[(i, j)] = got
        return got

    def _memo(self, key, builder):
        got = self._cache.get(key)
        if got is None:
            got = builder()
            self._cache[key] = got
        return got

    @property
    def Z(self) -> GradedOperator:
        return self._memo("Z", lambda: center_op(self.family))

    def _dot(self, a, b):
        acc = None
        for i in range(1, self.n + 1):
            t = a(i) @ b(i)
            acc = t if acc is None else acc + t
        return acc

    @property
    def xy(self) -> GradedOperator:
        return self._memo("xy", lambda: self._dot(self.x, self.y))

    @property
    def yx(self) -> GradedOperator:
        return self._memo("yx", lambda: self._dot(self.y, self.x))

    def _sym_h(self) -> GradedOperator:
        return (self.xy + self.yx).scale(rat("1/2"))

    @property
    def H(self) -> GradedOperator:
        """Normal-ordered form x.y + n/2 + Z, valid on all degrees."""
        return self._memo(
            "H", lambda: self.xy + self.family.scalar_op(
                rat(self.n) * rat("1/2")) + self.Z)

    @property
    def X(self) -> GradedOperator:
        return self._memo(
            "X", lambda: self._dot(self.x, self.x).scale(rat("-1/2")))

    @property
    def Y(self) -> GradedOperator:
        return self._memo(
            "Y", lambda: self._dot(self.y, self.y).scale(rat("1/2")))

    @property
    def msquare(self) -> GradedOperator:
        def build():
            acc = None
            for i in range(1, self.n + 1):
                for j in range(i + 1, self.n + 1):
                    t = self.M(i, j) @ self.M(i, j)
                    acc = t if acc is None else acc + t
            if acc is None:
                acc = self.family.scalar_op(0)
            return acc
        return self._memo("msquare", build)

    @property
    def omega(self) -> GradedOperator:
        """Casimir via the angular momentum square, valid on all degrees.

        The sl(2) expression H^2 + 2(XY + YX) loses the top two degrees to
        clipping; the two agree where both exist (msquared_identities_check).
        """
        def build():
            zshift = self.Z + self.family.scalar_op(
                rat(self.n - 2) * rat("1/2"))
            return (-self.msquare) + (zshift @ zshift) \
                - self.family.identity_op()
        return self._memo("omega", build)

    @property
    def omega_sl2(self) -> GradedOperator:
        def build():
            h = self._sym_h()
            xy_ = (self.X @ self.Y) + (self.Y @ self.X)
            return (h @ h) + xy_.scale(2)
        return self._memo("omega_sl2", build)

    @property
    def h_omega(self) -> GradedOperator:
        """Angular Hamiltonian, derived from the Casimir: (omega - n(n-4)/4)/2."""
        def build():
            shift = rat(self.n * (self.n - 4)) * rat("1/4")
            return (self.omega - self.family.scalar_op(shift)).scale(
                rat("1/2"))
        return self._memo("h_omega", build)

    # -- tau-level data ----------------------------------------------------------

    def tau_shift_matrix(self):
        """Matrix of sum_a c_a tau(s_a) on the tau factor alone."""
        def build():
            fam = self.family
            acc = None
            for r, c in enumerate(fam._cs):
                if c.is_zero():
                    continue
                t = fam.tau.mat(
                    fam.group.reflection_element_index(r)).scale(c)
                acc = t if acc is None else acc + t
            if acc is None:
                acc = Matrix(fam.tau.dim, fam.tau.dim)
            return acc
        return self._memo("tau_shift", build)

    def tau_shift_scalar(self):
        """The scalar by which Z acts on tau, or None if tau is reducible
        enough for Z to act non-scalarly."""
        return self.tau_shift_matrix().is_scalar_multiple_of_identity()

    def h_scalar(self, m: int):
        """Eigenvalue m + n/2 + N_c(tau) of H on degree m, or None."""
        shift = self.tau_shift_scalar()
        if shift is None:
            return None
        return rat(m) + rat(self.n) * rat("1/2") + shift


def build_context(rs, param, max_degree: int, tau) -> AmaContext:
    return AmaContext(ModuleFamily(rs, param, tau, max_degree=max_degree))


# -- reports -------------------------------------------------------------------


def _rec(records: list, check_id: str, lhs: GradedOperator,
         rhs: GradedOperator) -> None:
    bad = lhs.first_mismatch(rhs)
    if bad is None:
        records.append({"check_id": check_id, "status": "pass",
                        "witness": None})
    else:
        m, (r, c), a, b = bad
        records.append({"check_id": check_id, "status": "fail",
                        "witness": {"degree": m, "entry": [r, c],
                                    "lhs": str(a), "rhs": str(b)}})


def report_passes(records: list) -> bool:
    return all(r["status"] == "pass" for r in records)


def _index_tuples(n: int):
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    yield (i, j, k, l)


def ama_relations_check(ctx: AmaContext, tuples=None) -> list:
    """Commutation and crossing relations over index tuples, plus S_ij = S_ji.

    [M_ij, M_kl] = M_il S_jk + M_jk S_il - M_ik S_jl - M_jl S_ik and
    M_ij M_kl + M_jk M_il + M_ki M_jl = M_ij S_kl + M_jk S_il + M_ki S_jl,
    for all 1 <= i,j,k,l <= n by default.
    """
    records: list = []
    n = ctx.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            _rec(records, f"S{i}{j} = S{j}{i}", ctx.S(i, j), ctx.S(j, i))
    for (i, j, k, l) in (tuples if tuples is not None else _index_tuples(n)):
        lhs = ctx.M(i, j).commutator(ctx.M(k, l))
        rhs = (ctx.M(i, l) @ ctx.S(j, k)) + (ctx.M(j, k) @ ctx.S(i, l)) \
            - (ctx.M(i, k) @ ctx.S(j, l)) - (ctx.M(j, l) @ ctx.S(i, k))
        _rec(records, f"commutation ({i},{j},{k},{l})", lhs, rhs)
        lhs = (ctx.M(i, j) @ ctx.M(k, l)) + (ctx.M(j, k) @ ctx.M(i, l)) \
            + (ctx.M(k, i) @ ctx.M(j, l))
        rhs = (ctx.M(i, j) @ ctx.S(k, l)) + (ctx.M(j, k) @ ctx.S(i, l)) \
            + (ctx.M(k, i) @ ctx.S(j, l))
        _rec(records, f"crossing ({i},{j},{k},{l})", lhs, rhs)
    return records


def centralizer_check(ctx: AmaContext) -> list:
    """M_ij and every group element commute with the sl(2) triple."""
    records: list = []
    triple = (("H", ctx.H), ("X", ctx.X), ("Y", ctx.Y))
    n = ctx.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            mij = ctx.M(i, j)
            for name, op in triple:
                comm = mij.commutator(op)
                _rec(records, f"[M{i}{j},{name}] = 0", comm, _zero(comm))
    for wi in range(ctx.family.group.order):
        wop = ctx.w(wi)
        for name, op in triple:
            comm = wop.commutator(op)
            _rec(records, f"[w{wi},{name}] = 0", comm, _zero(comm))
    return records


def _zero(op: GradedOperator) -> GradedOperator:
    return GradedOperator(op.family, op.shift,
                          {m: Matrix(b.nrows, b.ncols)
                           for m, b in op.blocks.items()})


def msquared_identities_check(ctx: AmaContext) -> list:
    """The closed forms for M^2 and the Casimir, and the sl(2) triple.

    Verifies M^2 = x^2 y^2 - (x.y)^2 - (x.y)(2Z + n - 2), the Casimir
    identity omega = -M^2 + (Z + (n-2)/2)^2 - 1, omega = H^2 + 2(XY + YX)
    on its window, the bracket normalization [H,X] = 2X, [H,Y] = -2Y,
    [X,Y] = H (signs pinned by the classical c = 0 Weyl-algebra triple),
    and the derived angular Hamiltonian relation omega = 2 h_omega + n(n-4)/4.
    """
    records: list = []
    fam = ctx.family
    n = ctx.n
    x2 = ctx.X.scale(-2)
    y2 = ctx.Y.scale(2)
    rhs = (x2 @ y2) - (ctx.xy @ ctx.xy) \
        - (ctx.xy @ (ctx.Z.scale(2) + fam.scalar_op(n - 2)))
    _rec(records, "M^2 closed form", ctx.msquare, rhs)
    _rec(records, "omega vs M^2", ctx.omega_sl2, ctx.omega)
    zz = ctx.Z @ (ctx.Z + fam.scalar_op(n - 2))
    alt = (-ctx.msquare) + zz + fam.scalar_op(
        rat(n * (n - 4)) * rat("1/4"))
    _rec(records, "omega vs M^2, expanded form", ctx.omega, alt)
    _rec(records, "[H,X] = 2X", ctx.H.commutator(ctx.X), ctx.X.scale(2))
    _rec(records, "[H,Y] = -2Y", ctx.H.commutator(ctx.Y), ctx.Y.scale(-2))
    _rec(records, "[X,Y] = H", ctx.X.commutator(ctx.Y), ctx.H)
    _rec(records, "omega = 2 h_omega + n(n-4)/4",
         ctx.omega,
         ctx.h_omega.scale(2) + fam.scalar_op(rat(n * (n - 4)) * rat("1/4")))
    return records


def casimir_centrality_check(ctx: AmaContext) -> list:
    """omega commutes with every M_ij and every group element; Z is central
    in the group algebra; when -I is in W its matrix commutes with all M_ij."""
    records: list = []
    n = ctx.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            comm = ctx.omega.commutator(ctx.M(i, j))
            _rec(records, f"[omega,M{i}{j}] = 0", comm, _zero(comm))
    for wi in range(ctx.family.group.order):
        comm = ctx.omega.commutator(ctx.w(wi))
        _rec(records, f"[omega,w{wi}] = 0", comm, _zero(comm))
        comm = ctx.Z.commutator(ctx.w(wi))
        _rec(records, f"[Z,w{wi}] = 0", comm, _zero(comm))
    mi = ctx.family.group.minus_identity_index()
    if mi is not None:
        wop = ctx.w(mi)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                comm = wop.commutator(ctx.M(i, j))
                _rec(records, f"[(-1),M{i}{j}] = 0", comm, _zero(comm))
    return records
