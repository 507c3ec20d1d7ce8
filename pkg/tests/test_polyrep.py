"""Polynomial realization tests.

Oracles: sympy implements an independent Dunkl operator (symbolic division
with remainder check) and the substitution action; contravariant forms are
checked against the direct Dunkl-word definition and hand-computed frozen
values; harmonic dimensions against the classical binomial formula.
"""

import random

import sympy as sp

from dunkldirac.linalg import Matrix
from dunkldirac.polyrep import (
    GradedOperator,
    ModuleFamily,
    Polynomial,
    act,
    adjointness_check,
    center_op,
    classical_harmonic_dim,
    contravariant_form,
    custom_rep,
    divide_by_linear,
    dunkl_apply,
    harmonic_dims,
    harmonic_subspace,
    matrix_csv,
    operator_matrix,
    positivity_check,
    rca_relation_check,
    reflection_rep,
    root_form,
    s_op,
    sign_rep,
    trivial_rep,
)
from dunkldirac.roots import ParamFunction, root_system
from dunkldirac.scalars import ONE, SQRT2, ZERO, rat


def params(rs, spec):
    return ParamFunction.from_config(spec, rs)


def random_poly(rng, n, max_deg=3, terms=4):
    p = Polynomial.zero(n)
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(n)] += 1
        coeff = rat(rng.randint(-4, 4)) + rat(rng.randint(-2, 2)) / rat(3)
        p = p + Polynomial.monomial(n, tuple(e), coeff)
    return p


# -- sympy bridges -------------------------------------------------------------


def sym_vars(n):
    return sp.symbols(f"x1:{n + 1}")


def to_sympy(p, xs):
    expr = sp.Integer(0)
    for e, v in p.coeffs.items():
        assert v.is_rational(), "oracle handles rational coefficients only"
        f = v.as_rational()
        term = sp.Rational(f.numerator, f.denominator)
        for x, d in zip(xs, e):
            term *= x ** d
        expr += term
    return sp.expand(expr)


def sympy_act(g, expr, xs):
    # (w.f)(x) = f(w^{-1} x); w orthogonal, so (w^{-1})_{kl} = w_{lk}
    n = len(xs)
    subs = {}
    for k in range(n):
        acc = sp.Integer(0)
        for l in range(n):
            v = g.mat.get(l, k)
            if not v.is_zero():
                f = v.as_rational()
                acc += sp.Rational(f.numerator, f.denominator) * xs[l]
        subs[xs[k]] = acc
    return sp.expand(expr.subs(subs, simultaneous=True))


def sympy_dunkl(i, expr, rs, param, xs):
    out = sp.diff(expr, xs[i])
    for r in range(len(rs.positive_roots)):
        c = param.of_root(rs, r)
        if c == 0:
            continue
        alpha = rs.positive_roots[r]
        ai = alpha[i].as_rational()
        if ai == 0:
            continue
        form = sp.Integer(0)
        for k, v in enumerate(alpha):
            if not v.is_zero():
                f = v.as_rational()
                form += sp.Rational(f.numerator, f.denominator) * xs[k]
        diff = sp.expand(expr - sympy_act(rs.reflection(r), expr, xs))
        q, rem = sp.div(diff, form, *xs, domain="QQ")
        assert rem == 0
        out += sp.Rational(c.numerator, c.denominator) \
            * sp.Rational(ai.numerator, ai.denominator) * q
    return sp.expand(out)


# -- polynomials ---------------------------------------------------------------


def test_polynomial_arithmetic():
    n = 2
    x1 = Polynomial.variable(n, 1)
    x2 = Polynomial.variable(n, 2)
    sq = (x1 + x2) * (x1 + x2)
    assert sq == Polynomial(n, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert sq.derivative(1) == x1.scale(2) + x2.scale(2)
    assert (x1 ** 3).derivative(1) == Polynomial(n, {(2, 0): 3})
    assert sq.degree() == 2 and sq.is_homogeneous()
    mixed = sq + Polynomial.one(n)
    assert not mixed.is_homogeneous()
    assert mixed.homogeneous_part(0) == Polynomial.one(n)
    rng = random.Random(11)
    for _ in range(5):
        a, b = random_poly(rng, 3), random_poly(rng, 3)
        assert a * b == b * a
        xs = sym_vars(3)
        assert to_sympy(a * b, xs) == sp.expand(to_sympy(a, xs)
                                                * to_sympy(b, xs))


def test_polynomial_str_parse_roundtrip():
    n = 3
    p = Polynomial(n, {(2, 0, 1): rat("3/2"), (0, 1, 0): rat("-1/2")})
    assert str(p) == "3/2 x1^2 x3 - 1/2 x2"
    assert Polynomial.parse(n, str(p)) == p
    q = Polynomial(n, {(1, 0, 0): rat("1/2") + SQRT2, (0, 0, 0): -ONE})
    assert Polynomial.parse(n, str(q)) == q
    rng = random.Random(7)
    for _ in range(6):
        r = random_poly(rng, 3)
        assert Polynomial.parse(3, str(r)) == r
    assert str(Polynomial.zero(2)) == "0"


def test_divide_by_linear_roundtrip():
    rng = random.Random(3)
    n = 3
    for _ in range(8):
        q = random_poly(rng, n)
        if q.is_zero():
            continue
        form = Polynomial(n, {(1, 0, 0): rat(rng.randint(1, 3)),
                              (0, 1, 0): rat(rng.randint(-2, 2)),
                              (0, 0, 1): rat(rng.randint(-2, 2))})
        assert divide_by_linear(form * q, form) == q


def test_divide_by_linear_rejects_inexact():
    n = 2
    form = Polynomial(n, {(1, 0): 1, (0, 1): -1})
    try:
        divide_by_linear(Polynomial.variable(n, 1), form)
        assert False, "expected nonzero remainder"
    except ValueError as e:
        assert "remainder" in str(e)
    try:
        divide_by_linear(Polynomial.one(n), Polynomial.one(n))
        assert False, "expected bad divisor"
    except ValueError as e:
        assert "linear form" in str(e)


def test_group_action_matches_sympy_substitution():
    rng = random.Random(5)
    for name in ("S3", "B2"):
        rs = root_system(name)
        grp = rs.group()
        xs = sym_vars(rs.n)
        for _ in range(4):
            f = random_poly(rng, rs.n)
            g = grp.elements[rng.randrange(grp.order)]
            assert to_sympy(act(g, f), xs) == sympy_act(g, to_sympy(f, xs), xs)


def test_group_action_is_left_action():
    rs = root_system("S3")
    grp = rs.group()
    rng = random.Random(9)
    f = random_poly(rng, 3)
    for _ in range(6):
        u = rng.randrange(grp.order)
        v = rng.randrange(grp.order)
        uv = grp.mul(u, v)
        lhs = act(grp.elements[u], act(grp.elements[v], f))
        assert lhs == act(grp.elements[uv], f)


# -- Dunkl operators -----------------------------------------------------------


def test_dunkl_frozen_values_s2():
    rs = root_system("S2")
    c = params(rs, "1/4")
    x1 = Polynomial.variable(2, 1)
    x2 = Polynomial.variable(2, 2)
    # hand values: D_1 x_1 = 1 + c, D_1 x_2 = -c on the single root e1 - e2
    assert dunkl_apply((1, 0), x1, rs, c) == Polynomial.one(2).scale(rat("5/4"))
    assert dunkl_apply((1, 0), x2, rs, c) == Polynomial.one(2).scale(rat("-1/4"))
    c0 = params(rs, 0)
    assert dunkl_apply((1, 0), x1 * x1, rs, c0) == x1.scale(2)


def test_dunkl_matches_sympy_oracle():
    rng = random.Random(21)
    cases = (("S3", "1/2"), ("B2", {"short": "1/3", "long": "-1/2"}))
    for name, spec in cases:
        rs = root_system(name)
        c = params(rs, spec)
        xs = sym_vars(rs.n)
        for _ in range(4):
            f = random_poly(rng, rs.n)
            i = rng.randrange(rs.n)
            yvec = tuple(1 if k == i else 0 for k in range(rs.n))
            got = to_sympy(dunkl_apply(yvec, f, rs, c), xs)
            want = sympy_dunkl(i, to_sympy(f, xs), rs, c, xs)
            assert sp.expand(got - want) == 0


def test_dunkl_lowers_degree_exactly():
    rs = root_system("S3")
    c = params(rs, "2/3")
    f = Polynomial.monomial(3, (2, 1, 1))
    out = dunkl_apply((0, 1, 0), f, rs, c)
    assert out.is_homogeneous() and out.degree() == 3


# -- tau representations -------------------------------------------------------


def test_builtin_reps():
    rs = root_system("S3")
    grp = rs.group()
    for rep, dim in ((trivial_rep(grp), 1), (sign_rep(grp), 1),
                     (reflection_rep(grp), 3)):
        assert rep.dim == dim
        for u in range(grp.order):
            for v in range(grp.order):
                assert rep.mat(grp.mul(u, v)) == rep.mat(u) @ rep.mat(v)
            # unitary for the invariant form = identity
            assert rep.mat(u).dagger() @ rep.mat(u) == Matrix.identity(dim)
    sg = sign_rep(grp)
    refl_idx = grp.reflection_element_index(0)
    assert sg.mat(refl_idx).get(0, 0) == -ONE


def test_custom_rep_roundtrip_and_validation():
    rs = root_system("B2")
    grp = rs.group()
    simples = rs.simple_root_indices()
    mats = {i: rs.reflection(i).mat for i in simples}
    rep = custom_rep(grp, mats, name="ambient")
    assert rep.mats == reflection_rep(grp).mats
    bad = dict(mats)
    bad[simples[0]] = Matrix.identity(2).scale(2)
    try:
        custom_rep(grp, bad)
        assert False, "expected rejection"
    except ValueError:
        pass
    try:
        custom_rep(grp, {simples[0]: mats[simples[0]]})
        assert False, "expected missing-generator rejection"
    except ValueError as e:
        assert "simple roots" in str(e)


# -- module family and graded operators ----------------------------------------


def test_slice_dims():
    from math import comb
    rs = root_system("S3")
    c = params(rs, "1/2")
    for tau, d in (("trivial", 1), ("sign", 1), ("reflection", 3)):
        fam = ModuleFamily(rs, c, tau, max_degree=4)
        for m in range(5):
            assert fam.dim(m) == comb(m + 2, 2) * d
    assert fam.dim(-1) == 0 and fam.dim(-5) == 0
    try:
        fam.dim(5)
        assert False
    except ValueError:
        pass


def test_graded_operator_window_semantics():
    rs = root_system("S2")
    fam = ModuleFamily(rs, params(rs, "1/2"), "trivial", max_degree=4)
    x1, y1 = fam.x_op(1), fam.y_op(1)
    assert x1.degrees() == [0, 1, 2, 3]
    assert y1.degrees() == [0, 1, 2, 3, 4]
    assert y1.blocks[0].shape == (0, 1)
    assert (x1 @ y1).degrees() == [0, 1, 2, 3, 4]
    assert (y1 @ x1).degrees() == [0, 1, 2, 3]
    assert y1.commutator(x1).degrees() == [0, 1, 2, 3]
    lap = fam.laplacian()
    assert lap.shift == -2 and lap.degrees() == [0, 1, 2, 3, 4]
    try:
        x1 + y1
        assert False
    except ValueError as e:
        assert "shift" in str(e)
    x5 = x1 @ x1 @ x1 @ x1 @ x1
    assert x5.degrees() == []  # fully clipped at the top of the window
    try:
        x5.matches(x5)
        assert False
    except ValueError as e:
        assert "common" in str(e)


def test_euler_operator_at_c0():
    rs = root_system("A1")
    fam = ModuleFamily(rs, params(rs, 0), "trivial", max_degree=4)
    op = operator_matrix(fam, "x1 y1")
    assert op.blocks[3] == Matrix.identity(1).scale(3)
    rs3 = root_system("S3")
    fam3 = ModuleFamily(rs3, params(rs3, 0), "trivial", max_degree=3)
    euler = operator_matrix(fam3, "x1 y1 + x2 y2 + x3 y3")
    for m in euler.degrees():
        assert euler.blocks[m] == Matrix.identity(fam3.dim(m)).scale(m)


def test_operator_matrix_parser():
    rs = root_system("S2")
    fam = ModuleFamily(rs, params(rs, "1/3"), "reflection", max_degree=3)
    assert operator_matrix(fam, "s0") == fam.reflection_op(0)
    assert operator_matrix(fam, "w0") == fam.identity_op()
    comm = operator_matrix(fam, "y1 x1 - x1 y1")
    assert comm == fam.y_op(1).commutator(fam.x_op(1))
    scaled = operator_matrix(fam, "2 e - 1/2 s0")
    assert scaled == fam.scalar_op(2) - fam.reflection_op(0).scale(rat("1/2"))


# -- the defining relations -----------------------------------------------------


def test_rca_relation_check_passes():
    cases = (("S3", "1/2", "trivial", 4),
             ("S2", 0, "trivial", 4),
             ("S3", "1/3", "reflection", 3),
             ("B2", {"short": "1/2", "long": "-1/3"}, "sign", 3))
    for name, spec, tau, deg in cases:
        rs = root_system(name)
        fam = ModuleFamily(rs, params(rs, spec), tau, max_degree=deg)
        report = rca_relation_check(fam)
        assert report["pass"], report["failures"]
        assert report["checks"] > 0 and report["failures"] == []


def test_rca_negative_control():
    # dropping one reflection term from a Dunkl operator must break [y1, x2]
    rs = root_system("S2")
    fam = ModuleFamily(rs, params(rs, "1/2"), "trivial", max_degree=3)
    alpha = rs.positive_roots[0]
    broken = fam.y_op(1) - fam.divided_difference_op(0).scale(
        rat("1/2") * alpha[0])
    comm = broken.commutator(fam.x_op(2))
    assert not comm.matches(s_op(fam, 2, 1))
    bad = comm.first_mismatch(s_op(fam, 2, 1))
    assert bad is not None and bad[0] == 0


def test_s_matrix_symmetry_and_center():
    rs = root_system("S3")
    fam = ModuleFamily(rs, params(rs, "1/2"), "trivial", max_degree=3)
    for i in range(1, 4):
        for j in range(1, 4):
            assert s_op(fam, i, j) == s_op(fam, j, i)
    # sum_i S_ii = n + 2Z as matrices
    total = None
    for i in range(1, 4):
        t = fam.y_op(i).commutator(fam.x_op(i))
        total = t if total is None else total + t
    rhs = fam.scalar_op(3) + center_op(fam).scale(2)
    assert total.matches(rhs)


def test_dunkl_equivariance():
    for name, spec, tau in (("S3", "1/2", "reflection"),
                            ("B2", {"short": "1/3", "long": "1"}, "sign")):
        rs = root_system(name)
        fam = ModuleFamily(rs, params(rs, spec), tau, max_degree=3)
        grp = fam.group
        for r in range(len(rs.positive_roots)):
            wi = grp.reflection_element_index(r)
            w = grp.elements[wi]
            wop = fam.w_op(wi)
            winv = fam.w_op(grp.inv(wi))
            for i in range(rs.n):
                unit = tuple(ONE if k == i else ZERO for k in range(rs.n))
                img = w.apply(unit)
                rhs = None
                for k, vk in enumerate(img):
                    if vk.is_zero():
                        continue
                    term = fam.y_op(k + 1).scale(vk)
                    rhs = term if rhs is None else rhs + term
                lhs = wop @ fam.y_op(i + 1) @ winv
                assert lhs.matches(rhs)


# -- harmonics ------------------------------------------------------------------


def test_harmonic_dims_classical():
    rs = root_system("S3")
    fam = ModuleFamily(rs, params(rs, 0), "trivial", max_degree=4)
    assert harmonic_dims(fam) == [1, 3, 5, 7, 9]
    for m in range(5):
        assert harmonic_dims(fam)[m] == classical_harmonic_dim(3, m)
    rs2 = root_system("S2")
    fam2 = ModuleFamily(rs2, params(rs2, 0), "trivial", max_degree=5)
    assert harmonic_dims(fam2) == [classical_harmonic_dim(2, m)
                                   for m in range(6)]


def test_harmonic_basis_is_exact_kernel():
    rs = root_system("S3")
    fam = ModuleFamily(rs, params(rs, "1/3"), "reflection", max_degree=3)
    assert harmonic_subspace(fam, 0).ncols == fam.dim(0)
    for m in range(4):
        basis = harmonic_subspace(fam, m)
        image = fam.laplacian().blocks[m] @ basis
        assert image.is_zero()


# -- contravariant form ----------------------------------------------------------


def test_contravariant_frozen_s2():
    rs = root_system("S2")
    fam = ModuleFamily(rs, params(rs, "1/4"), "trivial", max_degree=2)
    g1 = contravariant_form(fam, 1)
    assert g1 == Matrix.from_rows([["5/4", "-1/4"], ["-1/4", "5/4"]])
    fam0 = ModuleFamily(rs, params(rs, 0), "trivial", max_degree=2)
    assert contravariant_form(fam0, 1) == Matrix.identity(2)
    # c = 0 pairing is the factorial form <d^a x^b> = a! delta_ab
    g2 = contravariant_form(fam0, 2)
    assert g2 == Matrix.from_rows([[2, 0, 0], [0, 1, 0], [0, 0, 2]])


def test_contravariant_matches_direct_definition():
    rs = root_system("S3")
    fam = ModuleFamily(rs, params(rs, "1/3"), "reflection", max_degree=2)
    for m in (1, 2):
        got = contravariant_form(fam, m)
        dim = fam.dim(m)
        direct = Matrix(dim, dim)
        form = fam.tau.form
        for (e, t) in fam.basis_labels(m):
            row = fam.basis_index(m, e, t)
            # chain of Dunkl matrices for the word D^e, top degree down
            op = None
            deg = m
            for p in range(fam.n):
                for _ in range(e[p]):
                    blk = fam.y_op(p + 1).blocks[deg]
                    op = blk if op is None else blk @ op
                    deg -= 1
            for col in range(dim):
                acc = ZERO
                for r in range(fam.tau.dim):
                    v = op.get(r, col)
                    if not v.is_zero():
                        acc = acc + form.get(t, r) * v
                if not acc.is_zero():
                    direct.set(row, col, acc)
        assert got == direct


def test_adjointness():
    for name, spec, tau in (("S3", "1/2", "trivial"),
                            ("B2", {"short": "1/4", "long": "1/3"}, "sign")):
        rs = root_system(name)
        fam = ModuleFamily(rs, params(rs, spec), tau, max_degree=3)
        assert adjointness_check(fam)


def test_positivity():
    assert positivity_check(Matrix.identity(3))
    assert not positivity_check(Matrix.from_rows([[1, 2], [2, 1]]))
    rs = root_system("S2")
    fam = ModuleFamily(rs, params(rs, "1/4"), "trivial", max_degree=2)
    assert positivity_check(contravariant_form(fam, 1))
    neg = ModuleFamily(rs, params(rs, -2), "trivial", max_degree=2)
    assert not positivity_check(contravariant_form(neg, 1))


def test_matrix_csv_format():
    m = Matrix.from_rows([[1, "1/2"], [0, -1]])
    assert matrix_csv(m) == "(1,0,0,0),(1/2,0,0,0)\n(0,0,0,0),(-1,0,0,0)"


def test_root_form():
    rs = root_system("S2")
    f = root_form(rs, 0)
    assert f == Polynomial(2, {(1, 0): 1, (0, 1): -1})
