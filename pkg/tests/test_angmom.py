"""Angular momentum layer tests.

Sign conventions are pinned by classical oracles: the Weyl algebra at
c = 0 (n = 1) fixes the sl(2) bracket normalization, and plane angular
momentum at c = 0 (n = 2) fixes M_12 and its square.
"""

from dunkldirac.angmom import (
    ama_relations_check,
    build_context,
    casimir_centrality_check,
    centralizer_check,
    msquared_identities_check,
    report_passes,
)
from dunkldirac.linalg import Matrix
from dunkldirac.polyrep import harmonic_subspace
from dunkldirac.roots import ParamFunction, root_system
from dunkldirac.scalars import ZERO, rat


def ctx_for(name, spec, tau="trivial", deg=3):
    rs = root_system(name)
    return build_context(rs, ParamFunction.from_config(spec, rs), deg, tau)


def test_weyl_algebra_triple_frozen():
    # n = 1, c = 0: H = x d/dx + 1/2, X = -x^2/2, Y = d^2/2
    ctx = ctx_for("A1", 0, deg=6)
    for m in range(6):
        want = Matrix.identity(1).scale(rat(m) + rat("1/2"))
        assert ctx.H.blocks[m] == want
    # [X,Y] x^3 = (7/2) x^3, computed by hand in the Weyl algebra;
    # the composite needs two extra degrees of window above m = 3
    comm = ctx.X.commutator(ctx.Y)
    assert comm.blocks[3] == Matrix.identity(1).scale(rat("7/2"))
    assert comm.matches(ctx.H)
    assert report_passes(msquared_identities_check(ctx))


def test_plane_angular_momentum_frozen():
    ctx = ctx_for("S2", 0, deg=4)
    for m in ctx.H.degrees():
        assert ctx.H.blocks[m] == Matrix.identity(m + 1).scale(m + 1)
    m12 = ctx.M(1, 2)
    assert m12.blocks[1] == Matrix.from_rows([[0, 1], [-1, 0]])
    assert ctx.msquare.blocks[1] == Matrix.identity(2).scale(-1)
    assert ctx.M(2, 1) == -m12
    assert ctx.M(1, 1).is_zero()


def test_center_scalars_per_tau():
    c = "1/6"
    for tau, want in (("trivial", rat("1/2")), ("sign", rat("-1/2"))):
        ctx = ctx_for("S3", c, tau=tau, deg=2)
        assert ctx.Z.blocks[0] == Matrix.identity(1).scale(want)
        assert ctx.tau_shift_scalar() == want
        assert ctx.h_scalar(1) == rat(1) + rat("3/2") + want
    # ambient R^3 representation of S3 is reducible: Z is not scalar on it
    ctx = ctx_for("S3", c, tau="reflection", deg=2)
    assert ctx.tau_shift_scalar() is None
    assert ctx.h_scalar(0) is None
    # ambient B2 representation is irreducible and the two class sums cancel
    ctxb = ctx_for("B2", {"short": "1/2", "long": "1/3"}, tau="reflection",
                   deg=2)
    assert ctxb.tau_shift_scalar() == ZERO
    assert ctxb.h_scalar(2) == rat(3)


def test_z_on_degree_zero_s3():
    ctx = ctx_for("S3", "1/5", deg=2)
    assert ctx.Z.blocks[0] == Matrix.identity(1).scale(rat("3/5"))


def test_ama_relations():
    assert report_passes(ama_relations_check(ctx_for("S3", "1/2", deg=5)))
    assert report_passes(ama_relations_check(ctx_for("S2", 0, deg=4)))
    assert report_passes(ama_relations_check(
        ctx_for("B2", {"short": "1/3", "long": "-1/2"}, deg=3)))
    assert report_passes(ama_relations_check(
        ctx_for("S3", "1/3", tau="reflection", deg=2)))


def test_ama_relation_negative_control():
    ctx = ctx_for("S3", "1/2", deg=3)
    lhs = ctx.M(1, 2).commutator(ctx.M(2, 3))
    rhs = (ctx.M(1, 3) @ ctx.S(2, 2).scale(-1)) \
        + (ctx.M(2, 2) @ ctx.S(1, 3)) \
        - (ctx.M(1, 2) @ ctx.S(2, 3)) - (ctx.M(2, 3) @ ctx.S(1, 2))
    assert lhs.first_mismatch(rhs) is not None


def test_centralizer():
    assert report_passes(centralizer_check(ctx_for("S3", "1/3", deg=3)))
    assert report_passes(centralizer_check(ctx_for("S2", 0, deg=4)))
    ctx = ctx_for("S2", "1/2", deg=3)
    fake = ctx.x(1) @ ctx.y(2)
    # x1 y2 does commute with H (H is scalar on each slice here), so the
    # discriminating bracket is the one with the lowering operator
    assert fake.commutator(ctx.H).is_zero()
    assert not fake.commutator(ctx.Y).is_zero()


def test_msquared_identities():
    assert report_passes(msquared_identities_check(ctx_for("S3", "1/2",
                                                           deg=5)))
    assert report_passes(msquared_identities_check(
        ctx_for("B2", {"short": "1/2", "long": "-1/3"}, deg=4)))
    assert report_passes(msquared_identities_check(
        ctx_for("S3", "1/3", tau="sign", deg=4)))
    # n = 4: the Casimir shift n(n-4)/4 vanishes, so omega = 2 h_omega
    ctx4 = ctx_for("S4", "1/2", deg=2)
    recs = msquared_identities_check(ctx4)
    assert report_passes(recs)
    assert ctx4.omega.matches(ctx4.h_omega.scale(2))


def test_casimir_centrality():
    assert report_passes(casimir_centrality_check(ctx_for("S3", "1/2",
                                                          deg=3)))
    # B2 contains -I, exercising the (-1) commutation records
    recs = casimir_centrality_check(
        ctx_for("B2", {"short": "1/4", "long": "1/3"}, deg=3))
    assert report_passes(recs)
    assert any(r["check_id"].startswith("[(-1),M") for r in recs)


def test_report_witness_format():
    ctx = ctx_for("S2", "1/2", deg=3)
    records = []
    from dunkldirac.angmom import _rec
    _rec(records, "deliberate mismatch", ctx.H, ctx.H + ctx.family.
         identity_op())
    r = records[0]
    assert r["status"] == "fail"
    assert set(r["witness"]) == {"degree", "entry", "lhs", "rhs"}
    assert isinstance(r["witness"]["lhs"], str)


def test_omega_on_harmonic_slices():
    # c = 0, n = 3, trivial tau: omega acts on degree-m harmonics by
    # (m + 3/2)(m - 1/2), i.e. lambda(lambda - 2) with lambda = m + 3/2
    ctx = ctx_for("S3", 0, deg=3)
    for m in range(4):
        lam = ctx.h_scalar(m)
        assert lam == rat(m) + rat("3/2")
        chi = lam * (lam - rat(2))
        basis = harmonic_subspace(ctx.family, m)
        assert ctx.omega.blocks[m] @ basis == basis.scale(chi)
    # same statement away from c = 0: S3 at c = 1/6, lambda = m + 2
    ctx6 = ctx_for("S3", "1/6", deg=2)
    for m in range(3):
        lam = ctx6.h_scalar(m)
        assert lam == rat(m + 2)
        basis = harmonic_subspace(ctx6.family, m)
        assert ctx6.omega.blocks[m] @ basis == basis.scale(
            lam * (lam - rat(2)))
