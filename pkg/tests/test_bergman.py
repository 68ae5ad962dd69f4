import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from extralab import bergman as bg
from extralab.cutoff import Cutoff
from extralab.errors import (DivergenceError, FeasibilityError, InputError, ResolutionError,
                             UnsupportedError)

import oracles

DISC = bg.ModelDomain(1)
BIDISC = bg.ModelDomain(2)
POINT = bg.SubmanifoldSpec("point0")
LINE = bg.SubmanifoldSpec("coordinate_line")
DIAG = bg.SubmanifoldSpec("diagonal")
ORIGIN = bg.SubmanifoldSpec("origin")
HINGE2 = Cutoff("hinge", 2.0)


@pytest.fixture(scope="module")
def disc_fam():
    return bg.GramFamily(DISC, POINT, HINGE2, 8)


@pytest.fixture(scope="module")
def line_fam():
    return bg.GramFamily(BIDISC, LINE, Cutoff("hinge", 4.0), 4)


@pytest.fixture(scope="module")
def diag_fam():
    return bg.GramFamily(BIDISC, DIAG, Cutoff("smoothed_hinge", 4.0, 0.1), 3)


# --- constants ---------------------------------------------------------------------

def test_volume_density():
    assert bg.volume_density(1) == 2.0
    assert bg.volume_density(2) == 4.0
    # |int_D dz ^ dzbar| = 2 * area
    assert bg.plain_gram(DISC, 0)[0, 0] == pytest.approx(2 * np.pi, rel=1e-14)


# --- Gram matrices -------------------------------------------------------------------

def test_disc_gram_examples(disc_fam):
    g0 = bg.gram_matrix(disc_fam, 0.0)
    assert g0[0, 0] == pytest.approx(2 * np.pi, abs=1e-6)
    assert g0[1, 1] == pytest.approx(np.pi, abs=1e-6)
    for t in (0.0, 3.3, 17.0):
        assert abs(bg.gram_matrix(disc_fam, t)[0, 1]) <= 1e-10


@given(st.floats(0.0, 40.0), st.integers(0, 8))
def test_disc_gram_against_polar_quadrature(disc_fam, t, k):
    got = bg.gram_matrix(disc_fam, t)[k, k]
    want = oracles.disc_gram_diagonal(k, t)
    assert got == pytest.approx(want, rel=1e-9)


@given(st.floats(0.0, 20.0), st.sampled_from(["disc", "line"]))
def test_angular_orthogonality(disc_fam, line_fam, t, which):
    g = bg.gram_matrix(disc_fam if which == "disc" else line_fam, t)
    off = g - np.diag(np.diag(g))
    assert np.abs(off).max() <= 1e-10 * np.abs(np.diag(g)).max()


def test_weight_free_for_nonpositive_parameter(disc_fam):
    # for Re s <= 0 the weight is 1 and q_s^2 = e^{(m-n) s} * plain norm^2
    assert np.allclose(bg.gram_matrix(disc_fam, 0.0), bg.plain_gram(DISC, 8), rtol=1e-13, atol=1e-15)
    gm = bg.gram_matrix(disc_fam, -0.5)
    assert np.allclose(gm, np.exp(-0.5) * bg.plain_gram(DISC, 8), rtol=1e-12, atol=1e-15)


def test_positive_definite(diag_fam, line_fam):
    for fam in (diag_fam, line_fam):
        for t in (0.0, 4.0, 12.0):
            assert np.linalg.eigvalsh(fam.graded_gram(t)).min() > 0


@pytest.mark.parametrize("sub,dom,deg,ts", [(POINT, DISC, 12, (0.0, 8.0, 30.0, 60.0)),
                                            (LINE, BIDISC, 4, (0.0, 8.0, 30.0)),
                                            (DIAG, BIDISC, 3, (0.0, 4.0, 12.0)),
                                            (ORIGIN, BIDISC, 2, (0.0, 6.0, 14.0))])
def test_gram_converges_under_node_doubling(sub, dom, deg, ts):
    cut = Cutoff("hinge", 4.0 * sub.codim)
    a = bg.GramFamily(dom, sub, cut, deg)
    b = bg.GramFamily(dom.with_nodes(2 * dom.n_radial, 2 * dom.n_angular), sub, cut, deg)
    for t in ts:
        ga, gb = a.graded_gram(t), b.graded_gram(t)
        scale = np.sqrt(np.outer(np.diag(gb).real, np.diag(gb).real))
        assert np.abs(ga - gb).max() / 1 <= 1e-8 * np.abs(gb).max()
        assert np.max(np.abs(ga - gb) / scale) <= 1e-8


def test_t_max_enforced(disc_fam):
    with pytest.raises(ResolutionError) as exc:
        disc_fam.gram(disc_fam.t_max + 1)
    assert exc.value.limit == disc_fam.t_max


def test_divergent_cutoff_rejected():
    with pytest.raises(DivergenceError):
        bg.GramFamily(BIDISC, ORIGIN, Cutoff("hinge", 2.0), 2)


# --- restriction, ideal ---------------------------------------------------------------

def test_restriction_examples():
    ker = bg.ideal_basis(POINT, 3)
    assert ker.shape[1] == 3
    assert set(np.flatnonzero(ker.any(axis=1))) == {1, 2, 3}
    r_line = bg.restriction_constraints(LINE, 2)
    assert not np.any(r_line @ bg.CoefficientVector.monomial((2, 1), 2).coeffs)
    r_diag = bg.restriction_constraints(DIAG, 2)
    psi = bg.CoefficientVector.monomial((1, 1), 2).coeffs - bg.CoefficientVector.monomial((2, 0), 2).coeffs
    assert not np.any(r_diag @ psi)


@given(st.sampled_from([POINT, LINE, DIAG, ORIGIN]), st.integers(0, 4))
def test_ideal_is_kernel_and_lift_is_right_inverse(sub, deg):
    r = bg.restriction_constraints(sub, deg)
    ker = bg.ideal_basis(sub, deg)
    assert np.abs(r @ ker).max(initial=0) == 0
    assert ker.shape[1] + r.shape[0] == r.shape[1]
    if ker.shape[1]:
        assert np.linalg.matrix_rank(ker) == ker.shape[1]
    assert np.allclose(r @ bg.lift_matrix(sub, deg), np.eye(r.shape[0]))


def test_feasibility():
    with pytest.raises(FeasibilityError, match="needs degree >= 4"):
        bg.y_coefficients(DIAG, 2, [0] * 8 + [1])
    assert bg.y_coefficients(DIAG, 4, [0] * 8 + [1])[8] == 1


# --- boundary norms -------------------------------------------------------------------

def test_boundary_norm_closed_forms():
    assert bg.boundary_norm_sq([1], POINT, DISC) == pytest.approx(2 * np.pi)
    for k in range(6):
        f = np.eye(k + 1)[k]
        assert bg.boundary_norm_sq(f, LINE, BIDISC) == pytest.approx(oracles.line_boundary_norm(k),
                                                                     rel=1e-12)
    with pytest.raises(UnsupportedError):
        bg.boundary_norm_sq([1], DIAG, BIDISC)


def test_boundary_norm_sharp_limit():
    assert bg.boundary_norm_sq([1], POINT, DISC, "sharpLimit") == pytest.approx(2 * np.pi, rel=1e-3)
    for j in (0, 1, 2):
        f = np.eye(j + 1)[j]
        got = bg.boundary_norm_sq(f, DIAG, BIDISC, "sharpLimit", degree=2)
        assert got == pytest.approx(oracles.diagonal_boundary_norm(j), rel=1e-6)


def test_boundary_norm_soft_limit_matches():
    soft = bg.boundary_norm_sq([1], POINT, DISC, Cutoff("hinge", 4.0))
    assert soft == pytest.approx(2 * np.pi, rel=1e-6)


# --- quotient norms, extensions, duals ----------------------------------------------

def test_quotient_norm_examples(disc_fam, line_fam):
    assert bg.quotient_norm(disc_fam, 0.0, [1]) == pytest.approx(np.sqrt(2 * np.pi), abs=1e-6)
    for t in (0.5, 3.0, 8.0):
        assert bg.quotient_norm(disc_fam, t, [1]) ** 2 == \
            pytest.approx(oracles.disc_point_p_sq(t), rel=1e-9)
    for k in range(5):
        f = np.eye(k + 1)[k]
        assert bg.quotient_norm(line_fam, 0.0, f) == \
            pytest.approx(np.sqrt(4 * np.pi**2 / (k + 1)), rel=1e-9)


def test_minimal_extension_examples(disc_fam, line_fam):
    g = bg.minimal_extension(disc_fam, 0.0, [1])
    assert np.allclose(g.coeffs, np.eye(9)[0], atol=1e-12)
    for k in range(5):
        g = bg.minimal_extension(line_fam, 0.0, np.eye(k + 1)[k])
        want = bg.CoefficientVector.monomial((k, 0), 4).coeffs
        assert np.allclose(g.coeffs, want, atol=1e-10)


def test_minimal_extension_diagonal_below_boundary_norm():
    fam = bg.GramFamily(BIDISC, DIAG, Cutoff("smoothed_hinge", 4.0, 0.1), 4)
    g = bg.minimal_extension(fam, 0.0, [1])
    plain = np.real(np.vdot(g.coeffs, bg.plain_gram(BIDISC, 4) @ g.coeffs))
    assert plain <= bg.boundary_norm_sq([1], DIAG, BIDISC, "sharpLimit", degree=4)


@settings(max_examples=15)
@given(st.integers(0, 10_000), st.floats(0.0, 10.0), st.sampled_from(["disc", "line", "diag"]))
def test_minimal_extension_properties(disc_fam, line_fam, diag_fam, seed, t, which):
    fam = {"disc": disc_fam, "line": line_fam, "diag": diag_fam}[which]
    rng = np.random.default_rng(seed)
    f = rng.standard_normal(fam.y_size) + 1j * rng.standard_normal(fam.y_size)
    g = bg.minimal_extension(fam, t, f)
    assert np.abs(fam.restriction @ g.coeffs - f).max() <= 1e-10 * np.abs(f).max()
    pt = bg.quotient_norm(fam, t, f)
    assert fam.norm_sq(t, g) == pytest.approx(pt**2, rel=1e-9)
    # any other representative is at least as long
    for _ in range(5):
        w = rng.standard_normal(fam.ideal.shape[1]) + 1j * rng.standard_normal(fam.ideal.shape[1])
        rep = g.coeffs + fam.ideal @ w
        assert pt**2 <= fam.norm_sq(t, rep) * (1 + 1e-10)
    # G-orthogonality to the ideal in the graded basis
    a = np.linalg.solve(fam.basis_change, g.coeffs)
    gg = fam.graded_gram(t)
    ideal = fam.graded_ideal
    scale = np.sqrt(np.real(np.vdot(a, gg @ a)) * np.real(np.diag(ideal.T @ gg @ ideal)))
    assert np.max(np.abs(ideal.T @ gg @ a) / scale, initial=0) <= 1e-8


def test_dual_functional_examples(disc_fam):
    assert bg.dual_functional_norm(disc_fam, 0.0, [1]) == pytest.approx((2 * np.pi) ** -0.5, abs=1e-8)
    top = bg.dual_functional_norm(disc_fam, 30.0, [1])
    assert top == pytest.approx((4 * np.pi) ** -0.5, rel=1e-6)


@settings(max_examples=15)
@given(st.integers(0, 10_000), st.floats(0.0, 12.0))
def test_functional_pairing_bound(diag_fam, seed, t):
    rng = np.random.default_rng(seed)
    l = rng.standard_normal(diag_fam.y_size) + 1j * rng.standard_normal(diag_fam.y_size)
    psi = rng.standard_normal(diag_fam.size) + 1j * rng.standard_normal(diag_fam.size)
    pairing = abs(l @ (diag_fam.restriction @ psi))
    bound = bg.dual_functional_norm(diag_fam, t, l) * np.sqrt(diag_fam.norm_sq(t, psi))
    assert pairing <= bound * (1 + 1e-9)
    assert bg.dual_functional_norm(diag_fam, t, l) == \
        pytest.approx(bg.quotient_dual_norm(diag_fam, t, l), rel=1e-7)


def test_re_invariance(disc_fam):
    metric = disc_fam.quotient_family()
    assert metric.re_invariant
    assert np.array_equal(metric(2.0 + 1.7j), metric(2.0))


def test_log_r_plurisubharmonic():
    for sub in (POINT, LINE, DIAG, ORIGIN):
        assert sub.log_r_verdict().passed, sub.kind


def test_coefficient_vector_validation():
    with pytest.raises(InputError):
        bg.CoefficientVector(1, 2, [1, 2])
    p = bg.CoefficientVector(2, 1, [1, 2, 3, 4])
    # basis (0,0),(0,1),(1,0),(1,1)
    assert p(2.0, 3.0) == pytest.approx(1 + 2 * 3 + 3 * 2 + 4 * 6)
