"""Bivector algebra, duality decomposition, sectional curvature, Weyl scalars."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curv4 import (
    BASIS_PAIRS,
    CurvatureOperator,
    TangentPlane,
    WeylSpectrum,
    berger_data,
    berger_to_operator,
    conjugate_operator,
    duality_decompose,
    extremize_sectional,
    factor_decomposable,
    hodge_star_matrix,
    model_space,
    riemann_component,
    ricci_tensor,
    sample_berger_data,
    sectional,
    static_weitzenbock_residual,
    wedge_coordinates,
    weyl_scalars,
)
from curv4.bivector import duality_basis_matrix
from curv4.errors import (
    DegeneratePlaneError,
    InvalidOperatorError,
    UnknownModelError,
)

E = np.eye(4)


def haar_rotation(rng):
    g = rng.normal(size=(4, 4))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def test_basis_order_and_wedge():
    assert BASIS_PAIRS == ((1, 2), (1, 3), (1, 4), (3, 4), (4, 2), (2, 3))
    np.testing.assert_allclose(wedge_coordinates(E[0], E[1]), [1, 0, 0, 0, 0, 0])
    np.testing.assert_allclose(wedge_coordinates(E[3], E[1]), [0, 0, 0, 0, 1, 0])
    np.testing.assert_allclose(wedge_coordinates(E[1], E[3]), [0, 0, 0, 0, -1, 0])
    # bilinear and antisymmetric
    rng = np.random.default_rng(0)
    u, v = rng.normal(size=4), rng.normal(size=4)
    np.testing.assert_allclose(wedge_coordinates(u, v), -wedge_coordinates(v, u))


def test_hodge_star_swaps_blocks_and_duality_basis():
    star = hodge_star_matrix()
    np.testing.assert_allclose(star @ star, np.eye(6))
    # the fixed basis pairs e_{12}<->e_{34}, e_{13}<->e_{42}, e_{14}<->e_{23}
    np.testing.assert_allclose(star[:3, 3:], np.eye(3))
    # star diagonalizes on the omega basis columns: +1 on the first three
    p = duality_basis_matrix()
    signs = np.diag([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])
    np.testing.assert_allclose(star @ p, p @ signs, atol=1e-15)
    np.testing.assert_allclose(p.T @ p, np.eye(6), atol=1e-15)


def test_riemann_component_symmetries():
    op = model_space("cp2")
    m = op.matrix
    assert riemann_component(m, 1, 2, 1, 2) == pytest.approx(1.0 / 6.0)
    assert riemann_component(m, 1, 4, 1, 4) == pytest.approx(2.0 / 3.0)
    assert riemann_component(m, 1, 3, 4, 2) == pytest.approx(-1.0 / 6.0)  # b2 entry
    for (i, j, k, l) in ((1, 2, 3, 4), (1, 3, 2, 4), (2, 4, 1, 3)):
        assert riemann_component(m, i, j, k, l) == pytest.approx(
            -riemann_component(m, j, i, k, l)
        )
        assert riemann_component(m, i, j, k, l) == pytest.approx(
            riemann_component(m, k, l, i, j)
        )
    assert riemann_component(m, 1, 1, 3, 4) == 0


def test_first_bianchi_on_normal_forms():
    for d in sample_berger_data(50, seed=11):
        m = berger_to_operator(d).matrix
        cyclic = (
            riemann_component(m, 1, 2, 3, 4)
            + riemann_component(m, 1, 3, 4, 2)
            + riemann_component(m, 1, 4, 2, 3)
        )
        assert abs(cyclic) <= 1e-12


def test_ricci_of_models_is_einstein():
    for name in ("sphere", "cp2", "s2xs2"):
        ric = ricci_tensor(model_space(name).exact)
        for i in range(4):
            for j in range(4):
                assert ric[i][j] == (Fraction(1) if i == j else 0)


def test_model_tables_exact():
    third = Fraction(1, 3)
    d = duality_decompose(model_space("sphere"))
    assert d.w_plus.eigenvalues == (0, 0, 0) and d.w_minus.eigenvalues == (0, 0, 0)
    d = duality_decompose(model_space("cp2"))
    assert d.w_plus.eigenvalues == (-third, -third, 2 * third)
    assert d.w_minus.eigenvalues == (0, 0, 0)
    d = duality_decompose(model_space("s2xs2"))
    assert d.w_plus.eigenvalues == d.w_minus.eigenvalues == (-third, -third, 2 * third)
    assert d.s == 4 and d.traceless_ricci_norm_sq == 0 and d.is_einstein
    with pytest.raises(UnknownModelError):
        model_space("t4")


def test_operator_validation():
    bad = np.zeros((6, 6))
    bad[0, 1] = 1.0  # not symmetric
    with pytest.raises(InvalidOperatorError):
        CurvatureOperator(bad)
    with pytest.raises(InvalidOperatorError):
        CurvatureOperator(np.zeros((5, 5)))


def test_decompose_float_matches_exact():
    op = model_space("cp2")
    fl = CurvatureOperator(op.matrix.copy())  # drop the exact mirror
    d = duality_decompose(fl)
    for got, want in zip(d.w_plus.eigenvalues, (-1 / 3, -1 / 3, 2 / 3)):
        assert abs(float(got) - want) <= 1e-12
    assert abs(float(d.s) - 4.0) <= 1e-12


def test_non_einstein_flagged():
    # unequal diagonal blocks put mass in the duality cross block (Ricci traceless part)
    m = np.diag([1.0 / 3.0 + 0.3, 1 / 3, 1 / 3, 1.0 / 3.0 - 0.3, 1 / 3, 1 / 3])
    d = duality_decompose(CurvatureOperator(m))
    assert not d.is_einstein
    assert d.cross_norm > 0.1
    assert float(d.traceless_ricci_norm_sq) > 0.1


def test_sectional_values_on_models():
    sphere = model_space("sphere")
    cp2 = model_space("cp2")
    rng = np.random.default_rng(5)
    for _ in range(20):
        q = haar_rotation(rng)
        plane = TangentPlane(q[:, 0], q[:, 1])
        assert sectional(sphere, plane) == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert sectional(cp2, TangentPlane(E[0], E[1])) == pytest.approx(1.0 / 6.0)
    assert sectional(cp2, TangentPlane(E[0], E[3])) == pytest.approx(2.0 / 3.0)
    assert sectional(cp2, TangentPlane(E[1], E[2])) == pytest.approx(2.0 / 3.0)


def test_sectional_frame_invariance():
    op = model_space("s2xs2")
    rng = np.random.default_rng(9)
    for _ in range(30):
        q = haar_rotation(rng)
        u, v = q[:, 0], q[:, 1]
        k0 = sectional(op, TangentPlane(u, v))
        theta = rng.uniform(0.0, 2.0 * math.pi)
        u2 = math.cos(theta) * u + math.sin(theta) * v
        v2 = -math.sin(theta) * u + math.cos(theta) * v
        assert abs(sectional(op, TangentPlane(u2, v2)) - k0) <= 1e-10
        assert abs(sectional(op, TangentPlane(v, u)) - k0) <= 1e-10


def test_tangent_plane_validation():
    with pytest.raises(ValueError):
        TangentPlane(E[0], 2.0 * E[1])
    with pytest.raises(ValueError):
        TangentPlane(E[0], (E[0] + E[1]) / math.sqrt(2.0) * math.sqrt(2.0) / 2 + E[0] / 2)
    plane = TangentPlane.from_span([1.0, 1.0, 0.0, 0.0], [0.0, 1.0, 1.0, 0.0])
    assert abs(plane.u @ plane.v) <= 1e-12
    with pytest.raises(DegeneratePlaneError):
        TangentPlane.from_span(E[0], 3.0 * E[0])


def test_factor_decomposable_round_trip():
    rng = np.random.default_rng(2)
    for _ in range(25):
        q = haar_rotation(rng)
        sigma = wedge_coordinates(q[:, 0], q[:, 1])
        u, v = factor_decomposable(sigma)
        np.testing.assert_allclose(wedge_coordinates(u, v), sigma, atol=1e-10)
        assert abs(u @ u - 1.0) <= 1e-10 and abs(u @ v) <= 1e-10
    with pytest.raises(InvalidOperatorError):
        factor_decomposable(np.array([1.0, 0, 0, 1.0, 0, 0]) / math.sqrt(2.0))


def test_extremize_matches_berger_extremes():
    res = 60
    tol = 10.0 / res**2
    for d in sample_berger_data(6, seed=21):
        op = berger_to_operator(d)
        ext = extremize_sectional(op, resolution=res)
        assert abs(ext.kmin - float(d.a[0])) <= tol
        assert abs(ext.kmax - float(d.a[2])) <= tol
        # reported argmin actually attains the reported value
        assert sectional(op, ext.argmin) == pytest.approx(ext.kmin, abs=1e-9)
        assert sectional(op, ext.argmax) == pytest.approx(ext.kmax, abs=1e-9)


def test_extremize_handles_non_einstein_coupling():
    m = np.diag([1.0 / 3.0 + 0.25, 1 / 3, 1 / 3, 1.0 / 3.0 - 0.25, 1 / 3, 1 / 3])
    op = CurvatureOperator(m)
    ext = extremize_sectional(op, resolution=40)
    # K(e1, e2) = 1/3 + 0.25 and K(e3, e4) = 1/3 - 0.25 sit at the extremes
    assert ext.kmax == pytest.approx(1.0 / 3.0 + 0.25, abs=2e-2)
    assert ext.kmin == pytest.approx(1.0 / 3.0 - 0.25, abs=2e-2)
    assert sectional(op, ext.argmax) == pytest.approx(ext.kmax, abs=1e-9)


trace_free_triples = st.builds(
    lambda x, y: sorted([x, y, -x - y]),
    st.floats(-10, 10, allow_nan=False),
    st.floats(-10, 10, allow_nan=False),
)


@given(trace_free_triples)
@settings(max_examples=80, deadline=None)
def test_determinant_inequality(triple):
    w = WeylSpectrum(tuple(triple))
    sc = weyl_scalars(w)
    assert sc.det_bound_holds
    assert 36.0 * float(w.det()) <= 2.0 * math.sqrt(6.0) * sc.norm**3 + 1e-9 * max(
        1.0, sc.norm**3
    )


def test_determinant_equality_case():
    w = WeylSpectrum((Fraction(-1, 3), Fraction(-1, 3), Fraction(2, 3)))
    lhs = 36.0 * float(w.det())
    rhs = 2.0 * math.sqrt(6.0) * math.sqrt(float(w.norm_sq())) ** 3
    assert abs(lhs - rhs) <= 1e-12
    generic = WeylSpectrum((-2.0, 0.5, 1.5))
    assert 36.0 * generic.det() < 2.0 * math.sqrt(6.0) * math.sqrt(generic.norm_sq()) ** 3 - 1e-6


def test_weyl_spectrum_validation():
    with pytest.raises(InvalidOperatorError):
        WeylSpectrum((1.0, 0.0, -1.0))  # not ascending
    with pytest.raises(InvalidOperatorError):
        WeylSpectrum((-1.0, 0.0, 2.0))  # trace 1
    with pytest.raises(InvalidOperatorError):
        WeylSpectrum((0.0, 0.0))


def test_static_weitzenbock_residual_values():
    assert static_weitzenbock_residual(4, WeylSpectrum((0, 0, 0))) == 0
    third = Fraction(1, 3)
    w = WeylSpectrum((-third, -third, 2 * third))
    assert static_weitzenbock_residual(4, w) == 0
    assert static_weitzenbock_residual(5, w) == Fraction(2, 3)  # 5*(2/3) - 36*(2/27)


def test_conjugation_preserves_spectra():
    rng = np.random.default_rng(13)
    op = model_space("cp2")
    base = np.sort(np.linalg.eigvalsh(op.matrix))
    for _ in range(10):
        rot = conjugate_operator(op, haar_rotation(rng))
        np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(rot.matrix)), base, atol=1e-12)
        d = duality_decompose(rot)
        assert abs(float(d.s) - 4.0) <= 1e-12
        assert d.cross_norm <= 1e-12
        assert d.is_einstein


def test_berger_data_invariant_under_conjugation():
    rng = np.random.default_rng(17)
    for d in sample_berger_data(5, seed=23):
        op = berger_to_operator(d)
        rot = conjugate_operator(op, haar_rotation(rng))
        d2 = berger_data(rot)
        for x, y in zip(d.a + d.b, d2.a + d2.b):
            assert abs(float(x) - float(y)) <= 1e-9
