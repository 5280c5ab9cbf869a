import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinframe.su2_core import (
    DOWN,
    UP,
    Direction,
    DomainError,
    Spinor,
    UnitaryOp,
    decompose,
    inner_product,
    normalize_angle,
    ray_equivalent,
    rotation,
    spin_state,
    transition_probability,
)

from . import oracles

R = 1 / math.sqrt(2)
angles = st.floats(min_value=-4 * math.pi, max_value=4 * math.pi, allow_nan=False)
signs = st.sampled_from([UP, DOWN])


def vec(s):
    return s.vector


def test_spin_state_reference_axis():
    assert spin_state(Direction.planar(0), UP) == Spinor(1, 0)


def test_spin_state_n2_minus():
    np.testing.assert_allclose(vec(spin_state(Direction.planar(math.pi / 2), DOWN)), [R, -R], atol=1e-15)


def test_spin_state_n3_plus_equals_n2_minus():
    n3p = spin_state(Direction.planar(-math.pi / 2), UP)
    np.testing.assert_allclose(vec(n3p), [R, -R], atol=1e-15)
    assert n3p.allclose(spin_state(Direction.planar(math.pi / 2), DOWN))


@pytest.mark.parametrize(
    "alpha, s, expected",
    [
        (0.0, UP, (1, 0)),
        (math.pi / 2, UP, (R, R)),
        (math.pi / 2, DOWN, (R, -R)),
        (-math.pi / 2, UP, (R, -R)),
        (-math.pi / 2, DOWN, (-R, -R)),
    ],
)
def test_printed_column_vectors(alpha, s, expected):
    np.testing.assert_allclose(vec(spin_state(Direction.planar(alpha), s)), expected, atol=1e-15, rtol=0)


def test_orthogonality_between_frames():
    n2, n3 = Direction.planar(math.pi / 2), Direction.planar(-math.pi / 2)
    for s in (UP, DOWN):
        assert abs(inner_product(spin_state(n2, s), spin_state(n3, s))) < 1e-12


@given(alpha=angles, s=signs)
def test_states_are_sigma_eigenvectors(alpha, s):
    # independent route: eigenvector of sigma.n from numpy's eigensolver
    d = Direction.planar(alpha)
    ours = spin_state(d, s)
    ref = oracles.eigvec(oracles.planar(d.alpha), s)
    assert abs(abs(np.vdot(ref, ours.vector)) - 1) < 1e-10


@given(
    v=st.tuples(*[st.floats(min_value=-1, max_value=1, allow_nan=False)] * 3).filter(
        lambda t: sum(c * c for c in t) > 1e-3
    ),
    s=signs,
)
def test_bloch_states_are_sigma_eigenvectors(v, s):
    n = np.array(v) / np.linalg.norm(v)
    ours = spin_state(Direction.from_vector(n), s)
    ref = oracles.eigvec(n, s)
    assert abs(abs(np.vdot(ref, ours.vector)) - 1) < 1e-10


def test_bloch_matches_planar_for_xz_vectors():
    for alpha in np.linspace(-math.pi + 0.01, math.pi, 37):
        d = Direction.from_vector((math.sin(alpha), 0.0, math.cos(alpha)))
        assert d.is_planar
        for s in (UP, DOWN):
            assert spin_state(d, s).allclose(spin_state(Direction.planar(alpha), s), 1e-12)


def test_direction_rejects_non_unit():
    with pytest.raises(DomainError):
        Direction.from_vector((1.0, 1.0, 0.0))


def test_direction_rejects_inconsistent_angle():
    with pytest.raises(DomainError):
        Direction(0.0, 0.0, 1.0, alpha=1.0)


def test_spin_sign_rejected():
    with pytest.raises(DomainError):
        spin_state(Direction.planar(0), 0)


@given(angles)
def test_normalize_angle_range(a):
    w = normalize_angle(a)
    assert -math.pi < w <= math.pi
    assert abs(math.remainder(w - a, 2 * math.pi)) < 1e-9


def test_normalize_pi_stays_pi():
    assert normalize_angle(math.pi) == math.pi
    assert normalize_angle(-math.pi) == pytest.approx(math.pi)


def test_rotation_zero_is_identity():
    np.testing.assert_array_equal(rotation(0).matrix, np.eye(2))


def test_rotation_quarter_turn():
    out = rotation(math.pi / 2) @ Spinor(1, 0)
    np.testing.assert_allclose(vec(out), [R, R], atol=1e-15)


def test_rotation_full_turn_flips_sign():
    out = rotation(2 * math.pi) @ Spinor(1, 0)
    np.testing.assert_allclose(vec(out), [-1, 0], atol=1e-15)


def test_rotation_rejects_nonfinite():
    with pytest.raises(DomainError):
        rotation(float("nan"))


def test_unitary_rejects_non_su2():
    with pytest.raises(DomainError):
        UnitaryOp(np.diag([1, -1]))  # det -1
    with pytest.raises(DomainError):
        UnitaryOp(np.array([[1, 1], [0, 1]]))


@given(angles)
def test_rotation_unitary_det_one(theta):
    u = rotation(theta).matrix
    assert np.max(np.abs(u.conj().T @ u - np.eye(2))) < 1e-12
    assert abs(np.linalg.det(u) - 1) < 1e-12


@given(theta=angles, alpha=angles, s=signs)
def test_rotation_moves_states(theta, alpha, s):
    out = rotation(theta) @ spin_state(Direction.planar(alpha), s)
    target = spin_state(Direction.planar(alpha + theta), s)
    assert out.allclose(target, 1e-10) or out.allclose(-target, 1e-10)


@given(theta=angles, alpha=angles, s=signs)
def test_norm_invariance(theta, alpha, s):
    psi = spin_state(Direction.planar(alpha), s)
    out = rotation(theta) @ psi
    assert abs(inner_product(out, out) - inner_product(psi, psi)) < 1e-12


@given(angles)
def test_double_cover(theta):
    np.testing.assert_allclose(rotation(theta + 2 * math.pi).matrix, -rotation(theta).matrix, atol=1e-12)
    psi = Spinor(R, R * 1j)
    assert ray_equivalent(rotation(theta + 2 * math.pi) @ psi, rotation(theta) @ psi)


def test_inner_product_examples():
    psi = Spinor(0.6, 0.8j)
    assert inner_product(psi, psi) == pytest.approx(1)
    a = spin_state(Direction.planar(0), UP)
    b = spin_state(Direction.planar(math.pi / 3), UP)
    assert inner_product(a, b) == pytest.approx(math.sqrt(3) / 2, abs=1e-15)


def test_inner_product_conjugate_linear():
    a, b = Spinor(1j, 0), Spinor(1, 0)
    assert inner_product(a, b) == pytest.approx(-1j)
    assert inner_product(b, a) == pytest.approx(1j)


@pytest.mark.parametrize(
    "target, basis, expected",
    [
        (0.0, math.pi / 2, (R, R)),
        (0.0, -math.pi / 2, (R, -R)),
        (0.7, 0.7, (1, 0)),
    ],
)
def test_decompose_examples(target, basis, expected):
    c = decompose(Direction.planar(target), Direction.planar(basis), UP)
    np.testing.assert_allclose(c, expected, atol=1e-12)


@given(t=angles, b=angles, s=signs)
def test_decompose_reconstructs(t, b, s):
    td, bd = Direction.planar(t), Direction.planar(b)
    cp, cm = decompose(td, bd, s)
    assert abs(abs(cp) ** 2 + abs(cm) ** 2 - 1) < 1e-12
    rebuilt = cp * spin_state(bd, UP).vector + cm * spin_state(bd, DOWN).vector
    np.testing.assert_allclose(rebuilt, spin_state(td, s).vector, atol=1e-12)


@pytest.mark.parametrize(
    "a, b, expected",
    [(0.3, 0.3, 1.0), (0.0, math.pi, 0.0), (0.0, math.pi / 2, 0.5)],
)
def test_transition_probability_examples(a, b, expected):
    p = transition_probability(spin_state(Direction.planar(a), UP), spin_state(Direction.planar(b), UP))
    assert p == pytest.approx(expected, abs=1e-12)


@given(a=angles, b=angles)
def test_half_angle_law(a, b):
    p = transition_probability(spin_state(Direction.planar(a), UP), spin_state(Direction.planar(b), UP))
    assert abs(p - math.cos((a - b) / 2) ** 2) < 1e-10


def test_ray_equivalence_examples():
    assert ray_equivalent(Spinor(1, 0), Spinor(-1, 0))
    assert not ray_equivalent(Spinor(1, 0), Spinor(0, 1))
    assert ray_equivalent(
        spin_state(Direction.planar(math.pi / 2), DOWN), spin_state(Direction.planar(-math.pi / 2), UP)
    )


@given(phase=st.floats(min_value=0, max_value=2 * math.pi), alpha=angles)
def test_ray_equivalence_global_phase(phase, alpha):
    psi = spin_state(Direction.planar(alpha), UP)
    rotated = Spinor.from_array(np.exp(1j * phase) * psi.vector)
    assert ray_equivalent(psi, rotated)


def test_spinor_rejects_unnormalised():
    with pytest.raises(DomainError):
        Spinor(1, 1)
