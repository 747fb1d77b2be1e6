import numpy as np
import pytest
from conftest import M2_CASES, RATIONAL, RATIONAL_TILDE
from hypothesis import given, settings
from hypothesis import strategies as st

from opuc.cpoly import CPoly
from opuc.errors import (
    DataInconsistencyError,
    InconsistentInputsError,
    MissingCompanionError,
    NotApplicableError,
)
from opuc.marcellan import (
    M2Report,
    a_from_quasi,
    alpha_from_corollary,
    cd2_deviation,
    disk_grid,
    marcellan_a_seq,
    quasi_family,
    quasi_forward,
    reconstruct_phi,
    verify_m2,
)
from opuc.measure import BernsteinSzego, ChristoffelLebesgue, Lebesgue, moments
from opuc.szego import family_from_alphas, family_from_measure, verify_orthogonality

disk_points = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0.05, 0.9), st.floats(0, 2 * np.pi))


@pytest.mark.parametrize("gamma", [1.0, 1j, np.exp(2.1j)])
def test_christoffel_unimodular_quasi_are_monomials(gamma):
    # against normalized Lebesgue the quasi polynomials must be z^n
    base = family_from_measure(ChristoffelLebesgue(gamma), 8)
    a = marcellan_a_seq(base)
    n = np.arange(1, 9)
    assert np.allclose(a, gamma * n / (n + 1), atol=1e-13)
    qf = quasi_family(base, a, Lebesgue(normalized=True))
    for k in range(9):
        assert np.allclose(qf.qphi[k].coeffs, CPoly.monomial(k).coeffs, atol=1e-12)
    assert np.max(np.abs(qf.tilde_alphas)) < 1e-14


def test_constant_rule_on_lebesgue_gives_bernstein():
    base = family_from_measure(Lebesgue(), 6)
    qf = quasi_family(base, [0.4] * 6, BernsteinSzego(0.4))
    for k in range(1, 7):
        assert np.allclose(qf.qphi[k].coeffs, CPoly([-0.4, 1]).shift(k - 1).coeffs, atol=1e-14)
    assert verify_m2(qf).passed


def test_marcellan_seq_with_companion_alphas():
    base = family_from_measure(RATIONAL, 8)
    tilde = family_from_measure(RATIONAL_TILDE, 8)
    a = marcellan_a_seq(base, tilde)
    qf = quasi_family(base, a, RATIONAL_TILDE)
    # the quasi family is the companion OPUC
    for k in range(9):
        assert np.allclose(qf.qphi[k].coeffs, tilde.phi[k].coeffs, atol=1e-11)
    # passing the bare coefficients works the same way
    assert np.allclose(marcellan_a_seq(base, tilde.alpha), a)


def test_marcellan_seq_default_is_ratio_rule():
    base = family_from_alphas(None, [0.3, 0.2j, -0.1, 0.4])
    a = marcellan_a_seq(base)
    al = np.conj(base.alpha)
    assert a[0] == pytest.approx(-al[0])
    assert np.allclose(a[1:], al[1:] / al[:-1])


def test_marcellan_seq_errors():
    with pytest.raises(NotApplicableError) as info:
        marcellan_a_seq(family_from_alphas(None, [0.3, 0.0, 0.2]))
    assert info.value.index == 1
    with pytest.raises(ValueError):
        marcellan_a_seq(family_from_alphas(None, [0.3, 0.1, 0.2]), [0.1])


@pytest.mark.parametrize("preset,rule", M2_CASES)
def test_m2_cases_pass(setups, preset, rule):
    s = setups(preset, rule)
    rep = verify_m2(s.qf)
    assert rep.passed, rep.to_json()
    assert verify_orthogonality(s.tilde_fam) < 1e-12


def test_m2_rejects_wrong_companion():
    base = family_from_measure(Lebesgue(), 6)
    qf = quasi_family(base, [0.4] * 6, BernsteinSzego(-0.4))
    rep = verify_m2(qf)
    assert not rep.orthogonal and not rep.passed
    assert rep.to_json()["pass"] is False


def test_m2_needs_companion():
    qf = quasi_family(family_from_measure(Lebesgue(), 3), [0.1, 0.2, 0.3])
    assert qf.tilde_fam is None and qf.tilde_alphas is None
    with pytest.raises(MissingCompanionError):
        verify_m2(qf)


def test_report_flags():
    rep = M2Report(1e-12, 0.3, 1e-13, 1.0, 1e-8)
    assert rep.orthogonal and rep.integrals_nonzero and rep.cd2_ok and rep.passed
    assert not M2Report(1e-12, 1e-9, 0.0, 1.0, 1e-8).integrals_nonzero
    assert not M2Report(0.0, 1.0, 1e-6, 1.0, 1e-8).cd2_ok


def test_quasi_family_length_check():
    with pytest.raises(ValueError):
        quasi_family(family_from_measure(Lebesgue(), 3), [0.1, 0.2])


def test_disk_grid_shape():
    g = disk_grid(4, 8)
    assert g.shape == (32,)
    assert np.max(np.abs(g)) == pytest.approx(1.0)
    assert np.min(np.abs(g)) == pytest.approx(0.25)


def test_cd2_identity_for_true_opuc():
    fam = family_from_measure(RATIONAL, 3)
    assert cd2_deviation(fam.phi, fam.norm_sq, disk_grid()) < 1e-12
    # a perturbed family breaks it
    bad = list(fam.phi)
    bad[2] = bad[2] + CPoly([0.1])
    assert cd2_deviation(bad, fam.norm_sq, disk_grid()) > 1e-3


@settings(max_examples=60)
@given(st.lists(disk_points, min_size=2, max_size=7), st.lists(disk_points, min_size=7, max_size=7))
def test_forward_then_reconstruct_round_trip(alphas, avals):
    base = family_from_alphas(None, alphas)
    qf = quasi_family(base, avals[: base.N])
    for n in range(base.N):
        a_next, al = qf.a[n + 1], base.alpha[n]
        q, qs = quasi_forward(base.phi[n], base.phi_star[n], a_next, al)
        assert np.allclose(q.coeffs, qf.qphi[n + 1].coeffs, atol=1e-12)
        assert np.allclose(qs.coeffs, qf.qphi_star[n + 1].coeffs, atol=1e-12)
        phi, phis = reconstruct_phi(q, qs, a_next, al)
        assert np.allclose(phi.coeffs, base.phi[n].coeffs, atol=1e-9)
        assert np.allclose(phis.coeffs, base.phi_star[n].coeffs, atol=1e-9)


@settings(max_examples=60)
@given(st.lists(disk_points, min_size=2, max_size=7), st.lists(disk_points, min_size=7, max_size=7))
def test_a_and_alpha_recovered(alphas, avals):
    base = family_from_alphas(None, alphas)
    qf = quasi_family(base, avals[: base.N])
    for n in range(base.N):
        prev = -1.0 if n == 0 else base.alpha[n - 1]
        got = a_from_quasi(qf.qphi[n + 1](0), base.alpha[n], prev)
        assert got == pytest.approx(qf.a[n + 1], abs=1e-10)
        x = 1 / np.conj(qf.a[n + 1])
        if abs(base.phi[n](x)) > 1e-6:
            assert alpha_from_corollary(qf, n) == pytest.approx(base.alpha[n], abs=1e-8)


def test_reconstruct_with_double_zero_on_circle():
    # a = alpha = 1/2 gives d(z) = -(z - 1)^2 / 2
    base = family_from_alphas(None, [0.5, 0.5, 0.5, 0.73, 0.25, 0.47, 0.125])
    for n in range(base.N):
        q, qs = quasi_forward(base.phi[n], base.phi_star[n], 0.5, base.alpha[n])
        phi, _ = reconstruct_phi(q, qs, 0.5, base.alpha[n])
        assert np.allclose(phi.coeffs, base.phi[n].coeffs, atol=1e-12)


def test_reconstruct_rejects_inconsistent_pair():
    with pytest.raises(InconsistentInputsError):
        reconstruct_phi(CPoly([0.1, 0.2, 1]), CPoly([1, 0.5, 0.3]), 0.4, 0.3)


def test_a_from_quasi_needs_previous_alpha():
    with pytest.raises(NotApplicableError):
        a_from_quasi(0.1, 0.2, 0)


def test_corollary_errors():
    base = family_from_alphas(None, [0.3, 0.2])
    qf = quasi_family(base, [0.0, 0.5])
    with pytest.raises(NotApplicableError):
        alpha_from_corollary(qf, 0)
    # Phi_1 = z - 0.3 vanishes at 1/conj(a_2) when a_2 = 1/0.3
    qf = quasi_family(base, [0.5, 1 / 0.3])
    with pytest.raises(DataInconsistencyError):
        alpha_from_corollary(qf, 1)


def test_m2_report_json_keys():
    base = family_from_measure(Lebesgue(), 4)
    rep = verify_m2(quasi_family(base, [0.4] * 4, BernsteinSzego(0.4)))
    assert set(rep.to_json()) >= {"gram_offdiag", "min_phi_integral", "cd2_deviation", "pass"}
    assert rep.m0_tilde == pytest.approx(moments(BernsteinSzego(0.4), 1).m0)


@pytest.mark.parametrize(
    "a,b,member",
    [(0.5, -0.5, True), (0.3 + 0.2j, -0.3 - 0.2j, True), (0.3 + 0.2j, -0.3 + 0.2j, False), (0.5, 0.3, False)],
)
def test_bernstein_constant_rule_degree_one(a, b, member):
    # Phi~_n = z^{n-2}(z - a)(z - b) for n >= 2 always; Phi~_1 = z - a - b is
    # orthogonal for the companion only when b = -a
    from opuc.presets import build_setup

    s = build_setup(BernsteinSzego(a), 6, f"constant:{b}")
    for n in range(2, 7):
        want = (CPoly([-a, 1]) * CPoly([-b, 1])).shift(n - 2)
        assert np.allclose(s.tilde_fam.phi[n].coeffs, want.coeffs, atol=1e-11)
    assert verify_m2(s.qf).passed is member
