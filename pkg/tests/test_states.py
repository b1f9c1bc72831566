import math

import numpy as np
import pytest

from wlab.errors import BadParams
from wlab.states import (
    BasisVariant,
    BellLabel,
    WParams,
    bell,
    input_pair,
    input_single,
    norm_sq,
    teleport_basis,
    w_state,
)
from wlab.statevec import SZ, apply_single, gram, inner

K_GRID = (0, 0.5, 1, 2, 10, 100)


def weight_one(n):
    return {1 << (n - 1 - j) for j in range(n)}


def support(s, tol=1e-15):
    return {i for i, a in enumerate(s.amplitudes) if abs(a) > tol}


class TestWState:
    def test_four_qubit_k1(self):
        s = w_state(WParams(4, 1))
        c = 2 * math.sqrt(2)
        assert s.amplitudes[0b1000] == pytest.approx(1 / c)
        assert s.amplitudes[0b0100] == pytest.approx(1 / c)
        assert s.amplitudes[0b0010] == pytest.approx(math.sqrt(2) / c)
        assert s.amplitudes[0b0001] == pytest.approx(2 / c)

    def test_four_qubit_k0(self):
        s = w_state(WParams(4, 0))
        assert np.allclose(s.amplitudes[[8, 4, 2, 1]], np.array([1, 0, 1, math.sqrt(2)]) / 2)

    def test_six_qubit_weights(self):
        s = w_state(WParams(6, 2))
        sq = np.abs(s.amplitudes[[32, 16, 8, 4, 2, 1]]) ** 2
        assert np.allclose(sq, np.array([1, 2, 3, 4, 5, 15]) / 30, atol=1e-15)

    def test_three_qubit_member(self):
        k = 3.0
        s = w_state(WParams(3, k))
        expect = np.array([1, math.sqrt(k), math.sqrt(k + 1)]) / math.sqrt(2 * k + 2)
        assert np.allclose(s.amplitudes[[4, 2, 1]], expect)

    @pytest.mark.parametrize("n", range(3, 9))
    @pytest.mark.parametrize("k", K_GRID)
    def test_normalization_constant(self, n, k):
        p = WParams(n, k, tuple(np.linspace(0.1, 2.0, n - 1)))
        s = w_state(p)
        raw = np.sqrt(np.abs(s.amplitudes[sorted(weight_one(n))]) ** 2 * norm_sq(n, k))
        assert abs(np.sum(raw**2) - norm_sq(n, k)) <= 1e-9
        assert abs(s.norm - 1) <= 1e-12
        assert support(s) <= weight_one(n)
        if n == 4:
            assert 1 / math.sqrt(norm_sq(4, k)) == pytest.approx(1 / (2 * math.sqrt(k + 1)))
        if n == 3:
            assert 1 / math.sqrt(norm_sq(3, k)) == pytest.approx(1 / math.sqrt(2 * k + 2))

    def test_phases_attach_to_later_terms(self):
        s = w_state(WParams(4, 1, (0.3, 0.7, 1.1)))
        assert np.angle(s.amplitudes[0b1000]) == pytest.approx(0)
        assert np.angle(s.amplitudes[0b0100]) == pytest.approx(0.3)
        assert np.angle(s.amplitudes[0b0010]) == pytest.approx(0.7)
        assert np.angle(s.amplitudes[0b0001]) == pytest.approx(1.1)

    def test_phase_free_default(self):
        assert np.array_equal(w_state(WParams(4, 2.5)).amplitudes, w_state(WParams(4, 2.5, (0, 0, 0))).amplitudes)

    @pytest.mark.parametrize("bad", [dict(n=2, k=1), dict(n=4, k=-0.1), dict(n=4, k=1, phases=(0,))])
    def test_bad_params(self, bad):
        with pytest.raises(BadParams):
            WParams(**bad)


class TestTeleportBasis:
    def test_corrected_eta_minus(self):
        b = teleport_basis(4, 1)
        c = 2 * math.sqrt(2)
        amps = b["eta-"].amplitudes
        assert amps[0b0100] == pytest.approx(1 / c)
        assert amps[0b0010] == pytest.approx(1 / c)
        assert amps[0b0001] == pytest.approx(math.sqrt(2) / c)
        assert amps[0b1000] == pytest.approx(-2 / c)

    def test_as_printed_double_sign(self):
        b = teleport_basis(4, 1, variant=BasisVariant.AS_PRINTED)
        assert b["eta-"].amplitudes[0b0001] < 0
        assert inner(b["eta+"], b["eta-"]) == pytest.approx(-0.5, abs=1e-12)

    @pytest.mark.parametrize("n", [3, 5, 6])
    def test_as_printed_single_sign_beyond_four(self, n):
        a = teleport_basis(n, 1.5, variant=BasisVariant.AS_PRINTED)
        c = teleport_basis(n, 1.5)
        for name in a:
            assert np.array_equal(a[name].amplitudes, c[name].amplitudes)

    @pytest.mark.parametrize("n", range(4, 9))
    @pytest.mark.parametrize("k", K_GRID)
    def test_corrected_is_orthonormal(self, n, k):
        g = gram(list(teleport_basis(n, k).values()))
        assert np.max(np.abs(g - np.eye(4))) <= 1e-12

    @pytest.mark.parametrize("k", K_GRID)
    def test_sigma_z_on_ancilla_maps_eta_plus_to_minus(self, k):
        b = teleport_basis(4, k, phases=(0.2, 0.4, 0.9))
        out = apply_single(b["eta+"], "a", SZ)
        assert np.max(np.abs(out.amplitudes - b["eta-"].amplitudes)) <= 1e-12

    @pytest.mark.parametrize("n", range(3, 8))
    def test_supports(self, n):
        b = teleport_basis(n, 2.0)
        anc = 1 << (n - 1)
        eta_support = {1 << (n - 1 - j) for j in range(1, n)} | {anc}
        xi_support = {i ^ anc for i in eta_support}
        for name in ("eta+", "eta-"):
            assert support(b[name]) == eta_support
        for name in ("xi+", "xi-"):
            assert support(b[name]) == xi_support
        assert not eta_support & xi_support
        for e in ("eta+", "eta-"):
            for x in ("xi+", "xi-"):
                assert inner(b[e], b[x]) == 0


class TestBellAndInputs:
    def test_phi_plus(self):
        assert np.allclose(bell(BellLabel.PHI_PLUS).amplitudes, np.array([1, 0, 0, 1]) / math.sqrt(2))

    def test_psi_minus(self):
        assert np.allclose(bell("psi-").amplitudes, np.array([0, 1, -1, 0]) / math.sqrt(2))

    def test_orthonormal(self):
        assert np.allclose(gram([bell(l) for l in BellLabel]), np.eye(4))

    @pytest.mark.parametrize(
        "alpha, expect",
        [(1, [1, 0]), (0.6, [0.6, 0.8]), (1 / math.sqrt(2), [1 / math.sqrt(2)] * 2)],
    )
    def test_input_single(self, alpha, expect):
        assert np.allclose(input_single(alpha).amplitudes, expect)

    def test_input_pair(self):
        assert np.allclose(input_pair(1 / math.sqrt(2)).amplitudes, bell("phi+").amplitudes)
        assert np.allclose(input_pair(1).amplitudes, [1, 0, 0, 0])
        assert input_pair(0.3).labels == ("a", "b")

    @pytest.mark.parametrize("alpha", [-0.1, 1.1])
    def test_bad_alpha(self, alpha):
        with pytest.raises(BadParams):
            input_single(alpha)
        with pytest.raises(BadParams):
            input_pair(alpha)
