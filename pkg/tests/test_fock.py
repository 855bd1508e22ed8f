import json
import math

import numpy as np
import pytest

from wignerosc import (GZPattern, InteractionModel, ModeFrequencies,
                       ResourceLimitError, build_fock_operators, decompose,
                       enumerate_gz, fock_spectrum, gz_to_fock, mode_frequencies,
                       osp_eigenvalue, osp_spectrum, reconstruct_observables,
                       verify_compatibility)


def _kraw_freqs(n, c, omega=1.0):
    return ModeFrequencies(mu=omega ** 2 + c * np.arange(n))


def test_single_mode_hamiltonian_diagonal():
    ops = build_fock_operators(1, ModeFrequencies(mu=np.array([1.0])), 3)
    assert np.allclose(ops.h, np.diag([0.5, 1.5, 2.5]), atol=1e-15)


def test_vacuum_energy():
    for n, c in ((2, 0.3), (3, 0.0), (3, 0.7)):
        freqs = _kraw_freqs(n, c)
        ops = build_fock_operators(n, freqs, 3, hbar=1.0)
        assert ops.h[0, 0] == pytest.approx(0.5 * freqs.sqrt_mu.sum(), abs=1e-12)


def test_ladder_algebra_on_interior():
    freqs = _kraw_freqs(2, 0.4)
    ops = build_fock_operators(2, freqs, 4)
    mask = ops.interior
    eye = np.eye(ops.dim)
    for j in range(2):
        for k in range(2):
            comm = ops.a_minus[j] @ ops.a_plus[k] - ops.a_plus[k] @ ops.a_minus[j]
            target = eye if j == k else 0.0
            sub = (comm - target)[np.ix_(mask, mask)]
            assert np.abs(sub).max() < 1e-12


def test_operator_set_structure():
    freqs = _kraw_freqs(2, 0.4)
    ops = build_fock_operators(2, freqs, 4)
    for j in range(2):
        assert np.array_equal(ops.a_minus[j], ops.a_plus[j].T)
    assert np.abs(ops.h - ops.h.T).max() == 0.0
    assert ops.interior_dim == 3 ** 2
    # state indexing is mixed-radix with the first mode most significant
    assert ops.occupations[1].tolist() == [0, 1]
    assert ops.occupations[4].tolist() == [1, 0]
    from wignerosc import FockBasisState
    for idx, occ in enumerate(ops.occupations):
        assert FockBasisState(tuple(occ), cutoff=4).index == idx


def test_resource_and_cutoff_guards():
    freqs = _kraw_freqs(4, 0.1)
    with pytest.raises(ResourceLimitError):
        build_fock_operators(4, freqs, 50)
    with pytest.raises(ValueError):
        build_fock_operators(4, freqs, 1)


def test_compatibility_residuals_small():
    freqs = _kraw_freqs(2, 0.37)
    ops = build_fock_operators(2, freqs, 6)
    report = verify_compatibility(ops)
    assert report.max_residual < 1e-10
    assert report.interior_dim == 25


def test_compatibility_uncoupled_symmetric_across_modes():
    freqs = _kraw_freqs(3, 0.0)
    ops = build_fock_operators(3, freqs, 4)
    report = verify_compatibility(ops)
    assert len(set(report.raising_residuals)) == 1
    assert len(set(report.lowering_residuals)) == 1


def test_compatibility_minimal_cutoff():
    ops = build_fock_operators(1, ModeFrequencies(mu=np.array([2.0])), 2)
    report = verify_compatibility(ops)
    assert report.interior_dim == 1
    assert report.max_residual < 1e-12


def test_compatibility_cutoff_independent():
    freqs = _kraw_freqs(2, 0.5)
    for cutoff in (4, 6, 8):
        report = verify_compatibility(build_fock_operators(2, freqs, cutoff))
        assert report.max_residual < 1e-10


def test_report_json_schema():
    freqs = _kraw_freqs(2, 0.2)
    report = verify_compatibility(build_fock_operators(2, freqs, 4))
    payload = json.loads(report.to_json())
    assert payload["cutoff"] == 4
    assert payload["interior_dimension"] == 9
    assert len(payload["identities"]) == 4
    entry = payload["identities"][0]
    assert set(entry) == {"identity", "mode", "sign", "residual"}


def test_mode_number_conserved():
    freqs = _kraw_freqs(2, 0.3)
    ops = build_fock_operators(2, freqs, 5)
    mask = ops.interior
    for j in range(2):
        num = ops.a_plus[j] @ ops.a_minus[j]
        comm = ops.h @ num - num @ ops.h
        assert np.abs(comm[np.ix_(mask, mask)]).max() < 1e-10


def test_fock_spectrum_vacuum_and_uncoupled():
    freqs = _kraw_freqs(3, 0.4)
    lines = fock_spectrum(3, freqs, k_total_max=2)
    assert lines[0].energy == pytest.approx(0.5 * freqs.sqrt_mu.sum(), abs=1e-12)
    assert lines[0].multiplicity == 1

    freqs0 = _kraw_freqs(3, 0.0)
    lines = fock_spectrum(3, freqs0, k_total_max=4)
    assert len(lines) == 5
    for k, line in enumerate(lines):
        assert line.energy == pytest.approx(3 / 2 + k, abs=1e-12)
        assert line.multiplicity == math.comb(3 + k - 1, 2)


def test_fock_spectrum_hbar_prefactor():
    freqs = _kraw_freqs(2, 0.3)
    ref = fock_spectrum(2, freqs, hbar=1.0, k_total_max=1)
    scaled = fock_spectrum(2, freqs, hbar=2.0, k_total_max=1)
    for a, b in zip(ref, scaled):
        assert b.energy == pytest.approx(2 * a.energy, rel=1e-12)


def test_fock_matches_osp_p1():
    for n in (1, 2, 3, 4):
        freqs = _kraw_freqs(n, 0.37)
        fock = fock_spectrum(n, freqs, k_total_max=3)
        osp = osp_spectrum(n, 1, freqs, k_max=3)
        assert len(fock) == len(osp)
        for a, b in zip(fock, osp):
            assert abs(a.energy - b.energy) < 1e-12
            assert a.multiplicity == b.multiplicity


def test_gz_to_fock_examples():
    zero = GZPattern(rows=((0, 0, 0), (0, 0), (0,)), n=3, p=1)
    assert gz_to_fock(zero).occupations == (0, 0, 0)

    pat = GZPattern(rows=((2, 0, 0), (2, 0), (1,)), n=3, p=2)
    assert gz_to_fock(pat).occupations == (1, 1, 0)

    wide = GZPattern(rows=((1, 1, 0), (1, 1), (1,)), n=3, p=2)
    with pytest.raises(ValueError, match="single-column"):
        gz_to_fock(wide)


def test_gz_to_fock_bijection():
    for n in (2, 3):
        pats = enumerate_gz(n, 1, 3)
        occs = {gz_to_fock(p).occupations for p in pats}
        assert len(occs) == len(pats)
        assert occs == {occ for occ in _all_occs(n, 3)}


def _all_occs(n, total):
    if n == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _all_occs(n - 1, total - first):
            yield (first,) + rest


def test_gz_to_fock_energy_preserved():
    rng = np.random.default_rng(23)
    count = 0
    while count < 200:
        n = int(rng.integers(1, 6))
        pats = enumerate_gz(n, 1, 4)
        pat = pats[int(rng.integers(0, len(pats)))]
        freqs = ModeFrequencies(mu=rng.uniform(0.1, 6.0, size=n))
        state = gz_to_fock(pat)
        e_fock = 0.5 * freqs.sqrt_mu.sum() + float(
            np.dot(state.occupations, freqs.sqrt_mu))
        assert abs(osp_eigenvalue(pat, freqs, 1) - e_fock) < 1e-12 * (1 + abs(e_fock))
        count += 1


def test_reconstruct_single_mode():
    model = InteractionModel.general(np.zeros((1, 1)), omega=1.3, c=0.0)
    decomp = decompose(model)
    freqs = mode_frequencies(decomp, model.omega, model.c)
    ops = build_fock_operators(1, freqs, 5)
    obs = reconstruct_observables(decomp, ops, model)
    expected = math.sqrt(1.0 / (2 * 1.3)) * (ops.a_plus[0] + ops.a_minus[0])
    assert np.abs(obs.q[0] - expected).max() < 1e-14


def test_reconstruct_compatibility_residuals():
    for make, n in ((InteractionModel.constant, 2), (InteractionModel.krawtchouk, 2),
                    (InteractionModel.constant, 3), (InteractionModel.krawtchouk, 3)):
        model = make(n, omega=1.0, c=0.4)
        decomp = decompose(model)
        freqs = mode_frequencies(decomp, model.omega, model.c)
        ops = build_fock_operators(n, freqs, 6 if n == 2 else 4)
        obs = reconstruct_observables(decomp, ops, model)
        assert max(obs.position_cc_residuals) < 1e-9
        assert max(obs.momentum_cc_residuals) < 1e-9
        assert obs.pairing_residual < 1e-9
        assert obs.max_q_asymmetry < 1e-12
        assert obs.max_w_symmetry < 1e-12


def test_reconstruct_nonunit_mass():
    model = InteractionModel.constant(2, omega=1.0, c=0.3, mass=2.5)
    decomp = decompose(model)
    freqs = mode_frequencies(decomp, model.omega, model.c)
    ops = build_fock_operators(2, freqs, 6)
    obs = reconstruct_observables(decomp, ops, model)
    assert max(obs.position_cc_residuals) < 1e-9
    assert max(obs.momentum_cc_residuals) < 1e-9
    assert obs.pairing_residual < 1e-9


def test_reconstruct_rejects_mismatched_frequencies():
    model = InteractionModel.krawtchouk(2, omega=1.0, c=0.4)
    decomp = decompose(model)
    ops = build_fock_operators(2, _kraw_freqs(2, 0.9), 4)
    with pytest.raises(ValueError, match="different mode frequencies"):
        reconstruct_observables(decomp, ops, model)
