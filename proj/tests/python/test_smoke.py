"""End-to-end checks of the Python surface against the compiled core."""

import math

import numpy as np
import pytest

import chnst


def test_preset_shapes_and_mass():
    params = chnst.ModelParams()
    st = chnst.preset_initial_state("taylor-green", 8, params)
    assert st.subdivisions == 8
    assert st.dof_count == 64
    assert st.mesh_size == pytest.approx(0.125)
    assert st.t == 0.0
    for name in ("phi", "mu", "theta", "pi", "u1", "u2"):
        assert getattr(st, name).shape == (64,)
    # the sine perturbations cancel exactly on the periodic grid
    q = chnst.conserved_quantities(st, params)
    assert q.mass == pytest.approx(0.4, abs=1e-13)
    assert q.total == pytest.approx(q.kinetic + q.internal, abs=1e-13)


def test_unknown_preset_rejected():
    with pytest.raises(ValueError, match="unknown preset"):
        chnst.preset_initial_state("vortex", 4, chnst.ModelParams())


def test_field_assignment_validates_length():
    st = chnst.preset_initial_state("constant", 4, chnst.ModelParams())
    st.phi = np.full(16, 0.25)
    np.testing.assert_allclose(st.phi, 0.25)
    with pytest.raises(ValueError, match="expected 16 coefficients"):
        st.phi = np.zeros(5)


def test_advance_single_step():
    params = chnst.ModelParams()
    cfg = chnst.StepConfig()
    st = chnst.preset_initial_state("taylor-green", 4, params)
    new, report = chnst.advance(st, params, cfg)
    assert report.converged
    assert report.newton_iters >= 1
    assert new.t == pytest.approx(cfg.tau)
    assert not np.array_equal(new.phi, st.phi)

    ledger = chnst.entropy_ledger(st, new, params, cfg)
    assert ledger.delta_entropy >= 0.0
    assert ledger.d_num_residual >= -1e-12

    mu = chnst.initialize_mu(st, params)
    np.testing.assert_allclose(mu, st.mu, atol=1e-12)


def test_advance_implicit_star_mode():
    params = chnst.ModelParams()
    cfg = chnst.StepConfig()
    cfg.star_mode = chnst.StarMode.implicit_new
    st = chnst.preset_initial_state("taylor-green", 4, params)
    _, report = chnst.advance(st, params, cfg)
    assert report.converged


def test_run_preserves_structure():
    params = chnst.ModelParams()
    cfg = chnst.StepConfig()
    st = chnst.preset_initial_state("taylor-green", 8, params)
    result = chnst.run(st, params, cfg, 5 * cfg.tau)
    records = result.records
    assert len(records) == 6
    assert result.final_state.t == pytest.approx(5 * cfg.tau)

    mass0 = records[0].mass
    energy0 = records[0].total_energy
    for rec in records[1:]:
        assert rec.mass == pytest.approx(mass0, abs=1e-10)
        assert rec.total_energy == pytest.approx(energy0, abs=1e-8)
        assert rec.dnum_residual >= -1e-12
        assert rec.dnum_graddiv >= 0.0
        assert rec.dnum_pressure >= 0.0
        assert rec.newton.converged
    entropies = [rec.entropy for rec in records]
    assert all(b >= a - 1e-12 for a, b in zip(entropies, entropies[1:]))


def test_step_failure_is_raised():
    params = chnst.ModelParams()
    cfg = chnst.StepConfig()
    cfg.tau = 1.0
    cfg.newton_max = 1
    st = chnst.preset_initial_state("taylor-green", 4, params)
    with pytest.raises(chnst.StepFailure):
        chnst.advance(st, params, cfg)


def test_eoc():
    assert chnst.eoc(4.0, 1.0) == pytest.approx(2.0)
    assert math.isnan(chnst.eoc(0.0, 1.0))
    assert math.isnan(chnst.eoc(1.0, float("inf")))
