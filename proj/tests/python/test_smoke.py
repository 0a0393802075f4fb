"""End-to-end smoke checks of the compiled module."""

import cmath
import math

import pytest

import sse


def test_family_and_amplitude():
    f = sse.semicircle_family(1.0, -0.5, 0.5)
    assert f.kind == "semicircle"
    assert sse.amplitude(f, 0.0) == pytest.approx(1.0)
    assert sse.amplitude(f, 0.7) == 0.0
    assert sse.epsilon_for(f, 5) == pytest.approx(1.0 / 20)


def test_config_errors_are_value_errors():
    with pytest.raises(ValueError):
        sse.semicircle_family(-1.0, -0.5, 0.5)


def test_spectrum_closed_form():
    f = sse.semicircle_family(1.0, -0.5, 0.5)
    sd = sse.wkb_spectrum(f, 2)
    assert sd.N == 2
    assert sd.epsilon == pytest.approx(1.0 / 8)
    for n, s in enumerate(sd.s):
        assert s == pytest.approx(math.sqrt(1 - (2 * n + 1) / 4.0), abs=1e-12)


def test_one_soliton_profile():
    f = sse.semicircle_family(1.0, -0.5, 0.5)
    sd = sse.wkb_spectrum(f, 1)
    s0 = sd.s[0]
    for x in (-0.3, 0.0, 0.4):
        smp = sse.evaluate(sd, x, [])
        assert smp.ok
        want = 2 * s0 / math.cosh(2 * s0 * x / sd.epsilon)
        assert smp.psi == pytest.approx(want, abs=1e-10)


def test_grid_shape_and_reality():
    f = sse.semicircle_family(1.0, -0.5, 0.5)
    sd = sse.wkb_spectrum(f, 3)
    g = sse.evaluate_grid(sd, [-0.2, 0.0, 0.2], [[0.0], [0.03]])
    assert (g.nx, g.nt) == (3, 2)
    assert len(g.pts) == 6
    for p in g.pts:
        assert p.ok
        if p.times == [0.0]:
            assert abs(p.psi.imag) < 1e-8 * (1 + abs(p.psi))


def test_focus_prediction():
    f = sse.semicircle_family(1.0, -0.5, 0.5)
    ev = sse.focus_point(f, -1)
    assert ev.x0 == pytest.approx(0.0)
    assert ev.t0 == pytest.approx([math.pi / 8])
    assert ev.nu == pytest.approx(1.0 / 12)


def test_dispersionless_constants():
    p = sse.talanov_from_amplitude(1.0, 2.0)
    assert sse.talanov_duration(p) == pytest.approx(math.pi, abs=1e-10)
    assert sse.talanov_inverse_T(0.5) == pytest.approx(0.5 + math.pi / 4)
    assert sse.ask_axis(1.0, 0.5) == pytest.approx(2.0, abs=1e-8)
    cat = sse.interpolation_catastrophe(1.0)
    assert (cat.rho_c, cat.t_c) == (pytest.approx(0.5), pytest.approx(1.0))
    with pytest.raises(RuntimeError):
        sse.width_solve(p, math.pi)  # past collapse


def test_acceptance_entry_point():
    res = sse.run_criterion(2)
    assert res.passed
    assert "N=20" in res.detail
