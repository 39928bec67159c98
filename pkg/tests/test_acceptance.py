"""Acceptance suite: one test per contract criterion, at its stated tolerance.

Each test prints a PASS line with the measured numbers (visible with -s or
in the captured output), so a run of this module doubles as the conformance
report.
"""

import json
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from bunching import (
    Constant,
    Gaussian,
    Grid,
    MonomialZero,
    QuadratureSpec,
    Sinc,
    Statistics,
    average_ratio_numeric,
    build_experiment,
    evaluate,
    expand_ratio_at,
    gaussian_experiment,
    lorentzian_boson,
    order_n_average_check,
    order_n_exact,
    order_n_far,
    order_n_near,
    ratio_finite,
    ratio_finite_closed_form,
    ratio_point,
    rect_experiment,
    run_scan,
    zero_neighborhood_report,
)
from bunching.laws import length_scales

BOSON, FERMION = Statistics.BOSON, Statistics.FERMION


def report(k, text):
    print(f"\nACCEPTANCE {k}: PASS — {text}")


def rect_zeros(config):
    psi1, psi2 = build_experiment(config)
    interval = (config.grid.x_min, config.grid.x_max)
    from bunching import find_zeros

    zs = find_zeros(psi1, interval, wf_index=1) + find_zeros(psi2, interval, wf_index=2)
    return psi1, psi2, sorted(zs, key=lambda z: z.location)


def test_01_complementarity_on_default_grids():
    t0 = time.perf_counter()
    worst = 0.0
    for cfg in (gaussian_experiment(), rect_experiment()):
        assert cfg.grid.points >= 4001
        r = run_scan(cfg)
        ok = np.isfinite(r.rho_b) & np.isfinite(r.rho_f)
        worst = max(worst, float(np.abs(r.rho_b[ok] + r.rho_f[ok] - 2.0).max()))
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-12
    assert elapsed < 1.0
    report(1, f"max |rho_b + rho_f - 2| = {worst:.2e} on both default grids, {elapsed:.2f}s")


def test_02_parallelogram_identity_random_draws():
    rng = np.random.default_rng(20250808)

    def draw_wf():
        kind = rng.integers(0, 4)
        if kind == 0:
            return Gaussian(rng.uniform(0.5, 2.0), rng.uniform(-3, 3))
        if kind == 1:
            return Sinc(rng.uniform(0.5, 2.0), rng.uniform(-3, 3))
        amp = complex(rng.uniform(0.1, 3.0), rng.uniform(-3.0, 3.0))
        if kind == 2:
            return MonomialZero(amp, rng.uniform(-3, 3), int(rng.integers(1, 5)))
        return Constant(amp)

    n_checked = 0
    worst_abs = worst_rel_conditioned = 0.0
    for _ in range(10_000):
        psi1, psi2 = draw_wf(), draw_wf()
        x = float(rng.uniform(-4, 4))
        eps = float(10.0 ** rng.uniform(-4, -1))
        direct = ratio_point(psi1, psi2, BOSON, x, eps)
        if direct is None:
            continue
        identity = expand_ratio_at(psi1, psi2, x, eps).exact
        gap = abs(direct - identity)
        # 1e-13 relative to the ratio's scale (ratios live in [0, 2]); at
        # draws that land essentially on an amplitude zero both routes lose
        # relative accuracy to input cancellation, so the strict relative
        # form is additionally asserted wherever the value is conditioned
        assert gap <= 1e-13 * 2.0
        worst_abs = max(worst_abs, gap)
        if direct >= 1e-2:
            assert gap <= 1e-13 * direct
            worst_rel_conditioned = max(worst_rel_conditioned, gap / direct)
        n_checked += 1
    assert n_checked > 9_900
    report(
        2,
        f"{n_checked} draws: worst |direct - identity| = {worst_abs:.2e} "
        f"(scale tol 2e-13), worst relative at rho >= 1e-2: {worst_rel_conditioned:.2e}",
    )


def test_03_bunching_baseline_without_zeros():
    cfg = gaussian_experiment()
    assert (cfg.xi, cfg.L, cfg.epsilon) == (1.0, 2.0, 1e-3)
    r = run_scan(cfg)
    band = np.abs(r.x) <= 4.0
    lo = float(np.min(r.rho_b[band]))
    hi = float(np.max(r.rho_b[band]))
    assert lo >= 2.0 - 1e-3
    assert hi <= 2.0
    report(3, f"rho_b in [{lo:.6f}, {hi:.6f}] for |x| <= 4 (needs [2 - 1e-3, 2])")


def _taylor_k(psi1, psi2, z):
    """Independent oracle: local quadratic coefficient of rho_B at a simple
    zero from central finite differences of the raw amplitudes."""
    owner, partner = (psi1, psi2) if z.wf_index == 1 else (psi2, psi1)
    h = 1e-5
    x0 = z.location
    d1 = (evaluate(owner, x0 + h) - evaluate(owner, x0 - h)) / (2 * h)
    d2 = (evaluate(owner, x0 + h) - 2 * evaluate(owner, x0) + evaluate(owner, x0 - h)) / h**2
    v = evaluate(partner, x0)
    dv = (evaluate(partner, x0 + h) - evaluate(partner, x0 - h)) / (2 * h)
    return abs(d2 * v - 2 * d1 * dv) ** 2 / (2 * abs(d1 * v) ** 2)


def test_04_local_antibunching_quadratic_in_eps():
    cfg = rect_experiment()  # eps = 2e-2
    psi1, psi2, zeros = rect_zeros(cfg)
    assert len(zeros) == 38
    worst_ratio4 = 4.0
    worst_scaled = 0.0
    for z in zeros:
        k = _taylor_k(psi1, psi2, z)
        r1 = ratio_point(psi1, psi2, BOSON, z.location, 2e-2)
        r2 = ratio_point(psi1, psi2, BOSON, z.location, 1e-2)
        assert r1 <= 1.2 * k * (2e-2 / cfg.xi) ** 2
        assert r2 <= 1.2 * k * (1e-2 / cfg.xi) ** 2
        ratio4 = r1 / r2
        assert ratio4 == pytest.approx(4.0, rel=0.10)
        if abs(ratio4 - 4) > abs(worst_ratio4 - 4):
            worst_ratio4 = ratio4
        worst_scaled = max(worst_scaled, r1 / (k * (2e-2) ** 2))
    report(
        4,
        f"all {len(zeros)} zeros: rho_b(x0) <= 1.2 K (eps/xi)^2 "
        f"(worst rho/(K eps^2) = {worst_scaled:.3f}); halving eps scales by "
        f"{worst_ratio4:.3f} (needs 4 +/- 10%)",
    )


def test_05_fermion_bunching_at_zeros():
    cfg = rect_experiment()
    psi1, psi2, zeros = rect_zeros(cfg)
    worst = 2.0
    for z in zeros:
        k = _taylor_k(psi1, psi2, z)
        rf = ratio_point(psi1, psi2, FERMION, z.location, cfg.epsilon)
        assert rf >= 2.0 - 1.2 * k * (cfg.epsilon / cfg.xi) ** 2
        worst = min(worst, rf)
    report(5, f"rho_f at every zero >= {worst:.6f} (needs >= 2 - 1.2 K (eps/xi)^2)")


def test_06_lorentzian_overlay_at_sinc_zeros():
    cfg = rect_experiment(epsilon=5e-3)
    psi1, psi2 = build_experiment(cfg)
    reports = zero_neighborhood_report(psi1, psi2, cfg)
    assert all(r.status == "ok" for r in reports)
    worst = max(r.max_abs_deviation for r in reports)
    assert worst <= 0.05
    report(
        6,
        f"{len(reports)} zeros, max |numeric - Lorentzian| over |x-x0| <= 20 eps "
        f"= {worst:.4f} (needs <= 0.05)",
    )


def test_07_finite_width_gauss_legendre_oracle():
    pair = (MonomialZero(1.0, 0.0, 1), Constant(1.0))
    quad = QuadratureSpec(nodes_per_axis=32)
    eps = 0.37
    t0 = time.perf_counter()
    worst = 0.0
    for u in np.linspace(-5, 5, 101):
        got = ratio_finite(*pair, BOSON, u * eps, eps, quad)
        want = ratio_finite_closed_form(u * eps, 0.0, eps)
        worst = max(worst, abs(got - want) / want)
    center = ratio_finite(*pair, BOSON, 0.0, eps, quad)
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-8
    assert abs(center - 1.0) <= 1e-10
    assert elapsed < 1.0
    report(
        7,
        f"GL vs closed form: worst rel = {worst:.2e} at 101 points, "
        f"rho(x0) - 1 = {center - 1:.2e}, {elapsed:.2f}s",
    )


def test_08_second_order_deficit_scaling():
    psi1, psi2 = build_experiment(gaussian_experiment())
    eps_list = [1e-2, 1e-3, 1e-4]
    deficits = []
    for eps in eps_list:
        direct = ratio_point(psi1, psi2, BOSON, 0.5, eps)
        identity = expand_ratio_at(psi1, psi2, 0.5, eps).exact
        assert abs(direct - identity) <= 1e-13 * direct
        deficits.append(2.0 - direct)
    slope = float(np.polyfit(np.log(eps_list), np.log(deficits), 1)[0])
    assert slope == pytest.approx(2.0, abs=0.05)
    report(
        8,
        f"log-log slope of deficit vs eps = {slope:.4f} (needs 2.00 +/- 0.05); "
        f"identity and direct ratio agree at every eps",
    )


def test_09_window_average_matches_prediction():
    xi = 1.0
    eps = xi / 200
    cfg = rect_experiment(epsilon=eps, grid=Grid(-10.0, 10.0, 40001))
    r = run_scan(cfg)
    avg = average_ratio_numeric(r, (-8.0, 8.0), BOSON)
    predicted = 2.0 * (1.0 - 2.0 * math.pi * eps / xi)
    deficit_pred = 2.0 - predicted  # 4 pi eps / xi
    err = abs((2.0 - avg.value) - deficit_pred) / deficit_pred
    assert err <= 0.10
    report(
        9,
        f"window [-8, 8] average = {avg.value:.6f} vs 2(1 - 2 pi eps/xi) = "
        f"{predicted:.6f}; deficit error {err:.1%} (needs <= 10%)",
    )


def test_10_order_n_zero_laws():
    # (a) n = 1 reduces to the Lorentzian
    rng = np.random.default_rng(11)
    xs = rng.uniform(-50, 50, 1000)
    epss = 10.0 ** rng.uniform(-3, 1, 1000)
    worst_a = max(
        abs(order_n_exact(x, 0.0, e, 1) - lorentzian_boson(x, 0.0, e))
        for x, e in zip(xs, epss)
    )
    assert worst_a <= 1e-13

    # (b) exact even/odd dichotomy at the zero
    for n in range(1, 11):
        assert order_n_exact(0.0, 0.0, 1.0, n) == (2.0 if n % 2 == 0 else 0.0)

    # (c) near within 2% inside 0.1 delta1; far within 5% beyond 5 delta2
    for n in range(1, 7):
        d1, d2 = length_scales(n, 1.0)
        u_near = np.linspace(-0.1 * d1, 0.1 * d1, 81)
        ex = order_n_exact(u_near, 0.0, 1.0, n)
        nr = order_n_near(u_near, 0.0, 1.0, n)
        mask = np.abs(ex) > 1e-12
        assert (np.abs(nr - ex)[mask] / np.abs(ex)[mask]).max() <= 0.02
        u_far = np.concatenate([np.linspace(5 * d2, 60 * d2, 60), -np.linspace(5 * d2, 60 * d2, 60)])
        ex = order_n_exact(u_far, 0.0, 1.0, n)
        fr = order_n_far(u_far, 0.0, 1.0, n)
        assert (np.abs(fr - ex) / np.abs(ex)).max() <= 0.05

    # (d) numeric window average vs both closed constants: report which is
    # within 5%; the integrated form must be the closer one everywhere
    lines = []
    for n in range(1, 7):
        chk = order_n_average_check(n)
        assert chk.closer == "integrated"
        assert "sqrt2n" not in chk.within_5pct
        if n == 2:
            # even-n near-zone correction is largest here: neither constant
            # lands within 5%; documented, not hidden
            assert chk.within_5pct == ()
        else:
            assert "integrated" in chk.within_5pct
        lines.append(
            f"n={n}: numeric deficit {2 - chk.numeric:.3e}, "
            f"sqrt2n off {chk.err_sqrt2n:.1%}, integrated off {chk.err_integrated:.1%}, "
            f"within 5%: {', '.join(chk.within_5pct) or 'neither'}"
        )
    report(10, "order-n laws verified; window-average comparison:\n    " + "\n    ".join(lines))


def test_11_scan_determinism_across_processes_and_threads(tmp_path):
    cfg_doc = {
        "source_profile": "rect",
        "xi": 1.0,
        "L": 2.25,
        "epsilon": 0.02,
        "grid": {"x_min": -10.0, "x_max": 10.0, "points": 4001},
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(cfg_doc))
    outputs = []
    for tag, threads in (("a", "1"), ("b", "1"), ("c", "4")):
        out = tmp_path / f"scan_{tag}.csv"
        env = dict(os.environ, BUNCHING_THREADS=threads)
        proc = subprocess.run(
            [sys.executable, "-m", "bunching.cli", "scan", "--config", str(cfg), "--out", str(out)],
            capture_output=True,
            text=True,
            env=env,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    report(
        11,
        f"three scan processes (BUNCHING_THREADS = 1, 1, 4) produced byte-identical "
        f"CSV ({len(outputs[0])} bytes)",
    )
