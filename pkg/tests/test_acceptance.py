"""Exit criteria. Each test prints one PASS/FAIL line in the terminal summary."""
import contextlib
import io
import math
from pathlib import Path

import numpy as np
import pytest

from improved_hoeffding import (
    DeviationForm,
    IntervalSet,
    MgfBoundKind,
    Sidedness,
    arithmetic_mean,
    geometric_mean,
    iid_one_sided_bound,
    invert_for_n,
    invert_for_t,
    lam,
    log_two_point_mgf,
    make_interval,
    mixed_scales,
    one_sided_bound,
    psi,
    psi_second,
    two_point_mgf,
    two_sided_bound,
)
from improved_hoeffding.cli import main
from improved_hoeffding.harness import (
    empirical_tail,
    exact_tail,
    extremal_two_point,
    log_mgf,
    random_zero_mean,
    verify_lemma,
    verify_psi_second_max,
    zero_mean_mixture,
)

from conftest import random_interval
from golden_cases import CASES, EXIT_CODES

HERE = Path(__file__).parent
SEED = 20201003


def random_set(gen, max_size=50):
    k = int(gen.integers(1, max_size + 1))
    return IntervalSet(tuple(random_interval(gen) for _ in range(k)))


def test_c01_lemma_certification(criterion):
    gen = np.random.default_rng(SEED + 1)
    worst = math.inf
    violations = 0
    for skew in ("left", "right"):
        for _ in range(1000):
            iv = random_interval(gen, skew)
            rep = verify_lemma(iv, 30.0 / iv.width, 200)
            sigma = geometric_mean(iv) if skew == "left" else arithmetic_mean(iv)
            direct = np.array([log_two_point_mgf(iv, s) - 0.5 * (s * sigma) ** 2 for s in rep.s_grid])
            violations += int(np.sum(direct > 1e-12)) + (not rep.passed)
            worst = min(worst, rep.min_margin)
    criterion("C1 lemma certification (2x1000 intervals x 200 s)",
              f"violations={violations}, min margin={worst:.3g}")
    assert violations == 0


def test_c02_extremality(criterion):
    gen = np.random.default_rng(SEED + 2)
    violations = 0
    count = 0
    tol = math.log1p(1e-12)
    for _ in range(100):
        iv = random_interval(gen)
        grid = np.geomspace(0.01, 30.0, 20) / iv.width
        tops = [log_two_point_mgf(iv, s) for s in grid]
        for _ in range(100):
            d = random_zero_mean(iv, gen)
            count += 1
            violations += sum(log_mgf(d, s) > top + tol for s, top in zip(grid, tops))
    criterion("C2 extremality (10^4 laws x 20 s)", f"laws={count}, violations={violations}")
    assert count == 10_000 and violations == 0


def test_c03_max_location(criterion):
    gen = np.random.default_rng(SEED + 3)
    bad = 0
    for _ in range(500):
        iv = random_interval(gen, "left")
        rep = verify_psi_second_max(iv, 10_000)
        w = lam(iv)
        if not (rep.passed and rep.argmax_mu == 0.0 and abs(rep.max_value - w * (1 - w)) <= 1e-12):
            bad += 1
    for _ in range(500):
        iv = random_interval(gen, "right")
        rep = verify_psi_second_max(iv, 10_000)
        if not (rep.passed and rep.max_value <= 0.25):
            bad += 1
    criterion("C3 psi'' max location (500 left, 500 right)", f"failures={bad}")
    assert bad == 0


def test_c04_derivative_oracle(criterion):
    gen = np.random.default_rng(SEED + 4)
    h = 1e-5
    worst = 0.0
    for _ in range(100):
        iv = random_interval(gen)
        for mu in (0.1, 1.0, 3.0):
            fd = (psi(iv, mu + h) - 2 * psi(iv, mu) + psi(iv, mu - h)) / h**2
            worst = max(worst, abs(fd - psi_second(iv, mu)))
    criterion("C4 finite-difference psi''", f"max abs error={worst:.3g}")
    assert worst <= 1e-5


def test_c05_ordering(criterion):
    gen = np.random.default_rng(SEED + 5)
    bad = 0
    tol = 1 + 1e-12
    for _ in range(1000):
        sc = mixed_scales(random_set(gen))
        ok = (sc.bar_g <= sc.bar_m * tol and sc.bar_m <= sc.bar_a * tol
              and sc.bar_g <= sc.bar_n * tol and sc.bar_n <= sc.bar_a * tol)
        bad += not ok
    criterion("C5 ordering G <= M, N <= A (1000 sets)", f"failures={bad}")
    assert bad == 0


def test_c06_bound_improvement(criterion):
    gen = np.random.default_rng(SEED + 6)
    bad = 0
    checked = 0
    sets = [random_set(gen) for _ in range(300)]
    sym = [IntervalSet(tuple(make_interval(-x, x) for x in gen.uniform(0.01, 10, int(k))))
           for k in gen.integers(1, 30, 50)]
    for ivs in sets + sym:
        all_sym = all(iv.b == -iv.a for iv in ivs)
        scale = math.sqrt(mixed_scales(ivs).sum_a_sq)
        for t in np.geomspace(0.05, 6.0, 25) * scale:
            t = float(t)
            one_i = one_sided_bound(ivs, t, kind=MgfBoundKind.IMPROVED)
            one_o = one_sided_bound(ivs, t, kind=MgfBoundKind.ORIGINAL)
            two = two_sided_bound(ivs, t)
            cap = min(1.0, 2 * math.exp(-t * t / (2 * mixed_scales(ivs).sum_a_sq)))
            ok = one_i.bound <= one_o.bound and two.bound_improved <= cap * (1 + 1e-15)
            if all_sym:
                ok = ok and two.bound_improved == two.bound_original and one_i.bound == one_o.bound
            bad += not ok
            checked += 1
    criterion("C6 improved <= original (one- and two-sided)", f"checks={checked}, failures={bad}")
    assert bad == 0


def test_c07_worked_numbers(criterion):
    L = make_interval(-2, 1)
    ivs = IntervalSet((L, make_interval(-1, 3), make_interval(-1, 1)))
    sc = mixed_scales(ivs)
    checks = {
        "M^2=7": sc.m_sq == pytest.approx(7.0, rel=1e-15),
        "N^2=6.25": sc.n_sq == pytest.approx(6.25, rel=1e-15),
        "psi=0.61912": abs(psi(L, 3) - 0.61912) <= 1e-5,
        "mgf=1.8572997": abs(two_point_mgf(L, 1) - 1.8572997) <= 1e-6,
        "one-sided=0.16768": abs(one_sided_bound(ivs, 5).bound_improved - 0.16768) <= 1e-5,
        "two-sided=0.30301": abs(two_sided_bound(ivs, 5).bound_improved - 0.30301) <= 1e-5,
        "n=300": invert_for_n(L, 0.2, 0.05, MgfBoundKind.IMPROVED) == 300,
        "n=338": invert_for_n(L, 0.2, 0.05, MgfBoundKind.ORIGINAL) == 338,
    }
    failed = [k for k, v in checks.items() if not v]
    criterion("C7 worked numbers", "all match" if not failed else f"failed: {failed}")
    assert not failed


def _scenarios():
    gen = np.random.default_rng(SEED + 8)
    out = []
    for k in range(20):
        n = int(gen.integers(1, 13))
        ivs = IntervalSet(tuple(random_interval(gen) for _ in range(n)))
        if k % 2 == 0:
            dists = [extremal_two_point(iv) for iv in ivs]
        else:
            c = float(gen.uniform(0.3, 1.0))
            dists = [zero_mean_mixture(iv, c) for iv in ivs]
        target = float(np.exp(gen.uniform(np.log(2e-3), np.log(0.5))))
        t = math.sqrt(2 * mixed_scales(ivs).m_sq * math.log(1 / target))
        out.append((ivs, dists, t, 1000 + k))
    return out


def test_c08_monte_carlo_domination(criterion):
    bad = []
    for i, (ivs, dists, t, seed) in enumerate(_scenarios()):
        bound = one_sided_bound(ivs, t).bound_improved
        assert bound >= 1e-3
        est = empirical_tail(ivs, dists, t, DeviationForm.SUM, reps=100_000, seed=seed)
        exact = exact_tail(dists, t)
        if not (est.ci_upper_99 <= bound and exact <= bound and exact <= est.ci_upper_99):
            bad.append((i, est.estimate, est.ci_upper_99, exact, bound))
    criterion("C8 Monte Carlo domination (20 scenarios x 1e5 reps)", f"failures={bad}")
    assert not bad


def test_c09_inversion_round_trips(criterion):
    gen = np.random.default_rng(SEED + 9)
    worst_rel = 0.0
    bad_n = 0
    for _ in range(100):
        ivs = random_set(gen, 20)
        delta = float(np.exp(gen.uniform(np.log(1e-8), np.log(0.9))))
        for side in Sidedness:
            for kind in MgfBoundKind:
                t = invert_for_t(ivs, delta, side, kind)
                fn = one_sided_bound if side is Sidedness.ONE else two_sided_bound
                got = fn(ivs, t, DeviationForm.SUM, kind).bound
                worst_rel = max(worst_rel, abs(got / delta - 1))
        iv = random_interval(gen)
        tm = float(np.exp(gen.uniform(np.log(0.01), np.log(10))))
        for kind in MgfBoundKind:
            n = invert_for_n(iv, tm, delta, kind)
            ok = iid_one_sided_bound(iv, n, tm, DeviationForm.MEAN, kind) <= delta
            if n > 1:
                ok = ok and iid_one_sided_bound(iv, n - 1, tm, DeviationForm.MEAN, kind) > delta
            bad_n += not ok
    criterion("C9 inversion round trips", f"max rel error={worst_rel:.3g}, n failures={bad_n}")
    assert worst_rel <= 1e-9 and bad_n == 0


def test_c10_cli_golden(criterion):
    bad = []
    for name, argv in CASES.items():
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main([a.format(data=HERE / "data") for a in argv])
        golden = (HERE / "golden" / f"{name}.csv").read_text(encoding="utf-8")
        if code != EXIT_CODES[name] or out.getvalue() != golden:
            bad.append(name)
    criterion(f"C10 CLI golden files ({len(CASES)} invocations)", f"mismatches={bad}")
    assert not bad
