"""Exit criteria. Each test records one PASS/FAIL line, printed in the pytest summary.

Run standalone with ``python tests/test_acceptance.py`` for the same lines
without pytest.
"""

import subprocess
import sys
import warnings
from pathlib import Path

import numpy as np
import pytest
from scipy.special import eval_legendre

from conftest import ACCEPTANCE_RESULTS, graph_corpus
from lpgraph.basis import build_basis, discrete_legendre
from lpgraph.diagnostics import lpinfor_test, standardized_coefficient_distribution
from lpgraph.field import (
    empirical_field,
    integrate_squared,
    reconstruct_field,
    select_components,
)
from lpgraph.generators import GeneratorSpec, bipartite, expected_graph, sbm
from lpgraph.graph import Marginal, joint_pmf, marginals
from lpgraph.graphon import block_means, estimate_graphon
from lpgraph.transform import lp_transform, lpinfor

SBM_SIZES = (40, 60)
SBM_P = ((0.6, 0.1), (0.1, 0.1))


def record(label, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
    ACCEPTANCE_RESULTS.append(line)
    print(line)
    assert ok, line


def check_orthonormality():
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(3, 51))
        p = rng.dirichlet(np.ones(n))
        m = Marginal(p / p.sum())
        b = build_basis(m, m.support.size - 1)
        w = m.probs
        worst = max(
            worst,
            np.abs(b.values @ w).max(),
            np.abs((b.values ** 2) @ w - 1).max(),
            np.abs((b.values * w) @ b.values.T - np.eye(b.m)).max(),
        )
    return worst <= 1e-10, f"max deviation {worst:.2e} over 100 marginals (tol 1e-10)"


def check_continuum_limit():
    n = 1000
    b = discrete_legendre(n, 4)
    u = (np.arange(1, n + 1) - 0.5) / n
    corr = [np.corrcoef(b.values[j - 1], eval_legendre(j, 2 * u - 1))[0, 1] for j in range(1, 5)]
    return min(corr) >= 0.999, "correlations " + ", ".join(f"{c:.6f}" for c in corr) + " (need >= 0.999)"


def check_parseval():
    worst = 0.0
    for g in graph_corpus():
        lp = lp_transform(g, full_rank=True)
        mx, my = marginals(g)
        emp = empirical_field(joint_pmf(g), mx, my)
        worst = max(worst, abs(lpinfor(lp) - (integrate_squared(emp) - 1.0)))
    return worst <= 1e-8, f"max |LPINFOR - (int C^2 - 1)| = {worst:.2e} over 100 graphs (tol 1e-8)"


def check_reconstruction():
    worst = 0.0
    for g in graph_corpus():
        lp = lp_transform(g, full_rank=True)
        mx, my = marginals(g)
        emp = empirical_field(joint_pmf(g), mx, my)
        worst = max(worst, np.abs(reconstruct_field(lp).cell_values - emp.cell_values).max())
    return worst <= 1e-8, f"max cell difference {worst:.2e} over 100 graphs (tol 1e-8)"


def check_null_normality():
    m = Marginal.uniform(50)
    s = standardized_coefficient_distribution(m, m, 5000, 500, seed=0, grid=(4, 4))
    max_mean = np.abs(s.mean).max()
    vmin, vmax = s.variance.min(), s.variance.max()
    ok = max_mean <= 0.1 and 0.8 <= vmin and vmax <= 1.2 and 0.025 <= s.band_rate <= 0.075
    return ok, (f"max|mean| {max_mean:.3f} (<= 0.1), variance [{vmin:.3f}, {vmax:.3f}] (in [0.8, 1.2]), "
                f"band rate {s.band_rate:.4f} (in [0.025, 0.075])")


def check_flat_field():
    details, ok = [], True
    for n, p in ((20, 0.3), (100, 0.1)):
        g = expected_graph(GeneratorSpec("er", n=n, p=p))
        lp = lp_transform(g)
        sel = select_components(lp)
        f = reconstruct_field(lp, sel)
        flat = sel.k_star == 0 and np.array_equal(f.cell_values, np.ones((n, n)))
        ok &= flat
        details.append(f"ER(n={n}, p={p}): k*={sel.k_star}, field==1 {flat}")
    return ok, "; ".join(details)


def check_bipartite_exact():
    g = expected_graph(GeneratorSpec("bipartite", sizes=(15, 15), p=0.25))
    mx, my = marginals(g)
    cells = empirical_field(joint_pmf(g), mx, my).cell_values
    diag = np.concatenate([cells[:15, :15].ravel(), cells[15:, 15:].ravel()])
    off = np.concatenate([cells[:15, 15:].ravel(), cells[15:, :15].ravel()])
    dev = max(np.abs(diag).max(), np.abs(off - 2).max())
    return dev <= 1e-12, f"max deviation from {{0, 2}} = {dev:.1e} (tol 1e-12)"


def _bipartite_runs():
    for seed in range(50):
        lp = lp_transform(bipartite(15, 15, 0.25, seed=seed))
        yield select_components(lp).k_star, lpinfor_test(lp)


def check_bipartite_kstar():
    ks = np.array([k for k, _ in _bipartite_runs()])
    inside = int(np.sum((ks >= 4) & (ks <= 8)))
    return inside == 50, (f"k* in [4, 8] for {inside}/50 seeds; counts by k* "
                          f"{ {int(k): int(c) for k, c in zip(*np.unique(ks, return_counts=True))} }")


def check_bipartite_rejection():
    rejected = sum(t.reject_at_5pct for _, t in _bipartite_runs())
    return rejected == 50, f"null rejected at 5% for {rejected}/50 seeds"


def check_graphon_expected():
    g = expected_graph(GeneratorSpec("sbm", sizes=SBM_SIZES, prob_matrix=SBM_P))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        w = estimate_graphon(g, "empirical", "full")
    truth = g.weights
    off = ~np.eye(g.n, dtype=bool)
    dev = np.abs(w.values - truth)[off].max()
    return dev <= 1e-6, f"max off-diagonal |W - P| = {dev:.2e} (tol 1e-6)"


def check_graphon_sampled():
    g = sbm(SBM_SIZES, SBM_P, seed=0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        w = estimate_graphon(g, "smoothed", "selected")
    means = block_means(w, SBM_SIZES, zero_diagonal=True)
    dev = np.abs(means - np.array(SBM_P)).max()
    return dev <= 0.05, (f"block means {np.round(means, 4).tolist()} vs {list(SBM_P)}, "
                         f"max dev {dev:.4f} (tol 0.05), k*={w.selection.k_star}")


def check_graphon_degeneracy():
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for g in graph_corpus():
            w = estimate_graphon(g, "empirical", "full")
            worst = max(worst, np.abs(w.raw_values - g.weights).max())
    return worst <= 1e-8, f"max |N p p C - A| = {worst:.2e} over 100 graphs (tol 1e-8)"


CLI_RUNS = [
    ["generate", "--kind", "sbm", "--sizes", "40,60", "--prob-matrix", ".6,.1,.1,.1", "--seed", "7",
     "--out", "{dir}/g.edges"],
    ["analyze", "--edges", "{dir}/g.edges", "--out-dir", "{dir}/analyze"],
    ["analyze", "--kind", "bipartite", "--sizes", "15,15", "--p", ".25", "--seed", "3", "--out-dir", "{dir}/bip"],
    ["diagnose", "--kind", "er", "--n", "100", "--p", ".1", "--seed", "5", "--null-band", "--test", "selected",
     "--out-dir", "{dir}/diagnose"],
    ["graphon", "--edges", "{dir}/g.edges", "--block-sizes", "40,60", "--zero-diagonal", "--out-dir", "{dir}/graphon"],
]


def _run_cli(base: Path):
    base.mkdir(parents=True, exist_ok=True)
    for argv in CLI_RUNS:
        argv = [a.format(dir=base) for a in argv]
        subprocess.run([sys.executable, "-m", "lpgraph", *argv], check=True, capture_output=True)
    return {p.relative_to(base): p.read_bytes() for p in sorted(base.rglob("*")) if p.is_file()}


def check_determinism(tmp_path):
    first = _run_cli(tmp_path / "run1")
    second = _run_cli(tmp_path / "run2")
    same = first.keys() == second.keys() and all(first[k] == second[k] for k in first)
    return same, f"{len(first)} artifacts compared byte-for-byte, identical={same}"


def test_c01_orthonormality():
    record("1 orthonormality", *check_orthonormality())


def test_c02_continuum_limit():
    record("2 continuum limit", *check_continuum_limit())


def test_c03_parseval():
    record("3 duality/Parseval", *check_parseval())


def test_c04_reconstruction():
    record("4 full-rank reconstruction", *check_reconstruction())


def test_c05_null_normality():
    record("5 null normality", *check_null_normality())


def test_c06_flat_field():
    record("6 flat-field diagnostic", *check_flat_field())


def test_c07a_bipartite_exact_field():
    record("7a bipartite expected field", *check_bipartite_exact())


def test_c07b_bipartite_kstar_range():
    record("7b bipartite k* in [4, 8]", *check_bipartite_kstar())


def test_c07c_bipartite_rejection():
    record("7c bipartite null rejection", *check_bipartite_rejection())


def test_c08a_graphon_expected_sbm():
    record("8a graphon expected SBM", *check_graphon_expected())


def test_c08b_graphon_sampled_sbm():
    record("8b graphon sampled SBM", *check_graphon_sampled())


def test_c09_graphon_degeneracy():
    record("9 graphon degeneracy", *check_graphon_degeneracy())


def test_c10_cli_determinism(tmp_path):
    record("10 CLI determinism", *check_determinism(tmp_path))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
