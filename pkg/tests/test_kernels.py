import os
import subprocess
import sys

import numpy as np
import pytest
from numpy.testing import assert_allclose

from lpgraph import _kernels_py
from lpgraph._backend import BACKEND

cy = pytest.importorskip("lpgraph._kernels", reason="compiled extension not built")


def random_inputs(rng):
    s = int(rng.integers(3, 40))
    w = rng.dirichlet(np.ones(s))
    t1 = rng.normal(size=s)
    return s, w, t1


def test_backend_is_compiled_when_available():
    assert BACKEND == "cython" or os.environ.get("LPGRAPH_PURE_PYTHON")


@pytest.mark.parametrize("powers", [False, True])
def test_polynomials_agree(powers):
    rng = np.random.default_rng(0)
    for _ in range(50):
        s, w, t1 = random_inputs(rng)
        a = cy.lp_polynomials(t1, w, 8, 1e-9, powers)
        b = _kernels_py.lp_polynomials(t1, w, 8, 1e-9, powers)
        assert a.shape == b.shape
        assert_allclose(a, b, atol=1e-12 if not powers else 1e-8)


def test_transform_and_reconstruct_agree():
    rng = np.random.default_rng(1)
    for _ in range(50):
        n, m = (int(v) for v in rng.integers(2, 30, size=2))
        p = rng.dirichlet(np.ones(n * m)).reshape(n, m)
        tx, ty = rng.normal(size=(4, n)), rng.normal(size=(3, m))
        assert_allclose(cy.lp_transform(p, tx, ty), _kernels_py.lp_transform(p, tx, ty), atol=1e-12)
        coefs = rng.normal(size=5)
        js, ks = rng.integers(0, 4, size=5), rng.integers(0, 3, size=5)
        assert_allclose(cy.reconstruct(coefs, js, ks, tx, ty),
                        _kernels_py.reconstruct(coefs, js, ks, tx, ty), atol=1e-12)


def test_pure_python_switch():
    env = dict(os.environ, LPGRAPH_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from lpgraph._backend import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout.strip()
    assert out == "python"
