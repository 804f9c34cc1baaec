"""The compiled, numpy and mpmath kernels must agree on the same inputs."""

import json
import os
import subprocess
import sys

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schlafli import _mpkernels, _pykernels
from schlafli.cheb import cosine_matrix, nodes

ckernels = pytest.importorskip("schlafli._ckernels")

vectors = st.integers(8, 40).flatmap(
    lambda n: st.lists(st.floats(-5, 5, allow_nan=False), min_size=n, max_size=n).map(np.array))


def as_mp(v):
    return [mp.mpf(float(x)) for x in v]


class TestFloatBackends:
    @settings(max_examples=30, deadline=None)
    @given(vectors)
    def test_fit(self, v):
        t = cosine_matrix(len(v))
        np.testing.assert_allclose(ckernels.fit_values(v, t), _pykernels.fit_values(v, t), atol=1e-13)

    @settings(max_examples=30, deadline=None)
    @given(vectors, st.randoms(use_true_random=False))
    def test_product(self, c, rnd):
        a = np.array([rnd.uniform(-5, 5) for _ in c])
        np.testing.assert_allclose(ckernels.product_coeffs(c, a), _pykernels.product_coeffs(c, a),
                                   atol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(vectors, st.integers(4, 2000))
    def test_solve(self, d, n):
        np.testing.assert_allclose(ckernels.solve_step(n, d), _pykernels.solve_step(n, d),
                                   rtol=1e-12, atol=1e-14)

    @settings(max_examples=30, deadline=None)
    @given(vectors, st.floats(-1, 1))
    def test_clenshaw(self, a, y):
        assert ckernels.clenshaw(a, y) == pytest.approx(_pykernels.clenshaw(a, y), abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(vectors)
    def test_derivative(self, a):
        np.testing.assert_allclose(ckernels.derivative_coeffs(a), _pykernels.derivative_coeffs(a),
                                   rtol=1e-13, atol=1e-12)

    @pytest.mark.parametrize("p", [6, 7, 50, 1001])
    def test_advance(self, p):
        N = 30
        a = np.exp(-0.7 * np.arange(N))
        t, y = cosine_matrix(N), nodes(N)
        np.testing.assert_allclose(ckernels.advance(a, p, t, y), _pykernels.advance(a, p, t, y),
                                   rtol=1e-12, atol=1e-16)

    def test_backend_names(self):
        assert ckernels.BACKEND == "cython"
        assert _pykernels.BACKEND == "python"


class TestAgainstMultiprecision:
    @pytest.mark.parametrize("N", [8, 21])
    def test_fit_and_product(self, N):
        rng = np.random.default_rng(N)
        v, w = rng.normal(size=N), rng.normal(size=N)
        with mp.workdps(30):
            t = _mpkernels.cosine_matrix(N)
            ref_fit = [float(x) for x in _mpkernels.fit_values(as_mp(v), t)]
            ref_prod = [float(x) for x in _mpkernels.product_coeffs(as_mp(v), as_mp(w))]
        np.testing.assert_allclose(ckernels.fit_values(v, cosine_matrix(N)), ref_fit, atol=1e-14)
        np.testing.assert_allclose(ckernels.product_coeffs(v, w), ref_prod, atol=1e-14)

    def test_cosine_matrix_and_nodes(self):
        N = 33
        with mp.workdps(30):
            t = _mpkernels.cosine_matrix(N)
            y = _mpkernels.nodes(N)
        np.testing.assert_allclose(cosine_matrix(N), np.array(t, dtype=float), atol=2e-16)
        np.testing.assert_allclose(nodes(N), np.array(y, dtype=float), atol=2e-16)

    def test_solve_step(self):
        d = np.linspace(1, -1, 15)
        with mp.workdps(30):
            ref = [float(x) for x in _mpkernels.solve_step(9, as_mp(d))]
        np.testing.assert_allclose(ckernels.solve_step(9, d), ref, rtol=1e-14, atol=1e-16)


def test_forced_python_backend_reproduces_table():
    code = ("import json, schlafli; from schlafli.recurrence import solve; "
            "print(json.dumps([schlafli.BACKEND, solve(1001, 30)(1002.0)]))")
    env = dict(os.environ, SCHLAFLI_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, q = json.loads(out.stdout)
    assert backend == "python"
    assert q == pytest.approx(0.136549098575, abs=1e-10)
