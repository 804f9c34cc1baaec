import math

import numpy as np
import pytest

from schlafli.asymptotics import marshall_volume, rogers_asymptotic, rogers_correction
from schlafli.errors import DomainError
from schlafli.evaluate import f_n, simplex_content


def rel_gap(a, b):
    return abs(math.expm1(a.ln_mag - b.ln_mag))


class TestRogers:
    def test_correction_at_b_one(self):
        for n in (100, 1000):
            est = rogers_asymptotic(n, float(n))
            assert est.b == 1.0
            assert est.correction_factor == pytest.approx(1 + (31 / 12) / n, rel=1e-13)
            assert rogers_correction(n, 1.0) == pytest.approx(31 / (12 * n), rel=1e-15)

    @pytest.mark.parametrize("n,x,tol", [(1000, 1000.0, 1e-4), (10000, 10000.0, 1e-6), (100, 101.0, 1e-2)])
    def test_against_pipeline(self, n, x, tol):
        assert rel_gap(f_n(n, x, N=30).value, rogers_asymptotic(n, x).with_correction) <= tol

    def test_residual_decays_like_inverse_square(self):
        ns = [100, 300, 1000, 3000, 10000]
        r = [rel_gap(f_n(n, float(n), N=30).value, rogers_asymptotic(n, float(n)).with_correction)
             for n in ns]
        assert all(b < a for a, b in zip(r, r[1:]))
        slope = np.polyfit(np.log(ns), np.log(r), 1)[0]
        assert -2.5 <= slope <= -1.5

    def test_correction_is_small(self):
        for n in (100, 1000, 10000):
            assert 0.5 < rogers_asymptotic(n, n + 0.5).correction_factor < 2

    def test_domain(self):
        with pytest.raises(DomainError):
            rogers_asymptotic(100, 99.0)


class TestMarshall:
    @pytest.mark.parametrize("n,tol", [(1000, 1e-3), (10000, 1e-5)])
    def test_against_simplex_content(self, n, tol):
        assert rel_gap(simplex_content(n, float(n), N=30), marshall_volume(n, float(n))) <= tol

    def test_ordering_in_x(self):
        assert marshall_volume(100, 100.5).log10_mag < marshall_volume(100, 101.0).log10_mag

    def test_domain(self):
        with pytest.raises(DomainError):
            marshall_volume(1000, 999.0)
