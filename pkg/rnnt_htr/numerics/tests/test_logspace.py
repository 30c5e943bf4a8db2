#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import decimal
import math
import unittest

import ddt
import numpy as np
import numpy.testing as npt

from rnnt_htr.errors import UsageError, NumericError
from rnnt_htr.numerics import logsumexp, log_add, log_softmax, \
    log_softmax_backward
from rnnt_htr.numerics.gradcheck import numerical_gradient, relative_error

NEG_INF = float('-inf')


def _precise_logsumexp(values):
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        total = sum(decimal.Decimal(v).exp() for v in values)
        return float(total.ln())


@ddt.ddt
class TestLogsumexp(unittest.TestCase):

    def test_two_equal_masses(self):
        self.assertAlmostEqual(logsumexp([0.0, 0.0]), math.log(2.0), places=14)

    @ddt.data(-3.5, 0.0, 12.25)
    def test_log_zero_is_identity(self, x):
        self.assertEqual(logsumexp([NEG_INF, x]), x)

    def test_all_log_zero(self):
        self.assertEqual(logsumexp([NEG_INF, NEG_INF, NEG_INF]), NEG_INF)

    def test_empty_is_usage_error(self):
        with self.assertRaises(UsageError):
            logsumexp([])

    @ddt.data(*range(10))
    def test_matches_extended_precision(self, seed):
        rng = np.random.default_rng(seed)
        values = rng.uniform(-10.0, 10.0, 5)
        self.assertLess(abs(logsumexp(values) - _precise_logsumexp(values)),
                        1e-12)

    @ddt.data(700.0, -700.0)
    def test_no_overflow_at_extremes(self, x):
        result = logsumexp([x, x - 1.0, x - 2.0])
        self.assertTrue(math.isfinite(result))
        self.assertAlmostEqual(result, x + math.log(1 + math.exp(-1) +
                                                    math.exp(-2)), places=9)

    def test_permutation_invariant(self):
        rng = np.random.default_rng(3)
        values = rng.normal(size=7)
        self.assertAlmostEqual(logsumexp(values),
                               logsumexp(rng.permutation(values)), places=13)

    def test_monotone(self):
        values = np.array([-1.0, 0.5, 2.0])
        bumped = values.copy()
        bumped[1] += 0.1
        self.assertGreater(logsumexp(bumped), logsumexp(values))

    @ddt.unpack
    @ddt.data((NEG_INF, 1.5, 1.5), (1.5, NEG_INF, 1.5),
              (NEG_INF, NEG_INF, NEG_INF))
    def test_log_add_identity(self, a, b, expected):
        self.assertEqual(log_add(a, b), expected)

    def test_log_add_agrees(self):
        self.assertAlmostEqual(log_add(-2.0, 0.3), logsumexp([-2.0, 0.3]),
                               places=14)


@ddt.ddt
class TestLogSoftmax(unittest.TestCase):

    @ddt.data(2, 5, 13)
    def test_uniform_logits(self, size):
        out = log_softmax(np.full(size, 3.7))
        npt.assert_allclose(out, -math.log(size), atol=1e-14)

    @ddt.data(*range(5))
    def test_normalized(self, seed):
        rng = np.random.default_rng(seed)
        out = log_softmax(rng.uniform(-100.0, 100.0, 9))
        self.assertLess(abs(np.exp(out).sum() - 1.0), 1e-12)

    def test_shift_invariant(self):
        z = np.random.default_rng(11).normal(size=6)
        npt.assert_allclose(log_softmax(z), log_softmax(z + 17.3), atol=1e-12)

    def test_rows(self):
        z = np.random.default_rng(2).normal(size=(3, 4, 5))
        out = log_softmax(z)
        npt.assert_allclose(np.exp(out).sum(axis=-1), 1.0, atol=1e-12)

    @ddt.data(float('nan'), float('inf'))
    def test_non_finite_rejected(self, bad):
        with self.assertRaises(NumericError):
            log_softmax(np.array([0.0, bad]))

    def test_backward_finite_differences(self):
        rng = np.random.default_rng(5)
        z = rng.normal(size=6)
        upstream = rng.normal(size=6)
        analytic = log_softmax_backward(upstream, log_softmax(z))
        numeric = numerical_gradient(lambda: np.dot(upstream, log_softmax(z)),
                                     z)
        self.assertLess(relative_error(analytic, numeric), 1e-7)


if __name__ == '__main__':
    unittest.main()
