#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import unittest

import ddt
import numpy as np
import numpy.testing as npt

from rnnt_htr.constants import Direction
from rnnt_htr.errors import DataError, UsageError
from rnnt_htr.data import LineSample, preprocess


@ddt.ddt
class TestPreprocess(unittest.TestCase):

    def test_canonical_unchanged(self):
        image = np.random.default_rng(0).uniform(size=(32, 90))
        sample = preprocess(LineSample(image, 'ab'), 32)
        npt.assert_array_equal(sample.image, image)
        self.assertEqual(sample.direction, Direction.HORIZONTAL)

    def test_vertical_is_transposed(self):
        image = np.random.default_rng(1).uniform(size=(200, 32))
        sample = preprocess(LineSample(image, 'abc', 'vertical'), 32)
        self.assertEqual(sample.direction, Direction.HORIZONTAL)
        self.assertEqual(sample.image.shape, (32, 200))
        npt.assert_array_equal(sample.image, image.T)
        self.assertEqual(sample.transcript, 'abc')

    @ddt.data((64, 100, 'horizontal'), (17, 5, 'horizontal'),
              (150, 40, 'vertical'))
    @ddt.unpack
    def test_rescaled_and_idempotent(self, h, w, direction):
        image = np.random.default_rng(h).uniform(size=(h, w))
        once = preprocess(LineSample(image, 'x', direction), 32)
        self.assertEqual(once.height, 32)
        self.assertTrue(np.all(once.image >= 0.0))
        self.assertTrue(np.all(once.image <= 1.0))
        twice = preprocess(once, 32)
        npt.assert_allclose(twice.image, once.image, atol=1e-12)

    def test_values_clamped(self):
        sample = preprocess(LineSample([[-1.0, 0.5, 2.0]], 'x'), 1)
        npt.assert_array_equal(sample.image, [[0.0, 0.5, 1.0]])

    def test_degenerate(self):
        with self.assertRaises(DataError):
            preprocess(LineSample(np.zeros((0, 4)), ''), 32)

    def test_invalid_sample(self):
        with self.assertRaises(UsageError):
            LineSample(np.zeros(4), 'a')
        with self.assertRaises(UsageError):
            LineSample(np.zeros((2, 2)), 'a', 'diagonal')

    def test_replace_keeps_uri(self):
        sample = LineSample(np.zeros((2, 2)), 'a', uri='images/a.pgm')
        self.assertEqual(sample.replace(transcript='b').uri, 'images/a.pgm')


if __name__ == '__main__':
    unittest.main()
