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

from rnnt_htr.errors import UsageError
from rnnt_htr.data import LineSample, SynthConfig, augment, \
    render_synthetic_line

NOISE_ONLY = SynthConfig(rotation=0.0, scale_range=[1.0, 1.0],
                         shear_range=0.0, noise_sigma=0.1)


@ddt.ddt
class TestAugment(unittest.TestCase):

    def setUp(self):
        self.sample = render_synthetic_line(SynthConfig(), 11)

    def test_strength_zero_is_identity(self):
        out = augment(self.sample, 0.0, 3)
        npt.assert_array_equal(out.image, self.sample.image)
        self.assertIsNot(out.image, self.sample.image)

    @ddt.data(0.0, 0.5, 1.0, 3.0)
    def test_transcript_unchanged(self, strength):
        out = augment(self.sample, strength, 4)
        self.assertEqual(out.transcript, self.sample.transcript)
        self.assertEqual(out.direction, self.sample.direction)
        self.assertEqual(out.image.shape, self.sample.image.shape)
        self.assertTrue(np.all((out.image >= 0.0) & (out.image <= 1.0)))

    def test_deterministic(self):
        npt.assert_array_equal(augment(self.sample, 1.0, 7).image,
                               augment(self.sample, 1.0, 7).image)

    @ddt.data((1.0, 0.1), (0.5, 0.05))
    @ddt.unpack
    def test_noise_moments(self, strength, sigma):
        sample = LineSample(np.full((200, 500), 0.5), 'A')
        out = augment(sample, strength, 12, NOISE_ONLY)
        diff = out.image - sample.image
        self.assertLess(abs(diff.std() - sigma), 0.05 * sigma)
        self.assertLess(abs(diff.mean()), 0.05 * sigma)

    def test_negative_strength(self):
        with self.assertRaises(UsageError):
            augment(self.sample, -0.1, 0)


if __name__ == '__main__':
    unittest.main()
