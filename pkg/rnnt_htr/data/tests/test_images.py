#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import itertools
import os
import shutil
import tempfile
import unittest

import ddt
import numpy as np
import numpy.testing as npt

from rnnt_htr.defaults import GLYPH_GRID
from rnnt_htr.errors import ConfigError, DataError, NotFoundError
from rnnt_htr.data import glyph_masks, glyph_bank, read_image, write_image, \
    resize_to_height, affine_warp
from rnnt_htr.data.glyphs import MIN_INK


class TestGlyphs(unittest.TestCase):

    def test_masks_are_separable(self):
        masks = glyph_masks(62)
        for a, b in itertools.combinations(masks, 2):
            self.assertGreaterEqual(np.count_nonzero(a != b), 5)
        for mask in masks:
            self.assertGreaterEqual(mask.sum(), MIN_INK)

    def test_masks_fixed_by_class_id(self):
        small, large = glyph_masks(4), glyph_masks(12)
        for a, b in zip(small, large):
            npt.assert_array_equal(a, b)

    def test_bank_upscales_masks(self):
        bank = glyph_bank(6, cell=20)
        self.assertEqual(bank.shape, (6, 20, 20))
        self.assertEqual(set(np.unique(bank)), {0.0, 1.0})
        for glyph, mask in zip(bank, glyph_masks(6)):
            self.assertEqual(glyph.sum(), mask.sum() * 16)
        self.assertFalse(bank.flags.writeable)

    def test_cell_too_small(self):
        with self.assertRaises(ConfigError):
            glyph_bank(3, cell=GLYPH_GRID - 1)


@ddt.ddt
class TestImages(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def test_pgm_round_trip(self):
        rng = np.random.default_rng(2)
        image = rng.integers(0, 256, size=(7, 13)) / 255.0
        path = os.path.join(self.tmpdir, 'x.pgm')
        write_image(path, image)
        with open(path, 'rb') as fp:
            self.assertEqual(fp.read(2), b'P5')
        npt.assert_array_equal(read_image(path), image)

    def test_write_clamps(self):
        path = os.path.join(self.tmpdir, 'c.pgm')
        write_image(path, np.array([[-0.5, 0.5, 1.5]]))
        npt.assert_array_equal(read_image(path), [[0.0, 128 / 255.0, 1.0]])

    def test_missing(self):
        with self.assertRaises(NotFoundError):
            read_image(os.path.join(self.tmpdir, 'none.pgm'))

    def test_undecodable(self):
        path = os.path.join(self.tmpdir, 'junk.pgm')
        with open(path, 'wb') as fp:
            fp.write(b'not an image')
        with self.assertRaises(DataError):
            read_image(path)

    def test_resize_identity(self):
        image = np.random.default_rng(0).uniform(size=(32, 50))
        self.assertIs(resize_to_height(image, 32), image)

    @ddt.data(*range(5))
    def test_resize_keeps_aspect(self, seed):
        rng = np.random.default_rng(seed)
        for _ in range(20):
            h, w = rng.integers(1, 120, size=2)
            image = rng.uniform(size=(h, w))
            resized = resize_to_height(image, 32)
            self.assertEqual(resized.shape[0], 32)
            self.assertLessEqual(abs(resized.shape[1] - w * 32.0 / h), 1.0)

    def test_identity_warp(self):
        image = np.random.default_rng(1).uniform(size=(9, 15))
        npt.assert_allclose(affine_warp(image, 0.0, 1.0, 0.0), image,
                            atol=1e-6)

    def test_shrink_fills_background(self):
        warped = affine_warp(np.ones((21, 21)), 0.0, 0.5, 0.0)
        self.assertEqual(warped.shape, (21, 21))
        self.assertAlmostEqual(warped[10, 10], 1.0, places=6)
        self.assertEqual(warped[0, 0], 0.0)
        self.assertEqual(warped[20, 20], 0.0)


if __name__ == '__main__':
    unittest.main()
