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

from rnnt_htr.train import edit_distance, cer, corpus_cer


def matrix_edit_distance(a, b):
    '''Full-matrix dynamic programme with unit costs.'''
    d = np.zeros((len(a) + 1, len(b) + 1), dtype=int)
    d[:, 0] = np.arange(len(a) + 1)
    d[0, :] = np.arange(len(b) + 1)
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            d[i, j] = min(d[i - 1, j] + 1, d[i, j - 1] + 1,
                          d[i - 1, j - 1] + (a[i - 1] != b[j - 1]))
    return int(d[len(a), len(b)])


def random_pairs(seed, count=100, alphabet='abcあ'):
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        a = ''.join(rng.choice(list(alphabet), size=rng.integers(0, 9)))
        b = ''.join(rng.choice(list(alphabet), size=rng.integers(1, 9)))
        pairs.append((a, b))
    return pairs


@ddt.ddt
class TestCer(unittest.TestCase):

    @ddt.data(('abc', 'abc', 0.0), ('abd', 'abc', 1 / 3.0),
              ('', 'abcd', 1.0), ('abcabc', 'abc', 1.0), ('', '', 0.0),
              ('x', '', 1.0), ('xyz', '', 1.0))
    @ddt.unpack
    def test_examples(self, hypothesis, reference, expected):
        self.assertEqual(cer(hypothesis, reference), expected)

    def test_matches_matrix_oracle(self):
        for a, b in random_pairs(0):
            self.assertEqual(edit_distance(a, b), matrix_edit_distance(a, b))
            self.assertEqual(cer(a, b), matrix_edit_distance(a, b) / len(b))

    def test_reversal_symmetry(self):
        for a, b in random_pairs(1):
            self.assertEqual(cer(a, b), cer(a[::-1], b[::-1]))

    def test_bounds(self):
        for a, b in random_pairs(2):
            value = cer(a, b)
            self.assertEqual(value == 0.0, a == b)
            self.assertLessEqual(value, max(len(a), len(b)) / len(b))

    def test_corpus(self):
        pairs = [('ab', 'abc'), ('x', ''), ('hello', 'hello')]
        self.assertEqual(corpus_cer(pairs), 2 / 8.0)
        self.assertEqual(corpus_cer([]), 0.0)
        self.assertEqual(corpus_cer([('', '')]), 0.0)
        self.assertEqual(corpus_cer([('a', '')]), 1.0)


if __name__ == '__main__':
    unittest.main()
