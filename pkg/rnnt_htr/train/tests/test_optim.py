#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import math
import unittest

import ddt
import numpy as np
import numpy.testing as npt

from rnnt_htr.errors import ConfigError, TrainingError, \
    UnknownConfigKeyError, UsageError
from rnnt_htr.model import ModelParams, init_params
from rnnt_htr.model.tests.test_params import doll_config
from rnnt_htr.train import TrainConfig, OptState, lr_at, \
    clip_by_global_norm, adam_step


@ddt.ddt
class TestSchedule(unittest.TestCase):

    CFG = TrainConfig(epochs=5, warmup_epochs=1, base_lr=2e-4)

    def test_starts_at_zero(self):
        self.assertEqual(lr_at(0, 10, self.CFG), 0.0)

    def test_peak_at_end_of_warmup(self):
        self.assertEqual(lr_at(10, 10, self.CFG), 2e-4)
        self.assertLess(lr_at(9, 10, self.CFG), 2e-4)
        self.assertLess(lr_at(11, 10, self.CFG), 2e-4)

    def test_final_step_near_zero(self):
        last = lr_at(49, 10, self.CFG)
        self.assertGreaterEqual(last, 0.0)
        self.assertLessEqual(last, 2e-4 / 40 + 1e-20)
        self.assertEqual(lr_at(50, 10, self.CFG), 0.0)

    @ddt.data(1, 3, 7)
    def test_piecewise_linear_and_continuous(self, spe):
        values = [lr_at(s, spe, self.CFG) for s in range(5 * spe + 1)]
        steps = np.diff(values)
        self.assertTrue(all(v >= 0.0 for v in values))
        self.assertAlmostEqual(max(values), 2e-4, places=18)
        npt.assert_allclose(steps[:spe], 2e-4 / spe, rtol=1e-9)
        npt.assert_allclose(steps[spe:], -2e-4 / (4 * spe), rtol=1e-9)

    def test_no_warmup(self):
        cfg = self.CFG.replace(warmup_epochs=0)
        self.assertEqual(lr_at(0, 4, cfg), 2e-4)

    def test_bad_steps_per_epoch(self):
        with self.assertRaises(UsageError):
            lr_at(0, 0, self.CFG)


class TestAdam(unittest.TestCase):

    def setUp(self):
        self.params = init_params(doll_config(), 2)
        self.opt = OptState.zeros(self.params)

    def test_zero_gradients_leave_params(self):
        params, opt = adam_step(self.params, self.params.zeros_like(),
                                self.opt, 1e-3)
        self.assertEqual(params, self.params)
        self.assertEqual(opt.step, 1)
        self.assertEqual(self.opt.step, 0)

    def test_scalar_hand_update(self):
        params = ModelParams([('w', np.array([1.0]))])
        grads = ModelParams([('w', np.array([0.5]))])
        new, opt = adam_step(params, grads, OptState.zeros(params), 0.1)
        m = (1.0 - 0.9) * 0.5
        v = (1.0 - 0.999) * 0.5 * 0.5
        m_hat = m / (1.0 - 0.9)
        v_hat = v / (1.0 - 0.999)
        expected = 1.0 - 0.1 * m_hat / (math.sqrt(v_hat) + 1e-8)
        self.assertAlmostEqual(new['w'][0], expected, delta=1e-15)
        self.assertAlmostEqual(new['w'][0], 0.9, delta=1e-7)
        self.assertAlmostEqual(opt.m['w'][0], 0.05, delta=1e-16)
        self.assertEqual(params['w'][0], 1.0)

    def test_non_finite_gradient(self):
        grads = self.params.zeros_like()
        grads['joint.bias'][1] = np.nan
        with self.assertRaises(TrainingError) as ctx:
            adam_step(self.params, grads, self.opt, 1e-3,
                      sample_ids=['a', 'b'])
        self.assertEqual(ctx.exception.sample_ids, ['a', 'b'])
        self.assertIn('joint.bias', ctx.exception.message)

    def test_mismatched_gradients(self):
        with self.assertRaises(UsageError):
            adam_step(self.params, ModelParams([('w', [1.0])]), self.opt, 0.1)

    def test_clipping(self):
        grads = ModelParams([('a', [3.0, 0.0]), ('b', [[4.0]])])
        clipped, norm = clip_by_global_norm(grads, 1.0)
        self.assertEqual(norm, 5.0)
        self.assertAlmostEqual(clipped.global_norm(), 1.0, places=12)
        npt.assert_allclose(clipped['a'], [0.6, 0.0])
        self.assertEqual(grads['a'][0], 3.0)
        self.assertIs(clip_by_global_norm(grads, 0.0)[0], grads)
        self.assertIs(clip_by_global_norm(grads, 5.0)[0], grads)


@ddt.ddt
class TestTrainConfig(unittest.TestCase):

    @ddt.data({'batch_size': 0}, {'epochs': 0}, {'base_lr': 0.0},
              {'base_lr': 'fast'}, {'warmup_epochs': 40},
              {'augment_strength': -1.0}, {'checkpoint_dir': ''},
              {'log_wall_time': 'no'}, {'batch_size': 2.5})
    def test_invalid(self, changes):
        with self.assertRaises(ConfigError):
            TrainConfig(**changes)

    def test_defaults(self):
        cfg = TrainConfig()
        self.assertEqual((cfg.batch_size, cfg.epochs, cfg.base_lr,
                          cfg.warmup_epochs), (16, 30, 2e-4, 1))

    def test_unknown_key(self):
        with self.assertRaises(UnknownConfigKeyError):
            TrainConfig.from_dict({'momentum': 0.9})


if __name__ == '__main__':
    unittest.main()
