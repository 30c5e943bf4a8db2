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

from rnnt_htr.errors import ConfigError, UnknownConfigKeyError, UsageError
from rnnt_htr.model import ModelConfig, init_params, check_params


def doll_config(**changes):
    values = dict(conv_blocks=[[2, 3, [2, 2]], [3, 3, [2, 1]]],
                  hidden_size=3, embed_size=3, encoded_size=4, vocab_size=3,
                  input_height=4)
    values.update(changes)
    return ModelConfig(**values)


@ddt.ddt
class TestModelConfig(unittest.TestCase):

    def test_defaults_collapse_height(self):
        config = ModelConfig()
        self.assertEqual(config.input_height, 32)
        self.assertEqual(config.width_downsample, 4)
        self.assertEqual(config.frames_for(64), 16)

    @ddt.unpack
    @ddt.data((64, 16), (65, 17), (1, 1), (4, 1), (203, 51))
    def test_frames(self, width, frames):
        self.assertEqual(ModelConfig().frames_for(width), frames)

    def test_height_not_collapsed(self):
        with self.assertRaises(ConfigError):
            ModelConfig(conv_blocks=[[8, 3, 2], [16, 3, 2], [32, 3, 2]])

    @ddt.data({'hidden_size': 0}, {'encoded_size': 2.5},
              {'recurrent_layers_visual': 'two'}, {'dropout_rate': 1.0},
              {'layer_norm': 'yes'}, {'conv_blocks': [[8, 4, [32, 1]]]},
              {'conv_blocks': []}, {'conv_blocks': [[8, 3]]})
    def test_invalid(self, changes):
        with self.assertRaises(ConfigError):
            ModelConfig(**changes)

    def test_unknown_key(self):
        values = ModelConfig().as_dict()
        values['attention'] = True
        with self.assertRaises(UnknownConfigKeyError):
            ModelConfig.from_dict(values)

    def test_dict_round_trip(self):
        config = doll_config(layer_norm=True, dropout_rate=0.25)
        self.assertEqual(ModelConfig.from_dict(config.as_dict()), config)
        self.assertNotEqual(config.replace(hidden_size=5), config)

    def test_square_pool_shorthand(self):
        config = ModelConfig(conv_blocks=[[4, 3, 2]], input_height=2)
        self.assertEqual(config.conv_blocks[0].pool, (2, 2))


class TestInitParams(unittest.TestCase):

    def test_deterministic(self):
        config = doll_config()
        self.assertEqual(init_params(config, 7), init_params(config, 7))

    def test_seed_matters(self):
        config = doll_config()
        self.assertNotEqual(init_params(config, 1), init_params(config, 2))

    def test_bounds(self):
        config = ModelConfig()
        params = init_params(config, 0)
        self.assertEqual(params.non_finite(), [])
        for name, value in params.items():
            if name.endswith('weight') or name.endswith('.W') or \
                    name.endswith('.U'):
                if value.ndim == 4:
                    fan_in = value.shape[1] * value.shape[2] * value.shape[3]
                    fan_out = value.shape[0] * value.shape[2] * value.shape[3]
                else:
                    fan_out, fan_in = value.shape
                limit = np.sqrt(6.0 / (fan_in + fan_out))
                self.assertLessEqual(np.abs(value).max(), limit, name)
        self.assertLessEqual(np.abs(params['embedding']).max(), 0.1)
        self.assertEqual(params['embedding'].shape, (13, config.embed_size))
        self.assertEqual(params['joint.weight'].shape, (13, 64))

    def test_forget_gate_bias(self):
        params = init_params(doll_config(), 0)
        h = 3
        for prefix in ('visual.fwd0', 'visual.bwd0', 'linguistic.lstm0'):
            b = params[prefix + '.b']
            np.testing.assert_array_equal(b[h:2 * h], 1.0)
            np.testing.assert_array_equal(b[:h], 0.0)
            np.testing.assert_array_equal(b[2 * h:], 0.0)

    def test_layer_shapes(self):
        config = doll_config(recurrent_layers_visual=2,
                             recurrent_layers_linguistic=2)
        params = init_params(config, 0)
        self.assertEqual(params['visual.fwd0.W'].shape, (12, 3))
        self.assertEqual(params['visual.bwd1.W'].shape, (12, 6))
        self.assertEqual(params['visual.proj.weight'].shape, (4, 6))
        self.assertEqual(params['linguistic.lstm1.W'].shape, (12, 3))
        self.assertEqual(params['conv1.weight'].shape, (3, 2, 3, 3))

    def test_check_params(self):
        config = doll_config()
        params = init_params(config, 0)
        check_params(params, config)
        with self.assertRaises(UsageError):
            check_params(params, config.replace(hidden_size=4))

    def test_group_and_accumulate(self):
        params = init_params(doll_config(), 0)
        group = params.group('visual.fwd0')
        self.assertEqual(sorted(group), ['U', 'W', 'b', 'ln_gain', 'ln_shift'])
        self.assertNotIn('weight', params.group('visual'))
        total = params.zeros_like().accumulate(params).accumulate(params)
        np.testing.assert_array_equal(total['joint.weight'],
                                      2 * params['joint.weight'])
        self.assertAlmostEqual(params.copy().scale(2.0).global_norm(),
                               2 * params.global_norm(), places=10)


if __name__ == '__main__':
    unittest.main()
