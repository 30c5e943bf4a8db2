#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import io
import os
import shutil
import tempfile
import unittest
from unittest import mock

from rnnt_htr.errors import ConfigError, NumericError, TrainingError, \
    UsageError
from rnnt_htr.data import Charset, SynthConfig, default_charset, \
    preprocess, synthesize_dataset
from rnnt_htr.model import load_checkpoint
from rnnt_htr.model.tests.test_params import doll_config
from rnnt_htr.train import TrainConfig, checkpoint_name, evaluate, train_run

TINY_SYNTH = SynthConfig(charset_size=3, glyph_cell=5, canvas_height=5,
                         min_length=1, max_length=2, spacing=[0, 1])


def tiny_data(count=9, seed=0):
    samples = synthesize_dataset(TINY_SYNTH, count, seed)
    return samples[:6], samples[6:]


class TestTrainRun(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()
        self.model = doll_config()
        self.charset = default_charset(3)
        self.train, self.val = tiny_data()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def _config(self, name='run', **changes):
        values = dict(batch_size=2, epochs=1, base_lr=0.01, warmup_epochs=0,
                      seed=3, augment_strength=0.5, log_wall_time=False,
                      checkpoint_dir=os.path.join(self.tmpdir, name))
        values.update(changes)
        return TrainConfig(**values)

    def _run(self, cfg, workers=1):
        return train_run(self.model, cfg, self.train, self.val, self.charset,
                         TINY_SYNTH, workers=workers)

    def _read(self, cfg, name):
        with io.open(os.path.join(cfg.checkpoint_dir, name), 'rb') as fp:
            return fp.read()

    def test_checkpoint_reload_gives_same_cer(self):
        cfg = self._config()
        result = self._run(cfg)
        saved = load_checkpoint(os.path.join(cfg.checkpoint_dir,
                                             checkpoint_name(1)))
        self.assertEqual(saved.params, result.params)
        self.assertEqual(saved.metadata['epoch'], 1)
        val = [preprocess(s, self.model.input_height) for s in self.val]
        reloaded, _ = evaluate(val, saved.params, saved.config, saved.vocab)
        self.assertEqual(reloaded, result.history[0].val_cer)
        self.assertEqual(saved.metadata['val_cer'], result.history[0].val_cer)

    def test_metrics_log(self):
        cfg = self._config(epochs=2)
        result = self._run(cfg)
        lines = self._read(cfg, 'metrics.tsv').decode('utf-8').splitlines()
        self.assertEqual(lines[0],
                         'epoch\tmean_train_loss\tval_cer\tlr\twall_seconds')
        self.assertEqual(len(lines), 3)
        fields = lines[2].split('\t')
        self.assertEqual(fields[0], '2')
        self.assertEqual(fields[4], '0.000')
        self.assertAlmostEqual(float(fields[1]),
                               result.history[1].mean_train_loss, places=6)

    def test_seeded_runs_are_identical(self):
        first, second = self._config('a'), self._config('b')
        self._run(first)
        self._run(second)
        for name in ('metrics.tsv', checkpoint_name(1), 'best.ckpt'):
            self.assertEqual(self._read(first, name),
                             self._read(second, name))

    def test_workers_do_not_change_result(self):
        single, threaded = self._config('a'), self._config('b')
        self._run(single)
        self._run(threaded, workers=3)
        self.assertEqual(self._read(single, checkpoint_name(1)),
                         self._read(threaded, checkpoint_name(1)))

    def test_best_is_earliest_lowest_cer(self):
        cfg = self._config(epochs=3)
        result = self._run(cfg)
        cers = [r.val_cer for r in result.history]
        self.assertEqual(result.best_epoch, cers.index(min(cers)) + 1)
        self.assertEqual(result.best_cer, min(cers))
        self.assertEqual(self._read(cfg, 'best.ckpt'),
                         self._read(cfg, checkpoint_name(result.best_epoch)))

    def test_loss_goes_down(self):
        cfg = self._config(epochs=6, base_lr=0.05, augment_strength=0.0)
        history = self._run(cfg).history
        self.assertLess(history[-1].mean_train_loss,
                        history[0].mean_train_loss)

    def test_divergence_names_batch(self):
        cfg = self._config()
        with mock.patch('rnnt_htr.train.loop.loss_and_grad',
                        side_effect=NumericError('non-finite log-likelihood')):
            with self.assertRaises(TrainingError) as ctx:
                self._run(cfg)
        self.assertEqual(len(ctx.exception.sample_ids), 2)
        self.assertTrue(all(i.startswith('#')
                            for i in ctx.exception.sample_ids))

    def test_needs_validation_data(self):
        with self.assertRaises(UsageError):
            train_run(self.model, self._config(), self.train, [],
                      self.charset)

    def test_charset_must_fit_model(self):
        with self.assertRaises(ConfigError):
            train_run(self.model, self._config(), self.train, self.val,
                      Charset('abcd'))


if __name__ == '__main__':
    unittest.main()
