#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import collections
import functools
import logging
import math
import os
import time

import numpy as np

from rnnt_htr.defaults import BEST_CHECKPOINT, CHECKPOINT_SUFFIX, METRICS_LOG
from rnnt_htr.errors import ConfigError, NumericError, TrainingError, \
    UsageError
from rnnt_htr.pool import ordered_map
from rnnt_htr.data import augment, makedirs, open_text, preprocess
from rnnt_htr.decode import decode_batch
from rnnt_htr.model import init_params, loss_and_grad, save_checkpoint
from rnnt_htr.train.metrics import corpus_cer
from rnnt_htr.train.optim import OptState, adam_step, lr_at

logger = logging.getLogger(__name__)

METRICS_COLUMNS = ('epoch', 'mean_train_loss', 'val_cer', 'lr',
                   'wall_seconds')

EpochRecord = collections.namedtuple('EpochRecord', METRICS_COLUMNS)

TrainResult = collections.namedtuple(
    'TrainResult', ['params', 'best_params', 'history', 'best_epoch',
                    'best_cer'])


def checkpoint_name(epoch):
    return 'epoch-{0:03d}{1}'.format(epoch, CHECKPOINT_SUFFIX)


def format_record(record):
    return '{0}\t{1:.6f}\t{2:.6f}\t{3:.6e}\t{4:.3f}'.format(*record)


def _sample_id(sample, index):
    return sample.uri if sample.uri else '#{0}'.format(index)


def evaluate(samples, params, config, charset, decode_config=None,
             workers=1):
    '''(corpus CER, hypotheses) of the model on preprocessed samples.'''
    hypotheses = decode_batch([s.image for s in samples], params, config,
                              charset, decode_config, workers)
    return corpus_cer(zip(hypotheses, (s.transcript for s in samples))), \
        hypotheses


class _Trainer(object):
    '''State of one run: the data, the parameters and the optimizer.'''

    def __init__(self, model_config, train_config, train_samples,
                 val_samples, charset, synth_config, decode_config, workers):
        if not train_samples or not val_samples:
            raise UsageError('training needs non-empty training and '
                             'validation sets, got {0} and {1} samples'.format(
                                 len(train_samples), len(val_samples)))
        if len(charset) != model_config.vocab_size:
            raise ConfigError('charset of {0} symbols for a model with '
                              'K = {1}'.format(len(charset),
                                               model_config.vocab_size))
        height = model_config.input_height
        self.model_config = model_config
        self.cfg = train_config
        self.train = [preprocess(s, height) for s in train_samples]
        self.labels = [charset.encode(s.transcript) for s in self.train]
        self.val = [preprocess(s, height) for s in val_samples]
        self.charset = charset
        self.synth_config = synth_config
        self.decode_config = decode_config
        self.workers = workers
        self.params = init_params(model_config, train_config.seed)
        self.opt = OptState.zeros(self.params)
        self.steps_per_epoch = int(math.ceil(
            len(self.train) / train_config.batch_size))

    def _sample_grad(self, epoch, index):
        seed = [self.cfg.seed, epoch, index]
        sample = augment(self.train[index], self.cfg.augment_strength, seed,
                         self.synth_config)
        rng = np.random.default_rng(seed + [1])
        try:
            return loss_and_grad(sample.image, self.labels[index],
                                 self.params, self.model_config, rng)
        except NumericError as e:
            raise TrainingError('{0} in sample {1}'.format(
                e.message, _sample_id(sample, index)))

    def run_batch(self, epoch, batch, lr):
        ids = [_sample_id(self.train[i], i) for i in batch]
        try:
            results = ordered_map(functools.partial(self._sample_grad, epoch),
                                  batch, self.workers)
        except TrainingError as e:
            raise TrainingError(e.message, ids)
        grads = self.params.zeros_like()
        total = 0.0
        # summed in batch order whatever thread produced each term
        for loss, sample_grads in results:
            total += loss
            grads.accumulate(sample_grads)
        mean_loss = total / len(batch)
        if not np.isfinite(mean_loss):
            raise TrainingError('non-finite loss {0!r}'.format(mean_loss),
                                ids)
        grads.scale(1.0 / len(batch))
        self.params, self.opt = adam_step(self.params, grads, self.opt, lr,
                                          self.cfg.grad_clip_norm, ids)
        return total

    def run_epoch(self, epoch):
        rng = np.random.default_rng([self.cfg.seed, epoch])
        order = rng.permutation(len(self.train))
        size = self.cfg.batch_size
        total = 0.0
        lr = 0.0
        for b in range(self.steps_per_epoch):
            step = (epoch - 1) * self.steps_per_epoch + b
            lr = lr_at(step, self.steps_per_epoch, self.cfg)
            batch = [int(i) for i in order[b * size:(b + 1) * size]]
            total += self.run_batch(epoch, batch, lr)
            logger.debug('epoch %d step %d lr %.3e', epoch, step, lr)
        return total / len(self.train), lr


def _write_metrics(fp, record):
    fp.write(format_record(record) + '\n')
    fp.flush()


def train_run(model_config, train_config, train_samples, val_samples,
              charset, synth_config=None, decode_config=None, workers=1):
    '''
    Trains from freshly initialized parameters. Every epoch is checkpointed
    to checkpoint_dir as epoch-NNN.ckpt and logged to metrics.tsv; best.ckpt
    holds the epoch with the lowest validation CER, the earlier one on ties.
    '''
    trainer = _Trainer(model_config, train_config, train_samples,
                       val_samples, charset, synth_config, decode_config,
                       workers)
    directory = train_config.checkpoint_dir
    makedirs(directory)
    logger.info('training on %d lines, validating on %d, %d steps per epoch',
                len(trainer.train), len(trainer.val), trainer.steps_per_epoch)

    history = []
    best_epoch, best_cer, best_params = None, None, None
    with open_text(os.path.join(directory, METRICS_LOG), 'w') as fp:
        fp.write('\t'.join(METRICS_COLUMNS) + '\n')
        for epoch in range(1, train_config.epochs + 1):
            started = time.time()
            mean_loss, lr = trainer.run_epoch(epoch)
            val_cer, _ = evaluate(trainer.val, trainer.params, model_config,
                                  charset, decode_config, workers)
            wall = time.time() - started if train_config.log_wall_time \
                else 0.0
            record = EpochRecord(epoch, mean_loss, val_cer, lr, wall)
            history.append(record)
            _write_metrics(fp, record)

            metadata = {'epoch': epoch, 'val_cer': val_cer,
                        'mean_train_loss': mean_loss}
            save_checkpoint(os.path.join(directory, checkpoint_name(epoch)),
                            trainer.params, model_config, charset, metadata)
            if best_cer is None or val_cer < best_cer:
                best_epoch, best_cer, best_params = \
                    epoch, val_cer, trainer.params
                save_checkpoint(os.path.join(directory, BEST_CHECKPOINT),
                                trainer.params, model_config, charset,
                                metadata)
            logger.info('epoch %d: loss %.4f, val CER %.2f%%, lr %.2e',
                        epoch, mean_loss, 100.0 * val_cer, lr)

    logger.info('best epoch %d with val CER %.2f%%', best_epoch,
                100.0 * best_cer)
    return TrainResult(trainer.params, best_params, history, best_epoch,
                       best_cer)
