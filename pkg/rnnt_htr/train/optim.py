#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import numpy as np

from rnnt_htr.defaults import OPT_BATCH_SIZE, OPT_EPOCHS, OPT_BASE_LR, \
    OPT_WARMUP_EPOCHS, OPT_SEED, OPT_GRAD_CLIP_NORM, OPT_AUGMENT_STRENGTH, \
    OPT_CHECKPOINT_DIR, OPT_LOG_WALL_TIME, ADAM_BETA1, ADAM_BETA2, \
    ADAM_EPSILON
from rnnt_htr.errors import ConfigError, TrainingError, \
    UnknownConfigKeyError, UsageError


def _count(name, value, minimum):
    try:
        number = int(value)
    except (TypeError, ValueError):
        number = None
    if number is None or number != value or number < minimum:
        raise ConfigError('train.{0} must be an integer >= {1}, got '
                          '{2!r}'.format(name, minimum, value))
    return number


def _real(name, value):
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigError('train.{0}: expected a number, got {1!r}'.format(
            name, value))
    if not np.isfinite(number):
        raise ConfigError('train.{0} must be finite'.format(name))
    return number


class TrainConfig(object):
    '''
    Optimization settings. grad_clip_norm <= 0 disables clipping;
    log_wall_time false writes 0.000 as each epoch's duration.
    '''

    def __init__(self, batch_size=OPT_BATCH_SIZE, epochs=OPT_EPOCHS,
                 base_lr=OPT_BASE_LR, warmup_epochs=OPT_WARMUP_EPOCHS,
                 seed=OPT_SEED, grad_clip_norm=OPT_GRAD_CLIP_NORM,
                 augment_strength=OPT_AUGMENT_STRENGTH,
                 checkpoint_dir=OPT_CHECKPOINT_DIR,
                 log_wall_time=OPT_LOG_WALL_TIME):
        self._batch_size = _count('batch_size', batch_size, 1)
        self._epochs = _count('epochs', epochs, 1)
        self._base_lr = _real('base_lr', base_lr)
        if self._base_lr <= 0:
            raise ConfigError('train.base_lr must be positive, got '
                              '{0!r}'.format(base_lr))
        self._warmup_epochs = _count('warmup_epochs', warmup_epochs, 0)
        if self._warmup_epochs > self._epochs:
            raise ConfigError('train.warmup_epochs {0} exceeds epochs '
                              '{1}'.format(self._warmup_epochs, self._epochs))
        self._seed = _count('seed', seed, 0)
        self._grad_clip_norm = _real('grad_clip_norm', grad_clip_norm)
        self._augment_strength = _real('augment_strength', augment_strength)
        if self._augment_strength < 0:
            raise ConfigError('train.augment_strength must be >= 0, got '
                              '{0!r}'.format(augment_strength))
        if not checkpoint_dir:
            raise ConfigError('train.checkpoint_dir must not be empty')
        self._checkpoint_dir = checkpoint_dir
        if not isinstance(log_wall_time, bool):
            raise ConfigError('train.log_wall_time must be true or false')
        self._log_wall_time = log_wall_time

    batch_size = property(lambda self: self._batch_size)
    epochs = property(lambda self: self._epochs)
    base_lr = property(lambda self: self._base_lr)
    warmup_epochs = property(lambda self: self._warmup_epochs)
    seed = property(lambda self: self._seed)
    grad_clip_norm = property(lambda self: self._grad_clip_norm)
    augment_strength = property(lambda self: self._augment_strength)
    checkpoint_dir = property(lambda self: self._checkpoint_dir)
    log_wall_time = property(lambda self: self._log_wall_time)

    def as_dict(self):
        return {'batch_size': self._batch_size,
                'epochs': self._epochs,
                'base_lr': self._base_lr,
                'warmup_epochs': self._warmup_epochs,
                'seed': self._seed,
                'grad_clip_norm': self._grad_clip_norm,
                'augment_strength': self._augment_strength,
                'checkpoint_dir': self._checkpoint_dir,
                'log_wall_time': self._log_wall_time}

    @classmethod
    def from_dict(cls, values):
        known = cls().as_dict()
        for key in values:
            if key not in known:
                raise UnknownConfigKeyError('train', key)
        return cls(**values)

    def replace(self, **changes):
        values = self.as_dict()
        values.update(changes)
        return self.from_dict(values)

    def __eq__(self, rhs):
        return isinstance(rhs, TrainConfig) and \
            self.as_dict() == rhs.as_dict()

    def __ne__(self, rhs):
        return not self.__eq__(rhs)

    def __repr__(self):
        return '%s(%r)' % (self.__class__.__name__, self.as_dict())


def lr_at(step, steps_per_epoch, cfg):
    '''
    Linear warmup from 0 to base_lr over warmup_epochs, then linear decay
    to 0 at the end of the last epoch.
    '''
    if steps_per_epoch < 1:
        raise UsageError('steps_per_epoch must be >= 1, got {0}'.format(
            steps_per_epoch))
    warmup = cfg.warmup_epochs * steps_per_epoch
    total = cfg.epochs * steps_per_epoch
    if step < warmup:
        return cfg.base_lr * (step / warmup)
    if total == warmup:
        return cfg.base_lr
    return max(0.0, cfg.base_lr * ((total - step) / (total - warmup)))


class OptState(object):
    '''Adam moments, shaped like the parameters, and the step count.'''

    def __init__(self, m, v, step=0):
        self._m = m
        self._v = v
        self._step = step

    m = property(lambda self: self._m)
    v = property(lambda self: self._v)
    step = property(lambda self: self._step)

    @classmethod
    def zeros(cls, params):
        return cls(params.zeros_like(), params.zeros_like(), 0)

    def copy(self):
        return OptState(self._m.copy(), self._v.copy(), self._step)

    def __eq__(self, rhs):
        return isinstance(rhs, OptState) and self._step == rhs._step and \
            self._m == rhs._m and self._v == rhs._v

    def __ne__(self, rhs):
        return not self.__eq__(rhs)


def clip_by_global_norm(grads, max_norm):
    '''(grads scaled to global norm <= max_norm, norm before clipping).'''
    norm = grads.global_norm()
    if max_norm <= 0 or norm <= max_norm:
        return grads, norm
    return grads.copy().scale(max_norm / norm), norm


def adam_step(params, grads, opt, lr, max_norm=0.0, sample_ids=None):
    '''
    One Adam update with bias correction after global-norm clipping.
    Returns new (params, opt); the inputs are left untouched.
    '''
    if params.names != grads.names:
        raise UsageError('gradients do not match the parameters')
    bad = grads.non_finite()
    if bad:
        raise TrainingError('non-finite gradient in {0}'.format(
            ', '.join(bad)), sample_ids)
    grads, _ = clip_by_global_norm(grads, max_norm)
    step = opt.step + 1
    correction1 = 1.0 - ADAM_BETA1 ** step
    correction2 = 1.0 - ADAM_BETA2 ** step
    new_params = params.copy()
    m = opt.m.copy()
    v = opt.v.copy()
    for name, g in grads.items():
        m[name] = ADAM_BETA1 * m[name] + (1.0 - ADAM_BETA1) * g
        v[name] = ADAM_BETA2 * v[name] + (1.0 - ADAM_BETA2) * g * g
        m_hat = m[name] / correction1
        v_hat = v[name] / correction2
        new_params[name] = new_params[name] - \
            lr * m_hat / (np.sqrt(v_hat) + ADAM_EPSILON)
    return new_params, OptState(m, v, step)
