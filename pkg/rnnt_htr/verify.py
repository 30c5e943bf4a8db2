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
import logging
import math
import time

import numpy as np

from rnnt_htr.constants import BLANK_ID
from rnnt_htr.decode import DecodeConfig, greedy_search
from rnnt_htr.errors import UsageError
from rnnt_htr.lattice import LogitLattice, enumerate_alignments, \
    remove_blanks, rnnt_forward, rnnt_loss_brute, rnnt_loss_and_grad, \
    transition_posteriors
from rnnt_htr.model import ModelConfig, init_params, forward_lattice, \
    loss_and_grad
from rnnt_htr.numerics import log_softmax
from rnnt_htr.numerics.gradcheck import numerical_gradient, relative_error

logger = logging.getLogger(__name__)

TRIALS = {'small': 20, 'default': 100, 'large': 400}

BRUTE_FORCE_TOLERANCE = 1e-9
LATTICE_GRADIENT_TOLERANCE = 1e-6
MODEL_GRADIENT_TOLERANCE = 1e-4
CONSERVATION_TOLERANCE = 1e-9
MUTATION = 1e-3


class CheckResult(collections.namedtuple('CheckResult', [
        'name', 'passed', 'worst', 'tolerance', 'trials'])):
    __slots__ = ()

    def as_dict(self):
        return {'name': self.name, 'passed': bool(self.passed),
                'worst': float(self.worst),
                'tolerance': float(self.tolerance),
                'trials': int(self.trials)}


def _result(name, worst, tolerance, trials):
    # worst <= tolerance is false for nan
    passed = worst <= tolerance if tolerance else worst == 0
    return CheckResult(name, bool(passed), float(worst), tolerance, trials)


def _random_case(rng, max_frames, max_labels, max_vocab):
    frames = int(rng.integers(1, max_frames + 1))
    labels = int(rng.integers(0, max_labels + 1))
    vocab_size = int(rng.integers(1, max_vocab + 1))
    y = tuple(int(i) for i in rng.integers(1, vocab_size + 1, labels))
    logits = rng.normal(size=(frames, labels + 1, vocab_size + 1))
    return logits, y


def check_brute_force(rng, trials, mutate=False):
    '''Dynamic programme against the sum over every alignment.'''
    worst = 0.0
    for _ in range(trials):
        logits, y = _random_case(rng, 4, 3, 5)
        lat = LogitLattice(log_softmax(2.0 * logits))
        worst = max(worst, abs(rnnt_forward(lat, y).log_prob -
                               rnnt_loss_brute(lat, y)))
    return _result('brute_force', worst, BRUTE_FORCE_TOLERANCE, trials)


def check_lattice_gradient(rng, trials, mutate=False):
    '''Analytic logit gradient against central differences.'''
    worst = 0.0
    for _ in range(trials):
        logits, y = _random_case(rng, 4, 3, 5)
        _, grad = rnnt_loss_and_grad(logits, y)
        if mutate:
            grad = grad.copy()
            grad.flat[0] += MUTATION
        numeric = numerical_gradient(
            lambda: rnnt_loss_and_grad(logits, y)[0], logits)
        worst = max(worst, relative_error(grad, numeric))
    return _result('lattice_gradient', worst, LATTICE_GRADIENT_TOLERANCE,
                   trials)


def _doll_config(layer_norm):
    return ModelConfig(conv_blocks=[[2, 3, [2, 2]], [3, 3, [2, 1]]],
                       hidden_size=3, embed_size=3, encoded_size=4,
                       vocab_size=3, input_height=4, layer_norm=layer_norm)


# (layer_norm, labels) of the doll-model cases
MODEL_CASES = ((False, (1, 2)), (True, (3,)), (False, ()))


def check_model_gradient(rng, trials, mutate=False):
    '''
    End-to-end parameter gradients of a doll model against central
    differences, tensor by tensor. Tensors that do not reach the loss
    are skipped.
    '''
    cases = min(len(MODEL_CASES), max(1, trials // 50))
    image = np.random.default_rng(7).uniform(0.0, 1.0, (4, 7))
    worst = 0.0
    for layer_norm, y in MODEL_CASES[:cases]:
        config = _doll_config(layer_norm)
        params = init_params(config, 11)
        _, grads = loss_and_grad(image, y, params, config)
        objective = lambda: rnnt_forward(
            forward_lattice(image, y, params, config)[0], y).loss
        for name in params:
            numeric = numerical_gradient(objective, params[name])
            scale = max(np.linalg.norm(grads[name]), np.linalg.norm(numeric))
            if scale < 1e-8:
                continue
            error = relative_error(grads[name], numeric)
            if error > worst:
                logger.debug('model gradient %s: relative error %.3e', name,
                             error)
            worst = max(worst, error)
    return _result('model_gradient', worst, MODEL_GRADIENT_TOLERANCE, cases)


def check_anti_diagonal(rng, trials, mutate=False):
    '''Every path crosses each anti-diagonal t + u = n exactly once.'''
    worst = 0.0
    for _ in range(trials):
        logits, y = _random_case(rng, 5, 4, 5)
        lat = LogitLattice(log_softmax(2.0 * logits))
        gamma = transition_posteriors(lat, y)
        for n in range(lat.frames + lat.rows - 1):
            mass = sum(gamma[t, n - t].sum() for t in range(lat.frames)
                       if 0 <= n - t < lat.rows)
            worst = max(worst, abs(mass - 1.0))
    return _result('anti_diagonal', worst, CONSERVATION_TOLERANCE, trials)


def _binomial(n, k):
    return math.factorial(n) // (math.factorial(k) * math.factorial(n - k))


def check_alignment_count(rng, trials, mutate=False):
    '''
    Exhaustive alignment counts against C(T+U-1, U), and the hand-listed
    alignments of T = 4 frames for the labels (B, E, E).
    '''
    failures = 0
    cases = 0
    for frames in range(1, 7):
        for labels in range(0, 5):
            y = tuple(range(1, labels + 1))
            found = enumerate_alignments(frames, y)
            cases += 1
            if len(found) != _binomial(frames + labels - 1, labels) or \
                    len(set(found)) != len(found) or \
                    any(remove_blanks(a, labels) != y for a in found):
                failures += 1
    b, e = 1, 2
    listed = ((0, 0, b, 0, e, e, 0), (0, b, e, e, 0, 0, 0),
              (0, b, 0, e, 0, e, 0), (0, 0, b, e, 0, e, 0))
    found = enumerate_alignments(4, (b, e, e))
    cases += 1
    if len(found) != 20 or any(a not in found or
                               remove_blanks(a, e) != (b, e, e)
                               for a in listed):
        failures += 1
    return _result('alignment_count', failures, 0, cases)


class _ScriptedScorer(object):
    '''
    Frames are their own indices and the context counts the labels emitted
    so far; table maps (frame, context) to the winning class.
    '''

    def __init__(self, table, classes=6, rng=None):
        self._table = table
        self._classes = classes
        self._rng = rng
        self._scores = {}

    def start(self):
        return 0, ()

    def advance(self, label, state):
        return len(state) + 1, state + (label,)

    def joint(self, f_t, g):
        if self._rng is not None:
            key = (int(f_t), g)
            if key not in self._scores:
                self._scores[key] = self._rng.normal(size=self._classes)
            return self._scores[key]
        scores = np.zeros(self._classes)
        scores[self._table.get((int(f_t), g), BLANK_ID)] = 1.0
        return scores


GREEDY_TABLE = {(0, 0): 2, (0, 1): 3, (1, 1): 1, (2, 2): 2}


def check_greedy_trace(rng, trials, mutate=False):
    '''
    Hand-traced runs of the greedy search on a scripted scorer, and the
    one-label-per-frame bound on random scorers.
    '''
    failures = 0
    single = DecodeConfig('paper_greedy')
    frames = [0, 1, 2]
    if greedy_search(frames, _ScriptedScorer(GREEDY_TABLE), single) != \
            (2, 1, 2):
        failures += 1
    if greedy_search(frames, _ScriptedScorer(GREEDY_TABLE),
                     DecodeConfig('multi_emit', 3)) != (2, 3, 2):
        failures += 1
    for _ in range(trials):
        frames = list(range(int(rng.integers(1, 9))))
        scorer = _ScriptedScorer({}, 4, rng)
        if len(greedy_search(frames, scorer, single)) > len(frames):
            failures += 1
    return _result('greedy_trace', failures, 0, trials + 2)


CHECKS = (check_brute_force, check_lattice_gradient, check_model_gradient,
          check_anti_diagonal, check_alignment_count, check_greedy_trace)


def run_checks(scale='default', mutate=False, seed=0):
    '''
    Runs the oracle suite and returns its report. mutate perturbs the
    analytic lattice gradient so that the suite has something to catch.
    '''
    if scale not in TRIALS:
        raise UsageError('unknown verify scale {0!r}'.format(scale))
    trials = TRIALS[scale]
    results = []
    for index, check in enumerate(CHECKS):
        started = time.time()
        rng = np.random.default_rng([seed, index])
        result = check(rng, trials, mutate)
        logger.info('%s %s: worst %.3e (tolerance %.0e) in %.1fs',
                    'passed' if result.passed else 'FAILED', result.name,
                    result.worst, result.tolerance, time.time() - started)
        results.append(result)
    return {'command': 'verify',
            'scale': scale,
            'seed': seed,
            'mutated': bool(mutate),
            'checks': [r.as_dict() for r in results],
            'passed': all(r.passed for r in results)}
