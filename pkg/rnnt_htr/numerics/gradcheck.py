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

FD_STEP = 1e-5


def numerical_gradient(function, array, h=FD_STEP):
    '''
    Central differences of the scalar function() with respect to every entry
    of array, which is perturbed in place and restored afterwards.
    '''
    grad = np.zeros_like(array)
    flat = array.reshape(-1)
    out = grad.reshape(-1)
    for i in range(flat.shape[0]):
        old = flat[i]
        flat[i] = old + h
        right = function()
        flat[i] = old - h
        left = function()
        flat[i] = old
        out[i] = (right - left) / (2.0 * h)
    return grad


def relative_error(analytic, numeric):
    '''||a - n|| / max(||a||, ||n||), 0 when both vanish.'''
    a = np.asarray(analytic, dtype=np.float64).ravel()
    n = np.asarray(numeric, dtype=np.float64).ravel()
    scale = max(np.linalg.norm(a), np.linalg.norm(n))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(a - n) / scale)
