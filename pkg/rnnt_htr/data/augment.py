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

from rnnt_htr.errors import UsageError
from rnnt_htr.data.synth import SynthConfig, distort


def augment(sample, strength, seed, cfg=None):
    '''
    Training-time jitter: the synthesizer's affine and noise ranges (from
    cfg, or the defaults) scaled by strength. Strength 0 returns a copy.
    '''
    if strength < 0:
        raise UsageError('augmentation strength must be >= 0, got '
                         '{0}'.format(strength))
    if strength == 0:
        return sample.replace(image=sample.image.copy())
    if cfg is None:
        cfg = SynthConfig()
    rng = np.random.default_rng(seed)
    return sample.replace(image=distort(sample.image, rng, cfg, strength))
