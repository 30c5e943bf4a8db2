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

from rnnt_htr.constants import Direction
from rnnt_htr.defaults import OPT_CANVAS_HEIGHT
from rnnt_htr.errors import DataError, UsageError
from rnnt_htr.data.images import resize_to_height


class LineSample(object):
    '''
    One text line: a grayscale image in [0, 1], its transcript and its
    reading direction. uri is the image path relative to its manifest, if
    the sample came from or went to one.
    '''

    def __init__(self, image, transcript, direction=Direction.HORIZONTAL,
                 uri=None):
        self._image = np.asarray(image, dtype=np.float64)
        if self._image.ndim != 2:
            raise UsageError('line image must be 2-dimensional, got shape '
                             '{0}'.format(self._image.shape))
        self._transcript = transcript
        try:
            self._direction = Direction(direction)
        except ValueError:
            raise UsageError('unknown direction {0!r}'.format(direction))
        self.uri = uri

    image = property(lambda self: self._image)
    transcript = property(lambda self: self._transcript)
    direction = property(lambda self: self._direction)
    width = property(lambda self: self._image.shape[1])
    height = property(lambda self: self._image.shape[0])

    def replace(self, **changes):
        values = dict(image=self._image, transcript=self._transcript,
                      direction=self._direction, uri=self.uri)
        values.update(changes)
        return LineSample(**values)

    def __eq__(self, rhs):
        return isinstance(rhs, LineSample) and \
            self._transcript == rhs._transcript and \
            self._direction == rhs._direction and \
            np.array_equal(self._image, rhs._image)

    def __ne__(self, rhs):
        return not self.__eq__(rhs)

    def __repr__(self):
        return '<{0} {1!r} {2} {3}x{4}>'.format(
            self.__class__.__name__, self._transcript, self._direction.value,
            self.width, self.height)


def preprocess(sample, target_extent=OPT_CANVAS_HEIGHT):
    '''
    Canonical form for the model: horizontal, target_extent rows high
    (bilinear, aspect kept) and values clamped to [0, 1].
    '''
    image = sample.image
    if image.size == 0:
        raise DataError('degenerate {0}x{1} image{2}'.format(
            image.shape[1] if image.ndim == 2 else 0, image.shape[0],
            '' if sample.uri is None else ' ' + sample.uri))
    if sample.direction is Direction.VERTICAL:
        # top-to-bottom reading becomes left-to-right
        image = image.T
    image = resize_to_height(image, target_extent)
    image = np.clip(image, 0.0, 1.0)
    return sample.replace(image=image, direction=Direction.HORIZONTAL)
