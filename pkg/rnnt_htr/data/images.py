#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import errno
import logging
import math

import numpy as np
from PIL import Image

from rnnt_htr.errors import DataError, NotFoundError, PermissionError

logger = logging.getLogger(__name__)


def _io_error(path, e):
    if e.errno == errno.ENOENT:
        return NotFoundError('No such image: {0}'.format(path))
    if e.errno in (errno.EACCES, errno.EPERM, errno.EROFS):
        return PermissionError('Cannot access image {0}: {1}'.format(
            path, e.strerror))
    return DataError('Cannot use image {0}: {1}'.format(path, e))


def read_image(path):
    '''Grayscale image as float64 in [0, 1]; any format Pillow reads.'''
    try:
        with Image.open(path) as img:
            pixels = np.asarray(img.convert('L'), dtype=np.float64)
    except (IOError, OSError) as e:
        if getattr(e, 'errno', None) is None:
            raise DataError('Cannot decode image {0}: {1}'.format(path, e))
        raise _io_error(path, e)
    if pixels.size == 0:
        raise DataError('Empty image: {0}'.format(path))
    return pixels / 255.0


def to_bytes(image):
    return np.round(np.clip(image, 0.0, 1.0) * 255.0).astype(np.uint8)


def write_image(path, image):
    '''Writes an 8-bit binary PGM (P5).'''
    img = Image.fromarray(to_bytes(image))
    try:
        img.save(path, format='PPM')
    except (IOError, OSError) as e:
        raise _io_error(path, e)
    logger.debug('wrote %s (%dx%d)', path, image.shape[1], image.shape[0])


def _float_image(image):
    return Image.fromarray(np.asarray(image, dtype=np.float32))


def resize_to_height(image, height):
    '''Bilinear resize to `height` rows, keeping the aspect ratio.'''
    h, w = image.shape
    if h == height:
        return image
    width = max(1, int(math.floor(w * height / h + 0.5)))
    resized = _float_image(image).resize((width, height), Image.BILINEAR)
    return np.asarray(resized, dtype=np.float64)


def affine_warp(image, angle, scale, shear):
    '''
    Rotation (degrees), isotropic scale and horizontal shear about the image
    centre, sampled bilinearly; uncovered pixels become background (0).
    '''
    h, w = image.shape
    theta = math.radians(angle)
    cos, sin = math.cos(theta), math.sin(theta)
    forward = np.dot(np.array([[cos, -sin], [sin, cos]]),
                     np.array([[scale, scale * shear], [0.0, scale]]))
    inverse = np.linalg.inv(forward)
    # Pillow samples pixel i at coordinate i + 0.5
    centre = np.array([w / 2.0, h / 2.0])
    offset = centre - np.dot(inverse, centre)
    data = (inverse[0, 0], inverse[0, 1], offset[0],
            inverse[1, 0], inverse[1, 1], offset[1])
    warped = _float_image(image).transform((w, h), Image.AFFINE, data,
                                           resample=Image.BILINEAR,
                                           fillcolor=0.0)
    return np.asarray(warped, dtype=np.float64)
