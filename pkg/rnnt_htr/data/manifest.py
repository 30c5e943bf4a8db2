#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import functools
import logging
import os

from rnnt_htr.constants import Direction
from rnnt_htr.defaults import IMAGE_DIR
from rnnt_htr.errors import DataError, ManifestRowError, NotFoundError, \
    PermissionError, UnknownCharacterError, UsageError
from rnnt_htr.pool import ordered_map
from rnnt_htr.data.files import makedirs, open_text
from rnnt_htr.data.images import read_image, write_image
from rnnt_htr.data.sample import LineSample

logger = logging.getLogger(__name__)

FIELDS = 3


def _parse_row(path, lineno, line, charset):
    fields = line.split('\t')
    if len(fields) != FIELDS:
        raise ManifestRowError(path, lineno, 'expected {0} tab-separated '
                               'fields, found {1}'.format(FIELDS, len(fields)))
    image_path, direction, transcript = fields
    if not image_path:
        raise ManifestRowError(path, lineno, 'empty image path')
    try:
        direction = Direction(direction)
    except ValueError:
        raise ManifestRowError(path, lineno, 'unknown direction {0!r}'.format(
            direction))
    if charset is not None:
        for char in transcript:
            if char not in charset:
                raise UnknownCharacterError(path, lineno, char)
    return image_path, direction, transcript


def _load_row(base, path, row):
    lineno, (image_path, direction, transcript) = row
    try:
        image = read_image(os.path.join(base, image_path))
    except NotFoundError:
        raise ManifestRowError(path, lineno, 'image not found: {0}'.format(
            image_path))
    except (DataError, PermissionError) as e:
        raise ManifestRowError(path, lineno, e.message)
    logger.debug('%s:%d: registered %s', path, lineno, image_path)
    return LineSample(image, transcript, direction, uri=image_path)


def load_manifest(path, charset=None, workers=1):
    '''
    Samples listed in a TSV manifest, one per row: image path (relative to
    the manifest's directory), direction and transcript. With a charset,
    transcripts using other characters are rejected.
    '''
    with open_text(path) as fp:
        text = fp.read()
    lines = text.split('\n')
    if lines and lines[-1] == '':
        lines.pop()
    rows = []
    for lineno, line in enumerate(lines, 1):
        if line.endswith('\r'):
            line = line[:-1]
        rows.append((lineno, _parse_row(path, lineno, line, charset)))
    base = os.path.dirname(path)
    samples = ordered_map(functools.partial(_load_row, base, path), rows,
                          workers)
    logger.info('loaded %d samples from %s', len(samples), path)
    return samples


def write_manifest(path, samples):
    '''
    Writes the images as PGM under images/ next to the manifest, named
    after the manifest and the row, and the manifest rows pointing at them.
    '''
    base = os.path.dirname(path)
    stem = os.path.splitext(os.path.basename(path))[0]
    makedirs(os.path.join(base, IMAGE_DIR))
    rows = []
    for index, sample in enumerate(samples):
        if '\t' in sample.transcript or '\n' in sample.transcript or \
                '\r' in sample.transcript:
            raise UsageError('transcript {0!r} cannot be stored in a TSV '
                             'manifest'.format(sample.transcript))
        uri = '{0}/{1}-{2:05d}.pgm'.format(IMAGE_DIR, stem, index)
        write_image(os.path.join(base, uri), sample.image)
        rows.append('\t'.join((uri, sample.direction.value,
                               sample.transcript)))
    with open_text(path, 'w') as fp:
        for row in rows:
            fp.write(row + '\n')
    logger.info('wrote %d samples to %s', len(rows), path)
