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
import errno
import io
import json
import logging
import struct

import numpy as np

from rnnt_htr.errors import CheckpointError, NotFoundError, PermissionError, \
    ConfigError, UsageError
from rnnt_htr.lattice import Vocab
from rnnt_htr.model.params import ModelConfig, ModelParams, check_params

logger = logging.getLogger(__name__)

MAGIC = b'RNNTCKPT'
FORMAT_VERSION = 1
PAYLOAD_DTYPE = np.dtype('<f8')

Checkpoint = collections.namedtuple('Checkpoint',
                                    ['params', 'config', 'vocab', 'metadata'])


def _open(path, mode):
    try:
        return io.open(path, mode)
    except (IOError, OSError) as e:
        if e.errno == errno.ENOENT:
            raise NotFoundError('Checkpoint not found: {0}'.format(path))
        if e.errno == errno.EACCES:
            raise PermissionError('Cannot access checkpoint: {0}'.format(path))
        raise CheckpointError(str(e), uri=path)


def encode_checkpoint(params, config, vocab, metadata=None):
    '''The container as bytes; see docs/checkpoint-format.md.'''
    if len(vocab) != config.vocab_size:
        raise ConfigError('vocabulary of {0} symbols for a model with K = '
                          '{1}'.format(len(vocab), config.vocab_size))
    check_params(params, config)
    header = json.dumps({'config': config.as_dict(),
                         'vocab': vocab.symbols,
                         'metadata': metadata or {}},
                        sort_keys=True, ensure_ascii=False).encode('utf-8')
    out = io.BytesIO()
    out.write(MAGIC)
    out.write(struct.pack('<I', FORMAT_VERSION))
    out.write(struct.pack('<I', len(header)))
    out.write(header)
    out.write(struct.pack('<I', len(params)))
    for name, value in params.items():
        raw = name.encode('utf-8')
        out.write(struct.pack('<H', len(raw)))
        out.write(raw)
        out.write(struct.pack('<B', value.ndim))
        out.write(struct.pack('<{0}I'.format(value.ndim), *value.shape))
        out.write(np.ascontiguousarray(value, dtype=PAYLOAD_DTYPE).tobytes())
    return out.getvalue()


class _Reader(object):

    def __init__(self, data, uri):
        self._data = data
        self._pos = 0
        self._uri = uri

    def take(self, count):
        if self._pos + count > len(self._data):
            raise CheckpointError('truncated container (wanted {0} bytes at '
                                  'offset {1})'.format(count, self._pos),
                                  uri=self._uri)
        chunk = self._data[self._pos:self._pos + count]
        self._pos += count
        return chunk

    def unpack(self, fmt):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    at_end = property(lambda self: self._pos == len(self._data))


def decode_checkpoint(data, uri=None):
    reader = _Reader(data, uri)
    if reader.take(len(MAGIC)) != MAGIC:
        raise CheckpointError('not an rnnt-htr checkpoint', uri=uri)
    version, = reader.unpack('<I')
    if version != FORMAT_VERSION:
        raise CheckpointError('unsupported container version {0} (expected '
                              '{1})'.format(version, FORMAT_VERSION), uri=uri)
    size, = reader.unpack('<I')
    try:
        header = json.loads(reader.take(size).decode('utf-8'))
        config = ModelConfig.from_dict(header['config'])
        vocab = Vocab(header['vocab'])
        metadata = header.get('metadata', {})
    except (ValueError, KeyError, TypeError, ConfigError) as e:
        raise CheckpointError('bad header: {0}'.format(e), uri=uri)

    count, = reader.unpack('<I')
    tensors = []
    for _ in range(count):
        length, = reader.unpack('<H')
        name = reader.take(length).decode('utf-8')
        ndim, = reader.unpack('<B')
        shape = reader.unpack('<{0}I'.format(ndim))
        nbytes = int(np.prod(shape, dtype=np.int64)) * PAYLOAD_DTYPE.itemsize
        value = np.frombuffer(reader.take(nbytes), dtype=PAYLOAD_DTYPE)
        tensors.append((name, value.reshape(shape).astype(np.float64)))
    if not reader.at_end:
        raise CheckpointError('trailing bytes after the last tensor', uri=uri)

    params = ModelParams(tensors)
    try:
        check_params(params, config)
    except UsageError as e:
        raise CheckpointError(e.message, uri=uri)
    if len(vocab) != config.vocab_size:
        raise CheckpointError('vocabulary of {0} symbols for K = {1}'.format(
            len(vocab), config.vocab_size), uri=uri)
    bad = params.non_finite()
    if bad:
        raise CheckpointError('non-finite values in {0}'.format(
            ', '.join(bad)), uri=uri)
    return Checkpoint(params, config, vocab, metadata)


def save_checkpoint(path, params, config, vocab, metadata=None):
    data = encode_checkpoint(params, config, vocab, metadata)
    with _open(path, 'wb') as fp:
        fp.write(data)
    logger.debug('wrote checkpoint %s (%d bytes)', path, len(data))


def load_checkpoint(path):
    with _open(path, 'rb') as fp:
        data = fp.read()
    logger.debug('read checkpoint %s (%d bytes)', path, len(data))
    return decode_checkpoint(data, uri=path)
