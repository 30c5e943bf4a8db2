#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import logging

from rnnt_htr.defaults import TOY_ALPHABET
from rnnt_htr.errors import CharsetMismatchError, ConfigError, DataError, \
    DuplicateSymbolError
from rnnt_htr.lattice import Vocab
from rnnt_htr.data.files import open_text

logger = logging.getLogger(__name__)


class Charset(Vocab):
    '''A Vocab that knows the file it came from.'''

    def __init__(self, symbols, uri=None):
        symbols = list(symbols)
        for lineno, symbol in enumerate(symbols, 1):
            if len(symbol) != 1 or symbol in '\t\r\n':
                raise DataError('{0}:{1}: charset entries are single '
                                'printable codepoints, got {2!r}'.format(
                                    uri or '<charset>', lineno, symbol))
        try:
            super(Charset, self).__init__(symbols)
        except DuplicateSymbolError as e:
            e.uri = uri
            raise
        self.uri = uri

    def check_matches(self, other, what):
        '''Raises CharsetMismatchError at the first id where other differs.'''
        diff = self.first_difference(other)
        if diff is not None:
            raise CharsetMismatchError(what, *diff)


def load_charset(path):
    with open_text(path) as fp:
        text = fp.read()
    lines = text.split('\n')
    if lines and lines[-1] == '':
        lines.pop()
    lines = [line[:-1] if line.endswith('\r') else line for line in lines]
    charset = Charset(lines, uri=path)
    logger.debug('loaded charset of %d symbols from %s', len(charset), path)
    return charset


def write_charset(path, charset):
    with open_text(path, 'w') as fp:
        for symbol in charset.symbols:
            fp.write(symbol + '\n')


def default_charset(size):
    '''The first `size` symbols of the toy alphabet.'''
    if not 1 <= size <= len(TOY_ALPHABET):
        raise ConfigError('the built-in charset has 1 to {0} symbols, asked '
                          'for {1}'.format(len(TOY_ALPHABET), size))
    return Charset(TOY_ALPHABET[:size])
