#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from rnnt_htr.constants import BLANK_ID
from rnnt_htr.errors import UsageError, DuplicateSymbolError


class Vocab(object):
    '''
    The output alphabet: K symbols with ids 1..K. Id 0 is the blank, which
    is never one of the symbols, so the extended label set has K + 1 ids.
    '''

    blank_id = BLANK_ID

    def __init__(self, symbols):
        self._symbols = []
        self._ids = {}
        for lineno, symbol in enumerate(symbols, 1):
            if symbol in self._ids:
                raise DuplicateSymbolError(symbol, self._ids[symbol], lineno)
            self._symbols.append(symbol)
            self._ids[symbol] = lineno

    symbols = property(lambda self: list(self._symbols))
    size = property(lambda self: len(self._symbols))
    extended_size = property(lambda self: len(self._symbols) + 1)

    def __len__(self):
        return len(self._symbols)

    def __contains__(self, symbol):
        return symbol in self._ids

    def __eq__(self, rhs):
        return isinstance(rhs, Vocab) and self._symbols == rhs._symbols

    def __ne__(self, rhs):
        return not self.__eq__(rhs)

    def id_of(self, symbol):
        try:
            return self._ids[symbol]
        except KeyError:
            raise UsageError('symbol {0!r} is not in the vocabulary'.format(
                symbol))

    def encode(self, text):
        return tuple(self.id_of(ch) for ch in text)

    def decode(self, ids):
        out = []
        for i in ids:
            if not 1 <= i <= len(self._symbols):
                raise UsageError('label id {0} outside [1, {1}]'.format(
                    i, len(self._symbols)))
            out.append(self._symbols[i - 1])
        return ''.join(out)

    def first_difference(self, other):
        '''(id, mine, theirs) of the first disagreeing id, or None.'''
        for i in range(max(len(self), len(other))):
            mine = self._symbols[i] if i < len(self) else None
            theirs = other._symbols[i] if i < len(other) else None
            if mine != theirs:
                return i + 1, mine, theirs
        return None

    def __repr__(self):
        return '%s(%r)' % (self.__class__.__name__, ''.join(self._symbols))
