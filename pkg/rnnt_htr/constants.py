#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import enum


class _Constant(object):

    def __init__(self, displayname):
        self._repr = displayname

    __str__ = __repr__ = lambda self: self._repr

CMD_SYNTH = _Constant('synth')
CMD_TRAIN = _Constant('train')
CMD_EVAL = _Constant('eval')
CMD_DECODE = _Constant('decode')
CMD_VERIFY = _Constant('verify')

COMMANDS = dict((str(c), c) for c in
                (CMD_SYNTH, CMD_TRAIN, CMD_EVAL, CMD_DECODE, CMD_VERIFY))

# process exit codes
RC_OK = 0
RC_VERIFY_FAILED = 1
RC_IO_ERROR = 2
RC_CONFIG_ERROR = 3
RC_USAGE = 4

BLANK_ID = 0


class Direction(enum.Enum):
    HORIZONTAL = 'horizontal'
    VERTICAL = 'vertical'


class DecodeMode(enum.Enum):
    PAPER_GREEDY = 'paper_greedy'
    MULTI_EMIT = 'multi_emit'
