#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import sys
import traceback

from rnnt_htr.constants import RC_VERIFY_FAILED, RC_IO_ERROR, \
    RC_CONFIG_ERROR, RC_USAGE


class RnntException(Exception):

    def __init__(self, rc=RC_VERIFY_FAILED, msg=None):
        super(RnntException, self).__init__()
        self._rc = rc
        self._msg = msg

    message = property(lambda self: self._get_message())
    rc = property(lambda self: self._rc)

    def __str__(self):
        return self.message

    def _get_message(self):
        if self._msg:
            return self._msg
        else:
            return 'No error message provided.'

    def exit_with_message(self, out=sys.stderr, full_traceback=False):
        '''Prints the message, after the traceback with --debug, and exits.'''
        if full_traceback:
            t, v, tb = sys.exc_info()
            print('Full Traceback', file=out)
            for l in traceback.format_tb(tb):
                print(l, file=out)
        print(self.message, file=out)
        sys.exit(self.rc)


class UsageError(RnntException):

    def __init__(self, msg, rc=RC_USAGE):
        super(UsageError, self).__init__(rc=rc, msg=msg)


class InvocationError(RnntException):

    def __init__(self, msg, rc=RC_USAGE):
        super(InvocationError, self).__init__(rc=rc, msg=msg)


class NumericError(RnntException):

    def __init__(self, msg, rc=RC_VERIFY_FAILED):
        super(NumericError, self).__init__(rc=rc, msg=msg)


class ConfigError(RnntException):

    def __init__(self, msg, rc=RC_CONFIG_ERROR):
        super(ConfigError, self).__init__(rc=rc, msg=msg)


class UnknownConfigKeyError(ConfigError):

    def __init__(self, section, key):
        super(UnknownConfigKeyError, self).__init__(msg=None)
        self.section = section
        self.key = key

    def _get_message(self):
        if self.section is None:
            return "Unknown configuration section '{0}'".format(self.key)
        msg = "Unknown key '{0}' in configuration section '{1}'"
        return msg.format(self.key, self.section)


class CharsetMismatchError(ConfigError):

    def __init__(self, what, position, expected, found):
        super(CharsetMismatchError, self).__init__(msg=None)
        self._what = what
        self._position = position
        self._expected = expected
        self._found = found

    def _get_message(self):
        msg = "Charset mismatch with {0} at id {1}:\n" \
              "- {2!r}\n+ {3!r}"
        return msg.format(self._what, self._position, self._expected,
                          self._found)


class NotFoundError(RnntException):

    def __init__(self, msg, rc=RC_IO_ERROR):
        super(NotFoundError, self).__init__(rc=rc, msg=msg)


class PermissionError(RnntException):

    def __init__(self, msg, rc=RC_IO_ERROR):
        super(PermissionError, self).__init__(rc=rc, msg=msg)


class DataError(RnntException):

    def __init__(self, msg, rc=RC_IO_ERROR):
        super(DataError, self).__init__(rc=rc, msg=msg)


class ManifestRowError(DataError):

    def __init__(self, uri, lineno, reason):
        super(ManifestRowError, self).__init__(msg=None)
        self.uri = uri
        self.lineno = lineno
        self.reason = reason

    def _get_message(self):
        return '{0}:{1}: {2}'.format(self.uri, self.lineno, self.reason)


class UnknownCharacterError(ManifestRowError):

    def __init__(self, uri, lineno, char):
        reason = 'character {0!r} (U+{1:04X}) is not in the charset'.format(
            char, ord(char))
        super(UnknownCharacterError, self).__init__(uri, lineno, reason)
        self.char = char


class DuplicateSymbolError(DataError):

    def __init__(self, symbol, first, second, uri=None):
        super(DuplicateSymbolError, self).__init__(msg=None)
        self._symbol = symbol
        self._lines = (first, second)
        self.uri = uri

    def _get_message(self):
        msg = "Duplicate symbol {0!r} in charset{1}: lines {2} and {3}"
        where = '' if self.uri is None else ' ' + self.uri
        return msg.format(self._symbol, where, self._lines[0], self._lines[1])


class CheckpointError(RnntException):

    def __init__(self, msg, uri=None, rc=RC_IO_ERROR):
        super(CheckpointError, self).__init__(rc=rc, msg=msg)
        self.uri = uri

    def _get_message(self):
        if self.uri:
            return '{0}: {1}'.format(self.uri, self._msg)
        return self._msg


class TrainingError(RnntException):

    def __init__(self, msg, sample_ids=None, rc=RC_VERIFY_FAILED):
        super(TrainingError, self).__init__(rc=rc, msg=msg)
        self.sample_ids = list(sample_ids or [])

    def _get_message(self):
        if not self.sample_ids:
            return self._msg
        return '{0} (batch: {1})'.format(self._msg, ', '.join(
            str(s) for s in self.sample_ids))


class VerificationFailed(RnntException):

    def __init__(self, failed, rc=RC_VERIFY_FAILED):
        super(VerificationFailed, self).__init__(rc=rc, msg=None)
        self.failed = list(failed)

    def _get_message(self):
        return 'Verification failed: {0}'.format(', '.join(self.failed))
