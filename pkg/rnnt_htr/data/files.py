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
import io
import os

from rnnt_htr.errors import DataError, NotFoundError, PermissionError


def _access_error(path, e):
    if e.errno in (errno.EACCES, errno.EPERM, errno.EROFS):
        return PermissionError('Cannot access {0}: {1}'.format(
            path, e.strerror))
    return None


def open_text(path, mode='r'):
    '''UTF-8 text file, with I/O failures mapped onto the error hierarchy.'''
    try:
        return io.open(path, mode, encoding='utf-8', newline='')
    except (IOError, OSError) as e:
        if e.errno == errno.ENOENT:
            raise NotFoundError('No such file: {0}'.format(path))
        raise _access_error(path, e) or \
            DataError('Cannot open {0}: {1}'.format(path, e))


def makedirs(path):
    '''Creates path and its parents; an existing directory is fine.'''
    try:
        os.makedirs(path)
    except (IOError, OSError) as e:
        if e.errno == errno.EEXIST and os.path.isdir(path):
            return
        raise _access_error(path, e) or \
            DataError('Cannot create {0}: {1}'.format(path, e))
