#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import contextlib
import logging
from multiprocessing.pool import ThreadPool

from rnnt_htr.errors import UsageError

logger = logging.getLogger(__name__)


def ordered_map(function, items, workers=1):
    '''
    map() over items on up to `workers` threads. Results keep the order of
    items whatever the scheduling; workers == 1 runs inline.
    '''
    items = list(items)
    if workers < 1:
        raise UsageError('workers must be >= 1, got {0}'.format(workers))
    if workers == 1 or len(items) < 2:
        return [function(item) for item in items]
    logger.debug('mapping %d items on %d threads', len(items), workers)
    with contextlib.closing(ThreadPool(min(workers, len(items)))) as pool:
        return pool.map(function, items)
