#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

RNNT_NAME = 'rnnt-htr'
DESCRIPTION = ('recognise handwritten text lines with an RNN-Transducer '
               '(numpy, hand-derived gradients)')
VERSION = '0.3.0'
AUTHOR = 'rnnt-htr developers'
LICENCE = 'Artistic Licence 2.0'
