from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals


import os
import sys

# the compiled copy under build/ shadows the pure-python package
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                'build'))
import rnnt_htr.cli
rnnt_htr.cli.main()
