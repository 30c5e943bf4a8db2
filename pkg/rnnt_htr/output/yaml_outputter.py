#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

from rnnt_htr.output import OutputterBase
import yaml

_SafeDumper = yaml.CSafeDumper if yaml.__with_libyaml__ else yaml.SafeDumper


class Outputter(OutputterBase):

    def dump(self, data, pretty_print=False):
        return yaml.dump(data, default_flow_style=not pretty_print,
                         allow_unicode=True, Dumper=_SafeDumper).rstrip('\n')
