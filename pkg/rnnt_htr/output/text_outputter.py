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


def _percent(value):
    return '{0:.2f}%'.format(100.0 * value)


class Outputter(OutputterBase):
    '''Plain lines for a terminal, one layout per command.'''

    def dump(self, data, pretty_print=False):
        handler = getattr(self, '_dump_' + data.get('command', ''), None)
        if handler is None:
            return '\n'.join('{0}: {1}'.format(k, data[k])
                             for k in sorted(data))
        return '\n'.join(handler(data, pretty_print))

    def _dump_synth(self, data, pretty_print):
        yield 'wrote {0} samples to {1} ({2} train, {3} validation)'.format(
            data['samples'], data['out_dir'], data['train'], data['val'])
        if pretty_print:
            for key in ('charset', 'train_manifest', 'val_manifest'):
                yield '  {0}: {1}'.format(key, data[key])

    def _dump_train(self, data, pretty_print):
        if pretty_print:
            for record in data['history']:
                yield 'epoch {0}: loss {1:.4f}, CER {2}, lr {3:.2e}'.format(
                    record['epoch'], record['mean_train_loss'],
                    _percent(record['val_cer']), record['lr'])
        yield 'best epoch {0}: CER {1}'.format(data['best_epoch'],
                                               _percent(data['best_cer']))
        yield 'checkpoint: {0}'.format(data['checkpoint'])

    def _dump_eval(self, data, pretty_print):
        yield 'CER: {0}'.format(_percent(data['cer']))
        yield 'samples: {0}'.format(data['samples'])
        for line in data.get('lines', ()):
            yield '{0}\t{1}\t{2}\t{3}'.format(
                line['uri'], _percent(line['cer']), line['reference'],
                line['hypothesis'])

    def _dump_decode(self, data, pretty_print):
        for item in data['transcripts']:
            if pretty_print:
                yield '{0}\t{1}'.format(item['image'], item['text'])
            else:
                yield item['text']

    def _dump_verify(self, data, pretty_print):
        for check in data['checks']:
            yield '{0} {1:<18} worst {2:.3e}  tolerance {3:.0e}  ' \
                  'trials {4}'.format('PASS' if check['passed'] else 'FAIL',
                                      check['name'], check['worst'],
                                      check['tolerance'], check['trials'])
        if data['passed']:
            yield 'all checks passed ({0} scale)'.format(data['scale'])
        else:
            yield 'FAILED: {0}'.format(', '.join(
                c['name'] for c in data['checks'] if not c['passed']))
