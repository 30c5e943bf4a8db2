#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import io
import json
import os
import re
import shutil
import tempfile
import unittest
from unittest import mock

import numpy as np

from rnnt_htr.cli import main
from rnnt_htr.constants import RC_OK, RC_VERIFY_FAILED, RC_IO_ERROR, \
    RC_CONFIG_ERROR, RC_USAGE
from rnnt_htr.data import Charset, LineSample, write_charset, write_manifest
from rnnt_htr.model import init_params, save_checkpoint
from rnnt_htr.model.tests.test_params import doll_config

TINY = {
    'model': doll_config().as_dict(),
    'train': {'batch_size': 3, 'epochs': 1, 'base_lr': 0.01,
              'warmup_epochs': 0, 'log_wall_time': False,
              'checkpoint_dir': 'ckpt'},
    'synth': {'samples': 20, 'charset_size': 3, 'glyph_cell': 5,
              'canvas_height': 5, 'min_length': 1, 'max_length': 2,
              'spacing': [0, 1]},
}


def tree(root):
    found = {}
    for directory, _, files in os.walk(root):
        for name in files:
            path = os.path.join(directory, name)
            with io.open(path, 'rb') as fp:
                found[os.path.relpath(path, root)] = fp.read()
    return found


class TestMain(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()
        self.config = self._write_config(TINY)

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def _path(self, *parts):
        return os.path.join(self.tmpdir, *parts)

    def _write_config(self, document, name='run.json'):
        path = self._path(name)
        with io.open(path, 'w', encoding='utf-8') as fp:
            fp.write(json.dumps(document))
        return path

    def run_main(self, *argv):
        argv = ['--config', self.config] + list(argv)
        with mock.patch('sys.stdout', new_callable=io.StringIO) as out, \
                mock.patch('sys.stderr', new_callable=io.StringIO) as err:
            with self.assertRaises(SystemExit) as ctx:
                main(argv)
        return ctx.exception.code, out.getvalue(), err.getvalue()

    def _blank_model(self):
        '''A checkpoint whose joint scores tie everywhere: it emits nothing.'''
        config = doll_config()
        params = init_params(config, 0)
        params['joint.weight'] = np.zeros_like(params['joint.weight'])
        path = self._path('blank.ckpt')
        save_checkpoint(path, params, config, Charset('abc'))
        return path

    def test_synth_train_eval_decode(self):
        out = self._path('run')
        code, stdout, _ = self.run_main('synth', '--out', out)
        self.assertEqual(code, RC_OK)
        self.assertIn('wrote 20 samples', stdout)
        with io.open(os.path.join(out, 'train.tsv'), encoding='utf-8') as fp:
            self.assertEqual(len(fp.read().splitlines()), 18)
        self.assertEqual(len(os.listdir(os.path.join(out, 'images'))), 20)

        code, stdout, _ = self.run_main('train', '--out', out)
        self.assertEqual(code, RC_OK)
        for name in ('best.ckpt', 'epoch-001.ckpt', 'metrics.tsv'):
            self.assertTrue(os.path.isfile(os.path.join(out, 'ckpt', name)))

        code, stdout, _ = self.run_main('eval', '--out', out)
        self.assertEqual(code, RC_OK)
        lines = stdout.splitlines()
        self.assertRegex(lines[0], r'^CER: \d+\.\d\d%$')
        self.assertEqual(lines[1], 'samples: 2')

        image = os.path.join(out, 'images', 'val-00000.pgm')
        code, stdout, _ = self.run_main('decode', '--out', out, image)
        self.assertEqual(code, RC_OK)
        self.assertEqual(len(stdout.splitlines()), 1)
        self.assertTrue(set(stdout.strip()) <= set('ABC'))

    def test_synth_is_reproducible(self):
        self.run_main('synth', '--out', self._path('a'), '--seed', '4')
        self.run_main('synth', '--out', self._path('b'), '--seed', '4',
                      '--workers', '2')
        first, second = tree(self._path('a')), tree(self._path('b'))
        self.assertEqual(len(first), 23)
        self.assertEqual(first, second)
        self.run_main('synth', '--out', self._path('c'), '--seed', '5')
        self.assertNotEqual(tree(self._path('c')), first)

    def test_synth_and_train_are_reproducible(self):
        document = json.loads(json.dumps(TINY))
        del document['train']['log_wall_time']
        self.config = self._write_config(document, 'default-wall.json')
        for name in ('a', 'b'):
            out = self._path(name)
            self.assertEqual(self.run_main('synth', '--out', out,
                                           '--seed', '3')[0], RC_OK)
            self.assertEqual(self.run_main('train', '--out', out,
                                           '--seed', '3')[0], RC_OK)
        first, second = tree(self._path('a')), tree(self._path('b'))
        for name in ('best.ckpt', 'epoch-001.ckpt', 'metrics.tsv'):
            self.assertIn(os.path.join('ckpt', name), first)
        self.assertEqual(first, second)

    def test_sample_count_override(self):
        code, _, _ = self.run_main('synth', '--out', self._path('run'),
                                   '--samples', '10')
        self.assertEqual(code, RC_OK)
        with io.open(self._path('run', 'val.tsv'), encoding='utf-8') as fp:
            self.assertEqual(len(fp.read().splitlines()), 1)

    def test_eval_of_exact_hypotheses(self):
        manifest = self._path('empty.tsv')
        write_manifest(manifest, [LineSample(np.zeros((4, 12)), '')
                                  for _ in range(3)])
        code, stdout, _ = self.run_main('eval', '--checkpoint',
                                        self._blank_model(), '--manifest',
                                        manifest)
        self.assertEqual(code, RC_OK)
        self.assertEqual(stdout.splitlines()[0], 'CER: 0.00%')

    def test_eval_lists_samples_when_verbose(self):
        manifest = self._path('one.tsv')
        write_manifest(manifest, [LineSample(np.zeros((4, 12)), 'ab')])
        code, stdout, _ = self.run_main('eval', '-v', '--checkpoint',
                                        self._blank_model(), '--manifest',
                                        manifest)
        self.assertEqual(code, RC_OK)
        lines = stdout.splitlines()
        self.assertEqual(lines[0], 'CER: 100.00%')
        self.assertEqual(lines[2], 'images/one-00000.pgm\t100.00%\tab\t')

    def test_decode_of_empty_emission_model(self):
        write_manifest(self._path('x.tsv'),
                       [LineSample(np.zeros((4, 9)), ''),
                        LineSample(np.ones((12, 4)), '')])
        images = [self._path('images', 'x-0000{0}.pgm'.format(i))
                  for i in range(2)]
        code, stdout, _ = self.run_main('decode', '--checkpoint',
                                        self._blank_model(), *images)
        self.assertEqual(code, RC_OK)
        self.assertEqual(stdout, '\n\n')

    def test_vertical_decode(self):
        write_manifest(self._path('x.tsv'), [LineSample(np.ones((12, 4)),
                                                        '')])
        code, stdout, _ = self.run_main(
            'decode', '--direction', 'vertical', '--checkpoint',
            self._blank_model(), self._path('images', 'x-00000.pgm'))
        self.assertEqual((code, stdout), (RC_OK, '\n'))

    def test_charset_mismatch(self):
        charset = self._path('other.txt')
        write_charset(charset, Charset('abd'))
        write_manifest(self._path('m.tsv'), [LineSample(np.zeros((4, 8)),
                                                        'a')])
        code, _, stderr = self.run_main('eval', '--checkpoint',
                                        self._blank_model(), '--charset',
                                        charset, '--manifest',
                                        self._path('m.tsv'))
        self.assertEqual(code, RC_CONFIG_ERROR)
        self.assertIn('Charset mismatch with checkpoint at id 3', stderr)

    def test_model_and_charset_disagree(self):
        document = dict(TINY, synth=dict(TINY['synth'], charset_size=4))
        self.config = self._write_config(document, 'four.json')
        out = self._path('run')
        self.assertEqual(self.run_main('synth', '--out', out)[0], RC_OK)
        code, _, stderr = self.run_main('train', '--out', out)
        self.assertEqual(code, RC_CONFIG_ERROR)
        self.assertIn('vocab_size', stderr)

    def test_missing_inputs(self):
        code, _, stderr = self.run_main('eval', '--out', self._path('none'))
        self.assertEqual(code, RC_IO_ERROR)
        self.assertIn('checkpoint not found', stderr)
        code, _, _ = self.run_main('decode', '--checkpoint',
                                   self._blank_model(), self._path('no.png'))
        self.assertEqual(code, RC_IO_ERROR)
        code, _, _ = self.run_main('train', '--out', self._path('none'))
        self.assertEqual(code, RC_IO_ERROR)

    def test_empty_validation_manifest(self):
        out = self._path('run')
        self.run_main('synth', '--out', out)
        with io.open(os.path.join(out, 'val.tsv'), 'w', encoding='utf-8'):
            pass
        code, _, stderr = self.run_main('train', '--out', out)
        self.assertEqual(code, RC_IO_ERROR)
        self.assertIn('val.tsv holds no samples', stderr)
        self.assertFalse(os.path.exists(os.path.join(out, 'ckpt',
                                                     'metrics.tsv')))

    def test_debug_prints_traceback(self):
        code, _, stderr = self.run_main('eval', '--out', self._path('none'),
                                        '--debug')
        self.assertEqual(code, RC_IO_ERROR)
        self.assertIn('Full Traceback', stderr)
        self.assertIn('checkpoint not found', stderr)
        code, _, stderr = self.run_main('eval', '--out', self._path('none'))
        self.assertEqual(code, RC_IO_ERROR)
        self.assertNotIn('Full Traceback', stderr)

    def test_unknown_config_key(self):
        self.config = self._write_config({'train': {'momentum': 0.9}},
                                         'bad.json')
        code, _, stderr = self.run_main('verify', '--scale', 'small')
        self.assertEqual(code, RC_CONFIG_ERROR)
        self.assertIn("Unknown key 'momentum'", stderr)

    def test_invalid_arguments(self):
        self.assertEqual(self.run_main('train', 'extra')[0], RC_USAGE)
        self.assertEqual(self.run_main('decode')[0], RC_USAGE)
        self.assertEqual(self.run_main()[0], RC_USAGE)

    def test_verify_with_mutation_fails(self):
        code, stdout, stderr = self.run_main('verify', '--scale', 'small',
                                             '--mutate', '-o', 'json')
        self.assertEqual(code, RC_VERIFY_FAILED)
        report = json.loads(stdout)
        failed = [c['name'] for c in report['checks'] if not c['passed']]
        self.assertEqual(failed, ['lattice_gradient'])
        self.assertIn('Verification failed: lattice_gradient', stderr)


if __name__ == '__main__':
    unittest.main()
