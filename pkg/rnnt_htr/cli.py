#
# -*- coding: utf-8 -*-
#
# This file is part of rnnt-htr
#
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import logging
import os
import sys

from rnnt_htr import output
from rnnt_htr.config import find_and_read_configfile, get_options, \
    read_configfile
from rnnt_htr.constants import RC_OK, Direction
from rnnt_htr.data import LineSample, default_charset, load_charset, \
    load_manifest, makedirs, preprocess, read_image, split_samples, \
    synthesize_dataset, write_charset, write_manifest
from rnnt_htr.decode import decode_batch
from rnnt_htr.errors import ConfigError, DataError, NotFoundError, \
    PermissionError, RnntException, VerificationFailed
from rnnt_htr.model import load_checkpoint
from rnnt_htr.settings import Settings
from rnnt_htr.train import cer, evaluate, train_run
from rnnt_htr.verify import run_checks
from rnnt_htr.version import *

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'

_handler = None


def setup_logging(verbosity):
    '''One stderr handler on the package logger; -v INFO, -vv DEBUG.'''
    global _handler
    root = logging.getLogger('rnnt_htr')
    if _handler is not None:
        root.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(_handler)
    root.setLevel(max(logging.DEBUG, logging.WARNING - 10 * verbosity))


def _check_readable(path, what):
    if not os.path.exists(path):
        raise NotFoundError('{0} not found: {1}'.format(what, path))
    if not os.access(path, os.R_OK):
        raise PermissionError('cannot read {0} {1}'.format(what, path))


def _check_writable_dir(path):
    makedirs(path)
    if not os.access(path, os.W_OK):
        raise PermissionError('cannot write to {0}'.format(path))


def _apply_overrides(settings, options):
    settings.set('train', 'seed', options.seed)
    settings.set('synth', 'seed', options.seed)
    settings.set('synth', 'samples', options.samples)
    settings.set('paths', 'out_dir', options.out_dir)
    settings.set('paths', 'checkpoint', options.checkpoint)
    settings.set('paths', 'manifest', options.manifest)
    settings.set('paths', 'charset', options.charset)


def cmd_synth(settings, options):
    cfg = settings.synth_config()
    count = settings.synth['samples']
    if not isinstance(count, int) or isinstance(count, bool) or count < 0:
        raise ConfigError('synth.samples must be an integer >= 0, got '
                          '{0!r}'.format(count))
    out_dir = settings.paths['out_dir']
    paths = dict(charset=settings.charset_path(),
                 train_manifest=settings.train_manifest_path(),
                 val_manifest=settings.val_manifest_path())
    for directory in set([out_dir] + [os.path.dirname(p) or '.'
                                      for p in paths.values()]):
        _check_writable_dir(directory)

    charset = default_charset(cfg.charset_size)
    samples = synthesize_dataset(cfg, count, settings.synth['seed'],
                                 options.workers, charset)
    train, val = split_samples(samples)
    write_charset(paths['charset'], charset)
    write_manifest(paths['train_manifest'], train)
    write_manifest(paths['val_manifest'], val)
    report = {'command': 'synth', 'out_dir': out_dir, 'samples': count,
              'train': len(train), 'val': len(val)}
    report.update(paths)
    return report


def _record_dict(record):
    values = dict((k, float(v)) for k, v in record._asdict().items())
    values['epoch'] = int(record.epoch)
    return values


def cmd_train(settings, options):
    model_config = settings.model_config()
    train_config = settings.train_config()
    synth_config = settings.synth_config()
    decode_config = settings.decode_config()
    charset_path = settings.charset_path()
    manifests = (settings.train_manifest_path(),
                 settings.val_manifest_path())
    _check_readable(charset_path, 'charset')
    for path in manifests:
        _check_readable(path, 'manifest')
    _check_writable_dir(train_config.checkpoint_dir)

    charset = load_charset(charset_path)
    if len(charset) != model_config.vocab_size:
        raise ConfigError('{0} holds {1} symbols but model.vocab_size is '
                          '{2}'.format(charset_path, len(charset),
                                       model_config.vocab_size))
    train, val = [load_manifest(p, charset, options.workers)
                  for p in manifests]
    for path, samples in zip(manifests, (train, val)):
        if not samples:
            raise DataError('manifest {0} holds no samples'.format(path))
    result = train_run(model_config, train_config, train, val, charset,
                       synth_config, decode_config, options.workers)
    return {'command': 'train',
            'epochs': len(result.history),
            'best_epoch': result.best_epoch,
            'best_cer': result.best_cer,
            'checkpoint': settings.checkpoint_path(),
            'history': [_record_dict(r) for r in result.history]}


def _checkpoint_inputs(settings):
    path = settings.checkpoint_path()
    _check_readable(path, 'checkpoint')
    charset_path = settings.paths['charset']
    if charset_path:
        _check_readable(charset_path, 'charset')
    return path, charset_path


def _checked_checkpoint(path, charset_path):
    ckpt = load_checkpoint(path)
    if charset_path:
        load_charset(charset_path).check_matches(ckpt.vocab, 'checkpoint')
    return ckpt


def cmd_eval(settings, options):
    manifest = settings.eval_manifest_path()
    path, charset_path = _checkpoint_inputs(settings)
    _check_readable(manifest, 'manifest')

    ckpt = _checked_checkpoint(path, charset_path)
    samples = [preprocess(s, ckpt.config.input_height)
               for s in load_manifest(manifest, ckpt.vocab, options.workers)]
    value, hypotheses = evaluate(samples, ckpt.params, ckpt.config,
                                 ckpt.vocab, settings.decode_config(),
                                 options.workers)
    report = {'command': 'eval', 'checkpoint': path, 'manifest': manifest,
              'samples': len(samples), 'cer': value}
    if options.verbose:
        report['lines'] = [{'uri': s.uri, 'reference': s.transcript,
                            'hypothesis': h, 'cer': cer(h, s.transcript)}
                           for s, h in zip(samples, hypotheses)]
    return report


def cmd_decode(settings, options):
    path, charset_path = _checkpoint_inputs(settings)
    for image in options.operands:
        _check_readable(image, 'image')

    ckpt = _checked_checkpoint(path, charset_path)
    direction = Direction(options.direction)
    images = [preprocess(LineSample(read_image(p), '', direction, uri=p),
                         ckpt.config.input_height).image
              for p in options.operands]
    texts = decode_batch(images, ckpt.params, ckpt.config, ckpt.vocab,
                         settings.decode_config(), options.workers)
    return {'command': 'decode', 'checkpoint': path,
            'transcripts': [{'image': p, 'text': t}
                            for p, t in zip(options.operands, texts)]}


def cmd_verify(settings, options):
    seed = options.seed if options.seed is not None else 0
    return run_checks(options.scale, options.mutate, seed)


COMMAND_HANDLERS = {
    'synth': cmd_synth,
    'train': cmd_train,
    'eval': cmd_eval,
    'decode': cmd_decode,
    'verify': cmd_verify,
}


def main(argv=None):
    debug = False
    try:
        options = get_options(RNNT_NAME, VERSION, DESCRIPTION, argv)
        debug = options.debug
        setup_logging(options.verbose)
        if options.config:
            config = read_configfile(options.config)
        else:
            config = find_and_read_configfile()
        settings = Settings(config)
        _apply_overrides(settings, options)

        report = COMMAND_HANDLERS[str(options.command)](settings, options)
        print(output(report, options.output, options.pretty_print))
        if not report.get('passed', True):
            raise VerificationFailed(c['name'] for c in report['checks']
                                     if not c['passed'])

    except RnntException as e:
        e.exit_with_message(sys.stderr, debug)

    sys.exit(RC_OK)

if __name__ == '__main__':
    main()
