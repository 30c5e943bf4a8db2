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
import optparse
import os

import yaml

from rnnt_htr.constants import COMMANDS, CMD_DECODE, Direction
from rnnt_htr.data.files import open_text
from rnnt_htr.defaults import *
from rnnt_htr.errors import ConfigError, InvocationError, PermissionError

logger = logging.getLogger(__name__)

VERIFY_SCALES = ('small', 'default', 'large')


class _OptionParser(optparse.OptionParser):

    def error(self, msg):
        raise InvocationError('{0}: {1}'.format(self.prog, msg))


def make_run_options_group(parser, defaults={}):
    ret = optparse.OptionGroup(parser, 'Run options',
                               'Configure where {0} reads and writes'.format(
                                   parser.prog))
    ret.add_option('--config', dest='config',
                   default=defaults.get('config'),
                   help='the RunConfig JSON document [searched: {0}]'.format(
                       CONFIG_FILE_NAME))
    ret.add_option('--seed', dest='seed', type='int',
                   default=defaults.get('seed'),
                   help='seed for synthesis and training [from config]')
    ret.add_option('--workers', dest='workers', type='int',
                   default=defaults.get('workers', OPT_WORKERS),
                   help='threads for data loading, gradients and decoding '
                        '[%default]')
    ret.add_option('--out', dest='out_dir',
                   default=defaults.get('out_dir'),
                   help='the run directory for data and checkpoints '
                        '[from config]')
    ret.add_option('-v', '--verbose', dest='verbose', action='count',
                   default=defaults.get('verbose', OPT_VERBOSITY),
                   help='log progress to stderr; twice for debug output')
    ret.add_option('--debug', dest='debug', action='store_true',
                   default=defaults.get('debug', False),
                   help='print the traceback along with an error message')
    return ret


def make_output_options_group(parser, defaults={}):
    ret = optparse.OptionGroup(parser, 'Output options',
                               'Configure the way {0} prints reports'.format(
                                   parser.prog))
    ret.add_option('-o', '--output', dest='output', type='choice',
                   choices=OPT_OUTPUT_FORMATS,
                   default=defaults.get('output', OPT_OUTPUT),
                   help='report format (text, json or yaml) [%default]')
    ret.add_option('-y', '--pretty-print', dest='pretty_print',
                   action='store_true',
                   default=defaults.get('pretty_print', OPT_PRETTY_PRINT),
                   help='try to make the output prettier [%default]')
    return ret


def make_command_options_group(parser, defaults={}):
    ret = optparse.OptionGroup(parser, 'Command options',
                               'Inputs of the individual commands')
    ret.add_option('--checkpoint', dest='checkpoint',
                   default=defaults.get('checkpoint'),
                   help='checkpoint for eval and decode [best.ckpt of the '
                        'run]')
    ret.add_option('--manifest', dest='manifest',
                   default=defaults.get('manifest'),
                   help='manifest to evaluate [the validation manifest]')
    ret.add_option('--charset', dest='charset',
                   default=defaults.get('charset'),
                   help='charset file [charset.txt of the run]')
    ret.add_option('--direction', dest='direction', type='choice',
                   choices=[d.value for d in Direction],
                   default=defaults.get('direction', OPT_DECODE_DIRECTION),
                   help='reading direction of the images to decode '
                        '[%default]')
    ret.add_option('--scale', dest='scale', type='choice',
                   choices=VERIFY_SCALES,
                   default=defaults.get('scale', OPT_VERIFY_SCALE),
                   help='number of random trials for verify [%default]')
    ret.add_option('--mutate', dest='mutate', action='store_true',
                   default=False,
                   help='perturb the lattice gradient; verify must fail')
    ret.add_option('--samples', dest='samples', type='int',
                   default=defaults.get('samples'),
                   help='number of lines synth renders [from config]')
    return ret


def make_parser_and_checker(name, version, description, add_options_cb=None,
                            defaults={}):

    parser = _OptionParser(version=version)
    parser.prog = name
    parser.version = version
    parser.description = description.capitalize()
    parser.usage = '%prog [options] COMMAND [IMAGE ...]'
    parser.epilog = 'COMMAND is one of {0}; decode takes one or more ' \
                    'images.'.format(', '.join(sorted(COMMANDS)))

    run_group = make_run_options_group(parser, defaults)
    parser.add_option_group(run_group)

    output_group = make_output_options_group(parser, defaults)
    parser.add_option_group(output_group)

    command_group = make_command_options_group(parser, defaults)
    parser.add_option_group(command_group)

    if callable(add_options_cb):
        add_options_cb(parser, defaults)

    def option_checker(options, args):
        if len(args) == 0:
            parser.error('You need to specify a command ({0})'.format(
                ', '.join(sorted(COMMANDS))))
        elif args[0] not in COMMANDS:
            parser.error('Unknown command {0!r}'.format(args[0]))
        options.command = COMMANDS[args[0]]
        options.operands = args[1:]
        if options.command is CMD_DECODE and not options.operands:
            parser.error('Command decode needs at least one IMAGE')
        elif options.command is not CMD_DECODE and options.operands:
            parser.error('Command {0} takes no arguments'.format(
                options.command))
        elif options.workers < 1:
            parser.error('--workers must be at least 1')
        elif options.seed is not None and options.seed < 0:
            parser.error('--seed must not be negative')
        elif options.samples is not None and options.samples < 0:
            parser.error('--samples must not be negative')

    return parser, option_checker


def get_options(name, version, description, argv=None, add_options_cb=None,
                defaults={}):

    parser, checker = make_parser_and_checker(name, version, description,
                                              add_options_cb,
                                              defaults=defaults)
    options, args = parser.parse_args(argv)
    checker(options, args)
    return options


def read_configfile(path):
    '''
    A RunConfig document. JSON is read with the YAML safe loader, so whole
    lines starting with # are comments.
    '''
    with open_text(path) as fp:
        text = fp.read()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError('{0}: {1}'.format(path, e))
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError('{0}: expected a mapping of sections, got '
                          '{1}'.format(path, type(data).__name__))
    logger.debug('read configuration from %s', path)
    return data


def find_and_read_configfile(filename=CONFIG_FILE_NAME,
                             dirs=CONFIG_FILE_SEARCH_PATH):
    for d in dirs:
        f = os.path.join(d, filename)
        if os.access(f, os.R_OK):
            logger.info('Using config file: %s', f)
            return read_configfile(f)
        elif os.path.isfile(f):
            raise PermissionError('cannot read %s' % f)
    return {}
