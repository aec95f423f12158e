r'''
Plain ``key = value`` configuration files for the command line.

Keys are the long option names without the leading dashes, with ``-`` or
``_`` between words (``max_iter``, ``viewport``, ...). Blank lines and
everything after ``#`` are ignored. Values from the file become the
defaults of the sub-command, so flags given on the command line win.
'''
import logging
#
from .errors import InvalidParameterError
#
logger = logging.getLogger(__name__)
#
TRUE_WORDS = ('1', 'true', 'yes', 'on')
FALSE_WORDS = ('0', 'false', 'no', 'off')
#
def parse_config(text, source='<config>'):
	r'''
	The ``key -> value`` dictionary of a configuration text; later keys
	override earlier ones.
	'''
	#
	values = {}
	for number, line in enumerate(text.splitlines(), 1):
		line = line.split('#', 1)[0].strip()
		if not line:
			continue
		if '=' not in line:
			raise InvalidParameterError('{}:{}: expected "key = value", got {!r}.'.format(source, number, line))
		key, value = line.split('=', 1)
		key = key.strip().lower().replace('-', '_')
		if not key:
			raise InvalidParameterError('{}:{}: empty key.'.format(source, number))
		values[key] = value.strip()
	return values
#
def load_config(filename):
	with open(filename) as f:
		values = parse_config(f.read(), filename)
	logger.info('Read %d settings from %s', len(values), filename)
	return values
#
def _coerce(action, value):
	if action.nargs == 0:
		# store_true / store_false flags
		word = value.lower()
		if word in TRUE_WORDS:
			return action.const
		if word in FALSE_WORDS:
			return action.default
		raise InvalidParameterError('Setting {} expects a boolean (got {!r}).'.format(action.dest, value))
	return value
	# strings are converted by the action's type when argparse applies the default
#
def apply_config(parser, values):
	r'''
	Install ``values`` as defaults of ``parser`` (an ``argparse`` parser or
	sub-parser). Keys that are not options of the parser raise
	:class:`InvalidParameterError`.
	'''
	#
	actions = dict((action.dest.lower(), action) for action in parser._actions if action.option_strings)
	# keys are lower case, dests keep their case (``M``)
	defaults = {}
	for key, value in values.items():
		if key not in actions or key in ('config', 'help'):
			raise InvalidParameterError('Unknown setting {!r} for this command.'.format(key))
		action = actions[key]
		defaults[action.dest] = _coerce(action, value)
	parser.set_defaults(**defaults)
	return defaults
#
