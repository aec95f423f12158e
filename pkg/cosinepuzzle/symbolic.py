r'''
Eventually periodic addresses over the alphabet :math:`\{0,1\}\times\mathbb{Z}`,
with the shift, the order in which rays stack vertically, and the
:math:`2^{-k}` metric.
'''
import re
import math
import functools
from fractions import Fraction
#
from .cosine_map import StripIndex
from .errors import InvalidParameterError
#
_ENTRY_PATTERN = re.compile(r'\(\s*([01])\s*,\s*(-?\d+)\s*\)')
_ADDRESS_PATTERN = re.compile(r'^\s*\[(.*)\]\s*;\s*\[(.*)\]\s*$')
#
def _as_entry(entry):
	j, k = entry
	if j not in (0, 1):
		raise InvalidParameterError('Address entry must have j in {{0, 1}} (got {}).'.format(entry))
	return StripIndex(int(j), int(k))
#
def _primitive_root(period):
	n = len(period)
	for d in range(1, n + 1):
		if n % d == 0 and period[:d]*(n//d) == period:
			return period[:d]
	return period
#
def entry_key(entry):
	r'''
	Sort key realising the entry order: every left-half-plane entry
	``(1, k)`` precedes every right one ``(0, k)``, and within one half plane
	entries compare by :math:`(-1)^j k`.
	'''
	#
	j, k = entry
	return (-j, k if j == 0 else -k)
#
def entry_less(e1, e2):
	return entry_key(e1) < entry_key(e2)
#
@functools.total_ordering
class Address(object):
	r'''
	The sequence ``preperiod`` followed by ``period`` repeated forever.

	Addresses are kept canonical: the period is reduced to its primitive root
	and the preperiod is as short as possible, so two addresses are equal
	exactly when their representations are.
	::

		>>> Address([(1, 2)], [(0, 0), (0, 0)])
		Address.parse('[(1,2)];[(0,0)]')
	'''
	#
	__slots__ = ('preperiod', 'period')
	#
	def __init__(self, preperiod, period):
		preperiod = [_as_entry(e) for e in preperiod]
		period = [_as_entry(e) for e in period]
		if len(period) == 0:
			raise InvalidParameterError('The period of an address must be nonempty.')
		#
		period = _primitive_root(period)
		while len(preperiod) > 0 and preperiod[-1] == period[-1]:
			preperiod.pop()
			period = period[-1:] + period[:-1]
		#
		object.__setattr__(self, 'preperiod', tuple(preperiod))
		object.__setattr__(self, 'period', tuple(period))
	#
	def __setattr__(self, name, value):
		raise AttributeError('Address is immutable.')
	#
	@classmethod
	def periodic(cls, period):
		return cls([], period)
	#
	@classmethod
	def parse(cls, text):
		r'''
		Read the text form ``[(j,k) ...];[(j,k) ...]`` (preperiod; period).
		'''
		#
		match = _ADDRESS_PATTERN.match(text)
		if match is None:
			raise InvalidParameterError('Cannot parse address {!r}; expected "[(j,k) ...];[(j,k) ...]".'.format(text))
		parts = []
		for body in match.groups():
			entries = [(int(j), int(k)) for j, k in _ENTRY_PATTERN.findall(body)]
			leftover = _ENTRY_PATTERN.sub('', body).replace(',', '').strip()
			if leftover:
				raise InvalidParameterError('Unexpected text {!r} in address {!r}.'.format(leftover, text))
			parts.append(entries)
		return cls(parts[0], parts[1])
	#
	def format(self):
		def block(entries):
			return ' '.join('({},{})'.format(j, k) for j, k in entries)
		return '[{}];[{}]'.format(block(self.preperiod), block(self.period))
	#
	__str__ = format
	#
	def __repr__(self):
		return 'Address.parse({!r})'.format(self.format())
	#
	@property
	def period_length(self):
		return len(self.period)
	#
	@property
	def preperiod_length(self):
		return len(self.preperiod)
	#
	def is_periodic(self):
		return len(self.preperiod) == 0
	#
	def entry(self, n):
		if n < 0:
			raise InvalidParameterError('Address index must be non-negative (got {}).'.format(n))
		if n < len(self.preperiod):
			return self.preperiod[n]
		return self.period[(n - len(self.preperiod)) % len(self.period)]
	#
	def prefix(self, n):
		return [self.entry(i) for i in range(n)]
	#
	def shift(self, n=1):
		r'''
		Drop the first ``n`` entries.
		'''
		#
		if n <= len(self.preperiod):
			return Address(self.preperiod[n:], self.period)
		offset = (n - len(self.preperiod)) % len(self.period)
		return Address([], self.period[offset:] + self.period[:offset])
	#
	def prepend(self, *entries):
		r'''
		The address ``(e_0, ..., e_r, s)``.
		'''
		#
		return Address(list(entries) + list(self.preperiod), self.period)
	#
	def shift_k(self, delta, first_only=False):
		r'''
		Add ``delta`` to the vertical index of every entry, or only of the
		first one. The first-entry version corresponds to translating the ray
		by :math:`2\pi i\,\delta`.
		'''
		#
		if first_only:
			first = self.entry(0)
			return self.shift().prepend(StripIndex(first.j, first.k + delta))
		return Address([(j, k + delta) for j, k in self.preperiod], [(j, k + delta) for j, k in self.period])
	#
	def comparison_length(self, other):
		r'''
		Number of leading entries that decides equality with ``other``.
		'''
		#
		p = len(self.period)*len(other.period)//math.gcd(len(self.period), len(other.period))
		return max(len(self.preperiod), len(other.preperiod)) + p
	#
	def first_difference(self, other):
		r'''
		Smallest index where the two addresses differ, or ``None``.
		'''
		#
		for n in range(self.comparison_length(other)):
			if self.entry(n) != other.entry(n):
				return n
		return None
	#
	def __eq__(self, other):
		if not isinstance(other, Address):
			return NotImplemented
		return self.preperiod == other.preperiod and self.period == other.period
	#
	def __ne__(self, other):
		result = self.__eq__(other)
		if result is NotImplemented:
			return result
		return not result
	#
	def __lt__(self, other):
		if not isinstance(other, Address):
			return NotImplemented
		return addr_compare(self, other) < 0
	#
	def __hash__(self):
		return hash((self.preperiod, self.period))
	#
#
def parse_address(text):
	return Address.parse(text)
#
def format_address(address):
	return address.format()
#
def addr_compare(s, t):
	r'''
	Lexicographic comparison under :func:`entry_less`; returns -1, 0 or 1.
	'''
	#
	n = s.first_difference(t)
	if n is None:
		return 0
	return -1 if entry_less(s.entry(n), t.entry(n)) else 1
#
def addr_distance(s, t):
	r'''
	:math:`2^{-k}` for the first index ``k`` where ``s`` and ``t`` differ, as
	an exact :class:`fractions.Fraction`; 0 for equal addresses.
	'''
	#
	n = s.first_difference(t)
	if n is None:
		return Fraction(0)
	return Fraction(1, 2**n)
#
