r'''
Parameter scans along segments of the :math:`(u, v)` plane, classifying both
critical orbits, to find maps with a prescribed critical behaviour (for
example :math:`v` attracted while :math:`-v` escapes).
'''
import logging
#
import numpy as np
#
from .basins import classify_critical_orbit
from .cosine_map import CosineMap
from .errors import InvalidParameterError
#
logger = logging.getLogger(__name__)
#
KINDS = ('attracted', 'escaping', 'bounded-unresolved')
#
class ScanPoint(object):
	r'''
	One parameter of a scan with the classification of both critical values.
	'''
	#
	def __init__(self, u, v, plus, minus):
		self.u = complex(u)
		self.v = complex(v)
		self.plus = plus
		self.minus = minus
	#
	@property
	def map(self):
		return CosineMap.from_normal_form(self.u, self.v)
	#
	def matches(self, plus=None, minus=None):
		return (plus is None or self.plus.kind == plus) and (minus is None or self.minus.kind == minus)
	#
	def separate_basins(self):
		r'''
		Both critical values attracted, to different cycles.
		'''
		#
		if not self.matches('attracted', 'attracted'):
			return False
		return not self.plus.cycle.contains_point(self.minus.cycle.points[0], tol=1e-6)
	#
	def as_record(self):
		return {
			'u': [self.u.real, self.u.imag],
			'v': [self.v.real, self.v.imag],
			'+v': self.plus.as_record(),
			'-v': self.minus.as_record(),
		}
	#
	def __repr__(self):
		return 'ScanPoint(u={}, v={}, +v {}, -v {})'.format(self.u, self.v, self.plus.kind, self.minus.kind)
	#
#
def scan_segment(start, end, n, max_iter=500):
	r'''
	Classify the critical orbits at ``n`` equally spaced parameters on the
	segment from ``start = (u0, v0)`` to ``end = (u1, v1)``, both included.
	'''
	#
	if n < 1:
		raise InvalidParameterError('A scan needs at least one sample (got {}).'.format(n))
	(u0, v0), (u1, v1) = start, end
	points = []
	for s in np.linspace(0, 1, n) if n > 1 else [0.0]:
		u = complex(u0) + s*(complex(u1) - complex(u0))
		v = complex(v0) + s*(complex(v1) - complex(v0))
		m = CosineMap.from_normal_form(u, v)
		points.append(ScanPoint(u, v, classify_critical_orbit(m, '+v', max_iter), classify_critical_orbit(m, '-v', max_iter)))
	logger.info('Scanned %d parameters from %s to %s', n, start, end)
	return points
#
def find_parameter(start, end, n, plus='attracted', minus='escaping', max_iter=500):
	r'''
	The first scanned parameter whose critical values behave as requested,
	or ``None``.
	'''
	#
	for kind in (plus, minus):
		if kind is not None and kind not in KINDS:
			raise InvalidParameterError('Unknown orbit kind {!r}; expected one of {}.'.format(kind, ', '.join(KINDS)))
	for point in scan_segment(start, end, n, max_iter):
		if point.matches(plus, minus):
			return point
	return None
#
def find_separate_basins(start, end, n, min_period=2, max_iter=500):
	r'''
	The first scanned parameter where :math:`v` is attracted to a fixed point
	and :math:`-v` to a different cycle of period at least ``min_period``;
	the orbit of the critical point over :math:`-v` is then confined to a
	renormalizable piece of the puzzle around the first basin.
	'''
	#
	for point in scan_segment(start, end, n, max_iter):
		if point.separate_basins() and point.plus.cycle.period == 1 and point.minus.cycle.period >= min_period:
			return point
	return None
#
