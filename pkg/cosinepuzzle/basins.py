r'''
Critical orbits, attracting cycles and the linearising coordinate of their
basins, with internal rays and equipotentials built from it.
'''
import cmath
import math
import logging
import warnings
#
import numpy as np
#
from .cosine_map import is_escaped, TWO_PI
from .rays import newton_periodic, classify_multiplier, CLASSIFY_BAND
from .geometry import Curve
from .errors import PreconditionError, InvalidParameterError, BranchObstructionError
#
logger = logging.getLogger(__name__)
#
ESCAPE_RE = 50.0
SUPERATTRACTING = 1e-8
CHART_RESIDUAL = 1e-9
CYCLE_TOL = 1e-10
MAX_PERIOD = 12
#
class Cycle(object):
	r'''
	A periodic cycle ``points`` of exact ``period`` with multiplier
	:math:`(f^p)'`. ``status`` is ``found`` or ``not-found`` (then
	``points`` is empty).
	'''
	#
	def __init__(self, points, multiplier, status='found'):
		self.points = [complex(z) for z in points]
		self.multiplier = complex(multiplier) if multiplier is not None else None
		self.status = status
	#
	@property
	def period(self):
		return len(self.points)
	#
	@property
	def classification(self):
		if self.multiplier is None:
			return None
		return classify_multiplier(self.multiplier)
	#
	def contains_point(self, z, tol=1e-8):
		return any(abs(z - w) < tol*max(1, abs(w)) for w in self.points)
	#
	def as_record(self):
		return {
			'status': self.status,
			'period': self.period,
			'points': [[z.real, z.imag] for z in self.points],
			'multiplier': None if self.multiplier is None else [self.multiplier.real, self.multiplier.imag],
			'class': self.classification,
		}
	#
	def __repr__(self):
		return 'Cycle(period={}, multiplier={}, status={})'.format(self.period, self.multiplier, self.status)
	#
#
def cycle_multiplier(m, z, p):
	multiplier = 1
	points = []
	for x in range(p):
		points.append(z)
		multiplier *= m.eval_deriv(z)
		z = m.eval(z)
	return points, multiplier
#
def find_cycle(m, seed, p, tol=CYCLE_TOL):
	r'''
	Periodic cycle through a solution of :math:`f^p(z) = z` found by Newton's
	method from ``seed``, reduced to its exact period.
	'''
	#
	if p < 1:
		raise InvalidParameterError('Period must be at least 1 (got {}).'.format(p))
	z, converged = newton_periodic(m, complex(seed), p, tol=tol)
	if not converged:
		logger.debug('No cycle of period %d near %s', p, seed)
		return Cycle([], None, status='not-found')
	for d in range(1, p):
		if p % d == 0:
			w = m.iterate(z, d)
			if not is_escaped(w) and abs(w - z) < 1e-8*max(1, abs(z)):
				p = d
				break
	points, multiplier = cycle_multiplier(m, z, p)
	return Cycle(points, multiplier)
#
class OrbitClass(object):
	r'''
	Classification of a critical orbit: ``kind`` is ``escaping``,
	``attracted`` or ``bounded-unresolved``.
	'''
	#
	def __init__(self, kind, orbit, cycle=None, escape_certificate=None, note=None):
		self.kind = kind
		self.orbit = orbit
		self.cycle = cycle
		self.escape_certificate = escape_certificate
		self.note = note
	#
	@property
	def multiplier(self):
		return None if self.cycle is None else self.cycle.multiplier
	#
	def as_record(self):
		return {
			'kind': self.kind,
			'cycle': None if self.cycle is None else self.cycle.as_record(),
			'escape_certificate': self.escape_certificate,
			'note': self.note,
			'orbit_length': len(self.orbit),
		}
	#
	def __repr__(self):
		return 'OrbitClass({}, cycle={}, certificate={})'.format(self.kind, self.cycle, self.escape_certificate)
	#
#
def classify_orbit(m, z, max_iter=500, max_period=MAX_PERIOD):
	r'''
	Classify the orbit of ``z``.

	Escaping: :math:`|\mathrm{Re}\, f^n(z)|` exceeds ``ESCAPE_RE`` and grows
	for three consecutive steps (or the orbit saturates). Attracted: the orbit
	settles on a cycle of period at most ``max_period`` whose multiplier has
	modulus below :math:`1 - 10^{-6}`. Everything else is left unresolved.
	'''
	#
	orbit = [complex(z)]
	growth = 0
	for n in range(max_iter):
		w = m.eval(orbit[-1])
		if is_escaped(w):
			return OrbitClass('escaping', orbit, escape_certificate=(n + 1, w.log_modulus), note='saturated')
		orbit.append(w)
		if abs(w.real) > ESCAPE_RE and abs(w.real) > abs(orbit[-2].real):
			growth += 1
			if growth >= 3:
				return OrbitClass('escaping', orbit, escape_certificate=(n + 1, abs(w.real)))
		else:
			growth = 0
	#
	last = orbit[-1]
	for p in range(1, max_period + 1):
		if len(orbit) <= p:
			break
		if abs(last - orbit[-1 - p]) < 1e-6*max(1, abs(last)):
			cycle = find_cycle(m, last, p)
			if cycle.status == 'found' and abs(cycle.multiplier) < 1 - CLASSIFY_BAND:
				if min(abs(last - c) for c in cycle.points) < 1e-4:
					return OrbitClass('attracted', orbit, cycle=cycle)
			break
	return OrbitClass('bounded-unresolved', orbit)
#
def classify_critical_orbit(m, which='+v', max_iter=500):
	r'''
	Classify the orbit of the critical value ``+v`` or ``-v``.
	'''
	#
	if max_iter < 1:
		raise InvalidParameterError('max_iter must be at least 1.')
	if which in ('+v', '+', 1):
		start = m.v
	elif which in ('-v', '-', -1):
		start = -m.v
	else:
		raise InvalidParameterError('which must be "+v" or "-v" (got {!r}).'.format(which))
	result = classify_orbit(m, start, max_iter)
	logger.info('Critical value %s: %s', which, result.kind)
	return result
#
class BasinChart(object):
	r'''
	Linearising coordinate :math:`\phi` of the basin of an attracting cycle,
	centred at the cycle point ``z_a``: Koenigs' coordinate
	(:math:`\phi\circ F = \lambda\phi`) when the multiplier is non-zero,
	Boettcher's (:math:`\phi\circ F = \phi^2`) when it is (numerically) zero.
	Here :math:`F = f^p`.

	The chart is used directly on the disc :math:`|z - z_a| < r`; beyond it
	points are reached through pullbacks of :math:`F`.
	'''
	#
	def __init__(self, m, cycle, index=0):
		if cycle.status != 'found' or not abs(cycle.multiplier) < 1 - CLASSIFY_BAND:
			raise PreconditionError('A basin chart needs an attracting cycle (got {}).'.format(cycle), status='not-attracting')
		self.m = m
		self.cycle = cycle
		self.index = index
		self.points = cycle.points[index:] + cycle.points[:index]
		self.z_a = self.points[0]
		self.period = cycle.period
		self.multiplier = cycle.multiplier
		self.mode = 'boettcher' if abs(self.multiplier) < SUPERATTRACTING else 'koenigs'
		if self.mode == 'boettcher':
			self.c = self._quadratic_coefficient()
		else:
			self.c = None
		self.radius = self._find_radius()
		self.chart_level = self._chart_level()
		# modulus of phi up to which the chart disc is used directly
		logger.info('Basin chart at %s: %s mode, radius %.3g', self.z_a, self.mode, self.radius)
	#
	def _step(self, h):
		r'''
		:math:`F(z_a + h) - z_a` evaluated without cancellation, using
		:math:`f(z + h) - f(z) = 2 f(z)\sinh^2(h/2) + f'(z)\sinh h`.
		'''
		#
		m = self.m
		for i in range(self.period):
			z = self.points[i]
			following = self.points[(i + 1) % self.period]
			if abs((z + h - m.u).real) > 700:
				return complex('inf')
			s = cmath.sinh(0.5*h)
			h = 2*following*s*s + m.eval_deriv(z)*cmath.sinh(h)
		return h
	#
	def _quadratic_coefficient(self):
		r'''
		:math:`F''(z_a)/2` by the chain rule, using :math:`f'' = f`.
		'''
		#
		first, second = 1, 0
		for i in range(self.period):
			image = self.points[(i + 1) % self.period]
			derivative = self.m.eval_deriv(self.points[i])
			second = image*first*first + derivative*second
			first = derivative*first
		return 0.5*second
	#
	def _local_coordinate(self, h, max_iter=None):
		if self.mode == 'koenigs':
			if max_iter is None:
				max_iter = min(200 + int(40/-math.log(abs(self.multiplier))), 100000)
			scale = 1
			for n in range(max_iter):
				if abs(h) < 1e-14:
					break
				h = self._step(h)
				scale *= self.multiplier
				if not cmath.isfinite(h):
					return None
			else:
				return None
			return h/scale
		#
		# Boettcher: phi = c h_0 prod (h_{k+1}/(c h_k^2))^(2^-(k+1))
		phi = self.c*h
		exponent = 1.0
		for n in range(max_iter or 200):
			if abs(self.c*h) < 1e-6:
				break
			following = self._step(h)
			if not cmath.isfinite(following) or following == 0:
				break
			exponent *= 0.5
			phi *= (following/(self.c*h*h))**exponent
			h = following
			if exponent < 1e-17:
				break
		return phi
	#
	def coordinate(self, z):
		r'''
		:math:`\phi(z)`. Raises :class:`PreconditionError` outside the chart
		disc.
		'''
		#
		h = complex(z) - self.z_a
		if abs(h) > self.radius:
			raise PreconditionError('Point {} lies outside the chart disc of radius {:.3g}.'.format(z, self.radius), status='outside-chart')
		return self._local_coordinate(h)
	#
	def conjugacy_residual(self, radius, n=32):
		worst = 0.0
		for k in range(n):
			h = radius*cmath.exp(TWO_PI*1j*k/n)
			phi = self._local_coordinate(h)
			image = self._local_coordinate(self._step(h))
			if phi is None or image is None:
				return float('inf')
			if self.mode == 'koenigs':
				worst = max(worst, abs(image - self.multiplier*phi))
			else:
				worst = max(worst, abs(image - phi*phi))
		return worst
	#
	def _find_radius(self):
		m = self.m
		critical = []
		for k in range(-3, 4):
			c = m.critical_point(k + int(round((self.z_a - m.u).imag/math.pi)))
			if abs(c - self.z_a) > 1e-6:
				critical.append(abs(c - self.z_a))
		radius = 0.5*min(critical)
		if self.mode == 'boettcher':
			radius = min(radius, 0.5/abs(self.c))
		for attempt in range(40):
			if self.conjugacy_residual(radius) < CHART_RESIDUAL*max(1, radius):
				return radius
			radius *= 0.5
		raise PreconditionError('No chart radius with conjugacy residual below {}.'.format(CHART_RESIDUAL), status='chart-failure')
	#
	def _chart_level(self):
		return 0.5*min(abs(self._local_coordinate(self.radius*cmath.exp(TWO_PI*1j*k/16))) for k in range(16))
	#
	def inverse(self, target, guess=None, tol=1e-13, max_iter=60):
		r'''
		Solve :math:`\phi(z) = ` ``target`` inside the chart disc by Newton's
		method with a finite-difference derivative.
		'''
		#
		if guess is None:
			h = target if self.mode == 'koenigs' else target/self.c
		else:
			h = complex(guess) - self.z_a
		for iteration in range(max_iter):
			value = self._local_coordinate(h)
			if value is None:
				return None
			error = value - target
			if abs(error) < tol*max(1, abs(target)):
				return self.z_a + h
			step = 1e-7*max(abs(h), 1e-8)
			shifted = self._local_coordinate(h + step)
			if shifted is None or shifted == value:
				return None
			derivative = (shifted - value)/step
			h = h - error/derivative
		return None
	#
	def as_record(self):
		return {
			'cycle': [[z.real, z.imag] for z in self.points],
			'period': self.period,
			'multiplier': [self.multiplier.real, self.multiplier.imag],
			'mode': self.mode,
			'radius': self.radius,
		}
	#
#
def build_chart(m, cycle, index=0):
	return BasinChart(m, cycle, index)
#
def basin_level(chart, z, max_iter=500):
	r'''
	:math:`|\phi(z)|` for any point of the immediate basin, found by pushing
	``z`` into the chart disc with the return map. ``None`` if the orbit
	does not get there.
	'''
	#
	w = complex(z)
	for n in range(max_iter):
		if abs(w - chart.z_a) < chart.radius:
			value = abs(chart.coordinate(w))
			if chart.mode == 'koenigs':
				return value/abs(chart.multiplier)**n
			return value**(0.5**n)
		w = chart.m.iterate(w, chart.period)
		if is_escaped(w):
			return None
	return None
#
def _return_power(chart, n):
	return chart.period*n
#
def _solve_pullback(chart, y, z, n, ambiguity=1e-9):
	r'''
	The solution of :math:`F^n(w) = y` continued from ``z``: ``y`` is pulled
	back one step of :math:`f` at a time, each time onto the preimage
	nearest the matching point of the forward orbit of ``z``. Returns
	``None`` if that orbit escapes; raises :class:`BranchObstructionError`
	when the two nearest preimages are equally close (a critical point of
	:math:`F^n` on the curve).
	'''
	#
	m = chart.m
	orbit = [complex(z)]
	for x in range(_return_power(chart, n)):
		image = m.eval(orbit[-1])
		if is_escaped(image):
			return None
		orbit.append(image)
	w = complex(y)
	for guide in reversed(orbit[:-1]):
		best, second = m.nearest_preimages(w, guide)
		near, far = abs(best - guide), abs(second - guide)
		if far - near <= ambiguity*max(1, far):
			raise BranchObstructionError('A critical point of the return map lies on the curve near {}.'.format(guide), point=guide)
		w = best
	return w
#
class BasinCurve(Curve):
	r'''
	An internal ray or equipotential; ``status`` is ``complete`` or
	``truncated`` (the continuation stopped early).
	'''
	#
	def __init__(self, points, tag, source, closed, status, levels):
		Curve.__init__(self, points, tag, source, closed)
		self.status = status
		self.levels = np.asarray(levels)
	#
#
def _level_map(chart, value, n):
	r'''
	:math:`\phi`-value of :math:`F^n(z)` when :math:`\phi(z)` = ``value``.
	'''
	#
	if chart.mode == 'koenigs':
		return value*chart.multiplier**n
	return value**(2**n)
#
def _depth_for(chart, value):
	n = 0
	level = chart.chart_level
	while abs(_level_map(chart, value, n)) > level:
		n += 1
		if n > 200:
			raise PreconditionError('Level {} cannot be reached from the chart.'.format(abs(value)), status='level-out-of-range')
	return n
#
def _chart_point(chart, value, previous):
	r'''
	The basin point with coordinate ``value``, continued from ``previous``.
	'''
	#
	n = _depth_for(chart, value)
	inner = _level_map(chart, value, n)
	guess = None
	if previous is not None:
		guess = chart.m.iterate(previous, _return_power(chart, n))
		if is_escaped(guess) or not abs(guess - chart.z_a) < chart.radius:
			guess = None
	y = chart.inverse(inner, guess=guess)
	if y is None:
		return None
	if n == 0:
		return y
	start = previous if previous is not None else y
	return _solve_pullback(chart, y, start, n)
#
def internal_ray(chart, theta, n_samples=200, inner=None, outer=None):
	r'''
	The internal ray of angle ``theta`` (in turns): the points with
	:math:`\phi = \rho e^{2\pi i\theta}` for ``inner`` :math:`\le \rho \le`
	``outer``, geometrically spaced and ordered outwards.
	'''
	#
	if not 0 <= theta < 1:
		raise InvalidParameterError('Angle must lie in [0, 1) (got {}).'.format(theta))
	level = chart.chart_level
	if inner is None:
		inner = 0.05*level
	if outer is None:
		outer = (1 - 1e-3) if chart.mode == 'boettcher' else 1e4*level
	direction = cmath.exp(TWO_PI*1j*theta)
	levels = inner*(outer/inner)**np.linspace(0, 1, n_samples)
	points = [chart.z_a]
	used = [0.0]
	status = 'complete'
	previous = None
	for rho in levels:
		z = _chart_point(chart, rho*direction, previous)
		if z is None:
			status = 'truncated'
			warnings.warn('Internal ray {} truncated at level {:.4g}.'.format(theta, rho))
			break
		points.append(z)
		used.append(rho)
		previous = z
	return BasinCurve(points, 'internal-ray', theta, False, status, used)
#
def equipotential(chart, level, n_samples=400, start=0.0):
	r'''
	The closed curve :math:`|\phi| = ` ``level`` around the cycle point,
	sampled at the angles ``start + k/n_samples``.
	'''
	#
	if not level > 0:
		raise InvalidParameterError('Equipotential level must be positive (got {}).'.format(level))
	if chart.mode == 'boettcher' and level >= 1:
		raise InvalidParameterError('Boettcher levels must lie below 1 (got {}).'.format(level))
	#
	# reach the starting point radially, then go around
	radial = internal_ray(chart, start % 1, n_samples=40, outer=level)
	if radial.status != 'complete':
		return BasinCurve(radial.points[1:], 'equipotential', level, False, 'truncated', [])
	previous = radial.points[-1]
	points = [previous]
	angles = [start]
	status = 'complete'
	for k in range(1, n_samples):
		theta = start + k/n_samples
		z = _chart_point(chart, level*cmath.exp(TWO_PI*1j*theta), previous)
		if z is None:
			status = 'truncated'
			warnings.warn('Equipotential {} truncated at angle {:.4g}.'.format(level, theta))
			break
		points.append(z)
		angles.append(theta)
		previous = z
	return BasinCurve(points, 'equipotential', level, status == 'complete', status, angles)
#
def land_internal_ray(chart, theta, period=None):
	r'''
	Landing point of a periodic internal ray: Newton's method for the
	periodic point of :math:`f` at the outer end of the traced ray. In
	Boettcher mode ``period`` is the period of ``theta`` under doubling; in
	Koenigs mode the ray is invariant under :math:`F` and ``period`` is 1.
	'''
	#
	if period is None:
		period = 1
		if chart.mode == 'boettcher':
			x = (2*theta) % 1
			while abs(x - theta) > 1e-12 and period < 64:
				x = (2*x) % 1
				period += 1
	ray = internal_ray(chart, theta)
	z, converged = newton_periodic(chart.m, ray.points[-1], chart.period*period)
	status = 'landed' if converged and abs(z - ray.points[-1]) < 5e-2 else 'no-landing-detected'
	points, multiplier = cycle_multiplier(chart.m, z, chart.period*period)
	logger.info('Internal ray %s: %s at %s', theta, status, z)
	return z, multiplier, status
#
