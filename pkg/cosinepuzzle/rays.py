r'''
Dynamic rays: seeding from the asymptotic formula, tracing by pulling back
through the inverse branches named by the address, and landing points of
periodic rays.

A ray :math:`g_s` is parameterised by its potential ``t`` and satisfies
:math:`f(g_s(t)) = g_{\sigma s}(F(t))` with :math:`F(t) = e^t - 1`.
'''
import cmath
import math
import logging
import warnings
#
import numpy as np
#
from .cosine_map import StripIndex, is_escaped, TWO_PI
from .symbolic import Address
from .geometry import Curve
from .errors import PreconditionError, InvalidParameterError, NearCriticalError, SlitBoundaryError, InconsistencyError
#
logger = logging.getLogger(__name__)
#
T_SEED = 25.0
# the asymptotic error e^(-T) is below every sample tolerance from here on
SEED_FLOOR = 5.0
MAX_DEPTH = 200
OVERFLOW_T = 700.0
ANCHOR_RE = 25.0
#
TRACE_TOL = 1e-8
LANDING_TOL = 1e-10
CLASSIFY_BAND = 1e-6
MAX_ROOT_ORDER = 12
#
def escape_rate(t):
	r'''
	The model map :math:`F(t) = e^t - 1`.
	'''
	#
	return math.expm1(t)
#
def escape_rate_inverse(t):
	return math.log1p(t)
#
def potential_levels(t, limit=MAX_DEPTH):
	r'''
	The list :math:`[t, F(t), F^2(t), \ldots]`, stopping before the values
	leave the range where :math:`F` can be evaluated.
	'''
	#
	levels = [t]
	while len(levels) <= limit and levels[-1] <= OVERFLOW_T:
		levels.append(escape_rate(levels[-1]))
	return levels
#
def choose_depth(t, depth):
	r'''
	Number of pullbacks used for the sample at potential ``t``: at least
	``depth``, at least enough for the seed potential to reach ``T_SEED``, and
	never so many that the seed potential overflows.
	'''
	#
	levels = potential_levels(t)
	n_max = len(levels) - 1
	n_min = next((n for n, T in enumerate(levels) if T >= T_SEED), n_max)
	n = min(max(depth, n_min), n_max)
	if levels[n] < T_SEED:
		warnings.warn('Potential {:.3g} needs more than {} pullbacks; seeding at {:.3g}.'.format(t, MAX_DEPTH, levels[n]))
	return n, levels[n]
#
def asymptotic_seed(m, s, t):
	r'''
	Point of :math:`g_s` at potential ``t`` from the asymptotic formula
	:math:`u + (-1)^{j_0}(t - \mathrm{Log}(v/2) + i\pi j_1) + 2\pi i k_0`, where
	``(j0, k0)`` and ``(j1, k1)`` are the first two entries. For the cosh map
	and first entries ``(0, 0), (0, 0)`` this is ``t + log 2``.

	Refuses potentials below ``SEED_FLOOR``; use :func:`trace_ray` there.
	'''
	#
	if t < SEED_FLOOR:
		raise PreconditionError('Potential {} is below the seeding threshold {}; trace the ray instead.'.format(t, SEED_FLOOR), status='seed-threshold')
	j0, k0 = s.entry(0)
	j1 = s.entry(1).j
	offset = t - cmath.log(0.5*m.v) + math.pi*j1*1j
	if j0 == 1:
		offset = -offset
	return m.u + offset + TWO_PI*k0*1j
#
def pull_back(m, w, entries):
	r'''
	Apply the inverse branches for ``entries`` to ``w``, last entry first, so
	that the result has itinerary ``entries`` followed by that of ``w``.
	'''
	#
	z = w
	for entry in reversed(entries):
		z = m.inverse_branch(z, entry)
	return z
#
def ray_point(m, s, t, depth=1):
	r'''
	:math:`g_s(t)` and the number of pullbacks used.
	'''
	#
	n, T = choose_depth(t, depth)
	z = asymptotic_seed(m, s.shift(n), max(T, SEED_FLOOR))
	return pull_back(m, z, s.prefix(n)), n
#
class Ray(object):
	r'''
	A traced dynamic ray: samples ``z`` at potentials ``t`` (decreasing), the
	number of pullbacks used per sample, and optionally a crash record
	``(t, w)`` where the tracing met a critical value or the slit, and a :class:`Landing`.
	'''
	#
	def __init__(self, address, t, z, depths, crash=None, landing=None):
		self.address = address
		self.t = np.asarray(t, dtype=float)
		self.z = np.asarray(z, dtype=complex)
		self.depths = np.asarray(depths, dtype=int)
		self.crash = crash
		self.landing = landing
	#
	@property
	def t_min(self):
		return float(self.t[-1]) if len(self.t) > 0 else None
	#
	@property
	def status(self):
		if self.crash is not None:
			return 'crashed'
		if self.landing is not None:
			return self.landing.status
		return 'traced'
	#
	def curve(self):
		return Curve(self.z, 'dynamic-ray', source=self.address.format())
	#
	def translated(self, offset):
		return Ray(self.address, self.t, self.z + offset, self.depths, self.crash, self.landing)
	#
	def as_record(self):
		return {
			'address': self.address.format(),
			'samples': [[float(t), float(z.real), float(z.imag)] for t, z in zip(self.t, self.z)],
			'depths': [int(n) for n in self.depths],
			'crash': None if self.crash is None else {'t': float(self.crash[0]), 're': float(self.crash[1].real), 'im': float(self.crash[1].imag)},
			'landing': None if self.landing is None else self.landing.as_record(),
		}
	#
	def __repr__(self):
		return 'Ray({}, n={}, t_min={}, status={})'.format(self.address, len(self.t), self.t_min, self.status)
	#
#
def potential_grid(t_lo, t_hi, n_samples):
	r'''
	Decreasing potentials from ``t_hi`` to ``t_lo``, geometrically spaced so
	that samples crowd towards the landing end.
	'''
	#
	if not 0 < t_lo < t_hi:
		raise InvalidParameterError('Need 0 < t_lo < t_hi (got {}, {}).'.format(t_lo, t_hi))
	return t_hi*(t_lo/t_hi)**np.linspace(0, 1, n_samples)
#
def trace_ray(m, s, t_lo, t_hi, depth=1, n_samples=200):
	r'''
	Trace :math:`g_s` on ``[t_lo, t_hi]``. Tracing stops at the first sample
	whose pullback meets a critical value or the slit; the ray then carries
	a crash record ``(t, w)`` instead of raising, ``w`` being the value the
	inverse branch refused.
	'''
	#
	if depth < 0:
		raise InvalidParameterError('depth must be non-negative (got {}).'.format(depth))
	if isinstance(s, str):
		s = Address.parse(s)
	ts, zs, depths = [], [], []
	crash = None
	for t in potential_grid(t_lo, t_hi, n_samples):
		try:
			z, n = ray_point(m, s, t, depth)
		except (NearCriticalError, SlitBoundaryError) as error:
			crash = (float(t), complex(error.details.get('point', complex('nan'))))
			logger.info('Ray %s crashes at t=%.6g: %s', s, t, error)
			break
		ts.append(t)
		zs.append(z)
		depths.append(n)
	logger.debug('Traced %s with %d samples (depth %d..%d)', s, len(ts), min(depths) if depths else 0, max(depths) if depths else 0)
	return Ray(s, ts, zs, depths, crash=crash)
#
def functional_equation_residual(m, ray, depth=1):
	r'''
	Largest :math:`|f(g_s(t)) - g_{\sigma s}(F(t))|` over the ray's samples,
	where the right-hand side is traced independently.
	'''
	#
	shifted = ray.address.shift()
	worst = 0.0
	for t, z in zip(ray.t, ray.z):
		image = m.eval(z)
		if is_escaped(image):
			continue
		target, n = ray_point(m, shifted, escape_rate(t), depth)
		worst = max(worst, abs(image - target))
	return worst
#
def _orbit_multiplier(m, z, p):
	multiplier = 1
	for x in range(p):
		multiplier *= m.eval_deriv(z)
		z = m.eval(z)
	return z, multiplier
#
def classify_multiplier(multiplier, band=CLASSIFY_BAND, max_order=MAX_ROOT_ORDER):
	r'''
	One of ``superattracting``, ``attracting``, ``repelling``, ``parabolic``
	(close to a root of unity of order at most ``max_order``) or
	``indifferent``.
	'''
	#
	modulus = abs(multiplier)
	if modulus < 1e-8:
		return 'superattracting'
	if modulus < 1 - band:
		return 'attracting'
	if modulus > 1 + band:
		return 'repelling'
	for q in range(1, max_order + 1):
		angle = cmath.phase(multiplier)*q/TWO_PI
		if abs(angle - round(angle)) < band*q:
			return 'parabolic'
	return 'indifferent'
#
class Landing(object):
	r'''
	Result of :func:`land_ray`. ``status`` is ``landed`` or
	``no-landing-detected``; in the latter case ``point`` is the best estimate.
	'''
	#
	def __init__(self, point, multiplier, classification, status, residual, approach):
		self.point = point
		self.multiplier = multiplier
		self.classification = classification
		self.status = status
		self.residual = residual
		self.approach = np.asarray(approach, dtype=complex)
	#
	def as_record(self):
		return {
			're': float(self.point.real),
			'im': float(self.point.imag),
			'multiplier_re': float(self.multiplier.real),
			'multiplier_im': float(self.multiplier.imag),
			'class': self.classification,
			'status': self.status,
			'residual': float(self.residual),
		}
	#
	def __repr__(self):
		return 'Landing({:.10g}, multiplier={:.6g}, {}, {})'.format(self.point, self.multiplier, self.classification, self.status)
	#
#
def aitken(z0, z1, z2):
	denominator = z2 - 2*z1 + z0
	if abs(denominator) < 1e-300:
		return z2
	return z2 - (z2 - z1)**2/denominator
#
def newton_periodic(m, z, p, max_iter=50, tol=LANDING_TOL):
	r'''
	Damped Newton iteration for :math:`f^p(z) = z`. Returns the final point
	and whether the residual dropped below ``tol``.
	'''
	#
	for iteration in range(max_iter):
		image, multiplier = _orbit_multiplier(m, z, p)
		if is_escaped(image) or is_escaped(multiplier):
			return z, False
		residual = image - z
		if abs(residual) < tol:
			return z, True
		derivative = multiplier - 1
		if abs(derivative) < 1e-300:
			return z, False
		step = residual/derivative
		damping = 1.0
		while damping > 1e-4:
			candidate = z - damping*step
			candidate_image, x = _orbit_multiplier(m, candidate, p)
			if not is_escaped(candidate_image) and abs(candidate_image - candidate) < abs(residual):
				break
			damping *= 0.5
		z = candidate
	image, x = _orbit_multiplier(m, z, p)
	return z, (not is_escaped(image)) and abs(image - z) < tol
#
def land_ray(m, s, t_start=1.0, max_pullbacks=2000, depth=1):
	r'''
	Landing point of the periodic ray :math:`g_s`.

	Starting from :math:`g_s(t_0)`, the ray is followed towards its landing
	point by pulling back one period at a time (potential
	:math:`F^{-p}(t)`), the tail of that sequence is accelerated with Aitken's
	:math:`\Delta^2` and the result is refined by Newton's method on
	:math:`f^p(z) = z`. Attracting multipliers cannot occur at landing points
	and raise :class:`InconsistencyError`.
	'''
	#
	if isinstance(s, str):
		s = Address.parse(s)
	if not s.is_periodic():
		raise PreconditionError('Only periodic rays can be landed (got {}).'.format(s), status='not-periodic')
	p = s.period_length
	entries = list(s.period)
	z, n = ray_point(m, s, t_start, depth)
	approach = [z]
	for iteration in range(max_pullbacks):
		z = pull_back(m, z, entries)
		approach.append(z)
		if abs(approach[-1] - approach[-2]) < 1e-12*max(1, abs(z)):
			break
	if len(approach) >= 3:
		estimate = aitken(*approach[-3:])
	else:
		estimate = approach[-1]
	#
	point, converged = newton_periodic(m, estimate, p)
	image, multiplier = _orbit_multiplier(m, point, p)
	residual = abs(image - point) if not is_escaped(image) else float('inf')
	gap = abs(point - approach[-1])
	status = 'landed' if converged and gap < 1e-4 else 'no-landing-detected'
	classification = classify_multiplier(multiplier)
	if status == 'landed' and classification in ('attracting', 'superattracting'):
		raise InconsistencyError('Ray {} lands at {} with attracting multiplier {}.'.format(s, point, multiplier), point=point, multiplier=multiplier)
	if status == 'landed' and classification == 'indifferent':
		raise InconsistencyError('Ray {} lands at an irrationally indifferent point {}.'.format(s, point), point=point, multiplier=multiplier)
	logger.info('Ray %s: %s at %s (multiplier %s, %d pullbacks)', s, status, point, multiplier, len(approach) - 1)
	return Landing(point, multiplier, classification, status, residual, approach)
#
class PreimageRays(object):
	r'''
	The two preimage rays of a landing ray that land on the boundary of one
	preimage component: ``first`` starts in the right half plane, ``second``
	in the left one. ``points`` are their landing points.
	'''
	#
	def __init__(self, first, second, points, landing, status):
		self.first = first
		self.second = second
		self.points = points
		self.landing = landing
		self.status = status
	#
	def __iter__(self):
		return iter((self.first, self.second))
	#
#
def preimage_ray_addresses(m, s, marker, k_window=3):
	r'''
	Addresses ``((0, k'), s)`` and ``((1, k''), s)`` of the two preimages of
	the ray :math:`g_s` whose landing points (preimages of the landing point
	of :math:`g_s`) are closest to ``marker``, a point of the preimage
	component whose boundary they share.
	'''
	#
	if isinstance(s, str):
		s = Address.parse(s)
	landing = land_ray(m, s)
	if landing.status != 'landed':
		return PreimageRays(None, None, None, landing, landing.status)
	k_center = int(round((marker - m.u).imag/TWO_PI))
	candidates = m.preimages(landing.point, range(k_center - k_window, k_center + k_window + 1))
	chosen = []
	for j in (0, 1):
		index, point = min(((index, point) for index, point in candidates if index.j == j), key=lambda pair: abs(pair[1] - marker))
		chosen.append((index, point))
	(first_index, first_point), (second_index, second_point) = chosen
	return PreimageRays(s.prepend(first_index), s.prepend(second_index), (first_point, second_point), landing, 'landed')
#
def escaping_itinerary(m, z, n):
	r'''
	Strip indices of :math:`z, f(z), \ldots` for at most ``n`` steps, stopping
	early once the orbit saturates.
	'''
	#
	itinerary = []
	for x in range(n):
		if is_escaped(z):
			break
		itinerary.append(m.strip_index(z))
		z = m.eval(z)
	return itinerary
#
def _anchor(m, z, anchor_re=ANCHOR_RE, max_steps=MAX_DEPTH):
	r'''
	Follow the orbit of ``z`` as long as it can be evaluated. Raises
	:class:`PreconditionError` if the orbit never gets far enough out.
	'''
	#
	orbit = [complex(z)]
	for x in range(max_steps):
		w = m.eval(orbit[-1])
		if is_escaped(w) or not cmath.isfinite(w):
			break
		orbit.append(w)
		if abs((w - m.u).real) > OVERFLOW_T:
			break
	if abs((orbit[-1] - m.u).real) < anchor_re:
		raise PreconditionError('The orbit of {} does not escape within {} steps.'.format(z, max_steps), status='not-escaping')
	return orbit
#
def potential(m, z):
	r'''
	Potential of the escaping point ``z`` on its ray, from the asymptotic
	formula at the deepest representable orbit point.
	'''
	#
	orbit = _anchor(m, z)
	tau = abs((orbit[-1] - m.u).real) + math.log(abs(0.5*m.v))
	for x in range(len(orbit) - 1):
		tau = escape_rate_inverse(tau)
	return tau
#
def orbit_ray(m, z, t_hi=None, n_samples=200):
	r'''
	The ray through the escaping point ``z``, traced from ``z`` outwards.

	The orbit of ``z`` is followed until just before overflow; there the ray
	through the orbit point is horizontal to double precision, so the ray is
	obtained by pulling that horizontal line back along the itinerary of
	``z``. The returned address is the itinerary with its last entry
	repeated, which is exact when the far orbit stays in one strip.
	'''
	#
	orbit = _anchor(m, z)
	N = next(n for n, w in enumerate(orbit) if abs((w - m.u).real) >= ANCHOR_RE)
	anchor = orbit[N]
	entries = [m.strip_index(w) for w in orbit[:N]]
	tail = m.strip_index(anchor)
	address = Address(entries, [tail])
	direction = 1 if (anchor - m.u).real > 0 else -1
	t_z = potential(m, z)
	if t_hi is None:
		t_hi = t_z + 10
	level_z = potential_levels(t_z, limit=N)[N]
	ts, zs, depths = [], [], []
	for t in np.linspace(t_z, t_hi, n_samples):
		level = potential_levels(t, limit=N)
		if len(level) > N:
			w = anchor + direction*(level[N] - level_z)
			zs.append(pull_back(m, w, entries))
			depths.append(N)
		else:
			# far enough out that the ray is fixed by its first entries
			point, n = ray_point(m, address, t)
			zs.append(point)
			depths.append(n)
		ts.append(t)
	ray = Ray(address, ts[::-1], zs[::-1], depths[::-1])
	logger.info('Ray through %s: address %s, potential %.6g, anchored %d steps out', z, address, t_z, N)
	return ray
#
