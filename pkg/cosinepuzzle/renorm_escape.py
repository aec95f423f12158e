r'''
Quadratic-like restrictions when the critical value :math:`-v` escapes.

The ray through :math:`-v` has two preimage rays through each critical point
:math:`u_{2k+1} = u + (2k+1)\pi i`. Joined at that point they cut the plane
into strips :math:`S_k`, each containing the single critical point
:math:`u_{2k+2}`. Truncating a strip at :math:`|\mathrm{Re}(z-u)| \le M`
gives :math:`R_M`, whose image is bounded by the ellipse :math:`E_M` with
foci :math:`\pm v`; once :math:`R_M \Subset E_M`, the map from
:math:`R_M` minus the forward images of the ray onto :math:`E_M` minus
their images is proper of degree 2.
'''
import math
import logging
#
import numpy as np
#
from . import geometry
from .basins import classify_critical_orbit
from .cosine_map import is_escaped
from .errors import (PreconditionError, GraphConstructionError, IncreaseMError, InconsistencyError,
	InconclusiveError, SlitBoundaryError, NearCriticalError)
from .geometry import Curve
from .rays import Ray, orbit_ray
#
logger = logging.getLogger(__name__)
#
EXIT_BUDGET = 10000
RETURNS = 100
#
class RenormCandidate(object):
	r'''
	A candidate quadratic-like restriction :math:`f^p: U \to V`: boundary
	polylines of ``U`` and ``V``, the critical point, the return time, the
	certified degree and the sampled margin between the boundaries.
	Domains built around an escaping :math:`-v` also carry the exit time
	``exit_time`` and the removed ``slits``; ``returns`` counts how long the
	critical orbit of the restriction was seen to stay in ``U`` and
	``targets`` how many points of ``V`` had their preimages counted.
	'''
	#
	def __init__(self, U, V, critical_point, period, degree, margin, exit_time=None, slits=(), n0=None, returns=None, targets=None):
		self.U = np.asarray(U, dtype=complex)
		self.V = np.asarray(V, dtype=complex)
		self.critical_point = complex(critical_point)
		self.period = period
		self.degree = degree
		self.margin = margin
		self.exit_time = exit_time
		self.slits = list(slits)
		self.n0 = n0
		self.returns = returns
		self.targets = targets
	#
	def __repr__(self):
		return 'RenormCandidate(c={}, p={}, degree={}, margin={:.3g}, N={})'.format(self.critical_point, self.period, self.degree, self.margin, self.exit_time)
	#
	def as_record(self):
		return {
			'U': [[z.real, z.imag] for z in self.U],
			'V': [[z.real, z.imag] for z in self.V],
			'c': [self.critical_point.real, self.critical_point.imag],
			'p': self.period,
			'degree': self.degree,
			'margin': self.margin,
			'N': self.exit_time,
			'n0': self.n0,
			'returns': self.returns,
			'targets': self.targets,
			'slits': [slit.as_record() for slit in self.slits],
		}
	#
#
def minimal_m(m, boundary_for, step=0.25, limit=40.0):
	r'''
	Smallest ``M`` on a grid of ``step`` for which every point of
	``boundary_for(M)`` lies inside the ellipse with foci :math:`\pm v`
	and semi-major axis :math:`|v|\cosh M`; ``None`` up to ``limit``.
	'''
	#
	M = step
	while M <= limit:
		if geometry.ellipse_margin(boundary_for(M), m.v, M) > 0:
			return M
		M += step
	return None
#
def escaping_ray(m, n_samples=200, t_hi=None):
	r'''
	The ray through :math:`-v`; raises :class:`PreconditionError` unless
	:math:`-v` escapes. ``t_hi`` is the potential of its far end.
	'''
	#
	result = classify_critical_orbit(m, '-v')
	if result.kind != 'escaping':
		raise PreconditionError('The critical value -v = {} does not escape ({}).'.format(-m.v, result.kind), status='not-escaping')
	return orbit_ray(m, -m.v, t_hi=t_hi, n_samples=n_samples)
#
def _at_samples(lifted, path, samples):
	r'''
	The lifted points over the original ``samples``; the continuation may
	have inserted points in between.
	'''
	#
	result = []
	cursor = 0
	for z, w in zip(lifted, path):
		if cursor < len(samples) and w == samples[cursor]:
			result.append(z)
			cursor += 1
	return np.array(result)
#
def critical_ray_pair(m, s=None, k=0, ray=None, n_samples=200):
	r'''
	The two preimages of the ray through :math:`-v` that meet at the
	critical point :math:`u_{2k+1}`, returned as ``(right, left)`` by the
	half plane of their far ends. Like every traced ray they are sampled
	from the far end inwards; their last sample is :math:`u_{2k+1}`, where
	they crash.

	``s`` optionally names the address of the ray through :math:`-v`; it
	must agree with the one read off the orbit.
	'''
	#
	if ray is None:
		ray = escaping_ray(m, n_samples)
	if s is not None and s != ray.address:
		raise PreconditionError('Address {} is not the address {} of the ray through -v.'.format(s, ray.address.format()), status='address-mismatch')
	c = m.critical_point(2*k + 1)
	samples = ray.z[:-1]
	# the last sample is -v itself, where the inverse branches meet
	candidates = m.preimages(samples[0], range(k - 2, k + 4))
	t = np.log1p(ray.t)
	# F(t') = t on the preimage
	pair = []
	for j in (0, 1):
		sheet = sorted((item for item in candidates if item[0].j == j), key=lambda item: abs(item[1].imag - c.imag))
		for index, start in sheet[:4]:
			try:
				lifted, path = m.lift_path(samples, start)
			except (SlitBoundaryError, NearCriticalError):
				continue
			if abs(lifted[-1] - c) < 0.5*math.pi:
				break
		else:
			raise GraphConstructionError('No preimage of the ray through -v reaches the critical point {}.'.format(c), critical_point=c)
		z = np.concatenate([_at_samples(lifted, path, samples), [c]])
		pair.append(Ray(ray.address.prepend(index), t, z, ray.depths, crash=(float(t[-1]), c)))
	right, left = sorted(pair, key=lambda r: -(r.z[0] - m.u).real)
	logger.info('Critical ray pair at %s: %s and %s', c, right.address.format(), left.address.format())
	return right, left
#
def _truncate_re(points, u, X):
	r'''
	The initial part of ``points`` with :math:`|\mathrm{Re}(z - u)| \le X`,
	ending exactly on the vertical line.
	'''
	#
	x = points.real - u.real
	outside = np.abs(x) > X
	if not outside.any():
		raise GraphConstructionError('Ray does not reach |Re(z - u)| = {:.4g}.'.format(X))
	i = int(np.argmax(outside))
	a, b = points[i - 1], points[i]
	bound = u.real + (X if x[i] > 0 else -X)
	return np.concatenate([points[:i], [a + (b - a)*(bound - a.real)/(b.real - a.real)]])
#
def _joined(pair, u, X):
	r'''
	A pair joined at its critical point, from its left end to its right end,
	truncated at :math:`|\mathrm{Re}(z - u)| \le X`.
	'''
	#
	right, left = pair
	left_part = _truncate_re(left.z[::-1], u, X)
	right_part = _truncate_re(right.z[::-1], u, X)
	return np.concatenate([left_part[::-1], right_part[1:]])
#
class StripRegion(object):
	r'''
	The strip :math:`S_k` truncated at :math:`|\mathrm{Re}(z - u)| \le X`:
	bounded below by the pair through :math:`u_{2k+1}` and above by the pair
	through :math:`u_{2k+3}`.
	'''
	#
	def __init__(self, m, k, lower, upper, X):
		self.m = m
		self.k = k
		self.lower = lower
		self.upper = upper
		self.X = X
		self.polygon = np.concatenate([lower, upper[::-1]])
	#
	def contains(self, z):
		return geometry.contains(self.polygon, z)
	#
	def truncated(self, M):
		r'''
		The part with :math:`|\mathrm{Re}(z - u)| \le M`.
		'''
		#
		u = self.m.u.real
		polygon = geometry.clip_halfplane(self.polygon, 1, u + M)
		return geometry.clip_halfplane(polygon, -1, M - u)
	#
	def curves(self):
		return [Curve(self.lower, 'strip-edge', 2*self.k + 1), Curve(self.upper, 'strip-edge', 2*self.k + 3)]
	#
	def as_record(self):
		return {
			'k': self.k,
			'X': self.X,
			'boundary': [[z.real, z.imag] for z in self.polygon],
		}
	#
#
def build_strip(m, k, X=None, ray=None, n_samples=200):
	r'''
	The strip :math:`S_k` between the critical ray pairs at
	:math:`u_{2k+1}` and :math:`u_{2k+3}`. ``X`` defaults to 90% of the
	horizontal reach of the traced rays.
	'''
	#
	if ray is None:
		ray = escaping_ray(m, n_samples)
	lower_pair = critical_ray_pair(m, None, k, ray)
	upper_pair = critical_ray_pair(m, None, k + 1, ray)
	if X is None:
		X = 0.9*min(abs((r.z[0] - m.u).real) for r in lower_pair + upper_pair)
	strip = StripRegion(m, k, _joined(lower_pair, m.u, X), _joined(upper_pair, m.u, X), X)
	inside = strip.contains([m.critical_point(2*k + 2), m.critical_point(2*k), m.critical_point(2*k + 4)])
	if not inside[0] or inside[1] or inside[2]:
		raise GraphConstructionError('Strip {} does not contain exactly the critical point {}.'.format(k, m.critical_point(2*k + 2)), k=k)
	logger.info('Strip %d truncated at |Re(z - u)| <= %.4g', k, X)
	return strip
#
def _strip_box(strip, M):
	r'''
	``strip`` truncated at ``M``; past the traced part, the rectangle of
	half-width ``M`` over the imaginary extent of the strip.
	'''
	#
	if M <= strip.X:
		return strip.truncated(M)
	lo, hi = strip.polygon.imag.min(), strip.polygon.imag.max()
	return geometry.box_polygon(complex(strip.m.u.real, 0.5*(lo + hi)), M, 0.5*(hi - lo), n_per_side=64)
#
def _degree_counts(m, region, slits, targets, k):
	r'''
	Number of preimages of every target inside ``region``, from the closed
	form :math:`u \pm \zeta_0 + 2\pi i k'`.
	'''
	#
	counts = []
	for w in targets:
		try:
			preimages = m.preimages(w, range(k - 3, k + 4))
		except (SlitBoundaryError, NearCriticalError):
			continue
		points = np.array([z for index, z in preimages])
		inside = np.atleast_1d(geometry.contains(region, points))
		for slit in slits:
			inside &= geometry.distance_to_polyline(slit.points, points) > 1e-9
		counts.append(int(np.count_nonzero(inside)))
	return counts
#
def renorm_domain(m, k0, M, X=None, ray=None, n_samples=200, n_targets=50):
	r'''
	The quadratic-like restriction of :math:`f` to the truncated strip
	:math:`R_M \subset S_{k_0}` around :math:`u_{2k_0+2}`.

	Raises :class:`IncreaseMError` when :math:`R_M \not\Subset E_M`,
	:class:`InconsistencyError` when :math:`-v` never leaves :math:`R_M`
	and :class:`InconclusiveError` when a target does not have exactly two
	preimages.
	'''
	#
	if X is None:
		X = 1.5*M + 1
	if ray is None:
		t_hi = abs(m.v)*math.cosh(X + 0.5) + abs(m.u) + 10
		ray = escaping_ray(m, max(n_samples, int(4*t_hi)), t_hi=t_hi)
		# the preimages of the far end must reach |Re(z - u)| = X
	strip = build_strip(m, k0, X, ray)
	R = strip.truncated(M)
	if geometry.ellipse_margin(R, m.v, M) <= 0:
		suggestion = minimal_m(m, lambda x: _strip_box(strip, x))
		raise IncreaseMError('R_M is not compactly inside E_M for M = {}; try M = {}.'.format(M, suggestion), minimal_m=suggestion)
	E = geometry.ellipse_polygon(m.v, M)
	c = m.critical_point(2*k0 + 2)
	#
	orbit = [-m.v]
	while not is_escaped(orbit[-1]) and geometry.contains(R, orbit[-1]):
		if len(orbit) > EXIT_BUDGET:
			raise InconsistencyError('-v stays in R_M for {} steps although it escapes.'.format(EXIT_BUDGET))
		orbit.append(m.eval(orbit[-1]))
	N = len(orbit) - 1
	#
	rays = [ray] + [orbit_ray(m, w, n_samples=n_samples) for w in orbit[1:]]
	slits = [Curve(r.z, 'slit', r.address.format()) for r in rays]
	U_slits = slits[:N]
	V_slits = slits[1:N + 1] if N > 0 else slits[:1]
	#
	targets = geometry.interior_sample(E, n=24)
	for slit in slits:
		# the boundary rays of the strip map onto the first slit
		targets = targets[geometry.distance_to_polyline(slit.points, targets) > 1e-6]
	if len(targets) > n_targets:
		targets = targets[np.linspace(0, len(targets) - 1, n_targets).astype(int)]
	counts = _degree_counts(m, R, U_slits, targets, k0)
	if not counts or any(count != 2 for count in counts):
		raise InconclusiveError('Preimage counts in R_M are {} instead of 2.'.format(sorted(set(counts))), counts=counts)
	#
	if np.all(geometry.contains(E, R)):
		margin = float(np.min(geometry.distance_to_polyline(E, R, closed=True)))
	else:
		margin = -1.0
	z = c
	returns = 0
	while returns < RETURNS:
		z = m.eval(z)
		if is_escaped(z) or not geometry.contains(R, z):
			break
		returns += 1
	logger.info('Renormalization domain around %s: N = %d, margin %.4g, %d returns', c, N, margin, returns)
	return RenormCandidate(R, E, c, 1, 2, margin, exit_time=N, slits=U_slits, returns=returns, targets=len(counts))
#
