import cmath
import math
import logging
import warnings
from collections import namedtuple
#
import numpy as np
#
from .errors import InvalidParameterError, SlitBoundaryError, PartitionBoundaryError, NearCriticalError
#
logger = logging.getLogger(__name__)
#
TWO_PI = 2*math.pi
SATURATION_RE = 700.0
# |Re(z-u)| above this overflows exp() after one more step
NEAR_CRITICAL_TOL = 1e-9
SLIT_TOL = 1e-12
BOUNDARY_TOL = 1e-9
LARGE_WP = 1e8
#
StripIndex = namedtuple('StripIndex', ['j', 'k'])
StripIndex.__doc__ = r'''
Label of the half-strip :math:`P_{j,k}`: ``j = 0`` for the half plane right of
``u``, ``j = 1`` for the left one, ``k`` the vertical index.
'''
#
class Escaped(object):
	r'''
	Tagged result of an evaluation that would overflow. ``log_modulus`` is an
	estimate of :math:`\log|f(z)|`, which is all that is known about the value.
	'''
	#
	__slots__ = ('log_modulus',)
	#
	def __init__(self, log_modulus):
		self.log_modulus = log_modulus
	#
	def __repr__(self):
		return 'Escaped(log_modulus={:.6g})'.format(self.log_modulus)
	#
#
def is_escaped(value):
	return isinstance(value, Escaped)
#
def normalize(a, b):
	r'''
	Compute the normal form :math:`f(z)=\frac{v}{2}(e^{z-u}+e^{-(z-u)})` of
	:math:`f(z)=ae^z+be^{-z}`.

	``u`` is half the principal logarithm of ``b/a`` (so ``Im u`` lies in
	:math:`(-\pi/2, \pi/2]`) and ``v = 2 a e^u``, which is the square root of
	``4ab`` that makes ``f(u) = v``. The other root describes the same map
	with ``u`` moved by :math:`\pi i`.
	::

		>>> normalize(0.5, 0.5)
		(0j, (1+0j))
	'''
	#
	a = complex(a)
	b = complex(b)
	if a == 0 or b == 0:
		raise InvalidParameterError('Both coefficients must be non-zero (got a={}, b={}).'.format(a, b))
	if not (cmath.isfinite(a) and cmath.isfinite(b)):
		raise InvalidParameterError('Coefficients must be finite (got a={}, b={}).'.format(a, b))
	#
	u = 0.5*cmath.log(b/a)
	v = 2*a*cmath.exp(u)
	return u, v
#
class CosineMap(object):
	r'''
	The cosine map :math:`f(z)=ae^z+be^{-z}` together with its normal form
	``(u, v)``. Critical points are :math:`u_k = u + k\pi i` with
	:math:`f(u_k) = (-1)^k v`.

	The slit :math:`\Gamma` is the segment :math:`[-v, v]` together with the
	vertical ray :math:`\{v - it: t \ge 0\}`. Its preimage cuts the plane into
	half-strips :math:`P_{j,k}`; :math:`P_{0,k}` is bounded on the left by the
	segment :math:`[u_{2k}, u_{2k+2}]` and :math:`P_{1,k} = 2u - P_{0,-k}`.

	Instances are immutable.
	'''
	#
	def __init__(self, a, b):
		u, v = normalize(a, b)
		self._set(complex(a), complex(b), u, v)
	#
	@classmethod
	def from_normal_form(cls, u, v):
		r'''
		Build the map from ``(u, v)``. ``Im u`` is reduced into
		:math:`(-\pi, \pi]` by multiples of :math:`2\pi i`, which does not
		change the map.
		'''
		#
		u = complex(u)
		v = complex(v)
		if v == 0:
			raise InvalidParameterError('The critical value v must be non-zero.')
		if not (cmath.isfinite(u) and cmath.isfinite(v)):
			raise InvalidParameterError('u and v must be finite (got u={}, v={}).'.format(u, v))
		#
		shift = math.floor((math.pi - u.imag)/TWO_PI)
		u = u + TWO_PI*shift*1j
		if u.imag <= -math.pi:
			u += TWO_PI*1j
		#
		instance = cls.__new__(cls)
		instance._set(0.5*v*cmath.exp(-u), 0.5*v*cmath.exp(u), u, v)
		return instance
	#
	def _set(self, a, b, u, v):
		self.a = a
		self.b = b
		self.u = u
		self.v = v
		self._half_v = 0.5*v
		self._slit_direction = -1j*v.conjugate()/abs(v)
		# direction of the vertical part of the slit, seen in the w/v plane
		self._slit_angle = cmath.phase(self._slit_direction)
	#
	def __repr__(self):
		return 'CosineMap(a={!r}, b={!r})'.format(self.a, self.b)
	#
	def __str__(self):
		return 'Cosine map (u={:.6g}, v={:.6g})'.format(self.u, self.v)
	#
	def __eq__(self, other):
		return isinstance(other, CosineMap) and self.u == other.u and self.v == other.v
	#
	def __hash__(self):
		return hash((self.u, self.v))
	#
	def as_record(self):
		return dict((name, [value.real, value.imag]) for name, value in (('a', self.a), ('b', self.b), ('u', self.u), ('v', self.v)))
	#
	def critical_point(self, k):
		return self.u + k*math.pi*1j
	#
	def critical_value(self, k):
		return self.v if k % 2 == 0 else -self.v
	#
	def eval(self, z):
		r'''
		Evaluate :math:`f(z)`. Returns an :class:`Escaped` tag instead of
		overflowing once :math:`|\mathrm{Re}(z-u)|` exceeds ``SATURATION_RE``.
		'''
		#
		if is_escaped(z):
			return z
		zeta = z - self.u
		if abs(zeta.real) > SATURATION_RE:
			return Escaped(abs(zeta.real) + math.log(abs(self._half_v)))
		e = cmath.exp(zeta)
		return self._half_v*(e + 1/e)
	#
	__call__ = eval
	#
	def eval_deriv(self, z):
		r'''
		Evaluate :math:`f'(z) = ae^z - be^{-z}`, with the same saturation rule
		as :meth:`eval`.
		'''
		#
		if is_escaped(z):
			return z
		zeta = z - self.u
		if abs(zeta.real) > SATURATION_RE:
			return Escaped(abs(zeta.real) + math.log(abs(self._half_v)))
		e = cmath.exp(zeta)
		return self._half_v*(e - 1/e)
	#
	def eval_second_deriv(self, z):
		# f'' = f
		return self.eval(z)
	#
	def eval_array(self, z):
		r'''
		Vectorised evaluation. Returns ``(values, escaped)`` where ``escaped``
		is a boolean mask and the corresponding ``values`` are ``nan``.
		'''
		#
		zeta = np.asarray(z, dtype=complex) - self.u
		escaped = ~(np.abs(zeta.real) <= SATURATION_RE)
		safe = np.where(escaped, 0, zeta)
		values = self._half_v*(np.exp(safe) + np.exp(-safe))
		values[escaped] = np.nan
		return values, escaped
	#
	def eval_deriv_array(self, z):
		zeta = np.asarray(z, dtype=complex) - self.u
		escaped = ~(np.abs(zeta.real) <= SATURATION_RE)
		safe = np.where(escaped, 0, zeta)
		values = self._half_v*(np.exp(safe) - np.exp(-safe))
		values[escaped] = np.nan
		return values, escaped
	#
	def iterate(self, z, n):
		for x in range(n):
			z = self.eval(z)
			if is_escaped(z):
				break
		return z
	#
	def orbit(self, z, n):
		r'''
		The list :math:`[z, f(z), \ldots, f^n(z)]`, cut short after the first
		:class:`Escaped` entry.
		'''
		#
		points = [z]
		for x in range(n):
			z = self.eval(z)
			points.append(z)
			if is_escaped(z):
				break
		return points
	#
	def escape_bound_holds(self, z):
		r'''
		Check the growth estimate :math:`|f(z)| \ge e^{|\mathrm{Re}\,z|}/2`
		at ``z``.
		'''
		#
		w = self.eval(z)
		if is_escaped(w):
			return w.log_modulus >= abs(z.real) - math.log(2)
		return abs(w) >= 0.5*math.exp(abs(z.real))
	#
	def cut_angle(self, x):
		r'''
		For :math:`x \ge 0`, the imaginary part :math:`y` (continuous in
		``x``, with value 0 at ``x = 0``) such that :math:`\cosh(x+iy)` lies on
		the vertical part of the normalised slit. The boundary curves of
		:math:`P_{0,k}` are :math:`y = \theta(x) + 2\pi k` in the coordinate
		:math:`\zeta = z - u`.

		The ray from the focus 1 meets the ellipse :math:`\cosh(x + i\mathbb{R})`
		exactly once, so the value has a closed form.
		'''
		#
		x = np.asarray(x, dtype=float)
		phi = self._slit_angle
		ch = np.cosh(x)
		sh = np.sinh(x)
		denominator = ch + math.cos(phi)
		with np.errstate(divide='ignore', invalid='ignore'):
			r = np.where(denominator > 1e-300, sh*(sh/np.where(denominator > 1e-300, denominator, 1)), ch + 1)
		cos_y = (1 + r*math.cos(phi))/ch
		with np.errstate(divide='ignore', invalid='ignore'):
			sin_y = np.where(sh > 0, r*math.sin(phi)/np.where(sh > 0, sh, 1), 0.0)
		y = np.arctan2(sin_y, cos_y)
		if phi > math.pi/2:
			y = np.where(y < -math.pi/2, y + TWO_PI, y)
		elif phi < -math.pi/2:
			y = np.where(y > math.pi/2, y - TWO_PI, y)
		if y.ndim == 0:
			return float(y)
		return y
	#
	def strip_index(self, z, tol=BOUNDARY_TOL):
		r'''
		Return the :class:`StripIndex` ``(j, k)`` of the half-strip containing
		``z``. Raises :class:`PartitionBoundaryError` within ``tol`` of a
		boundary curve.
		'''
		#
		zeta = complex(z) - self.u
		x = zeta.real
		if abs(x) < tol:
			raise PartitionBoundaryError('Point {} lies on the vertical line through u.'.format(z), point=z)
		if x > 0:
			q = (zeta.imag - self.cut_angle(x))/TWO_PI
		else:
			q = (-zeta.imag - self.cut_angle(-x))/TWO_PI
		if abs(q - round(q)) < tol:
			raise PartitionBoundaryError('Point {} lies on a partition boundary curve.'.format(z), point=z)
		#
		if x > 0:
			return StripIndex(0, int(math.floor(q)))
		return StripIndex(1, -int(math.floor(q)))
	#
	def on_slit(self, w, tol=SLIT_TOL):
		r'''
		True if ``w`` lies on :math:`\Gamma` (to tolerance).
		'''
		#
		wp = complex(w)/self.v
		scale = max(1.0, abs(wp))
		if abs(wp.imag) <= tol*scale and abs(wp.real) <= 1 + tol*scale:
			return True
		q = (wp - 1)*self._slit_direction.conjugate()
		return abs(q.imag) <= tol*scale and q.real >= -tol*scale
	#
	def _check_near_critical(self, w):
		wp = complex(w)/self.v
		if abs(wp - 1) < NEAR_CRITICAL_TOL or abs(wp + 1) < NEAR_CRITICAL_TOL:
			raise NearCriticalError('Point {} is numerically a critical value; the inverse branches meet there.'.format(w), point=w)
	#
	def _log_large_root(self, w):
		r'''
		:math:`\log R` for the root :math:`|R| \ge 1` of :math:`R + 1/R = 2w/v`.
		'''
		#
		wp = complex(w)/self.v
		if abs(wp) > LARGE_WP:
			# wp*wp overflows at the largest seed levels
			q = 1/wp
			return cmath.log(wp) + cmath.log(1 + cmath.sqrt(1 - q*q))
		s = cmath.sqrt(wp*wp - 1)
		r1 = wp + s
		r2 = wp - s
		return cmath.log(r1 if abs(r1) >= abs(r2) else r2)
	#
	def _base_preimage(self, w):
		r'''
		The preimage :math:`\zeta_0` of ``w`` in :math:`P_{0,0}`, as an offset
		from ``u``.
		'''
		#
		zeta = self._log_large_root(w)
		theta = self.cut_angle(zeta.real)
		y = theta + (zeta.imag - theta) % TWO_PI
		return complex(zeta.real, y)
	#
	def inverse_branch(self, w, s):
		r'''
		The unique ``z`` in :math:`P_{j,k}` with ``f(z) = w``, where ``s`` is a
		:class:`StripIndex` (or a ``(j, k)`` pair).

		Raises :class:`NearCriticalError` at the critical values and
		:class:`SlitBoundaryError` on the rest of the slit.
		'''
		#
		if is_escaped(w):
			raise SlitBoundaryError('Cannot pull back an escaped value.')
		self._check_near_critical(w)
		if self.on_slit(w):
			raise SlitBoundaryError('Point {} lies on the slit; the branches are discontinuous there.'.format(w), point=w)
		#
		j, k = s
		zeta0 = self._base_preimage(w)
		if j == 0:
			return self.u + zeta0 + TWO_PI*k*1j
		if j == 1:
			return self.u - zeta0 + TWO_PI*k*1j
		raise InvalidParameterError('Strip index j must be 0 or 1 (got {}).'.format(j))
	#
	def preimages(self, w, k_values):
		r'''
		All preimages of ``w`` with vertical index in ``k_values``, as a list
		of ``(StripIndex, z)`` pairs.
		'''
		#
		self._check_near_critical(w)
		if self.on_slit(w):
			raise SlitBoundaryError('Point {} lies on the slit.'.format(w), point=w)
		zeta0 = self._base_preimage(w)
		result = []
		for k in k_values:
			result.append((StripIndex(0, k), self.u + zeta0 + TWO_PI*k*1j))
			result.append((StripIndex(1, k), self.u - zeta0 + TWO_PI*k*1j))
		return result
	#
	def nearest_preimages(self, w, z):
		r'''
		The two preimages of ``w`` closest to ``z`` (closest first), ignoring
		the partition.
		'''
		#
		zeta = self._log_large_root(w)
		target = z - self.u
		candidates = []
		for base in (zeta, -zeta):
			n = round((target.imag - base.imag)/TWO_PI)
			for m in (n - 1, n, n + 1):
				candidates.append(self.u + base + TWO_PI*m*1j)
		candidates.sort(key=lambda c: abs(c - z))
		return candidates[0], candidates[1]
	#
	def lift_path(self, ws, z_start, max_step=None, max_halvings=30):
		r'''
		Lift the path ``ws`` (a sequence of complex numbers) through ``f``,
		starting at the preimage ``z_start`` of ``ws[0]``, by continuation:
		each new point is the preimage nearest to the previous one, and a step
		is halved whenever the choice is ambiguous or the jump is larger than
		the derivative predicts.

		Returns ``(zs, ws)``; when ``max_step`` is given, points are inserted
		so that consecutive lifted points are at most ``max_step`` apart and
		the returned ``ws`` contains the matching path points.
		'''
		#
		ws = np.asarray(ws, dtype=complex)
		z = complex(z_start)
		out_z = [z]
		out_w = [complex(ws[0])]
		for index in range(1, len(ws)):
			self._lift_segment(out_w[-1], complex(ws[index]), z, out_z, out_w, max_step, max_halvings)
			z = out_z[-1]
		return np.array(out_z), np.array(out_w)
	#
	def _lift_segment(self, w_a, w_b, z, out_z, out_w, max_step, halvings_left):
		self._check_near_critical(w_b)
		best, second = self.nearest_preimages(w_b, z)
		deriv = self.eval_deriv(z)
		if is_escaped(deriv):
			raise SlitBoundaryError('Lifted path left the representable range near {}.'.format(z))
		predicted = abs(w_b - w_a)/max(abs(deriv), 1e-300)
		jump = abs(best - z)
		ambiguous = abs(second - z) < 2*jump
		too_far = jump > 3*predicted + 1e-12 and jump > 1e-9
		too_long = max_step is not None and jump > max_step
		if (ambiguous or too_far or too_long) and halvings_left > 0:
			w_mid = 0.5*(w_a + w_b)
			self._lift_segment(w_a, w_mid, z, out_z, out_w, max_step, halvings_left - 1)
			self._lift_segment(w_mid, w_b, out_z[-1], out_z, out_w, max_step, halvings_left - 1)
			return
		if ambiguous and jump > 1e-9:
			warnings.warn('Ambiguous preimage continuation near {} (critical point nearby).'.format(z))
		out_z.append(best)
		out_w.append(w_b)
	#
#
