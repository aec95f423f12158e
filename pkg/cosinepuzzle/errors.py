r'''
Exceptions raised by cosinepuzzle.

Every exception carries a short ``status`` string (the same strings are used
in JSON records for non-fatal outcomes) and the process ``exit_code`` the
command line uses when the exception escapes.
'''
#
class CosinePuzzleError(Exception):
	r'''
	Base class for all errors raised by this package.
	'''
	#
	status = 'error'
	exit_code = 1
	#
	def __init__(self, message, status=None, **details):
		Exception.__init__(self, message)
		if status is not None:
			self.status = status
		self.details = details
	#
#
class PreconditionError(CosinePuzzleError, ValueError):
	r'''
	The inputs do not satisfy the preconditions of an operation (a zero
	coefficient, a point on the slit, a point on a partition boundary, an
	ellipse that is too small, ...).
	'''
	#
	status = 'precondition'
	exit_code = 2
#
class CertificationError(CosinePuzzleError):
	r'''
	A numerical certificate could not be established (inconsistent multiplier,
	refinement gap, branch obstruction, inconclusive renormalization).
	'''
	#
	status = 'certification'
	exit_code = 3
#
class InvalidParameterError(PreconditionError):
	status = 'invalid-parameter'
#
class SlitBoundaryError(PreconditionError):
	status = 'slit-boundary'
#
class PartitionBoundaryError(PreconditionError):
	status = 'boundary'
#
class NearCriticalError(PreconditionError):
	r'''
	A pullback was requested at (numerically) a critical value, where the
	inverse branches meet.
	'''
	#
	status = 'near-critical'
#
class GraphCollisionError(PreconditionError):
	status = 'graph-collision'
#
class IncreaseMError(PreconditionError):
	status = 'increase-m'
#
class InconsistencyError(CertificationError):
	status = 'inconsistency'
#
class BranchObstructionError(CertificationError):
	status = 'branch-obstruction'
#
class RefinementError(CertificationError):
	status = 'refinement-gap'
#
class SubdivisionError(CertificationError):
	status = 'resolution-refinement'
#
class InconclusiveError(CertificationError):
	status = 'inconclusive'
#
class GraphConstructionError(CertificationError):
	r'''
	The internal ray and the dynamic ray of a puzzle spoke do not land at
	the same point.
	'''
	#
	status = 'graph-construction'
#
