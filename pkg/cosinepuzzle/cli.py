r'''
The ``cosinepuzzle`` command.

Every sub-command reads the map from ``--a``/``--b`` or ``--u``/``--v``
(complex numbers written ``re,im``), prints a short summary and optionally
writes an image (``--out``) and a JSON record (``--json``). Exit codes: 0 on
success, 2 when the inputs violate a precondition, 3 when a numerical
certificate fails.
'''
import os
import sys
import logging
import argparse
#
from . import config, export, puzzle, rays, render, renorm_escape, scan, visualization
from .coordinates import Viewport
from .cosine_map import CosineMap
from .errors import CosinePuzzleError, PreconditionError, InvalidParameterError
from .symbolic import Address
#
logger = logging.getLogger(__name__)
#
def parse_complex(text):
	r'''
	``"re,im"``, a real number, or a Python complex literal such as ``1+2j``.
	'''
	#
	text = text.strip()
	try:
		if ',' in text:
			re, im = text.split(',')
			return complex(float(re), float(im))
		return complex(text.replace(' ', ''))
	except ValueError:
		raise argparse.ArgumentTypeError('cannot read complex number {!r}; use "re,im"'.format(text))
	#
#
def parse_viewport(text):
	try:
		cx, cy, width = [float(x) for x in text.split(',')]
	except ValueError:
		raise argparse.ArgumentTypeError('viewport must be "cx,cy,width" (got {!r})'.format(text))
	return complex(cx, cy), width
#
def parse_pixels(text):
	try:
		columns, rows = [int(x) for x in text.lower().split('x')]
	except ValueError:
		raise argparse.ArgumentTypeError('pixel size must be "WxH" (got {!r})'.format(text))
	return columns, rows
#
def parse_address(text):
	try:
		return Address.parse(text)
	except InvalidParameterError as e:
		raise argparse.ArgumentTypeError(str(e))
	#
#
def build_map(args):
	if args.a is not None or args.b is not None:
		if args.a is None or args.b is None:
			raise PreconditionError('Give both --a and --b.', status='missing-map')
		return CosineMap(args.a, args.b)
	if args.u is not None and args.v is not None:
		return CosineMap.from_normal_form(args.u, args.v)
	raise PreconditionError('Give the map as --a/--b or --u/--v.', status='missing-map')
#
def build_viewport(args):
	center, width = args.viewport
	return Viewport(center, width, args.px)
#
def _write_outputs(args, record=None, image=None):
	if image is not None and args.out:
		export.export_image(image, args.out)
	if record is not None and args.json:
		export.export_record_to_json(record, args.json)
	#
#
def _render_with(args, m, objects):
	if not args.out:
		return None
	rendering = render.render_julia(m, build_viewport(args), max_iter=args.max_iter)
	return visualization.overlay(rendering.image(), rendering.viewport, objects)
#
def command_render(args):
	m = build_map(args)
	rendering = render.render_julia(m, build_viewport(args), max_iter=args.max_iter, escape_re=args.escape_re)
	objects = []
	if args.address is not None:
		objects.append(rays.trace_ray(m, args.address, args.t_lo, args.t_hi))
	image = visualization.overlay(rendering.image(), rendering.viewport, objects)
	counts = rendering.counts()
	print('{}: {}'.format(m, ', '.join('{} {}'.format(k, v) for k, v in sorted(counts.items()))))
	record = {'map': m.as_record(), 'viewport': rendering.viewport.as_record(), 'counts': counts, 'palette': render.PALETTE_VERSION}
	if args.out is None:
		args.out = 'julia.ppm'
	_write_outputs(args, record, image)
#
def command_trace_ray(args):
	m = build_map(args)
	ray = rays.trace_ray(m, args.address, args.t_lo, args.t_hi, depth=args.depth, n_samples=args.samples)
	residual = rays.functional_equation_residual(m, ray, depth=args.depth)
	print('{}: {} samples, t in [{:.4g}, {:.4g}], status {}'.format(ray.address.format(), len(ray.t), ray.t_min, args.t_hi, ray.status))
	print('functional equation residual {:.3g} ({})'.format(residual, 'ok' if residual < args.tol else 'above tolerance'))
	record = ray.as_record()
	record['residual'] = residual
	_write_outputs(args, record, _render_with(args, m, [ray]))
#
def command_land(args):
	m = build_map(args)
	landing = rays.land_ray(m, args.address)
	print('{} {} at {:.12g} (multiplier {:.6g}, {})'.format(args.address.format(), landing.status, landing.point, landing.multiplier, landing.classification))
	_write_outputs(args, landing.as_record())
#
def _puzzle(args, m):
	return puzzle.build_puzzle(m, theta=args.theta, address=args.address, level=args.level, M=args.M)
#
def command_graph(args):
	m = build_map(args)
	p = _puzzle(args, m)
	graph = p.graph
	print('graph: {} spoke(s) landing at {:.10g}, level {:.4g}, forward invariance {:.3g}'.format(
		graph.period, graph.landing, graph.level, graph.forward_invariance()))
	print('depth 0: {} piece(s)'.format(len(p.pieces(0))))
	_write_outputs(args, graph.as_record(), _render_with(args, m, [graph, p.pieces(0)]))
#
def command_puzzle(args):
	m = build_map(args)
	p = _puzzle(args, m)
	if args.point is not None:
		levels = [[piece] for piece in puzzle.approx_impression(p, args.point, args.depth).pieces]
	else:
		p.build(args.depth)
		levels = [p.pieces(n) for n in range(args.depth + 1)]
	for n, pieces in enumerate(levels):
		print('depth {}: {} piece(s), {} critical'.format(n, len(pieces), sum(1 for piece in pieces if piece.contains_critical)))
	if args.point is not None and levels:
		print('nesting violations: {}'.format(p.nesting_violations([args.point], len(levels) - 1)))
	if args.csv:
		export.export_pieces_to_csv([piece for pieces in levels for piece in pieces], args.csv)
	if args.json:
		export.export_record_to_json(p.as_record(), args.json)
	if args.out:
		rendering = render.render_julia(m, build_viewport(args), max_iter=args.max_iter)
		images = [visualization.overlay(rendering.image(), rendering.viewport, pieces) for pieces in levels]
		directory, name = os.path.split(args.out)
		prefix, extension = os.path.splitext(name)
		export.export_stack(images, directory, prefix, extension or '.ppm')
	#
#
def _critical_point(args, m):
	return args.point if args.point is not None else m.critical_point(1)
#
def _print_tableau(tab):
	grid = tab.grid()
	width = max([len(cell) for row in grid for cell in row] + [3])
	for n, row in enumerate(grid):
		print('{:>3} '.format(n) + ' '.join('{:>{}}'.format(cell or '.', width) for cell in row))
	for l in range(tab.length + 1):
		d, saturated = tab.critical_depth(l)
		if d:
			print('d_{} = {}{}'.format(l, d, '+' if saturated else ''))
	violations = tab.closure_violations()
	if violations:
		print('closure violations at {}'.format(violations))
	#
#
def command_tableau(args):
	m = build_map(args)
	p = _puzzle(args, m)
	tab = puzzle.tableau(p, _critical_point(args, m), args.depth, args.length)
	_print_tableau(tab)
	if args.csv:
		export.export_tableau_to_csv(tab, args.csv)
	_write_outputs(args, tab.as_record())
#
def command_renorm_tableau(args):
	m = build_map(args)
	p = _puzzle(args, m)
	tab = puzzle.tableau(p, _critical_point(args, m), args.depth, args.length)
	_print_tableau(tab)
	candidate = puzzle.detect_renormalization(p, tab)
	if candidate is None:
		print('no periodic critical column within {} steps'.format(args.length))
		_write_outputs(args, {'status': 'not-found', 'tableau': tab.as_record()})
		return
	print('renormalization: period {}, depths {} -> {}, margin {:.3g}, {} returns'.format(
		candidate.period, candidate.n0 + candidate.period, candidate.n0, candidate.margin, candidate.returns))
	_write_outputs(args, candidate.as_record(), _render_with(args, m, [candidate]))
#
def command_renorm_escape(args):
	m = build_map(args)
	candidate = renorm_escape.renorm_domain(m, args.k0, args.M)
	print('quadratic-like restriction around {:.6g}: exit time N = {}, margin {:.3g}, {} returns'.format(
		candidate.critical_point, candidate.exit_time, candidate.margin, candidate.returns))
	_write_outputs(args, candidate.as_record(), _render_with(args, m, [candidate]))
#
def command_diameters(args):
	m = build_map(args)
	report = render.component_diameters(m, build_viewport(args), N=args.depth, max_iter=args.max_iter)
	print('{} Fatou components'.format(len(report.components)))
	for eps, n in sorted(report.counts.items()):
		print('  diameter > {:<6g} {}'.format(eps, n))
	for preperiod, median in sorted(report.medians().items()):
		print('  preperiod {}: median diameter {:.4g}'.format(preperiod, median))
	_write_outputs(args, report.as_record())
#
def command_scan(args):
	if args.separate_basins:
		points = [scan.find_separate_basins(args.start, args.end, args.samples, max_iter=args.max_iter)]
	else:
		points = [point for point in scan.scan_segment(args.start, args.end, args.samples, args.max_iter)
			if point.matches(args.plus, args.minus)]
	points = [point for point in points if point is not None]
	for point in points:
		print('u = {:.10g}, v = {:.10g}: +v {}, -v {}'.format(point.u, point.v, point.plus.kind, point.minus.kind))
	if not points:
		print('no parameter found')
	_write_outputs(args, {'matches': [point.as_record() for point in points]})
#
def _parameter_pair(text):
	r'''
	``u;v`` with both parts complex.
	'''
	#
	parts = text.split(';')
	if len(parts) != 2:
		raise argparse.ArgumentTypeError('expected "u;v" (got {!r})'.format(text))
	return parse_complex(parts[0]), parse_complex(parts[1])
#
def build_parser():
	common = argparse.ArgumentParser(add_help=False)
	common.add_argument('-v', '--verbose', action='count', default=0, help='-v for progress, -vv for debugging output')
	common.add_argument('--config', help='file of "key = value" settings; flags win over it')
	common.add_argument('--json', help='write the JSON record here')
	common.add_argument('--max-iter', type=int, default=200)
	#
	mapped = argparse.ArgumentParser(add_help=False)
	mapped.add_argument('--a', type=parse_complex)
	mapped.add_argument('--b', type=parse_complex)
	mapped.add_argument('--u', type=parse_complex)
	mapped.add_argument('--v', type=parse_complex)
	#
	image = argparse.ArgumentParser(add_help=False)
	image.add_argument('--viewport', type=parse_viewport, default='0,0,8', help='"cx,cy,width"')
	image.add_argument('--px', type=parse_pixels, default='400x300', help='"WxH"')
	image.add_argument('--out', help='image file (.ppm or .png)')
	#
	puzzled = argparse.ArgumentParser(add_help=False)
	puzzled.add_argument('--theta', type=float, default=0.0, help='internal angle in turns')
	puzzled.add_argument('--address', type=parse_address, default=puzzle.DEFAULT_ADDRESS)
	puzzled.add_argument('--level', type=float)
	puzzled.add_argument('--M', type=float, default=4.0)
	puzzled.add_argument('--depth', type=int, default=2)
	puzzled.add_argument('--point', type=parse_complex)
	#
	parser = argparse.ArgumentParser(prog='cosinepuzzle', description='Rays, puzzles and renormalization for cosine maps.')
	commands = parser.add_subparsers(dest='command', metavar='command')
	commands.required = True
	#
	sub = commands.add_parser('render', parents=[common, mapped, image], help='escape-time picture of the Julia set')
	sub.add_argument('--escape-re', type=float, default=50.0)
	sub.add_argument('--address', type=parse_address, help='draw this dynamic ray')
	sub.add_argument('--t-lo', type=float, default=0.05)
	sub.add_argument('--t-hi', type=float, default=10.0)
	sub.set_defaults(run=command_render)
	#
	sub = commands.add_parser('trace-ray', parents=[common, mapped, image], help='sample a dynamic ray')
	sub.add_argument('--address', type=parse_address, required=True)
	sub.add_argument('--t-lo', type=float, default=0.5)
	sub.add_argument('--t-hi', type=float, default=10.0)
	sub.add_argument('--depth', type=int, default=1)
	sub.add_argument('--samples', type=int, default=200)
	sub.add_argument('--tol', type=float, default=1e-8)
	sub.set_defaults(run=command_trace_ray)
	#
	sub = commands.add_parser('land', parents=[common, mapped], help='landing point of a periodic ray')
	sub.add_argument('--address', type=parse_address, required=True)
	sub.set_defaults(run=command_land)
	#
	sub = commands.add_parser('graph', parents=[common, mapped, image, puzzled], help='the depth-0 puzzle graph')
	sub.set_defaults(run=command_graph)
	#
	sub = commands.add_parser('puzzle', parents=[common, mapped, image, puzzled], help='puzzle pieces to a given depth')
	sub.add_argument('--csv', help='write one row per piece here')
	sub.set_defaults(run=command_puzzle)
	#
	for name, run, text in (('tableau', command_tableau, 'tableau of a point'), ('renorm-tableau', command_renorm_tableau, 'renormalization from a critical tableau')):
		sub = commands.add_parser(name, parents=[common, mapped, image, puzzled], help=text)
		sub.add_argument('--length', type=int, default=8)
		sub.add_argument('--csv', help='write the tableau grid here')
		sub.set_defaults(run=run)
	#
	sub = commands.add_parser('renorm-escape', parents=[common, mapped, image], help='quadratic-like restriction when -v escapes')
	sub.add_argument('--k0', type=int, default=-1)
	sub.add_argument('--M', type=float, default=3.0)
	sub.set_defaults(run=command_renorm_escape)
	#
	sub = commands.add_parser('diameters', parents=[common, mapped, image], help='spherical diameters of Fatou components')
	sub.add_argument('--depth', type=int, default=8, help='largest preperiod looked for')
	sub.set_defaults(run=command_diameters)
	#
	sub = commands.add_parser('scan', parents=[common], help='classify critical orbits along a parameter segment')
	sub.add_argument('--start', type=_parameter_pair, required=True, help='"u;v"')
	sub.add_argument('--end', type=_parameter_pair, required=True, help='"u;v"')
	sub.add_argument('--samples', type=int, default=50)
	sub.add_argument('--plus', choices=scan.KINDS, default='attracted')
	sub.add_argument('--minus', choices=scan.KINDS, default='escaping')
	sub.add_argument('--separate-basins', action='store_true')
	sub.set_defaults(run=command_scan)
	return parser, commands.choices
#
def parse_arguments(argv):
	parser, subparsers = build_parser()
	args = parser.parse_args(argv)
	if args.config:
		config.apply_config(subparsers[args.command], config.load_config(args.config))
		args = parser.parse_args(argv)
	return args
#
def main(argv=None):
	if argv is None:
		argv = sys.argv[1:]
	try:
		args = parse_arguments(argv)
	except (InvalidParameterError, IOError) as e:
		sys.stderr.write('cosinepuzzle: {}\n'.format(e))
		return 2
	levels = [logging.WARNING, logging.INFO, logging.DEBUG]
	logging.basicConfig(level=levels[min(args.verbose, 2)], format='%(levelname)s %(name)s: %(message)s')
	#
	try:
		args.run(args)
	except CosinePuzzleError as e:
		logger.debug('%s failed', args.command, exc_info=True)
		sys.stderr.write('cosinepuzzle {}: {} [{}]\n'.format(args.command, e, e.status))
		return e.exit_code
	return 0
#
if __name__ == '__main__':
	sys.exit(main())
