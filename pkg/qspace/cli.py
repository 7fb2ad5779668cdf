"""
Command-line front end for the qspace engine.

Every verb parses its operands with the expression grammar, runs one engine
operation and prints a JSON report on stdout.  `verify` runs the property
suites.  Exit codes: 0 success, 1 verification failure or unexpected error,
2 usage error.
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

# Add shared utilities to path
sys.path.append(str(Path(__file__).parent.parent / "shared"))
from utils import dump_json, load_json_file, setup_logging, write_json_file
from rich_ui import (create_results_table, show_failure_panel, show_success_panel,
                     show_tool_header)

from .config import EngineParams
from .coords import CoordinateSystem, coordinate_system
from .errors import QSpaceError, UnsupportedSpaceError
from .expression import parse_expression, scalar_to_json, to_json
from .manin import (EXP_VARIANTS, ORDERINGS, PAIRING_VARIANTS, VARIANTS, antipode, braided_product,
                    ordering_flip, pairing, qderiv, qderiv_inverse, qexp, star, translate)
from .minkowski import (DIRECTIONS, MODES, NESTING_ORDERS, mink_deriv, mink_inverse_series,
                        mink_ordering_reverse, mink_whole_space_integral)
from .polyfun import PolyFun, TensorPolyFun
from .qint import (LIMITS, VOLUME_SPACES, LatticeFun, definite_inverse_derivative, jackson_int_num,
                   whole_space_integral)
from .verifiers import SUITES, run_verify

logger = logging.getLogger(__name__)

COMMANDS = ('star', 'flip', 'translate', 'antipode', 'deriv', 'integrate', 'pair', 'exp', 'braid',
            'mink-deriv', 'mink-flip', 'mink-integrate', 'verify')

# verb -> number of expression operands
OPERANDS = {
    'star': 2, 'flip': 1, 'translate': 1, 'antipode': 1, 'deriv': 1, 'integrate': 1,
    'pair': 2, 'exp': 0, 'braid': 2, 'mink-deriv': 1, 'mink-flip': 1, 'mink-integrate': 1,
    'verify': 1,
}

# verbs whose closed forms only exist on the Manin plane
PLANE_ONLY = ('star', 'flip', 'translate', 'antipode', 'deriv', 'pair', 'exp', 'braid')

# verbs that accept Laurent operands
LAURENT_VERBS = ('deriv', 'mink-deriv')

DEFAULT_VARIANT = {
    'translate': 'L', 'antipode': 'L', 'braid': 'L', 'deriv': 'L', 'integrate': 'L',
    'pair': 'L,Rbar', 'exp': 'R,Lbar',
}

ALLOWED_VARIANTS = {
    'translate': VARIANTS, 'antipode': VARIANTS, 'braid': VARIANTS,
    'deriv': VARIANTS, 'integrate': VARIANTS, 'pair': PAIRING_VARIANTS, 'exp': EXP_VARIANTS,
}


class UsageError(QSpaceError):
    """Operands or options that do not fit the verb"""


def derivative_system() -> CoordinateSystem:
    """The plane relabelled d1, d2 for derivative operands of `pair`"""
    plane = coordinate_system('plane')
    return CoordinateSystem('plane', ('d1', 'd2'), plane.conjugate, plane.normal_order,
                            plane.metric_entries, plane.lowered_sign)


class QSpaceTool:
    """Main orchestrator: one verb per invocation"""

    def __init__(self, args, params: EngineParams):
        self.args = args
        self.params = params
        self.logger = logging.getLogger(__name__)

    def run(self) -> int:
        """Main execution flow; returns the exit code"""
        command = self.args.command
        started = time.perf_counter()
        try:
            self.logger.debug(f"=== qspace {command} ===")
            if self.args.table:
                show_tool_header(command, self.describe())
            if command == 'verify':
                report, ok = self.verify()
            else:
                report, ok = self.operate(command), True
        except QSpaceError as e:
            self.logger.error(f"{command}: {e}")
            return 2
        except ValueError as e:
            self.logger.error(f"{command}: invalid argument: {e}")
            return 2
        except Exception as e:
            self.logger.error(f"Unexpected error: {e}", exc_info=True)
            return 1

        if self.args.no_timing:
            report.pop('timing', None)
        elif command != 'verify':
            report['timing'] = {'duration_seconds': time.perf_counter() - started}
        self.emit(report)
        if self.args.table:
            self.render_table(report, ok)
        return 0 if ok else 1

    def describe(self) -> str:
        if self.args.command == 'verify':
            return f"property suite: {' '.join(self.args.operands) or '?'}"
        return ' '.join(self.args.operands) or self.args.command

    # -- operands --------------------------------------------------------

    def operands(self, command: str) -> List[str]:
        expected = OPERANDS[command]
        given = list(self.args.operands)
        if len(given) != expected:
            raise UsageError(f"{command} takes {expected} operand(s), got {len(given)}")
        return given

    def space(self, command: str) -> str:
        space = self.args.space or 'plane'
        if command in PLANE_ONLY and space != 'plane':
            raise UnsupportedSpaceError(f"{command} is only available on the plane, not {space}")
        if command == 'integrate' and space not in VOLUME_SPACES:
            raise UnsupportedSpaceError(f"integrate works on {VOLUME_SPACES}, not {space}")
        if command.startswith('mink-'):
            if self.args.space not in (None, 'minkowski'):
                raise UnsupportedSpaceError(f"{command} works on Minkowski space, not {space}")
            return 'minkowski_radial'
        return space

    def parse(self, command: str, text: str, space) -> PolyFun:
        f = parse_expression(text, space)
        if command not in LAURENT_VERBS:
            f.require_polynomial(command)
        return f

    def variant(self, command: str) -> str:
        variant = self.args.variant or DEFAULT_VARIANT[command]
        allowed = ALLOWED_VARIANTS[command]
        if variant not in allowed:
            raise UsageError(f"{command} takes variant in {allowed}, got {variant!r}")
        return variant

    def which(self) -> int:
        try:
            which = int(self.args.which or 1)
        except ValueError:
            raise UsageError(f"--which must be 1 or 2 on the plane, got {self.args.which!r}")
        if which not in (1, 2):
            raise UsageError(f"--which must be 1 or 2 on the plane, got {which}")
        return which

    # -- verbs -----------------------------------------------------------

    def operate(self, command: str) -> Dict[str, Any]:
        texts = self.operands(command)
        space = self.space(command)
        f, g = None, None
        if command == 'pair':
            f = self.parse(command, texts[0], derivative_system())
            f = PolyFun(coordinate_system('plane'), dict(f.terms))
            g = self.parse(command, texts[1], space)
        elif texts:
            f = self.parse(command, texts[0], space)
            if len(texts) > 1:
                g = self.parse(command, texts[1], space)

        handler = getattr(self, '_' + command.replace('-', '_'))
        result, extra = handler(f, g)
        report = {'command': command, 'space': space, 'input': list(texts), 'result': result}
        report.update(extra)
        self.logger.info(f"✓ {command} done")
        return report

    def _star(self, f, g):
        ordering = self.args.ordering or 'standard'
        return to_json(star(f, g, ordering)), {'ordering': ordering}

    def _flip(self, f, g):
        direction = 'inverse' if self.args.inverse else 'forward'
        return to_json(ordering_flip(f, direction)), {'direction': direction}

    def _translate(self, f, g):
        variant = self.variant('translate')
        return to_json(translate(f, variant)), {'variant': variant}

    def _antipode(self, f, g):
        variant = self.variant('antipode')
        return to_json(antipode(f, variant)), {'variant': variant}

    def _braid(self, f, g):
        variant = self.variant('braid')
        return to_json(braided_product(TensorPolyFun.from_factors(f, g), variant)), {'variant': variant}

    def _deriv(self, f, g):
        variant, which = self.variant('deriv'), self.which()
        value = qderiv_inverse(f, which, variant) if self.args.inverse else qderiv(f, which, variant)
        return to_json(value), {'variant': variant, 'which': which, 'inverse': bool(self.args.inverse)}

    def _pair(self, f, g):
        variant = self.variant('pair')
        return scalar_to_json(pairing(f, g, variant), q0=self.params.q), {'variant': variant}

    def _exp(self, f, g):
        variant = self.variant('exp')
        return to_json(qexp(self.params.N, variant)), {'variant': variant, 'N': self.params.N}

    def _integrate(self, f, g):
        """Formal definite integral, or a numeric Gaussian-weighted integral"""
        ip = self.params.integral()
        space = f.coords.tag
        if self.args.limits is None:
            if space != 'plane':
                raise UnsupportedSpaceError("formal integrals are only available on the plane")
            which = self.which()
            return to_json(definite_inverse_derivative(f, which)), {'which': which, 'limits': 'y..z'}

        integrand = LatticeFun.gaussian_weighted(f, ip.q_real, self.args.scale)
        extra = {'params': ip.to_dict(), 'scale': self.args.scale, 'limits': self.args.limits}
        if self.args.limits == 'space':
            variant = self.variant('integrate') if space == 'plane' else 'L'
            order = self.args.order or 'standard'
            result = whole_space_integral(space, integrand, ip, variant, order, strict=self.args.strict)
            extra.update(variant=variant, order=order)
        else:
            which = self.which() if space == 'plane' else int(self.args.which or 1)
            if not 1 <= which <= f.coords.dim:
                raise UsageError(f"--which must lie in 1..{f.coords.dim}")
            point = (ip.x0,) * f.coords.dim
            result = jackson_int_num(integrand, which - 1, self.args.lattice, self.args.limits, ip,
                                     x=self.args.x, point=point, strict=self.args.strict)
            extra.update(which=which, lattice=self.args.lattice, x=self.args.x)
        return to_json(result), extra

    def _mink_deriv(self, f, g):
        which = self.args.which or '3'
        if which not in DIRECTIONS:
            raise UsageError(f"Minkowski direction must be one of {DIRECTIONS}, got {which!r}")
        extra = {'which': which, 'inverse': bool(self.args.inverse)}
        if not self.args.inverse:
            return to_json(mink_deriv(f, which)), extra
        f.require_polynomial("Minkowski inverse derivative")
        series = mink_inverse_series(f, which)
        extra.update(series_terms=series.order, resummed=series.resummed)
        return to_json(series.value), extra

    def _mink_flip(self, f, g):
        return to_json(mink_ordering_reverse(f)), {}

    def _mink_integrate(self, f, g):
        ip = self.params.integral()
        mode = self.args.mode or 'closed_form'
        order = self.args.order or 'standard'
        integrand = LatticeFun.gaussian_weighted(f, ip.q_real, self.args.scale)
        result = mink_whole_space_integral(integrand, ip, mode, self.args.series_order, order,
                                           strict=self.args.strict)
        return to_json(result), {'mode': mode, 'order': order, 'series_order': self.args.series_order,
                                 'scale': self.args.scale}

    def verify(self) -> Tuple[Dict[str, Any], bool]:
        suite = self.operands('verify')[0]
        report = run_verify(suite, self.params)
        out = {'command': 'verify', 'suite': suite, 'results': report['results'], 'timing': report['timing']}
        return out, report['results']['passed']

    # -- output ----------------------------------------------------------

    def emit(self, report: Dict[str, Any]):
        sys.stdout.write(dump_json(report))
        sys.stdout.flush()
        if self.args.output:
            path = write_json_file(report, self.args.output)
            self.logger.info(f"Report written to {path}")

    def render_table(self, report: Dict[str, Any], ok: bool):
        if report['command'] == 'verify':
            rows = []
            for name, suite in report['results']['suites'].items():
                for prop, record in suite['properties'].items():
                    status = '✓' if record['failures'] == 0 else '✗'
                    rows.append((name, prop, record['cases'], record['failures'], status))
            create_results_table(rows, ('Suite', 'Property', 'Cases', 'Failures', 'Status'),
                                 title="Verification")
            if ok:
                show_success_panel("verify", f"All {len(rows)} properties passed")
            else:
                failed = [f"{suite}/{prop}" for suite, prop, _, failures, _ in rows if failures]
                show_failure_panel("verify", f"{len(failed)} properties failed", failed[:10])
            return

        result = report['result']
        rows = [(key, value) for key, value in sorted(report.items())
                if key not in ('result', 'timing', 'params', 'input')]
        if isinstance(result, dict):
            rows.extend(('result.' + key, result[key]) for key in ('text', 'value', 'tail_bound')
                        if key in result)
        create_results_table(rows, ('Field', 'Value'), title=report['command'])
        show_success_panel(report['command'], "Done")


def load_params(args) -> EngineParams:
    """Defaults < QSPACE_SEED < --config file < flags"""
    params = EngineParams.from_env()
    if args.config:
        data = load_json_file(args.config)
        if data is None:
            raise UsageError(f"cannot read config file {args.config}")
        params = params.with_config(data)
    params = params.with_overrides(q=args.q, K=args.K, tol=args.tol, N=args.N, x0=args.x0,
                                   degree=args.degree, samples=args.samples, seed=args.seed)
    return params.validate()


def create_parser():
    """Create command line argument parser"""
    parser = argparse.ArgumentParser(
        description="qspace: q-deformed analysis on quantum spaces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python qspace-tool.py star "x1^2" "x2"
  python qspace-tool.py translate "x1*x2" --variant Lbar
  python qspace-tool.py deriv "x1^2*x2" --which 2 --variant R
  python qspace-tool.py pair "d1*d2" "x2*x1"
  python qspace-tool.py exp --N 4
  python qspace-tool.py integrate "x1*x2 + 1" --limits space --q 1.05
  python qspace-tool.py mink-deriv "xp*xm" --which 3 --inverse
  python qspace-tool.py mink-integrate "1" --mode nested_series
  python qspace-tool.py verify hopf --degree 5 --table
  QSPACE_SEED=7 python qspace-tool.py verify all --no-timing
        """
    )

    parser.add_argument('command', choices=COMMANDS, help='Operation to run')
    parser.add_argument('operands', nargs='*',
                        help=f"Expressions, or a suite name for verify ({', '.join(SUITES)}, all)")

    parser.add_argument('--space', choices=['plane', 'euclid3', 'euclid4', 'minkowski'],
                        help='Quantum space of the operands (default: plane)')
    parser.add_argument('--variant', help='Calculus variant: L, Lbar, R, Rbar; pairs like L,Rbar')
    parser.add_argument('--ordering', choices=ORDERINGS, help='Star-product ordering')
    parser.add_argument('--which', help='Derivative index (1, 2) or Minkowski direction (3, +, -, 2)')
    parser.add_argument('--inverse', action='store_true',
                        help='Inverse derivative, or the inverse ordering flip')

    integration = parser.add_argument_group('integration')
    integration.add_argument('--limits', choices=list(LIMITS) + ['space'],
                             help="Numeric limits; 'space' integrates over the whole space")
    integration.add_argument('--x', type=float, help='Finite limit x')
    integration.add_argument('--lattice', type=int, default=2, help='Lattice exponent a (default: 2)')
    integration.add_argument('--scale', type=float, default=1.0,
                             help='Gaussian weight width (default: 1.0)')
    integration.add_argument('--order', help='Pipeline order: standard or swapped (plane); '
                                             f"{', '.join(NESTING_ORDERS)} (Minkowski)")
    integration.add_argument('--mode', choices=MODES, help='Minkowski volume pipeline')
    integration.add_argument('--series-order', type=int, default=2,
                             help='Terms of each inverse-derivative series (default: 2)')
    integration.add_argument('--strict', action='store_true',
                             help='Fail when the tail estimate exceeds tol')

    numeric = parser.add_argument_group('parameters')
    numeric.add_argument('--q', type=float, help='Numeric value of q (default: 1.1)')
    numeric.add_argument('--K', type=int, help='Lattice truncation (default: 500)')
    numeric.add_argument('--tol', type=float, help='Tail tolerance (default: 1e-10)')
    numeric.add_argument('--N', type=int, help='Exponential truncation degree (default: 8)')
    numeric.add_argument('--x0', type=float, help='Lattice reference point (default: 1.0)')
    numeric.add_argument('--degree', type=int, help='Maximum degree of verification sweeps (default: 5)')
    numeric.add_argument('--samples', type=int, help='Random samples per property (default: 25)')
    numeric.add_argument('--seed', type=int, help='RNG seed (default: $QSPACE_SEED or 0)')
    numeric.add_argument('--config', help='JSON file with parameter defaults')

    parser.add_argument('--output', help='Also write the JSON report to this file')
    parser.add_argument('--table', action='store_true', help='Render a human-readable table on stderr')
    parser.add_argument('--no-timing', action='store_true', help='Omit the timing section')
    parser.add_argument('--log-file', help='Append logs to this file instead of stderr')
    parser.add_argument('--verbose', '-v', action='store_true',
                        help='Enable verbose logging')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = create_parser()
    args = parser.parse_args(argv)

    # Setup logging
    log_level = logging.DEBUG if args.verbose else logging.INFO
    setup_logging(log_level, args.log_file)

    try:
        params = load_params(args)
    except (QSpaceError, ValueError) as e:
        logger.error(f"Invalid parameters: {e}")
        return 2

    return QSpaceTool(args, params).run()
