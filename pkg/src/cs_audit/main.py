"""Command-line entry point."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from cs_audit.analysis import VerificationFacade
from cs_audit.analysis.domain.experiment import ExperimentSpec
from cs_audit.analysis.domain.report import canonical_json
from cs_audit.bounds import (
    BoundQuery,
    max_sparsity,
    required_measurements,
    sparsify,
    synthetic_signal,
    write_comparison_csv,
)
from cs_audit.config import config
from cs_audit.constructions import (
    build_frames,
    expected_symmetric_size,
    gram_blocks,
    layout_residual,
    make_random_omega,
    make_symmetric_omega,
    rank_chain,
    symmetry_residual,
)
from cs_audit.errors import AuditError, InvalidInputError, NumericalError, OutputError
from cs_audit.recovery import (
    BasisPursuitParams,
    basis_pursuit,
    measure,
    p0_solve,
    read_signal_csv,
    uniqueness_check,
)
from cs_audit.recovery.basis_pursuit import warmup_kernels as warmup_admm
from cs_audit.robustness import maximal_robustness, spark, warmup_kernels

logger = logging.getLogger(__name__)

FRAME_CHOICES = ('psi', 'phi', 'q')


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=getattr(logging, (level or config.get('logging.level', 'INFO')).upper(), logging.INFO),
        format=config.get('logging.format', '%(asctime)s - %(name)s - %(levelname)s - %(message)s'),
        stream=sys.stderr,
        force=True,
    )


def _frames(args) -> Dict[str, Any]:
    omega = make_symmetric_omega(args.n, args.policy)
    psi, q, phi = build_frames(args.n, omega, args.precision)
    return {'omega': omega, 'psi': psi, 'q': q, 'phi': phi}


def _load_signal(args, length: int):
    if not args.signal:
        raise InvalidInputError("--signal CSV is required")
    return read_signal_csv(args.signal, length)


def cmd_omega(args) -> Dict[str, Any]:
    if args.random_m is not None:
        omega = make_random_omega(args.n, args.random_m, _seed(args))
        return {**omega.to_dict(), 'kind': 'random', 'seed': _seed(args)}
    omega = make_symmetric_omega(args.n, args.policy)
    return {**omega.to_dict(), 'kind': 'symmetric', 'expected_size': expected_symmetric_size(args.n)}


def cmd_frame(args) -> Dict[str, Any]:
    f = _frames(args)
    omega, psi, q, phi = f['omega'], f['psi'], f['q'], f['phi']
    k = omega.half_modulus
    payload = {
        'omega': omega.to_dict(),
        'shapes': {name: list(f[name].shape) for name in FRAME_CHOICES},
        'q_unitary_residual': q.matmul(q.conj_transpose()).identity_residual(),
        'psi_orthonormal_residual': psi.matmul(psi.conj_transpose()).identity_residual(),
        'phi_imag_residue': psi.matmul(q.conj_transpose()).max_imag(),
        'phi_symmetry_residual': symmetry_residual(phi, omega),
        'gram_offdiag_max': gram_blocks(phi, k).offdiag_max,
        'phi_layout_residual': layout_residual(phi, omega),
        'rank_chain': rank_chain(phi, k).to_dict(),
    }
    if args.entries:
        payload['matrix'] = f[args.frame].to_dict()
    return payload


def cmd_robustness(args) -> Dict[str, Any]:
    warmup_kernels()
    a = _frames(args)[args.frame]
    return maximal_robustness(a, args.mode, args.force_budget, args.workers).to_dict()


def cmd_spark(args) -> Dict[str, Any]:
    warmup_kernels()
    a = _frames(args)[args.frame]
    return spark(a, args.mode, args.force_budget, args.workers).to_dict()


def cmd_p0(args) -> Dict[str, Any]:
    warmup_kernels()
    a = _frames(args)[args.frame]
    f = _load_signal(args, a.cols)
    real_only = args.real_only
    if args.uniqueness:
        return uniqueness_check(a, f, args.tau_feas, real_only=real_only).to_dict()
    s_max = f.norm0 if args.s_max is None else args.s_max
    result = p0_solve(a, measure(a, f), s_max, args.tau_feas, real_only=real_only)
    return {'signal': f.to_dict(), 'result': result.to_dict()}


def cmd_bp(args) -> Dict[str, Any]:
    warmup_admm()
    a = _frames(args)[args.frame]
    f = _load_signal(args, a.cols)
    params = BasisPursuitParams.from_config(rho=args.rho, max_iter=args.max_iter,
                                            tol_primal=args.tol_primal, tol_dual=args.tol_dual)
    result = basis_pursuit(a, measure(a, f), params)
    return {
        'signal': f.to_dict(),
        'params': params.to_dict(),
        'result': result.to_dict(),
        'l2_error': float(np.linalg.norm(result.dense - f.to_dense())),
    }


def cmd_bound(args) -> Dict[str, Any]:
    if args.s is not None:
        return required_measurements(args.s, args.n, args.mu, args.c).to_dict()
    if args.m is None:
        raise InvalidInputError("bound needs --m (sparsity budget) or --s (measurement requirement)")
    return max_sparsity(BoundQuery(args.n, args.m, args.mu, args.c)).to_dict()


def cmd_sparsify(args) -> Dict[str, Any]:
    if args.input:
        try:
            x = pd.read_csv(args.input, header=None).iloc[:, 0].to_numpy(dtype=float)
        except (OSError, ValueError) as e:
            raise InvalidInputError(f"Cannot read signal {args.input}: {e}")
    else:
        x = synthetic_signal(args.length or int(config.get('bounds.synthetic_length', 4096)))
    fractions = args.keep if args.keep else list(config.get('bounds.keep_fractions'))
    results = [sparsify(x, float(frac)) for frac in fractions]
    payload: Dict[str, Any] = {'length': int(x.size), 'results': [r.to_dict() for r in results]}
    if args.csv_out:
        if len(results) != 1:
            raise InvalidInputError("--csv-out needs exactly one --keep fraction")
        payload['comparison_csv'] = str(write_comparison_csv(x, results[0], args.csv_out))
    return payload


def _facade(args):
    return VerificationFacade(
        output_base_dir=args.out,
        precision=args.precision,
        master_seed=args.seed,
        workers=args.workers,
        force_budget=args.force_budget,
        golden_dir=args.golden,
    )


def _report_summary(report, facade) -> Dict[str, Any]:
    return {
        'run_dir': str(facade.get_run_directory()),
        'body_sha256': report.body_sha256(),
        'verdicts': report.verdicts(),
        'golden': report.golden,
    }


def cmd_verify(args) -> Dict[str, Any]:
    warmup_kernels()
    warmup_admm()
    facade = _facade(args)
    return _report_summary(facade.verify_all(parallel=args.parallel), facade)


def cmd_run(args) -> Dict[str, Any]:
    spec = ExperimentSpec.load(args.spec)
    warmup_kernels()
    warmup_admm()
    facade = _facade(args)
    return _report_summary(facade.run_experiment(spec), facade)


def _seed(args) -> int:
    return int(args.seed if args.seed is not None else config.get('harness.master_seed', 0))


def _common_flags() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--precision', choices=['double', 'extended'], default=None,
                        help='Floating-point precision (default from config)')
    common.add_argument('--seed', type=int, default=None, help='Master seed (unsigned 64-bit)')
    common.add_argument('--out', default=None, help='Output directory')
    common.add_argument('--force-budget', action='store_true',
                        help='Allow exhaustive enumeration beyond the subset budget')
    common.add_argument('--workers', type=int, default=None, help='Parallel enumeration workers')
    common.add_argument('--golden', default=None, help='Golden directory to compare evidence files against')
    common.add_argument('--config', default=None, help='Alternative config.yaml')
    common.add_argument('--log-level', default=None, help='DEBUG, INFO, WARNING or ERROR')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog='cs-audit', description='Verify sparse recovery claims on partial Fourier frames')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    def frame_command(name: str, handler, help_text: str, frame_default: str = 'phi'):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument('--n', type=int, required=True, help='Prime modulus N')
        p.add_argument('--frame', choices=FRAME_CHOICES, default=frame_default)
        p.add_argument('--policy', default=None, help='Omega membership policy')
        p.set_defaults(handler=handler)
        return p

    p = sub.add_parser('omega', parents=[common], help='Symmetric or random frequency set')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--policy', default=None)
    p.add_argument('--random-m', type=int, default=None, help='Draw m random frequencies instead')
    p.set_defaults(handler=cmd_omega)

    p = frame_command('frame', cmd_frame, 'Psi, Q, Phi with identity residuals and rank chain')
    p.add_argument('--entries', action='store_true', help='Include the entries of --frame')

    for name, handler, help_text in (('robustness', cmd_robustness, 'Maximal robustness verdict'),
                                     ('spark', cmd_spark, 'Spark by ascending subset size')):
        p = frame_command(name, handler, help_text)
        p.add_argument('--mode', choices=['floating', 'exact', 'both'], default='floating')

    p = frame_command('p0', cmd_p0, 'Exhaustive l0 recovery of a signal from its measurements')
    p.add_argument('--signal', required=True, help='Signal CSV (index,real,imag)')
    p.add_argument('--s-max', type=int, default=None)
    p.add_argument('--tau-feas', type=float, default=None)
    p.add_argument('--real-only', action='store_true')
    p.add_argument('--uniqueness', action='store_true', help='Run the per-signal uniqueness check')

    p = frame_command('bp', cmd_bp, 'Basis pursuit via ADMM')
    p.add_argument('--signal', required=True, help='Signal CSV (index,real,imag)')
    p.add_argument('--rho', type=float, default=None)
    p.add_argument('--max-iter', type=int, default=None)
    p.add_argument('--tol-primal', type=float, default=None)
    p.add_argument('--tol-dual', type=float, default=None)

    p = sub.add_parser('bound', parents=[common], help='Sparsity budget or measurement requirement')
    p.add_argument('--n', type=float, required=True)
    p.add_argument('--m', type=float, default=None)
    p.add_argument('--mu', type=float, default=1.0)
    p.add_argument('--c', type=float, default=None)
    p.add_argument('--s', type=int, default=None, help='Report measurements needed for sparsity s')
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser('sparsify', parents=[common], help='DCT sparsification with PSNR')
    p.add_argument('--keep', type=float, action='append', default=None, help='Keep fraction (repeatable)')
    p.add_argument('--input', default=None, help='Single-column CSV signal (default: synthetic)')
    p.add_argument('--length', type=int, default=None)
    p.add_argument('--csv-out', default=None, help='Write original/reconstruction CSV')
    p.set_defaults(handler=cmd_sparsify)

    p = sub.add_parser('verify', parents=[common], help='Run the full claim suite')
    p.add_argument('--parallel', action='store_true', help='Run scenarios concurrently')
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser('run', parents=[common], help='Run one experiment spec (YAML)')
    p.add_argument('spec', help='Experiment spec file')
    p.set_defaults(handler=cmd_run)
    return parser


def _write_payload(args, text: str) -> None:
    if args.out is None or args.command in ('verify', 'run'):
        return
    path = Path(args.out) / f"{args.command}.json"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n")
    except OSError as e:
        raise OutputError(f"Cannot write to {path}: {e}")


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand, print its JSON to stdout."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            config.reload(args.config)
    except OSError as e:
        _configure_logging(args.log_level)
        logger.error(f"Cannot read config {args.config}: {e}")
        return 1
    _configure_logging(args.log_level)

    try:
        payload = args.handler(args)
        text = canonical_json(payload)
        _write_payload(args, text)
    except AuditError as e:
        logger.error(str(e))
        return e.exit_code
    except np.linalg.LinAlgError as e:
        logger.error(f"Linear algebra failure: {e}")
        return NumericalError.exit_code
    print(text)
    return 0


if __name__ == '__main__':
    sys.exit(main())
