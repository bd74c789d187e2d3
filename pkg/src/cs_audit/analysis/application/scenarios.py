"""Scenario runners: each computes its tables, stores them and adjudicates its claims."""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Dict, Iterator, List, Tuple

import numpy as np
import pandas as pd
from sympy import primerange

from cs_audit.analysis.domain.claims import ClaimEntry, Verdict
from cs_audit.analysis.domain.experiment import Scenario
from cs_audit.analysis.infrastructure.storage import RunStorage
from cs_audit.bounds import (
    BoundQuery,
    dct_forward,
    dct_inverse,
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
    make_symmetric_omega,
    rank_chain,
    symmetry_residual,
)
from cs_audit.core import DenseMatrix, Precision, SparseSignal
from cs_audit.recovery import NOT_UNIQUE, UNIQUE, basis_pursuit, measure, uniqueness_check
from cs_audit.robustness import Mode, exact_rank_cyclotomic, maximal_robustness, numeric_rank, spark

logger = logging.getLogger(__name__)

CONSTRUCTION_CHECKS = 'construction_checks'

# Absolute tolerance for "BP returned f" and for the l1 comparison.
BP_MATCH_TOLERANCE = 1e-6


@dataclass(frozen=True)
class RunContext:
    """Run-wide settings shared by every scenario."""

    precision: Precision
    workers: int = 1
    force_budget: bool = False


def _support_text(support) -> str:
    return ' '.join(str(i) for i in support) if support else ''


def _all_or_contradicted(ok: bool) -> Verdict:
    return Verdict.SUPPORTED if ok else Verdict.CONTRADICTED


def _existence_verdict(found: int, checked: int) -> Verdict:
    """supported when an instance exists, contradicted when the exhaustive sweep found none."""
    if checked == 0:
        return Verdict.UNDECIDED
    return Verdict.SUPPORTED if found else Verdict.CONTRADICTED


def construction_checks(params: Dict[str, Any], seed: int, storage: RunStorage,
                        ctx: RunContext) -> List[ClaimEntry]:
    """Frequency-set parity, frame identities, Gram structure and ranks over prime sweeps."""
    tol = float(config.get('constructions.identity_tolerance', 1e-12))
    omega_max = int(params.get('omega_sweep_max', 199))
    identity_max = int(params.get('identity_sweep_max', 101))
    exact_primes = [int(p) for p in params.get('exact', [5, 7, 11, 13])]

    omega_rows = []
    for p in primerange(3, omega_max + 1):
        omega = make_symmetric_omega(int(p), policy='odd_half')
        expected = expected_symmetric_size(int(p))
        omega_rows.append({'modulus': int(p), 'k': omega.half_modulus, 'size': omega.size,
                           'expected': expected, 'symmetric': omega.is_symmetric()})
    omega_df = pd.DataFrame(omega_rows)
    omega_file = storage.save_table(f"{CONSTRUCTION_CHECKS}/omega_sizes", omega_df)
    parity_ok = bool(((omega_df['size'] == omega_df['expected']) & omega_df['symmetric']).all())

    identity_rows = []
    exact_rows = []
    for p in primerange(3, identity_max + 1):
        p = int(p)
        omega = make_symmetric_omega(p)
        psi, q, phi = build_frames(p, omega, Precision.DOUBLE)
        k = omega.half_modulus
        blocks = gram_blocks(phi, k)
        chain = rank_chain(phi, k)
        identity_rows.append({
            'modulus': p,
            'n': omega.size,
            'q_unitary_residual': q.matmul(q.conj_transpose()).identity_residual(),
            'psi_orthonormal_residual': psi.matmul(psi.conj_transpose()).identity_residual(),
            'phi_imag_residue': psi.matmul(q.conj_transpose()).max_imag(),
            'phi_layout_residual': layout_residual(phi, omega),
            'phi_symmetry_residual': symmetry_residual(phi, omega),
            'gram_offdiag_max': blocks.offdiag_max,
            'rank_psi': numeric_rank(psi),
            **{key: value for key, value in chain.to_dict().items() if key not in ('modulus', 'n')},
        })
        if p in exact_primes:
            exact_rows.append({'modulus': p, 'n': omega.size,
                               'exact_rank_psi': exact_rank_cyclotomic(psi.exact_form),
                               'exact_rank_phi': exact_rank_cyclotomic(phi.exact_form)})
    ident_df = pd.DataFrame(identity_rows)
    ident_file = storage.save_table(f"{CONSTRUCTION_CHECKS}/identities", ident_df)
    exact_df = pd.DataFrame(exact_rows, columns=['modulus', 'n', 'exact_rank_psi', 'exact_rank_phi'])
    exact_file = storage.save_table(f"{CONSTRUCTION_CHECKS}/exact_ranks", exact_df)

    residual_cols = ['q_unitary_residual', 'psi_orthonormal_residual', 'phi_imag_residue',
                     'phi_layout_residual', 'phi_symmetry_residual']
    worst = {c: float(ident_df[c].max()) for c in residual_cols}
    identities_ok = all(v <= tol for v in worst.values())
    offdiag = float(ident_df['gram_offdiag_max'].max())
    ranks_ok = bool(((ident_df['rank_psi'] == ident_df['n']) & (ident_df['rank_phi'] == ident_df['n'])).all())
    exact_ok = bool(((exact_df['exact_rank_psi'] == exact_df['n'])
                     & (exact_df['exact_rank_phi'] == exact_df['n'])).all())
    logger.info(f"Construction checks: parity={parity_ok}, identities={identities_ok}, "
                f"offdiag={offdiag:.2e}, ranks={ranks_ok}, exact ranks={exact_ok}")

    return [
        ClaimEntry.create('omega_size_parity', _all_or_contradicted(parity_ok), [omega_file],
                          primes=len(omega_df), max_modulus=omega_max),
        ClaimEntry.create('construction_identities', _all_or_contradicted(identities_ok), [ident_file],
                          worst_residuals=worst, tolerance=tol, max_modulus=identity_max),
        ClaimEntry.create('gram_block_diagonal', _all_or_contradicted(offdiag <= tol), [ident_file],
                          offdiag_max=offdiag, tolerance=tol),
        ClaimEntry.create('rank_equals_size', _all_or_contradicted(ranks_ok and exact_ok),
                          [ident_file, exact_file], numeric_ok=ranks_ok, exact_ok=exact_ok,
                          exact_primes=exact_primes),
    ]


def _symmetric_frames(p: int, precision: Precision) -> Dict[str, DenseMatrix]:
    psi, _, phi = build_frames(p, make_symmetric_omega(p), precision)
    return {'psi': psi, 'phi': phi}


def robustness_sweep(params: Dict[str, Any], seed: int, storage: RunStorage,
                     ctx: RunContext) -> List[ClaimEntry]:
    """Maximal robustness of Psi and Phi per prime, with witnesses or full enumeration counts."""
    precision = Precision.parse(params.get('precision') or ctx.precision)
    mode = Mode.parse(params.get('mode', 'both'))
    rows = []
    for p in params['primes']:
        frames = _symmetric_frames(int(p), precision)
        for name in params['frames']:
            report = maximal_robustness(frames[name], mode, ctx.force_budget, ctx.workers)
            rows.append({
                'modulus': int(p),
                'frame': name,
                'n_rows': report.n_rows,
                'n_cols': report.n_cols,
                'verdict': report.verdict,
                'witness': _support_text(report.witness),
                'subsets_checked': report.subsets_checked,
                'total_subsets': report.total_subsets,
                'dependent_subsets': report.dependent_subsets,
                'min_singular_value_seen': report.min_singular_value_seen,
                'arithmetic': report.arithmetic,
                'precision': report.precision,
            })
    df = pd.DataFrame(rows)
    table = storage.save_table(f"{Scenario.ROBUSTNESS_SWEEP.value}/verdicts", df)

    def frame_verdicts(name: str) -> List[str]:
        return df.loc[df['frame'] == name, 'verdict'].tolist()

    phi_v, psi_v = frame_verdicts('phi'), frame_verdicts('psi')
    entries = []
    if phi_v:
        entries.append(ClaimEntry.create(
            'phi_not_maximally_robust', _all_or_contradicted(all(v == 'not_robust' for v in phi_v)),
            [table], verdicts=phi_v))
    else:
        entries.append(ClaimEntry.create('phi_not_maximally_robust', Verdict.UNDECIDED, [table],
                                         reason="phi not in the sweep"))
    if psi_v:
        robust_all = all(v == 'robust' for v in psi_v)
        entries.append(ClaimEntry.create(
            'psi_not_maximally_robust',
            _all_or_contradicted(all(v == 'not_robust' for v in psi_v)), [table], verdicts=psi_v))
        entries.append(ClaimEntry.create(
            'prime_dft_minors_nonzero', _all_or_contradicted(robust_all), [table],
            verdicts=psi_v, note="minors restricted to the symmetric row set"))
    else:
        for claim_id in ('psi_not_maximally_robust', 'prime_dft_minors_nonzero'):
            entries.append(ClaimEntry.create(claim_id, Verdict.UNDECIDED, [table],
                                             reason="psi not in the sweep"))
    if mode is Mode.BOTH:
        entries.append(ClaimEntry.create('floating_exact_agreement', Verdict.SUPPORTED, [table],
                                         frames=len(df), precision=precision.value))
    else:
        entries.append(ClaimEntry.create('floating_exact_agreement', Verdict.UNDECIDED, [table],
                                         reason=f"mode {mode.value} runs a single arithmetic"))
    return entries


def _draw_values(rng: np.random.Generator, size: int, real: bool) -> List[complex]:
    """Magnitudes in [1, 2); real signals get random signs, complex ones random phases."""
    magnitude = 1.0 + rng.random(size)
    if real:
        return (magnitude * rng.choice([-1.0, 1.0], size=size)).tolist()
    return (magnitude * np.exp(2j * np.pi * rng.random(size))).tolist()


def iter_sparse_instances(params: Dict[str, Any], seed: int, precision: Precision
                          ) -> Iterator[Tuple[int, str, DenseMatrix, SparseSignal]]:
    """
    Every support of size 1..max_sparsity on each symmetric frame, values from one seeded stream.

    Phi instances are real-valued.
    """
    rng = np.random.default_rng(seed)
    max_s = int(params.get('max_sparsity', 2))
    for p in params['primes']:
        frames = _symmetric_frames(int(p), precision)
        for name in params['frames']:
            a = frames[name]
            for size in range(1, min(max_s, a.rows) + 1):
                for support in combinations(range(a.cols), size):
                    values = _draw_values(rng, size, real=(name == 'phi'))
                    yield int(p), name, a, SparseSignal(a.cols, support, values)


def _spark_table(params: Dict[str, Any], precision: Precision, ctx: RunContext) -> Dict[Tuple[int, str], Any]:
    sparks = {}
    for p in params['primes']:
        frames = _symmetric_frames(int(p), precision)
        for name in params['frames']:
            sparks[(int(p), name)] = spark(frames[name], params.get('spark_mode', 'floating'),
                                           ctx.force_budget, ctx.workers)
    return sparks


def p0_uniqueness_sweep(params: Dict[str, Any], seed: int, storage: RunStorage,
                        ctx: RunContext) -> List[ClaimEntry]:
    """Exhaustive small-support uniqueness against P0, with the spark sufficiency check."""
    tau_feas = float(params.get('tau_feas', config.get('recovery.tau_feas')))
    sparks = _spark_table(params, ctx.precision, ctx)
    rows = []
    for p, name, a, f in iter_sparse_instances(params, seed, ctx.precision):
        verdict = uniqueness_check(a, f, tau_feas, real_only=(name == 'phi'))
        result = verdict.result
        y = measure(a, f)
        cert = verdict.certificate
        cert_residual = float(np.linalg.norm(measure(a, cert) - y)) if cert is not None else None
        spark_value = sparks[(p, name)].spark
        sufficiency = 2 * f.norm0 < spark_value
        if verdict.verdict == UNIQUE:
            consistent = len(result.solutions) == 1 and result.sparsity_found == f.norm0
        elif verdict.verdict == NOT_UNIQUE:
            consistent = cert_residual is not None and cert_residual <= tau_feas
        else:
            consistent = True
        rows.append({
            'modulus': p,
            'frame': name,
            'support': _support_text(f.support),
            'norm0': f.norm0,
            'within_half': 2 * f.norm0 <= a.rows,
            'verdict': verdict.verdict,
            'sparsity_found': result.sparsity_found,
            'n_solutions': len(result.solutions),
            'overflow': result.overflow,
            'near_misses': result.near_misses,
            'certificate_support': _support_text(cert.support) if cert is not None else '',
            'certificate_residual': cert_residual,
            'spark': spark_value,
            'sufficiency_applies': sufficiency,
            'sufficiency_holds': (not sufficiency) or verdict.verdict == UNIQUE,
            'consistent': consistent,
        })
    df = pd.DataFrame(rows)
    table = storage.save_table(f"{Scenario.P0_UNIQUENESS_SWEEP.value}/instances", df)
    spark_df = pd.DataFrame([
        {'modulus': p, 'frame': name, 'n_rows': s.n_rows, 'spark': s.spark, 'full': s.full,
         'witness': _support_text(s.witness), 'arithmetic': s.arithmetic,
         'subsets_checked': s.subsets_checked}
        for (p, name), s in sparks.items()])
    spark_file = storage.save_table(f"{Scenario.P0_UNIQUENESS_SWEEP.value}/spark", spark_df)

    def tally(frame: str, verdict: str) -> Tuple[int, int]:
        sel = df[(df['frame'] == frame) & df['within_half']]
        return int((sel['verdict'] == verdict).sum()), len(sel)

    psi_not_unique, psi_checked = tally('psi', NOT_UNIQUE)
    psi_unique, _ = tally('psi', UNIQUE)
    phi_not_unique, phi_checked = tally('phi', NOT_UNIQUE)
    if psi_checked == 0:
        half_verdict = Verdict.UNDECIDED
    elif psi_not_unique:
        half_verdict = Verdict.CONTRADICTED
    else:
        half_verdict = Verdict.SUPPORTED if psi_unique == psi_checked else Verdict.UNDECIDED

    consistent = bool(df['consistent'].all() and df['sufficiency_holds'].all())
    evidence = [table, spark_file]
    return [
        ClaimEntry.create('half_support_uniqueness', half_verdict, evidence,
                          instances=psi_checked, not_unique=psi_not_unique, frame='psi'),
        ClaimEntry.create('symmetric_omega_non_uniqueness', _existence_verdict(psi_not_unique, psi_checked),
                          evidence, instances=psi_checked, not_unique=psi_not_unique, frame='psi'),
        ClaimEntry.create('phi_non_uniqueness', _existence_verdict(phi_not_unique, phi_checked),
                          evidence, instances=phi_checked, not_unique=phi_not_unique, frame='phi'),
        ClaimEntry.create('p0_consistency', _all_or_contradicted(consistent), evidence,
                          instances=len(df),
                          inconsistent=int((~df['consistent']).sum()),
                          sufficiency_failures=int((~df['sufficiency_holds']).sum())),
    ]


def bp_vs_p0(params: Dict[str, Any], seed: int, storage: RunStorage, ctx: RunContext) -> List[ClaimEntry]:
    """Basis pursuit against the P0 oracle on the uniqueness-sweep instances."""
    tau_feas = float(params.get('tau_feas', config.get('recovery.tau_feas')))
    rows = []
    for p, name, a, f in iter_sparse_instances(params, seed, ctx.precision):
        p0_verdict = uniqueness_check(a, f, tau_feas, real_only=(name == 'phi')).verdict
        bp = basis_pursuit(a, measure(a, f))
        error = float(np.linalg.norm(bp.dense - f.to_dense()))
        l1_bp = float(np.sum(np.abs(bp.dense)))
        if not bp.converged:
            logger.info(f"BP did not converge on {a.label} support {f.support}")
        rows.append({
            'modulus': p,
            'frame': name,
            'support': _support_text(f.support),
            'p0_verdict': p0_verdict,
            'bp_converged': bp.converged,
            'iterations': bp.iterations,
            'residual_l2': bp.residual_l2,
            'l2_error': error,
            'l1_bp': l1_bp,
            'l1_f': f.norm1,
            'l0_bp': bp.sparsity_found,
            'l0_f': f.norm0,
            'bp_support': _support_text(bp.solutions[0].support),
        })
    df = pd.DataFrame(rows)
    table = storage.save_table(f"{Scenario.BP_VS_P0.value}/instances", df)

    converged = df[df['bp_converged']]
    unique = converged[converged['p0_verdict'] == UNIQUE]
    recovery_fail = unique[unique['l2_error'] > BP_MATCH_TOLERANCE]
    l1_fail = converged[converged['l1_bp'] > converged['l1_f'] + BP_MATCH_TOLERANCE]
    gaps = converged[converged['l0_bp'] > converged['l0_f']]
    ok = len(recovery_fail) == 0 and len(l1_fail) == 0
    return [ClaimEntry.create(
        'basis_pursuit_sanity', _all_or_contradicted(ok), [table],
        instances=len(df), non_converged=len(df) - len(converged),
        recovery_failures=len(recovery_fail), l1_failures=len(l1_fail), l0_gaps=len(gaps),
        gap_examples=[f"{r.frame}(N={r.modulus}) support {r.support}" for r in gaps.head(5).itertuples()],
    )]


def bound_table(params: Dict[str, Any], seed: int, storage: RunStorage, ctx: RunContext) -> List[ClaimEntry]:
    """Sparsity budgets and measurement requirements for the configured rows."""
    c_const = float(params.get('c_const', config.get('bounds.c_const', 46.0)))
    budgets = []
    for row in params['rows']:
        query = BoundQuery(float(row['n']), float(row['m']), float(row.get('mu', 1.0)),
                           float(row.get('c_const', c_const)))
        budgets.append(max_sparsity(query).to_dict())
    budget_df = pd.DataFrame(budgets)
    budget_file = storage.save_table(f"{Scenario.BOUND_TABLE.value}/sparsity", budget_df)

    requirements = [
        required_measurements(int(r['s']), float(r['n']), float(r.get('mu', 1.0)), c_const).to_dict()
        for r in params.get('requirements') or []]
    req_df = pd.DataFrame(requirements, columns=['s', 'n', 'mu', 'c_const', 'm', 'infeasible', 'reason'])
    req_file = storage.save_table(f"{Scenario.BOUND_TABLE.value}/requirements", req_df)

    example = budget_df[(budget_df['n'] == 1024) & (budget_df['m'] == 512)
                        & (budget_df['mu'] == 1.0) & (budget_df['c_const'] == 46.0)]
    if len(example):
        s = float(example['s'].iloc[0])
        floor, ceil = int(example['s_floor'].iloc[0]), int(example['s_ceil'].iloc[0])
        ok = 1.55 <= s <= 1.65 and floor == 1 and ceil == 2
        example_entry = ClaimEntry.create('sparsity_budget_example', _all_or_contradicted(ok), [budget_file],
                                          s=s, fraction_of_n=2 / 1024)
    else:
        example_entry = ClaimEntry.create('sparsity_budget_example', Verdict.UNDECIDED, [budget_file],
                                          reason="row (1024, 512, 1, C=46) not requested")
    infeasible = int(req_df['infeasible'].sum()) if len(req_df) else 0
    infeasible_entry = ClaimEntry.create(
        'measurement_bound_infeasible',
        _existence_verdict(infeasible, len(req_df)), [req_file],
        requirements=len(req_df), infeasible=infeasible)
    return [example_entry, infeasible_entry]


def sparsify_demo(params: Dict[str, Any], seed: int, storage: RunStorage,
                  ctx: RunContext) -> List[ClaimEntry]:
    """Keep-fraction sweep on the synthetic signal plus DCT round-trip and Parseval checks."""
    tol = float(config.get('bounds.dct_tolerance', 1e-10))
    x = synthetic_signal(int(params.get('length', 4096)))
    fractions = [float(f) for f in params.get('keep_fractions', [0.0, 0.002, 0.02, 0.2, 1.0])]
    results = [sparsify(x, frac) for frac in fractions]
    sweep_df = pd.DataFrame([{**r.to_dict(), 'psnr_db': r.psnr_db} for r in results])
    sweep_file = storage.save_table(f"{Scenario.SPARSIFY_DEMO.value}/keep_fraction_sweep", sweep_df)
    evidence = [sweep_file]

    comparison_fraction = float(params.get('comparison_fraction', 0.002))
    for r in results:
        if r.keep_fraction == comparison_fraction:
            rel = f"{Scenario.SPARSIFY_DEMO.value}/comparison_{comparison_fraction:g}.csv"
            write_comparison_csv(x, r, storage.path_for(rel))
            evidence.append(storage.register_file(rel))

    ordered = sorted(results, key=lambda r: r.keep_fraction)
    monotone = all(b.psnr_db >= a.psnr_db for a, b in zip(ordered, ordered[1:]))

    check_length = int(params.get('dct_check_length', 1 << 20))
    z = np.random.default_rng(seed).standard_normal(check_length)
    coeffs = dct_forward(z)
    roundtrip = float(np.max(np.abs(dct_inverse(coeffs) - z)))
    energy = float(np.dot(z, z))
    parseval = abs(float(np.dot(coeffs, coeffs)) - energy) / energy
    check_df = pd.DataFrame([{'length': check_length, 'roundtrip_max_error': roundtrip,
                              'parseval_relative_error': parseval, 'tolerance': tol}])
    evidence.append(storage.save_table(f"{Scenario.SPARSIFY_DEMO.value}/dct_check", check_df))

    ok = monotone and roundtrip <= tol and parseval <= tol
    return [ClaimEntry.create(
        'sparsification_demo', _all_or_contradicted(ok), evidence,
        monotone_psnr=monotone, roundtrip_max_error=roundtrip, parseval_relative_error=parseval,
        psnr_db={f"{r.keep_fraction:g}": r.psnr_db for r in results},
    )]


SCENARIO_RUNNERS: Dict[str, Callable[..., List[ClaimEntry]]] = {
    CONSTRUCTION_CHECKS: construction_checks,
    Scenario.ROBUSTNESS_SWEEP.value: robustness_sweep,
    Scenario.P0_UNIQUENESS_SWEEP.value: p0_uniqueness_sweep,
    Scenario.BP_VS_P0.value: bp_vs_p0,
    Scenario.BOUND_TABLE.value: bound_table,
    Scenario.SPARSIFY_DEMO.value: sparsify_demo,
}
