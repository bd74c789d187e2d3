"""Experiment specifications: which scenario to run and with what parameters."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from sympy import isprime

from ...config import config
from ...constructions.omega import expected_symmetric_size
from ...errors import BudgetExceededError, InvalidInputError

logger = logging.getLogger(__name__)

SPEC_SUFFIXES = (".yaml", ".yml")


class Scenario(str, Enum):
    ROBUSTNESS_SWEEP = "robustness_sweep"
    P0_UNIQUENESS_SWEEP = "p0_uniqueness_sweep"
    BP_VS_P0 = "bp_vs_p0"
    BOUND_TABLE = "bound_table"
    SPARSIFY_DEMO = "sparsify_demo"


FRAMES = ('psi', 'phi')


def default_parameters(scenario: Scenario) -> Dict[str, Any]:
    """Parameters a scenario runs with when the spec leaves them out."""
    harness = config.get('harness', {}) or {}
    primes = harness.get('primes', {}) or {}
    if scenario is Scenario.ROBUSTNESS_SWEEP:
        return {'primes': list(primes.get('exact', [5, 7, 11, 13])), 'frames': list(FRAMES),
                'mode': 'both', 'precision': None}
    if scenario in (Scenario.P0_UNIQUENESS_SWEEP, Scenario.BP_VS_P0):
        return {'primes': list(primes.get('uniqueness', [5, 7, 11])), 'frames': list(FRAMES),
                'max_sparsity': int(harness.get('max_sparsity', 2)), 'spark_mode': 'floating'}
    if scenario is Scenario.BOUND_TABLE:
        rows = harness.get('bound_rows') or [{'n': 1024, 'm': 512, 'mu': 1.0}]
        return {'rows': [dict(r) for r in rows],
                'requirements': [{'s': 2, 'n': 1024, 'mu': 1.0}, {'s': 200, 'n': 1024, 'mu': 1.0}],
                'c_const': float(config.get('bounds.c_const', 46.0))}
    return {'length': int(config.get('bounds.synthetic_length', 4096)),
            'keep_fractions': list(config.get('bounds.keep_fractions', [0.0, 0.002, 0.02, 0.2, 1.0])),
            'dct_check_length': int(harness.get('dct_check_length', 1 << 20))}


@dataclass
class ExperimentSpec:
    """
    One scenario with its parameters.

    Stored as YAML; `to_yaml(from_yaml(text))` reproduces an equivalent document.
    """

    scenario: Scenario
    parameters: Dict[str, Any] = field(default_factory=dict)
    output_path: Optional[str] = None

    def __post_init__(self):
        try:
            self.scenario = Scenario(self.scenario)
        except ValueError:
            known = ', '.join(s.value for s in Scenario)
            raise InvalidInputError(f"Unknown scenario {self.scenario!r}; known: {known}")
        if not isinstance(self.parameters, dict):
            raise InvalidInputError("parameters must be a mapping")

    def resolved_parameters(self) -> Dict[str, Any]:
        """Defaults overlaid with the spec's own parameters."""
        params = default_parameters(self.scenario)
        params.update(self.parameters)
        return params

    def validate(self, force_budget: bool = False) -> None:
        """
        Reject malformed parameters before any work starts.

        Raises:
            InvalidInputError: unknown frame, non-prime modulus, bad fraction
            BudgetExceededError: an exhaustive sweep exceeds the subset budget
        """
        params = self.resolved_parameters()
        if self.scenario in (Scenario.ROBUSTNESS_SWEEP, Scenario.P0_UNIQUENESS_SWEEP, Scenario.BP_VS_P0):
            primes = params.get('primes') or []
            if not primes:
                raise InvalidInputError(f"{self.scenario.value}: 'primes' must not be empty")
            for p in primes:
                if not isinstance(p, int) or p < 3 or not isprime(p):
                    raise InvalidInputError(f"{self.scenario.value}: {p!r} is not an odd prime")
            unknown = set(params.get('frames') or []) - set(FRAMES)
            if unknown or not params.get('frames'):
                raise InvalidInputError(f"{self.scenario.value}: frames must be drawn from {FRAMES}")
        if self.scenario is Scenario.ROBUSTNESS_SWEEP:
            self._check_sweep_budget(params, force_budget)
        elif self.scenario in (Scenario.P0_UNIQUENESS_SWEEP, Scenario.BP_VS_P0):
            if int(params.get('max_sparsity', 0)) < 1:
                raise InvalidInputError("max_sparsity must be >= 1")
        elif self.scenario is Scenario.BOUND_TABLE:
            if not params.get('rows'):
                raise InvalidInputError("bound_table: 'rows' must not be empty")
        else:
            for frac in params.get('keep_fractions') or []:
                if not 0.0 <= float(frac) <= 1.0:
                    raise InvalidInputError(f"keep fraction {frac} outside [0, 1]")

    def _check_sweep_budget(self, params: Dict[str, Any], force_budget: bool) -> None:
        budget = float(config.get('robustness.subset_budget', 1e7))
        exact_max = int(config.get('robustness.exact_max_modulus', 13))
        mode = str(params.get('mode', 'floating'))
        for p in params['primes']:
            n_rows = expected_symmetric_size(p)
            if comb(p, n_rows) > budget and not force_budget:
                raise BudgetExceededError(
                    f"robustness_sweep: C({p}, {n_rows}) subsets exceed budget {budget:.0e}")
            if mode != 'floating' and p > exact_max:
                raise InvalidInputError(
                    f"robustness_sweep: exact arithmetic limited to N <= {exact_max}, got {p}")

    def to_dict(self, include_output: bool = True) -> Dict[str, Any]:
        out = {'scenario': self.scenario.value, 'parameters': dict(self.parameters)}
        if include_output and self.output_path is not None:
            out['output_path'] = self.output_path
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentSpec":
        if not isinstance(data, dict) or 'scenario' not in data:
            raise InvalidInputError("Experiment spec needs a 'scenario' key")
        extra = set(data) - {'scenario', 'parameters', 'output_path'}
        if extra:
            raise InvalidInputError(f"Unknown experiment spec keys: {sorted(extra)}")
        return cls(data['scenario'], dict(data.get('parameters') or {}), data.get('output_path'))

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=True, default_flow_style=False)

    @classmethod
    def from_yaml(cls, text: str) -> "ExperimentSpec":
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise InvalidInputError(f"Malformed experiment spec: {e}")
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ExperimentSpec":
        path = Path(path)
        if not path.exists():
            raise InvalidInputError(f"Experiment spec not found: {path}")
        if path.suffix.lower() not in SPEC_SUFFIXES:
            raise InvalidInputError(f"Experiment specs are YAML (.yaml or .yml), got {path.name}")
        spec = cls.from_yaml(path.read_text())
        logger.info(f"Loaded {spec.scenario.value} spec from {path}")
        return spec
