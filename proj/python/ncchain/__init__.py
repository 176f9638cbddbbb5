"""Oscillator chain in noncommutative phase space.

Configs are dicts in the same schema as the ncchain CLI config file. Values may
be ints, Fractions, or strings such as "3/2"; floats are read as the decimal
they print as.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from . import _core
from ._core import ConfigError, DomainError, InternalConsistencyError

__all__ = [
    "ConfigError",
    "DomainError",
    "InternalConsistencyError",
    "normalize",
    "frequencies",
    "ground_energy",
    "energy",
    "moments",
    "effective_params",
    "hessian",
    "oracle",
    "verify_relations",
    "sample_model",
    "run",
]


def _encode(value: Any) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Mapping):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _text(config: Mapping[str, Any] | str) -> str:
    return config if isinstance(config, str) else json.dumps(_encode(config))


def normalize(config: Mapping[str, Any] | str) -> dict:
    """Validated config with every rational written exactly."""
    return json.loads(_core.normalize_config(_text(config)))


def frequencies(config, variant: str = "exact") -> list[float]:
    """Mode frequencies for a = 1..N; variant is exact, rederived or verbatim."""
    return _core.frequencies(_text(config), variant)


def ground_energy(config) -> float:
    return _core.ground_energy(_text(config))


def energy(config, quanta: str = "") -> float:
    """Energy for quanta written as "a:n1,n2,n3;..."."""
    return _core.energy(_text(config), quanta)


def moments(config) -> tuple[Fraction, Fraction]:
    """(<theta^2>, <eta^2>) as exact fractions."""
    return tuple(Fraction(s) for s in _core.moments(_text(config)))


def effective_params(config) -> tuple[Fraction, Fraction]:
    """(m_eff, omega_eff^2) as exact fractions."""
    return tuple(Fraction(s) for s in _core.effective_params(_text(config)))


def hessian(config):
    """Hessian M of the effective Hamiltonian H = z^T M z / 2, z = (x, p)."""
    return _core.hessian(_text(config))


def oracle(config, tol: float = 1e-9) -> dict:
    """Numerical symplectic spectrum compared with the analytic frequencies."""
    return _core.oracle(_text(config), tol)


def verify_relations(config) -> tuple[int, int]:
    """(commutators checked, nonzero residuals) for the shifted operators."""
    return _core.verify_relations(_text(config))


def sample_model(seed: int, max_particles: int = 16) -> dict:
    return json.loads(_core.sample_model(seed, max_particles))


def run(*args: str) -> tuple[int, str, str]:
    """Runs the CLI in process; returns (exit code, stdout, stderr)."""
    return _core.run(list(args))
