"""Decide and recover genus 4 Jacobians from tropical or classical Riemann matrices.

Tropical inputs are symmetric 4x4 matrices with integer, ``Fraction`` or
``"p/q"`` string entries; they stay exact throughout. Classical inputs are
complex symmetric matrices (anything ``numpy.asarray`` accepts).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import _core
from ._core import (
    DomainError,
    InconsistencyError,
    NoSingularityFound,
    NotJacobianError,
    NotPositiveDefinite,
    StructuralError,
    UnsupportedError,
    ValidationError,
    __version__,
)

__all__ = [
    "decide_tropical",
    "recover_tropical",
    "trop_theta_constants",
    "vartheta",
    "theta",
    "decide_classical",
    "canonical_curve",
    "tritangent_planes",
    "verify_azygetic_lemma",
    "scan",
    "selftest",
    "label",
    "DomainError",
    "InconsistencyError",
    "NoSingularityFound",
    "NotJacobianError",
    "NotPositiveDefinite",
    "StructuralError",
    "UnsupportedError",
    "ValidationError",
    "__version__",
]


def _entry(x: Any) -> str | int:
    if isinstance(x, bool):
        raise TypeError("matrix entries must be integers, fractions or strings")
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, str):
        return x
    raise TypeError(f"exact matrix entries must be int, Fraction or 'p/q' strings, not {type(x).__name__}")


def _rational_json(matrix: Sequence[Sequence[Any]]) -> str:
    rows = [[_entry(x) for x in row] for row in matrix]
    return json.dumps({"schema": "schottky.matrix/1", "kind": "rational", "matrix": rows})


def _tau(tau: Any) -> np.ndarray:
    return np.asarray(tau, dtype=complex)


def label(bits: int) -> str:
    """Bit i of ``bits`` is coordinate i; ``label(8) == "0001"``."""
    return "".join("1" if bits >> i & 1 else "0" for i in range(4))


def decide_tropical(q: Sequence[Sequence[Any]]) -> dict:
    """Verdict, Voronoi f-vector, catalog match and negative vartheta certificates."""
    return json.loads(_core.decide_tropical(_rational_json(q)))


def recover_tropical(q: Sequence[Sequence[Any]], basis: bool = False) -> dict:
    """Metric graph with exact edge lengths, DOT source and optionally the basis change X."""
    return json.loads(_core.recover_tropical(_rational_json(q), basis))


def trop_theta_constants(q: Sequence[Sequence[Any]]) -> dict[str, Fraction]:
    values = _core.trop_theta_constants(_rational_json(q))
    return {label(u): Fraction(v) for u, v in enumerate(values)}


def vartheta(q: Sequence[Sequence[Any]]) -> dict[str, Fraction]:
    values = _core.vartheta_all(_rational_json(q))
    return {label(v): Fraction(x) for v, x in enumerate(values) if v != 0}


def theta(characteristic: str, tau: Any, z: Any = None, eps: float = 1e-10) -> complex:
    """Riemann theta with characteristic ``"m'|m''"``, e.g. ``"0000|0000"``."""
    t = _tau(tau)
    zz = np.zeros(t.shape[0], dtype=complex) if z is None else np.asarray(z, dtype=complex)
    return _core.theta(characteristic, t, zz, eps)


def decide_classical(tau: Any, eps: float = 1e-10, threshold: float = 1e-4) -> dict:
    return json.loads(_core.decide_classical(_tau(tau), eps, threshold))


def canonical_curve(tau: Any, seed: int = 1, max_restarts: int = 50, value_tolerance: float = 1e-7) -> dict:
    return json.loads(_core.canonical_curve(_tau(tau), seed, max_restarts, value_tolerance))


def tritangent_planes(tau: Any, eps: float = 1e-10) -> list:
    return json.loads(_core.tritangent_planes(_tau(tau), eps))


def verify_azygetic_lemma(budget: int = 0, resume: str = "", threads: int = 1) -> dict:
    return json.loads(_core.verify_azygetic_lemma(budget, resume, threads))


def scan(family: dict | str, eps: float = 1e-10, threshold: float = 1e-4, threads: int = 1) -> str:
    """CSV text for a matrix pencil family (same format as the command line tool)."""
    text = family if isinstance(family, str) else json.dumps(family)
    return _core.scan(text, eps, threshold, threads)


def selftest(slow: bool = False) -> dict:
    return json.loads(_core.selftest(slow))
