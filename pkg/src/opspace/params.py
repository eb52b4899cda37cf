"""Solver parameter bundle shared by the splitting, interpolation and
factorization searches."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import InputError


@dataclass(frozen=True)
class SolverParams:
    """Knobs for the first-order solvers.

    degree      : polynomial degree of the analytic-family parameterization.
    grid        : boundary grid points per strip line.
    max_iter    : iterations per restart.
    restarts    : number of restarts (distinct initializations).
    step_eps0/1 : start/end of the relative target-gap schedule used by the
                  Polyak-style step rule.
    dual_max_iter, dual_restarts : reduced budgets for dual-side solves.
    lower_candidates : extra random dual candidates tried by the lower bound.
    seed        : RNG seed; fixing it makes every solve reproducible.
    """

    degree: int = 8
    grid: int = 64
    max_iter: int = 300
    restarts: int = 5
    step_eps0: float = 0.12
    step_eps1: float = 0.004
    dual_max_iter: int = 150
    dual_restarts: int = 2
    lower_candidates: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.degree < 0:
            raise InputError("degree must be >= 0")
        if self.grid < 8:
            raise InputError("grid must be >= 8")
        if self.max_iter < 1 or self.restarts < 1:
            raise InputError("max_iter and restarts must be >= 1")
        if not (0 < self.step_eps1 <= self.step_eps0 < 1):
            raise InputError("need 0 < step_eps1 <= step_eps0 < 1")

    def dual(self) -> "SolverParams":
        """Parameters for the dual-side solves of the lower bound."""
        return replace(self, max_iter=self.dual_max_iter,
                       restarts=self.dual_restarts)
