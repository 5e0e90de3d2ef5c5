"""Run configurations shared by the CLI, the suite and the scripts."""

from __future__ import annotations

from dataclasses import dataclass

from .report import ALL_TASKS


@dataclass(frozen=True)
class AnalysisConfig:
    seed: int = 0
    tasks: tuple = ALL_TASKS
    timing: bool = False

    def instance(self, input_block: dict, field_kind="rational") -> dict:
        return {"ring": {"field": field_kind}, "input": input_block, "tasks": list(self.tasks), "seed": self.seed}


@dataclass(frozen=True)
class SuiteConfig:
    level: str = "fast"
    seed: int = 0
    verbose: bool = False


@dataclass(frozen=True)
class EngineSuiteConfig:
    """Randomized Gröbner self-checks."""

    cases: int = 200
    seed: int = 20240607
    nvars: tuple = (2, 3, 4)
    max_degree: int = 3
    max_terms: int = 4
    coeff_bound: int = 5
