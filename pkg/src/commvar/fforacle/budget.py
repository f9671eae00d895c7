"""Work budgets and runtime settings for the brute-force commands."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

DEFAULT_BUDGET = 2 ** 34
BUDGET_ENV = "COMMVAR_BUDGET"


class BudgetExceeded(RuntimeError):
    """Refusal to start work whose estimated cost exceeds the budget."""

    def __init__(self, what: str, required: int, budget: int):
        self.what, self.required, self.budget = what, required, budget
        super().__init__(
            f"{what}: estimated {required:,} elementary operations (~2^{required.bit_length() - 1})"
            f" exceeds budget {budget:,}")


@dataclass(frozen=True)
class Settings:
    budget: int = DEFAULT_BUDGET
    threads: int = 1


def default_threads() -> int:
    return max(1, os.cpu_count() or 1)


def load_settings(config: str | Path | None = None, budget: int | None = None,
                  threads: int | None = None) -> Settings:
    """Resolve settings: explicit arguments, then the environment (budget only), then a JSON config."""
    data = json.loads(Path(config).read_text()) if config else {}
    b = data.get("budget", DEFAULT_BUDGET)
    if os.environ.get(BUDGET_ENV):
        b = int(os.environ[BUDGET_ENV])
    if budget is not None:
        b = budget
    t = threads if threads is not None else data.get("threads") or default_threads()
    if int(b) <= 0 or int(t) <= 0:
        raise ValueError("budget and threads must be positive")
    return Settings(int(b), int(t))


def check(what: str, required: int, budget: int) -> int:
    if required > budget:
        raise BudgetExceeded(what, required, budget)
    return required
