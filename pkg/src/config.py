"""Search and enumeration budgets, overridable through the environment or a .env file."""

import os
from dataclasses import dataclass, replace
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

ENUM_BUDGET = 2**22
SEARCH_BUDGET = 2**26
PAIR_BUDGET = 2**26
GROUPING_NODE_BUDGET = 10**6
COSET_CAP = 2**16
FIELD_ORDER_LIMIT = 2**20
DEFAULT_THREADS = 1
DEFAULT_SEED = 0

ENV_PREFIX = "STRICT_FCC_"


@dataclass(frozen=True)
class Budgets:
    enum: int = ENUM_BUDGET
    search: int = SEARCH_BUDGET
    pairs: int = PAIR_BUDGET
    grouping_nodes: int = GROUPING_NODE_BUDGET
    coset_cap: int = COSET_CAP
    threads: int = DEFAULT_THREADS
    seed: int = DEFAULT_SEED

    @classmethod
    def from_env(cls, **overrides) -> "Budgets":
        """Read STRICT_FCC_* variables (after loading .env); explicit overrides win when not None."""
        from dotenv import load_dotenv
        load_dotenv()

        def _env_int(name: str, default: int) -> int:
            raw = os.environ.get(ENV_PREFIX + name)
            return int(raw) if raw else default

        budgets = cls(
            enum=_env_int("BUDGET_ENUM", ENUM_BUDGET),
            search=_env_int("BUDGET_SEARCH", SEARCH_BUDGET),
            pairs=_env_int("BUDGET_PAIRS", PAIR_BUDGET),
            grouping_nodes=_env_int("GROUPING_NODES", GROUPING_NODE_BUDGET),
            coset_cap=_env_int("COSET_CAP", COSET_CAP),
            threads=_env_int("THREADS", DEFAULT_THREADS),
            seed=_env_int("SEED", DEFAULT_SEED),
        )
        return replace(budgets, **{k: v for k, v in overrides.items() if v is not None})
