"""Grid and resource settings shared by the suites, the CLI and the scripts."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field, replace


@dataclass(frozen=True)
class ScanConfig:
    """Desk-scale grids.

    ``lambda_level`` bounds dominant weights by the sum of their fundamental
    coordinates; ``oracle_height`` bounds height(lambda - mu) in the oracle
    comparisons; ``lambda_cap`` is the height cap of the non-negativity scan.
    """

    mu_box: int = 3
    lambda_cap: int = 10
    lambda_level: int = 4
    oracle_level: int = 4
    oracle_height: int = 8
    truncation: int = 10
    sp2n_level: int = 5
    minus_one_level: int = 5
    rez1_level: int = 8
    symmetry_level: int = 2
    weyl_limit: int | None = None

    def with_overrides(self, **kw) -> "ScanConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CatalogueGrid:
    """Which identities run on which types in ``verify --suite catalogue``."""

    types: tuple[str, ...] = ("C2", "G2", "B3", "C3")
    sp2n_types: tuple[str, ...] = ("C2", "C3")
    minus_one_types: tuple[str, ...] = ("C2", "B3", "C3")
    f4: bool = field(default_factory=lambda: os.environ.get("KFQ_F4", "") not in ("", "0"))
    f4_truncation: int = 6


DEFAULT = ScanConfig()
