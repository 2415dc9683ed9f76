"""Run reports: per-pass phase timings and final quality, serializable to JSON."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

SCHEMA_VERSION = 1
PHASES = ("local_moving_s", "splitting_s", "aggregation_s", "other_s")


@dataclass
class PassRecord:
    index: int
    iterations: int
    num_vertices: int
    num_communities: int
    local_moving_s: float = 0.0
    splitting_s: float = 0.0
    aggregation_s: float = 0.0
    other_s: float = 0.0

    @property
    def total_s(self) -> float:
        return self.local_moving_s + self.splitting_s + self.aggregation_s + self.other_s


@dataclass
class DetectionReport:
    """Outcome of one detection run.

    ``modularity`` is None when the graph has no edge weight.  The four phase
    totals add up to ``total_runtime_s``; steps outside any pass (final
    dendrogram lookup, a split-last pass, renumbering) land in ``other_s``
    except the split itself, which counts as splitting.
    """

    modularity: float | None
    num_communities: int
    disconnected_fraction: float
    passes: int
    total_runtime_s: float
    workers: int
    local_moving_s: float = 0.0
    splitting_s: float = 0.0
    aggregation_s: float = 0.0
    other_s: float = 0.0
    pass_records: list[PassRecord] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    schema: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> DetectionReport:
        d = dict(d)
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        d["pass_records"] = [PassRecord(**r) for r in d.get("pass_records", [])]
        return cls(**d)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> DetectionReport:
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        q = "undefined" if self.modularity is None else f"{self.modularity:.6f}"
        return (
            f"Q={q} communities={self.num_communities} "
            f"disconnected={self.disconnected_fraction:.4g} passes={self.passes} "
            f"time={self.total_runtime_s:.4f}s workers={self.workers}"
        )
