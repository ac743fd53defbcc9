"""Lightweight container for numerical-verification output."""

from dataclasses import dataclass, field

__all__ = ["DiagnosticsReport"]


@dataclass
class DiagnosticsReport:
    """Named scalars, per-step series, and pass/fail verdicts from a check."""

    scalars: dict = field(default_factory=dict)
    series: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def all_passed(self):
        return all(self.verdicts.values())

    def summary_lines(self):
        lines = []
        for k, v in self.scalars.items():
            lines.append(f"{k} = {v:.6g}")
        for k, v in self.verdicts.items():
            lines.append(f"{k}: {'pass' if v else 'FAIL'}")
        return lines
