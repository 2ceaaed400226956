import json
from dataclasses import dataclass, field

from equilibria.points import Equilibrium


@dataclass
class StabilityReport:
    """Verdicts on one steady state, side by side.

    `verdict_paper` applies the published criterion, `verdict_rh_standard`
    the Routh-Hurwitz conditions on rederived coefficients and
    `verdict_numeric_tau0` the spectrum of a1 + a2. `crossing_roots` are
    the real roots X = w^2 of the crossing polynomial; a positive one
    means imaginary characteristic roots for some delay.
    """

    equilibrium: Equilibrium
    verdict_paper: str
    verdict_rh_standard: str
    verdict_numeric_tau0: str
    crossing_roots: list[float]
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "equilibrium": self.equilibrium.as_dict(),
            "verdict_paper": self.verdict_paper,
            "verdict_rh_standard": self.verdict_rh_standard,
            "verdict_numeric_tau0": self.verdict_numeric_tau0,
            "crossing_roots": list(self.crossing_roots),
            "notes": list(self.notes),
            "details": self.details,
        }

    def as_text(self) -> str:
        """One `key: value` line per field, values in JSON notation."""
        lines = [f"kind: {self.equilibrium.kind}"]
        for key, value in self.as_dict().items():
            if key == "notes":
                lines.extend(f"note: {note}" for note in value)
            else:
                lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
        return "\n".join(lines) + "\n"
