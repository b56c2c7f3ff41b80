"""Channel families of the four ratio panels: squeezing followed by loss or gain."""

from __future__ import annotations

from dataclasses import dataclass

ZETAS = (1.0, 2.0, 4.0)


@dataclass(frozen=True)
class Panel:
    label: str
    family: str  # "attenuator" or "amplifier"
    strength: float  # eta or mu

    def channel_spec(self, zeta: float) -> dict:
        if self.family == "attenuator":
            after = {"kind": "lossy", "eta": self.strength, "N": 0}
        else:
            after = {"kind": "amplifier", "mu": self.strength, "N": 0}
        return {"kind": "compose", "channels": [{"kind": "squeezer", "zeta": zeta}, after]}

    def asymptote(self, zeta: float) -> float:
        return self.strength * zeta

    def csv_name(self, zeta: float) -> str:
        return f"panel_{self.label}_zeta{zeta:g}.csv"


PANELS = (
    Panel("a", "attenuator", 0.5),
    Panel("b", "attenuator", 0.9),
    Panel("c", "amplifier", 2.0),
    Panel("d", "amplifier", 5.0),
)
