"""The three atomic families of two-variable invertible polynomials."""

from dataclasses import dataclass

FAMILIES = ("loop", "chain", "bp")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    p: int
    q: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.p < 2 or self.q < 2:
            raise ValueError("p and q must both be at least 2")

    def milnor(self):
        p, q = self.p, self.q
        return {"loop": p * q, "chain": p * q - p + 1, "bp": (p - 1) * (q - 1)}[self.family]

    def milnor_decomposition(self):
        p, q = self.p, self.q
        base = (p - 1) * (q - 1)
        if self.family == "loop":
            return f"{self.milnor()} = {base} + {p - 1} + {q - 1} + 1"
        if self.family == "chain":
            return f"{self.milnor()} = {base} + {q - 1} + 1"
        return f"{self.milnor()} = {base}"

    def label(self):
        return f"{self.family}({self.p},{self.q})"
