from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    """Numerical slacks used throughout the library.

    tau_face
        relative slack for "attains the maximum" (face membership).
    tau_norm
        slack for norm equalities and inequalities.
    tau_strict
        margin below 2 required for "approximately smooth".
    tau_v
        slack when comparing points or vertex sets.
    """

    tau_face: float = 1e-9
    tau_norm: float = 1e-9
    tau_strict: float = 1e-9
    tau_v: float = 1e-9

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (0.0 < value < 1e-3):
                raise ValueError(f"{f.name} must lie in (0, 1e-3), got {value!r}")

    @classmethod
    def uniform(cls, tau: float) -> "Tolerances":
        return cls(tau, tau, tau, tau)

    def with_(self, **changes) -> "Tolerances":
        return replace(self, **changes)


DEFAULT_TOL = Tolerances()
