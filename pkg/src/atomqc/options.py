"""Shared compilation options."""

from dataclasses import dataclass, field

from .linalg import DEFAULT_TOL, Tolerances

__all__ = ["CompileOptions", "MAX_QUBITS_HARD_CAP"]

MAX_QUBITS_HARD_CAP = 12


@dataclass(frozen=True)
class CompileOptions:
    """Knobs threaded through the compile pipeline.

    ``lower`` and ``eliminate_controls`` only affect the QRD path; QSD
    always emits lowered gates.
    """

    method: str = "qsd"
    retarget: bool = False
    max_qubits: int = 8
    seed: int = 0
    tolerances: Tolerances = field(default_factory=lambda: DEFAULT_TOL)
    lower: bool = True
    eliminate_controls: bool = True

    def __post_init__(self):
        if self.method not in ("qrd", "qsd"):
            raise ValueError(f"unknown method {self.method!r}")
        if not 1 <= self.max_qubits <= MAX_QUBITS_HARD_CAP:
            raise ValueError(f"max_qubits must be in 1..{MAX_QUBITS_HARD_CAP}")
