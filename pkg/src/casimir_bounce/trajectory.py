from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TERMINAL_EVENTS = ("reached_target", "bounce", "step_limit")


@dataclass
class Trajectory:
    """Ordered samples of a collapsing radius.

    ``t`` is coordinate time in seconds for the hole problem and proper time
    in geometric metres for the shell problem.  ``V`` is dR/dt (negative
    while collapsing).
    """

    t: np.ndarray
    R: np.ndarray
    V: np.ndarray
    terminal_event: str

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.R = np.asarray(self.R, dtype=float)
        self.V = np.asarray(self.V, dtype=float)
        if not (self.t.shape == self.R.shape == self.V.shape):
            raise ValueError("t, R and V must have equal length")
        if self.terminal_event not in TERMINAL_EVENTS:
            raise ValueError(f"unknown terminal event {self.terminal_event!r}")

    def __len__(self):
        return self.t.size

    def columns(self):
        return {"t": self.t, "R": self.R, "V": self.V}
