"""Network parameters shared by the bound and simulation modules."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MaccParams:
    """The (K, L, N) multi-access network triple.

    K caches serve K users; user k reads the L consecutive caches starting
    at k (cyclic wrap-around); the server holds N files.
    """

    K: int
    L: int
    N: int

    def __post_init__(self) -> None:
        for name in ("K", "L", "N"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"{name} must be an int, got {value!r}")
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if not 1 <= self.L <= self.K:
            raise ValueError(f"L must satisfy 1 <= L <= K, got L={self.L}, K={self.K}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
