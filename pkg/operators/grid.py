"""
Functions sampled on a uniform grid over [a, b]
"""
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Union

import numpy as np
from loguru import logger

from core.exceptions import DomainError, GridFormatError


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples at t_k = a + k (b - a) / n, k = 0..n"""
    a: float
    b: float
    n: int
    values: np.ndarray

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (np.isfinite(a) and np.isfinite(b)) or b <= a:
            raise DomainError(f"grid interval [{a}, {b}] is not a finite interval with b > a")
        if int(self.n) < 1:
            raise DomainError(f"grid needs at least one subinterval, got n={self.n}")
        values = np.array(self.values, dtype=complex).reshape(-1)
        if len(values) != int(self.n) + 1:
            raise DomainError(f"expected {int(self.n) + 1} samples, got {len(values)}")
        if not np.all(np.isfinite(values)):
            raise DomainError("grid samples must be finite")
        values.setflags(write=False)
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_function(cls, a: float, b: float, n: int, fn: Callable[[np.ndarray], np.ndarray]) -> "GridFunction":
        t = np.linspace(float(a), float(b), int(n) + 1)
        return cls(a, b, n, fn(t))

    @classmethod
    def zeros(cls, a: float, b: float, n: int) -> "GridFunction":
        return cls(a, b, n, np.zeros(int(n) + 1))

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def t(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.n + 1)

    def with_values(self, values) -> "GridFunction":
        return GridFunction(self.a, self.b, self.n, values)

    def same_grid(self, other: "GridFunction") -> bool:
        scale = max(1.0, abs(self.a), abs(self.b))
        return (self.n == other.n and abs(self.a - other.a) <= 1e-12 * scale
                and abs(self.b - other.b) <= 1e-12 * scale)

    def coarsen(self) -> "GridFunction":
        """Every second sample; needs an even n"""
        if self.n % 2:
            raise DomainError(f"cannot halve a grid with odd n={self.n}")
        return GridFunction(self.a, self.b, self.n // 2, self.values[::2])

    def sup_norm(self, skip_start: bool = False) -> float:
        v = self.values[1:] if skip_start else self.values
        return float(np.max(np.abs(v))) if len(v) else 0.0

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return self.with_values(self.values + _aligned(self, other))

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return self.with_values(self.values - _aligned(self, other))

    def __mul__(self, c) -> "GridFunction":
        return self.with_values(self.values * complex(c))

    __rmul__ = __mul__

    def __neg__(self) -> "GridFunction":
        return self.with_values(-self.values)

    # Serialization

    def to_csv(self, path: Union[str, Path]):
        """Write `t,re,im` rows"""
        data = np.column_stack([self.t, self.values.real, self.values.imag])
        np.savetxt(path, data, delimiter=",", header="t,re,im", comments="", fmt="%.17g")
        logger.debug(f"Wrote {self.n + 1} samples to {path}")

    def to_csv_text(self) -> str:
        rows = ["t,re,im"]
        for t, v in zip(self.t, self.values):
            rows.append(f"{t:.17g},{v.real:.17g},{v.imag:.17g}")
        return "\n".join(rows) + "\n"

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "GridFunction":
        """Read a `t,re,im` file; the t column must be uniformly spaced"""
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                header = f.readline().strip().replace(" ", "")
            if header != "t,re,im":
                raise GridFormatError(f"{path}: expected header 't,re,im', got {header!r}")
            data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        except (OSError, ValueError) as e:
            raise GridFormatError(f"{path}: {e}") from e

        if data.shape[1] != 3 or data.shape[0] < 2:
            raise GridFormatError(f"{path}: need at least two rows of three columns")
        t = data[:, 0]
        n = len(t) - 1
        steps = np.diff(t)
        h = (t[-1] - t[0]) / n
        if h <= 0 or np.max(np.abs(steps - h)) > 1e-9 * max(1.0, abs(t[-1]), abs(t[0])):
            raise GridFormatError(f"{path}: t column is not uniformly increasing")
        return cls(t[0], t[-1], n, data[:, 1] + 1j * data[:, 2])

    def to_json(self) -> str:
        return json.dumps({
            "a": self.a,
            "b": self.b,
            "n": self.n,
            "values": [[v.real, v.imag] for v in self.values.tolist()],
        })

    @classmethod
    def from_json(cls, text: str) -> "GridFunction":
        try:
            data = json.loads(text)
            values = [complex(re, im) for re, im in data["values"]]
            return cls(data["a"], data["b"], data["n"], values)
        except (KeyError, TypeError, ValueError) as e:
            raise GridFormatError(f"malformed grid JSON: {e}") from e


def _aligned(f: GridFunction, g: GridFunction) -> np.ndarray:
    if not f.same_grid(g):
        raise DomainError("grid functions live on different grids")
    return g.values


def grid_derivative(f: GridFunction, order: int = 1) -> GridFunction:
    """Second-order finite differences (one-sided at the ends)"""
    values = f.values
    for _ in range(order):
        values = np.gradient(values, f.h, edge_order=2)
    return f.with_values(values)
