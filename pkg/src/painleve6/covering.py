"""Points on the universal covering of the punctured plane, as (ln|x|, arg x)."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class CoveringPoint:
    log_abs: float
    arg: float

    @classmethod
    def of(cls, x) -> "CoveringPoint":
        """Accept a CoveringPoint, a (ln|x|, arg x) pair, or a complex number (principal arg)."""
        if isinstance(x, CoveringPoint):
            return x
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return cls(float(x[0]), float(x[1]))
        z = complex(x)
        if z == 0:
            raise ValueError("x = 0 has no covering point")
        return cls(math.log(abs(z)), cmath.phase(z))

    @classmethod
    def polar(cls, r: float, arg: float) -> "CoveringPoint":
        return cls(math.log(r), arg)

    @property
    def log(self) -> complex:
        return complex(self.log_abs, self.arg)

    @property
    def value(self) -> complex:
        return cmath.exp(self.log)

    def loop(self, n: int = 1) -> "CoveringPoint":
        """The point reached after n counter-clockwise loops around 0."""
        return CoveringPoint(self.log_abs, self.arg + 2 * math.pi * n)
