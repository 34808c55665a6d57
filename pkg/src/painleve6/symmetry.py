"""Birational symmetries of PVI and their action on theta, points, traces and expansions.

Permute01:  x -> 1 - x, y -> 1 - y,  theta_0 <-> theta_1.
InvertX:    x -> 1/x,   y -> y/x,    theta_x <-> theta_1.
SwapXY:     x -> x,     y -> x/y,    (t0, tx, t1, tinf) -> (tinf - 1, t1, tx, t0 + 1).
"""
from __future__ import annotations

import enum
from dataclasses import replace

from .errors import ConditionViolation, DivisionByZero, ReciprocalOfZeroSeries
from .lattice import LatticeSeries, precision
from .monodromy import MonodromyData
from .params import ThetaClass, trace_from_theta
from .series import BranchExpansion


class SymmetryOp(str, enum.Enum):
    Permute01 = "permute01"
    InvertX = "invx"
    SwapXY = "swapxy"

    @classmethod
    def parse(cls, s) -> "SymmetryOp":
        if isinstance(s, SymmetryOp):
            return s
        low = str(s).lower()
        for op in cls:
            if low in (op.value, op.name.lower()):
                return op
        raise ConditionViolation(f"unknown symmetry {s!r}", known=[o.value for o in cls])


def apply_to_theta(op, theta) -> ThetaClass:
    op = SymmetryOp.parse(op)
    t0, tx, t1, ti = ThetaClass.of(theta).as_tuple()
    if op is SymmetryOp.Permute01:
        return ThetaClass(t1, tx, t0, ti)
    if op is SymmetryOp.InvertX:
        return ThetaClass(t0, t1, tx, ti)
    return ThetaClass(ti - 1, t1, tx, t0 + 1)


def apply_to_point(op, x, y) -> tuple:
    op = SymmetryOp.parse(op)
    x, y = complex(x), complex(y)
    if op is SymmetryOp.Permute01:
        return 1 - x, 1 - y
    if op is SymmetryOp.InvertX:
        if x == 0:
            raise DivisionByZero("InvertX is undefined at x = 0")
        return 1 / x, y / x
    if y == 0:
        raise DivisionByZero("SwapXY is undefined at y = 0")
    return x, x / y


def apply_to_point_derivative(op, x, y, dy) -> tuple:
    """Image of (x, y, dy/dx) under op (used for chart switches and equivariance checks)."""
    op = SymmetryOp.parse(op)
    x, y, dy = complex(x), complex(y), complex(dy)
    if op is SymmetryOp.Permute01:
        return 1 - x, 1 - y, dy  # d(1-y)/d(1-x) = dy/dx
    if op is SymmetryOp.InvertX:
        if x == 0:
            raise DivisionByZero("InvertX is undefined at x = 0")
        # y' = y x'  with x = 1/x'  =>  dy'/dx' = y - x dy/dx
        return 1 / x, y / x, y - x * dy
    if y == 0:
        raise DivisionByZero("SwapXY is undefined at y = 0")
    return x, x / y, 1 / y - x * dy / (y * y)


def apply_to_traces(op, data: MonodromyData) -> MonodromyData:
    """Action on the seven traces; p_mu follow from the new theta.

    The p_mu are passed through the sign changes induced by the theta map
    (cos pi(t - 1) = -cos pi t), so data need not come from a theta.
    """
    op = SymmetryOp.parse(op)
    p0, px, p1, pi_, a, c, b = data.as_tuple()  # a = p0x, c = px1, b = p01
    if op is SymmetryOp.Permute01:
        b2 = -b - a * c + pi_ * px + p1 * p0
        return MonodromyData(p1, px, p0, pi_, c, a, b2)
    if op is SymmetryOp.InvertX:
        a2 = -b - a * c + pi_ * px + p0 * p1
        return MonodromyData(p0, p1, px, pi_, a2, c, a)
    return MonodromyData(-pi_, p1, px, -p0, -a, c, -b)


def apply_to_theta_traces(op, theta) -> tuple:
    return trace_from_theta(apply_to_theta(op, theta))


# -- expansions ---------------------------------------------------------------


def _normalize(b: BranchExpansion) -> BranchExpansion:
    """Move x**n0 of the lowest level into the frame power so U starts at level 0."""
    n0 = b.min_level()
    if n0 == 0:
        return b
    coeffs = {(n - n0, m, l): c for (n, m, l), c in b.coefficients.items()}
    power = b.power + (-n0 if b.inverse else n0)
    return replace(b, coefficients=coeffs, power=power, order=b.order - n0, shift=b.shift)


def transport_expansion(op, b: BranchExpansion) -> BranchExpansion:
    """Formal pullback of a critical expansion under a symmetry.

    Permute01 exchanges x = 0 and x = 1 expansions, InvertX exchanges
    x = 0 and x = infinity, SwapXY maps y to x/y at the same point (a series
    reciprocal when the leading level is a monomial).
    """
    op = SymmetryOp.parse(op)
    theta = apply_to_theta(op, b.theta)
    pt = b.criticalPoint
    if op is SymmetryOp.Permute01:
        if pt == "inf":
            raise ConditionViolation("Permute01 fixes infinity but does not preserve the local variable 1/x")
        return replace(b, theta=theta, criticalPoint="1" if pt == "0" else "0",
                       offset=1 - b.offset, scale=-b.scale)
    if op is SymmetryOp.InvertX:
        if pt == "1":
            raise ConditionViolation("InvertX fixes x = 1 but does not preserve the local variable 1 - x")
        if b.offset != 0:
            raise ConditionViolation("InvertX needs an expansion without additive offset")
        # y' = y / x; at 0 the local variable t = x becomes 1/x', so y' = y t^{-1}
        return replace(b, theta=theta, criticalPoint="inf" if pt == "0" else "0",
                       power=b.power - 1 if pt == "0" else b.power + 1)
    # SwapXY
    if pt == "1":
        raise ConditionViolation("SwapXY transport is implemented at x = 0 and x = infinity")
    if b.offset != 0:
        raise ConditionViolation("SwapXY needs an expansion without additive offset")
    bk = b.backend
    with precision(b.digits):
        if all(bk.abs(c) == 0 for c in b.coefficients.values()) or not b.coefficients:
            raise ReciprocalOfZeroSeries("the expansion vanishes identically")
        nb = _normalize(b)
        lead_level = {k: c for k, c in nb.coefficients.items() if k[0] == 0}
        if all(bk.abs(c) == 0 for c in lead_level.values()):
            raise ReciprocalOfZeroSeries("the leading coefficients vanish")
        # y' = x / y = t^{+-1} / (scale t^k U^e)
        xpow = 1 if pt == "0" else -1
        power = xpow - nb.power
        scale = 1 / nb.scale
        S = nb.series()
        if S.leading_monomial() is not None:
            # U^{-e} = (1/U)^e: replace U by its reciprocal and keep the frame's exponent
            R = S.reciprocal()
            return replace(nb, coefficients=dict(R.items()), theta=theta, power=power, scale=scale,
                           classTag=_swap_tag(b.classTag))
        return replace(nb, theta=theta, power=power, scale=scale, inverse=not nb.inverse,
                       classTag=_swap_tag(b.classTag))


def _swap_tag(tag: str) -> str:
    if tag.startswith("SwapXY(") and tag.endswith(")"):
        return tag[len("SwapXY("):-1]
    return f"SwapXY({tag})"
