"""Order-by-order solution of PVI for lattice ansatze.

The ansatz fixes the leading level (seeds) and, for every higher level n,
the set of unknown (m, l) positions.  Level-n unknowns enter the residual
first at level p + n, and only linearly, through the lowest-level parts of
the partial derivatives of the cleared polynomial.  Each level is therefore
a small linear system; free integration constants sit at positions where
that system is singular and are supplied by the caller.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConditionViolation, ResonanceError
from .lattice import Backend, LatticeSeries
from .linalg import solve_overdetermined
from .residual import PviResidualForm, substitute

PIVOT_TOL = 1e-9


@dataclass
class Ansatz:
    chart: str
    lam: object
    lead_level: int
    seeds: dict
    unknowns: object  # callable n -> list[(m, l)]
    free: dict = field(default_factory=dict)  # (n, m, l) -> value


@dataclass
class Solution:
    coefficients: dict
    shift: int  # residual level of the level-n equation is shift + n
    leading_residual: float
    levels_solved: int


def _monomial(key, lam, cap, bk):
    return LatticeSeries.from_dict({key: 1}, lam, cap, bk)


def solve_ansatz(form: PviResidualForm, ansatz: Ansatz, order: int, backend: Backend,
                 lead_tol: float = 1e-8) -> Solution:
    lam = ansatz.lam
    bk = backend
    known = {k: bk.num(v) for k, v in ansatz.seeds.items()}
    lead = ansatz.lead_level
    probe_cap = lead + 14
    S_lead = LatticeSeries.from_dict(known, lam, probe_cap, bk)
    partials = [substitute(dp, S_lead) for dp in form.partials()]
    lows = [P.min_level(1e-300) for P in partials]
    lows = [l for l in lows if l is not None]
    if not lows:
        raise ResonanceError("linearization vanishes identically")
    p = min(lows)
    plow = []
    for P in partials:
        blk = P.level(p)
        plow.append(LatticeSeries.from_dict({(p, m, l): c for (m, l), c in blk.items()}, lam, probe_cap, bk))

    # the seeds must solve the leading equation
    R_lead = substitute(form.poly, S_lead.with_cap(p + lead))
    lead_terms = [bk.abs(c) for lv in range(R_lead.n0, p + lead + 1) for c in R_lead.level(lv).values()]
    ref = max((bk.abs(c) for P in plow for _, c in P.items()), default=1.0)
    seed_scale = max((bk.abs(v) for v in known.values()), default=1.0) or 1.0
    lead_res = max(lead_terms, default=0.0) / (ref * seed_scale)
    if lead_res > lead_tol:
        raise ConditionViolation(
            "leading coefficients do not solve the leading-order equation", residual=lead_res)

    for n in range(lead + 1, order + 1):
        level_free = {k: v for k, v in ansatz.free.items() if k[0] == n}
        for k, v in level_free.items():
            known[k] = bk.num(v)
        unknown = [(n, m, l) for (m, l) in ansatz.unknowns(n) if (n, m, l) not in level_free]
        cap = p + n
        S = LatticeSeries.from_dict(known, lam, cap, bk)
        R0 = substitute(form.poly, S).level(cap)
        cols = []
        for key in unknown:
            e = _monomial(key, lam, cap, bk)
            de = e.D()
            col = (plow[0] * e + plow[1] * de + plow[2] * de.D()).level(cap)
            cols.append(col)
        rowkeys = sorted(set(R0) | {k for c in cols for k in c})
        if not unknown:
            if rowkeys and max(bk.abs(R0.get(k, 0)) for k in rowkeys) > 1e-8 * (ref * seed_scale):
                raise ResonanceError(f"level {n} has no unknowns but a nonzero residual", level=n)
            continue
        A = [[c.get(k, bk.num(0)) for c in cols] for k in rowkeys]
        b = [-R0.get(k, bk.num(0)) for k in rowkeys]
        sol, rank, leftover = solve_overdetermined(A, b, PIVOT_TOL, scale=ref * (1 + abs(n)) ** 2)
        bnorm = max((bk.abs(v) for v in b), default=0.0)
        if rank < len(unknown):
            raise ResonanceError(f"singular system at level {n} (rank {rank} < {len(unknown)})", level=n)
        tol = 1e-7 if not bk.extended else 10.0 ** (-(bk.digits * 2 // 3))
        if leftover > tol * max(bnorm, ref):
            raise ResonanceError(f"inconsistent system at level {n}: logarithmic terms required", level=n,
                                 leftover=leftover)
        for key, c in zip(unknown, sol):
            if c != 0:
                known[key] = c
    return Solution(coefficients=known, shift=p, leading_residual=lead_res, levels_solved=order)
