"""Dense two-phase simplex over Fractions with Bland's anti-cycling rule.

Solves ``min c.x  s.t.  A x = b, x >= 0`` exactly. Besides the primal
solution it reports the dual vector of the final tableau, and on
infeasibility the phase-one dual ``y`` which satisfies ``y.A_j <= 0`` for
every column and ``y.b > 0`` (a Farkas certificate).

Entering and leaving variables are always the lowest eligible index, so the
pivot sequence, and therefore every reported vertex and certificate, is a
deterministic function of the input.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None
    duals: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None
    pivots: int = 0


class _Tableau:
    def __init__(self, A, b, n_struct):
        m = len(A)
        self.m = m
        self.n_struct = n_struct
        width = n_struct + m
        self.rows = []
        for i in range(m):
            row = list(A[i]) + [_ZERO] * m
            row[n_struct + i] = _ONE
            self.rows.append(row)
        self.rhs = list(b)
        self.basis = [n_struct + i for i in range(m)]
        self.width = width
        self.obj = [_ZERO] * width
        self.obj_value = _ZERO
        self.pivots = 0

    def set_costs(self, costs):
        # reduced costs c_j - c_B B^-1 A_j, value c_B B^-1 b
        obj = list(costs)
        value = _ZERO
        for r, var in enumerate(self.basis):
            cb = costs[var]
            if cb:
                row = self.rows[r]
                for j in range(self.width):
                    if row[j]:
                        obj[j] -= cb * row[j]
                value += cb * self.rhs[r]
        self.obj = obj
        self.obj_value = value

    def pivot(self, r, j):
        prow = self.rows[r]
        piv = prow[j]
        if piv != 1:
            inv = 1 / piv
            prow = [v * inv if v else v for v in prow]
            self.rows[r] = prow
            self.rhs[r] = self.rhs[r] * inv
        nz = [k for k in range(self.width) if prow[k]]
        prhs = self.rhs[r]
        for i in range(self.m):
            if i == r:
                continue
            row = self.rows[i]
            f = row[j]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
                self.rhs[i] -= f * prhs
        f = self.obj[j]
        if f:
            for k in nz:
                self.obj[k] -= f * prow[k]
            self.obj_value += f * prhs
        self.basis[r] = j
        self.pivots += 1

    def run(self, allowed):
        """Bland iterations over columns ``< allowed``; returns False if unbounded."""
        while True:
            entering = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if entering is None:
                return True
            best = None
            for i in range(self.m):
                a = self.rows[i][entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)

    def duals(self, art_costs):
        # reduced cost of artificial i is art_cost - y_i
        n = self.n_struct
        return [art_costs - self.obj[n + i] for i in range(self.m)]


def solve_lp(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction],
             c: Sequence[Fraction] | None = None) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b`` and ``x >= 0``.

    ``c`` defaults to zero (pure feasibility). ``duals`` and ``farkas`` are
    expressed for the rows as given, regardless of the internal sign flips
    that make ``b`` nonnegative.
    """
    m = len(A)
    n = len(A[0]) if m else (len(c) if c is not None else 0)
    c = [Fraction(v) for v in c] if c is not None else [_ZERO] * n
    signs = []
    rows = []
    rhs = []
    for i in range(m):
        s = -1 if b[i] < 0 else 1
        signs.append(s)
        rows.append([Fraction(v) * s for v in A[i]])
        rhs.append(Fraction(b[i]) * s)

    tab = _Tableau(rows, rhs, n)
    tab.set_costs([_ZERO] * n + [_ONE] * m)
    tab.run(n + m)
    if tab.obj_value > 0:
        y = tab.duals(_ONE)
        farkas = tuple(s * v for s, v in zip(signs, y))
        return LPResult(INFEASIBLE, farkas=farkas, pivots=tab.pivots)

    # drive zero-level artificials out of the basis where a structural pivot exists
    for r in range(m):
        if tab.basis[r] >= n:
            j = next((j for j in range(n) if tab.rows[r][j]), None)
            if j is not None:
                tab.pivot(r, j)

    tab.set_costs(c + [_ZERO] * m)
    if not tab.run(n):
        return LPResult(UNBOUNDED, pivots=tab.pivots)
    x = [_ZERO] * n
    for r, var in enumerate(tab.basis):
        if var < n:
            x[var] = tab.rhs[r]
    y = tab.duals(_ZERO)
    duals = tuple(s * v for s, v in zip(signs, y))
    return LPResult(OPTIMAL, x=tuple(x), objective=tab.obj_value, duals=duals, pivots=tab.pivots)
