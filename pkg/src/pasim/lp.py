"""Exact rational LP feasibility (phase-one simplex, Bland's rule) and the follow-LP encoder."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

__all__ = [
    "LinearProgram",
    "LPResult",
    "solve",
    "feasible",
    "check_assignment",
    "FollowLP",
    "build_canfollow_lp",
]

ZERO = Fraction(0)
ONE = Fraction(1)

try:  # exact rationals either way; mpq is several times faster in the pivot loop
    from gmpy2 import mpq as _mpq

    def _Q(v):
        return _mpq(v.numerator, v.denominator) if isinstance(v, Fraction) else _mpq(v)
except ImportError:  # pragma: no cover
    _Q = Fraction


@dataclass(frozen=True)
class LinearProgram:
    """Feasibility instance ``A x (<=|=) b`` with per-variable bounds ``lo <= x <= hi``.

    ``hi`` may be ``None`` for an unbounded-above variable; ``lo`` must be finite.
    """

    num_vars: int
    constraints: tuple[tuple[tuple[Fraction, ...], str, Fraction], ...] = ()
    bounds: tuple[tuple[Fraction, Optional[Fraction]], ...] = ()

    def __post_init__(self):
        if not self.bounds:
            object.__setattr__(self, "bounds", ((ZERO, None),) * self.num_vars)
        if len(self.bounds) != self.num_vars:
            raise ValueError("one bound per variable required")
        for lo, hi in self.bounds:
            if hi is not None and lo > hi:
                raise ValueError(f"empty bound [{lo}, {hi}]")
        for coeffs, rel, _ in self.constraints:
            if len(coeffs) != self.num_vars:
                raise ValueError("coefficient vector length != num_vars")
            if rel not in ("<=", "="):
                raise ValueError(f"unknown relation {rel!r}")

    def with_constraint(self, coeffs: Sequence, rel: str, rhs) -> "LinearProgram":
        row = (tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs))
        return LinearProgram(self.num_vars, self.constraints + (row,), self.bounds)


@dataclass
class LPResult:
    assignment: Optional[list[Fraction]]
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.assignment is not None


def check_assignment(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    """Exact substitution check of every constraint and bound."""
    if len(x) != lp.num_vars:
        return False
    for (lo, hi), v in zip(lp.bounds, x):
        if v < lo or (hi is not None and v > hi):
            return False
    for coeffs, rel, rhs in lp.constraints:
        lhs = sum((c * v for c, v in zip(coeffs, x) if c), ZERO)
        if rel == "=" and lhs != rhs:
            return False
        if rel == "<=" and lhs > rhs:
            return False
    return True


def solve(lp: LinearProgram) -> LPResult:
    """Decide feasibility of ``lp`` exactly; return a witness point when feasible."""
    n = lp.num_vars
    lows = [lo for lo, _ in lp.bounds]

    # Shift x = y + lo so that y >= 0; upper bounds become ordinary rows.
    rows: list[tuple[list, str, Fraction]] = []
    for coeffs, rel, rhs in lp.constraints:
        shift = sum((c * lo for c, lo in zip(coeffs, lows) if c), ZERO)
        rows.append((list(coeffs), rel, rhs - shift))
    for i, (lo, hi) in enumerate(lp.bounds):
        if hi is not None:
            e = [ZERO] * n
            e[i] = ONE
            rows.append((e, "<=", hi - lo))

    n_slack = sum(1 for _, rel, _ in rows if rel == "<=")
    n_art = sum(1 for _, rel, rhs in rows if rel == "=" or rhs < 0)
    m = len(rows)
    width = n + n_slack + n_art
    zero, one = _Q(0), _Q(1)
    tab: list[list] = []
    rhs_col: list = []
    basis: list[int] = []
    artificial_rows: list[int] = []
    slack, art = n, n + n_slack
    for r, (coeffs, rel, rhs) in enumerate(rows):
        row = [_Q(c) for c in coeffs] + [zero] * (n_slack + n_art)
        rhs = _Q(rhs)
        if rel == "<=":
            row[slack] = one
            if rhs >= 0:
                basis.append(slack)
            slack += 1
        if rel == "=" or rhs < 0:
            if rhs < 0:
                row = [-v for v in row]
                rhs = -rhs
            row[art] = one
            basis.append(art)
            artificial_rows.append(r)
            art += 1
        tab.append(row)
        rhs_col.append(rhs)

    # Phase-one objective: minimise the sum of artificials (kept as reduced costs).
    cost = [zero] * width
    obj = zero
    for r in artificial_rows:
        for j in range(n + n_slack):
            if tab[r][j]:
                cost[j] -= tab[r][j]
        obj -= rhs_col[r]

    pivots = 0
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for r in range(m):
            a = tab[r][enter]
            if a > 0:
                ratio = rhs_col[r] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    leave, best = r, ratio
        if leave is None:  # cannot happen: phase-one objective is bounded below
            raise AssertionError("unbounded phase-one problem")
        piv = tab[leave][enter]
        prow = [v / piv for v in tab[leave]]
        prhs = rhs_col[leave] / piv
        nz = [j for j, v in enumerate(prow) if v]
        tab[leave], rhs_col[leave] = prow, prhs
        for r in range(m):
            if r != leave:
                f = tab[r][enter]
                if f:
                    row = tab[r]
                    for j in nz:
                        row[j] -= f * prow[j]
                    rhs_col[r] -= f * prhs
        f = cost[enter]
        for j in nz:
            cost[j] -= f * prow[j]
        obj -= f * prhs
        basis[leave] = enter
        pivots += 1

    if obj != 0:
        return LPResult(None, pivots)
    y = [ZERO] * width
    for r, b in enumerate(basis):
        y[b] = Fraction(int(rhs_col[r].numerator), int(rhs_col[r].denominator))
    x = [y[i] + lows[i] for i in range(n)]
    return LPResult(x, pivots)


def feasible(lp: LinearProgram) -> Optional[list[Fraction]]:
    return solve(lp).assignment


@dataclass(frozen=True)
class FollowLP:
    """The follow-LP for one ``(s, t, a)`` query plus its variable layout."""

    program: LinearProgram
    n_alpha: int
    n_beta: int
    upsets: tuple[frozenset[int], ...] = field(default=())

    def alpha(self, x: Sequence[Fraction]) -> list[Fraction]:
        return list(x[: self.n_alpha])

    def beta(self, x: Sequence[Fraction]) -> list[list[Fraction]]:
        m = self.n_beta
        return [list(x[self.n_alpha + j * m: self.n_alpha + (j + 1) * m]) for j in range(m)]


def build_canfollow_lp(p, g, s: int, t: int, a: int, masses=None) -> FollowLP:
    """Encode "some mixed action at ``t`` follows action ``a`` at ``s``" on pair ``p``.

    Variables are the ``l`` alphas (player-1 mix at ``t``) followed by ``m*m``
    betas, row-major in ``(j, k)``: ``beta[j]`` is the player-2 mix at ``s``
    answering deterministic ``b_j`` at ``t``.  Domination rows are emitted for
    every constraining up-set of blocks (see ``PartitionPair.upsets``), one per
    ``j``, up-set-major.  ``masses`` is an optional :class:`MassTable` for ``p``.
    """
    from .orderings import MassTable

    if masses is None:
        masses = MassTable(p, g)
    l, m = len(g.actions1), len(g.actions2)
    nv = l + m * m
    rows = []
    rows.append((tuple([ONE] * l + [ZERO] * (m * m)), "=", ONE))
    for j in range(m):
        c = [ZERO] * nv
        for k in range(m):
            c[l + j * m + k] = ONE
        rows.append((tuple(c), "=", ONE))
    upsets = p.upsets
    for u in range(len(upsets)):
        for j in range(m):
            c = [ZERO] * nv
            for k in range(m):
                c[l + j * m + k] = masses.get(s, a, k, u)
            for i in range(l):
                c[i] = -masses.get(t, i, j, u)
            rows.append((tuple(c), "<=", ZERO))
    bounds = ((ZERO, ONE),) * nv
    return FollowLP(LinearProgram(nv, tuple(rows), bounds), l, m, upsets)
