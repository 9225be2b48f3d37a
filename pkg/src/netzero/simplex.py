"""Dense two-phase simplex solver with Bland's rule.

Solves   min c'x  s.t.  A x (<=, >=, ==) b,  x >= 0.

Problem sizes in this package are tiny (a few hundred variables), so a
dense tableau with Bland's anti-cycling pivot rule is used throughout:
deterministic pivot sequences matter more than speed here.  Row duals
(dz*/db per constraint) are recovered from the final basis, which is how
the expansion planner reads electricity and CO2 shadow prices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

EPS = 1e-9
RATIO_EPS = 1e-10


@dataclass
class LinearProgram:
    c: np.ndarray
    a: np.ndarray
    senses: list[str]  # one of "<=", ">=", "==" per row
    b: np.ndarray
    row_labels: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.c = np.asarray(self.c, dtype=float)
        self.a = np.asarray(self.a, dtype=float)
        self.b = np.asarray(self.b, dtype=float)
        m, n = self.a.shape
        if self.c.shape != (n,) or self.b.shape != (m,) or len(self.senses) != m:
            raise ValueError("inconsistent LP dimensions")
        if not self.row_labels:
            self.row_labels = [f"row{i}" for i in range(m)]
        bad = {s for s in self.senses} - {"<=", ">=", "=="}
        if bad:
            raise ValueError(f"unknown senses {bad}")


@dataclass
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None = None
    objective: float | None = None
    duals: np.ndarray | None = None  # dz*/db_k per row, original row order
    violated: tuple[str, ...] = ()


def _bland_entering(reduced: np.ndarray, allowed: np.ndarray) -> int:
    candidates = np.where(allowed & (reduced < -EPS))[0]
    return int(candidates[0]) if candidates.size else -1


def _bland_leaving(tableau: np.ndarray, rhs: np.ndarray, col: int, basis: list[int]) -> int:
    column = tableau[:, col]
    rows = np.where(column > RATIO_EPS)[0]
    if rows.size == 0:
        return -1
    ratios = rhs[rows] / column[rows]
    best = ratios.min()
    tied = rows[ratios <= best + RATIO_EPS * (1 + abs(best))]
    # Bland: among tied rows leave the one whose basic variable has the lowest index
    return int(min(tied, key=lambda r: basis[r]))


def _pivot(tableau: np.ndarray, rhs: np.ndarray, row: int, col: int) -> None:
    piv = tableau[row, col]
    tableau[row] /= piv
    rhs[row] /= piv
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    rhs -= factors * rhs[row]
    tableau[:, col] = 0.0
    tableau[row, col] = 1.0


def _run_simplex(
    tableau: np.ndarray,
    rhs: np.ndarray,
    cost: np.ndarray,
    basis: list[int],
    allowed: np.ndarray,
    max_pivots: int,
) -> str:
    """Pivot until optimal or unbounded; tableau/rhs/basis updated in place."""
    for _ in range(max_pivots):
        # reduced costs: c_j - c_B' B^-1 A_j where tableau already holds B^-1 A
        cb = cost[basis]
        reduced = cost - cb @ tableau
        col = _bland_entering(reduced, allowed)
        if col < 0:
            return "optimal"
        row = _bland_leaving(tableau, rhs, col, basis)
        if row < 0:
            return "unbounded"
        _pivot(tableau, rhs, row, col)
        basis[row] = col
    raise RuntimeError(f"simplex pivot cap {max_pivots} exceeded")


def solve(lp: LinearProgram, max_pivots: int = 200_000) -> LPSolution:
    m, n = lp.a.shape

    a = lp.a.copy()
    b = lp.b.copy()
    senses = list(lp.senses)
    for i in range(m):
        if b[i] < 0:
            a[i] *= -1.0
            b[i] = -b[i]
            senses[i] = {"<=": ">=", ">=": "<=", "==": "=="}[senses[i]]

    slack_rows = [i for i, s in enumerate(senses) if s in ("<=", ">=")]
    n_slack = len(slack_rows)
    art_rows = [i for i, s in enumerate(senses) if s != "<="]
    n_art = len(art_rows)

    total = n + n_slack + n_art
    ext = np.zeros((m, total))
    ext[:, :n] = a
    slack_col_of_row: dict[int, int] = {}
    for k, i in enumerate(slack_rows):
        col = n + k
        ext[i, col] = 1.0 if senses[i] == "<=" else -1.0
        slack_col_of_row[i] = col
    art_col_of_row: dict[int, int] = {}
    for k, i in enumerate(art_rows):
        col = n + n_slack + k
        ext[i, col] = 1.0
        art_col_of_row[i] = col

    basis: list[int] = []
    for i in range(m):
        if senses[i] == "<=":
            basis.append(slack_col_of_row[i])
        else:
            basis.append(art_col_of_row[i])

    tableau = ext.copy()
    rhs = b.copy()

    # Phase 1: drive artificials to zero.
    if n_art:
        phase1_cost = np.zeros(total)
        for i in art_rows:
            phase1_cost[art_col_of_row[i]] = 1.0
        allowed = np.ones(total, dtype=bool)
        status = _run_simplex(tableau, rhs, phase1_cost, basis, allowed, max_pivots)
        if status != "optimal":  # phase 1 is bounded below by 0
            raise RuntimeError("phase 1 terminated abnormally")
        infeas = phase1_cost[basis] @ rhs
        if infeas > 1e-7 * (1.0 + abs(b).max()):
            row_of_art = {col: i for i, col in art_col_of_row.items()}
            violated = tuple(
                lp.row_labels[row_of_art[basis[r]]]
                for r in range(m)
                if basis[r] in row_of_art and rhs[r] > EPS
            )
            return LPSolution(status="infeasible", violated=violated)
        # pivot surviving zero-level artificials out of the basis where possible
        art_set = set(art_col_of_row.values())
        for r in range(m):
            if basis[r] in art_set and rhs[r] <= EPS:
                nz = np.where(np.abs(tableau[r, : n + n_slack]) > EPS)[0]
                if nz.size:
                    _pivot(tableau, rhs, r, int(nz[0]))
                    basis[r] = int(nz[0])

    # Phase 2 on original costs, artificial columns blocked.
    cost = np.zeros(total)
    cost[:n] = lp.c
    allowed = np.ones(total, dtype=bool)
    allowed[n + n_slack :] = False
    status = _run_simplex(tableau, rhs, cost, basis, allowed, max_pivots)
    if status == "unbounded":
        return LPSolution(status="unbounded")

    x = np.zeros(total)
    for r, j in enumerate(basis):
        x[j] = rhs[r]

    # duals from the final basis: solve B'y = c_B on the original matrix
    bmat = ext[:, basis]
    cb = cost[basis]
    try:
        y = np.linalg.solve(bmat.T, cb)
    except np.linalg.LinAlgError:
        y, *_ = np.linalg.lstsq(bmat.T, cb, rcond=None)
    # rows were sign-flipped for negative b; flip duals back
    for i in range(m):
        if lp.b[i] < 0:
            y[i] = -y[i]

    return LPSolution(
        status="optimal",
        x=x[:n].copy(),
        objective=float(lp.c @ x[:n]),
        duals=y,
    )
