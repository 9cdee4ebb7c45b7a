"""Exact rational linear feasibility with self-certifying answers.

Every query is a system of equalities and inequalities over rational vectors.
The answer is either a feasible point (checkable by substitution) or a Farkas
certificate: multipliers, nonnegative on inequality rows, whose combination
cancels every variable while combining the right-hand sides to something
positive, i.e. the contradiction 0 >= 1.  All arithmetic is fractions.Fraction;
no floating point enters any certificate path.

The solver is a dense two-phase simplex with Bland's rule, which terminates on
every input.  Systems here are desk-sized, so clarity wins over sparsity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

Rat = Fraction
Row = tuple[tuple[Rat, ...], Rat]  # (coefficients, rhs)


def _rat_vec(values: Sequence) -> tuple[Rat, ...]:
    return tuple(Fraction(v) for v in values)


def make_row(coeffs: Sequence, rhs) -> Row:
    return (_rat_vec(coeffs), Fraction(rhs))


@dataclass(frozen=True)
class LinearSystem:
    """Constraints over `n` variables: eq rows a.x = b, ge rows a.x >= b.

    With nonneg=True the variables additionally satisfy x >= 0; those implicit
    rows participate in Farkas certificates through `nonneg` multipliers.
    """

    n: int
    eq: tuple[Row, ...] = ()
    ge: tuple[Row, ...] = ()
    nonneg: bool = True

    def __post_init__(self) -> None:
        for coeffs, _ in self.eq + self.ge:
            if len(coeffs) != self.n:
                raise ValueError(f"row has {len(coeffs)} coefficients, expected {self.n}")

    def with_rows(self, eq: Sequence[Row] = (), ge: Sequence[Row] = ()) -> "LinearSystem":
        return LinearSystem(self.n, self.eq + tuple(eq), self.ge + tuple(ge), self.nonneg)


@dataclass(frozen=True)
class Feasible:
    witness: tuple[Rat, ...]


@dataclass(frozen=True)
class Farkas:
    """Multipliers proving infeasibility: sum of scaled rows collapses to 0 >= positive."""

    eq_mult: tuple[Rat, ...]
    ge_mult: tuple[Rat, ...]
    nonneg_mult: Optional[tuple[Rat, ...]]  # one per variable when the system is nonneg


Outcome = Union[Feasible, Farkas]


class UnboundedError(ArithmeticError):
    """An optimization direction is unbounded (never expected from our callers)."""


def check_feasible(system: LinearSystem, x: Sequence) -> bool:
    xv = _rat_vec(x)
    if len(xv) != system.n:
        return False
    if system.nonneg and any(v < 0 for v in xv):
        return False
    for coeffs, rhs in system.eq:
        if sum(c * v for c, v in zip(coeffs, xv)) != rhs:
            return False
    for coeffs, rhs in system.ge:
        if sum(c * v for c, v in zip(coeffs, xv)) < rhs:
            return False
    return True


def check_farkas(system: LinearSystem, cert: Farkas) -> bool:
    """Re-derive the contradiction exactly; True only if every step checks."""
    if len(cert.eq_mult) != len(system.eq) or len(cert.ge_mult) != len(system.ge):
        return False
    if any(m < 0 for m in cert.ge_mult):
        return False
    if system.nonneg:
        if cert.nonneg_mult is None or len(cert.nonneg_mult) != system.n:
            return False
        if any(m < 0 for m in cert.nonneg_mult):
            return False
    elif cert.nonneg_mult is not None:
        return False
    combo = [Fraction(0)] * system.n
    rhs_total = Fraction(0)
    for m, (coeffs, rhs) in zip(cert.eq_mult, system.eq):
        for j, c in enumerate(coeffs):
            combo[j] += m * c
        rhs_total += m * rhs
    for m, (coeffs, rhs) in zip(cert.ge_mult, system.ge):
        for j, c in enumerate(coeffs):
            combo[j] += m * c
        rhs_total += m * rhs
    if system.nonneg:
        for j, m in enumerate(cert.nonneg_mult):
            combo[j] += m
    return all(c == 0 for c in combo) and rhs_total > 0


def _normalize_multipliers(values: list[Rat]) -> list[Rat]:
    """Scale to a primitive integer vector (positive scaling keeps validity)."""
    denom_lcm = 1
    for v in values:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in values]
    g = 0
    for i in ints:
        g = gcd(g, abs(i))
    if g > 1:
        ints = [i // g for i in ints]
    return [Fraction(i) for i in ints]


class _Tableau:
    """Dense simplex tableau; rows carry rhs in the last slot."""

    def __init__(self, rows: list[list[Rat]], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        piv = row[c]
        inv = Fraction(1) / piv
        self.rows[r] = [v * inv for v in row]
        row = self.rows[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            factor = other[c]
            if factor:
                self.rows[i] = [a - factor * b for a, b in zip(other, row)]
        self.basis[r] = c

    def minimize(self, cost: list[Rat], banned: set[int]) -> tuple[Rat, list[Rat]]:
        """Run Bland-rule simplex for the given cost vector.

        The tableau must be canonical for its current basis.  Returns
        (optimal value, reduced-cost row); raises UnboundedError when the
        objective is unbounded below.  Bland's rule (lowest eligible entering
        column, lowest basic index on ratio ties) guarantees termination.
        """
        ncols = self.ncols
        rc = list(cost)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[r]
                rc = [a - cb * row[j] for j, a in enumerate(rc)]
        while True:
            enter = -1
            for j in range(ncols):
                if j not in banned and rc[j] < 0:
                    enter = j
                    break
            if enter == -1:
                z = sum(
                    (cost[b] * self.rows[i][-1] for i, b in enumerate(self.basis)),
                    Fraction(0),
                )
                return z, rc
            leave = -1
            best: Optional[Rat] = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave == -1:
                raise UnboundedError("objective unbounded below")
            factor = rc[enter]
            self.pivot(leave, enter)
            row = self.rows[leave]
            rc = [a - factor * row[j] for j, a in enumerate(rc)]


def _standardize(system: LinearSystem) -> tuple[list[list[Rat]], list[int], int, int, list[int], int]:
    """Build phase-1 rows: [x | (v for free mode) | slacks | artificials | rhs].

    Returns (rows, flips, n_struct, n_slack, art_cols, ncols).  For free-variable
    systems the structural block is the u/v split of width 2n.
    """
    n = system.n
    rows_in = [(coeffs, rhs, "eq") for coeffs, rhs in system.eq]
    rows_in += [(coeffs, rhs, "ge") for coeffs, rhs in system.ge]
    n_rows = len(rows_in)
    n_struct = n if system.nonneg else 2 * n
    n_slack = len(system.ge)
    ncols = n_struct + n_slack + n_rows
    rows: list[list[Rat]] = []
    flips: list[int] = []
    slack_at = 0
    for i, (coeffs, rhs, kind) in enumerate(rows_in):
        flip = -1 if rhs < 0 else 1
        flips.append(flip)
        row = [Fraction(0)] * (ncols + 1)
        for j, c in enumerate(coeffs):
            row[j] = flip * c
            if not system.nonneg:
                row[n + j] = -flip * c
        if kind == "ge":
            row[n_struct + slack_at] = Fraction(-flip)
            slack_at += 1
        row[n_struct + n_slack + i] = Fraction(1)
        row[-1] = flip * rhs
        rows.append(row)
    art_cols = list(range(n_struct + n_slack, ncols))
    return rows, flips, n_struct, n_slack, art_cols, ncols


def _extract_point(system: LinearSystem, tab: _Tableau) -> tuple[Rat, ...]:
    n = system.n
    values = [Fraction(0)] * tab.ncols
    for r, b in enumerate(tab.basis):
        values[b] = tab.rows[r][-1]
    if system.nonneg:
        return tuple(values[:n])
    return tuple(values[j] - values[n + j] for j in range(n))


def _extract_farkas(system: LinearSystem, rc: list[Rat], flips: list[int], art_cols: list[int]) -> Farkas:
    n_eq = len(system.eq)
    y = [flips[i] * (Fraction(1) - rc[art_cols[i]]) for i in range(len(flips))]
    eq_mult = y[:n_eq]
    ge_mult = y[n_eq:]
    nonneg_mult = None
    if system.nonneg:
        combo = [Fraction(0)] * system.n
        for m, (coeffs, _) in zip(y, list(system.eq) + list(system.ge)):
            for j, c in enumerate(coeffs):
                combo[j] += m * c
        nonneg_mult = [-c for c in combo]
        scaled = _normalize_multipliers(eq_mult + ge_mult + nonneg_mult)
        eq_mult = scaled[:n_eq]
        ge_mult = scaled[n_eq : n_eq + len(ge_mult)]
        nonneg_mult = tuple(scaled[n_eq + len(ge_mult) :])
    else:
        scaled = _normalize_multipliers(eq_mult + ge_mult)
        eq_mult = scaled[:n_eq]
        ge_mult = scaled[n_eq:]
    cert = Farkas(tuple(eq_mult), tuple(ge_mult), nonneg_mult)
    if not check_farkas(system, cert):
        raise AssertionError("internal error: produced Farkas certificate fails its own audit")
    return cert


def _phase1(system: LinearSystem) -> tuple[Optional[_Tableau], Optional[Farkas], int]:
    rows, flips, n_struct, n_slack, art_cols, ncols = _standardize(system)
    tab = _Tableau(rows, list(art_cols), ncols)
    cost = [Fraction(0)] * ncols
    for c in art_cols:
        cost[c] = Fraction(1)
    z, rc = tab.minimize(cost, banned=set())
    if z > 0:
        return None, _extract_farkas(system, rc, flips, art_cols), n_struct
    # drive leftover zero-level artificials out of the basis; drop redundant rows
    art_set = set(art_cols)
    r = 0
    while r < len(tab.rows):
        b = tab.basis[r]
        if b in art_set:
            pivot_col = next(
                (j for j in range(n_struct + n_slack) if tab.rows[r][j] != 0), None
            )
            if pivot_col is None:
                del tab.rows[r]
                del tab.basis[r]
                continue
            tab.pivot(r, pivot_col)
        r += 1
    return tab, None, n_struct


def solve_feasibility(system: LinearSystem) -> Outcome:
    """Decide the system exactly, returning a checkable witness either way."""
    tab, farkas, _ = _phase1(system)
    if farkas is not None:
        return farkas
    point = _extract_point(system, tab)
    assert check_feasible(system, point)
    return Feasible(point)


def minimize(system: LinearSystem, direction: Sequence) -> tuple[Optional[Rat], Outcome]:
    """Minimize direction.x over the system.

    Returns (optimal value, Feasible minimizer) or (None, Farkas) when the
    system is infeasible.  Raises UnboundedError for unbounded directions.
    """
    d = _rat_vec(direction)
    if len(d) != system.n:
        raise ValueError("direction length mismatch")
    tab, farkas, n_struct = _phase1(system)
    if farkas is not None:
        return None, farkas
    cost = [Fraction(0)] * tab.ncols
    if system.nonneg:
        for j, v in enumerate(d):
            cost[j] = v
    else:
        for j, v in enumerate(d):
            cost[j] = v
            cost[system.n + j] = -v
    banned = set(range(n_struct + len(system.ge), tab.ncols))
    z, _ = tab.minimize(cost, banned=banned)
    point = _extract_point(system, tab)
    assert check_feasible(system, point)
    return z, Feasible(point)


def lexmin(system: LinearSystem) -> Outcome:
    """The lexicographically least feasible point (canonical witness).

    Requires every coordinate to be bounded below on the feasible set, which
    holds for all systems this package builds (variables carry >= 0 or >= 1
    rows).  Deterministic: repeated calls return identical witnesses.
    """
    current = system
    values: list[Rat] = []
    for i in range(system.n):
        direction = [Fraction(0)] * system.n
        direction[i] = Fraction(1)
        opt, outcome = minimize(current, direction)
        if isinstance(outcome, Farkas):
            if values:
                raise AssertionError("internal error: fixing a minimizer broke feasibility")
            return outcome
        values.append(opt)
        fix_row = make_row(direction, opt)
        current = current.with_rows(eq=[fix_row])
    witness = tuple(values)
    assert check_feasible(system, witness)
    return Feasible(witness)
