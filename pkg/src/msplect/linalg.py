"""Exact linear algebra over the rationals.

Dense row reduction for small matrices (Lie algebra differentials) and a
sparse solver for the large but very block-structured systems produced by
the Hamiltonian-field ansatz.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple


def rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Basis of {v : A v = 0}, one vector per free column, scaled to integers."""
    if not rows:
        if ncols is None:
            return []
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(_integral(v))
    return basis


def _integral(v: List[Fraction]) -> List[Fraction]:
    from math import lcm

    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    return [x * den for x in v]


class Inconsistent(ValueError):
    """The linear system has no solution."""


def solve_sparse(equations: List[Dict[Hashable, Fraction]], rhs: List[Fraction]):
    """Solve a sparse exact system.

    ``equations[i]`` maps unknown -> coefficient; returns (solution, free)
    where ``solution`` maps each pivot unknown to its value with all free
    unknowns set to zero and ``free`` lists the free unknowns.  Raises
    ``Inconsistent`` if there is no solution.  The system is split into
    connected blocks (unknowns sharing an equation) and each block is
    reduced by Gauss-Jordan elimination.
    """
    parent: Dict[Hashable, Hashable] = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for eq in equations:
        keys = list(eq)
        for k in keys:
            parent.setdefault(k, k)
        for k in keys[1:]:
            ra, rb = find(keys[0]), find(k)
            if ra != rb:
                parent[ra] = rb

    blocks: Dict[Hashable, List[int]] = {}
    for i, eq in enumerate(equations):
        if not eq:
            if rhs[i]:
                raise Inconsistent("0 = nonzero")
            continue
        blocks.setdefault(find(next(iter(eq))), []).append(i)

    solution: Dict[Hashable, Fraction] = {}
    free: List[Hashable] = []
    for root, eq_ids in blocks.items():
        unknowns = sorted({u for i in eq_ids for u in equations[i]}, key=repr)
        col = {u: j for j, u in enumerate(unknowns)}
        rows = []
        for i in eq_ids:
            row = [Fraction(0)] * (len(unknowns) + 1)
            for u, c in equations[i].items():
                row[col[u]] += Fraction(c)
            row[-1] = Fraction(rhs[i])
            rows.append(row)
        red, pivots = rref(rows)
        if len(unknowns) in pivots:
            raise Inconsistent("augmented column is a pivot")
        for row, p in zip(red, pivots):
            if row[-1]:
                solution[unknowns[p]] = row[-1]
        free.extend(u for j, u in enumerate(unknowns) if j not in pivots)
    return solution, free
