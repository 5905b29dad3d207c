"""Hot loops of the brute-force oracles, in numba and pure-numpy flavours.

Both flavours return identical arrays (lexicographically sorted rows of
residues) and identical node counts; ``benchmarks/bench_kernels.py`` times
one against the other.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import backend as _resolve, njit
from .arith import SplineError

DEFAULT_BUDGET = 10**7
MAX_CLOSURE_CELLS = 10**7


class OracleInfeasibleError(SplineError):
    """The exhaustive search would exceed its node budget."""

    def __init__(self, message, visited=None, budget=None):
        super().__init__(message)
        self.visited = visited
        self.budget = budget


# -- spline enumeration ------------------------------------------------------


@njit(cache=True)
def _enumerate_numba(L, m, budget):
    n = L.shape[0]
    cap = 1024
    out = np.empty((cap, n), dtype=np.int64)
    count = 0
    vals = np.zeros(n, dtype=np.int64)
    nxt = np.zeros(n, dtype=np.int64)
    step = np.ones(n, dtype=np.int64)
    visited = 0
    level = 0
    while level >= 0:
        x = nxt[level]
        found = False
        while x < m:
            ok = True
            for u in range(level):
                d = L[level, u]
                if d != 0 and (x - vals[u]) % d != 0:
                    ok = False
                    break
            if ok:
                found = True
                break
            x += step[level]
        if not found:
            level -= 1
            continue
        vals[level] = x
        nxt[level] = x + step[level]
        visited += 1
        if visited > budget:
            return out[:0], visited, False
        if level == n - 1:
            if count == cap:
                grown = np.empty((2 * cap, n), dtype=np.int64)
                grown[:cap] = out
                out = grown
                cap *= 2
            out[count] = vals
            count += 1
        else:
            level += 1
            # first earlier neighbour fixes the residue class to step through
            s = 1
            start = 0
            for u in range(level):
                d = L[level, u]
                if d != 0:
                    s = d
                    start = vals[u] % d
                    break
            step[level] = s
            nxt[level] = start
    return out[:count].copy(), visited, True


def _enumerate_numpy(L, m, budget):
    n = L.shape[0]
    cand = np.arange(m, dtype=np.int64)
    parts = np.zeros((1, 0), dtype=np.int64)
    visited = 0
    for v in range(n):
        mask = np.ones((parts.shape[0], m), dtype=bool)
        for u in range(v):
            d = L[v, u]
            if d:
                mask &= (cand[None, :] - parts[:, u][:, None]) % d == 0
        rows, xs = np.nonzero(mask)
        visited += rows.size
        if visited > budget:
            return np.empty((0, n), dtype=np.int64), visited, False
        parts = np.hstack([parts[rows], xs[:, None]])
    return parts, visited, True


def enumerate_residue_splines(L, m, budget=DEFAULT_BUDGET, backend=None):
    """All vectors in ``[0, m)^n`` with ``L[u, v] | f_u - f_v`` on every edge.

    ``L`` is the dense label matrix (0 meaning no edge). Returns
    ``(rows, visited)``; raises :class:`OracleInfeasibleError` when more than
    ``budget`` partial assignments would be visited.
    """
    L = np.ascontiguousarray(L, dtype=np.int64)
    if m >= 2**62:
        raise OracleInfeasibleError(f"modulus {m} too large for the int64 enumeration kernel")
    fn = _enumerate_numba if _resolve(backend) == "numba" else _enumerate_numpy
    rows, visited, ok = fn(L, np.int64(m), np.int64(budget))
    if not ok:
        raise OracleInfeasibleError(
            f"spline enumeration exceeded the budget of {budget} nodes", visited=int(visited), budget=budget
        )
    return rows, int(visited)


# -- additive closure --------------------------------------------------------


@njit(cache=True)
def _closure_numba(gens, m, n):
    size = m**n
    seen = np.zeros(size, dtype=np.bool_)
    queue = np.empty(size, dtype=np.int64)
    powers = np.empty(n, dtype=np.int64)
    p = 1
    for i in range(n - 1, -1, -1):
        powers[i] = p
        p *= m
    seen[0] = True
    queue[0] = 0
    head = 0
    tail = 1
    digits = np.empty(n, dtype=np.int64)
    while head < tail:
        code = queue[head]
        head += 1
        for i in range(n):
            digits[i] = (code // powers[i]) % m
        for g in range(gens.shape[0]):
            new = 0
            for i in range(n):
                new += ((digits[i] + gens[g, i]) % m) * powers[i]
            if not seen[new]:
                seen[new] = True
                queue[tail] = new
                tail += 1
    return np.sort(queue[:tail])


def _closure_numpy(gens, m, n):
    powers = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = np.zeros(1, dtype=np.int64)
    for g in gens:
        order = m // math.gcd(m, *(int(x) for x in g))
        digits = (codes[:, None] // powers) % m
        layers = [codes]
        for j in range(1, order):
            layers.append(((digits + j * g) % m) @ powers)
        codes = np.unique(np.concatenate(layers))
    return codes


def additive_closure(gens, m, n, backend=None):
    """Subgroup of ``(Z/mZ)^n`` generated by the rows of ``gens``, as sorted rows."""
    if m**n > MAX_CLOSURE_CELLS:
        raise OracleInfeasibleError(f"closure over (Z/{m}Z)^{n} exceeds {MAX_CLOSURE_CELLS} cells")
    gens = np.ascontiguousarray(np.asarray(gens, dtype=np.int64).reshape(-1, n) % m)
    if _resolve(backend) == "numba":
        codes = _closure_numba(gens, np.int64(m), n)
    else:
        codes = _closure_numpy(gens, m, n)
    powers = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // powers) % m
