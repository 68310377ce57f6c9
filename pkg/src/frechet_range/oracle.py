"""Free-space reachability: the exact Fréchet decision procedure.

Cells, boundaries and reachable sets follow the usual free space diagram
construction.  Because the curves are one-dimensional, a position on an edge
is identified by its value; reachable sets are kept as (orientation,
param-lower value, param-upper value).  Every value is a symbol
``(base, k)`` meaning ``base + k * rho``, so the same code also decides curves
whose vertices are offset by multiples of rho (used for forward/backward
numbers) without rounding.
"""

from .errors import DimensionMismatch
from .exact import cmp_offset
from .series import values_of


def _cmp(a, b, rho):
    """Sign of symbol a minus symbol b."""
    if a[1] == b[1]:
        x, y = a[0], b[0]
        return (x > y) - (x < y)
    return cmp_offset(a[0], b[0], b[1] - a[1], rho)


def _within(v, w, rho):
    """|v - w| <= rho for symbols."""
    return (
        cmp_offset(v[0], w[0], 1 - v[1] + w[1], rho) <= 0
        and cmp_offset(v[0], w[0], -1 - v[1] + w[1], rho) >= 0
    )


def _free(a, b, v, rho):
    """Free part of edge a->b against vertex v, or None if empty."""
    lo_v = (v[0], v[1] - 1)
    hi_v = (v[0], v[1] + 1)
    o = _cmp(b, a, rho)
    if o > 0:
        plo = a if _cmp(a, lo_v, rho) >= 0 else lo_v
        phi = b if _cmp(b, hi_v, rho) <= 0 else hi_v
        return (o, plo, phi) if _cmp(plo, phi, rho) <= 0 else None
    if o < 0:
        plo = a if _cmp(a, hi_v, rho) <= 0 else hi_v
        phi = b if _cmp(b, lo_v, rho) >= 0 else lo_v
        return (o, plo, phi) if _cmp(plo, phi, rho) >= 0 else None
    if _cmp(lo_v, a, rho) <= 0 and _cmp(a, hi_v, rho) <= 0:
        return (0, a, a)
    return None


def _restrict(free, low, rho):
    """Part of ``free`` at or after the position ``low`` (same edge)."""
    if free is None:
        return None
    o, plo, phi = free
    if o > 0:
        if _cmp(low, plo, rho) > 0:
            plo = low
        return (o, plo, phi) if _cmp(plo, phi, rho) <= 0 else None
    if o < 0:
        if _cmp(low, plo, rho) < 0:
            plo = low
        return (o, plo, phi) if _cmp(plo, phi, rho) >= 0 else None
    return free


def _syms(x):
    return [(v, 0) for v in values_of(x)]


def decide_symbolic(q, s, rho):
    """Decision on symbol lists; see module docstring."""
    tq, ts = len(q), len(s)
    if not _within(q[0], s[0], rho) or not _within(q[-1], s[-1], rho):
        return False
    # V[i][j]: reachable on x=i within s-edge j; H[i][j]: on y=j within q-edge i
    V = [[None] * (ts - 1) for _ in range(tq)]
    H = [[None] * ts for _ in range(tq - 1)]
    ok = True
    for j in range(ts - 1):
        if ok and (j == 0 or _within(q[0], s[j], rho)):
            V[0][j] = _free(s[j], s[j + 1], q[0], rho)
        ok = V[0][j] is not None
    ok = True
    for i in range(tq - 1):
        if ok and (i == 0 or _within(q[i], s[0], rho)):
            H[i][0] = _free(q[i], q[i + 1], s[0], rho)
        ok = H[i][0] is not None
    for i in range(tq - 1):
        Vi, Vn, Hi = V[i], V[i + 1], H[i]
        for j in range(ts - 1):
            left, bottom = Vi[j], Hi[j]
            if left is None and bottom is None:
                continue
            right = _free(s[j], s[j + 1], q[i + 1], rho)
            if bottom is None:
                right = _restrict(right, left[1], rho)
            Vn[j] = right
            top = _free(q[i], q[i + 1], s[j + 1], rho)
            if left is None:
                top = _restrict(top, bottom[1], rho)
            Hi[j + 1] = top
    return V[tq - 1][ts - 2] is not None or H[tq - 2][ts - 1] is not None


def decide_frechet(q, s, rho) -> bool:
    """True iff the continuous Fréchet distance of q and s is at most rho."""
    return decide_symbolic(_syms(q), _syms(s), rho)


def feasible_symbolic(cells, q, s, rho):
    if not _within(q[0], s[0], rho) or not _within(q[-1], s[-1], rho):
        return False
    i, j = cells[0]
    i, j = i - 1, j - 1
    # entry into the first cell: the start corner, seen as the left boundary
    kind, reach = "left", _free(s[j], s[j + 1], q[i], rho)
    for ni, nj in cells[1:]:
        ni, nj = ni - 1, nj - 1
        if ni == i + 1 and nj == j:
            nxt = _free(s[j], s[j + 1], q[i + 1], rho)
            if kind == "left":
                nxt = _restrict(nxt, reach[1], rho)
            kind = "left"
        elif ni == i and nj == j + 1:
            nxt = _free(q[i], q[i + 1], s[j + 1], rho)
            if kind == "bottom":
                nxt = _restrict(nxt, reach[1], rho)
            kind = "bottom"
        else:
            raise ValueError(f"cell sequence is not a staircase at {(ni + 1, nj + 1)}")
        if nxt is None:
            return False
        reach, i, j = nxt, ni, nj
    return reach is not None


def feasible_for_sequence(C, q, s, rho) -> bool:
    """Whether some feasible path traverses exactly the cells of ``C``."""
    qv, sv = values_of(q), values_of(s)
    if tuple(C.grid) != (len(qv) - 1, len(sv) - 1):
        raise DimensionMismatch(
            f"cell grid {tuple(C.grid)} does not match series of "
            f"complexity {len(qv)} and {len(sv)}"
        )
    return feasible_symbolic(C.cells, _syms(qv), _syms(sv), rho)
