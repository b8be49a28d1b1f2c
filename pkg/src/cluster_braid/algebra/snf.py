"""Smith normal form of integer matrices.

Matrices are plain lists of rows.  ``smith_normal_form`` is the dense
reference routine; ``invariant_factors`` first strips unit pivots from a
sparse representation, which is what boundary matrices of polygon complexes
need (hundreds of columns, a handful of nonzeros each).
"""

from __future__ import annotations

from typing import Sequence

__all__ = ["IntMatrix", "smith_normal_form", "invariant_factors", "diagonal"]

IntMatrix = list[list[int]]


def _dims(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise ValueError("matrix is not rectangular")
    return rows, cols


def _snf_diagonal(a: IntMatrix) -> list[int]:
    """Destructively reduce ``a``; return the diagonal (nonnegative, divisibility chain)."""
    rows, cols = _dims(a)
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, cols):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            rt = a[t]
            for j in range(t + 1, cols):
                if rt[j]:
                    q = rt[j] // p
                    if q:
                        for r in a[t:]:
                            r[j] -= q * r[t]
                    if rt[j]:
                        dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                ri, rt = a[bad], a[t]
                for j in range(t, cols):
                    rt[j] += ri[j]
                continue
            # move smallest remainder into pivot position
            best = None
            for i in range(t, rows):
                if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                    best = (abs(a[i][t]), i, t)
            for j in range(t, cols):
                if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                    best = (abs(a[t][j]), t, j)
            _, pi, pj = best
            a[t], a[pi] = a[pi], a[t]
            for r in a:
                r[t], r[pj] = r[pj], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def smith_normal_form(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Smith normal form D of ``m``: diagonal, nonnegative, d_i | d_{i+1}."""
    rows, cols = _dims(m)
    diag = _snf_diagonal([list(map(int, r)) for r in m])
    out = [[0] * cols for _ in range(rows)]
    for k, d in enumerate(diag):
        out[k][k] = d
    return out


def diagonal(d: Sequence[Sequence[int]]) -> list[int]:
    return [d[k][k] for k in range(min(len(d), len(d[0]) if d else 0))]


def invariant_factors(columns: Sequence[dict[int, int]], nrows: int) -> list[int]:
    """Nonzero diagonal of the SNF of a sparse matrix given column-wise.

    ``columns[j]`` maps row index to entry.  Returns the full list of nonzero
    invariant factors (units included) in divisibility order.
    """
    cols = {j: {i: v for i, v in c.items() if v} for j, c in enumerate(columns)}
    cols = {j: c for j, c in cols.items() if c}
    rows: dict[int, set[int]] = {}
    for j, c in cols.items():
        for i in c:
            rows.setdefault(i, set()).add(j)
    units = 0
    progress = True
    while progress:
        progress = False
        for j in list(cols):
            c = cols.get(j)
            if not c:
                continue
            piv = next((i for i, v in c.items() if v in (1, -1)), None)
            if piv is None:
                continue
            pv = c[piv]
            # clear row ``piv`` in all other columns via column operations
            for k in list(rows[piv]):
                if k == j:
                    continue
                ck = cols[k]
                f = ck[piv] * pv  # pv = +-1 so pv^-1 = pv
                for i, v in c.items():
                    nv = ck.get(i, 0) - f * v
                    if nv:
                        if i not in ck:
                            rows.setdefault(i, set()).add(k)
                        ck[i] = nv
                    elif i in ck:
                        del ck[i]
                        rows[i].discard(k)
                if not ck:
                    del cols[k]
            # column j now alone in row piv; row ops clear the rest of column j
            for i in c:
                rows[i].discard(j)
            del cols[j]
            units += 1
            progress = True
    rest_rows = sorted({i for c in cols.values() for i in c})
    if not rest_rows:
        return [1] * units
    index = {i: r for r, i in enumerate(rest_rows)}
    dense = [[0] * len(cols) for _ in rest_rows]
    for jj, c in enumerate(cols.values()):
        for i, v in c.items():
            dense[index[i]][jj] = v
    tail = [d for d in _snf_diagonal(dense) if d]
    return [1] * units + tail
