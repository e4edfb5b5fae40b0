"""Pure-Python elimination kernels.

These mirror the compiled versions in ``_kernels.pyx`` line for line and are
used whenever the extension module is unavailable.  All inputs are lists of
lists of Python ints; nothing here knows about fractions.
"""


def bareiss_echelon(rows, ncols):
    """Fraction-free row echelon form.

    Pivoting takes, for each column from left to right, the first remaining
    row whose entry is nonzero.  Returns ``(echelon_rows, pivot_columns)``
    where only the first ``len(pivot_columns)`` rows are meaningful.  The
    input is not modified.
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r >= nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        pv = prow[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f == 0:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j] - f * prow[j]) // prev
                row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def modular_rank(rows, ncols, p):
    """Rank of an integer matrix over GF(p)."""
    a = [[x % p for x in r] for r in rows]
    nrows = len(a)
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        inv = pow(prow[c], p - 2, p)
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                f = (f * inv) % p
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        r += 1
    return r
