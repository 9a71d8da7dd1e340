"""Exact sparse linear algebra over any field whose elements support
+, -, *, / and truth testing (QScalar, Fraction, gmpy2.mpq).

Vectors are dicts coordinate -> nonzero scalar.  An Echelon keeps a set
of forward-reduced rows, each normalized to leading coefficient 1, with
the leading coordinate chosen as the minimum under a configurable sort
key.  Reduction pops coordinates in sort order, so a single monotone
pass fully reduces any vector (row operations only introduce strictly
later coordinates).
"""

from __future__ import annotations

import heapq

from .backend import kernel

sp_axpy = kernel.sp_axpy


def sp_scaled(vec: dict, c) -> dict:
    return {k: v * c for k, v in vec.items()}


class Echelon:
    """Forward-reduced sparse row set with ordered pivots.

    order_key maps a coordinate to a sortable key; the leading coordinate
    of a row is its minimal coordinate under that key.
    """

    __slots__ = ("rows", "augs", "order_key", "track")

    def __init__(self, order_key=None, track=False):
        self.rows: dict = {}  # pivot coord -> row dict (row[pivot] == 1)
        self.augs: dict = {}  # pivot coord -> aug dict, when track
        self.order_key = order_key or (lambda c: c)
        self.track = track

    def __len__(self):
        return len(self.rows)

    def pivots(self):
        return self.rows.keys()

    def reduce(self, vec: dict, aug: dict | None = None):
        """Return (residue, aug-combination); residue has no pivot coordinates."""
        ok = self.order_key
        work = dict(vec)
        acc = dict(aug) if aug is not None else ({} if self.track else None)
        heap = [(ok(c), c) for c in work]
        heapq.heapify(heap)
        seen = set(work)
        rows = self.rows
        while heap:
            _, c = heapq.heappop(heap)
            v = work.get(c)
            if not v:
                continue
            row = rows.get(c)
            if row is None:
                continue
            f = -v
            sp_axpy(work, row, f)
            if acc is not None:
                arow = self.augs.get(c)
                if arow:
                    sp_axpy(acc, arow, f)
            for k in row:
                if k not in seen:
                    seen.add(k)
                    heapq.heappush(heap, (ok(k), k))
        return work, acc

    def insert(self, vec: dict, aug: dict | None = None):
        """Reduce vec and store the residue as a new row.

        Returns the new pivot coordinate, or None when vec reduced to zero
        (in which case the returned aug-combination is a dependency).
        """
        res, acc = self.reduce(vec, aug)
        if not res:
            return None, acc
        ok = self.order_key
        piv = min(res, key=ok)
        lead = res[piv]
        if lead != 1:
            inv = 1 / lead
            res = {k: v * inv for k, v in res.items()}
            if acc is not None:
                acc = {k: v * inv for k, v in acc.items()}
        self.rows[piv] = res
        if self.track:
            self.augs[piv] = acc or {}
        return piv, acc


def nullspace(columns: dict, order_key=None) -> list:
    """Kernel of a linear map given by columns: {unknown: image vector dict}.

    Returns a canonical basis (reduced row echelon over the unknown
    coordinates, leading coefficient 1) of all combinations mapping to 0.
    """
    ech = Echelon(order_key=order_key, track=True)
    kernel_vecs = []
    for unk in sorted(columns):
        piv, acc = ech.insert(dict(columns[unk]), {unk: 1})
        if piv is None:
            kernel_vecs.append(acc)
    return rref_rows(kernel_vecs)


def rref_rows(rows: list, order_key=None) -> list:
    """Canonical reduced basis of the span of sparse rows."""
    ech = Echelon(order_key=order_key)
    for r in rows:
        ech.insert(dict(r))
    # back-substitute to full RREF
    pivs = sorted(ech.rows, key=ech.order_key)
    out = {p: dict(ech.rows[p]) for p in pivs}
    for i in range(len(pivs) - 1, -1, -1):
        p = pivs[i]
        row = out[p]
        for pj in pivs[i + 1:]:
            v = row.get(pj)
            if v:
                sp_axpy(row, out[pj], -v)
    return [out[p] for p in pivs]


def rank(rows, order_key=None) -> int:
    ech = Echelon(order_key=order_key)
    n = 0
    for r in rows:
        piv, _ = ech.insert(dict(r))
        if piv is not None:
            n += 1
    return n


def invert_dense(mat: list) -> list:
    """Inverse of a small dense matrix (list of row lists) by Gauss-Jordan."""
    n = len(mat)
    a = [list(row) for row in mat]
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        inv[i][i] = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            raise ArithmeticError("singular matrix")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
        f = 1 / a[col][col]
        if f != 1:
            a[col] = [x * f if x else 0 for x in a[col]]
            inv[col] = [x * f if x else 0 for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                g = a[r][col]
                a[r] = [x - g * y if y else x for x, y in zip(a[r], a[col])]
                inv[r] = [x - g * y if y else x for x, y in zip(inv[r], inv[col])]
    return inv


def mat_vec(mat: list, vec: list) -> list:
    out = []
    for row in mat:
        acc = 0
        for m, v in zip(row, vec):
            if m and v:
                acc = m * v + acc
        out.append(acc)
    return out
