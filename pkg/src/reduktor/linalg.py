"""Exact dense linear algebra over F_p (numpy int64) or Q (object arrays).

For p < 2**31 every product of two reduced entries fits in int64 with room
for one further subtraction, so elimination reduces after each row update.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .field import PrimeField

_MAX_NUMPY_PRIME = 2**31


def as_matrix(rows, field: PrimeField, ncols: int | None = None) -> np.ndarray:
    if field.p:
        if field.p >= _MAX_NUMPY_PRIME:
            raise ValueError("prime too large for int64 elimination")
        a = np.array(rows, dtype=np.int64)
        if ncols is not None and a.size == 0:
            a = np.zeros((len(rows), ncols), dtype=np.int64)
        return a % field.p
    a = np.array([[Fraction(c) for c in r] for r in rows], dtype=object)
    if ncols is not None and a.size == 0:
        a = np.zeros((len(rows), ncols), dtype=object) + Fraction(0)
    return a


def row_echelon(a: np.ndarray, field: PrimeField) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    p = field.p
    a = a.copy()
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        return a, []
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = field.inv(a[r, col])
        a[r] = (a[r] * inv) % p if p else a[r] * inv
        others = np.nonzero(a[:, col])[0]
        others = others[others != r]
        if others.size:
            factors = a[others, col].reshape(-1, 1)
            upd = a[others] - factors * a[r]
            a[others] = upd % p if p else upd
        pivots.append(col)
        r += 1
    return a, pivots


def rank(a, field: PrimeField) -> int:
    a = a if isinstance(a, np.ndarray) else as_matrix(a, field)
    if a.size == 0:
        return 0
    return len(row_echelon(a, field)[1])


def solve_left(basis: np.ndarray, target: np.ndarray, field: PrimeField) -> np.ndarray:
    """Coefficients c with ``c @ basis == target`` for a full-row-rank basis."""
    h = basis.shape[0]
    aug = np.concatenate([basis.T, target.reshape(-1, 1)], axis=1)
    red, piv = row_echelon(aug, field)
    if h in piv or len(piv) < h:
        raise ValueError("target is not in the row span of the basis")
    return red[:h, h]


def combine(mats, coeffs, field: PrimeField) -> np.ndarray:
    """``sum_j coeffs[j] * mats[j]`` reduced mod p."""
    p = field.p
    acc = None
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        term = (m * c) % p if p else m * c
        acc = term if acc is None else ((acc + term) % p if p else acc + term)
    if acc is None:
        acc = mats[0] * 0
    return acc
