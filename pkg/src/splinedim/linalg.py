"""Exact rank computation over the rationals and graded matrix assembly.

Matrices here always represent maps between graded pieces of the
polynomial ring R = Q[x, y, z], indexed by a fixed monomial order
(graded lex, x > y > z).  Entries are integers; rationals are cleared
row by row before elimination, which does not change the rank.

Two rank paths are provided:

* ``rank_exact`` -- fraction-free (Bareiss) integer elimination.  Always
  exact, but coefficient growth makes it practical only for small
  matrices.
* ``rank_mod_prime`` -- row echelon over GF(p) with blocked trailing
  updates so the bulk of the work runs through BLAS-backed float64
  matrix products (exact for p < 2**23 and panels of <= 128 pivots).
  A single prime gives a certified lower bound on the rational rank;
  :func:`rank` demands agreement across several primes and raises
  :class:`RankDisagreementError` otherwise.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .mesh import LinearForm

__all__ = [
    "MonomialBasis",
    "monomial_basis",
    "monomial_count",
    "Form",
    "power",
    "Block",
    "GradedMatrix",
    "multiplication_matrix",
    "rank",
    "nullity",
    "rank_exact",
    "rank_mod_prime",
    "RankDisagreementError",
]

NUM_VARIABLES = 3

# Modular path parameters.  Primes are drawn just below 2**23 so that a
# product of two residues times a panel of <= 128 accumulands stays below
# 2**53 and float64 matrix products are exact.
_PRIME_LIMIT = 1 << 23
_PANEL = 128
_EXACT_LIMIT = 64  # auto-dispatch: Bareiss when max(m, n) <= this
_N_PRIMES = 3
_GEMM_CHUNK = 2048


def monomial_count(degree: int) -> int:
    """Number of degree-d monomials in three variables; 0 for d < 0."""
    return math.comb(degree + 2, 2) if degree >= 0 else 0


class MonomialBasis:
    """Ordered exponent triples (i, j, l), i+j+l = degree, graded lex."""

    def __init__(self, degree: int):
        if degree < 0:
            raise ValueError("basis degree must be nonnegative")
        self.degree = degree
        self.monomials = tuple(
            (i, j, degree - i - j)
            for i in range(degree, -1, -1)
            for j in range(degree - i, -1, -1)
        )
        self.index = {m: pos for pos, m in enumerate(self.monomials)}
        assert len(self.monomials) == monomial_count(degree)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __repr__(self) -> str:
        return f"MonomialBasis(degree={self.degree}, size={len(self)})"


@lru_cache(maxsize=None)
def monomial_basis(degree: int) -> MonomialBasis:
    return MonomialBasis(degree)


@dataclass(frozen=True)
class Form:
    """Homogeneous polynomial with integer coefficients.

    ``terms`` holds (exponent triple, coefficient) pairs in basis order
    with zero coefficients dropped, so equal forms compare equal and
    forms are hashable (they key caches downstream).
    """

    degree: int
    terms: tuple[tuple[tuple[int, int, int], int], ...]

    @classmethod
    def from_dict(cls, degree: int, coeffs: dict[tuple[int, int, int], int]) -> "Form":
        basis = monomial_basis(degree)
        for m in coeffs:
            if m not in basis.index:
                raise ValueError(f"monomial {m} is not of degree {degree}")
        terms = tuple((m, int(coeffs[m])) for m in basis if coeffs.get(m, 0) != 0)
        return cls(degree, terms)

    @classmethod
    def from_linear(cls, lf: LinearForm) -> "Form":
        return cls.from_dict(
            1, {(1, 0, 0): lf.a, (0, 1, 0): lf.b, (0, 0, 1): lf.c}
        )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: tuple[int, int, int]) -> int:
        return dict(self.terms).get(mono, 0)

    def evaluate(self, x, y, z):
        return sum(c * x**i * y**j * z**l for (i, j, l), c in self.terms)

    def __mul__(self, other: "Form") -> "Form":
        acc: dict[tuple[int, int, int], int] = {}
        for (i1, j1, l1), c1 in self.terms:
            for (i2, j2, l2), c2 in other.terms:
                key = (i1 + i2, j1 + j2, l1 + l2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return Form.from_dict(self.degree + other.degree, acc)


def power(form: LinearForm | Form, exponent: int) -> Form:
    """Exact expansion of ``form ** exponent`` (exponent >= 1).

    Linear forms expand by the multinomial theorem; general forms by
    repeated multiplication.
    """
    if exponent < 1:
        raise ValueError("exponent must be a positive integer")
    if isinstance(form, LinearForm):
        a, b, c = form
        if (a, b, c) == (0, 0, 0):
            raise ValueError("zero form")
        coeffs: dict[tuple[int, int, int], int] = {}
        for i in range(exponent + 1):
            if a == 0 and i > 0:
                continue
            for j in range(exponent - i + 1):
                l = exponent - i - j
                if (b == 0 and j > 0) or (c == 0 and l > 0):
                    continue
                coeffs[(i, j, l)] = (
                    math.comb(exponent, i)
                    * math.comb(exponent - i, j)
                    * a**i
                    * b**j
                    * c**l
                )
        return Form.from_dict(exponent, coeffs)
    if form.is_zero:
        raise ValueError("zero form")
    result = form
    for _ in range(exponent - 1):
        result = result * form
    return result


class Block(NamedTuple):
    """A labeled run of columns/rows carrying one monomial basis."""

    label: str
    degree: int
    size: int


@dataclass
class GradedMatrix:
    """Dense integer matrix between concatenations of monomial bases."""

    row_blocks: tuple[Block, ...]
    col_blocks: tuple[Block, ...]
    array: np.ndarray

    def __post_init__(self):
        rows = sum(b.size for b in self.row_blocks)
        cols = sum(b.size for b in self.col_blocks)
        if self.array.shape != (rows, cols):
            raise ValueError(
                f"entry shape {self.array.shape} does not match blocks ({rows}, {cols})"
            )

    @classmethod
    def zeros(cls, row_blocks, col_blocks) -> "GradedMatrix":
        rows = sum(b.size for b in row_blocks)
        cols = sum(b.size for b in col_blocks)
        return cls(
            tuple(row_blocks), tuple(col_blocks), np.zeros((rows, cols), np.int64)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    def col_offset(self, label: str) -> int:
        off = 0
        for b in self.col_blocks:
            if b.label == label:
                return off
            off += b.size
        raise KeyError(label)

    def row_offset(self, label: str) -> int:
        off = 0
        for b in self.row_blocks:
            if b.label == label:
                return off
            off += b.size
        raise KeyError(label)


def multiplication_matrix(form: Form | LinearForm, k: int) -> GradedMatrix:
    """Matrix of p -> form * p from degree k to degree k + deg(form).

    Multiplication by a nonzero form is injective, so the result always
    has full column rank.
    """
    if isinstance(form, LinearForm):
        form = Form.from_linear(form)
    if form.is_zero:
        raise ValueError("cannot build a multiplication matrix for the zero form")
    if k < 0:
        raise ValueError("source degree must be nonnegative")
    src = monomial_basis(k)
    dst = monomial_basis(k + form.degree)
    arr = np.zeros((len(dst), len(src)), np.int64)
    for col, (i, j, l) in enumerate(src):
        for (fi, fj, fl), c in form.terms:
            arr[dst.index[(i + fi, j + fj, l + fl)], col] = _checked_int64(c)
    return GradedMatrix(
        (Block("target", k + form.degree, len(dst)),),
        (Block("source", k, len(src)),),
        arr,
    )


def _checked_int64(value: int) -> int:
    if not -(1 << 62) <= value <= (1 << 62):
        raise OverflowError(f"matrix entry {value} exceeds the engine's int64 range")
    return value


class RankDisagreementError(RuntimeError):
    """Modular ranks disagreed across primes; the result is not trusted."""


# -- exact (fraction-free) path ---------------------------------------------


def _integer_rows(matrix) -> list[list[int]]:
    """Copy rows as Python ints, clearing any rational denominators per row."""
    if isinstance(matrix, GradedMatrix):
        matrix = matrix.array
    if isinstance(matrix, np.ndarray):
        if matrix.dtype.kind not in "iu":
            raise TypeError("numpy matrices must have an integer dtype")
        return [[int(v) for v in row] for row in matrix]
    rows = []
    for row in matrix:
        row = list(row)
        if any(isinstance(v, Fraction) for v in row):
            scale = math.lcm(
                *(v.denominator if isinstance(v, Fraction) else 1 for v in row)
            )
            row = [int(v * scale) for v in row]
        rows.append([int(v) for v in row])
    return rows


def rank_exact(matrix) -> int:
    """Rank over Q by Bareiss fraction-free elimination on integer rows."""
    rows = _integer_rows(matrix)
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0 or n == 0:
        return 0
    rank = 0
    prev = 1
    for col in range(n):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pval = rows[rank][col]
        prow = rows[rank]
        for i in range(rank + 1, m):
            irow = rows[i]
            ival = irow[col]
            for j in range(col + 1, n):
                irow[j] = (pval * irow[j] - ival * prow[j]) // prev
            irow[col] = 0
        prev = pval
        rank += 1
    return rank


# -- modular fast path -------------------------------------------------------


@lru_cache(maxsize=1)
def _prime_pool() -> tuple[int, ...]:
    """Primes in the top slice below 2**23 (all valid for the GEMM bound)."""
    lo, hi = _PRIME_LIMIT - 200_000, _PRIME_LIMIT
    sieve = np.ones(hi - lo, dtype=bool)
    for q in range(2, math.isqrt(hi) + 1):
        start = (-lo) % q
        if lo + start == q:
            start += q
        sieve[start::q] = False
    pool = tuple(int(v) for v in np.nonzero(sieve)[0] + lo)
    assert len(pool) > 1000
    return pool


def _select_primes(seed: int, count: int) -> list[int]:
    return random.Random(seed).sample(_prime_pool(), count)


def rank_mod_prime(matrix, p: int, panel: int = _PANEL) -> int:
    """Rank over GF(p) by blocked row echelon; exact for p < 2**23."""
    if not 2 < p < _PRIME_LIMIT:
        raise ValueError(f"prime {p} out of supported range")
    if isinstance(matrix, GradedMatrix):
        matrix = matrix.array
    if isinstance(matrix, np.ndarray):
        a = np.mod(matrix, p).astype(np.int64, copy=True)
    else:
        a = np.array([[v % p for v in row] for row in matrix], dtype=np.int64)
        if a.ndim != 2:
            a = a.reshape(len(matrix), -1)
    m, n = a.shape
    if m == 0 or n == 0:
        return 0
    rank = 0
    for c0 in range(0, n, panel):
        if rank == m:
            break
        c1 = min(c0 + panel, n)
        act = a[rank:, :]
        piv_cols: list[int] = []
        r = 0
        for col in range(c0, c1):
            if r == act.shape[0]:
                break
            nz = np.flatnonzero(act[r:, col])
            if nz.size == 0:
                continue
            if nz[0]:
                i = r + int(nz[0])
                act[[r, i], c0:] = act[[i, r], c0:]
            inv = pow(int(act[r, col]), p - 2, p)
            below = act[r + 1 :, col]
            if below.size:
                mult = below * inv % p
                act[r + 1 :, col] = mult
                if col + 1 < c1:
                    seg = act[r + 1 :, col + 1 : c1]
                    seg -= mult[:, None] * act[r, col + 1 : c1]
                    seg %= p
            piv_cols.append(col)
            r += 1
        if r and c1 < n:
            _trailing_update(act, piv_cols, r, c1, p)
        rank += r
    return rank


def _trailing_update(act: np.ndarray, piv_cols: list[int], r: int, c1: int, p: int):
    """Apply the panel's r pivots to columns c1.. in one blocked pass."""
    t = act[:r, c1:].copy()
    for i in range(1, r):
        # multipliers of pivot row i against earlier pivots (unit lower solve)
        t[i] = (t[i] - act[i, piv_cols[:i]] @ t[:i]) % p
    if act.shape[0] > r:
        lower = act[r:, piv_cols].astype(np.float64)
        tf = t.astype(np.float64)
        for j0 in range(0, t.shape[1], _GEMM_CHUNK):
            j1 = min(j0 + _GEMM_CHUNK, t.shape[1])
            prod = np.rint(lower @ tf[:, j0:j1]).astype(np.int64)
            seg = act[r:, c1 + j0 : c1 + j1]
            seg -= prod
            seg %= p
    act[:r, c1:] = t


def _rank_modular(matrix, seed: int, n_primes: int) -> int:
    ranks = {}
    for p in _select_primes(seed, n_primes):
        ranks[p] = rank_mod_prime(matrix, p)
    values = set(ranks.values())
    if len(values) != 1:
        raise RankDisagreementError(
            f"modular ranks disagree across primes: {ranks}; "
            "rerun with a different seed or the exact method"
        )
    return values.pop()


def rank(matrix, *, method: str = "auto", seed: int = 0, n_primes: int = _N_PRIMES) -> int:
    """Exact rank over the rationals.

    ``method`` is ``"exact"`` (Bareiss), ``"modular"`` (consensus over
    ``n_primes`` primes chosen by ``seed``), or ``"auto"`` (exact for
    small matrices, modular beyond).  The reported value is independent
    of the seed; a cross-prime disagreement raises rather than guesses.
    """
    arr = matrix.array if isinstance(matrix, GradedMatrix) else matrix
    if isinstance(arr, np.ndarray):
        m, n = arr.shape
    else:
        arr = list(arr)
        m = len(arr)
        n = len(arr[0]) if m else 0
    if m == 0 or n == 0:
        return 0
    if method == "auto":
        method = "exact" if max(m, n) <= _EXACT_LIMIT else "modular"
    if method == "exact":
        return rank_exact(arr)
    if method == "modular":
        if not isinstance(arr, np.ndarray):
            arr = _integer_rows(arr)
        return _rank_modular(arr, seed, n_primes)
    raise ValueError(f"unknown rank method {method!r}")


def nullity(matrix, **kwargs) -> int:
    arr = matrix.array if isinstance(matrix, GradedMatrix) else np.asarray(matrix)
    return arr.shape[1] - rank(matrix, **kwargs)
