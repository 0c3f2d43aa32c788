from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import galois
import numpy as np

from src.app.errors import InvalidInputError


class PrimeField:
    """Matrix helpers over ``GF(p)`` that also handle zero-sized shapes.

    Vectors are columns; bases are matrices whose columns are the basis vectors.
    """

    def __init__(self, prime: int) -> None:
        if prime < 2 or not galois.is_prime(prime):
            raise InvalidInputError(f"field characteristic must be prime, got {prime}")
        self.prime = prime
        self.GF = galois.GF(prime)

    def __repr__(self) -> str:
        return f"PrimeField({self.prime})"

    # construction

    def scalar(self, value: int | Fraction) -> int:
        """Residue of an integer or rational, for use as a matrix entry."""
        value = Fraction(value)
        if value.denominator % self.prime == 0:
            raise InvalidInputError(f"coefficient {value} is undefined modulo {self.prime}")
        return value.numerator * pow(value.denominator, -1, self.prime) % self.prime

    def matrix(self, entries) -> galois.FieldArray:
        arr = np.asarray(entries, dtype=np.int64)
        return self.GF(np.mod(arr, self.prime))

    def zeros(self, rows: int, cols: int) -> galois.FieldArray:
        return self.GF.Zeros((rows, cols))

    def identity(self, n: int) -> galois.FieldArray:
        if n == 0:
            return self.zeros(0, 0)
        return self.GF.Identity(n)

    def random(self, shape: Tuple[int, ...], rng: np.random.Generator) -> galois.FieldArray:
        return self.GF(rng.integers(0, self.prime, size=shape, dtype=np.int64))

    # shape-safe arithmetic

    def matmul(self, a: galois.FieldArray, b: galois.FieldArray) -> galois.FieldArray:
        if a.shape[0] == 0 or a.shape[1] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return a @ b

    def hstack(self, blocks: Sequence[galois.FieldArray], rows: int) -> galois.FieldArray:
        blocks = [b for b in blocks if b.shape[1] > 0]
        if not blocks:
            return self.zeros(rows, 0)
        return self.GF(np.hstack([b.view(np.ndarray) for b in blocks]))

    def vstack(self, blocks: Sequence[galois.FieldArray], cols: int) -> galois.FieldArray:
        blocks = [b for b in blocks if b.shape[0] > 0]
        if not blocks:
            return self.zeros(0, cols)
        return self.GF(np.vstack([b.view(np.ndarray) for b in blocks]))

    def block_diag(self, blocks: Sequence[galois.FieldArray]) -> galois.FieldArray:
        rows = sum(b.shape[0] for b in blocks)
        cols = sum(b.shape[1] for b in blocks)
        out = np.zeros((rows, cols), dtype=np.int64)
        r = c = 0
        for b in blocks:
            out[r:r + b.shape[0], c:c + b.shape[1]] = b.view(np.ndarray)
            r += b.shape[0]
            c += b.shape[1]
        return self.GF(out)

    def power(self, a: galois.FieldArray, exponent: int) -> galois.FieldArray:
        result = self.identity(a.shape[0])
        base = a
        while exponent:
            if exponent & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            exponent >>= 1
        return result

    # linear algebra

    def rank(self, a: galois.FieldArray) -> int:
        if a.size == 0:
            return 0
        return int(np.linalg.matrix_rank(a))

    def is_zero(self, a: galois.FieldArray) -> bool:
        return a.size == 0 or not np.any(a.view(np.ndarray))

    def kernel_basis(self, a: galois.FieldArray) -> galois.FieldArray:
        """Columns spanning ``{x : a x = 0}``."""
        rows, cols = a.shape
        if cols == 0:
            return self.zeros(0, 0)
        if rows == 0 or self.is_zero(a):
            return self.identity(cols)
        ns = a.null_space()
        if ns.shape[0] == 0:
            return self.zeros(cols, 0)
        return ns.T

    def column_space_basis(self, a: galois.FieldArray) -> galois.FieldArray:
        """Columns spanning the column space of ``a`` (reduced echelon form)."""
        rows, cols = a.shape
        if rows == 0 or cols == 0 or self.is_zero(a):
            return self.zeros(rows, 0)
        reduced = a.T.row_reduce()
        keep = [i for i in range(reduced.shape[0]) if np.any(reduced[i].view(np.ndarray))]
        return reduced[keep].T

    def pivot_columns(self, a: galois.FieldArray) -> List[int]:
        if a.size == 0:
            return []
        reduced = a.row_reduce()
        pivots = []
        for row in reduced.view(np.ndarray):
            nz = np.flatnonzero(row)
            if nz.size:
                pivots.append(int(nz[0]))
        return pivots

    def complement_indices(self, basis: galois.FieldArray, dim: int) -> List[int]:
        """Standard basis vectors ``e_k`` completing the columns of ``basis`` to the whole space."""
        if basis.shape[1] == 0:
            return list(range(dim))
        pivots = set(self.pivot_columns(basis.T))
        return [k for k in range(dim) if k not in pivots]

    def extend_basis(self, span: galois.FieldArray, candidates: galois.FieldArray) -> List[int]:
        """Indices of ``candidates`` columns that extend ``span`` greedily."""
        rows = candidates.shape[0]
        combined = self.hstack([span, candidates], rows)
        pivots = self.pivot_columns(combined)
        offset = span.shape[1]
        return [p - offset for p in pivots if p >= offset]

    def find_coordinates(self, basis: galois.FieldArray, vectors: galois.FieldArray) -> galois.FieldArray:
        """``X`` with ``basis @ X == vectors``; ``basis`` must have independent columns."""
        rows, k = basis.shape
        m = vectors.shape[1]
        if k == 0 or m == 0:
            if m and not self.is_zero(vectors):
                raise ValueError("vectors are not in the span of an empty basis")
            return self.zeros(k, m)
        reduced = self.hstack([basis, vectors], rows).row_reduce()
        coords = reduced[:k, k:]
        if not self.is_zero(reduced[k:, k:]):
            raise ValueError("vectors are not in the span of the basis")
        return self.GF(coords.view(np.ndarray))

    def inverse(self, a: galois.FieldArray) -> galois.FieldArray:
        if a.shape[0] == 0:
            return self.zeros(0, 0)
        return np.linalg.inv(a)

    def is_invertible(self, a: galois.FieldArray) -> bool:
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]

    def eigenvalues(self, a: galois.FieldArray) -> List[int]:
        """Roots in ``GF(p)`` of the characteristic polynomial of a square matrix."""
        if a.shape[0] == 0:
            return []
        if a.shape[0] == 1:
            # galois cannot form the characteristic polynomial of a 1x1 matrix
            return [int(a[0, 0])]
        roots = a.characteristic_poly().roots()
        return sorted(int(r) for r in roots)


@lru_cache(maxsize=None)
def prime_field(prime: int) -> PrimeField:
    return PrimeField(prime)
