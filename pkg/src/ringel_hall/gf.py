"""Finite fields GF(p^e) and exact linear algebra over them.

Elements are the integers ``0 .. q-1``. For ``e > 1`` an element encodes the
polynomial ``sum_k c_k x^k`` as ``sum_k c_k p^k``; multiplication goes through
discrete-log tables. Matrices are ``numpy`` int64 arrays holding field
elements, and every array routine accepts arrays of any shape.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache

import numpy as np

MAX_Q = 2 ** 16


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, e


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Multiply coefficient lists (low degree first) modulo a monic ``mod``."""
    e = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            for k in range(e + 1):
                prod[d - e + k] = (prod[d - e + k] - c * mod[k]) % p
    return (prod + [0] * e)[:e]


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Brute-force irreducibility: no monic factor of degree 1..deg/2."""
    n = len(coeffs) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            rem = list(coeffs)
            for top in range(n, d - 1, -1):
                c = rem[top]
                if c:
                    for k in range(d + 1):
                        rem[top - d + k] = (rem[top - d + k] - c * divisor[k]) % p
            if not any(rem[:d]):
                return False
    return True


def lowest_irreducible(p: int, e: int) -> list[int]:
    """Monic irreducible of degree ``e`` whose lower coefficients, read as a
    base-``p`` number with the constant term least significant, are minimal."""
    for code in range(p ** e):
        low = [(code // p ** k) % p for k in range(e)]
        coeffs = low + [1]
        if coeffs[0] and _is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


class GaloisField:
    """GF(q) for a prime power ``q <= 2**16``."""

    def __init__(self, q: int):
        q = int(q)
        p, e = _factor_prime_power(q)
        if q > MAX_Q:
            raise ValueError(f"q={q} exceeds the supported maximum {MAX_Q}")
        self.q, self.p, self.e = q, p, e
        self.modulus = lowest_irreducible(p, e) if e > 1 else [0, 1]
        self._build_tables()

    def __repr__(self):
        return f"GaloisField({self.q})"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p ** k) % self.p for k in range(self.e)]

    def _from_digits(self, ds) -> int:
        return sum(int(d) * self.p ** k for k, d in enumerate(ds))

    def _build_tables(self):
        q, p, e = self.q, self.p, self.e
        if e == 1:
            mult = lambda a, b: (a * b) % p
        else:
            mult = lambda a, b: self._from_digits(
                _poly_mulmod(self._digits(a), self._digits(b), self.modulus, p))
        # smallest primitive element
        for g in range(2 if q > 2 else 1, q):
            seen, x = set(), 1
            for _ in range(q - 1):
                seen.add(x)
                x = mult(x, g)
            if len(seen) == q - 1:
                break
        else:
            raise AssertionError("no primitive element found")
        self.primitive = g
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = mult(x, g)
        exp[q - 1:] = exp[: q - 1]
        self._exp, self._log = exp, log
        if e > 1:
            digits = np.array([self._digits(a) for a in range(q)], dtype=np.int64)
            self._digit_arr = digits
            self._powers = p ** np.arange(e, dtype=np.int64)
            neg = ((-digits) % p) @ self._powers
            self._neg = neg.astype(np.int64)
            if q <= 1024:
                summed = (digits[:, None, :] + digits[None, :, :]) % p
                self._add_table = summed @ self._powers
            else:
                self._add_table = None

    # scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(self.add_arr(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return (a * b) % self.p
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if n == 0:
            return 1
        if a == 0:
            return 0
        return int(self._exp[(self._log[a] * n) % (self.q - 1)])

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    @cached_property
    def elements(self) -> range:
        return range(self.q)

    @cached_property
    def additive_basis(self) -> tuple[int, ...]:
        """A basis of GF(q) over its prime field: ``1, x, ..., x^(e-1)``."""
        return tuple(self.p ** k for k in range(self.e))

    # array arithmetic --------------------------------------------------

    def add_arr(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        da, db = self._digit_arr[a], self._digit_arr[b]
        return ((da + db) % self.p) @ self._powers

    def neg_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return (-a) % self.p
        return self._neg[a]

    def sub_arr(self, a, b):
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(a, b)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def sum_arr(self, a, axis: int):
        """Field sum along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        a = np.moveaxis(a, axis, 0)
        out = np.zeros(a.shape[1:], dtype=np.int64)
        for part in a:
            out = self.add_arr(out, part)
        return out

    def matmul(self, A, B):
        A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
        if A.shape[-1] != B.shape[-2]:
            raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
        if self.e == 1:
            return (A @ B) % self.p
        out = np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
        for k in range(A.shape[-1]):
            out = self.add_arr(out, self.mul_arr(A[..., :, k:k + 1], B[..., k:k + 1, :]))
        return out


@lru_cache(maxsize=None)
def field_make(q: int) -> GaloisField:
    return GaloisField(q)


# Gaussian elimination ------------------------------------------------------

def rref(F: GaloisField, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``A`` and its pivot columns."""
    R = np.array(A, dtype=np.int64, copy=True).reshape(np.shape(A))
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    m, n = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        r = row + int(nz[0])
        if r != row:
            R[[row, r]] = R[[r, row]]
        R[row] = F.mul_arr(F.inv(int(R[row, col])), R[row])
        others = np.nonzero(R[:, col])[0]
        for r2 in others:
            if r2 != row:
                R[r2] = F.sub_arr(R[r2], F.mul_arr(int(R[r2, col]), R[row]))
        pivots.append(col)
        row += 1
    return R, pivots


def rank(F: GaloisField, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace_dim(F: GaloisField, A) -> int:
    A = np.asarray(A)
    cols = A.shape[1] if A.ndim == 2 else 0
    return cols - rank(F, A)


def inverse(F: GaloisField, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return A.copy()
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return R[:, n:]


# Graded subspaces ----------------------------------------------------------

def _rref_matrices(F: GaloisField, n: int, k: int):
    """All ``k x n`` matrices in RREF with rank ``k``, one per subspace."""
    if k == 0:
        yield np.zeros((0, n), dtype=np.int64)
        return
    for pivots in itertools.combinations(range(n), k):
        piv = set(pivots)
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in piv]
        for vals in itertools.product(range(F.q), repeat=len(free)):
            M = np.zeros((k, n), dtype=np.int64)
            for r, pc in enumerate(pivots):
                M[r, pc] = 1
            for (r, c), v in zip(free, vals):
                M[r, c] = v
            yield M


@lru_cache(maxsize=None)
def _grassmannian(q: int, n: int, k: int) -> tuple[np.ndarray, ...]:
    mats = tuple(_rref_matrices(field_make(q), n, k))
    for M in mats:
        M.setflags(write=False)
    return mats


def enumerate_graded_subspaces(F: GaloisField, dims, subdims):
    """Yield every I-graded subspace of dimension ``subdims`` inside ``F^dims``.

    A subspace is a tuple with one RREF basis matrix (rows span the subspace)
    per vertex.
    """
    dims, subdims = tuple(dims), tuple(subdims)
    if len(dims) != len(subdims):
        raise ValueError("dims and subdims differ in length")
    if any(k > n or k < 0 for n, k in zip(dims, subdims)):
        raise ValueError(f"subspace dimension {subdims} exceeds {dims}")
    per_vertex = [_grassmannian(F.q, n, k) for n, k in zip(dims, subdims)]
    yield from itertools.product(*per_vertex)


def q_binomial_count(n: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``GF(q)^n``."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
