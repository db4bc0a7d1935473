"""Exact linear algebra over a prime field or the rationals.

Vectors are rows; a subspace is the row space of a matrix and linear maps act
on the right (``v @ M``), which matches right modules.

The prime-field row reduction is the hot loop of the whole package.  It runs
under numba when available; set ``RAUZY_NO_JIT=1`` to force the pure-numpy
path (the two agree bit for bit).
"""
from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from .errors import ConfigError

USE_JIT = os.environ.get("RAUZY_NO_JIT", "0") not in ("1", "true", "yes")

try:  # pragma: no cover - exercised implicitly
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None
    USE_JIT = False


def _rref_mod_p_numpy(a: np.ndarray, p: int) -> np.ndarray:
    """In-place reduced row echelon form mod p; returns pivot columns."""
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


def _rref_mod_p_kernel(a, p):  # compiled by numba below
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    npiv = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                t = a[r, j]
                a[r, j] = a[k, j]
                a[k, j] = t
        # modular inverse by exponentiation
        inv = 1
        base = a[r, c] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(c, cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[npiv] = c
        npiv += 1
        r += 1
    return pivots[:npiv]


if njit is not None:
    _rref_mod_p_jit = njit(cache=True)(_rref_mod_p_kernel)
else:  # pragma: no cover
    _rref_mod_p_jit = None


def rref_mod_p(a: np.ndarray, p: int, jit: bool | None = None) -> np.ndarray:
    use = USE_JIT if jit is None else jit
    if use and _rref_mod_p_jit is not None:
        return _rref_mod_p_jit(a, p)
    return _rref_mod_p_numpy(a, p)


def _rref_fraction(a: np.ndarray) -> list[int]:
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if k is None:
            continue
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = a[r, c]
        if piv != 1:
            a[r] = a[r] / piv
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return pivots


class Field:
    """Common interface for exact scalar fields."""

    name = "field"
    characteristic = 0

    def zeros(self, rows, cols):
        raise NotImplementedError

    def asarray(self, data):
        raise NotImplementedError

    def rref(self, a):
        """Return ``(R, pivots)`` with ``R`` the nonzero rows of the RREF."""
        raise NotImplementedError

    def matmul(self, a, b):
        raise NotImplementedError

    def random_vector(self, rng, n):
        raise NotImplementedError

    def to_json(self):
        return {"field": self.name}

    # --- derived operations -------------------------------------------------

    def eye(self, n):
        m = self.zeros(n, n)
        for i in range(n):
            m[i, i] = 1
        return m

    def rank(self, a) -> int:
        if a.shape[0] == 0 or a.shape[1] == 0:
            return 0
        return len(self.rref(a)[1])

    def rowspace(self, a):
        """Echelon basis of the row space."""
        if a.shape[0] == 0:
            return self.zeros(0, a.shape[1])
        return self.rref(a)[0]

    def nullspace(self, a):
        """Basis (rows) of ``{v : v @ a == 0}``."""
        n = a.shape[0]
        if n == 0:
            return self.zeros(0, 0)
        if a.shape[1] == 0:
            return self.eye(n)
        return self.right_nullspace(a.T)

    def right_nullspace(self, a):
        """Basis (rows) of ``{v : a @ v == 0}``."""
        cols = a.shape[1]
        if a.shape[0] == 0:
            return self.eye(cols)
        r, piv = self.rref(a)
        piv = list(piv)
        free = [c for c in range(cols) if c not in set(piv)]
        out = self.zeros(len(free), cols)
        for k, f in enumerate(free):
            out[k, f] = 1
            for i, pc in enumerate(piv):
                out[k, pc] = self.neg(r[i, f])
        return out

    def neg(self, x):
        return -x

    def solve_rows(self, basis, vecs):
        """Coordinates ``c`` with ``c @ basis == vecs``; raises if not in span."""
        k = basis.shape[0]
        if vecs.shape[0] == 0:
            return self.zeros(0, k)
        if k == 0:
            if self.is_zero(vecs):
                return self.zeros(vecs.shape[0], 0)
            raise ValueError("vector not in span")
        aug = self.concat_cols(basis.T, vecs.T)
        r, piv = self.rref(aug)
        piv = list(piv)
        if piv and piv[-1] >= k:
            raise ValueError("vector not in span")
        out = self.zeros(vecs.shape[0], k)
        for i, pc in enumerate(piv):
            out[:, pc] = r[i, k:]
        return out

    def in_span(self, basis, vecs) -> bool:
        if vecs.shape[0] == 0:
            return True
        return self.rank(self.concat_rows(basis, vecs)) == self.rank(basis)

    def concat_rows(self, a, b):
        if a.shape[0] == 0:
            return b.copy()
        if b.shape[0] == 0:
            return a.copy()
        return np.concatenate([a, b], axis=0)

    def concat_cols(self, a, b):
        return np.concatenate([a, b], axis=1)

    def is_zero(self, a) -> bool:
        return not np.any(a != 0)

    def intersect(self, a, b):
        """Basis of rowspace(a) ∩ rowspace(b)."""
        if a.shape[0] == 0 or b.shape[0] == 0:
            return self.zeros(0, a.shape[1] if a.ndim == 2 else b.shape[1])
        stacked = self.concat_rows(a, b)
        ker = self.nullspace(stacked)
        if ker.shape[0] == 0:
            return self.zeros(0, a.shape[1])
        return self.rowspace(self.matmul(ker[:, : a.shape[0]], a))

    def inverse(self, a):
        n = a.shape[0]
        aug = self.concat_cols(a, self.eye(n))
        r, piv = self.rref(aug)
        if len(piv) < n or list(piv[:n]) != list(range(n)):
            raise ValueError("matrix is singular")
        return r[:, n:]

    def complement_basis(self, sub, n):
        """Rows spanning a complement of rowspace(sub) in k^n (unit vectors)."""
        piv = set(self.rref(sub)[1]) if sub.shape[0] else set()
        free = [c for c in range(n) if c not in piv]
        out = self.zeros(len(free), n)
        for k, c in enumerate(free):
            out[k, c] = 1
        return out


class PrimeField(Field):
    def __init__(self, p: int = 5):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ConfigError(f"{p} is not prime")
        if p > 3037000493:
            raise ConfigError("prime too large for int64 arithmetic")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def zeros(self, rows, cols):
        return np.zeros((rows, cols), dtype=np.int64)

    def asarray(self, data):
        return np.asarray(data, dtype=np.int64) % self.p

    def scalar(self, x):
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def rref(self, a):
        r = np.array(a, dtype=np.int64) % self.p
        piv = rref_mod_p(r, self.p)
        return r[: len(piv)], piv

    def matmul(self, a, b):
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return (a @ b) % self.p

    def neg(self, x):
        return (-x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def scale(self, c, a):
        return (self.scalar(c) * a) % self.p

    def random_vector(self, rng, n):
        return rng.integers(0, self.p, size=n).astype(np.int64)

    def to_json(self):
        return {"field": "prime", "prime": self.p}


class RationalField(Field):
    name = "QQ"
    characteristic = 0

    def zeros(self, rows, cols):
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out

    def asarray(self, data):
        arr = np.asarray(data, dtype=object)
        if arr.ndim == 0:
            return Fraction(arr.item())
        f = np.vectorize(Fraction, otypes=[object])
        return f(arr) if arr.size else arr.astype(object)

    def scalar(self, x):
        return Fraction(x)

    def rref(self, a):
        r = self.asarray(a).copy()
        piv = _rref_fraction(r)
        return r[: len(piv)], np.array(piv, dtype=np.int64)

    def matmul(self, a, b):
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return np.dot(a, b)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def scale(self, c, a):
        return Fraction(c) * a

    def random_vector(self, rng, n):
        vals = rng.integers(-50, 51, size=n)
        return np.array([Fraction(int(v)) for v in vals], dtype=object)

    def to_json(self):
        return {"field": "rational"}


def make_field(kind: str = "prime", p: int = 5, allow_char2: bool = False) -> Field:
    if kind in ("rational", "QQ", "Q"):
        return RationalField()
    if kind != "prime":
        raise ConfigError(f"unknown field {kind!r}")
    if p == 2 and not allow_char2:
        raise ConfigError("characteristic 2 collapses the star-relation signs; pass allow_char2")
    return PrimeField(p)
