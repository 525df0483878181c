"""Exact arithmetic for square matrices over Z_m.

Matrices are stored as immutable int64 arrays with entries normalized to
[0, m).  The symplectic pairing uses the interleaved basis convention:
coordinates come in pairs (2k-1, 2k), so the reference form J is block
diagonal with 2x2 blocks [[0, 1], [-1, 0]].

Composite moduli are supported throughout: determinants are computed by
fraction-free (Bareiss) elimination over the integers and reduced mod m,
and inverses go through the adjugate, so no division by a non-unit ever
happens.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import SingularMatrixError, StructuralError


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    i = 2
    while i * i <= m:
        if m % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Modulus:
    m: int
    is_prime: bool = field(init=False)

    def __post_init__(self):
        if self.m < 2:
            raise StructuralError(f"modulus must be >= 2, got {self.m}")
        object.__setattr__(self, "is_prime", _is_prime(self.m))

    def unit_inverse(self, x: int) -> int:
        try:
            return pow(x % self.m, -1, self.m)
        except ValueError:
            raise StructuralError(f"{x} is not a unit mod {self.m}") from None

    def units(self):
        """All units of Z_m in ascending order."""
        from math import gcd

        return [w for w in range(1, self.m) if gcd(w, self.m) == 1]


class ModMatrix:
    """Square matrix over Z_m with even dimension, immutable after construction."""

    __slots__ = ("entries", "modulus")

    def __init__(self, entries, modulus):
        mod = modulus if isinstance(modulus, Modulus) else Modulus(int(modulus))
        a = np.array(entries, dtype=np.int64) % mod.m
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise StructuralError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] % 2 != 0:
            raise StructuralError(f"dimension must be even, got {a.shape[0]}")
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        self.entries = a
        self.modulus = mod

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        return self.modulus.m

    @classmethod
    def identity(cls, dim, modulus):
        return cls(np.eye(dim, dtype=np.int64), modulus)

    def __eq__(self, other):
        if not isinstance(other, ModMatrix):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(canonical_key(self))

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __neg__(self):
        return ModMatrix(-self.entries, self.modulus)

    def __repr__(self):
        rows = ", ".join("[" + " ".join(str(x) for x in r) + "]" for r in self.entries)
        return f"ModMatrix({rows} mod {self.m})"


@dataclass(frozen=True)
class TorusElement:
    """The diagonal symplectic matrix diag(w, w^-1, 1, ..., 1) of dimension 2n."""

    w: int
    n: int

    def realize(self, modulus) -> ModMatrix:
        mod = modulus if isinstance(modulus, Modulus) else Modulus(int(modulus))
        diag = [1] * (2 * self.n)
        diag[0] = self.w % mod.m
        diag[1] = mod.unit_inverse(self.w)
        return ModMatrix(np.diag(np.array(diag, dtype=np.int64)), mod)


def _check_compatible(a: ModMatrix, b: ModMatrix):
    if a.dim != b.dim:
        raise StructuralError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.m != b.m:
        raise StructuralError(f"modulus mismatch: {a.m} vs {b.m}")


def mat_mul(a: ModMatrix, b: ModMatrix) -> ModMatrix:
    _check_compatible(a, b)
    return ModMatrix((a.entries @ b.entries) % a.m, a.modulus)


def det(a: ModMatrix) -> int:
    """Determinant of a, as a residue in [0, m).

    Bareiss fraction-free elimination over exact python integers, reduced
    mod m only at the end, so composite moduli need no unit pivots.
    """
    n = a.dim
    mat = [[int(x) for x in row] for row in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            for r in range(k + 1, n):
                if mat[r][k] != 0:
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return (sign * mat[n - 1][n - 1]) % a.m


def _minor_det(rows, skip_r, skip_c, n):
    sub = [[rows[i][j] for j in range(n) if j != skip_c] for i in range(n) if i != skip_r]
    # Laplace-free: reuse Bareiss on the plain integer minor
    k = n - 1
    if k == 0:
        return 1
    if k == 1:
        return sub[0][0]
    if k == 2:
        return sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
    sign = 1
    prev = 1
    for c in range(k - 1):
        if sub[c][c] == 0:
            for r in range(c + 1, k):
                if sub[r][c] != 0:
                    sub[c], sub[r] = sub[r], sub[c]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                sub[i][j] = (sub[i][j] * sub[c][c] - sub[i][c] * sub[c][j]) // prev
            sub[i][c] = 0
        prev = sub[c][c]
    return sign * sub[k - 1][k - 1]


def mat_inverse(a: ModMatrix) -> ModMatrix:
    """Inverse over Z_m via the adjugate; raises SingularMatrixError if det is no unit."""
    d = det(a)
    try:
        dinv = pow(d, -1, a.m)
    except ValueError:
        raise SingularMatrixError(d, a.m) from None
    n = a.dim
    rows = [[int(x) for x in row] for row in a.entries]
    adj = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            c = _minor_det(rows, j, i, n)  # adjugate = transposed cofactors
            if (i + j) % 2:
                c = -c
            adj[i, j] = (c * dinv) % a.m
    return ModMatrix(adj, a.modulus)


def symplectic_form(n: int) -> np.ndarray:
    """J for the interleaved-pairs basis: block diag of [[0, 1], [-1, 0]]."""
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for k in range(n):
        J[2 * k, 2 * k + 1] = 1
        J[2 * k + 1, 2 * k] = -1
    return J


def is_symplectic(a: ModMatrix) -> bool:
    """True iff a preserves the interleaved symplectic pairing over Z_m.

    Equivalent to the pairwise column condition
    sum_i (a[2i-1,l]*a[2i,j] - a[2i-1,j]*a[2i,l]) = [l, j paired],
    i.e. a^T J a = J mod m.
    """
    n = a.dim // 2
    J = symplectic_form(n) % a.m
    return np.array_equal((a.entries.T @ J @ a.entries) % a.m, J)


def _entry_width(m: int) -> int:
    if m <= 256:
        return 1
    if m <= 65536:
        return 2
    return 4


def canonical_key(a: ModMatrix) -> bytes:
    """Injective, deterministic byte encoding of a matrix.

    Layout (bit-exact): 4-byte little-endian dim, 4-byte little-endian m,
    then dim^2 entries row-major as minimal-width little-endian unsigned
    integers (1 byte if m <= 256, 2 if m <= 65536, else 4).
    """
    w = _entry_width(a.m)
    dtype = {1: "<u1", 2: "<u2", 4: "<u4"}[w]
    return struct.pack("<II", a.dim, a.m) + a.entries.astype(dtype).tobytes()


def from_canonical_key(key: bytes) -> ModMatrix:
    """Decode a canonical_key back into the matrix it encodes."""
    dim, m = struct.unpack_from("<II", key)
    w = _entry_width(m)
    dtype = {1: "<u1", 2: "<u2", 4: "<u4"}[w]
    body = np.frombuffer(key, dtype=dtype, offset=8)
    if body.size != dim * dim:
        raise StructuralError(f"key body has {body.size} entries, expected {dim * dim}")
    return ModMatrix(body.astype(np.int64).reshape(dim, dim), m)


def batch_mod_inverse(stack: np.ndarray, m: int) -> np.ndarray:
    """Inverses of a stack of invertible matrices mod m, vectorized for dim 2 and 4.

    Falls back to the per-matrix adjugate for other dimensions.
    """
    d = stack.shape[-1]
    mod = Modulus(m)
    if d == 2:
        dets = (stack[:, 0, 0] * stack[:, 1, 1] - stack[:, 0, 1] * stack[:, 1, 0]) % m
        dinv = np.array([mod.unit_inverse(int(x)) for x in dets], dtype=np.int64)
        out = np.empty_like(stack)
        out[:, 0, 0] = stack[:, 1, 1]
        out[:, 1, 1] = stack[:, 0, 0]
        out[:, 0, 1] = -stack[:, 0, 1]
        out[:, 1, 0] = -stack[:, 1, 0]
        return (out * dinv[:, None, None]) % m
    if d == 4:
        return _batch_inverse4(stack.astype(object), m)
    mats = [mat_inverse(ModMatrix(x, m)).entries for x in stack]
    return np.stack(mats)


def _det3(a, r, c):
    # 3x3 determinant of `a` with row r and column c removed (a is (N,4,4) object array)
    rs = [i for i in range(4) if i != r]
    cs = [j for j in range(4) if j != c]
    m0, m1, m2 = rs
    n0, n1, n2 = cs
    return (
        a[:, m0, n0] * (a[:, m1, n1] * a[:, m2, n2] - a[:, m1, n2] * a[:, m2, n1])
        - a[:, m0, n1] * (a[:, m1, n0] * a[:, m2, n2] - a[:, m1, n2] * a[:, m2, n0])
        + a[:, m0, n2] * (a[:, m1, n0] * a[:, m2, n1] - a[:, m1, n1] * a[:, m2, n0])
    )


def _batch_inverse4(a, m):
    mod = Modulus(m)
    cof = np.empty(a.shape, dtype=object)
    for r in range(4):
        for c in range(4):
            s = -1 if (r + c) % 2 else 1
            cof[:, r, c] = s * _det3(a, r, c)
    dets = sum(a[:, 0, c] * cof[:, 0, c] for c in range(4)) % m
    dinv = np.array([mod.unit_inverse(int(x)) for x in dets], dtype=object)
    adj = cof.transpose(0, 2, 1)
    return ((adj * dinv[:, None, None]) % m).astype(np.int64)
