"""Exact linear algebra and finitely generated modules over Z/m.

Matrices are numpy integer arrays acting on column vectors, entries reduced
into ``[0, m)``.  A module ``Z/d1 + ... + Z/dr`` (each ``d_i | m``) is carried
by ``(Z/m)^r`` with coordinate ``i`` read modulo ``d_i``; a matrix between two
such modules is a homomorphism when every column ``j`` is killed by ``d_j``
in the target.

Solving goes through the integer Smith normal form of a lift, so one code
path serves fields and non-reduced rings alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import List, Optional, Sequence, Tuple

import numpy as np


class DimensionError(ValueError):
    pass


class UnsupportedModulus(ValueError):
    """Raised by field-only operations on a non-prime modulus."""


# ---------------------------------------------------------------------------
# moduli


@lru_cache(maxsize=None)
def factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@dataclass(frozen=True)
class Modulus:
    m: int

    def __post_init__(self):
        if int(self.m) < 2:
            raise ValueError(f"modulus must be >= 2, got {self.m}")
        object.__setattr__(self, "m", int(self.m))

    @property
    def factorization(self) -> Tuple[Tuple[int, int], ...]:
        return factorize(self.m)

    @property
    def is_prime(self) -> bool:
        f = self.factorization
        return len(f) == 1 and f[0][1] == 1

    def __int__(self):
        return self.m


def is_prime(m: int) -> bool:
    return m >= 2 and Modulus(m).is_prime


def require_prime(m: int, what: str = "operation"):
    if not is_prime(m):
        raise UnsupportedModulus(f"{what} is only supported over a field (prime m), got m={m}")


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class FgModule:
    """Direct sum of cyclic modules ``Z/d`` for the listed invariant factors."""

    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in factors):
            raise ValueError(f"invariant factors must be >= 2: {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def free(cls, rank: int, m: int) -> "FgModule":
        return cls((m,) * rank)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def __len__(self):
        return self.rank

    def order(self) -> int:
        return prod(self.invariant_factors)

    def is_free(self, m: int) -> bool:
        return all(d == m for d in self.invariant_factors)

    def check_divides(self, m: int):
        for d in self.invariant_factors:
            if m % d:
                raise ValueError(f"invariant factor {d} does not divide m={m}")

    def __add__(self, other: "FgModule") -> "FgModule":
        return FgModule(self.invariant_factors + other.invariant_factors)

    def __mul__(self, n: int) -> "FgModule":
        return FgModule(self.invariant_factors * n)

    __rmul__ = __mul__

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


ZERO_MODULE = FgModule()


def module_to_json(M: FgModule) -> dict:
    return {"invariant_factors": list(M.invariant_factors)}


def module_from_json(obj) -> FgModule:
    return FgModule(tuple(obj["invariant_factors"]))


# ---------------------------------------------------------------------------
# matrices


def as_matrix(entries, m: int, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    A = np.array(entries, dtype=np.int64)
    if shape is not None:
        A = A.reshape(shape)
    if A.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {A.shape}")
    return A % m


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    return (A @ B) % m


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def reduce_rows(A: np.ndarray, target: FgModule) -> np.ndarray:
    """Reduce row ``i`` modulo the i-th invariant factor of the target."""
    if A.shape[0] != target.rank:
        raise DimensionError(f"{A.shape[0]} rows for a rank {target.rank} target")
    if A.shape[0] == 0:
        return A.copy()
    d = np.array(target.invariant_factors, dtype=np.int64).reshape(-1, 1)
    return A % d


def maps_equal(A: np.ndarray, B: np.ndarray, target: FgModule) -> bool:
    if A.shape != B.shape:
        return False
    return bool(np.array_equal(reduce_rows(A, target), reduce_rows(B, target)))


def is_homomorphism(A: np.ndarray, source: FgModule, target: FgModule) -> bool:
    """Column j must be annihilated by the j-th source factor inside the target."""
    if A.shape != (target.rank, source.rank):
        return False
    if A.size == 0:
        return True
    scaled = A * np.array(source.invariant_factors, dtype=np.int64).reshape(1, -1)
    return not reduce_rows(scaled, target).any()


def matrix_to_json(A: np.ndarray) -> dict:
    return {"rows": int(A.shape[0]), "cols": int(A.shape[1]),
            "entries": [[int(x) for x in row] for row in A]}


def matrix_from_json(obj, m: int) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise DimensionError(f"matrix entries do not match declared shape {rows}x{cols}")
    if rows == 0 or cols == 0:
        return zeros(rows, cols)
    return as_matrix(entries, m)


# ---------------------------------------------------------------------------
# Smith normal form over the integers


def smith_decompose(A) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """Return ``(U, D, V)`` of Python-int matrices with ``U @ A @ V == D``.

    ``D`` is diagonal with ``d1 | d2 | ...`` and nonnegative diagonal, ``U``
    and ``V`` are unimodular.
    """
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        raise DimensionError("smith_decompose expects a 2-d matrix")
    rows, cols = A.shape
    D = [[int(x) for x in row] for row in A.tolist()]
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        if k:
            D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        if k:
            for row in D:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            p = D[t][t]
            for i in range(t + 1, rows):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if done:
                # divisibility against the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if D[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # move the smallest nonzero of row/column t onto the pivot
            best = (t, t)
            for i in range(t, rows):
                if D[i][t] and abs(D[i][t]) < abs(D[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, cols):
                if D[t][j] and abs(D[t][j]) < abs(D[best[0]][best[1]]):
                    best = (t, j)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def _int_matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


class SmithSolver:
    """Solves ``A x = b (mod m)`` repeatedly for a fixed ``A``."""

    def __init__(self, A: np.ndarray, m: int):
        self.m = m
        self.shape = A.shape
        rows, cols = A.shape
        if rows and cols:
            U, D, V = smith_decompose(A % m)
        else:
            U = [[int(i == j) for j in range(rows)] for i in range(rows)]
            V = [[int(i == j) for j in range(cols)] for i in range(cols)]
            D = [[0] * cols for _ in range(rows)]
        self.U = np.array(U, dtype=object).reshape(rows, rows) % m
        self.V = np.array(V, dtype=object).reshape(cols, cols) % m
        self.diag = [D[i][i] if i < cols else 0 for i in range(rows)]

    def solve(self, b) -> Optional[np.ndarray]:
        m = self.m
        rows, cols = self.shape
        b = np.asarray(b, dtype=object).reshape(-1)
        if b.shape[0] != rows:
            raise DimensionError(f"right-hand side of length {b.shape[0]} for {rows} rows")
        c = (self.U.dot(b) % m) if rows else np.zeros(0, dtype=object)
        y = [0] * cols
        for i in range(rows):
            d = self.diag[i] % m
            ci = int(c[i]) % m
            if i >= cols or d == 0:
                if ci:
                    return None
                continue
            g = gcd(d, m)
            if ci % g:
                return None
            # d*y = ci (mod m)  ->  (d/g) y = ci/g (mod m/g)
            mg = m // g
            y[i] = (ci // g) * pow(d // g, -1, mg) % mg if mg > 1 else 0
        x = self.V.dot(np.array(y, dtype=object)) % m if cols else np.zeros(0, dtype=object)
        return np.array(x, dtype=np.int64).reshape(cols)

    def kernel_generators(self) -> np.ndarray:
        """Columns generating ``{x : A x = 0 (mod m)}`` as a Z/m-module."""
        m = self.m
        rows, cols = self.shape
        gens = []
        for i in range(cols):
            d = self.diag[i] % m if i < rows else 0
            step = m // gcd(d, m) if d else 1
            if step % m == 0:
                continue
            gens.append(np.array([int(v) * step % m for v in self.V[:, i]], dtype=np.int64))
        if not gens:
            return zeros(cols, 0)
        return np.stack(gens, axis=1)

    def count_solutions(self) -> int:
        """Number of ``x in (Z/m)^cols`` with ``A x = 0``."""
        m = self.m
        rows, cols = self.shape
        total = 1
        for i in range(cols):
            d = self.diag[i] % m if i < rows else 0
            total *= gcd(d, m) if d else m
        return total


def solve_linear(A: np.ndarray, b, m: int) -> Optional[np.ndarray]:
    """Some ``x`` with ``A x == b (mod m)``, or ``None`` when unsolvable."""
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise DimensionError("A must be 2-d")
    return SmithSolver(A % m, m).solve(np.asarray(b, dtype=np.int64) % m)


def kernel_generators(A: np.ndarray, m: int) -> np.ndarray:
    return SmithSolver(np.asarray(A, dtype=np.int64) % m, m).kernel_generators()


def _hom_constraints(f: np.ndarray, source: FgModule, target: FgModule, m: int):
    """Linear system over Z/m for the entries of g: target -> source with f g = id.

    Unknown ``g[i, j]`` sits at index ``i * t + j``.  Congruences modulo a
    divisor ``e`` of ``m`` are scaled by ``m / e`` into congruences mod m.
    """
    s, t = source.rank, target.rank
    n = s * t
    eqs, rhs = [], []
    # (f g)[i, j] == delta_ij modulo target factor e_i
    for i in range(t):
        scale = m // target.invariant_factors[i]
        for j in range(t):
            row = np.zeros(n, dtype=np.int64)
            for k in range(s):
                row[k * t + j] = f[i, k] * scale
            eqs.append(row % m)
            rhs.append(scale * int(i == j) % m)
    # g must be a homomorphism: e_j * g[k, j] == 0 modulo source factor d_k
    for k in range(s):
        scale = m // source.invariant_factors[k]
        for j in range(t):
            e = target.invariant_factors[j]
            if (e * scale) % m == 0:
                continue
            row = np.zeros(n, dtype=np.int64)
            row[k * t + j] = e * scale % m
            eqs.append(row)
            rhs.append(0)
    A = np.stack(eqs) if eqs else zeros(0, n)
    return A, np.array(rhs, dtype=np.int64)


def right_inverse(f: np.ndarray, m: int, source: Optional[FgModule] = None,
                  target: Optional[FgModule] = None) -> Optional[np.ndarray]:
    """A homomorphism ``g`` with ``f g = id`` on the target, or ``None``.

    ``f`` maps ``source -> target``; both default to free modules.  Existence
    of ``g`` is exactly the statement that ``f`` is a split epimorphism.
    """
    f = np.asarray(f, dtype=np.int64) % m
    if f.ndim != 2:
        raise DimensionError("f must be 2-d")
    t, s = f.shape
    source = FgModule.free(s, m) if source is None else source
    target = FgModule.free(t, m) if target is None else target
    if source.rank != s or target.rank != t:
        raise DimensionError(f"matrix shape {f.shape} does not fit {source} -> {target}")
    if t == 0:
        return zeros(s, 0)
    if s == 0:
        return None
    if source.is_free(m) and target.is_free(m):
        solver = SmithSolver(f, m)
        cols = []
        for j in range(t):
            x = solver.solve(identity(t)[:, j])
            if x is None:
                return None
            cols.append(x)
        return np.stack(cols, axis=1)
    A, b = _hom_constraints(f, source, target, m)
    x = solve_linear(A, b, m)
    if x is None:
        return None
    return reduce_rows(x.reshape(s, t), source)


# ---------------------------------------------------------------------------
# field-case helpers (prime m)


def rank_mod_p(A: np.ndarray, p: int) -> int:
    return len(_pivot_columns(np.asarray(A, dtype=np.int64) % p, p)[1])


def _pivot_columns(A: np.ndarray, p: int):
    R = A.copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        others = np.nonzero(R[:, c])[0]
        for i in others:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rref_mod_p(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form and pivot columns over F_p."""
    return _pivot_columns(np.asarray(A, dtype=np.int64) % p, p)


def nullspace_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``ker A`` over F_p, one basis vector per column."""
    A = np.asarray(A, dtype=np.int64) % p
    cols = A.shape[1]
    R, pivots = _pivot_columns(A, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(cols, len(free))
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = (-R[r, fc]) % p
    return basis


def inverse_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionError("inverse of a non-square matrix")
    R, pivots = _pivot_columns(np.concatenate([A % p, identity(n)], axis=1), p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return R[:, n:]


def complement_projection(B: np.ndarray, p: int) -> np.ndarray:
    """A matrix ``P`` (rank(B) x n) with ``P @ B == I`` over F_p.

    ``B`` is n x s with linearly independent columns; ``P`` is a retraction
    onto their span expressed in that basis.
    """
    n, s = B.shape
    if s == 0:
        return zeros(0, n)
    # extend B's columns to a basis of F_p^n, invert, keep the first s rows
    cols = [B[:, j] % p for j in range(s)]
    current = np.stack(cols, axis=1)
    for i in range(n):
        e = identity(n)[:, i]
        trial = np.concatenate([current, e.reshape(-1, 1)], axis=1)
        if rank_mod_p(trial, p) > current.shape[1]:
            current = trial
        if current.shape[1] == n:
            break
    return inverse_mod_p(current, p)[:s, :]


# ---------------------------------------------------------------------------
# injectivity of modules


def p_adic_valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def is_injective_module(M: FgModule, m: int) -> bool:
    """Injectivity over the self-injective ring Z/m.

    ``M`` is injective iff for each prime power ``p^k`` exactly dividing
    ``m`` its p-primary part is free over ``Z/p^k``.
    """
    M.check_divides(m)
    for p, k in factorize(m):
        for d in M.invariant_factors:
            v = p_adic_valuation(d, p)
            if v not in (0, k):
                return False
    return True


def indecomposable_injective_modules(m: int) -> List[FgModule]:
    return [FgModule((p ** k,)) for p, k in factorize(m)]
