"""Zeta/Moebius transforms on the subset lattice and fast disjoint-union
(subset) convolution, scalar and batched.

The fast route is the classic ranked transform: tabulate the zeta
transform separately per subset cardinality, multiply rank polynomials
pointwise, invert.  Integer flavor runs on Python ints and is exact at
any rank coefficient size; real flavor runs on float64 numpy arrays.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import INT, REAL, CubeFunction

# Brute-force corner enumeration walks n^m labeled coordinate assignments.
BRUTE_TERM_CAP = 10**8


def _popcounts(m: int) -> list[int]:
    return [s.bit_count() for s in range(1 << m)]


def _zeta_inplace(vals: list, m: int):
    """Sum-over-subsets DP: vals[S] <- sum_{T subset of S} vals[T]."""
    for b in range(m):
        bit = 1 << b
        for s in range(1 << m):
            if s & bit:
                vals[s] += vals[s ^ bit]


def _moebius_inplace(vals: list, m: int):
    """Exact inverse of the zeta DP (same loop, subtraction)."""
    for b in range(m):
        bit = 1 << b
        for s in range(1 << m):
            if s & bit:
                vals[s] -= vals[s ^ bit]


def zeta(f: CubeFunction) -> CubeFunction:
    """g(S) = sum_{T subset of S} f(T)."""
    vals = list(f.values)
    _zeta_inplace(vals, f.m)
    return CubeFunction(f.m, vals, f.flavor)


def moebius(g: CubeFunction) -> CubeFunction:
    """Inverse of zeta; moebius(zeta(f)) == f identically."""
    vals = list(g.values)
    _moebius_inplace(vals, g.m)
    return CubeFunction(g.m, vals, g.flavor)


@dataclass(frozen=True)
class RankedTable:
    """Per-cardinality zeta tables: coeffs[k][S] = sum of f over subsets
    of S with exactly k elements."""

    m: int
    coeffs: tuple  # (m+1) rows, each a tuple of 2^m scalars

    def __post_init__(self):
        if len(self.coeffs) != self.m + 1:
            raise ValueError("need exactly m+1 rank rows")
        object.__setattr__(self, "coeffs", tuple(tuple(row) for row in self.coeffs))


def _rank_rows(values, m: int) -> list[list]:
    """Split by cardinality and zeta-transform each rank row."""
    pc = _popcounts(m)
    zero = values[0] * 0  # preserves int/float flavor
    rows = [[zero] * (1 << m) for _ in range(m + 1)]
    for s, v in enumerate(values):
        rows[pc[s]][s] = v
    for row in rows:
        _zeta_inplace(row, m)
    return rows


def ranked_zeta(f: CubeFunction) -> RankedTable:
    return RankedTable(f.m, _rank_rows(f.values, f.m))


def _rank_mult(a: list[list], b: list[list], m: int) -> list[list]:
    """Pointwise product of rank polynomials, truncated at degree m.

    Summation order over i is fixed (ascending), so integer results are
    reproducible bitwise under any outer parallel schedule.
    """
    size = 1 << m
    zero = a[0][0] * 0
    out = [[zero] * size for _ in range(m + 1)]
    for k in range(m + 1):
        row = out[k]
        for i in range(k + 1):
            ai, bj = a[i], b[k - i]
            for s in range(size):
                row[s] += ai[s] * bj[s]
    return out


def _check_compatible(f: CubeFunction, g: CubeFunction):
    if f.m != g.m:
        raise ValueError(f"ground-set size mismatch: {f.m} != {g.m}")
    if f.flavor != g.flavor:
        raise ValueError(f"flavor mismatch: {f.flavor!r} vs {g.flavor!r}")


def subset_convolve(f: CubeFunction, g: CubeFunction) -> CubeFunction:
    """h(S) = sum over disjoint A, B with A | B = S of f(A) g(B).

    O(2^m m^2) via ranked zeta, rank-wise multiplication, ranked Moebius;
    exact in integer flavor.
    """
    _check_compatible(f, g)
    m = f.m
    if f.flavor == REAL:
        arr = _batch_subset_convolve(
            np.asarray(f.values, dtype=np.float64)[None, :],
            np.asarray(g.values, dtype=np.float64)[None, :],
            m,
        )[0]
        return CubeFunction(m, arr.tolist(), REAL)
    rows = _rank_mult(_rank_rows(f.values, m), _rank_rows(g.values, m), m)
    for row in rows:
        _moebius_inplace(row, m)
    pc = _popcounts(m)
    return CubeFunction(m, [rows[pc[s]][s] for s in range(1 << m)], INT)


def corner_convolution(fs: list[CubeFunction], method: str = "fast"):
    """n-fold convolution of fs evaluated at the all-ones corner:
    the sum of prod_j f_j(x_j) over ordered partitions x_1+..+x_n = 1^m.
    """
    if not fs:
        raise ValueError("need at least one function")
    m = fs[0].m
    for f in fs[1:]:
        _check_compatible(fs[0], f)
    if method == "brute":
        return _corner_brute(fs)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    if fs[0].flavor == REAL:
        stack = np.asarray([f.values for f in fs], dtype=np.float64)[:, None, :]
        return float(batch_corner_value(stack, m)[0])
    return _corner_fast_int(fs, m)


def _corner_fast_int(fs: list[CubeFunction], m: int) -> int:
    # Nonnegative inputs whose total-mass product fits 62 bits (all
    # counting workloads at this scale) run exactly on int64 arrays;
    # everything else takes the arbitrary-precision fold.
    if all(v >= 0 for f in fs for v in f.values):
        mass_bound = math.prod(sum(f.values) for f in fs)
        if mass_bound < 2**62:
            return _corner_fast_int64(fs, m)
    prod = _rank_rows(fs[0].values, m)
    for f in fs[1:]:
        prod = _rank_mult(prod, _rank_rows(f.values, m), m)
    # corner value = top-rank Moebius coefficient read at the full mask
    top = prod[m]
    pc = _popcounts(m)
    return sum(top[s] if (m - pc[s]) % 2 == 0 else -top[s] for s in range(1 << m))


def _corner_fast_int64(fs: list[CubeFunction], m: int) -> int:
    """int64 variant of the batched corner fold.

    Exact because every rank coefficient of a product of nonnegative
    functions is bounded by the product of their total masses; only the
    final alternating mask sum can exceed 64 bits, so it is accumulated
    in Python ints.
    """
    tables: dict[int, np.ndarray] = {}
    prod = None
    for f in fs:
        table = tables.get(id(f))
        if table is None:
            arr = np.asarray(f.values, dtype=np.int64)
            table = _batch_ranked_zeta(arr, m, dtype=np.int64)
            tables[id(f)] = table
        prod = table if prod is None else _batch_rank_mult(prod, table, m, dtype=np.int64)
    pc = np.array(_popcounts(m))
    top = prod[m]
    pos = int(top[(m - pc) % 2 == 0].astype(object).sum())
    neg = int(top[(m - pc) % 2 == 1].astype(object).sum())
    return pos - neg


def _corner_brute(fs: list[CubeFunction]):
    """Enumerate assignments of each coordinate to one of the n labeled
    blocks; n^m terms, guarded."""
    n, m = len(fs), fs[0].m
    if n**m > BRUTE_TERM_CAP:
        raise ValueError(f"brute-force corner needs n^m = {n**m} > {BRUTE_TERM_CAP} terms")
    total = fs[0].values[0] * 0
    for assign in itertools.product(range(n), repeat=m):
        masks = [0] * n
        for coord, j in enumerate(assign):
            masks[j] |= 1 << coord
        total += math.prod(f.values[mask] for f, mask in zip(fs, masks))
    return total


# ---------------------------------------------------------------------------
# Batched float64 path (trial axes lead, mask axis last).


def _batch_zeta_inplace(a: np.ndarray, m: int):
    for b in range(m):
        v = a.reshape(a.shape[:-1] + (1 << (m - 1 - b), 2, 1 << b))
        v[..., 1, :] += v[..., 0, :]


def _batch_ranked_zeta(a: np.ndarray, m: int, dtype=np.float64) -> np.ndarray:
    """(..., 2^m) -> (..., m+1, 2^m) per-rank zeta tables."""
    size = 1 << m
    pc = np.array(_popcounts(m))
    out = np.zeros(a.shape[:-1] + (m + 1, size), dtype=dtype)
    out[..., pc, np.arange(size)] = a
    _batch_zeta_inplace(out, m)
    return out


def _batch_rank_mult(a: np.ndarray, b: np.ndarray, m: int, dtype=np.float64) -> np.ndarray:
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=dtype)
    for k in range(m + 1):
        for i in range(k + 1):
            out[..., k, :] += a[..., i, :] * b[..., k - i, :]
    return out


def _batch_subset_convolve(f: np.ndarray, g: np.ndarray, m: int) -> np.ndarray:
    prod = _batch_rank_mult(_batch_ranked_zeta(f, m), _batch_ranked_zeta(g, m), m)
    for b in range(m):
        v = prod.reshape(prod.shape[:-1] + (1 << (m - 1 - b), 2, 1 << b))
        v[..., 1, :] -= v[..., 0, :]
    pc = np.array(_popcounts(m))
    size = 1 << m
    return prod[..., pc, np.arange(size)]


def batch_corner_value(fs: np.ndarray, m: int) -> np.ndarray:
    """Corner convolution of a batch of function tuples.

    fs has shape (n, ..., 2^m); returns shape (...).  Folds rank
    polynomials in the zeta domain and inverts only the top rank at the
    full mask, so no intermediate Moebius transforms are needed.
    """
    prod = _batch_ranked_zeta(fs[0], m)
    for j in range(1, fs.shape[0]):
        prod = _batch_rank_mult(prod, _batch_ranked_zeta(fs[j], m), m)
    pc = np.array(_popcounts(m))
    signs = np.where((m - pc) % 2 == 0, 1.0, -1.0)
    return prod[..., m, :] @ signs
