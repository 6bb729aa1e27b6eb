"""Exact counting of n-fold disjoint-union tuples in a set family, the
|X|^(n/p_n) bound check, and layered extremal families."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import SetFamily, exponent, family_to_functions
from .transform import corner_convolution

BRUTE_TUPLE_CAP = 10**8
BOUND_SLACK = 1e-9
EXTREMAL_M_CAP = 24


@dataclass(frozen=True)
class CountReport:
    """Exact tuple count for (X, n) against the ln|X|-scaled bound.

    ratio = ln(count)/ln|X| is None when undefined (|X| <= 1 or count 0).
    """

    n: int
    family_size: int
    count: int
    log_count: float
    bound_log: float
    ratio: float | None
    holds: bool


def count_disjoint_tuples(family: SetFamily, n: int, method: str = "fast") -> int:
    """Number of tuples (A_1,..,A_{n-1},A) in X^n with A the disjoint
    union of the A_j.

    The fast path encodes the family as indicator functions and takes
    their exact integer corner convolution; brute enumerates (n-1)-tuples.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if method == "fast":
        return corner_convolution(family_to_functions(family, n), method="fast")
    if method != "brute":
        raise ValueError(f"unknown method {method!r}")
    size = len(family)
    if size ** (n - 1) > BRUTE_TUPLE_CAP:
        raise ValueError(f"brute-force needs |X|^(n-1) = {size ** (n - 1)} > {BRUTE_TUPLE_CAP} tuples")
    members = family.members
    member_set = set(members)
    count = 0
    for parts in itertools.product(members, repeat=n - 1):
        acc = 0
        for a in parts:
            if acc & a:
                break
            acc |= a
        else:
            if acc in member_set:
                count += 1
    return count


def bound_report(family: SetFamily, n: int, method: str = "fast") -> CountReport:
    """Count tuples and compare ln(count) against (n/p_n) ln|X|."""
    count = count_disjoint_tuples(family, n, method)
    size = len(family)
    bound_log = exponent(n).c * math.log(size) if size >= 1 else 0.0
    log_count = math.log(count) if count >= 1 else float("-inf")
    ratio = log_count / math.log(size) if size >= 2 and count >= 1 else None
    return CountReport(
        n=n,
        family_size=size,
        count=count,
        log_count=log_count,
        bound_log=bound_log,
        ratio=ratio,
        holds=log_count <= bound_log + BOUND_SLACK,
    )


def extremal_family(n: int, t: int) -> SetFamily:
    """Two-layer family over a ground set of size n*t: all subsets of
    size t plus all subsets of size (n-1)*t.

    Every counted tuple is a size-(n-1)t set split into n-1 size-t
    blocks, which is the configuration where the bound is tightest at
    desk scale.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    m = n * t
    if m > EXTREMAL_M_CAP:
        raise ValueError(f"ground size n*t = {m} exceeds cap {EXTREMAL_M_CAP}")
    masks = set()
    for size in {t, (n - 1) * t}:
        for combo in itertools.combinations(range(m), size):
            masks.add(sum(1 << i for i in combo))
    return SetFamily.from_masks(m, masks)
