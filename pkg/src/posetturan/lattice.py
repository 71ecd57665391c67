"""Bitmask subsets of [n], set families, and full-chain counting.

Subsets of [n] are little-endian masks: bit i-1 set iff element i is in the
set. Families are stored sorted ascending by mask value, which is also a
linear extension of containment (A is a proper subset of B implies A < B as
integers).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

MAX_SCAN_N = 24      # whole-lattice scans
MAX_CHAIN_N = 8      # full-chain counting
MAX_FORMULA_N = 62   # formula-only paths


class DimensionError(ValueError):
    pass


def _check_n(n: int, cap: int):
    if not 1 <= n <= cap:
        raise DimensionError(f"dimension n={n} outside supported range 1..{cap}")


@dataclass(frozen=True)
class SetFamily:
    """A duplicate-free collection of subsets of [n]."""

    n: int
    members: tuple

    def __init__(self, n: int, members):
        _check_n(n, MAX_FORMULA_N)
        masks = sorted(set(members))
        if masks and not 0 <= masks[0] <= masks[-1] < (1 << n):
            raise ValueError(f"mask out of range for n={n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", tuple(masks))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask):
        return mask in self._member_set

    @cached_property
    def _member_set(self):
        return frozenset(self.members)

    @cached_property
    def above(self):
        """above[i]: frozenset of indices j with members[i] a proper subset of members[j]."""
        ms = self.members
        m = len(ms)
        up = [set() for _ in range(m)]
        for i in range(m):
            a = ms[i]
            for j in range(i + 1, m):
                if a & ms[j] == a:
                    up[i].add(j)
        return tuple(frozenset(s) for s in up)

    @cached_property
    def below(self):
        down = [set() for _ in range(len(self.members))]
        for i, ups in enumerate(self.above):
            for j in ups:
                down[j].add(i)
        return tuple(frozenset(s) for s in down)

    def restrict(self, indices) -> "SetFamily":
        return SetFamily(self.n, [self.members[i] for i in indices])


@dataclass(frozen=True)
class ComparabilityComponents:
    """Partition of a family into connected components of its comparability graph."""

    family: SetFamily
    components: tuple       # tuple of tuples of member indices
    edge_counts: tuple      # containment pairs within each component

    @property
    def total_edges(self):
        return sum(self.edge_counts)


def level_family(n: int, ks) -> SetFamily:
    """All subsets of [n] whose size lies in ks."""
    _check_n(n, MAX_FORMULA_N)
    levels = sorted(set(ks))
    for k in levels:
        if not 0 <= k <= n:
            raise ValueError(f"level index {k} out of range 0..{n}")
    masks = []
    for k in levels:
        for bits in itertools.combinations(range(n), k):
            masks.append(sum(1 << b for b in bits))
    return SetFamily(n, masks)


def full_lattice(n: int) -> SetFamily:
    _check_n(n, MAX_SCAN_N)
    return SetFamily(n, range(1 << n))


def count_k_chains(family: SetFamily, k: int) -> int:
    """Number of k-element subsets of the family that are pairwise nested."""
    if k < 1:
        raise ValueError("chain length must be at least 1")
    m = len(family)
    if k == 1:
        return m
    if k > m:
        return 0
    below = family.below
    # dp[i]: chains of the current length ending at member i
    dp = [1] * m
    for _ in range(k - 1):
        dp = [sum(dp[i] for i in below[j]) for j in range(m)]
    return sum(dp)


def containment_pairs(family: SetFamily):
    """All ordered pairs (A, B) of members with A a proper subset of B."""
    ms = family.members
    pairs = []
    for i, ups in enumerate(family.above):
        for j in ups:
            pairs.append((ms[i], ms[j]))
    pairs.sort()
    return pairs


def convex_hull(family: SetFamily) -> SetFamily:
    """All sets sandwiched (inclusively) between two members."""
    _check_n(family.n, MAX_SCAN_N)
    ms = family.members
    hull = []
    for m in range(1 << family.n):
        if any(f & m == f for f in ms) and any(f & m == m for f in ms):
            hull.append(m)
    return SetFamily(family.n, hull)


def comparability_components(family: SetFamily) -> ComparabilityComponents:
    m = len(family)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, ups in enumerate(family.above):
        for j in ups:
            parent[find(i)] = find(j)
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    comps = sorted(tuple(sorted(g)) for g in groups.values())
    edges = tuple(
        sum(len(family.above[i] & frozenset(comp)) for i in comp) for comp in comps
    )
    return ComparabilityComponents(family, tuple(comps), edges)


def chains_meeting(n: int, family: SetFamily) -> int:
    """Number of the n! full chains containing at least one member of the family.

    Counts the complement (chains avoiding the family) by extending chains one
    element at a time through the lattice.
    """
    if n > MAX_CHAIN_N:
        raise DimensionError(f"n={n} too large for full-chain enumeration (cap {MAX_CHAIN_N})")
    if family.n != n:
        raise ValueError("family dimension mismatch")
    member = family._member_set
    size = 1 << n
    ways = [0] * size
    ways[0] = 0 if 0 in member else 1
    for mask in sorted(range(1, size), key=int.bit_count):
        if mask in member:
            continue
        total = 0
        rest = mask
        while rest:
            bit = rest & -rest
            total += ways[mask ^ bit]
            rest ^= bit
        ways[mask] = total
    return math.factorial(n) - ways[size - 1]


def complement_family(family: SetFamily) -> SetFamily:
    full = (1 << family.n) - 1
    return SetFamily(family.n, [full ^ m for m in family.members])


def interval_family(n: int, lo: int, hi: int) -> SetFamily:
    """The closed interval {F : lo subseteq F subseteq hi} as a family."""
    if lo & hi != lo:
        raise ValueError("interval endpoints not nested")
    free = hi ^ lo
    masks = []
    sub = free
    while True:
        masks.append(lo | sub)
        if sub == 0:
            break
        sub = (sub - 1) & free
    return SetFamily(n, masks)


def format_mask(mask: int) -> str:
    if mask == 0:
        return "{}"
    return " ".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1)
