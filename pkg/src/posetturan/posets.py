"""Finite strict partial orders: construction, duality, isomorphism, catalog."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

MAX_POSET_SIZE = 8


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class Poset:
    """A finite strict partial order on elements 0..size-1.

    ``relations`` is the full transitive closure (irreflexive, antisymmetric).
    Use :func:`poset_from_relations` to build one from arbitrary generators.
    """

    size: int
    relations: frozenset = field(default_factory=frozenset)
    labels: tuple = None

    def less(self, a: int, b: int) -> bool:
        return (a, b) in self.relations

    def comparable(self, a: int, b: int) -> bool:
        return (a, b) in self.relations or (b, a) in self.relations

    def up_set(self, a: int):
        return frozenset(b for b in range(self.size) if self.less(a, b))

    def down_set(self, a: int):
        return frozenset(b for b in range(self.size) if self.less(b, a))

    def height(self) -> int:
        """Number of elements in a longest chain."""
        memo = {}

        def climb(a):
            if a not in memo:
                ups = [b for b in range(self.size) if self.less(a, b)]
                memo[a] = 1 + max((climb(b) for b in ups), default=0)
            return memo[a]

        return max((climb(a) for a in range(self.size)), default=0)

    def is_chain(self) -> bool:
        return len(self.relations) == self.size * (self.size - 1) // 2

    def hasse_edges(self) -> frozenset:
        """Cover pairs (a, b): a < b with nothing strictly between."""
        covers = set()
        for a, b in self.relations:
            if not any(self.less(a, c) and self.less(c, b) for c in range(self.size)):
                covers.add((a, b))
        return frozenset(covers)

    def element_signature(self, a: int):
        return (len(self.down_set(a)), len(self.up_set(a)))

    def sorted_signature(self):
        return tuple(sorted(self.element_signature(a) for a in range(self.size)))

    def canonical_relations(self):
        return _canonical_relations(self.size, tuple(sorted(self.relations)))

    def canonical_key(self) -> str:
        rels = ";".join(f"{a}<{b}" for a, b in self.canonical_relations())
        return f"poset[{self.size}]{{{rels}}}"


@lru_cache(maxsize=4096)
def _canonical_relations(size, relations):
    # Brute-force minimum relabeling; poset sizes are capped at 8.
    rels = list(relations)
    best = None
    for perm in itertools.permutations(range(size)):
        img = tuple(sorted((perm[a], perm[b]) for a, b in rels))
        if best is None or img < best:
            best = img
    return best if best is not None else ()


def poset_from_relations(m: int, relations, labels=None) -> Poset:
    """Transitive closure of the given (lo, hi) pairs; rejects cycles."""
    if m < 0 or m > MAX_POSET_SIZE:
        raise PosetError(f"poset size {m} outside supported range 0..{MAX_POSET_SIZE}")
    less = [[False] * m for _ in range(m)]
    for a, b in relations:
        if not (0 <= a < m and 0 <= b < m):
            raise PosetError(f"relation ({a},{b}) out of range for {m} elements")
        less[a][b] = True
    for k in range(m):
        for i in range(m):
            if less[i][k]:
                row_k = less[k]
                row_i = less[i]
                for j in range(m):
                    if row_k[j]:
                        row_i[j] = True
    for i in range(m):
        if less[i][i]:
            raise PosetError("not a partial order: cycle detected")
    closure = frozenset(
        (i, j) for i in range(m) for j in range(m) if less[i][j]
    )
    return Poset(m, closure, tuple(labels) if labels else None)


def dual_poset(p: Poset) -> Poset:
    return Poset(p.size, frozenset((b, a) for a, b in p.relations), p.labels)


def poset_isomorphic(p: Poset, q: Poset) -> bool:
    """Order-isomorphism test by backtracking with degree/height invariants."""
    if p.size != q.size or len(p.relations) != len(q.relations):
        return False
    if p.sorted_signature() != q.sorted_signature():
        return False
    sig_q = {}
    for b in range(q.size):
        sig_q.setdefault(q.element_signature(b), []).append(b)

    assignment = [-1] * p.size
    used = [False] * q.size

    def extend(a):
        if a == p.size:
            return True
        for b in sig_q.get(p.element_signature(a), ()):
            if used[b]:
                continue
            ok = True
            for a2 in range(a):
                b2 = assignment[a2]
                if p.less(a, a2) != q.less(b, b2) or p.less(a2, a) != q.less(b2, b):
                    ok = False
                    break
            if ok:
                assignment[a] = b
                used[b] = True
                if extend(a + 1):
                    return True
                used[b] = False
                assignment[a] = -1
        return False

    return extend(0)


def chain(k: int) -> Poset:
    if k < 1:
        raise PosetError("chain needs at least one element")
    return poset_from_relations(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def kst(s: int, t: int) -> Poset:
    if s < 1 or t < 1:
        raise PosetError("Kst parameters must be positive")
    return poset_from_relations(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def fork(r: int) -> Poset:
    if r < 1:
        raise PosetError("fork parameter must be positive")
    return poset_from_relations(r + 1, [(0, i) for i in range(1, r + 1)])


def crown(ell: int) -> Poset:
    if ell < 2:
        raise PosetError("crown parameter must be at least 2")
    rels = []
    for i in range(ell):
        rels.append((i, ell + i))
        rels.append((i, ell + (i + 1) % ell))
    return poset_from_relations(2 * ell, rels)


def diamond(r: int = 2) -> Poset:
    if r < 1:
        raise PosetError("diamond parameter must be positive")
    rels = [(0, i) for i in range(1, r + 1)] + [(i, r + 1) for i in range(1, r + 1)]
    return poset_from_relations(r + 2, rels)


def n_poset() -> Poset:
    # elements p1, p2, q1, q2 = 0, 1, 2, 3
    return poset_from_relations(4, [(0, 2), (1, 2), (1, 3)], "p1 p2 q1 q2".split())


def w_poset() -> Poset:
    # elements a, b, c, d, e = 0..4 with b < a, b < c, d < c, d < e
    return poset_from_relations(5, [(1, 0), (1, 2), (3, 2), (3, 4)], "a b c d e".split())


def m_poset() -> Poset:
    return dual_poset(w_poset())


def s_poset() -> Poset:
    # elements a, b1, b2, b3, c = 0..4 with b1 < a, b1 < b2 < b3, c < b3
    return poset_from_relations(5, [(1, 0), (1, 2), (2, 3), (4, 3)], "a b1 b2 b3 c".split())


_CATALOG = {
    "chain": (chain, 1),
    "p": (chain, 1),
    "kst": (kst, 2),
    "fork": (fork, 1),
    "crown": (crown, 1),
    "diamond": (lambda *a: diamond(*a) if a else diamond(), (0, 1)),
    "butterfly": (lambda: kst(2, 2), 0),
    "k22": (lambda: kst(2, 2), 0),
    "n": (n_poset, 0),
    "w": (w_poset, 0),
    "m": (m_poset, 0),
    "s": (s_poset, 0),
}


def named_poset(name: str, *params: int) -> Poset:
    """Catalog lookup; names are case-insensitive."""
    key = name.lower()
    if key not in _CATALOG:
        raise PosetError(f"unknown poset name {name!r}")
    func, arity = _CATALOG[key]
    if isinstance(arity, tuple):
        if len(params) not in arity:
            raise PosetError(f"{name} takes {' or '.join(map(str, arity))} parameters")
    elif len(params) != arity:
        raise PosetError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return func(*params)


def path_hasse_family(k: int, height_filter: int = None):
    """All posets on k elements whose undirected Hasse diagram is the k-path.

    Enumerates the up/down orientation of each path edge, closes transitively,
    and dedupes by isomorphism.
    """
    if not 2 <= k <= 8:
        raise PosetError(f"path family supported for 2 <= k <= 8, got {k}")
    path_edges = {(i, i + 1) for i in range(k - 1)}
    found = []
    for bits in range(1 << (k - 1)):
        rels = []
        for i in range(k - 1):
            if bits >> i & 1:
                rels.append((i, i + 1))
            else:
                rels.append((i + 1, i))
        p = poset_from_relations(k, rels)
        hasse = {tuple(sorted(e)) for e in p.hasse_edges()}
        if hasse != path_edges:  # cannot happen for paths; asserted anyway
            raise PosetError("orientation closure collapsed a Hasse edge")
        if not any(poset_isomorphic(p, q) for q in found):
            found.append(p)
    found.sort(key=lambda p: (p.height(), p.canonical_relations()))
    if height_filter is not None:
        found = [p for p in found if p.height() == height_filter]
    return found
