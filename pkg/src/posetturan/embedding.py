"""Weak-subposet embedding: freeness decisions and copy counting."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .lattice import SetFamily, count_k_chains
from .posets import Poset


@dataclass(frozen=True)
class EmbeddingWitness:
    """Injective order-preserving assignment from poset elements to family masks."""

    poset: Poset
    family: SetFamily
    assignment: tuple  # assignment[e]: mask chosen for poset element e

    def check(self) -> bool:
        masks = self.assignment
        if len(set(masks)) != len(masks):
            return False
        if any(m not in self.family for m in masks):
            return False
        for a, b in self.poset.relations:
            if masks[a] == masks[b] or masks[a] & masks[b] != masks[a]:
                return False
        return True


@lru_cache(maxsize=256)
def _element_order(poset: Poset):
    """Assignment order: decreasing (in + out) degree in the closure, ties by index."""
    deg = [0] * poset.size
    for a, b in poset.relations:
        deg[a] += 1
        deg[b] += 1
    return tuple(sorted(range(poset.size), key=lambda e: (-deg[e], e)))


def _search(family: SetFamily, poset: Poset, forced=None):
    m = len(family)
    if poset.size > m:
        return None
    order = _element_order(poset)
    above, below = family.above, family.below
    all_indices = frozenset(range(m))
    image = {}
    used = set()

    def candidates(e):
        cand = None
        for f, idx in image.items():
            if poset.less(f, e):
                cand = above[idx] if cand is None else cand & above[idx]
            elif poset.less(e, f):
                cand = below[idx] if cand is None else cand & below[idx]
            if cand is not None and not cand:
                return cand
        return all_indices if cand is None else cand

    def extend(pos):
        if pos == len(order):
            return True
        e = order[pos]
        if forced is not None and e in forced:
            pool = [forced[e]] if forced[e] in candidates(e) else []
        else:
            pool = sorted(candidates(e))
        for idx in pool:
            if idx in used:
                continue
            image[e] = idx
            used.add(idx)
            if extend(pos + 1):
                return True
            used.remove(idx)
            del image[e]
        return False

    if forced:
        if len(set(forced.values())) != len(forced):
            return None
    if extend(0):
        masks = tuple(family.members[image[e]] for e in range(poset.size))
        return EmbeddingWitness(poset, family, masks)
    return None


def find_embedding(family: SetFamily, poset: Poset):
    """A weak-subposet embedding witness, or None.

    Backtracking over poset elements in decreasing-constraint order; candidate
    members are pruned by comparability with already-assigned images. The
    returned witness is the first found under ascending candidate order, so
    output is deterministic.
    """
    return _search(family, poset)


def embedding_using_member(family: SetFamily, poset: Poset, member_index: int):
    """A witness whose image includes the given family member, or None."""
    for e in range(poset.size):
        w = _search(family, poset, forced={e: member_index})
        if w is not None:
            return w
    return None


def find_any_embedding(family: SetFamily, forbidden):
    """First (poset, witness) pair among the forbidden list, or None."""
    for p in forbidden:
        w = find_embedding(family, p)
        if w is not None:
            return p, w
    return None


def is_free(family: SetFamily, forbidden) -> bool:
    """True iff no member of the forbidden list embeds into the family."""
    return find_any_embedding(family, forbidden) is None


# Guard for the brute-force subfamily scan in count_copies.
_MAX_COPY_COMBINATIONS = 2_000_000


def count_copies(family: SetFamily, q: Poset) -> int:
    """Number of |Q|-element subfamilies that host Q using all their members.

    For a chain Q this is exactly the k-chain count. For general Q the count
    is over distinct supports: a subfamily is counted once no matter how many
    embeddings land on it.
    """
    if q.size > len(family):
        return 0
    if q.is_chain():
        return count_k_chains(family, q.size)
    total_combos = 1
    for i in range(q.size):
        total_combos = total_combos * (len(family) - i) // (i + 1)
    if total_combos > _MAX_COPY_COMBINATIONS:
        raise ValueError(
            f"copy counting for non-chain posets needs C({len(family)},{q.size}) "
            "subfamily checks; input too large"
        )
    count = 0
    for combo in itertools.combinations(family.members, q.size):
        sub = SetFamily(family.n, combo)
        if find_embedding(sub, q) is not None:
            count += 1
    return count
