"""Exact La(n, forbidden, #Q) computation by branch-and-bound subfamily search."""
from __future__ import annotations

import hashlib
import itertools
import json
import os
import time
from dataclasses import dataclass, field

from .embedding import count_copies, embedding_using_member, find_any_embedding, is_free
from .lattice import SetFamily, level_family
from .formulas import chain_count_in_levels
from .posets import Poset

DEFAULT_WITNESS_CAP = 16
CACHE_ENV_VAR = "TURAN_CACHE"
DEFAULT_CACHE_FILE = "turan-cache.jsonl"


@dataclass
class SearchReport:
    optimum: int
    witnesses: list            # list of mask tuples, lexicographically least first
    nodes_explored: int
    complete: bool
    params: dict = field(default_factory=dict)

    def witness_families(self, n: int):
        return [SetFamily(n, w) for w in self.witnesses]

    def to_json(self) -> dict:
        return {
            "optimum": self.optimum,
            "witnesses": [list(w) for w in self.witnesses],
            "nodes_explored": self.nodes_explored,
            "complete": self.complete,
            "params": self.params,
        }


def _chain_count_masks(masks, k: int) -> int:
    """k-chain count over an ascending mask list (ascending order nests upward)."""
    m = len(masks)
    if k == 1:
        return m
    if k > m:
        return 0
    below = [[] for _ in range(m)]
    for j in range(m):
        b = masks[j]
        for i in range(j):
            if masks[i] & b == masks[i]:
                below[j].append(i)
    dp = [1] * m
    for _ in range(k - 1):
        dp = [sum(dp[i] for i in below[j]) for j in range(m)]
    return sum(dp)


def _copies_in_masks(n, masks, q: Poset) -> int:
    if q.is_chain():
        return _chain_count_masks(sorted(masks), q.size)
    if not masks:
        return 0
    return count_copies(SetFamily(n, masks), q)


def la_exact(
    n: int,
    forbidden,
    q: Poset,
    budget: int = None,
    witness_cap: int = DEFAULT_WITNESS_CAP,
    no_bound: bool = False,
) -> SearchReport:
    """Exact maximum Q-copy count over forbidden-free subfamilies of 2^[n].

    Depth-first inclusion/exclusion over lattice elements, middle levels first.
    Branches are cut when the current family already embeds a forbidden poset,
    or when the admissible bound (copies in current plus remaining) cannot beat
    the best value found. n <= 4 always completes; n = 5 requires a node
    budget and reports complete=False if it runs out.
    """
    forbidden = list(forbidden)
    if n > 5 or (n == 5 and budget is None):
        raise ValueError("exact search supports n <= 4, or n = 5 with a budget")
    order = sorted(range(1 << n), key=lambda m: (abs(m.bit_count() - n / 2), m))
    state = {"nodes": 0, "complete": True, "best": -1, "witnesses": []}

    def record(masks):
        copies = _copies_in_masks(n, masks, q)
        if copies > state["best"]:
            state["best"] = copies
            state["witnesses"] = [tuple(sorted(masks))]
        elif copies == state["best"]:
            state["witnesses"].append(tuple(sorted(masks)))

    def rec(pos, chosen):
        state["nodes"] += 1
        if budget is not None and state["nodes"] > budget:
            state["complete"] = False
            return
        if pos == len(order):
            record(chosen)
            return
        if not no_bound and state["best"] >= 0:
            bound = _copies_in_masks(n, chosen + order[pos:], q)
            if bound < state["best"]:
                return
            if bound == state["best"] and len(state["witnesses"]) >= witness_cap:
                return
        x = order[pos]
        candidate = sorted(chosen + [x])
        fam = SetFamily(n, candidate)
        ok = True
        idx = candidate.index(x)
        for p in forbidden:
            if embedding_using_member(fam, p, idx) is not None:
                ok = False
                break
        if ok:
            rec(pos + 1, chosen + [x])
        rec(pos + 1, chosen)

    rec(0, [])
    witnesses = sorted(set(state["witnesses"]))[:witness_cap]
    return SearchReport(
        optimum=state["best"],
        witnesses=witnesses,
        nodes_explored=state["nodes"],
        complete=state["complete"],
        params={
            "n": n,
            "forbidden": [p.canonical_key() for p in forbidden],
            "q": q.canonical_key(),
            "budget": budget,
            "witness_cap": witness_cap,
        },
    )


MAX_LEVEL_SEARCH_N = 16
MAX_LEVEL_GENERIC_N = 10


def la_levels(n: int, forbidden, q: Poset, witness_cap: int = DEFAULT_WITNESS_CAP) -> SearchReport:
    """Best Q-copy count over unions of full levels that avoid the forbidden posets."""
    forbidden = list(forbidden)
    if n > MAX_LEVEL_SEARCH_N:
        raise ValueError(f"level search supports n <= {MAX_LEVEL_SEARCH_N}")
    chains_only = all(p.is_chain() for p in forbidden)
    if not chains_only and n > MAX_LEVEL_GENERIC_N:
        raise ValueError(
            f"level search with non-chain forbidden posets supports n <= {MAX_LEVEL_GENERIC_N}"
        )
    if not q.is_chain() and n > 8:
        raise ValueError("level search with a non-chain Q supports n <= 8")
    min_chain = min((p.size for p in forbidden if p.is_chain()), default=None)
    best = -1
    best_levels = []
    nodes = 0
    for r in range(n + 2):
        for tup in itertools.combinations(range(n + 1), r):
            nodes += 1
            if min_chain is not None and len(tup) >= min_chain:
                continue
            if not chains_only:
                fam = level_family(n, tup)
                if not is_free(fam, [p for p in forbidden if not p.is_chain()]):
                    continue
            if q.is_chain():
                copies = chain_count_in_levels(n, q.size, tup)
            else:
                copies = count_copies(level_family(n, tup), q)
            if copies > best:
                best = copies
                best_levels = [tup]
            elif copies == best:
                best_levels.append(tup)
    witnesses = sorted(tuple(level_family(n, t).members) for t in best_levels)
    return SearchReport(
        optimum=best,
        witnesses=witnesses[:witness_cap],
        nodes_explored=nodes,
        complete=True,
        params={
            "n": n,
            "forbidden": [p.canonical_key() for p in forbidden],
            "q": q.canonical_key(),
            "levels": [list(t) for t in sorted(best_levels)[:witness_cap]],
        },
    )


@dataclass(frozen=True)
class WitnessCheck:
    free: bool
    copies: int


def verify_witness(family: SetFamily, forbidden, q: Poset) -> WitnessCheck:
    """Certificate check: freeness plus the Q-copy count of the family."""
    return WitnessCheck(is_free(family, forbidden), count_copies(family, q))


def _cache_key(n: int, forbidden, q: Poset):
    forbidden_key = hashlib.sha256(
        "|".join(sorted(p.canonical_key() for p in forbidden)).encode()
    ).hexdigest()
    q_key = hashlib.sha256(q.canonical_key().encode()).hexdigest()
    return forbidden_key, q_key


def cache_path() -> str:
    return os.environ.get(CACHE_ENV_VAR, DEFAULT_CACHE_FILE)


def _cache_lookup(path, n, forbidden_key, q_key):
    if not os.path.exists(path):
        return None
    entry = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                continue
            if (
                rec.get("n") == n
                and rec.get("forbidden_key") == forbidden_key
                and rec.get("q_key") == q_key
            ):
                entry = rec
    return entry


def cached_la_exact(n, forbidden, q, budget=None, use_cache=True, path=None) -> SearchReport:
    """la_exact with an append-only JSONL result cache.

    A cached entry is reused when it is complete, or when it was computed with
    at least the requested budget; otherwise the search is rerun.
    """
    forbidden = list(forbidden)
    path = path or cache_path()
    forbidden_key, q_key = _cache_key(n, forbidden, q)
    if use_cache:
        rec = _cache_lookup(path, n, forbidden_key, q_key)
        if rec is not None:
            prev_budget = rec.get("budget") or 0
            stale = not rec["complete"] and (budget is None or budget > prev_budget)
            if not stale:
                return SearchReport(
                    optimum=rec["optimum"],
                    witnesses=[tuple(w) for w in rec["witnesses"]],
                    nodes_explored=rec["nodes_explored"],
                    complete=rec["complete"],
                    params={
                        "n": n,
                        "forbidden": [p.canonical_key() for p in forbidden],
                        "q": q.canonical_key(),
                        "budget": budget,
                        "witness_cap": DEFAULT_WITNESS_CAP,
                    },
                )
    report = la_exact(n, forbidden, q, budget=budget)
    if use_cache:
        rec = {
            "n": n,
            "forbidden_key": forbidden_key,
            "q_key": q_key,
            "optimum": report.optimum,
            "complete": report.complete,
            "witnesses": [list(w) for w in report.witnesses],
            "nodes_explored": report.nodes_explored,
            "budget": budget,
            "timestamp": time.time(),
        }
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    return report
