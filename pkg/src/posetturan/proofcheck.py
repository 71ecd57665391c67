"""Mechanized checks of the counting machinery used in the upper-bound proofs.

Blue/red colorings with critical pairs, the N-free component classification,
the W-or-M selection from zigzag six-sequences, the Erdos-Gallai edge bound
for path-free comparability graphs, and per-component diagnostics for families
avoiding all 5-element path posets.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .embedding import find_any_embedding, find_embedding, is_free
from .lattice import (
    ComparabilityComponents,
    SetFamily,
    chains_meeting,
    comparability_components,
    convex_hull,
    count_k_chains,
    interval_family,
)
from .formulas import katona_nagy, sublattice
from .posets import m_poset, n_poset, path_hasse_family, w_poset

MAX_COLOR_N = 12
MAX_CRITICAL_CHAIN_N = 8


class NotFreeError(ValueError):
    """Raised when an operation's freeness precondition fails; carries the witness."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Coloring:
    """Blue/red labels for all of 2^[n] relative to a family and threshold t.

    A mask is blue iff it is strictly contained in at least t family members.
    Critical pairs are the blue-to-red steps of size one.
    """

    n: int
    family: SetFamily
    threshold: int
    blue: frozenset
    critical_pairs: tuple

    def is_blue(self, mask: int) -> bool:
        return mask in self.blue


def color_family(n: int, family: SetFamily, t: int) -> Coloring:
    if n > MAX_COLOR_N:
        raise ValueError(f"coloring labels all 2^n masks; n <= {MAX_COLOR_N} required")
    if t < 1:
        raise ValueError("threshold must be at least 1")
    members = family.members
    blue = set()
    for mask in range(1 << n):
        above = 0
        for f in members:
            if mask != f and mask & f == mask:
                above += 1
                if above >= t:
                    blue.add(mask)
                    break
    pairs = []
    for g in blue:
        for i in range(n):
            if not g >> i & 1:
                gp = g | (1 << i)
                if gp not in blue:
                    pairs.append((g, gp))
    pairs.sort()
    return Coloring(n, family, t, frozenset(blue), tuple(pairs))


def check_one_critical_pair_per_chain(n: int, coloring: Coloring) -> bool:
    """True iff every full chain contains at most one critical pair.

    Two critical pairs can share a full chain only if all four sets nest, so it
    suffices to test whether any pair's red top fits inside another pair's blue
    bottom. (The n! chains are never materialized; tests cross-check against a
    permutation enumeration at small n.)
    """
    if n > MAX_CRITICAL_CHAIN_N:
        raise ValueError(f"critical-pair chain check requires n <= {MAX_CRITICAL_CHAIN_N}")
    pairs = coloring.critical_pairs
    for _, gp in pairs:
        for g2, _ in pairs:
            if gp != g2 and gp & g2 == gp:
                return False
            if gp == g2:
                return False
    return True


@dataclass(frozen=True)
class ComponentClass:
    """Classification of one comparability component of an N-free family."""

    kind: str        # "triangle" or "star"
    members: tuple   # masks
    center: int = None  # star center mask (None for triangles)


def classify_nfree_components(family: SetFamily):
    """Tag each comparability component of an N-free family as triangle or star."""
    hit = find_any_embedding(family, [n_poset()])
    if hit is not None:
        raise NotFreeError("family is not N-free", hit[1])
    comps = comparability_components(family)
    out = []
    for comp in comps.components:
        sub = family.restrict(comp)
        if count_k_chains(sub, 3) > 0:
            # N-freeness forces a 3-chain component to be exactly a triangle
            assert len(sub) == 3 and count_k_chains(sub, 2) == 3
            out.append(ComponentClass("triangle", sub.members))
        else:
            center = None
            for i in range(len(sub)):
                if len(sub.above[i]) + len(sub.below[i]) == len(sub) - 1:
                    center = sub.members[i]
                    break
            if center is None:  # singleton is a degenerate star
                assert len(sub) == 1
                center = sub.members[0]
            out.append(ComponentClass("star", sub.members, center))
    return out


@dataclass(frozen=True)
class ZigzagWitness:
    which: str       # "W" or "M"
    indices: tuple   # five 0-based positions into the input sequence


def _zigzag_dirs(seq):
    dirs = []
    for a, b in zip(seq, seq[1:]):
        if a == b:
            raise ValueError("sequence elements must be distinct")
        if a & b == a:
            dirs.append(1)
        elif a & b == b:
            dirs.append(-1)
        else:
            raise ValueError("consecutive sets must be comparable")
    return dirs


def _longest_run(dirs):
    """(start, length, direction) of the first longest constant-direction run."""
    best = (0, 1, dirs[0])
    i = 0
    while i < len(dirs):
        j = i
        while j + 1 < len(dirs) and dirs[j + 1] == dirs[i]:
            j += 1
        length = j - i + 2  # elements, not edges
        if length > best[1]:
            best = (i, length, dirs[i])
        i = j + 1
    return best


def zigzag_find_WM(n: int, seq) -> ZigzagWitness:
    """Select five of six alternately-comparable distinct sets forming W or M.

    Implements the case analysis on the longest consecutive chain run, then
    re-verifies the selection with the embedding engine. A 5-chain hosts both
    posets and is reported as W.
    """
    seq = list(seq)
    if len(seq) != 6 or len(set(seq)) != 6:
        raise ValueError("need 6 distinct sets")
    dirs = _zigzag_dirs(seq)
    start, m, direction = _longest_run(dirs)
    if m >= 5:
        witness = ZigzagWitness("W", tuple(range(start, start + 5)))
        return _verify_zigzag(n, seq, witness)
    if direction == -1:
        # order-reverse via complementation, solve ascending, swap the label
        full = (1 << n) - 1
        flipped = zigzag_find_WM(n, [full ^ s for s in seq])
        witness = ZigzagWitness("W" if flipped.which == "M" else "M", flipped.indices)
        return _verify_zigzag(n, seq, witness)
    witness = _zigzag_ascending(seq, dirs, start, m)
    return _verify_zigzag(n, seq, witness)


def _zigzag_ascending(seq, dirs, start, m):
    i = start + 1  # 1-based position of the run start, as in the case analysis
    if m == 4:
        if i >= 2:
            return ZigzagWitness("W", (i - 2, i - 1, i + 1, i, i + 2))
        return ZigzagWitness("M", (0, 2, 1, 3, 4))
    if m == 3:
        if i <= 2:
            if dirs[i + 2] == 1:  # edge between A_{i+3} and A_{i+4} ascends
                return ZigzagWitness("W", (i, i - 1, i + 1, i + 2, i + 3))
            return ZigzagWitness("W", (i, i - 1, i + 1, i + 3, i + 2))
        if dirs[i - 3] == 1:  # A_{i-2} below A_{i-1}
            return ZigzagWitness("M", (i - 3, i - 2, i - 1, i + 1, i))
        return ZigzagWitness("M", (i - 2, i - 3, i - 1, i + 1, i))
    # m == 2: strictly alternating; an ascending first step of the window
    # makes A_1..A_5 an M (three minima), otherwise a W
    return ZigzagWitness("M" if dirs[0] == 1 else "W", (0, 1, 2, 3, 4))


def _verify_zigzag(n, seq, witness) -> ZigzagWitness:
    target = w_poset() if witness.which == "W" else m_poset()
    chosen = SetFamily(n, [seq[i] for i in witness.indices])
    if find_embedding(chosen, target) is None:
        raise AssertionError(f"zigzag case analysis produced an invalid {witness.which} selection")
    return witness


def erdos_gallai_check(components: ComparabilityComponents) -> bool:
    """Edge bound |E| <= 2|V| for comparability graphs with no 6-vertex path."""
    path = _find_graph_path(components, 6)
    if path is not None:
        raise NotFreeError("comparability graph contains a 6-vertex path", path)
    total_vertices = len(components.family)
    return components.total_edges <= 2 * total_vertices


def _find_graph_path(components: ComparabilityComponents, length: int):
    fam = components.family
    adj = [components.family.above[i] | components.family.below[i] for i in range(len(fam))]

    def extend(path, seen):
        if len(path) == length:
            return list(path)
        for nxt in sorted(adj[path[-1]]):
            if nxt not in seen:
                found = extend(path + [nxt], seen | {nxt})
                if found:
                    return found
        return None

    for comp in components.components:
        if len(comp) < length:
            continue
        for v in comp:
            found = extend([v], {v})
            if found:
                return tuple(fam.members[i] for i in found)
    return None


@dataclass(frozen=True)
class ComponentReport:
    """Diagnostics for one component of a family avoiding 5-element path posets."""

    members: tuple
    containments: int
    hull_size: int
    max_antichain: int
    chains_meeting_hull: int
    threshold: Fraction      # c * n! / (5 * C(n-2, floor(n/2)-1))
    ratio: Fraction          # chains over threshold; None when c = 0
    type_one: bool           # c <= 100 and hull at least c elements
    type_two: bool           # antichain of at least 5c/6 members
    below_threshold: bool


MAX_COMPONENT_MEMBERS = 20


def p5_component_report(n: int, family: SetFamily):
    """Per-component chain-coverage diagnostics for a P5-path-free family.

    Reporting only: the underlying theorem is asymptotic, so components below
    the proof's coverage threshold are flagged, not rejected.
    """
    hit = find_any_embedding(family, path_hasse_family(5))
    if hit is not None:
        raise NotFreeError("family embeds a 5-element path poset", hit[1])
    if n > 7:
        raise ValueError("component report needs n <= 7 for the chain oracle")
    denom = 5 * math.comb(n - 2, n // 2 - 1)
    reports = []
    for comp in comparability_components(family).components:
        sub = family.restrict(comp)
        if len(sub) > MAX_COMPONENT_MEMBERS:
            raise ValueError("component too large for exact antichain computation")
        c = count_k_chains(sub, 2)
        hull = convex_hull(sub)
        meets = chains_meeting(n, hull)
        threshold = Fraction(c * math.factorial(n), denom)
        ratio = Fraction(meets) / threshold if c else None
        anti = _max_antichain(sub)
        reports.append(
            ComponentReport(
                members=sub.members,
                containments=c,
                hull_size=len(hull),
                max_antichain=anti,
                chains_meeting_hull=meets,
                threshold=threshold,
                ratio=ratio,
                type_one=c <= 100 and len(hull) >= c,
                type_two=c > 0 and anti * 6 >= 5 * c,
                below_threshold=c > 0 and meets < threshold,
            )
        )
    return reports


def _max_antichain(family: SetFamily) -> int:
    """Largest pairwise-incomparable subset, by branch and bound over members."""
    adj = [family.above[i] | family.below[i] for i in range(len(family))]
    best = 0

    def rec(candidates, size):
        nonlocal best
        if size + len(candidates) <= best:
            return
        if not candidates:
            best = max(best, size)
            return
        v = min(candidates)
        rec(candidates - {v} - adj[v], size + 1)
        rec(candidates - {v}, size)

    rec(set(range(len(family))), 0)
    return best


# ---------------------------------------------------------------------------
# Lemma verification suites (also driven by the CLI `verify` subcommand)
# ---------------------------------------------------------------------------


@dataclass
class LemmaReport:
    lemma: str
    instances_checked: int
    failures: int
    seed: int = None
    first_failure: str = None

    def to_json(self):
        out = {
            "lemma": self.lemma,
            "instances_checked": self.instances_checked,
            "failures": self.failures,
            "seed": self.seed,
        }
        if self.first_failure:
            out["first_failure"] = self.first_failure
        return out

    def note_failure(self, message):
        self.failures += 1
        if self.first_failure is None:
            self.first_failure = message


def verify_sublattice() -> LemmaReport:
    report = LemmaReport("sublattice", 0, 0)
    for n in range(3, 7):
        for lo in range(1 << n):
            for hi in range(1 << n):
                if lo != hi and lo & hi == lo:
                    report.instances_checked += 1
                    fam = interval_family(n, lo, hi)
                    expect = sublattice(n, lo.bit_count(), hi.bit_count())
                    got = chains_meeting(n, fam)
                    if got != expect:
                        report.note_failure(f"n={n} interval [{lo},{hi}]: {got} != {expect}")
    return report


def verify_chaincount(seed: int = 0) -> LemmaReport:
    import itertools

    report = LemmaReport("chaincount", 0, 0, seed=seed)

    def check(n, masks):
        report.instances_checked += 1
        fam = SetFamily(n, masks)
        got = chains_meeting(n, fam)
        bound = katona_nagy(n, len(fam))
        if got < bound:
            report.note_failure(f"n={n} F={list(masks)}: {got} < {bound}")

    for t in range(1, 5):
        for masks in itertools.combinations(range(1 << 4), t):
            check(4, masks)
    rng = random.Random(seed)
    for n in (6, 8):
        for _ in range(500):
            t = rng.randint(1, 6)
            check(n, rng.sample(range(1 << n), t))
    return report


def _random_family(rng, n, density=0.5):
    return SetFamily(n, [m for m in range(1 << n) if rng.random() < density])


def verify_coloring(seed: int = 0) -> LemmaReport:
    report = LemmaReport("coloring", 0, 0, seed=seed)

    def check(n, fam, t):
        report.instances_checked += 1
        col = color_family(n, fam, t)
        for g in col.blue:  # downset: removing any element stays blue
            for i in range(n):
                if g >> i & 1 and (g ^ (1 << i)) not in col.blue:
                    report.note_failure(f"n={n} t={t}: blue set not a downset at {g}")
                    return
        if not check_one_critical_pair_per_chain(n, col):
            report.note_failure(f"n={n} t={t} F={list(fam.members)}: chain with two critical pairs")

    for bits in range(1 << 8):
        fam = SetFamily(3, [m for m in range(8) if bits >> m & 1])
        for t in (1, 2, 3):
            check(3, fam, t)
    rng = random.Random(seed)
    for n in range(4, 9):
        for _ in range(100):
            fam = _random_family(rng, n)
            check(n, fam, rng.randint(1, 3))
    return report


def _comparable(a, b):
    return a & b == a or a & b == b


def random_zigzag(rng, n, length=6):
    """A uniform-ish random sequence of distinct, consecutively comparable sets."""
    while True:
        seq = [rng.randrange(1 << n)]
        for _ in range(length - 1):
            options = [m for m in range(1 << n) if m not in seq and _comparable(m, seq[-1])]
            if not options:
                break
            seq.append(rng.choice(options))
        if len(seq) == length:
            return seq


def _all_zigzags(n, length=6):
    universe = range(1 << n)

    def extend(seq):
        if len(seq) == length:
            yield list(seq)
            return
        for m in universe:
            if m not in seq and _comparable(m, seq[-1]):
                seq.append(m)
                yield from extend(seq)
                seq.pop()

    for start in universe:
        yield from extend([start])


def verify_zigzag(seed: int = 0) -> LemmaReport:
    report = LemmaReport("zigzag", 0, 0, seed=seed)
    w, m = w_poset(), m_poset()

    def check(n, seq):
        report.instances_checked += 1
        try:
            zigzag_find_WM(n, seq)
        except AssertionError as exc:
            report.note_failure(f"n={n} seq={seq}: {exc}")
            return
        dirs = _zigzag_dirs(seq)
        if _longest_run(dirs)[1] == 2:
            lo = SetFamily(n, seq[:5])
            hi = SetFamily(n, seq[1:])
            split = (
                find_embedding(lo, m) is not None and find_embedding(hi, w) is not None
            ) or (
                find_embedding(lo, w) is not None and find_embedding(hi, m) is not None
            )
            if not split:
                report.note_failure(f"n={n} seq={seq}: windows do not split into W and M")

    for seq in _all_zigzags(3):
        check(3, seq)
    rng = random.Random(seed)
    for n in range(4, 9):
        for _ in range(2000):
            check(n, random_zigzag(rng, n))
    return report


def verify_nfree_components(seed: int = 0) -> LemmaReport:
    report = LemmaReport("nfree-components", 0, 0, seed=seed)

    def check(n, fam):
        report.instances_checked += 1
        free = is_free(fam, [n_poset()])
        try:
            classes = classify_nfree_components(fam)
        except NotFreeError as exc:
            if free:
                report.note_failure(f"n={n} F={list(fam.members)}: refused an N-free family")
            elif not exc.witness.check():
                report.note_failure(f"n={n} F={list(fam.members)}: invalid refusal witness")
            return
        if not free:
            report.note_failure(f"n={n} F={list(fam.members)}: classified a non-N-free family")
            return
        for cls in classes:
            sub = SetFamily(fam.n, cls.members)
            if cls.kind == "triangle":
                ok = len(sub) == 3 and count_k_chains(sub, 3) == 1
            else:
                others = [m for m in cls.members if m != cls.center]
                ok = all(_comparable(cls.center, m) for m in others) and all(
                    not _comparable(a, b) for i, a in enumerate(others) for b in others[:i]
                )
            if not ok:
                report.note_failure(f"n={n} component {cls.members}: bad {cls.kind}")

    for bits in range(1 << 8):
        check(3, SetFamily(3, [m for m in range(8) if bits >> m & 1]))
    rng = random.Random(seed)
    for n in (4, 5):
        done = 0
        while done < 200:
            fam = SetFamily(n, rng.sample(range(1 << n), rng.randint(1, 8)))
            check(n, fam)
            done += 1
    return report


def verify_erdos_gallai(seed: int = 0) -> LemmaReport:
    report = LemmaReport("erdos-gallai", 0, 0, seed=seed)
    p6 = path_hasse_family(6)

    def check(n, fam):
        if not is_free(fam, p6):
            return
        report.instances_checked += 1
        comps = comparability_components(fam)
        try:
            ok = erdos_gallai_check(comps)
        except NotFreeError:
            report.note_failure(f"n={n} F={list(fam.members)}: path found in a P6-free family")
            return
        if not ok:
            report.note_failure(f"n={n} F={list(fam.members)}: edge bound violated")

    for bits in range(1 << 8):
        check(3, SetFamily(3, [m for m in range(8) if bits >> m & 1]))
    rng = random.Random(seed)
    for n in (4, 5, 6):
        for _ in range(200):
            fam = SetFamily(n, rng.sample(range(1 << n), rng.randint(1, 10)))
            check(n, fam)
    return report


VERIFIERS = {
    "sublattice": lambda seed: verify_sublattice(),
    "chaincount": verify_chaincount,
    "coloring": verify_coloring,
    "zigzag": verify_zigzag,
    "nfree-components": verify_nfree_components,
    "erdos-gallai": verify_erdos_gallai,
}


def run_verifiers(names, seed: int = 0):
    return [VERIFIERS[name](seed) for name in names]
