import itertools
import json

import pytest

from posetturan.embedding import count_copies, is_free
from posetturan.lattice import SetFamily, level_family
from posetturan.posets import chain, n_poset, named_poset
from posetturan.search import (
    SearchReport,
    cached_la_exact,
    la_exact,
    la_levels,
    verify_witness,
)

BFLY = named_poset("butterfly")
P2 = chain(2)


def brute_la(n, forbidden, q):
    """Exhaustive scan over all 2^(2^n) subfamilies."""
    best = -1
    for bits in range(1 << (1 << n)):
        fam = SetFamily(n, [m for m in range(1 << n) if bits >> m & 1])
        if is_free(fam, forbidden):
            best = max(best, count_copies(fam, q))
    return best


class TestLaExact:
    def test_butterfly_n3(self):
        rep = la_exact(3, [BFLY], P2)
        assert rep.optimum == 7 and rep.complete

    def test_n_poset_n3(self):
        rep = la_exact(3, [n_poset()], P2)
        assert rep.optimum == 3
        assert (0, 1, 2, 4) in rep.witnesses

    def test_n_poset_n4(self):
        assert la_exact(4, [n_poset()], P2).optimum == 6

    def test_chain3_n4(self):
        assert la_exact(4, [chain(3)], P2).optimum == 12

    def test_butterfly_n2_full_lattice(self):
        rep = la_exact(2, [BFLY], P2)
        assert rep.optimum == 5
        assert rep.witnesses == [(0, 1, 2, 3)]

    def test_witnesses_are_valid(self):
        rep = la_exact(3, [BFLY], P2)
        for fam in rep.witness_families(3):
            chk = verify_witness(fam, [BFLY], P2)
            assert chk.free and chk.copies == rep.optimum

    @pytest.mark.parametrize("n", (2, 3))
    def test_matches_exhaustive_scan(self, n):
        for forbidden in ([BFLY], [n_poset()], [chain(3)]):
            assert la_exact(n, forbidden, P2).optimum == brute_la(n, forbidden, P2)

    def test_no_bound_same_optimum(self):
        for forbidden in ([BFLY], [n_poset()]):
            a = la_exact(3, forbidden, P2)
            b = la_exact(3, forbidden, P2, no_bound=True)
            assert a.optimum == b.optimum
            # the unbounded run records every leaf, so its witness list is the
            # lexicographically least one; every witness still certifies the optimum
            for fam in a.witness_families(3):
                chk = verify_witness(fam, forbidden, P2)
                assert chk.free and chk.copies == a.optimum

    def test_n5_requires_budget(self):
        with pytest.raises(ValueError):
            la_exact(5, [BFLY], P2)

    def test_n5_budget_exhaustion_flagged(self):
        rep = la_exact(5, [BFLY], P2, budget=200)
        assert not rep.complete

    def test_n_too_large(self):
        with pytest.raises(ValueError):
            la_exact(6, [BFLY], P2, budget=10)

    def test_three_chain_q(self):
        # butterfly-free optimum for counting 3-chains at n=3
        rep = la_exact(3, [BFLY], chain(3))
        assert rep.complete
        for fam in rep.witness_families(3):
            assert verify_witness(fam, [BFLY], chain(3)).copies == rep.optimum

    def test_report_json_roundtrip(self):
        rep = la_exact(3, [n_poset()], P2)
        data = json.loads(json.dumps(rep.to_json()))
        assert data["optimum"] == 3 and data["complete"] is True


class TestLaLevels:
    def test_chain3_forbidden(self):
        rep = la_levels(6, [chain(3)], P2)
        assert rep.optimum == 90
        assert [2, 4] in rep.params["levels"]

    def test_chain3_n4(self):
        rep = la_levels(4, [chain(3)], P2)
        assert rep.optimum == 12
        assert rep.params["levels"] == [[1, 2], [1, 3], [2, 3]]

    def test_butterfly_forbidden(self):
        rep = la_levels(8, [BFLY], P2)
        assert rep.optimum == 4 * 70
        assert level_family(8, [3, 4]).members in [tuple(w) for w in rep.witnesses]

    def test_witnesses_free(self):
        rep = la_levels(6, [BFLY], P2)
        for fam in rep.witness_families(6):
            assert is_free(fam, [BFLY])

    def test_level_vs_exact_lower(self):
        # level-restricted optimum never beats the unrestricted one
        for forbidden in ([BFLY], [chain(3)], [n_poset()]):
            assert la_levels(4, forbidden, P2).optimum <= la_exact(4, forbidden, P2).optimum

    def test_caps(self):
        with pytest.raises(ValueError):
            la_levels(17, [chain(3)], P2)
        with pytest.raises(ValueError):
            la_levels(12, [BFLY], P2)
        with pytest.raises(ValueError):
            la_levels(9, [chain(4)], BFLY)


class TestCache:
    def test_roundtrip(self, tmp_path):
        path = str(tmp_path / "cache.jsonl")
        first = cached_la_exact(3, [BFLY], P2, path=path)
        second = cached_la_exact(3, [BFLY], P2, path=path)
        assert first.optimum == second.optimum == 7
        assert first.witnesses == second.witnesses
        assert sum(1 for _ in open(path)) == 1

    def test_cold_and_warm_reports_match(self, tmp_path):
        path = str(tmp_path / "cache.jsonl")
        cold = cached_la_exact(4, [n_poset()], P2, path=path)
        warm = cached_la_exact(4, [n_poset()], P2, path=path)
        assert json.dumps(cold.to_json(), sort_keys=True) == json.dumps(
            warm.to_json(), sort_keys=True
        )

    def test_incomplete_entry_rerun_with_bigger_budget(self, tmp_path):
        path = str(tmp_path / "cache.jsonl")
        partial = cached_la_exact(5, [chain(2)], P2, budget=50, path=path)
        assert not partial.complete
        again = cached_la_exact(5, [chain(2)], P2, budget=100, path=path)
        assert again.nodes_explored > 50
        assert sum(1 for _ in open(path)) == 2

    def test_incomplete_entry_reused_at_same_budget(self, tmp_path):
        path = str(tmp_path / "cache.jsonl")
        cached_la_exact(5, [chain(2)], P2, budget=50, path=path)
        cached_la_exact(5, [chain(2)], P2, budget=50, path=path)
        assert sum(1 for _ in open(path)) == 1

    def test_env_var_controls_default(self, tmp_path, monkeypatch):
        path = tmp_path / "envcache.jsonl"
        monkeypatch.setenv("TURAN_CACHE", str(path))
        cached_la_exact(2, [BFLY], P2)
        assert path.exists()

    def test_use_cache_false_skips_file(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        cached_la_exact(3, [BFLY], P2, use_cache=False, path=str(path))
        assert not path.exists()

    def test_corrupt_lines_ignored(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        path.write_text("this is not json\n")
        rep = cached_la_exact(3, [BFLY], P2, path=str(path))
        assert rep.optimum == 7


class TestVerifyWitness:
    def test_free_witness(self):
        chk = verify_witness(level_family(7, [3, 4]), [BFLY], P2)
        assert chk.free and chk.copies == 140

    def test_non_free_witness(self):
        chk = verify_witness(SetFamily(3, list(range(8))), [BFLY], P2)
        assert not chk.free
