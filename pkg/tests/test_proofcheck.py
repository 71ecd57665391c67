import itertools
from fractions import Fraction

import pytest

from posetturan.constructions import middle_two_levels, p5_construction
from posetturan.lattice import SetFamily, comparability_components, full_lattice, level_family
from posetturan.posets import m_poset, w_poset
from posetturan.proofcheck import (
    NotFreeError,
    check_one_critical_pair_per_chain,
    classify_nfree_components,
    color_family,
    erdos_gallai_check,
    p5_component_report,
    run_verifiers,
    verify_chaincount,
    verify_coloring,
    verify_erdos_gallai,
    verify_nfree_components,
    verify_sublattice,
    verify_zigzag,
    zigzag_find_WM,
)


def brute_one_pair_per_chain(n, coloring):
    """Reference check walking all n! full chains."""
    for perm in itertools.permutations(range(n)):
        masks = [0]
        for i in perm:
            masks.append(masks[-1] | 1 << i)
        hits = 0
        for a, b in zip(masks, masks[1:]):
            if (a, b) in coloring.critical_pairs:
                hits += 1
        if hits > 1:
            return False
    return True


class TestColoring:
    def test_middle_levels_t2(self):
        col = color_family(4, middle_two_levels(4), 2)
        assert all(m.bit_count() <= 2 for m in col.blue)
        assert len(col.critical_pairs) == 12

    def test_full_lattice_t1(self):
        col = color_family(3, full_lattice(3), 1)
        assert col.critical_pairs == ((3, 7), (5, 7), (6, 7))

    def test_blue_is_strict_containment(self):
        col = color_family(3, SetFamily(3, [3]), 1)
        assert col.blue == frozenset({0, 1, 2})

    def test_threshold_raises(self):
        with pytest.raises(ValueError):
            color_family(3, full_lattice(3), 0)

    def test_one_pair_per_chain_examples(self):
        col = color_family(4, middle_two_levels(4), 2)
        assert check_one_critical_pair_per_chain(4, col)

    def test_matches_permutation_oracle(self):
        import random

        rng = random.Random(17)
        for _ in range(60):
            n = rng.randint(2, 5)
            fam = SetFamily(n, rng.sample(range(1 << n), rng.randint(1, min(10, 1 << n))))
            col = color_family(n, fam, rng.randint(1, 3))
            assert check_one_critical_pair_per_chain(n, col) == brute_one_pair_per_chain(
                n, col
            )


class TestNFreeComponents:
    def test_star_classification(self):
        classes = classify_nfree_components(SetFamily(3, [0, 1, 2, 4]))
        assert len(classes) == 1
        assert classes[0].kind == "star" and classes[0].center == 0

    def test_triangle_classification(self):
        classes = classify_nfree_components(SetFamily(3, [1, 3, 7]))
        assert classes[0].kind == "triangle" and classes[0].center is None

    def test_mixed(self):
        fam = SetFamily(4, [1, 3, 7, 8])
        kinds = sorted(c.kind for c in classify_nfree_components(fam))
        assert kinds == ["star", "triangle"]

    def test_refuses_non_free(self):
        with pytest.raises(NotFreeError) as exc:
            classify_nfree_components(SetFamily(3, [0, 1, 2, 4, 7]))
        assert exc.value.witness.check()


class TestZigzag:
    def test_six_chain_is_w(self):
        seq = [0, 1, 3, 7, 15, 31]
        wit = zigzag_find_WM(5, seq)
        assert wit.which == "W"

    def test_alternating_m(self):
        wit = zigzag_find_WM(3, [0, 3, 1, 5, 4, 6])
        assert wit.which == "M"
        assert wit.indices == (0, 1, 2, 3, 4)

    def test_alternating_w(self):
        wit = zigzag_find_WM(3, [3, 1, 5, 4, 6, 2])
        assert wit.which == "W"

    def test_selection_embeds(self):
        seq = [0, 3, 2, 6, 4, 5]
        wit = zigzag_find_WM(3, seq)
        from posetturan.embedding import find_embedding

        chosen = SetFamily(3, [seq[i] for i in wit.indices])
        target = w_poset() if wit.which == "W" else m_poset()
        assert find_embedding(chosen, target) is not None

    def test_rejects_short_or_repeated(self):
        with pytest.raises(ValueError):
            zigzag_find_WM(3, [0, 1, 3, 7, 5])
        with pytest.raises(ValueError):
            zigzag_find_WM(3, [0, 1, 3, 1, 5, 7])

    def test_rejects_incomparable_step(self):
        with pytest.raises(ValueError):
            zigzag_find_WM(3, [1, 2, 3, 7, 5, 4])


class TestErdosGallai:
    def test_p5_construction_bound(self):
        comps = comparability_components(p5_construction(6))
        assert erdos_gallai_check(comps)

    def test_antichain_trivial(self):
        comps = comparability_components(level_family(4, [2]))
        assert erdos_gallai_check(comps)

    def test_path_detected(self):
        comps = comparability_components(SetFamily(3, [0, 1, 3, 7, 5, 4]))
        with pytest.raises(NotFreeError):
            erdos_gallai_check(comps)


class TestP5ComponentReport:
    def test_p5_construction_n6(self):
        reports = p5_component_report(6, p5_construction(6))
        assert len(reports) == 6
        for rep in reports:
            assert rep.containments == 5
            assert rep.hull_size == 4
            assert rep.chains_meeting_hull == 120
            assert rep.ratio == Fraction(1)
            assert rep.max_antichain == 2
            # a 2-cube block is neither type: hull has 4 < 5 = c elements and
            # the antichain covers only 2 of the needed 5c/6 members
            assert not rep.type_one and not rep.type_two
            assert not rep.below_threshold

    def test_refuses_non_free(self):
        with pytest.raises(NotFreeError):
            p5_component_report(3, SetFamily(3, [0, 1, 3, 7, 5]))

    def test_singleton_component(self):
        (rep,) = p5_component_report(4, SetFamily(4, [3]))
        assert rep.containments == 0 and rep.ratio is None
        assert rep.max_antichain == 1


class TestVerifiers:
    def test_sublattice(self):
        rep = verify_sublattice()
        assert rep.failures == 0 and rep.instances_checked == 960

    def test_chaincount(self):
        rep = verify_chaincount(seed=0)
        assert rep.failures == 0 and rep.instances_checked == 3516

    def test_coloring(self):
        rep = verify_coloring(seed=0)
        assert rep.failures == 0 and rep.instances_checked == 1268

    def test_zigzag(self):
        rep = verify_zigzag(seed=0)
        assert rep.failures == 0 and rep.instances_checked == 12148

    def test_nfree_components(self):
        rep = verify_nfree_components(seed=0)
        assert rep.failures == 0 and rep.instances_checked == 656

    def test_erdos_gallai(self):
        rep = verify_erdos_gallai(seed=0)
        assert rep.failures == 0 and rep.instances_checked > 0

    def test_run_verifiers_order(self):
        reports = run_verifiers(["sublattice", "coloring"], seed=1)
        assert [r.lemma for r in reports] == ["sublattice", "coloring"]
        assert all(r.failures == 0 for r in reports)

    def test_report_json(self):
        rep = verify_sublattice()
        data = rep.to_json()
        assert data["lemma"] == "sublattice" and data["failures"] == 0
