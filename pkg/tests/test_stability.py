import random
from itertools import combinations

from helpers import all_subsets
from oracles import cone_interior, cone_member, det
from torusgit.chambers import enumerate_chambers, is_simple_chi, translate, walls
from torusgit.configuration import gale_dual
from torusgit.polyhedra import FlippedPolytope, is_empty, is_simple_poly
from torusgit.stability import (
    is_nice,
    is_semistable,
    is_stable,
    locally_free_supports,
    overlap_matrix,
    restrict_character,
    semistable_supports,
    stable_supports,
    support_text,
)


class TestRestrictedCharacter:
    def test_examples(self, cfg_a, cfg_c):
        assert restrict_character(cfg_c, (0, 1, 1, 0)) == (1, 2)
        assert restrict_character(cfg_a, (1, 1)) == (2,)
        assert restrict_character(cfg_c, (0, 0, 0, 0)) == (0, 0)


class TestStability:
    def test_cfg_c_examples(self, cfg_c):
        chi = (0, 1, 1, 0)
        assert is_stable(cfg_c, {1, 2, 3, 4}, chi)
        assert not is_semistable(cfg_c, {1}, chi)
        assert is_stable(cfg_c, {2, 3}, chi)

    def test_stable_implies_semistable(self, corpus):
        rng = random.Random(6)
        for cfg in corpus[:15]:
            for _ in range(3):
                chi = [rng.randint(-2, 2) for _ in range(cfg.n)]
                assert set(stable_supports(cfg, chi)) <= set(semistable_supports(cfg, chi))

    def test_cone_oracle(self, corpus):
        rng = random.Random(12)
        checked = 0
        for cfg in corpus:
            k = cfg.n - cfg.d
            if k > 2:
                continue
            b = gale_dual(cfg)
            for _ in range(4):
                chi = [rng.randint(-2, 2) for _ in range(cfg.n)]
                target = restrict_character(cfg, chi)
                for S in all_subsets(cfg.n):
                    gens = [b[i - 1] for i in sorted(S)]
                    member = cone_member(gens, target)
                    assert is_semistable(cfg, S, chi) == member
                    full = any(det([list(g) for g in sub]) != 0 for sub in combinations(gens, k))
                    assert is_stable(cfg, S, chi) == (full and member and cone_interior(gens, target))
                    checked += 1
        assert checked > 100

    def test_translation_invariance(self, corpus):
        rng = random.Random(13)
        for cfg in corpus[:12]:
            chi = [rng.randint(-2, 2) for _ in range(cfg.n)]
            v = [rng.randint(-2, 2) for _ in range(cfg.d)]
            moved = [int(x) for x in translate(cfg, chi, v)]
            assert restrict_character(cfg, moved) == restrict_character(cfg, chi)
            assert stable_supports(cfg, moved) == stable_supports(cfg, chi)
            assert semistable_supports(cfg, moved) == semistable_supports(cfg, chi)


class TestNiceness:
    def test_examples(self, cfg_a, cfg_c, cfg_d):
        assert is_nice(cfg_c, (0, 1, 1, 0))
        assert not is_nice(cfg_a, (1, -1))
        assert not is_nice(cfg_d, (0, 0))

    def test_nice_iff_simple_full_dimensional(self, corpus):
        rng = random.Random(21)
        for cfg in corpus:
            for _ in range(8):
                chi = [rng.randint(-3, 3) for _ in range(cfg.n)]
                assert is_nice(cfg, chi) == is_simple_poly(FlippedPolytope(cfg, chi))

    def test_simple_chi_nice_when_stable_set_nonempty(self, corpus):
        for cfg in corpus:
            for ch in enumerate_chambers(cfg):
                chi = ch.representative
                if stable_supports(cfg, chi):
                    assert is_nice(cfg, chi)
                    assert is_simple_poly(FlippedPolytope(cfg, chi))
                else:
                    assert is_empty(FlippedPolytope(cfg, chi))

    def test_wall_points_follow_the_polytope_criterion(self, corpus):
        rng = random.Random(22)
        not_nice = 0
        for cfg in corpus:
            for w in walls(cfg):
                for _ in range(3):
                    chi = [rng.randint(-3, 3) for _ in range(cfg.n)]
                    j = next(i for i, c in enumerate(w.coeffs) if c)
                    val = w.value(chi)
                    if val % w.coeffs[j]:
                        continue
                    chi[j] -= int(val / w.coeffs[j])
                    assert not is_simple_chi(cfg, chi)
                    if semistable_supports(cfg, chi):
                        nice = is_nice(cfg, chi)
                        assert nice == is_simple_poly(FlippedPolytope(cfg, chi))
                        not_nice += not nice
        assert not_nice > 10

    def test_wall_point_can_still_be_nice(self, corpus):
        # the wall only constrains some flipped polytope; Delta^chi itself stays simple
        cfg = next(c for c in corpus if c.name == "rand-0-8")
        chi = [-3, 1, 4, -1, 3, -2]
        assert not is_simple_chi(cfg, chi)
        assert semistable_supports(cfg, chi)
        assert is_nice(cfg, chi)
        assert is_simple_poly(FlippedPolytope(cfg, chi))


class TestLocallyFree:
    def test_cfg_c(self, cfg_c):
        lf = set(locally_free_supports(cfg_c))
        assert {frozenset({1, 2}), frozenset({2, 3}), frozenset({1, 2, 3, 4})} <= lf
        assert frozenset({1, 4}) not in lf

    def test_rank_one(self, cfg_a, cfg_d):
        expected = {frozenset({1}), frozenset({2}), frozenset({1, 2})}
        assert set(locally_free_supports(cfg_a)) == expected
        assert set(locally_free_supports(cfg_d)) == expected

    def test_union_over_chambers(self, corpus, cfg_d):
        for cfg in corpus + [cfg_d]:
            union = set()
            for ch in enumerate_chambers(cfg):
                union |= set(stable_supports(cfg, ch.representative))
            assert union == set(locally_free_supports(cfg))


class TestOverlap:
    def test_cfg_a(self, cfg_a):
        g = overlap_matrix(cfg_a)
        # only the "+" chamber has stable points: chi_G = chi1 + chi2 must be positive
        assert [c.signs_text() for c in g.chambers] == ["+", "-"]
        assert g.matrix == [[True, False], [False, False]]

    def test_cfg_c(self, cfg_c):
        g = overlap_matrix(cfg_c)
        m = g.matrix
        assert len(m) == 6
        assert all(m[i][j] == m[j][i] for i in range(6) for j in range(6))
        for i, ch in enumerate(g.chambers):
            assert m[i][i] == bool(stable_supports(cfg_c, ch.representative))

    def test_single_chamber(self):
        from torusgit.configuration import VectorConfiguration

        cfg = VectorConfiguration.from_vectors([(1, 0), (0, 1)], "square")
        assert overlap_matrix(cfg).matrix == [[True]]

    def test_support_text(self):
        assert support_text({3, 1}) == "{1,3}"
