"""Tests for the weak law: both computation routes, the witness
checker, the diagram suites, pentagon coherence, and the relation
extensions."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convexmod.convex import cs_equal, cs_join_all, cs_scale, hull_canonicalize, member
from convexmod.distlaw import (
    IV_EMPTY,
    Interval,
    Relation,
    barr_extend,
    check_naturality,
    check_pentagon_law,
    check_weak_law,
    choice_set,
    delta_bruteforce,
    delta_hull,
    delta_witness_check,
    iv_add,
    iv_scale,
    iv_sup,
    membership_weighting,
    pentagon_check,
    set_key,
    set_weighting,
    trivialE_extend,
    trivial_law,
    trivial_lifting_fixed_points,
)
from convexmod.errors import ConvexmodError, NotSemifieldError
from convexmod.freemod import finsupp, fs_map, fs_unit, fs_zero
from convexmod.semiring import BOOL, NAT, QPLUS


def w(sr, *pairs):
    return finsupp(sr, list(pairs))


THREE_SETS = [(("x", "y"), 5), (("y", "z"), 9), (("a", "b"), 13)]


class TestConstructors:
    def test_set_key_sorts_and_dedupes(self):
        assert set_key(["y", "x", "y"]) == ("x", "y")

    def test_set_weighting_merges_equal_sets(self):
        Phi = set_weighting(QPLUS, [(("y", "x"), 2), (("x", "y"), 3)])
        assert Phi.value(("x", "y")) == 5

    def test_membership_weighting_requires_containment(self):
        with pytest.raises(ConvexmodError):
            membership_weighting(QPLUS, [((("x", "y"), "z"), 1)])


class TestChoiceSet:
    def test_two_sets_give_exactly_four_weightings(self):
        Phi = set_weighting(QPLUS, [(("x", "y"), 1), (("y", "z"), 2)])
        got = choice_set(Phi)
        expected = [
            w(QPLUS, ("x", 1), ("y", 2)),
            w(QPLUS, ("x", 1), ("z", 2)),
            w(QPLUS, ("y", 1), ("z", 2)),
            w(QPLUS, ("y", 3)),
        ]
        assert got == expected

    def test_shared_choice_adds_weights(self):
        Phi = set_weighting(QPLUS, [(("x", "y"), 2), (("x", "z"), 3)])
        got = choice_set(Phi)
        assert w(QPLUS, ("x", 5)) in got

    def test_empty_set_in_support_kills_all_choices(self):
        Phi = set_weighting(QPLUS, [((), 1), (("x",), 1)])
        assert choice_set(Phi) == []

    def test_empty_weighting_gives_zero(self):
        assert choice_set(fs_zero(QPLUS)) == [fs_zero(QPLUS)]


class TestDeltaHull:
    def test_three_set_instance_membership(self):
        Phi = set_weighting(QPLUS, THREE_SETS)
        phi = w(QPLUS, ("x", 2), ("y", 7), ("z", 5), ("a", 6), ("b", 7))
        assert member(delta_hull(Phi), phi)

    def test_three_set_instance_rejects_perturbation(self):
        Phi = set_weighting(QPLUS, THREE_SETS)
        bad = w(QPLUS, ("x", 2), ("y", 7), ("z", 5), ("a", 6),
                ("b", Fraction(15, 2)))
        assert not member(delta_hull(Phi), bad)

    def test_hull_strictly_exceeds_choices(self):
        Phi = set_weighting(QPLUS, [(("x", "y"), 1), (("y", "z"), 2)])
        mid = w(QPLUS, ("x", 1), ("y", 1), ("z", 1))
        assert member(delta_hull(Phi), mid)
        assert mid not in choice_set(Phi)

    def test_not_available_over_nat(self):
        Phi = set_weighting(NAT, [(("x", "y"), 2)])
        with pytest.raises(NotSemifieldError,
                           match="not a semifield; use brute force"):
            delta_hull(Phi)

    def test_zero_weighting_maps_to_point_zero(self):
        H = delta_hull(fs_zero(QPLUS))
        assert H.generators == (fs_zero(QPLUS),)

    def test_empty_set_key_maps_to_empty_set(self):
        Phi = set_weighting(QPLUS, [((), 3)])
        assert delta_hull(Phi).is_empty()


class TestDeltaBruteforce:
    def test_bool_one_set_gives_nonempty_subsets(self):
        Phi = set_weighting(BOOL, [(("p", "q"), 1)])
        got = delta_bruteforce(Phi)
        assert got == [
            w(BOOL, ("p", 1)),
            w(BOOL, ("p", 1), ("q", 1)),
            w(BOOL, ("q", 1)),
        ]

    def test_rejected_over_qplus(self):
        Phi = set_weighting(QPLUS, [(("x",), 1)])
        with pytest.raises(ConvexmodError,
                           match="use delta_hull \\+ delta_witness_check"):
            delta_bruteforce(Phi)

    def test_nat_strictly_exceeds_choices(self):
        Phi = set_weighting(NAT, THREE_SETS)
        bf = delta_bruteforce(Phi)
        cs = choice_set(Phi)
        assert len(bf) == 840
        assert len(cs) == 8
        assert all(c in bf for c in cs)
        phi = w(NAT, ("x", 2), ("y", 7), ("z", 5), ("a", 6), ("b", 7))
        assert phi in bf and phi not in cs

    def test_bool_route_matches_slice_product_oracle(self):
        # the package filters subsets of the union; the oracle follows
        # the raw definition with one slice per set
        import itertools
        from oracles import bool_law_by_slice_products
        universe = ["x", "y", "z"]
        pool = [s for r in range(1, 4)
                for s in itertools.combinations(universe, r)]
        for r in range(0, 4):
            for fam in itertools.combinations(pool, r):
                Phi = set_weighting(BOOL, [(A, 1) for A in fam])
                got = {frozenset(p.support()) for p in delta_bruteforce(Phi)}
                assert got == bool_law_by_slice_products(list(Phi.support()))

    def test_bool_bruteforce_equals_hull_membership_closure(self):
        # both routes agree extensionally on every weighting over the
        # two-symbol universe with support up to two sets
        universe = ["p", "q"]
        sets_pool = [("p",), ("q",), ("p", "q")]
        import itertools
        all_phis = [finsupp(BOOL, [(x, 1) for x in sub])
                    for r in range(3)
                    for sub in itertools.combinations(universe, r)]
        for r in range(3):
            for fam in itertools.combinations(sets_pool, r):
                Phi = set_weighting(BOOL, [(A, 1) for A in fam])
                closure = sorted(
                    (p for p in all_phis if member(delta_hull(Phi), p)),
                    key=lambda p: p._skey)
                assert closure == delta_bruteforce(Phi)


class TestWitnessCheck:
    def setup_method(self):
        self.Phi = set_weighting(QPLUS, THREE_SETS)
        self.phi = w(QPLUS, ("x", 2), ("y", 7), ("z", 5), ("a", 6), ("b", 7))
        self.pairs = [
            ((("x", "y"), "x"), 2), ((("x", "y"), "y"), 3),
            ((("y", "z"), "y"), 4), ((("y", "z"), "z"), 5),
            ((("a", "b"), "a"), 6), ((("a", "b"), "b"), 7),
        ]

    def test_accepts_exact_witness(self):
        psi = membership_weighting(QPLUS, self.pairs)
        assert delta_witness_check(self.Phi, self.phi, psi)

    def test_rejects_moved_mass(self):
        bad = list(self.pairs)
        bad[0] = ((("x", "y"), "x"), 3)
        bad[1] = ((("x", "y"), "y"), 2)
        psi = membership_weighting(QPLUS, bad)
        assert not delta_witness_check(self.Phi, self.phi, psi)

    def test_rejects_wrong_per_set_total(self):
        bad = list(self.pairs)
        bad[0] = ((("x", "y"), "x"), 1)
        psi = membership_weighting(QPLUS, bad)
        assert not delta_witness_check(self.Phi, self.phi, psi)

    def test_rejects_extra_set(self):
        psi = membership_weighting(
            QPLUS, self.pairs + [((("u", "v"), "u"), 1)])
        assert not delta_witness_check(self.Phi, self.phi, psi)

    def test_choice_witnesses_always_accepted(self):
        Phi = set_weighting(QPLUS, [(("x", "y"), 1), (("y", "z"), 2)])
        for picks in [("x", "y"), ("x", "z"), ("y", "y"), ("y", "z")]:
            psi = membership_weighting(
                QPLUS,
                [((A, x), Phi.value(A))
                 for A, x in zip(Phi.support(), picks)])
            phi = finsupp(QPLUS, [(x, Phi.value(A))
                                  for A, x in zip(Phi.support(), picks)])
            assert delta_witness_check(Phi, phi, psi)


EXPECTED_SUITE = {
    "bool": {"eta_P_triangle": "pass", "mu_S_rectangle": "pass",
             "mu_P_rectangle": "pass", "eta_S_triangle": "fail"},
    "nat": {"eta_P_triangle": "pass", "mu_S_rectangle": "pass",
            "mu_P_rectangle": "pass", "eta_S_triangle": "pass"},
    "qplus": {"eta_P_triangle": "pass", "mu_S_rectangle": "pass",
              "mu_P_rectangle": "pass", "eta_S_triangle": "fail"},
}


class TestWeakLawSuites:
    @pytest.mark.parametrize("sr", [BOOL, NAT, QPLUS], ids=lambda s: s.id)
    def test_suite_statuses(self, sr):
        reports = check_weak_law(sr, xsize=2, trials=30, seed=0)
        got = {r.name: r.status for r in reports}
        assert got == EXPECTED_SUITE[sr.id]

    def test_dropped_triangle_counterexample_is_two_element_set(self):
        reports = check_weak_law(BOOL, xsize=2)
        r = {r.name: r for r in reports}["eta_S_triangle"]
        assert r.counterexample["A"] == ("x", "y")
        assert r.counterexample["extra"] == w(BOOL, ("x", 1), ("y", 1))
        assert r.meta["expected"] == "fail"

    def test_nat_triangle_passes_and_is_expected_to(self):
        reports = check_weak_law(NAT, xsize=2)
        r = {r.name: r for r in reports}["eta_S_triangle"]
        assert r.passed and r.meta["expected"] == "pass"

    def test_qplus_suite_deterministic_under_seed(self):
        a = [r.to_json_dict() for r in check_weak_law(QPLUS, seed=7)]
        b = [r.to_json_dict() for r in check_weak_law(QPLUS, seed=7)]
        assert a == b


class TestNaturality:
    def test_hull_route_natural_over_qplus(self):
        reports = check_naturality(QPLUS, xsize=3, trials=40, seed=0)
        assert {r.name: r.status for r in reports} == {
            "delta_naturality": "pass", "choice_naturality": "fail"}

    def test_hull_route_natural_over_bool(self):
        reports = check_naturality(BOOL, xsize=3)
        assert {r.name: r.status for r in reports} == {
            "delta_naturality": "pass", "choice_naturality": "fail"}

    def test_choice_violation_replays(self):
        reports = check_naturality(QPLUS, xsize=3, trials=5, seed=0)
        cx = {r.name: r for r in reports}["choice_naturality"].counterexample
        Phi, f = cx["Phi"], cx["f"]
        mapped = set_weighting(
            Phi.semiring,
            [(tuple(f[x] for x in A), v) for A, v in Phi.items()])
        left = choice_set(mapped)
        right = sorted({fs_map(f, p) for p in choice_set(Phi)},
                       key=lambda p: p._skey)
        assert left != right

    def test_known_collapse_instance_violates_choice_naturality(self):
        Phi = set_weighting(BOOL, [(("x", "y"), 1), (("x", "z"), 1)])
        f = {"x": "x", "y": "y", "z": "y"}
        mapped = set_weighting(BOOL, [(tuple(f[s] for s in A), v)
                                      for A, v in Phi.items()])
        left = choice_set(mapped)
        right = sorted({fs_map(f, p) for p in choice_set(Phi)},
                       key=lambda p: p._skey)
        assert left == [w(BOOL, ("x", 1)), w(BOOL, ("y", 1))]
        assert w(BOOL, ("x", 1), ("y", 1)) in right
        assert left != right


class TestIntervalArithmetic:
    def test_add(self):
        assert iv_add(Interval(1, 2), Interval(5, 6)) == Interval(6, 8)

    def test_add_absorbs_empty(self):
        assert iv_add(Interval(1, 2), IV_EMPTY).empty

    def test_scale_by_zero_gives_point_zero(self):
        assert iv_scale(0, IV_EMPTY) == Interval(0, 0)
        assert iv_scale(0, Interval(3, 4)) == Interval(0, 0)

    def test_scale_keeps_empty(self):
        assert iv_scale(2, IV_EMPTY).empty

    def test_sup_ignores_empty_members(self):
        assert iv_sup([Interval(0, 1), IV_EMPTY, Interval(4, 5)]) \
            == Interval(0, 5)
        assert iv_sup([]).empty

    def test_ordering_rejected_when_reversed(self):
        with pytest.raises(ConvexmodError):
            Interval(3, 1)


class TestPentagon:
    def test_interval_two_singletons(self):
        Phi = set_weighting(QPLUS, [((Interval(1, 2),), 1),
                                    ((Interval(5, 6),), 1)])
        r = pentagon_check("interval", Phi)
        assert r.passed
        assert r.meta["left"] == Interval(6, 8)
        assert r.meta["right"] == Interval(6, 8)

    def test_interval_with_real_choice(self):
        Phi = set_weighting(
            QPLUS, [((Interval(0, 1), Interval(4, 4)), 2),
                    ((Interval(1, 3),), Fraction(1, 2))])
        assert pentagon_check("interval", Phi).passed

    def test_interval_empty_key_bottoms_out(self):
        Phi = set_weighting(QPLUS, [((), 1), ((Interval(1, 2),), 1)])
        r = pentagon_check("interval", Phi)
        assert r.passed and r.meta["left"].empty

    def test_free_scaling_of_a_join(self):
        A = hull_canonicalize([fs_unit(QPLUS, "x"), fs_unit(QPLUS, "y")],
                              QPLUS)
        B = hull_canonicalize([w(QPLUS, ("x", 3))], QPLUS)
        Phi = set_weighting(QPLUS, [((A, B), 2)])
        r = pentagon_check("free", Phi)
        assert r.passed
        assert cs_equal(r.meta["left"],
                        cs_scale(2, cs_join_all([A, B], QPLUS)))

    def test_free_empty_weighting_gives_zero_point(self):
        r = pentagon_check("free", fs_zero(QPLUS))
        assert r.passed
        assert r.meta["left"].generators == (fs_zero(QPLUS),)

    def test_unknown_algebra_rejected(self):
        with pytest.raises(ConvexmodError):
            pentagon_check("affine", fs_zero(QPLUS))


class TestPentagonSuite:
    def test_bool_bounded_exhaustive_passes(self):
        reports = check_pentagon_law(BOOL, xsize=2)
        assert [(r.name, r.status) for r in reports] == [
            ("pentagon:free", "pass")]
        assert reports[0].meta["instances"] == 5672

    def test_qplus_randomized_passes_with_sum_rule(self):
        reports = check_pentagon_law(QPLUS, trials=30, seed=4)
        assert [(r.name, r.status) for r in reports] == [
            ("pentagon:free", "pass"),
            ("pentagon:interval", "pass"),
            ("pentagon:interval:sum_rule", "pass"),
        ]

    def test_seed_determinism(self):
        a = [r.to_json_dict() for r in check_pentagon_law(QPLUS, trials=10,
                                                          seed=9)]
        b = [r.to_json_dict() for r in check_pentagon_law(QPLUS, trials=10,
                                                          seed=9)]
        assert a == b

    def test_nat_rejected(self):
        with pytest.raises(ConvexmodError, match="positive semifield"):
            check_pentagon_law(NAT)


class TestBarrExtension:
    def test_function_graph_extends_to_graph_of_mapped_function(self):
        R = Relation(("a", "b", "c"), ("u", "v"),
                     (("a", "u"), ("b", "u"), ("c", "v")))
        E = barr_extend(R, BOOL)
        f = {"a": "u", "b": "u", "c": "v"}
        got = {(p._skey, q._skey) for p, q in E.pairs}
        expected = {(phi._skey, fs_map(f, phi)._skey) for phi in E.domain}
        assert got == expected

    def test_non_function_relates_to_marginal_pairs(self):
        R = Relation(("a",), ("u", "v"), (("a", "u"), ("a", "v")))
        E = barr_extend(R, BOOL)
        pairs = {(p._skey, q._skey) for p, q in E.pairs}
        assert len(pairs) == 4
        a = w(BOOL, ("a", 1))
        assert (a._skey, w(BOOL, ("u", 1), ("v", 1))._skey) in pairs

    def test_nat_graph_with_merging_fibres(self):
        R = Relation(("a", "b"), ("u",), (("a", "u"), ("b", "u")))
        E = barr_extend(R, NAT, value_bound=2)
        # phi = (a:2, b:1) must relate exactly to (u:3)
        phi = w(NAT, ("a", 2), ("b", 1))
        images = [q for p, q in E.pairs if p == phi]
        assert images == [w(NAT, ("u", 3))]

    def test_qplus_rejected(self):
        R = Relation(("a",), ("u",), (("a", "u"),))
        with pytest.raises(ConvexmodError):
            barr_extend(R, QPLUS)


class TestTrivialExtension:
    def test_forward_image_counterexample(self):
        R = Relation((0, 1, 2), (0, 1, 2), ((0, 1),))
        S = Relation((0, 1, 2), (0, 1, 2), ((0, 1), (0, 2)))
        assert set(R.pairs) < set(S.pairs)
        assert trivialE_extend(R)[(0,)] == (1,)
        assert trivialE_extend(S)[(0,)] == (1, 2)

    def test_law_collapses_family_to_union(self):
        assert trivial_law([("x", "y"), ("y", "z")]) == [("x", "y", "z")]
        assert trivial_law([]) == [()]

    def test_lifting_fixed_points_are_singleton_families(self):
        r = trivial_lifting_fixed_points(3)
        assert r.passed
        assert r.meta["families"] == 256


@given(st.integers(1, 3), st.integers(0, 50))
def test_choice_weightings_always_members_of_hull(nsets, seedling):
    import random
    rng = random.Random(seedling)
    universe = ["x", "y", "z"]
    items = []
    for _ in range(nsets):
        size = rng.randint(1, 3)
        A = tuple(sorted(rng.sample(universe, size)))
        items.append((A, Fraction(rng.randint(1, 5), rng.randint(1, 3))))
    Phi = set_weighting(QPLUS, items)
    H = delta_hull(Phi)
    for phi in choice_set(Phi):
        assert member(H, phi)
