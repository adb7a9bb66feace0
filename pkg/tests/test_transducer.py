import pytest

from serretlab.algebra import eval_word, mobius_apply
from serretlab.algorithm import validate
from serretlab.exact import QuadIrr
from serretlab.expansion import UPWord, orbit, tail_equivalent
from serretlab.graph import build_graph, schreier_quotient
from serretlab.presets import load_bundled
from serretlab.transducer import (MarkedWord, StuckError, build_ft, defect,
                                  gt_transducer, root_component, serret_check,
                                  sync_check, sync_sample)


def machinery(name):
    T = load_bundled(name)
    g = build_graph(T)
    s, phi = schreier_quotient(g)
    return T, g, s, phi


class TestCanonicalTransducer:
    def test_three_state_component(self):
        T, g, _, _ = machinery("quad_fail")
        t = root_component(gt_transducer(g))
        assert set(t.states) == {"1", "N", "NL"}
        assert t.edges["1"] == {"L": ("1", (0,)), "N": ("N", ())}
        assert t.edges["N"] == {"L": ("NL", ()), "N": ("1", (3,))}
        assert t.edges["NL"] == {"L": ("1", (1,)), "N": ("1", (2,))}

    def test_two_loop_state(self):
        _, g, _, _ = machinery("ceiling")
        t = gt_transducer(g)
        assert t.edges["1"] == {"L": ("1", (0,)), "N": ("1", (1,))}

    def test_eight_state_transducer(self):
        _, g, _, _ = machinery("index4")
        t = gt_transducer(g)
        assert len(t.states) == 8
        assert t.is_complete()


class TestRun:
    def test_worked_transduction(self):
        _, g, _, _ = machinery("index4")
        t = gt_transducer(g)
        out = t.run("1", UPWord.parse("NLLNNLNNNL(LNL)"))
        assert out == UPWord((4, 1, 2, 1), (2,))

    def test_single_loop(self):
        _, g, _, _ = machinery("ceiling")
        t = gt_transducer(g)
        assert t.run("1", UPWord((), "L")) == UPWord((), (0,))

    def test_periodic_orbit_via_graph(self):
        _, g, _, _ = machinery("quad_fail")
        t = gt_transducer(g)
        assert t.run("1", UPWord((), "NLN")) == UPWord((), (2,))
        assert t.run("1", UPWord((), "NNL")) == UPWord((), (3, 0))

    def test_finite_word(self):
        _, g, _, _ = machinery("quad_fail")
        t = gt_transducer(g)
        assert t.run("1", "LLNN") == (0, 0, 3)

    def test_stuck(self):
        T, g, _, phi = machinery("quad_hold")
        _, ft_star = build_ft(T, g, phi)
        with pytest.raises(StuckError):
            ft_star.run("N", (3, 3, 0))


class TestCommutatorTransducer:
    def test_pruned_states_and_loops(self):
        T, g, _, phi = machinery("quad_hold")
        ft, ft_star = build_ft(T, g, phi)
        assert set(ft_star.states) == {"N", "NN"}
        assert ft_star.edges["N"] == {3: ("N", (3,))}
        assert ft_star.edges["NN"] == {3: ("NN", (3,))}

    def test_commutation_relations(self):
        # each edge P --a|w--> Q encodes P * A_a = A_w * Q as matrices
        for name in ("quad_hold", "quad_fail", "index4", "eight_cell"):
            T, g, _, phi = machinery(name)
            ft, _ = build_ft(T, g, phi)
            for p in ft.states:
                pm = g.vertex_matrix(p)
                for a, (q, w) in ft.edges[p].items():
                    lhs = pm * T.branches[a]
                    rhs = g.vertex_matrix(q)
                    for b in reversed(w):
                        rhs = T.branches[b] * rhs
                    assert lhs == rhs, (name, p, a)

    def test_single_edge_example(self):
        T, g, _, phi = machinery("quad_hold")
        ft, _ = build_ft(T, g, phi)
        assert ft.edges["N"][0] == ("1", (1,))

    def test_root_state_has_copy_loops(self):
        T, g, _, phi = machinery("quad_fail")
        ft, _ = build_ft(T, g, phi)
        for a, (q, w) in ft.edges["1"].items():
            assert q == "1" and w == (a,)

    def test_empty_when_fiber_trivial(self):
        T, g, _, phi = machinery("pythagorean")
        _, ft_star = build_ft(T, g, phi)
        assert ft_star.states == ()


class TestMarkedWord:
    def test_four_case_table(self):
        assert MarkedWord(1, "N", 1).matrix() == eval_word("N")
        assert MarkedWord(1, "LLN", 2).matrix() == eval_word("LLNF")
        assert MarkedWord(2, "NLN", 2).matrix() == eval_word("LNL")
        assert MarkedWord(2, "NNL", 1).matrix() == eval_word("LLNF")

    def test_annotated_run_segments(self):
        # the primitive-path decomposition of the worked transduction
        T = load_bundled("index4")
        segments = [(1, "N", 1), (1, "LLN", 2), (2, "NLN", 2),
                    (2, "NNL", 1), (1, "LNL", 1)]
        symbols = [4, 1, 2, 1, 2]
        for (i, w, j), a in zip(segments, symbols):
            assert MarkedWord(i, w, j).matrix() == T.branches[a]

    def test_validation(self):
        with pytest.raises(ValueError):
            MarkedWord(0, "L", 1)
        with pytest.raises(ValueError):
            MarkedWord(1, "LF", 1)


class TestDefect:
    def test_values(self):
        assert defect(load_bundled("eight_cell")).value == 6
        assert defect(load_bundled("ceiling")).value == 1
        assert defect(load_bundled("quad_hold")).value == 3

    def test_bounds(self):
        for name in ("gauss", "pythagorean", "index4", "quad_fail"):
            T = load_bundled(name)
            rep = defect(T)
            longest = max(len(w) for w in T.words)
            assert 1 <= rep.value <= 2 * longest
            for b in rep.branches:
                assert len(b.vertices) == 2 * len(T.words[b.branch])


class TestSerret:
    def test_failing_map_with_witness(self):
        v = serret_check(load_bundled("quad_fail"))
        assert v.status == "fails"
        w = v.witness
        assert w.alpha == QuadIrr.sqrt(3)
        assert w.beta == QuadIrr.sqrt(3) + 1
        assert w.orbit_alpha == UPWord((), (2,))
        assert w.orbit_beta == UPWord((), (3, 0))
        assert mobius_apply(w.state_matrix, w.alpha) == w.beta
        assert not tail_equivalent(w.orbit_alpha, w.orbit_beta)

    def test_copy_certificate(self):
        v = serret_check(load_bundled("quad_hold"))
        assert v.status == "holds" and v.certificate == "copy"

    def test_trivial_certificates(self):
        assert serret_check(load_bundled("pythagorean")).certificate == "trivial"
        assert serret_check(load_bundled("ceiling")).certificate == "trivial"
        assert serret_check(load_bundled("index4")).certificate == "trivial"

    def test_witness_reverified_by_orbits(self):
        T = load_bundled("quad_fail")
        v = serret_check(T)
        w = v.witness
        assert orbit(T, w.alpha).word == w.orbit_alpha
        assert orbit(T, w.beta).word == w.orbit_beta

    def test_witness_points_are_group_equivalent(self):
        from serretlab.graph import contains
        T, g, s, _ = machinery("quad_fail")
        w = serret_check(T).witness
        assert contains(s, w.state_matrix)

    def test_bound_validation(self):
        with pytest.raises(ValueError):
            serret_check(load_bundled("quad_hold"), bound=1)

    def test_exhausted_budget_is_undecided(self):
        v = serret_check(load_bundled("quad_fail"), walk_budget=0)
        assert v.status == "undecided"
        assert v.sampling["budget_exhausted"]
        assert v.sampling["runs"] > 0


class TestTransductionOracles:
    """The two transducer identities, checked against stepped orbits on
    200 seeded quadratic points for every bundled algorithm."""

    def test_coding_to_orbit_on_bundled(self):
        import random
        from serretlab.expansion import ln_expansion
        from serretlab.presets import BUNDLED
        from serretlab.randomgen import random_quadirr_pool
        rng = random.Random(424242)
        points = random_quadirr_pool(rng, 200)
        codings = {x: ln_expansion(x) for x in points}
        for name in BUNDLED:
            T, g, _, _ = machinery(name)
            t = gt_transducer(g)
            for x in points:
                assert t.run("1", codings[x]) == orbit(T, x).word, (name, x)

    def test_orbit_rewriting_from_every_state(self):
        import random
        from serretlab.presets import BUNDLED
        from serretlab.randomgen import random_quadirr_pool
        rng = random.Random(97)
        points = random_quadirr_pool(rng, 12)
        for name in BUNDLED:
            T, g, _, phi = machinery(name)
            ft, _ = build_ft(T, g, phi)
            for x in points:
                word = orbit(T, x).word
                for state in ft.states:
                    beta = mobius_apply(g.vertex_matrix(state), x)
                    assert ft.run(state, word) == orbit(T, beta).word, \
                        (name, state, x)


class TestSync:
    def test_shortest_word_length_two(self):
        _, g, _, _ = machinery("quad_fail")
        t = root_component(gt_transducer(g))
        r = sync_check(t)
        assert r.synchronizing and r.word == ("L", "L")
        assert r.states == 3 and r.pair_graph_size == 6

    def test_resets_every_state(self):
        _, g, _, _ = machinery("quad_fail")
        t = root_component(gt_transducer(g))
        r = sync_check(t)
        ends = {t.walk(s, r.word)[0] for s in t.states}
        assert len(ends) == 1

    def test_not_synchronizing(self):
        _, g, _, _ = machinery("eight_cell")
        t = root_component(gt_transducer(g))
        r = sync_check(t)
        assert not r.synchronizing
        assert r.states == 14 and r.pair_graph_size == 105

    def test_single_state(self):
        _, g, _, _ = machinery("ceiling")
        t = root_component(gt_transducer(g))
        r = sync_check(t)
        assert r.synchronizing and r.word == ()

    def test_greedy_word_when_large(self):
        _, g, _, _ = machinery("quad_fail")
        t = root_component(gt_transducer(g))
        r = sync_check(t, exact_limit=0)
        ends = {t.walk(s, r.word)[0] for s in t.states}
        assert len(ends) == 1

    def test_sampling_collapses(self):
        _, g, _, _ = machinery("quad_fail")
        t = root_component(gt_transducer(g))
        report = sync_sample(t, 500, 64, seed=3)
        assert report["fraction"] == 0.0

    def test_sampling_on_unsynchronizable(self):
        _, g, _, _ = machinery("eight_cell")
        t = root_component(gt_transducer(g))
        report = sync_sample(t, 200, 64, seed=3)
        assert report["fraction"] == 1.0
