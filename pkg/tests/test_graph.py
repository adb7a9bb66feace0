import pytest

from serretlab.algebra import F, IDENTITY, eval_word
from serretlab.algorithm import validate
from serretlab.graph import (SRS, SR2SF, SRSF, SchreierGraph, build_graph,
                             contains, export_dot, fingerprint,
                             schreier_quotient)
from serretlab.presets import load_bundled


def quotient(spec):
    T = spec if not isinstance(spec, (list, str)) else validate(spec)
    return schreier_quotient(build_graph(T))


class TestTwoBranchPanels:
    """The four minimal algorithms and their graphs."""

    def test_loops_panel(self):
        g = build_graph(validate(["L", "N"]))
        assert g.vertices == ("1", "2")
        assert g.edges["1"] == {"L": "1", "N": "1", "F": "2"}
        assert g.edges["2"] == {"L": "2", "N": "2", "F": "1"}

    def test_mixed_panel(self):
        g = build_graph(validate(["L", "NF"]))
        assert g.edges["1"] == {"L": "1", "N": "2", "F": "2"}
        assert g.edges["2"] == {"L": "1", "N": "2", "F": "1"}

    def test_crossing_panel(self):
        g = build_graph(validate(["LF", "NF"]))
        assert g.edges["1"] == {"L": "2", "N": "2", "F": "2"}
        assert g.edges["2"] == {"L": "1", "N": "1", "F": "1"}

    def test_flip_panel(self):
        g = build_graph(validate(["LF", "N"]))
        assert g.edges["1"] == {"L": "2", "N": "1", "F": "2"}
        assert g.edges["2"] == {"L": "2", "N": "1", "F": "1"}

    def test_indices(self):
        assert [quotient(spec)[0].index
                for spec in (["L", "N"], ["L", "NF"], ["LF", "NF"], ["LF", "N"])] \
            == [2, 1, 2, 1]

    def test_schreier_structures(self):
        s, _ = quotient(["L", "N"])
        assert s == SchreierGraph(2, {"L": (0, 1), "N": (0, 1), "F": (1, 0)})
        s, _ = quotient(["LF", "NF"])
        assert s == SchreierGraph(2, {"L": (1, 0), "N": (1, 0), "F": (1, 0)})
        for spec in (["L", "NF"], ["LF", "N"]):
            s, _ = quotient(spec)
            assert s == SchreierGraph(1, {"L": (0,), "N": (0,), "F": (0,)})

    def test_already_schreier_is_unchanged(self):
        for spec in (["L", "N"], ["LF", "NF"]):
            g = build_graph(validate(spec))
            s, phi = schreier_quotient(g)
            assert len(set(phi.vertex_map.values())) == len(g.vertices)


class TestIndexFourMap:
    def test_graph_shape(self):
        g = build_graph(load_bundled("index4"))
        assert sorted(g.vertices) == sorted(
            ["1", "L", "LL", "LN", "2", "LF", "LLF", "LNF"])
        assert g.edges["1"] == {"L": "L", "N": "1", "F": "2"}
        assert g.edges["LN"] == {"L": "1", "N": "2", "F": "LNF"}
        assert g.edges["L"] == {"L": "LL", "N": "LN", "F": "LF"}
        assert g.edges["LL"] == {"L": "1", "N": "2", "F": "LLF"}
        assert g.edges["2"] == {"L": "2", "N": "LF", "F": "1"}
        assert g.edges["LF"] == {"L": "LNF", "N": "LLF", "F": "L"}
        assert g.edges["LNF"] == {"L": "1", "N": "2", "F": "LN"}
        assert g.edges["LLF"] == {"L": "1", "N": "2", "F": "LL"}

    def test_quotient(self):
        s, phi = quotient(load_bundled("index4"))
        assert s.index == 4
        assert s == SchreierGraph(4, {
            "L": (1, 3, 2, 0), "N": (0, 3, 1, 2), "F": (2, 1, 0, 3)})
        # the four classes: root; {L, LF}; the covertex; the glued quartet
        assert phi.vertex_map["L"] == phi.vertex_map["LF"]
        assert len({phi.vertex_map[v] for v in ("LN", "LL", "LNF", "LLF")}) == 1
        phi.check()


class TestFullGroupMap:
    def test_trivial_quotient(self):
        T = load_bundled("eight_cell")
        g = build_graph(T)
        assert len(g.vertices) == 14
        s, phi = quotient(T)
        assert s.index == 1
        assert phi.root_fiber == g.vertices

    def test_opfibration_properties(self):
        for name in ("ceiling", "gauss", "pythagorean", "index4",
                      "quad_fail", "quad_hold", "eight_cell"):
            _, phi = quotient(load_bundled(name))
            phi.check()


class TestContains:
    def test_flip_membership(self):
        s, _ = quotient(load_bundled("eight_cell"))
        assert contains(s, F)
        s, _ = quotient(["L", "N"])
        assert not contains(s, F)

    def test_neighbour_relation(self):
        s, _ = quotient(["L", "N"])
        assert contains(s, eval_word("N'L"))

    def test_generators_belong(self):
        for name in ("pythagorean", "index4", "quad_fail"):
            T = load_bundled(name)
            s, _ = quotient(T)
            for m in T.branches:
                assert contains(s, m)
                assert contains(s, m.inverse())

    def test_identity_always_belongs(self):
        for name in ("gauss", "index4"):
            s, _ = quotient(load_bundled(name))
            assert contains(s, IDENTITY)


class TestFingerprint:
    def test_indices(self):
        assert fingerprint(load_bundled("index4")).index == 4
        assert fingerprint(load_bundled("pythagorean")).index == 3

    def test_forced_element_present(self):
        for name in ("ceiling", "gauss", "farey", "flip", "pythagorean",
                      "index4", "quad_fail", "quad_hold", "eight_cell"):
            fp = fingerprint(load_bundled(name))
            assert fp.has_srs or fp.has_srsf or fp.has_sr2sf

    def test_parity_classes(self):
        fp = fingerprint(validate(["LL", "LN", "NL", "NN"]))
        assert fp.parity_class == "R_SRS" and fp.index == 4
        fp = fingerprint(load_bundled("quad_fail"))
        assert fp.parity_class == "Gamma" and fp.index == 2
        assert fingerprint(load_bundled("gauss")).parity_class is None

    def test_in_gamma_iff_proper_root_component(self):
        # group sits in the orientation-preserving half iff the L/N-only
        # component of the root is a proper part of the graph
        from serretlab.transducer import gt_transducer
        for name in ("ceiling", "gauss", "farey", "flip", "pythagorean",
                      "index4", "quad_fail", "quad_hold", "eight_cell"):
            T = load_bundled(name)
            g = build_graph(T)
            t = gt_transducer(g)
            proper = len(t.reachable_from("1")) < len(g.vertices)
            assert fingerprint(T).in_gamma == proper


class TestDot:
    def test_two_vertex_graph(self):
        g = build_graph(validate(["L", "N"]))
        dot = export_dot(g)
        lines = [ln for ln in dot.splitlines() if "->" in ln]
        assert len(lines) == 5  # four loops and one flip edge
        assert dot.count('style=dotted') == 1

    def test_single_vertex_schreier(self):
        s, _ = quotient(["LF", "N"])
        dot = export_dot(s)
        lines = [ln for ln in dot.splitlines() if "->" in ln]
        assert len(lines) == 3

    def test_index_four_nodes(self):
        s, _ = quotient(load_bundled("index4"))
        dot = export_dot(s)
        nodes = [ln for ln in dot.splitlines() if ln.strip().endswith('";')]
        assert len(nodes) == 4

    def test_deterministic(self):
        g = build_graph(load_bundled("pythagorean"))
        assert export_dot(g) == export_dot(g)


class TestQuotientStability:
    def test_relations_hold_on_quotient(self):
        # every label is a permutation and the defining relations act
        # trivially from every coset
        for name in ("gauss", "pythagorean", "index4", "eight_cell",
                      "quad_fail"):
            s, _ = quotient(load_bundled(name))
            for v in range(s.n):
                assert s.walk("NL'NNL'N", v) == v
                assert s.walk("LN'LN'LN'", v) == v
                assert s.walk("FF", v) == v


def _group_ball(generators, radius, limit=400_000):
    """All products of at most `radius` generators, as a matrix set."""
    ball = {eval_word("")}
    frontier = set(ball)
    for _ in range(radius):
        frontier = {m * g for m in frontier for g in generators} - ball
        ball |= frontier
        if len(ball) > limit:
            raise AssertionError("ball grew past the safety limit")
    return ball


class TestGroupCrossValidation:
    """Certify the quotient against the group itself, in both directions:
    explicit branch-group elements must fix the root coset, and the
    claimed root-fiber elements must be reachable as explicit products of
    branches."""

    def test_branch_ball_fixes_root(self):
        for name in ("ceiling", "gauss", "farey", "flip", "pythagorean",
                      "index4", "quad_fail", "quad_hold"):
            T = load_bundled(name)
            s, _ = quotient(T)
            gens = list(T.branches) + [m.inverse() for m in T.branches]
            for m in _group_ball(gens, 3):
                assert contains(s, m), (name, m)

    def test_root_fiber_is_certified_in_the_group(self):
        for name in ("ceiling", "gauss", "pythagorean", "index4",
                      "quad_fail", "quad_hold"):
            T = load_bundled(name)
            g = build_graph(T)
            _, phi = schreier_quotient(g)
            targets = {g.vertex_matrix(v) for v in phi.root_fiber}
            gens = list(T.branches) + [m.inverse() for m in T.branches]
            found = {eval_word("")}
            frontier = set(found)
            for _ in range(6):
                if targets <= found:
                    break
                frontier = {m * x for m in frontier for x in gens} - found
                found |= frontier
            assert targets <= found, (name, targets - found)

    def test_forced_element_is_certified(self):
        # the positive membership claims of the fingerprint are realized by
        # explicit products of branch generators
        for name in ("ceiling", "gauss", "pythagorean", "index4",
                      "quad_fail", "quad_hold"):
            T = load_bundled(name)
            s, _ = quotient(T)
            fp = fingerprint(T, s)
            claimed = {m for m, has in ((SRS, fp.has_srs), (SRSF, fp.has_srsf),
                                        (SR2SF, fp.has_sr2sf)) if has}
            gens = list(T.branches) + [m.inverse() for m in T.branches]
            ball = {eval_word("")}
            frontier = set(ball)
            for _ in range(7):
                if claimed <= ball:
                    break
                frontier = {m * g for m in frontier for g in gens} - ball
                ball |= frontier
            assert claimed <= ball, (name, claimed - ball)
