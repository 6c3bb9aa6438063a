import json
import pathlib

import pytest

from btquot.algebra import FieldSpec
from btquot.btree import Matrix2
from btquot.hecke import parse_level
from btquot.presentation import (PresentationError,
                                 abelianization_of_line_amalgam,
                                 amalgam_example_check,
                                 build_graph_of_groups, emit_presentation,
                                 presentation_json, presentation_text,
                                 smith_normal_form)
from btquot.quotient import build_quotient, certify_cusps

GOLDEN = pathlib.Path(__file__).parent / "golden"

_cache = {}


def line_setup(q, depth=8):
    if (q, depth) not in _cache:
        decomp = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1)}
        field = FieldSpec(*decomp[q])
        Q = build_quotient(parse_level("t", field), depth)
        certify_cusps(Q, 3)
        G = build_graph_of_groups(Q)
        _cache[(q, depth)] = (Q, G)
    return _cache[(q, depth)]


class TestSmithNormalForm:
    def test_basic(self):
        assert smith_normal_form([[2, 0], [0, 2], [1, 1]], 2) == (1, 2)
        assert smith_normal_form([[6, 0], [0, 10]], 2) == (2, 30)
        assert smith_normal_form([[2, 4, 4]], 3) == (2, 0, 0)
        assert smith_normal_form([], 2) == (0, 0)

    def test_torus_quotient(self):
        rows = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2],
                [1, 0, 1, 0], [0, 1, 0, 1]]
        assert smith_normal_form(rows, 4) == (1, 1, 2, 2)

    def test_divisibility_chain(self):
        import random
        rng = random.Random(31)
        for _ in range(40):
            rows = [[rng.randint(-6, 6) for _ in range(3)]
                    for _ in range(rng.randint(1, 4))]
            fs = smith_normal_form(rows, 3)
            for a, b in zip(fs, fs[1:]):
                if a and b:
                    assert b % a == 0
                if a == 0:
                    assert b == 0


class TestGraphOfGroups:
    def test_line_structure(self):
        Q, G = line_setup(3)
        assert not G.y_classes
        assert len(G.tails) == 2
        assert len(G.spanning_tree) == len(Q.edges)
        assert all(e.in_tree for e in G.edges)
        assert all(e.g_y == Matrix2.identity(Q.field) for e in G.edges)

    def test_lift_coherence(self):
        from btquot.btree import distance
        Q, G = line_setup(3)
        for e in G.edges:
            assert distance(G.lifts[e.src], e.lift_dst) == 1
            assert G.lifts[e.dst] == e.lift_dst  # tree edges lift on the nose

    def test_edge_groups_inject(self):
        from btquot.btree import act
        Q, G = line_setup(3)
        for e in G.edges:
            if e.edge_group is None:
                continue
            for h in e.edge_group:
                assert act(h, e.lift_src) == e.lift_src
                assert act(h, e.lift_dst) == e.lift_dst
            assert len({h.key() for h in e.edge_group}) == len(e.edge_group)

    def test_requires_certified_cusps(self):
        field = FieldSpec(2)
        Q = build_quotient(parse_level("t", field), 6)
        with pytest.raises(PresentationError):
            build_graph_of_groups(Q)

    def test_ray_graph_level_zero(self):
        field = FieldSpec(2)
        Q = build_quotient(parse_level("0", field), 8)
        certify_cusps(Q, 3)
        G = build_graph_of_groups(Q)
        assert len(G.tails) == 1
        assert G.y_classes == (0,)  # the base class stays in the finite part


class TestEmitPresentation:
    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_golden(self, q):
        Q, G = line_setup(q)
        P = emit_presentation(G)
        text = presentation_text(P, Q)
        golden = (GOLDEN / ("amalgam_q%d.txt" % q)).read_text()
        assert text == golden

    def test_every_relation_is_identity(self):
        Q, G = line_setup(3)
        P = emit_presentation(G)
        named = dict(P.generators)
        ident = Matrix2.identity(Q.field)
        assert P.relations
        for rel in P.relations:
            acc = ident
            for name, exp in rel:
                g = named[name]
                g = g.inverse() if exp < 0 else g
                for _ in range(abs(exp)):
                    acc = acc @ g
            assert acc == ident

    def test_json_mirror(self):
        Q, G = line_setup(3)
        P = emit_presentation(G)
        doc = json.loads(presentation_json(P, Q))
        assert doc["level"] == "t"
        assert len(doc["tails"]) == 2
        assert all(t["junction_order"] == 4 for t in doc["tails"])

    def test_single_tail_has_no_cross_relations(self):
        field = FieldSpec(2)
        Q = build_quotient(parse_level("0", field), 8)
        certify_cusps(Q, 3)
        P = emit_presentation(build_graph_of_groups(Q))
        # v0 group is GL2(F_2) (order 6), one tail; relations are orders and
        # the single junction identification set
        assert P.tail_summaries[0].splitness == "indeterminate"


class TestAbelianization:
    @pytest.mark.parametrize("q,order", [(3, 4), (4, 9), (5, 16)])
    def test_orders(self, q, order):
        Q, G = line_setup(q)
        ab = abelianization_of_line_amalgam(G)
        assert ab["order"] == order
        assert ab["is_torus_squared"]
        assert ab["invariant_factors"] == (q - 1, q - 1)

    def test_rejects_q2(self):
        Q, G = line_setup(2)
        with pytest.raises(PresentationError):
            abelianization_of_line_amalgam(G)

    def test_rejects_wrong_shape(self):
        field = FieldSpec(3)
        Q = build_quotient(parse_level("0", field), 8)
        certify_cusps(Q, 3)
        G = build_graph_of_groups(Q)
        with pytest.raises(PresentationError):
            abelianization_of_line_amalgam(G)


class TestAmalgamExample:
    @pytest.mark.parametrize("q", [2, 3])
    def test_passes(self, q):
        decomp = {2: (2, 1), 3: (3, 1)}
        rep = amalgam_example_check(FieldSpec(*decomp[q]), depth=6)
        failed = [c for c in rep["checks"] if not c[1]]
        assert rep["passed"], failed


class TestNonTreeEdges:
    """The cubed level over F_2 has a cycle in its finite part, so the
    graph of groups genuinely needs a non-tree witness g_y."""

    def test_cycle_yields_verified_h_generator(self):
        from btquot.btree import act
        from btquot.hecke import is_member
        field = FieldSpec(2)
        Q = build_quotient(parse_level("t^3", field), 12)
        certify_cusps(Q, 3)
        assert len(Q.edges) > len(Q.classes) - 1  # a genuine cycle
        G = build_graph_of_groups(Q)
        nontree = [e for e in G.edges if not e.in_tree]
        total_strands = sum(e.multiplicity for e in Q.edges)
        assert len(nontree) == total_strands - (len(Q.classes) - 1)
        assert nontree
        for e in nontree:
            assert is_member(e.g_y, Q.level)
            assert act(e.g_y, G.lifts[e.dst]) == e.lift_dst
        P = emit_presentation(G)
        hnames = [n for n, _ in P.generators if n.startswith("h")]
        assert len(hnames) == len(nontree)

    def test_multi_edge_strands(self):
        # q=3, cubed level: a multiplicity-2 quotient edge; every strand
        # beyond the spanning tree carries its own verified witness
        field = FieldSpec(3)
        Q = build_quotient(parse_level("t^3", field), 10)
        certify_cusps(Q, 3)
        assert any(e.multiplicity > 1 for e in Q.edges)
        G = build_graph_of_groups(Q)
        from btquot.btree import act
        from btquot.hecke import is_member
        nontree = [e for e in G.edges if not e.in_tree]
        assert nontree
        for e in nontree:
            assert is_member(e.g_y, Q.level)
            assert act(e.g_y, G.lifts[e.dst]) == e.lift_dst
