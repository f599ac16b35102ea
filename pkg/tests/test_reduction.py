from __future__ import annotations

import json

import pytest

from hyperpd.hypergraphs import Hypergraph, HypergraphError, dual_hypergraph, hypergraph_from_json_dict
from hyperpd.ideals import parse_ideal
from hyperpd.reduction import (
    RULE_BRANCH_COLON,
    RULE_BRANCH_VERTEX,
    RULE_CLOSED,
    RULE_JOINT,
    RULE_UNION,
    ReductionError,
    ReductionTrace,
    TraceStep,
    branch_reduce,
    check_preconditions,
    full_reduce,
    remove_closed_vertex_edges,
    remove_joints,
    remove_union_edges,
    replay_trace,
)

FIVE_GEN = "ab,bcg,cdg,de,efg"

# state of the 43-vertex fixture straight after the joint pass, frozen
# from an audited run (joints 14, 15, 27, 30, 38 in ascending order)
FIG4_JOINTS = [14, 15, 27, 30, 38]
FIG4_SURVIVING_PAIRS = [
    (1, 10), (2, 10), (3, 11), (4, 11), (5, 10), (5, 12), (6, 10), (6, 11),
    (7, 26), (8, 26), (9, 26), (11, 13), (12, 26), (16, 17), (17, 43),
    (18, 19), (21, 22), (24, 25), (28, 29), (31, 32), (33, 34), (33, 37),
    (35, 36), (39, 40), (41, 42),
]
FIG4_SURVIVING_HIGHERS = [(5, 6, 11, 12), (16, 24, 28, 29), (18, 35, 36), (39, 40, 41)]
FIG4_ORIGINAL_CLOSED = {1, 2, 3, 4, 6, 7, 8, 9, 15, 19, 20, 22, 23, 25, 27, 30, 32, 34, 36, 40, 42, 43}
FIG4_NEWLY_CLOSED = [13, 16, 17, 18, 21, 24, 26, 28, 29, 31, 33, 35, 37, 39, 41]


def _figure4():
    with open("fixtures/figure4.json") as f:
        return hypergraph_from_json_dict(json.load(f))


def test_union_removal_on_five_gen():
    H = dual_hypergraph(parse_ideal(FIVE_GEN))
    out, trace = remove_union_edges(H)
    assert [s.edge for s in trace.steps] == [(2, 3, 5)]
    assert all(s.rule == RULE_UNION for s in trace.steps)
    # what is left is the string 1-2-3-4-5 with closed ends
    assert out.edges == ((1,), (1, 2), (2, 3), (3, 4), (4, 5), (5,))


def test_union_removal_never_touches_pairs_or_singletons():
    H = Hypergraph([(1,), (2,), (1, 2)])
    out, trace = remove_union_edges(H)
    assert out == H
    assert trace.steps == []


def test_union_removal_lenient_keeps_non_union_higher_edges():
    # (1,2,3) is not a union of the other edges
    H = Hypergraph([(1, 2), (3, 4), (1, 2, 3)])
    out, trace = remove_union_edges(H)
    assert out.has_edge((1, 2, 3))
    assert any("kept" in note for note in trace.notes)


def test_union_removal_strict_refuses_non_union_higher_edges():
    H = Hypergraph([(1, 2), (3, 4), (1, 2, 3)])
    with pytest.raises(ReductionError, match="not a union"):
        remove_union_edges(H, strict=True)


def test_strict_mode_accepts_pure_union_higher_edges():
    H = dual_hypergraph(parse_ideal(FIVE_GEN))
    out, _ = remove_union_edges(H, strict=True)
    assert out.higher_edges() == ()


def test_closed_edge_removal():
    H = Hypergraph([(1,), (2,), (1, 2)])
    out, trace = remove_closed_vertex_edges(H)
    assert out.edges == ((1,), (2,))
    assert [s.rule for s in trace.steps] == [RULE_CLOSED]

    untouched = Hypergraph([(1,), (1, 2), (2, 3), (3,)])
    out2, trace2 = remove_closed_vertex_edges(untouched)
    assert out2 == untouched
    assert trace2.steps == []

    single = Hypergraph([(1,)])
    assert remove_closed_vertex_edges(single)[0] == single


def test_preconditions_pass_on_five_gen_and_fixture():
    assert check_preconditions(dual_hypergraph(parse_ideal(FIVE_GEN))).all_ok
    pre = check_preconditions(_figure4())
    assert pre.all_ok
    assert pre.to_json_dict() == {
        "bush": True,
        "higher_edges_same_joint": True,
        "no_connected_closed": True,
    }


def test_preconditions_flag_long_branch():
    H = Hypergraph([(1, 2), (1, 3), (1, 4), (4, 5), (5, 6), (2,), (3,), (6,)])
    pre = check_preconditions(H)
    assert not pre.bush
    assert not pre.all_ok
    assert "kind other" in pre.witnesses["bush"]


def test_preconditions_flag_higher_edge_across_joints():
    H = Hypergraph([
        (1, 2), (1, 3), (1, 4), (5, 6), (5, 7), (5, 8), (1, 5),
        (2,), (3,), (4,), (6,), (7,), (8,),
        (2, 4, 6),
    ])
    pre = check_preconditions(H)
    assert pre.bush
    assert not pre.higher_edges_same_joint
    assert pre.witnesses["higher_edges_same_joint"] == (
        "edge [2, 4, 6] meets branches of joints [1, 5]"
    )


def test_preconditions_flag_connected_closed_pair():
    pre = check_preconditions(Hypergraph([(1,), (2,), (1, 2)]))
    assert not pre.no_connected_closed
    assert "pair edge [1, 2]" in pre.witnesses["no_connected_closed"]


def test_joint_removal_needs_length_two_branch():
    # every branch has length 1, so nothing qualifies
    H = Hypergraph([(1, 2), (1, 3), (1, 4), (2,), (3,), (4,)])
    out, trace = remove_joints(H)
    assert out == H
    assert trace.steps == []


def test_joint_removal_refuses_bad_preconditions():
    with pytest.raises(ReductionError, match="preconditions"):
        remove_joints(Hypergraph([(1,), (2,), (1, 2)]))


def test_joint_removal_on_fixture_matches_frozen_decode():
    out, trace = remove_joints(_figure4())
    assert [s.vertex for s in trace.steps] == FIG4_JOINTS
    assert all(s.rule == RULE_JOINT for s in trace.steps)
    assert sorted(e for e in out.edges if len(e) == 2) == FIG4_SURVIVING_PAIRS
    assert sorted(e for e in out.edges if len(e) >= 3) == FIG4_SURVIVING_HIGHERS
    closed = {v for v in out.vertices if out.is_closed(v)}
    assert sorted(closed - FIG4_ORIGINAL_CLOSED) == FIG4_NEWLY_CLOSED


def test_joint_removal_closes_former_neighbors():
    # removing the joint turns its branch stubs into closed singletons
    H = Hypergraph([(1, 2), (2, 3), (1, 4), (1, 5), (3,), (4,), (5,)])
    out, trace = remove_joints(H)
    assert [s.vertex for s in trace.steps] == [1]
    assert out.is_closed(2)
    assert out.is_closed(4)
    assert out.is_closed(5)


def test_branch_reduce_length_one_drops_connecting_edge():
    H = Hypergraph([(1, 2), (1, 3), (1, 4), (1, 5), (2,), (3,), (4,), (5,)])
    out, trace = branch_reduce(H, 1, [5])
    assert not out.has_edge((1, 5))
    assert [s.rule for s in trace.steps] == [RULE_BRANCH_COLON]
    assert trace.steps[0].edge == (1, 5)


def test_branch_reduce_length_two_removes_joint():
    H = Hypergraph([(1, 2), (2, 3), (1, 4), (1, 5), (3,), (4,), (5,)])
    out, trace = branch_reduce(H, 1, [2, 3])
    assert [s.rule for s in trace.steps] == [RULE_BRANCH_VERTEX]
    assert trace.steps[0].vertex == 1
    assert 1 not in out.vertices
    assert out.is_closed(2)


def test_branch_reduce_length_three_refuses():
    H = Hypergraph([(1, 2), (2, 3), (3, 6), (1, 4), (1, 5), (6,), (4,), (5,)])
    with pytest.raises(ReductionError, match="divisible by 3"):
        branch_reduce(H, 1, [2, 3, 6])


def test_branch_reduce_input_validation():
    H = Hypergraph([(1, 2), (2, 3), (1, 4), (1, 5), (3,), (4,), (5,)])
    with pytest.raises(ReductionError, match="not a joint"):
        branch_reduce(H, 2, [3])
    with pytest.raises(ReductionError, match="not joined"):
        branch_reduce(H, 1, [3])
    with pytest.raises(ReductionError, match="empty branch"):
        branch_reduce(H, 1, [])
    with pytest.raises(ReductionError, match="not an endpoint"):
        branch_reduce(H, 1, [2])
    closed_interior = Hypergraph([(1, 2), (2, 3), (1, 4), (1, 5), (2,), (3,), (4,), (5,)])
    with pytest.raises(ReductionError, match="closed"):
        branch_reduce(closed_interior, 1, [2, 3])
    with_higher = Hypergraph([(1, 2), (2, 3), (1, 4), (1, 5), (3,), (4,), (5,), (4, 5, 2)])
    with pytest.raises(ReductionError, match="1-dimensional"):
        branch_reduce(with_higher, 1, [2, 3])


def test_trace_jsonl_round_trip():
    _, trace = full_reduce(_figure4())
    text = trace.to_jsonl()
    again = ReductionTrace.from_jsonl(text)
    assert again.steps == trace.steps
    for line in text.strip().splitlines():
        step = json.loads(line)
        assert step["rule"] in {
            RULE_UNION, RULE_CLOSED, RULE_JOINT, RULE_BRANCH_COLON, RULE_BRANCH_VERTEX,
        }
        assert step["cite"]


def test_trace_replay_reproduces_reduction():
    H = _figure4()
    reduced, trace = full_reduce(H)
    assert len(trace.steps) == 24
    assert replay_trace(H, trace) == reduced


def test_replay_rejects_malformed_steps():
    H = Hypergraph([(1, 2), (2, 3)])
    with pytest.raises(ReductionError, match="unknown trace rule"):
        replay_trace(H, ReductionTrace([TraceStep("made_up", edge=(1, 2))]))
    with pytest.raises(ReductionError, match="lacks an edge"):
        replay_trace(H, ReductionTrace([TraceStep(RULE_UNION)]))
    with pytest.raises(ReductionError, match="lacks a vertex"):
        replay_trace(H, ReductionTrace([TraceStep(RULE_JOINT)]))
    with pytest.raises(HypergraphError):
        replay_trace(H, ReductionTrace([TraceStep(RULE_UNION, edge=(1, 3))]))


def test_full_reduce_is_idempotent():
    for H in (
        dual_hypergraph(parse_ideal(FIVE_GEN)),
        _figure4(),
        Hypergraph([(1, 2), (2, 3), (1, 4), (1, 5), (3,), (4,), (5,)]),
    ):
        reduced, _ = full_reduce(H)
        again, trace = full_reduce(reduced)
        assert again == reduced
        assert trace.steps == []


def test_full_reduce_reaches_isolated_closed_vertices():
    # 2-star with one length-2 branch collapses completely
    H = Hypergraph([(1, 2), (2, 3), (1, 4), (1, 5), (3,), (4,), (5,)])
    reduced, trace = full_reduce(H)
    assert set(reduced.edges) == {(v,) for v in reduced.vertices}
    assert {s.rule for s in trace.steps} == {RULE_JOINT, RULE_CLOSED}


def test_full_reduce_skips_components_failing_preconditions():
    bad = Hypergraph([(1, 2), (1, 3), (1, 4), (4, 5), (5, 6), (2,), (3,), (6,)])
    reduced, trace = full_reduce(bad)
    # no joint step may fire on a non-bush component
    assert all(s.rule != RULE_JOINT for s in trace.steps)
    assert 1 in reduced.vertices
