import random
from fractions import Fraction

import pytest

from conftest import random_nonzero_poly
from toriclg import laurent, mutation, period
from toriclg.errors import InvalidChange, NotLaurent, NotUnimodular

V3 = ("x", "y", "z")
V4 = ("x", "y", "z", "t")


def test_quadric_cluster_example():
    f0 = laurent.parse("(x+1)^2/(x*y*z)+y+z")
    change = mutation.elementary_cluster(1, [0], V3)
    f1 = mutation.apply_cluster(f0, change)
    assert f1 == laurent.parse("(x+1)/(x*y*z)+y*(x+1)+z")


def test_cubic_cluster_example():
    f0 = laurent.parse("(x+y+1)^3/(x*y*z)+z")
    change = mutation.elementary_cluster(2, [0, 1], V3)
    f1 = mutation.apply_cluster(f0, change)
    assert f1 == laurent.parse("(x+y+1)^2/(x*y*z)+z*(x+y+1)")


def test_identity_factor_changes_nothing():
    f0 = laurent.parse("(x+1)^2/(x*y*z)+y+z")
    assert mutation.apply_cluster(f0, mutation.elementary_cluster(1, [], V3)) == f0


def test_cluster_then_opposite_sign_inverts():
    f0 = laurent.parse("(x+1)^2/(x*y*z)+y+z")
    factor = laurent.parse("x+1", V3)
    forward = mutation.apply_cluster(f0, mutation.ClusterChange(1, -1, factor))
    back = mutation.apply_cluster(forward, mutation.ClusterChange(1, 1, factor))
    assert back == f0

    rng = random.Random(17)
    done = 0
    while done < 20:
        f = random_nonzero_poly(rng, 3, max_terms=5, exp_bound=3)
        sign = rng.choice((1, -1))
        change = mutation.ClusterChange(2, sign, laurent.parse("x+y+1", V3))
        try:
            g = mutation.apply_cluster(f, change)
        except NotLaurent:
            continue
        opposite = mutation.ClusterChange(2, -sign, laurent.parse("x+y+1", V3))
        assert mutation.apply_cluster(g, opposite) == f
        done += 1


def test_cluster_preserves_periods():
    f0 = laurent.parse("(x+1)^2/(x*y*z)+y+z")
    f1 = mutation.apply_cluster(f0, mutation.elementary_cluster(1, [0], V3))
    assert period.periods_equal(f0, f1, 8)
    g0 = laurent.parse("(x+y+1)^3/(x*y*z)+z")
    g1 = mutation.apply_cluster(g0, mutation.elementary_cluster(2, [0, 1], V3))
    assert period.periods_equal(g0, g1, 8)


def test_cluster_validation():
    with pytest.raises(InvalidChange):
        mutation.ClusterChange(1, 2, laurent.parse("x+1", V3))
    with pytest.raises(InvalidChange):
        mutation.ClusterChange(0, 1, laurent.zero(V3))
    with pytest.raises(InvalidChange):
        mutation.ClusterChange(0, 1, laurent.parse("x+1", V3))
    with pytest.raises(InvalidChange):
        mutation.elementary_cluster(1, [1], V3)
    f = laurent.parse("x+y")
    with pytest.raises(InvalidChange):
        mutation.apply_cluster(f, mutation.ClusterChange(5, 1, laurent.parse("x+1", V3)))


def test_cluster_not_laurent_when_division_fails():
    f = laurent.parse("1/y + x", V3)
    with pytest.raises(NotLaurent):
        mutation.apply_cluster(f, mutation.ClusterChange(1, -1, laurent.parse("x+1", V3)))


def test_toric_change_validation():
    with pytest.raises(NotUnimodular):
        mutation.ToricChange(((2, 0), (0, 1)), (0, 0), (1, 1))
    with pytest.raises(InvalidChange):
        mutation.ToricChange(((1, 0), (0, 1)), (0, 0), (0, 1))
    with pytest.raises(InvalidChange):
        mutation.ToricChange(((1, 0), (0, 1)), (0, 0, 0), (1, 1))


def test_apply_toric_delegates():
    f = laurent.parse("x + y + 1/(x*y)")
    rot = mutation.ToricChange(((0, 1), (1, 0)), (0, 0), (1, 1))
    assert mutation.apply_toric(f, rot) == f
    shift = mutation.ToricChange(((1, 0), (0, 1)), (1, 0), (1, 1))
    assert mutation.apply_toric(f, shift) == laurent.mul(f, laurent.parse("x", ("x", "y")))


def test_equivalent_up_to_toric_reflexive():
    f = laurent.parse("(x+1)^2/(x*y*z)+y+z")
    w = mutation.equivalent_up_to_toric(f, f)
    assert w is not None
    assert w.matrix == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert w.shift == (0, 0, 0)
    assert mutation.apply_toric(f, w) == f


def test_equivalent_up_to_toric_symmetric_witness():
    f0 = laurent.parse("(x+1)^2/(x*y*z)+y+z")
    change = mutation.elementary_cluster(1, [0], V3)
    f2 = mutation.apply_cluster(mutation.apply_cluster(f0, change), change)
    w = mutation.equivalent_up_to_toric(f2, f0)
    assert w is not None
    assert mutation.apply_toric(f2, w) == f0
    w_back = mutation.equivalent_up_to_toric(f0, f2)
    assert w_back is not None
    assert mutation.apply_toric(f0, w_back) == f2


def test_quadric_double_mutation_returns_up_to_toric():
    f0 = laurent.parse("(x+1)^2/(x*y*z)+y+z")
    change = mutation.elementary_cluster(1, [0], V3)
    f2 = mutation.apply_cluster(mutation.apply_cluster(f0, change), change)
    w = mutation.equivalent_up_to_toric(f2, f0)
    assert w is not None
    assert mutation.apply_toric(f2, w) == f0


def test_cubic_triple_mutation_cycle():
    f0 = laurent.parse("(x+y+1)^3/(x*y*z)+z")
    f1 = laurent.parse("(x+y+1)^2/(x*y*z)+z*(x+y+1)")
    change = mutation.elementary_cluster(2, [0, 1], V3)
    g1 = mutation.apply_cluster(f0, change)
    assert g1 == f1
    g2 = mutation.apply_cluster(g1, change)
    w2 = mutation.equivalent_up_to_toric(g2, f1)
    assert w2 is not None
    assert mutation.apply_toric(g2, w2) == f1
    g3 = mutation.apply_cluster(g2, change)
    w3 = mutation.equivalent_up_to_toric(g3, f0)
    assert w3 is not None
    assert mutation.apply_toric(g3, w3) == f0


def test_equivalence_negative():
    p2 = laurent.parse("x + y + 1/(x*y)")
    other = laurent.parse("x + y + 1/(x*y^2)")
    assert mutation.equivalent_up_to_toric(p2, other) is None
    doubled = laurent.scale(p2, Fraction(2))
    w = mutation.equivalent_up_to_toric(p2, doubled)
    assert w is None or mutation.apply_toric(p2, w) == doubled


def test_equivalence_with_scales():
    f = laurent.parse("x + y + 1/(x*y)")
    g = laurent.parse("4*x + 2*y + 1/(8*x*y)")
    w = mutation.equivalent_up_to_toric(f, g)
    assert w is not None
    assert mutation.apply_toric(f, w) == g


def test_cubic_fourfold_trace():
    f00 = laurent.parse("(x+y+1)^3/(x*y*z*t)+z+t")
    steps = [
        mutation.elementary_cluster(2, [0, 1], V4),
        mutation.elementary_cluster(3, [0, 1], V4),
    ]
    trace = mutation.make_trace(f00, steps)
    f11 = laurent.parse("(x+y+1)/(x*y*z*t)+z*(x+y+1)+t*(x+y+1)")
    assert trace.end == f11
    assert mutation.replay(trace) == f11
    stages = mutation.replay_intermediates(trace)
    assert stages[0] == f00
    assert stages[1] == laurent.parse("(x+y+1)^2/(x*y*z*t)+z*(x+y+1)+t")
    assert stages[2] == f11


def test_p3_chain_to_third_model():
    f1 = laurent.parse("x+y+z+1/(x*y*z)")
    toric = mutation.ToricChange(((1, 0, 0), (0, 1, 0), (1, 0, 1)), (0, 0, 0), (1, 1, 1))
    f1_prime = mutation.apply_toric(f1, toric)
    assert f1_prime == laurent.parse("z*(x+1)+y+1/(x*y*z^2)", V3)
    cluster = mutation.ClusterChange(2, 1, laurent.parse("x+1", V3))
    g = mutation.apply_cluster(f1_prime, cluster)
    f3 = laurent.parse("z+y/z+(x+1)^2/(x*y*z)", V3)
    w = mutation.equivalent_up_to_toric(g, f3)
    assert w is not None
    assert mutation.apply_toric(g, w) == f3
    assert period.periods_equal(f1, f3, 8)


def test_empty_trace_and_error_index():
    f = laurent.parse("x + y + 1/(x*y)")
    trace = mutation.make_trace(f, [])
    assert trace.end == f
    assert mutation.replay(trace) == f

    bad = [
        mutation.elementary_cluster(1, [0], V3, sign=1),
        mutation.ClusterChange(1, -1, laurent.parse("x+1", V3)),
    ]
    f3 = laurent.parse("1/y + x", V3)
    with pytest.raises(NotLaurent) as err:
        mutation.make_trace(f3, [bad[1]])
    assert "step 0" in str(err.value)


def test_steps_json_roundtrip():
    steps = [
        mutation.elementary_cluster(1, [0], V3),
        mutation.ToricChange(
            ((1, 0, -1), (0, 1, -1), (0, 0, -1)), (1, 0, 0), (1, Fraction(-1, 2), 3)
        ),
    ]
    data = mutation.steps_to_json(steps)
    assert data[0] == {"type": "cluster", "pivot": 1, "sign": -1, "factor": "x + 1"}
    assert data[1]["A"] == [[1, 0, -1], [0, 1, -1], [0, 0, -1]]
    assert data[1]["scale"] == ["1", "-1/2", "3"]
    back = mutation.steps_from_json(data, V3)
    assert back[0] == steps[0]
    assert back[1] == steps[1]
