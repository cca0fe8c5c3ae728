import math
import random

import pytest

from scancover import (
    angular_cost,
    as_abstract,
    check_metric,
    gen_nae_gadget,
    instance_hash,
    make_instance,
)
from scancover.errors import InstanceFormatError, NotIncident
from scancover.model import instance_from_dict, instance_to_dict

from conftest import equilateral_triangle, path_1d, star_2d


def test_angular_cost_1d_opposite(small_path):
    assert angular_cost(small_path, ("u", "v"), ("v", "w")) == pytest.approx(180.0)


def test_angular_cost_1d_same_side():
    inst = make_instance(
        1, {"a": (0.0,), "b": (1.0,), "c": (2.0,)}, [("a", "b"), ("a", "c")]
    )
    assert angular_cost(inst, ("a", "b"), ("a", "c")) == pytest.approx(0.0)


def test_angular_cost_equilateral(triangle):
    for e1, e2 in triangle.incident_pairs():
        assert angular_cost(triangle, e1, e2) == pytest.approx(60.0, abs=1e-9)


def test_angular_cost_nae_gadget_clause_pairs():
    phi = 120.0
    inst = gen_nae_gadget([(("x1", False), ("x2", False), ("x3", False))], phi)
    clause_edges = [e for e in inst.edges if e[0].startswith("C") or e[1].startswith("C")]
    for ce in clause_edges:
        for other in inst.edges:
            if other != ce and set(ce) & set(other):
                assert angular_cost(inst, ce, other) == pytest.approx(phi)


def test_angular_cost_requires_incident(triangle):
    extra = make_instance(
        2,
        {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (3.0, 0.0), "d": (4.0, 0.0)},
        [("a", "b"), ("c", "d")],
    )
    with pytest.raises(NotIncident):
        angular_cost(extra, ("a", "b"), ("c", "d"))
    with pytest.raises(NotIncident):
        angular_cost(extra, ("a", "b"), ("a", "b"))


def test_angular_cost_symmetric_random_stars():
    rng = random.Random(7)
    for _ in range(25):
        k = rng.randint(2, 6)
        angles = [rng.uniform(0, 360) for _ in range(k)]
        inst = star_2d(angles)
        for e1, e2 in inst.incident_pairs():
            a = angular_cost(inst, e1, e2)
            assert a == pytest.approx(angular_cost(inst, e2, e1))
            assert 0.0 <= a <= 180.0


def test_coincident_points_allowed_but_not_joined():
    make_instance(
        2, {"a": (0.0, 0.0), "b": (0.0, 0.0), "c": (1.0, 0.0)}, [("a", "c")]
    )
    with pytest.raises(InstanceFormatError):
        make_instance(2, {"a": (0.0, 0.0), "b": (0.0, 0.0)}, [("a", "b")])


def test_simple_graph_enforced():
    with pytest.raises(InstanceFormatError):
        make_instance(2, {"a": (0.0, 0.0)}, [("a", "a")])
    with pytest.raises(InstanceFormatError):
        make_instance(
            2, {"a": (0.0, 0.0), "b": (1.0, 0.0)}, [("a", "b"), ("b", "a")]
        )


def test_check_metric_gadget_is_metric():
    inst = gen_nae_gadget(
        [(("x1", False), ("x2", False), ("x3", True))], 120.0
    )
    assert check_metric(inst) == []


def test_check_metric_reports_violation():
    edges = [("c", "x"), ("c", "y"), ("c", "z")]
    costs = {
        (("c", "x"), ("c", "y")): 10.0,
        (("c", "y"), ("c", "z")): 10.0,
        (("c", "x"), ("c", "z")): 100.0,
    }
    inst = make_instance("abstract", ["c", "x", "y", "z"], edges, costs)
    violations = check_metric(inst)
    assert violations
    assert all(len(t) == 3 for t in violations)


def test_geometric_induced_costs_are_metric():
    rng = random.Random(11)
    for _ in range(20):
        k = rng.randint(3, 6)
        inst = star_2d([rng.uniform(0, 360) for _ in range(k)])
        assert check_metric(as_abstract(inst)) == []
    # 3D stars as well
    for seed in range(10):
        rng = random.Random(seed)
        verts = {"c": (0.0, 0.0, 0.0)}
        edges = []
        for i in range(4):
            v = tuple(rng.uniform(-1, 1) for _ in range(3))
            verts[f"l{i}"] = v
            edges.append(("c", f"l{i}"))
        inst = make_instance(3, verts, edges)
        assert check_metric(as_abstract(inst)) == []


def test_instance_roundtrip(triangle):
    doc = instance_to_dict(triangle)
    again = instance_from_dict(doc)
    assert again == triangle
    assert instance_hash(again) == instance_hash(triangle)


def test_abstract_roundtrip():
    inst = gen_nae_gadget([(("x", False), ("x", False), ("x", True))], 90.0)
    again = instance_from_dict(instance_to_dict(inst))
    assert again == inst


def test_unknown_fields_rejected(triangle):
    doc = instance_to_dict(triangle)
    doc["comment"] = "nope"
    with pytest.raises(InstanceFormatError):
        instance_from_dict(doc)


def test_missing_cost_rejected():
    with pytest.raises(InstanceFormatError):
        make_instance(
            "abstract",
            ["a", "b", "c"],
            [("a", "b"), ("b", "c")],
            costs={},
        )


def test_1d_adjacent_ties_rejected():
    with pytest.raises(InstanceFormatError):
        make_instance(1, {"a": (1.0,), "b": (1.0,)}, [("a", "b")])
