from fractions import Fraction

import numpy as np
import pytest

import balanced_embed as be


def test_p3_greedy_refines_to_the_endpoints():
    d = be.distances(be.path(3))
    assert d.diameter == 2
    r = be.greedy(d)
    assert r["origin"] == "refined"
    assert r["weights"] == [Fraction(1, 2), 0, Fraction(1, 2)]
    assert r["balance"]["is_balanced"]
    assert abs(r["alpha_estimate"] - 1.0) < 2e-3


def test_exact_and_float_weights():
    d = be.distances(be.path(3))
    assert be.is_balanced(d, [Fraction(1, 2), 0, "1/2"])["exact"]
    assert not be.is_balanced(d, [1 / 3, 1 / 3, 1 / 3])["is_balanced"]
    assert be.transport_costs(d, ["1/2", 0, "1/2"]) == [1, 1, 1]
    assert be.energy(d, ["1/2", 0, "1/2"]) == 1
    with pytest.raises(ValueError):
        be.is_balanced(d, ["1/2", "1/3", 0])


def test_star_embedding():
    d = be.distances(be.star(3))
    e = be.embed(d, [0, "1/3", "1/3", "1/3"])
    assert e["support"] == [1, 2, 3]
    assert e["alpha"] == Fraction(4, 3)
    assert e["coords"].shape == (4, 3)
    np.testing.assert_allclose(e["coords"][0], [1 / 3] * 3)
    assert e["lipschitz_violations"] == 0
    assert e["hyperplane_deviation"] == 0.0
    assert e["separation_satisfied"]


def test_refine_and_oracle_on_frucht():
    d = be.distances(be.named("frucht"))
    r = be.refine(d, [0, 1, 9, 10])
    assert r["ok"]
    assert r["level"] == Fraction(21, 10)
    found = [m for m in be.oracle(d, "supports", 4)
             if sorted(w for w in m["weights"] if w) == [Fraction(k, 10) for k in (1, 2, 3, 4)]]
    assert found


def test_glued_paths_hub_pair_is_balanced():
    gp = be.glued_paths(5, 10)
    d = be.distances(gp["graph"])
    w = [0] * d.n
    for h in gp["hubs"]:
        w[h] = Fraction(1, 2)
    assert be.is_balanced(d, w)["is_balanced"]


def test_point_cloud_pipeline():
    pts, meta, names = be.swiss_roll(300, 4)
    assert pts.shape == (300, 3)
    assert names == ["t", "h"]
    g = be.knn_graph(pts, 10)
    doc, coords, labels = be.embed_document(g, drop_top=3, pca_dim=2)
    assert coords.shape == (300, 2)
    assert labels == ["pc1", "pc2"]
    assert doc["embedding"]["guarantees_hold"]


def test_documents_and_errors():
    doc = be.greedy_document(be.named("petersen"), audit=True)
    assert doc["command"] == "greedy"
    assert doc["balance"]["is_balanced"]
    assert "timing" not in doc or not doc["timing"]
    with pytest.raises(ValueError):
        be.Graph([(0, 1), (2, 3)], 4)
    with pytest.raises(ValueError):
        be.named("nosuch")
    b = be.boundary(be.path(3), be.distances(be.path(3)))
    assert b["members"] == [0, 2]
