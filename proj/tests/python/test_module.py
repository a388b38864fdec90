"""Smoke tests for the Python extension module."""

from fractions import Fraction

import pytest

maccsim = pytest.importorskip("maccsim")


def test_mn_pda_shape_and_verify():
    p = maccsim.mn_pda(3, 2)
    assert (p.rows, p.cols, p.z, p.s) == (3, 3, 2, 1)
    assert p.entry(0, 0) is None
    assert p.entry(0, 2) == 1
    rep = maccsim.verify_pda(p, t=2, L=2)
    assert rep["all_ok"]
    assert rep["gain_histogram"] == {3: 1}


def test_partition_pda_labels():
    fam = maccsim.partition_pda(3, 2, 2)
    assert fam.label_of_vector([3, 1, 1]) == 3
    assert fam.label_of_vector([1, 2, 1]) == 4
    assert fam.combined().s == 9


def test_cwlzc_load_and_simulation():
    s = maccsim.cwlzc_scheme(5, 2, 2, 15)
    assert s.load == Fraction(1, 3)
    assert s.memory_ratio == Fraction(6, 15)
    report = maccsim.simulate(s)
    assert report["load"] == {"num": 1, "den": 3}
    assert report["all_decoded"]


def test_hybrid_flagship():
    s = maccsim.hybrid_scheme(5, 3, 2, 2, 15)
    assert s.load == Fraction(3)
    assert s.memory_ratio == Fraction(2, 15)
    report = maccsim.simulate(s)
    assert report["total_messages"] == 405
    assert report["all_decoded"]


def test_grouping_and_baseline():
    g = maccsim.grouping_scheme(4, 4, 2, 1, 16)
    assert g.load == Fraction(6)
    b = maccsim.baseline_scheme(12, 8, 2, 8, 96)
    assert b.load == Fraction(64, 3)
    assert maccsim.baseline_load(4, 4, 2, 1) == Fraction(8)
    with pytest.raises(ValueError):
        maccsim.baseline_scheme(4, 4, 2, 1, 16)


def test_scheme_json_roundtrip():
    s = maccsim.grouping_scheme(4, 4, 2, 1, 16)
    report = maccsim.simulate_scheme_json(s.to_json())
    assert '"all_decoded": true' in report.replace("\n", "")


def test_tradeoff_points():
    pts = maccsim.tradeoff_envelope(12, 8, 2, 96, ["baseline", "grouping", "hybrid"])
    assert pts[0]["memory_ratio"] == Fraction(0)
    assert pts[-1]["load"] == Fraction(0)
    csv = maccsim.tradeoff_csv(12, 8, 2, ["baseline"])
    assert csv.splitlines()[0] == "memory_ratio_num,memory_ratio_den,load_num,load_den,scheme,t"


def test_mds_roundtrip():
    sources = [b"0123456789abcdef", b"fedcba9876543210"]
    shares = maccsim.mds_encode(sources, 5)
    assert shares[0] == sources[0]
    out = maccsim.mds_decode([3, 5], [shares[2], shares[4]], 2, 5)
    assert out == sources


def test_accessible_nodes():
    assert maccsim.accessible_nodes(2, 2, 3, 3, 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]
