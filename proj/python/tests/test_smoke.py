import json

import pytest

import indexdensity as idx


def test_rho_minus_one_two():
    g = idx.Group("-1,2")
    expected = [0.5609337, 0.09348895, 0.09972155, 0.07011672]
    for m, ref in enumerate(expected, start=1):
        assert abs(g.rho(m)["value"] - ref) < 1e-7


def test_exact_zero():
    d = idx.Group("-1,27").rho(2)
    assert d["exact_zero"]
    assert d["value"] == 0.0
    assert d["rational"] == "0"


def test_artin_constant():
    assert idx.artin_constant().startswith("3.73955813619202288054")


def test_euler_kappa_rank_one_is_twice_artin():
    k1 = float(idx.euler_kappa(1))
    assert abs(k1 - 2 * float(idx.artin_constant())) < 1e-15


def test_rank_one_paths_agree():
    for a in range(2, 12):
        g = idx.Group(f"-1,{a}")
        for m in range(1, 9):
            assert abs(idx.minus_one_a_density(str(a), m)["value"] - g.rho(m)["value"]) < 1e-12
    assert abs(idx.hooley_density("2")["value"] - idx.Group("2").rho(1)["value"]) < 1e-12
    assert abs(idx.moree_odd_density("6", 3)["value"] - idx.Group("6").rho(3)["value"]) < 1e-12


def test_group_structure():
    g = idx.Group("12,18")
    assert g.rank == 2
    assert g.support == ["2", "3"]
    assert idx.Group("2,3").gamma_m_order(4) == "16"
    assert idx.Group("2").kummer_degree(8, 2) == "4"
    assert idx.Group("2,3").kummer_degree(4, 4) == "32"


def test_errors_are_typed():
    with pytest.raises(idx.IndexDensityError, match="ZeroGenerator"):
        idx.Group("0")
    with pytest.raises(idx.IndexDensityError, match="ParseError"):
        idx.Group("2,,3")
    with pytest.raises(idx.IndexDensityError, match="NegativeBase"):
        idx.classify_minus_one_a("-8", 2)


def test_vanishing():
    assert not idx.Group("-1,2").vanishing(2)["vanishes"]
    v = idx.Group("16").vanishing(1)
    assert v["vanishes"] and v["matched"] == "A" and v["finiteness"] == "Finite"
    assert idx.classify_lenstra("16", 1)["matched"] == "L1"
    hits = idx.minus_one_a_census([str(n**3) for n in range(2, 16)], 40)
    assert [(a, m) for a, m, _ in hits] == [("27", 2), ("216", 4), ("729", 4), ("1728", 2), ("3375", 10)]


def test_index_of():
    assert idx.Group("2").index_of(7) == 2
    assert idx.Group("-1,2").index_of(7) == 1


def test_scan_threads_and_merge():
    one = idx.scan("-1,2", 200000, m_max=10, threads=1)
    four = idx.scan("-1,2", 200000, m_max=10, threads=4)
    assert one["counts"] == four["counts"]
    assert sum(one["counts"]) + one["overflow"] + len(one["excluded"]) == 17984

    lo = idx.scan("-1,2", 99999, m_max=10)
    hi = idx.scan("-1,2", 200000, m_max=10, x_lo=100000)
    merged = idx.merge_histograms(lo["json"], hi["json"])
    assert merged["counts"] == one["counts"]
    assert json.loads(merged["json"])["x_hi"] == 200001


def test_scan_vanishing_pair_is_empty():
    h = idx.scan("-1,3375", 10**6, m_max=12)
    assert h["counts"][9] == 0


def test_format_significant():
    assert idx.format_significant("0.070116715", 7) == "0.07011671"
    assert idx.format_significant("0.070116715", 7, round=True) == "0.07011672"
