import math

import numpy as np
import pytest

import bosent


def test_sector_table():
    basis = bosent.Basis(4, 4, 2)
    assert [d1 * d2 for _, d1, d2 in basis.sectors()] == [5, 8, 9, 8, 5]
    assert basis.dimension == 35
    occ = basis.occupation_of(7)
    assert basis.index_of(occ) == 7


def test_invalid_bipartition():
    with pytest.raises(ValueError):
        bosent.Basis(2, 2, 3)


def test_noon_negativity_by_every_method():
    rho = bosent.noon_state(2).density()
    for method in ("sector", "two-mode", "oracle"):
        assert bosent.negativity(rho, method)["total"] == pytest.approx(0.5, abs=1e-12)


def test_random_state_matches_oracle():
    basis = bosent.Basis(3, 4, 2)
    rho = bosent.random_density(basis, 2, 7)
    dense = rho.dense()
    assert np.allclose(dense, dense.conj().T)
    a = bosent.negativity(rho)["total"]
    b = bosent.negativity(rho, "oracle")["total"]
    assert abs(a - b) < 1e-10


def test_classify_and_ppt():
    noon = bosent.noon_state(2).density()
    assert not bosent.is_ppt(noon)
    assert bosent.classify(noon)["verdict"] == "EntangledNPT"

    basis = bosent.Basis(4, 4, 2)
    block = bosent.horodecki_qutrit_state(0.25)
    rho = bosent.embed_qutrit_block(basis, block, [0.2] * 5)
    assert bosent.is_ppt(rho)
    verdict = bosent.classify(rho)
    assert verdict["verdict"] == "PPTUndecided"
    assert any(d["k"] == 2 and d["realignment_violated"] for d in verdict["diagnostics"])


def test_dephasing_trajectory():
    rho = bosent.noon_state(2).density()
    times = [0.0, 0.25, 0.5, 1.0]
    for t, n in bosent.negativity_trajectory(rho, 1.0, times):
        assert n == pytest.approx(0.5 * math.exp(-4 * t), abs=1e-12)
    late = bosent.dephase(rho, 1.0, 100.0)
    assert np.allclose(late.dense(), bosent.block_diagonal_project(rho).dense())


def test_json_round_trip():
    rho = bosent.random_density(bosent.Basis(2, 3, 1), 2, 3)
    back = bosent.loads(bosent.dumps(rho))
    assert np.array_equal(back.dense(), rho.dense())
    with pytest.raises(ValueError):
        bosent.loads("{}")


def test_oracle_cap():
    rho = bosent.random_density(bosent.Basis(6, 6, 3), 1, 1)
    with pytest.raises(bosent.CapExceeded):
        bosent.negativity(rho, "oracle")
