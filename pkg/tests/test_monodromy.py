from __future__ import annotations

import pytest

from conftest import P
from hypersing.localgb import truncated_membership, truncated_quotient
from hypersing.monodromy import (
    corollary1_bound,
    du_bois_family,
    euler_smoothing,
    matrix_power_is_zero,
    nilpotence_index,
    nilpotence_matrix_check,
    power_membership,
    support_in_range,
    v_graded_dimensions,
)
from hypersing.poly import parse_poly


def test_family_shape():
    f = du_bois_family(2)
    assert f.vars == ("y1", "y2", "y3")
    assert f == parse_poly("y1^4+y2^4+y3^4+y1*y2*y3", ["y1", "y2", "y3"])
    with pytest.raises(ValueError):
        du_bois_family(0)


def test_t444_power_membership(t444):
    ma = truncated_quotient(t444)
    r1 = power_membership(t444, 1, ma)
    assert not r1.member and any(r1.witness)
    r2 = power_membership(t444, 2, ma)
    assert r2.member and r2.witness is None
    assert power_membership(t444, 0, ma).member is False  # 1 is never in the maximal ideal


def test_power_membership_agrees_with_brute_force(t444):
    ma = truncated_quotient(t444)
    for k in (1, 2, 3):
        assert power_membership(t444, k, ma).member == truncated_membership(t444**k, t444, ma.determinacy)


def test_family_n3():
    f = du_bois_family(3)
    ma = truncated_quotient(f)
    assert ma.mu == 131
    assert not power_membership(f, 2, ma).member
    rep = nilpotence_index(f, ma)
    assert rep.s == 3
    assert nilpotence_matrix_check(f, rep.s, ma)


def test_nilpotence_report(t444):
    rep = nilpotence_index(t444)
    assert rep.s == 2
    d = rep.to_dict()
    assert list(d) == ["s", "witness", "implication"]
    assert "N^1 != 0" in d["implication"]
    assert nilpotence_matrix_check(t444, 2)
    # a qh germ lies in its own Jacobian ideal (Euler relation)
    assert nilpotence_index(P("x^2+y^3", ["x", "y"])).s == 1


def test_matrix_power():
    nil = [[0, 1], [0, 0]]
    assert not matrix_power_is_zero(nil, 1)
    assert matrix_power_is_zero(nil, 2)


def test_v_graded_dimensions(t444):
    dims = v_graded_dimensions(t444)
    assert sum(dims.values()) == 11
    assert support_in_range(dims, 0, 3)
    assert not support_in_range(dims, 1, 7 / 4)


def test_corollary_bound_table():
    assert corollary1_bound(2, 2) == 1
    assert corollary1_bound(3, 3) == 2
    assert [corollary1_bound(4, j) for j in range(9)] == [1, 1, 1, 2, 3, 2, 1, 1, 1]
    with pytest.raises(ValueError):
        corollary1_bound(2, 5)


def test_euler():
    assert euler_smoothing(13, 11, 2) == 24
    assert euler_smoothing(1, 2, 1) == -1
    with pytest.raises(ValueError):
        euler_smoothing(1, -1, 2)
