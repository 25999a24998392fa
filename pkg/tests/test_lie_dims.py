"""
tests/test_lie_dims.py

Tests the dimension ledger, moduli counts and center tables.

Pure integer arithmetic: no randomness, no numerics.

Run: pytest tests/test_lie_dims.py -v -s
"""

import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.errors import GroupTypeError, ValidationError
from src.tools.lie_dims import GroupType, center_admissible, count_report, dim_report, orders

ALL_TYPES = ["A1", "A2", "A3", "A7", "B2", "B3", "B5", "C2", "C4", "D3", "D4", "D5", "D6",
             "G2", "F4", "E6", "E7", "E8"]

KNOWN_DIMS = {"A1": 3, "A2": 8, "B2": 10, "C4": 36, "D4": 28, "G2": 14, "F4": 52,
              "E6": 78, "E7": 133, "E8": 248}


# ── GroupType.parse() ─────────────────────────────────────────────────────────

def test_parse_classical_and_exceptional():
    assert GroupType.parse("A1") == GroupType("A", 1)
    assert GroupType.parse(" d4 ") == GroupType("D", 4)
    assert GroupType.parse("E8").rank == 8
    assert GroupType.parse("G2").label == "G2"


@pytest.mark.parametrize("label", ["D2", "B1", "C1", "A0", "G3", "E9", "X4", "", "A-1"])
def test_parse_rejects_bad_labels(label):
    with pytest.raises(GroupTypeError) as exc:
        GroupType.parse(label)
    assert exc.value.exit_code == 1


def test_exceptional_rank_is_fixed():
    with pytest.raises(GroupTypeError):
        GroupType("F4", 3)


# ── orders() / dim_report() ───────────────────────────────────────────────────

def test_orders_of_small_types():
    assert orders(GroupType.parse("A1")) == [2]
    assert orders(GroupType.parse("A3")) == [2, 3, 4]
    assert orders(GroupType.parse("B3")) == [2, 4, 6]
    assert orders(GroupType.parse("D4")) == [2, 4, 4, 6]
    assert orders(GroupType.parse("D5")) == [2, 4, 5, 6, 8]


@pytest.mark.parametrize("label, dim", sorted(KNOWN_DIMS.items()))
def test_dim_g_matches_known_value(label, dim):
    assert dim_report(GroupType.parse(label)).dim_G == dim


def test_sl2_ledger():
    r = dim_report(GroupType.parse("A1"))
    assert r.dim_XV == 2
    assert r.dim_Fl == 1
    assert r.dim_U == 1
    assert r.orbit_dim == 2
    assert r.dim_XI == r.dim_XII == 3
    print(f"✅ A1 ledger: {r.to_dict()}")


@pytest.mark.parametrize("label", ALL_TYPES)
def test_ledger_identities(label):
    gt = GroupType.parse(label)
    r = dim_report(gt)
    assert r.dim_XV == r.dim_Fl + gt.rank
    assert 2 * r.dim_XIII == r.dim_XI + gt.rank
    assert r.dim_XIII == r.dim_XIV
    assert r.dim_G == r.dim_U + r.dim_XV
    assert len(r.orders) == gt.rank


# ── count_report() ────────────────────────────────────────────────────────────

def test_sl2_once_punctured_torus():
    c = count_report(GroupType.parse("A1"), g=1, n=1)
    assert c.dim_M_V == 4
    assert c.n_j == [2]
    assert c.N_G == 2
    assert c.deficiency == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sl2_sphere_with_marked_points(n):
    assert count_report(GroupType.parse("A1"), g=0, n=n).dim_M_V == 2 * (2 * n - 3)


@pytest.mark.parametrize("label", ALL_TYPES)
@pytest.mark.parametrize("g, n", [(0, 3), (1, 1), (2, 0), (2, 2), (3, 5)])
def test_integral_count_is_half_the_dimension(label, g, n):
    c = count_report(GroupType.parse(label), g, n)
    assert 2 * c.N_G == c.dim_M_V
    assert c.N_G == sum(c.n_j)


def test_closed_surface_has_no_deficiency():
    c = count_report(GroupType.parse("C3"), g=2, n=0)
    assert c.deficiency == 0
    assert c.dim_Bun_par == c.dim_Bun_0 == c.dim_Bun_V


def test_negative_counts_rejected():
    a1 = GroupType.parse("A1")
    with pytest.raises(ValidationError) as exc:
        count_report(a1, g=-1, n=1)
    assert exc.value.field == "genus"
    with pytest.raises(ValidationError) as exc:
        count_report(a1, g=1, n=-2)
    assert exc.value.field == "marked"


# ── center_admissible() ───────────────────────────────────────────────────────

def test_sl2_center():
    c = center_admissible(GroupType.parse("A1"))
    assert c.cyclic_orders == [2]
    assert c.classes == ["0", "1"]
    assert c.admissible == ["0", "1"]
    assert c.to_dict()["center"] == "μ2"


def test_odd_cyclic_center_admits_only_identity():
    c = center_admissible(GroupType.parse("A2"))
    assert c.classes == ["0", "1", "2"]
    assert c.admissible == ["0"]


def test_spin_centers():
    even = center_admissible(GroupType.parse("D4"))
    assert even.cyclic_orders == [2, 2]
    assert len(even.classes) == 4
    assert even.admissible == even.classes
    odd = center_admissible(GroupType.parse("D5"))
    assert odd.cyclic_orders == [4]
    assert odd.admissible == ["0", "2"]


@pytest.mark.parametrize("label", ["G2", "F4", "E8"])
def test_trivial_centers(label):
    c = center_admissible(GroupType.parse(label))
    assert c.description == "trivial"
    assert c.classes == ["0"] and c.admissible == ["0"]
