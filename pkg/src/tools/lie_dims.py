"""
src/tools/lie_dims.py

Dimension and integral-count ledger for every simple complex Lie group.

Everything here is integer arithmetic on the orders of basic invariants
d_1 ≤ … ≤ d_l of the Lie algebra:

  dim G        = Σ(2d_j − 1)
  dim flag     = Σ(d_j − 1)
  n_j          = (2d_j − 1)(g − 1) + n·d_j        integrals of degree d_j
  deficiency   = n·Σ(d_j − 1)                     missing real integrals

The order tables are standard Lie theory; `orders` cross-checks each one
against the classical dimension formula of its series before returning.

Usage:
    from src.tools.lie_dims import GroupType, count_report
    count_report(GroupType.parse("A1"), g=1, n=1).dim_M_V   # 4
"""

import re
from dataclasses import asdict, dataclass
from itertools import product

from src.errors import GroupTypeError, ValidationError

# ── Group types ───────────────────────────────────────────────────────────────

_CLASSICAL_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}

_EXCEPTIONAL = {
    "G2": (2, [2, 6]),
    "F4": (4, [2, 6, 8, 12]),
    "E6": (6, [2, 5, 6, 8, 9, 12]),
    "E7": (7, [2, 6, 8, 10, 12, 14, 18]),
    "E8": (8, [2, 8, 12, 14, 18, 20, 24, 30]),
}

# Independent dimension oracle per series.
_DIM_ORACLE = {
    "A": lambda l: l * (l + 2),
    "B": lambda l: l * (2 * l + 1),
    "C": lambda l: l * (2 * l + 1),
    "D": lambda l: l * (2 * l - 1),
    "G2": lambda l: 14,
    "F4": lambda l: 52,
    "E6": lambda l: 78,
    "E7": lambda l: 133,
    "E8": lambda l: 248,
}


@dataclass(frozen=True)
class GroupType:
    """A simple type: series in {A,B,C,D,G2,F4,E6,E7,E8} plus rank l."""

    series: str
    rank: int

    def __post_init__(self):
        if self.series in _EXCEPTIONAL:
            fixed = _EXCEPTIONAL[self.series][0]
            if self.rank != fixed:
                raise GroupTypeError(f"{self.series} has rank {fixed}, got {self.rank}", field="type")
        elif self.series in _CLASSICAL_MIN_RANK:
            low = _CLASSICAL_MIN_RANK[self.series]
            if not isinstance(self.rank, int) or self.rank < low:
                raise GroupTypeError(
                    f"{self.series}_l needs l >= {low}, got {self.rank}", field="type"
                )
        else:
            raise GroupTypeError(f"unknown series {self.series!r}", field="type")

    @classmethod
    def parse(cls, label: str) -> "GroupType":
        """'A1', 'D4', 'E8', … → GroupType."""
        label = label.strip().upper()
        if label in _EXCEPTIONAL:
            return cls(label, _EXCEPTIONAL[label][0])
        match = re.fullmatch(r"([ABCD])(\d+)", label)
        if not match:
            raise GroupTypeError(f"cannot parse group type {label!r}", field="type")
        return cls(match.group(1), int(match.group(2)))

    @property
    def label(self) -> str:
        return self.series if self.series in _EXCEPTIONAL else f"{self.series}{self.rank}"


# ── Reports ───────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DimReport:
    type: str
    orders: list[int]
    dim_G: int
    dim_C: int
    dim_U: int
    dim_Uc: int
    dim_XI: int
    dim_XII: int
    dim_XIII: int
    dim_XIV: int
    dim_XV: int
    dim_Fl: int
    orbit_dim: int

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CountReport:
    type: str
    g: int
    n: int
    dim_Bun_par: int
    dim_Bun_0: int
    dim_Bun_I_II: int
    dim_Bun_V: int
    dim_M_V: int
    dim_M_I_II: int
    n_j: list[int]
    N_G: int
    N_G_R: int
    deficiency: int

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CenterReport:
    """Center as a product of cyclic groups μ_k, plus its classes ζ with ζ² = 1."""

    type: str
    cyclic_orders: list[int]
    classes: list[str]
    admissible: list[str]

    @property
    def description(self) -> str:
        if not self.cyclic_orders:
            return "trivial"
        return "⊕".join(f"μ{k}" for k in self.cyclic_orders)

    def to_dict(self) -> dict:
        return {**asdict(self), "center": self.description}


# ── Operations ────────────────────────────────────────────────────────────────

def orders(gt: GroupType) -> list[int]:
    """
    Orders of basic invariants, ascending.

    D_l lists 2, 4, …, 2l−2 together with the Pfaffian degree l, sorted, so
    D_4 has a repeated 4.
    """
    l = gt.rank
    if gt.series in _EXCEPTIONAL:
        degrees = list(_EXCEPTIONAL[gt.series][1])
    elif gt.series == "A":
        degrees = list(range(2, l + 2))
    elif gt.series in ("B", "C"):
        degrees = [2 * j for j in range(1, l + 1)]
    else:
        degrees = sorted([2 * j for j in range(1, l)] + [l])

    expected = _DIM_ORACLE[gt.series](l)
    if sum(2 * d - 1 for d in degrees) != expected or len(degrees) != l:
        raise GroupTypeError(f"order table for {gt.label} fails the dimension oracle ({expected})")
    return degrees


def dim_report(gt: GroupType) -> DimReport:
    d = orders(gt)
    l = gt.rank
    dim_G = sum(2 * x - 1 for x in d)
    flag = sum(x - 1 for x in d)
    sym = sum(d)
    report = DimReport(
        type=gt.label,
        orders=d,
        dim_G=dim_G,
        dim_C=dim_G,
        dim_U=flag,
        dim_Uc=flag,
        dim_XI=dim_G,
        dim_XII=dim_G,
        dim_XIII=sym,
        dim_XIV=sym,
        dim_XV=sym,
        dim_Fl=flag,
        orbit_dim=dim_G - l,
    )
    checks = [
        report.dim_XV == report.dim_Fl + l,
        2 * report.dim_XIII == report.dim_XI + l,
        report.dim_XIII == report.dim_XIV,
        report.dim_G == report.dim_U + report.dim_XV,
    ]
    if not all(checks):
        raise GroupTypeError(f"dimension ledger for {gt.label} is inconsistent")
    return report


def count_report(gt: GroupType, g: int, n: int) -> CountReport:
    """
    Moduli dimensions and integral counts for genus g with n marked points.

    Both the flag count n·Σ(d_j − 1) of the parabolic bundles and the
    N_G = Σ n_j count (which carries n·l more) are reported side by side.
    """
    if g < 0:
        raise ValidationError(f"genus must be >= 0, got {g}", field="genus")
    if n < 0:
        raise ValidationError(f"marked-point count must be >= 0, got {n}", field="marked")
    d = orders(gt)
    dim_G = sum(2 * x - 1 for x in d)
    sum_d = sum(d)
    sum_flag = sum(x - 1 for x in d)
    sum_2d = sum(2 * x - 1 for x in d)

    n_j = [(2 * x - 1) * (g - 1) + n * x for x in d]
    dim_Bun_I_II = (g - 1) * 2 * dim_G + n * sum_2d
    dim_Bun_V = (g - 1) * dim_G + n * sum_d
    return CountReport(
        type=gt.label,
        g=g,
        n=n,
        dim_Bun_par=(g - 1) * dim_G + n * sum_flag,
        dim_Bun_0=(g - 1 + n) * dim_G,
        dim_Bun_I_II=dim_Bun_I_II,
        dim_Bun_V=dim_Bun_V,
        dim_M_V=2 * dim_Bun_V,
        dim_M_I_II=2 * dim_Bun_I_II,
        n_j=n_j,
        N_G=sum(n_j),
        N_G_R=(g - 1) * 2 * dim_G + n * sum_d,
        deficiency=n * sum_flag,
    )


def _center_orders(gt: GroupType) -> list[int]:
    if gt.series == "A":
        return [gt.rank + 1]
    if gt.series in ("B", "C", "E7"):
        return [2]
    if gt.series == "D":
        return [2, 2] if gt.rank % 2 == 0 else [4]
    if gt.series == "E6":
        return [3]
    return []


def center_admissible(gt: GroupType) -> CenterReport:
    """
    Center of the simply connected group and the classes ζ with 2γ ∈ Q^∨,
    i.e. ζ² = 1.  Classes are labelled by their residues, "0" being trivial.
    """
    cyclic = _center_orders(gt)
    elements = list(product(*[range(k) for k in cyclic])) if cyclic else [()]

    def label(elem: tuple) -> str:
        if not elem:
            return "0"
        return ",".join(str(e) for e in elem)

    classes = [label(e) for e in elements]
    admissible = [
        label(e) for e in elements
        if all((2 * r) % k == 0 for r, k in zip(e, cyclic))
    ]
    return CenterReport(type=gt.label, cyclic_orders=cyclic, classes=classes, admissible=admissible)
