"""Combinatorial validator for the decomposition of a finite-index surface.

A surface of index at most I splits into k <= I disjoint regions that carry
the index. Each region has e boundary curves, m ends (sheets of the
multi-graph over the annulus around it), its own index, genus and
orientability, an outer radius r_F and total boundary curvature kappa.
Outside the regions the second fundamental form is bounded by A1. This
module checks the inequalities relating these numbers; it does not detect
the regions on a surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .estimates import TAU, GeometryParams, k1
from .report import Check, render_table


class StructureError(ValueError):
    """The structure data violate a type invariant."""


@dataclass(frozen=True)
class Region:
    e: int
    m: int
    index: int
    genus: int
    orientable: bool
    r_F: float
    kappa: float
    boundary_length: Optional[float] = None

    @property
    def euler_characteristic(self) -> int:
        """2 - 2g - e if orientable, else 1 - g - e (g is the genus of the oriented cover)."""
        if self.orientable:
            return 2 - 2 * self.genus - self.e
        return 1 - self.genus - self.e


@dataclass(frozen=True)
class StructureData:
    regions: tuple[Region, ...]
    delta: float = 0.5
    delta1: Optional[float] = None
    genus_M: Optional[int] = None
    genus_M_tilde: Optional[int] = None
    orientable_M: bool = True
    area_M_tilde: Optional[float] = None
    kappa_M_tilde: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "regions", tuple(self.regions))
        if self.delta1 is None:
            object.__setattr__(self, "delta1", self.delta / 4)

    @property
    def k(self) -> int:
        return len(self.regions)

    @property
    def e_total(self) -> int:
        return sum(r.e for r in self.regions)

    @property
    def S(self) -> int:
        return sum(r.m for r in self.regions)

    @classmethod
    def from_dict(cls, d: dict) -> "StructureData":
        d = dict(d)
        regions = d.pop("regions", [])
        known = {"delta", "delta1", "genus_M", "genus_M_tilde", "orientable_M", "area_M_tilde", "kappa_M_tilde"}
        unknown = set(d) - known
        if unknown:
            raise StructureError(f"unknown structure key(s): {', '.join(sorted(unknown))}")
        parsed = []
        for i, r in enumerate(regions, 1):
            try:
                parsed.append(Region(**r))
            except TypeError as exc:
                raise StructureError(f"region {i}: {exc}") from None
        return cls(regions=tuple(parsed), **d)


def check_invariants(data: StructureData, params: GeometryParams) -> None:
    """Raise StructureError naming the first violated type invariant."""
    d, d1 = data.delta, data.delta1
    if not (0 < d1 <= d / 2 <= 0.25):
        raise StructureError(f"need 0 < delta1 <= delta/2 <= 1/4, got delta = {d}, delta1 = {d1}")
    for i, r in enumerate(data.regions, 1):
        for name, ok in (
            ("e >= 1", r.e >= 1),
            ("m >= 2", r.m >= 2),
            ("index >= 1", r.index >= 1),
            ("genus >= 0", r.genus >= 0),
            ("delta1 <= r_F <= delta/2", d1 <= r.r_F <= d / 2),
        ):
            if not ok:
                raise StructureError(f"region {i}: {name} fails")
        for name in ("e", "m", "index", "genus"):
            if int(getattr(r, name)) != getattr(r, name):
                raise StructureError(f"region {i}: {name} must be an integer")
    for i in range(data.k - 1):
        a, b = data.regions[i].r_F, data.regions[i + 1].r_F
        if not a > 4 * b:
            raise StructureError(f"radii must separate by a factor 4: r_F({i + 1}) = {a} <= 4 r_F({i + 2}) = {4 * b}")
    total = sum(r.index for r in data.regions)
    if total > params.I:
        raise StructureError(f"sum of region indices {total} exceeds I = {params.I}")
    if data.k > params.I:
        raise StructureError(f"k = {data.k} regions exceeds I = {params.I}")


@dataclass
class StructureReport:
    checks: dict[str, Check]
    derived: dict = field(default_factory=dict)

    @property
    def violations(self) -> list[str]:
        return [n for n, c in self.checks.items() if c.status == "violated"]

    def exit_code(self) -> int:
        return 1 if self.violations else 0

    def to_dict(self) -> dict:
        return {"derived": self.derived, "checks": {k: c.to_dict() for k, c in self.checks.items()}}

    @classmethod
    def from_dict(cls, d: dict) -> "StructureReport":
        return cls({k: Check.from_dict(c) for k, c in d["checks"].items()}, d.get("derived", {}))

    def to_table(self) -> str:
        derived = "\n".join(f"{k} = {v}" for k, v in self.derived.items())
        return derived + "\n\n" + render_table({}, self.checks)


def _verdict(ok: bool) -> str:
    return "satisfied" if ok else "violated"


def _join(failures: list[str]) -> str:
    return "; ".join(failures)


def _topology_failures(i: int, r: Region, genus_cap: int) -> list[str]:
    out = []
    if r.m > 3 * r.index - 1:
        out.append(f"region {i}: m = {r.m} > {3 * r.index - 1}")
    if r.e > 3 * r.index - 2:
        out.append(f"region {i}: e = {r.e} > {3 * r.index - 2}")
    if r.genus > genus_cap:
        out.append(f"region {i}: g = {r.genus} > {genus_cap}")
    return out


def validate_structure(data: StructureData, params: GeometryParams) -> StructureReport:
    """Check every inequality of the decomposition; see module docstring."""
    check_invariants(data, params)
    I = params.I
    K1 = k1(params, "concentrated")
    regs = data.regions
    k, S = data.k, data.S
    checks: list[Check] = []

    # (e, m) for index-one regions
    bad = []
    for i, r in enumerate(regs, 1):
        if r.index != 1:
            continue
        if (r.e, r.m) not in ((2, 2), (1, 3)):
            bad.append(f"region {i}: (e, m) = ({r.e}, {r.m})")
        if not r.orientable:
            bad.append(f"region {i}: non-orientable")
        if r.genus != 0:
            bad.append(f"region {i}: genus {r.genus}")
    n1 = sum(r.index == 1 for r in regs)
    checks.append(Check("index_one_regions", "range", "(e, m) in {(2, 2), (1, 3)}", f"{n1} region(s) of index 1",
                        _verdict(not bad), "index 1 => orientable, g = 0, (e, m) in {(2, 2), (1, 3)}", _join(bad)))

    # orientable regions of index >= 2
    f = "orientable, I(D) >= 2: m <= 3 I(D) - 1, e <= 3 I(D) - 2, g <= 3 I(D) - 4"
    bad = []
    for i, r in enumerate(regs, 1):
        if r.orientable and r.index >= 2:
            bad += _topology_failures(i, r, 3 * r.index - 4)
    checks.append(Check("orientable_region_topology", "upper", None, None, _verdict(not bad), f, _join(bad)))

    # non-orientable regions
    f = "non-orientable: I(D) >= 2, m <= 3 I(D) - 1, e <= 3 I(D) - 2, g <= 6 I(D) - 8"
    bad = []
    for i, r in enumerate(regs, 1):
        if not r.orientable:
            if r.index < 2:
                bad.append(f"region {i}: non-orientable with index {r.index}")
            bad += _topology_failures(i, r, 6 * r.index - 8)
    checks.append(Check("nonorientable_region_topology", "upper", None, None, _verdict(not bad), f, _join(bad)))

    # Euler characteristic per region and in total
    bad = []
    for i, r in enumerate(regs, 1):
        lo = -6 * r.index + 2 * r.m + r.e
        if r.euler_characteristic < lo:
            bad.append(f"region {i}: chi = {r.euler_characteristic} < {lo}")
    chi_total = sum(r.euler_characteristic for r in regs)
    lo_total = -6 * I + 2 * S + data.e_total
    if chi_total < lo_total:
        bad.append(f"total chi = {chi_total} < {lo_total}")
    checks.append(Check("euler_characteristic", "lower", lo_total, chi_total, _verdict(not bad),
                        "chi(D) >= -6 I(D) + 2 m + e per region; sum >= -6 I + 2 S + e", _join(bad)))

    # boundary curvature close to 2 pi m
    bad = []
    for i, r in enumerate(regs, 1):
        dev = abs(r.kappa - 2 * math.pi * r.m)
        if dev > TAU / r.m:
            bad.append(f"region {i}: |kappa - 2 pi m| = {dev:.6g} > tau/m = {TAU / r.m:.6g}")
    checks.append(Check("boundary_curvature_per_region", "upper", None, None,
                        _verdict(not bad), "|kappa(D) - 2 pi m| <= tau/m, tau = pi/10", _join(bad)))

    total_kappa = sum(r.kappa for r in regs)
    lo, hi = 2 * math.pi * S - TAU * k / 2, 2 * math.pi * S + TAU * k / 2
    checks.append(Check("boundary_curvature_total", "range", [lo, hi], total_kappa,
                        _verdict(lo <= total_kappa <= hi), "2 pi S - tau k/2 <= sum kappa(D) <= 2 pi S + tau k/2"))

    # total Gauss curvature of each region
    bad = []
    integrals = []
    for i, r in enumerate(regs, 1):
        # -int_D K = kappa - 2 pi chi by Gauss-Bonnet
        neg_K = r.kappa - 2 * math.pi * r.euler_characteristic
        integrals.append(neg_K)
        if not neg_K > 3 * math.pi:
            bad.append(f"region {i}: -int K = {neg_K:.6g} <= 3 pi")
    checks.append(Check("region_total_curvature", "strict-lower", 3 * math.pi, min(integrals, default=None),
                        _verdict(not bad), "int_D |A|^2 / 2 >= -int_D K > 3 pi", _join(bad)))
    total_neg_K = sum(integrals)
    checks.append(Check("total_curvature_sum", "strict-lower", 3 * k * math.pi if k else 0.0, total_neg_K,
                        _verdict(k == 0 or total_neg_K > 3 * k * math.pi), "sum over regions of -int K > 3 k pi"))

    # genus drop after removing the regions
    f = "0 <= g(M) - g(M~) <= 3 I - 2"
    if data.genus_M is None or data.genus_M_tilde is None:
        checks.append(Check("genus_drop", "range", [0, 3 * I - 2], None, "not-checked", f, "genus values not given"))
    elif not data.orientable_M or k == 0:
        checks.append(Check("genus_drop", "range", [0, 3 * I - 2], data.genus_M - data.genus_M_tilde,
                            "not-applicable", f, "needs an orientable surface with k >= 1"))
    else:
        drop = data.genus_M - data.genus_M_tilde
        checks.append(Check("genus_drop", "range", [0, 3 * I - 2], drop, _verdict(0 <= drop <= 3 * I - 2), f))

    # area outside the regions
    annuli = 2 * math.pi * sum(r.m * r.r_F**2 for r in regs)
    floor = k * math.pi * data.delta1**2
    f = "Area(M~) >= 2 pi sum m r_F^2 >= k pi delta1^2"
    if data.area_M_tilde is None:
        checks.append(Check("area_outside_regions", "lower", annuli, None, _verdict(annuli >= floor), f,
                            "area not given; only the right-hand inequality checked"))
    else:
        ok = data.area_M_tilde >= annuli and annuli >= floor
        checks.append(Check("area_outside_regions", "lower", annuli, data.area_M_tilde, _verdict(ok), f))

    # total boundary curvature relative to K1
    kappa_tilde = data.kappa_M_tilde if data.kappa_M_tilde is not None else -total_kappa
    if k:
        ratio = kappa_tilde / K1
        hi = (2 * math.pi * S + TAU * I) / (-K1)
        ok = 0 < ratio <= hi and 2 * math.pi * S + TAU * I <= (6 * math.pi + TAU) * I
        checks.append(Check("collar_curvature_ratio", "range", [0.0, hi], ratio, _verdict(ok),
                            "0 < kappa(M~)/K1 <= (2 pi S + tau I)/(-K1) <= (6 pi + tau) I/(-K1)"))
    else:
        checks.append(Check("collar_curvature_ratio", "range", None, None, "not-applicable",
                            "0 < kappa(M~)/K1 <= (2 pi S + tau I)/(-K1)", "no regions"))

    # boundary lengths
    lengths = [r.boundary_length for r in regs]
    f = "L(D) <= (2 pi m + 1) r_F"
    if any(L is None for L in lengths):
        checks.append(Check("boundary_length_per_region", "upper", None, None, "not-checked", f, "lengths not given"))
        checks.append(Check("boundary_length_total", "upper", (6 * math.pi + 1) / 4 * I, None, "not-checked",
                            "sum L(D) <= (6 pi + 1) I / 4", "lengths not given"))
    else:
        bad = [f"region {i}: L = {r.boundary_length} > {(2 * math.pi * r.m + 1) * r.r_F:.6g}"
               for i, r in enumerate(regs, 1) if r.boundary_length > (2 * math.pi * r.m + 1) * r.r_F]
        checks.append(Check("boundary_length_per_region", "upper", None, None, _verdict(not bad), f, _join(bad)))
        total_L = sum(lengths)
        bound = (6 * math.pi + 1) / 4 * I
        checks.append(Check("boundary_length_total", "upper", bound, total_L, _verdict(total_L <= bound),
                            "sum L(D) <= (6 pi + 1) I / 4"))

    derived = {"k": k, "e": data.e_total, "S": S, "chi_total": chi_total, "K1": K1,
               "tau": TAU, "kappa_M_tilde": kappa_tilde, "annulus_area": annuli, "area_floor": floor}
    return StructureReport({c.name: c for c in checks}, derived)
