"""Area, diameter and genus estimates for finite-index CMC surfaces.

Every bound is first evaluated in the normalized setting, where
injectivity radius >= 1, sectional curvature <= 1 in absolute value and
mean curvature <= 1, and then transported back through the scale factor
``lambda = max(1, 1/r0, sqrt(K0), H0)``: areas divide by lambda^2 and
lengths by lambda.

Two model curvatures appear. The stable mode uses
``K1 = -1 - Cs^2 / 2``, which comes from the pointwise curvature estimate for
stable surfaces. The concentrated mode uses ``K1 = -1 - A1^2 / 2``, where
A1 bounds |A| away from the regions that carry the index.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from typing import Optional

import numpy as np

from .report import BoundsReport, Check, Constant

TAU = math.pi / 10
MODES = ("stable", "concentrated")


class PreconditionError(ValueError):
    """A bound was requested outside the range where it holds."""


@dataclass(frozen=True)
class GeometryParams:
    """Ambient and surface constants; defaults are the normalized setting."""

    I: int = 0
    r0: float = 1.0
    K0: float = 1.0
    H0: float = 1.0
    Cs: float = 2 * math.pi
    A1: float = 1.0
    c: Optional[float] = None

    def __post_init__(self):
        if isinstance(self.I, bool) or int(self.I) != self.I or self.I < 0:
            raise ValueError(f"I must be a nonnegative integer, got {self.I!r}")
        object.__setattr__(self, "I", int(self.I))
        checks = [
            ("r0", self.r0 > 0, "must be > 0"),
            ("K0", self.K0 >= 0, "must be >= 0"),
            ("H0", self.H0 >= 0, "must be >= 0"),
            ("Cs", self.Cs >= 2 * math.pi, "must be >= 2*pi"),
            ("A1", self.A1 >= 1, "must be >= 1"),
        ]
        for name, ok, msg in checks:
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and ok):
                raise ValueError(f"{name} {msg}, got {value!r}")
        if self.c is not None and not (math.isfinite(self.c) and self.c > 0):
            raise ValueError(f"c must be > 0 when given, got {self.c!r}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SurfaceSummary:
    """Observed global data of a surface.

    ``genus`` is the genus of the orientable cover. ``diameter`` is the
    intrinsic diameter; ``extrinsic_diameter`` is optional and used for the
    universal diameter lower bound when present.
    """

    genus: int
    area: float
    diameter: float
    H: float
    index: int
    compact: bool = True
    connected: bool = True
    extrinsic_diameter: Optional[float] = None

    def __post_init__(self):
        if int(self.genus) != self.genus or self.genus < 0:
            raise ValueError(f"genus must be a nonnegative integer, got {self.genus!r}")
        if int(self.index) != self.index or self.index < 0:
            raise ValueError(f"index must be a nonnegative integer, got {self.index!r}")
        if not self.area > 0:
            raise ValueError(f"area must be > 0, got {self.area!r}")
        if not self.diameter > 0:
            raise ValueError(f"diameter must be > 0, got {self.diameter!r}")
        if not self.H >= 0:
            raise ValueError(f"H must be >= 0, got {self.H!r}")
        if self.extrinsic_diameter is not None and not self.extrinsic_diameter > 0:
            raise ValueError("extrinsic_diameter must be > 0 when given")
        object.__setattr__(self, "genus", int(self.genus))
        object.__setattr__(self, "index", int(self.index))

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# constants


def lambda_scale(params: GeometryParams) -> float:
    """max(1, 1/r0, sqrt(K0), H0)."""
    return max(1.0, 1.0 / params.r0, math.sqrt(params.K0), params.H0)


def ball_area_lower(r: float) -> float:
    """E(r) = pi r^2 exp(-2r - 1 + r cot r), a lower bound for small geodesic disks."""
    if not 0 < r <= math.pi / 4:
        raise ValueError(f"r must lie in (0, pi/4], got {r!r}")
    return math.pi * r * r * math.exp(-2 * r - 1 + r / math.tan(r))


def c_A() -> float:
    """pi (pi/4)^2 exp(-pi/2 - 1 + pi/4) ~ 0.325043."""
    return math.pi * (math.pi / 4) ** 2 * math.exp(-math.pi / 2 - 1 + math.pi / 4)


def default_mode(params: GeometryParams) -> str:
    return "stable" if params.I == 0 else "concentrated"


def k1(params: GeometryParams, mode: str = "concentrated") -> float:
    """Model curvature: -1 - Cs^2/2 (stable) or -1 - A1^2/2 (concentrated)."""
    if mode == "stable":
        return -1.0 - params.Cs**2 / 2
    if mode == "concentrated":
        return -1.0 - params.A1**2 / 2
    raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def a3(params: GeometryParams) -> float:
    """A3 = -4 K1 (concentrated) >= 6."""
    return -4.0 * k1(params, "concentrated")


def c3(params: GeometryParams) -> float:
    """min(2 pi / (3 |K1|), C_A / 2)."""
    return min(2 * math.pi / (3 * abs(k1(params))), c_A() / 2)


def c4_prime(params: GeometryParams) -> float:
    """pi / |K1|."""
    return math.pi / abs(k1(params))


def c4_double_prime(params: GeometryParams) -> float:
    """C_A / (12 I - 3), defined for I >= 1."""
    _require_index(params)
    return c_A() / (12 * params.I - 3)


def c4(params: GeometryParams) -> float:
    return min(c4_prime(params), c4_double_prime(params))


def c1(params: GeometryParams) -> float:
    """min(C3, C4); for I = 0 only C3 enters."""
    if params.I == 0:
        return c3(params)
    return min(c3(params), c4(params))


def high_genus_constant(params: GeometryParams) -> float:
    """C = pi / (3 + 4 Cs + 4 Cs^2), independent of I."""
    cs = params.Cs
    return math.pi / (3 + 4 * cs + 4 * cs * cs)


def c_hat_s(params: GeometryParams) -> float:
    """Curvature constant for surfaces stable outside one point: 1 + 2 Cs."""
    return 1 + 2 * params.Cs


def stability_radius(c: float) -> float:
    """R_c = 2 pi / sqrt(3 c)."""
    if not c > 0:
        raise ValueError(f"c must be > 0, got {c!r}")
    return 2 * math.pi / math.sqrt(3 * c)


def _require_index(params: GeometryParams):
    if params.I < 1:
        raise PreconditionError("this bound needs I >= 1")


# ---------------------------------------------------------------------------
# ball area upper bounds


def _cosh_minus_one(x):
    with np.errstate(over="ignore"):
        return float(np.cosh(x) - 1.0)


def _sinh(x):
    with np.errstate(over="ignore"):
        return float(np.sinh(x))


def ball_area_upper_stable(
    params: GeometryParams, r: float, mode: Optional[str] = None, lam: Optional[float] = None
) -> float:
    """2 pi / (-K1 lambda^2) [cosh(lambda sqrt(-K1) r) - 1]."""
    if r < 0:
        raise ValueError("r must be >= 0")
    K = k1(params, mode or default_mode(params))
    lam = lambda_scale(params) if lam is None else lam
    return 2 * math.pi / (-K * lam * lam) * _cosh_minus_one(lam * math.sqrt(-K) * r)


def annulus_complement_area_upper(
    params: GeometryParams, r: float, lam: Optional[float] = None
) -> float:
    """2 (6 pi + 1) I / (lambda^2 A3) [2 (cosh(lambda sqrt(A3) r) - 1) + sinh(lambda sqrt(A3) r) / sqrt(A3)]."""
    _require_index(params)
    if r < 0:
        raise ValueError("r must be >= 0")
    A = a3(params)
    lam = lambda_scale(params) if lam is None else lam
    x = lam * math.sqrt(A) * r
    return 2 * (6 * math.pi + 1) * params.I / (lam * lam * A) * (
        2 * _cosh_minus_one(x) + _sinh(x) / math.sqrt(A)
    )


def ball_area_upper_concentrated(
    params: GeometryParams, r: float, lam: Optional[float] = None
) -> float:
    """The annulus complement bound plus 3 pi I / (8 lambda^2) for the small disks."""
    lam = lambda_scale(params) if lam is None else lam
    return annulus_complement_area_upper(params, r, lam) + 3 * math.pi * params.I / (8 * lam * lam)


def h_tilde(params: GeometryParams, r: float, lam: float = 1.0) -> float:
    """Largest of the ball area bounds that apply at index bound I.

    For I = 0 only the stable bound holds. For I >= 1 the surface may or may
    not have concentration regions, so both the stable bound (concentrated-
    mode curvature, no regions) and the concentrated bound are candidates.
    """
    if params.I == 0:
        return ball_area_upper_stable(params, r, "stable", lam)
    return max(
        ball_area_upper_stable(params, r, "concentrated", lam),
        ball_area_upper_concentrated(params, r, lam),
    )


def h_function(params: GeometryParams) -> float:
    """h(I) = I times the concentrated ball bound at r = 1 in the normalized setting.

    It bounds the area covered by at most I unit balls around the regions
    carrying the index.
    """
    _require_index(params)
    return params.I * ball_area_upper_concentrated(params, 1.0, lam=1.0)


def g_threshold(params: GeometryParams) -> int:
    """G(I) = max(12 I - 3, ceil(-2 K1 h(I) / pi) - 1), with G(0) = 0."""
    if params.I == 0:
        return 0
    K = k1(params)
    return max(12 * params.I - 3, math.ceil(-2 * K * h_function(params) / math.pi) - 1)


# ---------------------------------------------------------------------------
# area and diameter lower bounds


def area_lower_universal(params: GeometryParams) -> float:
    """C_A / lambda^2, valid for every compact component."""
    return c_A() / lambda_scale(params) ** 2


def area_lower_bound(params: GeometryParams, g: int) -> float:
    """C1(I) (g + 1) / lambda^2."""
    return c1(params) * (g + 1) / lambda_scale(params) ** 2


def area_lower_bound_high_genus(params: GeometryParams, g: int) -> float:
    """C (g + 1) / lambda^2, valid once g >= G(I)."""
    G = g_threshold(params)
    if g < G:
        raise PreconditionError(f"needs genus g >= G(I) = {G}, got g = {g}")
    return high_genus_constant(params) * (g + 1) / lambda_scale(params) ** 2


def curvature_integral_upper(params: GeometryParams, g: int) -> float:
    """Upper bound -pi (g + 1) for the total Gauss curvature away from the regions.

    Holds in the normalized setting once g >= 12 I - 3.
    """
    if params.I >= 1 and g < 12 * params.I - 3:
        raise PreconditionError(f"needs g >= 12 I - 3 = {12 * params.I - 3}")
    return -math.pi * (g + 1)


def bounded_part_area_lower(params: GeometryParams, g: int) -> float:
    """(pi (g + 1) + K1 h(I)) / (1 + Chat^2 / 2), normalized setting.

    Lower bound for the area of the part of the surface where |A| stays
    below Chat = 1 + 2 Cs.
    """
    h = h_function(params) if params.I >= 1 else 0.0
    ch = c_hat_s(params)
    return (math.pi * (g + 1) + k1(params) * h) / (1 + ch * ch / 2)


def high_genus_area_split(params: GeometryParams, g: int) -> tuple[float, float]:
    """Write :func:`bounded_part_area_lower` as C (g + 1) plus a remainder.

    The remainder ((pi/2)(g + 1) + K1 h(I)) / (1 + Chat^2/2) is nonnegative
    exactly when g >= ceil(-2 K1 h / pi) - 1.
    """
    h = h_function(params) if params.I >= 1 else 0.0
    ch = c_hat_s(params)
    denom = 1 + ch * ch / 2
    main = high_genus_constant(params) * (g + 1)
    rest = (math.pi / 2 * (g + 1) + k1(params) * h) / denom
    return main, rest


def diameter_lower_bound(params: GeometryParams, g: int, mode: Optional[str] = None) -> float:
    """Diameter lower bound from the genus.

    ``mode`` is ``"stable"`` (I = 0, stable curvature), ``"k0"`` (I >= 1 but
    no concentration region, concentrated-mode curvature) or
    ``"concentrated"`` (I >= 1 with regions). The first two use
    arccosh(-K1 C1 (g + 1) / (2 pi) + 1) / (lambda sqrt(-K1)); the last uses
    arccosh(C1 (g + 1) / (20 I)) / (lambda sqrt(A3)) and returns 0 when the
    argument is below 1.
    """
    mode = mode or ("stable" if params.I == 0 else "k0")
    lam = lambda_scale(params)
    C1 = c1(params)
    if mode in ("stable", "k0"):
        K = k1(params, "stable" if mode == "stable" else "concentrated")
        return math.acosh(-K * C1 * (g + 1) / (2 * math.pi) + 1) / (lam * math.sqrt(-K))
    if mode == "concentrated":
        _require_index(params)
        arg = C1 * (g + 1) / (20 * params.I)
        if arg < 1:
            return 0.0
        return math.acosh(arg) / (lam * math.sqrt(a3(params)))
    raise ValueError(f"unknown diameter mode {mode!r}")


def diameter_lower_any(params: GeometryParams, g: int) -> float:
    """Diameter lower bound valid whether or not concentration regions occur."""
    if params.I == 0:
        return diameter_lower_bound(params, g, "stable")
    return min(diameter_lower_bound(params, g, "k0"), diameter_lower_bound(params, g, "concentrated"))


# ---------------------------------------------------------------------------
# compact case


@dataclass(frozen=True)
class CompactBounds:
    area_upper: float
    diameter_upper: float
    genus_upper: int
    A2: float


def area_bound_a2(params: GeometryParams, c: Optional[float] = None) -> float:
    """A2(I, c) = h_tilde(I, 2 (I + 1) R_c) in the normalized setting."""
    c = params.c if c is None else c
    if c is None:
        raise PreconditionError("the compact-case bounds need c")
    return h_tilde(params, 2 * (params.I + 1) * stability_radius(c))


def compact_case_bounds(params: GeometryParams) -> CompactBounds:
    """Diameter, area and genus upper bounds when 3 H^2 + scalar/2 >= c > 0."""
    if params.c is None:
        raise PreconditionError("the compact-case bounds need c")
    lam = lambda_scale(params)
    A2 = area_bound_a2(params)
    diam = 2 * (params.I + 1) * stability_radius(params.c) / lam
    genus = A2 / c1(params) - 1
    genus_upper = math.floor(genus) if math.isfinite(genus) else math.inf
    return CompactBounds(A2 / lam**2, diam, genus_upper, A2)


# ---------------------------------------------------------------------------
# scaling


def rescale_summary(summary: SurfaceSummary, lam: float) -> SurfaceSummary:
    """Summary of the same surface after multiplying the ambient metric by lam^2."""
    if not lam >= 1:
        raise ValueError(f"lam must be >= 1, got {lam!r}")
    ext = summary.extrinsic_diameter
    return replace(
        summary,
        area=summary.area * lam * lam,
        diameter=summary.diameter * lam,
        H=summary.H / lam,
        extrinsic_diameter=None if ext is None else ext * lam,
    )


def rescale_params(params: GeometryParams, lam: float) -> GeometryParams:
    """Constants of the ambient space after multiplying its metric by lam^2.

    ``c`` bounds a quantity of the normalized space and is left unchanged.
    """
    if not lam >= 1:
        raise ValueError(f"lam must be >= 1, got {lam!r}")
    return replace(params, r0=params.r0 * lam, K0=params.K0 / lam**2, H0=params.H0 / lam)


def normalize(summary: SurfaceSummary, params: GeometryParams):
    """Rescale both so that lambda becomes 1."""
    lam = lambda_scale(params)
    return rescale_summary(summary, lam), rescale_params(params, lam)


# ---------------------------------------------------------------------------
# constants table and surface check

H_RTOL = 0.02


def constants_table(params: GeometryParams) -> dict[str, Constant]:
    """Every named constant for ``params`` with its defining formula."""
    out = {
        "lambda": Constant(lambda_scale(params), "max(1, 1/r0, sqrt(K0), H0)"),
        "C_A": Constant(c_A(), "pi (pi/4)^2 exp(-pi/2 - 1 + pi/4)"),
        "K1_stable": Constant(k1(params, "stable"), "-1 - Cs^2/2"),
        "K1": Constant(k1(params, "concentrated"), "-1 - A1^2/2"),
        "C3": Constant(c3(params), "min(2 pi/(3|K1|), C_A/2)"),
        "C4'": Constant(c4_prime(params), "pi/|K1|"),
    }
    if params.I >= 1:
        out["C4''"] = Constant(c4_double_prime(params), "C_A/(12 I - 3)")
        out["C4"] = Constant(c4(params), "min(C4', C4'')")
    out["C1"] = Constant(c1(params), "min(C3, C4); C3 when I = 0")
    out["C"] = Constant(high_genus_constant(params), "pi/(3 + 4 Cs + 4 Cs^2)")
    out["Chat_s"] = Constant(c_hat_s(params), "1 + 2 Cs")
    out["A3"] = Constant(a3(params), "-4 K1")
    if params.I >= 1:
        out["h"] = Constant(h_function(params), "I * concentrated ball bound at r = 1, lambda = 1")
    out["G"] = Constant(g_threshold(params), "max(12 I - 3, ceil(-2 K1 h/pi) - 1); G(0) = 0")
    if params.c is not None:
        Rc = stability_radius(params.c)
        out["R_c"] = Constant(Rc, "2 pi/sqrt(3 c)")
        out["h_tilde"] = Constant(
            h_tilde(params, 2 * (params.I + 1) * Rc),
            "max of the ball area bounds at r = 2 (I + 1) R_c, lambda = 1",
        )
        out["A2"] = Constant(area_bound_a2(params), "h_tilde(I, 2 (I + 1) R_c)")
    return out


def _compare(name, kind, bound, observed, formula) -> Check:
    if kind == "lower":
        ok = observed >= bound
    elif kind == "strict-lower":
        ok = observed > bound
    else:
        ok = observed <= bound
    return Check(name, kind, bound, observed, "satisfied" if ok else "violated", formula)


def _status_only(name, kind, bound, status, formula, note="") -> Check:
    return Check(name, kind, bound, None, status, formula, note)


def check_surface(
    summary: SurfaceSummary, params: GeometryParams, advisory: bool = False
) -> BoundsReport:
    """Evaluate every applicable bound against an observed surface."""
    if summary.H > params.H0 * (1 + H_RTOL) + 1e-12:
        raise ValueError(f"summary H = {summary.H} exceeds H0 = {params.H0}")
    if summary.index > params.I:
        raise ValueError(f"summary index {summary.index} exceeds I = {params.I}")

    lam = lambda_scale(params)
    g = summary.genus
    checks: list[Check] = []
    infinite = "non-compact surfaces have infinite area"

    # universal area and diameter
    f_area0 = "Area >= C_A / lambda^2"
    f_diam0 = "extrinsic diameter > pi / (4 lambda)"
    if not summary.compact:
        checks.append(_status_only("area_universal", "lower", area_lower_universal(params), "vacuous", f_area0, infinite))
        checks.append(_status_only("diameter_universal", "strict-lower", math.pi / (4 * lam), "vacuous", f_diam0, "unbounded component"))
    else:
        checks.append(_compare("area_universal", "lower", area_lower_universal(params), summary.area, f_area0))
        observed = summary.extrinsic_diameter if summary.extrinsic_diameter is not None else summary.diameter
        check = _compare("diameter_universal", "strict-lower", math.pi / (4 * lam), observed, f_diam0)
        if summary.extrinsic_diameter is None:
            check.note = "intrinsic diameter used; it dominates the extrinsic one"
        checks.append(check)

    # genus driven area lower bounds
    f_area1 = "Area >= C1(I) (g + 1) / lambda^2"
    f_area1b = "Area >= C (g + 1) / lambda^2 for g >= G(I)"
    G = g_threshold(params)
    if not summary.compact:
        checks.append(_status_only("area_genus", "lower", area_lower_bound(params, g), "vacuous", f_area1, infinite))
        checks.append(_status_only("area_high_genus", "lower", None, "vacuous", f_area1b, infinite))
    else:
        checks.append(_compare("area_genus", "lower", area_lower_bound(params, g), summary.area, f_area1))
        if g >= G:
            checks.append(_compare("area_high_genus", "lower", area_lower_bound_high_genus(params, g), summary.area, f_area1b))
        else:
            checks.append(_status_only("area_high_genus", "lower", None, "not-applicable", f_area1b, f"g = {g} < G(I) = {G}"))

    # area upper bound from the ball of radius D
    f_ball = "Area(B(x, r)) <= max of the stable and concentrated ball bounds at r = D"
    f_diam1 = "Diameter >= arccosh bounds from the genus"
    if summary.compact and summary.connected:
        bound = h_tilde(params, summary.diameter, lam)
        checks.append(_compare("area_ball_upper", "upper", bound, summary.area, f_ball))
        checks.append(_compare("diameter_genus", "lower", diameter_lower_any(params, g), summary.diameter, f_diam1))
    else:
        why = "needs a compact connected surface"
        checks.append(_status_only("area_ball_upper", "upper", None, "not-applicable", f_ball, why))
        checks.append(_status_only("diameter_genus", "lower", None, "not-applicable", f_diam1, why))

    # compact case
    if params.c is not None:
        cb = compact_case_bounds(params)
        f_cd = "Diameter <= 2 (I + 1) R_c / lambda"
        f_ca = "Area <= A2(I, c) / lambda^2"
        f_cg = "g <= A2(I, c) / C1(I) - 1"
        if not summary.connected:
            for name, kind, b, f in (("compact_diameter_upper", "upper", cb.diameter_upper, f_cd),
                                     ("compact_area_upper", "upper", cb.area_upper, f_ca)):
                checks.append(_status_only(name, kind, b, "not-applicable", f, "needs a connected surface"))
            checks.append(_status_only("compact_genus_upper", "upper", cb.genus_upper, "not-applicable", f_cg, "needs a connected surface"))
        elif not summary.compact:
            note = "the positivity assumption forces compactness"
            for name, b, f in (("compact_diameter_upper", cb.diameter_upper, f_cd),
                               ("compact_area_upper", cb.area_upper, f_ca),
                               ("compact_genus_upper", cb.genus_upper, f_cg)):
                checks.append(Check(name, "upper", b, None, "violated", f, note))
        else:
            checks.append(_compare("compact_diameter_upper", "upper", cb.diameter_upper, summary.diameter, f_cd))
            checks.append(_compare("compact_area_upper", "upper", cb.area_upper, summary.area, f_ca))
            checks.append(_compare("compact_genus_upper", "upper", cb.genus_upper, g, f_cg))

    return BoundsReport(
        params=params.to_dict(),
        constants=constants_table(params),
        checks={c.name: c for c in checks},
        summary=summary.to_dict(),
        advisory=advisory,
    )


def bounds_for_genus(params: GeometryParams, g: int) -> BoundsReport:
    """Bounds for a hypothetical surface of genus g, without observations."""
    checks = [
        Check("area_universal", "lower", area_lower_universal(params), None, "not-checked", "Area >= C_A / lambda^2"),
        Check("area_genus", "lower", area_lower_bound(params, g), None, "not-checked", "Area >= C1(I) (g + 1) / lambda^2"),
        Check("diameter_universal", "strict-lower", math.pi / (4 * lambda_scale(params)), None, "not-checked", "extrinsic diameter > pi / (4 lambda)"),
        Check("diameter_genus", "lower", diameter_lower_any(params, g), None, "not-checked", "Diameter >= arccosh bounds from the genus"),
    ]
    G = g_threshold(params)
    if g >= G:
        checks.append(Check("area_high_genus", "lower", area_lower_bound_high_genus(params, g), None, "not-checked", "Area >= C (g + 1) / lambda^2 for g >= G(I)"))
    if params.c is not None:
        cb = compact_case_bounds(params)
        checks.append(Check("compact_diameter_upper", "upper", cb.diameter_upper, None, "not-checked", "Diameter <= 2 (I + 1) R_c / lambda"))
        checks.append(Check("compact_area_upper", "upper", cb.area_upper, None, "not-checked", "Area <= A2(I, c) / lambda^2"))
        checks.append(Check("compact_genus_upper", "upper", cb.genus_upper, g, "satisfied" if g <= cb.genus_upper else "violated", "g <= A2(I, c) / C1(I) - 1"))
    return BoundsReport(
        params=params.to_dict(),
        constants=constants_table(params),
        checks={c.name: c for c in checks},
        summary={"genus": g},
    )
