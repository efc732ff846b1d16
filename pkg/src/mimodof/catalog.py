"""Region constructors and the antenna-configuration case classifier.

Covers the two-user MIMO broadcast channel (one transmitter with M antennas,
receivers with N1 and N2 antennas) and the two-user interference channel
(transmitter i with Mi antennas talking to receiver i with Ni antennas),
under i.i.d. fading with no channel state at the transmitters.

Broadcast regions are closed form for every configuration. Interference
configurations split into cases after normalizing so that N1 <= N2:

* case I   (M2 <= N1, or either Mi <= N1 when N1 = N2): the region is a
  pentagon achieved by receiver zero-forcing and equals the full-CSIT region;
* case II  (N1 < M2 and M1 >= N1): the region is the time-division triangle
  d1/N1 + d2/min(M2, N2) <= 1;
* case III (N1 < N2, N1 < M2 and M1 < N1): the exact region is open, so the
  classifier reports an outer bound and an achievable inner hull instead.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .regions import (
    DofRegion,
    Halfspace,
    equals,
    is_subset,
    mirrored,
    region_from_halfspaces,
    region_to_dict,
)

__all__ = [
    "SCHEME_RX_ZF",
    "SCHEME_TDM",
    "SCHEME_UNKNOWN",
    "TABLE_UNEQUAL",
    "TABLE_EQUAL",
    "BcConfig",
    "IcConfig",
    "CaseLabel",
    "ClassifiedRegions",
    "CasePartitionError",
    "bc_region",
    "bc_csit_region",
    "ic_csit_region",
    "ic_outer_bound",
    "ic_classify",
    "case_partition_check",
]

SCHEME_RX_ZF = "receiver-zero-forcing"
SCHEME_TDM = "time-division"
SCHEME_UNKNOWN = "unknown"

TABLE_UNEQUAL = "N1<N2"
TABLE_EQUAL = "N1=N2"


def _check_antennas(**counts: int) -> None:
    for name, value in counts.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ValueError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class BcConfig:
    """Broadcast channel: M transmit antennas, receivers with N1 and N2."""

    M: int
    N1: int
    N2: int

    def __post_init__(self) -> None:
        _check_antennas(M=self.M, N1=self.N1, N2=self.N2)


@dataclass(frozen=True)
class IcConfig:
    """Interference channel: transmitter i has Mi antennas, receiver i has Ni."""

    M1: int
    M2: int
    N1: int
    N2: int

    def __post_init__(self) -> None:
        _check_antennas(M1=self.M1, M2=self.M2, N1=self.N1, N2=self.N2)

    def swapped(self) -> "IcConfig":
        return IcConfig(self.M2, self.M1, self.N2, self.N1)


@dataclass(frozen=True)
class CaseLabel:
    """Classifier verdict for one interference configuration.

    ``table`` and ``case_id`` refer to the normalized ordering (N1 <= N2);
    ``swapped`` records whether the users were exchanged to reach it.
    """

    table: str
    case_id: str
    swapped: bool
    region_known: bool
    csit_equal: bool
    scheme: str


@dataclass(frozen=True)
class ClassifiedRegions:
    """Full classifier output: exact region when known, bounds otherwise.

    When ``no_csit`` is present, ``inner`` and ``outer`` are the same region,
    so downstream code can always work with the (inner, outer) pair.
    """

    label: CaseLabel
    no_csit: Optional[DofRegion]
    outer: DofRegion
    inner: DofRegion
    csit: DofRegion

    def to_dict(self) -> dict:
        return {
            "label": asdict(self.label),
            "no_csit": region_to_dict(self.no_csit) if self.no_csit is not None else None,
            "outer": region_to_dict(self.outer),
            "inner": region_to_dict(self.inner),
            "csit": region_to_dict(self.csit),
        }


class CasePartitionError(Exception):
    """Raised by case_partition_check with the first violating config."""

    def __init__(self, config: IcConfig, reason: str):
        super().__init__(f"{config}: {reason}")
        self.config = config
        self.reason = reason


def bc_region(config: BcConfig) -> DofRegion:
    """No-CSIT broadcast region: d1/min(M,N1) + d2/min(M,N2) <= 1."""
    p = min(config.M, config.N1)
    q = min(config.M, config.N2)
    h = Halfspace(Fraction(1, p), Fraction(1, q), 1)
    return region_from_halfspaces([h], tag="bc-no-csit")


def bc_csit_region(config: BcConfig) -> DofRegion:
    """Full-CSIT broadcast region: per-user caps plus the sum cap min(M, N1+N2)."""
    hs = [
        Halfspace(1, 0, min(config.M, config.N1)),
        Halfspace(0, 1, min(config.M, config.N2)),
        Halfspace(1, 1, min(config.M, config.N1 + config.N2)),
    ]
    return region_from_halfspaces(hs, tag="bc-csit")


def ic_csit_region(config: IcConfig) -> DofRegion:
    """Full-CSIT interference region: per-link caps plus the usual sum cap."""
    m1, m2, n1, n2 = config.M1, config.M2, config.N1, config.N2
    sum_cap = min(m1 + m2, n1 + n2, max(m1, n2), max(m2, n1))
    hs = [
        Halfspace(1, 0, min(m1, n1)),
        Halfspace(0, 1, min(m2, n2)),
        Halfspace(1, 1, sum_cap),
    ]
    return region_from_halfspaces(hs, tag="ic-csit")


def _zf_pentagon(config: IcConfig, tag: str) -> DofRegion:
    # Case I shape: individual caps plus the first receiver's dimension as
    # sum cap. Stated for the normalized ordering N1 <= N2.
    hs = [
        Halfspace(1, 0, min(config.M1, config.N1)),
        Halfspace(0, 1, min(config.M2, config.N2)),
        Halfspace(1, 1, config.N1),
    ]
    return region_from_halfspaces(hs, tag=tag)


def _tdm_triangle(config: IcConfig, tag: str) -> DofRegion:
    q = min(config.M2, config.N2)
    h = Halfspace(Fraction(1, config.N1), Fraction(1, q), 1)
    return region_from_halfspaces([h], tag=tag)


def _outer_formula(config: IcConfig, tag: str) -> DofRegion:
    # Valid whenever N1 <= N2 and N1 < M2 (normalized ordering).
    q = min(config.M2, config.N2)
    hs = [
        Halfspace(Fraction(1, config.N1), Fraction(1, q), 1),
        Halfspace(1, 0, min(config.M1, config.N1)),
        Halfspace(0, 1, q),
    ]
    return region_from_halfspaces(hs, tag=tag)


def _inner_hull(config: IcConfig, tag: str) -> DofRegion:
    # Convex hull of (0,0), (M1,0), the zero-forcing corner (M1, N1-M1) and
    # the time-division endpoint (0, min(M2,N2)). Only used when M1 < N1 < M2,
    # so the hull is a proper quadrilateral.
    a = config.M1
    c = config.N1 - config.M1
    q = min(config.M2, config.N2)
    hs = [
        Halfspace(1, 0, a),
        Halfspace(q - c, a, a * q),
    ]
    return region_from_halfspaces(hs, tag=tag)


def ic_classify(config: IcConfig) -> ClassifiedRegions:
    """Classify an interference configuration and build its regions.

    Users are swapped first if needed so the classifier works on N1 <= N2,
    and every returned region is mirrored back to the caller's ordering.
    """
    swapped = config.N1 > config.N2
    n = config.swapped() if swapped else config

    no_csit: Optional[DofRegion]
    if n.N1 < n.N2:
        table = TABLE_UNEQUAL
        if n.M2 <= n.N1:
            case_id, scheme = "I", SCHEME_RX_ZF
            no_csit = _zf_pentagon(n, "ic-no-csit")
        elif n.N1 <= n.M1:
            case_id, scheme = "II", SCHEME_TDM
            no_csit = _tdm_triangle(n, "ic-no-csit")
        else:
            case_id, scheme = "III", SCHEME_UNKNOWN
            no_csit = None
    else:
        table = TABLE_EQUAL
        if n.M2 <= n.N1 or n.M1 <= n.N1:
            case_id, scheme = "I", SCHEME_RX_ZF
            no_csit = _zf_pentagon(n, "ic-no-csit")
        else:
            case_id, scheme = "II", SCHEME_TDM
            no_csit = _tdm_triangle(n, "ic-no-csit")

    if no_csit is None:
        outer = _outer_formula(n, "ic-outer")
        inner = _inner_hull(n, "ic-inner")
    else:
        outer = no_csit
        inner = no_csit
    csit = ic_csit_region(n)

    if swapped:
        no_csit = mirrored(no_csit) if no_csit is not None else None
        outer = mirrored(outer)
        inner = mirrored(inner)
        csit = mirrored(csit)

    label = CaseLabel(
        table=table,
        case_id=case_id,
        swapped=swapped,
        region_known=no_csit is not None,
        csit_equal=no_csit is not None and equals(no_csit, csit),
        scheme=scheme,
    )
    return ClassifiedRegions(label=label, no_csit=no_csit, outer=outer, inner=inner, csit=csit)


def ic_outer_bound(config: IcConfig) -> DofRegion:
    """Outer bound on the no-CSIT interference region.

    Exact (equal to the region) outside case III; in case III it is the
    tightest bound the classifier knows.
    """
    return ic_classify(config).outer


def _normalized_conditions(n: IcConfig) -> list[bool]:
    if n.N1 < n.N2:
        return [
            n.M2 <= n.N1,
            n.N1 < n.M2 and n.N1 <= n.M1,
            n.N1 < n.M2 and n.M1 < n.N1,
        ]
    return [
        n.M2 <= n.N1 or n.M1 <= n.N1,
        n.N1 < n.M2 and n.N1 < n.M1,
    ]


def case_partition_check(limit: int) -> bool:
    """Sweep all configs with antenna counts in [1, limit] and verify that
    the case conditions partition them and the advertised invariants hold.

    Returns True, or raises CasePartitionError naming the first violating
    configuration.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    for m1, m2, n1, n2 in product(range(1, limit + 1), repeat=4):
        config = IcConfig(m1, m2, n1, n2)
        cr = ic_classify(config)
        norm = config.swapped() if cr.label.swapped else config

        def fail(reason: str) -> None:
            raise CasePartitionError(config, reason)

        if sum(_normalized_conditions(norm)) != 1:
            fail("case conditions do not pick exactly one case")
        if not is_subset(cr.inner, cr.outer):
            fail("inner bound not contained in outer bound")
        if not is_subset(cr.outer, cr.csit):
            fail("outer bound not contained in the CSIT region")
        known = cr.label.region_known
        if known != (cr.no_csit is not None):
            fail("region_known flag disagrees with no_csit presence")
        expect_unknown = cr.label.table == TABLE_UNEQUAL and cr.label.case_id == "III"
        if known == expect_unknown:
            fail("region_known wrong for this case")
        if cr.label.csit_equal and not known:
            fail("csit_equal set for an unknown region")
        if known and not (equals(cr.inner, cr.no_csit) and equals(cr.outer, cr.no_csit)):
            fail("known region must coincide with both bounds")
        if norm.N1 == norm.N2:
            if cr.label.case_id == "III":
                fail("case III must not appear when N1 = N2")
            if not equals(cr.inner, cr.outer):
                fail("bounds must collapse when N1 = N2")
        if cr.label.case_id == "I" and not cr.label.csit_equal:
            fail("case I region must equal the CSIT region")
        if cr.label.case_id == "II" and cr.label.csit_equal:
            fail("case II region must shrink strictly from the CSIT region")
    return True
