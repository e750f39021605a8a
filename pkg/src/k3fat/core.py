"""Integer dimension formulas and the system data model shared by all modules.

Everything here is exact arbitrary-precision integer arithmetic; there is no
floating point anywhere in this module.  A fat point of multiplicity m imposes
m(m+1)/2 linear conditions; virtual dimensions are the ambient dimension minus
the imposed conditions, and the expected dimension clamps at -1 (the empty
system).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple


class Status(Enum):
    """Speciality verdict attached to a dimension report."""

    NONSPECIAL = "NONSPECIAL"
    SPECIAL = "SPECIAL"
    UNKNOWN = "UNKNOWN"
    CONDITIONAL = "CONDITIONAL"


def point_conditions(multiplicity: int) -> int:
    """Number of linear conditions imposed by one point: m(m+1)/2."""
    return multiplicity * (multiplicity + 1) // 2


@dataclass(frozen=True)
class FatPointGroup:
    """A group of `count` general points sharing one multiplicity."""

    multiplicity: int
    count: int

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.multiplicity}")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")

    @property
    def conditions(self) -> int:
        return self.count * point_conditions(self.multiplicity)


def _as_groups(points) -> Tuple[FatPointGroup, ...]:
    groups = []
    for entry in points:
        if isinstance(entry, FatPointGroup):
            groups.append(entry)
        else:
            m, n = entry
            groups.append(FatPointGroup(m, n))
    return tuple(groups)


@dataclass(frozen=True)
class K3System:
    """A linear system of curves of degree d through fat points on a generic
    K3 surface whose Picard generator has self-intersection gamma.

    gamma is even and >= 2 (gamma = 2g-2 for genus g >= 2); gamma = 4
    corresponds to quartic surfaces in P^3.  An empty point multiset means the
    unconditioned system of all degree-d curves.
    """

    gamma: int
    degree: int
    points: Tuple[FatPointGroup, ...] = ()

    def __post_init__(self) -> None:
        if self.gamma < 2 or self.gamma % 2 != 0:
            raise ValueError(f"gamma must be an even integer >= 2, got {self.gamma}")
        if self.degree < 1:
            raise ValueError(f"degree must be >= 1, got {self.degree}")
        object.__setattr__(self, "points", _as_groups(self.points))

    @staticmethod
    def homogeneous(gamma: int, degree: int, multiplicity: int, count: int) -> "K3System":
        """Build L^gamma(degree, multiplicity^count); multiplicity 0 or count 0
        normalize to the unconditioned system."""
        if multiplicity < 0 or count < 0:
            raise ValueError("multiplicity and count must be non-negative")
        if multiplicity == 0 or count == 0:
            return K3System(gamma, degree)
        return K3System(gamma, degree, (FatPointGroup(multiplicity, count),))

    @property
    def total_points(self) -> int:
        return sum(g.count for g in self.points)

    @property
    def is_homogeneous(self) -> bool:
        return len({g.multiplicity for g in self.points}) <= 1

    @property
    def multiplicity(self) -> int:
        """Common multiplicity of a homogeneous nonempty system."""
        ms = {g.multiplicity for g in self.points}
        if len(ms) != 1:
            raise ValueError("system is empty or not homogeneous")
        return ms.pop()


@dataclass(frozen=True)
class PlanarSystem:
    """A plane system of curves of degree delta through fat points.

    delta < 0 denotes the empty system by convention; the point data is then
    irrelevant.
    """

    degree: int
    points: Tuple[FatPointGroup, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", _as_groups(self.points))

    @staticmethod
    def homogeneous(degree: int, multiplicity: int, count: int) -> "PlanarSystem":
        if multiplicity == 0 or count == 0:
            return PlanarSystem(degree)
        return PlanarSystem(degree, (FatPointGroup(multiplicity, count),))

    @property
    def total_points(self) -> int:
        return sum(g.count for g in self.points)


def vdim_k3(sys: K3System) -> int:
    """Virtual dimension gamma*d^2/2 + 1 - sum n_i * m_i(m_i+1)/2.

    gamma even guarantees integrality of the ambient term.
    """
    ambient = (sys.gamma // 2) * sys.degree * sys.degree + 1
    return ambient - sum(g.conditions for g in sys.points)


def edim(v: int) -> int:
    """Expected dimension max(v, -1)."""
    return max(v, -1)


def vdim_planar(sys: PlanarSystem) -> int:
    """Virtual dimension delta(delta+3)/2 - sum n_i * m_i(m_i+1)/2.

    For delta < 0 the system is empty by convention and -1 is returned, so
    that the combination formulas stay total.
    """
    if sys.degree < 0:
        return -1
    return sys.degree * (sys.degree + 3) // 2 - sum(g.conditions for g in sys.points)


def planar_vdim_formula(delta: int, multiplicity: int, count: int) -> int:
    """Unclamped planar virtual dimension delta(delta+3)/2 - count*m(m+1)/2.

    Unlike vdim_planar this evaluates the raw quadratic for every delta,
    which is what makes the surface/plane bookkeeping identity polynomial
    in the matching degree k.
    """
    return delta * (delta + 3) // 2 - count * point_conditions(multiplicity)


def planar_dim_nonspecial(delta: int, multiplicity: int, count: int) -> int:
    """Dimension max(-1, vdim) of a plane system known to be non-special.

    Valid in particular for homogeneous systems with 4 or 9 general points,
    which are never special.
    """
    if delta < 0:
        return -1
    return max(-1, planar_vdim_formula(delta, multiplicity, count))


@dataclass(frozen=True)
class DimensionReport:
    """vdim, edim, computed dimension and speciality verdict for one system.

    dim is None exactly when the status is UNKNOWN.  CONDITIONAL marks a
    dimension that is valid only under an assumed single-point base policy.
    """

    vdim: int
    edim: int
    dim: Optional[int]
    status: Status
    trace: Optional[object] = field(default=None, compare=False, repr=False)
    oracle_dim: Optional[int] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.edim != max(self.vdim, -1):
            raise ValueError("edim must equal max(vdim, -1)")
        if self.status is Status.UNKNOWN:
            if self.dim is not None:
                raise ValueError("UNKNOWN reports carry no dimension")
            return
        if self.dim is None:
            raise ValueError(f"{self.status.value} reports need a dimension")
        if not (self.vdim <= self.edim <= self.dim):
            raise ValueError("known dimension must satisfy vdim <= edim <= dim")
        if self.status is Status.NONSPECIAL and self.dim != self.edim:
            raise ValueError("NONSPECIAL requires dim == edim")
        if self.status is Status.SPECIAL and self.dim <= self.edim:
            raise ValueError("SPECIAL requires dim > edim")

    @property
    def is_definite(self) -> bool:
        return self.dim is not None

    def with_trace(self, trace) -> "DimensionReport":
        return replace(self, trace=trace)

    def with_oracle_dim(self, oracle_dim: int) -> "DimensionReport":
        """Attach an oracle measurement as advisory data; never a status."""
        return replace(self, oracle_dim=oracle_dim)


def report_nonspecial(v: int) -> DimensionReport:
    return DimensionReport(v, edim(v), edim(v), Status.NONSPECIAL)


def report_special(v: int, dim: int) -> DimensionReport:
    return DimensionReport(v, edim(v), dim, Status.SPECIAL)


def report_conditional(v: int) -> DimensionReport:
    return DimensionReport(v, edim(v), edim(v), Status.CONDITIONAL)


def report_unknown(v: int) -> DimensionReport:
    return DimensionReport(v, edim(v), None, Status.UNKNOWN)
