"""Degeneration recursion for homogeneous systems with n = 4^u * 9^w points.

One recursion step degenerates the surface into its blow-up at b general
points together with b planes, splitting L^gamma(d, m^n) into four branch
systems for a matching degree k:

    surface branch      L^gamma(d, k^b)
    surface hat branch  L^gamma(d, (k+1)^b)
    planar branch       L(k, m^c)        on each plane, c = n/b in {4, 9}
    planar hat branch   L(k-1, m^c)

The dimensions combine along the b matching curves (degree-k rational
curves) through the restriction dimensions

    r_surface = l_S - l_S_hat - 1,   r_planar = l_P - l_P_hat - 1,

the transversal intersection max(-1, r_surface + b*r_planar - b*k), and

    l0 = intersection + b*(l_P_hat + 1) + l_S_hat + 1.

The degenerate-fiber dimension l0 bounds the true dimension l from above,
and l >= edim always, so l0 == edim certifies dim = edim (non-special).
The engine only ever certifies; when the side conditions of a step fail it
reports UNKNOWN rather than guessing.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from .core import (
    DimensionReport,
    K3System,
    PlanarSystem,
    Status,
    edim,
    planar_dim_nonspecial,
    planar_vdim_formula,
    point_conditions,
    report_unknown,
    vdim_k3,
    vdim_planar,
)

#: Resolves a single-point system L^gamma(d, mu) to a DimensionReport.
BaseResolver = Callable[[int, int, int], DimensionReport]


class Regime(Enum):
    """Sign regime of the recursion: v >= -1 (NONNEG) or v <= -1 (NEG)."""

    NONNEG = "NONNEG"
    NEG = "NEG"


class EngineError(RuntimeError):
    """An internal consistency check of the recursion failed."""


def factor_4_9(n: int) -> Optional[Tuple[int, int]]:
    """Return (u, w) with n = 4^u * 9^w, or None if n has no such form."""
    if n < 1:
        return None
    u = w = 0
    while n % 4 == 0:
        n //= 4
        u += 1
    while n % 9 == 0:
        n //= 9
        w += 1
    return (u, w) if n == 1 else None


def is_admissible_count(n: int) -> bool:
    return factor_4_9(n) is not None


def _homogeneous_data(sys: K3System) -> Tuple[int, int, int, int]:
    """(gamma, d, m, n) of a homogeneous system; m = 0 for the empty one."""
    if not sys.is_homogeneous:
        raise ValueError("the recursion handles homogeneous systems only")
    n = sys.total_points
    m = sys.multiplicity if n > 0 else 0
    return sys.gamma, sys.degree, m, n


@dataclass(frozen=True)
class KSelectionBounds:
    """Admissible matching degrees k for one recursion step.

    NONNEG regime: k^2 + k <= alpha and k^2 + 3k >= beta with
        alpha = (gamma d^2 + 4)/b,    beta = c m(m+1) - 2,
    equivalent to v_surface >= -1 and v_planar >= -1.

    NEG regime: k^2 + 3k >= alpha and k^2 + k <= beta with
        alpha = (gamma d^2 + 4)/b - 2,  beta = c m(m+1),
    equivalent to v_surface_hat <= -1 and v_planar_hat <= -1.

    Either way the admissible non-negative integers form one interval
    [k_min, k_max], empty when k_min > k_max.
    """

    regime: Regime
    alpha: Fraction
    beta: Fraction
    k_min: int
    k_max: int

    @property
    def is_empty(self) -> bool:
        return self.k_min > self.k_max

    def admissible(self) -> range:
        return range(self.k_min, self.k_max + 1)

    def contains(self, k: int) -> bool:
        return self.k_min <= k <= self.k_max


def _least_k(pred) -> int:
    """Smallest k >= 0 with pred(k) true, for a predicate monotone in k."""
    k = 0
    step = 1
    while not pred(k):
        k += step
        step *= 2
    lo, hi = max(0, k - step // 2), k
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def k_selection_bounds(sys: K3System, c: int, regime: Regime) -> KSelectionBounds:
    """Integer-exact admissible interval for the matching degree k."""
    gamma, d, m, n = _homogeneous_data(sys)
    if c not in (4, 9) or n % c != 0:
        raise ValueError(f"c must be 4 or 9 and divide n, got c={c}, n={n}")
    b = n // c
    a_num = gamma * d * d + 4
    cm = c * m * (m + 1)
    if regime is Regime.NONNEG:
        alpha = Fraction(a_num, b)
        beta = Fraction(cm - 2)
        # k(k+1) <= alpha  and  k(k+3) >= beta
        k_max = _least_k(lambda k: b * (k + 1) * (k + 2) > a_num)
        k_min = _least_k(lambda k: k * (k + 3) >= cm - 2)
    else:
        alpha = Fraction(a_num, b) - 2
        beta = Fraction(cm)
        # (k+1)(k+2) >= alpha + 2  and  k(k+1) <= beta
        k_min = _least_k(lambda k: b * (k + 1) * (k + 2) >= a_num)
        k_max = _least_k(lambda k: (k + 1) * (k + 2) > cm)
    return KSelectionBounds(regime, alpha, beta, k_min, k_max)


def select_k(sys: K3System, c: int, regime: Regime) -> Optional[int]:
    """Pick the matching degree for one step, or None if none is admissible.

    Tie-break: the largest admissible k.  On the final step (b = 1) over
    gamma = 4 the choice mirrors the proved endgame: in the NONNEG regime
    k in {2d-1, 2d} is avoided when possible for d >= 2, because the
    single-point branches L^4(d, 2d) would be special; in the NEG regime
    k = 2d is forced whenever admissible.
    """
    bounds = k_selection_bounds(sys, c, regime)
    if bounds.is_empty:
        return None
    gamma, d, m, n = _homogeneous_data(sys)
    b = n // c
    if gamma == 4 and b == 1:
        if regime is Regime.NONNEG and d >= 2:
            preferred = [k for k in bounds.admissible() if k not in (2 * d - 1, 2 * d)]
            if preferred:
                return max(preferred)
            return bounds.k_max
        if regime is Regime.NEG and bounds.contains(2 * d):
            return 2 * d
    return bounds.k_max


def combine_dims(l_s: int, l_s_hat: int, l_p: int, l_p_hat: int, b: int, k: int) -> int:
    """Dimension of the degenerate fiber from the four branch dimensions."""
    if b < 1:
        raise ValueError("b must be >= 1")
    for l in (l_s, l_s_hat, l_p, l_p_hat):
        if l < -1:
            raise ValueError("branch dimensions must be >= -1")
    r_s = l_s - l_s_hat - 1
    r_p = l_p - l_p_hat - 1
    intersection = max(-1, r_s + b * r_p - b * k)
    return intersection + b * (l_p_hat + 1) + l_s_hat + 1


def check_vdim_identity(sys: K3System, c: int, k: int) -> bool:
    """Verify the four equivalent virtual-dimension bookkeeping identities

        v = v_S + b*v_P_hat + b = v_S + b*(v_P - k)
          = v_S_hat + b*v_P + b = v_S_hat + b*(v_P_hat + k + 2)

    with v_S, v_S_hat the surface branch vdims at multiplicities k, k+1 and
    v_P, v_P_hat the unclamped planar vdims at degrees k, k-1.  Used as a
    permanent self-check inside the recursion.
    """
    gamma, d, m, n = _homogeneous_data(sys)
    if c not in (4, 9) or n % c != 0:
        raise ValueError(f"c must be 4 or 9 and divide n, got c={c}, n={n}")
    b = n // c
    half = gamma // 2
    v = half * d * d + 1 - n * point_conditions(m)
    v_s = half * d * d + 1 - b * point_conditions(k)
    v_s_hat = half * d * d + 1 - b * point_conditions(k + 1)
    v_p = planar_vdim_formula(k, m, c)
    v_p_hat = planar_vdim_formula(k - 1, m, c)
    return (
        v == v_s + b * v_p_hat + b
        == v_s + b * (v_p - k)
        == v_s_hat + b * v_p + b
        == v_s_hat + b * (v_p_hat + k + 2)
    )


# ---------------------------------------------------------------------------
# Trace records


@dataclass(frozen=True)
class PlanarLeaf:
    """A planar branch resolved by the 4-and-9-points non-speciality rule."""

    system: PlanarSystem
    vdim: int
    edim: int
    dim: int
    status: Status


@dataclass(frozen=True)
class TraceNode:
    """One node of the recursion tree: a system with its verdict and,
    for composite systems, the degeneration step that resolved it."""

    system: K3System
    vdim: int
    edim: int
    dim: Optional[int]
    status: Status
    certified: bool
    kind: str  # "unconditioned" | "base" | "step" | "failed"
    step: Optional["DegenerationStep"] = None
    note: Optional[str] = None


@dataclass(frozen=True)
class DegenerationStep:
    """One recursion level: the chosen (c, b, k), the four branch systems,
    the restriction dimensions and the combined fiber dimension l0."""

    c: int
    b: int
    k: int
    regime: Regime
    surface_branch: K3System
    surface_branch_hat: K3System
    planar_branch: PlanarSystem
    planar_branch_hat: PlanarSystem
    surface_node: TraceNode
    surface_hat_node: TraceNode
    planar_leaf: PlanarLeaf
    planar_hat_leaf: PlanarLeaf
    r_surface: Optional[int]
    r_planar: Optional[int]
    intersection_dim: Optional[int]
    l0: Optional[int]


@dataclass(frozen=True)
class DegenerationTrace:
    """Serializable audit trail of one full recursion."""

    root: K3System
    node: TraceNode

    def to_dict(self) -> dict:
        return _node_to_dict(self.node)

    def to_json(self, indent: int = 2) -> str:
        import json

        return json.dumps(self.to_dict(), indent=indent)


def _planar_leaf_dict(leaf: PlanarLeaf) -> dict:
    return {
        "delta": leaf.system.degree,
        "vdim": leaf.vdim,
        "edim": leaf.edim,
        "dim": leaf.dim,
        "status": leaf.status.value,
    }


def _branch_summary(node: TraceNode) -> dict:
    out = {
        "vdim": node.vdim,
        "edim": node.edim,
        "dim": node.dim,
        "status": node.status.value,
        "kind": node.kind,
    }
    if node.note:
        out["note"] = node.note
    if node.step is not None:
        out["step"] = _step_to_dict(node.step)
    return out


def _step_to_dict(step: "DegenerationStep") -> dict:
    return {
        "c": step.c,
        "b": step.b,
        "k": step.k,
        "regime": step.regime.value,
        "branches": {
            "surface": _branch_summary(step.surface_node),
            "surface_hat": _branch_summary(step.surface_hat_node),
            "planar": _planar_leaf_dict(step.planar_leaf),
            "planar_hat": _planar_leaf_dict(step.planar_hat_leaf),
        },
        "r_surface": step.r_surface,
        "r_planar": step.r_planar,
        "intersection_dim": step.intersection_dim,
        "l0": step.l0,
    }


def _node_to_dict(node: TraceNode) -> dict:
    sys = node.system
    m = sys.multiplicity if sys.total_points > 0 else 0
    out: dict = {
        "system": {"gamma": sys.gamma, "d": sys.degree, "m": m, "n": sys.total_points},
        "vdim": node.vdim,
        "edim": node.edim,
        "dim": node.dim,
        "status": node.status.value,
        "certified": node.certified,
        "kind": node.kind,
    }
    if node.note:
        out["note"] = node.note
    if node.step is not None:
        out["step"] = _step_to_dict(node.step)
    return out


# ---------------------------------------------------------------------------
# The recursion


def _planar_leaf(delta: int, m: int, c: int) -> PlanarLeaf:
    system = PlanarSystem.homogeneous(delta, m, c)
    from .core import vdim_planar

    v = vdim_planar(system)
    dim = planar_dim_nonspecial(delta, m, c)
    return PlanarLeaf(system, v, edim(v), dim, Status.NONSPECIAL)


def _attempt_step(
    sys: K3System,
    v: int,
    c: int,
    b: int,
    k: int,
    regime: Regime,
    base: BaseResolver,
    memo: Dict,
) -> Tuple[bool, bool, DegenerationStep]:
    """Try one degeneration step; returns (certified, conditional, record)."""
    gamma, d, m, _ = _homogeneous_data(sys)
    surface = K3System.homogeneous(gamma, d, k, b)
    surface_hat = K3System.homogeneous(gamma, d, k + 1, b)
    rep_s, node_s = _recurse(surface, base, memo)
    rep_sh, node_sh = _recurse(surface_hat, base, memo)
    leaf_p = _planar_leaf(k, m, c)
    leaf_ph = _planar_leaf(k - 1, m, c)

    if rep_s.dim is None or rep_sh.dim is None:
        step = DegenerationStep(
            c, b, k, regime, surface, surface_hat, leaf_p.system, leaf_ph.system,
            node_s, node_sh, leaf_p, leaf_ph, None, None, None, None,
        )
        return False, False, step

    l_s, l_sh, l_p, l_ph = rep_s.dim, rep_sh.dim, leaf_p.dim, leaf_ph.dim
    r_s = l_s - l_sh - 1
    r_p = l_p - l_ph - 1
    intersection = max(-1, r_s + b * r_p - b * k)
    l0 = combine_dims(l_s, l_sh, l_p, l_ph, b, k)
    step = DegenerationStep(
        c, b, k, regime, surface, surface_hat, leaf_p.system, leaf_ph.system,
        node_s, node_sh, leaf_p, leaf_ph, r_s, r_p, intersection, l0,
    )

    half = gamma // 2
    v_s = half * d * d + 1 - b * point_conditions(k)
    v_sh = half * d * d + 1 - b * point_conditions(k + 1)
    v_p = planar_vdim_formula(k, m, c)
    v_ph = planar_vdim_formula(k - 1, m, c)
    branch_nonspecial = (
        rep_s.status in (Status.NONSPECIAL, Status.CONDITIONAL)
        and rep_sh.status in (Status.NONSPECIAL, Status.CONDITIONAL)
    )
    conditional = Status.CONDITIONAL in (rep_s.status, rep_sh.status)

    if regime is Regime.NONNEG:
        ok = v_s >= -1 and v_p >= -1 and branch_nonspecial
        if ok and l0 != v:
            raise EngineError(
                f"NONNEG step for {sys} at k={k} combined to l0={l0} != v={v}"
            )
        return ok, conditional, step

    # NEG regime: the plain step needs both hat branches virtually empty and
    # the surface branches non-special; the gamma=4 endgame replaces that by
    # the k = 2d step through the known dimension-0 single-point system, which
    # is only applied inside the proved scope (c = 4, or 2d != 1 mod 3).
    plain = v_sh <= -1 and v_ph <= -1 and branch_nonspecial
    patched = (
        gamma == 4
        and b == 1
        and k == 2 * d
        and (c == 4 or (2 * d) % 3 != 1)
        and v <= -d
        and l_s == 0
        and l_sh == -1
        and v_p <= 2 * d - 1
        and v_ph <= -1
    )
    ok = plain or patched
    if ok and l0 != -1:
        raise EngineError(f"NEG step for {sys} at k={k} combined to l0={l0} != -1")
    return ok, conditional, step


def _recurse(
    sys: K3System, base: BaseResolver, memo: Dict
) -> Tuple[DimensionReport, TraceNode]:
    gamma, d, m, n = _homogeneous_data(sys)
    key = (gamma, d, m, n)
    if key in memo:
        return memo[key]
    if factor_4_9(n) is None and n != 0:
        raise ValueError(f"point count {n} is not of the form 4^u * 9^w")

    v = vdim_k3(sys)
    e = edim(v)

    if n == 0:
        rep = DimensionReport(v, e, v, Status.NONSPECIAL)
        node = TraceNode(sys, v, e, v, Status.NONSPECIAL, True, "unconditioned")
    elif n == 1:
        rep = base(gamma, d, m)
        node = TraceNode(sys, rep.vdim, rep.edim, rep.dim, rep.status,
                         rep.dim is not None, "base")
    else:
        rep, node = _recurse_composite(sys, v, e, base, memo)

    memo[key] = (rep, node)
    return rep, node


def _recurse_composite(
    sys: K3System, v: int, e: int, base: BaseResolver, memo: Dict
) -> Tuple[DimensionReport, TraceNode]:
    gamma, d, m, n = _homogeneous_data(sys)
    c = 9 if n % 9 == 0 else 4
    b = n // c
    if v > -1:
        regimes = [Regime.NONNEG]
    elif v < -1:
        regimes = [Regime.NEG]
    else:
        regimes = [Regime.NONNEG, Regime.NEG]

    last_step: Optional[DegenerationStep] = None
    for regime in regimes:
        k = select_k(sys, c, regime)
        if k is None:
            continue
        if not check_vdim_identity(sys, c, k):
            raise EngineError(f"vdim bookkeeping identity failed for {sys}, c={c}, k={k}")
        certified, conditional, step = _attempt_step(sys, v, c, b, k, regime, base, memo)
        last_step = step
        if certified:
            status = Status.CONDITIONAL if conditional else Status.NONSPECIAL
            rep = DimensionReport(v, e, e, status)
            node = TraceNode(sys, v, e, e, status, True, "step", step=step)
            return rep, node

    note = (
        "no admissible matching degree"
        if last_step is None
        else "step side conditions failed; dimension not certified"
    )
    rep = report_unknown(v)
    node = TraceNode(sys, v, e, None, Status.UNKNOWN, False, "failed",
                     step=last_step, note=note)
    return rep, node


def recurse(sys: K3System, base: BaseResolver) -> Tuple[DimensionReport, DegenerationTrace]:
    """Run the degeneration recursion down to single-point base cases.

    `base` resolves L^gamma(d, mu) leaves to dimension reports.  Returns the
    certified report (UNKNOWN when some step's side conditions fail) together
    with the full audit trace.
    """
    if not sys.is_homogeneous:
        raise ValueError("recurse requires a homogeneous system")
    n = sys.total_points
    if n != 0 and factor_4_9(n) is None:
        raise ValueError(f"point count {n} is not of the form 4^u * 9^w")
    memo: Dict = {}
    rep, node = _recurse(sys, base, memo)
    trace = DegenerationTrace(sys, node)
    return rep.with_trace(trace), trace
