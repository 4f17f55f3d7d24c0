"""The polynomial application: solve v^m - (m^4-1) v^(m+1) - m^4 v + 1 = 0
on [0, 1] by Picard iteration of its fixed-point map and verify every
hypothesis the contraction argument needs, cross-checked against an
independent bisection oracle.

The fixed-point map is F(p) = (p^m + 1) / ((m^4 - 1) p^m + m^4); the
algebraic identity residual(m, p) = (F(p) - p) * ((m^4 - 1) p^m + m^4)
ties roots of the polynomial to fixed points of F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .axiom_audit import (DEFAULT_K_SET, Verdict, check_alpha_subhomogeneity,
                          check_alpha_zero, check_composed_triangle,
                          check_identity_axiom, check_series_vanishing,
                          check_symmetry)
from .errors import DomainError, InternalError
from .fixed_point import (DEFAULT_TOL, SolveResult, check_banach, picard,
                          uniqueness_probe)
from .sampling import SampleConfig
from .spaces import ComposedSpace, SelfMap, make_builtin_space

__all__ = [
    "PolyProblem",
    "residual",
    "poly_map",
    "contraction_bound",
    "bisection_oracle",
    "solve_poly",
    "verify_theorem_4_1",
    "SERIES_GAPS",
    "SERIES_SCHEDULE",
    "SERIES_TOL",
]

# Fixed-gap tail slices audited by the verification pipeline.  The schedule
# runs far enough that the slowest gap decays through the tolerance.
SERIES_GAPS = (5, 8)
SERIES_SCHEDULE = (5, 10, 20, 40, 80, 160, 320, 640)
SERIES_TOL = 1e-6

_UNIQUENESS_STARTS = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class PolyProblem:
    """Degree parameter, fixed-point map, and the unit-interval space."""

    m: int
    map: SelfMap
    space: ComposedSpace


def _require_degree(m: int):
    if not isinstance(m, int) or isinstance(m, bool) or m < 3:
        raise DomainError(f"the polynomial family is defined for integer m >= 3, got {m!r}")


def residual(m: int, v: float) -> float:
    """Evaluate v^m - (m^4 - 1) v^(m+1) - m^4 v + 1, grouped for stability."""
    _require_degree(m)
    if not (0.0 <= v <= 1.0):
        raise DomainError(f"residual is evaluated on [0, 1], got {v!r}")
    d = float(m ** 4)
    return v ** m * (1.0 - (d - 1.0) * v) - d * v + 1.0


def poly_map(m: int) -> PolyProblem:
    """The fixed-point problem for the degree-m polynomial on [0, 1].

    F maps [0, 1] into [0, 2/m^4], so the unit interval is invariant.
    """
    _require_degree(m)
    d = float(m ** 4)

    def F(p: float) -> float:
        pm = p ** m
        return (pm + 1.0) / ((d - 1.0) * pm + d)

    space = make_builtin_space("app_metric")
    self_map = SelfMap(id=f"poly_m{m}", fn=F, domain=space.domain)
    return PolyProblem(m=m, map=self_map, space=space)


def contraction_bound(m: int, derived: bool = False) -> float:
    """A certified contraction factor for the degree-m map.

    For m = 3 the quoted factor is 1/81.  The derived mean-value bound
    m^-7 (|F'| <= m / m^8 on [0, 1]) is tighter and holds for every m >= 3;
    it is the default for m > 3 and available for m = 3 via ``derived``.
    """
    _require_degree(m)
    if m == 3 and not derived:
        return 1.0 / 81.0
    return float(m) ** -7


def bisection_oracle(m: int, tol: float) -> float:
    """Locate the root by pure sign bisection on [0, 1].

    Deliberately the simplest possible method: its only correctness
    requirement is the sign change residual(m, 0) = 1 > 0 > residual(m, 1),
    which makes it trustworthy enough to judge the fixed-point solver.
    """
    _require_degree(m)
    if tol <= 0:
        raise DomainError("oracle tolerance must be positive")
    a, b = 0.0, 1.0
    fa, fb = residual(m, a), residual(m, b)
    if not (fa > 0.0 > fb):
        raise InternalError(
            f"endpoint residuals {fa!r}, {fb!r} lost their sign change; residual is broken")
    while (b - a) > tol:
        mid = 0.5 * (a + b)
        fm = residual(m, mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (fa > 0.0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    return 0.5 * (a + b)


def solve_poly(m: int, x0: float = 0.5, tol: float = DEFAULT_TOL) -> SolveResult:
    """Solve the polynomial by Picard iteration of its fixed-point map."""
    problem = poly_map(m)
    if not problem.space.domain.contains(x0):
        raise DomainError(f"start point {x0!r} must lie in [0, 1]")
    return picard(problem.space, problem.map, x0, tol=tol)


def verify_theorem_4_1(m: int, seed: int = 42, samples: int = 10000,
                       tol: float = DEFAULT_TOL) -> dict:
    """Run every hypothesis audit for the degree-m polynomial problem.

    Returns a report with one verdict per hypothesis in fixed order, the
    solved root, the bisection oracle's root, and their agreement.  Failures
    are verdicts, never exceptions.
    """
    problem = poly_map(m)
    space, F = problem.space, problem.map
    cfg = SampleConfig(seed=seed, count=samples)
    r = contraction_bound(m)

    hypotheses: list[tuple[str, Verdict]] = []
    hypotheses.append(("identity_axiom", check_identity_axiom(space, cfg)))
    hypotheses.append(("composed_triangle", check_composed_triangle(space, cfg)))
    hypotheses.append(("symmetry", check_symmetry(space, cfg)))
    hypotheses.append(("alpha_zero", check_alpha_zero(space.alpha)))
    hypotheses.append(("alpha_subhomogeneity",
                       check_alpha_subhomogeneity(space.alpha, cfg, DEFAULT_K_SET)))
    hypotheses.append(("banach_contraction", check_banach(space, F, r, cfg)))
    hypotheses.append(("series_vanishing",
                       check_series_vanishing(space.alpha, r, 2.0, SERIES_GAPS,
                                              SERIES_SCHEDULE, SERIES_TOL)))
    hypotheses.append(("uniqueness",
                       uniqueness_probe(space, F, _UNIQUENESS_STARTS, tol=tol)))

    solved = solve_poly(m, 0.5, tol)
    oracle = bisection_oracle(m, tol)
    agreement = abs(solved.fixed_point - oracle)
    oracle_ok = solved.converged and agreement <= 10.0 * tol
    hypotheses.append(("oracle_agreement", Verdict(
        check="oracle_agreement", passed=oracle_ok, checked=1,
        witness=None if oracle_ok else (solved.fixed_point, oracle),
        worst_margin=10.0 * tol - agreement, seed=None)))

    return {
        "m": m,
        "hypotheses": [{"name": name, "verdict": v.to_json_dict()}
                       for name, v in hypotheses],
        "root": solved.fixed_point,
        "oracle_root": oracle,
        "agreement": agreement,
        "converged": solved.converged,
        "iterations": solved.iterations,
        "all_passed": all(v.passed for _, v in hypotheses) and solved.converged,
    }
