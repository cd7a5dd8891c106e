"""Numerical exploration of the deformation variety and its cone
generalisation: damped Gauss-Newton solves at fixed xi, S^1 family sweeps,
cone-locus sampling, the regular solution, and branched-cover order
bookkeeping.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotConverged, NotUnitModulus
from .geometry import V_TET
from .gluing import (ConeTarget, ShapeAssignment, all_holonomies,
                     build_exponent_matrix, evaluate_residual, jacobian,
                     xi_from_shapes)
from .triangulation import Triangulation, compute_edge_classes

REGULAR_SHAPE = complex(0.5, math.sqrt(3.0) / 2.0)


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-10              # residual 2-norm for convergence
    max_iterations: int = 100
    max_halvings: int = 30          # damping: step halvings per iteration
    guard: float = 1e-8             # keep-out band around {0, 1}
    unit_tol: float = 1e-8          # |.|=1 test for xi and cone loci
    root_tol: float = 1e-9          # root-of-unity detection
    q_max: int = 10_000             # highest order searched
    seed: int = 0


@dataclass(frozen=True)
class SolveResult:
    shapes: ShapeAssignment
    residual_norm: float
    iterations: int
    converged: bool
    reason: str = "converged"       # else: degree_one_edge_obstruction |
                                    # degenerate_shape | max_iterations | stalled
    detail: str = ""


def _system(t: Triangulation):
    edges = compute_edge_classes(t)
    return edges, build_exponent_matrix(t, edges)


def degree_one_obstructions(edges, xi: ConeTarget, tol: float = 1e-8):
    """Degree-one edges whose target is 1: the single slot value would have
    to be a forbidden shape, so the xi-equations have no solution."""
    return [e.index for e in edges
            if e.degree == 1 and abs(xi[e.index] - 1.0) < tol]


def _in_guard(z, guard: float) -> bool:
    return any(min(abs(w), abs(w - 1.0)) < guard for w in z)


def newton_solve(t: Triangulation, xi: ConeTarget, initial: ShapeAssignment,
                 cfg: SolverConfig = SolverConfig()) -> SolveResult:
    """Damped Gauss-Newton least squares on F(z) = h(z) - xi over the
    reduced coordinates (one z per tetrahedron).

    The m-by-n system is rank-deficient (the product of all edge holonomies
    is identically 1), so steps are least-squares solutions; each step is
    halved until the residual decreases and the iterate stays off the
    degeneracy guard band.
    """
    edges, E = _system(t)
    obstructed = degree_one_obstructions(edges, xi, cfg.unit_tol)
    if obstructed:
        names = ", ".join(f"e{j}" for j in obstructed)
        return SolveResult(initial, float("inf"), 0, False,
                           "degree_one_edge_obstruction",
                           f"degree-one edge(s) {names} have xi = 1; the "
                           f"single incident shape parameter would be "
                           f"forbidden, so the system has no solution")

    z = np.array(initial.z, dtype=complex)
    for it in range(cfg.max_iterations):
        Z = ShapeAssignment(z, guard=0.0)
        F = evaluate_residual(Z, E, xi)
        r = float(np.linalg.norm(F))
        if r < cfg.tol:
            return SolveResult(ShapeAssignment(z, guard=0.0), r, it, True)
        J = jacobian(Z, E)
        step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        candidates = [step]
        if np.linalg.norm(step) < 1e-12 * (1.0 + np.linalg.norm(z)):
            # stationary point of |F|^2 away from a solution: deterministic
            # kicks to break the symmetry, re-entering Gauss-Newton after
            scale = 0.05 * (1.0 + np.abs(z))
            kick = scale * np.exp(0.7j * (1 + np.arange(len(z))))
            candidates = [kick, 1j * kick, -kick]
        accepted = False
        for cand_step in candidates:
            lam = 1.0
            for _ in range(cfg.max_halvings):
                cand = z + lam * cand_step
                if _in_guard(cand, cfg.guard):
                    lam *= 0.5
                    continue
                Fc = evaluate_residual(ShapeAssignment(cand, guard=0.0), E, xi)
                if np.linalg.norm(Fc) < r:
                    z = cand
                    accepted = True
                    break
                lam *= 0.5
            if accepted:
                break
        if not accepted:
            near = _in_guard(z + step, cfg.guard)
            reason = "degenerate_shape" if near else "stalled"
            detail = ("iterates pushed into the guard band around {0, 1} "
                      "(ideal point)" if near else
                      "damping could not reduce the residual")
            return SolveResult(ShapeAssignment(z, guard=0.0), r, it, False,
                               reason, detail)
    Z = ShapeAssignment(z, guard=0.0)
    r = float(np.linalg.norm(evaluate_residual(Z, E, xi)))
    if r < cfg.tol:
        return SolveResult(Z, r, cfg.max_iterations, True)
    return SolveResult(Z, r, cfg.max_iterations, False, "max_iterations",
                       f"residual {r:.3e} after {cfg.max_iterations} iterations")


def regular_solution(t: Triangulation):
    """Assign every tetrahedron the regular ideal shape (1 + i sqrt 3)/2.

    Every edge holonomy then lies on the unit circle with argument
    deg(e) pi/3, so (Z, xi) lies on the cone-deformation variety, and the
    volume is n times the regular ideal tetrahedron volume.
    """
    edges, E = _system(t)
    Z = ShapeAssignment((REGULAR_SHAPE,) * t.tetra_count)
    xi = ConeTarget(tuple(cmath.exp(1j * math.pi * e.degree / 3.0)
                          for e in edges))
    return Z, xi, t.tetra_count * V_TET


@dataclass(frozen=True)
class SweepPoint:
    theta: float
    result: SolveResult


def sweep_family(t: Triangulation, xi_of_theta, theta_grid,
                 cfg: SolverConfig = SolverConfig(),
                 initial: ShapeAssignment | None = None) -> list:
    """Continuation along a parameterized family of cone targets.

    Each solve is seeded from the last converged solution; failures are
    recorded and the sweep continues from the surviving seed.
    """
    if initial is None:
        initial = ShapeAssignment((REGULAR_SHAPE,) * t.tetra_count)
    seed = initial
    out = []
    for theta in theta_grid:
        xi = xi_of_theta(theta)
        if not isinstance(xi, ConeTarget):
            xi = ConeTarget(xi)
        res = newton_solve(t, xi, seed, cfg)
        out.append(SweepPoint(float(theta), res))
        if res.converged:
            seed = res.shapes
    return out


def random_starts(t: Triangulation, count: int, cfg: SolverConfig = SolverConfig()):
    """Random initial shape vectors: uniform on the upper-half disk of
    radius 2, rejecting the guard band around {0, 1} (geometric solutions
    have positive imaginary parts)."""
    rng = np.random.default_rng(cfg.seed)
    starts = []
    while len(starts) < count:
        z = []
        while len(z) < t.tetra_count:
            w = complex(rng.uniform(-2, 2), rng.uniform(0, 2))
            if abs(w) > 2 or w.imag < 1e-3:
                continue
            if min(abs(w), abs(w - 1)) < 10 * cfg.guard:
                continue
            z.append(w)
        starts.append(ShapeAssignment(tuple(z)))
    return starts


def cone_locus_sample(t: Triangulation, starts, cfg: SolverConfig = SolverConfig()):
    """Project random starts onto the cone-deformation variety.

    Gauss-Newton on the real residuals |h(e)| - 1 over (Re z, Im z); points
    whose holonomy moduli all land within unit_tol of 1 are returned with
    their cone target, others are dropped.

    Returns (samples, dropped_count) where samples is a list of
    (ShapeAssignment, ConeTarget).
    """
    edges, E = _system(t)
    n = t.tetra_count
    samples, dropped = [], 0
    for start in starts:
        z = np.array(start.z, dtype=complex)
        good = False
        for _ in range(cfg.max_iterations):
            Z = ShapeAssignment(z, guard=0.0)
            h = all_holonomies(Z, E)
            F = np.abs(h) - 1.0
            if np.max(np.abs(F)) < cfg.unit_tol:
                good = True
                break
            J = jacobian(Z, E)
            # d|h| = Re(conj(h)/|h| * h'(z) dz): real m x 2n system
            W = (np.conj(h) / np.abs(h))[:, None] * J
            Jr = np.concatenate([W.real, -W.imag], axis=1)
            step, *_ = np.linalg.lstsq(Jr, -F, rcond=None)
            dz = step[:n] + 1j * step[n:]
            lam, accepted = 1.0, False
            for _ in range(cfg.max_halvings):
                cand = z + lam * dz
                if _in_guard(cand, cfg.guard):
                    lam *= 0.5
                    continue
                hc = all_holonomies(ShapeAssignment(cand, guard=0.0), E)
                if np.linalg.norm(np.abs(hc) - 1.0) < np.linalg.norm(F):
                    z, accepted = cand, True
                    break
                lam *= 0.5
            if not accepted:
                break
        if not good:
            dropped += 1
            continue
        Z = ShapeAssignment(z, guard=0.0)
        xi = xi_from_shapes(Z, E, tol=cfg.unit_tol)
        if isinstance(xi, ConeTarget):
            samples.append((Z, xi))
        else:
            dropped += 1
    return samples, dropped


def order_of_root_of_unity(xi: complex, tol: float = 1e-9,
                           q_max: int = 10_000):
    """Smallest q <= q_max with |xi^q - 1| < tol, else math.inf.

    Requires |xi| = 1 within tol; powers are taken on the circle through the
    argument, so no error accumulates for large q.
    """
    xi = complex(xi)
    if abs(abs(xi) - 1.0) >= tol:
        raise NotUnitModulus(f"|xi| = {abs(xi)}")
    angle = cmath.phase(xi)
    for q in range(1, q_max + 1):
        if 2.0 * abs(math.sin(0.5 * q * angle)) < tol:
            return q
    return math.inf


@dataclass(frozen=True)
class EdgeCoverEntry:
    edge_index: int
    xi: complex
    order: float            # int-valued or math.inf
    degree: int
    lifted_degree: float    # order * degree when finite, else math.inf


@dataclass(frozen=True)
class CoverDegreeReport:
    """Edge-degree bookkeeping for the branched cover determined by the
    multiplicative orders of the cone targets."""

    entries: tuple
    all_orders_finite: bool
    trivial_cover: bool     # all orders 1: the cover is the manifold itself

    def orders(self):
        return tuple(e.order for e in self.entries)

    def lifted_degrees(self):
        return tuple(e.lifted_degree for e in self.entries)


def branched_cover_report(edges, xi: ConeTarget,
                          cfg: SolverConfig = SolverConfig()) -> CoverDegreeReport:
    entries = []
    for e in edges:
        o = order_of_root_of_unity(xi[e.index], cfg.root_tol, cfg.q_max)
        lifted = math.inf if math.isinf(o) else o * e.degree
        entries.append(EdgeCoverEntry(e.index, complex(xi[e.index]), o,
                                      e.degree, lifted))
    finite = all(not math.isinf(en.order) for en in entries)
    trivial = finite and all(en.order == 1 for en in entries)
    return CoverDegreeReport(tuple(entries), finite, trivial)


@dataclass(frozen=True)
class Certificate:
    """Record of the essential-edges conclusion drawn from a verified
    solution of the xi-hyperbolic gluing equations."""

    kind: str               # "manifold" (xi = 1) or "branched_cover"
    statement: str
    residual_norm: float
    shapes: ShapeAssignment
    xi: ConeTarget
    cover: CoverDegreeReport


def essential_edge_certificate(t: Triangulation, result: SolveResult,
                               xi: ConeTarget,
                               cfg: SolverConfig = SolverConfig()) -> Certificate:
    """Certify that the edges of the associated (branched-cover)
    triangulation are essential, given a converged solve.

    With xi = (1, ..., 1) the conclusion applies to the triangulation itself;
    otherwise to the branched cover with branch index o(xi_e) at edge e.
    Raises NotConverged on a failed solve.
    """
    if not result.converged:
        raise NotConverged(result.reason or "solve did not converge")
    edges, E = _system(t)
    # verify independently of the solver's bookkeeping
    res = float(np.linalg.norm(evaluate_residual(result.shapes, E, xi)))
    if res >= cfg.tol * 10:
        raise NotConverged(f"re-evaluated residual {res:.3e} too large")
    cover = branched_cover_report(edges, xi, cfg)
    if cover.trivial_cover:
        kind = "manifold"
        statement = ("solution of the hyperbolic gluing equations found: "
                     "all edges of the triangulation are essential")
    else:
        kind = "branched_cover"
        orders = ", ".join(f"e{e.edge_index}:o={e.order}" for e in cover.entries)
        statement = ("solution of the xi-hyperbolic gluing equations found: "
                     "all edges of the induced ideal triangulation of the "
                     f"branched cover are essential (branch orders {orders})")
        if not cover.all_orders_finite:
            statement += ("; edges of infinite order lift to non-manifold "
                          "points of the cover")
    return Certificate(kind, statement, res, result.shapes, xi, cover)
