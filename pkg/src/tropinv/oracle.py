"""Independent approximate computations that certify the exact engine.

The quadrature routes approximate the invariant integrals with midpoint sums
of pointwise Green values, never reusing the engine's closed-form polynomial
integration; the midpoint error is the only error, so it shrinks like 1/M^2
and the exact engine value must sit inside the shrinking ladder.  The
Laplacian probe measures second differences of y -> g(x, y) along an edge and
compares them with the measure density; the subdivision check asserts exact
model independence under random refinements.
"""

from dataclasses import dataclass
from fractions import Fraction
import random

from . import circuit, invariants, potentials
from .graphs import (
    EdgePoint,
    VertexPoint,
    check_point,
    genus,
    polarized_divisor,
    remap_point_after_split,
    require_positive_genus,
    total_length,
    _split_edge,
)
from .rational import format_rational


def _midpoints(length, order):
    return [length * (2 * k - 1) / (2 * order) for k in range(1, order + 1)]


def _diagonal_quadrature(g, order, atom_weights, density_weights):
    """Midpoint-rule integral of g(x,x) against atoms + edge densities.

    Atom terms are exact; the continuous part uses only pointwise green calls
    at `order` midpoint samples per edge.  Returns an exact Fraction (the
    quadrature sum itself carries the only approximation).
    """
    total = Fraction(0)
    for vid, w in atom_weights.items():
        if w != 0:
            total += w * potentials.green(g, VertexPoint(vid), VertexPoint(vid))
    for eid, w in density_weights.items():
        if w == 0:
            continue
        length = g.edge(eid).length
        step = length / order
        acc = Fraction(0)
        for s in _midpoints(length, order):
            point = EdgePoint(eid, s)
            acc += potentials.green(g, point, point)
        total += w * step * acc
    return total


def _phi_weights(g):
    _, h = genus(g)
    mu = potentials.admissible_measure(g)
    k_q = polarized_divisor(g)
    atoms = {v.id: (10 * h + 2) * mu.atom(v.id) - k_q[v.id] for v in g.vertices}
    densities = {e.id: (10 * h + 2) * mu.density(e.id) for e in g.edges}
    return atoms, densities


def _epsilon_weights(g):
    _, h = genus(g)
    mu = potentials.admissible_measure(g)
    k_q = polarized_divisor(g)
    atoms = {v.id: (2 * h - 2) * mu.atom(v.id) + k_q[v.id] for v in g.vertices}
    densities = {e.id: (2 * h - 2) * mu.density(e.id) for e in g.edges}
    return atoms, densities


def quadrature_phi(g, order):
    """Midpoint-rule approximation of phi at M samples per edge."""
    require_positive_genus(g)
    if order < 2:
        raise ValueError("quadrature order must be at least 2")
    atoms, densities = _phi_weights(g)
    value = -total_length(g) / 4 + _diagonal_quadrature(g, order, atoms, densities) / 4
    return float(value)


def quadrature_epsilon(g, order):
    """Midpoint-rule approximation of epsilon at M samples per edge."""
    require_positive_genus(g)
    if order < 2:
        raise ValueError("quadrature order must be at least 2")
    atoms, densities = _epsilon_weights(g)
    return float(_diagonal_quadrature(g, order, atoms, densities))


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    exact: float
    exact_rational: str
    orders: tuple
    approximations: tuple
    abs_errors: tuple
    ratios: tuple  # error(M) / error(2M) for consecutive orders, None when tiny
    tolerance: float
    errors_non_increasing: bool
    final_error: float
    within_tolerance: bool

    def to_dict(self):
        return {
            "quantity": self.quantity,
            "exact": self.exact_rational,
            "exact_decimal": self.exact,
            "orders": list(self.orders),
            "approximations": list(self.approximations),
            "abs_errors": list(self.abs_errors),
            "ratios": list(self.ratios),
            "tolerance": self.tolerance,
            "errors_non_increasing": self.errors_non_increasing,
            "final_error": self.final_error,
            "within_tolerance": self.within_tolerance,
        }

    def csv_rows(self):
        rows = [("quantity", "order", "approximation", "exact", "abs_error", "ratio_vs_prev")]
        for i, order in enumerate(self.orders):
            ratio = self.ratios[i - 1] if i > 0 else None
            rows.append(
                (
                    self.quantity,
                    order,
                    repr(self.approximations[i]),
                    self.exact_rational,
                    repr(self.abs_errors[i]),
                    "" if ratio is None else repr(ratio),
                )
            )
        return rows


# below this, floating error ratios are noise, not signal
_RATIO_FLOOR = 1e-12


def convergence_report(g, quantity="phi", orders=(8, 16, 32, 64), tolerance=1e-3):
    """Run the quadrature ladder for phi or epsilon and summarize convergence."""
    require_positive_genus(g)
    if quantity == "phi":
        exact = invariants.phi(g)
        approx_fn = quadrature_phi
    elif quantity == "epsilon":
        exact = invariants.epsilon(g)
        approx_fn = quadrature_epsilon
    else:
        raise ValueError(f"unknown oracle quantity {quantity!r}")
    orders = tuple(orders)
    approximations = [approx_fn(g, m) for m in orders]
    exact_float = float(exact)
    errors = [abs(a - exact_float) for a in approximations]
    ratios = []
    for prev, nxt in zip(errors, errors[1:]):
        if prev > _RATIO_FLOOR and nxt > _RATIO_FLOOR:
            ratios.append(prev / nxt)
        else:
            ratios.append(None)
    non_increasing = all(a >= b for a, b in zip(errors, errors[1:]))
    final_error = errors[-1]
    return OracleReport(
        quantity=quantity,
        exact=exact_float,
        exact_rational=format_rational(exact),
        orders=orders,
        approximations=tuple(approximations),
        abs_errors=tuple(errors),
        ratios=tuple(ratios),
        tolerance=tolerance,
        errors_non_increasing=non_increasing,
        final_error=final_error,
        within_tolerance=final_error < tolerance,
    )


# ---------------------------------------------------------------------------
# pointwise-resistance quadrature for the Green function itself
# ---------------------------------------------------------------------------

def _pointwise_resistance(g, x, y):
    """Exact resistance preferring the in-edge closed form over a solve."""
    x = check_point(g, x)
    y = check_point(g, y)

    def on_edge(p, eid):
        if isinstance(p, EdgePoint) and p.edge == eid:
            return p.offset
        if isinstance(p, VertexPoint):
            e = g.edge(eid)
            if p.vertex == e.ends[0]:
                return Fraction(0)
            if p.vertex == e.ends[1]:
                return e.length
        return None

    for eid in {p.edge for p in (x, y) if isinstance(p, EdgePoint)}:
        s = on_edge(x, eid)
        t = on_edge(y, eid)
        if s is not None and t is not None:
            return circuit.same_edge_resistance(g, eid, s, t)
    return circuit.resistance(g, x, y)


def _offset_on(g, point, eid):
    """The offset of a point along an edge, or None when it is not on it."""
    if isinstance(point, EdgePoint):
        return point.offset if point.edge == eid else None
    e = g.edge(eid)
    if point.vertex == e.ends[0]:
        return Fraction(0)
    if point.vertex == e.ends[1]:
        return e.length
    return None


def _potential_quadrature(g, x, order, mu):
    total = Fraction(0)
    for vid, mass in mu.atoms():
        total += mass * _pointwise_resistance(g, x, VertexPoint(vid))
    for eid, density in mu.densities():
        length = g.edge(eid).length
        step = length / order
        acc = Fraction(0)
        base = _offset_on(g, x, eid)
        if base is not None:
            # in-edge samples: u(L-u+r)/(L+r) directly, no per-sample dispatch
            r = circuit.excised_edge_resistance(g, eid)
            rv = r.value
            for s in _midpoints(length, order):
                u = abs(s - base)
                if rv is None:
                    acc += u
                else:
                    acc += u * (length - u + rv) / (length + rv)
        else:
            for s in _midpoints(length, order):
                acc += _pointwise_resistance(g, x, EdgePoint(eid, s))
        total += density * step * acc
    return total


def quadrature_green_diagonal(g, x, order):
    """Approximate g(x, x) from pointwise resistances only.

    The potential and capacity are both replaced by midpoint sums of exact
    two-point resistances, so neither the engine's polynomial profiles nor its
    exact capacity enter; error is O(1/M^2).
    """
    require_positive_genus(g)
    x = check_point(g, x)
    mu = potentials.admissible_measure(g)
    f_x = _potential_quadrature(g, x, order, mu)
    cap = Fraction(0)
    for vid, mass in mu.atoms():
        cap += mass * _potential_quadrature(g, VertexPoint(vid), order, mu)
    for eid, density in mu.densities():
        length = g.edge(eid).length
        step = length / order
        acc = Fraction(0)
        for s in _midpoints(length, order):
            acc += _potential_quadrature(g, EdgePoint(eid, s), order, mu)
        cap += density * step * acc
    return float(f_x - cap / 2)


# ---------------------------------------------------------------------------
# Laplacian probe
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProbeReport:
    edge: str
    step: str
    constants: tuple  # measured -second-difference/step^2 per interior center
    expected: str     # minus the admissible density on the edge
    max_deviation: float
    consistent: bool

    def to_dict(self):
        return {
            "edge": self.edge,
            "step": self.step,
            "constants": list(self.constants),
            "expected": self.expected,
            "max_deviation": self.max_deviation,
            "consistent": self.consistent,
        }


def laplacian_probe(g, x, eid, step):
    """Second differences of y -> g(x, y) along an edge interior.

    With the Laplacian acting as minus the second derivative on edge
    interiors, the measured constant -(g(s+h) - 2 g(s) + g(s-h))/h^2 must
    equal minus the admissible density on the edge, away from x.  Values are
    computed exactly, so the deviation is zero whenever the engine is right.
    """
    require_positive_genus(g)
    x = check_point(g, x)
    e = g.edge(eid)
    if isinstance(x, EdgePoint) and x.edge == eid:
        raise ValueError(f"probe point must not lie on edge {eid!r}")
    h = Fraction(step)
    parts = e.length / h
    if parts.denominator != 1 or parts < 4:
        raise ValueError("step must divide the edge length into at least 4 parts")
    n = int(parts)
    values = []
    for k in range(n + 1):
        s = h * k
        if s == 0:
            point = VertexPoint(e.ends[0])
        elif s == e.length:
            point = VertexPoint(e.ends[1])
        else:
            point = EdgePoint(eid, s)
        values.append(potentials.green(g, x, point))
    constants = []
    for k in range(1, n):
        second = (values[k + 1] - 2 * values[k] + values[k - 1]) / (h * h)
        constants.append(-second)
    expected = -potentials.admissible_measure(g).density(eid)
    max_dev = max(abs(c - expected) for c in constants)
    return ProbeReport(
        edge=eid,
        step=format_rational(h),
        constants=tuple(float(c) for c in constants),
        expected=format_rational(expected),
        max_deviation=float(max_dev),
        consistent=max_dev == 0,
    )


# ---------------------------------------------------------------------------
# subdivision invariance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubdivisionReport:
    trials: int
    seed: int
    passed: bool
    failures: tuple

    def to_dict(self):
        return {
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def _random_interior_point(g, rng):
    e = g.edges[rng.randrange(len(g.edges))]
    den = rng.randint(2, 16)
    num = rng.randint(1, den - 1)
    return EdgePoint(e.id, e.length * Fraction(num, den))


def subdivision_invariance_check(g, trials=3, seed=0, min_points=1, max_points=5):
    """Insert random interior points and assert exact invariance.

    Each trial refines the graph at `min_points`..`max_points` random rational
    offsets and compares delta, phi, epsilon, psi, the capacity, and Green
    values at tracked random point pairs, all with exact equality.
    """
    require_positive_genus(g)
    rng = random.Random(seed)
    base = {
        "delta": total_length(g),
        "phi": invariants.phi(g),
        "epsilon": invariants.epsilon(g),
        "psi": invariants.psi(g),
        "capacity": potentials.capacity(g),
    }
    failures = []
    for trial in range(trials):
        sample_points = [VertexPoint(vid) for vid in g.vertex_ids()[:2]]
        if g.edges:
            sample_points += [_random_interior_point(g, rng) for _ in range(2)]
        green_base = [
            potentials.green(g, a, b)
            for a in sample_points
            for b in sample_points
        ]
        refined = g
        tracked = list(sample_points)
        count = rng.randint(min_points, max_points)
        for _ in range(count):
            if not refined.edges:
                break
            p = _random_interior_point(refined, rng)
            refined, new_vid, left, right = _split_edge(refined, p.edge, p.offset)
            tracked = [
                remap_point_after_split(q, p.edge, p.offset, new_vid, left, right)
                for q in tracked
            ]
        observed = {
            "delta": total_length(refined),
            "phi": invariants.phi(refined),
            "epsilon": invariants.epsilon(refined),
            "psi": invariants.psi(refined),
            "capacity": potentials.capacity(refined),
        }
        for name, expected in base.items():
            if observed[name] != expected:
                failures.append(
                    f"trial {trial}: {name} changed from {format_rational(expected)} "
                    f"to {format_rational(observed[name])}"
                )
        green_refined = [
            potentials.green(refined, a, b)
            for a in tracked
            for b in tracked
        ]
        for i, (before, after) in enumerate(zip(green_base, green_refined)):
            if before != after:
                failures.append(
                    f"trial {trial}: green value #{i} changed from "
                    f"{format_rational(before)} to {format_rational(after)}"
                )
    return SubdivisionReport(trials=trials, seed=seed, passed=not failures, failures=tuple(failures))
