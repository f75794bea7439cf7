"""Measures, potentials and the Arakelov-Green function of a polarized graph.

The canonical measure puts -K_can/2 on the vertices plus a uniform density
1/(m(e)+r(e)) on each edge (0 on bridges); it is a probability measure.  The
admissible measure of a genus-h graph is (1/2h)(delta_{K_q} + 2 mu_can), also
of mass one.  The potential f(x) integrates the resistance kernel against the
admissible measure; the Green function is then

    g(x, y) = (f(x) + f(y) - r(x, y)) / 2 - c,

with c the capacity constant fixed by the normalization that g integrates to
zero against the measure.  All of it is exact rational arithmetic; the edge
restrictions of f are closed-form polynomials, so every integral is exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import circuit
from .errors import CrosscheckFailure, ProfileSampleMismatch
from .graphs import (
    EdgePoint,
    VertexPoint,
    canonical_divisor,
    check_point,
    insert_point,
    polarized_divisor,
    require_connected,
    require_positive_genus,
    with_points,
)
from .rational import format_rational

_ZERO = Fraction(0)


class Measure:
    """Atomic masses on vertices plus uniform densities per edge.

    Immutable by convention; `densities` are masses per unit length.  Total
    mass is computed exactly at construction.
    """

    def __init__(self, g, atoms, densities, tag):
        self._atoms = {vid: Fraction(c) for vid, c in atoms.items() if c != 0}
        self._densities = {eid: Fraction(c) for eid, c in densities.items() if c != 0}
        self.tag = tag
        self.total_mass = sum(self._atoms.values(), _ZERO) + sum(
            (d * g.edge(eid).length for eid, d in self._densities.items()), _ZERO
        )

    def atom(self, vid):
        return self._atoms.get(vid, _ZERO)

    def density(self, eid):
        return self._densities.get(eid, _ZERO)

    def atoms(self):
        return sorted(self._atoms.items())

    def densities(self):
        return sorted(self._densities.items())

    def summary(self):
        return {
            "tag": self.tag,
            "atoms": {v: format_rational(c) for v, c in self.atoms()},
            "densities": {e: format_rational(d) for e, d in self.densities()},
            "mass": format_rational(self.total_mass),
        }


@dataclass(frozen=True)
class EdgePolynomial:
    """Exact polynomial of degree <= 3 on [0, m(e)], coefficients low-to-high."""

    edge: str
    coeffs: tuple

    def evaluate(self, s):
        s = Fraction(s)
        total = _ZERO
        for c in reversed(self.coeffs):
            total = total * s + c
        return total

    def integral(self, upper):
        u = Fraction(upper)
        total = _ZERO
        power = u
        for k, c in enumerate(self.coeffs):
            total += c * power / (k + 1)
            power *= u
        return total


def _poly_from_quadratics(eid, weighted):
    """Sum of weight * QuadraticProfile terms as an EdgePolynomial."""
    c0 = c1 = c2 = _ZERO
    for weight, quad in weighted:
        c0 += weight * quad.c
        c1 += weight * quad.b
        c2 += weight * quad.a
    return EdgePolynomial(eid, (c0, c1, c2, _ZERO))


@lru_cache(maxsize=2048)
def canonical_measure(g):
    """Atoms -K_can/2 plus densities 1/(m(e)+r(e)); total mass exactly one."""
    require_connected(g)
    k_can = canonical_divisor(g)
    atoms = {v.id: -k_can[v.id] / 2 for v in g.vertices}
    densities = {}
    for e in g.edges:
        r = circuit.excised_edge_resistance(g, e.id)
        if not r.is_infinite:
            densities[e.id] = 1 / (e.length + r.value)
    measure = Measure(g, atoms, densities, "canonical")
    if measure.total_mass != 1:
        raise CrosscheckFailure(
            f"canonical measure has mass {format_rational(measure.total_mass)} != 1"
        )
    return measure


@lru_cache(maxsize=2048)
def admissible_measure(g):
    """(1/2h)(delta_{K_q} + 2 mu_can), checked against its simplified form.

    The simplification (atoms q(x)/h, densities mu_can's over h) must agree
    atom-by-atom and density-by-density with the definition; a mismatch is an
    implementation bug.
    """
    h = require_positive_genus(g)
    mu_can = canonical_measure(g)
    k_q = polarized_divisor(g)
    atoms = {v.id: (k_q[v.id] + 2 * mu_can.atom(v.id)) / (2 * h) for v in g.vertices}
    densities = {e.id: mu_can.density(e.id) / h for e in g.edges}
    measure = Measure(g, atoms, densities, "admissible")
    simplified = Measure(
        g,
        {v.id: Fraction(v.q, h) for v in g.vertices},
        densities,
        "admissible-simplified",
    )
    if measure.atoms() != simplified.atoms() or measure.densities() != simplified.densities():
        raise CrosscheckFailure("admissible measure: definitional and simplified forms disagree")
    if measure.total_mass != 1:
        raise CrosscheckFailure(
            f"admissible measure has mass {format_rational(measure.total_mass)} != 1"
        )
    return measure


def divisor_measure(g, divisor, tag="divisor-current"):
    """A divisor as a purely atomic measure (integration weights)."""
    return Measure(g, {vid: c for vid, c in divisor.items()}, {}, tag)


# ---------------------------------------------------------------------------
# the potential f(x) = integral of r(x, .) against the admissible measure
# ---------------------------------------------------------------------------

@lru_cache(maxsize=65536)
def _potential_at_vertex(g, vid):
    mu = admissible_measure(g)
    value = _ZERO
    for u, mass in mu.atoms():
        value += mass * circuit.resistance_between_vertices(g, vid, u)
    for eid, density in mu.densities():
        value += density * circuit.edge_terminal_integral(g, eid, vid)
    return value


def potential(g, x):
    """f(x): exact integral of the resistance kernel at x against the measure.

    Interior points are handled by refining at x; the value is independent of
    the refinement because the measure is.
    """
    require_positive_genus(g)
    x = check_point(g, x)
    if isinstance(x, VertexPoint):
        return _potential_at_vertex(g, x.vertex)
    refined, vid = insert_point(g, x)
    return _potential_at_vertex(refined, vid)


@lru_cache(maxsize=16384)
def potential_profile(g, eid):
    """The restriction of f to an edge as an exact polynomial.

    Cross-edge contributions are quadratic in the arclength; the same-edge
    term is the closed-form integral of the in-edge resistance kernel.  The
    endpoint evaluations must reproduce the vertex potentials, and an interior
    spot-check against the refinement route must match exactly.
    """
    require_positive_genus(g)
    e = g.edge(eid)
    mu = admissible_measure(g)
    weighted = []
    for vid, mass in mu.atoms():
        weighted.append((mass, circuit.edge_terminal_quadratic(g, eid, vid)))
    for other, density in mu.densities():
        if other == eid:
            weighted.append((density, circuit.same_edge_integral_quadratic(g, eid)))
        else:
            weighted.append((density, circuit.cross_integral_quadratic(g, eid, other)))
    poly = _poly_from_quadratics(eid, weighted)
    checks = [
        (_ZERO, _potential_at_vertex(g, e.ends[0])),
        (e.length, _potential_at_vertex(g, e.ends[1])),
        (e.length / 5, potential(g, EdgePoint(eid, e.length / 5))),
    ]
    for s, expected in checks:
        if poly.evaluate(s) != expected:
            raise ProfileSampleMismatch(
                f"potential profile on edge {eid!r} is off at s={format_rational(s)}: "
                f"{format_rational(poly.evaluate(s))} != {format_rational(expected)}"
            )
    return poly


@lru_cache(maxsize=4096)
def capacity(g):
    """c = (1/2) * double integral of the resistance kernel against the measure."""
    require_positive_genus(g)
    mu = admissible_measure(g)
    value = _ZERO
    for vid, mass in mu.atoms():
        value += mass * _potential_at_vertex(g, vid)
    for eid, density in mu.densities():
        value += density * potential_profile(g, eid).integral(g.edge(eid).length)
    return value / 2


def green(g, x, y):
    """The Arakelov-Green function g(x, y) = (f(x)+f(y)-r(x,y))/2 - c.

    Symmetric by construction; its integral against the measure vanishes and
    the diagonal value is f(x) - c.
    """
    require_positive_genus(g)
    x = check_point(g, x)
    y = check_point(g, y)
    refined, (xi, yi) = with_points(g, [x, y])
    fx = _potential_at_vertex(refined, xi)
    fy = fx if xi == yi else _potential_at_vertex(refined, yi)
    r = circuit.resistance_between_vertices(refined, xi, yi)
    return (fx + fy - r) / 2 - capacity(g)


def green_measure_integral(g, x):
    """Closed-form integral of g(x, .) against the admissible measure.

    Must be exactly zero; computed through the edge polynomials rather than
    the defining algebra, so it genuinely exercises the integration layer.
    """
    require_positive_genus(g)
    c = capacity(g)
    refined, xv = insert_point(g, check_point(g, x))
    mu = admissible_measure(refined)
    fx = _potential_at_vertex(refined, xv)
    total = _ZERO
    for vid, mass in mu.atoms():
        fy = _potential_at_vertex(refined, vid)
        r = circuit.resistance_between_vertices(refined, xv, vid)
        total += mass * ((fx + fy - r) / 2 - c)
    for eid, density in mu.densities():
        length = refined.edge(eid).length
        f_poly = potential_profile(refined, eid)
        r_quad = circuit.edge_terminal_quadratic(refined, eid, xv)
        integral = (
            fx * length + f_poly.integral(length) - r_quad.integral(length)
        ) / 2 - c * length
        total += density * integral
    return total


def clear_caches():
    canonical_measure.cache_clear()
    admissible_measure.cache_clear()
    _potential_at_vertex.cache_clear()
    potential_profile.cache_clear()
    capacity.cache_clear()
