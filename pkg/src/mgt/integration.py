"""Closed-form integration over a metrized graph.

Every integrand handled here is a polynomial in the arclength parameter on
each edge: voltage functions restricted to an edge are quadratics as long as
their reference points are vertices. So integration is exact: sample at
interior rational points, interpolate, check a guard sample, then integrate
the polynomial algebraically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import BadPoint, NonPolynomialIntegrand
from .graph import MetrizedGraph, PointOnGraph, insert_point, normalize_point
from .circuit import context, solve_pair_resistances

# Function tags usable in integrate_product. x is the moving point; p, q are
# fixed vertices.
TAG_J_BASE_P = "j_p(x,q)"
TAG_J_BASE_Q = "j_q(x,p)"
TAG_J_BASE_X = "j_x(p,q)"
TAG_R_FROM_P = "r(p,x)"
ALL_TAGS = (TAG_J_BASE_P, TAG_J_BASE_Q, TAG_J_BASE_X, TAG_R_FROM_P)

JDEGREE = 2  # voltage functions are quadratic along an edge


@dataclass(frozen=True)
class EdgePolynomial:
    """Polynomial in the arclength x from endpoint a of one edge."""

    edge: int
    coeffs: tuple[Fraction, ...]

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "EdgePolynomial":
        d = tuple(k * c for k, c in enumerate(self.coeffs) if k > 0)
        return EdgePolynomial(self.edge, d or (Fraction(0),))

    def __mul__(self, other: "EdgePolynomial") -> "EdgePolynomial":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return EdgePolynomial(self.edge, tuple(out))

    def power(self, n: int) -> "EdgePolynomial":
        result = EdgePolynomial(self.edge, (Fraction(1),))
        for _ in range(n):
            result = result * self
        return result

    def integral(self, upper: Fraction) -> Fraction:
        """Definite integral over [0, upper]."""
        acc = Fraction(0)
        for k in range(len(self.coeffs) - 1, -1, -1):
            acc = (acc + self.coeffs[k] / (k + 1)) * upper
        return acc


def interpolate(edge: int, samples: Sequence[tuple[Fraction, Fraction]]) -> EdgePolynomial:
    """Newton-form interpolation through the given (x, value) samples."""
    xs = [s[0] for s in samples]
    table = [s[1] for s in samples]
    n = len(samples)
    newton = [table[0]]
    for level in range(1, n):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
            for i in range(n - level)
        ]
        newton.append(table[0])
    coeffs = [Fraction(0)] * n
    coeffs[0] = newton[-1]
    for level in range(n - 2, -1, -1):
        # multiply by (x - xs[level]) and add newton[level]
        for k in range(n - 1, 0, -1):
            coeffs[k] = coeffs[k - 1] - xs[level] * coeffs[k]
        coeffs[0] = newton[level] - xs[level] * coeffs[0]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return EdgePolynomial(edge, tuple(coeffs))


def fit_edge_function(
    g: MetrizedGraph,
    edge: int,
    f: Callable[[PointOnGraph], Fraction],
    degree: int,
) -> EdgePolynomial:
    """Fit an exact polynomial to f along one edge.

    Samples degree+2 equally spaced interior points: degree+1 fix the
    polynomial and the last one is a guard that must match exactly, otherwise
    the integrand was not a polynomial of the declared degree on this edge.
    """
    if not 0 <= edge < g.ecount:
        raise BadPoint(f"edge {edge} out of range")
    length = g.edges[edge].length
    offsets = [length * k / (degree + 3) for k in range(1, degree + 3)]  # strictly interior
    values = [f((edge, t)) for t in offsets]
    poly = interpolate(edge, list(zip(offsets[: degree + 1], values[: degree + 1])))
    if poly(offsets[-1]) != values[-1]:
        raise NonPolynomialIntegrand(
            f"guard sample mismatch on edge {edge}: declared degree {degree} too low "
            "or a reference point lies inside this edge"
        )
    return poly


def _edge_samples(g: MetrizedGraph, p: int, q: int, edge: int,
                  offsets: Sequence[Fraction]) -> list[tuple[Fraction, Fraction]]:
    """(r(p,x), r(q,x)) at interior offsets, each via an independent solve."""
    out = []
    for t in offsets:
        gx, w = insert_point(g, (edge, t))
        if p == q:
            (rpx,) = solve_pair_resistances(gx, [(p, w)])
            out.append((rpx, rpx))
        else:
            rpx, rqx = solve_pair_resistances(gx, [(p, w), (q, w)])
            out.append((rpx, rqx))
    return out


def edge_tag_polynomials(g: MetrizedGraph, p: int, q: int, edge: int) -> dict[str, EdgePolynomial]:
    """Quadratic fits of all four tag functions on one edge, guard-checked.

    The moving point is inserted as a temporary vertex and each sample comes
    from a fresh Laplacian solve, so these fits are independent of the
    circuit-reduction shortcut formulas they are later checked against.
    """
    ctx = context(g)
    key = ("tag-polys", p, q, edge)
    cached = ctx.memo.get(key)
    if cached is not None:
        return cached
    length = g.edges[edge].length
    npts = JDEGREE + 2
    offsets = [length * k / (npts + 1) for k in range(1, npts + 1)]
    rpq = ctx.r(p, q)
    samples = _edge_samples(g, p, q, edge, offsets)
    values = {
        TAG_R_FROM_P: [rpx for rpx, _ in samples],
        TAG_J_BASE_P: [(rpx + rpq - rqx) / 2 for rpx, rqx in samples],
        TAG_J_BASE_Q: [(rqx + rpq - rpx) / 2 for rpx, rqx in samples],
        TAG_J_BASE_X: [(rpx + rqx - rpq) / 2 for rpx, rqx in samples],
    }
    polys = {}
    for tag, vals in values.items():
        poly = interpolate(edge, list(zip(offsets[: JDEGREE + 1], vals[: JDEGREE + 1])))
        if poly(offsets[-1]) != vals[-1]:
            raise NonPolynomialIntegrand(f"{tag} is not quadratic on edge {edge}")
        polys[tag] = poly
    ctx.memo[key] = polys
    return polys


def integrate_product(
    g: MetrizedGraph,
    p: int,
    q: int,
    terms: Sequence[tuple[str, bool, int]],
) -> Fraction:
    """Integrate a product of tagged voltage/resistance factors over the graph.

    Each term is (tag, differentiate, power) with integer power >= 0.
    Derivatives are taken coefficient-wise on the fitted polynomials, which is
    valid on open edges; endpoint kinks have measure zero.
    """
    for tag, _, power in terms:
        if tag not in ALL_TAGS:
            raise BadPoint(f"unknown integrand tag {tag!r}")
        if power < 0:
            raise BadPoint("powers must be nonnegative")
    total = Fraction(0)
    for edge in range(g.ecount):
        polys = edge_tag_polynomials(g, p, q, edge)
        product = EdgePolynomial(edge, (Fraction(1),))
        for tag, deriv, power in terms:
            factor = polys[tag].derivative() if deriv else polys[tag]
            product = product * factor.power(power)
        total += product.integral(g.edges[edge].length)
    return total


def tau_via_integral(g: MetrizedGraph, p: int = 0) -> Fraction:
    """The tau invariant as a quarter of the energy of x -> r(p, x)."""
    p = normalize_point(g, p)
    if not isinstance(p, int):
        raise BadPoint("base point must be a vertex")
    return integrate_product(g, p, p, [(TAG_R_FROM_P, True, 2)]) / 4


def apq_direct(g: MetrizedGraph, p: int, q: int) -> Fraction:
    """The voltage integral A = int j_x(p,q) (d/dx j_p(x,q))^2 dx, exactly.

    Defined as zero when p = q, where the integrand vanishes identically.
    """
    for v in (p, q):
        if not isinstance(v, int) or not 0 <= v < g.vcount:
            raise BadPoint("p and q must be vertices")
    if p == q:
        return Fraction(0)
    return integrate_product(
        g, p, q, [(TAG_J_BASE_X, False, 1), (TAG_J_BASE_P, True, 2)]
    )
