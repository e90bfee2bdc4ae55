"""Covariant metric data, closure condition, gauge solving via the logarithmic
ansatz, Christoffel/Riemann/scalar curvature, positivity sampling and numeric
coordinate pullbacks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateMetric, NumericFailure, UnsupportedCoefficients
from .hamiltonian import det3
from .linalg import solve_linear_system
from .poly import (
    ExpPolynomial,
    P_ONE,
    Polynomial,
    RationalFunction,
    poly_divexact,
    poly_gcd,
)
from .univariate import factor_univariate

VARS = ("x", "y", "z")

CURVATURE_CONVENTION = (
    "R^l_ikj = d_k Gamma^l_ij - d_j Gamma^l_ik + Gamma^l_km Gamma^m_ij "
    "- Gamma^l_jm Gamma^m_ik, lowered on the first index"
)


@dataclass
class MetricData:
    contravariant: list  # 3x3 RationalFunction
    covariant: list  # 3x3 RationalFunction
    det_contra: RationalFunction  # determinant of the contravariant metric
    det_cov: RationalFunction  # determinant of the covariant metric (= 1/det_contra)

    def check_invariants(self):
        ident = [[RationalFunction.from_constant(1 if i == j else 0) for j in range(3)] for i in range(3)]
        for i in range(3):
            for j in range(3):
                s = RationalFunction.from_constant(0)
                for k in range(3):
                    s = s + self.contravariant[i][k] * self.covariant[k][j]
                if s != ident[i][j]:
                    return False
        return (self.det_contra * self.det_cov).constant_value() == 1


@dataclass
class OneForm:
    components: tuple  # three RationalFunctions

    def d_is_zero(self):
        for i in range(3):
            for j in range(i + 1, 3):
                if self.components[j].diff(i) != self.components[i].diff(j):
                    return False
        return True


@dataclass
class LogGauge:
    """lambda = sum c_k ln(f_k); the gauge factor is mu = e^(lambda/2)."""

    terms: list  # (factor: Polynomial, exponent: Fraction) for lambda

    @property
    def mu_exponents(self):
        return [(f, c / 2) for f, c in self.terms]

    def gradient(self):
        """d(lambda) as a OneForm."""
        comps = []
        for i in range(3):
            s = RationalFunction.from_constant(0)
            for f, c in self.terms:
                s = s + RationalFunction(f.diff(i), f) * c
            comps.append(s)
        return OneForm(tuple(comps))

    def mu_value(self, point):
        out = 1.0
        for f, c in self.mu_exponents:
            out *= float(f.eval(point)) ** float(c)
        return out


@dataclass
class CurvatureReport:
    christoffel: list  # [k][i][j] RationalFunction
    riemann: dict  # (i,j,k,l) -> RationalFunction, lowered, nonzero entries only
    ricci: list  # 3x3 RationalFunction
    scalar: RationalFunction
    is_flat: bool
    convention: str = CURVATURE_CONVENTION

    def riemann_entry(self, i, j, k, l):
        return self.riemann.get((i, j, k, l), RationalFunction.from_constant(0))


def _as_poly_matrix(g):
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            e = g[i][j]
            if isinstance(e, ExpPolynomial):
                if not e.is_polynomial:
                    raise UnsupportedCoefficients("metric entries must be exponential-free")
                e = e.as_polynomial()
            elif isinstance(e, RationalFunction):
                row.append(e)
                continue
            elif isinstance(e, (int, Fraction)):
                e = Polynomial.constant(e)
            row.append(RationalFunction(e))
        out.append(row)
    return out


def invert_metric(g_contra) -> MetricData:
    """Exact adjugate/determinant inverse of the contravariant metric."""
    g = _as_poly_matrix(g_contra)
    det = _rat_det3(g)
    if det.is_zero:
        raise DegenerateMetric("contravariant metric is degenerate")
    cov = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            sub = [
                [g[r][c] for c in range(3) if c != j]
                for r in range(3) if r != i
            ]
            minor = sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
            sign = -1 if (i + j) % 2 else 1
            cov[j][i] = minor * sign / det
    return MetricData(
        contravariant=g,
        covariant=cov,
        det_contra=det,
        det_cov=RationalFunction.from_constant(1) / det,
    )


def _rat_det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def closure_check(M: MetricData, V):
    """omega_i = g_ij V^j; returns (OneForm, closed?)."""
    comps = []
    for i in range(3):
        s = RationalFunction.from_constant(0)
        for j in range(3):
            vj = V[j] if isinstance(V[j], RationalFunction) else RationalFunction(V[j])
            s = s + M.covariant[i][j] * vj
        comps.append(s)
    omega = OneForm(tuple(comps))
    return omega, omega.d_is_zero()


# -- factor harvesting for the log ansatz ------------------------------------

def _squarefree_multivariate(f: Polynomial) -> Polynomial:
    g = f
    for v in sorted(f.variables()):
        d = g.diff(v)
        if d.is_zero:
            continue
        common = poly_gcd(g, d)
        if not common.is_constant:
            g = poly_divexact(g, common)
    return g


def _split_by_contents(f: Polynomial):
    """Split off factors supported on disjoint variable sets by repeated
    content extraction; irreducibility is NOT implied for the pieces."""
    pieces = [f]
    done = []
    while pieces:
        g = pieces.pop()
        split = False
        for v in sorted(g.variables()):
            from .poly import poly_content

            cont = poly_content(g, v)
            if not cont.is_constant:
                pieces.append(cont)
                pieces.append(poly_divexact(g, cont))
                split = True
                break
        if not split:
            done.append(g)
    return done


def _canonical_factor(f: Polynomial) -> Polynomial:
    from .poly import _int_normalize

    return _int_normalize(f)


def harvest_factors(polys):
    """Squarefree pairwise-distinct candidate factors from a list of
    polynomials: per-variable content splits plus univariate factorization."""
    out = []
    seen = set()
    for p in polys:
        if isinstance(p, RationalFunction):
            candidates = [p.num, p.den]
        else:
            candidates = [p]
        for c in candidates:
            if c.is_zero or c.is_constant:
                continue
            for piece in _split_by_contents(_squarefree_multivariate(c)):
                if piece.is_constant:
                    continue
                subpieces = [piece]
                if len(piece.variables()) == 1:
                    _, facs = factor_univariate(piece)
                    subpieces = [f for f, _m, _u in facs]
                for sp in subpieces:
                    sp = _canonical_factor(sp)
                    if not sp.is_constant and sp not in seen:
                        seen.add(sp)
                        out.append(sp)
    return out


def default_gauge_candidates(M: MetricData):
    polys = [M.det_contra]
    for i in range(3):
        for j in range(i, 3):
            polys.append(M.contravariant[i][j])
            polys.append(M.covariant[i][j])
    return harvest_factors(polys)


def solve_gauge(omega: OneForm, candidates=None, metric: MetricData = None):
    """Find rational exponents c_k with omega = d(sum c_k ln f_k), exactly.

    Returns a LogGauge, or None when the residual of the exact linear solve is
    nonzero (lambda falls outside the log ansatz).
    """
    if candidates is None:
        if metric is None:
            raise ValueError("need candidates or a metric to harvest them from")
        candidates = default_gauge_candidates(metric)
    candidates = [c for c in candidates if not c.is_constant]
    if not candidates:
        return None if any(not c.is_zero for c in omega.components) else LogGauge(terms=[])
    # unknowns c_k; equations per component i:
    #   omega_i * prod f_k  =  sum_k c_k  d_i(f_k) * prod_{j != k} f_j   (after
    # clearing omega_i's own denominator)
    rows = []
    rhs = []
    prod_all = P_ONE
    for f in candidates:
        prod_all = prod_all * f
    partials = []
    for k, f in enumerate(candidates):
        rest = P_ONE
        for j, g in enumerate(candidates):
            if j != k:
                rest = rest * g
        partials.append(rest)
    for i in range(3):
        w = omega.components[i]
        lhs = w.num * prod_all  # still to be divided by w.den
        # equation: lhs = w.den * sum_k c_k d_i(f_k) * partials[k]
        terms = {}
        for k, f in enumerate(candidates):
            coeff_poly = w.den * f.diff(i) * partials[k]
            for e, c in coeff_poly.terms.items():
                terms.setdefault(e, {})[k] = terms.get(e, {}).get(k, Fraction(0)) + c
        monos = set(terms) | set(lhs.terms)
        for e in monos:
            row = terms.get(e, {})
            rows.append(dict(row))
            rhs.append(lhs.terms.get(e, Fraction(0)))
    sol = solve_linear_system(rows, rhs)
    if sol is None:
        return None
    exps = [sol.get(k, Fraction(0)) for k in range(len(candidates))]
    gauge = LogGauge(terms=[(f, c) for f, c in zip(candidates, exps) if c])
    # exact round-trip check
    grad = gauge.gradient()
    for i in range(3):
        if grad.components[i] != omega.components[i]:
            return None
    return gauge


# -- curvature ----------------------------------------------------------------

def curvature(M: MetricData) -> CurvatureReport:
    g = M.covariant
    ginv = M.contravariant
    half = Fraction(1, 2)
    dg = [[[g[i][j].diff(k) for k in range(3)] for j in range(3)] for i in range(3)]
    gam = [[[None] * 3 for _ in range(3)] for _ in range(3)]
    for k in range(3):
        for i in range(3):
            for j in range(i, 3):
                s = RationalFunction.from_constant(0)
                for l in range(3):
                    if ginv[k][l].is_zero:
                        continue
                    s = s + ginv[k][l] * (dg[l][j][i] + dg[l][i][j] - dg[i][j][l])
                gam[k][i][j] = gam[k][j][i] = s * half
    # R^l_{ikj} = d_k Gam^l_{ij} - d_j Gam^l_{ik} + Gam^l_{km} Gam^m_{ij}
    #           - Gam^l_{jm} Gam^m_{ik}
    rup = {}
    for l in range(3):
        for i in range(3):
            for k in range(3):
                for j in range(k + 1, 3):
                    e = gam[l][i][j].diff(k) - gam[l][i][k].diff(j)
                    for m_ in range(3):
                        e = e + gam[l][k][m_] * gam[m_][i][j] - gam[l][j][m_] * gam[m_][i][k]
                    if not e.is_zero:
                        rup[(l, i, k, j)] = e
                        rup[(l, i, j, k)] = -e
    riemann = {}
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    s = RationalFunction.from_constant(0)
                    touched = False
                    for a in range(3):
                        v = rup.get((a, j, k, l))
                        if v is not None and not g[i][a].is_zero:
                            s = s + g[i][a] * v
                            touched = True
                    if touched and not s.is_zero:
                        riemann[(i, j, k, l)] = s
    ricci = [[RationalFunction.from_constant(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            s = RationalFunction.from_constant(0)
            for a in range(3):
                v = rup.get((a, i, a, j))
                if v is not None:
                    s = s + v
            ricci[i][j] = s
    scalar = RationalFunction.from_constant(0)
    for i in range(3):
        for j in range(3):
            if not ricci[i][j].is_zero and not ginv[i][j].is_zero:
                scalar = scalar + ginv[i][j] * ricci[i][j]
    return CurvatureReport(
        christoffel=gam,
        riemann=riemann,
        ricci=ricci,
        scalar=scalar,
        is_flat=not riemann,
    )


# -- numeric sampling ----------------------------------------------------------

@dataclass
class PositivityReport:
    all_positive: bool
    min_minors: tuple
    violation_point: tuple = None
    violation_minor: int = None
    note: str = "sampling certificate on a finite grid, not a proof"


def positivity_sample(M: MetricData, box, grid) -> PositivityReport:
    """Evaluate leading principal minors of the contravariant metric on a
    rational grid over box = ((xlo,xhi),(ylo,yhi),(zlo,zhi))."""
    axes = []
    for (lo, hi) in box:
        lo, hi = Fraction(lo), Fraction(hi)
        if grid < 2:
            axes.append([lo])
        else:
            step = (hi - lo) / (grid - 1)
            axes.append([lo + step * t for t in range(grid)])
    mins = [None, None, None]
    for xv in axes[0]:
        for yv in axes[1]:
            for zv in axes[2]:
                pt = (xv, yv, zv)
                try:
                    m = [[M.contravariant[i][j].eval(pt) for j in range(3)] for i in range(3)]
                except ZeroDivisionError:
                    return PositivityReport(
                        all_positive=False,
                        min_minors=tuple(mins),
                        violation_point=tuple(float(v) for v in pt),
                        violation_minor=0,
                        note="covariant data singular at a sample point",
                    )
                m1 = m[0][0]
                m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0]
                m3 = (
                    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
                )
                for idx, val in enumerate((m1, m2, m3)):
                    if mins[idx] is None or val < mins[idx]:
                        mins[idx] = val
                    if val <= 0:
                        return PositivityReport(
                            all_positive=False,
                            min_minors=tuple(mins),
                            violation_point=tuple(float(v) for v in pt),
                            violation_minor=idx + 1,
                        )
    return PositivityReport(all_positive=True, min_minors=tuple(mins))


class AxisMap:
    """Per-axis strictly monotone map given either in closed form (value and
    derivative callables) or by a quadrature integrand (derivative = integrand)."""

    def __init__(self, kind, derivative, value=None, name=""):
        self.kind = kind  # "closed" | "quadrature"
        self.derivative = derivative
        self.value = value
        self.name = name

    @staticmethod
    def arctan():
        return AxisMap("closed", lambda t: 1.0 / (1.0 + t * t), math.atan, name="arctan")

    @staticmethod
    def identity():
        return AxisMap("closed", lambda t: 1.0, lambda t: t, name="identity")

    @staticmethod
    def quadrature(integrand, name="quadrature"):
        return AxisMap("quadrature", integrand, None, name=name)

    def eval_value(self, t, rtol=1e-10):
        if self.value is not None:
            return self.value(t)
        from scipy.integrate import quad

        val, err = quad(self.derivative, 0.0, t, epsabs=0.0, epsrel=rtol, limit=200)
        if not math.isfinite(val) or err > max(abs(val), 1.0) * 1e-6:
            raise NumericFailure(f"quadrature for {self.name} did not converge (err={err})")
        return val


def pullback_numeric(M: MetricData, maps, points):
    """Contravariant metric in the new per-axis coordinates at each point:
    g'^{ab} = J_a J_b g^{ab} with J_i the derivative of map i at the point."""
    out = []
    for pt in points:
        pt_f = tuple(float(v) for v in pt)
        jac = []
        for i, mp in enumerate(maps):
            d = mp.derivative(pt_f[i])
            if not math.isfinite(d) or d <= 0:
                raise NumericFailure(
                    f"map {mp.name} is not strictly monotone at {pt_f[i]} (derivative {d})"
                )
            jac.append(d)
        rows = []
        for a in range(3):
            row = []
            for b in range(3):
                row.append(jac[a] * jac[b] * float(M.contravariant[a][b].eval(pt_f)))
            rows.append(row)
        out.append(rows)
    return out
