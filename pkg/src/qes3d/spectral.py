"""Restriction of operators to invariant modules, exact characteristic
polynomials and eigendata, Schrodinger-convention spectra, parametric
eigenvalue checks, and normalizability certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MatchingAmbiguity, NotInvariant
from .liecheck import MonomialModule
from .linalg import nullspace
from .operators import SecondOrderOp, apply_second
from .poly import ExpPolynomial, Polynomial, RationalFunction
from .univariate import (
    isolate_real_roots,
    rational_roots,
    refine_root,
    udeg,
    udivmod,
    ufactor,
    umul,
    uneg,
    usub,
    utrim,
)

VARS = ("x", "y", "z")


@dataclass
class ModuleMatrix:
    """Column convention: H(basis_j) = sum_i matrix[i][j] basis_i."""

    matrix: list
    basis: MonomialModule
    convention: object = None

    @property
    def dim(self):
        return len(self.matrix)

    def trace(self):
        return sum((self.matrix[i][i] for i in range(self.dim)), Fraction(0))


def hamiltonian_matrix(H, N: MonomialModule, convention=None) -> ModuleMatrix:
    """Exact matrix of a second-order operator restricted to span(N)."""
    op = H.op if hasattr(H, "op") else H
    conv = convention
    if conv is None and hasattr(H, "spec"):
        conv = H.spec.convention
    r = N.dim
    cols = []
    for j, f in enumerate(N.basis):
        img = apply_second(op, f)
        residual, coeffs = N.reduce(img)
        if residual:
            raise NotInvariant(j, f, img)
        cols.append(coeffs)
    matrix = [[cols[j][i] for j in range(r)] for i in range(r)]
    return ModuleMatrix(matrix=matrix, basis=N, convention=conv)


# -- characteristic polynomial by fraction-free elimination -------------------

def char_poly(matrix):
    """det(tI - M) as a coefficient list over Q, via Bareiss elimination on the
    polynomial matrix (exact division in Q[t])."""
    n = len(matrix)
    if n == 0:
        return [Fraction(1)]
    a = [[([-matrix[i][j], Fraction(1)] if i == j else [-matrix[i][j]]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            a[i][j] = utrim(list(a[i][j]))
    prev = [Fraction(1)]
    sign = 1
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                continue
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = usub(umul(a[k][k], a[i][j]), umul(a[i][k], a[k][j]))
                q, rem = udivmod(num, prev) if num else ([], [])
                assert not rem, "Bareiss division left a remainder"
                a[i][j] = q
            a[i][k] = []
        prev = a[k][k]
    out = a[n - 1][n - 1]
    return uneg(out) if sign < 0 else out


@dataclass
class Eigenpair:
    value: object  # Fraction for exact eigenvalues, float otherwise
    multiplicity: int
    is_rational: bool
    isolating_interval: tuple = None  # (lo, hi) Fractions for numeric roots
    eigenvectors: list = None  # list of exact Fraction vectors (rational case)


@dataclass
class SpectralResult:
    char_poly: list  # coefficient list in t
    eigenpairs: list
    schrodinger_eigenvalues: list = None

    def eigenvalues(self):
        return [(p.value, p.multiplicity) for p in self.eigenpairs]

    def rational_spectrum(self):
        return sorted(
            ((p.value, p.multiplicity) for p in self.eigenpairs if p.is_rational),
            key=lambda t: t[0],
        )


def eigensolve(M: ModuleMatrix) -> SpectralResult:
    cp = char_poly(M.matrix)
    roots, rest = rational_roots(list(cp))
    pairs = []
    for val, mult in sorted(roots.items()):
        vecs = _rational_eigenvectors(M.matrix, val)
        pairs.append(
            Eigenpair(value=val, multiplicity=mult, is_rational=True, eigenvectors=vecs)
        )
    if udeg(rest) >= 1:
        fac = ufactor(rest)
        for coeffs, mult, _unsplit in fac.factors:
            for (lo, hi) in isolate_real_roots(coeffs):
                lo2, hi2 = refine_root(coeffs, lo, hi, Fraction(1, 10**12))
                pairs.append(
                    Eigenpair(
                        value=float((lo2 + hi2) / 2),
                        multiplicity=mult,
                        is_rational=False,
                        isolating_interval=(lo2, hi2),
                    )
                )
    return SpectralResult(char_poly=cp, eigenpairs=pairs)


def _rational_eigenvectors(matrix, lam):
    n = len(matrix)
    shifted = [[matrix[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    return nullspace(shifted)


@dataclass
class SchrodingerConvention:
    """factor maps restriction-matrix eigenvalues to the reported Schrodinger
    eigenvalues: -1/2 when the stored operator is the -2H side, 1 when the
    matrix spectrum is reported directly."""

    factor: Fraction

    def __post_init__(self):
        self.factor = Fraction(self.factor)


def schrodinger_spectrum(R: SpectralResult, conv: SchrodingerConvention):
    out = []
    for p in R.eigenpairs:
        v = p.value * conv.factor if p.is_rational else float(p.value) * float(conv.factor)
        out.append((v, p.multiplicity))
    out.sort(key=lambda t: float(t[0]))
    R.schrodinger_eigenvalues = out
    return out


def parametric_check(build, parameter_samples, claims, resample=None):
    """Verify affine eigenvalue formulas over a parameter.

    build(s) must return a ModuleMatrix at parameter value s; claims is a list
    of ((a0, a1), multiplicity) meaning an eigenvalue a0 + a1*s of that
    multiplicity.  Eigenvalues are matched to claims by sorted order per
    sample; a collision between claim values at a sample raises
    MatchingAmbiguity unless resample supplies replacement sample values.
    """
    samples = [Fraction(s) for s in parameter_samples]
    spare = [Fraction(s) for s in (resample or [])]
    checked = []
    for s in samples:
        s_used = s
        while True:
            values = sorted(
                ((Fraction(a0) + Fraction(a1) * s_used, mult) for (a0, a1), mult in claims),
                key=lambda t: t[0],
            )
            flat_claim = []
            collision = False
            for v, mult in values:
                if flat_claim and flat_claim[-1] == v:
                    collision = True
                flat_claim.extend([v] * mult)
            if not collision:
                break
            if not spare:
                raise MatchingAmbiguity(f"claims collide at sample {s_used}")
            s_used = spare.pop(0)
        mm = build(s_used)
        res = eigensolve(mm)
        flat = []
        for p in res.eigenpairs:
            if not p.is_rational:
                return False, f"non-rational eigenvalue at sample {s_used}"
            flat.extend([p.value] * p.multiplicity)
        flat.sort()
        if flat != flat_claim:
            return False, f"sample {s_used}: computed {flat} != claimed {flat_claim}"
        checked.append(s_used)
    return True, f"verified at samples {checked}"


def affine_interpolation(samples, values):
    """Exact affine fit a0 + a1*s through >= 2 (sample, value) points; returns
    (a0, a1) or None if the points are not affine."""
    (s0, v0), (s1, v1) = (samples[0], values[0]), (samples[1], values[1])
    a1 = (v1 - v0) / (s1 - s0)
    a0 = v0 - a1 * s0
    for s, v in zip(samples, values):
        if a0 + a1 * s != v:
            return None
    return a0, a1


# -- normalizability -----------------------------------------------------------

@dataclass
class FunctionVerdict:
    verdict: str  # proven-convergent | proven-divergent | numeric-convergent | unknown
    evidence: dict


@dataclass
class NormalizabilityVerdict:
    per_function: list  # (basis function, FunctionVerdict)

    def all_proven_convergent(self):
        return all(v.verdict == "proven-convergent" for _, v in self.per_function)

    def summary(self):
        out = {}
        for _, v in self.per_function:
            out[v.verdict] = out.get(v.verdict, 0) + 1
        return out


def _factor_exponent_in(det_poly: Polynomial, f: Polynomial):
    """Multiplicity of the factor f in det_poly (exact repeated division)."""
    from .poly import poly_divexact

    count = 0
    cur = det_poly
    while True:
        try:
            cur = poly_divexact(cur, f)
            count += 1
        except (ValueError, ArithmeticError):
            return count, cur


def gauge_measure_factors(gauge, M):
    """(factors, leftover): the integrand for a module function h is
    h^2 * prod f_k^(e_k) with e_k = 2*(mu exponent of f_k) minus half the
    exponent of f_k in det_contra; leftover is the unfactored determinant part."""
    det_num = M.det_contra.num
    det_den = M.det_contra.den
    factors = []
    leftover = det_num
    for f, mu_exp in gauge.mu_exponents:
        mult, _ = _factor_exponent_in(det_num, f)
        dmult, _ = _factor_exponent_in(det_den, f)
        e_k = 2 * mu_exp - Fraction(mult - dmult, 2)
        factors.append((f, e_k))
        for _ in range(mult):
            leftover = _exact_div_or_none(leftover, f)
    return factors, leftover


def normalizability(gauge, M, N: MonomialModule, quad_tol=1e-6) -> NormalizabilityVerdict:
    """Square-integrability of each gauged module function against the
    Riemannian measure.

    When every gauge factor is univariate and h is a monomial the integral
    splits (Fubini) into 1D integrals certified by degree counts and
    root-freeness; otherwise adaptive quadrature under x = tan(theta) is
    attempted, and 'unknown' is a first-class outcome.
    """
    factors, leftover = gauge_measure_factors(gauge, M)
    per = []
    for h in N.basis:
        per.append((h, _one_function_verdict(h, factors, leftover, quad_tol)))
    return NormalizabilityVerdict(per_function=per)


def quadrature_crosscheck(gauge, M, N: MonomialModule, tol=1e-6):
    """Numeric value of each function's integral (tan substitution); None when
    the quadrature fails or the structure does not factor."""
    factors, _leftover = gauge_measure_factors(gauge, M)
    out = []
    for h in N.basis:
        if not h.is_polynomial or len(h.as_polynomial().terms) != 1 or any(
            len(f.variables()) > 1 for f, _ in factors
        ):
            out.append((h, None))
            continue
        out.append((h, _tan_quadrature(h, factors, tol)))
    return out


def _exact_div_or_none(p, f):
    from .poly import poly_divexact

    try:
        return poly_divexact(p, f)
    except (ValueError, ArithmeticError):
        return p


def _one_function_verdict(h: ExpPolynomial, factors, leftover, quad_tol):
    from .univariate import sturm_real_roots

    if not h.is_polynomial or len(h.as_polynomial().terms) != 1:
        return FunctionVerdict(verdict="unknown", evidence={"reason": "non-monomial function"})
    if not leftover.is_constant:
        return FunctionVerdict(
            verdict="unknown",
            evidence={"reason": f"unfactored determinant part {leftover}"},
        )
    if any(len(f.variables()) > 1 for f, _ in factors):
        return FunctionVerdict(
            verdict="unknown",
            evidence={"reason": "multivariate gauge factor; no Fubini split"},
        )
    (hexp, _), = h.as_polynomial().terms.items()
    evidence = {"degrees": {}}
    verdict = "proven-convergent"
    for vi, vname in enumerate(VARS):
        net = Fraction(2 * hexp[vi])
        root_free = True
        for f, e in factors:
            d = f.degree(vi)
            if d > 0:
                net += e * d
                if e < 0:
                    nroots, _ = sturm_real_roots(f)
                    if nroots > 0:
                        root_free = False
        evidence["degrees"][vname] = str(net)
        if net >= -1:
            # the 1D integrand does not decay; degree certificate says divergent
            verdict = "proven-divergent"
            evidence["divergent_variable"] = vname
            break
        if not root_free:
            verdict = "numeric"
            break
    if verdict == "proven-convergent":
        return FunctionVerdict(verdict=verdict, evidence=evidence)
    if verdict == "proven-divergent":
        return FunctionVerdict(verdict=verdict, evidence=evidence)
    val = _tan_quadrature(h, factors, quad_tol)
    if val is None:
        return FunctionVerdict(verdict="unknown", evidence=evidence)
    evidence["quadrature"] = val
    return FunctionVerdict(verdict="numeric-convergent", evidence=evidence)


def quadrature_1d(fn, tol=1e-6):
    """Integral of fn over the real line via the x = tan(theta) substitution."""
    from scipy.integrate import quad

    def g(theta):
        t = math.tan(theta)
        c = math.cos(theta)
        return fn(t) / (c * c)

    val, err = quad(g, -math.pi / 2 + 1e-12, math.pi / 2 - 1e-12, limit=400)
    if not math.isfinite(val):
        return None
    return val, err


def _tan_quadrature(h, factors, tol):
    (hexp, hcoef), = h.as_polynomial().terms.items()
    total = float(hcoef) ** 2
    for vi in range(3):
        fs = [(f, e) for f, e in factors if f.degree(vi) > 0]

        def fn(t, vi=vi, fs=fs):
            pt = [0.0, 0.0, 0.0]
            pt[vi] = t
            out = t ** (2 * hexp[vi])
            for f, e in fs:
                base = f.eval(tuple(pt))
                if base <= 0:
                    return math.inf
                out *= float(base) ** float(e)
            return out

        res = quadrature_1d(fn, tol)
        if res is None:
            return None
        val, err = res
        if not math.isfinite(val) or err > max(abs(val), 1.0) * tol:
            return None
        total *= val
    return total


def scaled_eigenfunctions(R: SpectralResult, gauge, N: MonomialModule):
    """Each rational eigenpair rendered as (eigenvalue, polynomial part, gauge)
    with the polynomial part expanded in the module basis."""
    out = []
    for p in R.eigenpairs:
        if not p.is_rational or not p.eigenvectors:
            continue
        for vec in p.eigenvectors:
            poly = ExpPolynomial.zero()
            for c, f in zip(vec, N.basis):
                if c:
                    poly = poly + f * c
            out.append((p.value, poly, gauge))
    return out
