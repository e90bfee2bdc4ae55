"""Univariate machinery: exact factorization up to quadratics, Sturm sequences,
real-root isolation and certified bisection.

Internally a univariate polynomial is a coefficient list [c_0 .. c_d] of
Fractions with c_d != 0 (the zero polynomial is []).  The public operations
accept and return the package Polynomial type restricted to one variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Polynomial


# -- coefficient-list helpers ------------------------------------------------

def utrim(c):
    while c and not c[-1]:
        c.pop()
    return c


def udeg(c):
    return len(c) - 1


def uneg(c):
    return [-a for a in c]


def uadd(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return utrim(out)


def usub(a, b):
    return uadd(a, uneg(b))


def umul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return utrim(out)


def uscale(a, s):
    if not s:
        return []
    return [ai * s for ai in a]


def udivmod(a, b):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    while len(a) >= len(b) and utrim(list(a)):
        a = utrim(a)
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        c = a[-1] / lb
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
        a.pop()
        a = utrim(a)
    return utrim(q), utrim(a)


def udiff(a):
    return utrim([a[i] * i for i in range(1, len(a))])


def ugcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = udivmod(a, b)
        a, b = b, r
    if a:
        a = uscale(a, 1 / a[-1])
    return a


def umonic(a):
    return uscale(a, 1 / a[-1]) if a else []


def ueval(a, x):
    out = Fraction(0) if isinstance(x, Fraction) else 0.0
    for c in reversed(a):
        out = out * x + (c if isinstance(x, Fraction) else float(c))
    return out


def usquarefree(a):
    if udeg(a) < 1:
        return umonic(a) if a else []
    g = ugcd(a, udiff(a))
    if udeg(g) < 1:
        return umonic(a)
    q, r = udivmod(a, g)
    assert not r
    return umonic(q)


def _int_clear(a):
    """Scale to integer coefficients with gcd 1; returns list of ints."""
    from math import gcd

    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for c in a]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return [v // g for v in ints] if g else ints


def _divisors(n):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(a):
    """All rational roots with multiplicity, as a dict root -> multiplicity."""
    roots = {}
    a = list(a)
    # strip x = 0 roots
    z = 0
    while a and not a[0]:
        a.pop(0)
        z += 1
    if z:
        roots[Fraction(0)] = z
    if udeg(a) < 1:
        return roots, a
    ints = _int_clear(a)
    cands = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            cands.add(Fraction(p, q))
            cands.add(-Fraction(p, q))
    for r in sorted(cands):
        while udeg(a) >= 1 and ueval(a, r) == 0:
            a, rem = udivmod(a, [-r, Fraction(1)])
            assert not rem
            roots[r] = roots.get(r, 0) + 1
    return roots, a


def _try_quadratic_split(a):
    """Split a monic rational-root-free quartic into two monic rational
    quadratics, if possible.  Returns (q1, q2) or None.

    If x^4+px^3+qx^2+rx+s = (x^2+ax+b)(x^2+cx+d) then c=p-a and, for fixed a,
    (b, d) solve a linear system; a itself must be a rational root of the
    degree-6 elimination polynomial built below.
    """
    if udeg(a) != 4:
        return None
    a = umonic(a)
    p, q, r, s = a[3], a[2], a[1], a[0]
    # elimination polynomial for t = a (coefficient of x in the first factor):
    # with c = p-t, b+d = q - t*c, t*d + b*c = r, b*d = s.
    # Solve the linear system for (b, d) when t != c, then impose b*d = s.
    # Multiply out to a polynomial condition in t (degree 6).
    from itertools import product

    # build condition polynomial numerically in exact arithmetic by expansion:
    # let c = p - t, S = q - t(p-t), and
    #   t*d + (p-t)*b = r,  b + d = S
    # => d*(t-(p-t)) = r - (p-t)*S  => d = (r - (p-t)S)/(2t-p) when 2t != p
    # condition: b*d - s = 0 with b = S - d; clear (2t-p)^2.
    t = [Fraction(0), Fraction(1)]  # the variable
    c = usub([p], t)
    S = usub([q], umul(t, c))
    den = usub(umul([Fraction(2)], t), [p])  # 2t - p
    d_num = usub([r], umul(c, S))
    b_num = usub(umul(S, den), d_num)
    cond = usub(umul(b_num, d_num), umul([s], umul(den, den)))
    roots, _ = rational_roots(utrim(cond))
    for t0 in roots:
        den0 = 2 * t0 - p
        if den0 == 0:
            continue
        S0 = q - t0 * (p - t0)
        d0 = (r - (p - t0) * S0) / den0
        b0 = S0 - d0
        if b0 * d0 == s:
            q1 = [b0, t0, Fraction(1)]
            q2 = [d0, p - t0, Fraction(1)]
            return q1, q2
    # 2t = p branch: b+d = S, b*d = s, t*(b+d) = r must hold
    t0 = p / 2
    S0 = q - t0 * (p - t0)
    if t0 * S0 == r:
        # b, d roots of u^2 - S0 u + s
        disc = S0 * S0 - 4 * s
        sq = _fraction_sqrt(disc)
        if sq is not None:
            b0 = (S0 + sq) / 2
            d0 = (S0 - sq) / 2
            return [b0, t0, Fraction(1)], [d0, t0, Fraction(1)]
    return None


def _fraction_sqrt(f):
    """Exact square root of a non-negative Fraction, or None."""
    if f < 0:
        return None
    import math

    n = math.isqrt(f.numerator)
    d = math.isqrt(f.denominator)
    if n * n == f.numerator and d * d == f.denominator:
        return Fraction(n, d)
    return None


@dataclass
class Factorization:
    """content * prod(factor^multiplicity); unsplit factors are squarefree of
    degree >= 3 that resisted the rational-root and quadratic tests."""

    content: Fraction
    factors: list  # (coeff-list, multiplicity, is_unsplit)


def ufactor(a):
    """Factor over Q with linear and quadratic irreducibles; degree >= 3
    remainders are returned squarefree and flagged unsplit."""
    if not a:
        raise ValueError("cannot factor the zero polynomial")
    content = a[-1]
    factors = _squarefree_factor_list(umonic(a))
    out = []
    for base, m in factors:
        roots, rest = rational_roots(base)
        for r, k in sorted(roots.items()):
            out.append(([-r, Fraction(1)], k * m, False))
        if udeg(rest) in (2, 3):
            # rational-root-free quadratics and cubics are irreducible over Q
            out.append((umonic(rest), m, False))
        elif udeg(rest) == 4:
            split = _try_quadratic_split(rest)
            if split:
                out.append((split[0], m, False))
                out.append((split[1], m, False))
            else:
                # the quadratic-split test is complete for quartics
                out.append((umonic(rest), m, False))
        elif udeg(rest) >= 5:
            out.append((umonic(rest), m, True))
    return Factorization(content=content, factors=out)


def _squarefree_factor_list(f):
    """Yun's algorithm; returns list of (squarefree monic factor, multiplicity)."""
    out = []
    if udeg(f) < 1:
        return out
    fp = udiff(f)
    a = ugcd(f, fp)
    b, _ = udivmod(f, a)
    c, _ = udivmod(fp, a)
    d = usub(c, udiff(b))
    i = 1
    while udeg(b) >= 1:
        a = ugcd(b, d)
        if udeg(a) >= 1:
            out.append((umonic(a), i))
        b, _ = udivmod(b, a)
        c, _ = udivmod(d, a)
        d = usub(c, udiff(b))
        i += 1
    return out


# -- Sturm sequences ---------------------------------------------------------

def sturm_chain(a):
    chain = [list(a), udiff(a)]
    while chain[-1]:
        _, r = udivmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append(uneg(r))
    return [c for c in chain if c]


def _sign_changes(vals):
    signs = [1 if v > 0 else -1 for v in vals if v != 0]
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


def _chain_at(chain, x):
    return [ueval(c, x) for c in chain]


def _chain_at_inf(chain, positive):
    vals = []
    for c in chain:
        lead = c[-1]
        if not positive and udeg(c) % 2 == 1:
            lead = -lead
        vals.append(lead)
    return vals


def cauchy_bound(a):
    lead = abs(a[-1])
    m = max(abs(c) for c in a[:-1]) if len(a) > 1 else Fraction(0)
    return Fraction(1) + m / lead


def sturm_count(chain, lo=None, hi=None):
    """Distinct real roots in (lo, hi]; None endpoints mean +-infinity."""
    va = _chain_at(chain, lo) if lo is not None else _chain_at_inf(chain, False)
    vb = _chain_at(chain, hi) if hi is not None else _chain_at_inf(chain, True)
    return _sign_changes(va) - _sign_changes(vb)


def isolate_real_roots(a, lo=None, hi=None):
    """Disjoint isolating intervals (each containing exactly one root of the
    squarefree part) as (lo, hi] pairs of Fractions."""
    sf = usquarefree(a)
    if udeg(sf) < 1:
        return []
    chain = sturm_chain(sf)
    bound = cauchy_bound(sf)
    a0 = -bound if lo is None else max(lo, -bound)
    b0 = bound if hi is None else min(hi, bound)
    if a0 >= b0:
        return []
    total = sturm_count(chain, a0, b0)
    out = []

    def rec(x, y, n):
        if n == 0:
            return
        if n == 1:
            out.append((x, y))
            return
        mid = (x + y) / 2
        while ueval(sf, mid) == 0:
            mid = (mid + y) / 2
        nl = sturm_count(chain, x, mid)
        rec(x, mid, nl)
        rec(mid, y, n - nl)

    rec(a0, b0, total)
    return out


def refine_root(a, lo, hi, width):
    """Bisect an isolating (lo, hi] down to the requested width."""
    flo = ueval(a, lo)
    fhi = ueval(a, hi)
    if fhi == 0:
        # root exactly at hi
        return hi, hi
    assert flo * fhi < 0, "interval does not bracket a sign change"
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = ueval(a, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (fhi > 0):
            hi = mid
        else:
            lo = mid
    return lo, hi


# -- public wrappers on Polynomial ------------------------------------------

def _main_var(p: Polynomial):
    vs = p.variables()
    if len(vs) > 1:
        raise ValueError(f"polynomial is not univariate: {p}")
    return "xyz"[min(vs)] if vs else "x"


def factor_univariate(p: Polynomial):
    """Factor a univariate Polynomial over Q.

    Returns (content: Fraction, [(factor: Polynomial, multiplicity: int,
    unsplit: bool)]); the product of factors times content equals the input.
    Factors of degree <= 2 are irreducible over Q; degree >= 3 factors are
    squarefree and flagged unsplit when the rational-root and quadratic
    tests fail.
    """
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    var = _main_var(p)
    fac = ufactor(p.as_univariate(var))
    factors = [
        (Polynomial.from_univariate(c, var), m, unsplit) for c, m, unsplit in fac.factors
    ]
    return fac.content, factors


def sturm_real_roots(p: Polynomial, lo=None, hi=None):
    """Exact count of distinct real roots (of the squarefree part) on the whole
    line or on (lo, hi], plus disjoint isolating intervals."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    var = _main_var(p)
    c = p.as_univariate(var)
    if udeg(c) < 1:
        return 0, []
    lo = Fraction(lo) if lo is not None else None
    hi = Fraction(hi) if hi is not None else None
    intervals = isolate_real_roots(c, lo, hi)
    return len(intervals), intervals


def has_real_roots(p: Polynomial):
    n, _ = sturm_real_roots(p)
    return n > 0
