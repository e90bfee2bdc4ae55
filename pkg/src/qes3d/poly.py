"""Exact arithmetic over Q for polynomials in x, y, z, exponential-extended
polynomials (finite sums of p(x,y,z)*e^(a*z) with rational rates a), and
rational functions.

Monomials are exponent triples (i, j, k).  Negative exponents are tolerated in
the raw polynomial layer (a few catalog generators are Laurent in one
variable); everything geometric (gcd, division, rational functions, module
bases) insists on ordinary non-negative exponents.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import DivisionByZero, UnsupportedCoefficients

VARS = ("x", "y", "z")
VAR_INDEX = {"x": 0, "y": 1, "z": 2}

Expo = tuple


def _grlex_key(e):
    return (e[0] + e[1] + e[2], e)


class Polynomial:
    """Sparse polynomial over Q; terms maps exponent triples to Fractions."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    c = c if isinstance(c, Fraction) else Fraction(c)
                    t[e] = c
        self.terms = t

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero():
        return Polynomial()

    @staticmethod
    def constant(c):
        c = Fraction(c)
        return Polynomial({(0, 0, 0): c}) if c else Polynomial()

    @staticmethod
    def variable(name):
        e = [0, 0, 0]
        e[VAR_INDEX[name]] = 1
        return Polynomial({tuple(e): Fraction(1)})

    @staticmethod
    def monomial(expo, coeff=1):
        return Polynomial({tuple(expo): Fraction(coeff)})

    # -- predicates ---------------------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0, 0, 0) in self.terms)

    def constant_value(self):
        if not self.is_constant:
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((0, 0, 0), Fraction(0))

    def is_laurent(self):
        return any(min(e) < 0 for e in self.terms)

    def variables(self):
        out = set()
        for e in self.terms:
            for i in range(3):
                if e[i]:
                    out.add(i)
        return out

    def degree(self, var=None):
        """Total degree, or degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(e[0] + e[1] + e[2] for e in self.terms)
        i = VAR_INDEX[var] if isinstance(var, str) else var
        return max(e[i] for e in self.terms)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        out = Polynomial.__new__(Polynomial)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial.__new__(Polynomial)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial()
            out = Polynomial.__new__(Polynomial)
            out.terms = {e: v * c for e, v in self.terms.items()}
            return out
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                s = t.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    t[e] = s
                elif e in t:
                    del t[e]
        out = Polynomial.__new__(Polynomial)
        out.terms = t
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus -----------------------------------------------------
    def diff(self, var):
        i = VAR_INDEX[var] if isinstance(var, str) else var
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        out = Polynomial.__new__(Polynomial)
        out.terms = t
        return out

    def eval(self, point):
        """Evaluate at (x, y, z); exact for Fractions, float otherwise."""
        total = 0
        for e, c in self.terms.items():
            v = c if isinstance(point[0], Fraction) else float(c)
            for i in range(3):
                if e[i]:
                    v = v * point[i] ** e[i]
            total = total + v
        return total

    # -- structure ----------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: _grlex_key(ec[0]), reverse=True)

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def coefficient(self, expo):
        return self.terms.get(tuple(expo), Fraction(0))

    def as_univariate(self, var):
        """Coefficient list [c_0 .. c_d] in `var`; other variables must be absent."""
        i = VAR_INDEX[var] if isinstance(var, str) else var
        if any(e[j] for e in self.terms for j in range(3) if j != i):
            raise ValueError(f"not univariate in {VARS[i]}: {self}")
        if self.is_laurent():
            raise ValueError("Laurent polynomial is not supported here")
        d = self.degree(i)
        coeffs = [Fraction(0)] * (d + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return coeffs

    @staticmethod
    def from_univariate(coeffs, var):
        i = VAR_INDEX[var] if isinstance(var, str) else var
        t = {}
        for d, c in enumerate(coeffs):
            if c:
                e = [0, 0, 0]
                e[i] = d
                t[tuple(e)] = Fraction(c)
        return Polynomial(t)

    def substitute(self, var, value):
        """Substitute a Fraction for one variable."""
        i = VAR_INDEX[var] if isinstance(var, str) else var
        value = Fraction(value)
        t = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] = 0
            c = c * value ** e[i]
            ne = tuple(ne)
            s = t.get(ne, Fraction(0)) + c
            if s:
                t[ne] = s
            elif ne in t:
                del t[ne]
        return Polynomial(t)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (VARS[i] if e[i] == 1 else f"{VARS[i]}^{e[i]}") for i in range(3) if e[i]
            )
            if not mono:
                frag = str(c)
            elif c == 1:
                frag = mono
            elif c == -1:
                frag = f"-{mono}"
            else:
                frag = f"{c}*{mono}"
            bits.append(frag)
        s = " + ".join(bits).replace("+ -", "- ")
        return s


def _coerce_poly(v):
    if isinstance(v, Polynomial):
        return v
    if isinstance(v, (int, Fraction)):
        return Polynomial.constant(v)
    return NotImplemented


P_ZERO = Polynomial()
P_ONE = Polynomial.constant(1)
X = Polynomial.variable("x")
Y = Polynomial.variable("y")
Z = Polynomial.variable("z")


# ---------------------------------------------------------------------------
# multivariate gcd (primitive PRS) and exact division
# ---------------------------------------------------------------------------

def _int_normalize(f):
    """Scale f to integer coefficients with content 1 and positive grlex lead."""
    if f.is_zero:
        return f
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // _int_gcd(den, c.denominator)
    g = 0
    for c in f.terms.values():
        g = _int_gcd(g, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, g)
    out = f * scale
    if out.leading()[1] < 0:
        out = -out
    return out


def _coeffs_in_var(f, i):
    """Map degree-in-var -> Polynomial coefficient (in the other variables)."""
    out = {}
    for e, c in f.terms.items():
        d = e[i]
        ne = list(e)
        ne[i] = 0
        out.setdefault(d, {})[tuple(ne)] = c
    return {d: Polynomial(t) for d, t in out.items()}


def _from_coeffs_in_var(coeffs, i):
    t = {}
    for d, p in coeffs.items():
        for e, c in p.terms.items():
            ne = list(e)
            ne[i] = d
            t[tuple(ne)] = c
    return Polynomial(t)


def poly_divexact(f, d):
    """Exact multivariate division; raises if the division leaves a remainder."""
    if d.is_zero:
        raise DivisionByZero("division by zero polynomial")
    if f.is_zero:
        return Polynomial()
    if d.is_constant:
        return f * (1 / d.constant_value())
    if f.is_laurent() or d.is_laurent():
        raise ValueError("exact division not supported for Laurent polynomials")
    le_d, lc_d = d.leading()
    rem = f
    q = {}
    while not rem.is_zero:
        le_r, lc_r = rem.leading()
        e = (le_r[0] - le_d[0], le_r[1] - le_d[1], le_r[2] - le_d[2])
        if min(e) < 0:
            raise ValueError("inexact polynomial division")
        c = lc_r / lc_d
        q[e] = c
        rem = rem - d * Polynomial({e: c})
    return Polynomial(q)


def _pseudo_rem(F, G, i):
    """Pseudo-remainder of F by G as univariate-in-var-i with poly coefficients."""
    fc = _coeffs_in_var(F, i)
    gc = _coeffs_in_var(G, i)
    df = max(fc)
    dg = max(gc)
    lg = gc[dg]
    rem = dict(fc)
    while rem and max(rem) >= dg:
        dr = max(rem)
        lr = rem[dr]
        # rem <- lg*rem - lr * x^(dr-dg) * G
        new = {}
        for d, c in rem.items():
            new[d] = c * lg
        for d, c in gc.items():
            dd = d + dr - dg
            cur = new.get(dd, P_ZERO)
            cur = cur - lr * c
            new[dd] = cur
        rem = {d: c for d, c in new.items() if not c.is_zero}
        if rem and max(rem) == dr:
            # leading term must cancel
            raise ArithmeticError("pseudo-division failed to reduce degree")
    return _from_coeffs_in_var(rem, i) if rem else Polynomial()


def poly_content(f, i):
    """gcd of the coefficients of f viewed as univariate in variable i."""
    cs = list(_coeffs_in_var(f, i).values())
    g = cs[0]
    for c in cs[1:]:
        g = poly_gcd(g, c)
        if g.is_constant:
            break
    return _int_normalize(g) if not g.is_constant else Polynomial.constant(1)


def poly_gcd(f, g):
    """gcd over Q, normalized to integer-primitive with positive leading coeff."""
    if f.is_zero:
        return _int_normalize(g) if not g.is_zero else Polynomial()
    if g.is_zero:
        return _int_normalize(f)
    if f.is_constant or g.is_constant:
        return Polynomial.constant(1)
    fvars = f.variables()
    gvars = g.variables()
    common = fvars & gvars
    if not common:
        return Polynomial.constant(1)
    i = min(common)
    # split off content w.r.t. variable i
    cf = poly_content(f, i)
    cg = poly_content(g, i)
    cont = poly_gcd(cf, cg)
    F = _int_normalize(poly_divexact(f, cf))
    G = _int_normalize(poly_divexact(g, cg))
    if _coeffs_in_var(F, i) and _coeffs_in_var(G, i):
        dF = max(_coeffs_in_var(F, i))
        dG = max(_coeffs_in_var(G, i))
        if dF < dG:
            F, G = G, F
    while True:
        if not G.variables() or i not in G.variables():
            # gcd of primitive parts is trivial in var i
            if G.is_constant:
                pp = Polynomial.constant(1) if not G.is_zero else _int_normalize(F)
            else:
                pp = Polynomial.constant(1)
            break
        R = _pseudo_rem(F, G, i)
        if R.is_zero:
            pp = _int_normalize(poly_divexact(G, poly_content(G, i)))
            break
        R = poly_divexact(R, poly_content(R, i))
        F, G = G, _int_normalize(R)
        if i not in G.variables():
            pp = Polynomial.constant(1)
            break
    return _int_normalize(cont * pp)


def poly_lcm(f, g):
    if f.is_zero or g.is_zero:
        return Polynomial()
    return _int_normalize(poly_divexact(f * g, poly_gcd(f, g)))


# ---------------------------------------------------------------------------
# exponential-extended polynomials
# ---------------------------------------------------------------------------

class ExpPolynomial:
    """Finite sum of P_a(x,y,z) * e^(a*z) with rational rates a.

    layers maps each rate to its polynomial part; the a=0 layer is the plain
    polynomial component.  Empty layers are never stored.
    """

    __slots__ = ("layers",)

    def __init__(self, layers=None):
        ls = {}
        if layers:
            for a, p in layers.items():
                if not isinstance(p, Polynomial):
                    p = _coerce_poly(p)
                if not p.is_zero:
                    ls[Fraction(a)] = p
        self.layers = ls

    @staticmethod
    def zero():
        return ExpPolynomial()

    @staticmethod
    def constant(c):
        return ExpPolynomial.from_polynomial(Polynomial.constant(c))

    @staticmethod
    def from_polynomial(p):
        return ExpPolynomial({Fraction(0): p}) if not p.is_zero else ExpPolynomial()

    @staticmethod
    def exp_term(rate, poly=None):
        return ExpPolynomial({Fraction(rate): poly if poly is not None else P_ONE})

    @property
    def is_zero(self):
        return not self.layers

    @property
    def is_polynomial(self):
        return all(a == 0 for a in self.layers)

    @property
    def is_constant(self):
        return self.is_polynomial and all(p.is_constant for p in self.layers.values())

    def constant_value(self):
        if not self.is_constant:
            raise ValueError(f"not constant: {self}")
        p = self.layers.get(Fraction(0))
        return p.constant_value() if p is not None else Fraction(0)

    def as_polynomial(self):
        if not self.is_polynomial:
            raise UnsupportedCoefficients(f"exponential layers present in {self}")
        return self.layers.get(Fraction(0), P_ZERO)

    def __add__(self, other):
        other = _coerce_exp(other)
        if other is NotImplemented:
            return NotImplemented
        ls = dict(self.layers)
        for a, p in other.layers.items():
            s = ls.get(a)
            s = p if s is None else s + p
            if s.is_zero:
                ls.pop(a, None)
            else:
                ls[a] = s
        out = ExpPolynomial.__new__(ExpPolynomial)
        out.layers = ls
        return out

    __radd__ = __add__

    def __neg__(self):
        out = ExpPolynomial.__new__(ExpPolynomial)
        out.layers = {a: -p for a, p in self.layers.items()}
        return out

    def __sub__(self, other):
        other = _coerce_exp(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_exp(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ExpPolynomial()
            out = ExpPolynomial.__new__(ExpPolynomial)
            out.layers = {a: p * other for a, p in self.layers.items()}
            return out
        other = _coerce_exp(other)
        if other is NotImplemented:
            return NotImplemented
        ls = {}
        for a1, p1 in self.layers.items():
            for a2, p2 in other.layers.items():
                a = a1 + a2
                p = p1 * p2
                s = ls.get(a)
                s = p if s is None else s + p
                if s.is_zero:
                    ls.pop(a, None)
                else:
                    ls[a] = s
        out = ExpPolynomial.__new__(ExpPolynomial)
        out.layers = ls
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        out = ExpPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce_exp(other)
        if other is NotImplemented:
            return NotImplemented
        return self.layers == other.layers

    def __hash__(self):
        return hash(frozenset((a, frozenset(p.terms.items())) for a, p in self.layers.items()))

    def diff(self, var):
        """Partial derivative; e^(a*z) layers obey the product rule in z."""
        i = VAR_INDEX[var] if isinstance(var, str) else var
        ls = {}
        for a, p in self.layers.items():
            d = p.diff(i)
            if i == 2 and a:
                d = d + p * a
            if not d.is_zero:
                s = ls.get(a)
                ls[a] = d if s is None else s + d
        return ExpPolynomial(ls)

    def eval(self, point):
        import math

        total = 0.0
        for a, p in self.layers.items():
            v = p.eval(point)
            if a:
                v = float(v) * math.exp(float(a) * float(point[2]))
            total += float(v)
        return total

    def sorted_layers(self):
        return sorted(self.layers.items(), key=lambda ap: ap[0])

    def __repr__(self):
        return f"ExpPolynomial({self})"

    def __str__(self):
        if not self.layers:
            return "0"
        bits = []
        for a, p in self.sorted_layers():
            if a == 0:
                bits.append(str(p))
            else:
                bits.append(f"({p})*exp({a}*z)")
        return " + ".join(bits)


def _coerce_exp(v):
    if isinstance(v, ExpPolynomial):
        return v
    if isinstance(v, Polynomial):
        return ExpPolynomial.from_polynomial(v)
    if isinstance(v, (int, Fraction)):
        return ExpPolynomial.constant(v)
    return NotImplemented


E_ZERO = ExpPolynomial()
E_ONE = ExpPolynomial.constant(1)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """num/den with exact gcd normalization; den has grlex leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        num = _coerce_poly(num)
        den = P_ONE if den is None else _coerce_poly(den)
        if den.is_zero:
            raise DivisionByZero("zero denominator")
        if not _normalized:
            num, den = _normalize_ratio(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def from_constant(c):
        return RationalFunction(Polynomial.constant(c), P_ONE, _normalized=True)

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_polynomial(self):
        return self.den == P_ONE

    @property
    def is_constant(self):
        return self.num.is_constant and self.den == P_ONE

    def constant_value(self):
        if not self.is_constant:
            raise ValueError(f"not constant: {self}")
        return self.num.constant_value()

    def __add__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_constant:
            return RationalFunction(
                self.num * other.den + other.num * self.den, self.den * other.den
            )
        da = poly_divexact(self.den, g)
        db = poly_divexact(other.den, g)
        return RationalFunction(self.num * db + other.num * da, da * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_rat(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num * other, self.den, _normalized=not other == 0)
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        # cross-cancel to keep intermediate sizes down
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_constant else poly_divexact(self.num, g1)
        d2 = other.den if g1.is_constant else poly_divexact(other.den, g1)
        n2 = other.num if g2.is_constant else poly_divexact(other.num, g2)
        d1 = self.den if g2.is_constant else poly_divexact(self.den, g2)
        return RationalFunction(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero("division by zero rational function")
        return self * RationalFunction(other.den, other.num)

    def __rtruediv__(self, other):
        return _coerce_rat(other) / self

    def __eq__(self, other):
        other = _coerce_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, var):
        n = self.num.diff(var) * self.den - self.num * self.den.diff(var)
        return RationalFunction(n, self.den * self.den)

    def eval(self, point):
        d = self.den.eval(point)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at {point}")
        n = self.num.eval(point)
        if isinstance(n, Fraction) and isinstance(d, Fraction):
            return n / d
        return float(n) / float(d)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den == P_ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _normalize_ratio(num, den):
    if num.is_zero:
        return P_ZERO, P_ONE
    if den.is_constant:
        c = den.constant_value()
        return num * (1 / c), P_ONE
    g = poly_gcd(num, den)
    if not g.is_constant:
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    lc = den.leading()[1]
    if lc != 1:
        num = num * (1 / lc)
        den = den * (1 / lc)
    return num, den


def _coerce_rat(v):
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, Polynomial):
        return RationalFunction(v, P_ONE, _normalized=True)
    if isinstance(v, (int, Fraction)):
        return RationalFunction.from_constant(v)
    return NotImplemented


R_ZERO = RationalFunction.from_constant(0)
R_ONE = RationalFunction.from_constant(1)


def arith(a, b, kind):
    """Ring/field arithmetic dispatcher used by the JSON/CLI surface.

    div is only defined for RationalFunction operands.
    """
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if not isinstance(a, RationalFunction) or not isinstance(b, RationalFunction):
            raise TypeError("div is defined on RationalFunction only")
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def derive(f, var):
    """Exact partial derivative for any of the three coefficient types."""
    return f.diff(var)
