"""First- and second-order linear differential operators with ExpPolynomial
coefficients: application, composition, Lie bracket."""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalInconsistency
from .poly import E_ZERO, ExpPolynomial, Polynomial

VARS = ("x", "y", "z")


def _as_exp(v):
    if isinstance(v, ExpPolynomial):
        return v
    if isinstance(v, Polynomial):
        return ExpPolynomial.from_polynomial(v)
    return ExpPolynomial.constant(v)


class FirstOrderOp:
    """T = xi_x d/dx + xi_y d/dy + xi_z d/dz + eta."""

    __slots__ = ("xi", "eta")

    def __init__(self, xi=(E_ZERO, E_ZERO, E_ZERO), eta=E_ZERO):
        self.xi = tuple(_as_exp(c) for c in xi)
        self.eta = _as_exp(eta)

    @property
    def is_zero(self):
        return all(c.is_zero for c in self.xi) and self.eta.is_zero

    @property
    def is_vector_field(self):
        return self.eta.is_zero

    def vector_part(self):
        return FirstOrderOp(self.xi, E_ZERO)

    def __add__(self, other):
        return FirstOrderOp(
            tuple(a + b for a, b in zip(self.xi, other.xi)), self.eta + other.eta
        )

    def __sub__(self, other):
        return FirstOrderOp(
            tuple(a - b for a, b in zip(self.xi, other.xi)), self.eta - other.eta
        )

    def __neg__(self):
        return FirstOrderOp(tuple(-a for a in self.xi), -self.eta)

    def scale(self, c):
        c = Fraction(c)
        return FirstOrderOp(tuple(a * c for a in self.xi), self.eta * c)

    def __eq__(self, other):
        if not isinstance(other, FirstOrderOp):
            return NotImplemented
        return self.xi == other.xi and self.eta == other.eta

    def __hash__(self):
        return hash((self.xi, self.eta))

    def __call__(self, f):
        return apply_first(self, f)

    def __repr__(self):
        bits = []
        for c, sym in zip(self.xi, ("p", "q", "r")):
            if not c.is_zero:
                bits.append(f"({c})*{sym}")
        if not self.eta.is_zero:
            bits.append(f"({self.eta})")
        return " + ".join(bits) if bits else "0"


class SecondOrderOp:
    """sum a2[i][j] d_i d_j (a2 symmetric, each unordered pair counted via the
    symmetric table) + sum b1[i] d_i + c0."""

    __slots__ = ("a2", "b1", "c0")

    def __init__(self, a2=None, b1=None, c0=E_ZERO):
        if a2 is None:
            a2 = [[E_ZERO] * 3 for _ in range(3)]
        a2 = [[_as_exp(a2[i][j]) for j in range(3)] for i in range(3)]
        # store symmetrized
        self.a2 = tuple(
            tuple((a2[i][j] + a2[j][i]) * Fraction(1, 2) for j in range(3)) for i in range(3)
        )
        b1 = b1 if b1 is not None else (E_ZERO, E_ZERO, E_ZERO)
        self.b1 = tuple(_as_exp(c) for c in b1)
        self.c0 = _as_exp(c0)

    @property
    def is_zero(self):
        return (
            all(c.is_zero for row in self.a2 for c in row)
            and all(c.is_zero for c in self.b1)
            and self.c0.is_zero
        )

    def __add__(self, other):
        return SecondOrderOp(
            [[self.a2[i][j] + other.a2[i][j] for j in range(3)] for i in range(3)],
            tuple(a + b for a, b in zip(self.b1, other.b1)),
            self.c0 + other.c0,
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return SecondOrderOp(
            [[self.a2[i][j] * c for j in range(3)] for i in range(3)],
            tuple(b * c for b in self.b1),
            self.c0 * c,
        )

    def __eq__(self, other):
        if not isinstance(other, SecondOrderOp):
            return NotImplemented
        return self.a2 == other.a2 and self.b1 == other.b1 and self.c0 == other.c0

    def __call__(self, f):
        return apply_second(self, f)

    def first_order_part(self):
        return FirstOrderOp(self.b1, self.c0)

    def __repr__(self):
        bits = []
        for i in range(3):
            for j in range(i, 3):
                c = self.a2[i][j]
                if not c.is_zero:
                    bits.append(f"({c})*d{VARS[i]}d{VARS[j]}")
        for i in range(3):
            if not self.b1[i].is_zero:
                bits.append(f"({self.b1[i]})*d{VARS[i]}")
        if not self.c0.is_zero:
            bits.append(f"({self.c0})")
        return " + ".join(bits) if bits else "0"


def apply_first(T: FirstOrderOp, f) -> ExpPolynomial:
    f = _as_exp(f)
    out = T.eta * f
    for i in range(3):
        if not T.xi[i].is_zero:
            out = out + T.xi[i] * f.diff(i)
    return out


def apply_second(H: SecondOrderOp, f) -> ExpPolynomial:
    """Symmetric a2 counted once per unordered pair with multiplicity 2
    off-diagonal (i.e. the full ordered sum over i, j)."""
    f = _as_exp(f)
    out = H.c0 * f
    firsts = [f.diff(i) for i in range(3)]
    for i in range(3):
        if not H.b1[i].is_zero:
            out = out + H.b1[i] * firsts[i]
    for i in range(3):
        for j in range(i, 3):
            c = H.a2[i][j]
            if c.is_zero:
                continue
            mult = 1 if i == j else 2
            out = out + c * firsts[i].diff(j) * mult
    return out


def compose(T1: FirstOrderOp, T2: FirstOrderOp) -> SecondOrderOp:
    """T1 after T2 as an element of the universal enveloping algebra.

    The second-order table is stored symmetrized, so a2[i][j] carries
    (xi1_i xi2_j + xi1_j xi2_i)/2.
    """
    a2 = [[E_ZERO] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            a2[i][j] = T1.xi[i] * T2.xi[j]
    b1 = []
    for j in range(3):
        # first-order coefficient of d_j: xi1 . grad(xi2_j) + eta1 xi2_j + xi1_j eta2...
        # expanding T1(T2 f): xi1_i d_i(xi2_j) d_j f + eta1 xi2_j d_j f + xi1_j eta2 d_j f
        term = T1.eta * T2.xi[j] + T1.xi[j] * T2.eta
        for i in range(3):
            term = term + T1.xi[i] * T2.xi[j].diff(i)
        b1.append(term)
    c0 = T1.eta * T2.eta
    for i in range(3):
        c0 = c0 + T1.xi[i] * T2.eta.diff(i)
    return SecondOrderOp(a2, tuple(b1), c0)


def lie_bracket(T1: FirstOrderOp, T2: FirstOrderOp) -> FirstOrderOp:
    """[T1, T2] = [v1, v2] + v1(eta2) - v2(eta1), computed as the commutator of
    compositions; raises InternalInconsistency if a second-order part survives."""
    d = compose(T1, T2) - compose(T2, T1)
    if any(not c.is_zero for row in d.a2 for c in row):
        raise InternalInconsistency("commutator retained a second-order part")
    return FirstOrderOp(d.b1, d.c0)
