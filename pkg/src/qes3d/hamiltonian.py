"""Quadratic combinations of first-order operators, contravariant metric
extraction, and the Laplace-Beltrami + vector field + potential split."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateMetric, DimensionMismatch
from .operators import FirstOrderOp, SecondOrderOp, compose
from .poly import E_ZERO, ExpPolynomial, Polynomial, RationalFunction

VARS = ("x", "y", "z")


class Convention(enum.Enum):
    """Whether the stored quadratic combination is H itself or the -2H side of
    a Schrodinger-form presentation."""

    OPERATOR_IS_H = "H"
    OPERATOR_IS_MINUS_TWO_H = "minus_two_H"


@dataclass
class CoefficientSpec:
    quad: list  # m x m Fractions (C_ab)
    lin: list  # m Fractions (C_a)
    const0: Fraction
    convention: Convention = Convention.OPERATOR_IS_MINUS_TWO_H
    entry: str = None
    params: dict = None

    def __post_init__(self):
        self.quad = [[Fraction(v) for v in row] for row in self.quad]
        self.lin = [Fraction(v) for v in self.lin]
        self.const0 = Fraction(self.const0)
        m = len(self.quad)
        if any(len(row) != m for row in self.quad) or len(self.lin) != m:
            raise DimensionMismatch("coefficient spec is not square")

    @property
    def dim(self):
        return len(self.lin)

    def __add__(self, other):
        if self.dim != other.dim or self.convention is not other.convention:
            raise DimensionMismatch("cannot add mismatched coefficient specs")
        return CoefficientSpec(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.quad, other.quad)],
            [a + b for a, b in zip(self.lin, other.lin)],
            self.const0 + other.const0,
            self.convention,
        )


@dataclass
class HamiltonianForm:
    op: SecondOrderOp
    spec: CoefficientSpec
    basis_id: str = None


def build_quadratic_form(basis, spec: CoefficientSpec, basis_id=None) -> HamiltonianForm:
    """op = sum_ab C_ab T^a T^b + sum_a C_a T^a + C_0, term by term."""
    ops = list(basis)
    m = len(ops)
    if spec.dim != m:
        raise DimensionMismatch(f"spec is {spec.dim}-dimensional, basis has {m} operators")
    total = SecondOrderOp()
    for a in range(m):
        for b in range(m):
            c = spec.quad[a][b]
            if c:
                total = total + compose(ops[a], ops[b]).scale(c)
    b1 = list(total.b1)
    c0 = total.c0
    for a in range(m):
        c = spec.lin[a]
        if c:
            b1 = [bi + ops[a].xi[i] * c for i, bi in enumerate(b1)]
            c0 = c0 + ops[a].eta * c
    c0 = c0 + ExpPolynomial.constant(spec.const0)
    op = SecondOrderOp([[total.a2[i][j] for j in range(3)] for i in range(3)], tuple(b1), c0)
    return HamiltonianForm(op=op, spec=spec, basis_id=basis_id)


def extract_metric(H: HamiltonianForm):
    """Contravariant g^(ij) as a symmetric 3x3 ExpPolynomial table.

    On the -2H side the metric is the symmetrized second-order coefficient
    table itself; on the H side it is -2 times that table.
    """
    sign = 1 if H.spec.convention is Convention.OPERATOR_IS_MINUS_TWO_H else -2
    return [[H.op.a2[i][j] * sign for j in range(3)] for i in range(3)]


def minus_two_h_side(H: HamiltonianForm) -> SecondOrderOp:
    if H.spec.convention is Convention.OPERATOR_IS_MINUS_TWO_H:
        return H.op
    return H.op.scale(-2)


def _metric_polys(g):
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            e = g[i][j]
            row.append(e.as_polynomial() if isinstance(e, ExpPolynomial) else e)
        rows.append(row)
    return rows


def det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def laplace_beltrami_first_order(g, gdet):
    """First-order coefficients of the Laplace-Beltrami operator written as
    g^ij d_ij + [d_i(g^ij) - g^ij d_i(gdet)/(2 gdet)] d_j, as RationalFunctions."""
    out = []
    for j in range(3):
        term = RationalFunction.from_constant(0)
        for i in range(3):
            gij = RationalFunction(g[i][j])
            term = term + RationalFunction(g[i][j].diff(i)) - gij * RationalFunction(
                gdet.diff(i), gdet * 2
            )
        out.append(term)
    return out


def laplace_decompose(g, H: HamiltonianForm):
    """Split the -2H side of H as Delta_g + V + U.

    Returns (V, U): V a triple of RationalFunction first-order coefficients and
    U the zeroth-order RationalFunction, so that the reassembly
    Delta + V + U equals the -2H side exactly.
    """
    gp = _metric_polys(g)
    gdet = det3(gp)
    if gdet.is_zero:
        raise DegenerateMetric("contravariant metric has zero determinant")
    q = minus_two_h_side(H)
    lb = laplace_beltrami_first_order(gp, gdet)
    V = []
    for j in range(3):
        bj = RationalFunction(q.b1[j].as_polynomial())
        V.append(bj - lb[j])
    U = RationalFunction(q.c0.as_polynomial())
    return tuple(V), U
