"""Verification machinery for Lie algebras of first-order operators: span
closure with structure constants, 1-cocycle conditions, coboundary gauging,
and finite-module invariance with exact membership tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotClosed
from .linalg import LinearSolver
from .operators import FirstOrderOp, apply_first, lie_bracket
from .poly import E_ONE, ExpPolynomial


def exp_to_vector(f: ExpPolynomial):
    """Coefficient vector of a function keyed by (rate, exponent-triple)."""
    out = {}
    for a, p in f.layers.items():
        for e, c in p.terms.items():
            out[(a, e)] = c
    return out


def op_to_vector(T: FirstOrderOp):
    """Coefficient vector of an operator keyed by (component, rate, exponents)."""
    out = {}
    for comp in range(3):
        for key, c in exp_to_vector(T.xi[comp]).items():
            out[(comp,) + key] = c
    for key, c in exp_to_vector(T.eta).items():
        out[(3,) + key] = c
    return out


class LieAlgebraPresentation:
    """Ordered operator basis, optionally together with the constant function 1
    adjoined as a multiplication operator."""

    def __init__(self, basis, includes_constants=True, check_independent=True):
        self.basis = list(basis)
        self.includes_constants = bool(includes_constants)
        if not self.basis:
            raise ValueError("empty basis")
        vectors = [op_to_vector(T) for T in self.basis]
        if self.includes_constants:
            vectors = vectors + [op_to_vector(FirstOrderOp(eta=E_ONE))]
        self._solver = LinearSolver(vectors)
        if check_independent and self._solver.rank != len(vectors):
            raise ValueError("basis operators are linearly dependent over Q")

    @property
    def dim(self):
        return len(self.basis)

    def vector_field_part(self):
        return LieAlgebraPresentation(
            [T.vector_part() for T in self.basis],
            includes_constants=False,
            check_independent=False,
        )

    def reduce(self, T: FirstOrderOp):
        """(residue_vector, coefficients over the basis, constant_part)."""
        residual, coeffs = self._solver.reduce(op_to_vector(T))
        const = Fraction(0)
        if self.includes_constants:
            const = coeffs[-1]
            coeffs = coeffs[:-1]
        return residual, coeffs, const


@dataclass
class StructureConstants:
    """c[a][b] lists the coefficients of [T^a, T^b] over the basis; const[a][b]
    holds the constant-function remainder (only nonzero when the presentation
    adjoins constants)."""

    c: list
    const: list

    def antisymmetric(self):
        n = len(self.c)
        for a in range(n):
            for b in range(n):
                if any(x + y != 0 for x, y in zip(self.c[a][b], self.c[b][a])):
                    return False
                if self.const[a][b] + self.const[b][a] != 0:
                    return False
        return True


def check_span_closure(P: LieAlgebraPresentation) -> StructureConstants:
    """Express every bracket [T^a, T^b] in the basis (modulo constants when the
    presentation adjoins them); raises NotClosed with the offending pair and
    irreducible residue otherwise."""
    n = P.dim
    c = [[None] * n for _ in range(n)]
    const = [[Fraction(0)] * n for _ in range(n)]
    zero = [Fraction(0)] * n
    for a in range(n):
        c[a][a] = list(zero)
        for b in range(a + 1, n):
            br = lie_bracket(P.basis[a], P.basis[b])
            residual, coeffs, k = P.reduce(br)
            if residual:
                raise NotClosed((a, b), residual)
            c[a][b] = coeffs
            c[b][a] = [-v for v in coeffs]
            const[a][b] = k
            const[b][a] = -k
    return StructureConstants(c=c, const=const)


class Cocycle:
    """Linear map from the vector-field basis of h to multiplication parts."""

    def __init__(self, values):
        """values: dict basis-index -> ExpPolynomial (missing indices are 0)."""
        self.values = {
            int(i): v for i, v in values.items() if isinstance(v, ExpPolynomial) and not v.is_zero
        }
        for i, v in values.items():
            if not isinstance(v, ExpPolynomial):
                raise TypeError("cocycle values must be ExpPolynomial")

    def value(self, i):
        return self.values.get(i, ExpPolynomial.zero())

    def of_combination(self, coeffs):
        out = ExpPolynomial.zero()
        for i, c in enumerate(coeffs):
            if c:
                out = out + self.value(i) * c
        return out

    def __eq__(self, other):
        if not isinstance(other, Cocycle):
            return NotImplemented
        keys = set(self.values) | set(other.values)
        return all(self.value(k) == other.value(k) for k in keys)


@dataclass
class CocycleResult:
    ok: bool
    failing_pair: tuple = None
    residue: ExpPolynomial = None


def check_cocycle(h: LieAlgebraPresentation, F: Cocycle) -> CocycleResult:
    """Bilinear identity: v_i<F;v_j> - v_j<F;v_i> - <F;[v_i,v_j]> must be a
    constant function for every pair (constants module M = {1})."""
    n = h.dim
    fields = [T.vector_part() for T in h.basis]
    for a in range(n):
        for b in range(a + 1, n):
            br = lie_bracket(fields[a], fields[b])
            residual, coeffs, _ = h.reduce(br)
            if residual:
                raise NotClosed((a, b), residual)
            r = (
                apply_first(fields[a], F.value(b))
                - apply_first(fields[b], F.value(a))
                - F.of_combination(coeffs)
            )
            if not r.is_zero and not r.is_constant:
                return CocycleResult(ok=False, failing_pair=(a, b), residue=r)
    return CocycleResult(ok=True)


def apply_coboundary(F: Cocycle, lam: ExpPolynomial, P: LieAlgebraPresentation) -> Cocycle:
    """Gauge F by the 0-coboundary of lam: <F'; v> = <F; v> - v(lam)."""
    out = {}
    for i, T in enumerate(P.basis):
        v = T.vector_part()
        val = F.value(i) - apply_first(v, lam)
        if not val.is_zero:
            out[i] = val
    return Cocycle(out)


class MonomialModule:
    """Finite explicit function space; basis functions must be exponent-clean
    (non-negative exponents) and linearly independent."""

    def __init__(self, basis, descriptor=None):
        self.basis = list(basis)
        self.descriptor = descriptor
        for f in self.basis:
            if not isinstance(f, ExpPolynomial):
                raise TypeError("module basis must be ExpPolynomial")
            for p in f.layers.values():
                if p.is_laurent():
                    raise ValueError("module basis functions must have exponents >= 0")
        self._solver = LinearSolver([exp_to_vector(f) for f in self.basis])
        if self.basis and self._solver.rank != len(self.basis):
            raise ValueError("module basis functions are linearly dependent")

    @property
    def dim(self):
        return len(self.basis)

    @property
    def is_zero_module(self):
        return not self.basis

    def reduce(self, f: ExpPolynomial):
        """(residual_vector, coefficients over the basis)."""
        return self._solver.reduce(exp_to_vector(f))

    def contains(self, f: ExpPolynomial):
        residual, _ = self.reduce(f)
        return not residual

    def coordinates(self, f: ExpPolynomial):
        residual, coeffs = self.reduce(f)
        return None if residual else coeffs

    def __repr__(self):
        if self.is_zero_module:
            return "MonomialModule(0)"
        return f"MonomialModule(dim={self.dim})"


@dataclass
class InvarianceResult:
    ok: bool
    witness: tuple = None  # (op_index, basis_function, image_residue)


def check_module_invariance(P: LieAlgebraPresentation, N: MonomialModule) -> InvarianceResult:
    """Apply every basis operator to every module basis function and test
    membership in span(N); returns the first failure as a witness."""
    if N.is_zero_module:
        return InvarianceResult(ok=True)
    for i, T in enumerate(P.basis):
        for f in N.basis:
            img = apply_first(T, f)
            residual, _ = N.reduce(img)
            if residual:
                return InvarianceResult(ok=False, witness=(i, f, img))
    return InvarianceResult(ok=True)
