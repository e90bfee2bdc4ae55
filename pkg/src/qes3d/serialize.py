"""Canonical JSON serialization (schema qes/1): polynomials as exact
decimal-free rational strings, operators, coefficient specs and modules."""

from __future__ import annotations

from fractions import Fraction

from .hamiltonian import CoefficientSpec, Convention
from .operators import FirstOrderOp, SecondOrderOp
from .poly import ExpPolynomial, Polynomial, RationalFunction

SCHEMA = "qes/1"


def frac_str(c) -> str:
    c = Fraction(c)
    return str(c)


def poly_to_json(p):
    """List of {exponents, rate, coeff} entries sorted by (rate, graded-lex)."""
    if isinstance(p, Polynomial):
        p = ExpPolynomial.from_polynomial(p)
    out = []
    for rate, layer in p.sorted_layers():
        for e, c in layer.sorted_terms():
            out.append({"exponents": list(e), "rate": frac_str(rate), "coeff": frac_str(c)})
    return out


def poly_from_json(items) -> ExpPolynomial:
    layers = {}
    for it in items:
        rate = Fraction(it.get("rate", "0"))
        e = tuple(int(v) for v in it["exponents"])
        c = Fraction(it["coeff"])
        layers.setdefault(rate, {})
        layers[rate][e] = layers[rate].get(e, Fraction(0)) + c
    return ExpPolynomial({r: Polynomial(t) for r, t in layers.items()})


def ratfunc_to_json(r: RationalFunction):
    return {"num": poly_to_json(r.num), "den": poly_to_json(r.den)}


def ratfunc_from_json(d) -> RationalFunction:
    num = poly_from_json(d["num"]).as_polynomial()
    den = poly_from_json(d["den"]).as_polynomial()
    return RationalFunction(num, den)


def first_order_to_json(T: FirstOrderOp):
    return {
        "schema": SCHEMA,
        "xi": [poly_to_json(c) for c in T.xi],
        "eta": poly_to_json(T.eta),
    }


def first_order_from_json(d) -> FirstOrderOp:
    return FirstOrderOp(
        tuple(poly_from_json(c) for c in d["xi"]), poly_from_json(d["eta"])
    )


def second_order_to_json(H: SecondOrderOp):
    return {
        "schema": SCHEMA,
        "a2": [[poly_to_json(H.a2[i][j]) for j in range(3)] for i in range(3)],
        "b1": [poly_to_json(c) for c in H.b1],
        "c0": poly_to_json(H.c0),
    }


def second_order_from_json(d) -> SecondOrderOp:
    return SecondOrderOp(
        [[poly_from_json(d["a2"][i][j]) for j in range(3)] for i in range(3)],
        tuple(poly_from_json(c) for c in d["b1"]),
        poly_from_json(d["c0"]),
    )


def spec_to_json(s: CoefficientSpec):
    return {
        "schema": SCHEMA,
        "entry": s.entry,
        "params": {k: frac_str(v) if isinstance(v, (int, Fraction)) else v
                   for k, v in (s.params or {}).items()},
        "convention": s.convention.value,
        "C_ab": [[frac_str(v) for v in row] for row in s.quad],
        "C_a": [frac_str(v) for v in s.lin],
        "C_0": frac_str(s.const0),
    }


def spec_from_json(d) -> CoefficientSpec:
    return CoefficientSpec(
        [[Fraction(v) for v in row] for row in d["C_ab"]],
        [Fraction(v) for v in d["C_a"]],
        Fraction(d["C_0"]),
        Convention(d["convention"]),
        entry=d.get("entry"),
        params=d.get("params"),
    )


def module_to_json(N):
    return {"schema": SCHEMA, "basis": [poly_to_json(f) for f in N.basis]}
