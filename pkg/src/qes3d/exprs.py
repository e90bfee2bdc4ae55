"""Tiny expression language for catalog operator templates, module
inequalities and validity constraints.

Expressions combine integers, rationals (a/b), parameter names, list
parameters (name[idx]), binom(n, k), len(name), the coordinates x, y, z, the
derivations p, q, r (rightmost factor of a product), and exp(<rate>*z) with a
rational rate.  Evaluation produces a FirstOrderOp; pure-function expressions
reduce to its eta part, and scalar contexts demand a constant.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import InvalidParameters
from .operators import FirstOrderOp
from .poly import E_ZERO, ExpPolynomial, Polynomial

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()\[\],]))"
)

_DERIV = {"p": 0, "q": 1, "r": 2}
_COORD = {"x": Polynomial.variable("x"), "y": Polynomial.variable("y"), "z": Polynomial.variable("z")}


def tokenize(s):
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            if s[pos:].strip():
                raise ValueError(f"cannot tokenize {s[pos:]!r} in {s!r}")
            break
        pos = m.end()
        if m.group("num"):
            out.append(("num", int(m.group("num"))))
        elif m.group("name"):
            out.append(("name", m.group("name")))
        else:
            op = m.group("op")
            out.append(("op", "^" if op == "**" else op))
    return out


class _Fn:
    """Pure-function value: an ExpPolynomial."""

    __slots__ = ("val",)

    def __init__(self, val):
        self.val = val


class _Op:
    """Operator value: coefficient attached to one derivation symbol."""

    __slots__ = ("op",)

    def __init__(self, op):
        self.op = op


def _as_op(v):
    if isinstance(v, _Op):
        return v.op
    return FirstOrderOp(eta=v.val)


def _add(a, b):
    if isinstance(a, _Fn) and isinstance(b, _Fn):
        return _Fn(a.val + b.val)
    return _Op(_as_op(a) + _as_op(b))


def _neg(a):
    if isinstance(a, _Fn):
        return _Fn(-a.val)
    return _Op(-a.op)


def _mul(a, b):
    if isinstance(a, _Op):
        raise ValueError("derivation symbols must be the rightmost factor of a product")
    if isinstance(b, _Fn):
        return _Fn(a.val * b.val)
    return _Op(FirstOrderOp(tuple(a.val * c for c in b.op.xi), a.val * b.op.eta))


def _div(a, b):
    if isinstance(a, _Op) or isinstance(b, _Op):
        raise ValueError("cannot divide operators")
    if not b.val.is_constant:
        raise ValueError("division only by constants")
    c = b.val.constant_value()
    if not c:
        raise ZeroDivisionError("division by zero in expression")
    return _Fn(a.val * (1 / c))


def _pow(a, b):
    if isinstance(a, _Op) or isinstance(b, _Op):
        raise ValueError("cannot exponentiate operators")
    if not b.val.is_constant:
        raise ValueError("exponent must be constant")
    n = b.val.constant_value()
    if n.denominator != 1:
        raise ValueError(f"exponent must be an integer, got {n}")
    n = int(n)
    base = a.val
    if n >= 0:
        return _Fn(base**n)
    # negative exponent: only a single coordinate monomial may be Laurent
    if base.is_polynomial:
        pb = base.as_polynomial()
        if len(pb.terms) == 1:
            (e, c), = pb.terms.items()
            if c == 1:
                return _Fn(
                    ExpPolynomial.from_polynomial(
                        Polynomial({tuple(v * n for v in e): Fraction(1)})
                    )
                )
    raise ValueError(f"negative power of a non-monomial base: {base}")


class _Parser:
    def __init__(self, tokens, env):
        self.toks = tokens
        self.i = 0
        self.env = env

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", None)

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        t = self.next()
        if t != ("op", op):
            raise ValueError(f"expected {op!r}, got {t}")

    def parse(self):
        v = self.expr()
        if self.peek() != ("end", None):
            raise ValueError(f"trailing tokens: {self.toks[self.i:]}")
        return v

    def expr(self):
        kind, val = self.peek()
        neg = False
        if (kind, val) == ("op", "-"):
            self.next()
            neg = True
        elif (kind, val) == ("op", "+"):
            self.next()
        v = self.term()
        if neg:
            v = _neg(v)
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.next()
            rhs = self.term()
            v = _add(v, rhs if op == "+" else _neg(rhs))
        return v

    def term(self):
        v = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.next()
            rhs = self.power()
            v = _mul(v, rhs) if op == "*" else _div(v, rhs)
        return v

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.next()
            e = self.atom()
            v = _pow(v, e)
        return v

    def atom(self):
        kind, val = self.next()
        if (kind, val) == ("op", "-"):
            return _neg(self.atom())
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.expect(")")
            return v
        if kind == "num":
            return _Fn(ExpPolynomial.constant(val))
        if kind == "name":
            return self.name_atom(val)
        raise ValueError(f"unexpected token {(kind, val)}")

    def name_atom(self, name):
        if name == "binom":
            self.expect("(")
            a = _scalar_int(self.expr(), "binom argument")
            self.expect(",")
            b = _scalar_int(self.expr(), "binom argument")
            self.expect(")")
            v = math.comb(a, b) if 0 <= b <= a else 0
            return _Fn(ExpPolynomial.constant(v))
        if name == "len":
            self.expect("(")
            t = self.next()
            if t[0] != "name" or t[1] not in self.env or not isinstance(self.env[t[1]], list):
                raise ValueError("len() takes a list parameter name")
            self.expect(")")
            return _Fn(ExpPolynomial.constant(len(self.env[t[1]])))
        if name == "exp":
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            rate = _exp_rate(arg)
            return _Fn(ExpPolynomial.exp_term(rate))
        if name in _DERIV:
            xi = [E_ZERO, E_ZERO, E_ZERO]
            xi[_DERIV[name]] = ExpPolynomial.constant(1)
            return _Op(FirstOrderOp(tuple(xi)))
        if name in _COORD:
            return _Fn(ExpPolynomial.from_polynomial(_COORD[name]))
        if name in self.env:
            v = self.env[name]
            if isinstance(v, list):
                self.expect("[")
                idx = _scalar_int(self.expr(), f"index into {name}")
                self.expect("]")
                if not 0 <= idx < len(v):
                    raise InvalidParameters(f"index {idx} out of range for {name}")
                v = v[idx]
            return _lift(v, self.env)
        raise ValueError(f"unknown name {name!r} (params: {sorted(self.env)})")


def _lift(v, env):
    if isinstance(v, str):
        return _Fn(evaluate_function(v, env))
    if isinstance(v, (int, Fraction)):
        return _Fn(ExpPolynomial.constant(v))
    if isinstance(v, ExpPolynomial):
        return _Fn(v)
    if isinstance(v, Polynomial):
        return _Fn(ExpPolynomial.from_polynomial(v))
    raise ValueError(f"cannot use parameter value {v!r} in an expression")


def _scalar_int(v, what):
    if isinstance(v, _Op) or not v.val.is_constant:
        raise ValueError(f"{what} must be a constant")
    c = v.val.constant_value()
    if c.denominator != 1:
        raise ValueError(f"{what} must be an integer, got {c}")
    return int(c)


def _exp_rate(v):
    """The argument of exp() must be (rational)*z."""
    if isinstance(v, _Op):
        raise ValueError("exp() of an operator")
    f = v.val
    if f.is_zero:
        return Fraction(0)
    if not f.is_polynomial:
        raise ValueError("nested exponentials are not supported")
    pz = f.as_polynomial()
    rate = pz.coefficient((0, 0, 1))
    if pz != Polynomial({(0, 0, 1): rate}):
        raise ValueError(f"exp() argument must be a rational multiple of z, got {pz}")
    return rate


def evaluate_operator(expr, env) -> FirstOrderOp:
    v = _Parser(tokenize(expr), env).parse()
    return _as_op(v)


def evaluate_function(expr, env) -> ExpPolynomial:
    v = _Parser(tokenize(expr), env).parse()
    if isinstance(v, _Op):
        raise ValueError(f"expected a function, got an operator: {expr}")
    return v.val


def evaluate_scalar(expr, env) -> Fraction:
    f = evaluate_function(str(expr), env)
    if not f.is_constant:
        raise ValueError(f"expected a scalar: {expr}")
    return f.constant_value()


_CMP = re.compile(r"(.*?)(<=|>=|==|!=|<|>)(.*)")


def evaluate_predicate(expr, env) -> bool:
    m = _CMP.fullmatch(expr.strip())
    if not m:
        raise ValueError(f"not a comparison: {expr!r}")
    lhs = evaluate_scalar(m.group(1), env)
    rhs = evaluate_scalar(m.group(3), env)
    op = m.group(2)
    return {
        "<=": lhs <= rhs,
        ">=": lhs >= rhs,
        "==": lhs == rhs,
        "!=": lhs != rhs,
        "<": lhs < rhs,
        ">": lhs > rhs,
    }[op]
