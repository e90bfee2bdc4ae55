"""Machine-readable catalog of the classified quasi-exactly solvable Lie
algebras: instantiation of presentations, quantized cocycles and fixed modules
from the templates shipped in data/catalog.json."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import InvalidParameters, UnknownEntry
from .exprs import evaluate_function, evaluate_operator, evaluate_predicate, evaluate_scalar
from .liecheck import Cocycle, LieAlgebraPresentation, MonomialModule
from .operators import FirstOrderOp
from .poly import ExpPolynomial, Polynomial

_MAX_EXPONENT = 64


def _load_raw():
    with resources.files("qes3d.data").joinpath("catalog.json").open("r") as fh:
        return json.load(fh)


_RAW = None


def catalog_raw():
    global _RAW
    if _RAW is None:
        _RAW = _load_raw()
    return _RAW


def list_entries():
    return [CatalogEntry(e) for e in catalog_raw()["entries"]]


def get_entry(entry_id) -> "CatalogEntry":
    for e in catalog_raw()["entries"]:
        if e["id"] == entry_id:
            return CatalogEntry(e)
    raise UnknownEntry(f"no catalog entry {entry_id!r}")


def _parse_rational(v):
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise InvalidParameters(f"cannot parse rational from {v!r}")


@dataclass
class InstantiatedEntry:
    entry_id: str
    params: dict
    presentation: LieAlgebraPresentation
    cocycle: Cocycle
    module: MonomialModule
    labels: dict  # label -> basis index

    def as_triple(self):
        return self.presentation, self.cocycle, self.module


class CatalogEntry:
    def __init__(self, raw):
        self.raw = raw

    @property
    def id(self):
        return self.raw["id"]

    @property
    def quantized_constants(self):
        return list(self.raw.get("quantized", []))

    @property
    def verify_settings(self):
        return [dict(s) for s in self.raw.get("verify_settings", [])]

    @property
    def default_params(self):
        return {p["name"]: p.get("default") for p in self.raw.get("params", [])}

    # -- parameters ---------------------------------------------------
    def resolve_params(self, params=None):
        given = dict(params or {})
        out = {}
        for spec in self.raw.get("params", []):
            name = spec["name"]
            kind = spec["kind"]
            val = given.pop(name, spec.get("default"))
            if val is None:
                if kind in ("gsets", "zfun"):
                    out[name] = None
                    continue
                raise InvalidParameters(f"{self.id}: parameter {name!r} is required")
            out[name] = self._parse_param(name, kind, spec, val)
        if given:
            raise InvalidParameters(f"{self.id}: unknown parameters {sorted(given)}")
        self._check_constraints(out)
        return out

    def _parse_param(self, name, kind, spec, val):
        try:
            if kind == "int":
                iv = int(val)
                if iv != Fraction(val):
                    raise ValueError
                lo = spec.get("min")
                if lo is not None and iv < lo:
                    raise InvalidParameters(
                        f"{self.id}: parameter {name} = {iv} violates {name} >= {lo}"
                    )
                return iv
            if kind == "rational":
                return _parse_rational(val)
            if kind == "ints":
                return [int(v) for v in val]
            if kind == "rationals":
                return [_parse_rational(v) for v in val]
            if kind == "exprs":
                return [str(v) for v in val]
            if kind == "zfun":
                return str(val)
            if kind == "gsets":
                return [[str(g) for g in level] for level in val]
        except InvalidParameters:
            raise
        except (ValueError, TypeError) as exc:
            raise InvalidParameters(f"{self.id}: bad value for {name!r}: {val!r}") from exc
        raise InvalidParameters(f"{self.id}: unknown parameter kind {kind!r}")

    def _check_constraints(self, env):
        for c in self.raw.get("constraints", []):
            if "forall" in c:
                f = c["forall"]
                lo = int(evaluate_scalar(f["from"], env))
                hi = int(evaluate_scalar(f["to"], env))
                for v in range(lo, hi + 1):
                    sub = dict(env)
                    sub[f["index"]] = v
                    if not evaluate_predicate(c["expr"], sub):
                        raise InvalidParameters(
                            f"{self.id}: {c.get('message', c['expr'])} (violated at {f['index']}={v})"
                        )
            else:
                if not evaluate_predicate(c["expr"], env):
                    raise InvalidParameters(f"{self.id}: {c.get('message', c['expr'])}")

    # -- generators ---------------------------------------------------
    def _flatten_generators(self, env):
        """Yields (label_or_None, FirstOrderOp vector field)."""
        out = []
        for item in self.raw["generators"]:
            if isinstance(item, str):
                item = {"expr": item}
            if "family" in item:
                fam = item["family"]
                lo = int(evaluate_scalar(fam["from"], env))
                hi = int(evaluate_scalar(fam["to"], env))
                for v in range(lo, hi + 1):
                    sub = dict(env)
                    sub[fam["index"]] = v
                    if "inner" in item:
                        inner = item["inner"]
                        ilo = int(evaluate_scalar(inner["from"], sub))
                        ihi = int(evaluate_scalar(inner["to"], sub))
                        for w in range(ilo, ihi + 1):
                            sub2 = dict(sub)
                            sub2[inner["index"]] = w
                            out.append((None, evaluate_operator(item["expr"], sub2)))
                    else:
                        out.append((None, evaluate_operator(item["expr"], sub)))
            else:
                out.append((item.get("label"), evaluate_operator(item["expr"], env)))
        return out

    def _cocycle_values(self, mapping, labels, env):
        values = {}
        for label, expr in mapping.items():
            if label not in labels:
                raise InvalidParameters(f"{self.id}: cocycle refers to unknown label {label!r}")
            val = evaluate_function(expr, env)
            values[labels[label]] = val
        return Cocycle(values)

    # -- module -------------------------------------------------------
    def _module(self, env):
        spec = self.raw["module"]
        kind = spec["kind"]
        if kind == "zero":
            return MonomialModule([], descriptor={"kind": "zero"})
        ineqs = spec["inequalities"]

        def feasible(i, j, k):
            sub = dict(env)
            sub.update({"i": i, "j": j, "k": k})
            try:
                return all(evaluate_predicate(q, sub) for q in ineqs)
            except InvalidParameters:
                return False

        basis = []
        if kind == "monomial":
            for i, j, k in _enumerate_downward(feasible):
                basis.append(ExpPolynomial.from_polynomial(Polynomial.monomial((i, j, k))))
        elif kind == "gsets":
            gsets = env.get(spec["gparam"])
            levels = {}
            for i, j, _k in _enumerate_downward(lambda a, b, c: c == 0 and feasible(a, b, 0)):
                lev = int(evaluate_scalar(spec["level"], {**env, "i": i, "j": j, "k": 0}))
                levels.setdefault(lev, []).append((i, j))
            for lev, pairs in sorted(levels.items()):
                if gsets is not None:
                    if lev >= len(gsets):
                        raise InvalidParameters(
                            f"{self.id}: gset chain too short for level {lev}"
                        )
                    funcs = [evaluate_function(g, env) for g in gsets[lev]]
                else:
                    top = int(evaluate_scalar(spec["default_chain"], {**env, "level": lev}))
                    funcs = [
                        ExpPolynomial.from_polynomial(Polynomial.monomial((0, 0, d)))
                        for d in range(0, max(top, -1) + 1)
                    ]
                for (i, j) in sorted(pairs):
                    mono = ExpPolynomial.from_polynomial(Polynomial.monomial((i, j, 0)))
                    for g in funcs:
                        basis.append(mono * g)
        elif kind == "zexp":
            rates = env[spec["rates"]]
            zdeg = env[spec["zdegrees"]]
            pairs = [(i, j) for i, j, _ in _enumerate_downward(lambda a, b, c: c == 0 and feasible(a, b, 0))]
            for (i, j) in sorted(pairs):
                for rate, md in zip(rates, zdeg):
                    for k in range(md + 1):
                        mono = Polynomial.monomial((i, j, k))
                        basis.append(ExpPolynomial({Fraction(rate): mono}))
        else:
            raise InvalidParameters(f"{self.id}: unknown module kind {kind!r}")
        if not basis:
            raise InvalidParameters(f"{self.id}: module instantiated empty")
        return MonomialModule(basis, descriptor={"kind": kind, "inequalities": list(ineqs)})

    # -- instantiation --------------------------------------------------
    def instantiate(self, params=None, perturb=None) -> InstantiatedEntry:
        """Build (presentation, cocycle, module) at the given parameters.

        perturb names a quantized constant; the cocycle (only) is then built
        with that constant shifted by +1, which must break module invariance.
        """
        env = self.resolve_params(params)
        gens = self._flatten_generators(env)
        labels = {lab: i for i, (lab, _) in enumerate(gens) if lab}
        use_free = self.raw.get("free_cocycle") is not None and any(
            p["kind"] == "zfun" and env.get(p["name"]) is not None
            for p in self.raw.get("params", [])
        )
        cocycle_map = dict(self.raw["free_cocycle"] if use_free else self.raw.get("cocycle", {}))
        cenv = dict(env)
        if perturb is not None:
            if use_free:
                raise InvalidParameters(f"{self.id}: cannot perturb a free cocycle slot")
            if perturb not in self.quantized_constants:
                raise InvalidParameters(f"{self.id}: {perturb!r} is not a quantized constant")
            cenv[perturb] = cenv[perturb] + 1
        F = self._cocycle_values(cocycle_map, labels, cenv)
        ops = []
        for idx, (_lab, v) in enumerate(gens):
            eta = F.value(idx)
            ops.append(FirstOrderOp(v.xi, eta) if not eta.is_zero else v)
        pres = LieAlgebraPresentation(ops, includes_constants=True)
        module = self._module(env)
        return InstantiatedEntry(
            entry_id=self.id,
            params=env,
            presentation=pres,
            cocycle=F,
            module=module,
            labels=labels,
        )

    def free_cocycle_instance(self, params=None, extra=None):
        """Instantiate with the unquantized cocycle representative; extra maps
        free-slot names (e.g. a function of z) to expression strings."""
        if not self.raw.get("free_cocycle"):
            raise InvalidParameters(f"{self.id}: no free cocycle representative")
        env = self.resolve_params(params)
        env.update(extra or {})
        gens = self._flatten_generators(env)
        labels = {lab: i for i, (lab, _) in enumerate(gens) if lab}
        F = self._cocycle_values(self.raw["free_cocycle"], labels, env)
        ops = []
        for idx, (_lab, v) in enumerate(gens):
            eta = F.value(idx)
            ops.append(FirstOrderOp(v.xi, eta) if not eta.is_zero else v)
        pres = LieAlgebraPresentation(ops, includes_constants=True)
        return pres, F, labels


def _enumerate_downward(feasible):
    """Enumerate the downward-closed set of exponent triples defined by a
    monotone feasibility predicate."""
    out = []
    i = 0
    while feasible(i, 0, 0):
        j = 0
        while feasible(i, j, 0):
            k = 0
            while feasible(i, j, k):
                out.append((i, j, k))
                k += 1
                if k > _MAX_EXPONENT:
                    raise InvalidParameters("module descriptor unbounded in k")
            j += 1
            if j > _MAX_EXPONENT:
                raise InvalidParameters("module descriptor unbounded in j")
        i += 1
        if i > _MAX_EXPONENT:
            raise InvalidParameters("module descriptor unbounded in i")
    return out


def instantiate_catalog_entry(entry_id, params=None):
    """Public entry point: returns (LieAlgebraPresentation, Cocycle, MonomialModule)."""
    return get_entry(entry_id).instantiate(params).as_triple()
