"""JSON spec records -> evaluators, element parsing, value serialization."""
from __future__ import annotations

import ast
import operator
from dataclasses import dataclass
from fractions import Fraction

from .core import (constant_minus_one, kummer, lexmax_demo, min_family, nadic, negated,
                   quotient_qv, squared, truncated)
from .cuts import Cut, cut_to_record
from .fields import (QuadElem, RankTwoElem, T, composite_valuation, extend_valuation, padic)
from .filters import QuadOrder, elements, filter_qv, filter_qv_extend, parse_algebra
from .ordered import INF, DivElem, LexProductElem
from .sampling import (Sampler, integers, ov_elements, quad_elements, rank_two_elements,
                       rationals)
from .valuation import DomainError, QuasiValuation


class SpecError(ValueError):
    """Malformed spec record or element text."""


@dataclass(frozen=True)
class Context:
    """Where elements live: "Q", "Z", "O_v", "Q_sqrt" (with d), "Q_t", or an algebra."""

    field: str
    d: int | None = None
    p: int | None = None
    algebra: object = None


@dataclass(frozen=True)
class Built:
    qv: QuasiValuation
    context: Context
    sampler: Sampler


def _int(rec, key):
    try:
        return int(rec[key])
    except KeyError:
        raise SpecError(f"missing field {key!r} in {rec}") from None
    except (TypeError, ValueError):
        raise SpecError(f"field {key!r} must be an integer") from None


def _frac(value) -> Fraction:
    try:
        return Fraction(str(value))
    except (TypeError, ValueError, ZeroDivisionError):
        raise SpecError(f"not a rational: {value!r}") from None


def build(rec: dict) -> Built:
    """Quasi-valuation (or valuation) from a spec record."""
    if not isinstance(rec, dict):
        raise SpecError("a spec record must be a JSON object")
    try:
        return _build(rec)
    except SpecError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise SpecError(str(exc)) from exc


def _build(rec: dict) -> Built:
    if "field" in rec and "kind" not in rec:
        return _build_field(rec)
    kind = rec.get("kind")
    if kind == "nadic":
        n = _int(rec, "n")
        return Built(nadic(n), Context("Q"), rationals(n))
    if kind == "kummer":
        p, d = _int(rec, "p"), _int(rec, "d")
        return Built(kummer(padic(p), _frac(rec.get("gamma", 0)), d), Context("Q_sqrt", d, p),
                     quad_elements(p, d))
    if kind == "squared":
        p = _int(rec, "p")
        return Built(squared(padic(p)), Context("Z", p=p), integers(p))
    if kind == "truncated":
        p = _int(rec, "p")
        return Built(truncated(padic(p), _frac(rec["alpha"])), Context("O_v", p=p), ov_elements(p))
    if kind == "lexmax":
        p = _int(rec, "p")
        return Built(lexmax_demo(p), Context("Q_sqrt", p, p), quad_elements(p, p))
    if kind == "extension":
        p, d = _int(rec, "p"), _int(rec, "d")
        us = extend_valuation(p, d)
        idx = int(rec.get("index", 1))
        if not 1 <= idx <= len(us):
            raise SpecError(f"extension index {idx} outside 1..{len(us)}")
        return Built(us[idx - 1], Context("Q_sqrt", d, p), quad_elements(p, d))
    if kind == "min_extensions":
        p, d = _int(rec, "p"), _int(rec, "d")
        return Built(min_family(extend_valuation(p, d)), Context("Q_sqrt", d, p),
                     quad_elements(p, d))
    if kind == "min":
        parts = [build(r) for r in rec.get("of", [])]
        if not parts:
            raise SpecError("min over an empty family")
        return Built(min_family([b.qv for b in parts]), parts[0].context, parts[0].sampler)
    if kind == "negated":
        inner = build(rec["of"])
        return Built(negated(inner.qv), inner.context, inner.sampler)
    if kind == "trivial":
        return Built(constant_minus_one(), Context("Z", p=2), integers(2))
    if kind == "quotient_qv":
        inner = build(rec["of"])
        return Built(quotient_qv(inner.qv, _int(rec, "h_level")), inner.context, inner.sampler)
    if kind == "filter":
        alg = rec.get("algebra", rec)
        if alg is rec:
            alg = {**rec, "kind": rec.get("shape")}
        R = parse_algebra(alg)
        if isinstance(R, QuadOrder):
            # evaluation on the whole field through W, which agrees with w on R
            return Built(filter_qv_extend(R), Context("Q_sqrt", R.d, R.p, R),
                         quad_elements(R.p, R.d))
        field = "Q_t" if R.rank == 2 else "O_v"
        return Built(filter_qv(R), Context(field, p=R.p, algebra=R), elements(R))
    raise SpecError(f"unknown quasi-valuation kind {kind!r}")


def _build_field(rec: dict) -> Built:
    field = rec["field"]
    p = _int(rec, "p")
    if field == "Q":
        return Built(padic(p), Context("Q", p=p), rationals(p))
    if field == "Q_sqrt":
        d = _int(rec, "d")
        us = extend_valuation(p, d)
        return Built(us[int(rec.get("index", 1)) - 1], Context("Q_sqrt", d, p), quad_elements(p, d))
    if field == "Q_t":
        return Built(composite_valuation(p), Context("Q_t", p=p), rank_two_elements(p))
    raise SpecError(f"unknown field {field!r}")


# ---- element text -------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv}


def parse_element(text: str, ctx: Context):
    """Arithmetic over integers/rationals with the names i, s (sqrt d), t and sqrt(n).

    ``^`` is accepted as a synonym for ``**``.
    """
    try:
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    except SyntaxError:
        raise SpecError(f"cannot parse element {text!r}") from None
    try:
        value = _eval(tree.body, ctx)
    except ZeroDivisionError:
        raise SpecError(f"division by zero in {text!r}") from None
    if ctx.field == "Q_sqrt" and not isinstance(value, QuadElem):
        value = QuadElem(Fraction(value), Fraction(0), ctx.d)
    if ctx.field == "Q_t" and not isinstance(value, RankTwoElem):
        value = RankTwoElem.const(value)
    if ctx.field == "Z" and (not isinstance(value, (int, Fraction)) or Fraction(value).denominator != 1):
        raise SpecError(f"{text!r} is not an integer")
    return value


def _eval(node, ctx: Context):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value) if ctx.field != "Z" else node.value
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        a, b = _eval(node.left, ctx), _eval(node.right, ctx)
        if isinstance(node.op, ast.Div) and isinstance(a, int) and isinstance(b, int):
            return Fraction(a, b)
        return _BINOPS[type(node.op)](a, b)
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
        e = _eval(node.right, ctx)
        if Fraction(e).denominator != 1:
            raise SpecError("exponents must be integers")
        return _eval(node.left, ctx) ** int(e)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        x = _eval(node.operand, ctx)
        return -x if isinstance(node.op, ast.USub) else x
    if isinstance(node, ast.Name):
        if node.id in ("i", "s"):
            if ctx.field != "Q_sqrt" or (node.id == "i" and ctx.d != -1):
                raise SpecError(f"{node.id!r} is not an element of this field")
            return QuadElem.sqrt(ctx.d)
        if node.id == "t":
            if ctx.field != "Q_t":
                raise SpecError("'t' is only available in Q(t)")
            return T
        raise SpecError(f"unknown name {node.id!r}")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt":
        if len(node.args) != 1 or ctx.field != "Q_sqrt":
            raise SpecError("sqrt(n) needs one argument and a quadratic field")
        n = _eval(node.args[0], ctx)
        if n != ctx.d:
            raise SpecError(f"sqrt({n}) is not the generator sqrt({ctx.d})")
        return QuadElem.sqrt(ctx.d)
    raise SpecError(f"unsupported syntax: {ast.dump(node)[:60]}")


# ---- values ------------------------------------------------------------------

def value_record(val) -> dict:
    if val is INF:
        return {"kind": "infinity"}
    if isinstance(val, Cut):
        return cut_to_record(val)
    if isinstance(val, DivElem):
        return {"kind": "div", "coords": [str(c) for c in val.coords]}
    if isinstance(val, LexProductElem):
        return {"kind": "lexmax", "z": val.z, "m": str(val.m)}
    raise TypeError(f"cannot serialize {val!r}")


def value_text(val) -> str:
    if isinstance(val, Cut) and val.kind == "cut":
        g = str(val.gamma)
        if val.level == 0:
            return f"({g})+" if g.startswith("-") else f"{g}+"
        return f"CutOf({g}, H{val.level})"
    return str(val)
