"""Tiny expression language for user-defined test functions.

Grammar: numeric literals, the variable ``x``, ``+ - * /``, ``**`` (or ``^``),
unary minus, and the calls ``pow(u, v)``, ``exp(u)``, ``abs(u)``.  Parsed
expressions evaluate on numpy arrays and differentiate symbolically.
"""
import ast

import numpy as np

from .errors import DomainError


class Expr:
    __slots__ = ("op", "args")

    def __init__(self, op, *args):
        self.op = op
        self.args = args

    def __call__(self, x):
        return self.evaluate(np.asarray(x, dtype=float))

    def evaluate(self, x):
        op, a = self.op, self.args
        if op == "const":
            return np.full(np.shape(x), a[0]) if np.ndim(x) else a[0]
        if op == "x":
            return x
        if op == "neg":
            return -a[0].evaluate(x)
        if op == "exp":
            return np.exp(a[0].evaluate(x))
        if op == "abs":
            return np.abs(a[0].evaluate(x))
        if op == "sign":  # internal, from d|u|
            return np.sign(a[0].evaluate(x))
        if op == "log":  # internal, from d(u**v)
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.log(a[0].evaluate(x))
        u = a[0].evaluate(x)
        v = a[1].evaluate(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            if op == "add":
                return u + v
            if op == "sub":
                return u - v
            if op == "mul":
                return u * v
            if op == "div":
                return u / v
            return np.power(u, v)

    def diff(self):
        """Symbolic derivative with respect to ``x``."""
        op, a = self.op, self.args
        if op == "const":
            return _c(0.0)
        if op == "x":
            return _c(1.0)
        if op == "neg":
            return _neg(a[0].diff())
        if op == "exp":
            return _mul(self, a[0].diff())
        if op == "abs":
            return _mul(Expr("sign", a[0]), a[0].diff())
        if op == "sign":
            return _c(0.0)
        u, v = a
        du, dv = u.diff(), v.diff()
        if op == "add":
            return _add(du, dv)
        if op == "sub":
            return _sub(du, dv)
        if op == "mul":
            return _add(_mul(du, v), _mul(u, dv))
        if op == "div":
            return Expr("div", _sub(_mul(du, v), _mul(u, dv)), _mul(v, v))
        # pow
        if v.op == "const":
            c = v.args[0]
            return _mul(_mul(_c(c), _pow(u, _c(c - 1.0))), du)
        # d(u**v) = u**v * (v' log u + v u'/u)
        return _mul(self, _add(_mul(dv, Expr("log", u)), Expr("div", _mul(v, du), u)))

    def __repr__(self):
        op, a = self.op, self.args
        if op == "const":
            return repr(a[0])
        if op == "x":
            return "x"
        if op in ("neg",):
            return f"-({a[0]!r})"
        if op in ("exp", "abs", "sign", "log"):
            return f"{op}({a[0]!r})"
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "**"}[op]
        return f"({a[0]!r} {sym} {a[1]!r})"


def _c(v):
    return Expr("const", float(v))


def _is(e, v):
    return e.op == "const" and e.args[0] == v


def _add(u, v):
    if _is(u, 0.0):
        return v
    if _is(v, 0.0):
        return u
    return Expr("add", u, v)


def _sub(u, v):
    if _is(v, 0.0):
        return u
    if _is(u, 0.0):
        return _neg(v)
    return Expr("sub", u, v)


def _mul(u, v):
    if _is(u, 0.0) or _is(v, 0.0):
        return _c(0.0)
    if _is(u, 1.0):
        return v
    if _is(v, 1.0):
        return u
    return Expr("mul", u, v)


def _neg(u):
    if u.op == "const":
        return _c(-u.args[0])
    return Expr("neg", u)


def _pow(u, v):
    if _is(v, 1.0):
        return u
    if _is(v, 0.0):
        return _c(1.0)
    return Expr("pow", u, v)


_BINOPS = {ast.Add: "add", ast.Sub: "sub", ast.Mult: "mul", ast.Div: "div",
           ast.Pow: "pow", ast.BitXor: "pow"}


def _convert(node):
    if isinstance(node, ast.Expression):
        return _convert(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
            and not isinstance(node.value, bool):
        return _c(node.value)
    if isinstance(node, ast.Name):
        if node.id != "x":
            raise DomainError(f"unknown name {node.id!r}; only 'x' is allowed")
        return Expr("x")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _convert(node.operand)
        return _neg(inner) if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return Expr(_BINOPS[type(node.op)], _convert(node.left), _convert(node.right))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        name, args = node.func.id, [_convert(a) for a in node.args]
        if name in ("exp", "abs") and len(args) == 1:
            return Expr(name, args[0])
        if name == "pow" and len(args) == 2:
            return Expr("pow", *args)
        raise DomainError(f"unsupported call {name}() with {len(args)} argument(s)")
    raise DomainError(f"unsupported syntax: {ast.dump(node)}")


def parse(text):
    """Parse ``text`` into an :class:`Expr`."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise DomainError(f"cannot parse expression {text!r}: {exc.msg}") from None
    return _convert(tree)
