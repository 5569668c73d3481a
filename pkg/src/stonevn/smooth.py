"""A finitely generated fragment of C-infinity(R^n, R).

Expressions are immutable trees built from variables ``x1..xn``, rational
constants, ``+ - *``, negation, the primitives ``exp sin cos atan`` and an
explicit composition node.  There is no division, so every expression is a
total smooth function; floating-point overflow is reported as
:class:`~stonevn.errors.DomainError`.
"""

import ast
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractError, DomainError, ParseError

PRIMITIVES = {
    "exp": math.exp,
    "sin": math.sin,
    "cos": math.cos,
    "atan": math.atan,
}


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Node):
    index: int  # 1-based


@dataclass(frozen=True)
class Const(Node):
    value: Fraction


@dataclass(frozen=True)
class Neg(Node):
    arg: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # one of "+", "-", "*"
    left: Node
    right: Node


@dataclass(frozen=True)
class Prim(Node):
    name: str
    arg: Node


@dataclass(frozen=True)
class Compose(Node):
    head: "SmoothExpr"
    args: tuple


@dataclass(frozen=True)
class SmoothExpr:
    root: Node
    arity: int

    def __post_init__(self):
        validate(self)

    def __call__(self, *point):
        return evaluate(self, point)

    def __str__(self):
        return to_text(self)


def _max_var(node):
    if isinstance(node, Var):
        return node.index
    if isinstance(node, Const):
        return 0
    if isinstance(node, (Neg, Prim)):
        return _max_var(node.arg)
    if isinstance(node, BinOp):
        return max(_max_var(node.left), _max_var(node.right))
    if isinstance(node, Compose):
        return max((_max_var(a) for a in node.args), default=0)
    raise ContractError(f"unknown node {node!r}")


def _check_node(node, arity):
    if isinstance(node, Var):
        if not 1 <= node.index <= arity:
            raise ContractError(f"variable x{node.index} exceeds arity {arity}")
    elif isinstance(node, Const):
        if not isinstance(node.value, Fraction):
            raise ContractError(f"constant must be a Fraction, got {node.value!r}")
    elif isinstance(node, (Neg, Prim)):
        if isinstance(node, Prim) and node.name not in PRIMITIVES:
            raise ContractError(f"unknown primitive {node.name!r}")
        _check_node(node.arg, arity)
    elif isinstance(node, BinOp):
        if node.op not in ("+", "-", "*"):
            raise ContractError(f"operator {node.op!r} not in the grammar")
        _check_node(node.left, arity)
        _check_node(node.right, arity)
    elif isinstance(node, Compose):
        if not isinstance(node.head, SmoothExpr):
            raise ContractError("composition head must be a SmoothExpr")
        if len(node.args) != node.head.arity:
            raise ContractError(
                f"head has arity {node.head.arity} but {len(node.args)} "
                "inner expressions were supplied")
        for a in node.args:
            _check_node(a, arity)
    else:
        raise ContractError(f"unknown node {node!r}")


def validate(expr):
    """Raise ContractError unless ``expr`` satisfies the tree invariants."""
    if not isinstance(expr.arity, int) or expr.arity < 1:
        raise ContractError(f"arity must be a positive integer, got {expr.arity!r}")
    _check_node(expr.root, expr.arity)


def depth(expr_or_node):
    node = expr_or_node.root if isinstance(expr_or_node, SmoothExpr) else expr_or_node
    if isinstance(node, (Var, Const)):
        return 0
    if isinstance(node, (Neg, Prim)):
        return 1 + depth(node.arg)
    if isinstance(node, BinOp):
        return 1 + max(depth(node.left), depth(node.right))
    # Compose
    return 1 + max([depth(node.head.root)] + [depth(a) for a in node.args])


def _finite(x):
    if not math.isfinite(x):
        raise DomainError(f"evaluation left the finite reals ({x!r})")
    return x


def _eval(node, point):
    if isinstance(node, Var):
        return point[node.index - 1]
    if isinstance(node, Const):
        return float(node.value)
    if isinstance(node, Neg):
        return -_eval(node.arg, point)
    if isinstance(node, BinOp):
        a = _eval(node.left, point)
        b = _eval(node.right, point)
        if node.op == "+":
            return _finite(a + b)
        if node.op == "-":
            return _finite(a - b)
        return _finite(a * b)
    if isinstance(node, Prim):
        x = _eval(node.arg, point)
        try:
            return _finite(PRIMITIVES[node.name](x))
        except OverflowError:
            raise DomainError(f"{node.name}({x!r}) overflows") from None
    # Compose
    inner = tuple(_eval(a, point) for a in node.args)
    return _eval(node.head.root, inner)


def evaluate(f, point):
    """Value of ``f`` at ``point``; ``len(point)`` must equal ``f.arity``."""
    if len(point) != f.arity:
        raise ContractError(f"arity mismatch: expression has arity {f.arity}, "
                            f"point has {len(point)} coordinates")
    return _eval(f.root, tuple(float(p) for p in point))


def compose(h, gs):
    """The expression ``h o (g1, ..., gn)``; all ``gs`` share one arity."""
    gs = tuple(gs)
    if len(gs) != h.arity:
        raise ContractError(f"compose: head arity {h.arity}, got {len(gs)} arguments")
    if not gs:
        raise ContractError("compose needs at least one inner expression")
    m = gs[0].arity
    if any(g.arity != m for g in gs):
        raise ContractError("compose: inner expressions differ in arity")
    return SmoothExpr(Compose(h, tuple(g.root for g in gs)), m)


def projection(n, k):
    if not 1 <= k <= n:
        raise ContractError(f"projection index {k} outside 1..{n}")
    return SmoothExpr(Var(k), n)


def var(k, arity=None):
    return SmoothExpr(Var(k), arity or k)


def const(value, arity=1):
    return SmoothExpr(Const(Fraction(value)), arity)


# --- random generation -----------------------------------------------------

def _random_const(rng):
    return Const(Fraction(rng.randint(-4, 4), rng.randint(1, 4)))


def _random_node(rng, arity, d):
    if d == 0 or rng.random() < 0.15:
        if rng.random() < 0.75:
            return Var(rng.randint(1, arity))
        return _random_const(rng)
    kind = rng.random()
    if kind < 0.45:
        return BinOp(rng.choice("+-*"), _random_node(rng, arity, d - 1),
                     _random_node(rng, arity, d - 1))
    if kind < 0.75:
        return Prim(rng.choice(sorted(PRIMITIVES)), _random_node(rng, arity, d - 1))
    if kind < 0.82:
        return Neg(_random_node(rng, arity, d - 1))
    n = rng.randint(1, 3)
    head = SmoothExpr(_random_node(rng, n, d - 1), n)
    return Compose(head, tuple(_random_node(rng, arity, d - 1) for _ in range(n)))


def random_expr(arity, depth, seed):
    """Random well-formed expression of the given arity and depth <= ``depth``.

    ``seed`` is an int (fresh generator) or a :class:`random.Random`.
    """
    if depth < 0:
        raise ContractError("depth must be >= 0")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return SmoothExpr(_random_node(rng, arity, depth), arity)


# --- text syntax -------------------------------------------------------------

_BINOPS = {ast.Add: "+", ast.Sub: "-", ast.Mult: "*"}


def _numeric(node):
    if isinstance(node, ast.Constant) and type(node.value) in (int, float):
        return Fraction(repr(node.value)) if isinstance(node.value, float) \
            else Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _numeric(node.operand)
        if v is not None:
            return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
        a, b = _numeric(node.left), _numeric(node.right)
        if a is not None and b is not None and b != 0:
            return a / b
    return None


def _convert(node):
    def err(msg):
        return ParseError(msg, getattr(node, "lineno", None),
                          getattr(node, "col_offset", -1) + 1)

    value = _numeric(node)
    if value is not None:
        return Const(value)
    if isinstance(node, ast.Name):
        name = node.id
        if name.startswith("x") and name[1:].isdigit() and int(name[1:]) >= 1:
            return Var(int(name[1:]))
        raise err(f"unknown name {name!r}")
    if isinstance(node, ast.UnaryOp):
        if isinstance(node.op, ast.USub):
            return Neg(_convert(node.operand))
        if isinstance(node.op, ast.UAdd):
            return _convert(node.operand)
    if isinstance(node, ast.BinOp):
        if type(node.op) in _BINOPS:
            return BinOp(_BINOPS[type(node.op)], _convert(node.left), _convert(node.right))
        if isinstance(node.op, ast.Pow):
            exponent = _numeric(node.right)
            if exponent is None or exponent.denominator != 1 or exponent < 1:
                raise err("only positive integer constant exponents are allowed")
            base = _convert(node.left)
            out = base
            for _ in range(int(exponent) - 1):
                out = BinOp("*", out, base)
            return out
        if isinstance(node.op, ast.Div):
            raise err("division is only allowed between numeric constants")
    if isinstance(node, ast.Call):
        if isinstance(node.func, ast.Name) and node.func.id in PRIMITIVES \
                and len(node.args) == 1 and not node.keywords:
            return Prim(node.func.id, _convert(node.args[0]))
        raise err("only exp/sin/cos/atan with one argument may be called")
    raise err(f"unsupported syntax {type(node).__name__}")


def parse(text, arity=None):
    """Parse infix text such as ``"sin(x1) + x2*x2"``.

    Arity defaults to the largest variable index used (at least 1).
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"syntax error: {exc.msg}", exc.lineno, exc.offset) from None
    root = _convert(tree.body)
    used = _max_var(root)
    if arity is None:
        arity = max(used, 1)
    elif used > arity:
        raise ParseError(f"variable x{used} exceeds declared arity {arity}")
    return SmoothExpr(root, arity)


def _fmt_const(v):
    if v.denominator == 1:
        return str(v.numerator) if v >= 0 else f"({v.numerator})"
    return f"({v.numerator}/{v.denominator})"


def _text(node, subst):
    if isinstance(node, Var):
        return subst[node.index - 1] if subst else f"x{node.index}"
    if isinstance(node, Const):
        return _fmt_const(node.value)
    if isinstance(node, Neg):
        return f"(-{_text(node.arg, subst)})"
    if isinstance(node, BinOp):
        return f"({_text(node.left, subst)} {node.op} {_text(node.right, subst)})"
    if isinstance(node, Prim):
        return f"{node.name}({_text(node.arg, subst)})"
    inner = [_text(a, subst) for a in node.args]
    return _text(node.head.root, inner)


def to_text(expr):
    """Parseable text; composition nodes are printed by substitution."""
    return _text(expr.root, None)
