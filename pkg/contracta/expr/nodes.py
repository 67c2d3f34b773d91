# -*- coding: utf-8 -*-
#
"""
Expression tree nodes for the small real-valued expression language.

Every node evaluates in IEEE double arithmetic and refuses to produce a
non-finite value: a singular operation raises ExpressionEvaluationError
naming the node where it happened.
"""
import abc
import math
import operator
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

from contracta.errors import ExpressionEvaluationError, UsageError


def _power(base: float, exponent: float) -> float:
    if base < 0 and not float(exponent).is_integer():
        raise ValueError("negative base with a non-integer exponent")
    return math.pow(base, exponent)


UNARY_FUNCTIONS: Dict[str, Callable[[float], float]] = {
    'neg': operator.neg,
    'abs': abs,
    'sin': math.sin,
    'cos': math.cos,
    'exp': math.exp,
    'ln': math.log,
    'sqrt': math.sqrt,
}

BINARY_OPERATORS: Dict[str, Callable[[float, float], float]] = {
    '+': operator.add,
    '-': operator.sub,
    '*': operator.mul,
    '/': operator.truediv,
    '^': _power,
}

BINARY_FUNCTIONS: Dict[str, Callable[[float, float], float]] = {
    'min': min,
    'max': max,
}

NAMED_CONSTANTS: Dict[str, float] = {
    'pi': math.pi,
    'e': math.e,
}

RESERVED_NAMES = frozenset(UNARY_FUNCTIONS) | frozenset(BINARY_FUNCTIONS) | frozenset(NAMED_CONSTANTS)


class ExprNode(object, metaclass=abc.ABCMeta):
    __slots__: Tuple = tuple()

    @property
    @abc.abstractmethod
    def depth(self) -> int:
        raise NotImplementedError()  # pragma: no cover

    @abc.abstractmethod
    def evaluate(self, values: Sequence[float]) -> float:
        raise NotImplementedError()  # pragma: no cover

    @abc.abstractmethod
    def to_source(self) -> str:
        raise NotImplementedError()  # pragma: no cover

    def _checked(self, result: float) -> float:
        if not math.isfinite(result):
            raise ExpressionEvaluationError("Expression produced a non-finite value.", node=self.to_source())
        return result

    def __str__(self):
        return self.to_source()


@dataclass(frozen=True)
class Constant(ExprNode):
    value: float
    name: Optional[str] = None

    @property
    def depth(self) -> int:
        return 1

    def evaluate(self, values: Sequence[float]) -> float:
        return self.value

    def to_source(self) -> str:
        if self.name is not None:
            return self.name
        return repr(self.value)


@dataclass(frozen=True)
class Variable(ExprNode):
    name: str
    index: int

    @property
    def depth(self) -> int:
        return 1

    def evaluate(self, values: Sequence[float]) -> float:
        return values[self.index]

    def to_source(self) -> str:
        return self.name


@dataclass(frozen=True)
class Unary(ExprNode):
    op: str
    operand: ExprNode

    @property
    def depth(self) -> int:
        return 1 + self.operand.depth

    def evaluate(self, values: Sequence[float]) -> float:
        arg = self.operand.evaluate(values)
        try:
            result = UNARY_FUNCTIONS[self.op](arg)
        except (ValueError, OverflowError, ZeroDivisionError) as e:
            raise ExpressionEvaluationError(
                "Cannot evaluate {}({!r}): {}".format(self.op, arg, str(e)), node=self.to_source()
            )
        return self._checked(result)

    def to_source(self) -> str:
        if self.op == 'neg':
            return "(-{})".format(self.operand.to_source())
        return "{}({})".format(self.op, self.operand.to_source())


@dataclass(frozen=True)
class Binary(ExprNode):
    op: str
    left: ExprNode
    right: ExprNode

    @property
    def depth(self) -> int:
        return 1 + max(self.left.depth, self.right.depth)

    def evaluate(self, values: Sequence[float]) -> float:
        a = self.left.evaluate(values)
        b = self.right.evaluate(values)
        fn = BINARY_OPERATORS.get(self.op) or BINARY_FUNCTIONS[self.op]
        try:
            result = fn(a, b)
        except (ValueError, OverflowError, ZeroDivisionError) as e:
            raise ExpressionEvaluationError(
                "Cannot evaluate {!r} {} {!r}: {}".format(a, self.op, b, str(e) or e.__class__.__name__),
                node=self.to_source(),
            )
        return self._checked(result)

    def to_source(self) -> str:
        if self.op in BINARY_FUNCTIONS:
            return "{}({}, {})".format(self.op, self.left.to_source(), self.right.to_source())
        return "({} {} {})".format(self.left.to_source(), self.op, self.right.to_source())


@dataclass(frozen=True)
class Chain(ExprNode):
    """
    A run of three or more operands joined by operators of one precedence level,
    folded left to right. Evaluates exactly like the nested Binary nodes it replaces
    but counts as a single level of depth.
    """

    first: ExprNode
    rest: Tuple[Tuple[str, ExprNode], ...]

    @property
    def depth(self) -> int:
        return 1 + max(self.first.depth, max(node.depth for _, node in self.rest))

    def evaluate(self, values: Sequence[float]) -> float:
        acc = self.first.evaluate(values)
        for i, (op, node) in enumerate(self.rest):
            b = node.evaluate(values)
            try:
                acc = BINARY_OPERATORS[op](acc, b)
            except (ValueError, OverflowError, ZeroDivisionError) as e:
                raise ExpressionEvaluationError(
                    "Cannot evaluate {!r} {} {!r}: {}".format(acc, op, b, str(e) or e.__class__.__name__),
                    node=self._prefix_source(i),
                )
            if not math.isfinite(acc):
                raise ExpressionEvaluationError("Expression produced a non-finite value.", node=self._prefix_source(i))
        return acc

    def _prefix_source(self, last: int) -> str:
        parts = [self.first.to_source()]
        for op, node in self.rest[: last + 1]:
            parts.append(op)
            parts.append(node.to_source())
        return "({})".format(" ".join(parts))

    def to_source(self) -> str:
        return self._prefix_source(len(self.rest) - 1)


class Expression(object):
    """
    A parsed expression together with its ordered variable signature.
    Immutable and safe to share between threads.
    """

    __slots__ = ('root', 'signature', 'source')

    def __init__(self, root: ExprNode, signature: Sequence[str], source: Optional[str] = None):
        self.root = root
        self.signature = tuple(signature)
        self.source = source if source is not None else root.to_source()

    def evaluate(self, values: Sequence[float]) -> float:
        if len(values) != len(self.signature):
            raise UsageError(
                "Expression over ({}) needs {} values, got {}.".format(
                    ", ".join(self.signature), len(self.signature), len(values)
                )
            )
        return self.root.evaluate(values)

    def __call__(self, *values: float) -> float:
        return self.evaluate(values)

    def to_source(self) -> str:
        return self.root.to_source()

    def __eq__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        return self.root == other.root and self.signature == other.signature

    def __hash__(self):
        return hash((self.root, self.signature))

    def __str__(self):
        return self.source

    def __repr__(self):
        return "<Expression {!r} over ({})>".format(self.source, ", ".join(self.signature))
