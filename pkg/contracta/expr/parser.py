# -*- coding: utf-8 -*-
#
"""
Recursive-descent parser for the expression language.

Grammar (EBNF):

    expression = term , { ( "+" | "-" ) , term } ;
    term       = factor , { ( "*" | "/" ) , factor } ;
    factor     = "-" , factor | power ;
    power      = primary , [ "^" , factor ] ;
    primary    = number | constant | variable
               | unary_fn , "(" , expression , ")"
               | binary_fn , "(" , expression , "," , expression , ")"
               | "(" , expression , ")" ;
    unary_fn   = "abs" | "sin" | "cos" | "exp" | "ln" | "sqrt" ;
    binary_fn  = "min" | "max" ;
    constant   = "pi" | "e" ;
    number     = digits , [ "." , [ digits ] ] , [ exponent ] | "." , digits , [ exponent ] ;
    exponent   = ( "e" | "E" ) , [ "+" | "-" ] , digits ;

"^" is right-associative and binds tighter than unary minus, so -2^2 is -4
and 2^3^2 is 512. A run of three or more operands of "+" "-" or of "*" "/" becomes
one Chain node, so a long sum or product adds a single level of tree depth.
"""
import math
import re
from typing import List, Optional, Sequence, Tuple

from contracta.errors import ExpressionSyntaxError, UsageError

from .nodes import (
    BINARY_FUNCTIONS,
    NAMED_CONSTANTS,
    RESERVED_NAMES,
    UNARY_FUNCTIONS,
    Binary,
    Chain,
    Constant,
    Expression,
    ExprNode,
    Unary,
    Variable,
)

# Limits keep every accepted input inside Python's default recursion limit.
MAX_TREE_DEPTH = 64
MAX_NESTING = MAX_TREE_DEPTH + 32

NUMBER = 'number'
IDENT = 'ident'
OP = 'op'
LPAREN = '('
RPAREN = ')'
COMMA = ','
END = 'end'

_token_re = re.compile(
    r"""
    (?P<ws>\s+)
    |(?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
    |(?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    |(?P<op>[-+*/^])
    |(?P<lparen>\()
    |(?P<rparen>\))
    |(?P<comma>,)
    """,
    re.VERBOSE,
)
_identifier_re = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

Token = Tuple[str, str, int]


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    length = len(source)
    while pos < length:
        m = _token_re.match(source, pos)
        if m is None:
            raise ExpressionSyntaxError("Unexpected character {!r}".format(source[pos]), pos, source)
        kind = m.lastgroup
        text = m.group(kind)
        if kind == 'number':
            tokens.append((NUMBER, text, pos))
        elif kind == 'ident':
            tokens.append((IDENT, text, pos))
        elif kind == 'op':
            tokens.append((OP, text, pos))
        elif kind == 'lparen':
            tokens.append((LPAREN, text, pos))
        elif kind == 'rparen':
            tokens.append((RPAREN, text, pos))
        elif kind == 'comma':
            tokens.append((COMMA, text, pos))
        pos = m.end()
    tokens.append((END, '', length))
    return tokens


def check_signature(signature: Sequence[str]) -> Tuple[str, ...]:
    sig = tuple(signature)
    if len(set(sig)) != len(sig):
        raise UsageError("Expression signature has duplicate variable names: {}".format(", ".join(sig)))
    for name in sig:
        if not isinstance(name, str) or not _identifier_re.match(name):
            raise UsageError("Invalid variable name {!r} in expression signature.".format(name))
        if name in RESERVED_NAMES:
            raise UsageError("Variable name {!r} is reserved for a function or constant.".format(name))
    return sig


class Parser(object):
    __slots__ = ('source', 'signature', 'tokens', 'index', 'nesting')

    def __init__(self, source: str, signature: Sequence[str]):
        self.source = source
        self.signature = check_signature(signature)
        self.tokens = tokenize(source)
        self.index = 0
        self.nesting = 0

    def error(self, message: str, position: Optional[int] = None) -> ExpressionSyntaxError:
        if position is None:
            position = self.peek()[2]
        return ExpressionSyntaxError(message, position, self.source)

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok[0] != kind:
            found = "end of input" if tok[0] == END else repr(tok[1])
            raise self.error("Expected {}, found {}".format(what, found))
        return self.advance()

    def enter(self, position: int):
        self.nesting += 1
        if self.nesting > MAX_NESTING:
            raise self.error("Expression nests too deeply", position)

    def leave(self):
        self.nesting -= 1

    def build(self, node: ExprNode, position: int) -> ExprNode:
        if node.depth > MAX_TREE_DEPTH:
            raise self.error("Expression tree is deeper than {} levels".format(MAX_TREE_DEPTH), position)
        return node

    def parse(self) -> Expression:
        if len(self.source.strip()) < 1:
            raise ExpressionSyntaxError("Expression source is empty", 0, self.source)
        root = self.parse_expression()
        tok = self.peek()
        if tok[0] != END:
            raise self.error("Unexpected {!r} after complete expression".format(tok[1]))
        return Expression(root, self.signature, self.source)

    def chain(self, first: ExprNode, rest: List[Tuple[str, ExprNode]], position: int) -> ExprNode:
        if not rest:
            return first
        if len(rest) == 1:
            op, right = rest[0]
            return self.build(Binary(op, first, right), position)
        return self.build(Chain(first, tuple(rest)), position)

    def parse_expression(self) -> ExprNode:
        first = self.parse_term()
        position = self.peek()[2]
        rest: List[Tuple[str, ExprNode]] = []
        tok = self.peek()
        while tok[0] == OP and tok[1] in ('+', '-'):
            self.advance()
            rest.append((tok[1], self.parse_term()))
            tok = self.peek()
        return self.chain(first, rest, position)

    def parse_term(self) -> ExprNode:
        first = self.parse_factor()
        position = self.peek()[2]
        rest: List[Tuple[str, ExprNode]] = []
        tok = self.peek()
        while tok[0] == OP and tok[1] in ('*', '/'):
            self.advance()
            rest.append((tok[1], self.parse_factor()))
            tok = self.peek()
        return self.chain(first, rest, position)

    def parse_factor(self) -> ExprNode:
        tok = self.peek()
        if tok[0] == OP and tok[1] == '-':
            self.advance()
            self.enter(tok[2])
            try:
                operand = self.parse_factor()
            finally:
                self.leave()
            return self.build(Unary('neg', operand), tok[2])
        return self.parse_power()

    def parse_power(self) -> ExprNode:
        base = self.parse_primary()
        tok = self.peek()
        if tok[0] == OP and tok[1] == '^':
            self.advance()
            self.enter(tok[2])
            try:
                exponent = self.parse_factor()
            finally:
                self.leave()
            return self.build(Binary('^', base, exponent), tok[2])
        return base

    def parse_parenthesized(self, open_pos: int) -> ExprNode:
        self.enter(open_pos)
        try:
            return self.parse_expression()
        finally:
            self.leave()

    def parse_primary(self) -> ExprNode:
        tok = self.peek()
        kind, text, pos = tok
        if kind == NUMBER:
            self.advance()
            value = float(text)
            if not math.isfinite(value):
                raise self.error("Numeric literal {} is out of range".format(text), pos)
            return Constant(value)
        if kind == LPAREN:
            self.advance()
            node = self.parse_parenthesized(pos)
            self.expect(RPAREN, "')'")
            return node
        if kind == IDENT:
            self.advance()
            if text in UNARY_FUNCTIONS or text in BINARY_FUNCTIONS:
                return self.parse_call(text, pos)
            if text in NAMED_CONSTANTS:
                return Constant(NAMED_CONSTANTS[text], name=text)
            if text in self.signature:
                return Variable(text, self.signature.index(text))
            raise self.error(
                "Unknown variable {!r}; declared variables are ({})".format(text, ", ".join(self.signature)), pos
            )
        if kind == END:
            raise self.error("Unexpected end of input")
        raise self.error("Unexpected {!r}".format(text))

    def parse_call(self, name: str, pos: int) -> ExprNode:
        if self.peek()[0] != LPAREN:
            raise self.error("Function {!r} must be called with parentheses".format(name))
        open_pos = self.advance()[2]
        args = [self.parse_parenthesized(open_pos)]
        while self.peek()[0] == COMMA:
            self.advance()
            args.append(self.parse_parenthesized(open_pos))
        self.expect(RPAREN, "')'")
        arity = 1 if name in UNARY_FUNCTIONS else 2
        if len(args) != arity:
            raise self.error(
                "Function {!r} expects {} argument{}, got {}".format(
                    name, arity, "" if arity == 1 else "s", len(args)
                ),
                pos,
            )
        if arity == 1:
            return self.build(Unary(name, args[0]), pos)
        return self.build(Binary(name, args[0], args[1]), pos)


def parse(source: str, signature: Sequence[str]) -> Expression:
    """
    :param source: expression text, e.g. "0.5*s - t"
    :type source: str
    :param signature: ordered variable names, e.g. ("t", "s")
    :type signature: Sequence[str]
    :return: the parsed expression
    :rtype: Expression
    :raises ExpressionSyntaxError: on any syntax error, unknown name or arity mismatch
    """
    if not isinstance(source, str):
        raise UsageError("Expression source must be a string, got {}.".format(type(source).__name__))
    return Parser(source, signature).parse()


def evaluate(ast: Expression, values: Sequence[float]) -> float:
    return ast.evaluate(tuple(float(v) for v in values))


def to_source(ast: Expression) -> str:
    return ast.to_source()
