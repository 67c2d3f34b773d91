# -*- coding: utf-8 -*-
#
from .nodes import Binary, Chain, Constant, Expression, ExprNode, Unary, Variable
from .parser import MAX_NESTING, MAX_TREE_DEPTH, evaluate, parse, to_source

__all__ = [
    'parse',
    'evaluate',
    'to_source',
    'Expression',
    'ExprNode',
    'Constant',
    'Variable',
    'Unary',
    'Binary',
    'Chain',
    'MAX_NESTING',
    'MAX_TREE_DEPTH',
]
