"""Expression parsing, evaluation, rendering and JSON documents."""

from .documents import MalformedDocument, dumps, load, loads, save
from .evaluate import ContextViolation, evaluate, evaluate_text
from .parser import ExprSyntaxError, UnknownSymbol, parse_expr, render_ast
