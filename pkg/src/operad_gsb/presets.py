"""Built-in presentations and the relation-file parser.

The dendriform presentation has two binary operations ``prec`` and
``succ``; its three relations say that the left action is associative
over the sum of both products, the right action over itself, and the two
actions commute.  The quadri presentation has four binary operations
``a``, ``b``, ``c``, ``d`` (south-east, north-east, north-west,
south-west) with the nine compatibility relations tying them to the two
dendriform structures ``prec = c + d``, ``succ = a + b`` and
``wedge = b + c``, ``vee = a + d``.

Relation-file grammar (UTF-8, line oriented, ``#`` comments)::

    ops: <name>[/<arity>] ...
    order: <name> < <name> < ...      # optional; the CLI may override
    rel: <polynomial text>            # repeatable
"""

from __future__ import annotations

from dataclasses import dataclass

from .ordering import OperationOrder
from .polynomials import TreePolynomial, parse_polynomial
from .trees import (
    LEAF,
    OperationSymbol,
    Signature,
    TreeError,
    TreeMonomial,
    node,
)

__all__ = [
    "Presentation",
    "PresentationError",
    "dendriform",
    "quadri",
    "parse_presentation",
]


class PresentationError(TreeError):
    """Invalid presentation input (file syntax, zero relation, arity)."""


@dataclass(frozen=True)
class Presentation:
    """A signature with multilinear defining relations."""

    signature: Signature
    relations: tuple[TreePolynomial, ...]
    name: str
    preferred_order: OperationOrder | None = None

    def __post_init__(self) -> None:
        for i, rel in enumerate(self.relations):
            if rel.is_zero:
                raise PresentationError(f"relation {i + 1} is zero")
            if rel.arity < 3:
                raise PresentationError(
                    f"relation {i + 1} has arity {rel.arity}; expected >= 3"
                )


def left_comb(x: OperationSymbol, y: OperationSymbol) -> TreeMonomial:
    """(u y v) x w: root ``x`` whose left child is a ``y`` vertex."""
    return node(x, node(y, LEAF, LEAF), LEAF)


def right_comb(x: OperationSymbol, y: OperationSymbol) -> TreeMonomial:
    """u x (v y w): root ``x`` whose right child is a ``y`` vertex."""
    return node(x, LEAF, node(y, LEAF, LEAF))


def _combination(*signed: tuple[int, TreeMonomial]) -> TreePolynomial:
    terms: dict[TreeMonomial, int] = {}
    for coeff, mono in signed:
        terms[mono] = terms.get(mono, 0) + coeff
    return TreePolynomial(terms)


def dendriform() -> Presentation:
    """Two operations, three arity-3 relations."""
    prec = OperationSymbol("prec")
    succ = OperationSymbol("succ")
    relations = (
        # (x succ y) prec z = x succ (y prec z)
        _combination((1, left_comb(prec, succ)), (-1, right_comb(succ, prec))),
        # (x prec y) prec z = x prec (y prec z) + x prec (y succ z)
        _combination(
            (1, left_comb(prec, prec)),
            (-1, right_comb(prec, prec)),
            (-1, right_comb(prec, succ)),
        ),
        # x succ (y succ z) = (x prec y) succ z + (x succ y) succ z
        _combination(
            (1, right_comb(succ, succ)),
            (-1, left_comb(succ, succ)),
            (-1, left_comb(succ, prec)),
        ),
    )
    return Presentation(Signature((prec, succ)), relations, "dendriform")


def quadri() -> Presentation:
    """Four operations, nine arity-3 relations."""
    a = OperationSymbol("a")  # south-east
    b = OperationSymbol("b")  # north-east
    c = OperationSymbol("c")  # north-west
    d = OperationSymbol("d")  # south-west
    L, R = left_comb, right_comb
    relations = (
        # (x c y) c z = x c (y * z)
        _combination(
            (1, L(c, c)), (-1, R(c, a)), (-1, R(c, b)), (-1, R(c, c)), (-1, R(c, d))
        ),
        # (x d y) c z = x d (y wedge z)
        _combination((1, L(c, d)), (-1, R(d, b)), (-1, R(d, c))),
        # (x prec y) d z = x d (y vee z)
        _combination(
            (1, L(d, d)), (1, L(d, c)), (-1, R(d, a)), (-1, R(d, d))
        ),
        # (x b y) c z = x b (y prec z)
        _combination((1, L(c, b)), (-1, R(b, c)), (-1, R(b, d))),
        # (x a y) c z = x a (y c z)
        _combination((1, L(c, a)), (-1, R(a, c))),
        # (x succ y) d z = x a (y d z)
        _combination((1, L(d, a)), (1, L(d, b)), (-1, R(a, d))),
        # (x wedge y) b z = x b (y succ z)
        _combination(
            (1, L(b, b)), (1, L(b, c)), (-1, R(b, b)), (-1, R(b, a))
        ),
        # (x vee y) b z = x a (y b z)
        _combination((1, L(b, a)), (1, L(b, d)), (-1, R(a, b))),
        # (x * y) a z = x a (y a z)
        _combination(
            (1, L(a, a)), (1, L(a, b)), (1, L(a, c)), (1, L(a, d)), (-1, R(a, a))
        ),
    )
    return Presentation(Signature((a, b, c, d)), relations, "quadri")


def parse_presentation(text: str, name: str = "user") -> Presentation:
    """Parse the line-oriented relation-file grammar into a presentation."""
    symbols: list[OperationSymbol] = []
    rel_lines: list[tuple[int, str]] = []
    order_line: tuple[int, str] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("ops", "order", "rel"):
            raise PresentationError(
                f"line {lineno}: expected 'ops:', 'order:' or 'rel:', got {line!r}"
            )
        if key == "ops":
            for chunk in rest.split():
                opname, slash, ar = chunk.partition("/")
                try:
                    arity = int(ar) if slash else 2
                    symbols.append(OperationSymbol(opname, arity))
                except (ValueError, TreeError) as exc:
                    raise PresentationError(f"line {lineno}: {exc}") from exc
        elif key == "order":
            if order_line is not None:
                raise PresentationError(f"line {lineno}: duplicate order line")
            order_line = (lineno, rest.strip())
        else:
            rel_lines.append((lineno, rest.strip()))
    if not symbols:
        raise PresentationError("no 'ops:' line")
    try:
        sig = Signature(tuple(symbols))
    except TreeError as exc:
        raise PresentationError(str(exc)) from exc
    relations = []
    for lineno, rel_text in rel_lines:
        try:
            rel = parse_polynomial(rel_text, sig)
        except TreeError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from exc
        if rel.is_zero:
            raise PresentationError(f"line {lineno}: relation is zero")
        relations.append(rel)
    if not relations:
        raise PresentationError("no 'rel:' lines")
    preferred = None
    if order_line is not None:
        lineno, order_text = order_line
        try:
            preferred = OperationOrder.from_string(order_text, sig)
        except TreeError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from exc
    return Presentation(sig, tuple(relations), name, preferred)
