"""Divisor occurrences and normal-form reduction of tree polynomials.

A rewrite rule is a monic polynomial oriented by its leading monomial:
``lead + tail`` with every tail monomial strictly smaller, read as the
replacement ``lead -> -tail``.  Reducing a polynomial replaces an
embedded copy of a lead with the embedded lower terms; because the order
is compatible with grafting this strictly descends, so reduction
terminates (a configurable step limit guards against bugs only).

Reduction is deterministic.  The redex used on a monomial is pinned
(first occurrence vertex in preorder, then first rule in list order), so
the normal form of a polynomial is the coefficient-weighted sum of its
monomials' normal forms and does not depend on which reducible monomial
is processed first; completion counts and traces reproduce bit-for-bit
across runs.  Traced reductions additionally follow the
greatest-monomial-first schedule step by step.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .ordering import OperationOrder
from .polynomials import TreePolynomial, add, scale
from .trees import (
    OperationSymbol,
    TreeError,
    TreeMonomial,
    graft,
    internal_vertices,
    replace_at,
    subtree_at,
)

__all__ = [
    "Occurrence",
    "RewriteRule",
    "ReductionError",
    "find_occurrences",
    "match_at",
    "has_occurrence",
    "context_with_hole",
    "fill_hole",
    "apply_rule_at",
    "normal_form",
    "is_normal_monomial",
    "Reducer",
]

DEFAULT_STEP_LIMIT = 10**6


class ReductionError(TreeError):
    """Stale occurrence, mis-oriented rule, or exceeded step limit."""


@dataclass(frozen=True)
class Occurrence:
    """An embedding of a pattern into an ambient monomial.

    ``vertex`` addresses the pattern's root in the ambient tree and
    ``bindings`` lists, per pattern leaf, the ambient subtree it captures.
    Reassembly invariant: grafting the bindings into the pattern and
    substituting at ``vertex`` reproduces the ambient monomial.
    """

    vertex: tuple[int, ...]
    bindings: tuple[TreeMonomial, ...]


def match_at(
    ambient: TreeMonomial, vertex: Sequence[int], pattern: TreeMonomial
) -> Occurrence | None:
    """Try to match ``pattern`` with its root at ``vertex``."""
    try:
        sub = subtree_at(ambient, vertex)
    except TreeError:
        return None
    bindings = _match(sub, pattern)
    if bindings is None:
        return None
    return Occurrence(tuple(vertex), tuple(bindings))


def _match(ambient: TreeMonomial, pattern: TreeMonomial) -> list[TreeMonomial] | None:
    if pattern.is_leaf:
        return [ambient]
    if ambient.is_leaf or ambient.label != pattern.label:
        return None
    bindings: list[TreeMonomial] = []
    for a_child, p_child in zip(ambient.children, pattern.children):
        sub = _match(a_child, p_child)
        if sub is None:
            return None
        bindings.extend(sub)
    return bindings


def find_occurrences(ambient: TreeMonomial, pattern: TreeMonomial) -> list[Occurrence]:
    """All occurrences of ``pattern`` in ``ambient``, in preorder of vertex.

    The pattern must have at least one internal vertex; a bare leaf would
    match everywhere and is rejected.
    """
    if pattern.is_leaf:
        raise TreeError("leaf pattern would occur at every vertex")
    out = []
    for vertex in internal_vertices(ambient):
        occ = match_at(ambient, vertex, pattern)
        if occ is not None:
            out.append(occ)
    return out


def has_occurrence(ambient: TreeMonomial, pattern: TreeMonomial) -> bool:
    if pattern.is_leaf:
        raise TreeError("leaf pattern would occur at every vertex")
    for vertex in internal_vertices(ambient):
        if match_at(ambient, vertex, pattern) is not None:
            return True
    return False


def is_normal_monomial(t: TreeMonomial, leads: Iterable[TreeMonomial]) -> bool:
    """True iff no lead occurs anywhere in ``t``."""
    return not any(has_occurrence(t, lead) for lead in leads)


_HOLES: dict[int, OperationSymbol] = {}


def _hole_symbol(arity: int) -> OperationSymbol:
    if arity not in _HOLES:
        _HOLES[arity] = OperationSymbol(f"hole{arity}", arity)
    return _HOLES[arity]


def context_with_hole(
    ambient: TreeMonomial, occ: Occurrence, pattern_arity: int
) -> TreeMonomial:
    """Collapse the matched region to a hole vertex holding the bindings."""
    if len(occ.bindings) != pattern_arity:
        raise TreeError("occurrence bindings do not fit the pattern arity")
    hole = TreeMonomial(_hole_symbol(pattern_arity), occ.bindings)
    return replace_at(ambient, occ.vertex, hole)


def fill_hole(context: TreeMonomial, pattern: TreeMonomial) -> TreeMonomial:
    """Expand the unique hole vertex by grafting its children into ``pattern``."""
    sym = _hole_symbol(pattern.arity)
    for vertex in internal_vertices(context):
        if subtree_at(context, vertex).label == sym:
            filled = graft(pattern, subtree_at(context, vertex).children)
            return replace_at(context, vertex, filled)
    raise TreeError(f"context has no hole of arity {pattern.arity}")


@dataclass(frozen=True)
class RewriteRule:
    """A monic oriented polynomial ``lead + tail`` read as ``lead -> -tail``."""

    lead: TreeMonomial
    tail: TreePolynomial

    def __post_init__(self) -> None:
        if self.lead.is_leaf:
            raise TreeError("a rule lead must have an internal vertex")
        if self.tail.arity != self.lead.arity:
            raise TreeError("lead and tail arities differ")
        if self.lead in self.tail.terms:
            raise TreeError("lead appears in the rule tail")

    @classmethod
    def from_polynomial(cls, p: TreePolynomial, ord: OperationOrder) -> "RewriteRule":
        """Orient a nonzero polynomial: make it monic and split off the lead."""
        monic = p.make_monic(ord)
        lead, _ = monic.leading_term(ord)
        tail = monic - TreePolynomial.monomial(lead)
        return cls(lead, tail)

    @property
    def polynomial(self) -> TreePolynomial:
        return add(TreePolynomial.monomial(self.lead), self.tail)

    @property
    def arity(self) -> int:
        return self.lead.arity


def embed_polynomial_at(
    ambient: TreeMonomial, occ: Occurrence, p: TreePolynomial
) -> TreePolynomial:
    """Embed each monomial of ``p`` into ``ambient`` through an occurrence."""
    terms: dict[TreeMonomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        image = replace_at(ambient, occ.vertex, graft(mono, occ.bindings))
        terms[image] = terms.get(image, 0) + coeff
    return TreePolynomial(terms, ambient.arity)


def apply_rule_at(
    p: TreePolynomial, m: TreeMonomial, rule: RewriteRule, occ: Occurrence
) -> TreePolynomial:
    """One elementary reduction: eliminate ``m`` through ``rule`` at ``occ``.

    Returns ``p - coeff(m) * (embedding of the rule's polynomial)``; the
    embedded lead is ``m`` itself, so ``m`` drops out and only strictly
    smaller monomials enter.
    """
    coeff = p.terms.get(m)
    if coeff is None:
        raise ReductionError("monomial is not in the polynomial's support")
    if graft(rule.lead, occ.bindings) != subtree_at(m, occ.vertex):
        raise ReductionError("stale occurrence: reassembly check failed")
    return add(p, scale(embed_polynomial_at(m, occ, rule.polynomial), -coeff))


class Reducer:
    """Normal-form computation against a fixed rule list.

    Caches, per monomial, the first redex under the deterministic
    strategy (first occurrence vertex in preorder, then first rule);
    completion reuses one reducer per iteration snapshot, so redex
    lookups are shared across all the S-polynomials of an iteration.
    """

    def __init__(
        self,
        rules: Sequence[RewriteRule],
        ord: OperationOrder,
        step_limit: int = DEFAULT_STEP_LIMIT,
    ):
        self.rules = tuple(rules)
        self.ord = ord
        self.step_limit = step_limit
        self._first_redex: dict[TreeMonomial, tuple | None] = {}

    def first_redex(self, m: TreeMonomial) -> tuple | None:
        """Smallest (vertex, rule index, occurrence) triple in ``m``, if any."""
        if m in self._first_redex:
            return self._first_redex[m]
        best = None
        for vertex in internal_vertices(m):
            for idx, rule in enumerate(self.rules):
                occ = match_at(m, vertex, rule.lead)
                if occ is not None:
                    best = (vertex, idx, occ)
                    break
            if best is not None:
                break
        self._first_redex[m] = best
        return best

    def all_redexes(self, m: TreeMonomial) -> list[tuple]:
        out = []
        for vertex in internal_vertices(m):
            for idx, rule in enumerate(self.rules):
                occ = match_at(m, vertex, rule.lead)
                if occ is not None:
                    out.append((vertex, idx, occ))
        return out

    def _reduce_inplace(self, p: TreePolynomial) -> TreePolynomial:
        """Worklist reduction on a mutable term map.

        The redex applied to a monomial depends only on the monomial, so
        the final normal form is the same whatever order reducible
        monomials are processed in; skipping the greatest-first scan
        keeps a rewrite step at cost proportional to the rule tail.
        """
        terms = dict(p.terms)
        queue = list(terms)
        steps = 0
        while queue:
            m = queue.pop()
            coeff = terms.get(m)
            if not coeff:
                continue
            redex = self.first_redex(m)
            if redex is None:
                continue
            _, idx, occ = redex
            steps += 1
            if steps > self.step_limit:
                raise ReductionError(
                    f"reduction exceeded step limit of {self.step_limit}"
                )
            del terms[m]
            for t, c in self.rules[idx].tail.terms.items():
                image = replace_at(m, occ.vertex, graft(t, occ.bindings))
                new = terms.get(image, 0) - coeff * c
                if new:
                    terms[image] = new
                    queue.append(image)
                else:
                    terms.pop(image, None)
        return TreePolynomial(terms, p.arity)

    def reduce(
        self,
        p: TreePolynomial,
        rng: random.Random | None = None,
        trace: list | None = None,
    ) -> TreePolynomial:
        """Fully reduce ``p``; with ``rng`` use a randomized strategy instead.

        Tracing forces the documented greatest-monomial-first schedule so
        the emitted steps match the specification of the strategy; the
        untraced deterministic path uses the order-insensitive worklist.
        """
        if rng is None and trace is None:
            return self._reduce_inplace(p)
        key = self.ord.monomial_key
        steps = 0
        while True:
            if rng is None:
                chosen = None
                for m in sorted(p.terms, key=key, reverse=True):
                    redex = self.first_redex(m)
                    if redex is not None:
                        chosen = (m, *redex)
                        break
            else:
                reducible = [m for m in p.support() if self.first_redex(m)]
                if reducible:
                    m = rng.choice(reducible)
                    chosen = (m, *rng.choice(self.all_redexes(m)))
                else:
                    chosen = None
            if chosen is None:
                return p
            m, vertex, idx, occ = chosen
            steps += 1
            if steps > self.step_limit:
                raise ReductionError(
                    f"reduction exceeded step limit of {self.step_limit}"
                )
            if trace is not None:
                trace.append((idx, vertex))
            p = apply_rule_at(p, m, self.rules[idx], occ)


def normal_form(
    p: TreePolynomial,
    rules: Sequence[RewriteRule],
    ord: OperationOrder,
    step_limit: int = DEFAULT_STEP_LIMIT,
    rng: random.Random | None = None,
    trace: list | None = None,
) -> TreePolynomial:
    """Reduce ``p`` until no monomial is divisible by any rule's lead."""
    return Reducer(rules, ord, step_limit).reduce(p, rng=rng, trace=trace)
