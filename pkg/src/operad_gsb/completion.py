"""Overlap enumeration, S-polynomials, and Buchberger-style completion.

A small common multiple of two leads is a minimal monomial carrying
intersecting occurrences of both; its S-polynomial is the difference of
the two rule embeddings, whose shared leading monomial cancels.  The
completion loop reduces every S-polynomial against the basis snapshot
frozen at the start of the iteration, appends the surviving normal
forms (monic, deduplicated) and repeats, pairing only against the fresh
elements from the second iteration on; the final basis is self-reduced
once after the loop terminates.

Enumeration is over ordered pairs: ``small_common_multiples(f, g)`` lists
the multiples where ``f`` embeds at or inside the root occurrence of
``g``, so each geometric overlap is produced exactly once across the two
orientations of a pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .ordering import OperationOrder
from .polynomials import TreePolynomial, format_polynomial
from .rewriting import (
    DEFAULT_STEP_LIMIT,
    Occurrence,
    Reducer,
    RewriteRule,
    embed_polynomial_at,
    match_at,
    normal_form,
)
from .trees import TreeError, TreeMonomial, format_tree, graft, internal_vertices, subtree_at

__all__ = [
    "SmallCommonMultiple",
    "CompletionConfig",
    "IterationRecord",
    "CompletionReport",
    "GSBasis",
    "GsbCheck",
    "CompositionRecord",
    "small_common_multiples",
    "s_polynomial",
    "self_reduce",
    "complete",
    "is_gsb",
]

PROPER_OVERLAP = "proper-overlap"
INCLUSION = "inclusion"


@dataclass(frozen=True)
class SmallCommonMultiple:
    """A minimal monomial with intersecting occurrences of two leads.

    ``occ_f`` embeds the first lead at or below the root; ``occ_g``
    anchors the second lead at the root.  Every internal vertex of
    ``multiple`` is covered by one of the two occurrences.
    """

    multiple: TreeMonomial
    occ_f: Occurrence
    occ_g: Occurrence
    kind: str


@dataclass(frozen=True)
class CompletionConfig:
    """Caps for a completion run; all positive."""

    max_iterations: int = 2
    max_arity: int = 12
    step_limit: int = DEFAULT_STEP_LIMIT

    def __post_init__(self) -> None:
        if min(self.max_iterations, self.max_arity, self.step_limit) < 1:
            raise TreeError("completion caps must be positive")


@dataclass(frozen=True)
class IterationRecord:
    """One completion round: how many compositions, survivors, additions."""

    compositions: int
    nonzero: int
    added: tuple[TreePolynomial, ...]

    def __post_init__(self) -> None:
        assert self.compositions >= self.nonzero >= len(self.added)


@dataclass(frozen=True)
class GSBasis:
    """An oriented rule set; ``self_reduced`` certifies pairwise reduction."""

    rules: tuple[RewriteRule, ...]
    order: OperationOrder
    self_reduced: bool

    @property
    def leads(self) -> tuple[TreeMonomial, ...]:
        return tuple(r.lead for r in self.rules)

    def polynomials(self) -> tuple[TreePolynomial, ...]:
        return tuple(r.polynomial for r in self.rules)


STATUS_CONFIRMED = "gsb_confirmed"
STATUS_ITERATION_CAP = "iteration_cap"
STATUS_ARITY_CAP = "arity_cap"


@dataclass
class CompletionReport:
    """Per-iteration counts plus the final status and basis, JSON-ready."""

    order: str
    iterations: tuple[IterationRecord, ...]
    status: str
    basis: tuple[TreePolynomial, ...]
    pair_log: list = field(default_factory=list, repr=False, compare=False)

    @property
    def basis_size(self) -> int:
        return len(self.basis)

    def to_json_dict(self, ord: OperationOrder) -> dict:
        return {
            "order": self.order,
            "iterations": [
                {
                    "compositions": rec.compositions,
                    "nonzero": rec.nonzero,
                    "added": [format_polynomial(p, ord) for p in rec.added],
                }
                for rec in self.iterations
            ],
            "status": self.status,
            "basis": [format_polynomial(p, ord) for p in self.basis],
        }


def _merge(x: TreeMonomial, y: TreeMonomial) -> TreeMonomial | None:
    """Least common refinement of two patterns rooted at the same vertex."""
    if x.is_leaf:
        return y
    if y.is_leaf:
        return x
    if x.label != y.label:
        return None
    children = []
    for cx, cy in zip(x.children, y.children):
        m = _merge(cx, cy)
        if m is None:
            return None
        children.append(m)
    return TreeMonomial(x.label, children)


def _overlay(base: TreeMonomial, pat: TreeMonomial, path: tuple[int, ...]) -> TreeMonomial | None:
    if not path:
        return _merge(base, pat)
    sub = _overlay(base.children[path[0]], pat, path[1:])
    if sub is None:
        return None
    children = list(base.children)
    children[path[0]] = sub
    return TreeMonomial(base.label, children)


def _enumerate_scms(
    f_lead: TreeMonomial, g_lead: TreeMonomial, max_arity: int
) -> tuple[list[SmallCommonMultiple], int]:
    """SCM list plus the number of candidates skipped by the arity cap."""
    if f_lead.is_leaf or g_lead.is_leaf:
        raise TreeError("leads must have at least one internal vertex")
    out: list[SmallCommonMultiple] = []
    skipped = 0
    for p in internal_vertices(g_lead):
        merged = _overlay(g_lead, f_lead, p)
        if merged is None:
            continue
        if p == ():
            # Root-aligned: keep only when f sits strictly inside g, or on
            # one canonical side of an incomparable overlap, so the two
            # orientations of a pair never double-report it.
            if merged == f_lead:
                continue
            if merged != g_lead and not format_tree(f_lead) < format_tree(g_lead):
                continue
        if merged.arity > max_arity:
            skipped += 1
            continue
        occ_f = match_at(merged, p, f_lead)
        occ_g = match_at(merged, (), g_lead)
        assert occ_f is not None and occ_g is not None
        kind = INCLUSION if merged == g_lead else PROPER_OVERLAP
        out.append(SmallCommonMultiple(merged, occ_f, occ_g, kind))
    return out, skipped


def small_common_multiples(
    f_lead: TreeMonomial, g_lead: TreeMonomial, max_arity: int = 12
) -> list[SmallCommonMultiple]:
    """All minimal common multiples with ``f_lead`` embedded inside the
    root occurrence of ``g_lead``, in preorder of the embedding vertex."""
    return _enumerate_scms(f_lead, g_lead, max_arity)[0]


def s_polynomial(
    f: RewriteRule, g: RewriteRule, scm: SmallCommonMultiple
) -> TreePolynomial:
    """Difference of the two rule embeddings into the common multiple."""
    if graft(f.lead, scm.occ_f.bindings) != subtree_at(scm.multiple, scm.occ_f.vertex):
        raise TreeError("inconsistent small common multiple for f")
    if graft(g.lead, scm.occ_g.bindings) != scm.multiple:
        raise TreeError("inconsistent small common multiple for g")
    emb_f = embed_polynomial_at(scm.multiple, scm.occ_f, f.polynomial)
    emb_g = embed_polynomial_at(scm.multiple, scm.occ_g, g.polynomial)
    return emb_f - emb_g


def self_reduce(
    rules: Sequence[RewriteRule],
    ord: OperationOrder,
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> tuple[RewriteRule, ...]:
    """Reduce every rule modulo the others; drop the ones that vanish.

    On exit no rule's monomial (lead or tail) is divisible by another
    rule's lead.  Relative order of the survivors is preserved.
    """
    out = list(rules)
    changed = True
    while changed:
        changed = False
        for i in range(len(out)):
            others = out[:i] + out[i + 1 :]
            if not others:
                continue
            nf = normal_form(out[i].polynomial, others, ord, step_limit)
            if nf == out[i].polynomial:
                continue
            if nf.is_zero:
                del out[i]
            else:
                out[i] = RewriteRule.from_polynomial(nf, ord)
            changed = True
            break
    return tuple(out)


def _validate_input(relations: Sequence[TreePolynomial], ord: OperationOrder) -> None:
    nonbinary = [s.name for s in ord.ranked if s.arity != 2]
    if nonbinary:
        raise TreeError(
            "completion supports binary signatures only; "
            f"non-binary operations: {nonbinary}"
        )
    for rel in relations:
        if rel.is_zero:
            raise TreeError("zero relation in completion input")
        for mono in rel.terms:
            for v in internal_vertices(mono):
                ord.rank(subtree_at(mono, v).label)


def complete(
    relations: Sequence[TreePolynomial],
    ord: OperationOrder,
    cfg: CompletionConfig | None = None,
) -> tuple[GSBasis, CompletionReport]:
    """Run completion: orient, enumerate compositions, reduce, append.

    Iteration 1 pairs every ordered pair of the oriented, self-reduced
    input; later iterations only pair combinations touching an element
    added in the previous round.  S-polynomials reduce against the basis
    snapshot frozen at the start of each iteration, so reports are
    independent of any parallel execution schedule.

    A composition counts as a nonzero reduction when its monic normal
    form is new for this iteration: the same consequence discovered
    through several overlaps is counted and appended once.  Survivors
    join the working basis as they are; the final basis is self-reduced
    once after the loop ends.
    """
    cfg = cfg or CompletionConfig()
    _validate_input(relations, ord)
    rules = self_reduce(
        [RewriteRule.from_polynomial(r, ord) for r in relations], ord, cfg.step_limit
    )
    first_new = 0
    iterations: list[IterationRecord] = []
    pair_log: list[list] = []
    status = STATUS_ITERATION_CAP
    arity_skipped = False
    for iteration in range(1, cfg.max_iterations + 1):
        snapshot = tuple(rules)
        reducer = Reducer(snapshot, ord, cfg.step_limit)
        compositions = 0
        survivors: list[TreePolynomial] = []
        log: list[tuple[int, int, SmallCommonMultiple, bool]] = []
        for j_outer, g in enumerate(snapshot):
            for i_inner, f in enumerate(snapshot):
                if iteration > 1 and i_inner < first_new and j_outer < first_new:
                    continue
                scms, skipped = _enumerate_scms(f.lead, g.lead, cfg.max_arity)
                arity_skipped = arity_skipped or skipped > 0
                for scm in scms:
                    compositions += 1
                    nf = reducer.reduce(s_polynomial(f, g, scm))
                    log.append((j_outer, i_inner, scm, not nf.is_zero))
                    if nf:
                        monic = nf.make_monic(ord)
                        if monic not in survivors:
                            survivors.append(monic)
        first_new = len(rules)
        rules = snapshot + tuple(
            RewriteRule.from_polynomial(s, ord) for s in survivors
        )
        iterations.append(
            IterationRecord(compositions, len(survivors), tuple(survivors))
        )
        pair_log.append(log)
        if not survivors:
            status = STATUS_ARITY_CAP if arity_skipped else STATUS_CONFIRMED
            break
    final_rules = self_reduce(rules, ord, cfg.step_limit)
    basis = GSBasis(final_rules, ord, self_reduced=True)
    report = CompletionReport(
        order=ord.as_string(),
        iterations=tuple(iterations),
        status=status,
        basis=basis.polynomials(),
        pair_log=pair_log,
    )
    return basis, report


@dataclass(frozen=True)
class CompositionRecord:
    """One checked composition: the pair, its SCM, and the normal form."""

    outer_index: int
    inner_index: int
    scm: SmallCommonMultiple
    normal_form: TreePolynomial


@dataclass(frozen=True)
class GsbCheck:
    """Outcome of an exhaustive composition check, with certificate."""

    status: str  # "confirmed" | "refuted" | "indeterminate"
    certificate: tuple[CompositionRecord, ...]

    def __bool__(self) -> bool:
        return self.status == "confirmed"


def is_gsb(basis: GSBasis, cfg: CompletionConfig | None = None) -> GsbCheck:
    """Check every composition of the basis; confirmed iff all reduce to 0.

    An arity cap that skipped candidate multiples downgrades a clean run
    to ``indeterminate`` rather than confirming.
    """
    cfg = cfg or CompletionConfig()
    reducer = Reducer(basis.rules, basis.order, cfg.step_limit)
    records: list[CompositionRecord] = []
    skipped_any = False
    refuted = False
    for j_outer, g in enumerate(basis.rules):
        for i_inner, f in enumerate(basis.rules):
            scms, skipped = _enumerate_scms(f.lead, g.lead, cfg.max_arity)
            skipped_any = skipped_any or skipped > 0
            for scm in scms:
                nf = reducer.reduce(s_polynomial(f, g, scm))
                records.append(CompositionRecord(j_outer, i_inner, scm, nf))
                refuted = refuted or not nf.is_zero
    if refuted:
        status = "refuted"
    elif skipped_any:
        status = "indeterminate"
    else:
        status = "confirmed"
    return GsbCheck(status, tuple(records))
