"""Species/genus structure, predication verdicts, and generator analysis.

A definition whose body is a conjunction led by an application of an
earlier-defined unary class to the parameter is read as species-of-genus,
with the remaining conjuncts as the difference.  Everything here compares
formulas semantically: exactly inside the unary fragment, and up to a
stated model-size bound outside it, with the engine always recorded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .defsys import DefinitionSystem, PredicateDef, _require_valid, unfold
from .monadic import decide_entails, is_monadic
from .semantics import (
    Countermodel,
    EntailmentVerdict,
    Holds,
    HoldsUpTo,
    bounded_entails,
    default_bound,
)
from .syntax import (
    And,
    Formula,
    Pred,
    Var,
    big_and,
    conjuncts,
    constants_of,
    free_vars,
    nnf,
    node_count,
    predicates_of,
    render,
    subst,
)

# --------------------------------------------------------- Porphyry tree


@dataclass(frozen=True)
class PorphyryEdge:
    species: str
    genus: str
    difference: Formula


@dataclass(frozen=True)
class PorphyryTree:
    nodes: tuple[str, ...]
    edges: tuple[PorphyryEdge, ...]
    roots: tuple[str, ...]

    def to_dot(self) -> str:
        lines = ["digraph porphyry {"]
        for node in self.nodes:
            lines.append(f'  "{node}";')
        for e in self.edges:
            label = render(e.difference).replace('"', '\\"')
            lines.append(f'  "{e.species}" -> "{e.genus}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)


def _guarded_split(
    e: PredicateDef, class_names: set[str]
) -> tuple[str, Formula] | None:
    if len(e.params) != 1:
        return None
    param = e.params[0]
    parts = conjuncts(e.body)
    for i, part in enumerate(parts):
        if (
            isinstance(part, Pred)
            and part.name in class_names
            and part.args == (Var(param),)
        ):
            rest = parts[:i] + parts[i + 1 :]
            return part.name, big_and(rest)
    return None


def porphyry_tree(
    d: DefinitionSystem,
) -> tuple[PorphyryTree, tuple[str, ...]]:
    """Build the genus-species forest and list the unguarded classes.

    An edge needs the guarded shape: some conjunct of the body applies an
    earlier-defined unary class to the parameter; the first such conjunct
    is the genus, the remaining conjuncts the difference.  Unary classes
    with no guarded shape and no species of their own are unguarded and
    stay outside the tree.
    """
    _require_valid(d)
    class_names = {
        e.name
        for e in d.entries
        if isinstance(e, PredicateDef) and len(e.params) == 1
    }
    edges: list[PorphyryEdge] = []
    for e in d.entries:
        if not (isinstance(e, PredicateDef) and len(e.params) == 1):
            continue
        hit = _guarded_split(e, class_names)
        if hit is not None:
            edges.append(PorphyryEdge(e.name, hit[0], hit[1]))
    in_tree = {e.species for e in edges} | {e.genus for e in edges}
    nodes = tuple(e.name for e in d.entries if e.name in in_tree)
    has_genus = {e.species for e in edges}
    roots = tuple(n for n in nodes if n not in has_genus)
    unguarded = tuple(
        e.name
        for e in d.entries
        if isinstance(e, PredicateDef)
        and len(e.params) == 1
        and e.name not in in_tree
    )
    assert len(has_genus) == len(edges), "one genus edge per species"
    return PorphyryTree(nodes, tuple(edges), roots), unguarded


# ------------------------------------------------------- engine plumbing


@dataclass(frozen=True)
class _Engine:
    entails: Callable[[Formula, Formula], EntailmentVerdict]
    exact: bool
    bound: int | None


def _holds(v: EntailmentVerdict) -> bool:
    return isinstance(v, (Holds, HoldsUpTo))


def _pick_engine(
    d: DefinitionSystem,
    formulas: tuple[Formula, ...],
    bound: int | None,
    ceiling: int | None,
) -> _Engine:
    if all(is_monadic(f) for f in formulas):
        return _Engine(
            entails=lambda p, c: decide_entails(p, c, d.base, ceiling),
            exact=True,
            bound=None,
        )
    used = bound if bound is not None else default_bound(d.base)
    return _Engine(
        entails=lambda p, c: bounded_entails(d.base, [p], c, used, ceiling),
        exact=False,
        bound=used,
    )


# ----------------------------------------------------------- predication


@dataclass(frozen=True)
class Difference:
    evidence: dict[str, EntailmentVerdict]
    exact: bool
    bound: int | None


@dataclass(frozen=True)
class Property:
    evidence: dict[str, EntailmentVerdict]
    exact: bool
    bound: int | None


@dataclass(frozen=True)
class Accident:
    evidence: dict[str, EntailmentVerdict]
    exact: bool
    bound: int | None


@dataclass(frozen=True)
class Unrelated:
    evidence: dict[str, EntailmentVerdict]
    exact: bool
    bound: int | None


ClassificationVerdict = Union[Difference, Property, Accident, Unrelated]


def _species_entry(d: DefinitionSystem, species: str) -> PredicateDef:
    entry = d.entry(species)
    if not isinstance(entry, PredicateDef) or len(entry.params) != 1:
        raise ValueError(f"{species} is not a defined unary class")
    return entry


def _align_free_var(rho: Formula, param: str) -> Formula:
    frees = sorted(free_vars(rho))
    if len(frees) > 1:
        raise ValueError(
            "formula must have at most one free variable, got: "
            + ", ".join(frees)
        )
    if frees and frees[0] != param:
        return subst(rho, {frees[0]: Var(param)})
    return rho


def classify_formula(
    rho: Formula,
    species: str,
    d: DefinitionSystem,
    bound: int | None = None,
    ceiling: int | None = None,
) -> ClassificationVerdict:
    """Sort rho into difference / property / accident / unrelated for a class.

    All comparisons happen after unfolding, so logically equivalent inputs
    get the same verdict.  Difference: rho is equivalent to the difference
    of the class's genus edge.  Property: rho is equivalent to the whole
    definition body.  Accident: the body entails rho but not conversely,
    with the refuting model kept as evidence.
    """
    _require_valid(d)
    entry = _species_entry(d, species)
    s_index = d.index(species)
    earlier = {e.name for i, e in enumerate(d.entries) if i < s_index}
    allowed = d.base.names() | earlier
    for name in set(predicates_of(rho)) | constants_of(rho):
        if name not in allowed:
            raise ValueError(
                f"{name} is not a base or earlier-defined symbol"
            )
    param = entry.params[0]
    rho = _align_free_var(rho, param)
    rho_u = unfold(rho, d)
    psi = unfold(Pred(species, (Var(param),)), d)

    tree, _ = porphyry_tree(d)
    edge = next((e for e in tree.edges if e.species == species), None)
    delta_u = None
    if edge is not None:
        delta_u = unfold(_align_free_var(edge.difference, param), d)

    pool = [rho_u, psi] + ([delta_u] if delta_u is not None else [])
    eng = _pick_engine(d, tuple(pool), bound, ceiling)

    if delta_u is not None:
        r_to_d = eng.entails(rho_u, delta_u)
        d_to_r = eng.entails(delta_u, rho_u)
        if _holds(r_to_d) and _holds(d_to_r):
            return Difference(
                {"rho_entails_delta": r_to_d, "delta_entails_rho": d_to_r},
                eng.exact,
                eng.bound,
            )
    psi_to_rho = eng.entails(psi, rho_u)
    rho_to_psi = eng.entails(rho_u, psi)
    evidence = {"psi_entails_rho": psi_to_rho, "rho_entails_psi": rho_to_psi}
    if _holds(psi_to_rho) and _holds(rho_to_psi):
        return Property(evidence, eng.exact, eng.bound)
    if _holds(psi_to_rho) and isinstance(rho_to_psi, Countermodel):
        return Accident(evidence, eng.exact, eng.bound)
    return Unrelated(evidence, eng.exact, eng.bound)


# ------------------------------------------------------- proximate genus


@dataclass(frozen=True)
class CandidateScore:
    name: str
    contains: bool
    difference: Formula | None
    score: int | None


@dataclass(frozen=True)
class ProximateGenusResult:
    chosen: str
    difference: Formula
    scores: tuple[CandidateScore, ...]
    exact: bool
    bound: int | None


def _class_formula(d: DefinitionSystem, name: str, param: str) -> Formula:
    if d.base.arity(name) == 1 or (
        isinstance(d.entry(name), PredicateDef)
        and len(d.entry(name).params) == 1
    ):
        return Pred(name, (Var(param),))
    raise ValueError(f"{name} is not a unary class symbol")


def proximate_genus(
    species: str,
    candidates: list[str],
    d: DefinitionSystem,
    bound: int | None = None,
    ceiling: int | None = None,
) -> ProximateGenusResult:
    """Choose the containing candidate with the smallest residual difference.

    The difference for a candidate C is the cheapest sub-conjunction D of
    the unfolded body with C(x) & D equivalent to the class; cost is node
    count after negation normal form.  Ties go to the lexicographically
    first name.  Candidates that do not contain the class are kept in the
    score table but excluded from the choice.
    """
    _require_valid(d)
    entry = _species_entry(d, species)
    param = entry.params[0]
    psi = unfold(Pred(species, (Var(param),)), d)
    parts = conjuncts(psi)
    cand_formulas = {c: unfold(_class_formula(d, c, param), d) for c in candidates}
    eng = _pick_engine(
        d, tuple([psi] + list(cand_formulas.values())), bound, ceiling
    )

    def subset_key(mask: int) -> tuple[int, int]:
        chosen = [parts[i] for i in range(len(parts)) if (mask >> i) & 1]
        return (node_count(nnf(big_and(chosen))), mask)

    scores: list[CandidateScore] = []
    for c in candidates:
        c_u = cand_formulas[c]
        if not _holds(eng.entails(psi, c_u)):
            scores.append(CandidateScore(c, False, None, None))
            continue
        best: Formula | None = None
        for mask in sorted(range(1 << len(parts)), key=subset_key):
            chosen = [parts[i] for i in range(len(parts)) if (mask >> i) & 1]
            delta = big_and(chosen)
            if _holds(eng.entails(And(c_u, delta), psi)):
                best = delta
                break
        assert best is not None, "full conjunction always recovers the body"
        scores.append(
            CandidateScore(c, True, best, node_count(nnf(best)))
        )
    containing = [s for s in scores if s.contains]
    if not containing:
        raise ValueError(f"no candidate contains {species}")
    winner = min(containing, key=lambda s: (s.score, s.name))
    return ProximateGenusResult(
        chosen=winner.name,
        difference=winner.difference,
        scores=tuple(scores),
        exact=eng.exact,
        bound=eng.bound,
    )


# ------------------------------------------------------------ generators


@dataclass(frozen=True)
class TheorySet:
    sentences: tuple[Formula, ...]
    generator_flags: tuple[bool, ...]
    exact: bool
    bound: int | None


def generators(
    sentences: list[Formula],
    d: DefinitionSystem,
    bound: int | None = None,
    ceiling: int | None = None,
) -> TheorySet:
    """Flag each sentence that entails every other member of the list.

    Sentences may use defined symbols; comparison happens after unfolding.
    All flagged sentences are pairwise mutually entailing by construction,
    and that is re-asserted on the result.
    """
    if not sentences:
        raise ValueError("empty sentence list")
    for s in sentences:
        if free_vars(s):
            raise ValueError(f"not a sentence: {render(s)}")
    unfolded = [unfold(s, d) for s in sentences]
    eng = _pick_engine(d, tuple(unfolded), bound, ceiling)
    n = len(unfolded)
    entails = [
        [i == j or _holds(eng.entails(unfolded[i], unfolded[j])) for j in range(n)]
        for i in range(n)
    ]
    flags = tuple(all(entails[i]) for i in range(n))
    for i in range(n):
        for j in range(n):
            if flags[i] and flags[j]:
                assert entails[i][j], "generators must be mutually entailing"
    return TheorySet(tuple(sentences), flags, eng.exact, eng.bound)
