"""Ordered definition systems: validation, dependency structure, unfolding.

A system extends a base signature with an ordered sequence of definitions,
each allowed to mention only base symbols and strictly earlier definienda.
Predicate definitions abbreviate formulas; constant definitions are definite
descriptions (a body with one designated free variable), whose unique
satisfaction is checked per finite model and reported, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Union

from .semantics import FiniteModel, enumerate_models, evaluate
from .syntax import (
    And,
    Const,
    Eq,
    Exists,
    Formula,
    Pred,
    Signature,
    Term,
    Var,
    all_names,
    big_and,
    conjuncts,
    constants_of,
    free_vars,
    fresh_name,
    predicates_of,
    render,
    rename_apart,
    subst,
)

VIOLATION_KINDS = (
    "forward-reference",
    "self-reference",
    "arity-mismatch",
    "name-clash",
    "free-variable-mismatch",
)


@dataclass(frozen=True)
class PredicateDef:
    name: str
    params: tuple[str, ...]
    body: Formula

    def to_dsl(self) -> str:
        return f"def {self.name}({', '.join(self.params)}) := {render(self.body)};"


@dataclass(frozen=True)
class ConstantDef:
    name: str
    var: str
    body: Formula

    def term_form(self) -> Term | None:
        """The defining term when the body is `var = t`, else None."""
        b = self.body
        if isinstance(b, Eq):
            if isinstance(b.left, Var) and b.left.name == self.var:
                return b.right
            if isinstance(b.right, Var) and b.right.name == self.var:
                return b.left
        return None

    def to_dsl(self) -> str:
        t = self.term_form()
        if t is None:
            raise ValueError(
                f"constant definition {self.name} has no term form; "
                "not expressible in the DSL"
            )
        return f"defconst {self.name} := {t};"


Definition = Union[PredicateDef, ConstantDef]


@dataclass(frozen=True)
class DefinitionSystem:
    base: Signature
    entries: tuple[Definition, ...] = ()

    def predicate_defs(self) -> tuple[PredicateDef, ...]:
        return tuple(e for e in self.entries if isinstance(e, PredicateDef))

    def constant_defs(self) -> tuple[ConstantDef, ...]:
        return tuple(e for e in self.entries if isinstance(e, ConstantDef))

    def entry(self, name: str) -> Definition | None:
        for e in self.entries:
            if e.name == name:
                return e
        return None

    def index(self, name: str) -> int | None:
        for i, e in enumerate(self.entries):
            if e.name == name:
                return i
        return None

    def defined_predicates(self) -> dict[str, int]:
        return {
            e.name: len(e.params)
            for e in self.entries
            if isinstance(e, PredicateDef)
        }

    def defined_constants(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries if isinstance(e, ConstantDef))

    def full_signature(self) -> Signature:
        """Base signature extended with all defined symbols, in entry order."""
        preds = list(self.base.predicates)
        consts = list(self.base.constants)
        for e in self.entries:
            if isinstance(e, PredicateDef):
                preds.append((e.name, len(e.params)))
            else:
                consts.append(e.name)
        return Signature(tuple(preds), tuple(consts), self.base.equality)

    def to_dsl(self) -> str:
        return "\n".join(e.to_dsl() for e in self.entries)


# ------------------------------------------------------------ validation


@dataclass(frozen=True)
class Violation:
    entry: int
    kind: str
    symbol: str
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...]


def validate(d: DefinitionSystem) -> ValidationReport:
    """Check ordering discipline and well-formedness of every entry.

    A body symbol that is declared nowhere at all is reported as a
    forward-reference: it is not available at that point (or ever).
    """
    vs: list[Violation] = []
    base_names = d.base.names()
    first_index: dict[str, int] = {}
    for i, entry in enumerate(d.entries):
        if entry.name in base_names:
            vs.append(
                Violation(i, "name-clash", entry.name, "clashes with base signature")
            )
        elif entry.name in first_index:
            vs.append(Violation(i, "name-clash", entry.name, "duplicate definition"))
        else:
            first_index[entry.name] = i

    def ref_violation(i: int, entry: Definition, name: str) -> Violation | None:
        j = first_index.get(name)
        if j is None:
            return Violation(
                i, "forward-reference", name, "symbol not defined anywhere"
            )
        if j == i:
            return Violation(i, "self-reference", name, "definition mentions itself")
        if j > i:
            return Violation(
                i, "forward-reference", name, f"defined later at entry {j}"
            )
        return None

    for i, entry in enumerate(d.entries):
        body = entry.body
        params = entry.params if isinstance(entry, PredicateDef) else (entry.var,)
        stray = free_vars(body) - set(params)
        if stray:
            vs.append(
                Violation(
                    i,
                    "free-variable-mismatch",
                    entry.name,
                    "stray free variables: " + ", ".join(sorted(stray)),
                )
            )
        uses = _pred_uses(body)
        mixed = {n for n, ars in uses.items() if len(ars) > 1}
        for name in sorted(mixed):
            vs.append(
                Violation(i, "arity-mismatch", name, "applied with multiple arities")
            )
        for name, used_arity in sorted(
            (n, next(iter(ars))) for n, ars in uses.items() if n not in mixed
        ):
            declared = d.base.arity(name)
            if declared is not None:
                if declared != used_arity:
                    vs.append(
                        Violation(
                            i,
                            "arity-mismatch",
                            name,
                            f"declared /{declared}, applied /{used_arity}",
                        )
                    )
                continue
            if d.base.is_constant(name):
                vs.append(
                    Violation(i, "arity-mismatch", name, "constant applied as predicate")
                )
                continue
            bad = ref_violation(i, entry, name)
            if bad is not None:
                vs.append(bad)
                continue
            target = d.entries[first_index[name]]
            if isinstance(target, ConstantDef):
                vs.append(
                    Violation(i, "arity-mismatch", name, "constant applied as predicate")
                )
            elif len(target.params) != used_arity:
                vs.append(
                    Violation(
                        i,
                        "arity-mismatch",
                        name,
                        f"defined /{len(target.params)}, applied /{used_arity}",
                    )
                )
        for name in sorted(constants_of(body)):
            if d.base.is_constant(name):
                continue
            if d.base.arity(name) is not None:
                vs.append(
                    Violation(i, "arity-mismatch", name, "predicate used as term")
                )
                continue
            bad = ref_violation(i, entry, name)
            if bad is not None:
                vs.append(bad)
            elif isinstance(d.entries[first_index[name]], PredicateDef):
                vs.append(
                    Violation(i, "arity-mismatch", name, "predicate used as term")
                )
    return ValidationReport(valid=not vs, violations=tuple(vs))


def _pred_uses(f: Formula) -> dict[str, set[int]]:
    uses: dict[str, set[int]] = {}
    from .syntax import subformulas

    for g in subformulas(f):
        if isinstance(g, Pred):
            uses.setdefault(g.name, set()).add(len(g.args))
    return uses


def _require_valid(d: DefinitionSystem) -> None:
    report = validate(d)
    if not report.valid:
        lines = ", ".join(
            f"entry {v.entry} {v.kind} ({v.symbol})" for v in report.violations
        )
        raise ValueError(f"invalid definition system: {lines}")


# ------------------------------------------------------ dependency graph


@dataclass(frozen=True)
class DependencyGraph:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def to_dot(self) -> str:
        lines = ["digraph definitions {"]
        mentioned = {n for e in self.edges for n in e}
        for node in self.nodes:
            if node not in mentioned:
                lines.append(f'  "{node}";')
        for src, dst in self.edges:
            lines.append(f'  "{src}" -> "{dst}";')
        lines.append("}")
        return "\n".join(lines)


def dependency_graph(d: DefinitionSystem) -> DependencyGraph:
    """Nodes are definienda; edges run from a definition to each defined
    symbol its body mentions.  Acyclic for valid systems by construction."""
    _require_valid(d)
    index = {e.name: i for i, e in enumerate(d.entries)}
    edges: list[tuple[str, str]] = []
    for e in d.entries:
        body_syms = set(predicates_of(e.body)) | set(constants_of(e.body))
        for name in (x.name for x in d.entries):
            if name in body_syms and (e.name, name) not in edges:
                edges.append((e.name, name))
    for src, dst in edges:
        assert index[dst] < index[src], "dependency must point backwards"
    return DependencyGraph(
        nodes=tuple(e.name for e in d.entries), edges=tuple(edges)
    )


# -------------------------------------------------------------- unfolding


class _Expander:
    """Precomputes fully expanded bodies, innermost first in entry order."""

    def __init__(self, d: DefinitionSystem):
        self.preds: dict[str, tuple[tuple[str, ...], Formula]] = {}
        self.consts: dict[str, tuple[str, Formula, Term | None]] = {}
        self.used: set[str] = set(d.base.names()) | {e.name for e in d.entries}
        for e in d.entries:
            body = self.expand(e.body)
            if isinstance(e, PredicateDef):
                self.preds[e.name] = (e.params, body)
            else:
                term = ConstantDef(e.name, e.var, body).term_form()
                if term is not None and isinstance(term, Var):
                    term = None
                self.consts[e.name] = (e.var, body, term)

    def expand(self, g: Formula) -> Formula:
        self.used |= all_names(g)
        g = self._expand_preds(g)
        return self._expand_consts(g)

    def _expand_preds(self, g: Formula) -> Formula:
        from .syntax import BINARY, QUANTIFIERS, Falsum, Not, Verum

        if isinstance(g, (Verum, Falsum, Eq)):
            return g
        if isinstance(g, Pred):
            hit = self.preds.get(g.name)
            if hit is None:
                return g
            params, pbody = hit
            inst = rename_apart(pbody, reserved=frozenset(self.used))
            self.used |= all_names(inst)
            return subst(inst, dict(zip(params, g.args)))
        if isinstance(g, Not):
            return Not(self._expand_preds(g.body))
        if isinstance(g, BINARY):
            return type(g)(self._expand_preds(g.left), self._expand_preds(g.right))
        if isinstance(g, QUANTIFIERS):
            return type(g)(g.var, self._expand_preds(g.body))
        raise TypeError(f"not a formula: {g!r}")

    def _expand_consts(self, g: Formula) -> Formula:
        from .syntax import BINARY, QUANTIFIERS, Falsum, Not, Verum

        if isinstance(g, (Verum, Falsum)):
            return g
        if isinstance(g, (Pred, Eq)):
            return self._expand_atom(g)
        if isinstance(g, Not):
            return Not(self._expand_consts(g.body))
        if isinstance(g, BINARY):
            return type(g)(self._expand_consts(g.left), self._expand_consts(g.right))
        if isinstance(g, QUANTIFIERS):
            return type(g)(g.var, self._expand_consts(g.body))
        raise TypeError(f"not a formula: {g!r}")

    def _expand_atom(self, atom: Formula) -> Formula:
        terms = atom.args if isinstance(atom, Pred) else (atom.left, atom.right)
        target = next(
            (t.name for t in terms if isinstance(t, Const) and t.name in self.consts),
            None,
        )
        if target is None:
            return atom
        var, body, term = self.consts[target]
        if term is not None:
            return self._expand_atom(_replace_const(atom, target, term))
        waist = fresh_name(var, self.used)
        self.used.add(waist)
        inst = rename_apart(body, reserved=frozenset(self.used))
        self.used |= all_names(inst)
        described = subst(inst, {var: Var(waist)})
        rewritten = _replace_const(atom, target, Var(waist))
        return Exists(waist, And(described, self._expand_atom(rewritten)))


def _replace_const(atom: Formula, name: str, t: Term) -> Formula:
    def rt(x: Term) -> Term:
        return t if isinstance(x, Const) and x.name == name else x

    if isinstance(atom, Pred):
        return Pred(atom.name, tuple(rt(x) for x in atom.args))
    return Eq(rt(atom.left), rt(atom.right))


def unfold(f: Formula, d: DefinitionSystem) -> Formula:
    """Replace every defined symbol in f by its base-signature expansion.

    Definitions expand innermost first, in ascending entry order; constant
    definitions without a term form expand by a descriptive existential,
    equivalent whenever the description is uniquely satisfied.
    """
    _require_valid(d)
    declared = d.base.names() | {e.name for e in d.entries}
    for name in set(predicates_of(f)) | constants_of(f):
        if name not in declared:
            raise ValueError(f"symbol {name} not declared anywhere")
    return rename_apart(_Expander(d).expand(f))


# ------------------------------------------------------- model expansion


@dataclass(frozen=True)
class ConstantCheck:
    """Per-model uniqueness report for one constant definition."""

    name: str
    extent: tuple[int, ...]
    unique: bool


def expand_model(
    d: DefinitionSystem, m: FiniteModel
) -> tuple[FiniteModel, tuple[ConstantCheck, ...]]:
    """Definitional expansion of a base model.

    Defined predicates get the extent of their expanded bodies; defined
    constants are added only when their description picks out exactly one
    element, and every case is reported.
    """
    _require_valid(d)
    exp = _Expander(d)
    preds = dict(m.predicates)
    consts = dict(m.constants)
    checks: list[ConstantCheck] = []
    for e in d.entries:
        if isinstance(e, ConstantDef):
            var, body, _ = exp.consts[e.name]
            extent = tuple(
                x for x in range(m.size) if evaluate(body, m, {var: x})
            )
            unique = len(extent) == 1
            checks.append(ConstantCheck(e.name, extent, unique))
            if unique:
                consts[e.name] = extent[0]
        else:
            params, body = exp.preds[e.name]
            preds[e.name] = frozenset(
                tup
                for tup in product(range(m.size), repeat=len(params))
                if evaluate(body, m, dict(zip(params, tup)))
            )
    return FiniteModel(m.size, consts, preds), tuple(checks)


# -------------------------------------------- structural irreducibility


@dataclass(frozen=True)
class RedundancyWarning:
    entry: int
    conjunct: int
    rendered: str


def irreducibility_warnings(
    d: DefinitionSystem, size_bound: int = 3, ceiling: int | None = None
) -> tuple[RedundancyWarning, ...]:
    """Flag top-level conjuncts removable without changing truth on any base
    model up to size_bound.  A bounded proxy for minimality; warning only."""
    _require_valid(d)
    exp = _Expander(d)
    warnings: list[RedundancyWarning] = []
    for i, e in enumerate(d.entries):
        parts = conjuncts(e.body)
        if len(parts) < 2:
            continue
        params = e.params if isinstance(e, PredicateDef) else (e.var,)
        full = exp.expand(e.body)
        for j in range(len(parts)):
            reduced = exp.expand(big_and(parts[:j] + parts[j + 1 :]))
            if _same_extent(d.base, full, reduced, params, size_bound, ceiling):
                warnings.append(RedundancyWarning(i, j, render(parts[j])))
    return tuple(warnings)


def _same_extent(sig, f, g, params, size_bound, ceiling) -> bool:
    for size in range(1, size_bound + 1):
        for m in enumerate_models(sig, size, ceiling):
            for tup in product(range(size), repeat=len(params)):
                env = dict(zip(params, tup))
                if evaluate(f, m, env) != evaluate(g, m, env):
                    return False
    return True
