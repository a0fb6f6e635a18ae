"""Exact decision procedure and normal form for unary-predicate formulas.

With k unary predicates and no equality, elements matter only through their
cell: which of the k predicates they satisfy.  A model is then determined,
up to the truth of any formula, by its support (the nonempty set of
inhabited cells) plus a cell for each constant.  Satisfiability reduces to
a table over all 2^(2^k) - 1 supports, evaluated here as vectorized boolean
arrays; any satisfying support yields a witness of size <= 2^k with one
element per inhabited cell.

Cells are numbered by binary counting over predicate indices, bit i set
meaning predicate i holds.  Supports are numbered by binary counting over
cells.  The reported witness uses the first satisfying support ordered by
(number of inhabited cells, numeric support value), with constant cell
assignments tried in lexicographic order; this makes witnesses reproducible
and small.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .semantics import (
    DEFAULT_CEILING,
    Countermodel,
    FiniteModel,
    Holds,
    ResourceCeilingError,
    enumerate_models,
    evaluate,
)
from .syntax import (
    And,
    BINARY,
    Eq,
    Exists,
    Falsum,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    QUANTIFIERS,
    Signature,
    Var,
    Verum,
    big_and,
    big_or,
    constants_of,
    free_vars,
    nnf,
    predicates_of,
    rename_apart,
    render,
    uses_equality,
)


def is_monadic(f: Formula) -> bool:
    """True iff every predicate in f is unary and equality never occurs."""
    if uses_equality(f):
        return False
    try:
        arities = predicates_of(f)
    except ValueError:
        return False
    return all(a == 1 for a in arities.values())


def quantifier_depth(f: Formula) -> int:
    if isinstance(f, (Verum, Falsum, Pred, Eq)):
        return 0
    if isinstance(f, Not):
        return quantifier_depth(f.body)
    if isinstance(f, BINARY):
        return max(quantifier_depth(f.left), quantifier_depth(f.right))
    if isinstance(f, QUANTIFIERS):
        return 1 + quantifier_depth(f.body)
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class Sat:
    model: FiniteModel
    assignment: dict[str, int]


@dataclass(frozen=True)
class Unsat:
    pass


SatVerdict = Sat | Unsat


def _infer_signature(fs: tuple[Formula, ...]) -> Signature:
    preds: set[str] = set()
    consts: set[str] = set()
    for f in fs:
        preds |= set(predicates_of(f))
        consts |= constants_of(f)
    return Signature(
        tuple((p, 1) for p in sorted(preds)), tuple(sorted(consts)), False
    )


def _check_fragment(fs: tuple[Formula, ...], sig: Signature) -> list[str]:
    """Returns the predicates of fs in signature order, validating the
    monadic preconditions along the way."""
    used: set[str] = set()
    for f in fs:
        if not is_monadic(f):
            raise ValueError(f"not in the monadic fragment: {render(f)}")
        for name in predicates_of(f):
            if sig.arity(name) != 1:
                raise ValueError(f"predicate {name} not declared unary")
            used.add(name)
        for c in constants_of(f):
            if not sig.is_constant(c):
                raise ValueError(f"constant {c} not declared")
    return [name for name, _ in sig.predicates if name in used]


class _SupportTable:
    """Boolean truth arrays indexed by support bitmask."""

    def __init__(self, k: int, ceiling: int | None):
        limit = DEFAULT_CEILING if ceiling is None else ceiling
        self.ncells = 1 << k
        nsupports = 1 << self.ncells
        if nsupports > limit:
            raise ResourceCeilingError(nsupports, limit)
        masks = np.arange(nsupports, dtype=np.int64)
        self.has = [(masks >> c) & 1 == 1 for c in range(self.ncells)]
        self.nsupports = nsupports
        popcounts = np.array([int(m).bit_count() for m in range(nsupports)])
        self.canonical = np.lexsort((masks, popcounts))
        self.memo: dict[tuple[Formula, tuple[tuple[str, int], ...]], np.ndarray] = {}

    def truth(self, f: Formula, env: dict[str, int], pred_index: dict[str, int]):
        key = (f, tuple(sorted(env.items())))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out = self._truth(f, env, pred_index)
        self.memo[key] = out
        return out

    def _truth(self, f, env, pred_index):
        if isinstance(f, Verum):
            return np.ones(self.nsupports, dtype=bool)
        if isinstance(f, Falsum):
            return np.zeros(self.nsupports, dtype=bool)
        if isinstance(f, Pred):
            cell = env[f.args[0].name]
            val = bool((cell >> pred_index[f.name]) & 1)
            return np.full(self.nsupports, val, dtype=bool)
        if isinstance(f, Not):
            return ~self.truth(f.body, env, pred_index)
        if isinstance(f, And):
            return self.truth(f.left, env, pred_index) & self.truth(
                f.right, env, pred_index
            )
        if isinstance(f, Or):
            return self.truth(f.left, env, pred_index) | self.truth(
                f.right, env, pred_index
            )
        if isinstance(f, Implies):
            return ~self.truth(f.left, env, pred_index) | self.truth(
                f.right, env, pred_index
            )
        if isinstance(f, Iff):
            return self.truth(f.left, env, pred_index) == self.truth(
                f.right, env, pred_index
            )
        if isinstance(f, Exists):
            acc = np.zeros(self.nsupports, dtype=bool)
            for c in range(self.ncells):
                acc |= self.has[c] & self.truth(
                    f.body, {**env, f.var: c}, pred_index
                )
            return acc
        if isinstance(f, Forall):
            acc = np.ones(self.nsupports, dtype=bool)
            for c in range(self.ncells):
                acc &= ~self.has[c] | self.truth(
                    f.body, {**env, f.var: c}, pred_index
                )
            return acc
        raise ValueError(f"not in the monadic fragment: {render(f)}")


def _canonical_model(
    support: int,
    names: dict[str, int],
    preds: list[str],
    sig: Signature,
    pred_index: dict[str, int],
) -> tuple[FiniteModel, dict[str, int]]:
    cells = [c for c in range(1 << len(preds)) if (support >> c) & 1]
    extents = {
        p: frozenset(
            (i,) for i, c in enumerate(cells) if (c >> pred_index[p]) & 1
        )
        for p in preds
    }
    for pname, arity in sig.predicates:
        if pname not in extents and arity == 1:
            extents[pname] = frozenset()
    consts = {c: cells.index(cell) for c, cell in names.items()}
    assignment = {}
    for c in sig.constants:
        consts.setdefault(c, 0)
    for name in list(consts):
        if not sig.is_constant(name):
            assignment[name] = consts.pop(name)
    return FiniteModel(len(cells), consts, extents), assignment


def decide_sat(
    f: Formula,
    sig: Signature | None = None,
    ceiling: int | None = None,
    allow_equality: bool = False,
) -> SatVerdict:
    """Exact satisfiability over all models, finite and infinite.

    Free variables are treated as extra constants and reported in the
    witness assignment.  With allow_equality, unary formulas with `=` are
    decided instead by brute-force enumeration up to the larger bound
    2^k * max(1, quantifier depth); this path is slower and off by default.
    """
    if allow_equality and uses_equality(f):
        return _decide_sat_eq(f, sig, ceiling)
    if sig is None:
        sig = _infer_signature((f,))
    preds = _check_fragment((f,), sig)
    pred_index = {p: i for i, p in enumerate(preds)}
    table = _SupportTable(len(preds), ceiling)
    holders = sorted(free_vars(f)) + [
        c for c in sig.constants if c in constants_of(f)
    ]
    best: tuple[int, int, dict[str, int]] | None = None
    for combo in product(range(table.ncells), repeat=len(holders)):
        env = dict(zip(holders, combo))
        sat = table.truth(f, env, pred_index).copy()
        for c in combo:
            sat &= table.has[c]
        sat[0] = False
        order = table.canonical
        hits = order[sat[order]]
        if len(hits) == 0:
            continue
        support = int(hits[0])
        if best is None or (support.bit_count(), support) < best[:2]:
            best = (support.bit_count(), support, env)
    if best is None:
        return Unsat()
    model, assignment = _canonical_model(
        best[1], best[2], preds, sig, pred_index
    )
    assert evaluate(f, model, dict(assignment))
    return Sat(model, assignment)


def _decide_sat_eq(
    f: Formula, sig: Signature | None, ceiling: int | None
) -> SatVerdict:
    if sig is None:
        inferred = _infer_signature((f,))
        sig = Signature(inferred.predicates, inferred.constants, True)
    try:
        arities = predicates_of(f)
    except ValueError as exc:
        raise ValueError(str(exc)) from exc
    if any(a != 1 for a in arities.values()):
        raise ValueError("equality extension still requires unary predicates")
    k = len(arities)
    bound = (1 << k) * max(1, quantifier_depth(f))
    frees = sorted(free_vars(f))
    for size in range(1, bound + 1):
        for m in enumerate_models(sig, size, ceiling):
            for combo in product(range(size), repeat=len(frees)):
                env = dict(zip(frees, combo))
                if evaluate(f, m, env):
                    return Sat(m, env)
    return Unsat()


def decide_entails(
    premise: Formula,
    conclusion: Formula,
    sig: Signature | None = None,
    ceiling: int | None = None,
) -> Holds | Countermodel:
    """Exact entailment: Holds iff premise & !conclusion is unsatisfiable.

    Shared free variables are read universally, as in the bounded engine:
    a countermodel provides one assignment falsifying the implication.
    """
    if sig is None:
        sig = _infer_signature((premise, conclusion))
    test = And(premise, Not(conclusion))
    verdict = decide_sat(test, sig, ceiling)
    if isinstance(verdict, Unsat):
        return Holds()
    assert evaluate(premise, verdict.model, dict(verdict.assignment))
    assert not evaluate(conclusion, verdict.model, dict(verdict.assignment))
    return Countermodel(verdict.model, verdict.assignment)


# ------------------------------------------------------------ normal form


@dataclass(frozen=True)
class CellConjunction:
    """Partial cell: per-predicate positive/negative marks, absent omitted."""

    literals: tuple[tuple[str, bool], ...]

    def formula(self, var: str) -> Formula:
        out = []
        for name, positive in self.literals:
            atom: Formula = Pred(name, (Var(var),))
            out.append(atom if positive else Not(atom))
        return big_and(out)


@dataclass(frozen=True)
class Disjunct:
    cell: CellConjunction
    residue: Formula


@dataclass(frozen=True)
class MonadicNormalForm:
    var: str
    disjuncts: tuple[Disjunct, ...]
    pure: bool

    def to_formula(self) -> Formula:
        parts = []
        for d in self.disjuncts:
            cell = d.cell.formula(self.var)
            if isinstance(d.residue, Verum):
                parts.append(cell)
            elif isinstance(cell, Verum):
                parts.append(d.residue)
            else:
                parts.append(And(cell, d.residue))
        return big_or(parts)


def _neg_units(g: Formula) -> Formula:
    """Negation that treats closed quantified subformulas as atoms."""
    if isinstance(g, Verum):
        return Falsum()
    if isinstance(g, Falsum):
        return Verum()
    if isinstance(g, And):
        return Or(_neg_units(g.left), _neg_units(g.right))
    if isinstance(g, Or):
        return And(_neg_units(g.left), _neg_units(g.right))
    if isinstance(g, Not):
        return g.body
    return Not(g)


def _dnf(g: Formula) -> list[tuple[Formula, ...]]:
    if isinstance(g, Verum):
        return [()]
    if isinstance(g, Falsum):
        return []
    if isinstance(g, Or):
        return _dnf(g.left) + _dnf(g.right)
    if isinstance(g, And):
        return [a + b for a in _dnf(g.left) for b in _dnf(g.right)]
    return [(g,)]


def _separate(g: Formula) -> Formula:
    """Rewrite an NNF monadic formula so every quantifier scope is a closed
    single-variable cell conjunction.  Uses nonemptiness: exists y. true
    is true."""
    if isinstance(g, And):
        return And(_separate(g.left), _separate(g.right))
    if isinstance(g, Or):
        return Or(_separate(g.left), _separate(g.right))
    if isinstance(g, Exists):
        body = _separate(g.body)
        parts = []
        for lits in _dnf(body):
            alpha = [l for l in lits if g.var in free_vars(l)]
            beta = [l for l in lits if g.var not in free_vars(l)]
            if alpha:
                beta.append(Exists(g.var, big_and(alpha)))
            parts.append(big_and(beta))
        return big_or(parts)
    if isinstance(g, Forall):
        flipped = _separate(Exists(g.var, nnf(Not(g.body))))
        return _neg_units(flipped)
    return g


def monadic_normal_form(
    f: Formula,
    var: str,
    sig: Signature | None = None,
    ceiling: int | None = None,
) -> MonadicNormalForm:
    """Equivalent disjunction of (cell on var, closed residue) pairs.

    Residues entailed by their cell collapse to true; disjuncts whose cell
    and residue jointly cannot hold are dropped; disjuncts with the same
    cell are merged by disjoining residues.  The form is pure when every
    surviving residue is true.
    """
    if not is_monadic(f):
        raise ValueError(f"not in the monadic fragment: {render(f)}")
    stray = free_vars(f) - {var}
    if stray:
        raise ValueError(
            "free variables beyond the target: " + ", ".join(sorted(stray))
        )
    if sig is None:
        sig = _infer_signature((f,))
    _check_fragment((f,), sig)
    order = {name: i for i, (name, _) in enumerate(sig.predicates)}
    f = rename_apart(f, frozenset(sig.names()) | {var})
    sep = _separate(nnf(f))
    merged: dict[tuple[tuple[str, bool], ...], list[Formula]] = {}
    for lits in _dnf(sep):
        marks: dict[str, bool] = {}
        residue_parts: list[Formula] = []
        contradictory = False
        for lit in lits:
            atom = lit.body if isinstance(lit, Not) else lit
            if (
                isinstance(atom, Pred)
                and len(atom.args) == 1
                and isinstance(atom.args[0], Var)
                and atom.args[0].name == var
            ):
                positive = not isinstance(lit, Not)
                if marks.get(atom.name, positive) != positive:
                    contradictory = True
                    break
                marks[atom.name] = positive
            else:
                residue_parts.append(lit)
        if contradictory:
            continue
        key = tuple(sorted(marks.items(), key=lambda kv: order[kv[0]]))
        merged.setdefault(key, []).append(big_and(residue_parts))
    disjuncts: list[Disjunct] = []
    for key, residues in merged.items():
        cell = CellConjunction(key)
        residue = big_or(residues) if len(residues) > 1 else residues[0]
        guard = cell.formula(var)
        if not isinstance(residue, Verum):
            if isinstance(decide_entails(guard, residue, sig, ceiling), Holds):
                residue = Verum()
        if isinstance(residue, Falsum):
            continue
        joint = And(guard, residue)
        if isinstance(decide_sat(joint, sig, ceiling), Unsat):
            continue
        disjuncts.append(Disjunct(cell, residue))
    pure = all(isinstance(d.residue, Verum) for d in disjuncts)
    out = MonadicNormalForm(var, tuple(disjuncts), pure)
    _check_equivalent(f, out, sig, ceiling)
    return out


def _check_equivalent(
    f: Formula, form: MonadicNormalForm, sig: Signature, ceiling: int | None
) -> None:
    g = form.to_formula()
    assert isinstance(decide_entails(f, g, sig, ceiling), Holds)
    assert isinstance(decide_entails(g, f, sig, ceiling), Holds)
