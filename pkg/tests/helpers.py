"""Shared oracles and random generators for the test suite.

Everything here is written from first principles so the package is
checked against independent logic rather than against itself.
"""

import itertools

from porphyry import (
    And,
    Const,
    DefinitionSystem,
    Eq,
    Exists,
    Falsum,
    FiniteModel,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    PredicateDef,
    Signature,
    Var,
    Verum,
)

_MISSING = object()


def term_value(t, model, env):
    if isinstance(t, Var):
        return env[t.name]
    return model.constants[t.name]


def naive_eval(f, model, env=None):
    """Plain recursive truth evaluation, independent of the package's."""
    if env is None:
        env = {}
    if isinstance(f, Verum):
        return True
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Pred):
        args = tuple(term_value(t, model, env) for t in f.args)
        return args in model.predicates.get(f.name, frozenset())
    if isinstance(f, Eq):
        return term_value(f.left, model, env) == term_value(f.right, model, env)
    if isinstance(f, Not):
        return not naive_eval(f.body, model, env)
    if isinstance(f, And):
        return naive_eval(f.left, model, env) and naive_eval(f.right, model, env)
    if isinstance(f, Or):
        return naive_eval(f.left, model, env) or naive_eval(f.right, model, env)
    if isinstance(f, Implies):
        return (not naive_eval(f.left, model, env)) or naive_eval(f.right, model, env)
    if isinstance(f, Iff):
        return naive_eval(f.left, model, env) == naive_eval(f.right, model, env)
    if isinstance(f, (Forall, Exists)):
        keep = env.get(f.var, _MISSING)
        want = isinstance(f, Exists)
        result = not want
        for e in range(model.size):
            env[f.var] = e
            if naive_eval(f.body, model, env) == want:
                result = want
                break
        if keep is _MISSING:
            env.pop(f.var, None)
        else:
            env[f.var] = keep
        return result
    raise TypeError(f"unexpected formula node {f!r}")


def _subsets(space):
    for bits in itertools.product((False, True), repeat=len(space)):
        yield frozenset(t for t, b in zip(space, bits) if b)


def all_models(preds, consts, size):
    """Every model of the signature on carrier 0..size-1, brute force."""
    names = [n for n, _ in preds]
    spaces = [
        list(itertools.product(range(size), repeat=a)) for _, a in preds
    ]
    out = []
    for extents in itertools.product(*[list(_subsets(s)) for s in spaces]):
        for values in itertools.product(range(size), repeat=len(consts)):
            out.append(
                FiniteModel(
                    size, dict(zip(consts, values)), dict(zip(names, extents))
                )
            )
    return out


def weak_compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in weak_compositions(total - head, parts - 1):
            yield (head,) + tail


def canonical_monadic_models(pred_names, max_size):
    """One model per isomorphism class: elements grouped by cell."""
    k = len(pred_names)
    for n in range(1, max_size + 1):
        for counts in weak_compositions(n, 1 << k):
            ext = {p: set() for p in pred_names}
            e = 0
            for cell, cnt in enumerate(counts):
                for _ in range(cnt):
                    for i in range(k):
                        if cell >> i & 1:
                            ext[pred_names[i]].add((e,))
                    e += 1
            yield FiniteModel(
                n, {}, {p: frozenset(v) for p, v in ext.items()}
            )


def random_formula(rng, preds, scope=(), max_q=2, depth=5):
    """Random quantified boolean combination of unary atoms."""

    def leaf(scope):
        if scope and rng.random() < 0.8:
            return Pred(rng.choice(preds), (Var(rng.choice(scope)),))
        return Verum() if rng.random() < 0.5 else Falsum()

    def go(budget, scope, depth):
        if depth == 0 or not preds:
            return leaf(scope)
        opts = []
        if scope:
            opts += ["atom"] * 4
        if budget:
            opts += ["quant"] * 3
        opts += ["const", "not", "not", "bin", "bin", "bin"]
        kind = rng.choice(opts)
        if kind == "atom":
            return Pred(rng.choice(preds), (Var(rng.choice(scope)),))
        if kind == "quant":
            v = f"v{len(scope)}"
            body = go(budget - 1, scope + [v], depth - 1)
            return rng.choice([Forall, Exists])(v, body)
        if kind == "const":
            return Verum() if rng.random() < 0.5 else Falsum()
        if kind == "not":
            return Not(go(budget, scope, depth - 1))
        op = rng.choice([And, Or, Implies, Iff])
        return op(go(budget, scope, depth - 1), go(budget, scope, depth - 1))

    return go(max_q, list(scope), depth)


def random_monadic_sentence(rng, preds, max_q=2, depth=5):
    return random_formula(rng, preds, scope=(), max_q=max_q, depth=depth)


def random_system(rng, base_preds, n_defs, max_q=1, depth=3):
    """Valid-by-construction system of unary definitions over unary bases."""
    sig = Signature(tuple((p, 1) for p in base_preds), (), False)
    entries = []
    available = list(base_preds)
    for i in range(n_defs):
        name = f"D{i}"
        body = random_formula(
            rng, available, scope=("x",), max_q=max_q, depth=depth
        )
        entries.append(PredicateDef(name, ("x",), body))
        available.append(name)
    return DefinitionSystem(sig, tuple(entries))


def inject_fault(rng, d):
    """Plant one reference fault; returns (system, entry index, kind)."""
    entries = list(d.entries)
    kinds = ["self-reference", "name-clash"]
    if len(entries) > 1:
        kinds.append("forward-reference")
    kind = rng.choice(kinds)
    if kind == "self-reference":
        i = rng.randrange(len(entries))
        e = entries[i]
        bad = Or(e.body, Pred(e.name, tuple(Var(p) for p in e.params)))
        entries[i] = PredicateDef(e.name, e.params, bad)
        return DefinitionSystem(d.base, tuple(entries)), i, kind
    if kind == "forward-reference":
        i = rng.randrange(len(entries) - 1)
        j = rng.randrange(i + 1, len(entries))
        e = entries[i]
        bad = Or(e.body, Pred(entries[j].name, (Var(e.params[0]),)))
        entries[i] = PredicateDef(e.name, e.params, bad)
        return DefinitionSystem(d.base, tuple(entries)), i, kind
    h = rng.randrange(len(entries))
    dup = PredicateDef(
        entries[h].name,
        ("x",),
        random_formula(rng, list(d.base.names()), scope=("x",), max_q=0, depth=2),
    )
    entries.append(dup)
    return DefinitionSystem(d.base, tuple(entries)), len(entries) - 1, kind


def random_model(rng, pred_names, size):
    preds = {
        p: frozenset((e,) for e in range(size) if rng.random() < 0.5)
        for p in pred_names
    }
    return FiniteModel(size, {}, preds)


def model_cells(model, pred_names):
    """Element classes sharing the same base predicate memberships."""
    cells = {}
    for e in range(model.size):
        key = tuple((e,) in model.predicates[p] for p in pred_names)
        cells.setdefault(key, set()).add(e)
    return [frozenset(v) for v in cells.values()]


def random_laminar_cell_family(rng, model, pred_names):
    """Nested-or-disjoint family of cell unions, all distinct and nonempty."""
    atoms = model_cells(model, pred_names)
    sets = []

    def grow(pool, may_take_all):
        if not pool:
            return
        if may_take_all and rng.random() < 0.6:
            sets.append(frozenset().union(*pool))
        if len(pool) <= 1:
            return
        rng.shuffle(pool)
        cut = rng.randrange(1, len(pool))
        grow(pool[:cut], True)
        grow(pool[cut:], True)

    grow(list(atoms), rng.random() < 0.8)
    if not sets:
        sets.append(frozenset().union(*atoms))
    named = []
    for i, s in enumerate(sets):
        name = chr(ord("A") + i) if i < 26 else f"S{i}"
        named.append((name, s))
    return tuple(named)


def chain_condition(n):
    """Closed R-walk of length n+1 through c, inner stops quantified."""
    vs = [f"x{i}" for i in range(1, n + 1)]
    atoms = [Pred("R", (Const("c"), Var(vs[0])))]
    for a, b in zip(vs, vs[1:]):
        atoms.append(Pred("R", (Var(a), Var(b))))
    atoms.append(Pred("R", (Var(vs[-1]), Const("c"))))
    body = atoms[0]
    for at in atoms[1:]:
        body = And(body, at)
    for v in reversed(vs):
        body = Exists(v, body)
    return body


def cycle_model(length, c=0):
    edges = frozenset((i, (i + 1) % length) for i in range(length))
    return FiniteModel(length, {"c": c}, {"R": edges})


def brute_magma_axiom_sets(max_size):
    """Recompute which operation tables satisfy each axiom, by index."""
    idx = 0
    sets = {"Assoc": set(), "HasId": set(), "HasInv": set(), "Comm": set()}
    for n in range(1, max_size + 1):
        dom = range(n)
        for flat in itertools.product(dom, repeat=n * n):
            op = {(i, j): flat[i * n + j] for i in dom for j in dom}
            assoc = all(
                op[op[i, j], k] == op[i, op[j, k]]
                for i in dom
                for j in dom
                for k in dom
            )
            ids = [
                e
                for e in dom
                if all(op[e, i] == i and op[i, e] == i for i in dom)
            ]
            inv = bool(ids) and all(
                any(op[i, j] == ids[0] and op[j, i] == ids[0] for j in dom)
                for i in dom
            )
            comm = all(op[i, j] == op[j, i] for i in dom for j in dom)
            for name, val in (
                ("Assoc", assoc),
                ("HasId", bool(ids)),
                ("HasInv", inv),
                ("Comm", comm),
            ):
                if val:
                    sets[name].add(idx)
            idx += 1
    return sets, idx
