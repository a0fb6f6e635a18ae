"""End-to-end acceptance suite.

Each test covers one shipping criterion and prints a single pass/fail
line; run with `pytest tests/test_acceptance.py -s` to see the lines.
Every expected value is recomputed here from first principles (brute
enumeration, independent table checks) rather than taken from the
library under test.
"""

import contextlib
import dataclasses
import io
import json
import os
import random
import tempfile
import time
from collections import Counter

from helpers import (
    all_models,
    brute_magma_axiom_sets,
    canonical_monadic_models,
    chain_condition,
    cycle_model,
    inject_fault,
    naive_eval,
    random_laminar_cell_family,
    random_model,
    random_monadic_sentence,
    random_system,
)
from porphyry import (
    Accident,
    And,
    Countermodel,
    DefinitionSystem,
    Difference,
    Exists,
    ExtensionFamily,
    Forall,
    Holds,
    Iff,
    Laminar,
    Pred,
    PredicateDef,
    Property,
    ReconstructedSystem,
    Sat,
    Signature,
    Unsat,
    Var,
    big_and,
    bounded_entails,
    check_laminar,
    classify_formula,
    cli,
    decide_entails,
    decide_sat,
    evaluate,
    expand_model,
    extensions,
    generators,
    porphyry_tree,
    reconstruct,
    unfold,
    validate,
)
from porphyry.magma import DEMO_SYSTEM, demo_magma


def _run(n, budget, body):
    t0 = time.perf_counter()
    try:
        info = body()
    except BaseException:
        print(f"criterion {n}: FAIL ({time.perf_counter() - t0:.1f}s)")
        raise
    dt = time.perf_counter() - t0
    if dt >= budget:
        print(f"criterion {n}: FAIL (runtime {dt:.1f}s over budget {budget}s)")
        raise AssertionError(f"criterion {n} runtime {dt:.1f}s >= {budget}s")
    print(f"criterion {n}: PASS ({dt:.1f}s < {budget}s; {info})")


def _preds_in(f):
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Pred):
            out.add(g.name)
        for fl in dataclasses.fields(g):
            v = getattr(g, fl.name)
            if dataclasses.is_dataclass(v) and not isinstance(v, type):
                stack.append(v)
            elif isinstance(v, tuple):
                stack.extend(x for x in v if dataclasses.is_dataclass(x))
    return out


# 1. decide_sat vs exhaustive enumeration ------------------------------


def test_criterion_1_monadic_oracle_equivalence():
    def body():
        rng = random.Random(101)
        pools = {k: [f"M{i + 1}" for i in range(k)] for k in (1, 2, 3)}
        canon = {
            k: list(canonical_monadic_models(pools[k], 2**k))
            for k in (1, 2, 3)
        }
        assert [len(canon[k]) for k in (1, 2, 3)] == [5, 69, 12869]
        full = {
            k: [
                m
                for n in range(1, 2**k + 1)
                for m in all_models(tuple((p, 1) for p in pools[k]), (), n)
            ]
            for k in (1, 2)
        }
        stats = Counter()
        cross_checked = 0
        for i in range(1000):
            k = rng.choice([1, 1, 1, 2, 2, 2, 2, 3, 3, 3])
            preds = pools[k]
            sig = Signature(tuple((p, 1) for p in preds), (), False)
            f = random_monadic_sentence(rng, preds, max_q=2)
            verdict = decide_sat(f, sig)
            oracle = any(naive_eval(f, m) for m in canon[k])
            assert isinstance(verdict, (Sat, Unsat))
            assert isinstance(verdict, Sat) == oracle, (k, f)
            if isinstance(verdict, Sat):
                assert verdict.model.size <= 2**k
                assert evaluate(f, verdict.model, verdict.assignment)
                stats["sat"] += 1
            else:
                stats["unsat"] += 1
            if k <= 2 and cross_checked < 150:
                brute = any(naive_eval(f, m) for m in full[k])
                assert brute == oracle
                cross_checked += 1
        assert stats["sat"] + stats["unsat"] == 1000
        assert stats["unsat"] > 0 and stats["sat"] > 0
        return (
            f"1000 sentences, {stats['sat']} sat / {stats['unsat']} unsat, "
            f"{cross_checked} full-enumeration cross-checks"
        )

    _run(1, 120, body)


# 2. chain conditions are pairwise non-equivalent ----------------------


def test_criterion_2_chain_condition_separation():
    def body():
        sig = Signature((("R", 2),), ("c",), False)
        refutable = {
            (1, 2): (1, 2),
            (1, 3): (3, 1),
            (1, 4): (1, 4),
            (2, 3): (3, 2),
            (2, 4): (2, 4),
            (3, 4): (3, 4),
        }
        sizes = {}
        for (n, m), (a, b) in refutable.items():
            bound = m + 1
            v = bounded_entails(
                sig,
                [chain_condition(a)],
                chain_condition(b),
                bound,
                ceiling=5 * 2**25,
            )
            assert isinstance(v, Countermodel), (n, m)
            assert v.model.size <= bound
            assert evaluate(chain_condition(a), v.model, v.assignment)
            assert not evaluate(chain_condition(b), v.model, v.assignment)
            sizes[(n, m)] = v.model.size
            cyc = cycle_model(m + 1)
            assert (n + 1) % (m + 1) != 0
            assert evaluate(chain_condition(m), cyc)
            assert not evaluate(chain_condition(n), cyc)
        pairs = ", ".join(
            f"C{a}/C{b} size {s}" for (a, b), s in sorted(sizes.items())
        )
        return f"countermodels: {pairs}"

    _run(2, 600, body)


# 3. magma demo round trip --------------------------------------------


def test_criterion_3_magma_demo_round_trip():
    def body():
        axioms, total = brute_magma_axiom_sets(2)
        mon = axioms["Assoc"] & axioms["HasId"]
        grp = mon & axioms["HasInv"]
        ab = grp & axioms["Comm"]
        assert total == 17

        model, system = demo_magma(2)
        assert model.size == total
        got = {
            name: set(i for (i,) in elems)
            for name, elems in model.predicates.items()
        }
        assert got == axioms

        fam = extensions(system, model)
        sets = {name: set(v) for name, v in fam.as_dict().items()}
        assert sets == {"Mon": mon, "Grp": grp, "Ab": ab}
        assert ab <= grp <= mon
        assert check_laminar(fam) == Laminar()

        tree, unguarded = porphyry_tree(system)
        assert unguarded == ()
        assert tree.roots == ("Mon",)
        assert {(e.species, e.genus) for e in tree.edges} == {
            ("Grp", "Mon"),
            ("Ab", "Grp"),
        }

        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "magma.pdl")
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                code = cli.main(["demo", "magma", "--max-size", "2"])
            assert code == 0
            with open(path, "w") as fh:
                fh.write(buf.getvalue())
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                code = cli.main(
                    ["extensions", path, "--model", "magma", "--json"]
                )
            assert code == 0
            payload = json.loads(buf.getvalue())
            cli_sets = {
                e["name"]: set(e["elements"]) for e in payload["sets"]
            }
            assert cli_sets == {"Mon": mon, "Grp": grp, "Ab": ab}
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                code = cli.main(["tree", path, "--json"])
            assert code == 0
            payload = json.loads(buf.getvalue())
            assert {(e["species"], e["genus"]) for e in payload["edges"]} == {
                ("Grp", "Mon"),
                ("Ab", "Grp"),
            }
        return (
            f"{total} tables, |Mon|={len(mon)} |Grp|={len(grp)} "
            f"|Ab|={len(ab)}, laminar, chain Ab->Grp->Mon"
        )

    _run(3, 10, body)


# 4. laminar family reconstruction round trip --------------------------


def test_criterion_4_reconstruction_round_trip():
    def body():
        rng = random.Random(404)
        for _ in range(200):
            k = rng.choice([1, 2, 2, 3])
            preds = [f"M{i + 1}" for i in range(k)]
            sig = Signature(tuple((p, 1) for p in preds), (), False)
            model = random_model(rng, preds, rng.randint(1, 6))
            fam_sets = random_laminar_cell_family(rng, model, preds)
            fam = ExtensionFamily(sig, model, fam_sets)
            assert check_laminar(fam) == Laminar()
            r = reconstruct(fam)
            assert isinstance(r, ReconstructedSystem), fam_sets
            assert validate(r.system).valid
            got = extensions(r.system, model).as_dict()
            for name, elems in fam_sets:
                assert got[r.names[name]] == elems
        return "200 reconstruction round trips, extents equal set-for-set"

    _run(4, 60, body)


# 5. validation pinpoints an injected fault ----------------------------


def test_criterion_5_validation_completeness():
    def body():
        rng = random.Random(505)
        kinds = Counter()
        for _ in range(200):
            base = ["M1", "M2"][: rng.randint(1, 2)]
            d = random_system(rng, base, rng.randint(1, 4))
            assert validate(d).valid
            faulty, idx, kind = inject_fault(rng, d)
            report = validate(faulty)
            assert not report.valid
            assert {v.entry for v in report.violations} == {idx}, kind
            assert kind in {v.kind for v in report.violations}
            kinds[kind] += 1
        assert set(kinds) == {
            "self-reference",
            "forward-reference",
            "name-clash",
        }
        spread = ", ".join(f"{k} x{v}" for k, v in sorted(kinds.items()))
        return f"200 injected faults flagged exactly ({spread})"

    _run(5, 10, body)


# 6. unfolding is conservative ----------------------------------------


def test_criterion_6_unfold_conservativity():
    def body():
        rng = random.Random(606)
        base_models = {
            nb: [
                m
                for n in range(1, 5)
                for m in all_models(
                    tuple((f"M{i + 1}", 1) for i in range(nb)), (), n
                )
            ]
            for nb in (1, 2)
        }
        for _ in range(200):
            nb = rng.randint(1, 2)
            base = [f"M{i + 1}" for i in range(nb)]
            d = random_system(rng, base, rng.randint(1, 2))
            pool = base + [e.name for e in d.entries]
            f = random_monadic_sentence(rng, pool, max_q=2, depth=4)
            g = unfold(f, d)
            defined = {e.name for e in d.entries}
            assert not (_preds_in(g) & defined)

            axioms = big_and(
                tuple(
                    Forall(
                        e.params[0],
                        Iff(Pred(e.name, (Var(e.params[0]),)), e.body),
                    )
                    for e in d.entries
                )
            )
            full_sig = d.full_signature()
            fwd = decide_entails(And(axioms, f), g, full_sig)
            back = decide_entails(And(axioms, g), f, full_sig)
            assert isinstance(fwd, Holds), (f, g)
            assert isinstance(back, Holds), (f, g)

            for m in base_models[nb]:
                em, _ = expand_model(d, m)
                assert naive_eval(f, em) == naive_eval(g, em)
        return (
            "200 systems: unfold matches input by exact entailment and "
            "on every expanded model up to size 4"
        )

    _run(6, 120, body)


# 7. classification verdicts and generator partitioning ----------------


def _assert_entailment_brute(premise, conclusion, preds, max_size):
    for n in range(1, max_size + 1):
        for m in all_models(tuple((p, 1) for p in preds), (), n):
            for e in range(n):
                env = {"x": e}
                if naive_eval(premise, m, env):
                    assert naive_eval(conclusion, m, env)


def test_criterion_7_classification_and_generators():
    def body():
        verdict = classify_formula(Pred("Comm", (Var("x"),)), "Ab", DEMO_SYSTEM)
        assert isinstance(verdict, Difference)
        assert verdict.exact
        assert all(
            isinstance(v, Holds) for v in verdict.evidence.values()
        )
        magma_preds = ["Assoc", "HasId", "HasInv", "Comm"]
        delta = Pred("Comm", (Var("x"),))
        rho = Pred("Comm", (Var("x"),))
        _assert_entailment_brute(rho, delta, magma_preds, 2)
        _assert_entailment_brute(delta, rho, magma_preds, 2)

        toy_sig = Signature((("M1", 1), ("M2", 1)), (), False)
        body_sx = And(Pred("M1", (Var("x"),)), Pred("M2", (Var("x"),)))
        toy = DefinitionSystem(
            toy_sig, (PredicateDef("S", ("x",), body_sx),)
        )

        acc = classify_formula(Pred("M1", (Var("x"),)), "S", toy)
        assert isinstance(acc, Accident)
        assert isinstance(acc.evidence["psi_entails_rho"], Holds)
        cm = acc.evidence["rho_entails_psi"]
        assert isinstance(cm, Countermodel)
        assert cm.model.predicates["M1"] == frozenset({(0,)})
        assert cm.model.predicates["M2"] == frozenset()
        assert evaluate(Pred("M1", (Var("x"),)), cm.model, cm.assignment)
        assert not evaluate(body_sx, cm.model, cm.assignment)
        _assert_entailment_brute(
            body_sx, Pred("M1", (Var("x"),)), ["M1", "M2"], 3
        )

        prop = classify_formula(
            And(Pred("M2", (Var("x"),)), Pred("M1", (Var("x"),))), "S", toy
        )
        assert isinstance(prop, Property)
        assert all(isinstance(v, Holds) for v in prop.evidence.values())
        commuted = And(Pred("M2", (Var("x"),)), Pred("M1", (Var("x"),)))
        _assert_entailment_brute(body_sx, commuted, ["M1", "M2"], 3)
        _assert_entailment_brute(commuted, body_sx, ["M1", "M2"], 3)

        sig0 = Signature((("p", 0), ("q", 0)), (), False)
        empty0 = DefinitionSystem(sig0, ())
        p, q = Pred("p", ()), Pred("q", ())
        ts1 = generators([And(p, q), p, q], empty0)
        assert ts1.generator_flags == (True, False, False)
        assert not ts1.exact

        sig1 = Signature((("M1", 1),), (), False)
        empty1 = DefinitionSystem(sig1, ())
        all_m1 = Forall("x", Pred("M1", (Var("x"),)))
        some_m1 = Exists("x", Pred("M1", (Var("x"),)))
        ts2 = generators([all_m1, some_m1], empty1)
        assert ts2.generator_flags == (True, False)
        assert ts2.exact

        ts3 = generators([p, q], empty0)
        assert ts3.generator_flags == (False, False)

        eq_pair = generators(
            [all_m1, Forall("y", Pred("M1", (Var("y"),)))], empty1
        )
        assert eq_pair.generator_flags == (True, True)

        checked_pairs = 0
        for ts, sig in (
            (ts1, sig0),
            (ts2, sig1),
            (ts3, sig0),
            (eq_pair, sig1),
        ):
            flagged = [
                s
                for s, flag in zip(ts.sentences, ts.generator_flags)
                if flag
            ]
            for i, a in enumerate(flagged):
                for b in flagged[i + 1 :]:
                    for lhs, rhs in ((a, b), (b, a)):
                        if ts.exact:
                            assert isinstance(
                                decide_entails(lhs, rhs, sig), Holds
                            )
                        else:
                            v = bounded_entails(sig, [lhs], rhs, ts.bound)
                            assert not isinstance(v, Countermodel)
                    checked_pairs += 1
        return (
            "difference/accident/property verdicts as stated, generator "
            f"flags as stated, {checked_pairs} flagged pairs cross-entailed"
        )

    _run(7, 5, body)
