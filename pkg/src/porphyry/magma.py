"""Finite testbed: the universe of small binary operation tables.

Each element of the demo model is one operation table on a carrier of size
1 up to max_size, ordered by carrier size and then lexicographically by the
flattened table.  Four base predicates are computed by exhaustive checks,
and the definition system layers monoid, group, and abelian group on top.
Inverses are checked relative to the two-sided identity when one exists
(it is then unique), matching the usual monoid-to-group condition.
"""

from __future__ import annotations

from itertools import product

from .defsys import DefinitionSystem, PredicateDef
from .semantics import FiniteModel
from .syntax import And, Pred, Signature, Var

MAX_DEMO_SIZE = 3

Table = tuple[tuple[int, ...], ...]


def _tables(max_size: int) -> list[Table]:
    out: list[Table] = []
    for n in range(1, max_size + 1):
        for flat in product(range(n), repeat=n * n):
            out.append(
                tuple(tuple(flat[r * n : (r + 1) * n]) for r in range(n))
            )
    return out


def _associative(t: Table) -> bool:
    n = len(t)
    return all(
        t[t[a][b]][c] == t[a][t[b][c]]
        for a in range(n)
        for b in range(n)
        for c in range(n)
    )


def _identity(t: Table) -> int | None:
    n = len(t)
    for e in range(n):
        if all(t[e][a] == a and t[a][e] == a for a in range(n)):
            return e
    return None


def _has_inverses(t: Table) -> bool:
    e = _identity(t)
    if e is None:
        return False
    n = len(t)
    return all(
        any(t[a][b] == e and t[b][a] == e for b in range(n)) for a in range(n)
    )


def _commutative(t: Table) -> bool:
    n = len(t)
    return all(t[a][b] == t[b][a] for a in range(n) for b in range(n))


BASE_SIGNATURE = Signature(
    (("Assoc", 1), ("HasId", 1), ("HasInv", 1), ("Comm", 1)), (), False
)


def _u(name: str) -> Pred:
    return Pred(name, (Var("x"),))


DEMO_SYSTEM = DefinitionSystem(
    BASE_SIGNATURE,
    (
        PredicateDef("Mon", ("x",), And(_u("Assoc"), _u("HasId"))),
        PredicateDef("Grp", ("x",), And(_u("Mon"), _u("HasInv"))),
        PredicateDef("Ab", ("x",), And(_u("Grp"), _u("Comm"))),
    ),
)


def demo_magma(max_size: int) -> tuple[FiniteModel, DefinitionSystem]:
    if not 1 <= max_size <= MAX_DEMO_SIZE:
        raise ValueError(f"max_size must be between 1 and {MAX_DEMO_SIZE}")
    tables = _tables(max_size)
    checks = {
        "Assoc": _associative,
        "HasId": lambda t: _identity(t) is not None,
        "HasInv": _has_inverses,
        "Comm": _commutative,
    }
    extents = {
        name: frozenset((i,) for i, t in enumerate(tables) if check(t))
        for name, check in checks.items()
    }
    return FiniteModel(len(tables), {}, extents), DEMO_SYSTEM


def demo_dsl(max_size: int) -> str:
    """The demo as a complete re-parseable source file."""
    model, system = demo_magma(max_size)
    parts = [
        f"# all binary operation tables on carriers of size 1..{max_size}",
        system.base.to_dsl(),
        "defsys {",
        *(f"  {e.to_dsl()}" for e in system.entries),
        "}",
        model.to_dsl("magma", system.base),
    ]
    return "\n".join(parts) + "\n"
