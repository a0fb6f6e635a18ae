"""Text format for signatures, definition systems, finite models, and claims.

Grammar sketch (comments run from `#` to end of line):

    file     := (sig | defsys | model | assert)*
    sig      := "sig" "{" ("pred" NAME "/" INT ";" | "const" NAME ";"
                           | "equality" ";")* "}"
    defsys   := "defsys" "{" (predicate-def | constant-def)* "}"
    pred-def := "def" NAME "(" [NAME ("," NAME)*] ")" ":=" formula ";"
    const-def:= "defconst" NAME ":=" NAME ";"
    model    := "model" NAME "{" "universe" INT ";" (NAME "=" extent ";")* "}"
    assert   := "assert" formula ";"

Formula connectives, loosest first: `<->`, `->`, `|`, `&`, `!`; the two
arrows associate to the right.  `forall x.` / `exists y.` bind as far right
as possible, so `!` and `&` written before a quantifier apply to its whole
body.  Atoms: `true`, `false`, `P(t, ...)`, bare `P` for a 0-ary predicate,
and `t = u` when the signature declares equality.

Definition bodies may mention symbols that are not declared (yet); ordering
and arity discipline is the validator's job, so broken systems still parse
and can be reported on.  Standalone formulas (assert, the formula-parsing
API) are checked against the signature at parse time.

Model blocks interpret base symbols only.  Unassigned predicates default to
the empty extent; every declared constant must be assigned.  A unary extent
lists bare elements (`M1 = {0, 2};`), higher arities list tuples, a 0-ary
predicate is true iff its extent is `{()}`, and a constant takes `c = 3;`
or `c = {3};`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .defsys import ConstantDef, Definition, DefinitionSystem, PredicateDef
from .semantics import FiniteModel
from .syntax import (
    And,
    Const,
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
    Signature,
    Term,
    Var,
    Verum,
    fresh_name,
    rename_apart,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_KEYWORDS = frozenset(
    "sig defsys model assert def defconst pred const equality universe "
    "forall exists true false".split()
)
_PUNCT = ("<->", "->", ":=", "(", ")", "{", "}", ",", ";", ".", "=", "!", "&", "|", "/")


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "KEYWORD" if word in _KEYWORDS else "NAME"
            toks.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                toks.append(Token("PUNCT", p, line, col))
                i += len(p)
                col += len(p)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(Token("EOF", "", line, col))
    return toks


@dataclass(frozen=True)
class ParsedFile:
    signature: Signature
    system: DefinitionSystem
    models: dict[str, FiniteModel]
    asserts: tuple[Formula, ...]


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0

    # ----------------------------------------------------- token plumbing

    def peek(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "NAME"

    def eat(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind == "NAME":
            got = t.text if t.kind != "EOF" else "end of input"
            raise ParseError(f"expected {text!r}, got {got!r}", t.line, t.col)
        return self.advance()

    def expect_name(self) -> Token:
        t = self.peek()
        if t.kind != "NAME":
            got = t.text if t.kind != "EOF" else "end of input"
            raise ParseError(f"expected a name, got {got!r}", t.line, t.col)
        return self.advance()

    def expect_int(self) -> int:
        t = self.peek()
        if t.kind != "INT":
            got = t.text if t.kind != "EOF" else "end of input"
            raise ParseError(f"expected an integer, got {got!r}", t.line, t.col)
        self.advance()
        return int(t.text)

    def fail(self, message: str) -> ParseError:
        t = self.peek()
        return ParseError(message, t.line, t.col)

    # -------------------------------------------------------- file level

    def parse_file(self) -> ParsedFile:
        sig: Signature | None = None
        entries: list[Definition] = []
        models: dict[str, FiniteModel] = {}
        asserts: list[Formula] = []
        while self.peek().kind != "EOF":
            t = self.peek()
            if t.text == "sig":
                if sig is not None:
                    raise self.fail("signature already declared")
                self.advance()
                sig = self.parse_sig_body()
            elif t.text == "defsys":
                self.advance()
                entries.extend(self.parse_defsys_body(self.current_sig(sig), entries))
            elif t.text == "model":
                self.advance()
                name, m = self.parse_model(self.current_sig(sig))
                if name in models:
                    raise ParseError(f"model {name} already declared", t.line, t.col)
                models[name] = m
            elif t.text == "assert":
                self.advance()
                system = DefinitionSystem(self.current_sig(sig), tuple(entries))
                f = self.formula(_Scope(system, strict=True))
                self.expect(";")
                reserved = system.base.names() | {e.name for e in system.entries}
                asserts.append(rename_apart(f, frozenset(reserved)))
            else:
                raise self.fail(
                    "expected 'sig', 'defsys', 'model', or 'assert'"
                )
        base = self.current_sig(sig)
        return ParsedFile(
            signature=base,
            system=DefinitionSystem(base, tuple(entries)),
            models=models,
            asserts=tuple(asserts),
        )

    @staticmethod
    def current_sig(sig: Signature | None) -> Signature:
        return sig if sig is not None else Signature((), (), False)

    def parse_sig_body(self) -> Signature:
        self.expect("{")
        preds: list[tuple[str, int]] = []
        consts: list[str] = []
        equality = False
        seen: set[str] = set()
        while not self.eat("}"):
            t = self.peek()
            if self.eat("pred"):
                name = self.expect_name()
                self.expect("/")
                arity = self.expect_int()
                if name.text in seen:
                    raise ParseError(
                        f"symbol {name.text} already declared", name.line, name.col
                    )
                seen.add(name.text)
                preds.append((name.text, arity))
            elif self.eat("const"):
                name = self.expect_name()
                if name.text in seen:
                    raise ParseError(
                        f"symbol {name.text} already declared", name.line, name.col
                    )
                seen.add(name.text)
                consts.append(name.text)
            elif self.eat("equality"):
                equality = True
            else:
                got = t.text if t.kind != "EOF" else "end of input"
                raise ParseError(
                    f"expected 'pred', 'const', or 'equality', got {got!r}",
                    t.line,
                    t.col,
                )
            self.expect(";")
        return Signature(tuple(preds), tuple(consts), equality)

    def parse_defsys_body(
        self, sig: Signature, earlier: list[Definition]
    ) -> list[Definition]:
        self.expect("{")
        out: list[Definition] = []
        while not self.eat("}"):
            system = DefinitionSystem(sig, tuple(earlier) + tuple(out))
            if self.eat("def"):
                name = self.expect_name()
                self.expect("(")
                params: list[str] = []
                if not self.at(")"):
                    while True:
                        p = self.expect_name()
                        if p.text in params:
                            raise ParseError(
                                f"duplicate parameter {p.text}", p.line, p.col
                            )
                        self.check_binder(p, system)
                        params.append(p.text)
                        if not self.eat(","):
                            break
                self.expect(")")
                self.expect(":=")
                scope = _Scope(system, strict=False)
                scope.bound.update(params)
                body = self.formula(scope)
                self.expect(";")
                out.append(PredicateDef(name.text, tuple(params), body))
            elif self.eat("defconst"):
                name = self.expect_name()
                self.expect(":=")
                rhs = self.expect_name()
                known = set(sig.constants) | {
                    e.name
                    for e in list(earlier) + out
                    if isinstance(e, ConstantDef)
                }
                if rhs.text not in known:
                    raise ParseError(
                        f"{rhs.text} is not a declared constant", rhs.line, rhs.col
                    )
                self.expect(";")
                var = fresh_name("y", sig.names() | {name.text, rhs.text})
                out.append(
                    ConstantDef(name.text, var, Eq(Var(var), Const(rhs.text)))
                )
            else:
                raise self.fail("expected 'def' or 'defconst'")
        return out

    def check_binder(self, tok: Token, system: DefinitionSystem) -> None:
        declared = system.base.names() | {e.name for e in system.entries}
        if tok.text in declared:
            raise ParseError(
                f"{tok.text} shadows a declared symbol", tok.line, tok.col
            )

    # ------------------------------------------------------------ models

    def parse_model(self, sig: Signature) -> tuple[str, FiniteModel]:
        name = self.expect_name()
        self.expect("{")
        kw = self.peek()
        if not self.eat("universe"):
            raise ParseError("model must open with 'universe'", kw.line, kw.col)
        size = self.expect_int()
        if size < 1:
            raise ParseError("universe must have at least 1 element", kw.line, kw.col)
        self.expect(";")
        preds: dict[str, frozenset[tuple[int, ...]]] = {}
        consts: dict[str, int] = {}
        while not self.eat("}"):
            sym = self.expect_name()
            arity = sig.arity(sym.text)
            is_const = sig.is_constant(sym.text)
            if arity is None and not is_const:
                raise ParseError(
                    f"{sym.text} is not a base signature symbol", sym.line, sym.col
                )
            if sym.text in preds or sym.text in consts:
                raise ParseError(
                    f"{sym.text} assigned twice", sym.line, sym.col
                )
            self.expect("=")
            if is_const:
                consts[sym.text] = self.parse_const_value(size)
            else:
                preds[sym.text] = self.parse_extent(size, arity)
            self.expect(";")
        for pname, arity in sig.predicates:
            preds.setdefault(pname, frozenset())
        for cname in sig.constants:
            if cname not in consts:
                raise ParseError(
                    f"constant {cname} not interpreted in model {name.text}",
                    name.line,
                    name.col,
                )
        return name.text, FiniteModel(size, consts, preds)

    def parse_element(self, size: int) -> int:
        t = self.peek()
        v = self.expect_int()
        if not 0 <= v < size:
            raise ParseError(
                f"element {v} outside universe of size {size}", t.line, t.col
            )
        return v

    def parse_const_value(self, size: int) -> int:
        if self.eat("{"):
            v = self.parse_element(size)
            self.expect("}")
            return v
        return self.parse_element(size)

    def parse_extent(self, size: int, arity: int) -> frozenset[tuple[int, ...]]:
        self.expect("{")
        tuples: set[tuple[int, ...]] = set()
        if self.eat("}"):
            return frozenset()
        while True:
            t = self.peek()
            if self.eat("("):
                elems: list[int] = []
                if not self.at(")"):
                    while True:
                        elems.append(self.parse_element(size))
                        if not self.eat(","):
                            break
                self.expect(")")
                tup = tuple(elems)
            else:
                tup = (self.parse_element(size),)
            if len(tup) != arity:
                raise ParseError(
                    f"tuple of length {len(tup)} for a /{arity} predicate",
                    t.line,
                    t.col,
                )
            tuples.add(tup)
            if not self.eat(","):
                break
        self.expect("}")
        return frozenset(tuples)

    # ---------------------------------------------------------- formulas

    def formula(self, scope: "_Scope") -> Formula:
        return self.iff(scope)

    def iff(self, scope: "_Scope") -> Formula:
        left = self.implies(scope)
        if self.eat("<->"):
            return Iff(left, self.iff(scope))
        return left

    def implies(self, scope: "_Scope") -> Formula:
        left = self.disj(scope)
        if self.eat("->"):
            return Implies(left, self.implies(scope))
        return left

    def disj(self, scope: "_Scope") -> Formula:
        left = self.conj(scope)
        while self.eat("|"):
            left = Or(left, self.conj(scope))
        return left

    def conj(self, scope: "_Scope") -> Formula:
        left = self.unary(scope)
        while self.eat("&"):
            left = And(left, self.unary(scope))
        return left

    def unary(self, scope: "_Scope") -> Formula:
        if self.eat("!"):
            return Not(self.unary(scope))
        t = self.peek()
        if t.text in ("forall", "exists") and t.kind == "KEYWORD":
            self.advance()
            var = self.expect_name()
            if var.text in scope.bound:
                raise ParseError(
                    f"{var.text} is already bound here", var.line, var.col
                )
            self.check_binder(var, scope.system)
            self.expect(".")
            scope.bound.add(var.text)
            try:
                body = self.formula(scope)
            finally:
                scope.bound.discard(var.text)
            cls = Forall if t.text == "forall" else Exists
            return cls(var.text, body)
        return self.atom(scope)

    def atom(self, scope: "_Scope") -> Formula:
        t = self.peek()
        if self.eat("("):
            inner = self.formula(scope)
            self.expect(")")
            return inner
        if t.kind == "KEYWORD" and t.text in ("true", "false"):
            self.advance()
            return Verum() if t.text == "true" else Falsum()
        if t.kind != "NAME":
            got = t.text if t.kind != "EOF" else "end of input"
            raise ParseError(f"expected a formula, got {got!r}", t.line, t.col)
        name = self.advance()
        if self.eat("("):
            args: list[Term] = []
            if not self.at(")"):
                while True:
                    args.append(self.term(scope))
                    if not self.eat(","):
                        break
            self.expect(")")
            scope.check_application(name, len(args), self)
            return Pred(name.text, tuple(args))
        if self.at("="):
            left = scope.resolve_term(name, self)
            self.advance()
            right = self.term(scope)
            scope.check_equality(name, self)
            return Eq(left, right)
        return scope.bare_name(name, self)

    def term(self, scope: "_Scope") -> Term:
        name = self.expect_name()
        return scope.resolve_term(name, self)


class _Scope:
    """Name resolution for one formula.

    strict: applications must match a declared predicate and bare names a
    0-ary one.  Non-strict (definition bodies) builds atoms as written and
    leaves discipline to the system validator.
    """

    def __init__(self, system: DefinitionSystem, strict: bool):
        self.system = system
        self.strict = strict
        self.bound: set[str] = set()
        # First occurrence wins, so files with clashing names still parse
        # and the validator gets to report them.
        self.pred_arity: dict[str, int] = {}
        self.const_names: set[str] = set()
        for name, arity in system.base.predicates:
            self.pred_arity.setdefault(name, arity)
        self.const_names.update(system.base.constants)
        for e in system.entries:
            if e.name in self.pred_arity or e.name in self.const_names:
                continue
            if isinstance(e, PredicateDef):
                self.pred_arity[e.name] = len(e.params)
            else:
                self.const_names.add(e.name)
        self.equality_ok = system.base.equality

    def resolve_term(self, tok: Token, p: _Parser) -> Term:
        if tok.text in self.bound:
            return Var(tok.text)
        if tok.text in self.const_names:
            return Const(tok.text)
        if tok.text in self.pred_arity:
            raise ParseError(
                f"predicate {tok.text} used as a term", tok.line, tok.col
            )
        return Var(tok.text)

    def check_application(self, tok: Token, arity: int, p: _Parser) -> None:
        if not self.strict:
            return
        declared = self.pred_arity.get(tok.text)
        if declared is None:
            raise ParseError(f"unknown predicate {tok.text}", tok.line, tok.col)
        if declared != arity:
            raise ParseError(
                f"{tok.text} is declared /{declared}, applied to {arity} "
                "arguments",
                tok.line,
                tok.col,
            )

    def check_equality(self, tok: Token, p: _Parser) -> None:
        if not self.equality_ok:
            raise ParseError(
                "equality used but not declared in the signature",
                tok.line,
                tok.col,
            )

    def bare_name(self, tok: Token, p: _Parser) -> Formula:
        declared = self.pred_arity.get(tok.text)
        if declared == 0:
            return Pred(tok.text, ())
        if self.strict:
            if declared is not None:
                raise ParseError(
                    f"{tok.text} is declared /{declared} and needs arguments",
                    tok.line,
                    tok.col,
                )
            raise ParseError(
                f"unknown predicate {tok.text}", tok.line, tok.col
            )
        if tok.text in self.bound or tok.text in self.const_names:
            raise ParseError(
                f"{tok.text} is a term, not a formula", tok.line, tok.col
            )
        return Pred(tok.text, ())


def parse(text: str) -> ParsedFile:
    return _Parser(text).parse_file()


def parse_path(path: str) -> ParsedFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def parse_formula(
    text: str,
    sig: Signature,
    system: DefinitionSystem | None = None,
) -> Formula:
    """Parse one standalone formula against a signature.

    Defined symbols of `system` are usable.  Names in term position that are
    neither bound nor declared constants become free variables.  Bound names
    are renamed apart from each other and from every declared name.
    """
    if system is None:
        system = DefinitionSystem(sig, ())
    p = _Parser(text)
    f = p.formula(_Scope(system, strict=True))
    end = p.peek()
    if end.kind != "EOF":
        raise ParseError(f"trailing input {end.text!r}", end.line, end.col)
    reserved = system.base.names() | {e.name for e in system.entries}
    return rename_apart(f, frozenset(reserved))


def parse_formulas_infer(
    texts: Sequence[str],
) -> tuple[Signature, tuple[Formula, ...]]:
    """Parse formulas with no declared signature, inferring one jointly.

    Applied names become predicates (consistent arity required), names in
    term position that are never bound become constants, and `=` switches
    equality on.  Declaration order follows first appearance across texts.
    """
    preds: dict[str, int] = {}
    consts: dict[str, None] = {}
    equality = False

    class _InferScope(_Scope):
        def __init__(self) -> None:
            super().__init__(
                DefinitionSystem(Signature((), (), False), ()), strict=False
            )

        def resolve_term(self, tok: Token, p: _Parser) -> Term:
            if tok.text in self.bound:
                return Var(tok.text)
            if tok.text in preds:
                raise ParseError(
                    f"{tok.text} used both as predicate and term",
                    tok.line,
                    tok.col,
                )
            consts.setdefault(tok.text, None)
            return Const(tok.text)

        def check_application(self, tok: Token, arity: int, p: _Parser) -> None:
            if tok.text in consts:
                raise ParseError(
                    f"{tok.text} used both as predicate and term",
                    tok.line,
                    tok.col,
                )
            seen = preds.setdefault(tok.text, arity)
            if seen != arity:
                raise ParseError(
                    f"{tok.text} applied with arities {seen} and {arity}",
                    tok.line,
                    tok.col,
                )

        def check_equality(self, tok: Token, p: _Parser) -> None:
            nonlocal equality
            equality = True

        def bare_name(self, tok: Token, p: _Parser) -> Formula:
            if tok.text in self.bound:
                raise ParseError(
                    f"{tok.text} is a term, not a formula", tok.line, tok.col
                )
            if tok.text in consts:
                raise ParseError(
                    f"{tok.text} used both as predicate and term",
                    tok.line,
                    tok.col,
                )
            self.check_application(tok, 0, p)
            return Pred(tok.text, ())

    raw: list[Formula] = []
    for text in texts:
        p = _Parser(text)
        f = p.formula(_InferScope())
        end = p.peek()
        if end.kind != "EOF":
            raise ParseError(f"trailing input {end.text!r}", end.line, end.col)
        raw.append(f)
    sig = Signature(
        tuple(preds.items()), tuple(consts), equality
    )
    out = tuple(rename_apart(f, sig.names()) for f in raw)
    return sig, out
