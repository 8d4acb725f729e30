"""Typed-STRIPS core: parsing, grounding, and state-transition semantics.

Supported fragment: typed object hierarchies, conjunctive preconditions and
goals, positive/negative literals, no conditional effects, no equality, no
numeric fluents.  Identifiers are case-insensitive and stored lower-cased.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

# A ground atom is (predicate-name, arg-tuple); a state is a frozenset of them.
Atom = tuple[str, tuple[str, ...]]
State = frozenset[Atom]

_IDENT_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_-]*\Z")

ROOT_TYPE = "object"


class PddlError(Exception):
    """Parse or well-formedness failure.

    `code` distinguishes error classes for programmatic handling:
    lexical, undeclared-type, duplicate-name, ill-typed, unsupported-construct,
    bad-identifier, syntax, domain-mismatch, closed-world, unknown-schema.
    """

    def __init__(self, code: str, message: str, line: int | None = None):
        self.code = code
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{code}: {message}{where}")


class PreconditionViolated(Exception):
    """Raised by `apply` when the action's preconditions do not hold."""

    def __init__(self, action: "GroundAction", violated: frozenset["Literal"]):
        self.action = action
        self.violated = violated
        lits = ", ".join(sorted(str(l) for l in violated))
        super().__init__(f"cannot apply {action}: violated {{{lits}}}")


@dataclass(frozen=True, order=True)
class Literal:
    """Possibly negated predicate application; args are variables or objects."""

    predicate: str
    args: tuple[str, ...]
    positive: bool = True

    def negated(self) -> "Literal":
        return Literal(self.predicate, self.args, not self.positive)

    def substitute(self, binding: dict[str, str]) -> "Literal":
        return Literal(
            self.predicate,
            tuple(binding.get(a, a) for a in self.args),
            self.positive,
        )

    @property
    def atom(self) -> Atom:
        return (self.predicate, self.args)

    def __str__(self) -> str:
        inner = f"({self.predicate}{''.join(' ' + a for a in self.args)})"
        return inner if self.positive else f"(not {inner})"


@dataclass(frozen=True)
class PredicateSchema:
    name: str
    params: tuple[tuple[str, str], ...]  # (variable, type) pairs

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class ActionSchema:
    name: str
    params: tuple[tuple[str, str], ...]
    preconditions: frozenset[Literal]
    effects: frozenset[Literal]

    @property
    def arity(self) -> int:
        return len(self.params)

    def param_binding(self, args: tuple[str, ...]) -> dict[str, str]:
        return {var: obj for (var, _), obj in zip(self.params, args)}


@dataclass(frozen=True)
class GroundAction:
    name: str
    args: tuple[str, ...]

    def __str__(self) -> str:
        return f"({self.name}{''.join(' ' + a for a in self.args)})"


@dataclass(frozen=True)
class Domain:
    name: str
    types: tuple[tuple[str, str | None], ...]  # (type, parent or None for root)
    predicates: tuple[PredicateSchema, ...]
    actions: tuple[ActionSchema, ...]

    def predicate(self, name: str) -> PredicateSchema:
        for p in self.predicates:
            if p.name == name:
                return p
        raise PddlError("unknown-schema", f"no predicate named {name!r}")

    def action(self, name: str) -> ActionSchema:
        for a in self.actions:
            if a.name == name:
                return a
        raise PddlError("unknown-schema", f"no action named {name!r}")

    def has_action(self, name: str) -> bool:
        return any(a.name == name for a in self.actions)

    def is_subtype(self, t: str, ancestor: str) -> bool:
        """True iff `t` equals `ancestor` or descends from it."""
        if ancestor == ROOT_TYPE:
            return True
        parents = dict(self.types)
        cur: str | None = t
        while cur is not None:
            if cur == ancestor:
                return True
            cur = parents.get(cur)
        return False


@dataclass(frozen=True)
class Problem:
    name: str
    domain_name: str
    objects: tuple[tuple[str, str], ...]  # (object, type) pairs
    init: State
    goal: frozenset[Literal]

    def object_type(self, obj: str) -> str:
        for name, t in self.objects:
            if name == obj:
                return t
        raise PddlError("ill-typed", f"unknown object {obj!r}")


# ── Tokenizer ────────────────────────────────────────────────────────────────

@dataclass
class _Token:
    value: str  # '(' , ')' or lower-cased word
    line: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n, line = 0, len(text), 1
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
        elif ch in " \t\r":
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append(_Token(ch, line))
            i += 1
        else:
            j = i
            while j < n and text[j] not in " \t\r\n();":
                j += 1
            word = text[i:j].lower()
            if not re.match(r"[:?a-zA-Z0-9_=<>.-]+\Z", word):
                raise PddlError("lexical", f"bad token {word!r}", line)
            tokens.append(_Token(word, line))
            i = j
    return tokens


class _Parser:
    """Recursive-descent s-expression reader over the token stream."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def line(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos].line
        return self.tokens[-1].line if self.tokens else 1

    def peek(self) -> str | None:
        return self.tokens[self.pos].value if self.pos < len(self.tokens) else None

    def next(self) -> str:
        if self.pos >= len(self.tokens):
            raise PddlError("syntax", "unexpected end of input", self.line)
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok.value

    def expect(self, value: str) -> None:
        line = self.line
        got = self.next()
        if got != value:
            raise PddlError("syntax", f"expected {value!r}, got {got!r}", line)

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)


def _check_identifier(name: str, line: int) -> str:
    if not _IDENT_RE.match(name):
        raise PddlError("bad-identifier", f"invalid identifier {name!r}", line)
    return name


def _parse_typed_list(p: _Parser, variables: bool) -> list[tuple[str, str]]:
    """Parse `x y - type z - type2 w` until ')'; untyped entries get `object`."""
    out: list[tuple[str, str]] = []
    pending: list[str] = []
    while p.peek() != ")":
        line = p.line
        tok = p.next()
        if tok == "-":
            type_line = p.line
            type_name = _check_identifier(p.next(), type_line)
            if not pending:
                raise PddlError("syntax", "dangling '-' in typed list", line)
            out.extend((name, type_name) for name in pending)
            pending = []
        else:
            if variables:
                if not tok.startswith("?"):
                    raise PddlError("syntax", f"expected variable, got {tok!r}", line)
                _check_identifier(tok[1:], line)
            else:
                _check_identifier(tok, line)
            pending.append(tok)
    out.extend((name, ROOT_TYPE) for name in pending)
    return out


_UNSUPPORTED = {
    "or", "forall", "exists", "when", "imply", "=", "increase", "decrease",
    "assign", "either",
}


def _parse_literal(p: _Parser) -> Literal:
    line = p.line
    p.expect("(")
    head = p.next()
    if head in _UNSUPPORTED:
        raise PddlError("unsupported-construct", f"{head!r} is not supported", line)
    if head == "not":
        inner = _parse_literal(p)
        if not inner.positive:
            raise PddlError("syntax", "double negation", line)
        p.expect(")")
        return inner.negated()
    _check_identifier(head, line)
    args: list[str] = []
    while p.peek() != ")":
        args.append(p.next())
    p.expect(")")
    return Literal(head, tuple(args))


def _parse_conjunction(p: _Parser) -> list[Literal]:
    """Parse `(and lit*)` or a bare literal."""
    line = p.line
    p.expect("(")
    head = p.peek()
    if head == "and":
        p.next()
        lits: list[Literal] = []
        while p.peek() != ")":
            lits.append(_parse_literal(p))
        p.expect(")")
        return lits
    if head in _UNSUPPORTED:
        raise PddlError("unsupported-construct", f"{head!r} is not supported", line)
    # bare literal: rewind the '(' and reparse
    p.pos -= 1
    return [_parse_literal(p)]


# ── Domain parsing ───────────────────────────────────────────────────────────

def parse_domain(text: str) -> Domain:
    """Parse a typed-STRIPS domain file. Raises PddlError on any violation."""
    p = _Parser(text)
    p.expect("(")
    p.expect("define")
    p.expect("(")
    p.expect("domain")
    name = _check_identifier(p.next(), p.line)
    p.expect(")")

    types: list[tuple[str, str | None]] = []
    predicates: list[PredicateSchema] = []
    actions: list[ActionSchema] = []

    while p.peek() == "(":
        line = p.line
        p.next()
        section = p.next()
        if section == ":requirements":
            while p.peek() != ")":
                req = p.next()
                if req not in (":strips", ":typing"):
                    raise PddlError(
                        "unsupported-construct", f"requirement {req!r}", line
                    )
            p.expect(")")
        elif section == ":types":
            for t, parent in _parse_typed_list(p, variables=False):
                types.append((t, None if parent == ROOT_TYPE else parent))
            p.expect(")")
        elif section == ":predicates":
            while p.peek() == "(":
                pline = p.line
                p.next()
                pname = _check_identifier(p.next(), pline)
                params = _parse_typed_list(p, variables=True)
                p.expect(")")
                _check_unique_vars(params, pline)
                predicates.append(PredicateSchema(pname, tuple(params)))
            p.expect(")")
        elif section == ":action":
            actions.append(_parse_action(p, line))
        else:
            raise PddlError(
                "unsupported-construct", f"section {section!r}", line
            )
    p.expect(")")
    if not p.at_end():
        raise PddlError("syntax", f"trailing content {p.peek()!r}", p.line)

    dom = Domain(name, tuple(types), tuple(predicates), tuple(actions))
    _validate_domain(dom)
    return dom


def _check_unique_vars(params: list[tuple[str, str]], line: int) -> None:
    names = [v for v, _ in params]
    if len(set(names)) != len(names):
        raise PddlError("duplicate-name", "repeated parameter variable", line)


def _parse_action(p: _Parser, line: int) -> ActionSchema:
    aname = _check_identifier(p.next(), line)
    params: list[tuple[str, str]] = []
    preconditions: list[Literal] = []
    effects: list[Literal] = []
    while p.peek() != ")":
        key_line = p.line
        key = p.next()
        if key == ":parameters":
            p.expect("(")
            params = _parse_typed_list(p, variables=True)
            p.expect(")")
            _check_unique_vars(params, key_line)
        elif key == ":precondition":
            preconditions = _parse_conjunction(p)
        elif key == ":effect":
            effects = _parse_conjunction(p)
        else:
            raise PddlError("unsupported-construct", f"action key {key!r}", key_line)
    p.expect(")")
    return ActionSchema(
        aname, tuple(params), frozenset(preconditions), frozenset(effects)
    )


def _validate_domain(dom: Domain) -> None:
    # type graph: declared once, parents declared, forest rooted at `object`
    seen_types: set[str] = set()
    for t, _ in dom.types:
        if t in seen_types or t == ROOT_TYPE:
            raise PddlError("duplicate-name", f"type {t!r} declared twice")
        seen_types.add(t)
    for t, parent in dom.types:
        if parent is not None and parent not in seen_types:
            raise PddlError("undeclared-type", f"parent type {parent!r} of {t!r}")
    parents = dict(dom.types)
    for t in seen_types:
        trail = set()
        cur: str | None = t
        while cur is not None:
            if cur in trail:
                raise PddlError("undeclared-type", f"type cycle through {t!r}")
            trail.add(cur)
            cur = parents.get(cur)

    def check_type(t: str, what: str) -> None:
        if t != ROOT_TYPE and t not in seen_types:
            raise PddlError("undeclared-type", f"{what} has undeclared type {t!r}")

    names = set()
    for pred in dom.predicates:
        if pred.name in names:
            raise PddlError("duplicate-name", f"predicate {pred.name!r}")
        names.add(pred.name)
        for var, t in pred.params:
            check_type(t, f"predicate {pred.name!r} parameter {var!r}")

    action_names = set()
    for act in dom.actions:
        if act.name in action_names:
            raise PddlError("duplicate-name", f"action {act.name!r}")
        action_names.add(act.name)
        var_types = {}
        for var, t in act.params:
            check_type(t, f"action {act.name!r} parameter {var!r}")
            var_types[var] = t
        for lit in act.preconditions | act.effects:
            _check_schema_literal(dom, act, lit, var_types)
        for lit in act.effects:
            if lit.negated() in act.effects:
                raise PddlError(
                    "ill-typed",
                    f"action {act.name!r} has contradictory effects on {lit.predicate}",
                )


def _check_schema_literal(
    dom: Domain, act: ActionSchema, lit: Literal, var_types: dict[str, str]
) -> None:
    schema = dom.predicate(lit.predicate)
    if len(lit.args) != schema.arity:
        raise PddlError(
            "ill-typed",
            f"{lit.predicate!r} expects {schema.arity} args in action {act.name!r}",
        )
    for arg, (_, expected) in zip(lit.args, schema.params):
        if not arg.startswith("?"):
            raise PddlError(
                "ill-typed",
                f"constant {arg!r} in action {act.name!r} (not supported)",
            )
        if arg not in var_types:
            raise PddlError(
                "ill-typed", f"undeclared variable {arg!r} in action {act.name!r}"
            )
        if not dom.is_subtype(var_types[arg], expected):
            raise PddlError(
                "ill-typed",
                f"variable {arg!r} of type {var_types[arg]!r} does not fit "
                f"{lit.predicate!r} parameter of type {expected!r}",
            )


# ── Problem parsing ──────────────────────────────────────────────────────────

def parse_problem(text: str, dom: Domain) -> Problem:
    """Parse a problem file and type-check it against `dom`."""
    p = _Parser(text)
    p.expect("(")
    p.expect("define")
    p.expect("(")
    p.expect("problem")
    name = _check_identifier(p.next(), p.line)
    p.expect(")")

    domain_name: str | None = None
    objects: list[tuple[str, str]] = []
    init_lits: list[Literal] = []
    goal: list[Literal] = []

    while p.peek() == "(":
        line = p.line
        p.next()
        section = p.next()
        if section == ":domain":
            domain_name = p.next()
            p.expect(")")
        elif section == ":objects":
            objects = _parse_typed_list(p, variables=False)
            p.expect(")")
        elif section == ":init":
            while p.peek() == "(":
                init_lits.append(_parse_literal(p))
            p.expect(")")
        elif section == ":goal":
            goal = _parse_conjunction(p)
            p.expect(")")
        else:
            raise PddlError("unsupported-construct", f"section {section!r}", line)
    p.expect(")")

    if domain_name != dom.name:
        raise PddlError(
            "domain-mismatch",
            f"problem declares domain {domain_name!r}, expected {dom.name!r}",
        )

    obj_names = set()
    for obj, t in objects:
        if obj in obj_names:
            raise PddlError("duplicate-name", f"object {obj!r}")
        obj_names.add(obj)
        if t != ROOT_TYPE and t not in {name for name, _ in dom.types}:
            raise PddlError("undeclared-type", f"object {obj!r} has type {t!r}")

    prob = Problem(
        name=name,
        domain_name=domain_name,
        objects=tuple(objects),
        init=frozenset(),
        goal=frozenset(goal),
    )

    atoms: set[Atom] = set()
    for lit in init_lits:
        if not lit.positive:
            raise PddlError(
                "closed-world", f"negative literal {lit} in :init"
            )
        _check_ground_literal(dom, prob, lit)
        atoms.add(lit.atom)
    for lit in goal:
        _check_ground_literal(dom, prob, lit)

    return Problem(name, domain_name, tuple(objects), frozenset(atoms), frozenset(goal))


def _check_ground_literal(dom: Domain, prob: Problem, lit: Literal) -> None:
    schema = dom.predicate(lit.predicate)
    if len(lit.args) != schema.arity:
        raise PddlError("ill-typed", f"{lit} has wrong arity for {lit.predicate!r}")
    for arg, (_, expected) in zip(lit.args, schema.params):
        t = prob.object_type(arg)
        if not dom.is_subtype(t, expected):
            raise PddlError(
                "ill-typed",
                f"object {arg!r} of type {t!r} does not fit {lit.predicate!r} "
                f"parameter of type {expected!r}",
            )


# ── Semantics ────────────────────────────────────────────────────────────────

def check_ground_action(dom: Domain, prob: Problem, a: GroundAction) -> ActionSchema:
    """Type-check a ground action; returns its schema or raises PddlError."""
    schema = dom.action(a.name)
    if len(a.args) != schema.arity:
        raise PddlError("ill-typed", f"{a} has wrong arity for {a.name!r}")
    for arg, (_, expected) in zip(a.args, schema.params):
        if not dom.is_subtype(prob.object_type(arg), expected):
            raise PddlError("ill-typed", f"argument {arg!r} of {a} is ill-typed")
    return schema


def ground_preconditions(a: GroundAction, dom: Domain) -> frozenset[Literal]:
    schema = dom.action(a.name)
    binding = schema.param_binding(a.args)
    return frozenset(lit.substitute(binding) for lit in schema.preconditions)


def ground_effects(a: GroundAction, dom: Domain) -> frozenset[Literal]:
    schema = dom.action(a.name)
    binding = schema.param_binding(a.args)
    return frozenset(lit.substitute(binding) for lit in schema.effects)


def holds(s: State, lit: Literal) -> bool:
    return (lit.atom in s) == lit.positive


def applicable(
    s: State, a: GroundAction, dom: Domain
) -> tuple[bool, frozenset[Literal]]:
    """Whether `a` applies in `s`; also the exact set of violated literals."""
    violated = frozenset(
        lit for lit in ground_preconditions(a, dom) if not holds(s, lit)
    )
    return (not violated, violated)


def apply_effects(s: State, a: GroundAction, dom: Domain) -> State:
    """Apply `a`'s effects regardless of preconditions; deletes before adds."""
    effects = ground_effects(a, dom)
    deletes = {lit.atom for lit in effects if not lit.positive}
    adds = {lit.atom for lit in effects if lit.positive}
    return frozenset((s - deletes) | adds)


def apply(s: State, a: GroundAction, dom: Domain) -> State:
    """STRIPS progression; raises PreconditionViolated if `a` is inapplicable."""
    ok, violated = applicable(s, a, dom)
    if not ok:
        raise PreconditionViolated(a, violated)
    return apply_effects(s, a, dom)


def ground_choices(
    dom: Domain, prob: Problem, schema_name: str, param_index: int
) -> list[str]:
    """Type-consistent objects for one action parameter, sorted for stable UI."""
    schema = dom.action(schema_name)
    if not 0 <= param_index < schema.arity:
        raise PddlError(
            "unknown-schema",
            f"parameter index {param_index} out of range for {schema_name!r}",
        )
    _, wanted = schema.params[param_index]
    return sorted(
        obj for obj, t in prob.objects if dom.is_subtype(t, wanted)
    )


def ground_actions(dom: Domain, prob: Problem) -> list[GroundAction]:
    """All well-typed ground actions, in deterministic order."""
    out: list[GroundAction] = []
    for schema in dom.actions:
        choices = [
            ground_choices(dom, prob, schema.name, i) for i in range(schema.arity)
        ]
        combos: list[tuple[str, ...]] = [()]
        for options in choices:
            combos = [c + (o,) for c in combos for o in options]
        out.extend(GroundAction(schema.name, c) for c in combos)
    return out


# ── Pretty-printing (round-trip support) ─────────────────────────────────────

def _typed_list_str(params: tuple[tuple[str, str], ...]) -> str:
    return " ".join(f"{v} - {t}" for v, t in params)


def domain_to_pddl(dom: Domain) -> str:
    """Render a Domain back to parseable text."""
    lines = [f"(define (domain {dom.name})"]
    if dom.types:
        decls = " ".join(
            t if parent is None else f"{t} - {parent}" for t, parent in dom.types
        )
        lines.append(f"  (:types {decls})")
    preds = " ".join(
        f"({p.name} {_typed_list_str(p.params)})" if p.params else f"({p.name})"
        for p in dom.predicates
    )
    lines.append(f"  (:predicates {preds})")
    for a in dom.actions:
        pre = " ".join(str(l) for l in sorted(a.preconditions))
        eff = " ".join(str(l) for l in sorted(a.effects))
        lines.append(
            f"  (:action {a.name}\n"
            f"    :parameters ({_typed_list_str(a.params)})\n"
            f"    :precondition (and {pre})\n"
            f"    :effect (and {eff}))"
        )
    lines.append(")")
    return "\n".join(lines)
