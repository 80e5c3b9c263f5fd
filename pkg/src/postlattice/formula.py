"""Propositional formulas over named connectives: parsing, printing,
evaluation, substitution and structural metrics.

A formula is a finite tree of :class:`Prop` leaves and :class:`Apply`
nodes; constants are connectives of arity 0.  All values are immutable,
so every operation here is a pure function.

Grammar (ASCII): identifiers ``[a-zA-Z_][a-zA-Z0-9_']*`` (a leading
``__`` is reserved for generated propositions), infix ``&`` ``|`` ``^``
``->`` ``<->`` ``-/>``, prefix ``!``, literals ``0`` ``1``, prefix calls
``name(arg, ..., arg)`` and parentheses.  Precedence, tightest first:
``!``, ``&``, ``|``, ``^``, ``->`` (right associative, ``-/>`` at the
same level), ``<->``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Union

from . import boolfun
from .boolfun import ArityError, BooleanFunction, parse_function_literal
from .errors import PostLatticeError

EQUIVALENCE_CAP = 20

RESERVED_PREFIX = "__"


class ParseError(PostLatticeError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvaluationError(PostLatticeError):
    """A proposition had no value in the assignment."""


class VariableCapError(PostLatticeError):
    """Too many distinct propositions for exhaustive verification."""


class BaseError(PostLatticeError):
    """Ill-formed connective set."""


@dataclass(frozen=True)
class Connective:
    """A named Boolean function usable as a formula node."""

    name: str
    fn: BooleanFunction

    @property
    def arity(self) -> int:
        return self.fn.arity

    def __str__(self) -> str:
        return boolfun.format_function_literal(self.name, self.fn)


@dataclass(frozen=True)
class Prop:
    name: str


@dataclass(frozen=True)
class Apply:
    conn: Connective
    args: tuple["Formula", ...] = ()

    def __post_init__(self):
        if len(self.args) != self.conn.arity:
            raise ArityError(
                f"{self.conn.name} expects {self.conn.arity} arguments, "
                f"got {len(self.args)}")


Formula = Union[Prop, Apply]


# ---------------------------------------------------------------------------
# standard connectives

FALSE = Connective("0", boolfun.CONST0_FN)
TRUE = Connective("1", boolfun.CONST1_FN)
NOT = Connective("not", boolfun.NOT_FN)
AND = Connective("and", boolfun.AND_FN)
OR = Connective("or", boolfun.OR_FN)
XOR = Connective("xor", boolfun.XOR_FN)
IMP = Connective("imp", boolfun.IMP_FN)
IFF = Connective("iff", boolfun.IFF_FN)
NIMP = Connective("nimp", boolfun.NIMP_FN)
ID = Connective("id", boolfun.ID_FN)

FALSE_F: Formula = Apply(FALSE)
TRUE_F: Formula = Apply(TRUE)


def constant(bit: int) -> Formula:
    return TRUE_F if bit else FALSE_F


class Base:
    """An ordered set of named Boolean functions."""

    def __init__(self, connectives: Iterable[Connective]):
        out: list[Connective] = []
        by_name: dict[str, Connective] = {}
        for c in connectives:
            prev = by_name.get(c.name)
            if prev is None:
                by_name[c.name] = c
                out.append(c)
            elif prev.fn != c.fn:
                raise BaseError(f"duplicate connective name {c.name!r}")
        self.connectives = tuple(out)
        self._by_name = by_name
        self._tables = frozenset(c.fn for c in out)

    def get(self, name: str) -> Connective | None:
        return self._by_name.get(name)

    def contains_function(self, fn: BooleanFunction) -> bool:
        return fn in self._tables

    @property
    def tables(self) -> frozenset[BooleanFunction]:
        return self._tables

    def nullary_member(self, bit: int) -> Connective | None:
        for c in self.connectives:
            if c.arity == 0 and c.fn.bits[0] == bit:
                return c
        return None

    def extended(self, *extra: Connective) -> "Base":
        """This base plus the given connectives; an incoming name that
        clashes with a different function gets primes appended."""
        out = list(self.connectives)
        by_name = dict(self._by_name)
        for c in extra:
            if by_name.get(c.name, c).fn == c.fn:
                if c.name not in by_name:
                    out.append(c)
                    by_name[c.name] = c
                continue
            name = c.name
            while name in by_name and by_name[name].fn != c.fn:
                name += "'"
            if name not in by_name:
                renamed = Connective(name, c.fn)
                out.append(renamed)
                by_name[name] = renamed
        return Base(out)

    @classmethod
    def from_text(cls, text: str) -> "Base":
        """Parse the line-oriented base file format: one
        ``name/arity:bitstring`` per line, ``#`` comments."""
        conns = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            name, fn = parse_function_literal(line)
            conns.append(Connective(name, fn))
        return cls(conns)

    def to_text(self) -> str:
        return "\n".join(str(c) for c in self.connectives)

    def __iter__(self):
        return iter(self.connectives)

    def __len__(self):
        return len(self.connectives)

    def __eq__(self, other):
        return isinstance(other, Base) and self.connectives == other.connectives

    def __hash__(self):
        return hash(self.connectives)

    def __repr__(self):
        return f"Base({', '.join(c.name for c in self.connectives)})"


STANDARD_BASE = Base([AND, OR, NOT, XOR, IMP, IFF, NIMP, ID, FALSE, TRUE])


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<lit>[01])"
    r"|(?P<op>-/>|->|<->|[&|^!(),]))")

_INFIX = {
    "&": (AND, 50, "left"),
    "|": (OR, 40, "left"),
    "^": (XOR, 30, "left"),
    "->": (IMP, 20, "right"),
    "-/>": (NIMP, 20, "right"),
    "<->": (IFF, 10, "left"),
}


class _Parser:
    def __init__(self, text: str, base: Base | None):
        self.text = text
        self.base = base
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}",
                                     pos)
                break
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.index = 0

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.index += 1
        return tok

    def expect(self, value: str):
        tok = self.next()
        if tok[0] != "op" or tok[1] != value:
            raise ParseError(f"expected {value!r}", tok[2])

    def parse(self) -> Formula:
        node = self.expression(0)
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expression(self, min_level: int) -> Formula:
        lhs = self.unary()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] not in _INFIX:
                return lhs
            conn, level, assoc = _INFIX[tok[1]]
            if level < min_level:
                return lhs
            self.next()
            rhs = self.expression(level + 1 if assoc == "left" else level)
            lhs = Apply(conn, (lhs, rhs))

    def unary(self) -> Formula:
        tok = self.next()
        kind, value, at = tok
        if kind == "op" and value == "!":
            return Apply(NOT, (self.unary(),))
        if kind == "op" and value == "(":
            node = self.expression(0)
            self.expect(")")
            return node
        if kind == "lit":
            return TRUE_F if value == "1" else FALSE_F
        if kind == "name":
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "(":
                return self.call(value, at)
            if value.startswith(RESERVED_PREFIX):
                raise ParseError(f"names starting with {RESERVED_PREFIX!r} are reserved",
                                 at)
            return Prop(value)
        raise ParseError(f"unexpected {value!r}", at)

    def call(self, name: str, at: int) -> Formula:
        conn = self.base.get(name) if self.base is not None else None
        if conn is None:
            conn = STANDARD_BASE.get(name)
        if conn is None:
            raise ParseError(f"unknown connective {name!r}", at)
        self.expect("(")
        args: list[Formula] = []
        nxt = self.peek()
        if nxt is not None and nxt[0] == "op" and nxt[1] == ")":
            self.next()
        else:
            while True:
                args.append(self.expression(0))
                tok = self.next()
                if tok[0] == "op" and tok[1] == ")":
                    break
                if not (tok[0] == "op" and tok[1] == ","):
                    raise ParseError("expected ',' or ')'", tok[2])
        if len(args) != conn.arity:
            raise ParseError(
                f"{name} expects {conn.arity} arguments, got {len(args)}", at)
        return Apply(conn, tuple(args))


def parse(text: str, base: Base | None = None) -> Formula:
    """Parse a formula.  Named prefix calls resolve in ``base`` first and
    in the standard connectives second; infix symbols always denote the
    standard connectives."""
    return _Parser(text, base).parse()


# ---------------------------------------------------------------------------
# printing

_LEVEL_ATOM = 100
_SYMBOL = {
    AND: ("&", 50, "left"),
    OR: ("|", 40, "left"),
    XOR: ("^", 30, "left"),
    IMP: ("->", 20, "right"),
    NIMP: ("-/>", 20, "right"),
    IFF: ("<->", 10, "left"),
}


def render(phi: Formula) -> str:
    """Minimal-parenthesis ASCII form; reparses to an equal tree."""
    text, _ = _render(phi)
    return text


def _render(phi: Formula) -> tuple[str, int]:
    if isinstance(phi, Prop):
        return phi.name, _LEVEL_ATOM
    conn = phi.conn
    if conn == TRUE:
        return "1", _LEVEL_ATOM
    if conn == FALSE:
        return "0", _LEVEL_ATOM
    if conn == NOT:
        inner, lvl = _render(phi.args[0])
        if lvl < 60:
            inner = f"({inner})"
        return f"!{inner}", 60
    info = _SYMBOL.get(conn)
    if info is not None:
        sym, level, assoc = info
        parts = []
        for side, arg in zip(("left", "right"), phi.args):
            text, lvl = _render(arg)
            same_op = isinstance(arg, Apply) and arg.conn == conn
            if lvl < level or (lvl == level and not (same_op and side == assoc)):
                text = f"({text})"
            parts.append(text)
        return f"{parts[0]} {sym} {parts[1]}", level
    args = ", ".join(_render(a)[0] for a in phi.args)
    return f"{conn.name}({args})", _LEVEL_ATOM


# ---------------------------------------------------------------------------
# semantics

Assignment = Mapping[str, int]


def evaluate(phi: Formula, assignment: Assignment) -> int:
    """Bottom-up evaluation under a total assignment."""
    if isinstance(phi, Prop):
        try:
            return assignment[phi.name] & 1
        except KeyError:
            raise EvaluationError(f"unbound proposition {phi.name!r}") from None
    return phi.conn.fn.value([evaluate(a, assignment) for a in phi.args])


def vars_of(phi: Formula) -> frozenset[str]:
    out: set[str] = set()
    _collect_vars(phi, out)
    return frozenset(out)


def _collect_vars(phi: Formula, out: set) -> None:
    if isinstance(phi, Prop):
        out.add(phi.name)
    else:
        for a in phi.args:
            _collect_vars(a, out)


def props_in_order(phi: Formula) -> list[str]:
    """Distinct proposition names in order of first occurrence."""
    seen: dict[str, None] = {}
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Prop):
            seen.setdefault(node.name, None)
        else:
            stack.extend(reversed(node.args))
    return list(seen)


def connectives_of(phi: Formula) -> list[Connective]:
    """Distinct connectives in first-occurrence order."""
    seen: dict[Connective, None] = {}
    def walk(node):
        if isinstance(node, Apply):
            seen.setdefault(node.conn, None)
            for a in node.args:
                walk(a)
    walk(phi)
    return list(seen)


class Metrics(NamedTuple):
    size: int
    depth: int
    leaf_count: int
    vars: frozenset[str]


def size(phi: Formula) -> int:
    if isinstance(phi, Prop):
        return 1
    return 1 + sum(size(a) for a in phi.args)


def depth(phi: Formula) -> int:
    """Maximum nesting of connective applications; a lone proposition has
    depth 0 and a lone constant depth 1."""
    if isinstance(phi, Prop):
        return 0
    return 1 + max((depth(a) for a in phi.args), default=0)


def leaf_count(phi: Formula) -> int:
    """Number of proposition occurrences; constants do not count."""
    if isinstance(phi, Prop):
        return 1
    return sum(leaf_count(a) for a in phi.args)


def metrics(phi: Formula) -> Metrics:
    return Metrics(size(phi), depth(phi), leaf_count(phi), vars_of(phi))


def substitute(phi: Formula, alpha: Formula, beta: Formula) -> Formula:
    """Replace every subtree structurally equal to ``alpha`` by ``beta``.

    Occurrences are found outside-in and replacements are never re-scanned.
    """
    if phi == alpha:
        return beta
    if isinstance(phi, Prop):
        return phi
    return Apply(phi.conn, tuple(substitute(a, alpha, beta) for a in phi.args))


def instantiate(phi: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Simultaneously replace propositions by formulas."""
    if isinstance(phi, Prop):
        return mapping.get(phi.name, phi)
    return Apply(phi.conn, tuple(instantiate(a, mapping) for a in phi.args))


def fold(phi: Formula) -> Formula:
    """Evaluate every connective application whose arguments are all
    constants; equivalence-preserving."""
    if isinstance(phi, Prop):
        return phi
    args = tuple(fold(a) for a in phi.args)
    vals = [constant_value(a) for a in args]
    if all(v is not None for v in vals):
        return constant(phi.conn.fn.value(vals))
    return Apply(phi.conn, args)


def constant_value(phi: Formula):
    """The bit a constant formula denotes, or None."""
    if isinstance(phi, Apply) and phi.conn.arity == 0:
        return phi.conn.fn.bits[0]
    return None


def _projection_mask(j: int, n: int) -> int:
    mask = 0
    for p in range(1 << n):
        if (p >> (n - 1 - j)) & 1:
            mask |= 1 << p
    return mask


def _eval_mask(phi: Formula, masks: Mapping[str, int], nrows: int) -> int:
    full = (1 << nrows) - 1
    if isinstance(phi, Prop):
        try:
            return masks[phi.name]
        except KeyError:
            raise EvaluationError(f"unbound proposition {phi.name!r}") from None
    child = [_eval_mask(a, masks, nrows) for a in phi.args]
    fn = phi.conn.fn
    out = 0
    for v in range(1 << fn.arity):
        if not fn.bits[v]:
            continue
        term = full
        for j, c in enumerate(child):
            term &= c if (v >> (fn.arity - 1 - j)) & 1 else full ^ c
            if not term:
                break
        out |= term
    return out


def truth_table(phi: Formula, var_order=None) -> BooleanFunction:
    """The function denoted by ``phi`` over the given variable order (the
    first variable is the high bit of the row index)."""
    names = vars_of(phi)
    if var_order is None:
        var_order = sorted(names)
    var_order = list(var_order)
    if len(set(var_order)) != len(var_order):
        raise VariableCapError("duplicate names in variable order")
    missing = names - set(var_order)
    if missing:
        raise EvaluationError(f"variable order misses {sorted(missing)}")
    n = len(var_order)
    if n > boolfun.ARITY_CAP:
        raise ArityError(f"truth table over {n} variables exceeds the arity cap")
    rows = 1 << n
    masks = {name: _projection_mask(j, n) for j, name in enumerate(var_order)}
    out = _eval_mask(phi, masks, rows)
    return BooleanFunction(n, tuple((out >> p) & 1 for p in range(rows)))


def equivalent(phi: Formula, psi: Formula, cap: int = EQUIVALENCE_CAP) -> bool:
    """Truth-table equivalence over the union of the two variable sets."""
    names = sorted(vars_of(phi) | vars_of(psi))
    if len(names) > cap:
        raise VariableCapError(
            f"{len(names)} variables exceed the verification cap {cap}")
    n = len(names)
    rows = 1 << n
    masks = {name: _projection_mask(j, n) for j, name in enumerate(names)}
    return _eval_mask(phi, masks, rows) == _eval_mask(psi, masks, rows)


def fresh_props(phi_vars: Iterable[str], count: int, prefix: str = "__t") -> list[str]:
    """Generated proposition names that cannot clash with parsed input."""
    taken = set(phi_vars)
    out = []
    i = 0
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in taken:
            out.append(name)
            taken.add(name)
        i += 1
    return out
