"""Equivalence-preserving reductions between formula languages.

Each pipeline takes a formula over a base B and a target base B' with
B contained in [B'], and produces an equivalent formula over B', with
the connective ``and`` or ``or`` adjoined where the lattice position of
[B] requires it.  Every output carries a certificate (sizes, depths and
an exhaustive equivalence check when the variable count permits).

Pipelines:

* ``reduce_EVL``     - [B] inside E, V or L: probe the formula for its
  conjunctive / disjunctive / affine normal form, rebuild balanced.
* ``reduce_S00/S10`` - monotone clones above S00/S10: monotone
  restructuring, connective replacement, constant elimination.
* ``reduce_S02/S12`` - clones above S02/S12: full restructuring into
  {and, or, not}, replacement over B' with constants, elimination.
* ``reduce_D``       - self-dual window D2..D.
* ``theorem_reduce`` - dispatcher over the seven lattice cases.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import boolfun
from .boolfun import AND_FN, BooleanFunction, NOT_FN, OR_FN, XOR_FN
from .clones import (
    CLOSURE_ARITY_MAX,
    CloneName,
    NotInCloneError,
    clone_of,
    includes,
    member,
    represent,
)
from .errors import PostLatticeError
from .formula import (
    AND,
    EQUIVALENCE_CAP,
    FALSE,
    FALSE_F,
    IFF,
    NOT,
    OR,
    TRUE,
    TRUE_F,
    XOR,
    Apply,
    Base,
    Connective,
    Formula,
    Prop,
    connectives_of,
    constant,
    depth,
    equivalent,
    evaluate,
    fold,
    fresh_props,
    instantiate,
    props_in_order,
    size,
    substitute,
    truth_table,
    vars_of,
)
from .restructure import (
    restructure_full,
    restructure_monotone_g,
    restructure_monotone_h,
)

IFF_FN = boolfun.IFF_FN
XOR3_FN = boolfun.XOR3_FN
XNOR3_FN = boolfun.XNOR3_FN


class ReductionError(PostLatticeError):
    pass


class PreconditionError(ReductionError):
    """The clone-side conditions of the requested reduction do not hold."""


class ConstantEliminationError(ReductionError):
    """No equivalence-preserving replacement exists for a constant within
    the allowed target connectives."""


@dataclass(frozen=True)
class Certificate:
    size_in: int
    depth_in: int
    size_out: int
    depth_out: int
    equivalent: bool | None  # None = too many variables to verify


@dataclass(frozen=True)
class ReductionOutput:
    formula: Formula
    target: Base
    extra: str                      # "and", "or" or "none"
    fresh_vars: tuple[str, ...]
    certificate: Certificate


def _certificate(inp: Formula, out: Formula) -> Certificate:
    names = vars_of(inp) | vars_of(out)
    eq = equivalent(inp, out) if len(names) <= EQUIVALENCE_CAP else None
    return Certificate(size(inp), depth(inp), size(out), depth(out), eq)


def _check_target(result: ReductionOutput) -> ReductionOutput:
    for c in connectives_of(result.formula):
        if not result.target.contains_function(c.fn):
            raise ReductionError(
                f"internal: output connective {c.name!r} escapes the target base")
    if result.certificate.equivalent is False:
        raise ReductionError("internal: reduction output is not equivalent")
    return result


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionError(message)


def _check_over_base(phi: Formula, base: Base) -> None:
    for c in connectives_of(phi):
        if not base.contains_function(c.fn):
            raise PreconditionError(
                f"formula connective {c.name!r} is not in the source base")


def _check_subbase(base: Base, target: Base) -> None:
    for c in base:
        if not member(c.fn, target):
            raise PreconditionError(
                f"{c.name!r} is not generated by the target base")


def _balanced(items: list[Formula], conn: Connective) -> Formula:
    """Left-heavy balanced tree; logarithmic depth."""
    if len(items) == 1:
        return items[0]
    mid = (len(items) + 1) // 2
    return Apply(conn, (_balanced(items[:mid], conn), _balanced(items[mid:], conn)))


# ---------------------------------------------------------------------------
# normal forms for E / V / L


def normalize_E(phi: Formula) -> tuple[int, tuple[str, ...], Formula]:
    """Conjunctive normal data (c, I) and the balanced formula
    c AND (AND of x_i for i in I), with the constant dropped when I is
    nonempty.  c is the value under the all-ones assignment; i enters I
    when additionally flipping x_i to 0 falsifies the formula."""
    _require(all(boolfun.is_conjunction(c.fn) for c in connectives_of(phi)),
             "every connective must be a conjunction or constant")
    props = props_in_order(phi)
    ones = {p: 1 for p in props}
    c = evaluate(phi, ones)
    chosen: list[str] = []
    if c == 1:
        for p in props:
            probe = dict(ones)
            probe[p] = 0
            if evaluate(phi, probe) == 0:
                chosen.append(p)
    if c == 0:
        out: Formula = FALSE_F
    elif not chosen:
        out = TRUE_F
    else:
        out = _balanced([Prop(p) for p in chosen], AND)
    return c, tuple(chosen), out


def normalize_V(phi: Formula) -> tuple[int, tuple[str, ...], Formula]:
    """Disjunctive dual of :func:`normalize_E`, probed at all-zeros."""
    _require(all(boolfun.is_disjunction(c.fn) for c in connectives_of(phi)),
             "every connective must be a disjunction or constant")
    props = props_in_order(phi)
    zeros = {p: 0 for p in props}
    c = evaluate(phi, zeros)
    chosen: list[str] = []
    if c == 0:
        for p in props:
            probe = dict(zeros)
            probe[p] = 1
            if evaluate(phi, probe) == 1:
                chosen.append(p)
    if c == 1:
        out: Formula = TRUE_F
    elif not chosen:
        out = FALSE_F
    else:
        out = _balanced([Prop(p) for p in chosen], OR)
    return c, tuple(chosen), out


def normalize_L(phi: Formula) -> tuple[int, tuple[str, ...], Formula]:
    """Affine normal data (c, I) and the balanced formula
    c XOR (XOR of x_i): c is the all-zeros value and i enters I when the
    unit assignment at x_i flips it."""
    _require(all(boolfun.is_affine(c.fn) for c in connectives_of(phi)),
             "every connective must be affine")
    props = props_in_order(phi)
    zeros = {p: 0 for p in props}
    c = evaluate(phi, zeros)
    chosen: list[str] = []
    for p in props:
        probe = dict(zeros)
        probe[p] = 1
        if evaluate(phi, probe) != c:
            chosen.append(p)
    items: list[Formula] = ([TRUE_F] if c == 1 else []) + [Prop(p) for p in chosen]
    if not items:
        out: Formula = FALSE_F
    else:
        out = _balanced(items, XOR)
    return c, tuple(chosen), out


# ---------------------------------------------------------------------------
# constant elimination


def _rep(fn: BooleanFunction, base: Base, with_consts: bool = False) -> Formula:
    search_base = base.extended(FALSE, TRUE) if with_consts else base
    return _rep_cached(fn, search_base)


_REP_CACHE: dict = {}


def _rep_cached(fn: BooleanFunction, base: Base) -> Formula:
    key = (fn, base.connectives)
    hit = _REP_CACHE.get(key)
    if hit is None:
        hit = represent(fn, base)
        _REP_CACHE[key] = hit
    return hit


def _replace_connectives(phi: Formula, repmap: dict[BooleanFunction, Formula]) -> Formula:
    if isinstance(phi, Prop):
        return phi
    args = tuple(_replace_connectives(a, repmap) for a in phi.args)
    witness = repmap.get(phi.conn.fn)
    if witness is None:
        return Apply(phi.conn, args)
    return instantiate(witness, {f"x{i + 1}": arg for i, arg in enumerate(args)})


def _constants_present(phi: Formula) -> set[int]:
    out: set[int] = set()

    def walk(node):
        if isinstance(node, Apply):
            if node.conn == TRUE:
                out.add(1)
            elif node.conn == FALSE:
                out.add(0)
            for a in node.args:
                walk(a)
    walk(phi)
    return out


def _constant_replacement(bit: int, target: Base, props: list[str]) -> Formula | None:
    """A target-base formula denoting the constant, when the target makes
    the constant available: a nullary member directly, or the unary
    constant function instantiated at an existing proposition."""
    member_c = target.nullary_member(bit)
    if member_c is not None:
        return Apply(member_c)
    unary = boolfun.CONST1_1_FN if bit else boolfun.CONST0_1_FN
    if props and member(unary, target):
        return instantiate(_rep(unary, target), {"x1": Prop(props[0])})
    return None


def _big_fold(fold_conn: Connective, target: Base | None, props: list[str]) -> Formula:
    tree = _balanced([Prop(p) for p in props], fold_conn)
    if target is None:
        return tree
    return _replace_connectives(tree, {fold_conn.fn: _rep(fold_conn.fn, target)})


def eliminate_constants(phi: Formula, target: Base,
                        mode: str) -> tuple[Formula, tuple[str, ...]]:
    """Replace the constants 0/1 by target-base material.

    ``mode`` names the calling pipeline's context and fixes which literal
    connective the caller's target may absorb: ``"and"`` allows a literal
    balanced big-AND for 0 (1 must be representable, by a constant of the
    target clone or as a big-OR when OR is generated), ``"or"`` is the
    dual, and ``"fresh"`` replaces both constants through a
    tautology/contradiction in one fresh proposition (functionally
    complete targets).

    Constants available in the target clone are replaced by their
    representations rather than eliminated.  Raises
    :class:`ConstantEliminationError` when no sound replacement exists.
    """
    if mode not in ("and", "or", "fresh"):
        raise ReductionError(f"unknown elimination mode {mode!r}")
    phi = fold(phi)
    present = _constants_present(phi)
    if not present:
        return phi, ()
    props = props_in_order(phi)
    fresh: tuple[str, ...] = ()

    replacements: dict[int, Formula] = {}
    if mode == "fresh":
        name = fresh_props(vars_of(phi), 1)[0]
        t = Prop(name)
        not_t = instantiate(_rep(NOT_FN, target), {"x1": t})
        if 1 in present:
            replacements[1] = instantiate(_rep(OR_FN, target), {"x1": t, "x2": not_t})
        if 0 in present:
            replacements[0] = instantiate(_rep(AND_FN, target), {"x1": t, "x2": not_t})
        fresh = (name,)
    else:
        for bit in sorted(present, reverse=True):
            direct = _constant_replacement(bit, target, props)
            if direct is not None:
                replacements[bit] = direct
                continue
            if not props:
                raise ConstantEliminationError(
                    f"constant {bit} in a proposition-free formula with no "
                    f"nullary target connective")
            fold_conn = OR if bit == 1 else AND
            literal_ok = (mode == "and" and bit == 0) or (mode == "or" and bit == 1)
            if member(fold_conn.fn, target):
                replacements[bit] = _big_fold(fold_conn, target, props)
            elif literal_ok:
                replacements[bit] = _big_fold(fold_conn, None, props)
            else:
                raise ConstantEliminationError(
                    f"constant {bit} is not available in the target clone and "
                    f"mode {mode!r} provides no sound replacement")
            # soundness of the big-fold trick: with the constant outside the
            # target clone, the formula must vanish at the fold's blind spot
            anchor = {p: 1 - bit for p in props}
            if evaluate(phi, anchor) != 1 - bit:
                raise ConstantEliminationError(
                    f"big-{fold_conn.name} elimination is unsound here: the "
                    f"all-{1 - bit} assignment does not evaluate to {1 - bit}")

    out = phi
    for bit, repl in replacements.items():
        old = constant(bit)
        if repl != old:
            out = substitute(out, old, repl)
    used_fresh = fresh if (fresh and vars_of(out) - vars_of(phi)) else ()
    return out, used_fresh


# ---------------------------------------------------------------------------
# pipelines


def _nonconstant_fns(phi: Formula) -> list[BooleanFunction]:
    seen: dict[BooleanFunction, None] = {}
    for c in connectives_of(phi):
        if c.arity >= 1:
            seen.setdefault(c.fn, None)
    return list(seen)


def _pipeline_output(inp: Formula, out: Formula, target: Base, extra: str,
                     fresh: tuple[str, ...]) -> ReductionOutput:
    return _check_target(ReductionOutput(out, target, extra, fresh,
                                         _certificate(inp, out)))


def reduce_S00(phi: Formula, base: Base, target: Base) -> ReductionOutput:
    """Monotone pipeline for S00 <= [B] <= M; output over B' + {and}."""
    _check_over_base(phi, base)
    x = clone_of(base)
    _require(includes(x, "S00"), "the clone of B must contain S00")
    _require(includes("M", x), "B must be monotone")
    _check_subbase(base, target)
    shaped = restructure_monotone_g(phi)
    repmap = {fn: _rep(fn, target) for fn in _nonconstant_fns(shaped)}
    replaced = _replace_connectives(shaped, repmap)
    out, fresh = eliminate_constants(replaced, target, "and")
    return _pipeline_output(phi, out, target.extended(AND), "and", fresh)


def reduce_S10(phi: Formula, base: Base, target: Base) -> ReductionOutput:
    """Dual monotone pipeline for S10 <= [B] <= M; output over B' + {or}."""
    _check_over_base(phi, base)
    x = clone_of(base)
    _require(includes(x, "S10"), "the clone of B must contain S10")
    _require(includes("M", x), "B must be monotone")
    _check_subbase(base, target)
    shaped = restructure_monotone_h(phi)
    repmap = {fn: _rep(fn, target) for fn in _nonconstant_fns(shaped)}
    replaced = _replace_connectives(shaped, repmap)
    out, fresh = eliminate_constants(replaced, target, "or")
    return _pipeline_output(phi, out, target.extended(OR), "or", fresh)


def reduce_S02(phi: Formula, base: Base, target: Base) -> ReductionOutput:
    """Pipeline for S02 <= [B]; output over B' + {and}."""
    _check_over_base(phi, base)
    x = clone_of(base)
    _require(includes(x, "S02"), "the clone of B must contain S02")
    _check_subbase(base, target)
    shaped = restructure_full(phi)
    repmap = {fn: _rep_flexible(fn, target) for fn in _nonconstant_fns(shaped)}
    replaced = _replace_connectives(shaped, repmap)
    out, fresh = eliminate_constants(replaced, target, "and")
    return _pipeline_output(phi, out, target.extended(AND), "and", fresh)


def reduce_S12(phi: Formula, base: Base, target: Base) -> ReductionOutput:
    """Dual pipeline for S12 <= [B]; output over B' + {or}."""
    _check_over_base(phi, base)
    x = clone_of(base)
    _require(includes(x, "S12"), "the clone of B must contain S12")
    _check_subbase(base, target)
    shaped = restructure_full(phi)
    repmap = {fn: _rep_flexible(fn, target) for fn in _nonconstant_fns(shaped)}
    replaced = _replace_connectives(shaped, repmap)
    out, fresh = eliminate_constants(replaced, target, "or")
    return _pipeline_output(phi, out, target.extended(OR), "or", fresh)


def _rep_flexible(fn: BooleanFunction, target: Base) -> Formula:
    """Representation over the target alone when one exists, otherwise
    over the target with constants (removed again downstream)."""
    try:
        return _rep(fn, target)
    except NotInCloneError:
        return _rep(fn, target, with_consts=True)


def _whole_formula_representation(phi: Formula, target: Base) -> Formula:
    """Exact fallback: represent the whole formula's function over the
    target base.  Exponential in the variable count and capped by the
    representation arity limit; used where piecewise constant elimination
    is provably impossible (self-dual targets)."""
    order = props_in_order(phi)
    if len(order) > CLOSURE_ARITY_MAX:
        raise ReductionError(
            f"self-dual target requires the whole-formula fallback, which is "
            f"capped at {CLOSURE_ARITY_MAX} variables ({len(order)} present)")
    fn = truth_table(phi, order)
    witness = _rep(fn, target)
    return instantiate(witness, {f"x{i + 1}": Prop(p) for i, p in enumerate(order)})


def reduce_D(phi: Formula, base: Base, target: Base, want: str = "and") -> ReductionOutput:
    """Pipeline for the self-dual window D2 <= [B] <= D; ``want`` picks
    the adjoined connective ("and" or "or").  With a functionally
    complete target the constants are removed through a fresh proposition
    and nothing is adjoined."""
    if want not in ("and", "or"):
        raise ReductionError(f"want must be 'and' or 'or', not {want!r}")
    _check_over_base(phi, base)
    x = clone_of(base)
    _require(includes(x, "D2"), "the clone of B must contain D2")
    _require(includes("D", x), "B must be self-dual")
    _check_subbase(base, target)
    extra = want
    fresh: tuple[str, ...] = ()
    if x == CloneName("D2"):
        shaped = (restructure_monotone_g(phi) if want == "and"
                  else restructure_monotone_h(phi))
        repmap = {fn: _rep_flexible(fn, target) for fn in _nonconstant_fns(shaped)}
        replaced = _replace_connectives(shaped, repmap)
        try:
            out, fresh = eliminate_constants(replaced, target, want)
        except ConstantEliminationError:
            out = _whole_formula_representation(phi, target)
    else:
        shaped = restructure_full(phi)
        repmap = {fn: _rep_flexible(fn, target) for fn in _nonconstant_fns(shaped)}
        replaced = _replace_connectives(shaped, repmap)
        if clone_of(target) == CloneName("BF"):
            out, fresh = eliminate_constants(replaced, target, "fresh")
            extra = "none"
        else:
            try:
                out, fresh = eliminate_constants(replaced, target, want)
            except ConstantEliminationError:
                out = _whole_formula_representation(phi, target)
    tgt = target if extra == "none" else target.extended(AND if extra == "and" else OR)
    return _pipeline_output(phi, out, tgt, extra, fresh)


def _emit_conjunctive(c: int, chosen: tuple[str, ...], target: Base,
                      props: list[str], conn: Connective) -> Formula:
    if (conn is AND and c == 0) or (conn is OR and c == 1):
        out = _constant_replacement(c, target, props)
        if out is None:
            raise PreconditionError(f"constant {c} is not available in the target")
        return out
    if not chosen:
        bit = 1 if conn is AND else 0
        out = _constant_replacement(bit, target, props)
        if out is None:
            raise PreconditionError(f"constant {bit} is not available in the target")
        return out
    if len(chosen) == 1:
        return Prop(chosen[0])
    return _big_fold(conn, target, list(chosen))


def _xor3_tree(items: list[Formula], target: Base) -> Formula:
    """Odd-length parity tree over the ternary xor; keeps every emitted
    connective inside affine clones that lack the binary xor."""
    if len(items) == 1:
        return items[0]
    rep = _rep(XOR3_FN, target)
    out = items[0]
    rest = items[1:]
    for i in range(0, len(rest), 2):
        out = instantiate(rep, {"x1": out, "x2": rest[i], "x3": rest[i + 1]})
    return out


def _emit_affine(c: int, chosen: tuple[str, ...], target: Base,
                 props: list[str]) -> Formula:
    t = len(chosen)
    if t == 0:
        out = _constant_replacement(c, target, props)
        if out is None:
            raise PreconditionError(f"constant {c} is not available in the target")
        return out
    leaves = [Prop(p) for p in chosen]
    if c == 0:
        if t == 1:
            return leaves[0]
        if t % 2 == 1:
            return _xor3_tree(leaves, target)
        return _replace_connectives(_balanced(leaves, XOR),
                                    {XOR_FN: _rep(XOR_FN, target)})
    if t == 1:
        return instantiate(_rep(NOT_FN, target), {"x1": leaves[0]})
    if t % 2 == 0:
        return _replace_connectives(_balanced(leaves, IFF),
                                    {IFF_FN: _rep(IFF_FN, target)})
    rep = _rep(XNOR3_FN, target)
    return instantiate(rep, {"x1": leaves[0], "x2": leaves[1],
                             "x3": _xor3_tree(leaves[2:], target)})


def reduce_EVL(phi: Formula, base: Base, target: Base) -> ReductionOutput:
    """Pipeline for [B] inside E, V or L: probe to the normal form, then
    rebuild balanced with every connective and needed constant replaced
    by its target representation.  Output over B' exactly."""
    _check_over_base(phi, base)
    x = clone_of(base)
    _check_subbase(base, target)
    props = props_in_order(phi)
    if includes("V", x):
        c, chosen, _ = normalize_V(phi)
        out = _emit_conjunctive(c, chosen, target, props, OR)
    elif includes("L", x):
        c, chosen, _ = normalize_L(phi)
        out = _emit_affine(c, chosen, target, props)
    elif includes("E", x):
        c, chosen, _ = normalize_E(phi)
        out = _emit_conjunctive(c, chosen, target, props, AND)
    else:
        raise PreconditionError("the clone of B is not inside E, V or L")
    return _pipeline_output(phi, out, target, "none", ())


# ---------------------------------------------------------------------------
# the dispatcher


_CASES = ("a", "b", "c", "d", "e", "f", "g")


def theorem_case(clone: CloneName) -> str:
    """Which of the seven lattice cases the clone falls in: (a) inside V,
    (b) inside L, (c) inside E, (d) S00..S0^2, (e) S10..S1^2, (f) D2..D,
    (g) above M2.  First match in that order."""
    if includes("V", clone):
        return "a"
    if includes("L", clone):
        return "b"
    if includes("E", clone):
        return "c"
    if includes(clone, "S00") and includes(CloneName("S0", 2), clone):
        return "d"
    if includes(clone, "S10") and includes(CloneName("S1", 2), clone):
        return "e"
    if includes(clone, "D2") and includes("D", clone):
        return "f"
    if includes(clone, "M2"):
        return "g"
    raise ReductionError(f"clone {clone} escapes the case analysis")


def theorem_reduce(phi: Formula, base: Base, target: Base) -> ReductionOutput:
    """Dispatch to the reduction the lattice position of [B] supports.

    Cases (a)-(c) and (g) land in the target base exactly; case (d)
    adjoins ``and``, case (e) adjoins ``or``, and case (f) adjoins the
    default ``and`` (or nothing over a functionally complete target).
    """
    _check_subbase(base, target)
    x = clone_of(base)
    case = theorem_case(x)
    if case in ("a", "b", "c"):
        return reduce_EVL(phi, base, target)
    if case == "d":
        if includes(CloneName("S01", 2), x):
            return reduce_S00(phi, base, target)
        return reduce_S02(phi, base, target)
    if case == "e":
        if includes(CloneName("S11", 2), x):
            return reduce_S10(phi, base, target)
        return reduce_S12(phi, base, target)
    if case == "f":
        return reduce_D(phi, base, target, want="and")
    # case (g): the target generates both and/or, so nothing is adjoined
    _require(member(AND_FN, target) and member(OR_FN, target),
             "case (g) requires and/or to be generated by the target")
    if includes("M", x):
        inner = reduce_S00(phi, base, target)
    else:
        inner = reduce_S02(phi, base, target)
    return _check_target(ReductionOutput(inner.formula, target, "none",
                                         inner.fresh_vars, inner.certificate))


# ---------------------------------------------------------------------------
# canonical connective sets


_STD_BY_NAME = {c.name: c for c in (AND, OR, NOT, XOR, IFF, FALSE, TRUE)}
_STD_BY_NAME["id"] = Connective("id", boolfun.ID_FN)

_SIX_CANONICAL = {
    CloneName("BF"): ("and", "or", "not"),
    CloneName("M"): ("and", "or", "0", "1"),
    CloneName("L"): ("xor", "1"),
    CloneName("N"): ("not", "1"),
    CloneName("E"): ("and", "0", "1"),
    CloneName("V"): ("or", "0", "1"),
}


@dataclass(frozen=True)
class CanonicalResult:
    clone: CloneName
    connectives: tuple[str, ...]
    note: str

    @property
    def canonical_base(self) -> Base:
        return Base([_STD_BY_NAME[name] for name in self.connectives])


def canonical_equivalent(base: Base) -> CanonicalResult:
    """The canonical connective set the problem class of the base reduces
    to.  The six named clones get their exact constant-decorated sets and
    are two-way reducible; the rest are mapped to the constant-free
    skeleton their dispatcher case targets."""
    x = clone_of(base)
    exact = _SIX_CANONICAL.get(x)
    if exact is not None:
        return CanonicalResult(
            x, exact,
            "two-way equivalence; both directions via theorem_reduce")
    case = theorem_case(x)
    if includes("I", x):
        names: tuple[str, ...] = ("id",)
    elif includes("N", x):
        names = ("not",)
    elif case == "a":
        names = ("or",)
    elif case == "b":
        names = ("xor",)
    elif case == "c":
        names = ("and",)
    elif includes("M", x):
        names = ("and", "or")
    else:
        names = ("and", "or", "not")
    return CanonicalResult(
        x, names,
        f"theorem case ({case}); forward direction via theorem_reduce, the "
        f"adjoined connective as the case dictates")
