import random

import pytest

from postlattice import boolfun
from postlattice.boolfun import AND_FN, NOT_FN
from postlattice.clones import (
    G,
    GN,
    H,
    HN,
    MAJ3,
    SD,
    SD1,
    XNOR3,
    CloneName,
    catalog_entry,
    clone_of,
)
from postlattice.formula import (
    AND,
    FALSE,
    IFF,
    ID,
    IMP,
    NOT,
    OR,
    TRUE,
    XOR,
    Base,
    Connective,
    connectives_of,
    equivalent,
    evaluate,
    parse,
    props_in_order,
    render,
)
from postlattice.reductions import (
    ConstantEliminationError,
    PreconditionError,
    canonical_equivalent,
    eliminate_constants,
    normalize_E,
    normalize_L,
    normalize_V,
    reduce_D,
    reduce_EVL,
    reduce_S00,
    reduce_S02,
    reduce_S10,
    reduce_S12,
    theorem_case,
    theorem_reduce,
)

from conftest import random_formula


def _over(result, base):
    return all(base.contains_function(c.fn)
               for c in connectives_of(result.formula))


def test_normalize_E():
    c, idx, out = normalize_E(parse("x & (y & 1)"))
    assert (c, idx, render(out)) == (1, ("x", "y"), "x & y")
    c, idx, out = normalize_E(parse("x & 0"))
    assert (c, render(out)) == (0, "0")
    c, idx, out = normalize_E(parse("1"))
    assert (c, idx, render(out)) == (1, (), "1")
    with pytest.raises(PreconditionError):
        normalize_E(parse("x | y"))


def test_normalize_V():
    c, idx, out = normalize_V(parse("x | y | 0"))
    assert (c, idx, render(out)) == (0, ("x", "y"), "x | y")
    c, idx, out = normalize_V(parse("1 | x"))
    assert (c, render(out)) == (1, "1")
    c, idx, out = normalize_V(parse("0"))
    assert (c, idx, render(out)) == (0, (), "0")


def test_normalize_L():
    c, idx, out = normalize_L(parse("x <-> y"))
    assert (c, idx, render(out)) == (1, ("x", "y"), "1 ^ x ^ y")
    c, idx, out = normalize_L(parse("x ^ x"))
    assert (c, idx, render(out)) == (0, (), "0")
    c, idx, out = normalize_L(parse("!x"))
    assert (c, idx, render(out)) == (1, ("x",), "1 ^ x")
    assert equivalent(parse("x <-> y"), parse("1 ^ x ^ y"))


def test_eliminate_constants_big_or():
    base = Base([G])
    phi = parse("g(x, y, 1)", base)
    out, fresh = eliminate_constants(phi, base, "and")
    assert fresh == ()
    assert equivalent(phi, out)
    assert _over_base_set(out) <= {G.fn}
    # 1 is gone, replaced through the generated disjunction
    assert 1 not in _constants(out)


def _over_base_set(phi):
    return {c.fn for c in connectives_of(phi) if c.arity >= 1}


def _constants(phi):
    out = set()
    for c in connectives_of(phi):
        if c.arity == 0:
            out.add(c.fn.bits[0])
    return out


def test_eliminate_constants_untouched():
    base = Base([G])
    phi = parse("g(x, y, z)", base)
    out, fresh = eliminate_constants(phi, base, "and")
    assert out == phi and fresh == ()


def test_eliminate_constants_literal_and():
    base = Base([G])
    phi = parse("g(x, 0, y)", base)
    out, _ = eliminate_constants(phi, base, "and")
    assert equivalent(phi, out)
    assert _over_base_set(out) <= {G.fn, AND_FN}


def test_eliminate_constants_fresh():
    base = Base([AND, NOT])
    phi = parse("(x & 1) & !(y & 0)")
    out, fresh = eliminate_constants(phi, base, "fresh")
    assert fresh and fresh[0].startswith("__t")
    assert equivalent(phi, out)
    assert not _constants(out)


def test_eliminate_constants_available_kept():
    base = Base([AND, FALSE])
    phi = parse("x & 0")
    out, _ = eliminate_constants(phi, base, "and")
    assert equivalent(phi, out)


def test_eliminate_constants_impossible():
    base = Base([MAJ3])
    phi = parse("maj3(x, y, 1)", Base([MAJ3]))
    with pytest.raises(ConstantEliminationError):
        eliminate_constants(phi, base, "and")


def test_reduce_S00():
    base = Base([G])
    phi = parse("g(x, y, y)", base)      # x | y over the base
    out = reduce_S00(phi, base, base)
    assert out.extra == "and"
    assert out.certificate.equivalent is True
    assert _over(out, out.target)

    m2 = Base([AND, OR])
    phi2 = parse("x & (y | z)")
    out2 = reduce_S00(phi2, m2, m2)
    assert out2.certificate.equivalent is True

    with pytest.raises(PreconditionError):
        reduce_S00(parse("!x"), Base([NOT]), Base([NOT]))


def test_reduce_S10():
    base = Base([H])
    phi = parse("h(x, y, y)", base)
    out = reduce_S10(phi, base, base)
    assert out.extra == "or"
    assert out.certificate.equivalent is True
    with pytest.raises(PreconditionError):
        reduce_S10(parse("!x"), Base([NOT]), Base([NOT]))


def test_reduce_S02():
    base = Base([GN])
    phi = parse("gn(x, y, z)", base)
    out = reduce_S02(phi, base, base)
    assert out.extra == "and"
    assert out.certificate.equivalent is True
    assert _over(out, out.target)
    out_id = reduce_S02(parse("gn(x, x, x)", base), base, base)
    assert out_id.certificate.equivalent is True
    with pytest.raises(PreconditionError):
        reduce_S02(parse("x & y"), Base([AND]), Base([AND]))


def test_reduce_S12():
    base = Base([HN])
    phi = parse("hn(x, y, z)", base)
    out = reduce_S12(phi, base, base)
    assert out.extra == "or"
    assert out.certificate.equivalent is True


def test_reduce_D_monotone():
    base = Base([MAJ3])
    phi = parse("maj3(x, maj3(y, z, x), z)", base)
    out = reduce_D(phi, base, base, want="and")
    assert out.extra == "and"
    assert out.fresh_vars == ()
    assert out.certificate.equivalent is True
    assert _over(out, out.target)

    out_or = reduce_D(phi, base, base, want="or")
    assert out_or.extra == "or"
    assert out_or.certificate.equivalent is True


def test_reduce_D_fresh_proposition():
    base = Base([SD1])
    target = Base([AND, NOT])
    phi = parse("sd1(x, y, z)", base)
    out = reduce_D(phi, base, target, want="and")
    assert out.extra == "none"
    assert out.fresh_vars and out.fresh_vars[0].startswith("__t")
    assert out.certificate.equivalent is True
    assert _over(out, out.target)


def test_reduce_D_window():
    with pytest.raises(PreconditionError):
        reduce_D(parse("x & y"), Base([AND]), Base([AND]))
    # D-base formulas work against the same self-dual target
    base = Base([SD])
    phi = parse("sd(x, y, z)", base)
    out = reduce_D(phi, base, base, want="and")
    assert out.certificate.equivalent is True


def test_reduce_EVL():
    e1 = Base([AND, TRUE])
    out = reduce_EVL(parse("1 & (x & 1)"), e1, e1)
    assert render(out.formula) == "x"
    assert out.extra == "none"

    xb = Base([XOR])
    out2 = reduce_EVL(parse("x ^ y ^ x"), xb, xb)
    assert render(out2.formula) == "y"

    with pytest.raises(PreconditionError):
        reduce_EVL(parse("x | !y"), Base([OR, NOT]), Base([OR, NOT]))


def test_reduce_EVL_affine_parities():
    # every (constant, parity) shape of the affine normal form
    l3 = Base([XNOR3])
    rng = random.Random(77)
    names = ["x", "y", "z", "w"]
    for _ in range(40):
        phi = random_formula(rng, [XNOR3], names, rng.randint(1, 30))
        out = reduce_EVL(phi, l3, l3)
        assert out.certificate.equivalent is True
        assert _over(out, out.target)
    iffb = Base([IFF])
    for _ in range(40):
        phi = random_formula(rng, [IFF], names, rng.randint(1, 30))
        out = reduce_EVL(phi, iffb, iffb)
        assert out.certificate.equivalent is True
        assert _over(out, out.target)


def test_theorem_case_totality_catalog():
    from postlattice.clones import catalog
    for entry in catalog():
        assert theorem_case(entry.name) in "abcdefg"


def test_theorem_case_totality_random():
    rng = random.Random(53)
    from conftest import random_base
    for i in range(80):
        base = random_base(rng, f"t{i}")
        assert theorem_case(clone_of(base)) in "abcdefg"


def test_theorem_reduce_imp():
    base = Base([IMP])
    phi = parse("x -> (y -> x)")
    out = theorem_reduce(phi, base, base)
    assert out.extra == "and"
    assert out.certificate.equivalent is True
    assert _over(out, out.target)


def test_theorem_reduce_bf_to_nand():
    nand = Connective("nand", boolfun.apply(NOT_FN, [AND_FN]))
    source = Base([AND, OR, NOT])
    target = Base([nand])
    phi = parse("(x & y) | !z")
    out = theorem_reduce(phi, source, target)
    assert out.extra == "none"
    assert out.certificate.equivalent is True
    assert _over_base_set(out.formula) <= {nand.fn}


def test_theorem_reduce_identity_case():
    base = Base([ID])
    out = theorem_reduce(parse("x"), base, base)
    assert render(out.formula) == "x"
    assert out.extra == "none"


def test_theorem_reduce_requires_subbase():
    with pytest.raises(PreconditionError):
        theorem_reduce(parse("x & y"), Base([AND]), Base([OR]))


def test_monotone_pipelines_never_negate():
    rng = random.Random(59)
    base = Base([AND, OR])
    names = ["x", "y", "z", "w"]
    for _ in range(30):
        phi = random_formula(rng, [AND, OR], names, rng.randint(2, 25))
        out = theorem_reduce(phi, base, base)
        assert NOT_FN not in _over_base_set(out.formula)
        assert out.certificate.equivalent is True


def test_big_or_soundness_assert():
    # a context where the constant 1 survives but the formula is not
    # falsified at all-zeros cannot arise under the pipeline
    # preconditions; the elimination asserts it anyway
    base = Base([G])
    phi = parse("g(x, y, 1)", base)
    assert evaluate(phi, {p: 0 for p in props_in_order(phi)}) == 0
    out, _ = eliminate_constants(phi, base, "and")
    assert equivalent(phi, out)


def test_canonical_six():
    cases = {
        "BF": (Base([AND, NOT]), ("and", "or", "not")),
        "M": (Base([AND, OR, FALSE, TRUE]), ("and", "or", "0", "1")),
        "L": (Base([XOR, TRUE]), ("xor", "1")),
        "N": (Base([NOT, FALSE, TRUE]), ("not", "1")),
        "E": (Base([AND, FALSE, TRUE]), ("and", "0", "1")),
        "V": (Base([OR, FALSE, TRUE]), ("or", "0", "1")),
    }
    for name, (base, want) in cases.items():
        got = canonical_equivalent(base)
        assert got.clone == CloneName(name)
        assert got.connectives == want
        assert clone_of(got.canonical_base) == CloneName(name)


def test_canonical_other_clones():
    assert canonical_equivalent(Base([ID])).connectives == ("id",)
    assert canonical_equivalent(Base([NOT])).connectives == ("not",)
    assert canonical_equivalent(Base([AND])).connectives == ("and",)
    assert canonical_equivalent(Base([OR])).connectives == ("or",)
    assert canonical_equivalent(Base([XOR])).connectives == ("xor",)
    assert canonical_equivalent(Base([AND, OR])).connectives == ("and", "or")
    assert canonical_equivalent(Base([IMP])).connectives == ("and", "or", "not")


def test_fresh_vars_only_in_bf_branch():
    rng = random.Random(61)
    base = Base([MAJ3])
    names = ["x", "y", "z"]
    for _ in range(20):
        phi = random_formula(rng, [MAJ3], names, rng.randint(2, 20))
        out = reduce_D(phi, base, base, want="and")
        assert out.fresh_vars == ()
