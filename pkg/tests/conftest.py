"""Shared test helpers: seeded random generators and the independent
subset-enumeration oracle for separating degrees."""

from __future__ import annotations

import random
from itertools import combinations

from postlattice import clones
from postlattice.boolfun import INFINITE, BooleanFunction
from postlattice.formula import (
    AND,
    FALSE,
    IFF,
    IMP,
    NIMP,
    NOT,
    OR,
    TRUE,
    XOR,
    Apply,
    Base,
    Connective,
    Prop,
)

FULL_POOL = [AND, OR, NOT, XOR, IMP, IFF, NIMP, clones.MAJ3, clones.XOR3,
             TRUE, FALSE]
MONOTONE_POOL = [AND, OR, clones.MAJ3, clones.G, clones.H, TRUE, FALSE]


def random_function(rng: random.Random, arity: int) -> BooleanFunction:
    return BooleanFunction(arity, tuple(rng.randint(0, 1)
                                        for _ in range(1 << arity)))


def random_base(rng: random.Random, tag: str = "f",
                arities=(1, 2, 2, 2, 3), counts=(1, 1, 2, 2, 3)) -> Base:
    return Base([Connective(f"{tag}{j}", random_function(rng, rng.choice(arities)))
                 for j in range(rng.choice(counts))])


def random_formula(rng: random.Random, conns, names, budget: int):
    """Random formula tree over the given connectives with roughly the
    requested node count."""
    nullary = [c for c in conns if c.arity == 0]
    if budget <= 1 or rng.random() < 0.2:
        if nullary and rng.random() < 0.12:
            return Apply(rng.choice(nullary))
        return Prop(rng.choice(names))
    candidates = [c for c in conns if 1 <= c.arity < budget]
    if not candidates:
        return Prop(rng.choice(names))
    conn = rng.choice(candidates)
    rest = budget - 1
    weights = [rng.random() + 0.1 for _ in range(conn.arity)]
    total = sum(weights)
    args = tuple(random_formula(rng, conns, names, max(1, round(rest * w / total)))
                 for w in weights)
    return Apply(conn, args)


def oracle_separating_degree(f: BooleanFunction, c: int):
    """Independent oracle: enumerate subsets of the preimage's coordinate
    sets by increasing size until one has empty intersection."""
    n = f.arity
    masks = set()
    for p in range(1 << n):
        if f.bits[p] == c:
            m = 0
            for b in range(n):
                if (p >> b) & 1 == c:
                    m |= 1 << b
            masks.add(m)
    if not masks:
        return INFINITE
    masks = sorted(masks)
    meet = (1 << n) - 1
    for m in masks:
        meet &= m
    if meet:
        return INFINITE
    for s in range(1, len(masks) + 1):
        for combo in combinations(masks, s):
            inter = combo[0]
            for m in combo[1:]:
                inter &= m
                if not inter:
                    break
            if not inter:
                return s - 1
    raise AssertionError("empty total intersection but no empty subset")


def all_functions(arity: int):
    rows = 1 << arity
    for t in range(1 << rows):
        yield BooleanFunction(arity, tuple((t >> p) & 1 for p in range(rows)))


def table_of(bits: str, arity: int) -> BooleanFunction:
    return BooleanFunction.from_bitstring(arity, bits)
