"""Built-in group constructions and the standing corpus used by sweeps.

Presets build concrete permutation realizations. Degrees are kept small:
cyclic and dihedral groups act naturally, the two-generator 2-group families
act on Z/2^(k-1) by translation and multiplication, quaternion groups act on
themselves, and the Heisenberg-type groups act affinely on F_p vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import GroupSpecError
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    Permutation,
    direct_product,
    from_generators,
    is_prime,
)


def _cyclic(k: int, cap: int) -> FiniteGroup:
    if k < 1:
        raise GroupSpecError("Cyclic(k) needs k >= 1")
    if k == 1:
        return from_generators([Permutation.identity(1)], 1, cap)
    gen = Permutation.from_cycles(k, [tuple(range(k))])
    return from_generators([gen], k, cap)


def _elem_abelian(p: int, r: int, cap: int) -> FiniteGroup:
    if not is_prime(p):
        raise GroupSpecError("ElemAbelian(p, r) needs p prime")
    if r < 1:
        raise GroupSpecError("ElemAbelian(p, r) needs r >= 1")
    return direct_product([_cyclic(p, cap) for _ in range(r)], cap)


def _abelian(ks: Sequence[int], cap: int) -> FiniteGroup:
    if not ks:
        raise GroupSpecError("Abelian(k1, ...) needs at least one factor")
    if any(k < 1 for k in ks):
        raise GroupSpecError("Abelian factors must be >= 1")
    return direct_product([_cyclic(k, cap) for k in ks], cap)


def _dihedral(m: int, cap: int) -> FiniteGroup:
    if m < 4 or m % 2:
        raise GroupSpecError("Dihedral(m) needs even m >= 4")
    k = m // 2
    if k == 2:
        gens = [Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(2, 3)])]
        return from_generators(gens, 4, cap)
    rot = Permutation.from_cycles(k, [tuple(range(k))])
    ref = Permutation(tuple((k - i) % k for i in range(k)))
    return from_generators([rot, ref], k, cap)


def _gen_quaternion(n: int, cap: int) -> FiniteGroup:
    """Q(n) of order 2**(n+2), acting on itself by right multiplication.

    Points encode x^i y^j as i + m*j with m = 2**(n+1); y^2 = x^(2**n) and
    y^-1 x y = x^-1.
    """
    if n < 1:
        raise GroupSpecError("GenQuaternion(n) needs n >= 1")
    m = 2 ** (n + 1)
    half = 2 ** n

    def point(i: int, j: int) -> int:
        return (i % m) + m * j

    x_images = []
    y_images = []
    for pt in range(2 * m):
        i, j = pt % m, pt // m
        if j == 0:
            x_images.append(point(i + 1, 0))
            y_images.append(point(i, 1))
        else:
            x_images.append(point(i - 1, 1))
            y_images.append(point(i + half, 0))
    return from_generators(
        [Permutation(tuple(x_images)), Permutation(tuple(y_images))], 2 * m, cap)


def _two_generator_metacyclic(order: int, multiplier_offset: int, cap: int,
                              name: str) -> FiniteGroup:
    k = order.bit_length() - 1
    if order != 2 ** k or order < 16:
        raise GroupSpecError(f"{name}(m) needs m a power of 2, m >= 16")
    half = order // 2
    a = (half // 2 + multiplier_offset) % half
    trans = Permutation(tuple((i + 1) % half for i in range(half)))
    mult = Permutation(tuple((a * i) % half for i in range(half)))
    return from_generators([trans, mult], half, cap)


def _semidihedral(order: int, cap: int) -> FiniteGroup:
    return _two_generator_metacyclic(order, -1, cap, "SemiDihedral")


def _modular_maximal_cyclic(order: int, cap: int) -> FiniteGroup:
    return _two_generator_metacyclic(order, +1, cap, "ModularMaximalCyclic")


def _heisenberg(p: int, cap: int) -> FiniteGroup:
    """Unitriangular 3x3 matrices over F_p, acting affinely on F_p^2."""
    if not is_prime(p):
        raise GroupSpecError("Heisenberg(p) needs p prime")
    deg = p * p

    def enc(u: int, v: int) -> int:
        return (u % p) * p + (v % p)

    x_images = [enc(pt // p + pt % p, pt % p) for pt in range(deg)]
    y_images = [enc(pt // p, pt % p + 1) for pt in range(deg)]
    return from_generators(
        [Permutation(tuple(x_images)), Permutation(tuple(y_images))], deg, cap)


def _extraspecial(p: int, m: int, cap: int) -> FiniteGroup:
    """Exponent-p extraspecial group of order p**(2m+1), odd p, acting
    affinely on F_p^(m+1)."""
    if not is_prime(p) or p == 2:
        raise GroupSpecError("Extraspecial(p, m) needs p an odd prime")
    if m < 1:
        raise GroupSpecError("Extraspecial(p, m) needs m >= 1")
    deg = p ** (m + 1)

    def decode(pt: int) -> tuple[int, list[int]]:
        digits = []
        for _ in range(m):
            digits.append(pt % p)
            pt //= p
        return pt, digits[::-1]

    def encode(u: int, vs: Sequence[int]) -> int:
        out = u % p
        for v in vs:
            out = out * p + (v % p)
        return out

    gens = []
    for axis in range(m):
        x_images = []
        y_images = []
        for pt in range(deg):
            u, vs = decode(pt)
            x_images.append(encode(u + vs[axis], vs))
            bumped = list(vs)
            bumped[axis] += 1
            y_images.append(encode(u, bumped))
        gens.append(Permutation(tuple(x_images)))
        gens.append(Permutation(tuple(y_images)))
    return from_generators(gens, deg, cap)


PRESETS: dict[str, tuple[Callable[..., FiniteGroup], int, int, str]] = {
    # name: (builder taking (*args, cap), min arity, max arity, signature doc)
    "Cyclic": (_cyclic, 1, 1, "Cyclic(k): cyclic group of order k"),
    "ElemAbelian": (_elem_abelian, 2, 2, "ElemAbelian(p, r): (Z/p)^r"),
    "Abelian": (_abelian, 1, 16, "Abelian(k1, ..., kt): product of cyclic groups"),
    "Dihedral": (_dihedral, 1, 1, "Dihedral(m): dihedral group of order m (even m >= 4)"),
    "GenQuaternion": (_gen_quaternion, 1, 1, "GenQuaternion(n): order 2^(n+2), unique involution"),
    "SemiDihedral": (_semidihedral, 1, 1, "SemiDihedral(m): order m = 2^k >= 16"),
    "ModularMaximalCyclic": (_modular_maximal_cyclic, 1, 1,
                             "ModularMaximalCyclic(m): order m = 2^k >= 16"),
    "Heisenberg": (_heisenberg, 1, 1, "Heisenberg(p): unitriangular 3x3 over F_p, order p^3"),
    "Extraspecial": (_extraspecial, 2, 2,
                     "Extraspecial(p, m): exponent-p extraspecial, order p^(2m+1), odd p"),
}


def build_preset(name: str, args: Sequence[int], cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if name not in PRESETS:
        known = ", ".join(sorted(PRESETS))
        raise GroupSpecError(f"unknown preset {name!r}; known presets: {known}")
    builder, lo, hi, _ = PRESETS[name]
    if not lo <= len(args) <= hi:
        raise GroupSpecError(f"{name} takes {lo}"
                             + (f"..{hi}" if hi != lo else "") + " arguments")
    if name == "Abelian":
        group = builder(tuple(args), cap)
    else:
        group = builder(*args, cap)
    group.spec = f"preset:{name}({','.join(str(a) for a in args)})"
    return group


@dataclass(frozen=True)
class CatalogEntry:
    """One corpus group: a name, the group spec that realizes it, and notes."""

    name: str
    spec: str
    notes: str = ""


# Order 16 with exactly one Frattini-refinement candidate whose quotient is
# generalized quaternion; exercises the candidate-rejection path at p = 2.
TWISTED_C4_SPEC = "perm:8:(0 1 2 3),(1 3)(4 5 6 7)"


def catalog_entries() -> tuple[CatalogEntry, ...]:
    return (
        CatalogEntry("Cyclic(6)", "preset:Cyclic(6)", "smallest nontrivial non-p-group"),
        CatalogEntry("Cyclic(8)", "preset:Cyclic(8)", "cyclic 2-group; no forcing sequence"),
        CatalogEntry("ElemAbelian(2,2)", "preset:ElemAbelian(2,2)", "Klein four group"),
        CatalogEntry("ElemAbelian(3,2)", "preset:ElemAbelian(3,2)", "rank-2 base case, p=3"),
        CatalogEntry("Abelian(4,2)", "preset:Abelian(4,2)", "smallest non-elementary abelian 2-group"),
        CatalogEntry("Dihedral(8)", "preset:Dihedral(8)", "one-step forcing sequence"),
        CatalogEntry("GenQuaternion(1)", "preset:GenQuaternion(1)", "Q8; excluded by hypothesis"),
        CatalogEntry("GenQuaternion(2)", "preset:GenQuaternion(2)", "order 16, unique involution"),
        CatalogEntry("SemiDihedral(16)", "preset:SemiDihedral(16)", "five involutions"),
        CatalogEntry("ModularMaximalCyclic(16)", "preset:ModularMaximalCyclic(16)", ""),
        CatalogEntry("Heisenberg(3)", "preset:Heisenberg(3)", "order 27, class 2, rank 2"),
        CatalogEntry("Extraspecial(3,2)", "preset:Extraspecial(3,2)", "order 243, exponent 3"),
        CatalogEntry("TwistedC4xC4", TWISTED_C4_SPEC,
                     "C4:C4; one refinement candidate has a quaternion quotient"),
        CatalogEntry("Q8xC3", "product:preset:GenQuaternion(1)|preset:Cyclic(3)",
                     "nilpotent, Sylow-2 quaternion"),
        CatalogEntry("HeisxV25", "product:preset:Heisenberg(3)|preset:ElemAbelian(5,2)",
                     "two admissible Sylow factors"),
    )


def _abelian_partitions(total: int) -> list[tuple[int, ...]]:
    """Partitions of `total` with at least two parts, descending, reverse-lex order."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, most: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            if len(prefix) >= 2:
                out.append(prefix)
            return
        for part in range(min(most, remaining), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(total, total, ())
    return out


def two_group_specs(max_order: int = 64) -> tuple[tuple[str, str], ...]:
    """Named spec strings for the standing corpus of 2-groups up to max_order."""
    out: list[tuple[str, str]] = []
    k = 1
    while 2 ** k <= max_order:
        out.append((f"Cyclic({2 ** k})", f"preset:Cyclic({2 ** k})"))
        k += 1
    s = 2
    while 2 ** s <= max_order:
        for partition in _abelian_partitions(s):
            ks = ",".join(str(2 ** part) for part in partition)
            out.append((f"Abelian({ks})", f"preset:Abelian({ks})"))
        s += 1
    for family, start in (("Dihedral", 8), ("GenQuaternion", None),
                          ("SemiDihedral", 16), ("ModularMaximalCyclic", 16)):
        if family == "GenQuaternion":
            n = 1
            while 2 ** (n + 2) <= max_order:
                out.append((f"GenQuaternion({n})", f"preset:GenQuaternion({n})"))
                n += 1
            continue
        m = start
        while m <= max_order:
            out.append((f"{family}({m})", f"preset:{family}({m})"))
            m *= 2
    if 16 <= max_order:
        out.append(("TwistedC4xC4", TWISTED_C4_SPEC))
    products = (
        ("Q8xC2", "product:preset:GenQuaternion(1)|preset:Cyclic(2)", 16),
        ("D4xC2", "product:preset:Dihedral(8)|preset:Cyclic(2)", 16),
        ("Q8xC4", "product:preset:GenQuaternion(1)|preset:Cyclic(4)", 32),
        ("Q8xV4", "product:preset:GenQuaternion(1)|preset:ElemAbelian(2,2)", 32),
        ("Q8xC2xC2", "product:preset:GenQuaternion(1)|preset:Cyclic(2)|preset:Cyclic(2)", 32),
        ("D4xC4", "product:preset:Dihedral(8)|preset:Cyclic(4)", 32),
        ("D4xV4", "product:preset:Dihedral(8)|preset:ElemAbelian(2,2)", 32),
        ("D8xC2", "product:preset:Dihedral(16)|preset:Cyclic(2)", 32),
        ("Q16xC2", "product:preset:GenQuaternion(2)|preset:Cyclic(2)", 32),
        ("SD16xC2", "product:preset:SemiDihedral(16)|preset:Cyclic(2)", 32),
        ("M16xC2", "product:preset:ModularMaximalCyclic(16)|preset:Cyclic(2)", 32),
        ("TwistxC2", f"product:{TWISTED_C4_SPEC}|preset:Cyclic(2)", 32),
        ("Q8xQ8", "product:preset:GenQuaternion(1)|preset:GenQuaternion(1)", 64),
        ("Q8xD4", "product:preset:GenQuaternion(1)|preset:Dihedral(8)", 64),
        ("D4xD4", "product:preset:Dihedral(8)|preset:Dihedral(8)", 64),
        ("Q16xC4", "product:preset:GenQuaternion(2)|preset:Cyclic(4)", 64),
        ("SD16xV4", "product:preset:SemiDihedral(16)|preset:ElemAbelian(2,2)", 64),
        ("M16xC4", "product:preset:ModularMaximalCyclic(16)|preset:Cyclic(4)", 64),
        ("D8xC4", "product:preset:Dihedral(16)|preset:Cyclic(4)", 64),
        ("SD32xC2", "product:preset:SemiDihedral(32)|preset:Cyclic(2)", 64),
    )
    for name, spec, order in products:
        if order <= max_order:
            out.append((name, spec))
    return tuple(out)


def p_group_specs(max_order: int = 256) -> tuple[tuple[str, str], ...]:
    """Named spec strings for the standing corpus of p-groups up to max_order."""
    out = list(two_group_specs(max_order))
    for p in (3, 5, 7, 11):
        k = 1
        while p ** k <= max_order:
            out.append((f"Cyclic({p ** k})", f"preset:Cyclic({p ** k})"))
            k += 1
        s = 2
        while p ** s <= max_order:
            for partition in _abelian_partitions(s):
                ks = ",".join(str(p ** part) for part in partition)
                out.append((f"Abelian({ks})", f"preset:Abelian({ks})"))
            s += 1
    for name, spec, order in (
        ("Heisenberg(3)", "preset:Heisenberg(3)", 27),
        ("Heisenberg(5)", "preset:Heisenberg(5)", 125),
        ("Extraspecial(3,1)", "preset:Extraspecial(3,1)", 27),
        ("Extraspecial(3,2)", "preset:Extraspecial(3,2)", 243),
        ("Extraspecial(5,1)", "preset:Extraspecial(5,1)", 125),
        ("Heis3xC3", "product:preset:Heisenberg(3)|preset:Cyclic(3)", 81),
        ("Heis3xC9", "product:preset:Heisenberg(3)|preset:Cyclic(9)", 243),
        ("Heis3xV9", "product:preset:Heisenberg(3)|preset:ElemAbelian(3,2)", 243),
    ):
        if order <= max_order:
            out.append((name, spec))
    return tuple(out)
