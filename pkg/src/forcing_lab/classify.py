"""Structural predicates and profiles for finite groups."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAPGroup, NotNilpotent, PNotDividing
from .groups import FiniteGroup, Subgroup, factorize, prime_power


@dataclass(frozen=True)
class PGroupProfile:
    """Summary of a p-group: |G| = p**n, nilpotency class of the exponent-p
    series (p_class), generator rank, and the special-shape flags."""

    p: int
    n: int
    p_class: int
    rank: int
    is_cyclic: bool
    quaternion_index: int | None


@dataclass
class SylowDecomposition:
    factors: dict[int, Subgroup]


def is_p_group(G: FiniteGroup) -> int | None:
    """The prime p with |G| = p**n (n >= 1), or None; trivial group gives None."""
    pp = prime_power(G.order)
    return None if pp is None else pp[0]


def p_class(G: FiniteGroup) -> int:
    return G.p_class()


def generator_rank(G: FiniteGroup) -> int:
    return G.generator_rank()


def is_cyclic(G: FiniteGroup) -> bool:
    return int(G.orders().max()) == G.order


def is_elementary_abelian(G: FiniteGroup) -> tuple[int, int] | None:
    """(p, r) with G abelian of exponent p and order p**r, or None."""
    pp = prime_power(G.order)
    if pp is None:
        return None
    p, n = pp
    if not G.is_abelian():
        return None
    orders = np.unique(G.orders())
    if not set(orders.tolist()) <= {1, p}:
        return None
    return (p, n)


def count_involutions(G: FiniteGroup) -> int:
    return int((G.orders() == 2).sum())


def is_generalized_quaternion(G: FiniteGroup) -> int | None:
    """The index n with G isomorphic to the order-2**(n+2) generalized
    quaternion group, or None. Uses the unique-involution characterization:
    a non-cyclic 2-group with exactly one involution is generalized quaternion."""
    pp = prime_power(G.order)
    if pp is None or pp[0] != 2 or pp[1] < 3:
        return None
    if is_cyclic(G):
        return None
    if count_involutions(G) != 1:
        return None
    return pp[1] - 2


def count_order_p_subgroups(G: FiniteGroup, p: int) -> int:
    """Number of subgroups of order p; each contributes p - 1 elements of order p."""
    if G.order % p:
        raise PNotDividing(f"{p} does not divide {G.order}")
    return int((G.orders() == p).sum()) // (p - 1)


def sylow_decomposition(G: FiniteGroup) -> SylowDecomposition:
    """Sylow subgroups of a nilpotent group, one per prime divisor.

    In a nilpotent group the p-elements form the (normal) Sylow p-subgroup;
    anything else raises NotNilpotent.
    """
    orders = G.orders()
    factors: dict[int, Subgroup] = {}
    for p, k in sorted(factorize(G.order).items()):
        members = [x for x in range(G.order) if prime_power_of(int(orders[x]), p)]
        if len(members) != p ** k:
            raise NotNilpotent(
                f"{len(members)} elements of {p}-power order, expected {p ** k}")
        sub = G.subgroup_closure(members)
        if sub.order != p ** k:
            raise NotNilpotent(f"{p}-elements do not form a subgroup")
        if not G.is_normal(sub):
            raise NotNilpotent(f"Sylow {p}-subgroup is not normal")
        factors[p] = sub
    return SylowDecomposition(factors)


def prime_power_of(n: int, p: int) -> bool:
    """Whether n is a power of p (including n = 1)."""
    while n % p == 0:
        n //= p
    return n == 1


def is_nilpotent(G: FiniteGroup) -> bool:
    try:
        sylow_decomposition(G)
    except NotNilpotent:
        return False
    return True


def p_group_profile(G: FiniteGroup) -> PGroupProfile:
    pp = prime_power(G.order)
    if pp is None:
        raise NotAPGroup(f"order {G.order} is not a prime power")
    p, n = pp
    return PGroupProfile(
        p=p,
        n=n,
        p_class=G.p_class(),
        rank=G.generator_rank(),
        is_cyclic=is_cyclic(G),
        quaternion_index=is_generalized_quaternion(G),
    )
