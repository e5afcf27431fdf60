"""Forcing sequences: construction and independent verification.

A quotient map is *forcing* when some conjugacy class of its target has the
property that every element of every fiber over the class keeps the exact
order of the class. A forcing sequence for a p-group G is a chain
G > Frattini(G) = N_0 > N_1 > ... > N_m = 1 of normal subgroups with index-p
steps, refining the lower exponent-p series, where every consecutive
quotient-to-quotient map G/N_{i+1} -> G/N_i is forcing and no quotient G/N_i
is generalized quaternion. Such a chain exists exactly when G is non-cyclic
and not generalized quaternion.

build_forcing_sequence constructs certificates; verify_certificate re-checks
every claimed condition from scratch, sharing nothing with the builder
beyond the group primitives, and checks the forcing property over every
class member by brute force.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import is_cyclic, is_generalized_quaternion
from .errors import (
    CyclicGroup,
    MalformedCertificate,
    NotAPGroup,
    PreconditionViolated,
    QuaternionGroup,
)
from .groups import FiniteGroup, QuotientMap, Subgroup, is_prime, prime_power
from .groupspec import spec_text

BUILDER_VERSION = "1"


@dataclass(frozen=True)
class ForcingWitness:
    """A conjugacy class (by target index) whose fibers all preserve order."""

    class_rep: int
    class_order: int
    checked_fiber_sizes: tuple[int, ...]


@dataclass(frozen=True)
class ForcingStep:
    """One index-p extension G/N_{i+1} -> G/N_i; index_in_chain locates N_i,
    quotient_order is |G/N_{i+1}|, the order of the extended group."""

    index_in_chain: int
    kernel_order: int
    quotient_order: int
    quotient_is_quaternion: bool
    witness: ForcingWitness


@dataclass(frozen=True)
class ForcingCertificate:
    """Raw element-index chain plus per-step witnesses; no generator sets, so
    verification never depends on closure code."""

    group_spec: str
    chain: tuple[tuple[int, ...], ...]
    steps: tuple[ForcingStep, ...]
    builder_version: str = BUILDER_VERSION


@dataclass(frozen=True)
class CheckResult:
    condition: str
    passed: bool
    detail: str = ""
    step: int | None = None

    def label(self) -> str:
        return self.condition if self.step is None else f"{self.condition}[{self.step}]"


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)


def is_forcing(quotient: QuotientMap) -> ForcingWitness | None:
    """Search the target's conjugacy classes for a forcing witness.

    Classes are scanned in (order, representative) order so the returned
    witness has minimal class order, ties broken by least representative.
    The identity class never qualifies: its fiber is the kernel, whose
    non-identity elements have the wrong order. One representative decides
    each class (conjugate fibers have equal order multisets), but the witness
    records the full per-member check.
    """
    source = quotient.source
    src_orders = source.orders()
    classes = [c for c in quotient.target.conjugacy_classes() if c.representative != 0]
    classes.sort(key=lambda c: (c.order, c.representative))
    for cls in classes:
        rep_fiber = quotient.fiber(cls.representative)
        if any(int(src_orders[x]) != cls.order for x in rep_fiber):
            continue
        sizes = []
        good = True
        for member in cls.members:
            fib = quotient.fiber(member)
            if any(int(src_orders[x]) != cls.order for x in fib):
                good = False
                break
            sizes.append(len(fib))
        if good:
            return ForcingWitness(class_rep=cls.representative,
                                  class_order=cls.order,
                                  checked_fiber_sizes=tuple(sizes))
    return None


def central_step_witness(quotient: QuotientMap) -> ForcingWitness | None:
    """Witness for a quotient by a central subgroup of prime order p.

    Any order-p element y of the source outside the kernel works: for kernel
    elements a, (ya)^p = y^p a^p = e, so the whole fiber of the class of
    project(y) consists of order-p elements. Among the classes so obtained
    (which are exactly the qualifying classes), the one with the least
    representative is returned; None when no such y exists, which for a
    p-group source means it is cyclic or generalized quaternion.
    """
    source = quotient.source
    kernel = quotient.kernel
    p = kernel.order
    if not is_prime(p):
        raise PreconditionViolated(f"kernel order {p} is not prime")
    center = source.center().member_set()
    if not kernel.member_set() <= center:
        raise PreconditionViolated("kernel is not central in the source")
    src_orders = source.orders()
    kset = kernel.member_set()
    candidates = [x for x in range(source.order)
                  if int(src_orders[x]) == p and x not in kset]
    if not candidates:
        return None
    target_class_of: dict[int, int] = {}
    for cls in quotient.target.conjugacy_classes():
        for member in cls.members:
            target_class_of[member] = cls.representative
    best_rep = min(target_class_of[int(quotient.project[x])] for x in candidates)
    cls = next(c for c in quotient.target.conjugacy_classes()
               if c.representative == best_rep)
    sizes = []
    for member in cls.members:
        fib = quotient.fiber(member)
        if any(int(src_orders[x]) != cls.order for x in fib):
            raise PreconditionViolated("central fiber of mixed order; state is corrupt")
        sizes.append(len(fib))
    return ForcingWitness(class_rep=cls.representative, class_order=cls.order,
                          checked_fiber_sizes=tuple(sizes))


def build_forcing_sequence(G: FiniteGroup) -> ForcingCertificate:
    """Construct a verified-by-construction forcing sequence for G.

    Refines each layer of the lower exponent-p series one index-p step at a
    time, always taking the first candidate subgroup (in canonical order)
    whose quotient is not generalized quaternion. For odd p no candidate is
    ever rejected; for p = 2 at most one candidate per layer can be bad.
    """
    pp = prime_power(G.order)
    if pp is None:
        raise NotAPGroup(f"order {G.order} is not a prime power")
    p, _ = pp
    if is_cyclic(G):
        raise CyclicGroup(f"cyclic group of order {G.order} admits no forcing sequence")
    quaternion = is_generalized_quaternion(G)
    if quaternion is not None:
        raise QuaternionGroup(quaternion)
    series = G.lower_exponent_p_series()
    chain: list[Subgroup] = [series[0], series[1]]
    quotients: dict[tuple[int, ...], QuotientMap] = {}

    def quotient_by(sub: Subgroup) -> QuotientMap:
        if sub.members not in quotients:
            quotients[sub.members] = G.quotient(sub)
        return quotients[sub.members]

    for j in range(1, len(series) - 1):
        current = series[j]
        bottom = series[j + 1]
        while current.order > bottom.order:
            chosen = None
            for candidate in G.intermediate_index_p_subgroups(current, bottom, p):
                if is_generalized_quaternion(quotient_by(candidate).target) is None:
                    chosen = candidate
                    break
            if chosen is None:
                raise PreconditionViolated(
                    "every refinement candidate has a generalized quaternion quotient")
            chain.append(chosen)
            current = chosen
    steps = []
    for i in range(len(chain) - 2):
        upper = chain[i + 1]
        lower = chain[i + 2]
        q_low = quotient_by(lower)
        src = q_low.target
        kernel_image = sorted({int(q_low.project[x]) for x in upper.members})
        inner = src.quotient(Subgroup(src, tuple(kernel_image)))
        witness = central_step_witness(inner)
        if witness is None:
            raise PreconditionViolated("central step lost its forcing witness")
        steps.append(ForcingStep(
            index_in_chain=i + 1,
            kernel_order=upper.order // lower.order,
            quotient_order=src.order,
            quotient_is_quaternion=False,
            witness=witness,
        ))
    return ForcingCertificate(
        group_spec=spec_text(G),
        chain=tuple(sub.members for sub in chain),
        steps=tuple(steps),
    )


def _structural_check(G: FiniteGroup, cert: ForcingCertificate) -> None:
    if len(cert.chain) < 2:
        raise MalformedCertificate("chain needs at least the whole group and the trivial subgroup")
    for k, entry in enumerate(cert.chain):
        if not entry:
            raise MalformedCertificate(f"chain entry {k} is empty")
        if len(set(entry)) != len(entry):
            raise MalformedCertificate(f"chain entry {k} has duplicate indices")
        for idx in entry:
            if not isinstance(idx, int) or not 0 <= idx < G.order:
                raise MalformedCertificate(f"chain entry {k} has bad element index {idx!r}")
    if len(cert.steps) != len(cert.chain) - 2:
        raise MalformedCertificate(
            f"{len(cert.steps)} steps do not match a chain of {len(cert.chain)} entries")
    for i, step in enumerate(cert.steps):
        if step.witness is None:
            raise MalformedCertificate(f"step {i} lacks a witness")
        if not 0 <= step.witness.class_rep:
            raise MalformedCertificate(f"step {i} witness representative is negative")


def _is_closed(G: FiniteGroup, members: np.ndarray) -> bool:
    prods = np.unique(G.mul_table[np.ix_(members, members)])
    return len(prods) == len(members) and bool(np.array_equal(prods, members))


def _is_normal_full(G: FiniteGroup, members: np.ndarray) -> bool:
    """Conjugation by every group element, not only generators."""
    allg = np.arange(G.order, dtype=members.dtype)
    conj = G.mul_table[G.mul_table[G.inv_table[allg][:, None], members[None, :]],
                       allg[:, None]]
    conj = np.sort(conj, axis=1)
    return bool((conj == members[None, :]).all())


def verify_certificate(G: FiniteGroup, cert: ForcingCertificate) -> VerificationReport:
    """Re-derive every condition a certificate claims, from scratch.

    Structural impossibilities (bad indices, shape mismatches) raise
    MalformedCertificate; every semantic condition becomes a named pass/fail
    entry in the report. Group-theoretic facts are recomputed independently:
    normality over all conjugators, forcing over every class member's full
    fiber.
    """
    _structural_check(G, cert)
    checks: list[CheckResult] = []
    chain = [tuple(sorted(entry)) for entry in cert.chain]
    arrays = [np.fromiter(entry, dtype=np.int32, count=len(entry)) for entry in chain]

    pp = prime_power(G.order)
    p = pp[0] if pp else None
    hypotheses_ok = (pp is not None and not is_cyclic(G)
                     and is_generalized_quaternion(G) is None)
    detail = ""
    if pp is None:
        detail = f"order {G.order} is not a prime power"
    elif is_cyclic(G):
        detail = "group is cyclic"
    elif is_generalized_quaternion(G) is not None:
        detail = "group is generalized quaternion"
    checks.append(CheckResult("group-hypotheses", hypotheses_ok, detail))

    checks.append(CheckResult(
        "chain-full-group", chain[0] == tuple(range(G.order)),
        "chain must start at the whole group"))
    checks.append(CheckResult(
        "chain-terminates", chain[-1] == (0,),
        "chain must end at the trivial subgroup"))
    descending = all(set(chain[k + 1]) < set(chain[k]) for k in range(len(chain) - 1))
    checks.append(CheckResult("chain-descending", descending,
                              "entries must strictly decrease"))
    for k, members in enumerate(arrays):
        closed = chain[k][0] == 0 and _is_closed(G, members)
        checks.append(CheckResult("chain-closed", closed,
                                  f"entry of size {len(members)}", step=k))
        if closed:
            checks.append(CheckResult("chain-normal", _is_normal_full(G, members),
                                      f"entry {k}", step=k))
        else:
            checks.append(CheckResult("chain-normal", False,
                                      f"entry {k} is not even a subgroup", step=k))
    try:
        frattini = G.frattini().members
        checks.append(CheckResult("chain-frattini", chain[1] == frattini,
                                  "second entry must be the Frattini subgroup"))
    except NotAPGroup as exc:
        checks.append(CheckResult("chain-frattini", False, str(exc)))
    if p is not None:
        index_ok = all(len(chain[k]) == p * len(chain[k + 1])
                       for k in range(1, len(chain) - 1))
        checks.append(CheckResult("chain-index-p", index_ok,
                                  f"consecutive indices must all be {p}"))
    else:
        checks.append(CheckResult("chain-index-p", False, "no p: order is not a prime power"))
    try:
        series_sets = [sub.members for sub in G.lower_exponent_p_series()]
        chain_sets = set(chain)
        refines = all(s in chain_sets for s in series_sets)
        checks.append(CheckResult("chain-refines-series", refines,
                                  "every series term must appear in the chain"))
    except NotAPGroup as exc:
        checks.append(CheckResult("chain-refines-series", False, str(exc)))

    quotient_cache: dict[tuple[int, ...], QuotientMap] = {}

    def quotient_of(entry_index: int) -> QuotientMap | None:
        key = chain[entry_index]
        if key not in quotient_cache:
            try:
                sub = Subgroup(G, key)
                quotient_cache[key] = G.quotient(sub)
            except Exception:
                return None
        return quotient_cache.get(key)

    for k in range(len(chain)):
        q = quotient_of(k)
        if q is None:
            checks.append(CheckResult("quotient-non-quaternion", False,
                                      f"entry {k}: quotient could not be formed",
                                      step=k))
            continue
        idx = is_generalized_quaternion(q.target)
        checks.append(CheckResult("quotient-non-quaternion", idx is None,
                                  f"entry {k}" + ("" if idx is None else
                                                  f": quotient is Q({idx})"),
                                  step=k))

    for i, step in enumerate(cert.steps):
        upper, lower = arrays[i + 1], arrays[i + 2]
        checks.append(CheckResult("step-chain-index", step.index_in_chain == i + 1,
                                  f"recorded {step.index_in_chain}, expected {i + 1}", step=i))
        ratio = len(upper) // len(lower) if len(lower) and len(upper) % len(lower) == 0 else 0
        kernel_ok = ratio >= 2 and is_prime(ratio) and step.kernel_order == ratio
        if p is not None:
            kernel_ok = kernel_ok and ratio == p
        checks.append(CheckResult("step-kernel-order", kernel_ok,
                                  f"recorded {step.kernel_order}, actual index {ratio}", step=i))
        checks.append(CheckResult(
            "step-quotient-order",
            step.quotient_order * len(lower) == G.order,
            f"recorded {step.quotient_order}, expected {G.order // len(lower)}", step=i))

        # [N_i, G] inside N_{i+1} makes the layer central in G/N_{i+1}
        allg = np.arange(G.order, dtype=np.int32)
        comm = G.mul_table[np.ix_(G.inv_table[upper], G.inv_table[allg])]
        comm = G.mul_table[comm, upper[:, None]]
        comm = G.mul_table[comm, allg[None, :]]
        central = set(np.unique(comm).tolist()) <= set(chain[i + 2])
        checks.append(CheckResult("chain-central-layer", central,
                                  "layer commutators must land below", step=i))

        q_up = quotient_of(i + 1)
        q_low = quotient_of(i + 2)
        if q_up is None or q_low is None:
            checks.append(CheckResult("step-witness-class", False,
                                      "quotients could not be formed", step=i))
            checks.append(CheckResult("step-forcing", False,
                                      "quotients could not be formed", step=i))
            checks.append(CheckResult("step-quaternion-flag", False,
                                      "quotients could not be formed", step=i))
            continue
        flag_ok = (step.quotient_is_quaternion is False
                   and is_generalized_quaternion(q_low.target) is None)
        checks.append(CheckResult("step-quaternion-flag", flag_ok,
                                  "recorded flag must be false and match recomputation",
                                  step=i))
        witness = step.witness
        target = q_up.target
        if witness.class_rep >= target.order:
            checks.append(CheckResult("step-witness-class", False,
                                      f"representative {witness.class_rep} out of range",
                                      step=i))
            checks.append(CheckResult("step-forcing", False, "witness unusable", step=i))
            continue
        cls = next(c for c in target.conjugacy_classes()
                   if witness.class_rep in c.members)
        # the step map phi: G/N_{i+1} -> G/N_i factors the two projections
        phi = np.empty(q_low.target.order, dtype=np.int32)
        phi[q_low.project] = q_up.project
        low_orders = q_low.target.orders()
        fibers = [np.nonzero(phi == member)[0] for member in cls.members]
        class_ok = (cls.representative == witness.class_rep
                    and cls.order == witness.class_order
                    and len(witness.checked_fiber_sizes) == len(cls.members)
                    and all(len(f) == s for f, s in
                            zip(fibers, witness.checked_fiber_sizes)))
        checks.append(CheckResult(
            "step-witness-class", class_ok,
            f"class of {witness.class_rep}: rep {cls.representative}, "
            f"order {cls.order}, sizes {[len(f) for f in fibers]}", step=i))
        forcing = all(int(low_orders[x]) == cls.order for f in fibers for x in f)
        checks.append(CheckResult(
            "step-forcing", forcing,
            "every fiber element over every class member must keep the class order",
            step=i))
    return VerificationReport(checks=tuple(checks))
