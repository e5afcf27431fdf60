"""The group specification mini-language.

Three forms:

    perm:<degree>:<cycles>[,<cycles>...]     explicit permutation generators
    preset:<Name>(<int args>)                a catalog construction
    product:<part>|<part>[|<part>...]        direct product of perm/preset parts

Cycle notation is whitespace-separated points in parentheses, "()" for the
identity. parse_group_spec builds the group and stamps it with the canonical
form of its spec; spec_text recovers a spec for any group, deriving an
explicit perm form when none was recorded.
"""

from __future__ import annotations

import re

from . import catalog
from .errors import GroupSpecError, InvalidPermutation
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    Permutation,
    direct_product,
    from_generators,
)

_PRESET_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)\((.*)\)$")
_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_generator(text: str, degree: int) -> Permutation:
    stripped = _CYCLE_RE.sub("", text)
    if stripped.strip():
        raise GroupSpecError(f"stray text {stripped.strip()!r} in generator {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        points = body.split()
        if not points:
            continue
        try:
            cycles.append(tuple(int(p) for p in points))
        except ValueError:
            raise GroupSpecError(f"non-integer point in cycle ({body})") from None
    try:
        return Permutation.from_cycles(degree, cycles)
    except InvalidPermutation as exc:
        raise GroupSpecError(str(exc)) from None


def _parse_perm(rest: str, cap: int) -> FiniteGroup:
    head, sep, gens_text = rest.partition(":")
    if not sep:
        raise GroupSpecError("perm spec needs perm:<degree>:<generators>")
    try:
        degree = int(head)
    except ValueError:
        raise GroupSpecError(f"bad degree {head!r}") from None
    if degree < 1:
        raise GroupSpecError("degree must be >= 1")
    gen_texts = gens_text.split(",")
    if not any(t.strip() for t in gen_texts):
        raise GroupSpecError("perm spec needs at least one generator (use () for identity)")
    gens = [_parse_generator(t, degree) for t in gen_texts]
    return from_generators(gens, degree, cap)


def _parse_preset(rest: str, cap: int) -> FiniteGroup:
    match = _PRESET_RE.match(rest.strip())
    if not match:
        raise GroupSpecError("preset spec needs preset:Name(args)")
    name, args_text = match.groups()
    args = []
    if args_text.strip():
        for piece in args_text.split(","):
            try:
                args.append(int(piece.strip()))
            except ValueError:
                raise GroupSpecError(f"non-integer preset argument {piece.strip()!r}") from None
    return catalog.build_preset(name, args, cap)


def parse_group_spec(text: str, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build the group a spec describes; the result carries the canonical spec."""
    text = text.strip()
    kind, sep, rest = text.partition(":")
    if not sep:
        raise GroupSpecError("spec needs a perm:, preset:, or product: prefix")
    if kind == "perm":
        group = _parse_perm(rest, cap)
        group.spec = _perm_spec_of(group)
        return group
    if kind == "preset":
        return _parse_preset(rest, cap)
    if kind == "product":
        parts = rest.split("|")
        if len(parts) < 2:
            raise GroupSpecError("product spec needs at least two | separated parts")
        factors = []
        for part in parts:
            part = part.strip()
            if not (part.startswith("perm:") or part.startswith("preset:")):
                raise GroupSpecError("product parts must be perm: or preset: specs")
            factors.append(parse_group_spec(part, cap))
        group = direct_product(factors, cap)
        group.spec = "product:" + "|".join(f.spec for f in factors)
        return group
    raise GroupSpecError(f"unknown spec kind {kind!r}")


def _perm_spec_of(G: FiniteGroup) -> str:
    gens = [G.elements[i] for i in G.generators if i != 0]
    if not gens:
        return f"perm:{G.degree}:()"
    return f"perm:{G.degree}:" + ",".join(g.cycle_string() for g in gens)


def spec_text(G: FiniteGroup) -> str:
    """The group's recorded canonical spec, or a derived explicit perm spec."""
    return G.spec if G.spec is not None else _perm_spec_of(G)
