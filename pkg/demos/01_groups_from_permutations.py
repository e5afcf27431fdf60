"""Tour of the group layer: building groups, subgroups, series, quotients.

Run as: python3 demos/01_groups_from_permutations.py
"""

from forcing_lab import Permutation, from_generators, parse_group_spec

print("=" * 64)
print("1. Groups from explicit permutations")
print("=" * 64)

# A 4-cycle and a transposition generate the dihedral group of order 8
# when the transposition is a reflection axis of the square.
rot = Permutation.from_cycles(4, [(0, 1, 2, 3)])
ref = Permutation.from_cycles(4, [(1, 3)])
D4 = from_generators([rot, ref], 4)
print(f"generated group order: {D4.order}")
print(f"element orders: {sorted(int(o) for o in D4.orders())}")
print(f"center order: {D4.center().order}")
print(f"commutator subgroup order: "
      f"{D4.commutator_subgroup(D4.whole_subgroup(), D4.whole_subgroup()).order}")

print()
print("=" * 64)
print("2. The same group through the group-spec grammar")
print("=" * 64)

# perm:<degree>:<cycles>,... builds from cycle notation; preset:Name(args)
# builds a named family; product:part|part takes direct products.
for spec in ("perm:4:(0 1 2 3),(1 3)",
             "preset:Dihedral(8)",
             "product:preset:Cyclic(2)|preset:Cyclic(4)"):
    G = parse_group_spec(spec)
    print(f"{spec:45s} order {G.order}")

print()
print("=" * 64)
print("3. Exponent-p central series")
print("=" * 64)

# For a p-group the series G = G_0 > G_1 > ... > 1 descends by taking
# p-th powers and commutators at each stage; its length is the p-class.
for spec in ("preset:Heisenberg(3)", "preset:GenQuaternion(2)",
              "preset:Abelian(4,4)"):
    G = parse_group_spec(spec)
    orders = [sub.order for sub in G.lower_exponent_p_series()]
    print(f"{spec:28s} series orders {' > '.join(str(o) for o in orders)}")

print()
print("=" * 64)
print("4. Quotients keep a canonical labeling")
print("=" * 64)

# Cosets are labeled by their least member, so the quotient of a quotient
# lines up with quotienting once by the bigger subgroup.
G = parse_group_spec("preset:Heisenberg(3)")
series = G.lower_exponent_p_series()
q = G.quotient(series[1])
print(f"Heisenberg(3) / Frattini has order {q.target.order}")
print(f"fiber of coset 0 (the kernel): {q.fiber(0)}")
print(f"quotient is elementary abelian: "
      f"{sorted(set(int(o) for o in q.target.orders()))} element orders")

print()
print("=" * 64)
print("5. Conjugacy classes")
print("=" * 64)

G = parse_group_spec("preset:Dihedral(8)")
for cls in G.conjugacy_classes():
    print(f"rep {cls.representative}: size {len(cls.members)}, "
          f"element order {cls.order}")
