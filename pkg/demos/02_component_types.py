"""Component types and the decidability condition.

A strongly connected component can be reflexive (a loop everywhere),
symmetric (all edges two-way), or a state-split cycle (classes mapping onto
the next class).  When all components of a graph share one of these types,
emptiness of any combined system over it is decidable; otherwise the graph
supports full tile-set simulation.
"""

from sftkit.core import Digraph, Sft1D, build_rauzy, sft_from_edges
from sftkit.classify import check_condition_d, has_only_periodic_points, scc_product, scc_types

refl = Digraph(tuple("abc"), frozenset({("a", "b"), ("b", "c"), ("c", "a"), ("c", "b"),
                                        ("a", "a"), ("b", "b"), ("c", "c")}))
symm = Digraph(tuple("abc"), frozenset({("a", "b"), ("b", "a"), ("b", "c"), ("c", "b"),
                                        ("c", "a"), ("a", "c"), ("b", "b"), ("c", "c")}))
split_edges = {(x, y) for x in "ade" for y in "bf"} | {(y, "c") for y in "bf"} | {("c", x) for x in "ade"}
split = Digraph(tuple("abcdef"), frozenset(split_edges))

for name, g in (("first", refl), ("second", symm), ("third", split)):
    print(f"{name} graph types: {scc_types(g).names()}")

golden = Sft1D.from_words("01", "11")
print("\ngolden mean verdict:", check_condition_d(build_rauzy(golden)).to_json())

coding = sft_from_edges("abc", [("a", "b"), ("b", "c"), ("c", "a"), ("c", "b"), ("c", "c")])
print("coding example verdict:", check_condition_d(build_rauzy(coding)).to_json())

cyc = sft_from_edges("xyz", [("x", "y"), ("y", "z"), ("z", "x")])
print("\nplain 3-cycle has only periodic points:", has_only_periodic_points(cyc))
print("golden mean does not:", has_only_periodic_points(golden))

print("\nproducts multiply away the types:")
prod = scc_product([symm, refl, refl])
for comp in prod.sccs():
    sub = prod.subgraph(comp)
    print("  component of size", len(comp), "types:", scc_types(sub).names())
