"""The graph of an algorithm and its Schreier quotient: subgroup index,
fingerprints, and DOT export.  The index of the branch group is always at
most 8.

Run:  python3 demos/03_graphs_and_schreier.py
"""

from serretlab import (BUNDLED, build_graph, export_dot, fingerprint,
                       load_bundled, schreier_quotient)

print("Index and classification of every bundled algorithm:")
print(f"  {'name':12s} {'n':>2s} {'index':>5s} {'fiber':>5s}  class")
for name in BUNDLED:
    T = load_bundled(name)
    g = build_graph(T)
    s, phi = schreier_quotient(g)
    fp = fingerprint(T, s)
    cls = fp.parity_class or ("full group" if s.index == 1 else "-")
    print(f"  {name:12s} {T.n:2d} {s.index:5d} {len(phi.root_fiber):5d}  {cls}")

print("\nThe five-branch map in detail:")
T = load_bundled("index4")
g = build_graph(T)
s, phi = schreier_quotient(g)
print(f"  graph on {len(g.vertices)} vertices: {', '.join(g.vertices)}")
print(f"  quotient has {s.index} cosets; the class map glues")
for k in range(s.index):
    print(f"    coset {k}: {', '.join(phi.fiber(k))}")
print("  label actions:", {Z: s.perms[Z] for Z in ("L", "N", "F")})

print("\nDOT export (render with graphviz):")
print(export_dot(s, name="quotient"))
