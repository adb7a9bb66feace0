"""Transducers attached to an algorithm: the canonical transducer turns
L/N codings of real numbers into symbolic orbits, and the commutator
transducer rewrites the orbit of a point into the orbit of its image under
a root-fiber element.

Run:  python3 demos/04_transducers.py
"""

from serretlab import (QuadIrr, UPWord, build_ft, build_graph, gt_transducer,
                       ln_expansion, load_bundled, mobius_apply, orbit,
                       pi_value, schreier_quotient)

T = load_bundled("index4")
g = build_graph(T)
t = gt_transducer(g)

print("Canonical transducer of the five-branch map (L/N in, branch indices out):")
z = UPWord.parse("NLLNNLNNNL(LNL)")
alpha = pi_value(z)
print(f"  input  {z}  (the coding of alpha = {alpha})")
print(f"  output {t.run('1', z)}")
print(f"  direct orbit of alpha agrees: {orbit(T, alpha).word}")

print("\nThe same bridge on a random point:")
x = QuadIrr(2, 1, 5, 11)
print(f"  x = {x}, coding {ln_expansion(x)}")
print(f"  transduced orbit {t.run('1', ln_expansion(x))} == stepped orbit "
      f"{orbit(T, x).word}")

print("\nCommutator transducer of the four-branch map that satisfies the "
      "tail property:")
T2 = load_bundled("quad_hold")
g2 = build_graph(T2)
_, phi2 = schreier_quotient(g2)
ft, ft_star = build_ft(T2, g2, phi2)
print(f"  states = root fiber = {ft.states}")
for p in ft.states:
    for a, (q, w) in sorted(ft.edges[p].items()):
        print(f"    {p} --{a}|{''.join(map(str, w))}--> {q}")
print(f"  pruned copy keeps {ft_star.states} with the loops only")

print("\nRewriting an orbit through a fiber state:")
x = QuadIrr.sqrt(3)
oa = orbit(T2, x).word
state = "N"
beta = mobius_apply(g2.vertex_matrix(state), x)
print(f"  orbit({x}) = {oa}")
print(f"  transducer from {state} gives orbit({beta}) = {ft.run(state, oa)}")
print(f"  direct check: {orbit(T2, beta).word}")
