"""Synchronizing words: when the letter automaton of an algorithm admits a
reset word, almost every input hits a reset infinitely often, so failures
of the tail property are confined to a thin exceptional set.  Sampling
makes that concrete.

Run:  python3 demos/06_synchronization.py
"""

from serretlab import (QuadIrr, build_graph, gt_transducer, ln_expansion,
                       load_bundled, root_component, sync_check, sync_sample)

print("The three-state automaton of the failing four-branch map:")
T = load_bundled("quad_fail")
t = root_component(gt_transducer(build_graph(T)))
r = sync_check(t)
print(f"  states {t.states}; shortest reset word: {''.join(r.word)}")
for s in t.states:
    end, _ = t.walk(s, r.word)
    print(f"    {s} --{''.join(r.word)}--> {end}")

print("\nThe witnesses of failure avoid every reset:")
for x in (QuadIrr.sqrt(3), QuadIrr.sqrt(3) + 1):
    print(f"  coding of {x} is {ln_expansion(x)}  (no LL factor)")

print("\nRandom inputs, in contrast, reset almost immediately:")
stats = sync_sample(t, 10_000, 64, seed=20260809)
print(f"  {stats['words']} random words of length {stats['length']}: "
      f"{stats['avoided_reset']} avoided every reset "
      f"(fraction {stats['fraction']})")

print("\nA robust failure: the eight-cell map has no reset word at all:")
T8 = load_bundled("eight_cell")
t8 = root_component(gt_transducer(build_graph(T8)))
r8 = sync_check(t8)
print(f"  {r8.states} states, pair graph on {r8.pair_graph_size} vertices, "
      f"synchronizing: {r8.synchronizing}")
stats8 = sync_sample(t8, 2_000, 64, seed=20260809)
print(f"  sampled fraction avoiding resets: {stats8['fraction']}")
