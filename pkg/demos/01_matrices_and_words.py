"""Tour of the exact algebra layer: the extended modular group, its named
generators, words, the projective action, and monoid factorization.

Run:  python3 demos/01_matrices_and_words.py
"""

from serretlab import (F, L, N, QuadIrr, R, S, eval_word, generic_factor,
                       mobius_apply, monoid_factor, parse_word)

print("The five named generators (matrices up to sign):")
for name, m in (("L", L), ("N", N), ("S", S), ("R", R), ("F", F)):
    print(f"  {name} = {m}   det {m.det}")

print("\nTorsion and change of generators:")
print("  S*S           =", eval_word("SS"))
print("  R*R*R         =", eval_word("RRR"))
print("  R^2 S         =", eval_word("RRS"), " (= L)")
print("  N L' N        =", eval_word("NL'N"), "(= S)")
print("  F L F         =", F * L * F, "(= N: conjugation by F swaps L and N)")

print("\nA worked product and its unique monoid factorization:")
m = eval_word("LNL")
print("  LNL =", m)
print("  monoid_factor:", monoid_factor(m))
print("  monoid_factor of [[0,1],[1,1]]:", monoid_factor(eval_word("LF")))

print("\nAny element factors over {L, N, F} with inverses:")
for text in ("SRS", "RRF", "N'L"):
    m = eval_word(text)
    w = generic_factor(m)
    print(f"  {text:4s} = {m}  ->  {w}  (round trip: {eval_word(w) == m})")

print("\nThe projective action on exact numbers:")
sqrt3 = QuadIrr.sqrt(3)
print("  F * sqrt(3) =", mobius_apply(F, sqrt3))
print("  N * sqrt(3) =", mobius_apply(N, sqrt3))
word = parse_word("LNF")
print("  LNF * sqrt(3) =", mobius_apply(eval_word(word), sqrt3))
