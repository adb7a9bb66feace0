"""Slow continued fraction algorithms: validation, exact stepping, orbits
of rationals and quadratic irrationals, and first-return accelerations
(the classical Gauss map appears as the acceleration of a two-branch map).

Run:  python3 demos/02_slow_algorithms.py
"""

from serretlab import (ExtRational, QuadIrr, Window, load_bundled, orbit,
                       validate)

T = load_bundled("gauss")          # branches LF and N
print("Branches and cells of the flip map:")
for a in range(T.n):
    kind = "increasing" if T.es[a] == 0 else "decreasing"
    print(f"  {T.branch_word(a):3s} on {T.intervals[a]}  ({kind})")

print("\nStepping is exact; a rational orbit dies at 0 or oo:")
x = ExtRational(5, 13)
res = orbit(T, x)
print(f"  orbit of {x}: symbols {res.word}, {res.status.value} after {res.steps} steps")

print("\nFirst return to E = [0,1) is the floor Gauss map:")
w = Window(0, 0, open_right=True)
x = ExtRational(2, 5)
fr = T.first_return(w, x)
print(f"  2/5 returns to {fr.value} after {fr.time} slow steps (Gauss(2/5) = 1/2)")
x = QuadIrr.sqrt(3) - 1
fr = T.first_return(w, x)
print(f"  sqrt(3)-1 returns to {fr.value} after {fr.time} step")

print("\nIts inverse branches up to excursion depth 3:")
for m in T.accel_branches(w, 3):
    print("  ", m)

print("\nAccelerating {L, N} on [1, oo] instead gives the ceiling algorithm:")
Tc = load_bundled("ceiling")
for m in Tc.accel_branches(Window(1, 1), 2):
    print("  ", m)

print("\nAn acceleration can be undefined at points of different fields:")
Tu = validate(["L", "NL", "NNF"])
print("  branches L, NL, NNF; middle cell fixes (1+sqrt(5))/2,"
      " last fixes 1+sqrt(2)")
print("  inducing on [0,1], the images of both fixed points under L never return")
