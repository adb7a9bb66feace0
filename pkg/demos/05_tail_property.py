"""Deciding the tail property: for which algorithms do group-equivalent
points eventually share their symbolic orbit?  The checker either
certifies the property (empty, acyclic, or copying commutator transducer)
or refutes it with an exact pair of points, reverified by stepping.

Run:  python3 demos/05_tail_property.py
"""

from serretlab import (census, defect, load_bundled, serret_check,
                       sigma_equivalent)

for name in ("gauss", "pythagorean", "quad_hold", "quad_fail", "eight_cell"):
    T = load_bundled(name)
    v = serret_check(T)
    line = f"{name:12s} -> {v.status}"
    if v.certificate:
        line += f" ({v.certificate} certificate)"
    print(line)
    if v.witness:
        w = v.witness
        print(f"    witness: alpha = {w.alpha} has orbit {w.orbit_alpha}")
        print(f"             beta  = {w.state} * alpha = {w.beta} "
              f"has orbit {w.orbit_beta}")
        print(f"    the relating matrix {w.state_matrix} lies in the branch group,")
        print(f"    yet the orbits never merge: the tail property fails.")

print("\nHow badly can it fail?  The defect bounds the number of orbit-tail")
print("classes inside one group-equivalence class, and a census realizes it:")
T = load_bundled("eight_cell")
from serretlab import UPWord, pi_value
alpha = pi_value(UPWord((), "LLNNLLLLL"))
d = defect(T)
rep = census(T, alpha, 4)
print(f"  eight_cell: defect {d.value}; ball of radius 4 around {alpha} "
      f"splits into {rep.classes} classes (sizes {rep.class_sizes})")

print("\nGroup equivalence itself is decidable through continued fractions:")
from serretlab import QuadIrr
Tf = load_bundled("quad_fail")
s3 = QuadIrr.sqrt(3)
v = sigma_equivalent(Tf, s3, s3 + 1)
print(f"  sqrt(3) ~ sqrt(3)+1 under the branch group: {v.kind}, "
      f"witness {v.witness}")
