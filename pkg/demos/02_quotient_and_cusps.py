"""Building quotient graphs H_D \\ tree and certifying their cusps.

H_D is the Hecke congruence subgroup of GL2(F_q[t]): determinant in F_q*
and lower-left entry divisible by the modulus of the level divisor D.  The
quotient of the tree is a finite graph with finitely many infinite rays
(cusps); a closed formula predicts how many.

Run:  python demos/02_quotient_and_cusps.py
"""

from btquot import (FieldSpec, build_quotient, certify_cusps, cusp_count,
                    export)
from btquot.hecke import parse_level

F2 = FieldSpec(2)
F3 = FieldSpec(3)

print("== the degree-one level: a doubly infinite line ==")
level = parse_level("t", F2)
Q = build_quotient(level, depth=10)
cusps = certify_cusps(Q, window=3)
print("classes: %d, edges: %d, certified cusps: %d"
      % (len(Q.classes), len(Q.edges), len(cusps)))
formula, exact = cusp_count(level, 2)
print("closed form: %d cusps (exact=%s)" % (formula, exact))
for c in cusps:
    print("  cusp germ %r, stabilizer orders along the ray: %r"
          % (c.germ, c.stab_tower))

print()
print("== a level with multiplicity: t^3 over F_3 ==")
level = parse_level("t^3", F3)
Q = build_quotient(level, depth=12)
cusps = certify_cusps(Q, window=3)
formula, exact = cusp_count(level, 3)
kinds = sorted(c.splitness for c in cusps)
print("certified %d cusps vs formula %d (exact=%s); kinds: %r"
      % (len(cusps), formula, exact, kinds))
print("split cusps carry the full diagonal torus F* x F*;")
print("non-split ones only scalars, visible in the stabilizer blocks.")

print()
print("== even multiplicity: the formula is only an upper bound ==")
level = parse_level("t^2", F3)
Q = build_quotient(level, depth=10)
cusps = certify_cusps(Q, window=3)
formula, exact = cusp_count(level, 3)
print("certified %d <= bound %d (exact=%s)" % (len(cusps), formula, exact))

print()
print("== DOT export (paste into graphviz) ==")
level = parse_level("t", F2)
Q = build_quotient(level, depth=4)
certify_cusps(Q, window=2)
print(export(Q, "dot"))
