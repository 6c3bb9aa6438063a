"""The closed-form counters as pure arithmetic, including general curves.

The tree pipeline only runs over F_q[t] (the projective line with a
degree-one place at infinity), but the counting formulas take the Picard
quantities as inputs, so they remain usable as calculators for other base
curves.

Run:  python demos/03_formula_calculator.py
"""

from btquot import (PicardData, abelianization_verdict, alpha,
                    classifying_cusp_count, cusp_count, formula_report,
                    split_counts)
from btquot.algebra import FieldSpec
from btquot.hecke import parse_level

F2 = FieldSpec(2)
F3 = FieldSpec(3)

print("== cusp numbers over F_q[t] (trivial Picard data) ==")
for q, field, text in [(2, F2, "t"), (2, F2, "t;t+1"), (2, F2, "t^3"),
                       (2, F2, "t^2+t+1"), (2, F2, "t^3;t+1"),
                       (3, F3, "t^3"), (3, F3, "t^2")]:
    level = parse_level(text, field)
    a = alpha(level, q)
    c, exact = cusp_count(level, q)
    print("q=%d D=%-12s alpha=%-3s c(H_D)=%-3d %s"
          % (q, text, a, c, "exact" if exact else "upper bound only"))

print()
print("== split vs non-split cusps (odd multiplicities) ==")
for q, field, text in [(2, F2, "t"), (3, F3, "t^3"), (2, F2, "t^3;t+1")]:
    level = parse_level(text, field)
    d, i = split_counts(level, q)
    print("q=%d D=%-10s split=%d non-split=%d" % (q, text, d, i))

print()
print("== abelianization verdicts ==")
for text in ("t", "t^3", "t^2", "t;t+1"):
    print("D=%-8s -> %s" % (text, abelianization_verdict(parse_level(text,
                                                                     F2))))

print()
print("== a synthetic general-curve computation ==")
# pretend the base curve has |g(2)| = 2 and class-field index 3: the count
# becomes a certified upper bound, scaled by the supplied Picard data
pic = PicardData(g2_order=2, index_theorem=3, index_component=2)
level = parse_level("t^3", F3)
rep = formula_report(level, 3, pic)
print("c(H_D) =", rep.c_HD, "(exact =", rep.exact, ")")
print("per-component classifying count =",
      classifying_cusp_count(level, 3, pic))

print()
print("== the level-zero baseline counts Picard classes ==")
rep = formula_report(parse_level("0", F2), 2, PicardData(pic_R_order=7))
print("c =", rep.c_HD, "(one cusp per ideal class; 7 supplied here)")
