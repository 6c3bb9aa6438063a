"""Bass-Serre data: from a quotient graph to an amalgam presentation.

For the degree-one level the quotient is a doubly infinite line, the group
decomposes as upper-triangular matrices over (F*, F[t]) amalgamated with
the lower-triangular ones (congruence condition on the corner) along the
diagonal torus, and the abelianization is F* x F*.  All of that is checked
by exact matrix arithmetic below.

Run:  python demos/04_amalgam.py
"""

from btquot import (FieldSpec, abelianization_of_line_amalgam,
                    amalgam_example_check, build_graph_of_groups,
                    build_quotient, certify_cusps, emit_presentation,
                    presentation_text)
from btquot.hecke import parse_level

F3 = FieldSpec(3)

print("== graph of groups for q=3, D=(t) ==")
Q = build_quotient(parse_level("t", F3), depth=8)
certify_cusps(Q, window=3)
G = build_graph_of_groups(Q)
print("finite part classes:", list(G.y_classes) or "(none: two rays glued)")
for i, tail in enumerate(G.tails):
    print("tail %d: %s, torus=%s, unipotent dims %r" %
          (i, tail.splitness, tail.torus, list(tail.unipotent_tower)))

print()
print("== emitted presentation (verified relations) ==")
P = emit_presentation(G)
print(presentation_text(P, Q))

print("== abelianization via the junction torus ==")
ab = abelianization_of_line_amalgam(G)
print(ab)

print()
print("== the same checks across fields ==")
for p, s in [(2, 1), (3, 1), (2, 2), (5, 1)]:
    field = FieldSpec(p, s)
    rep = amalgam_example_check(field, depth=6)
    note = ""
    if "abelianization" in rep:
        note = " abelianization order %d" % rep["abelianization"]["order"]
    print("q=%d: %s%s" % (field.q, "PASS" if rep["passed"] else "FAIL", note))
