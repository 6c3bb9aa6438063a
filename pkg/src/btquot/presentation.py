"""Bass-Serre data for a built quotient: a coherent lift of a spanning tree,
vertex and edge groups on the finite part, structural descriptors for the
infinite cusp tails, and a verified generators-and-relations emission.

The infinite tail groups are never materialized; they are reported through
their observed structure (torus type and the tower of unipotent dimensions
along the certified ray), which is exactly what separates the split shape
(F* x F*) |x I from the non-split F* x I.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .btree import Matrix2, act
from .hecke import SizeError, orbit_witness, reduce_vertex, stabilizer
from .quotient import SPLIT, extend_tail_inward


class PresentationError(ValueError):
    pass


VERTEX_GROUP_CAP = 20000


# ---------------------------------------------------------------------------
# small integer Smith normal form (for the line-amalgam abelianization)


def smith_normal_form(rows, ncols):
    """Invariant factors of Z^ncols / <rows>; zero factors mean free ranks."""
    m = [list(r)[:ncols] + [0] * (ncols - len(r)) for r in rows]
    nrows = len(m)
    factors = []
    top = 0
    while top < min(nrows, ncols):
        pivot_pos = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] and (pivot_pos is None
                                or abs(m[i][j]) < abs(m[pivot_pos[0]][pivot_pos[1]])):
                    pivot_pos = (i, j)
        if pivot_pos is None:
            break
        bi, bj = pivot_pos
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        while True:
            # clear the pivot column with row operations (Euclidean swaps)
            for i in range(top + 1, nrows):
                while m[i][top]:
                    q = m[i][top] // m[top][top]
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                    if m[i][top]:
                        m[top], m[i] = m[i], m[top]
            # clear the pivot row with column operations
            for j in range(top + 1, ncols):
                while m[top][j]:
                    q = m[top][j] // m[top][top]
                    for i in range(nrows):
                        m[i][j] -= q * m[i][top]
                    if m[top][j]:
                        for i in range(nrows):
                            m[i][top], m[i][j] = m[i][j], m[i][top]
            if all(m[i][top] == 0 for i in range(top + 1, nrows)) \
                    and all(m[top][j] == 0 for j in range(top + 1, ncols)):
                break
        factors.append(abs(m[top][top]))
        top += 1
    factors += [0] * (ncols - len(factors))
    # normalize the divisibility chain d1 | d2 | ... by gcd/lcm exchanges
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 1):
            a, b = factors[i], factors[i + 1]
            if a == 0 and b != 0:
                factors[i], factors[i + 1] = b, 0
                changed = True
            elif a and b and b % a:
                g = math.gcd(a, b)
                factors[i], factors[i + 1] = g, a * b // g
                changed = True
    return tuple(factors)


# ---------------------------------------------------------------------------
# graph of groups


@dataclass
class GogEdge:
    src: int                  # class id of the source side (lift known)
    dst: int
    lift_src: object
    lift_dst: object          # tree neighbor of lift_src lying in class dst
    in_tree: bool
    g_y: object               # identity on tree edges; act(g_y, lifts[dst]) = lift_dst
    edge_group: object        # materialized list on the finite part, else None
    edge_order: object


@dataclass
class CuspGroupDescriptor:
    cusp: object
    chain: tuple              # maximal certified tail, innermost class first
    splitness: str
    torus: str                # "full", "scalar", or "trivial" (q = 2)
    unipotent_tower: tuple
    attachment_group: object  # materialized junction group (may be None)


@dataclass
class GraphOfGroups:
    base: object
    spanning_tree: tuple      # unordered edge keys
    lifts: dict               # class id -> lifted vertex, coherent on the tree
    vertex_stabs: dict        # class id -> StabDescriptor at the lift
    vertex_groups: dict       # class id -> materialized list (finite part)
    edges: list
    tails: list
    y_classes: tuple


def _maximal_tails(Q):
    tails = [tuple(extend_tail_inward(Q, cusp)) for cusp in Q.cusps]
    seen = {}
    for idx, tail in enumerate(tails):
        for cid in tail:
            if cid in seen:
                raise PresentationError(
                    "certified tails %d and %d overlap at class %d"
                    % (seen[cid], idx, cid))
            seen[cid] = idx
    return tails


def _neighbor_in_class(Q, u, target_cls):
    for nb in sorted(u.neighbors(), key=lambda x: x.key()):
        red_nb = reduce_vertex(nb)
        if red_nb.level_n != target_cls.level_n:
            continue
        if orbit_witness(Q.level, red_nb, target_cls.reduction) is not None:
            return nb
    return None


def build_graph_of_groups(Q):
    """Spanning tree containing every certified tail, a coherent lift of it,
    stabilizers at the lifted vertices, materialized groups on the finite
    part, and witnesses g_y for the edges outside the tree."""
    if not Q.cusps:
        raise PresentationError("quotient has no certified cusps; run "
                                "certify_cusps first")
    level = Q.level
    tails = _maximal_tails(Q)
    tail_classes = {cid for tail in tails for cid in tail}
    y_classes = tuple(sorted(c.id for c in Q.classes
                             if c.id not in tail_classes))

    tail_edge_set = set()
    for tail in tails:
        for a, b in zip(tail, tail[1:]):
            tail_edge_set.add((min(a, b), max(a, b)))
    ordered = [e for e in Q.edges if (e.src, e.dst) in tail_edge_set]
    ordered += [e for e in Q.edges if (e.src, e.dst) not in tail_edge_set]

    parent = {c.id: c.id for c in Q.classes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree_edges = []
    extra_strands = []   # (edge, whether one strand is carried by the tree)
    for e in ordered:
        ra, rb = find(e.src), find(e.dst)
        if ra != rb:
            parent[ra] = rb
            tree_edges.append(e)
            if e.multiplicity > 1:
                extra_strands.append((e, True))
        else:
            extra_strands.append((e, False))
    tree_key_set = {(e.src, e.dst) for e in tree_edges}
    missing = tail_edge_set - tree_key_set
    if missing:
        raise PresentationError("certified tail edges %r left outside the "
                                "spanning tree" % (sorted(missing),))

    # coherent lift: BFS over the spanning tree from the base class, each
    # child lifted to an actual tree neighbor of its parent's lift
    adj_tree = {}
    for e in tree_edges:
        adj_tree.setdefault(e.src, []).append(e.dst)
        adj_tree.setdefault(e.dst, []).append(e.src)
    root = 0
    lifts = {root: Q.class_by_id(root).representative}
    bfs_parent = {root: None}
    order = [root]
    queue = [root]
    while queue:
        cur = queue.pop(0)
        for nb in sorted(adj_tree.get(cur, ())):
            if nb in lifts:
                continue
            lifted = _neighbor_in_class(Q, lifts[cur], Q.class_by_id(nb))
            if lifted is None:
                raise PresentationError(
                    "no tree neighbor of the lift of class %d lies in class "
                    "%d; spanning-tree lift failed" % (cur, nb))
            lifts[nb] = lifted
            bfs_parent[nb] = cur
            order.append(nb)
            queue.append(nb)
    if len(lifts) != len(Q.classes):
        raise PresentationError("quotient graph is not connected")

    vertex_stabs = {cid: stabilizer(lifts[cid], level) for cid in order}

    finite_ids = set(y_classes)
    for tail in tails:
        finite_ids.add(tail[0])
    vertex_groups = {cid: vertex_stabs[cid].materialize(VERTEX_GROUP_CAP)
                     for cid in sorted(finite_ids)}

    edges = []
    for cid in order:
        p = bfs_parent[cid]
        if p is None:
            continue
        group = None
        if p in finite_ids and cid in finite_ids:
            group = [h for h in vertex_groups[p]
                     if act(h, lifts[cid]) == lifts[cid]]
        edges.append(GogEdge(src=p, dst=cid, lift_src=lifts[p],
                             lift_dst=lifts[cid], in_tree=True,
                             g_y=Matrix2.identity(Q.field),
                             edge_group=group,
                             edge_order=None if group is None else len(group)))
    for e, tree_carries_one in extra_strands:
        for src_id, dst_id, lift_src, lift_dst in _other_strand_lifts(
                Q, lifts, vertex_stabs, e, tree_carries_one):
            g_y = orbit_witness(level, reduce_vertex(lifts[dst_id]),
                                reduce_vertex(lift_dst))
            if g_y is None:
                raise PresentationError("no witness for a non-tree edge "
                                        "between classes %d and %d"
                                        % (src_id, dst_id))
            group = None
            if src_id in finite_ids:
                group = [h for h in vertex_groups[src_id]
                         if act(h, lift_dst) == lift_dst]
            edges.append(GogEdge(src=src_id, dst=dst_id, lift_src=lift_src,
                                 lift_dst=lift_dst, in_tree=False, g_y=g_y,
                                 edge_group=group,
                                 edge_order=None if group is None
                                 else len(group)))

    tails_out = [_tail_descriptor(Q, cusp, tail, vertex_stabs, edges)
                 for cusp, tail in zip(Q.cusps, tails)]
    return GraphOfGroups(base=Q, spanning_tree=tuple(sorted(tree_key_set)),
                         lifts=lifts, vertex_stabs=vertex_stabs,
                         vertex_groups=vertex_groups, edges=edges,
                         tails=tails_out, y_classes=y_classes)


def _other_strand_lifts(Q, lifts, vertex_stabs, edge, tree_carries_one):
    """Lifted pairs for the strands of `edge` not carried by the spanning
    tree.

    The stabilizer orbits of one endpoint's lift on its q+1 tree neighbors
    give one strand per orbit landing in the opposite class.  When the edge
    is in the tree, the orbit containing the other endpoint's (adjacent)
    lift is the tree strand and is dropped.
    """
    from .quotient import _orbit_partition
    side = edge.src if Q.class_by_id(edge.src).expanded else edge.dst
    other = edge.dst if side == edge.src else edge.src
    lift_src = lifts[side]
    stab = vertex_stabs[side]
    neighbors = sorted(lift_src.neighbors(), key=lambda x: x.key())
    orbits = _orbit_partition(neighbors, stab.generators())
    target_cls = Q.class_by_id(other)
    pairs = []
    tree_used = None
    for orbit in orbits:
        rep = neighbors[orbit[0]]
        red = reduce_vertex(rep)
        if red.level_n != target_cls.level_n:
            continue
        if orbit_witness(Q.level, red, target_cls.reduction) is None:
            continue
        if tree_carries_one and tree_used is None \
                and any(neighbors[i] == lifts[other] for i in orbit):
            tree_used = orbit
            continue
        pairs.append((side, other, lift_src, rep))
    expected = edge.multiplicity - (1 if tree_carries_one else 0)
    if tree_carries_one and tree_used is None:
        raise PresentationError("tree strand of edge %r not found among the "
                                "orbits" % ((edge.src, edge.dst),))
    if len(pairs) != expected:
        raise PresentationError("found %d extra strands for edge %r, "
                                "expected %d"
                                % (len(pairs), (edge.src, edge.dst),
                                   expected))
    return pairs


def _tail_descriptor(Q, cusp, tail, vertex_stabs, edges):
    q = Q.field.q
    start = tail[0]
    stab = vertex_stabs[start]
    if q == 2:
        torus = "trivial"
    elif stab.has_distinct_torus_block():
        torus = "full"
    else:
        torus = "scalar"
    dims = tuple(vertex_stabs[cid].unipotent_dim() for cid in tail)
    attachment_group = None
    for e in edges:
        if e.in_tree and start in (e.src, e.dst):
            other = e.dst if e.src == start else e.src
            if other not in tail and e.edge_group is not None:
                attachment_group = e.edge_group
                break
    return CuspGroupDescriptor(cusp=cusp, chain=tuple(tail),
                               splitness=cusp.splitness, torus=torus,
                               unipotent_tower=dims,
                               attachment_group=attachment_group)


# ---------------------------------------------------------------------------
# presentation emission


@dataclass
class Presentation:
    generators: list          # (name, Matrix2)
    relations: list           # each a tuple of (name, exponent)
    tail_summaries: list


def _element_order(g, field, cap=100000):
    acc = g
    ident = Matrix2.identity(field)
    n = 1
    while acc != ident:
        acc = acc @ g
        n += 1
        if n > cap:
            raise PresentationError("element order exceeds cap")
    return n


def _group_closure(gens, field, cap=VERTEX_GROUP_CAP):
    ident = Matrix2.identity(field)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = cur @ g
            if nxt.key() not in seen:
                if len(seen) >= cap:
                    raise SizeError("closure exceeded cap")
                seen[nxt.key()] = nxt
                frontier.append(nxt)
    return seen


def _generating_subset(elements, field):
    """Greedy small generating set of a materialized finite group."""
    chosen = []
    have = {Matrix2.identity(field).key()}
    for e in sorted(elements, key=lambda m: m.key()):
        if e.key() in have:
            continue
        chosen.append(e)
        have = set(_group_closure(chosen, field).keys())
        if len(have) >= len(elements):
            break
    return chosen


def _word_search(target, gens, names, field):
    """Express `target` as a word in `gens` with positive exponents (the
    groups are finite, so inverses are redundant).  BFS over the group."""
    ident = Matrix2.identity(field)
    if target == ident:
        return ()
    parents = {ident.key(): None}
    frontier = [ident]
    while frontier:
        nxt_frontier = []
        for cur in frontier:
            for gi, g in enumerate(gens):
                nxt = cur @ g
                k = nxt.key()
                if k in parents:
                    continue
                parents[k] = (cur.key(), gi)
                if nxt == target:
                    word = []
                    kk = k
                    while parents[kk] is not None:
                        pk, gi2 = parents[kk]
                        word.append(names[gi2])
                        kk = pk
                    word.reverse()
                    out = []
                    for nm in word:
                        if out and out[-1][0] == nm:
                            out[-1] = (nm, out[-1][1] + 1)
                        else:
                            out.append((nm, 1))
                    return tuple(out)
                nxt_frontier.append(nxt)
        frontier = nxt_frontier
    raise PresentationError("element not in the generated group")


def emit_presentation(G):
    """Named generators, matrix-verified relation words, and structural
    summaries for the infinite tails.

    Relations: generator orders, one identification per tree-edge-group
    generator (the same matrix written in both endpoint groups), and the
    conjugation relation through g_y for every non-tree edge.  Every
    relation is evaluated in exact arithmetic and must be the identity.
    """
    Q = G.base
    field = Q.field
    ident = Matrix2.identity(field)
    gen_names = []
    gen_by_class = {}
    all_named = {}
    for cid in sorted(G.vertex_groups):
        stab = G.vertex_stabs[cid]
        gens, names = [], []
        for g in stab.generators():
            if g == ident or g in gens:
                continue
            name = "v%d_g%d" % (cid, len(gens))
            gens.append(g)
            names.append(name)
            gen_names.append((name, g))
            all_named[name] = g
        gen_by_class[cid] = (gens, names)

    relations = [((name, _element_order(g, field)),)
                 for name, g in gen_names]

    finite_ids = set(G.vertex_groups)
    edge_counter = 0
    for e in G.edges:
        both_finite = e.src in finite_ids and e.dst in finite_ids
        if not e.in_tree:
            hname = "h%d" % edge_counter
            edge_counter += 1
            gen_names.append((hname, e.g_y))
            all_named[hname] = e.g_y
        if not both_finite or e.edge_group is None:
            continue
        for c in _generating_subset(e.edge_group, field):
            word_src = _word_search(c, *gen_by_class[e.src], field)
            if e.in_tree:
                word_dst = _word_search(c, *gen_by_class[e.dst], field)
                rel = word_src + tuple((nm, -k)
                                       for nm, k in reversed(word_dst))
            else:
                image = e.g_y.inverse() @ c @ e.g_y
                if act(image, G.lifts[e.dst]) != G.lifts[e.dst]:
                    raise PresentationError(
                        "edge injection image does not stabilize the target")
                word_dst = _word_search(image, *gen_by_class[e.dst], field)
                rel = (((hname, -1),) + word_src + ((hname, 1),)
                       + tuple((nm, -k) for nm, k in reversed(word_dst)))
            _verify_relation(rel, all_named, field)
            relations.append(rel)

    for rel in relations:
        _verify_relation(rel, all_named, field)
    return Presentation(generators=gen_names, relations=relations,
                        tail_summaries=list(G.tails))


def _verify_relation(rel, named, field):
    acc = Matrix2.identity(field)
    for name, exp in rel:
        g = named[name]
        if exp < 0:
            g = g.inverse()
            exp = -exp
        for _ in range(exp):
            acc = acc @ g
    if acc != Matrix2.identity(field):
        raise PresentationError("relation %r does not evaluate to the "
                                "identity" % (rel,))


def _word_str(rel):
    return " * ".join(nm if e == 1 else "%s^%d" % (nm, e) for nm, e in rel)


def presentation_text(P, Q):
    out = ["PRESENTATION level=%s q=%d depth=%d" % (Q.level, Q.field.q,
                                                    Q.depth)]
    out.append("GENERATORS")
    for name, g in P.generators:
        out.append("  %s = %r" % (name, g))
    out.append("RELATIONS")
    if not P.relations:
        out.append("  (none)")
    for rel in P.relations:
        out.append("  %s" % _word_str(rel))
    out.append("TAILS")
    for i, tail in enumerate(P.tail_summaries):
        att = ("order %d" % len(tail.attachment_group)
               if tail.attachment_group is not None else "not materialized")
        out.append("  tail %d: classes=%s split=%s torus=%s "
                   "unipotent_dims=%s junction_group=%s"
                   % (i, list(tail.chain), tail.splitness, tail.torus,
                      list(tail.unipotent_tower), att))
    return "\n".join(out) + "\n"


def presentation_json(P, Q):
    doc = {
        "level": str(Q.level),
        "field": {"p": Q.field.p, "s": Q.field.s},
        "generators": [{"name": n, "matrix": repr(g)}
                       for n, g in P.generators],
        "relations": [_word_str(rel) for rel in P.relations],
        "tails": [{
            "classes": list(t.chain),
            "split": t.splitness,
            "torus": t.torus,
            "unipotent_dims": list(t.unipotent_tower),
            "junction_order": (len(t.attachment_group)
                               if t.attachment_group is not None else None),
        } for t in P.tail_summaries],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# the explicit line-amalgam example and its abelianization


def _eigenpair_in_frame(h, frame_reduction):
    """Ordered eigenvalue pair of h read in a tail frame: g h g^{-1} must be
    upper triangular with constant diagonal; returns (alpha, beta)."""
    g = frame_reduction.g
    s = g @ h @ g.inverse()
    if not s.c.is_zero():
        return None
    a, d = s.a, s.d
    if not (a.is_polynomial() and a.num.is_constant()
            and d.is_polynomial() and d.num.is_constant()):
        return None
    return (a.num.coefficient(0), d.num.coefficient(0))


def _discrete_logs(field):
    """dlog table for F_q* with respect to the first primitive element."""
    if field.q == 2:
        return {field.one: 0}
    for gi in range(2, field.q):
        g = field.element(gi)
        logs = {}
        acc = field.one
        for e in range(field.q - 1):
            logs[acc] = e
            acc = acc * g
        if len(logs) == field.q - 1:
            return logs
    raise PresentationError("no primitive element found")


def abelianization_of_line_amalgam(G):
    """Abelianization of the fundamental group when the base is a doubly
    infinite line carrying exactly two split tails glued along one edge.

    Computed, not assumed: a split tail abelianizes onto its torus (a
    scaling ratio != 1 kills the unipotent part, which needs q >= 3), the
    junction group maps to both tail tori by ordered eigenvalue pairs, and
    the cokernel is read off an integer Smith normal form.
    """
    Q = G.base
    q = Q.field.q
    if len(G.tails) != 2:
        raise PresentationError("need exactly two tails, found %d"
                                % len(G.tails))
    if G.y_classes:
        raise PresentationError("base is not a two-tail line: leftover "
                                "classes %r" % (G.y_classes,))
    for t in G.tails:
        if t.splitness != SPLIT or t.torus != "full":
            raise PresentationError(
                "tail %r is not split with a full torus (q = 2 is always "
                "indeterminate); the line-amalgam abelianization does not "
                "apply" % (t.chain,))
    starts = {G.tails[0].chain[0], G.tails[1].chain[0]}
    junction = [e for e in G.edges
                if e.in_tree and e.edge_group is not None
                and {e.src, e.dst} == starts]
    if len(junction) != 1:
        raise PresentationError("tails do not meet along a single edge")
    b0 = junction[0].edge_group
    frames = [reduce_vertex(G.lifts[t.chain[0]]) for t in G.tails]
    logs = _discrete_logs(Q.field)
    m = q - 1
    rows = [[m, 0, 0, 0], [0, m, 0, 0], [0, 0, m, 0], [0, 0, 0, m]]
    for h in b0:
        vec = []
        for frame in frames:
            pair = _eigenpair_in_frame(h, frame)
            if pair is None:
                raise PresentationError("junction element is not "
                                        "triangularizable in a tail frame")
            vec += [logs[pair[0]], logs[pair[1]]]
        rows.append(vec)
    factors = smith_normal_form(rows, 4)
    if any(f == 0 for f in factors):
        raise PresentationError("abelianization came out infinite; the "
                                "junction group does not map onto a torus")
    nontrivial = tuple(f for f in factors if f != 1)
    order = 1
    for f in nontrivial:
        order *= f
    return {
        "invariant_factors": nontrivial,
        "order": order,
        "junction_order": len(b0),
        "is_torus_squared": nontrivial == (m, m) or (m == 1 and not nontrivial),
    }


def amalgam_example_check(field, depth=8, window=3):
    """End-to-end structural check of the degree-one level D = (t): the
    quotient is a line, the two certified cusps match the closed form, the
    tails carry the upper/lower triangular tower shapes, and they are glued
    along the diagonal torus.  Returns a report dict with a `passed` flag.
    """
    from .formulas import cusp_count
    from .hecke import parse_level
    from .quotient import build_quotient, certify_cusps

    level = parse_level("t", field)
    report = {"q": field.q, "level": "t", "depth": depth, "checks": [],
              "passed": True}

    def check(name, ok, detail=""):
        report["checks"].append((name, bool(ok), detail))
        if not ok:
            report["passed"] = False

    Q = build_quotient(level, depth)
    adj = Q.adjacency()
    check("line: class count 2*depth+1", len(Q.classes) == 2 * depth + 1,
          "%d classes" % len(Q.classes))
    check("line: tree of max valency 2",
          len(Q.edges) == len(Q.classes) - 1
          and all(len(v) <= 2 for v in adj.values()))
    cusps = certify_cusps(Q, window)
    formula, exact = cusp_count(level, field.q)
    check("two certified cusps", len(cusps) == 2, "%d" % len(cusps))
    check("closed form agrees and is exact",
          exact and formula == len(cusps),
          "formula=%s certified=%d" % (formula, len(cusps)))
    if not report["passed"]:
        return report
    G = build_graph_of_groups(Q)
    check("tails cover the line (empty finite part)", not G.y_classes,
          repr(G.y_classes))
    tails = G.tails
    check("two tails", len(tails) == 2)
    torus_expect = "trivial" if field.q == 2 else "full"
    for i, t in enumerate(tails):
        check("tail %d torus is %s" % (i, torus_expect),
              t.torus == torus_expect, t.torus)
        steps = [b - a for a, b in zip(t.unipotent_tower,
                                       t.unipotent_tower[1:])]
        check("tail %d unipotent tower steps by 1" % i,
              all(s == 1 for s in steps), repr(t.unipotent_tower))
    check("tail lengths differ by one (junction off center)",
          sorted(len(t.chain) for t in tails) == [depth, depth + 1],
          repr([len(t.chain) for t in tails]))
    # Borel shapes at the two junction vertices, as exact matrix sets
    sides = sorted(tails, key=lambda t: len(t.chain), reverse=True)
    upper_start = G.lifts[sides[0].chain[0]]
    lower_start = G.lifts[sides[1].chain[0]]
    check("junction lifts are the standard vertices",
          upper_start.to_text() == "r=0;a=0"
          and lower_start.to_text() == "r=1;a=0",
          "%s, %s" % (upper_start.to_text(), lower_start.to_text()))
    got_upper = sorted(h.key() for h in
                       G.vertex_groups[sides[0].chain[0]])
    got_lower = sorted(h.key() for h in
                       G.vertex_groups[sides[1].chain[0]])
    check("upper junction group is [[F*, F],[0, F*]]",
          got_upper == sorted(m.key() for m in _borel_consts(field, True)))
    check("lower junction group is [[F*, 0],[tF, F*]]",
          got_lower == sorted(m.key() for m in _borel_consts(field, False)))
    junction = [e for e in G.edges
                if e.in_tree and e.edge_group is not None
                and {e.src, e.dst} == {tails[0].chain[0],
                                       tails[1].chain[0]}]
    check("tails glued along one edge", len(junction) == 1)
    if junction:
        b0 = junction[0].edge_group
        m = field.q - 1
        check("junction group order (q-1)^2", len(b0) == m * m,
              "order %d" % len(b0))
        frame = reduce_vertex(G.lifts[tails[0].chain[0]])
        pairs = []
        for h in b0:
            pr = _eigenpair_in_frame(h, frame)
            if pr is None:
                pairs = None
                break
            pairs.append((pr[0].to_int(), pr[1].to_int()))
        expected = sorted((a, b) for a in range(1, field.q)
                          for b in range(1, field.q))
        check("junction group is the diagonal torus",
              pairs is not None and sorted(pairs) == expected,
              repr(sorted(pairs)) if pairs is not None else "non-triangular")
    if field.q >= 3:
        ab = abelianization_of_line_amalgam(G)
        check("abelianization order (q-1)^2",
              ab["order"] == (field.q - 1) ** 2, repr(ab))
        check("abelianization is F* x F*", ab["is_torus_squared"], repr(ab))
        report["abelianization"] = ab
    report["graph_of_groups"] = G
    report["quotient"] = Q
    return report


def _borel_consts(field, upper):
    """[[alpha, b],[0, beta]] with b constant, or [[alpha, 0],[c*t, beta]]
    with c constant; the two junction vertex groups of the (t)-level line."""
    from .algebra import Polynomial
    out = []
    t = Polynomial.t(field)
    for ai in range(1, field.q):
        for bi in range(1, field.q):
            for ci in range(field.q):
                alpha = Polynomial.constant(field, field.element(ai))
                beta = Polynomial.constant(field, field.element(bi))
                off = Polynomial.constant(field, field.element(ci))
                if upper:
                    out.append(Matrix2.from_polynomials(
                        alpha, off, Polynomial.zero(field), beta))
                else:
                    out.append(Matrix2.from_polynomials(
                        alpha, Polynomial.zero(field), off * t, beta))
    return out


__all__ = [
    "PresentationError", "smith_normal_form", "GogEdge",
    "CuspGroupDescriptor", "GraphOfGroups", "build_graph_of_groups",
    "Presentation", "emit_presentation", "presentation_text",
    "presentation_json", "abelianization_of_line_amalgam",
    "amalgam_example_check",
]
