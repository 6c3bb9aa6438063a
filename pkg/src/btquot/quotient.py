"""Quotient graph of the tree under a Hecke congruence group.

The builder runs a breadth-first search over orbit classes starting from the
class of the base vertex: each class representative contributes its q+1 tree
neighbors, the stabilizer partitions them into orbits (one quotient edge per
orbit), and each orbit representative is matched against known classes of
the same reduction level or opens a new class.  Classes and edges found at
depth d are kept when the search is widened, so the output is a growing
snapshot of the full quotient.

Cusp certification walks each boundary-directed chain of valency-2 classes
and checks, on `window` consecutive lifted vertices, that the stabilizers
are nested, act transitively on the q remaining neighbors, and grow by a
factor of exactly q per step.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .btree import BallVertex, Matrix2, act
from .hecke import orbit_witness, reduce_vertex, stabilizer


class QuotientError(ValueError):
    pass


class BoundError(QuotientError):
    pass


SPLIT = "split"
NONSPLIT = "nonsplit"
INDETERMINATE = "indeterminate"


@dataclass
class Strand:
    """One stabilizer orbit on the tree neighbors of a class representative."""
    orbit_size: int
    orbit_rep: BallVertex
    dst: int
    witness_to_rep: object  # h in H_D with act(h, orbit_rep) = rep(dst)


@dataclass
class OrbitClass:
    id: int
    representative: BallVertex
    level_n: int
    layer: int
    stab: object
    reduction: object
    expanded: bool = False
    strands: list = dc_field(default_factory=list)


@dataclass
class QuotientEdge:
    src: int
    dst: int
    multiplicity: int


@dataclass
class CuspDescriptor:
    germ: tuple          # (inner class id, next class id) of the certified pair
    certified_depth: int
    splitness: str
    stab_tower: tuple    # stabilizer orders along the certified ray
    chain: tuple         # class ids, innermost certified vertex first
    unipotent_tower: tuple


@dataclass
class QuotientGraph:
    field: object
    level: object
    depth: int
    classes: list
    edges: list
    cusps: list

    def class_by_id(self, cid):
        return self.classes[cid]

    def adjacency(self):
        """class id -> sorted list of (neighbor id, multiplicity)."""
        adj = {c.id: {} for c in self.classes}
        for e in self.edges:
            adj[e.src][e.dst] = e.multiplicity
            adj[e.dst][e.src] = e.multiplicity
        return {cid: sorted(d.items()) for cid, d in adj.items()}

    def valency(self, cid):
        return len(self.adjacency()[cid])


def _orbit_partition(neighbors, generators):
    """Partition a neighbor list into orbits under the generated group.

    The group fixes the central vertex, so every generator permutes the
    neighbor set; reachability under generator application is the orbit.
    """
    keyed = {v.key(): i for i, v in enumerate(neighbors)}
    unassigned = set(range(len(neighbors)))
    orbits = []
    while unassigned:
        start = min(unassigned)
        frontier = [start]
        orbit = {start}
        while frontier:
            i = frontier.pop()
            for g in generators:
                img = act(g, neighbors[i])
                j = keyed.get(img.key())
                if j is None:
                    raise QuotientError(
                        "stabilizer generator moved a neighbor off the "
                        "neighbor set; stabilizer is wrong")
                if j not in orbit:
                    orbit.add(j)
                    frontier.append(j)
        unassigned -= orbit
        orbits.append(sorted(orbit))
    return orbits


class _Builder:
    def __init__(self, level):
        self.level = level
        self.field = level.field
        self.classes = []
        self.buckets = {}          # level_n -> [class ids]
        self.vertex_class = {}     # vertex key -> (class id, witness_to_rep)
        self.reductions = {}       # vertex key -> ReductionResult

    def _reduce(self, v):
        red = self.reductions.get(v.key())
        if red is None:
            red = reduce_vertex(v)
            self.reductions[v.key()] = red
        return red

    def classify(self, v, layer):
        """Class id of v, opening a new class at `layer` if needed; also the
        witness mapping v onto the class representative."""
        cached = self.vertex_class.get(v.key())
        if cached is not None:
            return cached
        red = self._reduce(v)
        for cid in self.buckets.get(red.level_n, ()):
            cls = self.classes[cid]
            h = orbit_witness(self.level, red, cls.reduction)
            if h is not None:
                result = (cid, h)
                self.vertex_class[v.key()] = result
                return result
        cid = len(self.classes)
        stab = stabilizer(v, self.level, reduction=red)
        cls = OrbitClass(id=cid, representative=v, level_n=red.level_n,
                         layer=layer, stab=stab, reduction=red)
        self.classes.append(cls)
        self.buckets.setdefault(red.level_n, []).append(cid)
        result = (cid, Matrix2.identity(self.field))
        self.vertex_class[v.key()] = result
        return result

    def expand(self, cls):
        v = cls.representative
        neighbors = sorted(v.neighbors(), key=lambda u: u.key())
        gens = cls.stab.generators()
        orbits = _orbit_partition(neighbors, gens)
        for orbit in orbits:
            rep = neighbors[orbit[0]]
            cid, witness = self.classify(rep, cls.layer + 1)
            cls.strands.append(Strand(orbit_size=len(orbit), orbit_rep=rep,
                                      dst=cid, witness_to_rep=witness))
        cls.expanded = True


def build_quotient(level, depth):
    """Quotient snapshot of radius `depth` around the base vertex class."""
    if depth < 1:
        raise QuotientError("depth must be >= 1")
    b = _Builder(level)
    root = BallVertex.base(level.field)
    b.classify(root, 0)
    for layer in range(depth):
        for cls in list(b.classes):
            if cls.layer == layer and not cls.expanded:
                b.expand(cls)
    edges = _aggregate_edges(b.classes, level.field.q)
    return QuotientGraph(field=level.field, level=level, depth=depth,
                         classes=b.classes, edges=edges, cusps=[])


def _aggregate_edges(classes, q):
    counted = {}   # (min id, max id) -> {side id: multiplicity}
    for cls in classes:
        if not cls.expanded:
            continue
        per_dst = {}
        total = 0
        for st in cls.strands:
            per_dst[st.dst] = per_dst.get(st.dst, 0) + 1
            total += st.orbit_size
        if total != q + 1:
            raise QuotientError(
                "neighbor orbits of class %d cover %d of %d tree neighbors"
                % (cls.id, total, q + 1))
        for dst, mult in per_dst.items():
            key = (min(cls.id, dst), max(cls.id, dst))
            counted.setdefault(key, {})[cls.id] = mult
    edges = []
    for (a, c), sides in sorted(counted.items()):
        mults = sorted(set(sides.values()))
        if len(mults) != 1:
            raise QuotientError(
                "edge %r has inconsistent multiplicities %r" % ((a, c), sides))
        edges.append(QuotientEdge(src=a, dst=c, multiplicity=mults[0]))
    return edges


# ---------------------------------------------------------------------------
# cusp certification


def _lift_step(builder_level, u, target_cls):
    """The tree neighbor of u lying in target_cls, if any."""
    for nb in sorted(u.neighbors(), key=lambda x: x.key()):
        red_nb = reduce_vertex(nb)
        if red_nb.level_n != target_cls.level_n:
            continue
        h = orbit_witness(builder_level, red_nb, target_cls.reduction)
        if h is not None:
            return nb
    return None


def _certify_chain(Q, chain, window):
    """Certify the outermost `window` steps of a class chain (inner first).

    Returns (tower, unipotent_tower, lifted) or None.  Checks per step k:
    nested stabilizers Stab(u_k) <= Stab(u_{k+1}), transitivity of Stab(u_k)
    on the q neighbors of u_k away from u_{k+1}, and order ratio exactly q.
    """
    level = Q.level
    q = Q.field.q
    lifted = [Q.class_by_id(chain[0]).representative]
    stabs = [Q.class_by_id(chain[0]).stab]
    for k in range(len(chain) - 1):
        u = lifted[-1]
        nxt = _lift_step(level, u, Q.class_by_id(chain[k + 1]))
        if nxt is None:
            return None
        lifted.append(nxt)
        stabs.append(stabilizer(nxt, level))
    for k in range(window):
        sk, sk1 = stabs[k], stabs[k + 1]
        if sk1.order != q * sk.order:
            return None
        gens = sk.generators()
        # (d): every generator fixes the next vertex on the ray
        if any(act(g, lifted[k + 1]) != lifted[k + 1] for g in gens):
            return None
        # (e): the other q neighbors form a single orbit
        neighbors = sorted(lifted[k].neighbors(), key=lambda x: x.key())
        orbits = _orbit_partition(neighbors, gens)
        orbit_keys = [{neighbors[i].key() for i in orbit} for orbit in orbits]
        target = lifted[k + 1].key()
        fixed = [ks for ks in orbit_keys if ks == {target}]
        big = [ks for ks in orbit_keys if target not in ks]
        if not (len(fixed) == 1 and len(big) == 1 and len(big[0]) == q):
            return None
    tower = tuple(s.order for s in stabs)
    unipotent = tuple(s.unipotent_dim() for s in stabs)
    return tower, unipotent, lifted


def certify_cusps(Q, window=3):
    """One certified cusp descriptor per boundary-directed valency-2 chain
    passing the nesting/transitivity/ratio checks on `window` steps."""
    if window < 2:
        raise BoundError("window must be >= 2")
    if Q.depth < window + 2:
        raise BoundError("depth %d too small for window %d (need >= %d)"
                         % (Q.depth, window, window + 2))
    adj = Q.adjacency()
    cusps = []
    boundary = [c for c in Q.classes if not c.expanded]
    for b in sorted(boundary, key=lambda c: c.id):
        inc = adj[b.id]
        if len(inc) != 1 or inc[0][1] != 1:
            continue
        chain = [b.id, inc[0][0]]
        ok = True
        while len(chain) < window + 1:
            cur, prev = chain[-1], chain[-2]
            nbrs = [(cid, m) for cid, m in adj[cur] if cid != prev]
            if len(nbrs) != 1 or nbrs[0][1] != 1 or len(adj[cur]) != 2:
                ok = False
                break
            chain.append(nbrs[0][0])
        if not ok:
            continue
        chain.reverse()  # innermost certified vertex first
        res = _certify_chain(Q, chain, window)
        if res is None:
            continue
        tower, unipotent, lifted = res
        desc = CuspDescriptor(germ=(chain[0], chain[1]),
                              certified_depth=window,
                              splitness=INDETERMINATE,
                              stab_tower=tower,
                              chain=tuple(chain),
                              unipotent_tower=unipotent)
        desc.splitness = classify_splitness(desc, Q)
        cusps.append(desc)
    Q.cusps = cusps
    return cusps


def classify_splitness(cusp, Q):
    """Split when some stabilizer along the germ has a torus block with two
    distinct eigenvalues; at q = 2 the two structures coincide."""
    if Q.field.q == 2:
        return INDETERMINATE
    outer = Q.class_by_id(cusp.chain[-1])
    return SPLIT if outer.stab.has_distinct_torus_block() else NONSPLIT


def extend_tail_inward(Q, cusp):
    """Largest certified prefix of the cuspidal ray, walking inward from the
    certified germ while the nesting/transitivity/ratio conditions persist.

    Returns the class ids of the maximal tail, innermost first.
    """
    adj = Q.adjacency()
    chain = list(cusp.chain)
    while True:
        inner = chain[0]
        candidates = [cid for cid, _ in adj[inner] if cid != chain[1]]
        if len(candidates) != 1 or candidates[0] in chain:
            break
        trial = [candidates[0]] + chain
        if _certify_chain(Q, trial[:3], 1) is None:
            break
        chain = trial
    return tuple(chain)


# ---------------------------------------------------------------------------
# export


def _sorted_class_ids(Q):
    return [c.id for c in sorted(Q.classes,
                                 key=lambda c: (c.level_n, c.representative.key()))]


def export(Q, fmt="json"):
    if fmt == "json":
        return _export_json(Q)
    if fmt == "dot":
        return _export_dot(Q)
    if fmt == "text":
        return _export_text(Q)
    raise QuotientError("unknown export format %r" % fmt)


def _cusp_class_marks(Q):
    marks = {}
    for cusp in Q.cusps:
        for cid in cusp.chain:
            marks[cid] = cusp.splitness
    return marks


def _export_json(Q):
    adj = Q.adjacency()
    classes = []
    for cid in _sorted_class_ids(Q):
        c = Q.class_by_id(cid)
        classes.append({
            "id": c.id,
            "rep": c.representative.to_text(),
            "level_n": c.level_n,
            "stab_order": c.stab.order,
            "valency": len(adj[c.id]),
        })
    edges = [{"src": e.src, "dst": e.dst, "mult": e.multiplicity}
             for e in sorted(Q.edges, key=lambda e: (e.src, e.dst))]
    cusps = [{"germ": list(c.germ), "split": c.splitness,
              "tower": list(c.stab_tower)}
             for c in sorted(Q.cusps, key=lambda c: c.germ)]
    doc = {
        "field": {"p": Q.field.p, "s": Q.field.s},
        "level": str(Q.level),
        "depth": Q.depth,
        "classes": classes,
        "edges": edges,
        "cusps": cusps,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _export_dot(Q):
    marks = _cusp_class_marks(Q)
    lines = ["graph quotient {"]
    lines.append('  graph [label="H_D quotient, level %s, q=%d, depth %d"];'
                 % (Q.level, Q.field.q, Q.depth))
    for cid in _sorted_class_ids(Q):
        c = Q.class_by_id(cid)
        label = "n=%d\\n|S|=%d" % (c.level_n, c.stab.order)
        extra = ""
        if cid in marks:
            label += "\\ncusp:%s" % marks[cid]
            extra = ", peripheries=2"
        lines.append('  c%d [label="%s"%s];' % (cid, label, extra))
    for e in sorted(Q.edges, key=lambda e: (e.src, e.dst)):
        attr = ' [label="%d"]' % e.multiplicity if e.multiplicity > 1 else ""
        lines.append("  c%d -- c%d%s;" % (e.src, e.dst, attr))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _export_text(Q):
    adj = Q.adjacency()
    out = ["quotient graph: level=%s q=%d depth=%d" % (Q.level, Q.field.q,
                                                       Q.depth)]
    out.append("classes: %d, edges: %d, certified cusps: %d"
               % (len(Q.classes), len(Q.edges), len(Q.cusps)))
    for cid in _sorted_class_ids(Q):
        c = Q.class_by_id(cid)
        out.append("  class %d: rep=%s level_n=%d |stab|=%d valency=%d%s"
                   % (c.id, c.representative.to_text(), c.level_n,
                      c.stab.order, len(adj[c.id]),
                      "" if c.expanded else " (boundary)"))
    for e in sorted(Q.edges, key=lambda e: (e.src, e.dst)):
        out.append("  edge %d -- %d (mult %d)" % (e.src, e.dst,
                                                  e.multiplicity))
    for cusp in sorted(Q.cusps, key=lambda c: c.germ):
        out.append("  cusp germ=%r split=%s tower=%r"
                   % (cusp.germ, cusp.splitness, cusp.stab_tower))
    return "\n".join(out) + "\n"


__all__ = [
    "QuotientError", "BoundError", "SPLIT", "NONSPLIT", "INDETERMINATE",
    "Strand", "OrbitClass", "QuotientEdge", "CuspDescriptor",
    "QuotientGraph", "build_quotient", "certify_cusps", "classify_splitness",
    "extend_tail_inward", "export",
]
