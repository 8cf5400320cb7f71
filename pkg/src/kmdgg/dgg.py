"""Labeled strong/weak graded graphs on Weyl balls, duality, and counting.

The strong graph labels a Bruhat cover (v, v s_alpha) with <alpha^vee, Lambda>;
the weak graph labels (v, s_i v) with k_i.  Down-then-up minus up-then-down
must equal <K, Lambda> times the identity on interior vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from . import weyl
from .weyl import OutOfBall


class SupportViolation(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    lower: tuple
    upper: tuple
    mult: int
    prov: object         # RealRootEntry for strong edges, node index for weak


class GradedGraph:
    """Directed graded graph on (a subset of) a ball, edges raising length by 1."""

    def __init__(self, ball, vertices, edges, zero_covers=(), label=""):
        self.ball = ball
        self.vertices = set(vertices)
        self.label = label
        self.up = {v: [] for v in self.vertices}
        self.down = {v: [] for v in self.vertices}
        self.edges = list(edges)
        for e in self.edges:
            assert e.mult > 0, f"zero-multiplicity edge {e} must go to the side channel"
            self.up[e.lower].append(e)
            self.down[e.upper].append(e)
        self.zero_covers = list(zero_covers)
        self._tableau_counts = None

    def grade(self, key):
        return self.ball.element(key).length

    def max_grade(self):
        return max((self.grade(v) for v in self.vertices), default=0)

    def vertices_at(self, n):
        return [v for v in self.vertices if self.grade(v) == n]

    def to_json(self):
        def word(key):
            return list(self.ball.element(key).word)
        out = []
        for e in self.edges:
            rec = {"lower": word(e.lower), "upper": word(e.upper), "mult": e.mult}
            if isinstance(e.prov, int):
                rec["node"] = e.prov
            else:
                rec["root"] = list(e.prov.root)
                rec["coroot"] = list(e.prov.coroot)
            out.append(rec)
        return out


def strong_graph(ball, weight, table=None, vertices=None):
    """Strong order on the ball labeled by Chevalley multiplicities for `weight`."""
    gcm = ball.gcm
    if any(c < 0 for c in weight):
        raise ValueError(f"weight {weight} is not dominant")
    if table is None:
        table = weyl.RootTable(gcm, weyl.default_table_depth(ball.radius))
    verts = set(vertices) if vertices is not None else {e.key for e in ball.elements()}
    edges, zeros = [], []
    for v in ball.elements():
        if v.key not in verts:
            continue
        for cov in weyl.strong_covers(v, ball, table):
            if cov.upper.key not in verts:
                continue
            m = gcm.pair(cov.root.coroot, weight)
            assert m >= 0, f"negative Chevalley multiplicity at {cov}"
            e = Edge(v.key, cov.upper.key, m, cov.root)
            (edges if m > 0 else zeros).append(e)
    return GradedGraph(ball, verts, edges, zeros, label="strong")


def weak_graph(ball, K, vertices=None):
    """Left weak order on the ball labeled by the central coefficients k_i."""
    gcm = ball.gcm
    verts = set(vertices) if vertices is not None else {e.key for e in ball.elements()}
    edges, zeros = [], []
    for v in ball.elements():
        if v.key not in verts or v.length >= len(ball.levels) - 1:
            continue
        for cov in weyl.weak_covers(v, gcm):
            if cov.upper.key not in verts or cov.upper.key not in ball.by_key:
                continue
            m = K[cov.node]
            e = Edge(v.key, cov.upper.key, m, cov.node)
            (edges if m > 0 else zeros).append(e)
    return GradedGraph(ball, verts, edges, zeros, label="weak")


def up(graph, s):
    """U(sum) for a sparse formal sum {vertex key: coefficient}."""
    out = {}
    for v, c in s.items():
        if v not in graph.vertices:
            raise OutOfBall(f"{v} not a vertex")
        for e in graph.up[v]:
            out[e.upper] = out.get(e.upper, 0) + c * e.mult
    return {k: v for k, v in out.items() if v != 0}


def down(graph, s):
    out = {}
    for v, c in s.items():
        if v not in graph.vertices:
            raise OutOfBall(f"{v} not a vertex")
        for e in graph.down[v]:
            out[e.lower] = out.get(e.lower, 0) + c * e.mult
    return {k: v for k, v in out.items() if v != 0}


@dataclass
class DualityReport:
    ok: bool
    r: int | None
    expected_r: int
    counterexample: tuple | None = None    # (vertex key, defect formal sum)

    def __bool__(self):
        return self.ok


def verify_duality(strong, weak, interiorN, expected_r):
    """Check (D_weak U_strong - U_strong D_weak) v = r v for all len(v) <= interiorN.

    Exact integer identity; on failure returns the offending vertex together
    with the full defect sum (diagonal and off-diagonal parts both visible).
    """
    ball = strong.ball
    if interiorN > ball.radius - 1:
        raise OutOfBall(f"interiorN {interiorN} needs covers beyond radius {ball.radius}")
    for v in strong.vertices:
        if strong.grade(v) > interiorN:
            continue
        lhs = down(weak, up(strong, {v: 1}))
        rhs = up(strong, down(weak, {v: 1}))
        defect = dict(lhs)
        for k, c in rhs.items():
            defect[k] = defect.get(k, 0) - c
        defect = {k: c for k, c in defect.items() if c != 0}
        if defect != ({v: expected_r} if expected_r else {}):
            return DualityReport(False, None, expected_r, (v, defect))
    return DualityReport(True, expected_r, expected_r)


def restrict_parabolic(strong, weak, J, weight):
    """Induced subgraph pair on the minimal coset representatives W^J.

    Requires the strong weight to vanish on J; every surviving edge is an
    edge of the unrestricted graph.
    """
    for j in J:
        if weight[j] != 0:
            raise SupportViolation(f"weight has coordinate {weight[j]} at node {j} in J")
    ball = strong.ball
    keep = {e.key for level in weyl.min_coset_reps(ball, J) for e in level}
    s = GradedGraph(ball, keep & strong.vertices,
                    [e for e in strong.edges if e.lower in keep and e.upper in keep],
                    [e for e in strong.zero_covers if e.lower in keep and e.upper in keep],
                    label="strong|W^J")
    w = GradedGraph(ball, keep & weak.vertices,
                    [e for e in weak.edges if e.lower in keep and e.upper in keep],
                    [e for e in weak.zero_covers if e.lower in keep and e.upper in keep],
                    label="weak|W^J")
    return s, w


def count_tableaux(graph, key):
    """Number of saturated marked chains from the identity to `key` (exact int)."""
    if key not in graph.vertices:
        raise OutOfBall(f"{key} not a vertex")
    if graph._tableau_counts is None:
        counts = {}
        ident = graph.ball.gcm.rho()
        for level in graph.ball.levels:
            for e in level:
                if e.key not in graph.vertices:
                    continue
                if e.key == ident:
                    counts[e.key] = 1
                    continue
                counts[e.key] = sum(counts.get(ed.lower, 0) * ed.mult
                                    for ed in graph.down[e.key])
        graph._tableau_counts = counts
    return graph._tableau_counts.get(key, 0)


def verify_identity(strong, weak, n, r):
    """Check r^n n! = sum over length-n vertices of f_weak * f_strong."""
    total = 0
    for v in strong.vertices:
        if strong.grade(v) != n:
            continue
        total += count_tableaux(weak, v) * count_tableaux(strong, v)
    return total == r ** n * factorial(n), total
