"""Fomin growth-diagram engine: local rules, insertion, twists, mixed insertion.

The engine is instance-agnostic: vertices are opaque hashables, markings are
integers 1..m (auxiliary twist markings ride along as pairs), and the
differential bijection is supplied as four callbacks.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class MalformedSquare(ValueError):
    pass


class BijectionDomainError(ValueError):
    pass


class InconsistentPair(ValueError):
    pass


class NotGraphAutomorphism(ValueError):
    pass


@dataclass(frozen=True)
class DifferentialBijection:
    """Callbacks witnessing DU - UD = r Id for a dual graded graph pair.

    offdiag(x, y, z, m, mp) -> (w, M, Mp)        for x != y
    offdiag_inv(x, y, w, M, Mp) -> (z, m, mp)
    diag(x, item) -> (w, M, Mp)                  item = ("color", c) | ("path", (z, m, mp))
    diag_inv(x, w, M, Mp) -> item
    """

    r: int
    offdiag: object
    offdiag_inv: object
    diag: object
    diag_inv: object


def forward_square(z, y, x, m, mp, c, phi):
    """One local-rule step: north-west data (z, y, x) plus entry c -> (w, M, Mp).

    m marks the edge z->y (None iff degenerate), mp marks z->x.  A nonzero
    color is only allowed on a fully degenerate corner z = x = y.
    """
    if (m is None) != (z == y):
        raise MalformedSquare(f"marking m={m} inconsistent with z==y being {z == y}")
    if (mp is None) != (z == x):
        raise MalformedSquare(f"marking mp={mp} inconsistent with z==x being {z == x}")
    if c and not (z == x == y):
        raise MalformedSquare("nonzero entry in a square with a non-degenerate corner")
    if z == x == y:
        if not c:
            return z, None, None
        return phi.diag(x, ("color", c))
    if z != x and x == y:
        return phi.diag(x, ("path", (z, m, mp)))
    if z == y and z != x:
        return x, None, mp
    if z == x and z != y:
        return y, m, None
    return phi.offdiag(x, y, z, m, mp)


def inverse_square(x, y, w, M, Mp, phi):
    """Inverse local rule: south-east data -> (z, m, mp, c)."""
    if (M is None) != (x == w):
        raise MalformedSquare(f"marking M={M} inconsistent with x==w being {x == w}")
    if (Mp is None) != (y == w):
        raise MalformedSquare(f"marking Mp={Mp} inconsistent with y==w being {y == w}")
    if x == y:
        if w == x:
            return x, None, None, 0
        res = phi.diag_inv(x, w, M, Mp)
        if res[0] == "color":
            return x, None, None, res[1]
        z, m, mp = res[1]
        return z, m, mp, 0
    if w == x:
        return y, None, Mp, 0
    if w == y:
        return x, M, None, 0
    z, m, mp = phi.offdiag_inv(x, y, w, M, Mp)
    return z, m, mp, 0


@dataclass(frozen=True)
class ColoredPermutation:
    """A monomial matrix: entry (i, targets[i-1]) holds colors[i-1].

    Colors are ints 1..r; for mixed insertion a color is a triple (c, p, pp).
    """

    targets: tuple
    colors: tuple = None

    def __post_init__(self):
        n = len(self.targets)
        if sorted(self.targets) != list(range(1, n + 1)):
            raise ValueError(f"{self.targets} is not a permutation of 1..{n}")
        if self.colors is None:
            object.__setattr__(self, "colors", (1,) * n)

    @property
    def n(self):
        return len(self.targets)

    def entry(self, i, j):
        """Color at matrix position (i, j), or 0."""
        return self.colors[i - 1] if self.targets[i - 1] == j else 0

    def row_of_column(self, j):
        return self.targets.index(j) + 1

    def inverse(self):
        n = self.n
        inv = [0] * n
        for i, j in enumerate(self.targets, start=1):
            inv[j - 1] = i
        return ColoredPermutation(tuple(inv), tuple(self.colors[t - 1] for t in inv))

    def one_line(self):
        return "".join(str(t) for t in self.targets)


def permutation(one_line):
    """Parse one-line notation: "412635" or an iterable of values."""
    if isinstance(one_line, str):
        vals = tuple(int(ch) for ch in one_line)
    else:
        vals = tuple(one_line)
    return ColoredPermutation(vals)


@dataclass(frozen=True)
class Step:
    lower: object
    upper: object
    marking: object


@dataclass(frozen=True)
class TableauPath:
    start: object
    steps: tuple

    @property
    def shape(self):
        return self.steps[-1].upper if self.steps else self.start

    def chain(self):
        return [self.start] + [s.upper for s in self.steps]

    def __len__(self):
        return len(self.steps)


@dataclass
class GrowthDiagram:
    n: int
    grid: list               # (n+1) x (n+1) vertices
    hmark: list               # hmark[i][j] marks grid[i][j-1] -> grid[i][j]
    vmark: list
    sigma: ColoredPermutation
    haux: list = None         # mixed-insertion auxiliary markings
    vaux: list = None

    def south_path(self):
        steps = []
        for j in range(1, self.n + 1):
            lo, hi = self.grid[self.n][j - 1], self.grid[self.n][j]
            if lo == hi:
                continue
            mark = self.hmark[self.n][j]
            if self.haux is not None:
                mark = (mark, self.haux[self.n][j])
            steps.append(Step(lo, hi, mark))
        return TableauPath(self.grid[self.n][0], tuple(steps))

    def east_path(self):
        steps = []
        for i in range(1, self.n + 1):
            lo, hi = self.grid[i - 1][self.n], self.grid[i][self.n]
            if lo == hi:
                continue
            mark = self.vmark[i][self.n]
            if self.vaux is not None:
                mark = (mark, self.vaux[i][self.n])
            steps.append(Step(lo, hi, mark))
        return TableauPath(self.grid[0][self.n], tuple(steps))


def insert(sigma, phi, hat0):
    """Row-major growth-diagram fill; returns (P, Q, diagram).

    P is the south-edge path (the graph whose edges run horizontally), Q the
    east-edge path; both end at the common shape of grade n.
    """
    n = sigma.n
    grid = [[hat0] * (n + 1) for _ in range(n + 1)]
    hmark = [[None] * (n + 1) for _ in range(n + 1)]
    vmark = [[None] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            w, M, Mp = forward_square(
                grid[i - 1][j - 1], grid[i - 1][j], grid[i][j - 1],
                hmark[i - 1][j], vmark[i][j - 1], sigma.entry(i, j), phi)
            grid[i][j] = w
            hmark[i][j] = M
            vmark[i][j] = Mp
    diagram = GrowthDiagram(n, grid, hmark, vmark, sigma)
    return diagram.south_path(), diagram.east_path(), diagram


def reverse(P, Q, phi, hat0):
    """Invert insertion: rebuild the grid from (P, Q) and read off sigma."""
    if P.shape != Q.shape:
        raise InconsistentPair(f"shapes differ: {P.shape} vs {Q.shape}")
    n = len(P.steps)
    if len(Q.steps) != n:
        raise InconsistentPair("P and Q have different numbers of steps")
    grid = [[None] * (n + 1) for _ in range(n + 1)]
    hmark = [[None] * (n + 1) for _ in range(n + 1)]
    vmark = [[None] * (n + 1) for _ in range(n + 1)]
    chain = P.chain()
    if chain[0] != hat0:
        raise InconsistentPair("P does not start at the minimum")
    for j in range(n + 1):
        grid[n][j] = chain[j]
    for j, s in enumerate(P.steps, start=1):
        hmark[n][j] = s.marking
    chain = Q.chain()
    if chain[0] != hat0:
        raise InconsistentPair("Q does not start at the minimum")
    for i in range(n + 1):
        grid[i][n] = chain[i]
    for i, s in enumerate(Q.steps, start=1):
        vmark[i][n] = s.marking
    targets = [0] * n
    colors = [0] * n
    for i in range(n, 0, -1):
        for j in range(n, 0, -1):
            z, m, mp, c = inverse_square(
                grid[i][j - 1], grid[i - 1][j], grid[i][j],
                hmark[i][j], vmark[i][j], phi)
            grid[i - 1][j - 1] = z
            hmark[i - 1][j] = m
            vmark[i][j - 1] = mp
            if c:
                if targets[i - 1]:
                    raise InconsistentPair(f"two entries recovered in row {i}")
                targets[i - 1] = j
                colors[i - 1] = c
    for i in range(n + 1):
        if grid[0][i] != hat0 or grid[i][0] != hat0:
            raise InconsistentPair("recovered border is not the minimum vertex")
    if 0 in targets:
        raise InconsistentPair("not every row recovered an entry")
    return ColoredPermutation(tuple(targets), tuple(colors))


# ---------------------------------------------------------------------------
# automorphisms, twisting, mixed insertion

@dataclass(frozen=True)
class Automorphism:
    fwd: object
    inv: object
    order: int

    def __call__(self, v):
        return self.fwd(v)

    def power(self, k):
        k %= self.order
        def f(v, k=k):
            for _ in range(k):
                v = self.fwd(v)
            return v
        def g(v, k=k):
            for _ in range(k):
                v = self.inv(v)
            return v
        return Automorphism(f, g, self.order)


IDENTITY_AUT = Automorphism(lambda v: v, lambda v: v, 1)


def compose_aut(a, b):
    """a after b, as vertex maps."""
    from math import lcm
    return Automorphism(lambda v: a.fwd(b.fwd(v)),
                        lambda v: b.inv(a.inv(v)),
                        lcm(a.order, b.order))


def twist(phi, tau):
    """Phi^tau: conjugate every component of phi by the automorphism tau."""
    def offdiag(x, y, z, m, mp):
        w, M, Mp = phi.offdiag(tau.fwd(x), tau.fwd(y), tau.fwd(z), m, mp)
        return tau.inv(w), M, Mp

    def offdiag_inv(x, y, w, M, Mp):
        z, m, mp = phi.offdiag_inv(tau.fwd(x), tau.fwd(y), tau.fwd(w), M, Mp)
        return tau.inv(z), m, mp

    def diag(x, item):
        if item[0] == "path":
            z, m, mp = item[1]
            item = ("path", (tau.fwd(z), m, mp))
        w, M, Mp = phi.diag(tau.fwd(x), item)
        return tau.inv(w), M, Mp

    def diag_inv(x, w, M, Mp):
        res = phi.diag_inv(tau.fwd(x), tau.fwd(w), M, Mp)
        if res[0] == "path":
            z, m, mp = res[1]
            return ("path", (tau.inv(z), m, mp))
        return res

    return DifferentialBijection(phi.r, offdiag, offdiag_inv, diag, diag_inv)


def verify_automorphism(graph, tau):
    """Check a vertex map preserves grading, edges and multiplicities of a graph."""
    mult = {(e.lower, e.upper): e.mult for e in graph.edges}
    for v in graph.vertices:
        if tau.fwd(v) not in graph.vertices:
            raise NotGraphAutomorphism(f"image of {v} leaves the vertex set")
        if graph.grade(tau.fwd(v)) != graph.grade(v):
            raise NotGraphAutomorphism(f"grading not preserved at {v}")
    for (lo, hi), m in mult.items():
        if mult.get((tau.fwd(lo), tau.fwd(hi))) != m:
            raise NotGraphAutomorphism(f"edge {lo}->{hi} not preserved")
    return True


def mixed_insert(sigma, phi, tau, taup, hat0):
    """(tau, tau')-mixed insertion of a permutation with (c, p, p') labels.

    Twist exponents per square: k = p of the entry in the same column,
    k' = p' of the entry in the same row.  Horizontal edges at and below an
    entry carry auxiliary marking p, vertical edges at and right carry p'.
    """
    n = sigma.n
    grid = [[hat0] * (n + 1) for _ in range(n + 1)]
    hmark = [[None] * (n + 1) for _ in range(n + 1)]
    vmark = [[None] * (n + 1) for _ in range(n + 1)]
    haux = [[None] * (n + 1) for _ in range(n + 1)]
    vaux = [[None] * (n + 1) for _ in range(n + 1)]
    col_p = {}
    row_pp = {}
    for i in range(1, n + 1):
        c, p, pp = sigma.colors[i - 1]
        col_p[sigma.targets[i - 1]] = (i, p)
        row_pp[i] = pp
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            k = col_p[j][1]
            kp = row_pp[i]
            aut = compose_aut(tau.power(k), taup.power(kp))
            phi_sq = twist(phi, aut) if (k or kp) else phi
            raw = sigma.entry(i, j)
            c = raw[0] if raw else 0
            w, M, Mp = forward_square(
                grid[i - 1][j - 1], grid[i - 1][j], grid[i][j - 1],
                hmark[i - 1][j], vmark[i][j - 1], c, phi_sq)
            grid[i][j] = w
            hmark[i][j] = M
            vmark[i][j] = Mp
            if col_p[j][0] <= i:
                haux[i][j] = col_p[j][1]
            if sigma.targets[i - 1] <= j:
                vaux[i][j] = row_pp[i]
    diagram = GrowthDiagram(n, grid, hmark, vmark, sigma, haux, vaux)
    return diagram.south_path(), diagram.east_path(), diagram


# ---------------------------------------------------------------------------
# Young's lattice instance

def young_add(lam, cell):
    r, c = cell
    rows = list(lam) + [0]
    if not (rows[r - 1] == c - 1 and (r == 1 or rows[r - 2] >= c)):
        raise BijectionDomainError(f"cell {cell} not addable to {lam}")
    rows[r - 1] = c
    return tuple(x for x in rows if x)


def young_remove(lam, cell):
    r, c = cell
    rows = list(lam)
    if not (r <= len(rows) and rows[r - 1] == c and (r == len(rows) or rows[r] < c)):
        raise BijectionDomainError(f"cell {cell} not removable from {lam}")
    rows[r - 1] -= 1
    return tuple(x for x in rows if x)


def addable_corners(lam):
    """Addable corner cells (row, col), row index ascending; row 1 is longest."""
    out = [(1, lam[0] + 1)] if lam else [(1, 1)]
    for r in range(2, len(lam) + 1):
        if lam[r - 1] < lam[r - 2]:
            out.append((r, lam[r - 1] + 1))
    if lam:
        out.append((len(lam) + 1, 1))
    return out


def removable_corners(lam):
    out = []
    for r in range(1, len(lam) + 1):
        if r == len(lam) or lam[r] < lam[r - 1]:
            out.append((r, lam[r - 1]))
    return out


def young_rule(lam, removed=None):
    """The Young-lattice diagonal rule: color -> row-1 addable corner,
    removable corner -> nearest addable corner with higher row index."""
    adds = addable_corners(lam)
    if removed is None:
        return adds[0]
    for cell in adds:
        if cell[0] > removed[0]:
            return cell
    raise BijectionDomainError(f"no addable corner above {removed} in {lam}")


def young_rule_inv(lam, added):
    """Inverse: the row-1 addable corner -> color, otherwise the removable
    corner directly preceding `added` in the interleaved corner order."""
    adds = addable_corners(lam)
    if added == adds[0]:
        return None
    best = None
    for cell in removable_corners(lam):
        if cell[0] < added[0] and (best is None or cell[0] > best[0]):
            best = cell
    if best is None or young_rule(lam, best) != added:
        raise BijectionDomainError(f"cell {added} is not in the image of the rule on {lam}")
    return best


def skew_cells(lam, mu):
    """Cells of lam/mu (lam must contain mu)."""
    mu = tuple(mu) + (0,) * (len(lam) - len(mu))
    if len(lam) < len(tuple(m for m in mu if m)) or any(l < m for l, m in zip(lam, mu)):
        raise BijectionDomainError(f"{mu} not contained in {lam}")
    out = []
    for r in range(1, len(lam) + 1):
        for c in range(mu[r - 1] + 1, lam[r - 1] + 1):
            out.append((r, c))
    return out


def young_phi():
    """Differential bijection for (Y, Y); all multiplicities are 1."""

    def _check_marks(*marks):
        if any(m != 1 for m in marks):
            raise BijectionDomainError("Young's lattice markings are always 1")

    def diag(x, item):
        if item[0] == "color":
            if item[1] != 1:
                raise BijectionDomainError(f"color {item[1]} out of range for r=1")
            return young_add(x, young_rule(x)), 1, 1
        z, m, mp = item[1]
        _check_marks(m, mp)
        removed = skew_cells(x, z)
        if len(removed) != 1:
            raise BijectionDomainError(f"{z} is not covered by {x}")
        return young_add(x, young_rule(x, removed[0])), 1, 1

    def diag_inv(x, w, M, Mp):
        _check_marks(M, Mp)
        added = skew_cells(w, x)
        if len(added) != 1:
            raise BijectionDomainError(f"{w} does not cover {x}")
        rem = young_rule_inv(x, added[0])
        if rem is None:
            return ("color", 1)
        return ("path", (young_remove(x, rem), 1, 1))

    def offdiag(x, y, z, m, mp):
        _check_marks(m, mp)
        if len(skew_cells(x, z)) != 1 or len(skew_cells(y, z)) != 1:
            raise BijectionDomainError(f"{z} must be covered by both {x} and {y}")
        cx = skew_cells(x, z)[0]
        w = young_add(x, skew_cells(y, z)[0]) if cx not in skew_cells(y, z) else None
        if w is None:
            raise BijectionDomainError("x and y coincide")
        return w, 1, 1

    def offdiag_inv(x, y, w, M, Mp):
        _check_marks(M, Mp)
        cx = skew_cells(w, x)
        cy = skew_cells(w, y)
        if len(cx) != 1 or len(cy) != 1:
            raise BijectionDomainError(f"{w} must cover both {x} and {y}")
        return young_remove(x, cy[0]), 1, 1

    return DifferentialBijection(1, offdiag, offdiag_inv, diag, diag_inv)


def young_transpose(lam):
    if not lam:
        return ()
    out = [0] * lam[0]
    for part in lam:
        for c in range(part):
            out[c] += 1
    return tuple(out)


YOUNG_TRANSPOSE = Automorphism(young_transpose, young_transpose, 2)


def partitions_upto(n):
    """All partitions of size <= n."""
    out = [()]
    by_size = {0: [()]}
    for k in range(1, n + 1):
        level = []
        seen = set()
        for lam in by_size[k - 1]:
            for cell in addable_corners(lam):
                mu = young_add(lam, cell)
                if mu not in seen:
                    seen.add(mu)
                    level.append(mu)
        by_size[k] = level
        out.extend(level)
    return out


def path_to_tableau(path):
    """Standard-tableau view of a partition chain: cell -> step number."""
    fill = {}
    for k, step in enumerate(path.steps, start=1):
        for cell in skew_cells(step.upper, step.lower):
            fill[cell] = k
    return fill


def tableau_rows(fill, shape):
    rows = []
    for r in range(1, len(shape) + 1):
        rows.append(tuple(fill[(r, c)] for c in range(1, shape[r - 1] + 1)))
    return tuple(rows)
