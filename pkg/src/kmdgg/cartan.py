"""Generalized Cartan matrices, exact weight/root arithmetic, centers, folding.

Everything is exact integer (or Fraction) arithmetic.  Weights live in the
fundamental-weight basis, roots in the simple-root basis, coroots in the
simple-coroot basis; all three are plain tuples of ints indexed by node
position.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class NotGCM(ValueError):
    """The given matrix violates a generalized-Cartan-matrix axiom."""


class NotAffine(ValueError):
    """Canonical central element requested for a non-affine matrix."""


class NotAutomorphism(ValueError):
    """The permutation does not preserve the Cartan matrix."""


class NotAdmissible(ValueError):
    """A folding orbit contains a pair of joined nodes."""


@dataclass(frozen=True)
class GCM:
    """A generalized Cartan matrix over an ordered node set.

    ``matrix[i][j]`` is indexed by node *position*; ``nodes`` carries the
    display ids.  ``symmetrizer`` is the minimal positive integer vector d
    with d_i a_ij = d_j a_ji, or None when the matrix is not symmetrizable.
    """

    nodes: tuple
    matrix: tuple
    symmetrizer: tuple | None = None

    @property
    def n(self):
        return len(self.nodes)

    def a(self, i, j):
        return self.matrix[i][j]

    def node_index(self, node):
        return self.nodes.index(node)

    def is_symmetric(self):
        return all(self.matrix[i][j] == self.matrix[j][i]
                   for i in range(self.n) for j in range(self.n))

    def rho(self):
        return (1,) * self.n

    def fundamental_weight(self, i):
        return tuple(1 if j == i else 0 for j in range(self.n))

    def simple_root_weight_coords(self, i):
        """alpha_i written in the fundamental-weight basis (column i)."""
        return tuple(self.matrix[j][i] for j in range(self.n))

    def root_to_weight(self, root):
        """Convert simple-root coordinates to fundamental-weight coordinates."""
        n = self.n
        return tuple(sum(self.matrix[j][i] * root[i] for i in range(n))
                     for j in range(n))

    def pair(self, coroot, weight):
        """Natural pairing <coroot, weight>, both in their own bases."""
        return sum(c * w for c, w in zip(coroot, weight))


def validate_gcm(matrix, nodes=None):
    """Check the GCM axioms and return a GCM (with symmetrizer if one exists).

    Raises NotGCM naming the first violated condition.
    """
    rows = [tuple(int(x) for x in row) for row in matrix]
    n = len(rows)
    if nodes is None:
        nodes = tuple(range(n))
    nodes = tuple(nodes)
    if len(nodes) != n or any(len(r) != n for r in rows):
        raise NotGCM(f"matrix must be square over {len(nodes)} nodes")
    for i in range(n):
        if rows[i][i] != 2:
            raise NotGCM(f"diagonal entry a[{nodes[i]}][{nodes[i]}] = {rows[i][i]} != 2")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise NotGCM(f"off-diagonal a[{nodes[i]}][{nodes[j]}] = {rows[i][j]} > 0")
            if (rows[i][j] < 0) != (rows[j][i] < 0):
                raise NotGCM(
                    f"sign asymmetry: a[{nodes[i]}][{nodes[j]}] = {rows[i][j]} "
                    f"but a[{nodes[j]}][{nodes[i]}] = {rows[j][i]}")
    mat = tuple(rows)
    return GCM(nodes, mat, symmetrizer(mat))


def symmetrizer(matrix):
    """Minimal positive integers d with d_i a_ij = d_j a_ji, or None.

    Propagates ratios along edges of the Dynkin graph and rejects
    inconsistent cycles; normalizes to jointly minimal integers.
    """
    n = len(matrix)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or matrix[i][j] == 0:
                    continue
                # d_j = d_i * a_ij / a_ji
                val = d[i] * Fraction(matrix[i][j], matrix[j][i])
                if d[j] is None:
                    d[j] = val
                    comp.append(j)
                    stack.append(j)
                elif d[j] != val:
                    return None
        denom = lcm(*(x.denominator for x in (d[k] for k in comp)))
        scaled = {k: d[k] * denom for k in comp}
        g = gcd(*(int(v) for v in scaled.values()))
        for k in comp:
            d[k] = int(scaled[k]) // g
    # propagation guarantees pairs sharing an edge; check everything anyway
    for i in range(n):
        for j in range(n):
            if d[i] * matrix[i][j] != d[j] * matrix[j][i]:
                return None
    return tuple(d)


def _integer_kernel(matrix):
    """Primitive integer basis of {x : matrix @ x = 0}, by exact elimination."""
    n = len(matrix)
    if n == 0:
        return []
    rows = [[Fraction(x) for x in row] for row in matrix]
    m = len(rows)
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((k for k in range(r, m) if rows[k][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for k in range(m):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for rr, pc in enumerate(pivots):
            vec[pc] = -rows[rr][fc]
        denom = lcm(*(x.denominator for x in vec)) if vec else 1
        ints = [int(x * denom) for x in vec]
        g = gcd(*(abs(v) for v in ints if v != 0))
        basis.append(tuple(v // g for v in ints))
    return basis


def center_basis(gcm):
    """Primitive generators of {k : k^T A = 0} lying in the nonnegative cone.

    Each vector k is read as the central element sum k_i alpha_i^vee.  Only
    sign-normalizable (all >= 0) generators are exposed.
    """
    transpose = tuple(tuple(gcm.matrix[j][i] for j in range(gcm.n))
                      for i in range(gcm.n))
    out = []
    for vec in _integer_kernel(transpose):
        if all(v <= 0 for v in vec):
            vec = tuple(-v for v in vec)
        if all(v >= 0 for v in vec):
            out.append(vec)
    return out


def canonical_K(gcm):
    """The primitive strictly positive central vector of an affine GCM."""
    transpose = tuple(tuple(gcm.matrix[j][i] for j in range(gcm.n))
                      for i in range(gcm.n))
    kernel = _integer_kernel(transpose)
    if len(kernel) != 1:
        raise NotAffine(f"center has rank {len(kernel)}, expected 1")
    vec = kernel[0]
    if all(v < 0 for v in vec):
        vec = tuple(-v for v in vec)
    if not all(v > 0 for v in vec):
        raise NotAffine(f"kernel generator {vec} is not strictly positive")
    return vec


# ---------------------------------------------------------------------------
# named constructors

def _chain_matrix(n):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
        if i + 1 < n:
            rows[i][i + 1] = -1
            rows[i + 1][i] = -1
    return rows


def finite_gcm(family, rank):
    """Finite Cartan matrix of type A, C, D, E or G, nodes 1..rank."""
    family = family.upper()
    nodes = tuple(range(1, rank + 1))
    if family == "A":
        rows = _chain_matrix(rank)
    elif family == "C":
        if rank < 2:
            raise ValueError("C requires rank >= 2")
        rows = _chain_matrix(rank)
        rows[rank - 2][rank - 1] = -2   # a_{n-1,n} = -2, long root at node n
        rows[rank - 1][rank - 2] = -1
    elif family == "D":
        if rank < 3:
            raise ValueError("D requires rank >= 3")
        rows = _chain_matrix(rank)
        rows[rank - 2][rank - 1] = 0
        rows[rank - 1][rank - 2] = 0
        rows[rank - 3][rank - 1] = -1
        rows[rank - 1][rank - 3] = -1
    elif family == "E":
        if rank not in (6, 7):
            raise ValueError("only E6 and E7 ship as named types")
        # Bourbaki labels: chain 1-3-4-5-6(-7), node 2 hangs off node 4
        pos = {node: k for k, node in enumerate(nodes)}
        chain = [1, 3, 4, 5, 6] + ([7] if rank == 7 else [])
        rows = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            rows[i][i] = 2
        for a, b in zip(chain, chain[1:]):
            rows[pos[a]][pos[b]] = rows[pos[b]][pos[a]] = -1
        rows[pos[2]][pos[4]] = rows[pos[4]][pos[2]] = -1
    elif family == "G":
        if rank != 2:
            raise ValueError("G requires rank 2")
        # alpha_1 short: highest root 3a1 + 2a2
        rows = [[2, -3], [-1, 2]]
    else:
        raise ValueError(f"unknown family {family!r}")
    return validate_gcm(rows, nodes)


def highest_root(gcm):
    """(root, coroot) of the highest root of a finite-type GCM."""
    roots = _positive_roots_closure(gcm)
    best = max(roots, key=lambda rc: sum(rc[0]))
    for root, _ in roots:
        if any(b < r for b, r in zip(best[0], root)):
            raise NotAffine("no coordinatewise-maximal root; matrix not finite irreducible")
    return best


def _positive_roots_closure(gcm, cap=100000):
    n = gcm.n
    seen = {}
    frontier = []
    for i in range(n):
        root = tuple(1 if k == i else 0 for k in range(n))
        coroot = root
        seen[root] = coroot
        frontier.append((root, coroot))
    while frontier:
        new = []
        for root, coroot in frontier:
            for j in range(n):
                pr = sum(gcm.matrix[j][k] * root[k] for k in range(n))
                pc = sum(gcm.matrix[k][j] * coroot[k] for k in range(n))
                r2 = list(root)
                r2[j] -= pr
                c2 = list(coroot)
                c2[j] -= pc
                r2 = tuple(r2)
                if any(x < 0 for x in r2):
                    continue
                if r2 not in seen:
                    seen[r2] = tuple(c2)
                    new.append((r2, tuple(c2)))
        frontier = new
        if len(seen) > cap:
            raise NotAffine("root system does not close; matrix not of finite type")
    return list(seen.items())


def affinize(finite):
    """Untwisted affinization: attach node 0 against the highest root."""
    theta, theta_vee = highest_root(finite)
    n = finite.n
    row0 = [2] + [-sum(theta_vee[j] * finite.matrix[j][i] for j in range(n))
                  for i in range(n)]
    rows = [row0]
    for i in range(n):
        a_i0 = -sum(finite.matrix[i][j] * theta[j] for j in range(n))
        rows.append([a_i0] + list(finite.matrix[i]))
    return validate_gcm(rows, (0,) + finite.nodes)


def named_gcm(name):
    """Parse a type string like "A2", "C2~", "G2~"; "~" = untwisted affine."""
    name = name.strip()
    affine = name.endswith("~")
    if affine:
        name = name[:-1]
    family, rank = name[0], int(name[1:])
    g = finite_gcm(family, rank)
    return affinize(g) if affine else g


# ---------------------------------------------------------------------------
# folding

@dataclass(frozen=True)
class FoldingData:
    """A Dynkin-automorphism folding B -> A.

    ``orbits[i]`` is the tuple of B-node positions in the orbit indexed by
    folded node position i; ``kappa`` = lcm of the orbit sizes.
    """

    source: GCM
    pi: tuple            # permutation of B positions
    orbits: tuple        # tuple of sorted tuples of B positions
    folded: GCM
    kappa: int

    @property
    def orbit_sizes(self):
        return tuple(len(o) for o in self.orbits)

    def orbit_of(self, j):
        for i, orb in enumerate(self.orbits):
            if j in orb:
                return i
        raise KeyError(j)

    def psi(self, weight_a):
        """psi: weights of A -> weights of B; Lambda_i -> (kappa/o_i) * sum omega_j."""
        out = [0] * self.source.n
        for i, orb in enumerate(self.orbits):
            c = weight_a[i] * (self.kappa // len(orb))
            for j in orb:
                out[j] += c
        return tuple(out)

    def phi(self, coroot_a):
        """phi: coroots of A -> coroots of B; alpha_i^vee -> sum beta_j^vee."""
        out = [0] * self.source.n
        for i, orb in enumerate(self.orbits):
            for j in orb:
                out[j] += coroot_a[i]
        return tuple(out)


def fold(gcm_b, pi):
    """Fold GCM B along an admissible automorphism pi (B positions -> positions)."""
    n = gcm_b.n
    pi = tuple(pi)
    if sorted(pi) != list(range(n)):
        raise NotAutomorphism(f"{pi} is not a permutation of 0..{n - 1}")
    b = gcm_b.matrix
    for i in range(n):
        for j in range(n):
            if b[pi[i]][pi[j]] != b[i][j]:
                raise NotAutomorphism(
                    f"b[pi({i})][pi({j})] = {b[pi[i]][pi[j]]} != b[{i}][{j}] = {b[i][j]}")
    # orbits of pi, indexed by smallest member
    seen = set()
    orbits = []
    for start in range(n):
        if start in seen:
            continue
        orb = []
        j = start
        while j not in seen:
            seen.add(j)
            orb.append(j)
            j = pi[j]
        orbits.append(tuple(sorted(orb)))
    orbits.sort(key=min)
    for orb in orbits:
        for i in orb:
            for j in orb:
                if i != j and b[i][j] != 0:
                    raise NotAdmissible(
                        f"nodes {i},{j} joined (b = {b[i][j]}) inside one orbit")
    m = len(orbits)
    rows = []
    for ip in range(m):
        row = []
        for i in range(m):
            vals = set()
            for jp in orbits[ip]:
                s = sum(b[jp][j] for j in orbits[i])
                num = len(orbits[ip]) * s
                if num % len(orbits[i]) != 0:
                    raise NotGCM(f"folded entry a[{ip}][{i}] not integral")
                vals.add(num // len(orbits[i]))
            if len(vals) != 1:
                raise NotGCM(f"folded entry a[{ip}][{i}] depends on the representative")
            row.append(vals.pop())
        rows.append(row)
    folded = validate_gcm(rows, tuple(range(m)))
    kappa = lcm(*(len(o) for o in orbits))
    return FoldingData(gcm_b, pi, tuple(orbits), folded, kappa)


def parse_gcm_spec(spec):
    """CLI entry point: a named type string or a {nodes, matrix} mapping."""
    if isinstance(spec, str):
        return named_gcm(spec)
    return validate_gcm(spec["matrix"], tuple(spec.get("nodes", range(len(spec["matrix"])))))
