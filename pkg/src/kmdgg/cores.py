"""Affine symmetric group combinatorics: windows, n-cores, and LLMS insertion.

Partitions are weakly-decreasing tuples in the French convention (row 1 is
the longest, row indices grow northward); the cell (r, c) sits on diagonal
c - r, and its residue is (c - r + anchor) mod n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .growth import (BijectionDomainError, DifferentialBijection, addable_corners,
                     removable_corners, skew_cells, young_add, young_remove, young_rule,
                     young_rule_inv)


class InvalidWindow(ValueError):
    pass


class NotCover(ValueError):
    pass


class NotGrassmannian(ValueError):
    pass


class NotCore(ValueError):
    pass


# ---------------------------------------------------------------------------
# affine permutations in window notation

@dataclass(frozen=True)
class AffinePermutation:
    """Bijection w of Z with w(i + n) = w(i) + n and sum(w(i) - i) = 0.

    Windows realize the right action of the group on positions: the first
    letter of a reduced word permutes positions first (`affine_from_word`).
    With this convention a left descent of the group element is a window
    descent, and the strong-cover multiplicity formula holds verbatim on
    windows.
    """

    n: int
    window: tuple

    def __post_init__(self):
        n = self.n
        if len(self.window) != n:
            raise InvalidWindow(f"window must have {n} entries")
        if sorted(v % n for v in self.window) != list(range(n)):
            raise InvalidWindow(f"{self.window}: residues are not distinct mod {n}")
        if sum(self.window) != n * (n + 1) // 2:
            raise InvalidWindow(f"{self.window}: sum condition violated")

    def __call__(self, x):
        q, r = divmod(x - 1, self.n)
        return self.window[r] + q * self.n

    def compose(self, other):
        """Function composition self(other(.)); both must share the period."""
        if self.n != other.n:
            raise InvalidWindow("periods differ")
        return AffinePermutation(self.n, tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self):
        inv = [0] * self.n
        for i in range(1, self.n + 1):
            q, r = divmod(self(i) - 1, self.n)
            inv[r] = i - q * self.n
        return AffinePermutation(self.n, tuple(inv))

    def is_identity(self):
        return self.window == tuple(range(1, self.n + 1))

    def length(self):
        """Number of affine inversions (pairs a in [1, n], b > a with w(a) > w(b))."""
        n = self.n
        total = 0
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                d = self(i) - self(j)
                if d > 0:
                    total += (d - 1) // n + 1      # b = j + kn, k >= 0
                d = self(j) - self(i)
                if d > n:
                    total += (d - 1) // n          # b = i + kn, k >= 1
        return total

    def window_descents(self):
        """Nodes i in 0..n-1 with w(i) > w(i+1)."""
        return tuple(i for i in range(self.n) if self(i) > self(i + 1))

    def left_descents(self):
        """Left descents of the group element (= window descents here)."""
        return self.window_descents()

    def right_descents(self):
        """Right descents of the group element (= window descents of the inverse)."""
        return self.inverse().window_descents()


def affine_identity(n):
    return AffinePermutation(n, tuple(range(1, n + 1)))


def affine_simple(n, i):
    """The generator s_i: swaps the residue classes of i and i+1 crosswise."""
    if not 0 <= i < n:
        raise InvalidWindow(f"node {i} out of range for period {n}")
    win = list(range(1, n + 1))
    if i == 0:
        win[0] = 0
        win[n - 1] = n + 1
    else:
        win[i - 1], win[i] = i + 1, i
    return AffinePermutation(n, tuple(win))


def affine_from_word(word, n):
    """Window of the element s_{word[0]} ... s_{word[-1]} (first letter acts first)."""
    w = affine_identity(n)
    for i in word:
        w = affine_simple(n, i).compose(w)
    return w


def reflection_t(n, i, j):
    """The reflection t_{ij} (i < j, i != j mod n), swapping the two classes."""
    if not i < j or (j - i) % n == 0:
        raise InvalidWindow(f"need i < j and i != j mod n, got ({i}, {j})")
    win = list(range(1, n + 1))
    qi, ri = divmod(i - 1, n)
    qj, rj = divmod(j - 1, n)
    win[ri] = j - qi * n
    win[rj] = i - qj * n
    return AffinePermutation(n, tuple(win))


def cover_reflection(v, w):
    """(i, j) with w = v t_ij and i < j, for a strong cover v <. w."""
    n = v.n
    t = v.inverse().compose(w)
    moved = [a for a in range(1, n + 1) if t(a) != a]
    if len(moved) != 2 or t.compose(t) != affine_identity(n):
        raise NotCover(f"{w.window} is not v t_ij for v = {v.window}")
    if w.length() != v.length() + 1:
        raise NotCover("length does not increase by one")
    for a in moved:
        if t(a) > a:
            return a, t(a)
    raise NotCover("no normalized arc found")


def cover_multiplicity(v, w):
    """#{k : v(i) <= k < v(j), k = 0 mod n} for the cover w = v t_ij."""
    i, j = cover_reflection(v, w)
    lo, hi = v(i), v(j)
    if lo > hi:
        raise NotCover(f"t_{{{i},{j}}} does not raise length from {v.window}")
    return (hi - 1) // v.n - (lo - 1) // v.n


# ---------------------------------------------------------------------------
# partitions, residues, cores

def diagonal(cell):
    return cell[1] - cell[0]


def residue(cell, n, anchor=0):
    return (cell[1] - cell[0] + anchor) % n


def edge_bit(lam, d):
    """Edge-sequence bit at position d: 0 = south step, 1 = east step.

    The south positions are exactly {lam_r - r : r >= 1} (rows past the end
    contribute -r); the cell on diagonal d is framed by bits (d-1, d), with
    (0, 1) addable and (1, 0) removable.
    """
    for r, part in enumerate(lam, start=1):
        if part - r == d:
            return 0
    if d <= -len(lam) - 1:
        return 0
    return 1


def is_core(lam, n):
    """No removable n-ribbon: never bit 1 at d with bit 0 at d + n."""
    if n < 2:
        return lam == ()
    lo = -len(lam) - n - 1
    hi = (lam[0] if lam else 0) + 1
    bits = {d: edge_bit(lam, d) for d in range(lo, hi + n + 1)}
    return not any(bits[d] == 1 and bits[d + n] == 0 for d in range(lo, hi))


def simple_action(i, lam, n, anchor=0):
    """s_i . lam: add every addable cell of residue i, remove every removable one."""
    rows = list(lam)
    for cell in addable_corners(lam):
        if residue(cell, n, anchor) == i:
            r, c = cell
            if r > len(rows):
                rows.append(0)
            rows[r - 1] = c
    for cell in removable_corners(lam):
        if residue(cell, n, anchor) == i:
            rows[cell[0] - 1] -= 1
    return tuple(x for x in rows if x)


def word_action(word, lam, n, anchor=0):
    """(s_{word[0]} ... s_{word[-1]}) . lam, rightmost generator first."""
    for i in reversed(word):
        lam = simple_action(i, lam, n, anchor)
    return lam


def c_bijection(word, n, anchor=0):
    """Core of a Grassmannian element given by a reduced word: w . empty."""
    return word_action(word, (), n, anchor)


def c_inverse(core, n, anchor=0):
    """Reduced word (leftmost letter first) of the Grassmannian element of a core."""
    if not is_core(core, n):
        raise NotCore(f"{core} is not an {n}-core")
    word = []
    lam = tuple(core)
    while lam:
        for i in range(n):
            mu = simple_action(i, lam, n, anchor)
            if sum(mu) < sum(lam):
                word.append(i)
                lam = mu
                break
        else:
            raise NotCore(f"{lam} admits no downward simple action")
    return tuple(word)


def is_grassmannian(w, exclude_node=0):
    """No right descents away from `exclude_node`."""
    return all(d == exclude_node for d in w.right_descents())


def affine_to_core(w, anchor=0):
    """c(w) = w . empty for w in the parabolic quotient (Grassmannian test enforced)."""
    if not is_grassmannian(w):
        raise NotGrassmannian(f"{w.window} has a right descent away from node 0")
    word = affine_reduced_word(w)
    return c_bijection(word, w.n, anchor)


def affine_reduced_word(w):
    """Reduced word (leftmost letter first) by stripping left descents."""
    word = []
    v = w
    while not v.is_identity():
        i = v.window_descents()[0]
        word.append(i)
        v = v.compose(affine_simple(v.n, i))   # strips s_i from the left of the word
    return tuple(word)


def cores_by_length(n, max_len, anchor=0):
    """All n-cores of Grassmannian length <= max_len, grouped by length."""
    levels = [[()]]
    seen = {()}
    for _ in range(max_len):
        nxt = []
        for lam in levels[-1]:
            for i in range(n):
                mu = simple_action(i, lam, n, anchor)
                if sum(mu) > sum(lam) and mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
        levels.append(sorted(nxt))
    return levels


# ---------------------------------------------------------------------------
# ribbons and strong-cover geometry

def ribbon_components(mu, lam):
    """Rookwise-connected components of mu/lam, southeast to northwest.

    Each component must be a ribbon (distinct diagonals, no 2x2 block); the
    list is sorted by maximal diagonal, descending.
    """
    cells = set(skew_cells(mu, lam))
    comps = []
    while cells:
        seed = cells.pop()
        comp = {seed}
        stack = [seed]
        while stack:
            r, c = stack.pop()
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in cells:
                    cells.remove(nb)
                    comp.add(nb)
                    stack.append(nb)
        diags = [diagonal(cell) for cell in comp]
        if len(set(diags)) != len(diags):
            raise NotCover(f"component {sorted(comp)} of {mu}/{lam} is not a ribbon")
        comps.append(frozenset(comp))
    comps.sort(key=lambda comp: max(diagonal(c) for c in comp), reverse=True)
    return comps


def component_index(mu, lam, cell):
    """1-based index of the component of mu/lam containing `cell` (southeast first)."""
    for k, comp in enumerate(ribbon_components(mu, lam), start=1):
        if cell in comp:
            return k
    raise NotCover(f"{cell} is not a cell of {mu}/{lam}")


# ---------------------------------------------------------------------------
# the LLMS differential bijection on n-cores

@dataclass(frozen=True)
class LLMSInstance:
    """The dual graded graph pair on the S~_n parabolic quotient, via n-cores.

    Vertices are n-cores; the weak graph has unit multiplicities, the strong
    multiplicity of a cover is its number of ribbon components.  The minimum
    is the empty core.
    """

    n: int
    anchor: int = 0

    @property
    def hat0(self):
        return ()

    def weak_up(self, lam):
        """Pairs (node i, s_i . lam) that properly grow lam."""
        out = []
        for i in range(self.n):
            mu = simple_action(i, lam, self.n, self.anchor)
            if sum(mu) > sum(lam):
                out.append((i, mu))
        return out

    def weak_node(self, lam, mu):
        """The i with mu = s_i . lam, for a weak cover lam < mu."""
        cells = skew_cells(mu, lam)
        res = {residue(c, self.n, self.anchor) for c in cells}
        if len(res) != 1:
            raise NotCover(f"{mu}/{lam} has mixed residues {res}")
        i = res.pop()
        if simple_action(i, lam, self.n, self.anchor) != mu:
            raise NotCover(f"{mu} is not s_{i} . {lam}")
        return i

    def phi(self):
        n, anchor = self.n, self.anchor

        def to_du(lam, cell):
            """Addable cell of lam -> (weak-cover target, strong mark, weak mark)."""
            i = residue(cell, n, anchor)
            w = simple_action(i, lam, n, anchor)
            return w, component_index(w, lam, cell), 1

        def from_du(lam, w, M, Mp):
            if Mp != 1:
                raise BijectionDomainError(f"weak marking {Mp} out of range")
            comps = ribbon_components(w, lam)
            if not 1 <= M <= len(comps):
                raise BijectionDomainError(f"strong marking {M} out of range for {w}/{lam}")
            cells = comps[M - 1]
            if len(cells) != 1:
                raise BijectionDomainError(f"{w}/{lam} is not a weak cover")
            return next(iter(cells))

        def diag(x, item):
            if item[0] == "color":
                if item[1] != 1:
                    raise BijectionDomainError(f"color {item[1]} out of range for r=1")
                return to_du(x, young_rule(x))
            z, m, mp = item[1]
            removed = from_du(z, x, m, mp)   # UD element: z below x in both orders
            return to_du(x, young_rule(x, removed))

        def diag_inv(x, w, M, Mp):
            added = from_du(x, w, M, Mp)
            rem = young_rule_inv(x, added)
            if rem is None:
                return ("color", 1)
            i = residue(rem, n, anchor)
            z = simple_action(i, x, n, anchor)
            return ("path", (z, component_index(x, z, rem), 1))

        def offdiag(x, y, z, m, mp):
            """Down-then-up (x <- z -> y) to up-then-down (x -> w <- y)."""
            if mp != 1:
                raise BijectionDomainError(f"weak marking {mp} out of range")
            i = self.weak_node(z, x)
            w = simple_action(i, y, n, anchor)
            if not (sum(w) > sum(y)):
                raise BijectionDomainError(f"s_{i} does not raise {y}")
            if len(ribbon_components(w, x)) != len(ribbon_components(y, z)):
                raise BijectionDomainError("strong multiplicities disagree across the square")
            return w, m, 1

        def offdiag_inv(x, y, w, M, Mp):
            if Mp != 1:
                raise BijectionDomainError(f"weak marking {Mp} out of range")
            i = self.weak_node(y, w)
            z = simple_action(i, x, n, anchor)
            if not (sum(z) < sum(x)):
                raise BijectionDomainError(f"s_{i} does not lower {x}")
            if len(ribbon_components(w, x)) != len(ribbon_components(y, z)):
                raise BijectionDomainError("strong multiplicities disagree across the square")
            return z, M, 1

        return DifferentialBijection(1, offdiag, offdiag_inv, diag, diag_inv)
