"""Exact Weyl-group arithmetic on length-truncated balls.

Elements are keyed by the integer vector w(rho) in the fundamental-weight
basis; rho = sum of fundamental weights is regular, so the key is faithful
and the left-descent test is a sign check on one coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class UnknownNode(ValueError):
    pass


class ResourceLimit(RuntimeError):
    pass


class DepthExceeded(RuntimeError):
    """A cover candidate matched no table root; regenerate the table deeper."""


class OutOfBall(LookupError):
    pass


def reflect_weight(gcm, i, weight):
    """s_i(weight) = weight - <alpha_i^vee, weight> alpha_i."""
    if not 0 <= i < gcm.n:
        raise UnknownNode(i)
    c = weight[i]
    if c == 0:
        return tuple(weight)
    col = gcm.simple_root_weight_coords(i)
    return tuple(w - c * a for w, a in zip(weight, col))


def apply_word(gcm, word, weight):
    """Apply s_{word[0]} ... s_{word[-1]} to a weight (rightmost letter first)."""
    for i in reversed(word):
        weight = reflect_weight(gcm, i, weight)
    return tuple(weight)


def reflect_root(gcm, i, root, coroot):
    """Simultaneous s_i on a (root, coroot) pair in root/coroot coordinates."""
    n = gcm.n
    pr = sum(gcm.matrix[i][k] * root[k] for k in range(n))
    pc = sum(gcm.matrix[k][i] * coroot[k] for k in range(n))
    r2 = list(root)
    r2[i] -= pr
    c2 = list(coroot)
    c2[i] -= pc
    return tuple(r2), tuple(c2)


def apply_word_to_root(gcm, word, root, coroot):
    for i in reversed(word):
        root, coroot = reflect_root(gcm, i, root, coroot)
    return root, coroot


@dataclass(frozen=True)
class WeylElement:
    key: tuple           # w(rho), fundamental-weight coordinates
    length: int
    word: tuple          # one reduced word, leftmost letter first

    def descents(self):
        """Left descent set: i with s_i w < w, i.e. negative key coordinate."""
        return tuple(i for i, k in enumerate(self.key) if k < 0)


def element(gcm, word):
    """Canonical WeylElement for a (not necessarily reduced) word."""
    key = apply_word(gcm, word, gcm.rho())
    return element_from_key(gcm, key)


def element_from_key(gcm, key):
    """Recover length and a reduced word by stripping left descents."""
    word = []
    cur = tuple(key)
    rho = gcm.rho()
    while cur != rho:
        i = next((j for j, c in enumerate(cur) if c < 0), None)
        if i is None:
            raise ValueError(f"key {key} is not in the rho orbit")
        word.append(i)
        cur = reflect_weight(gcm, i, cur)
    return WeylElement(tuple(key), len(word), tuple(word))


def identity_element(gcm):
    return WeylElement(gcm.rho(), 0, ())


@dataclass(frozen=True)
class RealRootEntry:
    root: tuple          # simple-root coordinates, all >= 0
    coroot: tuple        # simple-coroot coordinates
    depth: int           # BFS depth from a simple pair
    node: int            # i with root = u(alpha_i)
    via: tuple           # reduced-ish word for u

    def pairing_with_rho(self):
        return sum(self.coroot)


class RootTable:
    """Positive real roots with associated coroots, up to a BFS depth.

    ``by_rho_move`` indexes entries by rho - s_alpha(rho) in weight
    coordinates, the lookup used by strong-cover detection.
    """

    def __init__(self, gcm, depth, cap=2_000_000):
        self.gcm = gcm
        self.depth = depth
        entries = {}
        frontier = []
        for i in range(gcm.n):
            e = tuple(1 if k == i else 0 for k in range(gcm.n))
            ent = RealRootEntry(e, e, 0, i, ())
            entries[e] = ent
            frontier.append(ent)
        self.closed = False
        for d in range(1, depth + 1):
            new = []
            for ent in frontier:
                for j in range(gcm.n):
                    r2, c2 = reflect_root(gcm, j, ent.root, ent.coroot)
                    if any(x < 0 for x in r2) or r2 in entries:
                        continue
                    ent2 = RealRootEntry(r2, c2, d, ent.node, (j,) + ent.via)
                    entries[r2] = ent2
                    new.append(ent2)
            frontier = new
            if len(entries) > cap:
                raise ResourceLimit(f"root table exceeded {cap} entries")
            if not new:
                self.closed = True
                break
        self.entries = list(entries.values())
        self._reject_proportional()
        self.by_root = {e.root: e for e in self.entries}
        self.by_rho_move = {}
        for e in self.entries:
            wt = self.gcm.root_to_weight(e.root)
            c = e.pairing_with_rho()
            self.by_rho_move[tuple(c * x for x in wt)] = e

    def _reject_proportional(self):
        seen = {}
        for e in self.entries:
            g = _gcd_vec(e.root)
            prim = tuple(x // g for x in e.root)
            if prim in seen and seen[prim] != e.root:
                raise NotImplementedError(
                    "non-reduced real root system (proportional positive roots); "
                    "strong covers would have ambiguous coroots")
            seen.setdefault(prim, e.root)


def _gcd_vec(vec):
    from math import gcd
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    return g or 1


@dataclass(frozen=True)
class CoverData:
    lower: WeylElement
    upper: WeylElement
    root: RealRootEntry
    kind: str            # "strong" | "weak"
    node: int | None = None   # for weak covers, upper = s_node * lower


class Ball:
    """All elements of length <= radius, grouped by length, keyed by w(rho)."""

    def __init__(self, gcm, radius, levels, by_key):
        self.gcm = gcm
        self.radius = radius
        self.levels = levels
        self.by_key = by_key
        self._ikey = {}
        self._cover_cache = None
        self._reach_cache = None

    def __contains__(self, key):
        return key in self.by_key

    def __len__(self):
        return len(self.by_key)

    def element(self, key):
        try:
            return self.by_key[key]
        except KeyError:
            raise OutOfBall(f"key {key} not within radius {self.radius}") from None

    def elements(self):
        for level in self.levels:
            yield from level

    def level_sizes(self):
        return [len(lv) for lv in self.levels]

    def inverse_key(self, elem):
        ik = self._ikey.get(elem.key)
        if ik is None:
            ik = apply_word(self.gcm, tuple(reversed(elem.word)), self.gcm.rho())
            self._ikey[elem.key] = ik
        return ik

    def right_descents(self, elem):
        return tuple(i for i, k in enumerate(self.inverse_key(elem)) if k < 0)


def generate_ball(gcm, radius, max_elements=2_000_000):
    """BFS from the identity by left and right simple multiplications."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    rho = gcm.rho()
    ident = identity_element(gcm)
    by_key = {rho: ident}
    levels = [[ident]]
    for ell in range(1, radius + 1):
        level = {}
        for v in levels[ell - 1]:
            for i in range(gcm.n):
                if v.key[i] > 0:  # i not a left descent: s_i v goes up
                    key = reflect_weight(gcm, i, v.key)
                    if key not in level:
                        level[key] = WeylElement(key, ell, (i,) + v.word)
                # right multiplication: w s_i with i not a right descent
                key = apply_word(gcm, v.word + (i,), rho)
                if key not in by_key and key not in level:
                    level[key] = WeylElement(key, ell, v.word + (i,))
        lv = sorted(level.values(), key=lambda e: e.key)
        levels.append(lv)
        by_key.update(level)
        if len(by_key) > max_elements:
            raise ResourceLimit(f"ball exceeded {max_elements} elements")
        if not lv:
            levels.pop()
            break
    ball = Ball(gcm, radius, levels, by_key)
    _check_closure(ball)
    return ball


def generate_group(gcm, max_elements=2_000_000):
    """Entire finite Weyl group (ball generation until a level closes empty)."""
    ball = generate_ball(gcm, max_elements, max_elements=max_elements)
    if len(ball.levels) > max_elements - 1:
        raise ResourceLimit("group did not close")
    ball.radius = len(ball.levels) - 1
    return ball

def _check_closure(ball):
    # every s_i-neighbor of an interior element must be present
    gcm = ball.gcm
    for ell, level in enumerate(ball.levels):
        if ell >= ball.radius:
            continue
        for v in level:
            for i in range(gcm.n):
                key = reflect_weight(gcm, i, v.key)
                assert key in ball.by_key, f"ball not closed at {v.key} node {i}"


def default_table_depth(radius):
    return 2 * radius + 1


def real_roots(gcm, depth):
    return RootTable(gcm, depth)


def strong_covers(v, ball, table):
    """Strong covers v <. w inside the ball, with root data.

    Detection: w at level l(v)+1 is a cover iff t = v^{-1} w is a reflection,
    found by matching rho - t(rho) against the root table.
    """
    if v.length >= len(ball.levels) - 1:
        return []
    gcm = ball.gcm
    rho = gcm.rho()
    inv_word = tuple(reversed(v.word))
    out = []
    for w in ball.levels[v.length + 1]:
        t_rho = apply_word(gcm, inv_word + w.word, rho)
        move = tuple(r - t for r, t in zip(rho, t_rho))
        ent = table.by_rho_move.get(move)
        if ent is None:
            # a reflection of length L is at table depth (L-1)/2 (palindromic
            # reduced word), so a miss at sufficient depth rules the pair out
            if not table.closed:
                length_t = element_from_key(gcm, t_rho).length
                if (length_t - 1) // 2 > table.depth:
                    raise DepthExceeded(
                        f"cover {v.key} -> {w.key} may use a root beyond depth {table.depth}")
            continue
        out.append(CoverData(v, w, ent, "strong"))
    out.sort(key=lambda c: c.upper.key)
    return out


def weak_covers(v, gcm, table=None):
    """Left weak covers v < s_i v for i outside Des(v), with transported root data."""
    out = []
    for i in range(gcm.n):
        if v.key[i] < 0:
            continue
        key = reflect_weight(gcm, i, v.key)
        upper = WeylElement(key, v.length + 1, (i,) + v.word)
        e = tuple(1 if k == i else 0 for k in range(gcm.n))
        root, coroot = apply_word_to_root(gcm, tuple(reversed(v.word)), e, e)
        assert all(x >= 0 for x in root), f"v^-1 alpha_{i} not positive for {v.key}"
        ent = None
        if table is not None:
            ent = table.by_root.get(root)
        if ent is None:
            ent = RealRootEntry(root, coroot, -1, i, tuple(reversed(v.word)))
        out.append(CoverData(v, upper, ent, "weak", node=i))
    out.sort(key=lambda c: c.upper.key)
    return out


def _cover_adjacency(ball, table=None):
    if ball._cover_cache is not None:
        return ball._cover_cache
    if table is None:
        table = RootTable(ball.gcm, default_table_depth(ball.radius))
    adj = {}
    for v in ball.elements():
        if v.length >= len(ball.levels) - 1:
            adj[v.key] = []
        else:
            adj[v.key] = [c.upper.key for c in strong_covers(v, ball, table)]
    ball._cover_cache = adj
    return adj


def bruhat_leq(v, w, ball, table=None):
    """v <= w in strong (Bruhat) order, by transitive closure within the ball."""
    if v.key not in ball.by_key or w.key not in ball.by_key:
        raise OutOfBall("both elements must lie in the ball")
    if ball._reach_cache is None:
        adj = _cover_adjacency(ball, table)
        index = {}
        order = []
        for level in ball.levels:
            for e in level:
                index[e.key] = len(order)
                order.append(e.key)
        reach = {}
        for level in reversed(ball.levels):
            for e in level:
                mask = 1 << index[e.key]
                for up in adj[e.key]:
                    mask |= reach[up]
                reach[e.key] = mask
        ball._reach_cache = (index, reach)
    index, reach = ball._reach_cache
    return bool(reach[v.key] >> index[w.key] & 1)


def is_min_coset_rep(ball, elem, J):
    """w in W^J: no right descent inside J."""
    ik = ball.inverse_key(elem)
    return all(ik[j] > 0 for j in J)


def min_coset_reps(ball, J):
    """The W^J elements of the ball, grouped by length like the ball itself."""
    J = tuple(J)
    for j in J:
        if not 0 <= j < ball.gcm.n:
            raise UnknownNode(j)
    return [[e for e in level if is_min_coset_rep(ball, e, J)] for level in ball.levels]


def quotient_generate(gcm, J, max_len=None, max_elements=200_000):
    """BFS the parabolic quotient W^J upward through weak covers.

    W^J is a lower ideal of the left weak order, so growing from the identity
    and filtering by the right-descent test reaches every element.  Stops when
    a level closes empty (finite quotient) or at max_len.
    """
    J = tuple(J)
    ident = identity_element(gcm)
    levels = [[ident]]
    by_key = {ident.key: ident}
    ikeys = {ident.key: ident.key}
    rho = gcm.rho()
    ell = 0
    while max_len is None or ell < max_len:
        ell += 1
        new = {}
        for v in levels[-1]:
            for i in range(gcm.n):
                if v.key[i] < 0:
                    continue
                key = reflect_weight(gcm, i, v.key)
                if key in new or key in by_key:
                    continue
                word = (i,) + v.word
                ik = apply_word(gcm, tuple(reversed(word)), rho)
                if all(ik[j] > 0 for j in J):
                    new[key] = WeylElement(key, ell, word)
                    ikeys[key] = ik
        if not new:
            break
        lv = sorted(new.values(), key=lambda e: e.key)
        levels.append(lv)
        by_key.update(new)
        if len(by_key) > max_elements:
            raise ResourceLimit(f"quotient exceeded {max_elements} elements")
    ball = Ball(gcm, len(levels) - 1, levels, by_key)
    ball._ikey.update(ikeys)
    return ball
