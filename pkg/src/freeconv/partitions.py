"""Set and non-crossing partition combinatorics and moment/cumulant transforms.

Two routes exist for every transform: a production recursion with no practical
order bound, and a literal partition-sum oracle driven by brute enumeration.
The production code never consults the oracle; tests require exact agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

NC_ENUM_MAX = 14
SET_ENUM_MAX = 12


class Partition:
    """Partition of {1..n} into disjoint nonempty blocks, kept in canonical order."""

    __slots__ = ("n", "blocks")

    def __init__(self, n, blocks):
        blocks = tuple(sorted(tuple(sorted(b)) for b in blocks))
        seen = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            seen.update(b)
        total = sum(len(b) for b in blocks)
        if total != n or seen != set(range(1, n + 1)):
            raise ValueError("blocks do not partition {1..%d}" % n)
        self.n = n
        self.blocks = blocks

    @classmethod
    def from_rgs(cls, rgs):
        """Build from a restricted-growth string (0-based block labels)."""
        blocks = {}
        for i, label in enumerate(rgs, start=1):
            blocks.setdefault(label, []).append(i)
        return cls(len(rgs), blocks.values())

    def rgs(self):
        label_of = {}
        for idx, b in enumerate(self.blocks):
            for x in b:
                label_of[x] = idx
        order = {}
        out = []
        for x in range(1, self.n + 1):
            raw = label_of[x]
            if raw not in order:
                order[raw] = len(order)
            out.append(order[raw])
        return tuple(out)

    def block_sizes(self):
        return tuple(sorted(len(b) for b in self.blocks))

    def is_noncrossing(self):
        """Block-interval scan: every other block must sit inside one gap."""
        import bisect
        for i, b in enumerate(self.blocks):
            for c in self.blocks[i + 1:]:
                gaps = {bisect.bisect_left(b, x) for x in c}
                if len(gaps) > 1:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return "Partition(%d, %s)" % (self.n, list(map(list, self.blocks)))


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


@lru_cache(maxsize=None)
def set_partitions(n):
    """All set partitions of {1..n}, enumerated through restricted-growth strings."""
    if not 1 <= n <= SET_ENUM_MAX:
        raise ValueError("set partition enumeration supports 1 <= n <= %d" % SET_ENUM_MAX)
    out = []
    rgs = [0] * n

    def rec(i, mx):
        if i == n:
            out.append(Partition.from_rgs(rgs))
            return
        for label in range(mx + 2):
            rgs[i] = label
            rec(i + 1, max(mx, label))

    rec(1, 0)
    return out


@lru_cache(maxsize=None)
def nc_partitions(n):
    """All non-crossing partitions of {1..n}.

    Scans 1..n keeping a stack of blocks that may still grow; an element
    either opens a new block or joins a stacked block, sealing everything
    above it.  This hits each non-crossing partition exactly once.
    """
    if not 1 <= n <= NC_ENUM_MAX:
        raise ValueError("non-crossing enumeration supports 1 <= n <= %d" % NC_ENUM_MAX)
    out = []

    def rec(i, stack, closed):
        if i > n:
            out.append(Partition(n, closed + [tuple(b) for b in stack]))
            return
        stack.append([i])
        rec(i + 1, stack, closed)
        stack.pop()
        for depth in range(len(stack) - 1, -1, -1):
            sealed = closed + [tuple(b) for b in stack[depth + 1:]]
            kept = [list(b) for b in stack[:depth + 1]]
            kept[depth].append(i)
            rec(i + 1, kept, sealed)

    rec(1, [], [])
    return out


@dataclass(frozen=True)
class MomentSeq:
    """Raw moments m_1..m_N; m_0 = 1 is implicit."""

    values: tuple

    def __post_init__(self):
        vals = tuple(_coerce(v) for v in self.values)
        if not vals:
            raise ValueError("a moment sequence needs at least m_1")
        object.__setattr__(self, "values", vals)

    @property
    def order(self):
        return len(self.values)

    def m(self, n):
        if n == 0:
            return 1
        return self.values[n - 1]

    def truncated(self, order):
        return MomentSeq(self.values[:order])


def _coerce(v):
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, (Fraction, float)):
        return v
    raise TypeError("unsupported scalar %r" % (v,))


def _require_kind(seq, kind):
    from .measures import KindError
    if seq.kind != kind:
        raise KindError("expected %s cumulants, got %s" % (kind, seq.kind))


# The free transforms rest on the coefficient table A[s][k] = [z^k](1 + M(z))^s
# with M(z) = sum m_n z^n: the moment/cumulant relation reads
#     m_n = sum_{s=1..n} kappa_s A[s][n-s],
# which is triangular in both directions.

def _grow_table(table, m, n):
    table[0].append(0)
    for s in range(1, n + 1):
        if s == len(table):
            table.append([])
        k = n - s
        acc = 0
        for j in range(k + 1):
            acc += m[j] * table[s - 1][k - j]
        table[s].append(acc)


def moments_from_free_cumulants(kappa):
    """Moments from free cumulants: the sum over non-crossing partitions."""
    _require_kind(kappa, "free")
    k = kappa.values
    m = [1]
    table = [[1]]
    for n in range(1, len(k) + 1):
        _grow_table(table, m, n)
        m.append(sum(k[s - 1] * table[s][n - s] for s in range(1, n + 1)))
    return MomentSeq(tuple(m[1:]))


def free_cumulants_from_moments(moments):
    """Exact inverse of moments_from_free_cumulants."""
    from .measures import CumulantSeq
    mv = [1] + list(moments.values)
    kappa = []
    table = [[1]]
    for n in range(1, len(mv)):
        _grow_table(table, mv, n)
        acc = mv[n]
        for s in range(1, n):
            acc -= kappa[s - 1] * table[s][n - s]
        kappa.append(acc)
    return CumulantSeq("free", tuple(kappa))


def moments_from_classical_cumulants(c):
    """Moments from classical cumulants (the sum over all set partitions)."""
    _require_kind(c, "classical")
    cv = c.values
    m = [1]
    for n in range(1, len(cv) + 1):
        acc = 0
        for j in range(1, n + 1):
            acc += math.comb(n - 1, j - 1) * cv[j - 1] * m[n - j]
        m.append(acc)
    return MomentSeq(tuple(m[1:]))


def classical_cumulants_from_moments(moments):
    from .measures import CumulantSeq
    mv = [1] + list(moments.values)
    c = []
    for n in range(1, len(mv)):
        acc = mv[n]
        for j in range(1, n):
            acc -= math.comb(n - 1, j - 1) * c[j - 1] * mv[n - j]
        c.append(acc)
    return CumulantSeq("classical", tuple(c))


@lru_cache(maxsize=None)
def _size_profiles(n, noncrossing):
    """Multiset of block-size profiles, counted by brute enumeration."""
    parts = nc_partitions(n) if noncrossing else set_partitions(n)
    counts = {}
    for p in parts:
        key = p.block_sizes()
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


def _partition_sum(values, n, noncrossing):
    total = 0
    for sizes, count in _size_profiles(n, noncrossing):
        prod = count
        for s in sizes:
            prod *= values[s - 1]
        total += prod
    return total


def moments_from_free_cumulants_by_partitions(kappa):
    """Partition-sum oracle for the free transform (enumeration-bounded)."""
    _require_kind(kappa, "free")
    if kappa.order > NC_ENUM_MAX:
        raise ValueError("partition-sum oracle supports order <= %d" % NC_ENUM_MAX)
    vals = kappa.values
    return MomentSeq(tuple(_partition_sum(vals, n, True) for n in range(1, len(vals) + 1)))


def moments_from_classical_cumulants_by_partitions(c):
    """Partition-sum oracle for the classical transform (enumeration-bounded)."""
    _require_kind(c, "classical")
    if c.order > SET_ENUM_MAX:
        raise ValueError("partition-sum oracle supports order <= %d" % SET_ENUM_MAX)
    vals = c.values
    return MomentSeq(tuple(_partition_sum(vals, n, False) for n in range(1, len(vals) + 1)))
