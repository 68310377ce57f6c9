"""Vectorized helpers shared by the array-backed tree backends."""

import numpy as np


def gather(start, count):
    """Concatenation of ``arange(start[i], start[i] + count[i])`` over i."""
    count = np.asarray(count, dtype=np.int64)
    total = int(count.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    ends = np.cumsum(count)
    out = np.ones(total, dtype=np.int64)
    nz = count > 0
    s, c, e = np.asarray(start, dtype=np.int64)[nz], count[nz], ends[nz]
    out[0] = s[0]
    # at the first slot of each segment jump from the previous segment's end
    out[(e - c)[1:]] = s[1:] - (s[:-1] + c[:-1] - 1)
    return np.cumsum(out)


def pow2_at_least(m):
    """Smallest power of two >= m (elementwise, m >= 1)."""
    m = np.asarray(m, dtype=np.int64)
    e = np.ceil(np.log2(np.maximum(m, 1))).astype(np.int64)
    p = np.left_shift(np.int64(1), e)
    # guard the float log against off-by-one
    p = np.where(p < m, p << 1, p)
    p = np.where((p >> 1) >= m, p >> 1, p)
    return np.maximum(p, 1)


def canonical_nodes(lo, hi, size):
    """Segment-tree canonical cover of inclusive leaf ranges [lo, hi] in heaps
    of ``size`` leaves (per element).  Returns (node, position-in-input)."""
    l = np.asarray(lo, dtype=np.int64) + size
    r = np.asarray(hi, dtype=np.int64) + size + 1
    who = np.arange(len(l))
    nodes, owners = [], []
    while len(who):
        take = (l & 1).astype(bool) & (l < r)
        nodes.append(l[take]); owners.append(who[take])
        l = l + take
        take = (r & 1).astype(bool) & (l < r)
        r = r - take
        nodes.append(r[take]); owners.append(who[take])
        l >>= 1
        r >>= 1
        live = l < r
        l, r, who = l[live], r[live], who[live]
    if not nodes:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    return np.concatenate(nodes), np.concatenate(owners)


def node_key(group, node):
    return (np.asarray(group, dtype=np.int64) << 32) | np.asarray(node, dtype=np.int64)


def lookup(sorted_keys, keys):
    """Positions of ``keys`` in ``sorted_keys`` and a found mask."""
    idx = np.searchsorted(sorted_keys, keys)
    ok = idx < len(sorted_keys)
    ok[ok] = sorted_keys[idx[ok]] == keys[ok]
    return idx, ok
