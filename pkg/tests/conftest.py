"""Shared helpers: seeded random complexes and table comparison."""

from __future__ import annotations

import random

from ddx.gaussrat import GaussRat
from ddx.linalg import ExactMatrix, rank
from ddx.complexes import (
    change_basis,
    direct_sum,
    square_complex,
    with_conjugate,
    zigzag_complex,
    _strip_sigma,
)
from ddx.zigzags import ZigzagShape


def random_shape(rng, max_len=5, span=2):
    """A random zigzag shape staying within a small bidegree window."""
    length = rng.randint(1, max_len)
    p = rng.randint(-span, span)
    q = rng.randint(-span, span)
    spots = [(p, q)]
    # walk an alternating staircase; each step is +-(1,0)/(0,1) keeping
    # adjacency and alternation legal
    going_d1 = rng.random() < 0.5
    forward = rng.random() < 0.5
    for _ in range(length - 1):
        pp, qq = spots[-1]
        step = (1, 0) if going_d1 else (0, 1)
        if not forward:
            step = (-step[0], -step[1])
        spots.append((pp + step[0], qq + step[1]))
        going_d1 = not going_d1
        forward = not forward
    return ZigzagShape.from_spots(spots)


def random_basis_change(rng, n, with_i=False):
    """A deterministic invertible matrix: unit lower times unit upper."""
    def rnd():
        vals = [-2, -1, 1, 2]
        v = GaussRat(rng.choice(vals))
        if with_i and rng.random() < 0.3:
            v = v + GaussRat(0, rng.choice(vals))
        return v

    lower = [[GaussRat(1) if i == j else (rnd() if (j < i and rng.random() < 0.5) else GaussRat(0)) for j in range(n)] for i in range(n)]
    upper = [[GaussRat(1) if i == j else (rnd() if (j > i and rng.random() < 0.5) else GaussRat(0)) for j in range(n)] for i in range(n)]
    m = ExactMatrix.from_rows(lower) @ ExactMatrix.from_rows(upper)
    assert rank(m) == n
    return m


def random_complex_with_answer(seed, max_total_dim=40, with_sigma=False, with_i=True):
    """Seeded random complex plus the hidden decomposition it was built from.

    Random squares and zigzags are summed and then hidden behind random
    invertible per-bidegree base changes, which produces fully general
    complexes with known square counts and zigzag multisets.
    """
    rng = random.Random(seed)
    parts = []
    squares = {}
    mults = {}
    total = 0
    while total < max_total_dim:
        if rng.random() < 0.25:
            p, q = rng.randint(-2, 2), rng.randint(-2, 2)
            part = _strip_sigma(square_complex(p, q))
            key = ("square", (p, q))
        else:
            shape = random_shape(rng).canonical()
            part = _strip_sigma(zigzag_complex(shape))
            key = ("zigzag", shape)
        if total + part.total_dim() > max_total_dim:
            break
        parts.append(part)
        total += part.total_dim()
        if key[0] == "square":
            squares[key[1]] = squares.get(key[1], 0) + 1
        else:
            mults[key[1]] = mults.get(key[1], 0) + 1
        if rng.random() < 0.15:
            break
    if not parts:
        shape = ZigzagShape.dot(0, 0)
        parts = [_strip_sigma(zigzag_complex(shape))]
        mults[shape] = 1
    k = direct_sum(parts)
    if with_sigma:
        for shape, n in list(mults.items()):
            mirrored = ZigzagShape.from_spots(
                [(q, p) for p, q in shape.spots]
            ).canonical()
            mults[mirrored] = mults.get(mirrored, 0) + n
        for (p, q), n in list(squares.items()):
            squares[(q, p)] = squares.get((q, p), 0) + n
        k = with_conjugate(k)
    transforms = {
        pq: random_basis_change(rng, n, with_i=with_i and not with_sigma)
        for pq, n in k.spaces.items()
    }
    return change_basis(k, transforms), squares, mults


def random_complex(seed, max_total_dim=40, with_sigma=False, with_i=True):
    return random_complex_with_answer(seed, max_total_dim, with_sigma, with_i)[0]


def tables_equal(*pairs):
    for a, b in pairs:
        if a.dims != b.dims:
            return False
    return True
