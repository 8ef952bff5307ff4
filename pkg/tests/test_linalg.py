import random

import pytest

from ddx.gaussrat import GaussRat, ONE
from ddx.linalg import (
    AmbientMismatch,
    ExactMatrix,
    QuotientMap,
    Subspace,
    image,
    image_of_subspace,
    kernel,
    preimage,
    quotient_dim,
    rank,
    solve,
    subspace_intersect,
    subspace_sum,
)


def M(rows):
    return ExactMatrix.from_rows(rows)


def test_rank_examples():
    assert rank(ExactMatrix.identity(2)) == 2
    assert rank(ExactMatrix.zero(3, 4)) == 0
    # second row is i times the first
    m = M([["1", "i"], ["i", "-1"]])
    assert rank(m) == 1


def test_kernel_examples():
    assert kernel(ExactMatrix.zero(2, 5)).dim == 5
    assert kernel(ExactMatrix.identity(4)).dim == 0
    k = kernel(M([[1, 1]]))
    assert k.dim == 1
    assert k.contains({0: GaussRat(1), 1: GaussRat(-1)})


def test_subspace_ops_examples():
    e1 = Subspace.from_vectors([{0: ONE}], 2)
    e2 = Subspace.from_vectors([{1: ONE}], 2)
    assert subspace_intersect(e1, e2).dim == 0
    assert subspace_sum(e1, e1) == e1
    full = Subspace.full(2)
    diag = Subspace.from_vectors([{0: ONE, 1: ONE}], 2)
    assert subspace_intersect(full, diag) == diag


def test_ambient_mismatch():
    a = Subspace.full(2)
    b = Subspace.full(3)
    with pytest.raises(AmbientMismatch):
        subspace_sum(a, b)
    with pytest.raises(AmbientMismatch):
        subspace_intersect(a, b)


def _random_matrix(rng, rows, cols):
    from fractions import Fraction

    def frac():
        return Fraction(rng.randint(-10, 10), rng.randint(1, 10))

    data = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < 0.4:
                row.append(GaussRat(frac(), frac() if rng.random() < 0.3 else 0))
            else:
                row.append(GaussRat(0))
        data.append(row)
    return ExactMatrix.from_rows(data, cols)


def test_rank_transpose_and_kernel_dims():
    rng = random.Random(11)
    for _ in range(40):
        rows, cols = rng.randint(1, 8), rng.randint(1, 8)
        m = _random_matrix(rng, rows, cols)
        r = rank(m)
        assert r == rank(m.transpose())
        assert kernel(m).dim + r == cols


def test_grassmann_identity():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randint(1, 7)
        a = Subspace.from_vectors(
            [_random_matrix(rng, 1, n).row(0) for _ in range(rng.randint(0, n))], n
        )
        b = Subspace.from_vectors(
            [_random_matrix(rng, 1, n).row(0) for _ in range(rng.randint(0, n))], n
        )
        s = subspace_sum(a, b)
        i = subspace_intersect(a, b)
        assert a.dim + b.dim == s.dim + i.dim
        assert s.contains_subspace(a) and s.contains_subspace(b)
        assert a.contains_subspace(i) and b.contains_subspace(i)


def test_echelon_canonicalization():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(2, 7)
        vecs = [_random_matrix(rng, 1, n).row(0) for _ in range(rng.randint(1, n))]
        a = Subspace.from_vectors(vecs, n)
        # shuffled, rescaled, and mixed spanning set of the same space
        mixed = []
        for _ in range(len(vecs) + 2):
            acc = {}
            for v in vecs:
                c = GaussRat(rng.randint(-3, 3), rng.randint(-1, 1))
                for kk, vv in v.items():
                    cur = acc.get(kk, GaussRat(0)) + c * vv
                    if cur:
                        acc[kk] = cur
                    else:
                        acc.pop(kk, None)
            mixed.append(acc)
        b = Subspace.from_vectors(mixed, n)
        if b.dim == a.dim:
            assert a == b
        assert a.contains_subspace(b)


def test_solve_and_preimage():
    m = M([[1, 2], [0, 1], [1, 0]])
    cols = [m.column(0), m.column(1)]
    sols = solve(m, cols)
    assert sols[0] == {0: ONE}
    assert sols[1] == {1: ONE}
    with pytest.raises(ValueError):
        solve(m, [{0: ONE}])  # not in the column space

    target = image(m)
    pre = preimage(m, target)
    assert pre.dim == 2
    line = Subspace.from_vectors([m.column(0)], 3)
    pre_line = preimage(m, line)
    assert pre_line.dim == 1 + kernel(m).dim


def test_image_of_subspace_and_quotient():
    m = M([[1, 1], [0, 0]])
    s = Subspace.full(2)
    img = image_of_subspace(m, s)
    assert img.dim == 1
    sub = Subspace.from_vectors([{0: ONE}], 2)
    assert quotient_dim(Subspace.full(2), sub) == 1
    with pytest.raises(ValueError):
        quotient_dim(sub, Subspace.from_vectors([{1: ONE}], 2))


def test_quotient_map_coords():
    w = Subspace.from_vectors([{0: ONE, 1: ONE}], 3)
    qm = QuotientMap(w)
    assert qm.dim == 2
    # class of e0 equals class of -e1
    c0 = qm.project({0: ONE})
    c1 = qm.project({1: GaussRat(-1)})
    assert c0 == c1
    rep = qm.section(c0)
    assert qm.project(rep) == c0


def test_matrix_algebra():
    a = M([[1, 2], [3, 4]])
    b = M([[0, 1], [1, 0]])
    assert a @ b == M([[2, 1], [4, 3]])
    assert (a + (-a)).is_zero()
    assert a.transpose().transpose() == a
    c = M([["i", 0], [0, "1-i"]])
    assert c.conj() == M([["-i", 0], [0, "1+i"]])
    assert a.hstack(b).cols == 4
    assert a.vstack(b).rows == 4
    assert a.entry(0, 1) == GaussRat(2)
