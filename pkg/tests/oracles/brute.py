"""Independent brute-force oracle for the Lie-model reference dimensions.

Deliberately self-contained: its own complex-number representation (pairs of
Fractions), its own dense Gaussian elimination, and its own exterior-algebra
expansion.  It shares no code with the package under test.  All cohomology
dimensions are derived from ranks alone:

    dim ker A             = cols - rank A
    dim (ker A & ker B)   = cols - rank [A ; B]
    dim (im A + im B)     = rank [A | B]

Run as a script to (re)generate the golden files:

    python tests/oracles/brute.py tests/golden
"""

from __future__ import annotations

import itertools
import json
import os
import sys
from fractions import Fraction


# ----------------------------------------------------------------------
# scalars: (re, im) pairs of Fractions
# ----------------------------------------------------------------------

def cx(re=0, im=0):
    return (Fraction(re), Fraction(im))


CZERO = cx(0)


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cneg(a):
    return (-a[0], -a[1])


def cconj(a):
    return (a[0], -a[1])


def cdiv(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / n, (a[1] * b[0] - a[0] * b[1]) / n)


def is_zero(a):
    return a[0] == 0 and a[1] == 0


def dense_rank(mat):
    """Rank of a dense list-of-lists matrix by straight Gaussian elimination."""
    if not mat:
        return 0
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if not is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(rows):
            if i != r and not is_zero(m[i][c]):
                f = cdiv(m[i][c], pv)
                m[i] = [cadd(x, cneg(cmul(f, y))) for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def hstack(a, b):
    if not a:
        return [row[:] for row in b]
    if not b:
        return [row[:] for row in a]
    return [ra + rb for ra, rb in zip(a, b)]


def vstack(a, b):
    return [row[:] for row in a] + [row[:] for row in b]


# ----------------------------------------------------------------------
# exterior algebra of a Lie model
# ----------------------------------------------------------------------
# generators: ('h', i) for the holomorphic phi^i, ('a', i) for phibar^i.
# A monomial is a sorted tuple of generators; d acts by the Leibniz rule.

class Oracle:
    def __init__(self, n, d20, d11):
        """d20[k] = [(i, j, coeff)] for coeff phi^i phi^j in d phi^k (i<j);
        d11[k] = [(i, j, coeff)] for coeff phi^i phibar^j."""
        self.n = n
        self.dgen = {}
        for k, terms in d20.items():
            acc = self.dgen.setdefault(("h", k), [])
            for i, j, c in terms:
                acc.append(((("h", i), ("h", j)), cx(c)))
            bacc = self.dgen.setdefault(("a", k), [])
            for i, j, c in terms:
                bacc.append(((("a", i), ("a", j)), cconj(cx(c))))
        for k, terms in d11.items():
            acc = self.dgen.setdefault(("h", k), [])
            for i, j, c in terms:
                acc.append(((("h", i), ("a", j)), cx(c)))
            bacc = self.dgen.setdefault(("a", k), [])
            for i, j, c in terms:
                # conj(phi^i phibar^j) = phibar^i phi^j = - phi^j phibar^i
                bacc.append(((("h", j), ("a", i)), cneg(cconj(cx(c)))))

        self.basis = {}
        self.index = {}
        for p in range(n + 1):
            for q in range(n + 1):
                labels = [
                    tuple(sorted([("h", i) for i in I] + [("a", j) for j in J]))
                    for I in itertools.combinations(range(1, n + 1), p)
                    for J in itertools.combinations(range(1, n + 1), q)
                ]
                labels.sort()
                self.basis[(p, q)] = labels
                self.index[(p, q)] = {m: i for i, m in enumerate(labels)}

    def normalize(self, factors):
        fs = list(factors)
        sign = 1
        for a in range(1, len(fs)):
            b = a
            while b > 0 and fs[b - 1] > fs[b]:
                fs[b - 1], fs[b] = fs[b], fs[b - 1]
                sign = -sign
                b -= 1
        for a in range(1, len(fs)):
            if fs[a - 1] == fs[a]:
                return 0, None
        return sign, tuple(fs)

    def d_monomial(self, mono):
        """Full differential of a monomial: dict monomial -> coeff."""
        out = {}
        for pos, gen in enumerate(mono):
            terms = self.dgen.get(gen)
            if not terms:
                continue
            rest = mono[:pos] + mono[pos + 1 :]
            leib = 1 if pos % 2 == 0 else -1
            for pair, coeff in terms:
                sign, key = self.normalize(pair + rest)
                if key is None:
                    continue
                total = cmul(coeff, cx(sign * leib))
                cur = cadd(out.get(key, CZERO), total)
                if is_zero(cur):
                    out.pop(key, None)
                else:
                    out[key] = cur
        return out

    def bidegree_of(self, mono):
        p = sum(1 for kind, _ in mono if kind == "h")
        return (p, len(mono) - p)

    def d_matrix(self, p, q, which):
        """which: 'd1' keeps the (p+1,q) part, 'd2' the (p,q+1) part."""
        src = self.basis.get((p, q), [])
        if not src:
            return []
        tgt_pq = (p + 1, q) if which == "d1" else (p, q + 1)
        tgt = self.index.get(tgt_pq, {})
        mat = [[CZERO] * len(src) for _ in range(len(tgt))]
        for col, mono in enumerate(src):
            for key, coeff in self.d_monomial(mono).items():
                if self.bidegree_of(key) == tgt_pq:
                    mat[tgt[key]][col] = coeff
        return mat

    # -- dimensions ------------------------------------------------------

    def dolbeault(self, p, q):
        n = len(self.basis[(p, q)])
        out_rank = dense_rank(self.d_matrix(p, q, "d2"))
        in_rank = dense_rank(self.d_matrix(p, q - 1, "d2")) if q >= 1 else 0
        return n - out_rank - in_rank

    def conj_dolbeault(self, p, q):
        n = len(self.basis[(p, q)])
        out_rank = dense_rank(self.d_matrix(p, q, "d1"))
        in_rank = dense_rank(self.d_matrix(p - 1, q, "d1")) if p >= 1 else 0
        return n - out_rank - in_rank

    def compose(self, a, b):
        """a @ b for dense matrices."""
        if not a or not b:
            return []
        rows, mid, cols = len(a), len(b), len(b[0])
        out = [[CZERO] * cols for _ in range(rows)]
        for i in range(rows):
            for k in range(mid):
                v = a[i][k]
                if is_zero(v):
                    continue
                brow = b[k]
                orow = out[i]
                for j in range(cols):
                    if not is_zero(brow[j]):
                        orow[j] = cadd(orow[j], cmul(v, brow[j]))
        return out

    def bott_chern(self, p, q):
        n = len(self.basis[(p, q)])
        d1 = self.d_matrix(p, q, "d1")
        d2 = self.d_matrix(p, q, "d2")
        both = vstack(d1, d2)
        zdim = n - dense_rank(both)
        if p >= 1 and q >= 1:
            comp = self.compose(self.d_matrix(p - 1, q, "d1"), self.d_matrix(p - 1, q - 1, "d2"))
            bdim = dense_rank(comp)
        else:
            bdim = 0
        return zdim - bdim

    def aeppli(self, p, q):
        n = len(self.basis[(p, q)])
        comp = self.compose(self.d_matrix(p, q + 1, "d1"), self.d_matrix(p, q, "d2"))
        zdim = n - dense_rank(comp)
        ins = []
        if p >= 1:
            ins = hstack(ins, self.d_matrix(p - 1, q, "d1"))
        if q >= 1:
            ins = hstack(ins, self.d_matrix(p, q - 1, "d2"))
        return zdim - dense_rank(ins)

    def total_d(self, k):
        """Full d: Tot^k -> Tot^{k+1} over the sorted spot blocks."""
        spots_k = [(p, k - p) for p in range(max(0, k - self.n), min(self.n, k) + 1)]
        spots_k1 = [(p, k + 1 - p) for p in range(max(0, k + 1 - self.n), min(self.n, k + 1) + 1)]
        off_t = {}
        acc = 0
        for pq in spots_k1:
            off_t[pq] = acc
            acc += len(self.basis[pq])
        nrows = acc
        cols = sum(len(self.basis[pq]) for pq in spots_k)
        mat = [[CZERO] * cols for _ in range(nrows)]
        cacc = 0
        for pq in spots_k:
            for col, mono in enumerate(self.basis[pq]):
                for key, coeff in self.d_monomial(mono).items():
                    tpq = self.bidegree_of(key)
                    if tpq in off_t:
                        mat[off_t[tpq] + self.index[tpq][key]][cacc + col] = coeff
            cacc += len(self.basis[pq])
        return mat, cols

    def betti(self, k):
        mat_k, cols_k = self.total_d(k)
        r_out = dense_rank(mat_k)
        r_in = dense_rank(self.total_d(k - 1)[0]) if k >= 1 else 0
        return cols_k - r_out - r_in

    def report(self):
        n = self.n
        out = {"dim": n, "betti": {}, "dolbeault": {}, "conj_dolbeault": {},
               "bott_chern": {}, "aeppli": {}}
        for k in range(2 * n + 1):
            out["betti"][str(k)] = self.betti(k)
        for p in range(n + 1):
            for q in range(n + 1):
                key = f"{p},{q}"
                out["dolbeault"][key] = self.dolbeault(p, q)
                out["conj_dolbeault"][key] = self.conj_dolbeault(p, q)
                out["bott_chern"][key] = self.bott_chern(p, q)
                out["aeppli"][key] = self.aeppli(p, q)
        e1_sums = {}
        for key, h in out["dolbeault"].items():
            p, q = map(int, key.split(","))
            e1_sums[p + q] = e1_sums.get(p + q, 0) + h
        out["e1_degenerate"] = all(
            e1_sums.get(k, 0) == out["betti"][str(k)] for k in range(2 * n + 1)
        )
        return out


MODELS = {
    "iwasawa": dict(n=3, d20={3: [(1, 2, -1)]}, d11={}),
    "kodaira_thurston": dict(n=2, d20={}, d11={2: [(1, 1, 1)]}),
    "torus_3": dict(n=3, d20={}, d11={}),
}


def main(outdir):
    os.makedirs(outdir, exist_ok=True)
    for name, spec in MODELS.items():
        oracle = Oracle(spec["n"], spec["d20"], spec["d11"])
        rep = oracle.report()
        path = os.path.join(outdir, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(rep, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/golden")
