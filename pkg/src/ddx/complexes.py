"""Bounded double complexes over the Gaussian rationals with real structure.

A complex holds finitely many bigraded spaces ``K^{p,q}`` together with two
anticommuting square-zero differentials ``d1`` (bidegree (1,0)) and ``d2``
(bidegree (0,1)) and, optionally, a real structure: matrices ``S^{p,q}``
encoding the conjugate-linear maps ``sigma(v) = S * conj(v)`` from ``K^{p,q}``
to ``K^{q,p}`` that intertwine the two differentials.

Only nonzero spaces and nonzero component matrices are stored; missing data
means zero.  Complexes are immutable after construction.
"""

from __future__ import annotations

from .gaussrat import ONE, MINUS_ONE
from .linalg import ExactMatrix, image, rank, solve


class MixedRealStructure(Exception):
    pass


class NotInjective(Exception):
    pass


class MalformedShape(Exception):
    pass


class DoubleComplex:
    __slots__ = ("spaces", "d1", "d2", "sigma")

    def __init__(self, spaces, d1=None, d2=None, sigma=None):
        self.spaces = {pq: n for pq, n in spaces.items() if n > 0}
        self.d1 = _normalize_maps(d1, self.spaces, (1, 0))
        self.d2 = _normalize_maps(d2, self.spaces, (0, 1))
        if sigma is not None:
            sigma = {
                (p, q): m
                for (p, q), m in sigma.items()
                if (p, q) in self.spaces
            }
        self.sigma = sigma

    # -- basic geometry ---------------------------------------------------

    def dim(self, p, q):
        return self.spaces.get((p, q), 0)

    def total_dim(self):
        return sum(self.spaces.values())

    def support(self):
        return sorted(self.spaces)

    def degrees(self):
        return sorted({p + q for p, q in self.spaces})

    def degree_spots(self, k):
        """Spots of total degree k, sorted by p ascending."""
        return sorted(pq for pq in self.spaces if pq[0] + pq[1] == k)

    def has_real_structure(self):
        return self.sigma is not None

    # -- differentials ----------------------------------------------------

    def d1_at(self, p, q):
        """d1 component as a matrix, or None when source or target is zero."""
        return self._map_at(self.d1, (1, 0), p, q)

    def d2_at(self, p, q):
        return self._map_at(self.d2, (0, 1), p, q)

    def _map_at(self, maps, delta, p, q):
        src = self.dim(p, q)
        tgt = self.dim(p + delta[0], q + delta[1])
        if src == 0 or tgt == 0:
            return None
        m = maps.get((p, q))
        if m is None:
            return ExactMatrix.zero(tgt, src)
        return m

    def sigma_at(self, p, q):
        if self.sigma is None:
            return None
        src = self.dim(p, q)
        tgt = self.dim(q, p)
        if src == 0:
            return None
        if tgt == 0:
            return None
        m = self.sigma.get((p, q))
        if m is None:
            return ExactMatrix.zero(tgt, src)
        return m

    # -- validation ---------------------------------------------------------

    def validate(self):
        """Check every structural identity; returns a ValidationReport."""
        violations = []

        def shape_of(maps, delta, name):
            for (p, q), m in maps.items():
                tgt = self.dim(p + delta[0], q + delta[1])
                src = self.dim(p, q)
                if m.rows != tgt or m.cols != src:
                    violations.append(
                        Violation(name + "-shape", (p, q), f"{m.rows}x{m.cols} vs {tgt}x{src}")
                    )

        shape_of(self.d1, (1, 0), "d1")
        shape_of(self.d2, (0, 1), "d2")

        for p, q in self.support():
            a = self.d1_at(p + 1, q)
            b = self.d1_at(p, q)
            if a is not None and b is not None and not (a @ b).is_zero():
                violations.append(Violation("d1-square", (p, q), "d1 . d1 != 0"))
            a = self.d2_at(p, q + 1)
            b = self.d2_at(p, q)
            if a is not None and b is not None and not (a @ b).is_zero():
                violations.append(Violation("d2-square", (p, q), "d2 . d2 != 0"))
            # anticommutation out of (p,q)
            if self.dim(p + 1, q + 1):
                path1 = None
                d2b = self.d2_at(p, q)
                d1a = self.d1_at(p, q + 1)
                if d2b is not None and d1a is not None:
                    path1 = d1a @ d2b
                path2 = None
                d1b = self.d1_at(p, q)
                d2a = self.d2_at(p + 1, q)
                if d1b is not None and d2a is not None:
                    path2 = d2a @ d1b
                if path1 is not None or path2 is not None:
                    n = self.dim(p + 1, q + 1)
                    s = ExactMatrix.zero(n, self.dim(p, q))
                    if path1 is not None:
                        s = s + path1
                    if path2 is not None:
                        s = s + path2
                    if not s.is_zero():
                        violations.append(
                            Violation("anticommute", (p, q), "d1 d2 + d2 d1 != 0")
                        )

        if self.sigma is not None:
            violations.extend(self._validate_sigma())
        return ValidationReport(violations)

    def _validate_sigma(self):
        out = []
        for p, q in self.support():
            if self.dim(q, p) != self.dim(p, q):
                out.append(Violation("conjugation-support", (p, q), "dim K^{q,p} != dim K^{p,q}"))
                continue
            s = self.sigma_at(p, q)
            if s is None or (s.rows, s.cols) != (self.dim(q, p), self.dim(p, q)):
                out.append(Violation("conjugation-shape", (p, q), "missing or misshaped sigma"))
                continue
            back = self.sigma_at(q, p)
            if back is None or not _is_identity(back @ s.conj(), self.dim(p, q)):
                out.append(Violation("conjugation-involution", (p, q), "sigma^2 != id"))
            # d1(sigma x) = sigma(d2 x)
            lhs = self.d1_at(q, p)
            rhs_s = self.sigma_at(p, q + 1)
            d2 = self.d2_at(p, q)
            lhs_m = (lhs @ s) if lhs is not None else None
            rhs_m = (rhs_s @ d2.conj()) if (rhs_s is not None and d2 is not None) else None
            if not _same_or_zero(lhs_m, rhs_m):
                out.append(Violation("conjugation-d1", (p, q), "d1 sigma != sigma conj(d2)"))
            # d2(sigma x) = sigma(d1 x)  (implied, checked for safety)
            lhs = self.d2_at(q, p)
            rhs_s = self.sigma_at(p + 1, q)
            d1 = self.d1_at(p, q)
            lhs_m = (lhs @ s) if lhs is not None else None
            rhs_m = (rhs_s @ d1.conj()) if (rhs_s is not None and d1 is not None) else None
            if not _same_or_zero(lhs_m, rhs_m):
                out.append(Violation("conjugation-d2", (p, q), "d2 sigma != sigma conj(d1)"))
        return out

    def __repr__(self):
        return f"DoubleComplex({len(self.spaces)} spots, total dim {self.total_dim()})"


class Violation:
    __slots__ = ("kind", "bidegree", "detail")

    def __init__(self, kind, bidegree, detail):
        self.kind = kind
        self.bidegree = bidegree
        self.detail = detail

    def __repr__(self):
        return f"Violation({self.kind} at {self.bidegree}: {self.detail})"


class ValidationReport:
    __slots__ = ("violations",)

    def __init__(self, violations):
        self.violations = violations

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "ValidationReport(ok)"
        return f"ValidationReport({self.violations!r})"


def _normalize_maps(maps, spaces, delta):
    out = {}
    if maps:
        for (p, q), m in maps.items():
            if (p, q) not in spaces:
                continue
            if (p + delta[0], q + delta[1]) not in spaces:
                continue
            if m is not None and not m.is_zero():
                out[(p, q)] = m
    return out


def _is_identity(m, n):
    return m == ExactMatrix.identity(n)


def _same_or_zero(a, b):
    if a is None and b is None:
        return True
    if a is None:
        return b.is_zero()
    if b is None:
        return a.is_zero()
    return a == b


class ComplexMorphism:
    """A bidegree-preserving map of double complexes commuting with d1, d2."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = {
            pq: m for pq, m in components.items() if pq in source.spaces and not m.is_zero()
        }

    def at(self, p, q):
        src = self.source.dim(p, q)
        tgt = self.target.dim(p, q)
        if src == 0:
            return None
        m = self.components.get((p, q))
        if m is None:
            return ExactMatrix.zero(tgt, src)
        return m

    def validate(self):
        violations = []
        for (p, q), m in self.components.items():
            if (m.rows, m.cols) != (self.target.dim(p, q), self.source.dim(p, q)):
                violations.append(Violation("morphism-shape", (p, q), "component misshaped"))
        for p, q in self.source.support():
            for which, delta in (("d1", (1, 0)), ("d2", (0, 1))):
                ds = getattr(self.source, which + "_at")(p, q)
                dt = getattr(self.target, which + "_at")(p, q)
                f_here = self.at(p, q)
                f_next = self.at(p + delta[0], q + delta[1])
                lhs = (f_next @ ds) if (f_next is not None and ds is not None) else None
                rhs = (dt @ f_here) if (dt is not None and f_here is not None) else None
                if not _same_or_zero(lhs, rhs):
                    violations.append(
                        Violation("morphism-" + which, (p, q), f"does not commute with {which}")
                    )
        return ValidationReport(violations)

    @classmethod
    def identity(cls, k):
        return cls(k, k, {pq: ExactMatrix.identity(n) for pq, n in k.spaces.items()})

    def __repr__(self):
        return f"ComplexMorphism({len(self.components)} components)"


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------

def direct_sum(summands):
    """Blockwise direct sum; real structures must be all present or absent."""
    summands = list(summands)
    flags = {k.has_real_structure() for k in summands}
    if len(flags) > 1:
        raise MixedRealStructure("cannot sum complexes with and without real structure")
    with_sigma = flags == {True}

    spaces = {}
    offsets = []  # per summand: {pq: offset}
    for k in summands:
        off = {}
        for pq, n in k.spaces.items():
            off[pq] = spaces.get(pq, 0)
            spaces[pq] = spaces.get(pq, 0) + n
        offsets.append(off)

    def blockify(get_map, delta):
        out = {}
        for pq in spaces:
            p, q = pq
            tgt = (p + delta[0], q + delta[1])
            if tgt not in spaces:
                continue
            rds = [{} for _ in range(spaces[tgt])]
            nonzero = False
            for k, off in zip(summands, offsets):
                m = get_map(k, p, q)
                if m is None:
                    continue
                ro = off.get(tgt)
                co = off.get(pq)
                if co is None or ro is None:
                    continue
                for i, r in enumerate(m._rows):
                    for c, v in r.items():
                        rds[i + ro][c + co] = v
                        nonzero = True
            if nonzero:
                out[pq] = ExactMatrix(spaces[tgt], spaces[pq], rds)
        return out

    d1 = blockify(lambda k, p, q: k.d1_at(p, q), (1, 0))
    d2 = blockify(lambda k, p, q: k.d2_at(p, q), (0, 1))

    sigma = None
    if with_sigma:
        sigma = {}
        for pq in spaces:
            p, q = pq
            tgt = (q, p)
            rds = [{} for _ in range(spaces.get(tgt, 0))]
            nonzero = False
            for k, off in zip(summands, offsets):
                m = k.sigma_at(p, q)
                if m is None:
                    continue
                ro = off.get(tgt) if tgt in off else None
                co = off.get(pq)
                if ro is None or co is None:
                    continue
                for i, r in enumerate(m._rows):
                    for c, v in r.items():
                        rds[i + ro][c + co] = v
                        nonzero = True
            if nonzero:
                sigma[pq] = ExactMatrix(spaces.get(tgt, 0), spaces[pq], rds)
    return DoubleComplex(spaces, d1, d2, sigma)


def summand_inclusion(summands, index):
    """The inclusion of ``summands[index]`` into ``direct_sum(summands)``."""
    total = direct_sum(summands)
    off = {}
    acc = {}
    for j, k in enumerate(summands):
        for pq, n in k.spaces.items():
            if j == index:
                off[pq] = acc.get(pq, 0)
            acc[pq] = acc.get(pq, 0) + n
    comps = {}
    src = summands[index]
    for pq, n in src.spaces.items():
        rds = [{} for _ in range(total.dim(*pq))]
        for i in range(n):
            rds[off[pq] + i][i] = ONE
        comps[pq] = ExactMatrix(total.dim(*pq), n, rds)
    return ComplexMorphism(src, total, comps)


def summand_projection(summands, index):
    """The projection of ``direct_sum(summands)`` onto ``summands[index]``."""
    total = direct_sum(summands)
    off = {}
    acc = {}
    for j, k in enumerate(summands):
        for pq, n in k.spaces.items():
            if j == index:
                off[pq] = acc.get(pq, 0)
            acc[pq] = acc.get(pq, 0) + n
    comps = {}
    tgt = summands[index]
    for pq, n in tgt.spaces.items():
        rds = [{} for _ in range(n)]
        for i in range(n):
            rds[i][off[pq] + i] = ONE
        comps[pq] = ExactMatrix(n, total.dim(*pq), rds)
    return ComplexMorphism(total, tgt, comps)


def shift_diag(k, i):
    """Move every space from (p,q) to (p+i, q+i), carrying all structure."""
    spaces = {(p + i, q + i): n for (p, q), n in k.spaces.items()}
    d1 = {(p + i, q + i): m for (p, q), m in k.d1.items()}
    d2 = {(p + i, q + i): m for (p, q), m in k.d2.items()}
    sigma = None
    if k.sigma is not None:
        sigma = {(p + i, q + i): m for (p, q), m in k.sigma.items()}
    return DoubleComplex(spaces, d1, d2, sigma)


def tensor(a, b):
    """Tensor product with Koszul signs by total degree.

    ``(a (x) b)^{p,q}`` is the sum of ``a^{r,s} (x) b^{u,v}`` over r+u=p,
    s+v=q; blocks are ordered by (r,s) lexicographically and indexed by
    ``ia * dim_b + ib`` inside each block.  The differentials follow
    ``d(x (x) y) = dx (x) y + (-1)^{deg x} x (x) dy`` and the real structure,
    when both factors have one, is ``sigma(x (x) y) = sigma(x) (x) sigma(y)``.
    """
    spaces = {}
    layout = {}  # (p,q) -> list of ((r,s),(u,v), offset)
    for (r, s), na in sorted(a.spaces.items()):
        for (u, v), nb in sorted(b.spaces.items()):
            pq = (r + u, s + v)
            off = spaces.get(pq, 0)
            layout.setdefault(pq, []).append(((r, s), (u, v), off))
            spaces[pq] = off + na * nb

    index = {}
    for pq, blocks in layout.items():
        index[pq] = {(blk[0], blk[1]): blk[2] for blk in blocks}

    def build(delta, which):
        out = {}
        for pq, blocks in layout.items():
            p, q = pq
            tgt = (p + delta[0], q + delta[1])
            if tgt not in spaces:
                continue
            rds = [{} for _ in range(spaces[tgt])]
            nonzero = False
            for (rs, uv, off) in blocks:
                r, s = rs
                u, v = uv
                na = a.dim(r, s)
                nb = b.dim(u, v)
                # d acting on the a-factor
                da = getattr(a, which + "_at")(r, s)
                if da is not None and not da.is_zero():
                    t_off = index[tgt].get(((r + delta[0], s + delta[1]), uv))
                    if t_off is not None:
                        for ia in range(na):
                            col = da.column(ia)
                            for ja, coeff in col.items():
                                for ib in range(nb):
                                    rds[t_off + ja * nb + ib][off + ia * nb + ib] = coeff
                                    nonzero = True
                # d acting on the b-factor, with the sign of the a-degree
                db = getattr(b, which + "_at")(u, v)
                if db is not None and not db.is_zero():
                    uv_t = (u + delta[0], v + delta[1])
                    t_off = index[tgt].get((rs, uv_t))
                    if t_off is not None:
                        nbt = b.dim(*uv_t)
                        sign = ONE if (r + s) % 2 == 0 else MINUS_ONE
                        for ib in range(nb):
                            col = db.column(ib)
                            for jb, coeff in col.items():
                                sv = sign * coeff
                                for ia in range(na):
                                    rds[t_off + ia * nbt + jb][off + ia * nb + ib] = sv
                                    nonzero = True
            if nonzero:
                out[pq] = ExactMatrix(spaces[tgt], spaces[pq], rds)
        return out

    d1 = build((1, 0), "d1")
    d2 = build((0, 1), "d2")

    sigma = None
    if a.has_real_structure() and b.has_real_structure():
        sigma = {}
        for pq, blocks in layout.items():
            p, q = pq
            tgt = (q, p)
            if tgt not in spaces:
                continue
            rds = [{} for _ in range(spaces[tgt])]
            nonzero = False
            for (rs, uv, off) in blocks:
                r, s = rs
                u, v = uv
                sa = a.sigma_at(r, s)
                sb = b.sigma_at(u, v)
                if sa is None or sb is None:
                    continue
                t_off = index[tgt].get(((s, r), (v, u)))
                if t_off is None:
                    continue
                nb = b.dim(u, v)
                nb_t = b.dim(v, u)
                for ia in range(a.dim(r, s)):
                    ca = sa.column(ia)
                    for ib in range(nb):
                        cb = sb.column(ib)
                        for ja, va in ca.items():
                            for jb, vb in cb.items():
                                rds[t_off + ja * nb_t + jb][off + ia * nb + ib] = va * vb
                                nonzero = True
            if nonzero:
                sigma[pq] = ExactMatrix(spaces.get(tgt, 0), spaces[pq], rds)
    return DoubleComplex(spaces, d1, d2, sigma)


def quotient_by_injection(f):
    """Quotient of the target of ``f`` by its image, with induced structure.

    Raises NotInjective unless every component of ``f`` has full column rank.
    """
    src, tgt = f.source, f.target
    for pq, n in src.spaces.items():
        m = f.at(*pq)
        if m is None or rank(m) < n:
            raise NotInjective(f"component at {pq} is not injective")

    images = {}
    qmaps = {}
    from .linalg import QuotientMap, Subspace

    for pq, n in tgt.spaces.items():
        m = f.at(*pq) if pq in src.spaces else None
        if m is not None:
            images[pq] = image(m)
        else:
            images[pq] = Subspace.zero(n)
        qmaps[pq] = QuotientMap(images[pq])

    spaces = {pq: qmaps[pq].dim for pq in tgt.spaces}

    def induced(which, delta):
        out = {}
        for pq in tgt.spaces:
            p, q = pq
            tpq = (p + delta[0], q + delta[1])
            if spaces.get(tpq, 0) == 0 or spaces.get(pq, 0) == 0:
                continue
            d = getattr(tgt, which + "_at")(p, q)
            if d is None or d.is_zero():
                continue
            qm_s, qm_t = qmaps[pq], qmaps[tpq]
            cols = []
            for j in range(qm_s.dim):
                rep = qm_s.section({j: ONE})
                cols.append(qm_t.project(d.apply(rep)))
            mat = ExactMatrix.from_columns(cols, qm_t.dim)
            if not mat.is_zero():
                out[pq] = mat
        return out

    d1 = induced("d1", (1, 0))
    d2 = induced("d2", (0, 1))

    sigma = None
    if src.has_real_structure() and tgt.has_real_structure():
        if _morphism_is_real(f):
            sigma = {}
            for pq in tgt.spaces:
                p, q = pq
                s = tgt.sigma_at(p, q)
                if s is None or spaces.get(pq, 0) == 0 or spaces.get((q, p), 0) == 0:
                    continue
                qm_s, qm_t = qmaps[pq], qmaps[(q, p)]
                cols = []
                for j in range(qm_s.dim):
                    rep = qm_s.section({j: ONE})
                    cols.append(qm_t.project(s.apply(rep)))
                sigma[pq] = ExactMatrix.from_columns(cols, qm_t.dim)
    return DoubleComplex(spaces, d1, d2, sigma)


def _morphism_is_real(f):
    for pq in f.source.spaces:
        p, q = pq
        fs = f.at(p, q)
        ss = f.source.sigma_at(p, q)
        st = f.target.sigma_at(p, q)
        fq = f.at(q, p)
        lhs = (fq @ ss) if (fq is not None and ss is not None) else None
        rhs = (st @ fs.conj()) if (st is not None and fs is not None) else None
        if not _same_or_zero(lhs, rhs):
            return False
    return True


def change_basis(k, transforms):
    """Conjugate by invertible per-bidegree base changes.

    ``transforms`` maps bidegrees to invertible matrices B expressing the new
    basis vectors in the old coordinates (columns).  Missing spots keep the
    identity.  The real structure is transported along.
    """
    inv = {}
    for pq, b in transforms.items():
        n = k.dim(*pq)
        if (b.rows, b.cols) != (n, n):
            raise ValueError(f"basis change at {pq} has wrong shape")
        cols = solve(b, [{i: ONE} for i in range(n)])
        inv[pq] = ExactMatrix.from_columns(cols, n)

    def b_at(pq):
        return transforms.get(pq)

    def binv_at(pq):
        return inv.get(pq)

    def conjugate(maps, delta):
        out = {}
        for pq in k.spaces:
            p, q = pq
            tgt = (p + delta[0], q + delta[1])
            if tgt not in k.spaces:
                continue
            m = maps.get(pq)
            if m is None:
                continue
            new = m
            b = b_at(pq)
            if b is not None:
                new = new @ b
            bi = binv_at(tgt)
            if bi is not None:
                new = bi @ new
            out[pq] = new
        return out

    d1 = conjugate(k.d1, (1, 0))
    d2 = conjugate(k.d2, (0, 1))
    sigma = None
    if k.sigma is not None:
        sigma = {}
        for pq, s in k.sigma.items():
            p, q = pq
            new = s
            b = b_at(pq)
            if b is not None:
                new = new @ b.conj()
            bi = binv_at((q, p))
            if bi is not None:
                new = bi @ new
            sigma[pq] = new
    return DoubleComplex(dict(k.spaces), d1, d2, sigma)


def conj_complex(k):
    """The conjugate complex: spaces mirrored across the diagonal.

    ``(conj K)^{p,q} = K^{q,p}`` with ``d1' = conj(d2)`` and ``d2' = conj(d1)``.
    """
    spaces = {(q, p): n for (p, q), n in k.spaces.items()}
    d1 = {}
    d2 = {}
    for (p, q), m in k.d2.items():
        d1[(q, p)] = m.conj()
    for (p, q), m in k.d1.items():
        d2[(q, p)] = m.conj()
    return DoubleComplex(spaces, d1, d2)


def with_conjugate(k):
    """``k (+) conj(k)`` equipped with the swap real structure."""
    kbar = conj_complex(k)
    spaces = {}
    for pq, n in k.spaces.items():
        spaces[pq] = spaces.get(pq, 0) + n
    for pq, n in kbar.spaces.items():
        spaces[pq] = spaces.get(pq, 0) + n
    plain = direct_sum([_strip_sigma(k), kbar])
    off_k = {}
    acc = {}
    for pq, n in k.spaces.items():
        off_k[pq] = 0
        acc[pq] = n
    off_kbar = {pq: acc.get(pq, 0) for pq in kbar.spaces}
    sigma = {}
    for pq in plain.spaces:
        p, q = pq
        n = plain.dim(p, q)
        nt = plain.dim(q, p)
        rds = [{} for _ in range(nt)]
        # the copy of K^{p,q} maps identically onto the conj copy at (q,p)
        if pq in k.spaces:
            src_off = off_k[pq]
            tgt_off = off_kbar.get((q, p), 0)
            for i in range(k.spaces[pq]):
                rds[tgt_off + i][src_off + i] = ONE
        if pq in kbar.spaces:
            src_off = off_kbar[pq]
            for i in range(kbar.spaces[pq]):
                rds[0 + i][src_off + i] = ONE
        sigma[pq] = ExactMatrix(nt, n, rds)
    return DoubleComplex(plain.spaces, plain.d1, plain.d2, sigma)


def _strip_sigma(k):
    if k.sigma is None:
        return k
    return DoubleComplex(dict(k.spaces), dict(k.d1), dict(k.d2), None)


# ----------------------------------------------------------------------
# atomic builders
# ----------------------------------------------------------------------

def square_complex(p, q):
    """The four-generator square anchored at its lowest corner (p,q).

    Generators a, d1a, d2a, d1d2a with ``d2(d1 a) = -d1d2 a`` forced by
    anticommutation.  When p == q the square carries its natural real
    structure (a is real, the two middle corners swap).
    """
    spaces = {(p, q): 1, (p + 1, q): 1, (p, q + 1): 1, (p + 1, q + 1): 1}
    one = ExactMatrix.from_rows([[1]])
    minus = ExactMatrix.from_rows([[-1]])
    d1 = {(p, q): one, (p, q + 1): one}
    d2 = {(p, q): one, (p + 1, q): minus}
    sigma = None
    if p == q:
        sigma = {
            (p, q): one,
            (p + 1, q): one,
            (p, q + 1): one,
            (p + 1, q + 1): minus,
        }
    return DoubleComplex(spaces, d1, d2, sigma)


def zigzag_complex(shape):
    """The minimal complex realizing a zigzag shape with +-1 structure constants."""
    from .zigzags import ZigzagShape  # local import to avoid a cycle

    if not isinstance(shape, ZigzagShape):
        raise MalformedShape("expected a ZigzagShape")
    shape.check()
    spots = shape.spots
    spaces = {}
    for s in spots:
        if s in spaces:
            raise MalformedShape("repeated spot")
        spaces[s] = 1
    d1 = {}
    d2 = {}
    for i, direction in shape.arrows:
        a, b = spots[i], spots[i + 1]
        d = (b[0] - a[0], b[1] - a[1])
        if d in ((1, 0), (0, 1)):
            src, tgt = a, b
        else:
            src, tgt = b, a
        mat = ExactMatrix.from_rows([[1]])
        if direction == "d1":
            d1[src] = mat
        else:
            d2[src] = mat
    k = DoubleComplex(spaces, d1, d2, None)
    if len(spots) == 1 and spots[0][0] == spots[0][1]:
        k = DoubleComplex(k.spaces, k.d1, k.d2, {spots[0]: ExactMatrix.identity(1)})
    return k


def dot_complex(p=0, q=0):
    sigma = {(p, q): ExactMatrix.identity(1)} if p == q else None
    return DoubleComplex({(p, q): 1}, {}, {}, sigma)
