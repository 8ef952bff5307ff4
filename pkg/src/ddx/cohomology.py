"""The four cohomologies of a bounded double complex and their comparisons.

For a complex with differentials ``d1`` (bidegree (1,0)) and ``d2`` ((0,1)):

* row/column cohomology per bidegree: ``H^{p,q}`` of the ``d2`` columns and
  of the ``d1`` rows,
* the cohomology of the totalization under ``d = d1 + d2``, graded by total
  degree,
* ``(ker d1 & ker d2) / im(d1 d2)`` and ``ker(d1 d2) / (im d1 + im d2)``
  per bidegree,

together with the column-filtration spectral sequence, the induced filtration
on total cohomology, the conjugation action when a real structure is present,
and all identity-induced comparison maps.

Every function has two price points where it matters: a representative-based
version that yields explicit class spaces (used for induced maps and reports)
and ``*_dims`` fast paths that only run sparse kernel computations (used on
the large tensor-product models).
"""

from __future__ import annotations

from .gaussrat import ZERO, ONE
from .linalg import (
    ExactMatrix,
    QuotientMap,
    Subspace,
    image,
    image_of_subspace,
    kernel,
    preimage,
    rank,
    subspace_intersect,
    subspace_sum,
)


class NoRealStructure(Exception):
    pass


THEORIES = ("de_rham", "dolbeault", "conjugate_dolbeault", "bott_chern", "aeppli")


class ClassSpace:
    """Cocycles modulo boundaries, with canonical representatives.

    ``z`` is the cocycle subspace of the ambient coordinate space and ``b``
    the boundary subspace contained in it.  Classes are coordinatized through
    the canonical quotient of ``z``-coordinates by ``b``-in-``z`` coordinates.
    """

    __slots__ = ("ambient", "z", "_b_in_z", "_qmap")

    def __init__(self, z, b):
        self.ambient = z.ambient_dim
        self.z = z
        b_in_z = Subspace.from_vectors([z.coords(v) for v in b.basis_vectors()], z.dim)
        self._b_in_z = b_in_z
        self._qmap = QuotientMap(b_in_z)

    @property
    def dim(self):
        return self._qmap.dim

    def to_class(self, vec):
        """Class coordinates of a cocycle vector."""
        return self._qmap.project(self.z.coords(vec))

    def rep(self, j):
        """Canonical representative of the j-th basis class."""
        return self.rep_of({j: ONE})

    def rep_of(self, cls_vec):
        zc = self._qmap.section(cls_vec)
        out = {}
        zrows = self.z.basis_vectors()
        for i, c in zc.items():
            for k, v in zrows[i].items():
                cur = out.get(k, ZERO) + c * v
                if cur:
                    out[k] = cur
                else:
                    out.pop(k, None)
        return out

    def reps(self):
        return [self.rep(j) for j in range(self.dim)]

    def subspace_to_classes(self, sub):
        """Image of a subspace of cocycles in class coordinates."""
        vecs = [self.to_class(v) for v in sub.basis_vectors()]
        return Subspace.from_vectors(vecs, self.dim)


class CohomologyTable:
    """Dimensions (and optionally class spaces) for one theory."""

    __slots__ = ("theory", "dims", "class_spaces")

    def __init__(self, theory, dims, class_spaces=None):
        self.theory = theory
        self.dims = {k: v for k, v in dims.items() if v}
        self.class_spaces = class_spaces

    def dim(self, key):
        return self.dims.get(key, 0)

    def total(self):
        return sum(self.dims.values())

    def representatives(self):
        """Canonical representative vectors per key, or None for dims-only."""
        if self.class_spaces is None:
            return None
        return {
            key: cs.reps() for key, cs in self.class_spaces.items() if cs.dim
        }

    def __eq__(self, other):
        if not isinstance(other, CohomologyTable):
            return NotImplemented
        return self.theory == other.theory and self.dims == other.dims

    def __repr__(self):
        return f"CohomologyTable({self.theory}, {dict(sorted(self.dims.items()))})"


# ----------------------------------------------------------------------
# per-bidegree theories
# ----------------------------------------------------------------------

def _zero_kernel(n):
    return Subspace.full(n)


def _ker(mat, n):
    if mat is None:
        return Subspace.full(n)
    return kernel(mat)


def _im(mat, n_target):
    if mat is None:
        return Subspace.zero(n_target)
    return image(mat)


def _compose_d1d2_into(k, p, q):
    """Matrix of d1 d2 mapping K^{p-1,q-1} -> K^{p,q}, or None."""
    a = k.d1_at(p - 1, q)
    b = k.d2_at(p - 1, q - 1)
    if a is None or b is None:
        return None
    return a @ b


def _compose_d1d2_out(k, p, q):
    """Matrix of d1 d2 mapping K^{p,q} -> K^{p+1,q+1}, or None."""
    a = k.d1_at(p, q + 1)
    b = k.d2_at(p, q)
    if a is None or b is None:
        return None
    return a @ b


def dolbeault(k):
    """Column cohomology (d2) with representatives, per bidegree."""
    spaces = {}
    for (p, q), n in k.spaces.items():
        z = _ker(k.d2_at(p, q), n)
        b = _im(k.d2_at(p, q - 1), n)
        spaces[(p, q)] = ClassSpace(z, b)
    return CohomologyTable(
        "dolbeault", {pq: cs.dim for pq, cs in spaces.items()}, spaces
    )


def conjugate_dolbeault(k):
    """Row cohomology (d1) with representatives, per bidegree."""
    spaces = {}
    for (p, q), n in k.spaces.items():
        z = _ker(k.d1_at(p, q), n)
        b = _im(k.d1_at(p - 1, q), n)
        spaces[(p, q)] = ClassSpace(z, b)
    return CohomologyTable(
        "conjugate_dolbeault", {pq: cs.dim for pq, cs in spaces.items()}, spaces
    )


def bott_chern(k):
    """(ker d1 & ker d2) / im(d1 d2), with representatives."""
    spaces = {}
    for (p, q), n in k.spaces.items():
        z = subspace_intersect(_ker(k.d1_at(p, q), n), _ker(k.d2_at(p, q), n))
        b = _im(_compose_d1d2_into(k, p, q), n)
        spaces[(p, q)] = ClassSpace(z, b)
    return CohomologyTable(
        "bott_chern", {pq: cs.dim for pq, cs in spaces.items()}, spaces
    )


def aeppli(k):
    """ker(d1 d2) / (im d1 + im d2), with representatives."""
    spaces = {}
    for (p, q), n in k.spaces.items():
        z = _ker(_compose_d1d2_out(k, p, q), n)
        b = subspace_sum(_im(k.d1_at(p - 1, q), n), _im(k.d2_at(p, q - 1), n))
        spaces[(p, q)] = ClassSpace(z, b)
    return CohomologyTable("aeppli", {pq: cs.dim for pq, cs in spaces.items()}, spaces)


# fast, dimension-only variants -----------------------------------------

def _rank_or_zero(mat):
    return rank(mat) if mat is not None else 0


def dolbeault_dims(k):
    out = {}
    for (p, q), n in k.spaces.items():
        d = n - _rank_or_zero(k.d2_at(p, q)) - _rank_or_zero(k.d2_at(p, q - 1))
        if d:
            out[(p, q)] = d
    return out


def conjugate_dolbeault_dims(k):
    out = {}
    for (p, q), n in k.spaces.items():
        d = n - _rank_or_zero(k.d1_at(p, q)) - _rank_or_zero(k.d1_at(p - 1, q))
        if d:
            out[(p, q)] = d
    return out


def _stacked_kernel_dim(k, p, q):
    """dim(ker d1 & ker d2) at (p,q) via one elimination."""
    n = k.dim(p, q)
    a = k.d1_at(p, q)
    b = k.d2_at(p, q)
    if a is None and b is None:
        return n
    if a is None:
        return n - rank(b)
    if b is None:
        return n - rank(a)
    return n - rank(a.vstack(b))


def bott_chern_dims(k):
    out = {}
    for (p, q), n in k.spaces.items():
        d = _stacked_kernel_dim(k, p, q) - _rank_or_zero(_compose_d1d2_into(k, p, q))
        if d:
            out[(p, q)] = d
    return out


def aeppli_dims(k):
    out = {}
    for (p, q), n in k.spaces.items():
        zdim = n - _rank_or_zero(_compose_d1d2_out(k, p, q))
        a = k.d1_at(p - 1, q)
        b = k.d2_at(p, q - 1)
        if a is None and b is None:
            bdim = 0
        elif a is None:
            bdim = rank(b)
        elif b is None:
            bdim = rank(a)
        else:
            bdim = rank(a.hstack(b))
        d = zdim - bdim
        if d:
            out[(p, q)] = d
    return out


# ----------------------------------------------------------------------
# totalization and total-degree cohomology
# ----------------------------------------------------------------------

class Totalization:
    """Coordinates for ``Tot^k = (+)_{p+q=k} K^{p,q}``, spots sorted by p."""

    def __init__(self, k):
        self.complex = k
        self.offsets = {}
        self.dims = {}
        self.spots = {}
        for deg in k.degrees():
            spots = k.degree_spots(deg)
            off = {}
            acc = 0
            for pq in spots:
                off[pq] = acc
                acc += k.dim(*pq)
            self.spots[deg] = spots
            self.offsets[deg] = off
            self.dims[deg] = acc
        self._d = {}

    def degrees(self):
        return sorted(self.dims)

    def dim(self, deg):
        return self.dims.get(deg, 0)

    def d(self, deg):
        """The total differential Tot^deg -> Tot^{deg+1}, or None."""
        if deg in self._d:
            return self._d[deg]
        n_src = self.dim(deg)
        n_tgt = self.dim(deg + 1)
        if n_src == 0 or n_tgt == 0:
            self._d[deg] = None
            return None
        rds = [{} for _ in range(n_tgt)]
        off_s = self.offsets[deg]
        off_t = self.offsets.get(deg + 1, {})
        for pq in self.spots[deg]:
            p, q = pq
            for mat, tgt in ((self.complex.d1_at(p, q), (p + 1, q)),
                             (self.complex.d2_at(p, q), (p, q + 1))):
                if mat is None or tgt not in off_t:
                    continue
                ro, co = off_t[tgt], off_s[pq]
                for i, r in enumerate(mat._rows):
                    for c, v in r.items():
                        rds[i + ro][c + co] = v
        m = ExactMatrix(n_tgt, n_src, rds)
        self._d[deg] = m
        return m

    def embed(self, pq, vec):
        """Embed a K^{p,q} vector into Tot^{p+q} coordinates."""
        deg = pq[0] + pq[1]
        off = self.offsets[deg][pq]
        return {i + off: v for i, v in vec.items()}

    def component(self, deg, vec, pq):
        """The (p,q)-component of a Tot^deg vector, in K^{p,q} coordinates."""
        off = self.offsets[deg].get(pq)
        if off is None:
            return {}
        n = self.complex.dim(*pq)
        return {i - off: v for i, v in vec.items() if off <= i < off + n}

    def filtration_indices(self, deg, p):
        """Coordinate indices of the column filtration level p in Tot^deg."""
        idxs = []
        for pq in self.spots.get(deg, []):
            if pq[0] >= p:
                off = self.offsets[deg][pq]
                idxs.extend(range(off, off + self.complex.dim(*pq)))
        return idxs

    def filtration_subspace(self, deg, p):
        rows = [{i: ONE} for i in self.filtration_indices(deg, p)]
        return Subspace(self.dim(deg), rows)

    def min_p(self, deg):
        spots = self.spots.get(deg, [])
        return spots[0][0] if spots else 0

    def max_p(self, deg):
        spots = self.spots.get(deg, [])
        return spots[-1][0] if spots else 0

    def conjugation(self, deg):
        """The conjugate-linear involution on Tot^deg, as (matrix, conj) pair.

        Returns the matrix S with sigma(v) = S * conj(v), or raises when the
        complex has no real structure.
        """
        if not self.complex.has_real_structure():
            raise NoRealStructure("complex has no real structure")
        n = self.dim(deg)
        rds = [{} for _ in range(n)]
        off = self.offsets[deg]
        for pq in self.spots[deg]:
            p, q = pq
            s = self.complex.sigma_at(p, q)
            if s is None:
                continue
            ro = off.get((q, p))
            if ro is None:
                continue
            co = off[pq]
            for i, r in enumerate(s._rows):
                for c, v in r.items():
                    rds[i + ro][c + co] = v
        return ExactMatrix(n, n, rds)

    def conjugate_vector(self, deg, vec):
        s = self.conjugation(deg)
        return s.apply({i: v.conj() for i, v in vec.items()})

    def conjugate_subspace(self, deg, sub):
        vecs = [self.conjugate_vector(deg, v) for v in sub.basis_vectors()]
        return Subspace.from_vectors(vecs, self.dim(deg))


def de_rham(k, tot=None):
    """Total-degree cohomology under d = d1 + d2, with representatives."""
    tot = tot or Totalization(k)
    spaces = {}
    for deg in tot.degrees():
        n = tot.dim(deg)
        z = _ker(tot.d(deg), n)
        b = _im(tot.d(deg - 1), n)
        spaces[deg] = ClassSpace(z, b)
    return CohomologyTable("de_rham", {d: cs.dim for d, cs in spaces.items()}, spaces)


def betti_numbers(k, tot=None):
    """Fast Betti numbers via sparse kernel ranks only."""
    tot = tot or Totalization(k)
    out = {}
    ranks = {deg: _rank_or_zero(tot.d(deg)) for deg in tot.degrees()}
    for deg in tot.degrees():
        b = tot.dim(deg) - ranks.get(deg, 0) - ranks.get(deg - 1, 0)
        if b:
            out[deg] = b
    return out


# ----------------------------------------------------------------------
# filtration, spectral sequence, conjugation checks
# ----------------------------------------------------------------------

class SpectralSequenceData:
    """Pages of the column-filtration spectral sequence plus filtration data.

    ``hodge_filtration`` maps (k, p) to dim F^p H^k and ``hodge_subspaces``
    to the actual subspace in the class coordinates of H^k; ``v_spaces`` and
    ``v_subspaces`` (real structure only) do the same for the pieces
    ``F^p & conj(F^q)``.
    """

    __slots__ = (
        "pages",
        "diff_ranks",
        "stable_page",
        "degenerates_at_e1",
        "hodge_filtration",
        "hodge_subspaces",
        "v_spaces",
        "v_subspaces",
    )

    def __init__(self, pages, diff_ranks, stable_page, degenerates_at_e1,
                 hodge_filtration, hodge_subspaces, v_spaces, v_subspaces):
        self.pages = pages
        self.diff_ranks = diff_ranks
        self.stable_page = stable_page
        self.degenerates_at_e1 = degenerates_at_e1
        self.hodge_filtration = hodge_filtration
        self.hodge_subspaces = hodge_subspaces
        self.v_spaces = v_spaces
        self.v_subspaces = v_subspaces

    def page(self, r):
        if r >= len(self.pages):
            r = len(self.pages) - 1
        return self.pages[r]

    def e_infty(self):
        return self.pages[self.stable_page]


def froelicher(k, r_max=None):
    """Spectral sequence of the column filtration, from page 1 onward.

    ``pages[r]`` maps (p,q) to the page-r dimension (index 0 is unused);
    pages stabilize at ``stable_page`` which is also where the reported
    E_infty lives.  Degeneration at page 1 is the statement that the page-1
    total equals the Betti number in every degree.
    """
    tot = Totalization(k)
    degrees = tot.degrees()
    if degrees:
        rstab = max(tot.max_p(d) - tot.min_p(d) for d in degrees) + 2
    else:
        rstab = 1
    if r_max is None or r_max < rstab:
        r_cap = rstab
    else:
        r_cap = r_max

    cache = {}

    def a_sub(deg, p, r):
        """A_r = {x in F^p Tot^deg : d x in F^{p+r} Tot^{deg+1}}."""
        r = min(r, rstab)
        key = (deg, p, r)
        got = cache.get(key)
        if got is not None:
            return got
        fp = tot.filtration_subspace(deg, p)
        d = tot.d(deg)
        if d is None or fp.dim == 0:
            res = fp
        else:
            pre = preimage(d, tot.filtration_subspace(deg + 1, p + r))
            res = subspace_intersect(fp, pre)
        cache[key] = res
        return res

    def d_image(deg, p, r):
        """d(A_r^{p,*}) inside Tot^{deg+1}."""
        d = tot.d(deg)
        if d is None:
            return Subspace.zero(tot.dim(deg + 1))
        return image_of_subspace(d, a_sub(deg, p, r))

    pages = [None]
    diff_ranks = [None]
    for r in range(1, r_cap + 1):
        rr = min(r, rstab)
        page = {}
        for deg in tot.degrees():
            for pq in tot.spots[deg]:
                p, q = pq
                azr = a_sub(deg, p, rr)
                denom = subspace_sum(
                    a_sub(deg, p + 1, rr - 1),
                    d_image(deg - 1, p - rr + 1, rr - 1),
                )
                dim_e = subspace_sum(azr, denom).dim - denom.dim
                if dim_e:
                    page[pq] = dim_e
        pages.append(page)
        ranks = {}
        for deg in tot.degrees():
            for pq in tot.spots[deg]:
                p, q = pq
                azr = a_sub(deg, p, rr)
                denom = subspace_sum(
                    a_sub(deg, p + 1, rr - 1),
                    d_image(deg - 1, p - rr + 1, rr - 1),
                )
                num_all = subspace_sum(azr, denom)
                ker_part = subspace_sum(
                    subspace_sum(a_sub(deg, p, rr + 1), a_sub(deg, p + 1, rr - 1)),
                    denom,
                )
                rk = num_all.dim - ker_part.dim
                if rk:
                    ranks[pq] = rk
        diff_ranks.append(ranks)

    betti = betti_numbers(k, tot)
    e1_totals = {}
    for pq, d in pages[1].items():
        e1_totals[pq[0] + pq[1]] = e1_totals.get(pq[0] + pq[1], 0) + d
    degenerates = e1_totals == betti

    hodge = hodge_filtration_dims(k, tot)
    drham_full = de_rham(k, tot)
    hodge_subs = {}
    for deg in tot.degrees():
        for p, sub in hodge_filtration(k, deg, tot, drham_full).items():
            hodge_subs[(deg, p)] = sub
    v_spaces = None
    v_subs = None
    if k.has_real_structure():
        v_spaces = {}
        v_subs = {}
        for deg in tot.degrees():
            for pq, sub in _v_subspaces(k, tot, deg, drham_full).items():
                v_subs[pq] = sub
                if sub.dim:
                    v_spaces[pq] = sub.dim

    stable = min(rstab, len(pages) - 1)
    return SpectralSequenceData(
        pages, diff_ranks, stable, degenerates, hodge, hodge_subs, v_spaces, v_subs
    )


def hodge_filtration(k, deg, tot=None, drham=None):
    """Filtration subspaces of H^deg induced by the column filtration.

    Returns a dict p -> Subspace in the class coordinates of ``de_rham``.
    """
    tot = tot or Totalization(k)
    drham = drham or de_rham(k, tot)
    cs = drham.class_spaces.get(deg)
    if cs is None or tot.dim(deg) == 0:
        return {}
    out = {}
    pmin, pmax = tot.min_p(deg), tot.max_p(deg)
    for p in range(pmin, pmax + 2):
        zf = subspace_intersect(cs.z, tot.filtration_subspace(deg, p))
        out[p] = cs.subspace_to_classes(zf)
    return out


def hodge_filtration_dims(k, tot=None):
    """dim F^p H^deg for all (deg, p) in and just outside the support.

    Uses only sparse kernels: F^p H ~ (ker d & F^p) / (im d & F^p), and both
    members are kernels of coordinate submatrices.
    """
    tot = tot or Totalization(k)
    out = {}
    for deg in tot.degrees():
        n = tot.dim(deg)
        d = tot.d(deg)
        dprev = tot.d(deg - 1)
        pmin, pmax = tot.min_p(deg), tot.max_p(deg)
        for p in range(pmin, pmax + 2):
            idxs = tot.filtration_indices(deg, p)
            # ker d restricted to the filtration coordinates
            if d is None:
                zdim = len(idxs)
            else:
                sub = d.take_columns(idxs)
                zdim = len(idxs) - rank(sub)
            # im d & F^p = d(preimage), of dimension dim(pre) - dim(ker d_prev)
            if dprev is None:
                bdim = 0
            else:
                idxset = set(idxs)
                low = [i for i in range(n) if i not in idxset]
                proj_rows = [dict(dprev._rows[i]) for i in low]
                pre_dim = dprev.cols - len(rref_pivots(proj_rows, dprev.cols))
                ker_dim = dprev.cols - rank(dprev)
                bdim = pre_dim - ker_dim
            val = zdim - bdim
            if val:
                out[(deg, p)] = val
    return out


def rref_pivots(rows, ncols):
    from .linalg import rref_rows

    _, pivots = rref_rows(rows, ncols)
    return pivots


def hodge_filtration_lookup(k, tot=None):
    """A total function (deg, p) -> dim F^p H^deg.

    Below the support window the filtration is exhaustive (the full Betti
    number); above it, zero.
    """
    tot = tot or Totalization(k)
    dims = hodge_filtration_dims(k, tot)
    betti = betti_numbers(k, tot)

    def look(deg, p):
        if tot.dim(deg) == 0:
            return 0
        if p <= tot.min_p(deg):
            return betti.get(deg, 0)
        return dims.get((deg, p), 0)

    return look


def _v_subspaces(k, tot, deg, drham=None):
    """V^{p,q} = F^p H^deg & conj(F^q H^deg) for p+q = deg, as class subspaces."""
    drham = drham or de_rham(k, tot)
    cs = drham.class_spaces.get(deg)
    if cs is None:
        return {}
    filt = hodge_filtration(k, deg, tot, drham)
    out = {}
    pmin, pmax = tot.min_p(deg), tot.max_p(deg)
    for p in range(pmin, pmax + 1):
        q = deg - p
        fp = filt[p]
        if q < pmin:
            fq_classes = Subspace.full(cs.dim)
        elif q in filt:
            fq_classes = filt[q]
        else:
            fq_classes = Subspace.zero(cs.dim)
        # conjugate F^q inside H: conjugate representatives, re-project
        vecs = []
        for cls in fq_classes.basis_vectors():
            rep = cs.rep_of(cls)
            vecs.append(cs.to_class(tot.conjugate_vector(deg, rep)))
        conj_fq = Subspace.from_vectors(vecs, cs.dim)
        out[(p, q)] = subspace_intersect(fp, conj_fq)
    return out


def hodge_structure_check(k, deg):
    """True iff H^deg splits as the direct sum of the V^{p,q} symmetrically."""
    if not k.has_real_structure():
        raise NoRealStructure("hodge structure check requires a real structure")
    tot = Totalization(k)
    drham = de_rham(k, tot)
    cs = drham.class_spaces.get(deg)
    if cs is None or cs.dim == 0:
        return True
    vsubs = _v_subspaces(k, tot, deg, drham)
    total = 0
    acc = Subspace.zero(cs.dim)
    for pq, sub in vsubs.items():
        total += sub.dim
        acc = subspace_sum(acc, sub)
    if total != cs.dim or acc.dim != cs.dim:
        return False
    # conj(V^{p,q}) = V^{q,p}
    for (p, q), sub in vsubs.items():
        vecs = []
        for cls in sub.basis_vectors():
            rep = cs.rep_of(cls)
            vecs.append(cs.to_class(tot.conjugate_vector(deg, rep)))
        if Subspace.from_vectors(vecs, cs.dim) != vsubs.get((q, p), Subspace.zero(cs.dim)):
            return False
    return True


def froelicher_degenerates_at_e1(k):
    """Fast page-1 degeneration test: sum of column cohomology = Betti."""
    tot = Totalization(k)
    betti = betti_numbers(k, tot)
    e1 = {}
    for (p, q), d in dolbeault_dims(k).items():
        e1[p + q] = e1.get(p + q, 0) + d
    return e1 == betti


# ----------------------------------------------------------------------
# identity-induced comparison maps
# ----------------------------------------------------------------------

class MapFlags:
    __slots__ = ("matrix", "injective", "surjective")

    def __init__(self, matrix, injective, surjective):
        self.matrix = matrix
        self.injective = injective
        self.surjective = surjective

    @property
    def isomorphism(self):
        return self.injective and self.surjective

    def __repr__(self):
        tag = "iso" if self.isomorphism else f"inj={self.injective},surj={self.surjective}"
        return f"MapFlags({self.matrix.rows}x{self.matrix.cols}, {tag})"


class NaturalMapReport:
    """Identity-induced maps between the five theories, with iso flags."""

    __slots__ = ("maps",)

    PAIRS = (
        ("bott_chern", "dolbeault"),
        ("bott_chern", "de_rham"),
        ("bott_chern", "aeppli"),
        ("dolbeault", "aeppli"),
        ("de_rham", "aeppli"),
    )

    def __init__(self, maps):
        self.maps = maps

    def at(self, pair, pq):
        return self.maps[pair].get(pq)

    def all_iso(self, pair):
        return all(f.isomorphism for f in self.maps[pair].values())


def _map_between(cols_fn, src_dim, tgt_dim):
    cols = [cols_fn(j) for j in range(src_dim)]
    m = ExactMatrix.from_columns(cols, tgt_dim)
    inj = rank(m) == src_dim
    surj = rank(m) == tgt_dim
    return MapFlags(m, inj, surj)


def natural_maps(k):
    tot = Totalization(k)
    bc = bott_chern(k)
    dol = dolbeault(k)
    aep = aeppli(k)
    drham = de_rham(k, tot)
    maps = {pair: {} for pair in NaturalMapReport.PAIRS}
    for pq in sorted(k.spaces):
        p, q = pq
        deg = p + q
        bc_cs = bc.class_spaces[pq]
        dol_cs = dol.class_spaces[pq]
        aep_cs = aep.class_spaces[pq]
        dr_cs = drham.class_spaces.get(deg)
        maps[("bott_chern", "dolbeault")][pq] = _map_between(
            lambda j: dol_cs.to_class(bc_cs.rep(j)), bc_cs.dim, dol_cs.dim
        )
        maps[("bott_chern", "aeppli")][pq] = _map_between(
            lambda j: aep_cs.to_class(bc_cs.rep(j)), bc_cs.dim, aep_cs.dim
        )
        if dr_cs is not None:
            maps[("bott_chern", "de_rham")][pq] = _map_between(
                lambda j: dr_cs.to_class(tot.embed(pq, bc_cs.rep(j))),
                bc_cs.dim,
                dr_cs.dim,
            )
            maps[("de_rham", "aeppli")][pq] = _map_between(
                lambda j: aep_cs.to_class(tot.component(deg, dr_cs.rep(j), pq)),
                dr_cs.dim,
                aep_cs.dim,
            )
        maps[("dolbeault", "aeppli")][pq] = _map_between(
            lambda j: aep_cs.to_class(dol_cs.rep(j)), dol_cs.dim, aep_cs.dim
        )
    return NaturalMapReport(maps)


def bc_to_dolbeault_all_iso(k):
    """Fast check that the identity-induced BC -> column-cohomology map is an
    isomorphism in every bidegree."""
    for (p, q), n in k.spaces.items():
        d2_out = k.d2_at(p, q)
        d2_in = k.d2_at(p, q - 1)
        d1_out = k.d1_at(p, q)
        dim_dol = n - _rank_or_zero(d2_out) - _rank_or_zero(d2_in)
        zz = _stacked_kernel_dim(k, p, q)
        dim_bc = zz - _rank_or_zero(_compose_d1d2_into(k, p, q))
        if dim_bc != dim_dol:
            return False
        if dim_bc == 0:
            continue
        # surjectivity: ker d2 = (ker d1 & ker d2) + im d2
        zker = _ker(d2_out, n) if d2_out is not None else Subspace.full(n)
        both = subspace_intersect(zker, _ker(d1_out, n))
        span = subspace_sum(both, _im(d2_in, n))
        if span.dim != zker.dim:
            return False
    return True


# ----------------------------------------------------------------------
# induced maps along morphisms
# ----------------------------------------------------------------------

def _theory_tables(k, theory):
    if theory == "dolbeault":
        return dolbeault(k)
    if theory == "conjugate_dolbeault":
        return conjugate_dolbeault(k)
    if theory == "bott_chern":
        return bott_chern(k)
    if theory == "aeppli":
        return aeppli(k)
    if theory == "de_rham":
        return de_rham(k)
    raise ValueError(f"unknown theory {theory!r}")


def induced_maps(f, theory, tables=None):
    """Matrices induced by a morphism on one theory, per bidegree (or degree).

    Returns a dict key -> MapFlags covering every key where source or target
    is nonzero.
    """
    src_t = tables[0] if tables else _theory_tables(f.source, theory)
    tgt_t = tables[1] if tables else _theory_tables(f.target, theory)
    out = {}
    if theory == "de_rham":
        tot_s = Totalization(f.source)
        tot_t = Totalization(f.target)
        degs = sorted(set(src_t.dims) | set(tgt_t.dims))
        for deg in degs:
            s_cs = src_t.class_spaces.get(deg)
            t_cs = tgt_t.class_spaces.get(deg)
            sdim = s_cs.dim if s_cs else 0
            tdim = t_cs.dim if t_cs else 0

            def col(j):
                rep = s_cs.rep(j)
                img = {}
                for pq in tot_s.spots[deg]:
                    comp = tot_s.component(deg, rep, pq)
                    m = f.at(*pq)
                    if m is None or not comp:
                        continue
                    for i, v in m.apply(comp).items():
                        key = tot_t.offsets[deg][pq] + i
                        cur = img.get(key, ZERO) + v
                        if cur:
                            img[key] = cur
                        else:
                            img.pop(key, None)
                return t_cs.to_class(img)

            if sdim and tdim:
                out[deg] = _map_between(col, sdim, tdim)
            else:
                m = ExactMatrix.zero(tdim, sdim)
                out[deg] = MapFlags(m, sdim == 0, tdim == 0)
        return out

    keys = sorted(set(src_t.dims) | set(tgt_t.dims))
    for pq in keys:
        s_cs = src_t.class_spaces.get(pq)
        t_cs = tgt_t.class_spaces.get(pq)
        sdim = s_cs.dim if s_cs else 0
        tdim = t_cs.dim if t_cs else 0
        if sdim == 0 or tdim == 0:
            out[pq] = MapFlags(ExactMatrix.zero(tdim, sdim), sdim == 0, tdim == 0)
            continue
        m = f.at(*pq)

        def col(j):
            img = m.apply(s_cs.rep(j)) if m is not None else {}
            return t_cs.to_class(img)

        out[pq] = _map_between(col, sdim, tdim)
    return out


def is_e1_quasi_iso(f):
    """True iff the morphism induces isomorphisms on all column cohomology."""
    return all(flags.isomorphism for flags in induced_maps(f, "dolbeault").values())
