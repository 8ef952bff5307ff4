"""Exact linear algebra over the Gaussian rationals.

Matrices have dense semantics but are stored row-sparse (dict per row), which
keeps the large, very sparse matrices coming out of tensor-product complexes
cheap.  All eliminations use deterministic pivoting (lowest column first, then
first available row), so every output is reproducible bit for bit and every
subspace has a unique canonical basis.
"""

from __future__ import annotations

from .gaussrat import ZERO, ONE, GaussRat


class AmbientMismatch(Exception):
    """Subspace operation on spaces of different ambient dimension."""


# ----------------------------------------------------------------------
# sparse row helpers (rows are dicts col -> nonzero GaussRat)
# ----------------------------------------------------------------------

def _row_submul(row, coeff, pivot_row):
    """row - coeff * pivot_row, dropping zeros."""
    out = dict(row)
    for c, v in pivot_row.items():
        cur = out.get(c)
        nv = (cur - coeff * v) if cur is not None else -(coeff * v)
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return out


def _row_scale(row, coeff):
    return {c: coeff * v for c, v in row.items()}


def rref_rows(rows, ncols):
    """Reduced row echelon form of a list of sparse rows.

    Returns ``(reduced_rows, pivot_cols)`` with zero rows dropped; the result
    is the canonical RREF of the row space.
    """
    rows = [dict(r) for r in rows if r]
    pivots = []
    rank = 0
    for c in range(ncols):
        pr = None
        for i in range(rank, len(rows)):
            if c in rows[i]:
                pr = i
                break
        if pr is None:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        prow = rows[rank]
        pv = prow[c]
        if pv != ONE:
            prow = _row_scale(prow, pv.inverse())
            rows[rank] = prow
        for i in range(len(rows)):
            if i != rank:
                r = rows[i]
                f = r.get(c)
                if f is not None:
                    rows[i] = _row_submul(r, f, prow)
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


class ExactMatrix:
    """An exact matrix over the Gaussian rationals."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows, cols, row_dicts=None):
        self.rows = rows
        self.cols = cols
        if row_dicts is None:
            row_dicts = [{} for _ in range(rows)]
        self._rows = row_dicts

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rows(cls, data, cols=None):
        """Build from dense lists of entries (GaussRat, int or str)."""
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        rds = []
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix data")
            rd = {}
            for j, v in enumerate(r):
                g = _coerce(v)
                if g:
                    rd[j] = g
            rds.append(rd)
        return cls(rows, cols, rds)

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: ONE} for i in range(n)])

    @classmethod
    def from_columns(cls, columns, nrows):
        """Build from a list of sparse column vectors (dicts idx -> value)."""
        rds = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rds[i][j] = v
        return cls(nrows, len(columns), rds)

    # -- access ---------------------------------------------------------

    def entry(self, i, j):
        return self._rows[i].get(j, ZERO)

    def row(self, i):
        return self._rows[i]

    def column(self, j):
        out = {}
        for i, r in enumerate(self._rows):
            v = r.get(j)
            if v is not None:
                out[i] = v
        return out

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self):
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def is_zero(self):
        return all(not r for r in self._rows)

    def nnz(self):
        return sum(len(r) for r in self._rows)

    # -- algebra ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash(
            (self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._rows))
        )

    def __add__(self, other):
        self._check_same_shape(other)
        rds = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            for c, v in b.items():
                nv = r.get(c, ZERO) + v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
            rds.append(r)
        return ExactMatrix(self.rows, self.cols, rds)

    def __neg__(self):
        return ExactMatrix(
            self.rows, self.cols, [{c: -v for c, v in r.items()} for r in self._rows]
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        coeff = _coerce(coeff)
        if not coeff:
            return ExactMatrix.zero(self.rows, self.cols)
        return ExactMatrix(
            self.rows, self.cols, [{c: coeff * v for c, v in r.items()} for r in self._rows]
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        rds = []
        orows = other._rows
        for r in self._rows:
            acc = {}
            for k, v in r.items():
                for c, w in orows[k].items():
                    cur = acc.get(c)
                    nv = cur + v * w if cur is not None else v * w
                    if nv:
                        acc[c] = nv
                    else:
                        del acc[c]
            rds.append(acc)
        return ExactMatrix(self.rows, other.cols, rds)

    def apply(self, vec):
        """Apply to a sparse column vector (dict idx -> value)."""
        out = {}
        for i, r in enumerate(self._rows):
            acc = None
            for k, v in vec.items():
                w = r.get(k)
                if w is not None:
                    acc = acc + w * v if acc is not None else w * v
            if acc:
                out[i] = acc
        return out

    def transpose(self):
        rds = [{} for _ in range(self.cols)]
        for i, r in enumerate(self._rows):
            for c, v in r.items():
                rds[c][i] = v
        return ExactMatrix(self.cols, self.rows, rds)

    def conj(self):
        return ExactMatrix(
            self.rows, self.cols, [{c: v.conj() for c, v in r.items()} for r in self._rows]
        )

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("hstack: row mismatch")
        rds = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            for c, v in b.items():
                r[c + self.cols] = v
            rds.append(r)
        return ExactMatrix(self.rows, self.cols + other.cols, rds)

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("vstack: col mismatch")
        return ExactMatrix(
            self.rows + other.rows, self.cols, [dict(r) for r in self._rows + other._rows]
        )

    def take_columns(self, idxs):
        pos = {c: j for j, c in enumerate(idxs)}
        rds = []
        for r in self._rows:
            rds.append({pos[c]: v for c, v in r.items() if c in pos})
        return ExactMatrix(self.rows, len(idxs), rds)

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def _coerce(v):
    if isinstance(v, GaussRat):
        return v
    if isinstance(v, str):
        from .gaussrat import parse_gaussrat

        return parse_gaussrat(v)
    return GaussRat(v)


# ----------------------------------------------------------------------
# ranks, kernels, solving
# ----------------------------------------------------------------------

def rank(m):
    """Exact rank via Gaussian elimination."""
    _, pivots = rref_rows(m._rows, m.cols)
    return len(pivots)


def kernel(m):
    """Null space of ``m`` as a Subspace of its column space."""
    rows, pivots = rref_rows(m._rows, m.cols)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    basis = []
    for f in free:
        vec = {f: ONE}
        for r, p in zip(rows, pivots):
            v = r.get(f)
            if v is not None:
                vec[p] = -v
        basis.append(vec)
    return Subspace(m.cols, _canonical_rows(basis, m.cols))


def image(m):
    """Column space of ``m`` as a Subspace."""
    t = m.transpose()
    rows, _ = rref_rows(t._rows, t.cols)
    return Subspace(m.rows, rows)


def solve(m, rhs_cols):
    """Solve ``m @ X = rhs`` for each sparse column in ``rhs_cols``.

    Requires every right hand side to be in the column space; raises
    ValueError otherwise.  Returns the list of solution columns.  When the
    system is underdetermined the canonical solution with zero free
    coordinates is returned.
    """
    aug = [dict(r) for r in m._rows]
    n = m.cols
    for k, col in enumerate(rhs_cols):
        for i, v in col.items():
            aug[i][n + k] = v
    rows, pivots = rref_rows(aug, n + len(rhs_cols))
    sols = [{} for _ in rhs_cols]
    for r, p in zip(rows, pivots):
        if p >= n:
            raise ValueError("inconsistent linear system")
        for c, v in r.items():
            if c >= n and v:
                sols[c - n][p] = v
    return sols


def _canonical_rows(vectors, ambient):
    rows, _ = rref_rows(vectors, ambient)
    return rows


class Subspace:
    """A subspace of coordinate space, held as a canonical echelon basis.

    The internal representation is the RREF row basis; two subspaces are equal
    iff they have identical canonical bases.  The ``basis`` property exposes
    the same data as a matrix whose columns are basis vectors (reduced column
    echelon form).
    """

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim, canonical_rows):
        self.ambient_dim = ambient_dim
        self._rows = canonical_rows
        self._pivots = [min(r) for r in canonical_rows]

    @classmethod
    def from_vectors(cls, vectors, ambient_dim):
        return cls(ambient_dim, _canonical_rows(vectors, ambient_dim))

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, [{i: ONE} for i in range(ambient_dim)])

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, [])

    @property
    def dim(self):
        return len(self._rows)

    @property
    def basis(self):
        """Basis as an ExactMatrix with one column per basis vector."""
        return ExactMatrix.from_columns(self._rows, self.ambient_dim)

    def basis_vectors(self):
        return [dict(r) for r in self._rows]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self):
        return hash(
            (self.ambient_dim, tuple(tuple(sorted(r.items())) for r in self._rows))
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"

    # -- membership -----------------------------------------------------

    def reduce(self, vec):
        """Remainder of ``vec`` after subtracting its projection on the basis."""
        v = dict(vec)
        for r, p in zip(self._rows, self._pivots):
            c = v.get(p)
            if c is not None:
                v = _row_submul(v, c, r)
        return v

    def contains(self, vec):
        return not self.reduce(vec)

    def contains_subspace(self, other):
        self._check_ambient(other)
        return all(self.contains(r) for r in other._rows)

    def coords(self, vec):
        """Coordinates of ``vec`` in the canonical basis (must be a member)."""
        v = dict(vec)
        out = {}
        for j, (r, p) in enumerate(zip(self._rows, self._pivots)):
            c = v.get(p)
            if c is not None:
                out[j] = c
                v = _row_submul(v, c, r)
        if v:
            raise ValueError("vector not in subspace")
        return out

    def _check_ambient(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(
                f"ambient {self.ambient_dim} != {other.ambient_dim}"
            )


def subspace_sum(a, b):
    a._check_ambient(b)
    return Subspace.from_vectors(a._rows + b._rows, a.ambient_dim)


def subspace_intersect(a, b):
    a._check_ambient(b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    # coefficient combos (u, v) with u*A = v*B, found in the left kernel of
    # the stacked basis rows
    stacked = a._rows + [{c: -v for c, v in r.items()} for r in b._rows]
    m = ExactMatrix(len(stacked), a.ambient_dim, [dict(r) for r in stacked])
    combos = kernel(m.transpose())
    vecs = []
    for combo in combos._rows:
        acc = {}
        for i, coeff in combo.items():
            if i < a.dim:
                for c, v in a._rows[i].items():
                    cur = acc.get(c, ZERO) + coeff * v
                    if cur:
                        acc[c] = cur
                    else:
                        acc.pop(c, None)
        vecs.append(acc)
    return Subspace.from_vectors(vecs, a.ambient_dim)


def preimage(m, s):
    """The subspace ``{x : m @ x in s}`` of the domain of ``m``."""
    if m.rows != s.ambient_dim:
        raise AmbientMismatch(f"map target {m.rows} != ambient {s.ambient_dim}")
    if s.dim == 0:
        return kernel(m)
    neg_basis = ExactMatrix.from_columns(
        [{c: -v for c, v in r.items()} for r in s._rows], s.ambient_dim
    )
    big = kernel(m.hstack(neg_basis))
    vecs = []
    for r in big._rows:
        vecs.append({c: v for c, v in r.items() if c < m.cols})
    return Subspace.from_vectors(vecs, m.cols)


def image_of_subspace(m, s):
    """Image ``m(s)`` as a Subspace of the codomain."""
    if m.cols != s.ambient_dim:
        raise AmbientMismatch(f"map source {m.cols} != ambient {s.ambient_dim}")
    return Subspace.from_vectors([m.apply(r) for r in s._rows], m.rows)


def quotient_dim(a, b):
    """dim(a / b) for nested subspaces b <= a."""
    a._check_ambient(b)
    if not a.contains_subspace(b):
        raise ValueError("quotient_dim: not a subspace")
    return a.dim - b.dim


class QuotientMap:
    """Coordinates on ``ambient / w`` (or ``z / w`` via z-coordinates).

    Classes are coordinatized by the non-pivot coordinates of the canonical
    basis of ``w``; the map is deterministic and exact.
    """

    __slots__ = ("w", "free", "_free_pos")

    def __init__(self, w, ambient_dim=None):
        if ambient_dim is not None and w.ambient_dim != ambient_dim:
            raise AmbientMismatch("quotient ambient mismatch")
        self.w = w
        pivset = set(w._pivots)
        self.free = [c for c in range(w.ambient_dim) if c not in pivset]
        self._free_pos = {c: j for j, c in enumerate(self.free)}

    @property
    def dim(self):
        return len(self.free)

    def project(self, vec):
        """Class coordinates of ``vec``."""
        red = self.w.reduce(vec)
        return {self._free_pos[c]: v for c, v in red.items()}

    def section(self, cls_vec):
        """Canonical representative of a class-coordinate vector."""
        return {self.free[j]: v for j, v in cls_vec.items()}
