"""Built-in finite double-complex models and Lie-algebra model ingestion.

A Lie model describes, for each generator ``phi^k`` of an n-dimensional
complex Lie algebra with left-invariant forms, the (2,0)- and (1,1)-
components of ``d phi^k``.  The induced bigraded exterior algebra
``Lambda^{p,q}`` (dimension C(n,p) * C(n,q)) with the Leibniz-extended
differentials and the conjugation ``conj(phi^I wedge phibar^J) =
(-1)^{pq} phi^J wedge phibar^I`` is a bounded double complex with real
structure.  The convention dphi has no (0,2)-component (integrability).

Built-in models: atoms (dot, square, three small zigzags), the zero-
differential tori, the classical 3-dimensional nilpotent example where
page-1 degeneration fails, and a surface model with a (1,1)-structure
constant that fails the exactness property.
"""

from __future__ import annotations

from itertools import combinations

from .gaussrat import GaussRat, ZERO, parse_gaussrat
from .linalg import ExactMatrix
from .complexes import (
    DoubleComplex,
    direct_sum,
    dot_complex,
    shift_diag,
    square_complex,
    tensor,
    zigzag_complex,
)
from .zigzags import ZigzagShape


class NotIntegrable(Exception):
    """The induced differential does not square to zero."""


class UnknownModel(Exception):
    pass


class LieModel:
    """Structure constants for the (2,0) and (1,1) parts of d on generators.

    ``d20[k]`` is a list of (i, j, coeff) with i < j meaning a term
    ``coeff * phi^i wedge phi^j`` of d(phi^k); ``d11[k]`` lists terms
    ``coeff * phi^i wedge phibar^j``.  Generators are 1-based; omitted
    generators are closed.
    """

    __slots__ = ("n", "d20", "d11")

    def __init__(self, n, d20=None, d11=None):
        self.n = n
        self.d20 = {k: list(v) for k, v in (d20 or {}).items() if v}
        self.d11 = {k: list(v) for k, v in (d11 or {}).items() if v}
        for k in list(self.d20) + list(self.d11):
            if not 1 <= k <= n:
                raise ValueError(f"generator {k} out of range")
        for k, terms in self.d20.items():
            for i, j, _ in terms:
                if not (1 <= i < j <= n):
                    raise ValueError(f"bad (2,0) term ({i},{j}) for generator {k}")
        for k, terms in self.d11.items():
            for i, j, _ in terms:
                if not (1 <= i <= n and 1 <= j <= n):
                    raise ValueError(f"bad (1,1) term ({i},{j}) for generator {k}")


def _monomials(n, p, q):
    """Sorted basis labels (I, J) of Lambda^{p,q}."""
    return [
        (I, J)
        for I in combinations(range(1, n + 1), p)
        for J in combinations(range(1, n + 1), q)
    ]


def _normalize(factors):
    """Sort wedge factors into (phis ascending, phibars ascending).

    ``factors`` is a list of (kind, index) with kind 0 for phi, 1 for phibar.
    Returns (sign, key) or None when a factor repeats.
    """
    sign = 1
    fs = list(factors)
    # insertion sort counting transpositions
    for a in range(1, len(fs)):
        b = a
        while b > 0 and fs[b - 1] > fs[b]:
            fs[b - 1], fs[b] = fs[b], fs[b - 1]
            sign = -sign
            b -= 1
    for a in range(1, len(fs)):
        if fs[a - 1] == fs[a]:
            return None
    I = tuple(i for kind, i in fs if kind == 0)
    J = tuple(i for kind, i in fs if kind == 1)
    return sign, (I, J)


def from_lie_model(model):
    """The bigraded exterior algebra of a Lie model, as a validated complex."""
    n = model.n

    # differential of each generator, per output bidegree
    # phi^k:    d1 -> (2,0) terms;              d2 -> (1,1) terms
    # phibar^k: d1 -> -conj(e) phi^j phibar^i;  d2 -> conj(c) phibar^i phibar^j
    d1_gen = {0: {}, 1: {}}
    d2_gen = {0: {}, 1: {}}
    for k, terms in model.d20.items():
        d1_gen[0][k] = [((0, i), (0, j), _coeff(c)) for i, j, c in terms]
        d2_gen[1][k] = [((1, i), (1, j), _coeff(c).conj()) for i, j, c in terms]
    for k, terms in model.d11.items():
        d2_gen[0][k] = [((0, i), (1, j), _coeff(c)) for i, j, c in terms]
        d1_gen[1][k] = [((0, j), (1, i), -_coeff(c).conj()) for i, j, c in terms]

    bases = {}
    index = {}
    for p in range(n + 1):
        for q in range(n + 1):
            labels = _monomials(n, p, q)
            bases[(p, q)] = labels
            index[(p, q)] = {lab: i for i, lab in enumerate(labels)}

    def apply_d(gen_table, I, J):
        """Leibniz expansion; returns dict (I', J') -> coefficient."""
        out = {}
        factors = [(0, i) for i in I] + [(1, j) for j in J]
        for pos, (kind, idx) in enumerate(factors):
            terms = gen_table[kind].get(idx)
            if not terms:
                continue
            leib = 1 if pos % 2 == 0 else -1
            rest = factors[:pos] + factors[pos + 1 :]
            for f1, f2, coeff in terms:
                norm = _normalize([f1, f2] + rest)
                if norm is None:
                    continue
                sign, key = norm
                total = coeff * GaussRat(sign * leib)
                cur = out.get(key, ZERO) + total
                if cur:
                    out[key] = cur
                else:
                    out.pop(key, None)
        return out

    spaces = {}
    d1 = {}
    d2 = {}
    for (p, q), labels in bases.items():
        if not labels:
            continue
        spaces[(p, q)] = len(labels)
        for gen_table, delta, store in (
            (d1_gen, (1, 0), d1),
            (d2_gen, (0, 1), d2),
        ):
            tpq = (p + delta[0], q + delta[1])
            tgt = index.get(tpq)
            if not tgt:
                continue
            rds = [{} for _ in range(len(tgt))]
            nonzero = False
            for col, (I, J) in enumerate(labels):
                for key, coeff in apply_d(gen_table, I, J).items():
                    rds[tgt[key]][col] = coeff
                    nonzero = True
            if nonzero:
                store[(p, q)] = ExactMatrix(len(tgt), len(labels), rds)

    sigma = {}
    for (p, q), labels in bases.items():
        if not labels:
            continue
        tgt = index[(q, p)]
        rds = [{} for _ in range(len(tgt))]
        sgn = GaussRat(-1 if (p * q) % 2 else 1)
        for col, (I, J) in enumerate(labels):
            rds[tgt[(J, I)]][col] = sgn
        sigma[(p, q)] = ExactMatrix(len(tgt), len(labels), rds)

    k = DoubleComplex(spaces, d1, d2, sigma)
    report = k.validate()
    if not report.ok:
        raise NotIntegrable(f"induced differential is inconsistent: {report.violations}")
    return k


def _coeff(c):
    if isinstance(c, GaussRat):
        return c
    if isinstance(c, str):
        return parse_gaussrat(c)
    return GaussRat(c)


# ----------------------------------------------------------------------
# builtins
# ----------------------------------------------------------------------

def torus_model(n):
    return LieModel(n)


def iwasawa_model():
    """Three generators, d phi^3 = -phi^1 wedge phi^2."""
    return LieModel(3, d20={3: [(1, 2, -1)]})


def kodaira_thurston_model():
    """Two generators, d phi^2 = phi^1 wedge phibar^1."""
    return LieModel(2, d11={2: [(1, 1, 1)]})


_BUILTIN_FACTORIES = {
    "dot": lambda: dot_complex(0, 0),
    "square": lambda: square_complex(0, 0),
    "zigzag-h2": lambda: zigzag_complex(ZigzagShape.from_spots([(0, 0), (0, 1)])),
    "zigzag-v2": lambda: zigzag_complex(ZigzagShape.from_spots([(0, 0), (1, 0)])),
    "zigzag-3": lambda: zigzag_complex(ZigzagShape.from_spots([(0, 1), (0, 0), (1, 0)])),
    "torus-1": lambda: from_lie_model(torus_model(1)),
    "torus-2": lambda: from_lie_model(torus_model(2)),
    "torus-3": lambda: from_lie_model(torus_model(3)),
    "iwasawa": lambda: from_lie_model(iwasawa_model()),
    "kodaira-thurston": lambda: from_lie_model(kodaira_thurston_model()),
}

BUILTIN_NAMES = tuple(sorted(_BUILTIN_FACTORIES))


def builtin(name):
    try:
        factory = _BUILTIN_FACTORIES[name]
    except KeyError:
        raise UnknownModel(f"unknown model {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    return factory()


# ----------------------------------------------------------------------
# geometric-operation models
# ----------------------------------------------------------------------

def projbundle_model(k, r):
    """Direct sum of diagonal shifts of ``k`` by 0..r-1."""
    if r < 1:
        raise ValueError("projective bundle model needs r >= 1")
    return direct_sum([shift_diag(k, i) for i in range(r)])


def blowup_model(kx, ky, r):
    """``kx`` plus diagonal shifts of ``ky`` by 1..r-1."""
    if r < 2:
        raise ValueError("blowup model needs r >= 2")
    return direct_sum([kx] + [shift_diag(ky, i) for i in range(1, r)])


def product_model(a, b):
    return tensor(a, b)
