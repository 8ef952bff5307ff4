"""Integer polynomials in T_1..T_{r-1} and the inversion coefficient family.

The family ``P_0, ..., P_{r-1}`` is defined top down by the recursion

    P_{r-1} = (-1)^{r-1},
    P_i     = (-1)^r * sum_{k=1}^{r-1-i} T_k * P_{k+i}      (0 <= i < r-1).

Its members are the coefficients that invert the triangular system produced
by pushing powers of a degree-2 class down a fiber; the telescoping sums
``inversion_sum(family, k)`` collapse to 1 for k = 0 and to 0 otherwise, and
that collapse is what makes the inverse formulas in the formula verifier
work.
"""

from __future__ import annotations


class InvalidRank(Exception):
    pass


class IndexOutOfRange(Exception):
    pass


class IntPolynomial:
    """Multivariate polynomial over the integers.

    Terms are stored as a map from exponent vectors (tuples of length
    ``num_vars``) to nonzero integer coefficients; equality is structural.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars, terms=None):
        self.num_vars = num_vars
        self.terms = dict(terms) if terms else {}
        for e, c in list(self.terms.items()):
            if len(e) != num_vars:
                raise ValueError("exponent vector of wrong length")
            if not isinstance(c, int):
                raise ValueError("coefficients must be integers")
            if c == 0:
                del self.terms[e]

    @classmethod
    def constant(cls, num_vars, c):
        if c == 0:
            return cls(num_vars)
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars, k):
        """The variable T_k (1-based)."""
        if not 1 <= k <= num_vars:
            raise IndexOutOfRange(f"T_{k} out of range for {num_vars} variables")
        e = [0] * num_vars
        e[k - 1] = 1
        return cls(num_vars, {tuple(e): 1})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            n = terms.get(e, 0) + c
            if n:
                terms[e] = n
            else:
                terms.pop(e, None)
        return IntPolynomial(self.num_vars, terms)

    def __neg__(self):
        return IntPolynomial(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntPolynomial(self.num_vars)
            return IntPolynomial(
                self.num_vars, {e: c * other for e, c in self.terms.items()}
            )
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                n = out.get(e, 0) + c1 * c2
                if n:
                    out[e] = n
                else:
                    del out[e]
        return IntPolynomial(self.num_vars, out)

    __rmul__ = __mul__

    def _check(self, other):
        if self.num_vars != other.num_vars:
            raise ValueError("mixed variable counts")

    def weighted_degrees(self):
        """Set of weights sum(k * d_k) over nonzero terms (T_k has weight k)."""
        return {sum((k + 1) * d for k, d in enumerate(e)) for e in self.terms}

    def variables_used(self):
        used = set()
        for e in self.terms:
            for k, d in enumerate(e):
                if d:
                    used.add(k + 1)
        return used

    def sorted_terms(self):
        """Terms in graded-lexicographic order, highest first."""
        return sorted(
            self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"T{k + 1}^{d}" if d > 1 else f"T{k + 1}"
                for k, d in enumerate(e)
                if d
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"IntPolynomial({self})"


class PolyFamily:
    """The list ``[P_0, ..., P_{r-1}]`` for a given rank r."""

    __slots__ = ("rank", "polys")

    def __init__(self, rank, polys):
        self.rank = rank
        self.polys = list(polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __len__(self):
        return len(self.polys)


def build_family(r):
    """Build the coefficient family for rank ``r`` by the top-down recursion."""
    if not isinstance(r, int) or r < 1:
        raise InvalidRank(f"rank must be a positive integer, got {r!r}")
    nv = r - 1
    polys = [None] * r
    sign_top = 1 if (r - 1) % 2 == 0 else -1
    polys[r - 1] = IntPolynomial.constant(nv, sign_top)
    sign_rec = 1 if r % 2 == 0 else -1
    for i in range(r - 2, -1, -1):
        acc = IntPolynomial(nv)
        for k in range(1, r - i):
            acc = acc + IntPolynomial.variable(nv, k) * polys[k + i]
        polys[i] = acc * sign_rec
    return PolyFamily(r, polys)


def check_support(family):
    """True iff each P_i only uses the variables T_1..T_{r-1-i}."""
    r = family.rank
    for i, p in enumerate(family.polys):
        if any(k > r - 1 - i for k in p.variables_used()):
            return False
    return True


def check_weighted_homogeneity(family):
    """True iff every nonzero term of P_i has weight r-1-i (T_k weighs k)."""
    r = family.rank
    for i, p in enumerate(family.polys):
        degs = p.weighted_degrees()
        if degs and degs != {r - 1 - i}:
            return False
    return True


def inversion_sum(family, k):
    """The telescoping sum whose vanishing drives the inverse formulas.

    With ``T_0 := (-1)^{r-1}`` this is

        sum_{i=r-1}^{r-1+k} T_{i-(r-1)} * P_{i-k},

    which must be the constant 1 for k = 0 and the zero polynomial for
    1 <= k <= r-1.
    """
    r = family.rank
    if not 0 <= k <= r - 1:
        raise IndexOutOfRange(f"k={k} outside 0..{r - 1}")
    nv = r - 1
    sign = 1 if (r - 1) % 2 == 0 else -1
    acc = family.polys[r - 1 - k] * sign
    for j in range(1, k + 1):
        acc = acc + IntPolynomial.variable(nv, j) * family.polys[r - 1 + j - k]
    return acc
