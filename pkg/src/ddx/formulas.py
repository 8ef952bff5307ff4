"""Symbolic verification of the inverse isomorphism formulas.

The verification is purely formal.  Classes pulled back from the base are
free symbols; a class on the total space of a rank-r bundle is a sum of
terms ``poly(T) * h^m * pull(symbol)`` where h is the degree-2 tautological
class and the T_j are the formal pushforward values ``T_j = push(h^{r-1+j})``.
Fiber integration is the rewrite

    push(h^m) = 0            for m <= r-2,
    push(h^{r-1}) = (-1)^{r-1},
    push(h^m) = T_{m-r+1}    for r-1 < m <= 2r-2,

combined with the projection formula ``push(x * pull(y)) = push(x) * y``.
The inverse-map components are

    G_i(x) = sum_{j=0}^{r-1-i} P_{i+j}(T_1..T_{r-1}) * push(h^j * x)

with the coefficient family of :mod:`ddx.polynomials`; composing them with
the forward sum ``sum_l h^l * pull(x_l)`` must return each slot unchanged,
which the expander checks as exact polynomial identities.

For the blowup version a second rewrite is needed: restricting a pushforward
from the exceptional locus to itself cups with h (the adjunction rule).  The
rule is exposed as a toggle: with it the round trip is the identity; without
it the expansion is blocked, and with the deliberately wrong rule
``restrict(extend(x)) = 0`` it fails.  Which of the three happens is part of
the report.
"""

from __future__ import annotations

from .polynomials import (
    IndexOutOfRange,
    IntPolynomial,
    InvalidRank,
    build_family,
)


class PushforwardContext:
    """Rewrite rules for fiber-integrating powers of the tautological class."""

    __slots__ = ("rank",)

    def __init__(self, rank):
        if rank < 1:
            raise InvalidRank(f"rank must be >= 1, got {rank}")
        self.rank = rank

    def push_power(self, m):
        """push(h^m) as a polynomial in T_1..T_{rank-1}."""
        r = self.rank
        nv = r - 1
        if m < 0 or m > 2 * r - 2:
            raise IndexOutOfRange(f"h^{m} cannot appear for rank {r}")
        if m <= r - 2:
            return IntPolynomial(nv)
        if m == r - 1:
            return IntPolynomial.constant(nv, 1 if (r - 1) % 2 == 0 else -1)
        return IntPolynomial.variable(nv, m - r + 1)


class FreeModuleElement:
    """Sum of terms ``poly(T) * h^m * pull(symbol)`` on a bundle total space."""

    __slots__ = ("rank", "coeffs")

    def __init__(self, rank, coeffs=None):
        self.rank = rank
        self.coeffs = {}
        if coeffs:
            for key, poly in coeffs.items():
                if poly and not poly.is_zero():
                    self.coeffs[key] = poly

    def add_term(self, symbol, hpow, poly):
        key = (symbol, hpow)
        cur = self.coeffs.get(key)
        new = cur + poly if cur is not None else poly
        if new.is_zero():
            self.coeffs.pop(key, None)
        else:
            self.coeffs[key] = new

    def cup_h(self, j):
        return FreeModuleElement(
            self.rank, {(sym, m + j): poly for (sym, m), poly in self.coeffs.items()}
        )

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return self.rank == other.rank and self.coeffs == other.coeffs

    def check_weights(self, slot_depth):
        """All terms share one value of weight(poly) + hpow - depth(symbol).

        Returns the common weight, or raises AssertionError; the zero element
        has every weight.
        """
        weights = set()
        for (sym, m), poly in self.coeffs.items():
            for w in poly.weighted_degrees():
                weights.add(w + m - slot_depth(sym))
        if len(weights) > 1:
            raise AssertionError(f"mixed weights {weights}")
        return weights.pop() if weights else None


def pushforward(elem, ctx):
    """Fiber integration: a base-level dict symbol -> polynomial."""
    out = {}
    for (sym, m), poly in elem.coeffs.items():
        factor = ctx.push_power(m)
        if factor.is_zero():
            continue
        term = poly * factor
        cur = out.get(sym)
        new = cur + term if cur is not None else term
        if new.is_zero():
            out.pop(sym, None)
        else:
            out[sym] = new
    return out


def inverse_component(i, elem, ctx, family):
    """G_i(elem) = sum_j P_{i+j} * push(h^j * elem), a base-level dict."""
    r = ctx.rank
    out = {}
    for j in range(0, r - i):
        pushed = pushforward(elem.cup_h(j), ctx)
        p = family[i + j]
        for sym, poly in pushed.items():
            term = p * poly
            cur = out.get(sym)
            new = cur + term if cur is not None else term
            if new.is_zero():
                out.pop(sym, None)
            else:
                out[sym] = new
    return out


def forward_sum(r):
    """sum_l h^l * pull(x_l), slots labelled by their depth l."""
    one = IntPolynomial.constant(r - 1, 1)
    elem = FreeModuleElement(r)
    for l in range(r):
        elem.add_term(l, l, one)
    return elem


def verify_projbundle_inverse(r):
    """True iff every inverse component returns its slot exactly."""
    if not isinstance(r, int) or r < 1:
        raise InvalidRank(f"rank must be a positive integer, got {r!r}")
    ctx = PushforwardContext(r)
    family = build_family(r)
    mu = forward_sum(r)
    one = IntPolynomial.constant(r - 1, 1)
    for i in range(r):
        got = inverse_component(i, mu, ctx, family)
        if got != {i: one}:
            return False
    return True


# ----------------------------------------------------------------------
# blowup round trip
# ----------------------------------------------------------------------

ADJUNCTION_RULES = ("standard", "zero", "disabled")


class BlowupClass:
    """A class on the blowup: a pulled-back part plus extension terms.

    ``base`` maps base symbols to polynomials (classes pulled back along the
    contraction); ``exc`` maps (symbol, hpow) to polynomials and stands for
    ``extend(h^hpow * pull(symbol))`` supported on the exceptional locus.
    """

    __slots__ = ("rank", "base", "exc")

    def __init__(self, rank, base=None, exc=None):
        self.rank = rank
        self.base = {k: v for k, v in (base or {}).items() if not v.is_zero()}
        self.exc = {k: v for k, v in (exc or {}).items() if not v.is_zero()}


class BlockedExpansion(Exception):
    """The expansion cannot proceed without the adjunction rule."""


def blowup_forward(r):
    """pull(alpha) + sum_i extend(h^{i-1} * pull(beta_i)) with free symbols."""
    one = IntPolynomial.constant(r - 1, 1)
    base = {"alpha": one}
    exc = {(("beta", i), i - 1): one for i in range(1, r)}
    return BlowupClass(r, base, exc)


def blowup_pushforward(cls_, ctx):
    """Contraction pushforward: base symbols survive, extension terms push.

    Returns (dict of base symbols, dict of center symbols); the center part
    collects ``embed(push(h^m) * beta)`` contributions and must vanish for
    the round trip to close.
    """
    center = {}
    for (sym, m), poly in cls_.exc.items():
        factor = ctx.push_power(m)
        if factor.is_zero():
            continue
        term = poly * factor
        cur = center.get(sym)
        new = cur + term if cur is not None else term
        if new.is_zero():
            center.pop(sym, None)
        else:
            center[sym] = new
    return dict(cls_.base), center


def blowup_restrict(cls_, adjunction="standard"):
    """Restriction to the exceptional locus as a FreeModuleElement.

    The pulled-back part restricts to ``pull(restriction of the symbol)``
    (depth-0 slots); extension terms follow the chosen adjunction rule.
    """
    if adjunction not in ADJUNCTION_RULES:
        raise ValueError(f"unknown adjunction rule {adjunction!r}")
    elem = FreeModuleElement(cls_.rank)
    for sym, poly in cls_.base.items():
        elem.add_term(("restrict", sym), 0, poly)
    for (sym, m), poly in cls_.exc.items():
        if adjunction == "standard":
            elem.add_term(sym, m + 1, poly)
        elif adjunction == "zero":
            pass
        else:
            raise BlockedExpansion(
                "restriction of an extension term needs the adjunction rule"
            )
    return elem


def blowup_inverse_status(r, adjunction="standard"):
    """Outcome of the round trip: 'identity', 'fails' or 'blocked'."""
    if not isinstance(r, int) or r < 2:
        raise InvalidRank(f"blowup verification needs integer rank >= 2, got {r!r}")
    ctx = PushforwardContext(r)
    family = build_family(r)
    psi = blowup_forward(r)
    one = IntPolynomial.constant(r - 1, 1)

    base, center = blowup_pushforward(psi, ctx)
    if base != {"alpha": one} or center:
        return "fails"

    try:
        restricted = blowup_restrict(psi, adjunction)
    except BlockedExpansion:
        return "blocked"

    for i in range(1, r):
        got = inverse_component(i, restricted, ctx, family)
        if got != {("beta", i): one}:
            return "fails"
    return "identity"


def verify_blowup_inverse(r, adjunction="standard"):
    return blowup_inverse_status(r, adjunction) == "identity"


# ----------------------------------------------------------------------
# human-readable expansion traces
# ----------------------------------------------------------------------

class TraceStep:
    __slots__ = ("title", "detail")

    def __init__(self, title, detail):
        self.title = title
        self.detail = detail

    def __repr__(self):
        return f"TraceStep({self.title})"


TRACE_THEORIES = ("de_rham", "dolbeault", "bott_chern", "aeppli")


def expansion_trace(r, which, theory="de_rham"):
    """Step list of the round-trip expansion, for display.

    ``which`` is ``"projbundle"`` or ``"blowup"``.  The expansion itself is
    cohomology-theory-agnostic (only the projection formula and the
    pushforward rewrites are used); ``theory`` records which flavor of class
    the trace is read in and is prepended as a context step.
    """
    if theory not in TRACE_THEORIES:
        raise ValueError(f"unknown theory {theory!r}")
    steps = _trace_steps(r, which)
    head = TraceStep(
        "context",
        f"classes read in {theory} cohomology; the expansion only uses the "
        "projection formula and the pushforward rewrites, so the steps are "
        "identical for every theory",
    )
    return [head] + steps if theory != "de_rham" else steps


def _trace_steps(r, which):
    if which == "projbundle":
        if not isinstance(r, int) or r < 1:
            raise InvalidRank(f"rank must be a positive integer, got {r!r}")
        if r == 1:
            return [
                TraceStep(
                    "collapse",
                    "G_0(mu(a_0)) = P_0 * push(a_0) = a_0; H_0 * a_i = a_i",
                )
            ]
        return [
            TraceStep(
                "expand",
                f"mu(a_0..a_{r - 1}) = sum_l h^l * pull(a_l)",
            ),
            TraceStep(
                "pushforward",
                "push(h^j * mu) = sum_l push(h^(j+l)) * a_l by the projection "
                "formula; push(h^m) = 0 (m <= r-2), (-1)^(r-1) (m = r-1), "
                "T_(m-r+1) (m >= r)",
            ),
            TraceStep(
                "exchange sums",
                "G_i(mu) = sum_l [ sum_j P_(i+j) * push(h^(j+l)) ] * a_l",
            ),
            TraceStep(
                "collapse",
                "the bracket telescopes: H_0 * a_i = a_i and H_k * a_(i+k) = 0 "
                "for k >= 1",
            ),
        ]
    if which == "blowup":
        if not isinstance(r, int) or r < 2:
            raise InvalidRank(f"blowup trace needs integer rank >= 2, got {r!r}")
        return [
            TraceStep(
                "expand",
                f"psi(a, b_1..b_{r - 1}) = pull(a) + "
                "sum_i extend(h^(i-1) * pull(b_i))",
            ),
            TraceStep(
                "pushforward",
                "push(psi) = a: push(extend(h^(i-1) * pull(b_i))) dies since "
                "i-1 <= r-2",
            ),
            TraceStep(
                "restrict",
                "restrict(psi) = pull(a|_center) + sum_i h^i * pull(b_i) using "
                "restrict(extend(x)) = h * x",
            ),
            TraceStep(
                "exchange sums",
                "G_i(restrict(psi)) = sum_l [ sum_j P_(i+j) * push(h^(j+l)) ] "
                "* b_l; the a|_center slot never reaches push degree r-1",
            ),
            TraceStep(
                "collapse",
                "the bracket telescopes: H_0 * b_i = b_i and H_k * b_(i+k) = 0 "
                "for k >= 1",
            ),
        ]
    raise ValueError(f"unknown trace kind {which!r}")
