"""Exact arithmetic in Z[u, u^-1] and in truncated power series over it.

Three value types live here:

* ``LaurentPoly``: an integer Laurent polynomial in the single variable u,
  stored sparsely as exponent -> nonzero coefficient.
* ``ZetaSeries``: a series sum(c_n * T^n, n = 1..order) truncated at a fixed
  order, with ``LaurentPoly`` coefficients and no constant term.
* ``ZetaExpr``: an exact rational form, a sum of terms
  coef * prod_i u^(-nu_i) T^(N_i) / (1 - u^(-nu_i) T^(N_i)),
  compared only through expansion to a chosen truncation order.

All values are immutable after construction and every operation is a pure
function, so they are safe to share between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import InputError

#: Truncation order used by callers that do not pick one explicitly.
DEFAULT_ORDER = 64

# Exponents stay tiny in practice; a hard bound turns runaway exponent
# growth into an explicit failure instead of silent memory exhaustion.
_MAX_EXPONENT = 2**31


class LaurentPoly:
    """Element of Z[u, u^-1] in canonical sparse form (no zero coefficients)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                e = int(e)
                c = int(c)
                if c == 0:
                    continue
                if abs(e) > _MAX_EXPONENT:
                    raise OverflowError(f"u-exponent {e} out of supported range")
                clean[e] = c
        self._terms = clean

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def u_power(e: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({e: coeff})

    # -- structure -------------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        """Copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Largest exponent; only defined for nonzero values."""
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(self._terms)

    @property
    def low_degree(self) -> int:
        """Smallest exponent; only defined for nonzero values."""
        if not self._terms:
            raise ValueError("the zero polynomial has no low degree")
        return min(self._terms)

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    # -- ring operations --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = out
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e: -c for e, c in self._terms.items()}
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            res = LaurentPoly.__new__(LaurentPoly)
            res._terms = {e: c * other for e, c in self._terms.items()} if other else {}
            return res
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        for e in out:
            if abs(e) > _MAX_EXPONENT:
                raise OverflowError(f"u-exponent {e} out of supported range")
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are defined")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by u^k."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e + k: c for e, c in self._terms.items()}
        return res

    def evaluate(self, q: "int | Fraction") -> Fraction:
        """Exact value at u = q.

        q = 0 is a domain error whenever a negative exponent is present.
        """
        q = Fraction(q)
        if q == 0 and any(e < 0 for e in self._terms):
            raise ValueError("cannot evaluate at 0: negative exponents present")
        return sum((Fraction(c) * q**e for e, c in self._terms.items()), Fraction(0))

    # -- equality / hashing / text ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"

    @staticmethod
    def parse(text: str) -> "LaurentPoly":
        return parse_poly(text)


#: Shared constants.
ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
U = LaurentPoly.u_power(1)
U_MINUS_1 = U - ONE


def format_poly(p: LaurentPoly) -> str:
    """Canonical text form: terms in decreasing exponent, e.g. ``u^2-1``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e, c in p.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            upart = "u" if e == 1 else f"u^{e}"
            body = upart if mag == 1 else f"{mag}*{upart}"
        parts.append(sign + body)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


_TERM_RE = re.compile(r"^([+-]?)(?:(\d+)\*?)?(u(?:\^(-?\d+))?)?$")


def parse_poly(text: str) -> LaurentPoly:
    """Parse the grammar emitted by :func:`format_poly`.

    Terms are ``[sign][integer][*]u^[integer]`` with ``u`` alone meaning u^1
    and a bare integer meaning u^0.
    """
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty polynomial string")
    if s == "0":
        return ZERO
    # split before every sign that starts a new term; a sign directly after
    # '^' belongs to the exponent
    pieces: list[str] = []
    current = ""
    for ch in s:
        if ch in "+-" and current and not current.endswith("^"):
            pieces.append(current)
            current = ch
        else:
            current += ch
    if current:
        pieces.append(current)
    terms: dict[int, int] = {}
    for piece in pieces:
        m = _TERM_RE.match(piece)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise InputError(f"bad term {piece!r} in polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(3) is None:
            expo = 0
        elif m.group(4) is None:
            expo = 1
        else:
            expo = int(m.group(4))
        terms[expo] = terms.get(expo, 0) + sign * coeff
    return LaurentPoly(terms)


class ZetaSeries:
    """Truncated element of Z[u,u^-1][[T]] with zero constant term.

    Absent coefficients are zero; the truncation order is part of the value.
    Arithmetic between series of different orders truncates to the smaller
    order rather than claiming precision the inputs lack.
    """

    __slots__ = ("_order", "_coeffs")

    def __init__(self, order: int, coeffs: Mapping[int, LaurentPoly] | None = None):
        if not isinstance(order, int) or order < 1:
            raise ValueError("truncation order must be a positive integer")
        clean: dict[int, LaurentPoly] = {}
        if coeffs:
            for n, c in coeffs.items():
                n = int(n)
                if n < 1:
                    raise ValueError("series coefficients start at T^1")
                if n > order:
                    continue
                if not isinstance(c, LaurentPoly):
                    raise TypeError("coefficients must be LaurentPoly values")
                if c:
                    clean[n] = c
        self._order = order
        self._coeffs = clean

    @property
    def order(self) -> int:
        return self._order

    def coeff(self, n: int) -> LaurentPoly:
        if n < 1 or n > self._order:
            raise ValueError(f"T^{n} is outside the truncation order {self._order}")
        return self._coeffs.get(n, ZERO)

    def support(self) -> tuple[int, ...]:
        """Indices with nonzero coefficient, increasing."""
        return tuple(sorted(self._coeffs))

    def is_zero(self) -> bool:
        return not self._coeffs

    def truncate(self, order: int) -> "ZetaSeries":
        if order > self._order:
            raise ValueError("cannot extend a truncated series")
        return ZetaSeries(order, {n: c for n, c in self._coeffs.items() if n <= order})

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "ZetaSeries") -> "ZetaSeries":
        if not isinstance(other, ZetaSeries):
            return NotImplemented
        order = min(self._order, other._order)
        out: dict[int, LaurentPoly] = {}
        for n in range(1, order + 1):
            c = self._coeffs.get(n, ZERO) + other._coeffs.get(n, ZERO)
            if c:
                out[n] = c
        return ZetaSeries(order, out)

    def __sub__(self, other: "ZetaSeries") -> "ZetaSeries":
        if not isinstance(other, ZetaSeries):
            return NotImplemented
        return self + other.scale(LaurentPoly.const(-1))

    def __mul__(self, other: "ZetaSeries") -> "ZetaSeries":
        if not isinstance(other, ZetaSeries):
            return NotImplemented
        order = min(self._order, other._order)
        out: dict[int, LaurentPoly] = {}
        for i, ci in self._coeffs.items():
            for j, cj in other._coeffs.items():
                n = i + j
                if n > order:
                    continue
                s = out.get(n, ZERO) + ci * cj
                if s:
                    out[n] = s
                else:
                    out.pop(n, None)
        return ZetaSeries(order, out)

    def scale(self, poly: LaurentPoly) -> "ZetaSeries":
        return ZetaSeries(
            self._order, {n: c * poly for n, c in self._coeffs.items()}
        )

    # -- equality / text ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZetaSeries):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._order, frozenset(self._coeffs.items())))

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"ZetaSeries(order={self._order}, {format_series(self)!r})"

    # -- serialization --------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "order": self._order,
            "terms": [
                {"n": n, "coeff": format_poly(self._coeffs[n])}
                for n in sorted(self._coeffs)
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "ZetaSeries":
        try:
            order = data["order"]
            terms = data["terms"]
            coeffs = {int(t["n"]): parse_poly(t["coeff"]) for t in terms}
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad series document: {exc}") from exc
        return ZetaSeries(order, coeffs)


def format_series(z: ZetaSeries) -> str:
    """Text form ``(coef)*u^e*T^n + ...`` in increasing n.

    Each coefficient is factored as p * u^e with p having a nonzero constant
    term, so e.g. the coefficient (u-1)u^-1 of T^6 prints as ``(u-1)*u^-1``.
    """
    if z.is_zero():
        return "0"
    parts = []
    for n in z.support():
        c = z.coeff(n)
        low = c.low_degree
        body = f"({format_poly(c.shift(-low))})"
        if low == 1:
            body += "*u"
        elif low != 0:
            body += f"*u^{low}"
        parts.append(f"{body}*T^{n}")
    return " + ".join(parts)


def expand_term(nu: int, N: int, order: int) -> ZetaSeries:
    """Geometric expansion of u^-nu T^N / (1 - u^-nu T^N) to the given order.

    The T^n coefficient is u^(-m*nu) when n = m*N <= order and zero otherwise.
    """
    if nu < 1 or N < 1:
        raise ValueError("factor parameters must be positive integers")
    if order < 1:
        raise ValueError("truncation order must be a positive integer")
    coeffs = {}
    m = 1
    while m * N <= order:
        coeffs[m * N] = LaurentPoly.u_power(-m * nu)
        m += 1
    return ZetaSeries(order, coeffs)


@dataclass(frozen=True)
class ZetaTerm:
    """One summand coef * prod of (nu, N) geometric factors."""

    coef: LaurentPoly
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.factors:
            # a factor-free term would be a T^0 constant, which a zeta
            # series cannot carry
            raise ValueError("a term needs at least one (nu, N) factor")
        for nu, N in self.factors:
            if nu < 1 or N < 1:
                raise ValueError("factor parameters must be positive integers")


@dataclass(frozen=True)
class ZetaExpr:
    """Exact rational form of a zeta function; compared via expansion only."""

    terms: tuple[ZetaTerm, ...]

    def expand(self, order: int) -> ZetaSeries:
        total = ZetaSeries(order)
        for term in self.terms:
            prod: ZetaSeries | None = None
            for nu, N in term.factors:
                factor = expand_term(nu, N, order)
                prod = factor if prod is None else prod * factor
            total = total + prod.scale(term.coef)
        return total


def zeta_term(coef: LaurentPoly, factors: list[tuple[int, int]]) -> ZetaTerm:
    return ZetaTerm(coef=coef, factors=tuple((int(a), int(b)) for a, b in factors))


def zeta_expr(terms: list[ZetaTerm]) -> ZetaExpr:
    return ZetaExpr(terms=tuple(terms))
