"""Zeta functions from resolution data, closed forms, and convolution.

The evaluator consumes purely combinatorial resolution data: for each
exceptional component a pair (N, nu) of multiplicities, and for each set I
of components the invariant of the corresponding boundary stratum over the
origin (plus its two sign coverings).  The naive zeta function is

    sum over nonempty I of (u-1)^|I| * beta0(I) * prod_{i in I} F(nu_i, N_i)

with F(nu, N) = u^-nu T^N / (1 - u^-nu T^N), and the sign variants replace
(u-1)^|I| * beta0 by (u-1)^(|I|-1) * beta_sign.  Whether the data really
comes from a resolution is the caller's responsibility; no normal-crossing
condition can be checked from the combinatorics alone.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import InputError, UnsupportedComputationError
from .jets import DiagonalGerm, Germ, MonomialGerm, germ_to_str, zeta_direct
from .ring import (
    ONE,
    U,
    LaurentPoly,
    ZetaExpr,
    ZetaSeries,
    format_poly,
    parse_poly,
    zeta_expr,
    zeta_term,
)

# ---------------------------------------------------------------------------
# resolution data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    """One exceptional or strict-transform component with its multiplicities."""

    id: str
    N: int
    nu: int
    over_origin: bool

    def __post_init__(self):
        if self.N < 1 or self.nu < 1:
            raise ValueError(f"component {self.id!r}: N and nu must be >= 1")


@dataclass(frozen=True)
class StratumData:
    """Invariants attached to the boundary stratum of a component set I."""

    components: tuple[str, ...]
    beta0: LaurentPoly
    beta_plus: LaurentPoly
    beta_minus: LaurentPoly

    def __post_init__(self):
        if not self.components:
            raise ValueError("a stratum needs a nonempty component set")


@dataclass(frozen=True)
class ResolutionDatum:
    dimension: int
    components: tuple[Component, ...]
    strata: tuple[StratumData, ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise ValueError("component ids must be unique")
        if not any(c.over_origin for c in self.components):
            raise ValueError("at least one component must lie over the origin")
        known = set(ids)
        seen: set[frozenset[str]] = set()
        for st in self.strata:
            key = frozenset(st.components)
            if len(key) != len(st.components):
                raise ValueError(f"stratum {st.components} repeats a component")
            if not key <= known:
                raise ValueError(
                    f"stratum references unknown component "
                    f"{sorted(key - known)}"
                )
            if key in seen:
                raise ValueError(f"duplicate stratum for {sorted(key)}")
            seen.add(key)
            if st.beta0 and st.beta0.degree > self.dimension - len(key):
                raise ValueError(
                    f"stratum {sorted(key)}: deg(beta0) exceeds the "
                    f"dimension bound {self.dimension - len(key)}"
                )

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)


def resolution_from_json(data: dict | str) -> ResolutionDatum:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad resolution JSON: {exc}") from exc
    try:
        components = tuple(
            Component(
                id=c["id"],
                N=int(c["N"]),
                nu=int(c["nu"]),
                over_origin=bool(c.get("over_origin", True)),
            )
            for c in data["components"]
        )
        strata = tuple(
            StratumData(
                components=tuple(s["I"]),
                beta0=parse_poly(s.get("beta0", "0")),
                beta_plus=parse_poly(s.get("beta_plus", "0")),
                beta_minus=parse_poly(s.get("beta_minus", "0")),
            )
            for s in data.get("strata", [])
        )
        datum = ResolutionDatum(
            dimension=int(data["dimension"]),
            components=components,
            strata=strata,
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad resolution document: {exc}") from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return datum


def resolution_to_json(r: ResolutionDatum) -> dict:
    return {
        "dimension": r.dimension,
        "components": [
            {"id": c.id, "N": c.N, "nu": c.nu, "over_origin": c.over_origin}
            for c in r.components
        ],
        "strata": [
            {
                "I": list(s.components),
                "beta0": format_poly(s.beta0),
                "beta_plus": format_poly(s.beta_plus),
                "beta_minus": format_poly(s.beta_minus),
            }
            for s in r.strata
        ],
    }


def dl_expr(r: ResolutionDatum, variant: str = "naive") -> ZetaExpr:
    """The exact rational form of the zeta function of a resolution datum."""
    terms = []
    for st in r.strata:
        size = len(st.components)
        if variant == "naive":
            coef = (U - ONE) ** size * st.beta0
        elif variant == "plus":
            coef = (U - ONE) ** (size - 1) * st.beta_plus
        elif variant == "minus":
            coef = (U - ONE) ** (size - 1) * st.beta_minus
        else:
            raise ValueError(f"unknown variant {variant!r}")
        if not coef:
            continue
        factors = []
        for cid in st.components:
            comp = r.component(cid)
            factors.append((comp.nu, comp.N))
        terms.append(zeta_term(coef, factors))
    return zeta_expr(terms)


def dl_naive(r: ResolutionDatum, order: int) -> ZetaSeries:
    """Naive zeta series of the datum, expanded to the given order."""
    return dl_expr(r, "naive").expand(order)


def dl_sign(r: ResolutionDatum, sign: int, order: int) -> ZetaSeries:
    """Sign zeta series (+1 or -1 variant) of the datum."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return dl_expr(r, "plus" if sign == 1 else "minus").expand(order)


# ---------------------------------------------------------------------------
# closed-form catalogue
# ---------------------------------------------------------------------------


def _sign_solution_count(m: int, target: int) -> int:
    # solutions of t^m = target over the reals, target in {+1,-1}
    if m % 2 == 1:
        return 1
    return 2 if target == 1 else 0


def closed_form(g: Germ, variant: str = "naive") -> ZetaExpr:
    """Exact rational form for the catalogued germ families.

    Supported: monomial germs (normal crossings, any unit sign), one-term
    diagonal germs, and x^k + y^k; sign variants only where a closed form is
    on record (monomials, one-variable powers, and x^2 + y^2).  Anything
    else raises, and the caller falls back to :func:`zeta_direct`.
    """
    if variant not in ("naive", "plus", "minus"):
        raise ValueError(f"unknown variant {variant!r}")
    level = {"naive": 0, "plus": 1, "minus": -1}[variant]

    if isinstance(g, DiagonalGerm) and g.dim == 1:
        sign, k = g.terms[0]
        g = MonomialGerm(exponents=(k,), unit_sign=sign)

    if isinstance(g, MonomialGerm):
        active = [e for e in g.exponents if e > 0]
        factors = [(1, e) for e in active]
        if level == 0:
            return zeta_expr([zeta_term((U - ONE) ** len(active), factors)])
        count = _sign_solution_count(math.gcd(*active), level * g.unit_sign)
        coef = LaurentPoly.const(count) * (U - ONE) ** (len(active) - 1)
        if not coef:
            return zeta_expr([])
        return zeta_expr([zeta_term(coef, factors)])

    if (
        isinstance(g, DiagonalGerm)
        and g.dim == 2
        and g.signs == (1, 1)
        and g.exponents[0] == g.exponents[1]
    ):
        k = g.exponents[0]
        if level == 0:
            if k % 2 == 0:
                return zeta_expr([zeta_term(U * U - ONE, [(2, k)])])
            return zeta_expr(
                [
                    zeta_term((U - ONE) * U, [(2, k)]),
                    zeta_term((U - ONE) ** 2, [(2, k), (1, 1)]),
                ]
            )
        if k == 2:
            if level == 1:
                return zeta_expr([zeta_term(U + ONE, [(2, 2)])])
            return zeta_expr([])  # a positive germ has zero minus-series

    raise UnsupportedComputationError(
        f"no closed form on record for {germ_to_str(g)} ({variant})"
    )


# ---------------------------------------------------------------------------
# convolution for sums of same-sign germs
# ---------------------------------------------------------------------------


def ts_coefficients(z: ZetaSeries) -> list[tuple[LaurentPoly, LaurentPoly]]:
    """Pairs (a_n, A_n) with A_n = 1 - sum(a_j, j <= n), for n = 1..order.

    A_n, scaled by the jet-space volume, is the invariant of the arcs whose
    composed order exceeds n; A_0 = 1 and A_n - A_(n-1) = -a_n.
    """
    out = []
    A = ONE
    for n in range(1, z.order + 1):
        a = z.coeff(n)
        A = A - a
        out.append((a, A))
    return out


def ts_convolve(zf: ZetaSeries, zg: ZetaSeries) -> ZetaSeries:
    """Coefficientwise convolution c_n = a_n B_n + A_n b_n + a_n b_n.

    A_n = 1 - sum(a_j, j <= n) and likewise B_n.  The identity computes the
    zeta function of f(x) + g(y) and is valid only when f and g are both
    positive or both negative; that hypothesis cannot be read off the series
    and remains the caller's responsibility.
    """
    if zf.order != zg.order:
        raise ValueError(
            f"mismatched truncation orders {zf.order} and {zg.order}"
        )
    coeffs: dict[int, LaurentPoly] = {}
    for n, ((a, A), (b, B)) in enumerate(
        zip(ts_coefficients(zf), ts_coefficients(zg)), start=1
    ):
        c = a * B + A * b + a * b
        if c:
            coeffs[n] = c
    return ZetaSeries(zf.order, coeffs)


# ---------------------------------------------------------------------------
# invariant comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantTriple:
    """The three series attached to one germ."""

    naive: ZetaSeries
    plus: ZetaSeries
    minus: ZetaSeries

    @property
    def order(self) -> int:
        return self.naive.order


def germ_invariants(g: Germ, order: int) -> InvariantTriple:
    return InvariantTriple(
        naive=zeta_direct(g, order, "naive"),
        plus=zeta_direct(g, order, "plus"),
        minus=zeta_direct(g, order, "minus"),
    )


@dataclass(frozen=True)
class Distinguished:
    """First witnessing coefficient where the two invariant triples differ."""

    series: str  # "naive", "plus" or "minus"
    index: int
    left: LaurentPoly
    right: LaurentPoly


@dataclass(frozen=True)
class NotDistinguished:
    """All compared coefficients agree up to the truncation order.

    This never certifies equivalence; the invariants are necessary, not
    sufficient.
    """

    order: int


def compare_invariants(
    left: InvariantTriple, right: InvariantTriple, order: int | None = None
) -> Distinguished | NotDistinguished:
    """Scan for the first differing coefficient, n ascending, naive first."""
    series = [
        ("naive", left.naive, right.naive),
        ("plus", left.plus, right.plus),
        ("minus", left.minus, right.minus),
    ]
    orders = {s.order for _, l, r in series for s in (l, r)}
    if order is None:
        if len(orders) != 1:
            raise ValueError("the six series must share a truncation order")
        order = orders.pop()
    elif order > min(orders):
        raise ValueError("requested order exceeds a series truncation")
    for n in range(1, order + 1):
        for name, l, r in series:
            cl = l.coeff(n)
            cr = r.coeff(n)
            if cl != cr:
                return Distinguished(series=name, index=n, left=cl, right=cr)
    return NotDistinguished(order=order)
