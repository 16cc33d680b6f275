"""Classification of two-variable Brieskorn germs e1*x^p + e2*y^q from zeta data.

The naive series determines the exponents: p is the first index with a
nonzero coefficient, and q is read off from the first index l where the
series stops agreeing with the reference series of a one-variable power x^p.
With normalized coefficients (each T^n coefficient carries the u^(-n*d)
factor), adding an inert variable leaves the coefficients unchanged, so the
reference comparison is plain equality g_n = a_n; the case split is

    q = l - 1  when p is odd, p divides l - 1, and the coefficient at l is
               not a single term (u-1)*u^k (k any integer),
    q = l      otherwise.

Signs are constrained by parity: replacing x by -x flips the sign of an odd
power without moving the germ's class, so odd exponents never determine a
sign.  For even p the sign of x^p is visible at index p of the plus series.
For an even q the sign of y^q is read by matching the sign series against
the two reference germs e_p*x^p +- y^q computed by the jet engine; a
vanishing test at one fixed index is not reliable for every sign pattern,
which is recorded in the report notes.  The one genuinely open case is
p odd with q an even multiple of p, where the class of the sign is unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ClassifyError
from .jets import DiagonalGerm, zeta_direct
from .ring import ONE, U, LaurentPoly, ZetaSeries


class SignValue(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
    UNDETERMINED = "undetermined"


class ClassStatus(str, Enum):
    DETERMINED = "determined"
    OPEN_CASE = "open_case"
    INCONSISTENT = "inconsistent"


#: Note emitted when neither candidate sign reproduces the input series.
NO_MATCHING_SIGN_NOTE = (
    "no candidate sign reproduces the sign series; the input may not come "
    "from a two-variable Brieskorn germ"
)


@dataclass(frozen=True)
class BrieskornClass:
    p: int | None
    q: int | None
    eps_p: SignValue
    eps_q: SignValue
    status: ClassStatus
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "eps_p": self.eps_p.value,
            "eps_q": self.eps_q.value,
            "status": self.status.value,
            "notes": list(self.notes),
        }


def _is_single_u_minus_1_term(c: LaurentPoly) -> bool:
    # matches (u-1) * u^k for some integer k
    if c.is_zero():
        return False
    low = c.low_degree
    return c.shift(-low) == U - ONE


def recover_p(z: ZetaSeries) -> int:
    """Smallest index with a nonzero coefficient."""
    support = z.support()
    if not support:
        raise ClassifyError(
            f"all coefficients vanish up to order {z.order}; cannot classify"
        )
    return support[0]


def _reference_power_series(p: int, order: int) -> ZetaSeries:
    # naive zeta of a one-variable p-th power (sign irrelevant for naive)
    return zeta_direct(DiagonalGerm(terms=((1, p),)), order)


def recover_q(z: ZetaSeries, p: int) -> int:
    """Recover q by comparing against the reference series of x^p."""
    ref = _reference_power_series(p, z.order)
    l = None
    for n in range(1, z.order + 1):
        if z.coeff(n) != ref.coeff(n):
            l = n
            break
    if l is None:
        raise ClassifyError(
            f"series agrees with a pure power of order {p} up to T^{z.order}; "
            "truncation too small to recover q"
        )
    if p % 2 == 1 and (l - 1) % p == 0 and not _is_single_u_minus_1_term(z.coeff(l)):
        return l - 1
    return l


def recover_signs(
    zplus: ZetaSeries, zminus: ZetaSeries, p: int, q: int
) -> tuple[SignValue, SignValue, tuple[str, ...]]:
    """Determine the two signs as far as the parity rules allow."""
    notes: list[str] = []
    if p % 2 == 1:
        eps_p = SignValue.UNDETERMINED
    elif zplus.coeff(p):
        eps_p = SignValue.PLUS
    else:
        eps_p = SignValue.MINUS

    if q % 2 == 1:
        eps_q = SignValue.UNDETERMINED
    elif p % 2 == 1 and q % p == 0:
        eps_q = SignValue.UNDETERMINED  # the open case; see classify()
    else:
        e1 = -1 if eps_p is SignValue.MINUS else 1
        order = min(zplus.order, zminus.order)
        matches = []
        for e2 in (1, -1):
            candidate = DiagonalGerm(terms=((e1, p), (e2, q)))
            ref_plus = zeta_direct(candidate, order, "plus")
            ref_minus = zeta_direct(candidate, order, "minus")
            if ref_plus == zplus.truncate(order) and ref_minus == zminus.truncate(order):
                matches.append(e2)
        if len(matches) == 1:
            eps_q = SignValue.PLUS if matches[0] == 1 else SignValue.MINUS
            notes.append(
                "eps_q determined by matching the sign series against the two "
                "reference germs (a vanishing test at a single fixed index is "
                "not reliable for every sign pattern)"
            )
        elif len(matches) == 2:
            eps_q = SignValue.UNDETERMINED
            notes.append("both candidate signs reproduce the sign series")
        else:
            eps_q = SignValue.UNDETERMINED
            notes.append(NO_MATCHING_SIGN_NOTE)
    return eps_p, eps_q, tuple(notes)


def classify(
    z: ZetaSeries, zplus: ZetaSeries, zminus: ZetaSeries
) -> BrieskornClass:
    """Assemble the full classification report from the three series."""

    def inconsistent(note: str, p=None, q=None) -> BrieskornClass:
        return BrieskornClass(
            p=p,
            q=q,
            eps_p=SignValue.UNDETERMINED,
            eps_q=SignValue.UNDETERMINED,
            status=ClassStatus.INCONSISTENT,
            notes=(note,),
        )

    if not (z.order == zplus.order == zminus.order):
        return inconsistent("the three series must share a truncation order")
    try:
        p = recover_p(z)
    except ClassifyError as exc:
        return inconsistent(str(exc))
    if p == 1:
        return inconsistent(
            "p = 1: the germ is equivalent to a coordinate and lies outside "
            "the classification", p=1,
        )
    try:
        q = recover_q(z, p)
    except ClassifyError as exc:
        return inconsistent(str(exc), p=p)
    if z.order < 2 * q + 2:
        return inconsistent(
            f"truncation order {z.order} too small: classification needs at "
            f"least {2 * q + 2}", p=p, q=q,
        )
    eps_p, eps_q, notes = recover_signs(zplus, zminus, p, q)
    if NO_MATCHING_SIGN_NOTE in notes:
        return BrieskornClass(
            p=p, q=q, eps_p=eps_p, eps_q=eps_q,
            status=ClassStatus.INCONSISTENT, notes=notes,
        )
    open_case = p % 2 == 1 and q % p == 0 and (q // p) % 2 == 0
    if open_case:
        notes = notes + (
            "p odd with q an even multiple of p: whether the sign of the "
            "second term moves the class is not known",
        )
    return BrieskornClass(
        p=p,
        q=q,
        eps_p=eps_p,
        eps_q=eps_q,
        status=ClassStatus.OPEN_CASE if open_case else ClassStatus.DETERMINED,
        notes=notes,
    )
