"""Virtual Poincare polynomial calculus on constructible piece descriptions.

A piece description is a tree of disjoint unions, products and asserted
differences over a small alphabet of atoms (affine spaces, tori, punctured
affine spaces, finite point sets, projective spaces, spheres, and custom
pieces with a stored value).  The invariant beta assigns to each piece a
Laurent polynomial that is additive over disjoint unions and differences and
multiplicative over products, with deg(beta) equal to the dimension.

Two oracles keep the symbolic values honest: an exact F_q point count for
the atoms whose counts are polynomial in q, and Lagrange interpolation of
those counts back to a polynomial that must reproduce beta.

Everything here is immutable and side-effect free.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import InputError, UnsupportedComputationError
from .ring import ONE, U, ZERO, LaurentPoly, format_poly, parse_poly

# ---------------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Affine:
    """R^m; beta = u^m."""

    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("dimension must be nonnegative")


@dataclass(frozen=True)
class Torus:
    """(R*)^k; beta = (u-1)^k."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("rank must be nonnegative")


@dataclass(frozen=True)
class PuncturedAffine:
    """R^m minus the origin; beta = u^m - 1."""

    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("dimension must be nonnegative")


@dataclass(frozen=True)
class Points:
    """c isolated points; beta = c."""

    c: int

    def __post_init__(self):
        if self.c < 0:
            raise ValueError("point count must be nonnegative")


@dataclass(frozen=True)
class ProjSpace:
    """Real projective k-space; beta = 1 + u + ... + u^k."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("dimension must be nonnegative")


@dataclass(frozen=True)
class Sphere:
    """The k-sphere; beta = u^k + 1.

    The value follows from invariance of beta under Nash isomorphisms: any
    definite diagonal level set is Nash-isomorphic to the round sphere, and
    a compact nonsingular set takes its mod-2 Betti numbers as beta.  This
    is a derived rule of the calculus, not one of the base atoms' counting
    formulas; see :func:`count_points` for the consequences.
    """

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("dimension must be nonnegative")


@dataclass(frozen=True)
class Custom:
    """A piece with externally supplied invariant (and optional count rule).

    ``count_poly``, when present, is evaluated at q to count F_q points.
    """

    name: str
    beta: LaurentPoly
    dim: int
    count_poly: LaurentPoly | None = None

    def __post_init__(self):
        if self.beta and self.beta.degree != self.dim:
            raise ValueError(
                f"custom piece {self.name!r}: deg(beta) = {self.beta.degree} "
                f"does not equal the declared dimension {self.dim}"
            )


Atom = Union[Affine, Torus, PuncturedAffine, Points, ProjSpace, Sphere, Custom]


@dataclass(frozen=True)
class DisjointUnion:
    parts: tuple["PieceExpr", ...]


@dataclass(frozen=True)
class Product:
    parts: tuple["PieceExpr", ...]


@dataclass(frozen=True)
class Difference:
    """whole minus part; containment is asserted by the caller.

    Only the necessary degree conditions are checked (containment of
    abstract descriptions is not decidable at this level).
    """

    whole: "PieceExpr"
    part: "PieceExpr"


PieceExpr = Union[Atom, DisjointUnion, Product, Difference]


def union(*parts: PieceExpr) -> DisjointUnion:
    return DisjointUnion(tuple(parts))


def product(*parts: PieceExpr) -> Product:
    return Product(tuple(parts))


def difference(whole: PieceExpr, part: PieceExpr) -> Difference:
    return Difference(whole, part)


# ---------------------------------------------------------------------------
# beta
# ---------------------------------------------------------------------------


def beta_atom(a: Atom) -> LaurentPoly:
    """The virtual Poincare polynomial of a single atom."""
    if isinstance(a, Affine):
        return LaurentPoly.u_power(a.m)
    if isinstance(a, Torus):
        return (U - ONE) ** a.k
    if isinstance(a, PuncturedAffine):
        return LaurentPoly.u_power(a.m) - ONE
    if isinstance(a, Points):
        return LaurentPoly.const(a.c)
    if isinstance(a, ProjSpace):
        return LaurentPoly({i: 1 for i in range(a.k + 1)})
    if isinstance(a, Sphere):
        return LaurentPoly.u_power(a.k) + ONE
    if isinstance(a, Custom):
        return a.beta
    raise TypeError(f"not an atom: {a!r}")


def beta_expr(e: PieceExpr) -> LaurentPoly:
    """Structural evaluation: unions add, products multiply, differences subtract."""
    if isinstance(e, DisjointUnion):
        total = ZERO
        for p in e.parts:
            total = total + beta_expr(p)
        return total
    if isinstance(e, Product):
        total = ONE
        for p in e.parts:
            total = total * beta_expr(p)
        return total
    if isinstance(e, Difference):
        bw = beta_expr(e.whole)
        bp = beta_expr(e.part)
        if bp and (not bw or bp.degree > bw.degree):
            raise ValueError(
                "difference degree check failed: the subtracted part has "
                "larger dimension than the whole"
            )
        result = bw - bp
        if result and bw and result.degree > bw.degree:
            raise ValueError("difference degree check failed")
        return result
    return beta_atom(e)


def expr_dim(e: PieceExpr) -> int:
    """Dimension read off the structure of the description (-1 for empty)."""
    if isinstance(e, DisjointUnion):
        dims = [expr_dim(p) for p in e.parts]
        return max(dims, default=-1)
    if isinstance(e, Product):
        dims = [expr_dim(p) for p in e.parts]
        if any(d < 0 for d in dims):
            return -1
        return sum(dims)
    if isinstance(e, Difference):
        return expr_dim(e.whole)
    if isinstance(e, Affine):
        return e.m
    if isinstance(e, Torus):
        return e.k
    if isinstance(e, PuncturedAffine):
        return e.m if e.m >= 1 else -1
    if isinstance(e, Points):
        return 0 if e.c >= 1 else -1
    if isinstance(e, ProjSpace):
        return e.k
    if isinstance(e, Sphere):
        return e.k
    if isinstance(e, Custom):
        return e.dim if e.beta else -1
    raise TypeError(f"not a piece expression: {e!r}")


# ---------------------------------------------------------------------------
# blow-up relation
# ---------------------------------------------------------------------------


def blowup_solve(
    beta_x: LaurentPoly | None = None,
    beta_c: LaurentPoly | None = None,
    beta_e: LaurentPoly | None = None,
    beta_bl: LaurentPoly | None = None,
) -> LaurentPoly:
    """Solve the blow-up relation beta(Bl) - beta(E) = beta(X) - beta(C).

    Exactly three of the four values must be given; returns the fourth.
    """
    values = {"X": beta_x, "C": beta_c, "E": beta_e, "Bl": beta_bl}
    missing = [k for k, v in values.items() if v is None]
    if len(missing) != 1:
        raise ValueError(
            f"exactly one unknown required, got {len(missing)} "
            f"({', '.join(missing) or 'none'})"
        )
    x, c, e, bl = values["X"], values["C"], values["E"], values["Bl"]
    match missing[0]:
        case "Bl":
            return x - c + e
        case "X":
            return bl - e + c
        case "C":
            return x - bl + e
        case _:
            return bl - x + c


# ---------------------------------------------------------------------------
# F_q point counting and interpolation
# ---------------------------------------------------------------------------


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    n = q
    p = None
    d = 2
    while d * d <= n:
        if n % d == 0:
            p = d
            while n % d == 0:
                n //= d
            break
        d += 1
    if p is None:
        return True  # q itself is prime
    return n == 1


def _count_circle(q: int) -> int:
    # honest enumeration of x^2 + y^2 = 1 over F_q
    squares = [x * x % q for x in range(q)]
    return sum(1 for x in range(q) for y in range(q) if (squares[x] + squares[y]) % q == 1)


def count_points(e: PieceExpr, q: int) -> int:
    """Number of F_q points of the piece description.

    For all atoms except Sphere the count is polynomial in q and equals
    beta evaluated at q.  Sphere(k) is counted from the genuine circle
    quadric and only for k <= 1 with q = 3 mod 4, where x^2 + y^2 = 0
    forces x = y = 0 and the count matches the real constructible
    structure; higher spheres have no uniform algebraic count matching
    beta and are rejected.
    """
    if not isinstance(q, int) or not is_prime_power(q):
        raise ValueError(f"q must be a prime power, got {q!r}")
    if isinstance(e, DisjointUnion):
        return sum(count_points(p, q) for p in e.parts)
    if isinstance(e, Product):
        total = 1
        for p in e.parts:
            total *= count_points(p, q)
        return total
    if isinstance(e, Difference):
        return count_points(e.whole, q) - count_points(e.part, q)
    if isinstance(e, Affine):
        return q**e.m
    if isinstance(e, Torus):
        return (q - 1) ** e.k
    if isinstance(e, PuncturedAffine):
        return q**e.m - 1
    if isinstance(e, Points):
        return e.c
    if isinstance(e, ProjSpace):
        return sum(q**i for i in range(e.k + 1))
    if isinstance(e, Sphere):
        if q % 4 != 3:
            raise UnsupportedComputationError(
                f"sphere counting requires q = 3 mod 4, got q = {q}"
            )
        if e.k == 0:
            return sum(1 for x in range(q) if x * x % q == 1)
        if e.k == 1:
            return _count_circle(q)
        raise UnsupportedComputationError(
            f"no uniform F_q count matches beta for Sphere({e.k}); "
            "only k <= 1 is countable"
        )
    if isinstance(e, Custom):
        if e.count_poly is None:
            raise UnsupportedComputationError(
                f"custom piece {e.name!r} carries no count rule"
            )
        value = e.count_poly.evaluate(q)
        if value.denominator != 1:
            raise UnsupportedComputationError(
                f"count rule of {e.name!r} is not integral at q = {q}"
            )
        return int(value)
    raise TypeError(f"not a piece expression: {e!r}")


def _lagrange_interpolate(points: list[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (ascending) of the interpolating polynomial."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        # numerator polynomial prod_{j != i} (X - xj), built incrementally
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            denom *= xi - xj
            new = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                new[k] -= b * xj
                new[k + 1] += b
            basis = new
        scale = Fraction(yi) / denom
        for k, b in enumerate(basis):
            coeffs[k] += b * scale
    return coeffs


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    witness: LaurentPoly | None
    expected: LaurentPoly
    counts: tuple[tuple[int, int], ...]
    message: str = ""


def verify_polynomial_count(e: PieceExpr, qs: list[int]) -> VerificationResult:
    """Interpolate F_q counts to a polynomial in q and compare with beta.

    Needs at least deg(beta) + 1 pairwise distinct prime powers.
    """
    if len(set(qs)) != len(qs):
        raise ValueError("q values must be pairwise distinct")
    expected = beta_expr(e)
    needed = (expected.degree if expected else 0) + 1
    if len(qs) < needed:
        raise ValueError(
            f"interpolation degree exceeded: need at least {needed} q values, "
            f"got {len(qs)}"
        )
    counts = tuple((q, count_points(e, q)) for q in sorted(qs))
    coeffs = _lagrange_interpolate([(q, c) for q, c in counts])
    if any(c.denominator != 1 for c in coeffs):
        return VerificationResult(
            ok=False,
            witness=None,
            expected=expected,
            counts=counts,
            message="counts do not interpolate to an integer polynomial",
        )
    witness = LaurentPoly({i: int(c) for i, c in enumerate(coeffs)})
    if witness == expected:
        return VerificationResult(True, witness, expected, counts)
    return VerificationResult(
        ok=False,
        witness=witness,
        expected=expected,
        counts=counts,
        message=f"interpolated {format_poly(witness)} but beta is {format_poly(expected)}",
    )


# ---------------------------------------------------------------------------
# scripts: named chains of beta computations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ref:
    """Reference to a previously defined script symbol."""

    name: str


ScriptExpr = Union[PieceExpr, Ref, DisjointUnion, Product, Difference]


@dataclass(frozen=True)
class ExprDef:
    name: str
    expr: ScriptExpr


@dataclass(frozen=True)
class BlowupDef:
    """One blow-up relation step; the solved slot is bound to ``name``."""

    name: str
    solve_for: str  # one of X, C, E, Bl
    given: tuple[tuple[str, ScriptExpr], ...]  # the other three slots


@dataclass(frozen=True)
class BetaScript:
    defs: tuple[Union[ExprDef, BlowupDef], ...] = field(default_factory=tuple)


class _ScriptEnv:
    def __init__(self):
        self.values: dict[str, LaurentPoly] = {}

    def eval(self, e: ScriptExpr) -> LaurentPoly:
        if isinstance(e, Ref):
            if e.name not in self.values:
                raise InputError(f"undefined symbol {e.name!r}")
            return self.values[e.name]
        if isinstance(e, DisjointUnion):
            total = ZERO
            for p in e.parts:
                total = total + self.eval(p)
            return total
        if isinstance(e, Product):
            total = ONE
            for p in e.parts:
                total = total * self.eval(p)
            return total
        if isinstance(e, Difference):
            bw = self.eval(e.whole)
            bp = self.eval(e.part)
            if bp and (not bw or bp.degree > bw.degree):
                raise ValueError(
                    f"difference degree check failed in script "
                    f"({format_poly(bw)} minus {format_poly(bp)})"
                )
            return bw - bp
        return beta_atom(e)


def run_script(script: BetaScript) -> dict[str, LaurentPoly]:
    """Evaluate the definitions top to bottom; returns every named value."""
    env = _ScriptEnv()
    slots = ("X", "C", "E", "Bl")
    for d in script.defs:
        if d.name in env.values:
            raise InputError(f"symbol {d.name!r} defined twice")
        if isinstance(d, ExprDef):
            env.values[d.name] = env.eval(d.expr)
            continue
        if d.solve_for not in slots:
            raise InputError(f"blow-up step solves for unknown slot {d.solve_for!r}")
        given = dict(d.given)
        if set(given) != set(slots) - {d.solve_for}:
            raise InputError(
                f"blow-up step for {d.name!r} must give exactly the three "
                f"slots other than {d.solve_for!r}"
            )
        kwargs = {
            "beta_x": env.eval(given["X"]) if "X" in given else None,
            "beta_c": env.eval(given["C"]) if "C" in given else None,
            "beta_e": env.eval(given["E"]) if "E" in given else None,
            "beta_bl": env.eval(given["Bl"]) if "Bl" in given else None,
        }
        env.values[d.name] = blowup_solve(**kwargs)
    return dict(env.values)


# ---------------------------------------------------------------------------
# JSON (de)serialization of scripts and expressions
# ---------------------------------------------------------------------------

_ATOM_KEYS = {
    "affine": Affine,
    "torus": Torus,
    "punctured_affine": PuncturedAffine,
    "points": Points,
    "proj_space": ProjSpace,
    "sphere": Sphere,
}


def atom_from_json(obj: dict) -> Atom:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError(f"an atom object must have exactly one key: {obj!r}")
    (key, value), = obj.items()
    if key in _ATOM_KEYS:
        return _ATOM_KEYS[key](int(value))
    if key == "custom":
        try:
            count = value.get("count")
            return Custom(
                name=value["name"],
                beta=parse_poly(value["beta"]),
                dim=int(value["dim"]),
                count_poly=parse_poly(count) if count is not None else None,
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad custom atom {value!r}: {exc}") from exc
    raise InputError(f"unknown atom kind {key!r}")


_ATOM_PARAM = {
    Affine: ("affine", "m"),
    Torus: ("torus", "k"),
    PuncturedAffine: ("punctured_affine", "m"),
    Points: ("points", "c"),
    ProjSpace: ("proj_space", "k"),
    Sphere: ("sphere", "k"),
}


def atom_to_json(a: Atom) -> dict:
    if isinstance(a, Custom):
        body = {"name": a.name, "beta": format_poly(a.beta), "dim": a.dim}
        if a.count_poly is not None:
            body["count"] = format_poly(a.count_poly)
        return {"custom": body}
    entry = _ATOM_PARAM.get(type(a))
    if entry is None:
        raise TypeError(f"not an atom: {a!r}")
    key, attr = entry
    return {key: getattr(a, attr)}


def expr_from_json(node: dict) -> ScriptExpr:
    if not isinstance(node, dict) or len(node) != 1:
        raise InputError(f"an expression node must have exactly one key: {node!r}")
    (key, value), = node.items()
    if key == "atom":
        return atom_from_json(value)
    if key == "ref":
        return Ref(str(value))
    if key == "union":
        return DisjointUnion(tuple(expr_from_json(v) for v in value))
    if key == "product":
        return Product(tuple(expr_from_json(v) for v in value))
    if key == "difference":
        if len(value) != 2:
            raise InputError("difference takes exactly [whole, part]")
        return Difference(expr_from_json(value[0]), expr_from_json(value[1]))
    raise InputError(f"unknown expression node {key!r}")


def expr_to_json(e: ScriptExpr) -> dict:
    if isinstance(e, Ref):
        return {"ref": e.name}
    if isinstance(e, DisjointUnion):
        return {"union": [expr_to_json(p) for p in e.parts]}
    if isinstance(e, Product):
        return {"product": [expr_to_json(p) for p in e.parts]}
    if isinstance(e, Difference):
        return {"difference": [expr_to_json(e.whole), expr_to_json(e.part)]}
    return {"atom": atom_to_json(e)}


def script_from_json(data: dict | str) -> BetaScript:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad script JSON: {exc}") from exc
    try:
        raw_defs = data["defs"]
    except (KeyError, TypeError) as exc:
        raise InputError("a script document needs a 'defs' list") from exc
    defs: list[ExprDef | BlowupDef] = []
    for raw in raw_defs:
        try:
            name = raw["name"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"script definition without a name: {raw!r}") from exc
        if "expr" in raw:
            defs.append(ExprDef(name=name, expr=expr_from_json(raw["expr"])))
        elif "blowup" in raw:
            blow = dict(raw["blowup"])
            solve_for = blow.pop("solve_for", None)
            if solve_for is None:
                raise InputError(f"blow-up step {name!r} lacks 'solve_for'")
            given = tuple(
                (slot, expr_from_json(node)) for slot, node in sorted(blow.items())
            )
            defs.append(BlowupDef(name=name, solve_for=solve_for, given=given))
        else:
            raise InputError(f"definition {name!r} needs 'expr' or 'blowup'")
    return BetaScript(defs=tuple(defs))


def script_to_json(script: BetaScript) -> dict:
    out = []
    for d in script.defs:
        if isinstance(d, ExprDef):
            out.append({"name": d.name, "expr": expr_to_json(d.expr)})
        else:
            body = {slot: expr_to_json(e) for slot, e in d.given}
            body["solve_for"] = d.solve_for
            out.append({"name": d.name, "blowup": body})
    return {"defs": out}
