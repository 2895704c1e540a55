"""Semiring handles: Bool, exact non-negative rationals, and naturals.

A semiring here is a carrier with an associative commutative addition
(unit ``zero``), an associative multiplication (unit ``one``) that
distributes over addition, and ``zero`` annihilating products.  The
three instances are

* ``bool``  - {0, 1} with join as addition and meet as multiplication,
* ``qplus`` - non-negative rationals in lowest terms (exact, no floats),
* ``nat``   - arbitrary-precision naturals.

``bool`` and ``qplus`` are positive semifields (nonzero elements are
invertible and a+b = 0 forces a = b = 0); ``nat`` is positive but not a
semifield and is kept around because its addition makes every subset of
a free semimodule convex, the regime in which the distributive law is
strong rather than weak.

Scalars are plain Python values: ints 0/1 for bool, ``fractions.Fraction``
for qplus, ints for nat.  All arithmetic is exact; nothing in this
package ever compares against a tolerance.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Any, Iterable, Iterator

from .errors import (
    ConvexmodError,
    NoDecisionProcedureError,
    NotInvertibleError,
    NotRefinementInstanceError,
    NotSemifieldError,
)
from .report import (
    FAIL,
    LawReport,
    MODE_BOUNDED,
    MODE_BY_THEOREM,
    MODE_EXHAUSTIVE,
    PASS,
)

Scalar = Any  # int for bool/nat, Fraction for qplus

PROPERTY_TAGS = ("positive", "semifield", "refinable", "A", "B", "C", "D", "E")


class Semiring:
    """Handle bundling the operations and metadata of one instance.

    Handles are stateless singletons; compare them by ``id``.
    """

    id: str = ""
    declared_properties: frozenset[str] = frozenset()
    is_semifield: bool = False

    # -- arithmetic -----------------------------------------------------

    @property
    def zero(self) -> Scalar:
        raise NotImplementedError

    @property
    def one(self) -> Scalar:
        raise NotImplementedError

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def sum(self, values: Iterable[Scalar]) -> Scalar:
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def is_zero(self, a: Scalar) -> bool:
        return a == self.zero

    # -- scalar validation / formatting ---------------------------------

    def validate(self, a: Scalar) -> Scalar:
        """Return the canonical internal form of ``a`` or raise."""
        raise NotImplementedError

    def parse_scalar(self, text: str) -> Scalar:
        """Parse ``p`` or ``p/q`` (qplus/nat) or ``0``/``1`` (bool)."""
        raise NotImplementedError

    def format_scalar(self, a: Scalar) -> str:
        return str(a)

    def scalar_to_json(self, a: Scalar) -> Any:
        """JSON value per the wire format: "p/q" | int | bool."""
        raise NotImplementedError

    def scalar_from_json(self, value: Any) -> Scalar:
        raise NotImplementedError

    # -- finite enumeration (decision procedures) ------------------------

    def carrier(self, bound: int | None) -> list[Scalar]:
        """The finite (sub)carrier used by brute-force property checks."""
        raise NoDecisionProcedureError(
            f"no decision procedure: semiring {self.id} has no finite carrier"
        )

    def __repr__(self) -> str:
        return f"Semiring({self.id})"


class _BoolSemiring(Semiring):
    id = "bool"
    is_semifield = True
    # A fails (1+1=1) and C fails (1+1 = 1+0); everything else holds and
    # is confirmed exhaustively by check_property.
    declared_properties = frozenset(
        {"positive", "semifield", "refinable", "B", "D", "E"})

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return a | b

    def mul(self, a: int, b: int) -> int:
        return a & b

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise NotInvertibleError("not invertible: division by zero")
        return a

    def validate(self, a: Scalar) -> int:
        if isinstance(a, bool):
            return int(a)
        if isinstance(a, int) and a in (0, 1):
            return a
        raise ConvexmodError(f"invalid bool scalar: {a!r}")

    def parse_scalar(self, text: str) -> int:
        t = text.strip()
        if t in ("0", "false"):
            return 0
        if t in ("1", "true"):
            return 1
        raise ConvexmodError(f"invalid bool scalar literal: {text!r}")

    def scalar_to_json(self, a: int) -> bool:
        return bool(a)

    def scalar_from_json(self, value: Any) -> int:
        if isinstance(value, bool):
            return int(value)
        if value in (0, 1):
            return int(value)
        if isinstance(value, str):
            return self.parse_scalar(value)
        raise ConvexmodError(f"invalid bool scalar in JSON: {value!r}")

    def carrier(self, bound: int | None) -> list[int]:
        return [0, 1]


class _QplusSemiring(Semiring):
    id = "qplus"
    is_semifield = True
    declared_properties = frozenset(
        {"positive", "semifield", "refinable", "B", "E"})

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        if b == 0:
            raise NotInvertibleError("not invertible: division by zero")
        return a / b

    def validate(self, a: Scalar) -> Fraction:
        if isinstance(a, bool):
            raise ConvexmodError(f"invalid qplus scalar: {a!r}")
        if isinstance(a, int):
            a = Fraction(a)
        if not isinstance(a, Fraction):
            raise ConvexmodError(f"invalid qplus scalar: {a!r}")
        if a < 0:
            raise ConvexmodError(f"qplus scalar must be non-negative: {a}")
        return a

    def parse_scalar(self, text: str) -> Fraction:
        t = text.strip()
        try:
            value = Fraction(t)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConvexmodError(f"invalid rational literal: {text!r}") from exc
        if value < 0:
            raise ConvexmodError(f"rational must be non-negative: {text!r}")
        return value

    def format_scalar(self, a: Fraction) -> str:
        return str(a)  # Fraction prints p/q, or p when q == 1

    def scalar_to_json(self, a: Fraction) -> str:
        return str(a)

    def scalar_from_json(self, value: Any) -> Fraction:
        if isinstance(value, bool):
            raise ConvexmodError(f"invalid qplus scalar in JSON: {value!r}")
        if isinstance(value, int):
            return self.validate(Fraction(value))
        if isinstance(value, str):
            return self.parse_scalar(value)
        raise ConvexmodError(f"invalid qplus scalar in JSON: {value!r}")

    def carrier(self, bound: int | None) -> list[Fraction]:
        raise NoDecisionProcedureError(
            "no decision procedure: qplus carrier is infinite")


class _NatSemiring(Semiring):
    id = "nat"
    is_semifield = False
    declared_properties = frozenset(
        {"positive", "refinable", "A", "B", "C", "D", "E"})

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return a + b

    def mul(self, a: int, b: int) -> int:
        return a * b

    def div(self, a: int, b: int) -> int:
        raise NotSemifieldError("not a semifield: nat has no division")

    def validate(self, a: Scalar) -> int:
        if isinstance(a, bool) or not isinstance(a, int):
            raise ConvexmodError(f"invalid nat scalar: {a!r}")
        if a < 0:
            raise ConvexmodError(f"nat scalar must be non-negative: {a}")
        return a

    def parse_scalar(self, text: str) -> int:
        t = text.strip()
        if not t.isdigit():
            raise ConvexmodError(f"invalid natural literal: {text!r}")
        return int(t)

    def scalar_to_json(self, a: int) -> int:
        return a

    def scalar_from_json(self, value: Any) -> int:
        if isinstance(value, bool):
            raise ConvexmodError(f"invalid nat scalar in JSON: {value!r}")
        if isinstance(value, int):
            return self.validate(value)
        if isinstance(value, str):
            return self.parse_scalar(value)
        raise ConvexmodError(f"invalid nat scalar in JSON: {value!r}")

    def carrier(self, bound: int | None) -> list[int]:
        if bound is None or bound < 1:
            raise ConvexmodError("nat enumeration needs a bound > 0")
        return list(range(bound + 1))


BOOL = _BoolSemiring()
QPLUS = _QplusSemiring()
NAT = _NatSemiring()

SEMIRINGS: dict[str, Semiring] = {s.id: s for s in (BOOL, QPLUS, NAT)}


def get_semiring(semiring_id: str) -> Semiring:
    try:
        return SEMIRINGS[semiring_id]
    except KeyError:
        raise ConvexmodError(
            f"unknown semiring {semiring_id!r}; expected one of "
            f"{sorted(SEMIRINGS)}") from None


# ---------------------------------------------------------------------------
# arith
# ---------------------------------------------------------------------------

def arith(sr: Semiring, op: str, a: Scalar, b: Scalar) -> Scalar:
    """Apply one semiring operation.  ``op`` is add, mul, or div.

    Division is defined only on semifield instances with nonzero
    divisor; it raises "not invertible" on a zero divisor and
    "not a semifield" on nat.
    """
    a = sr.validate(a)
    b = sr.validate(b)
    if op == "add":
        return sr.add(a, b)
    if op == "mul":
        return sr.mul(a, b)
    if op == "div":
        return sr.div(a, b)
    raise ConvexmodError(f"unknown operation {op!r}; expected add|mul|div")


# ---------------------------------------------------------------------------
# refinement witness
# ---------------------------------------------------------------------------

def refinement_witness(sr: Semiring, a: Scalar, b: Scalar,
                       c: Scalar, d: Scalar) -> tuple[Scalar, ...]:
    """Split a+b = c+d into a 2x2 grid x, y, z, t with matching margins.

    Returns (x, y, z, t) with x+y = a, z+t = b, x+z = c, y+t = d.  On a
    positive semifield the witness is x = ac/(c+d), y = ad/(c+d),
    z = bc/(c+d), t = bd/(c+d); when a+b = 0 positivity forces all four
    to be zero.
    """
    a, b, c, d = (sr.validate(v) for v in (a, b, c, d))
    if sr.add(a, b) != sr.add(c, d):
        raise NotRefinementInstanceError(
            "not a refinement instance: a+b != c+d")
    if not sr.is_semifield:
        raise NotSemifieldError(
            "not a semifield: refinement witness needs division")
    s = sr.add(c, d)
    if sr.is_zero(s):
        z0 = sr.zero
        return (z0, z0, z0, z0)
    x = sr.div(sr.mul(a, c), s)
    y = sr.div(sr.mul(a, d), s)
    z = sr.div(sr.mul(b, c), s)
    t = sr.div(sr.mul(b, d), s)
    return (x, y, z, t)


# ---------------------------------------------------------------------------
# property checking (Table-2 style properties)
# ---------------------------------------------------------------------------

def _pairs_summing_to(sr: Semiring, values: list[Scalar],
                      d: Scalar) -> list[tuple[Scalar, Scalar]]:
    return [(x, y) for x in values for y in values if sr.add(x, y) == d]


def _check_positive(sr: Semiring, values: list[Scalar]) -> dict | None:
    for a, b in itertools.product(values, repeat=2):
        if sr.is_zero(sr.add(a, b)) and not (sr.is_zero(a) and sr.is_zero(b)):
            return {"a": a, "b": b, "a+b": sr.add(a, b)}
    return None


def _check_semifield(sr: Semiring, values: list[Scalar]) -> dict | None:
    for a in values:
        if sr.is_zero(a):
            continue
        if not any(sr.mul(a, x) == sr.one and sr.mul(x, a) == sr.one
                   for x in values):
            return {"a": a, "detail": "no inverse among enumerated values"}
    return None


def _check_refinable(sr: Semiring, values: list[Scalar]) -> dict | None:
    # Witness search factors: (x,y) must sum to a and (z,t) to b, so
    # enumerate those two pair sets instead of the full quadruple grid.
    by_sum: dict[Scalar, list[tuple[Scalar, Scalar]]] = {}
    for x, y in itertools.product(values, repeat=2):
        by_sum.setdefault(sr.add(x, y), []).append((x, y))
    for a, b, c, d in itertools.product(values, repeat=4):
        if sr.add(a, b) != sr.add(c, d):
            continue
        found = any(
            sr.add(x, z) == c and sr.add(y, t) == d
            for x, y in by_sum.get(a, ())
            for z, t in by_sum.get(b, ()))
        if not found:
            return {"a": a, "b": b, "c": c, "d": d}
    return None


def _check_A(sr: Semiring, values: list[Scalar]) -> dict | None:
    for a, b in itertools.product(values, repeat=2):
        if sr.add(a, b) == sr.one and not (sr.is_zero(a) or sr.is_zero(b)):
            return {"a": a, "b": b, "a+b": sr.one}
    return None


def _check_B(sr: Semiring, values: list[Scalar]) -> dict | None:
    for a, b in itertools.product(values, repeat=2):
        if sr.is_zero(sr.mul(a, b)) and not (sr.is_zero(a) or sr.is_zero(b)):
            return {"a": a, "b": b}
    return None


def _check_C(sr: Semiring, values: list[Scalar]) -> dict | None:
    for a, b, c in itertools.product(values, repeat=3):
        if sr.add(a, b) == sr.add(a, c) and b != c:
            return {"a": a, "b": b, "c": c,
                    "a+b": sr.add(a, b), "a+c": sr.add(a, c)}
    return None


def _check_D(sr: Semiring, values: list[Scalar]) -> dict | None:
    for a, b in itertools.product(values, repeat=2):
        if not any(sr.add(a, x) == b or sr.add(b, x) == a for x in values):
            return {"a": a, "b": b}
    return None


def _weightings(sr: Semiring, values: list[Scalar], count: int,
                total: Scalar) -> Iterator[tuple[Scalar, ...]]:
    """All tuples of carrier values of the given length summing to
    ``total``.  Over nat a running sum above the target cannot recover
    (addition is monotone), so the search backtracks there; over bool
    the full product is tiny and filtered directly."""
    if sr.id == "nat":
        def rec(prefix: tuple, remaining: int, acc: int):
            if remaining == 0:
                if acc == total:
                    yield prefix
                return
            for v in values:
                if acc + v > total:
                    break
                yield from rec(prefix + (v,), remaining - 1, acc + v)
        yield from rec((), count, 0)
        return
    for weights in itertools.product(values, repeat=count):
        if sr.sum(weights) == total:
            yield weights


def _check_E(sr: Semiring, values: list[Scalar]) -> dict | None:
    """a+b = cd implies a weighting t over {(x,y) : x+y = d} with
    marginal sums a, b and total weight c.  The function space for t is
    enumerated over the same finite value list."""
    for a, b, c, d in itertools.product(values, repeat=4):
        if sr.add(a, b) != sr.mul(c, d):
            continue
        pairs = _pairs_summing_to(sr, values, d)
        found = False
        for weights in _weightings(sr, values, len(pairs), c):
            wx = sr.sum(sr.mul(w, x) for w, (x, _) in zip(weights, pairs))
            wy = sr.sum(sr.mul(w, y) for w, (_, y) in zip(weights, pairs))
            if wx == a and wy == b:
                found = True
                break
        if not found:
            return {"a": a, "b": b, "c": c, "d": d, "pairs": pairs}
    return None


_PROPERTY_CHECKS = {
    "positive": _check_positive,
    "semifield": _check_semifield,
    "refinable": _check_refinable,
    "A": _check_A,
    "B": _check_B,
    "C": _check_C,
    "D": _check_D,
    "E": _check_E,
}

# Properties certified for qplus by construction: positivity because a
# sum of non-negative rationals vanishes only when both do; semifield
# because nonzero rationals invert; refinable via refinement_witness;
# B because products of nonzero rationals are nonzero; E because a
# positive semifield admits the explicit weighting built from the
# refinement formulas.
_QPLUS_BY_THEOREM = {
    "positive": "sum of non-negative rationals is 0 only at (0, 0)",
    "semifield": "every nonzero rational has an exact inverse",
    "refinable": "witness formulas x=ac/(c+d), y=ad/(c+d), z=bc/(c+d), "
                 "t=bd/(c+d); spot-checkable via refinement_witness",
    "B": "a product of nonzero rationals is nonzero",
    "E": "positive semifields admit the required weighting; construction "
         "from the refinement witness",
}


def check_property(sr: Semiring, prop: str,
                   bound: int | None = None) -> LawReport:
    """Decide one semiring property for one instance.

    bool is enumerated fully; nat over {0..bound}; qplus is certified
    by a stock argument for the properties listed above and refuted on
    property A by the fixed instance 1/2 + 1/2 = 1.  Unsupported
    combinations raise "no decision procedure".
    """
    if prop not in PROPERTY_TAGS:
        raise NoDecisionProcedureError(
            f"no decision procedure: unknown property {prop!r}")

    if sr.id == "qplus":
        if prop == "A":
            half = Fraction(1, 2)
            return LawReport(
                name=f"property:{prop}", semiring=sr.id, status=FAIL,
                mode=MODE_EXHAUSTIVE,
                detail="refuted by the fixed counterexample 1/2 + 1/2 = 1",
                counterexample={"a": half, "b": half, "a+b": Fraction(1)})
        if prop in _QPLUS_BY_THEOREM:
            return LawReport(
                name=f"property:{prop}", semiring=sr.id, status=PASS,
                mode=MODE_BY_THEOREM, detail=_QPLUS_BY_THEOREM[prop])
        raise NoDecisionProcedureError(
            f"no decision procedure for property {prop!r} over qplus")

    values = sr.carrier(bound)
    witness = _PROPERTY_CHECKS[prop](sr, values)
    mode = MODE_EXHAUSTIVE if sr.id == "bool" else MODE_BOUNDED
    meta = {} if sr.id == "bool" else {"bound": bound}
    if witness is None:
        return LawReport(name=f"property:{prop}", semiring=sr.id,
                         status=PASS, mode=mode, meta=meta)
    return LawReport(name=f"property:{prop}", semiring=sr.id, status=FAIL,
                     mode=mode, counterexample=witness, meta=meta)
