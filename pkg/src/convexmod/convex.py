"""Finitely generated convex subsets of a free semimodule.

A ConvexSet stores a finite generator list of FinSupp values; the set
it denotes is the convex closure: all weighted sums sum_i w_i * g_i
with weights from the semiring adding up to 1.  The empty generator
list denotes the empty set, which is convex and is NOT the same value
as {epsilon}, the singleton of the zero function: the former is the
join-semilattice bottom, the latter the semimodule zero.

Membership dispatches on the semiring:

* qplus - exact linear feasibility (one column per generator plus a
  homogenizing row of ones forcing the weights to sum to 1),
* bool  - hulls are exactly the sets closed under binary joins, so phi
  is a member iff the generators below it join back to phi,
* nat   - every subset is already convex (adding two weights that sum
  to 1 forces one of them to be 0), so membership is literal lookup.

Canonicalization deletes every generator that lies in the hull of the
others, iterating in sorted order to a fixpoint.  Over qplus and bool
the surviving generators are exactly the extreme points, and the
canonical form is unique, which makes structural equality of canonical
sets coincide with set equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .errors import ConvexmodError, SemiringMismatchError
from .exactlp import feasible, make_system
from .freemod import FinSupp, finsupp, fs_add, fs_from_json, fs_scale, fs_zero, sort_key
from .semiring import Scalar, Semiring, get_semiring


class ConvexSet:
    """Immutable finitely generated convex set.

    Build through ``convex_set`` (plain, possibly redundant generators)
    or ``hull_canonicalize`` (canonical form).  The ``canonical`` flag
    records which constructor produced the value.
    """

    __slots__ = ("semiring", "generators", "canonical", "_skey", "_hash")

    semiring: Semiring
    generators: tuple[FinSupp, ...]
    canonical: bool

    def __init__(self, semiring: Semiring, generators: tuple[FinSupp, ...],
                 canonical: bool, _trusted: bool = False):
        if not _trusted:
            raise ConvexmodError(
                "construct ConvexSet via convex_set()/hull_canonicalize()")
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "canonical", canonical)
        object.__setattr__(self, "_skey", (
            3, semiring.id, tuple(g._skey for g in generators)))
        object.__setattr__(self, "_hash", hash(self._skey))

    def __setattr__(self, name: str, value: Any):
        raise AttributeError("ConvexSet is immutable")

    def is_empty(self) -> bool:
        return not self.generators

    def support(self) -> tuple:
        """Sorted union of the generators' supports."""
        keys = {sort_key(k): k for g in self.generators for k in g.support()}
        return tuple(keys[sk] for sk in sorted(keys))

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, ConvexSet) and self._skey == other._skey

    def __lt__(self, other: "ConvexSet") -> bool:
        return self._skey < other._skey

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(repr(g) for g in self.generators)
        tag = "hull" if self.canonical else "gens"
        return f"{tag}[{self.semiring.id}]{{{inner}}}"

    def to_json_dict(self) -> dict:
        return {
            "semiring": self.semiring.id,
            "generators": [g.to_json_dict() for g in self.generators],
        }


def convex_set(sr: Semiring, generators: Iterable[FinSupp],
               canonical: bool = False) -> ConvexSet:
    """Sorted, duplicate-free ConvexSet; no redundancy removal."""
    gens: dict[tuple, FinSupp] = {}
    for g in generators:
        if g.semiring.id != sr.id:
            raise SemiringMismatchError(
                f"generator over {g.semiring.id} in a {sr.id} set")
        gens[g._skey] = g
    ordered = tuple(gens[k] for k in sorted(gens))
    return ConvexSet(sr, ordered, canonical, _trusted=True)


def cs_from_json(data: Mapping[str, Any]) -> ConvexSet:
    sr = get_semiring(str(data.get("semiring")))
    gens = data.get("generators")
    if not isinstance(gens, list):
        raise ConvexmodError("ConvexSet JSON needs a 'generators' array")
    return hull_canonicalize([fs_from_json(sr, g) for g in gens], sr)


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def member(A: ConvexSet, phi: FinSupp) -> bool:
    """Exact test phi in hull(A.generators)."""
    sr = A.semiring
    if phi.semiring.id != sr.id:
        raise SemiringMismatchError(
            f"membership of a {phi.semiring.id} value in a {sr.id} set")
    if not A.generators:
        return False
    if sr.id == "qplus":
        return _member_qplus(A, phi)
    if sr.id == "bool":
        return _member_bool(A, phi)
    # nat: all sets are convex, the hull adds nothing.
    return phi in A.generators


def _member_qplus(A: ConvexSet, phi: FinSupp) -> bool:
    support = {sort_key(k): k for g in A.generators for k in g.support()}
    support.update({sort_key(k): k for k in phi.support()})
    keys = [support[sk] for sk in sorted(support)]
    columns = [
        tuple(g.value(k) for k in keys) + (Fraction(1),)
        for g in A.generators
    ]
    target = tuple(phi.value(k) for k in keys) + (Fraction(1),)
    return feasible(make_system(columns, target)) is not None


def _member_bool(A: ConvexSet, phi: FinSupp) -> bool:
    # Convex closure over bool is closure under binary joins, so phi is
    # in the hull iff the generators dominated by phi cover it exactly.
    phi_supp = set(phi.support())
    below = [g for g in A.generators if set(g.support()) <= phi_supp]
    if not below:
        return False
    union: set = set()
    for g in below:
        union.update(g.support())
    return union == phi_supp


# ---------------------------------------------------------------------------
# canonicalization and equality
# ---------------------------------------------------------------------------

def hull_canonicalize(generators: Iterable[FinSupp],
                      sr: Semiring | None = None) -> ConvexSet:
    """Canonical ConvexSet: deduplicate, then delete every generator
    that is a member of the hull of the remaining ones, scanning in
    sorted order until a fixpoint.

    ``sr`` is only needed for an empty generator list, where the
    semiring cannot be inferred.
    """
    gens = list(generators)
    if not gens:
        if sr is None:
            raise ConvexmodError(
                "empty generator list needs an explicit semiring")
        return ConvexSet(sr, (), True, _trusted=True)
    if sr is None:
        sr = gens[0].semiring
    base = convex_set(sr, gens)
    if sr.id == "nat":
        # Every subset is convex; canonical form is the sorted dedup.
        return ConvexSet(sr, base.generators, True, _trusted=True)

    current = list(base.generators)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(current):
            rest = current[:i] + current[i + 1:]
            if rest and member(
                    ConvexSet(sr, tuple(rest), False, _trusted=True),
                    current[i]):
                current.pop(i)
                changed = True
            else:
                i += 1
    return ConvexSet(sr, tuple(current), True, _trusted=True)


def canonicalize(A: ConvexSet) -> ConvexSet:
    if A.canonical:
        return A
    return hull_canonicalize(A.generators, A.semiring)


def cs_equal(A: ConvexSet, B: ConvexSet) -> bool:
    """Set equality of hulls, decided by mutual generator membership."""
    if A.semiring.id != B.semiring.id:
        raise SemiringMismatchError(
            f"comparing sets over {A.semiring.id} and {B.semiring.id}")
    if A.canonical and B.canonical:
        return A.generators == B.generators
    if A.is_empty() or B.is_empty():
        return A.is_empty() and B.is_empty()
    return (all(member(B, g) for g in A.generators)
            and all(member(A, g) for g in B.generators))


def extreme_points(A: ConvexSet) -> tuple[FinSupp, ...]:
    """The canonical generators: elements not properly inside any
    segment of the set.  Requires a canonical input."""
    if not A.canonical:
        raise ConvexmodError("extreme_points needs a canonical ConvexSet")
    return A.generators


# ---------------------------------------------------------------------------
# semimodule + join structure on convex sets
# ---------------------------------------------------------------------------

def cs_zero(sr: Semiring) -> ConvexSet:
    """The singleton {epsilon}: the additive unit, distinct from empty."""
    return ConvexSet(sr, (fs_zero(sr),), True, _trusted=True)


def cs_empty(sr: Semiring) -> ConvexSet:
    """The empty set: the join-semilattice bottom."""
    return ConvexSet(sr, (), True, _trusted=True)


def cs_scale(lam: Scalar, A: ConvexSet) -> ConvexSet:
    """lambda * A elementwise for lambda != 0; {epsilon} for lambda = 0,
    including 0 * empty = {epsilon}."""
    sr = A.semiring
    lam = sr.validate(lam)
    if sr.is_zero(lam):
        return cs_zero(sr)
    scaled = convex_set(sr, (fs_scale(lam, g) for g in A.generators),
                        canonical=A.canonical)
    return scaled


def cs_add(A: ConvexSet, B: ConvexSet) -> ConvexSet:
    """Minkowski sum on generators; empty absorbs (x + bottom = bottom)."""
    if A.semiring.id != B.semiring.id:
        raise SemiringMismatchError("cs_add over mixed semirings")
    sr = A.semiring
    if A.is_empty() or B.is_empty():
        return cs_empty(sr)
    sums = [fs_add(a, b) for a in A.generators for b in B.generators]
    return hull_canonicalize(sums, sr)


def cs_join(A: ConvexSet, B: ConvexSet) -> ConvexSet:
    """Hull of the union: the binary join of the semilattice."""
    if A.semiring.id != B.semiring.id:
        raise SemiringMismatchError("cs_join over mixed semirings")
    return hull_canonicalize(
        list(A.generators) + list(B.generators), A.semiring)


def cs_join_all(sets: Sequence[ConvexSet], sr: Semiring) -> ConvexSet:
    gens: list[FinSupp] = []
    for s in sets:
        if s.semiring.id != sr.id:
            raise SemiringMismatchError("cs_join_all over mixed semirings")
        gens.extend(s.generators)
    return hull_canonicalize(gens, sr)


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def cs_to_csv(A: ConvexSet, variables: Sequence[str] | None = None) -> str:
    """One generator per row; columns are the sorted variable set."""
    if variables is None:
        variables = [k for k in A.support()]
        if not all(isinstance(v, str) for v in variables):
            raise ConvexmodError("CSV needs symbol-keyed generators")
    header = ",".join(str(v) for v in variables)
    lines = [header]
    for g in A.generators:
        lines.append(",".join(
            A.semiring.format_scalar(g.value(v)) for v in variables))
    return "\n".join(lines) + "\n"
