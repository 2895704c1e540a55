"""Finitely supported functions into a semiring: the free semimodule.

A FinSupp represents an element of S X, the free left S-semimodule on a
set X: a function X -> S whose support (the keys with nonzero value) is
finite.  Storage is a strictly key-sorted tuple of (key, scalar) pairs
with no zero scalars, so structural equality coincides with
extensional equality and the representation is canonical.

Keys are usually interned strings (variable symbols), but every
operation is generic in the key type: any value with a total order
under ``sort_key`` works.  That generality is what lets the higher
modules nest values, a weighting over symbol sets, over inner FinSupp
values (the classical S(S X) layer), or over convex sets, without
duplicating this module.

The monad structure lives here too:

* ``fs_unit``  - the Dirac function centred on one key,
* ``fs_map``   - pushforward along a key function, summing over fibres,
* ``fs_mult``  - flatten a weighting-of-weightings by weighted
  pointwise sum,

together with the pointwise semimodule operations ``fs_add``,
``fs_scale``, ``fs_zero``.
"""

from __future__ import annotations

from typing import Any, Callable, Iterable, Iterator, Mapping

from .errors import ConvexmodError, SemiringMismatchError, UnmappedSymbolError
from .semiring import Scalar, Semiring, get_semiring

Key = Any


def sort_key(value: Key) -> tuple:
    """Total order across all key kinds used in this package.

    Strings sort first, then tuples (symbol sets and pairs, compared
    recursively), then any object carrying a precomputed ``_skey``
    (FinSupp and ConvexSet instances), then plain integers.  Two keys
    are equal exactly when their sort keys are equal.
    """
    if isinstance(value, str):
        return (0, value)
    if isinstance(value, tuple):
        return (1, len(value), tuple(sort_key(v) for v in value))
    skey = getattr(value, "_skey", None)
    if skey is not None:
        return skey
    if isinstance(value, int) and not isinstance(value, bool):
        return (5, value)
    raise ConvexmodError(f"unorderable key: {value!r}")


class FinSupp:
    """Immutable finitely supported function into one semiring.

    Use the module-level constructors (``finsupp``, ``fs_unit``,
    ``fs_zero``) rather than building entry tuples by hand; they
    validate scalars, merge duplicate keys additively, drop zeros and
    sort.
    """

    __slots__ = ("semiring", "entries", "_lookup", "_skey", "_hash")

    semiring: Semiring
    entries: tuple[tuple[Key, Scalar], ...]

    def __init__(self, semiring: Semiring,
                 entries: tuple[tuple[Key, Scalar], ...],
                 _trusted: bool = False):
        if not _trusted:
            raise ConvexmodError(
                "construct FinSupp via finsupp()/fs_unit()/fs_zero()")
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_lookup", dict(entries))
        object.__setattr__(self, "_skey", (
            2, semiring.id,
            tuple((sort_key(k), v) for k, v in entries)))
        object.__setattr__(self, "_hash", hash(self._skey))

    def __setattr__(self, name: str, value: Any):
        raise AttributeError("FinSupp is immutable")

    # -- mapping-ish access ----------------------------------------------

    def value(self, key: Key) -> Scalar:
        """The scalar at ``key`` (the semiring zero off the support)."""
        return self._lookup.get(key, self.semiring.zero)

    def support(self) -> tuple[Key, ...]:
        return tuple(k for k, _ in self.entries)

    def items(self) -> Iterator[tuple[Key, Scalar]]:
        return iter(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def total(self) -> Scalar:
        """The sum of all values (used for convex-combination checks)."""
        return self.semiring.sum(v for _, v in self.entries)

    # -- equality / ordering ----------------------------------------------

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, FinSupp) and self._skey == other._skey

    def __lt__(self, other: "FinSupp") -> bool:
        return self._skey < other._skey

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self.entries:
            return f"<{self.semiring.id}|>"
        body = ", ".join(f"{k!r}: {self.semiring.format_scalar(v)}"
                         for k, v in self.entries)
        return f"<{self.semiring.id}| {body}>"

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        """Wire format {symbol: scalar-json}; string keys only."""
        out = {}
        for k, v in self.entries:
            if not isinstance(k, str):
                raise ConvexmodError(
                    "only symbol-keyed FinSupp values serialize to JSON")
            out[k] = self.semiring.scalar_to_json(v)
        return out


# FinSupp2 in the data model: a weighting over inner FinSupp values,
# i.e. an element of S(S X).  Structurally it is just a FinSupp whose
# keys are FinSupp instances.
FinSupp2 = FinSupp


def finsupp(sr: Semiring,
            items: Mapping[Key, Scalar] | Iterable[tuple[Key, Scalar]],
            ) -> FinSupp:
    """Canonical FinSupp from key/scalar pairs.

    Duplicate keys are merged with semiring addition; zero results are
    dropped; keys are sorted by ``sort_key``.
    """
    if isinstance(items, Mapping):
        items = items.items()
    merged: dict[tuple, tuple[Key, Scalar]] = {}
    for k, v in items:
        v = sr.validate(v)
        sk = sort_key(k)
        if sk in merged:
            merged[sk] = (merged[sk][0], sr.add(merged[sk][1], v))
        else:
            merged[sk] = (k, v)
    entries = tuple(
        (k, v) for _, (k, v) in sorted(merged.items(), key=lambda e: e[0])
        if not sr.is_zero(v))
    return FinSupp(sr, entries, _trusted=True)


def fs_zero(sr: Semiring) -> FinSupp:
    """The empty function (the semimodule zero, written epsilon)."""
    return FinSupp(sr, (), _trusted=True)


def fs_unit(sr: Semiring, x: Key) -> FinSupp:
    """The Dirac function centred in ``x``: (x -> 1)."""
    return finsupp(sr, [(x, sr.one)])


def _check_same_semiring(a: FinSupp, b: FinSupp) -> Semiring:
    if a.semiring.id != b.semiring.id:
        raise SemiringMismatchError(
            f"mixed semirings: {a.semiring.id} vs {b.semiring.id}")
    return a.semiring


def fs_map(f: Mapping[Key, Key] | Callable[[Key], Key],
           phi: FinSupp) -> FinSupp:
    """Pushforward of ``phi`` along ``f``, summing over fibres.

    The result maps y to the sum of phi(x) over all x with f(x) = y.
    ``f`` must cover the whole support of ``phi``.
    """
    if callable(f) and not isinstance(f, Mapping):
        lookup = f
    else:
        table = dict(f)

        def lookup(x: Key) -> Key:
            try:
                return table[x]
            except KeyError:
                raise UnmappedSymbolError(
                    f"symbol {x!r} not covered by the function table"
                ) from None

    return finsupp(phi.semiring, ((lookup(k), v) for k, v in phi.entries))


def fs_mult(psi: FinSupp) -> FinSupp:
    """Flatten a weighting over FinSupp values by weighted pointwise sum.

    For psi with entries (phi_i -> w_i), the result maps x to
    sum_i w_i * phi_i(x).
    """
    sr = psi.semiring
    pairs: list[tuple[Key, Scalar]] = []
    for inner, weight in psi.entries:
        if not isinstance(inner, FinSupp):
            raise ConvexmodError("fs_mult needs FinSupp-valued keys")
        _check_same_semiring(psi, inner)
        for k, v in inner.entries:
            pairs.append((k, sr.mul(weight, v)))
    return finsupp(sr, pairs)


def fs_add(a: FinSupp, b: FinSupp) -> FinSupp:
    """Pointwise sum."""
    sr = _check_same_semiring(a, b)
    return finsupp(sr, list(a.entries) + list(b.entries))


def fs_scale(lam: Scalar, phi: FinSupp) -> FinSupp:
    """Pointwise scalar multiple; scaling by zero gives the zero function."""
    sr = phi.semiring
    lam = sr.validate(lam)
    if sr.is_zero(lam):
        return fs_zero(sr)
    return finsupp(sr, ((k, sr.mul(lam, v)) for k, v in phi.entries))


def fs_from_json(sr: Semiring, data: Mapping[str, Any]) -> FinSupp:
    """Inverse of FinSupp.to_json_dict for symbol-keyed functions."""
    if not isinstance(data, Mapping):
        raise ConvexmodError(f"FinSupp JSON must be an object, got {data!r}")
    return finsupp(sr, ((str(k), sr.scalar_from_json(v))
                        for k, v in data.items()))


def fs_equal_extensional(a: FinSupp, b: FinSupp) -> bool:
    """Equality by evaluation everywhere (canonical forms make this the
    same as ==; kept as an independent oracle for tests)."""
    _check_same_semiring(a, b)
    keys = {sort_key(k): k for k, _ in a.entries}
    keys.update({sort_key(k): k for k, _ in b.entries})
    return all(a.value(k) == b.value(k) for k in keys.values())
