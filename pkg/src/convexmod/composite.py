"""The composite monad of convex sets of weightings, and its Kleisli
category of nondeterministic linear maps.

The weak law induces a monad structure on X |-> ConvexSets(Weightings(X))
over a positive semifield.  Its three pieces:

* ``pc_unit``: the point set of the one-element weighting.
* ``pc_map``: elementwise relabeling.
* ``pc_mult``: flatten a convex set of family weightings by resolving
  each family weighting with ``alpha`` and joining the results.

``alpha`` is the algebra structure the law lifts onto convex sets: a
weighting of convex sets resolves to the Minkowski sum of its scaled
keys, i.e. the hull of all weighted sums that pick one generator per
key.  An empty key absorbs everything (no pick exists); the empty
weighting resolves to the zero point.

Kleisli arrows are tables mapping input symbols to convex sets of
weightings over output symbols.  Composition resolves the middle layer
with ``alpha`` generator by generator; the everywhere-empty arrow is
the bottom of the pointwise join order.

One caveat, pinned by tests rather than hidden: composition is only
left strict on arrows whose sets never contain the zero weighting.  If
f(x) contains the zero weighting, then composing the bottom arrow
after f still yields the zero point at x, because an empty sum has no
factor to absorb it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .convex import (
    ConvexSet,
    canonicalize,
    cs_add,
    cs_empty,
    cs_from_json,
    cs_join,
    cs_join_all,
    cs_scale,
    cs_zero,
    hull_canonicalize,
)
from .errors import ConvexmodError, NotSemifieldError, SemiringMismatchError
from .freemod import FinSupp, finsupp, fs_map, fs_unit
from .semiring import Scalar, Semiring

# A family weighting assigns nonzero scalars to finitely many convex
# sets; it is the inner layer of the doubled construction.
ConvexFamilyWeighting = FinSupp


def family_weighting(sr: Semiring,
                     items: Iterable[tuple[ConvexSet, Scalar]]
                     ) -> ConvexFamilyWeighting:
    """Weighting over convex-set keys.  Keys are canonicalized first so
    that extensionally equal sets merge their weights."""
    entries = []
    for A, v in items:
        if not isinstance(A, ConvexSet):
            raise ConvexmodError("family weighting keys must be convex sets")
        if A.semiring.id != sr.id:
            raise SemiringMismatchError(
                f"family key over {A.semiring.id} in a {sr.id} weighting")
        entries.append((canonicalize(A), v))
    return finsupp(sr, entries)


def alpha(Phi: ConvexFamilyWeighting) -> ConvexSet:
    """Resolve a weighting of convex sets to one convex set: the
    Minkowski sum of the scaled keys.  Not available over nat, whose
    hulls cannot absorb the missing choices."""
    sr = Phi.semiring
    if sr.id == "nat":
        raise NotSemifieldError(
            "not a semifield; the resolved set is not convex over nat")
    acc = cs_zero(sr)
    for A, v in Phi.items():
        acc = cs_add(acc, cs_scale(v, A))
    return acc


def pc_unit(sr: Semiring, x) -> ConvexSet:
    """The point set of the one-element weighting of x."""
    return hull_canonicalize([fs_unit(sr, x)], sr)


def pc_map(f: Mapping, A: ConvexSet) -> ConvexSet:
    """Relabel every generator along a symbol map and re-close."""
    return hull_canonicalize(
        [fs_map(f, g) for g in A.generators], A.semiring)


def pc_mult(outer: ConvexSet) -> ConvexSet:
    """Flatten one level: resolve each generator (a family weighting)
    with alpha and join the results.  The empty outer set stays empty."""
    sr = outer.semiring
    return cs_join_all([alpha(theta) for theta in outer.generators], sr)


# ---------------------------------------------------------------------------
# Kleisli arrows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KleisliArrow:
    """Total table from input symbols to convex sets of weightings over
    output symbols."""

    vars_in: tuple[str, ...]
    vars_out: tuple[str, ...]
    table: Mapping[str, ConvexSet]

    def __post_init__(self):
        vin = tuple(sorted(set(self.vars_in)))
        vout = tuple(sorted(set(self.vars_out)))
        object.__setattr__(self, "vars_in", vin)
        object.__setattr__(self, "vars_out", vout)
        if not vin:
            raise ConvexmodError("arrow needs at least one input symbol")
        if set(self.table) != set(vin):
            raise ConvexmodError("arrow table must cover vars_in exactly")
        srs = {A.semiring.id for A in self.table.values()}
        if len(srs) > 1:
            raise SemiringMismatchError("mixed semirings in one arrow")
        out = set(vout)
        for x, A in self.table.items():
            for g in A.generators:
                stray = [y for y in g.support() if y not in out]
                if stray:
                    raise ConvexmodError(
                        f"arrow value at {x!r} mentions {stray[0]!r}, "
                        "not an output symbol")
        object.__setattr__(
            self, "table",
            {x: canonicalize(A) for x, A in self.table.items()})

    @property
    def semiring(self) -> Semiring:
        return next(iter(self.table.values())).semiring

    def __call__(self, x) -> ConvexSet:
        if x not in self.table:
            raise ConvexmodError(f"arrow has no input {x!r}")
        return self.table[x]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "vars_in": list(self.vars_in),
            "vars_out": list(self.vars_out),
            "table": {x: A.to_json_dict() for x, A in
                      sorted(self.table.items())},
        }


def arrow(sr: Semiring, vars_in: Iterable[str], vars_out: Iterable[str],
          table: Mapping[str, ConvexSet]) -> KleisliArrow:
    for A in table.values():
        if A.semiring.id != sr.id:
            raise SemiringMismatchError(
                f"arrow value over {A.semiring.id}, expected {sr.id}")
    return KleisliArrow(tuple(vars_in), tuple(vars_out), dict(table))


def ka_from_json(sr: Semiring, data: Mapping[str, Any]) -> KleisliArrow:
    table = {}
    for x, entry in dict(data.get("table", {})).items():
        payload = dict(entry)
        payload.setdefault("semiring", sr.id)
        A = cs_from_json(payload)
        if A.semiring.id != sr.id:
            raise SemiringMismatchError(
                f"arrow table entry over {A.semiring.id}, expected {sr.id}")
        table[x] = A
    return KleisliArrow(tuple(data.get("vars_in", ())),
                        tuple(data.get("vars_out", ())),
                        table)


def kleisli_identity(sr: Semiring, variables: Iterable[str]) -> KleisliArrow:
    vs = tuple(variables)
    return KleisliArrow(vs, vs, {x: pc_unit(sr, x) for x in vs})


def kleisli_bottom(sr: Semiring, vars_in: Iterable[str],
                   vars_out: Iterable[str]) -> KleisliArrow:
    vin = tuple(vars_in)
    return KleisliArrow(vin, tuple(vars_out),
                        {x: cs_empty(sr) for x in vin})


def kleisli_compose(g: KleisliArrow, f: KleisliArrow) -> KleisliArrow:
    """g after f.  Each generator of f(x) is a weighting of middle
    symbols; it resolves to the weighted Minkowski sum of the g-images
    of its support, and the resolutions join up."""
    sr = f.semiring
    if g.semiring.id != sr.id:
        raise SemiringMismatchError("composing arrows over mixed semirings")
    if set(f.vars_out) != set(g.vars_in):
        raise ConvexmodError(
            "inner variables disagree: "
            f"{list(f.vars_out)} vs {list(g.vars_in)}")
    table = {}
    for x in f.vars_in:
        pieces = []
        for phi in f(x).generators:
            pieces.append(alpha(family_weighting(
                sr, [(g(y), phi.value(y)) for y in phi.support()])))
        table[x] = cs_join_all(pieces, sr)
    return KleisliArrow(f.vars_in, g.vars_out, table)


def kleisli_join(f: KleisliArrow, g: KleisliArrow) -> KleisliArrow:
    if f.semiring.id != g.semiring.id:
        raise SemiringMismatchError("joining arrows over mixed semirings")
    if f.vars_in != g.vars_in or f.vars_out != g.vars_out:
        raise ConvexmodError("joining arrows with different variable sets")
    return KleisliArrow(
        f.vars_in, f.vars_out,
        {x: cs_join(f(x), g(x)) for x in f.vars_in})


def kleisli_equal(f: KleisliArrow, g: KleisliArrow) -> bool:
    """Extensional equality: same variables, same set at every input.
    Tables are canonical, so structural comparison suffices."""
    return (f.vars_in == g.vars_in and f.vars_out == g.vars_out
            and f.semiring.id == g.semiring.id
            and all(f(x) == g(x) for x in f.vars_in))
