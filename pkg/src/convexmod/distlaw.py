"""The canonical weak distributive law between weighting and powerset.

The law sends a weighting of sets Phi (a finitely supported map from
finite sets to nonzero scalars) to a set of weightings of elements.
Two independent routes compute it:

* ``delta_bruteforce`` follows the defining equations directly: it
  enumerates every membership weighting psi on pairs (A, x) with x in A
  whose per-set sums reproduce Phi, and collects the element weightings
  phi(x) = sum over A containing x of psi(A, x).  This is exact for
  bool (psi ranges over subsets of pairs) and for nat (psi values range
  over compositions of each weight), but impossible for qplus, where
  the psi space is a continuum.

* ``delta_hull`` uses the closed form available over positive
  semifields (bool, qplus): the law is the convex closure of the
  choice set c(Phi), the finitely many weightings obtained by picking
  one element per supported set and pushing the weights forward.

Over nat the closed form genuinely fails: every subset of a nat
semimodule is already convex, so the hull adds nothing, yet the brute
force produces weightings outside the choice set.  ``delta_hull``
therefore refuses nat, and the strictness of the inclusion is itself a
tested fact.

The module also houses the diagram checkers (the two multiplication
rectangles and both unit triangles, one of which is expected to fail
exactly when scalar sums to one force a zero), the pentagon coherence
checker for composite algebras, the Barr extension of a relation, and
the deliberately naive extension that sends a relation R to the
function A |-> {y : exists a in A with a R y} together with its
one-point weak law.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .convex import (
    ConvexSet,
    convex_set,
    cs_equal,
    cs_join_all,
    hull_canonicalize,
    member,
)
from .errors import ConvexmodError, NotSemifieldError, SemiringMismatchError
from .freemod import (
    FinSupp,
    finsupp,
    fs_add,
    fs_map,
    fs_mult,
    fs_scale,
    fs_unit,
    fs_zero,
    sort_key,
)
from .report import (
    FAIL,
    LawReport,
    MODE_BOUNDED,
    MODE_EXHAUSTIVE,
    MODE_RANDOMIZED,
    PASS,
)
from .semiring import Scalar, Semiring

# Weightings over set-shaped keys reuse the finitely supported map
# type; the constructors below canonicalize the keys.
SetWeighting = FinSupp
MembershipWeighting = FinSupp

SYMBOL_POOL = ("x", "y", "z", "u", "v", "w")


def set_key(elements: Iterable[Any]) -> tuple:
    """Canonical duplicate-free sorted tuple used as a finite-set key."""
    keyed = {sort_key(e): e for e in elements}
    return tuple(keyed[k] for k in sorted(keyed))


def set_weighting(sr: Semiring, items: Iterable[tuple[Iterable[Any], Scalar]]
                  ) -> SetWeighting:
    """Weighting of finite sets: entries (set, scalar), keys canonical."""
    return finsupp(sr, [(set_key(A), v) for A, v in items])


def membership_weighting(
        sr: Semiring,
        items: Iterable[tuple[tuple[Iterable[Any], Any], Scalar]]
) -> MembershipWeighting:
    """Weighting of (set, element) pairs; every element must belong to
    its set."""
    entries = []
    for (A, x), v in items:
        key = set_key(A)
        if x not in key:
            raise ConvexmodError(
                f"membership weighting pairs need x in A; got {x!r}")
        entries.append(((key, x), v))
    return finsupp(sr, entries)


@dataclass(frozen=True)
class Relation:
    """Finite binary relation with explicit domain and codomain."""

    domain: tuple
    codomain: tuple
    pairs: tuple

    def __post_init__(self):
        dom = set_key(self.domain)
        cod = set_key(self.codomain)
        pairs = set_key(tuple(p) for p in self.pairs)
        for a, b in pairs:
            if a not in dom or b not in cod:
                raise ConvexmodError(f"relation pair {(a, b)!r} out of range")
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "codomain", cod)
        object.__setattr__(self, "pairs", pairs)

    def image(self, a) -> tuple:
        return tuple(y for x, y in self.pairs if x == a)


# ---------------------------------------------------------------------------
# the two routes to the law
# ---------------------------------------------------------------------------

def choice_set(Phi: SetWeighting) -> list[FinSupp]:
    """All weightings obtained by choosing one element per supported
    set and pushing the weights forward (weights of sets that share the
    chosen element add up).  Empty support yields the zero weighting;
    an empty set in the support admits no choice at all."""
    sr = Phi.semiring
    keys = list(Phi.support())
    if any(len(A) == 0 for A in keys):
        return []
    if not keys:
        return [fs_zero(sr)]
    seen: dict[tuple, FinSupp] = {}
    for picks in itertools.product(*keys):
        phi = finsupp(sr, [(x, Phi.value(A)) for A, x in zip(keys, picks)])
        seen[phi._skey] = phi
    return [seen[k] for k in sorted(seen)]


def delta_hull(Phi: SetWeighting) -> ConvexSet:
    """The law over a positive semifield: convex closure of the choice
    set.  nat is rejected because the closed form is provably wrong
    there (its hulls are identity, yet the law is strictly larger)."""
    sr = Phi.semiring
    if sr.id == "nat":
        raise NotSemifieldError("not a semifield; use brute force")
    return hull_canonicalize(choice_set(Phi), sr)


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def delta_bruteforce(Phi: SetWeighting) -> list[FinSupp]:
    """Definitional route: enumerate every membership weighting whose
    per-set sums give Phi and collect the induced element weightings.
    Only bool and nat admit the enumeration.

    Over bool the defining enumeration (one nonempty subset per
    supported set, then their union) collapses to a filter: the outputs
    are exactly the subsets of the union that meet every supported set,
    because intersecting such a subset with each set recovers a valid
    choice of slices.  That keeps the walk polynomial in the output.
    """
    sr = Phi.semiring
    if sr.id == "qplus":
        raise ConvexmodError("use delta_hull + delta_witness_check")
    keys = list(Phi.support())
    if any(len(A) == 0 for A in keys):
        return []
    if not keys:
        return [fs_zero(sr)]
    seen: dict[tuple, FinSupp] = {}
    if sr.id == "bool":
        union = set_key(x for A in keys for x in A)
        key_sets = [frozenset(A) for A in keys]
        for r in range(1, len(union) + 1):
            for sub in itertools.combinations(union, r):
                picked = frozenset(sub)
                if all(picked & A for A in key_sets):
                    phi = finsupp(sr, [(x, 1) for x in sub])
                    seen[phi._skey] = phi
    else:
        per_set = []
        for A in keys:
            options = []
            for comp in weak_compositions(Phi.value(A), len(A)):
                options.append([(x, c) for x, c in zip(A, comp) if c > 0])
            per_set.append(options)
        for slices in itertools.product(*per_set):
            entries = [pair for slice_ in slices for pair in slice_]
            phi = finsupp(sr, entries)
            seen[phi._skey] = phi
    return [seen[k] for k in sorted(seen)]


def delta_witness_check(Phi: SetWeighting, phi: FinSupp,
                        psi: MembershipWeighting) -> bool:
    """Exact check of the two defining sum conditions: per-set sums of
    psi reproduce Phi, per-element sums reproduce phi."""
    sr = Phi.semiring
    if phi.semiring.id != sr.id or psi.semiring.id != sr.id:
        raise SemiringMismatchError("witness check over mixed semirings")
    psi_sets = set_key(A for A, _x in psi.support())
    for A in set_key(itertools.chain(Phi.support(), psi_sets)):
        total = sr.sum(psi.value((A, x)) for x in A)
        if total != Phi.value(A):
            return False
    psi_elems = set_key(x for _A, x in psi.support())
    for x in set_key(itertools.chain(phi.support(), psi_elems)):
        total = sr.sum(psi.value((A, x)) for A in psi_sets if x in A)
        if total != phi.value(x):
            return False
    return True


# ---------------------------------------------------------------------------
# shared evaluation helpers for the diagram checkers
# ---------------------------------------------------------------------------

def _weighted_generator_hull(sr: Semiring,
                             weighted_sets: Sequence[tuple[ConvexSet, Scalar]]
                             ) -> ConvexSet:
    """Hull of { sum_i w_i * g_i : g_i a generator of the i-th set }.

    This is the composite leg "law, then elementwise multiplication,
    then closure" reduced to generators; an empty set among the keys
    kills every choice, and an empty key list leaves the single empty
    sum, the zero weighting."""
    gen_lists = []
    weights = []
    for A, w in weighted_sets:
        gen_lists.append(A.generators)
        weights.append(w)
    members = []
    for picks in itertools.product(*gen_lists):
        acc = fs_zero(sr)
        for w, g in zip(weights, picks):
            acc = fs_add(acc, fs_scale(w, g))
        members.append(acc)
    return hull_canonicalize(members, sr)


def _finsupp_set(items: Iterable[FinSupp]) -> list[FinSupp]:
    seen = {phi._skey: phi for phi in items}
    return [seen[k] for k in sorted(seen)]


def _bool_weightings_over(sr: Semiring, pool: Sequence, max_support: int
                          ) -> list[FinSupp]:
    """All weightings with support drawn from the pool, support size
    bounded; scalar values enumerate the full carrier minus zero (bool:
    just 1)."""
    out = [fs_zero(sr)]
    for r in range(1, max_support + 1):
        for subset in itertools.combinations(pool, r):
            out.append(finsupp(sr, [(k, 1) for k in subset]))
    return out


def _nat_weightings_over(sr: Semiring, pool: Sequence, max_support: int,
                         value_bound: int) -> list[FinSupp]:
    out = [fs_zero(sr)]
    values = range(1, value_bound + 1)
    for r in range(1, max_support + 1):
        for subset in itertools.combinations(pool, r):
            for vals in itertools.product(values, repeat=r):
                out.append(finsupp(sr, list(zip(subset, vals))))
    return out


def _random_fraction(rng: random.Random, allow_zero: bool = False) -> Fraction:
    num = rng.randint(0 if allow_zero else 1, 6)
    den = rng.randint(1, 4)
    return Fraction(num, den)


def _random_qplus_weighting(rng: random.Random, sr: Semiring,
                            pool: Sequence, max_support: int) -> FinSupp:
    size = rng.randint(0, max_support)
    chosen = rng.sample(list(pool), min(size, len(pool)))
    return finsupp(sr, [(k, _random_fraction(rng)) for k in chosen])


# ---------------------------------------------------------------------------
# weak-law diagram checks
# ---------------------------------------------------------------------------

def _sets_universe(universe: Sequence[str]) -> list[tuple]:
    """All subsets of the universe as canonical tuples, empty included."""
    out = []
    for r in range(len(universe) + 1):
        out.extend(set_key(s) for s in itertools.combinations(universe, r))
    return sorted(out, key=lambda t: (len(t), t))


def _delta_as_list(Phi: SetWeighting) -> list[FinSupp]:
    """Extensional value of the law for bool/nat via the brute force."""
    return delta_bruteforce(Phi)


def _check_eta_P_triangle(sr: Semiring, universe, phis,
                          mode: str) -> LawReport:
    """Unit triangle that weak laws keep: wrapping every element of a
    weighting into a one-element set and applying the law returns the
    singleton of the original weighting."""
    for phi in phis:
        Phi = set_weighting(sr, [((x,), phi.value(x)) for x in phi.support()])
        if sr.id in ("bool", "nat"):
            got = _delta_as_list(Phi)
            ok = got == [phi]
        else:
            got = delta_hull(Phi)
            ok = cs_equal(got, hull_canonicalize([phi], sr))
        if not ok:
            return LawReport(
                name="eta_P_triangle", semiring=sr.id, status=FAIL,
                mode=mode, counterexample={"phi": phi, "law_value": got})
    return LawReport(name="eta_P_triangle", semiring=sr.id, status=PASS,
                     mode=mode, meta={"instances": len(phis)})


def _check_mu_S_rectangle_extensional(sr: Semiring, xis, mode) -> LawReport:
    """Multiplication rectangle on the weighting side, evaluated
    extensionally (bool/nat): collapsing a two-level weighting first
    and applying the law equals applying the law levelwise, then the
    law again on the level-two weighting, then collapsing each result."""
    for xi in xis:
        left = _delta_as_list(fs_mult(xi))
        mapped = finsupp(
            sr, [(tuple(_delta_as_list(K)), w) for K, w in xi.items()])
        right = _finsupp_set(
            fs_mult(e) for e in _delta_as_list(mapped))
        if left != right:
            return LawReport(
                name="mu_S_rectangle", semiring=sr.id, status=FAIL, mode=mode,
                counterexample={"xi": xi, "left": left, "right": right})
    return LawReport(name="mu_S_rectangle", semiring=sr.id, status=PASS,
                     mode=mode, meta={"instances": len(xis)})


def _check_mu_S_rectangle_hull(sr: Semiring, xis, mode) -> LawReport:
    """Same rectangle over qplus.  The right leg is the law applied
    levelwise (giving convex sets), then the weighted-generator hull,
    which is the generator-level reduction of law-then-collapse."""
    for xi in xis:
        left = delta_hull(fs_mult(xi))
        weighted = []
        for K, w in xi.items():
            weighted.append((delta_hull(K), w))
        collapsed: dict[tuple, tuple[ConvexSet, Scalar]] = {}
        for A, w in weighted:
            if A._skey in collapsed:
                collapsed[A._skey] = (A, sr.add(collapsed[A._skey][1], w))
            else:
                collapsed[A._skey] = (A, w)
        right = _weighted_generator_hull(sr, list(collapsed.values()))
        if not cs_equal(left, right):
            return LawReport(
                name="mu_S_rectangle", semiring=sr.id, status=FAIL, mode=mode,
                counterexample={"xi": xi, "left": left, "right": right})
    return LawReport(name="mu_S_rectangle", semiring=sr.id, status=PASS,
                     mode=mode, meta={"instances": len(xis)})


def _union_key(A_of_sets: tuple) -> tuple:
    return set_key(x for A in A_of_sets for x in A)


def _check_mu_P_rectangle_extensional(sr: Semiring, thetas, mode) -> LawReport:
    """Multiplication rectangle on the set side (bool/nat): uniting
    each family of sets first and applying the law equals applying the
    law to the family weighting, then the law to each resulting set
    weighting, then uniting the outputs."""
    for theta in thetas:
        merged = finsupp(sr, [(_union_key(K), w) for K, w in theta.items()])
        left = _delta_as_list(merged)
        right_items: list[FinSupp] = []
        for chi in _delta_as_list(theta):
            right_items.extend(_delta_as_list(chi))
        right = _finsupp_set(right_items)
        if left != right:
            return LawReport(
                name="mu_P_rectangle", semiring=sr.id, status=FAIL, mode=mode,
                counterexample={"theta": theta, "left": left, "right": right})
    return LawReport(name="mu_P_rectangle", semiring=sr.id, status=PASS,
                     mode=mode, meta={"instances": len(thetas)})


def _check_mu_P_rectangle_hull(sr: Semiring, thetas, mode) -> LawReport:
    """qplus version.  The right leg reduces to the choice weightings
    of the family: the union over a whole hull of convex sets equals
    the hull of the union over its generators."""
    for theta in thetas:
        merged = finsupp(sr, [(_union_key(K), w) for K, w in theta.items()])
        left = delta_hull(merged)
        right = cs_join_all(
            [delta_hull(chi) for chi in choice_set(theta)], sr)
        if not cs_equal(left, right):
            return LawReport(
                name="mu_P_rectangle", semiring=sr.id, status=FAIL, mode=mode,
                counterexample={"theta": theta, "left": left, "right": right})
    return LawReport(name="mu_P_rectangle", semiring=sr.id, status=PASS,
                     mode=mode, meta={"instances": len(thetas)})


def _check_eta_S_triangle(sr: Semiring, sets_pool, mode) -> LawReport:
    """The dropped unit triangle: the law on the one-set weighting of A
    against the plain set of one-element weightings of A.  Holds iff
    sums to one force a zero summand; fails already at a two-element
    set otherwise, and the counterexample is reported."""
    for A in sets_pool:
        Phi = set_weighting(sr, [(A, sr.one)])
        diracs = _finsupp_set(fs_unit(sr, x) for x in A)
        if sr.id in ("bool", "nat"):
            got = _delta_as_list(Phi)
            if got != diracs:
                extra = next(p for p in got if p not in diracs)
                return LawReport(
                    name="eta_S_triangle", semiring=sr.id, status=FAIL,
                    mode=mode,
                    detail="law output strictly contains the one-element "
                           "weightings",
                    counterexample={"A": A, "law_value": got,
                                    "units_only": diracs, "extra": extra},
                    meta={"expected": FAIL})
        else:
            hull = delta_hull(Phi)
            point_set = convex_set(sr, diracs)
            if len(A) >= 2:
                avg = finsupp(
                    sr, [(x, Fraction(1, len(A))) for x in A])
                if member(hull, avg) and avg not in diracs:
                    return LawReport(
                        name="eta_S_triangle", semiring=sr.id, status=FAIL,
                        mode=mode,
                        detail="hull of one-element weightings contains "
                               "their average, the plain set does not",
                        counterexample={"A": A, "hull": hull,
                                        "units_only": point_set,
                                        "extra": avg},
                        meta={"expected": FAIL})
    status = PASS
    return LawReport(name="eta_S_triangle", semiring=sr.id, status=status,
                     mode=mode, detail="triangle holds",
                     meta={"instances": len(sets_pool),
                           "expected": PASS})


def check_weak_law(sr: Semiring, xsize: int = 2, trials: int = 50,
                   seed: int = 0, value_bound: int = 2) -> list[LawReport]:
    """Evaluate the weak-law diagrams for one semiring.

    bool and nat run bounded-exhaustive enumerations (weightings with
    support size at most two over all subsets of an xsize-element
    universe; nat weights up to value_bound).  qplus runs seeded random
    trials through the hull route.  Returns one report per diagram; the
    unit triangle on the set side is expected to fail except over nat,
    and its report carries meta["expected"] accordingly.
    """
    universe = list(SYMBOL_POOL[:xsize])
    sets_pool = _sets_universe(universe)
    reports: list[LawReport] = []

    if sr.id in ("bool", "nat"):
        mode = MODE_BOUNDED if sr.id == "nat" else MODE_EXHAUSTIVE
        if sr.id == "bool":
            phis = _bool_weightings_over(sr, universe, len(universe))
            level1 = _bool_weightings_over(sr, sets_pool, 2)
            xis = _bool_weightings_over(sr, level1, 2)
            families = [set_key(f) for r in range(0, 3)
                        for f in itertools.combinations(sets_pool, r)]
            thetas = _bool_weightings_over(sr, families, 2)
        else:
            phis = _nat_weightings_over(sr, universe, len(universe),
                                        value_bound)
            level1 = _nat_weightings_over(sr, sets_pool, 2, value_bound)
            xis = _nat_weightings_over(sr, level1[:40], 2, value_bound)
            families = [set_key(f) for r in range(0, 3)
                        for f in itertools.combinations(sets_pool, r)]
            thetas = _nat_weightings_over(sr, families[:15], 2, value_bound)
        reports.append(_check_eta_P_triangle(sr, universe, phis, mode))
        reports.append(_check_mu_S_rectangle_extensional(sr, xis, mode))
        reports.append(_check_mu_P_rectangle_extensional(sr, thetas, mode))
        reports.append(_check_eta_S_triangle(sr, sets_pool, mode))
        return reports

    rng = random.Random(seed)
    mode = MODE_RANDOMIZED
    phis = [_random_qplus_weighting(rng, sr, universe, len(universe))
            for _ in range(trials)]
    reports.append(_check_eta_P_triangle(sr, universe, phis, mode))

    level1 = [_random_qplus_weighting(rng, sr, sets_pool, 2)
              for _ in range(trials)]
    xis = []
    for _ in range(trials):
        size = rng.randint(0, 2)
        keys = rng.sample(level1, min(size, len(level1)))
        xis.append(finsupp(
            sr, [(k, _random_fraction(rng)) for k in keys]))
    reports.append(_check_mu_S_rectangle_hull(sr, xis, mode))

    families = [set_key(f) for r in range(0, 3)
                for f in itertools.combinations(sets_pool, r)]
    thetas = [_random_qplus_weighting(rng, sr, families, 2)
              for _ in range(trials)]
    reports.append(_check_mu_P_rectangle_hull(sr, thetas, mode))

    reports.append(_check_eta_S_triangle(sr, sets_pool, mode))
    return reports


# ---------------------------------------------------------------------------
# naturality
# ---------------------------------------------------------------------------

def _map_set_weighting(f: Mapping, Phi: SetWeighting) -> SetWeighting:
    """Image of a set weighting under a symbol map: keys are mapped
    elementwise (images may collide and merge), weights of colliding
    keys add."""
    sr = Phi.semiring
    return finsupp(sr, [(set_key(f[x] for x in A), w)
                        for A, w in Phi.items()])


def check_naturality(sr: Semiring, xsize: int = 3, trials: int = 50,
                     seed: int = 0) -> list[LawReport]:
    """Two findings: the hull route is natural (checked on random qplus
    instances or bounded-exhaustive bool instances), while the bare
    choice set is not, and a violating instance must be found by
    search.  The search widens its universe rather than pass silently.
    """
    reports = []
    universe = list(SYMBOL_POOL[:xsize])

    if sr.id == "qplus":
        rng = random.Random(seed)
        sets_pool = [s for s in _sets_universe(universe) if s]
        ok = True
        witness = None
        for _ in range(trials):
            Phi = _random_qplus_weighting(rng, sr, sets_pool, 3)
            f = {x: rng.choice(universe) for x in universe}
            left = delta_hull(_map_set_weighting(f, Phi))
            right = hull_canonicalize(
                [fs_map(f, g) for g in delta_hull(Phi).generators], sr)
            if not cs_equal(left, right):
                ok = False
                witness = {"Phi": Phi, "f": f, "left": left, "right": right}
                break
        reports.append(LawReport(
            name="delta_naturality", semiring=sr.id,
            status=PASS if ok else FAIL, mode=MODE_RANDOMIZED,
            counterexample=witness, meta={"trials": trials, "seed": seed}))
    else:
        nonempty = [s for s in _sets_universe(universe) if s]
        ok = True
        witness = None
        for r in range(0, 3):
            for fam in itertools.combinations(nonempty, r):
                Phi = set_weighting(sr, [(A, 1) for A in fam])
                for f_vals in itertools.product(universe, repeat=len(universe)):
                    f = dict(zip(universe, f_vals))
                    left = delta_bruteforce(_map_set_weighting(f, Phi))
                    right = _finsupp_set(
                        fs_map(f, phi) for phi in delta_bruteforce(Phi))
                    if left != right:
                        ok = False
                        witness = {"Phi": Phi, "f": f,
                                   "left": left, "right": right}
                        break
                if not ok:
                    break
            if not ok:
                break
        reports.append(LawReport(
            name="delta_naturality", semiring=sr.id,
            status=PASS if ok else FAIL,
            mode=MODE_BOUNDED, counterexample=witness))

    found = _search_choice_naturality_violation(sr, xsize)
    if found is not None:
        reports.append(LawReport(
            name="choice_naturality", semiring=sr.id, status=FAIL,
            mode=MODE_BOUNDED,
            detail="bare choice set is not natural; violation found",
            counterexample=found, meta={"expected": FAIL}))
    else:
        reports.append(LawReport(
            name="choice_naturality", semiring=sr.id, status=PASS,
            mode=MODE_BOUNDED,
            detail="no violation found even after widening the search; "
                   "this contradicts the expected non-naturality",
            meta={"expected": FAIL}))
    return reports


def _search_choice_naturality_violation(sr: Semiring, xsize: int):
    """Deterministic search for a naturality violation of the bare
    choice construction over bool-style weight-one families.  Widens
    the universe up to six symbols before giving up."""
    one = sr.one
    for size in range(max(2, xsize), 7):
        universe = list(SYMBOL_POOL[:size])
        nonempty = [s for s in _sets_universe(universe) if s]
        for r in range(1, 4):
            for fam in itertools.combinations(nonempty, r):
                Phi = set_weighting(sr, [(A, one) for A in fam])
                base = choice_set(Phi)
                for f_vals in itertools.product(universe,
                                                repeat=len(universe)):
                    f = dict(zip(universe, f_vals))
                    left = _finsupp_set(choice_set(_map_set_weighting(f, Phi)))
                    right = _finsupp_set(fs_map(f, phi) for phi in base)
                    if left != right:
                        return {"Phi": Phi, "f": f,
                                "left": left, "right": right}
    return None


# ---------------------------------------------------------------------------
# pentagon coherence for composite algebras
# ---------------------------------------------------------------------------

class Interval:
    """Closed rational interval, or the empty interval; the carrier of
    the one-variable composite algebra, with direct endpoint
    arithmetic.  Used as an independent route against generator-level
    computation."""

    __slots__ = ("lo", "hi", "empty", "_skey")

    def __init__(self, lo=None, hi=None):
        if lo is None:
            object.__setattr__(self, "empty", True)
            object.__setattr__(self, "lo", None)
            object.__setattr__(self, "hi", None)
            object.__setattr__(self, "_skey", (4, 1, ()))
            return
        lo = Fraction(lo)
        hi = Fraction(hi if hi is not None else lo)
        if hi < lo:
            raise ConvexmodError("interval needs lo <= hi")
        object.__setattr__(self, "empty", False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "_skey", (4, 0, (lo, hi)))

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __eq__(self, other):
        return isinstance(other, Interval) and self._skey == other._skey

    def __lt__(self, other):
        return self._skey < other._skey

    def __hash__(self):
        return hash(self._skey)

    def __repr__(self):
        if self.empty:
            return "iv()"
        return f"iv[{self.lo}, {self.hi}]"


IV_EMPTY = Interval()


def iv_add(a: Interval, b: Interval) -> Interval:
    if a.empty or b.empty:
        return IV_EMPTY
    return Interval(a.lo + b.lo, a.hi + b.hi)


def iv_scale(lam, a: Interval) -> Interval:
    lam = Fraction(lam)
    if lam == 0:
        return Interval(0, 0)
    if a.empty:
        return IV_EMPTY
    return Interval(lam * a.lo, lam * a.hi)


def iv_sup(items: Iterable[Interval]) -> Interval:
    nonempty = [i for i in items if not i.empty]
    if not nonempty:
        return IV_EMPTY
    return Interval(min(i.lo for i in nonempty),
                    max(i.hi for i in nonempty))


def _interval_weighted_sum(phi: FinSupp) -> Interval:
    """Algebra structure on intervals: weighted sum of the support,
    empty weighting giving the zero interval."""
    acc = Interval(0, 0)
    for key, w in phi.items():
        acc = iv_add(acc, iv_scale(w, key))
    return acc


def pentagon_check(algebra: str, Phi: SetWeighting) -> LawReport:
    """Coherence pentagon for one composite-algebra instance: applying
    the join inside the weighting and then the algebra's weighted sum
    equals applying the law, then the weighted sum on every choice, and
    joining the results.

    algebra = "free": carrier is the convex sets over the weighting's
    semiring; joins are hulls of unions, the weighted sum is the
    generator-choice hull.  algebra = "interval": carrier is rational
    intervals with direct endpoint arithmetic, over qplus.
    """
    sr = Phi.semiring
    if algebra == "free":
        left_inner = finsupp(
            sr, [(cs_join_all(list(K), sr), w) for K, w in Phi.items()])
        left = _weighted_generator_hull(sr, list(left_inner.items()))
        right = cs_join_all(
            [_weighted_generator_hull(sr, list(chi.items()))
             for chi in choice_set(Phi)], sr)
        ok = cs_equal(left, right)
    elif algebra == "interval":
        left_phi = finsupp(sr, [(iv_sup(K), w) for K, w in Phi.items()])
        left = _interval_weighted_sum(left_phi)
        right = iv_sup(_interval_weighted_sum(chi)
                       for chi in choice_set(Phi))
        ok = left == right
    else:
        raise ConvexmodError(f"unknown algebra {algebra!r}")
    if ok:
        return LawReport(name=f"pentagon:{algebra}", semiring=sr.id,
                         status=PASS, mode=MODE_EXHAUSTIVE,
                         meta={"left": left, "right": right})
    return LawReport(name=f"pentagon:{algebra}", semiring=sr.id, status=FAIL,
                     mode=MODE_EXHAUSTIVE,
                     counterexample={"Phi": Phi, "left": left, "right": right})


def _bool_carrier_sets(sr: Semiring, universe: Sequence[str]
                       ) -> list[ConvexSet]:
    """Every convex set over the universe, as hulls of all subsets of
    the full weighting pool; complete as long as that stays small,
    otherwise generator lists are capped at two."""
    phis = _bool_weightings_over(sr, universe, len(universe))
    top = len(phis) if 2 ** len(phis) <= 512 else 2
    seen = {}
    for r in range(0, top + 1):
        for combo in itertools.combinations(phis, r):
            A = hull_canonicalize(list(combo), sr)
            seen[A._skey] = A
    return [seen[k] for k in sorted(seen)]


def check_pentagon_law(sr: Semiring, xsize: int = 2, trials: int = 50,
                       seed: int = 0) -> list[LawReport]:
    """Pentagon suite over one semiring.

    bool: bounded-exhaustive families (every convex set over the
    symbols, families of at most two sets, weightings of support at
    most two).  qplus: seeded random families for the free algebra and
    the interval algebra, plus the frozen two-singleton interval
    instance whose answer is the endpoint sum [6, 8].
    """
    universe = list(SYMBOL_POOL[:xsize])
    reports = []
    if sr.id == "bool":
        carrier = _bool_carrier_sets(sr, universe)
        families = [()]
        for r in (1, 2):
            families.extend(itertools.combinations(carrier, r))
        checked = 0
        for Phi in _bool_weightings_over(sr, [set_key(F) for F in families],
                                         2):
            report = pentagon_check("free", Phi)
            checked += 1
            if not report.passed:
                return [LawReport(
                    name="pentagon:free", semiring=sr.id, status=FAIL,
                    mode=MODE_BOUNDED, counterexample=report.counterexample,
                    meta={"expected": PASS})]
        reports.append(LawReport(
            name="pentagon:free", semiring=sr.id, status=PASS,
            mode=MODE_BOUNDED,
            detail=f"{checked} families over {len(carrier)} carrier sets",
            meta={"expected": PASS, "instances": checked}))
        return reports
    if sr.id != "qplus":
        raise ConvexmodError(
            "pentagon suite needs a positive semifield (bool or qplus)")

    rng = random.Random(seed)
    point_pool = list(universe)
    ok = 0
    for _ in range(trials):
        sets = []
        for _ in range(rng.randint(1, 2)):
            gens = [_random_qplus_weighting(rng, sr, point_pool, xsize)
                    for _ in range(rng.randint(1, 2))]
            sets.append(hull_canonicalize(gens, sr))
        keys = []
        for _ in range(rng.randint(1, 2)):
            fam = tuple(rng.sample(sets, rng.randint(1, len(sets))))
            keys.append((set_key(fam), _random_fraction(rng)))
        Phi = finsupp(sr, keys)
        report = pentagon_check("free", Phi)
        if not report.passed:
            return [LawReport(
                name="pentagon:free", semiring=sr.id, status=FAIL,
                mode=MODE_RANDOMIZED, counterexample=report.counterexample,
                meta={"expected": PASS, "seed": seed})]
        ok += 1
    reports.append(LawReport(
        name="pentagon:free", semiring=sr.id, status=PASS,
        mode=MODE_RANDOMIZED, detail=f"{ok} random families",
        meta={"expected": PASS, "seed": seed}))

    for _ in range(trials):
        ivs = [Interval(*sorted((_random_fraction(rng, allow_zero=True),
                                 _random_fraction(rng, allow_zero=True))))
               for _ in range(rng.randint(1, 3))]
        if rng.random() < 0.2:
            ivs.append(IV_EMPTY)
        keys = []
        for _ in range(rng.randint(1, 2)):
            fam = tuple(rng.sample(ivs, rng.randint(1, len(ivs))))
            keys.append((set_key(fam), _random_fraction(rng)))
        Phi = finsupp(sr, keys)
        report = pentagon_check("interval", Phi)
        if not report.passed:
            return reports + [LawReport(
                name="pentagon:interval", semiring=sr.id, status=FAIL,
                mode=MODE_RANDOMIZED, counterexample=report.counterexample,
                meta={"expected": PASS, "seed": seed})]
    reports.append(LawReport(
        name="pentagon:interval", semiring=sr.id, status=PASS,
        mode=MODE_RANDOMIZED, detail=f"{trials} random families",
        meta={"expected": PASS, "seed": seed}))

    # frozen instance: summing the two singleton families [1,2] and
    # [5,6] must land on the endpoint sums [6, 8]
    Phi = finsupp(sr, [(set_key([Interval(1, 2)]), Fraction(1)),
                       (set_key([Interval(5, 6)]), Fraction(1))])
    frozen = pentagon_check("interval", Phi)
    want = Interval(6, 8)
    sum_ok = frozen.passed and frozen.meta["left"] == want
    reports.append(LawReport(
        name="pentagon:interval:sum_rule", semiring=sr.id,
        status=PASS if sum_ok else FAIL, mode=MODE_EXHAUSTIVE,
        detail="[1,2] + [5,6] = [6,8]",
        counterexample=None if sum_ok else {"got": frozen.meta.get("left")},
        meta={"expected": PASS}))
    return reports


# ---------------------------------------------------------------------------
# Barr extension and the naive alternative
# ---------------------------------------------------------------------------

def barr_extend(R: Relation, sr: Semiring, value_bound: int = 2):
    """Extension of a relation to weightings: phi relates to xi iff
    some weighting of the relation's pairs has phi and xi as its two
    marginals.  Enumerable over bool and value-bounded nat."""
    if sr.id == "bool":
        values: Sequence = (0, 1)
    elif sr.id == "nat":
        values = range(0, value_bound + 1)
    else:
        raise ConvexmodError(
            "barr extension is enumerable only over bool or bounded nat")
    pairs = list(R.pairs)
    out: dict[tuple, tuple[FinSupp, FinSupp]] = {}
    for w in itertools.product(values, repeat=len(pairs)):
        phi = finsupp(sr, [(x, wi) for (x, _y), wi in zip(pairs, w)])
        xi = finsupp(sr, [(y, wi) for (_x, y), wi in zip(pairs, w)])
        out[(phi._skey, xi._skey)] = (phi, xi)
    rel_pairs = [out[k] for k in sorted(out)]
    if sr.id == "bool":
        domain = _bool_weightings_over(sr, list(R.domain), len(R.domain))
        codomain = _bool_weightings_over(
            sr, list(R.codomain), len(R.codomain))
    else:
        domain = _nat_weightings_over(
            sr, list(R.domain), len(R.domain), value_bound)
        codomain = [xi for _phi, xi in rel_pairs]
        codomain = _finsupp_set(codomain + _nat_weightings_over(
            sr, list(R.codomain), len(R.codomain), value_bound))
    return Relation(tuple(domain), tuple(codomain), tuple(rel_pairs))


def trivialE_extend(R: Relation) -> dict[tuple, tuple]:
    """The naive forward-image extension on subsets: A goes to the set
    of right endpoints reachable from A.  Simple, but not a lawful
    relational extension, which the test instances exhibit."""
    out: dict[tuple, tuple] = {}
    elems = list(R.domain)
    for r in range(len(elems) + 1):
        for A in itertools.combinations(elems, r):
            image = set_key(y for a in A for y in R.image(a))
            out[set_key(A)] = image
    return out


def trivial_law(family: Iterable[Iterable[Any]]) -> list[tuple]:
    """The one-point weak law induced by the naive extension: a family
    of sets goes to the singleton holding its union."""
    return [set_key(x for A in family for x in A)]


def trivial_lifting_fixed_points(xsize: int = 3) -> LawReport:
    """The induced idempotent on subsets of the powerset algebra sends
    a family to the singleton of its union; its fixed points should be
    exactly the one-element families.  Checked exhaustively."""
    universe = list(SYMBOL_POOL[:xsize])
    sets_pool = _sets_universe(universe)
    checked = 0
    for r in range(len(sets_pool) + 1):
        for fam in itertools.combinations(sets_pool, r):
            image = trivial_law(fam)
            fixed = list(fam) == image
            singleton = len(fam) == 1 and fam[0] == image[0]
            checked += 1
            if fixed != singleton:
                return LawReport(
                    name="trivial_lifting_fixed_points", semiring="bool",
                    status=FAIL, mode=MODE_EXHAUSTIVE,
                    counterexample={"family": fam, "image": image})
    return LawReport(
        name="trivial_lifting_fixed_points", semiring="bool", status=PASS,
        mode=MODE_EXHAUSTIVE, meta={"families": checked})
