"""Relative ideals, the canonical ideal, and the distance function.

A relative ideal E of a good semigroup S is stored like the semigroup
itself: a minimum vector, a conductor vector c with c + N^s inside E, and
the finite slice small = E intersected with [min, c]. Membership::

    x in E  <=>  x >= min  and  min(x, c) in small

The canonical ideal K is cut out by emptiness of the axis-pinned difference
sets: a is in K exactly when no element of S sits on one of the coordinate
hyperplanes through gamma - a while staying strictly above it elsewhere
(gamma = conductor - 1). K controls duality: K = S happens exactly at
Gorenstein points, and the distance from K to S, and from N^s down to K,
grade how far from Gorenstein the point is.

Distances are measured by saturated chains. For good ideals every maximal
chain between the same endpoints has the same length; ``distance`` runs two
extremal chains (lex-least and lex-greatest successors) and refuses the
input if they disagree, rather than silently returning one of them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from gsemi.lattice import (
    Box,
    DimensionMismatch,
    OrderMode,
    Vec,
    add,
    as_vec,
    compare,
    leq,
    lt_neq,
    max_vec,
    min_vec,
    sub,
    unit,
    weight,
    zero,
)
from gsemi.semigroup import GoodSemigroup, ValidationReport, Violation


@dataclass(frozen=True)
class RelativeIdeal:
    """Truncated representation of a relative ideal of a good semigroup."""

    branches: int
    min_elt: Vec
    conductor: Vec
    small: frozenset[Vec]

    def __post_init__(self) -> None:
        for v in (self.min_elt, self.conductor):
            if len(v) != self.branches:
                raise DimensionMismatch(
                    f"{v} has wrong dimension, expected {self.branches}"
                )
        if not leq(self.min_elt, self.conductor):
            raise ValueError("ideal min must be <= its conductor componentwise")
        for w in self.small:
            if len(w) != self.branches:
                raise DimensionMismatch(
                    f"small element {w} has wrong dimension, expected {self.branches}"
                )

    @classmethod
    def from_parts(
        cls,
        min_elt: Sequence[int],
        conductor: Sequence[int],
        small: Sequence[Sequence[int]],
    ) -> "RelativeIdeal":
        mn = as_vec(min_elt)
        return cls(
            branches=len(mn),
            min_elt=mn,
            conductor=as_vec(conductor),
            small=frozenset(as_vec(w) for w in small),
        )

    @classmethod
    def from_dict(cls, doc: dict) -> "RelativeIdeal":
        try:
            return cls.from_parts(doc["min"], doc["conductor"], doc["small"])
        except KeyError as exc:
            raise ValueError(f"ideal document missing key {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "RelativeIdeal":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {
            "min": list(self.min_elt),
            "conductor": list(self.conductor),
            "small": sorted(list(w) for w in self.small),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def membership(self, x: Sequence[int]) -> bool:
        v = as_vec(x)
        if len(v) != self.branches:
            raise DimensionMismatch(
                f"element has {len(v)} coordinates, ideal has {self.branches}"
            )
        if not leq(self.min_elt, v):
            return False
        return min_vec(v, self.conductor) in self.small

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, Sequence):
            return False
        return self.membership(x)  # type: ignore[arg-type]

    def small_sorted(self) -> list[Vec]:
        return sorted(self.small)


def as_ideal(S: GoodSemigroup) -> RelativeIdeal:
    """S viewed as a relative ideal of itself."""
    return RelativeIdeal(
        branches=S.branches,
        min_elt=zero(S.branches),
        conductor=S.conductor,
        small=S.small,
    )


def ambient_ideal(s: int) -> RelativeIdeal:
    """N^s as a relative ideal (min 0, conductor 0)."""
    z = zero(s)
    return RelativeIdeal(branches=s, min_elt=z, conductor=z, small=frozenset({z}))


# -- the difference-set test ------------------------------------------


def delta_empty(E: RelativeIdeal, x: Sequence[int]) -> tuple[bool, Optional[Vec]]:
    """Decide whether the axis-pinned set Delta^E(x) is empty.

    Delta^E(x) collects the elements of E that agree with x in one
    coordinate and exceed it strictly in all others. Returns
    ``(True, None)`` when empty, else ``(False, witness)`` with an explicit
    element of E in the set.

    The scan works on the truncated representation: a genuine witness b
    truncates to some w in small with w_i = min(x_i, c_i) in the pinned
    coordinate and, away from the pin, either w_j > x_j or w_j stuck at the
    conductor; conversely any such w inflates back to a witness by pushing
    conductor-stuck coordinates past x.
    """
    v = as_vec(x) if not isinstance(x, tuple) else x
    if len(v) != E.branches:
        raise DimensionMismatch(
            f"probe point has {len(v)} coordinates, ideal has {E.branches}"
        )
    c = E.conductor
    for i in range(E.branches):
        pin = min(v[i], c[i])
        for w in E.small_sorted():
            if w[i] != pin:
                continue
            if all(w[j] > v[j] or w[j] == c[j] for j in range(E.branches) if j != i):
                b = list(v)
                for j in range(E.branches):
                    if j == i:
                        continue
                    b[j] = w[j] if w[j] > v[j] else max(c[j], v[j] + 1)
                witness = tuple(b)
                assert E.membership(witness)
                return False, witness
    return True, None


# -- canonical ideal ---------------------------------------------------


def canonical_ideal(S: GoodSemigroup) -> RelativeIdeal:
    """The canonical ideal K = {a : Delta^S(gamma - a) is empty}, normalized.

    K contains S, has minimum 0, and its conductor is exactly the conductor
    of S; all three facts are consequences of the semigroup axioms and are
    re-checked here, so feeding an invalid semigroup in raises instead of
    returning garbage.
    """
    if not S.validate().valid:
        raise ValueError("input semigroup is not valid")
    beta = S.conductor
    gamma = S.frobenius()
    SE = as_ideal(S)
    ksmall = set()
    for a in Box(zero(S.branches), beta):
        empty, _ = delta_empty(SE, sub(gamma, a))
        if empty:
            ksmall.add(a)

    z = zero(S.branches)
    if z not in ksmall:
        raise ValueError("canonical ideal misses 0; input semigroup is not valid")
    if beta not in ksmall:
        raise ValueError(
            "canonical ideal misses the conductor; input semigroup is not valid"
        )
    missing = [w for w in S.small_sorted() if w not in ksmall]
    if missing:
        raise ValueError(
            f"canonical ideal does not contain S (missing {missing[0]}); "
            "input semigroup is not valid"
        )
    for j in range(S.branches):
        if beta[j] < 1:
            continue
        if sub(beta, unit(S.branches, j)) in ksmall:
            raise ValueError(
                "canonical ideal conductor is not exact; input semigroup is not valid"
            )
    return RelativeIdeal(
        branches=S.branches, min_elt=z, conductor=beta, small=frozenset(ksmall)
    )


def k_small(S: GoodSemigroup, mode: OrderMode = OrderMode.LT_NEQ) -> list[Vec]:
    """Elements of the canonical ideal strictly below the conductor, sorted.

    This truncation K-degree is the building block of the chain theory: all
    chain points are sums of two of its elements.
    """
    K = canonical_ideal(S)
    return [a for a in K.small_sorted() if compare(a, S.conductor, mode)]


# -- ideal validation --------------------------------------------------


def validate_ideal(E: RelativeIdeal, S: GoodSemigroup) -> ValidationReport:
    """Check E against the good-ideal axioms relative to S."""
    out: list[Violation] = []
    c = E.conductor
    box = Box(E.min_elt, c)

    for w in E.small_sorted():
        if w not in box:
            out.append(
                Violation(
                    "ideal-box",
                    f"small element {list(w)} outside [{list(E.min_elt)}, {list(c)}]",
                    list(w),
                )
            )
    if E.min_elt not in E.small:
        out.append(
            Violation("ideal-min-missing", "minimum is not in the small set", list(E.min_elt))
        )
    if c not in E.small:
        out.append(
            Violation("ideal-conductor-missing", "conductor is not in the small set", list(c))
        )

    elems = E.small_sorted()
    for a in elems:
        for b in elems:
            if b <= a:
                continue
            if min_vec(a, b) not in E.small:
                out.append(
                    Violation(
                        "ideal-min-closure",
                        f"min({list(a)}, {list(b)}) missing",
                        [list(a), list(b)],
                    )
                )

    # stability under S: e + s stays in E
    for e in elems:
        for s_el in S.small_sorted():
            t = min_vec(add(e, s_el), c)
            if t not in E.small:
                out.append(
                    Violation(
                        "ideal-stability",
                        f"{list(e)} + {list(s_el)} leaves the ideal",
                        [list(e), list(s_el)],
                    )
                )

    for a in elems:
        for b in elems:
            if b <= a:
                continue
            for i in range(E.branches):
                if a[i] != b[i]:
                    continue
                if _exchange_witness(elems, c, a, b, i) is None:
                    out.append(
                        Violation(
                            "ideal-exchange",
                            f"no exchange witness for {list(a)}, {list(b)} at coordinate {i}",
                            {"pair": [list(a), list(b)], "coordinate": i},
                        )
                    )

    for j in range(E.branches):
        if c[j] <= E.min_elt[j]:
            continue
        if sub(c, unit(E.branches, j)) in E.small:
            out.append(
                Violation(
                    "ideal-conductor-minimality",
                    f"{list(sub(c, unit(E.branches, j)))} is in E, conductor not minimal",
                    list(sub(c, unit(E.branches, j))),
                )
            )

    return ValidationReport(tuple(out))


def _exchange_witness(
    elems: list[Vec], c: Vec, a: Vec, b: Vec, i: int
) -> Optional[Vec]:
    s = len(c)
    for w in elems:
        if not (w[i] > a[i] or (w[i] == a[i] == c[i])):
            continue
        ok = True
        for j in range(s):
            if j == i:
                continue
            if a[j] != b[j]:
                if w[j] != min(a[j], b[j]):
                    ok = False
                    break
            elif w[j] < a[j]:
                ok = False
                break
        if ok:
            return w
    return None


# -- distance ----------------------------------------------------------


def ideal_contains(E: RelativeIdeal, F: RelativeIdeal) -> bool:
    """Whole-ideal containment F subset of E, decided on a finite box."""
    if E.branches != F.branches:
        raise DimensionMismatch("ideals live in different dimensions")
    hi = max_vec(E.conductor, F.conductor)
    for w in Box(F.min_elt, hi):
        if F.membership(w) and not E.membership(w):
            return False
    return True


def _chain_length(E: RelativeIdeal, lex_greatest: bool) -> int:
    """Length of one saturated chain in E from its min to its conductor.

    Successors are chosen among the minimal elements strictly above the
    current point, lex-least or lex-greatest; for a good ideal both give the
    same count.
    """
    cur = E.min_elt
    target = E.conductor
    if cur not in E.small or target not in E.small:
        raise ValueError("ideal representation misses its min or conductor")
    elems = E.small_sorted()
    steps = 0
    while cur != target:
        cands = [y for y in elems if lt_neq(cur, y)]
        minimal = [
            y for y in cands if not any(lt_neq(z, y) for z in cands if z != y)
        ]
        cur = max(minimal) if lex_greatest else min(minimal)
        steps += 1
        if steps > weight(sub(target, E.min_elt)):
            raise ValueError("saturated chain failed to terminate; corrupt ideal data")
    return steps


def chain_length(E: RelativeIdeal) -> int:
    """Saturated chain length d(E), with a two-run well-definedness check."""
    lo = _chain_length(E, lex_greatest=False)
    hi = _chain_length(E, lex_greatest=True)
    if lo != hi:
        raise ValueError(
            f"saturated chains disagree ({lo} vs {hi}); input is not a good ideal"
        )
    return lo


def distance(E: RelativeIdeal, F: RelativeIdeal) -> int:
    """The distance d(E \\ F) for nested good ideals F inside E.

    Computed as d(E) + weight(c_F - c_E) - d(F): both chain counts are taken
    in their own boxes, and the middle term extends E's chain from its own
    conductor up to F's, where E is full.
    """
    if not ideal_contains(E, F):
        raise ValueError("distance requires F to be contained in E")
    if not leq(E.conductor, F.conductor):
        raise ValueError(
            "distance requires the outer conductor to be <= the inner one"
        )
    return chain_length(E) + weight(sub(F.conductor, E.conductor)) - chain_length(F)


# -- classification ----------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    """Duality classification of a good semigroup.

    eta is the distance from the canonical ideal down to S, mu the distance
    from N^s down to the canonical ideal, and delta_invariant their sum,
    the distance from N^s to S. Gorenstein means K = S (eta = 0); the Kunz
    condition is eta = 1, and mu = 1 marks an almost-canonical point one
    step under the full lattice.
    """

    gorenstein: bool
    kunz: bool
    nearly_gorenstein_point: bool
    eta: int
    mu: int
    delta_invariant: int
    level: str = "semigroup"

    def to_dict(self) -> dict:
        return {
            "gorenstein": self.gorenstein,
            "kunz": self.kunz,
            "nearly_gorenstein_point": self.nearly_gorenstein_point,
            "eta": self.eta,
            "mu": self.mu,
            "delta_invariant": self.delta_invariant,
            "level": self.level,
        }


def classify(S: GoodSemigroup) -> ClassificationReport:
    K = canonical_ideal(S)
    SE = as_ideal(S)
    NN = ambient_ideal(S.branches)
    eta = distance(K, SE)
    mu = distance(NN, K)
    delta = distance(NN, SE)
    if delta != eta + mu:
        # distance is additive along N^s >= K >= S; a gap means corrupt input
        raise ValueError(
            f"distance additivity failed ({delta} != {eta} + {mu}); input is not valid"
        )
    return ClassificationReport(
        gorenstein=(eta == 0),
        kunz=(eta == 1),
        nearly_gorenstein_point=(mu == 1),
        eta=eta,
        mu=mu,
        delta_invariant=delta,
    )
