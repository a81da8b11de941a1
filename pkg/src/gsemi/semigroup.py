"""Good semigroups of N^s in truncated representation.

A good semigroup S is stored by its number of branches s, its conductor
vector beta (the least vector with beta + N^s contained in S), and the finite
set small = S intersected with the box [0, beta]. Membership anywhere follows
from the truncation law::

    a in S  <=>  a >= 0  and  min(a, beta) in small

All axioms (closure under componentwise min, the exchange property, existence
of a conductor, locality) are decidable on the small set alone; ``validate``
checks them and reports violations with stable codes instead of raising, so
callers can surface every defect of an input document at once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional, Sequence

from gsemi.lattice import (
    Box,
    DimensionMismatch,
    OrderMode,
    Vec,
    add,
    as_vec,
    box_to,
    compare,
    is_nonnegative,
    leq,
    min_vec,
    ones,
    smul,
    sub,
    unit,
    zero,
)


@dataclass(frozen=True)
class Violation:
    """One axiom failure. ``witness`` is JSON-ready evidence."""

    code: str
    message: str
    witness: object = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [
                {"code": v.code, "message": v.message, "witness": v.witness}
                for v in self.violations
            ],
        }


@dataclass(frozen=True)
class SemigroupIndices:
    """The singularity indices of a local good semigroup.

    alpha is the least nonzero element (the multiplicity vector), gamma the
    Frobenius vector beta - 1. m counts how many multiples of alpha fit under
    the conductor, r how many are needed to reach it:

        m = max { k >= 0 : (k+1) * alpha <= beta }
        r = min { k >= 0 : (k+1) * alpha >= beta }

    n is the least layer index i in [2, m+1] whose open slab
    ((i-1)*alpha, i*alpha) meets S, and d the lex-least semigroup element in
    that slab; both are None when no slab in range meets S. ``degenerate``
    marks the regular point S = N (conductor 0), where alpha falls back to
    the true least nonzero element (1,) even though the small set is {0}.
    """

    alpha: Vec
    gamma: Vec
    m: int
    r: int
    n: Optional[int] = None
    d: Optional[Vec] = None
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "gamma": list(self.gamma),
            "m": self.m,
            "r": self.r,
            "n": self.n,
            "d": list(self.d) if self.d is not None else None,
            "degenerate": self.degenerate,
        }


@dataclass(frozen=True)
class GoodSemigroup:
    """Truncated representation of a good semigroup of N^s."""

    branches: int
    conductor: Vec
    small: frozenset[Vec]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.branches < 1:
            raise ValueError("branches must be >= 1")
        if len(self.conductor) != self.branches:
            raise DimensionMismatch(
                f"conductor has {len(self.conductor)} coordinates, expected {self.branches}"
            )
        if not is_nonnegative(self.conductor):
            raise ValueError("conductor must be nonnegative")
        for w in self.small:
            if len(w) != self.branches:
                raise DimensionMismatch(
                    f"small element {w} has wrong dimension, expected {self.branches}"
                )

    # -- construction ------------------------------------------------

    @classmethod
    def from_small(
        cls,
        conductor: Iterable[int],
        small: Iterable[Iterable[int]],
        name: Optional[str] = None,
    ) -> "GoodSemigroup":
        beta = as_vec(conductor)
        elems = frozenset(as_vec(w) for w in small)
        return cls(branches=len(beta), conductor=beta, small=elems, name=name)

    @classmethod
    def from_generators(
        cls, generators: Iterable[int], name: Optional[str] = None
    ) -> "GoodSemigroup":
        """Numerical semigroup (one branch) generated by positive integers.

        The generators must be coprime overall, otherwise no conductor
        exists.
        """
        gens = sorted({int(g) for g in generators})
        if not gens or gens[0] < 1:
            raise ValueError("generators must be positive integers")
        g = 0
        for x in gens:
            g = gcd(g, x)
        if g != 1:
            raise ValueError(f"generators {gens} have gcd {g} != 1, no conductor exists")
        # sieve up to min*max, a safe bound for the largest gap
        bound = gens[0] * gens[-1] + 1
        reach = [False] * (bound + 1)
        reach[0] = True
        for x in range(bound + 1):
            if not reach[x]:
                continue
            for gen in gens:
                if x + gen <= bound:
                    reach[x + gen] = True
        last_gap = -1
        for x in range(bound, -1, -1):
            if not reach[x]:
                last_gap = x
                break
        beta = last_gap + 1
        small = frozenset((x,) for x in range(beta + 1) if reach[x])
        return cls(branches=1, conductor=(beta,), small=small, name=name)

    @classmethod
    def from_json(cls, text: str) -> "GoodSemigroup":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_dict(cls, doc: dict) -> "GoodSemigroup":
        if not isinstance(doc, dict):
            raise ValueError("semigroup document must be a JSON object")
        name = doc.get("name")
        if "generators" in doc:
            if "small" in doc or "conductor" in doc:
                raise ValueError(
                    "give either generators or conductor+small, not both"
                )
            return cls.from_generators(doc["generators"], name=name)
        try:
            conductor = doc["conductor"]
            small = doc["small"]
        except KeyError as exc:
            raise ValueError(f"semigroup document missing key {exc}") from exc
        sg = cls.from_small(conductor, small, name=name)
        declared = doc.get("branches")
        if declared is not None and int(declared) != sg.branches:
            raise ValueError(
                f"declared branches {declared} != conductor dimension {sg.branches}"
            )
        return sg

    def to_dict(self) -> dict:
        doc: dict = {
            "branches": self.branches,
            "conductor": list(self.conductor),
            "small": sorted(list(w) for w in self.small),
        }
        if self.name is not None:
            doc["name"] = self.name
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    # -- membership --------------------------------------------------

    def membership(self, a: Sequence[int]) -> bool:
        v = as_vec(a)
        if len(v) != self.branches:
            raise DimensionMismatch(
                f"element has {len(v)} coordinates, semigroup has {self.branches}"
            )
        if not is_nonnegative(v):
            return False
        return min_vec(v, self.conductor) in self.small

    def __contains__(self, a: object) -> bool:
        if not isinstance(a, Sequence):
            return False
        return self.membership(a)  # type: ignore[arg-type]

    def small_sorted(self) -> list[Vec]:
        return sorted(self.small)

    # -- invariants --------------------------------------------------

    def multiplicity(self) -> Vec:
        """Least nonzero element of S (alpha). Requires a valid local input."""
        nonzero = [w for w in self.small if any(w)]
        if not nonzero:
            # regular point S = N^s: least nonzero element is the all-ones vector
            return ones(self.branches)
        acc = nonzero[0]
        for w in nonzero[1:]:
            acc = min_vec(acc, w)
        return acc

    def frobenius(self) -> Vec:
        return sub(self.conductor, ones(self.branches))

    # -- validation --------------------------------------------------

    def validate(self) -> ValidationReport:
        out: list[Violation] = []
        beta = self.conductor
        box = box_to(beta)
        z = zero(self.branches)

        for w in self.small_sorted():
            if w not in box:
                out.append(
                    Violation(
                        "box",
                        f"small element {list(w)} lies outside [0, {list(beta)}]",
                        list(w),
                    )
                )
        if z not in self.small:
            out.append(Violation("zero-missing", "0 is not in the small set", list(z)))
        if beta not in self.small:
            out.append(
                Violation(
                    "conductor-missing",
                    f"conductor {list(beta)} is not in the small set",
                    list(beta),
                )
            )

        # locality: only 0 may touch a coordinate hyperplane
        for w in self.small_sorted():
            if any(w) and min(w) == 0:
                out.append(
                    Violation(
                        "locality",
                        f"nonzero element {list(w)} has a vanishing coordinate",
                        list(w),
                    )
                )

        elems = self.small_sorted()
        small = self.small

        for a in elems:
            for b in elems:
                if b <= a:
                    continue
                if min_vec(a, b) not in small:
                    out.append(
                        Violation(
                            "min-closure",
                            f"min({list(a)}, {list(b)}) missing",
                            [list(a), list(b)],
                        )
                    )

        for a in elems:
            for b in elems:
                if b < a:
                    continue
                t = min_vec(add(a, b), beta)
                if t not in small:
                    out.append(
                        Violation(
                            "additive-closure",
                            f"min({list(a)}+{list(b)}, beta) missing",
                            [list(a), list(b)],
                        )
                    )

        out.extend(self._check_exchange())

        # minimality: stepping down from beta in any positive coordinate
        # must leave S, otherwise a smaller conductor would do
        for j in range(self.branches):
            if beta[j] < 1:
                continue
            down = sub(beta, unit(self.branches, j))
            if down in small:
                out.append(
                    Violation(
                        "conductor-minimality",
                        f"{list(down)} is in S, so {list(beta)} is not the least conductor",
                        list(down),
                    )
                )

        return ValidationReport(tuple(out))

    def _check_exchange(self) -> list[Violation]:
        # property (ii): two distinct elements agreeing in coordinate i must
        # admit a third that beats them in i and pins the min elsewhere.
        # Witnesses with w_i past beta_i survive truncation at exactly
        # beta_i, hence the equality escape in the i-th test.
        out: list[Violation] = []
        elems = self.small_sorted()
        beta = self.conductor
        for ai, a in enumerate(elems):
            for b in elems[ai + 1 :]:
                for i in range(self.branches):
                    if a[i] != b[i]:
                        continue
                    if self._exchange_witness(a, b, i) is None:
                        out.append(
                            Violation(
                                "exchange",
                                f"no exchange witness for {list(a)}, {list(b)} at coordinate {i}",
                                {"pair": [list(a), list(b)], "coordinate": i},
                            )
                        )
        return out

    def _exchange_witness(self, a: Vec, b: Vec, i: int) -> Optional[Vec]:
        beta = self.conductor
        for w in self.small_sorted():
            if not (w[i] > a[i] or (w[i] == a[i] == beta[i])):
                continue
            ok = True
            for j in range(self.branches):
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


def indices(S: GoodSemigroup, mode: OrderMode = OrderMode.LT_NEQ) -> SemigroupIndices:
    """Singularity indices alpha, gamma, m, r, n, d of a validated semigroup."""
    beta = S.conductor
    degenerate = not any(any(w) for w in S.small)
    alpha = S.multiplicity()
    gamma = S.frobenius()

    if degenerate:
        return SemigroupIndices(
            alpha=alpha, gamma=gamma, m=0, r=0, n=None, d=None, degenerate=True
        )
    if min(alpha) < 1:
        # a nonzero least element touching a hyperplane means S is not
        # local; the index theory below would not terminate
        raise ValueError(
            f"multiplicity {list(alpha)} has a vanishing coordinate; semigroup is not local"
        )

    m = 0
    while leq(smul(m + 2, alpha), beta):
        m += 1

    r = 0
    while not leq(beta, smul(r + 1, alpha)):
        r += 1

    n: Optional[int] = None
    d: Optional[Vec] = None
    for i in range(2, m + 2):
        hit = _layer_elements(S, alpha, i, mode)
        if hit:
            n = i
            d = hit[0]
            break

    return SemigroupIndices(alpha=alpha, gamma=gamma, m=m, r=r, n=n, d=d)


def _layer_elements(
    S: GoodSemigroup, alpha: Vec, i: int, mode: OrderMode
) -> list[Vec]:
    """Lex-sorted semigroup elements strictly between (i-1)*alpha and i*alpha."""
    lo = smul(i - 1, alpha)
    hi = smul(i, alpha)
    out = []
    for a in Box(lo, hi):
        if compare(lo, a, mode) and compare(a, hi, mode) and S.membership(a):
            out.append(a)
    return out


def first_nonempty_layer(
    S: GoodSemigroup, idx: SemigroupIndices, mode: OrderMode = OrderMode.LT_NEQ
) -> Optional[int]:
    """Least i >= 2 with a semigroup element in the i-th slab, scanning past m+1.

    Used for diagnostics when ``indices`` reports n absent: the slab search
    there stops at m+1 because larger n makes the constructive machinery
    inapplicable, but knowing where the first occupied slab actually sits
    explains why. Scan is bounded by r+2, past which slabs of a nondegenerate
    local semigroup lie entirely beyond the conductor.
    """
    for i in range(2, idx.r + 3):
        if _layer_elements(S, idx.alpha, i, mode):
            return i
    return None
