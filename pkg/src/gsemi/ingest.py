"""Value semigroups of parametrized curve germs, by exact linear algebra.

Input: a curve with s branches, each generator of its local ring given by
its power-series expansion on every branch (polynomial data, exact), over Q
or over a prime field. Output: the value semigroup as a validated
``GoodSemigroup``, together with the ring-side colength data.

The computation works in the truncated product ring prod_i k[t_i]/t_i^N.
The subalgebra generated by the input series is saturated into a reduced
echelon basis (multiplication is compatible with truncation, so closing the
basis under row * generator products yields exactly the image of the full
subalgebra). Orders are then read off a filtration: for a vector a let
W_a be the subspace whose elements vanish below a on every branch; the
algebra takes the value a iff W_a contains an element with a nonzero
coefficient at position a_i on every branch i simultaneously. Over Q, and
over GF(p) with p >= s, that is equivalent to the rank condition
dim W_{a+e_i} < dim W_a for all i; over smaller prime fields the package
decides it exactly by enumerating the projection of W_a onto the s pinned
coefficient positions.

Truncation can silently hide structure, so nothing is trusted from a single
window: the detected semigroup must reproduce the membership oracle on the
whole window, pass full axiom validation, cover its conductor plus twice
the multiplicity, and come out identical in two consecutive rounds of
doubled truncation before it is returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Optional, Sequence, Union

from gsemi.lattice import Box, Vec, add, as_vec, leq, min_vec, smul, sub, unit, weight, zero
from gsemi.semigroup import GoodSemigroup


class IngestError(Exception):
    """Raised when curve data cannot produce a certified value semigroup."""


# -- coefficient fields -------------------------------------------------


class Rationals:
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x: Union[int, str, Fraction]) -> Fraction:
        if isinstance(x, bool):
            raise IngestError(f"bad rational coefficient {x!r}")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            try:
                return Fraction(x)
            except (ValueError, ZeroDivisionError) as exc:
                raise IngestError(f"bad rational coefficient {x!r}") from exc
        raise IngestError(f"bad rational coefficient {x!r}")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    @property
    def size(self) -> Optional[int]:
        return None  # infinite

    def __repr__(self) -> str:
        return "Rationals()"


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise IngestError(f"field characteristic {p} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x: Union[int, str]) -> int:
        if isinstance(x, bool):
            raise IngestError(f"bad coefficient {x!r} for {self.name}")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            try:
                f = Fraction(x)
            except (ValueError, ZeroDivisionError) as exc:
                raise IngestError(f"bad coefficient {x!r} for {self.name}") from exc
            den = f.denominator % self.p
            if den == 0:
                raise IngestError(f"coefficient {x!r} has denominator divisible by {self.p}")
            return (f.numerator % self.p) * pow(den, self.p - 2, self.p) % self.p
        raise IngestError(f"bad coefficient {x!r} for {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError
        return a * pow(b, self.p - 2, self.p) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    @property
    def size(self) -> Optional[int]:
        return self.p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


Field = Union[Rationals, PrimeField]


def parse_field(doc: object) -> Field:
    if doc in (None, "Q", "q", "QQ"):
        return Rationals()
    if isinstance(doc, dict) and "p" in doc:
        return PrimeField(int(doc["p"]))
    raise IngestError(f"unrecognized field {doc!r}; use \"Q\" or {{\"p\": prime}}")


# -- branch series ------------------------------------------------------


@dataclass(frozen=True)
class BranchSeries:
    """One branch component, exact polynomial coefficient data."""

    field: Field
    coeffs: tuple[tuple[int, object], ...]  # (exponent, coefficient), sorted

    @classmethod
    def from_pairs(cls, field: Field, pairs: Iterable[Sequence]) -> "BranchSeries":
        seen: dict[int, object] = {}
        for pair in pairs:
            if len(pair) != 2:
                raise IngestError(f"series term {pair!r} is not an [exponent, coefficient] pair")
            e, c = pair
            e = int(e)
            if e < 0:
                raise IngestError(f"negative exponent {e} in series data")
            if e in seen:
                raise IngestError(f"duplicate exponent {e} in series data")
            cv = field.coerce(c)
            if not field.is_zero(cv):
                seen[e] = cv
        return cls(field=field, coeffs=tuple(sorted(seen.items())))

    def order(self) -> Optional[int]:
        """Least exponent with nonzero coefficient; None for the zero series."""
        return self.coeffs[0][0] if self.coeffs else None

    def max_exponent(self) -> int:
        return self.coeffs[-1][0] if self.coeffs else 0

    def dense(self, trunc: int) -> list:
        out = [self.field.zero] * trunc
        for e, c in self.coeffs:
            if e < trunc:
                out[e] = c
        return out


@dataclass(frozen=True)
class CurvePresentation:
    """A curve germ: s branches, ring generators expanded on each branch."""

    field: Field
    branches: int
    generators: tuple[tuple[BranchSeries, ...], ...]
    name: Optional[str] = None

    def __post_init__(self) -> None:
        if self.branches < 1:
            raise IngestError("curve needs at least one branch")
        if not self.generators:
            raise IngestError("curve needs at least one generator")
        for k, gen in enumerate(self.generators):
            if len(gen) != self.branches:
                raise IngestError(
                    f"generator {k} has {len(gen)} branch components, expected {self.branches}"
                )
            if all(comp.order() is None for comp in gen):
                raise IngestError(f"generator {k} is identically zero")
            for i, comp in enumerate(gen):
                o = comp.order()
                if o == 0:
                    raise IngestError(
                        f"generator {k} has a unit component on branch {i}; "
                        "generators must lie in the maximal ideal"
                    )
        # individual generators may vanish on some branches (coordinate
        # functions of reducible curves do), but at least one must be a
        # nonzerodivisor, i.e. nonzero on every branch
        if not any(
            all(comp.order() is not None for comp in gen) for gen in self.generators
        ):
            raise IngestError(
                "no generator is a nonzerodivisor; include one that is nonzero "
                "on every branch (a generic combination works)"
            )
        for i in range(self.branches):
            if all(gen[i].order() is None for gen in self.generators):
                raise IngestError(
                    f"branch {i} is not reached by any generator; presentation is degenerate"
                )

    @classmethod
    def from_dict(cls, doc: dict) -> "CurvePresentation":
        if not isinstance(doc, dict):
            raise IngestError("curve document must be a JSON object")
        field = parse_field(doc.get("field"))
        try:
            raw_gens = doc["generators"]
        except KeyError as exc:
            raise IngestError(f"curve document missing key {exc}") from exc
        branches = doc.get("branches")
        gens = []
        for raw in raw_gens:
            gens.append(tuple(BranchSeries.from_pairs(field, comp) for comp in raw))
        if branches is None:
            if not gens:
                raise IngestError("curve needs at least one generator")
            branches = len(gens[0])
        return cls(
            field=field,
            branches=int(branches),
            generators=tuple(gens),
            name=doc.get("name"),
        )

    @classmethod
    def from_json(cls, text: str) -> "CurvePresentation":
        return cls.from_dict(json.loads(text))

    def max_exponent(self) -> int:
        return max(
            comp.max_exponent() for gen in self.generators for comp in gen
        )


# -- truncated subalgebra basis -----------------------------------------


class ValueSpace:
    """Reduced echelon basis of the subalgebra image in prod k[t_i]/t_i^N.

    Vectors are flat lists of field elements, branch-major: position
    i * trunc + e holds the coefficient of t_i^e.
    """

    def __init__(self, field: Field, branches: int, trunc: int):
        self.field = field
        self.branches = branches
        self.trunc = trunc
        self.width = branches * trunc
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self.degree_bound: Optional[int] = None  # None until generation runs
        self.saturated = False
        self._oracle: Optional["OrderOracle"] = None

    @property
    def dim(self) -> int:
        return len(self.rows)

    def oracle(self) -> "OrderOracle":
        if self._oracle is None:
            self._oracle = OrderOracle(self)
        return self._oracle

    def _reduce(self, v: list) -> list:
        f = self.field
        for r, p in zip(self.rows, self.pivots):
            if not f.is_zero(v[p]):
                c = v[p]
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, r)]
        return v

    def insert(self, v: list) -> bool:
        """Reduce v against the basis; add it if independent. True if added."""
        f = self.field
        v = self._reduce(v)
        pivot = next((j for j, x in enumerate(v) if not f.is_zero(x)), None)
        if pivot is None:
            return False
        inv = v[pivot]
        v = [f.div(x, inv) for x in v]
        for k, (r, p) in enumerate(zip(self.rows, self.pivots)):
            c = r[pivot]
            if not f.is_zero(c):
                self.rows[k] = [f.sub(x, f.mul(c, y)) for x, y in zip(r, v)]
        at = next((k for k, p in enumerate(self.pivots) if p > pivot), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, pivot)
        return True

    def mul_row(self, v: list, gen: tuple[BranchSeries, ...]) -> list:
        """Truncated product of a basis vector with one generator."""
        f = self.field
        N = self.trunc
        out = [f.zero] * self.width
        for i, comp in enumerate(gen):
            base = i * N
            for e, c in comp.coeffs:
                if e >= N:
                    continue
                for d in range(N - e):
                    x = v[base + d]
                    if not f.is_zero(x):
                        out[base + d + e] = f.add(out[base + d + e], f.mul(c, x))
        return out


def build_value_space(
    curve: CurvePresentation, trunc: int, max_depth: Optional[int] = None
) -> ValueSpace:
    """Span of generator monomials at truncation trunc (exclusive bound).

    Closure argument: truncation is a ring map, so the image of the algebra
    is the span of the images of all generator monomials, and that span is
    reached by repeatedly multiplying basis rows by generators until no
    product adds a new row; a full quiet pass means multiplicative closure.
    The dimension is bounded by branches * trunc, so this terminates on its
    own; max_depth optionally caps the monomial degree (the result is then
    possibly a proper subspace, and ``saturated`` stays False).
    """
    if trunc < 1:
        raise IngestError("truncation must be positive")
    V = ValueSpace(curve.field, curve.branches, trunc)
    f = curve.field
    one_vec = [f.zero] * V.width
    for i in range(curve.branches):
        one_vec[i * trunc] = f.one
    V.insert(one_vec)

    fresh: list[list] = []
    for gen in curve.generators:
        vec = [f.zero] * V.width
        for i, comp in enumerate(gen):
            dense = comp.dense(trunc)
            for e, c in enumerate(dense):
                vec[i * trunc + e] = c
        if V.insert(list(vec)):
            fresh.append(vec)

    depth = 1
    while fresh and (max_depth is None or depth < max_depth):
        nxt: list[list] = []
        for v in fresh:
            for gen in curve.generators:
                prod = V.mul_row(v, gen)
                if V.insert(list(prod)):
                    nxt.append(prod)
        if nxt:
            depth += 1
        fresh = nxt
    V.degree_bound = depth
    V.saturated = not fresh
    return V


def subalgebra_closure(
    c: CurvePresentation, depth: int, trunc: Union[int, Sequence[int]]
) -> ValueSpace:
    """Span of monomials in the generators of total degree <= depth.

    ``trunc`` is the largest representable exponent (inclusive), given as one
    integer or one per branch; a single working bound, the maximum, is used
    internally since the flat layout is rectangular.
    """
    if depth < 1:
        raise IngestError("depth must be >= 1")
    if isinstance(trunc, int):
        bound = trunc
    else:
        bound = max(int(t) for t in trunc)
    return build_value_space(c, bound + 1, max_depth=depth)


# -- order filtration and membership ------------------------------------


def _eliminate_column(field: Field, rows: list[list], col: int) -> list[list]:
    """Basis of the subspace of span(rows) vanishing at one column."""
    f = field
    pivot = None
    for r in rows:
        if not f.is_zero(r[col]):
            pivot = r
            break
    if pivot is None:
        return rows
    out = []
    pc = pivot[col]
    for r in rows:
        if r is pivot:
            continue
        c = r[col]
        if f.is_zero(c):
            out.append(r)
        else:
            scale = f.div(c, pc)
            out.append([f.sub(x, f.mul(scale, y)) for x, y in zip(r, pivot)])
    return out


class OrderOracle:
    """Value-membership oracle for one saturated value space.

    One recursive sweep eliminates coefficient columns branch by branch and
    tabulates dim W_a for every a in [0, trunc]^s, where W_a is the subspace
    vanishing below a. For fields with at least s scalars, a is a value iff
    dim W_{a+e_i} < dim W_a for every i. For smaller prime fields the sweep
    additionally decides, exactly, whether the projection of W_a onto the s
    pinned positions (i, a_i) contains an everywhere-nonzero vector.
    """

    def __init__(self, space: ValueSpace):
        self.space = space
        s = space.branches
        size = space.field.size
        self._small_field = size is not None and size < s
        self.dims: dict[Vec, int] = {}
        self.pinned: dict[Vec, bool] = {}
        self._sweep((), space.rows)

    def _sweep(self, prefix: Vec, rows: list[list]) -> None:
        space = self.space
        s, N, f = space.branches, space.trunc, space.field
        i = len(prefix)
        if i == s:
            self.dims[prefix] = len(rows)
            if self._small_field and all(a < N for a in prefix):
                self.pinned[prefix] = self._pinned_witness(rows, prefix)
            return
        cur = rows
        for a_i in range(N + 1):
            self._sweep(prefix + (a_i,), cur)
            if a_i < N:
                cur = _eliminate_column(f, cur, i * N + a_i)

    def _pinned_witness(self, rows: list[list], a: Vec) -> bool:
        # exact small-field test: enumerate the span of the projections of
        # the basis onto the pinned positions (at most p^s vectors) and look
        # for one with no zero coordinate
        space = self.space
        f = space.field
        N = space.trunc
        p = space.field.size
        cols = [i * N + a[i] for i in range(space.branches)]
        span: set[tuple] = {tuple([f.zero] * space.branches)}
        for r in rows:
            pr = tuple(r[c] for c in cols)
            if pr in span:
                continue
            new = set()
            for v in span:
                for scale in range(1, p):  # type: ignore[arg-type]
                    cand = tuple(f.add(x, f.mul(scale, y)) for x, y in zip(v, pr))
                    if cand not in span:
                        new.add(cand)
            span |= new
        return any(all(not f.is_zero(x) for x in v) for v in span)

    def window(self) -> Vec:
        """Largest componentwise-queryable point."""
        return tuple([self.space.trunc - 1] * self.space.branches)

    def member(self, a: Vec) -> bool:
        N = self.space.trunc
        s = self.space.branches
        if any(x < 0 for x in a):
            return False
        if any(x > N - 1 for x in a):
            raise IngestError(
                f"query {list(a)} exceeds the truncation window; increase the bound"
            )
        if self._small_field:
            return self.pinned[a]
        da = self.dims[a]
        return all(self.dims[add(a, unit(s, i))] < da for i in range(s))


def value_membership(V: ValueSpace, a: Iterable[int]) -> bool:
    """Whether some element of the span has order vector exactly a."""
    return V.oracle().member(as_vec(a))


# -- semigroup detection -------------------------------------------------


@dataclass(frozen=True)
class IngestResult:
    semigroup: GoodSemigroup
    truncation: int
    rounds: int
    delta_ring: int
    stabilized: bool
    history: tuple[dict, ...]
    space: ValueSpace
    depth: Optional[int] = None

    def provenance(self) -> dict:
        return {
            "field": self.space.field.name,
            "truncation": self.truncation,
            "depth": self.depth,
            "saturated": self.space.saturated,
            "rounds": self.rounds,
            "stabilized": self.stabilized,
            "delta_ring": self.delta_ring,
        }


def _detect_round(
    curve: CurvePresentation, oracle: OrderOracle
) -> Optional[tuple[GoodSemigroup, int]]:
    """One window's candidate semigroup, or None if the window is too small."""
    s = curve.branches
    hi = oracle.window()
    detected: set[Vec] = set()
    for a in Box(zero(s), hi):
        if oracle.member(a):
            detected.add(a)
    nonzero = [a for a in detected if any(a)]
    if not nonzero:
        return None
    alpha = nonzero[0]
    for a in nonzero[1:]:
        alpha = min_vec(alpha, a)
    if min(alpha) < 1:
        raise IngestError(
            f"detected multiplicity {list(alpha)} touches a coordinate hyperplane; "
            "the presented ring is not local"
        )

    # conductor candidate: least corner whose alpha-box is fully detected
    cand_hi = sub(hi, alpha)
    if min(cand_hi) < 0:
        return None
    beta: Optional[Vec] = None
    for c in Box(zero(s), cand_hi):
        if all(p in detected for p in Box(c, add(c, alpha))):
            beta = c if beta is None else min_vec(beta, c)
    if beta is None:
        return None
    if not all(p in detected for p in Box(beta, add(beta, alpha))):
        return None  # candidate corners did not meet in a corner of S itself
    if not leq(add(beta, smul(2, alpha)), hi):
        return None  # window must comfortably cover the conductor
    for j in range(s):
        if beta[j] == 0:
            continue
        probe = sub(beta, unit(s, j))
        if all(p in detected for p in Box(probe, add(probe, alpha))):
            return None  # conductor must be exact in every coordinate

    small = frozenset(a for a in detected if leq(a, beta))
    S = GoodSemigroup(branches=s, conductor=beta, small=small, name=curve.name)

    # the finite representation must reproduce the oracle on the whole window
    for a in Box(zero(s), hi):
        if S.membership(a) != (a in detected):
            return None
    if not S.validate().valid:
        return None

    dim_image = oracle.space.dim - oracle.dims[beta]
    delta_ring = weight(beta) - dim_image
    return S, delta_ring


def compute_value_semigroup(
    curve: CurvePresentation,
    max_trunc: int = 256,
    start_trunc: Optional[int] = None,
    max_depth: Optional[int] = None,
) -> IngestResult:
    """Detect the value semigroup, escalating truncation until stable.

    Acceptance requires, in one window: exact agreement between the
    membership oracle and the detected finite representation, full axiom
    validation, and coverage of conductor + 2 * multiplicity; and across
    windows: two consecutive rounds with identical conductor, small set,
    and ring colength. Raises IngestError when max_trunc is exhausted.
    """
    N = start_trunc if start_trunc is not None else max(8, curve.max_exponent() + 2)
    if N > max_trunc:
        raise IngestError(
            f"starting truncation {N} already exceeds the bound {max_trunc}; "
            "raise the bound (GSL_MAX_TRUNC)"
        )
    history: list[dict] = []
    prev: Optional[tuple[GoodSemigroup, int]] = None
    while N <= max_trunc:
        space = build_value_space(curve, N, max_depth=max_depth)
        oracle = space.oracle()
        found = _detect_round(curve, oracle)
        if found is None:
            history.append({"trunc": N, "status": "window-too-small"})
            prev = None
        else:
            S, delta_ring = found
            history.append(
                {
                    "trunc": N,
                    "status": "candidate",
                    "conductor": list(S.conductor),
                    "small_count": len(S.small),
                    "delta_ring": delta_ring,
                }
            )
            if (
                prev is not None
                and prev[0].conductor == S.conductor
                and prev[0].small == S.small
                and prev[1] == delta_ring
            ):
                history[-1]["status"] = "stable"
                return IngestResult(
                    semigroup=S,
                    truncation=N,
                    rounds=len(history),
                    delta_ring=delta_ring,
                    stabilized=True,
                    history=tuple(history),
                    space=space,
                    depth=space.degree_bound,
                )
            prev = (S, delta_ring)
        N *= 2
    raise IngestError(
        f"value semigroup did not stabilize within truncation {max_trunc}; "
        "raise the bound (GSL_MAX_TRUNC)"
    )


def ring_colengths(
    curve: CurvePresentation,
    S: Optional[GoodSemigroup] = None,
    space: Optional[ValueSpace] = None,
) -> int:
    """Colength of the curve ring inside its normalization (delta invariant).

    Counted on the ring side: weight(conductor) minus the dimension of the
    image of the ring in the normalization modulo the conductor ideal. The
    conductor ideal sits inside the ring, so that image is already fully
    visible in any truncation window past the conductor. With S omitted the
    value semigroup is detected first and its space reused.
    """
    if S is None:
        result = compute_value_semigroup(curve)
        S = result.semigroup
        if space is None:
            space = result.space
    beta = S.conductor
    if space is None or space.trunc < max(beta) + 1 or not space.saturated:
        need = max(max(beta) + 1, curve.max_exponent() + 2, 8)
        space = build_value_space(curve, need)
    return weight(beta) - (space.dim - space.oracle().dims[beta])
