"""Set-function valuation oracles over goods, with exact rational values.

Goods are the integers 0..m-1; bundles are sets of goods; every value is a
`fractions.Fraction`.  Five oracle families are provided (additive,
budget-additive, unit-demand, OXS via bipartite matching, and explicit
tables), together with exhaustive class-membership checks: monotonicity,
additivity, submodularity, cancelability, and subadditivity.  The checks
enumerate subsets, so they carry hard size guards.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .matching import max_weight_matching_value

GoodId = int
Bundle = frozenset[int]

MAX_GOODS = 20               # dense-table / 2^m storage bound
MAX_GOODS_NESTED_CHECK = 20  # monotone, additive, submodular
MAX_GOODS_PAIR_CHECK = 16    # cancelable, subadditive (all subset pairs)


class SizeGuardError(ValueError):
    """An exhaustive check or search was asked to exceed its size guard."""


def as_fraction(x: int | str | Fraction) -> Fraction:
    """Coerce to an exact Fraction; floats are rejected to keep exactness."""
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; use Fraction, int, or 'p/q' string")
    if isinstance(x, bool):
        raise TypeError("booleans are not rational values")
    return Fraction(x)


def _bundle_mask(bundle: Iterable[int], m: int) -> int:
    mask = 0
    for g in bundle:
        if not 0 <= g < m:
            raise ValueError(f"good {g} out of range [0, {m})")
        mask |= 1 << g
    return mask


def mask_to_bundle(mask: int) -> Bundle:
    return frozenset(_iter_bits(mask))


def _iter_bits(mask: int):
    while mask:
        bit = mask & -mask
        yield bit.bit_length() - 1
        mask ^= bit


class Valuation(ABC):
    """Immutable, normalized (v(empty) = 0), non-decreasing value oracle.

    Subclasses implement `_value_mask`; results are memoized per bitmask, so
    repeated queries during searches and exhaustive checks are cheap.
    """

    def __init__(self, m: int) -> None:
        if m < 1:
            raise ValueError("a valuation needs at least one good")
        self.m = m
        self._cache: dict[int, Fraction] = {0: Fraction(0)}

    def value(self, bundle: Iterable[int]) -> Fraction:
        """v(bundle); exact and deterministic."""
        return self.value_mask(_bundle_mask(bundle, self.m))

    def value_mask(self, mask: int) -> Fraction:
        cached = self._cache.get(mask)
        if cached is None:
            cached = self._cache[mask] = self._value_mask(mask)
        return cached

    def marginal(self, good: int, bundle: Iterable[int]) -> Fraction:
        """v(bundle + good) - v(bundle); zero when good already belongs."""
        if not 0 <= good < self.m:
            raise ValueError(f"good {good} out of range [0, {self.m})")
        mask = _bundle_mask(bundle, self.m)
        return self.marginal_mask(good, mask)

    def marginal_mask(self, good: int, mask: int) -> Fraction:
        return self.value_mask(mask | (1 << good)) - self.value_mask(mask)

    def singleton(self, good: int) -> Fraction:
        if not 0 <= good < self.m:
            raise ValueError(f"good {good} out of range [0, {self.m})")
        return self.value_mask(1 << good)

    @abstractmethod
    def _value_mask(self, mask: int) -> Fraction:
        ...

    @abstractmethod
    def pad(self, extra: int) -> "Valuation":
        """Same valuation on m + extra goods; the new goods have zero marginal value."""


def _check_weights(weights: Sequence[int | str | Fraction]) -> tuple[Fraction, ...]:
    converted = tuple(as_fraction(w) for w in weights)
    for g, w in enumerate(converted):
        if w < 0:
            raise ValueError(f"negative weight {w} for good {g}")
    return converted


class Additive(Valuation):
    """v(S) = sum of per-good weights."""

    def __init__(self, weights: Sequence[int | str | Fraction]) -> None:
        self.weights = _check_weights(weights)
        super().__init__(len(self.weights))

    def _value_mask(self, mask: int) -> Fraction:
        return sum((self.weights[g] for g in _iter_bits(mask)), Fraction(0))

    def pad(self, extra: int) -> "Additive":
        return Additive(self.weights + (Fraction(0),) * extra)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Additive) and self.weights == other.weights

    def __hash__(self) -> int:
        return hash(("additive", self.weights))

    def __repr__(self) -> str:
        return f"Additive({list(map(str, self.weights))})"


class BudgetAdditive(Valuation):
    """v(S) = min(cap, sum of weights)."""

    def __init__(self, weights: Sequence[int | str | Fraction], cap: int | str | Fraction) -> None:
        self.weights = _check_weights(weights)
        self.cap = as_fraction(cap)
        if self.cap < 0:
            raise ValueError(f"negative cap {self.cap}")
        super().__init__(len(self.weights))

    def _value_mask(self, mask: int) -> Fraction:
        total = sum((self.weights[g] for g in _iter_bits(mask)), Fraction(0))
        return total if total < self.cap else self.cap

    def pad(self, extra: int) -> "BudgetAdditive":
        return BudgetAdditive(self.weights + (Fraction(0),) * extra, self.cap)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BudgetAdditive)
            and self.weights == other.weights
            and self.cap == other.cap
        )

    def __hash__(self) -> int:
        return hash(("budget_additive", self.weights, self.cap))

    def __repr__(self) -> str:
        return f"BudgetAdditive({list(map(str, self.weights))}, cap={self.cap})"


class UnitDemand(Valuation):
    """v(S) = best single good in S (0 on the empty set)."""

    def __init__(self, weights: Sequence[int | str | Fraction]) -> None:
        self.weights = _check_weights(weights)
        super().__init__(len(self.weights))

    def _value_mask(self, mask: int) -> Fraction:
        return max((self.weights[g] for g in _iter_bits(mask)), default=Fraction(0))

    def pad(self, extra: int) -> "UnitDemand":
        return UnitDemand(self.weights + (Fraction(0),) * extra)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UnitDemand) and self.weights == other.weights

    def __hash__(self) -> int:
        return hash(("unit_demand", self.weights))

    def __repr__(self) -> str:
        return f"UnitDemand({list(map(str, self.weights))})"


class OXS(Valuation):
    """v(S) = maximum-weight matching of S's goods to abstract slots.

    Edges are (good, slot label, weight) triples; slot labels may be any
    strings or integers.  OXS functions are monotone submodular.
    """

    def __init__(
        self,
        m: int,
        edges: Iterable[tuple[int, int | str, int | str | Fraction]],
    ) -> None:
        normalized: list[tuple[int, int | str, Fraction]] = []
        labels: dict[int | str, int] = {}
        for good, label, weight in edges:
            w = as_fraction(weight)
            if w < 0:
                raise ValueError(f"negative weight {w} on edge ({good}, {label!r})")
            if not 0 <= good < m:
                raise ValueError(f"edge good {good} out of range [0, {m})")
            if label not in labels:
                labels[label] = len(labels)
            normalized.append((good, label, w))
        self.edges = tuple(normalized)
        self._slot_index = labels
        super().__init__(m)

    def _value_mask(self, mask: int) -> Fraction:
        edges = [
            (good, self._slot_index[label], weight)
            for good, label, weight in self.edges
            if mask >> good & 1
        ]
        if not edges:
            return Fraction(0)
        return max_weight_matching_value(self.m, len(self._slot_index), edges)

    def pad(self, extra: int) -> "OXS":
        return OXS(self.m + extra, self.edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OXS) and self.m == other.m and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(("oxs", self.m, self.edges))

    def __repr__(self) -> str:
        return f"OXS(m={self.m}, edges={len(self.edges)})"


class Table(Valuation):
    """Explicit dense oracle: one value per subset, indexed by bitmask.

    Bit g of the index corresponds to good g.  The table must be normalized
    (entry 0 is 0) with non-negative values; monotonicity is not required of
    a bare table (so `is_monotone` can report on it) but is enforced
    eagerly wherever tables are put to use: `Instance` construction and
    document loading both reject non-monotone tables.
    """

    def __init__(self, m: int, values: Sequence[int | str | Fraction]) -> None:
        if m > MAX_GOODS:
            raise SizeGuardError(f"m = {m} exceeds the supported bound {MAX_GOODS}")
        if len(values) != 1 << m:
            raise ValueError(f"table needs {1 << m} entries for m = {m}, got {len(values)}")
        self.values = tuple(as_fraction(v) for v in values)
        if self.values[0] != 0:
            raise ValueError("table is not normalized: value on the empty set must be 0")
        for mask, value in enumerate(self.values):
            if value < 0:
                raise ValueError(f"negative value {value} for subset {sorted(_iter_bits(mask))}")
        super().__init__(m)

    def _value_mask(self, mask: int) -> Fraction:
        return self.values[mask]

    def pad(self, extra: int) -> "Table":
        m_new = self.m + extra
        real = (1 << self.m) - 1
        return Table(m_new, [self.values[mask & real] for mask in range(1 << m_new)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Table) and self.m == other.m and self.values == other.values

    def __hash__(self) -> int:
        return hash(("table", self.m, self.values))

    def __repr__(self) -> str:
        return f"Table(m={self.m})"


@dataclass(frozen=True)
class Instance:
    """A fair-division instance: n agents, m goods, one valuation per agent.

    Table valuations are checked for monotonicity eagerly here; the closed
    forms are non-decreasing by construction.
    """

    n: int
    m: int
    valuations: tuple[Valuation, ...]
    description: str = ""

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError("need at least one agent and one good")
        if len(self.valuations) != self.n:
            raise ValueError(f"expected {self.n} valuations, got {len(self.valuations)}")
        for i, v in enumerate(self.valuations):
            if v.m != self.m:
                raise ValueError(f"agent {i} valuation covers {v.m} goods, instance has {self.m}")
            if isinstance(v, Table) and not is_monotone(v):
                raise ValueError(f"agent {i} table is not monotone")


@dataclass(frozen=True)
class ClassCheck:
    """Outcome of an exhaustive class-membership check.

    When the property fails, `witness` is the first violating (S, T, g)
    triple in (S bitmask, T bitmask, g) order, for reproducible reporting.
    """

    holds: bool
    witness: tuple[Bundle, Bundle, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def value_table(v: Valuation) -> list[Fraction]:
    """All 2^m subset values, indexed by bitmask (also warms the oracle cache)."""
    if v.m > MAX_GOODS:
        raise SizeGuardError(f"tabulating 2^{v.m} values exceeds the storage bound 2^{MAX_GOODS}")
    return [v.value_mask(mask) for mask in range(1 << v.m)]


def _guard(v: Valuation, bound: int, what: str) -> None:
    if v.m > bound:
        raise SizeGuardError(f"{what} enumerates subsets; m = {v.m} exceeds the guard {bound}")


def is_monotone(v: Valuation) -> bool:
    """Exhaustive: every single-good marginal is non-negative."""
    _guard(v, MAX_GOODS_NESTED_CHECK, "is_monotone")
    vals = value_table(v)
    for mask in range(1 << v.m):
        for g in range(v.m):
            bit = 1 << g
            if not mask & bit and vals[mask | bit] < vals[mask]:
                return False
    return True


def is_additive(v: Valuation) -> bool:
    """Exhaustive: v(S) equals the sum of singleton values over S."""
    _guard(v, MAX_GOODS_NESTED_CHECK, "is_additive")
    vals = value_table(v)
    for mask in range(1, 1 << v.m):
        bit = mask & -mask
        if vals[mask] != vals[bit] + vals[mask ^ bit]:
            return False
    return True


def _ascending_submasks(mask: int):
    """All submasks of `mask` in increasing numeric order, starting at 0."""
    sub = 0
    while True:
        yield sub
        sub = (sub - mask) & mask
        if sub == 0:
            return


def is_submodular(v: Valuation) -> ClassCheck:
    """Exhaustive diminishing-returns check: v(g|S) >= v(g|T) for S subset of T, g outside T."""
    _guard(v, MAX_GOODS_NESTED_CHECK, "is_submodular")
    vals = value_table(v)
    full = (1 << v.m) - 1
    for s_mask in range(1 << v.m):
        complement = full ^ s_mask
        vs = vals[s_mask]
        # T = s_mask | extra is increasing in `extra` because the bits are disjoint.
        for extra in _ascending_submasks(complement):
            t_mask = s_mask | extra
            vt = vals[t_mask]
            for g in _iter_bits(full ^ t_mask):
                bit = 1 << g
                if vals[s_mask | bit] - vs < vals[t_mask | bit] - vt:
                    return ClassCheck(False, (mask_to_bundle(s_mask), mask_to_bundle(t_mask), g))
    return ClassCheck(True)


def submodular_by_extension_bound(v: Valuation) -> bool:
    """Alternative submodularity characterization (Nemhauser-Wolsey):

    v(T) <= v(S) + sum over g in T - S of v(g|S), for every pair S, T.
    Agrees with `is_submodular` on monotone oracles; used to cross-check it.
    """
    _guard(v, MAX_GOODS_PAIR_CHECK, "submodular_by_extension_bound")
    vals = value_table(v)
    for s_mask in range(1 << v.m):
        vs = vals[s_mask]
        for t_mask in range(1 << v.m):
            bound = vs
            for g in _iter_bits(t_mask & ~s_mask):
                bound += vals[s_mask | (1 << g)] - vs
            if vals[t_mask] > bound:
                return False
    return True


def is_cancelable(v: Valuation) -> ClassCheck:
    """Exhaustive: v(S+g) > v(T+g) implies v(S) > v(T), for all S, T and outside g."""
    _guard(v, MAX_GOODS_PAIR_CHECK, "is_cancelable")
    vals = value_table(v)
    full = (1 << v.m) - 1
    for s_mask in range(1 << v.m):
        vs = vals[s_mask]
        for t_mask in range(1 << v.m):
            vt = vals[t_mask]
            if vs > vt:
                continue  # the implication's conclusion cannot fail
            for g in _iter_bits(full ^ (s_mask | t_mask)):
                bit = 1 << g
                if vals[s_mask | bit] > vals[t_mask | bit]:
                    return ClassCheck(False, (mask_to_bundle(s_mask), mask_to_bundle(t_mask), g))
    return ClassCheck(True)


def is_subadditive(v: Valuation) -> bool:
    """Exhaustive: v(S | T) <= v(S) + v(T) over all subset pairs."""
    _guard(v, MAX_GOODS_PAIR_CHECK, "is_subadditive")
    vals = value_table(v)
    for s_mask in range(1 << v.m):
        vs = vals[s_mask]
        for t_mask in range(1 << v.m):
            if vals[s_mask | t_mask] > vs + vals[t_mask]:
                return False
    return True
