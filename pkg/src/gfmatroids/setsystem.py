"""The set system attached to a standard form [I | A].

The ground set V is (basis element b, nonzero value alpha), ordered basis
first, value codes 1..q-1 second, so bitsets are comparable across runs.
Each non-basis element e contributes the set F_e of pairs (b, A[b,e]) with
a nonzero entry.  Two elements get the same set exactly when their columns
are equal.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .gf import FieldSpec
from .gfmatrix import StandardForm


class InsufficientFamilyError(ValueError):
    """Pairwise analyses need at least two member sets."""


GroundPair = tuple[str, int]


class SetSystem:
    """Bitset-backed family {F_e} on V = basis x nonzero field values."""

    def __init__(self, field: FieldSpec, basis_order: tuple[str, ...],
                 members: list[tuple[str, int]]):
        self.field = field
        self.basis_order = basis_order
        self.ground: tuple[GroundPair, ...] = tuple(
            (b, a) for b in basis_order for a in range(1, field.q)
        )
        self._ground_pos = {pair: i for i, pair in enumerate(self.ground)}
        self.members = tuple(members)  # (nonbasis label, bitset) in column order
        self._by_label = dict(members)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(l for l, _ in self.members)

    def set_of(self, label: str) -> frozenset[GroundPair]:
        mask = self._by_label[label]
        return frozenset(p for p, i in self._ground_pos.items() if mask >> i & 1)

    def mask_of(self, label: str) -> int:
        return self._by_label[label]

    def ground_mask(self, pairs: Iterable[GroundPair]) -> int:
        mask = 0
        for p in pairs:
            pos = self._ground_pos.get(tuple(p))
            if pos is None:
                raise ValueError(f"{p!r} is not a ground element")
            mask |= 1 << pos
        return mask

    def pairs_of_mask(self, mask: int) -> list[GroundPair]:
        return [p for i, p in enumerate(self.ground) if mask >> i & 1]


def build_set_system(sf: StandardForm) -> SetSystem:
    q = sf.field.q
    members = []
    a = sf.a.data
    for j, e in enumerate(sf.nonbasis_order):
        mask = 0
        for i in range(len(sf.basis_order)):
            v = int(a[i, j])
            if v:
                mask |= 1 << (i * (q - 1) + (v - 1))
        members.append((e, mask))
    return SetSystem(sf.field, sf.basis_order, members)


def _popcount(x: int) -> int:
    return x.bit_count()


def sym_diff_size(s: SetSystem, e: str, f: str) -> int:
    return _popcount(s.mask_of(e) ^ s.mask_of(f))


def hamming_distance(s: SetSystem, e: str, f: str) -> int:
    """Number of basis rows where the two underlying columns differ."""
    diff = s.mask_of(e) ^ s.mask_of(f)
    rows = 0
    per = s.q - 1
    while diff:
        if diff & ((1 << per) - 1):
            rows += 1
        diff >>= per
    return rows


def trace_count(s: SetSystem, w: Iterable[GroundPair]) -> int:
    """Number of distinct traces F_e intersected with w."""
    wmask = s.ground_mask(w)
    return len({mask & wmask for _, mask in s.members})


@dataclass(frozen=True)
class ShatterResult:
    value: int
    exact: bool
    m: int
    subsets_checked: int


def shatter(s: SetSystem, m: int, mode: str = "exact", trials: int = 1000,
            seed: int = 0, budget: int = 10**7) -> ShatterResult:
    """Maximum trace count over m-element ground subsets.

    Exact mode enumerates all C(|V|, m) subsets under the budget; sampled
    mode reports a lower bound from seeded random subsets.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    g = len(s.ground)
    m = min(m, g)
    masks = [mask for _, mask in s.members]
    distinct_total = len(set(masks))
    ceiling = min(2**m if m < 60 else distinct_total, max(distinct_total, 1))
    if mode == "exact":
        n_subsets = math.comb(g, m)
        if n_subsets > budget:
            raise ValueError(
                f"exact shatter needs {n_subsets} subsets, over the budget {budget}"
            )
        best = 0
        checked = 0
        for combo in combinations(range(g), m):
            wmask = 0
            for i in combo:
                wmask |= 1 << i
            checked += 1
            val = len({mk & wmask for mk in masks})
            if val > best:
                best = val
                if best >= ceiling:
                    break
        return ShatterResult(best, True, m, checked)
    if mode == "sampled":
        rng = random.Random(seed)
        best = 0
        for _ in range(trials):
            combo = rng.sample(range(g), m)
            wmask = 0
            for i in combo:
                wmask |= 1 << i
            val = len({mk & wmask for mk in masks})
            best = max(best, val)
        return ShatterResult(best, False, m, trials)
    raise ValueError(f"mode must be 'exact' or 'sampled', got {mode!r}")


@dataclass(frozen=True)
class SeparationReport:
    min_pair: tuple[str, str]
    sym_diff: int
    hamming: int
    delta_separated_at: int


def separation(s: SetSystem) -> SeparationReport:
    """Closest pair by symmetric difference (lexicographic tie-break)."""
    labels = sorted(s.labels)
    if len(labels) < 2:
        raise InsufficientFamilyError(
            f"separation needs >= 2 member sets, got {len(labels)}"
        )
    best: Optional[tuple[int, tuple[str, str]]] = None
    for e, f in combinations(labels, 2):
        d = sym_diff_size(s, e, f)
        key = (d, (e, f))
        if best is None or key < best:
            best = key
    d, pair = best
    return SeparationReport(pair, d, hamming_distance(s, *pair), d)


def greedy_delta_packing(s: SetSystem, delta: int) -> list[str]:
    """Greedy maximal delta-separated subfamily, scanning labels in sorted order."""
    if delta < 1:
        raise ValueError(f"delta must be >= 1, got {delta}")
    survivors: list[str] = []
    masks: list[int] = []
    for label in sorted(s.labels):
        mk = s.mask_of(label)
        if all(_popcount(mk ^ other) >= delta for other in masks):
            survivors.append(label)
            masks.append(mk)
    return survivors


@dataclass(frozen=True)
class ChainCheck:
    traces: int
    distinct_restricted_cols: int
    parallel_classes: int
    ok: bool
    basis_projection: tuple[str, ...]


def claim_chain_check(s: SetSystem, sf: StandardForm, w: Iterable[GroundPair]) -> ChainCheck:
    """Trace-count chain: traces <= distinct restricted columns <= (q-1)*classes + 1.

    The restriction keeps only the rows in the projection of w onto the basis;
    parallel classes count nonzero restricted columns up to scalar.
    """
    w = list(w)
    s.ground_mask(w)  # validates
    b_w = tuple(b for b in sf.basis_order if any(p[0] == b for p in w))
    rows = [i for i, b in enumerate(sf.basis_order) if b in set(b_w)]
    a = sf.a.data
    restricted = {tuple(int(a[i, j]) for i in rows) for j in range(len(sf.nonbasis_order))}
    classes = set()
    field = sf.field
    for col in restricted:
        for x in col:
            if x:
                c = field.inv(x)
                classes.add(tuple(field.mul(c, y) for y in col))
                break
    traces = trace_count(s, w)
    distinct = len(restricted)
    ok = traces <= distinct <= (field.q - 1) * len(classes) + 1
    return ChainCheck(traces, distinct, len(classes), ok, b_w)


def export_adjacency(s: SetSystem) -> str:
    """One line per member: label followed by its (b,alpha) pairs."""
    out = []
    for label, mask in s.members:
        pairs = s.pairs_of_mask(mask)
        out.append(label + " " + " ".join(f"({b},{a})" for b, a in pairs))
    return "\n".join(out) + "\n"
