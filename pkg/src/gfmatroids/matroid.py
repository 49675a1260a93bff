"""Represented-matroid core: rank oracle, circuits, girth, duality, minors.

A RepMatroid is the column matroid of a GFMatrix with distinct string
labels, one per column.  All predicates reduce to exact Gaussian
elimination over the field; GF(2) columns are additionally packed into
int bitmasks so the hot search kernels run word-parallel.

Tie-breaking is lexicographic by label throughout, and search results are
deterministic: the first witness in canonical enumeration order wins.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterable, Optional, Sequence

from .gf import FieldSpec
from .gfmatrix import GFMatrix, format_gfm, parse_gfm, rref, standard_form


class UnknownLabelError(ValueError):
    """A label not present in the matroid's ground set."""


class TooLargeError(ValueError):
    """Instance exceeds the exact-search guard for this operation."""


class NoCircuitError(ValueError):
    """Requested a circuit where none exists."""


class RepMatroid:
    """A matroid given by the columns of a matrix over GF(q)."""

    def __init__(self, field: FieldSpec, matrix: GFMatrix, labels: Sequence[str]):
        if matrix.field != field:
            raise ValueError("matrix field differs from matroid field")
        labels = tuple(str(l) for l in labels)
        if len(labels) != matrix.cols:
            raise ValueError(f"{len(labels)} labels for {matrix.cols} columns")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        self.field = field
        self.matrix = matrix
        self.labels = labels
        self._index = {l: j for j, l in enumerate(labels)}
        self._cols_cache: Optional[list[tuple[int, ...]]] = None
        self._masks_cache: Optional[list[int]] = None
        self._rank_cache: Optional[int] = None

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def rank(self) -> int:
        if self._rank_cache is None:
            self._rank_cache = _rank_cols(self.field, self._cols())
        return self._rank_cache

    def _cols(self) -> list[tuple[int, ...]]:
        if self._cols_cache is None:
            self._cols_cache = self.matrix.col_tuples()
        return self._cols_cache

    def _masks(self) -> list[int]:
        # GF(2) columns as row-indexed bitmasks
        if self._masks_cache is None:
            self._masks_cache = [_mask_of(c) for c in self._cols()]
        return self._masks_cache

    def indices_of(self, s: Iterable[str]) -> list[int]:
        out = []
        for l in s:
            j = self._index.get(l)
            if j is None:
                raise UnknownLabelError(f"unknown element {l!r}")
            out.append(j)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RepMatroid)
            and self.field == other.field
            and self.labels == other.labels
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.field, self.labels, self.matrix))

    def __repr__(self) -> str:
        return f"RepMatroid({self.field!r}, {self.matrix.rows}x{self.matrix.cols}, n={self.size})"


# -- elimination kernels -------------------------------------------------------


def _mask_of(col: Sequence[int]) -> int:
    m = 0
    for i, x in enumerate(col):
        if x:
            m |= 1 << i
    return m


def _reduce_mask(pivots: dict[int, int], mask: int) -> int:
    while mask:
        b = mask & -mask
        p = pivots.get(b)
        if p is None:
            return mask
        mask ^= p
    return 0


def _reduce_vec(field: FieldSpec, pivots: list[tuple[int, tuple[int, ...]]],
                vec: Sequence[int]) -> Optional[tuple[int, tuple[int, ...]]]:
    """Reduce vec against pivot vectors; return (lead, normalized) or None if zero."""
    sub_t, mul_t = field._sub, field._mul
    v = list(vec)
    for lead, pv in pivots:
        c = v[lead]
        if c:
            mrow = mul_t[c]
            v = [sub_t[x][mrow[y]] if y else x for x, y in zip(v, pv)]
    for i, x in enumerate(v):
        if x:
            if x != 1:
                mrow = mul_t[field._inv[x]]
                v = [mrow[y] for y in v]
            return i, tuple(v)
    return None


def _rank_cols(field: FieldSpec, cols: Sequence[Sequence[int]],
               masks: Optional[Sequence[int]] = None) -> int:
    if field.q == 2:
        piv: dict[int, int] = {}
        r = 0
        for mk in (masks if masks is not None else (_mask_of(c) for c in cols)):
            red = _reduce_mask(piv, mk)
            if red:
                piv[red & -red] = red
                r += 1
        return r
    if not field.has_tables:
        raise TooLargeError(f"rank kernel needs operation tables (q <= 256), got GF({field.q})")
    pivots: list[tuple[int, tuple[int, ...]]] = []
    for c in cols:
        red = _reduce_vec(field, pivots, c)
        if red is not None:
            pivots.append(red)
    return len(pivots)


def subset_rank(m: RepMatroid, s: Iterable[str]) -> int:
    """Rank of the column submatrix selected by labels."""
    idx = m.indices_of(s)
    if m.field.q == 2:
        masks = m._masks()
        return _rank_cols(m.field, (), masks=[masks[j] for j in idx])
    cols = m._cols()
    return _rank_cols(m.field, [cols[j] for j in idx])


def is_independent(m: RepMatroid, s: Iterable[str]) -> bool:
    s = list(s)
    return subset_rank(m, s) == len(s)


# -- girth ---------------------------------------------------------------------


def _exists_dependent_masks(masks: Sequence[int], s: int) -> bool:
    n = len(masks)
    piv: dict[int, int] = {}

    def rec(start: int, depth: int) -> bool:
        if depth == s - 1:
            for j in range(start, n):
                if _reduce_mask(piv, masks[j]) == 0:
                    return True
            return False
        for j in range(start, n - (s - 1 - depth)):
            red = _reduce_mask(piv, masks[j])
            if red == 0:
                return True  # dependent set below target size; callers scan sizes upward
            lb = red & -red
            piv[lb] = red
            if rec(j + 1, depth + 1):
                return True
            del piv[lb]
        return False

    return rec(0, 0)


def _exists_dependent_vecs(field: FieldSpec, cols: Sequence[Sequence[int]], s: int) -> bool:
    n = len(cols)
    pivots: list[tuple[int, tuple[int, ...]]] = []

    def rec(start: int, depth: int) -> bool:
        if depth == s - 1:
            for j in range(start, n):
                if _reduce_vec(field, pivots, cols[j]) is None:
                    return True
            return False
        for j in range(start, n - (s - 1 - depth)):
            red = _reduce_vec(field, pivots, cols[j])
            if red is None:
                return True
            pivots.append(red)
            if rec(j + 1, depth + 1):
                return True
            pivots.pop()
        return False

    return rec(0, 0)


def _min_dependent_size(field: FieldSpec, cols: Sequence[Sequence[int]], limit: int,
                        masks: Optional[Sequence[int]] = None) -> Optional[int]:
    """Smallest s <= limit with a dependent s-subset, scanning sizes upward."""
    if field.q == 2 and masks is None:
        masks = [_mask_of(c) for c in cols]
    for s in range(1, limit + 1):
        if field.q == 2:
            if _exists_dependent_masks(masks, s):
                return s
        elif _exists_dependent_vecs(field, cols, s):
            return s
    return None


def girth(m: RepMatroid, cutoff: Optional[int] = None, max_exact: int = 24):
    """Exact minimum circuit size.

    Returns math.inf for a free matroid.  With a cutoff, returns None when
    every circuit is larger than the cutoff instead of exhausting; without
    one, ground sets above `max_exact` elements are rejected.
    """
    n = m.size
    if cutoff is None and n > max_exact:
        raise TooLargeError(
            f"exact girth limited to {max_exact} elements (|E| = {n}); pass a cutoff"
        )
    if m.rank == n:
        return math.inf
    hi = m.rank + 1 if cutoff is None else min(cutoff, m.rank + 1)
    masks = m._masks() if m.field.q == 2 else None
    for s in range(1, hi + 1):
        if m.field.q == 2:
            if _exists_dependent_masks(masks, s):
                return s
        elif _exists_dependent_vecs(m.field, m._cols(), s):
            return s
    return None


# -- exhaustive rank tables and bases --------------------------------------------


def rank_table(m: RepMatroid, max_size: int = 16) -> list[int]:
    """Rank of every subset, indexed by bitmask over label positions."""
    n = m.size
    if n > max_size:
        raise TooLargeError(f"rank_table limited to {max_size} elements (|E| = {n})")
    table = [0] * (1 << n)
    if m.field.q == 2:
        masks = m._masks()
        piv: dict[int, int] = {}

        def rec2(idx: int, mask: int, rk: int) -> None:
            if idx == n:
                table[mask] = rk
                return
            rec2(idx + 1, mask, rk)
            red = _reduce_mask(piv, masks[idx])
            if red:
                lb = red & -red
                piv[lb] = red
                rec2(idx + 1, mask | (1 << idx), rk + 1)
                del piv[lb]
            else:
                rec2(idx + 1, mask | (1 << idx), rk)

        rec2(0, 0, 0)
        return table
    cols = m._cols()
    pivots: list[tuple[int, tuple[int, ...]]] = []

    def rec(idx: int, mask: int, rk: int) -> None:
        if idx == n:
            table[mask] = rk
            return
        rec(idx + 1, mask, rk)
        red = _reduce_vec(m.field, pivots, cols[idx])
        if red is not None:
            pivots.append(red)
            rec(idx + 1, mask | (1 << idx), rk + 1)
            pivots.pop()
        else:
            rec(idx + 1, mask | (1 << idx), rk)

    rec(0, 0, 0)
    return table


def bases(m: RepMatroid, max_size: int = 16) -> list[tuple[str, ...]]:
    """All bases, in lexicographic column-index order."""
    n = m.size
    if n > max_size:
        raise TooLargeError(f"basis enumeration limited to {max_size} elements (|E| = {n})")
    r = m.rank
    out: list[tuple[str, ...]] = []
    use_masks = m.field.q == 2
    masks = m._masks() if use_masks else None
    cols = m._cols()
    piv: dict[int, int] = {}
    pivots: list[tuple[int, tuple[int, ...]]] = []
    chosen: list[int] = []

    def rec(start: int) -> None:
        if len(chosen) == r:
            out.append(tuple(m.labels[j] for j in chosen))
            return
        for j in range(start, n - (r - len(chosen)) + 1):
            if use_masks:
                red = _reduce_mask(piv, masks[j])
                if not red:
                    continue
                lb = red & -red
                piv[lb] = red
                chosen.append(j)
                rec(j + 1)
                chosen.pop()
                del piv[lb]
            else:
                red = _reduce_vec(m.field, pivots, cols[j])
                if red is None:
                    continue
                pivots.append(red)
                chosen.append(j)
                rec(j + 1)
                chosen.pop()
                pivots.pop()

    rec(0)
    return out


def sample_bases(m: RepMatroid, count: int, seed: int) -> list[tuple[str, ...]]:
    """Seeded sample of distinct bases via greedy extension of shuffled orders."""
    rng = random.Random(seed)
    n = m.size
    r = m.rank
    seen: set[tuple[str, ...]] = set()
    out: list[tuple[str, ...]] = []
    attempts = 0
    while len(out) < count and attempts < 50 * max(count, 1):
        attempts += 1
        order = list(range(n))
        rng.shuffle(order)
        if m.field.q == 2:
            masks = m._masks()
            piv: dict[int, int] = {}
            chosen = []
            for j in order:
                red = _reduce_mask(piv, masks[j])
                if red:
                    piv[red & -red] = red
                    chosen.append(j)
                    if len(chosen) == r:
                        break
        else:
            cols = m._cols()
            pivots: list[tuple[int, tuple[int, ...]]] = []
            chosen = []
            for j in order:
                red = _reduce_vec(m.field, pivots, cols[j])
                if red is not None:
                    pivots.append(red)
                    chosen.append(j)
                    if len(chosen) == r:
                        break
        basis = tuple(sorted(m.labels[j] for j in chosen))
        if basis not in seen:
            seen.add(basis)
            out.append(basis)
    return out


# -- duality, minors, simplification ---------------------------------------------


def dual(m: RepMatroid) -> RepMatroid:
    """The dual matroid, via [-A^T | I] over the lexicographically first basis."""
    rr = rref(m.matrix)
    basis = [m.labels[j] for j in rr.pivot_cols]
    sf = standard_form(m.matrix, m.labels, basis)
    nb = len(sf.nonbasis_order)
    neg = m.field.neg
    col_map: dict[str, tuple[int, ...]] = {}
    for i, b in enumerate(sf.basis_order):
        col_map[b] = tuple(neg(int(x)) for x in sf.a.data[i, :]) if nb else ()
    for j, e in enumerate(sf.nonbasis_order):
        col_map[e] = tuple(1 if i == j else 0 for i in range(nb))
    cols = [col_map[l] for l in m.labels]
    return RepMatroid(m.field, GFMatrix.from_cols(m.field, cols, nb), m.labels)


def minor(m: RepMatroid, delete: Iterable[str] = (), contract: Iterable[str] = ()) -> RepMatroid:
    """Delete and contract; a dependent contract set is split, its maximal
    lexicographic independent part contracted and the rest deleted."""
    delete = set(delete)
    contract = set(contract)
    m.indices_of(delete)
    m.indices_of(contract)
    overlap = delete & contract
    if overlap:
        raise ValueError(f"delete and contract overlap: {sorted(overlap)}")
    field = m.field
    if not field.has_tables:
        raise TooLargeError(f"minor needs operation tables (q <= 256), got GF({field.q})")
    work = m.matrix.data.copy()
    sub_t, mul_t, inv_t = field.sub_np, field.mul_np, field.inv_np
    used_rows: set[int] = set()
    contracted_cols: set[int] = set()
    to_delete = set(delete)
    for lab in sorted(contract):
        j = m._index[lab]
        pr = -1
        for i in range(work.shape[0]):
            if i not in used_rows and work[i, j]:
                pr = i
                break
        if pr < 0:
            to_delete.add(lab)  # dependent on earlier contractions
            continue
        pv = work[pr, j]
        if pv != 1:
            work[pr] = mul_t[inv_t[pv]][work[pr]]
        for i in range(work.shape[0]):
            if i != pr and work[i, j]:
                work[i] = sub_t[work[i], mul_t[work[i, j]][work[pr]]]
        used_rows.add(pr)
        contracted_cols.add(j)
    keep_rows = [i for i in range(work.shape[0]) if i not in used_rows]
    keep_cols = [
        j for j, l in enumerate(m.labels)
        if l not in to_delete and j not in contracted_cols
    ]
    new = work[keep_rows][:, keep_cols] if keep_cols else work[keep_rows][:, :0]
    labels = tuple(m.labels[j] for j in keep_cols)
    return RepMatroid(field, GFMatrix(field, new.copy()), labels)


def _norm_col(field: FieldSpec, col: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Projective normalization: scale so the first nonzero entry is 1."""
    for x in col:
        if x:
            if x == 1:
                return tuple(col)
            c = field.inv(x)
            mul = field.mul
            return tuple(mul(c, y) for y in col)
    return None


def simplify(m: RepMatroid) -> RepMatroid:
    """Drop loops; keep the lexicographically least label of each parallel class."""
    cols = m._cols()
    best: dict[tuple[int, ...], str] = {}
    for lab, col in zip(m.labels, cols):
        key = _norm_col(m.field, col)
        if key is None:
            continue
        if key not in best or lab < best[key]:
            best[key] = lab
    keep = set(best.values())
    idx = [j for j, l in enumerate(m.labels) if l in keep]
    return RepMatroid(
        m.field,
        m.matrix.take_cols(idx),
        tuple(m.labels[j] for j in idx),
    )


def cosimple_certificate(m: RepMatroid) -> Optional[tuple[str, tuple[str, ...]]]:
    """None when cosimple; else ("coloop", (e,)) or ("series_pair", (e, e')).

    Convention: any coloop or series pair disqualifies, so free matroids
    are never cosimple (every element is a coloop).
    """
    d = dual(m)
    cols = d._cols()
    for lab, col in zip(d.labels, cols):
        if not any(col):
            return ("coloop", (lab,))
    seen: dict[tuple[int, ...], str] = {}
    for lab, col in zip(d.labels, cols):
        key = _norm_col(d.field, col)
        if key is None:
            continue
        if key in seen:
            return ("series_pair", (seen[key], lab))
        seen[key] = lab
    return None


def is_cosimple(m: RepMatroid) -> bool:
    return cosimple_certificate(m) is None


# -- circuits --------------------------------------------------------------------


def circuit_of_dependent(m: RepMatroid, s: Iterable[str]) -> frozenset[str]:
    """Shrink a dependent set to a circuit, removing labels in sorted order."""
    current = set(s)
    m.indices_of(current)
    if subset_rank(m, current) == len(current):
        raise NoCircuitError(f"set {sorted(current)} is independent")
    for e in sorted(current):
        trial = current - {e}
        if subset_rank(m, trial) < len(trial):
            current = trial
    return frozenset(current)


def is_circuit(m: RepMatroid, s: Iterable[str]) -> bool:
    s = set(s)
    if not s or subset_rank(m, s) == len(s):
        return False
    return all(
        subset_rank(m, s - {e}) == len(s) - 1
        for e in s
    )


# -- isomorphism -----------------------------------------------------------------


class _Profile:
    """Label-free fingerprint: the full independence relation plus per-element
    invariants used to prune the bijection search."""

    def __init__(self, field: FieldSpec, cols: Sequence[Sequence[int]]):
        n = len(cols)
        self.n = n
        indep: set[int] = set()
        if field.q == 2:
            masks = [_mask_of(c) for c in cols]
            piv: dict[int, int] = {}

            def rec2(start: int, mask: int) -> None:
                indep.add(mask)
                for j in range(start, n):
                    red = _reduce_mask(piv, masks[j])
                    if red:
                        lb = red & -red
                        piv[lb] = red
                        rec2(j + 1, mask | (1 << j))
                        del piv[lb]

            rec2(0, 0)
        else:
            pivots: list[tuple[int, tuple[int, ...]]] = []

            def rec(start: int, mask: int) -> None:
                indep.add(mask)
                for j in range(start, n):
                    red = _reduce_vec(field, pivots, cols[j])
                    if red is not None:
                        pivots.append(red)
                        rec(j + 1, mask | (1 << j))
                        pivots.pop()

            rec(0, 0)
        self.indep = indep
        self.rank = max(bin(x).count("1") for x in indep) if indep else 0
        base_masks = [x for x in indep if bin(x).count("1") == self.rank]
        self.n_bases = len(base_masks)
        inv = []
        for i in range(n):
            bit = 1 << i
            in_indep = sum(1 for x in indep if x & bit)
            in_bases = sum(1 for x in base_masks if x & bit)
            inv.append((in_indep, in_bases))
        self.inv = inv

    def inv_multiset(self) -> tuple:
        return tuple(sorted(self.inv))


def _match_profiles(pa: _Profile, pb: _Profile) -> bool:
    if pa.n != pb.n or pa.rank != pb.rank or pa.n_bases != pb.n_bases:
        return False
    if len(pa.indep) != len(pb.indep) or pa.inv_multiset() != pb.inv_multiset():
        return False
    n = pa.n
    freq: dict[tuple, int] = {}
    for v in pa.inv:
        freq[v] = freq.get(v, 0) + 1
    order = sorted(range(n), key=lambda i: (freq[pa.inv[i]], pa.inv[i], i))
    cand = {i: [j for j in range(n) if pb.inv[j] == pa.inv[i]] for i in range(n)}
    used = [False] * n
    a_ind, b_ind = pa.indep, pb.indep

    def rec(k: int, pairs: list[tuple[int, int]]) -> bool:
        if k == n:
            return True
        ai = order[k]
        abit = 1 << ai
        for bj in cand[ai]:
            if used[bj]:
                continue
            bbit = 1 << bj
            new = []
            ok = True
            for ma, mb in pairs:
                na, nb2 = ma | abit, mb | bbit
                if (na in a_ind) != (nb2 in b_ind):
                    ok = False
                    break
                new.append((na, nb2))
            if ok:
                used[bj] = True
                if rec(k + 1, pairs + new):
                    return True
                used[bj] = False
        return False

    return rec(0, [(0, 0)])


def is_isomorphic(a: RepMatroid, b: RepMatroid, max_size: int = 12) -> bool:
    """Rank-function-preserving label bijection, by pruned backtracking."""
    if a.size != b.size or a.rank != b.rank:
        return False
    if a.size > max_size:
        raise TooLargeError(f"isomorphism limited to {max_size} elements (|E| = {a.size})")
    return _match_profiles(
        _Profile(a.field, a._cols()), _Profile(b.field, b._cols())
    )


# -- minor containment -------------------------------------------------------------


def _loop_count(cols: Sequence[Sequence[int]]) -> int:
    return sum(1 for c in cols if not any(c))


def _parallel_multiset(field: FieldSpec, cols: Sequence[Sequence[int]]) -> tuple[int, ...]:
    classes: dict[tuple[int, ...], int] = {}
    for c in cols:
        key = _norm_col(field, c)
        if key is not None:
            classes[key] = classes.get(key, 0) + 1
    return tuple(sorted(classes.values()))


def _independent_subsets(m: RepMatroid, size: int) -> list[tuple[str, ...]]:
    n = m.size
    out: list[tuple[str, ...]] = []
    if size == 0:
        return [()]
    use_masks = m.field.q == 2
    masks = m._masks() if use_masks else None
    cols = m._cols()
    piv: dict[int, int] = {}
    pivots: list[tuple[int, tuple[int, ...]]] = []
    chosen: list[int] = []

    def rec(start: int) -> None:
        if len(chosen) == size:
            out.append(tuple(m.labels[j] for j in chosen))
            return
        for j in range(start, n - (size - len(chosen)) + 1):
            if use_masks:
                red = _reduce_mask(piv, masks[j])
                if not red:
                    continue
                lb = red & -red
                piv[lb] = red
                chosen.append(j)
                rec(j + 1)
                chosen.pop()
                del piv[lb]
            else:
                red = _reduce_vec(m.field, pivots, cols[j])
                if red is None:
                    continue
                pivots.append(red)
                chosen.append(j)
                rec(j + 1)
                chosen.pop()
                pivots.pop()

    rec(0)
    return out


def has_minor(m: RepMatroid, target: RepMatroid, max_size: int = 16,
              max_target: int = 10) -> Optional[tuple[frozenset[str], frozenset[str]]]:
    """Exhaustive minor search; returns (delete, contract) labels or None.

    Only independent contract sets of size rank(m) - rank(target) are
    enumerated (every minor admits such a presentation); candidates are
    screened by cheap invariants before the full isomorphism test.
    """
    if m.size > max_size:
        raise TooLargeError(f"minor search limited to {max_size} elements (|E| = {m.size})")
    if target.size > max_target:
        raise TooLargeError(
            f"minor search limited to {max_target}-element targets (|E| = {target.size})"
        )
    r_diff = m.rank - target.rank
    d_count = m.size - r_diff - target.size
    if r_diff < 0 or d_count < 0:
        return None
    t_cols = target._cols()
    t_profile = _Profile(target.field, t_cols)
    t_loops = _loop_count(t_cols)
    t_parallel = _parallel_multiset(target.field, t_cols)
    t_girth = _min_dependent_size(target.field, t_cols, target.size)
    field = m.field
    for cset in _independent_subsets(m, r_diff):
        base = minor(m, delete=(), contract=cset)
        bcols = base._cols()
        bmasks = base._masks() if field.q == 2 else None
        nb = base.size
        for didx in itertools.combinations(range(nb), d_count):
            drop = set(didx)
            cand = [bcols[j] for j in range(nb) if j not in drop]
            cand_masks = [bmasks[j] for j in range(nb) if j not in drop] if bmasks is not None else None
            if _rank_cols(field, cand, masks=cand_masks) != target.rank:
                continue
            if _loop_count(cand) != t_loops:
                continue
            if _parallel_multiset(field, cand) != t_parallel:
                continue
            if t_girth is not None and t_girth > 3:
                small = _min_dependent_size(field, cand, t_girth - 1, masks=cand_masks)
                if small is not None:
                    continue
            if _match_profiles(_Profile(field, cand), t_profile):
                dels = frozenset(base.labels[j] for j in didx)
                return (dels, frozenset(cset))
    return None


# -- .gfm load/save ----------------------------------------------------------------


def matroid_from_gfm(text: str) -> RepMatroid:
    field, mat, labels = parse_gfm(text)
    if labels is None:
        labels = tuple(f"c{j}" for j in range(mat.cols))
    return RepMatroid(field, mat, labels)


def matroid_to_gfm(m: RepMatroid) -> str:
    return format_gfm(m.field, m.matrix, m.labels)
