"""Short-circuit extraction, the girth dichotomy harness, and density checks.

Given a basis, the extractor builds the standard form and its set system,
then returns the smallest circuit among: a duplicate-column parallel pair,
the circuit inside B' + {e, e'} for the closest column pairs (closest by
symmetric difference and by Hamming distance), and every fundamental
circuit.  The result always satisfies |C \\ B| <= 2 and
|C| <= hamming(closest pair) + 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .gfmatrix import standard_form
from .matroid import (
    NoCircuitError,
    RepMatroid,
    bases,
    circuit_of_dependent,
    cosimple_certificate,
    girth,
    has_minor,
    sample_bases,
    simplify,
)
from .setsystem import build_set_system, hamming_distance, sym_diff_size
from . import generators


class NotCosimpleError(ValueError):
    """Input rejected by the dichotomy harness; carries the offending
    coloop or series pair."""

    def __init__(self, certificate: tuple[str, tuple[str, ...]]):
        kind, elements = certificate
        super().__init__(f"not cosimple: {kind} {sorted(elements)}")
        self.certificate = certificate


@dataclass(frozen=True)
class ShortCircuitStats:
    nonbasis_count: int
    min_sym_diff: Optional[int]
    min_sym_pair: Optional[tuple[str, str]]
    pair_hamming: Optional[int]
    min_hamming: Optional[int]
    best_fundamental: int
    source: str  # "fundamental" | "pair"


def find_short_circuit(m: RepMatroid, basis: Iterable[str]) -> tuple[frozenset[str], ShortCircuitStats]:
    """Smallest circuit with at most two non-basis elements, w.r.t. `basis`."""
    basis = set(basis)
    sf = standard_form(m.matrix, m.labels, basis)
    nonbasis = sf.nonbasis_order
    if not nonbasis:
        raise NoCircuitError("free matroid has no circuits")
    a = sf.a.data
    candidates: list[tuple[int, tuple[str, ...], frozenset[str], str]] = []

    best_fund = None
    for j, e in sorted(enumerate(nonbasis), key=lambda p: p[1]):
        support = [b for i, b in enumerate(sf.basis_order) if a[i, j]]
        circ = frozenset(support) | {e}
        candidates.append((len(circ), tuple(sorted(circ)), circ, "fundamental"))
        if best_fund is None or len(circ) < best_fund:
            best_fund = len(circ)

    min_sym = min_sym_pair = pair_ham = min_ham = None
    if len(nonbasis) >= 2:
        system = build_set_system(sf)
        best_sym: Optional[tuple[int, tuple[str, str]]] = None
        best_hamming: Optional[tuple[int, tuple[str, str]]] = None
        for e, f in combinations(sorted(nonbasis), 2):
            sd = sym_diff_size(system, e, f)
            hd = hamming_distance(system, e, f)
            if best_sym is None or (sd, (e, f)) < best_sym:
                best_sym = (sd, (e, f))
            if best_hamming is None or (hd, (e, f)) < best_hamming:
                best_hamming = (hd, (e, f))
        min_sym, min_sym_pair = best_sym
        min_ham = best_hamming[0]
        pair_ham = hamming_distance(system, *min_sym_pair)
        col = {lab: idx for idx, lab in enumerate(nonbasis)}
        pairs_to_try = [best_sym[1]]
        if best_hamming[1] != best_sym[1]:
            pairs_to_try.append(best_hamming[1])
        for e, f in pairs_to_try:
            je, jf = col[e], col[f]
            rows_differ = [
                b for i, b in enumerate(sf.basis_order) if a[i, je] != a[i, jf]
            ]
            dependent = frozenset(rows_differ) | {e, f}
            circ = circuit_of_dependent(m, dependent)
            candidates.append((len(circ), tuple(sorted(circ)), circ, "pair"))

    size, _, best, source = min(candidates)
    stats = ShortCircuitStats(
        nonbasis_count=len(best - basis),
        min_sym_diff=min_sym,
        min_sym_pair=min_sym_pair,
        pair_hamming=pair_ham,
        min_hamming=min_ham,
        best_fundamental=best_fund,
        source=source,
    )
    return best, stats


@dataclass(frozen=True)
class DensityRatio:
    elements: int
    rank: int
    ratio: float


def density_ratio(m: RepMatroid) -> DensityRatio:
    """|E(simplify(m))| / rank(m); the growth-rate measurement."""
    r = m.rank
    if r == 0:
        raise ValueError("density ratio undefined at rank 0")
    n = simplify(m).size
    return DensityRatio(n, r, n / r)


@dataclass(frozen=True)
class MinorFinding:
    target: str
    status: str  # "found" | "absent" | "skipped"
    delete: Optional[tuple[str, ...]] = None
    contract: Optional[tuple[str, ...]] = None

    def to_json_dict(self) -> dict:
        out: dict = {"target": self.target, "status": self.status}
        if self.status == "found":
            out["delete"] = list(self.delete)
            out["contract"] = list(self.contract)
        return out


@dataclass(frozen=True)
class DichotomyReport:
    instance: str
    cosimple: bool
    girth: object  # int or math.inf
    circuit: tuple[str, ...]
    circuit_size: int
    nonbasis_count: int
    min_sym_diff: Optional[int]
    minors: tuple[MinorFinding, ...]
    density: Optional[DensityRatio]
    basis: tuple[str, ...] = ()
    basis_mode: str = "all"
    bases_checked: int = 0

    def to_json_dict(self) -> dict:
        g = "infinity" if self.girth == math.inf else self.girth
        density = (
            None
            if self.density is None
            else {
                "elements": self.density.elements,
                "rank": self.density.rank,
                "ratio": self.density.ratio,
            }
        )
        return {
            "instance": self.instance,
            "cosimple": self.cosimple,
            "girth": g,
            "circuit": list(self.circuit),
            "circuit_size": self.circuit_size,
            "nonbasis_count": self.nonbasis_count,
            "min_sym_diff": self.min_sym_diff,
            "minors": [f.to_json_dict() for f in self.minors],
            "density": density,
            "bases": {"mode": self.basis_mode, "checked": self.bases_checked},
        }


# `all` basis enumeration is only attempted up to this many elements; larger
# instances fall back to seeded sampling, and the report says which ran.
ALL_BASES_LIMIT = 14


def verify_dichotomy(m: RepMatroid, t: int, basis_mode: str = "all", samples: int = 20,
                     seed: int = 0, instance_id: str = "instance",
                     minor_search: bool = True) -> DichotomyReport:
    """Per-basis short circuits plus minor findings for M(K_t) and its dual.

    Rejects non-cosimple input with a certificate.  The recorded circuit is
    the worst case over the bases in scope: the largest of the per-basis
    minimum short circuits.
    """
    cert = cosimple_certificate(m)
    if cert is not None:
        raise NotCosimpleError(cert)
    g = girth(m)

    if basis_mode == "all" and m.size <= ALL_BASES_LIMIT:
        basis_list = bases(m)
        mode_used = "all"
    else:
        basis_list = sample_bases(m, samples, seed)
        mode_used = f"sample:{samples}" if basis_mode != "all" else f"sample:{samples} (auto)"
    if not basis_list:
        raise NoCircuitError("no bases found")

    worst: Optional[tuple[frozenset[str], ShortCircuitStats, tuple[str, ...]]] = None
    for b in basis_list:
        circ, stats = find_short_circuit(m, b)
        if worst is None or len(circ) > len(worst[0]):
            worst = (circ, stats, tuple(b))
    circ, stats, worst_basis = worst

    findings = []
    if minor_search:
        targets = [
            (f"mk{t}", generators.clique(t, m.field, dualize=False)),
            (f"mk{t}_dual", generators.clique(t, m.field, dualize=True)),
        ]
        for tid, target in targets:
            if m.size > 16 or target.size > 10:
                findings.append(MinorFinding(tid, "skipped"))
                continue
            witness = has_minor(m, target)
            if witness is None:
                findings.append(MinorFinding(tid, "absent"))
            else:
                dels, cons = witness
                findings.append(
                    MinorFinding(tid, "found", tuple(sorted(dels)), tuple(sorted(cons)))
                )
    else:
        findings = [MinorFinding(f"mk{t}", "skipped"), MinorFinding(f"mk{t}_dual", "skipped")]

    density = density_ratio(m) if m.rank else None
    return DichotomyReport(
        instance=instance_id,
        cosimple=True,
        girth=g,
        circuit=tuple(sorted(circ)),
        circuit_size=len(circ),
        nonbasis_count=stats.nonbasis_count,
        min_sym_diff=stats.min_sym_diff,
        minors=tuple(findings),
        density=density,
        basis=worst_basis,
        basis_mode=mode_used,
        bases_checked=len(basis_list),
    )


def packing_ratios(system, deltas: Iterable[int]) -> list[dict]:
    """Measured |packing| * delta / |V| for each delta, with a post-hoc
    separation check; a trend artifact, no threshold is asserted."""
    from .setsystem import greedy_delta_packing, sym_diff_size as _sd

    out = []
    v = len(system.ground)
    for delta in deltas:
        packing = greedy_delta_packing(system, delta)
        ok = all(
            _sd(system, e, f) >= delta for e, f in combinations(packing, 2)
        )
        out.append(
            {
                "delta": delta,
                "size": len(packing),
                "ratio": (len(packing) * delta / v) if v else None,
                "separated": ok,
            }
        )
    return out
