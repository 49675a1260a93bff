"""Dense matrices over GF(q): row reduction, span tests, standard form.

Entries are stored row-major in a read-only numpy uint8 array of element
codes.  Row reduction picks the first nonzero entry scanning top-to-bottom,
columns left-to-right, so every reduced form is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .gf import FieldSpec, field_from_order


class NotABasisError(ValueError):
    """Raised when a claimed basis is dependent or not spanning."""


class GfmParseError(ValueError):
    """Malformed `.gfm` text; the message carries the line number."""


class GFMatrix:
    """Immutable dense matrix over a FieldSpec."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        raw = np.array(data, dtype=np.int64)
        if raw.ndim != 2:
            raise ValueError(f"matrix data must be 2-D, got shape {raw.shape}")
        if raw.size and (int(raw.min()) < 0 or int(raw.max()) >= field.q):
            bad = int(raw.min()) if int(raw.min()) < 0 else int(raw.max())
            raise ValueError(f"entry {bad} out of range for GF({field.q})")
        arr = raw.astype(np.uint8 if field.q <= 256 else np.uint16)
        arr.flags.writeable = False
        self.field = field
        self.data = arr

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "GFMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "GFMatrix":
        return cls(field, np.eye(n, dtype=np.uint8))

    @classmethod
    def from_cols(cls, field: FieldSpec, cols: Sequence[Sequence[int]], rows: int) -> "GFMatrix":
        arr = np.zeros((rows, len(cols)), dtype=np.int64)
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                arr[i, j] = v
        return cls(field, arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.data[:, j])

    def col_tuples(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "GFMatrix":
        return GFMatrix(self.field, self.data.T.copy())

    def take_cols(self, idx: Iterable[int]) -> "GFMatrix":
        return GFMatrix(self.field, self.data[:, list(idx)].copy())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GFMatrix)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"GFMatrix({self.field!r}, {self.data.tolist()})"


@dataclass(frozen=True)
class RrefResult:
    matrix: GFMatrix
    rank: int
    pivot_cols: tuple[int, ...]


def _rref_array(field: FieldSpec, data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """In-place reduced row echelon form; returns (array, pivot columns)."""
    if not field.has_tables:
        raise ValueError(
            f"dense matrix operations need operation tables (q <= 256), got GF({field.q})"
        )
    sub_t, mul_t, inv_t = field.sub_np, field.mul_np, field.inv_np
    rows, cols = data.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if data[i, c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            data[[r, pr]] = data[[pr, r]]
        pv = data[r, c]
        if pv != 1:
            data[r] = mul_t[inv_t[pv]][data[r]]
        for i in range(rows):
            if i != r and data[i, c]:
                data[i] = sub_t[data[i], mul_t[data[i, c]][data[r]]]
        pivots.append(c)
        r += 1
    return data, pivots


def rref(m: GFMatrix) -> RrefResult:
    """Reduced row echelon form.  Zero rows are retained in the output."""
    work = m.data.copy()
    work, pivots = _rref_array(m.field, work)
    return RrefResult(GFMatrix(m.field, work), len(pivots), tuple(pivots))


def rank(m: GFMatrix) -> int:
    return rref(m).rank


@dataclass(frozen=True)
class StandardForm:
    """Basis-indexed representation [I | A].

    Row i of `a` corresponds to basis_order[i]; column j to nonbasis_order[j].
    """

    field: FieldSpec
    basis_order: tuple[str, ...]
    nonbasis_order: tuple[str, ...]
    a: GFMatrix

    def assemble(self) -> tuple[GFMatrix, tuple[str, ...]]:
        """Rebuild the full [I | A] matrix with its column labels."""
        r = len(self.basis_order)
        eye = np.eye(r, dtype=np.uint8)
        full = np.hstack([eye, self.a.data]) if self.a.cols else eye
        return GFMatrix(self.field, full), self.basis_order + self.nonbasis_order

    def entry(self, b: str, e: str) -> int:
        return int(self.a.data[self.basis_order.index(b), self.nonbasis_order.index(e)])


def standard_form(m: GFMatrix, labels: Sequence[str], basis: Iterable[str]) -> StandardForm:
    """Row-reduce so the basis columns become an identity, dropping zero rows.

    Basis and non-basis columns both keep the input label order.  Raises
    NotABasisError when the claimed basis is dependent or not spanning.
    """
    labels = tuple(labels)
    if len(labels) != m.cols:
        raise ValueError(f"{len(labels)} labels for {m.cols} columns")
    basis = set(basis)
    unknown = basis - set(labels)
    if unknown:
        raise ValueError(f"unknown labels in basis: {sorted(unknown)}")
    basis_order = tuple(l for l in labels if l in basis)
    nonbasis_order = tuple(l for l in labels if l not in basis)
    index = {l: j for j, l in enumerate(labels)}
    perm = [index[l] for l in basis_order] + [index[l] for l in nonbasis_order]
    work = m.data[:, perm].copy()
    work, pivots = _rref_array(m.field, work)
    # pivots span all columns, so len(pivots) is the full matrix rank; a
    # basis must claim exactly those pivots within its own column block
    nb = len(basis_order)
    if len(pivots) != nb or any(p >= nb for p in pivots):
        raise NotABasisError(f"columns {sorted(basis)} do not form a basis")
    a = GFMatrix(m.field, work[:nb, nb:].copy())
    return StandardForm(m.field, basis_order, nonbasis_order, a)


def in_span(m: GFMatrix, cols: Sequence[int], v: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Coefficients expressing v over the selected columns, or None.

    The returned tuple is indexed like `cols`; free coefficients are 0.
    """
    if len(v) != m.rows:
        raise ValueError(f"vector length {len(v)} != {m.rows} rows")
    cols = list(cols)
    aug = np.zeros((m.rows, len(cols) + 1), dtype=np.uint8)
    for j, c in enumerate(cols):
        aug[:, j] = m.data[:, c]
    for i, x in enumerate(v):
        aug[i, -1] = m.field.check(int(x))
    aug, pivots = _rref_array(m.field, aug)
    if pivots and pivots[-1] == len(cols):
        return None
    coeffs = [0] * len(cols)
    for row, pc in enumerate(pivots):
        coeffs[pc] = int(aug[row, -1])
    return tuple(coeffs)


# -- `.gfm` text format -------------------------------------------------------
#
# line 1: gfm q=<q> rows=<r> cols=<c> [modulus=<int>]
# line 2: optional `labels <l1> <l2> ...`
# then r lines of c integers in [0, q)


def parse_gfm(text: str) -> tuple[FieldSpec, GFMatrix, Optional[tuple[str, ...]]]:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise GfmParseError("line 1: empty input, expected `gfm` header")
    head = lines[0].split()
    if head[0] != "gfm":
        raise GfmParseError(f"line 1: expected `gfm` header, got {head[0]!r}")
    fields = {}
    for tok in head[1:]:
        if "=" not in tok:
            raise GfmParseError(f"line 1: malformed header token {tok!r}")
        k, _, val = tok.partition("=")
        fields[k] = val
    try:
        q = int(fields["q"])
        nrows = int(fields["rows"])
        ncols = int(fields["cols"])
    except (KeyError, ValueError) as exc:
        raise GfmParseError(f"line 1: header needs integer q=, rows=, cols= ({exc})") from None
    modulus_code = None
    if "modulus" in fields:
        try:
            modulus_code = int(fields["modulus"])
        except ValueError:
            raise GfmParseError("line 1: modulus= must be an integer") from None
    try:
        field = field_from_order(q, modulus_code)
    except ValueError as exc:
        raise GfmParseError(f"line 1: {exc}") from None

    at = 1
    labels: Optional[tuple[str, ...]] = None
    if at < len(lines) and lines[at].split()[:1] == ["labels"]:
        labels = tuple(lines[at].split()[1:])
        if len(labels) != ncols:
            raise GfmParseError(
                f"line {at + 1}: {len(labels)} labels for {ncols} columns"
            )
        at += 1

    arr = np.zeros((nrows, ncols), dtype=np.uint8)
    for i in range(nrows):
        lineno = at + i + 1
        if at + i >= len(lines):
            raise GfmParseError(f"line {lineno}: expected {nrows} matrix rows, got {i}")
        toks = lines[at + i].split()
        if len(toks) != ncols:
            raise GfmParseError(
                f"line {lineno}: expected {ncols} entries, got {len(toks)}"
            )
        for j, tok in enumerate(toks):
            try:
                val = int(tok)
            except ValueError:
                raise GfmParseError(
                    f"line {lineno}, column {j + 1}: {tok!r} is not an integer"
                ) from None
            if not 0 <= val < q:
                raise GfmParseError(
                    f"line {lineno}, column {j + 1}: entry {val} out of range for GF({q})"
                )
            arr[i, j] = val
    return field, GFMatrix(field, arr), labels


def format_gfm(field: FieldSpec, m: GFMatrix, labels: Optional[Sequence[str]] = None) -> str:
    head = f"gfm q={field.q} rows={m.rows} cols={m.cols}"
    if field.k > 1:
        head += f" modulus={field.modulus_code()}"
    out = [head]
    if labels is not None:
        out.append("labels " + " ".join(labels))
    for i in range(m.rows):
        out.append(" ".join(str(int(x)) for x in m.data[i]))
    return "\n".join(out) + "\n"
