"""Exact arithmetic in GF(p^k) for small prime powers.

Field elements are plain ints in [0, q).  The integer's base-p digits are
the coefficients of the residue polynomial: digit i is the coefficient of
x^i.  Code 0 is the additive identity and code 1 the multiplicative one,
so for prime fields (k = 1) the encoding is just the usual residue.

All operations are pure; a FieldSpec is immutable after construction and
safe to share between threads.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

# Bundled monic irreducible moduli (Conway polynomials), as coefficient
# tuples low degree -> high degree.  Keyed by (p, k).
_BUNDLED_MODULI = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 2): (2, 2, 1),        # x^2 + 2x + 2
    (3, 3): (1, 2, 0, 1),     # x^3 + 2x + 1
    (5, 2): (2, 4, 1),        # x^2 + 4x + 2
}

# Largest field order for which full q x q operation tables are built.
# Beyond this, scalar arithmetic still works (digit-wise / polynomial),
# but dense matrix kernels refuse the field.
_TABLE_LIMIT = 256

_ORDER_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(p: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(p: int, a: Sequence[int], mod: Sequence[int]) -> list[int]:
    # mod must be monic
    a = list(a)
    dm = len(mod) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(mod):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _poly_trim(a)


def _all_monic_polys(p: int, degree: int):
    for code in range(p**degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % p)
            c //= p
        coeffs.append(1)
        yield coeffs


def is_irreducible(p: int, coeffs: Sequence[int]) -> bool:
    """Trial division by every monic polynomial of degree <= k/2 over GF(p)."""
    k = len(coeffs) - 1
    if k < 1 or coeffs[-1] != 1:
        return False
    if k == 1:
        return True
    if coeffs[0] == 0:  # divisible by x
        return False
    for d in range(1, k // 2 + 1):
        for cand in _all_monic_polys(p, d):
            if not _poly_mod(p, coeffs, cand):
                return False
    return True


def _digits(code: int, p: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(code % p)
        code //= p
    return tuple(out)


def _code(digits: Sequence[int], p: int) -> int:
    out = 0
    for d in reversed(digits):
        out = out * p + d
    return out


class FieldSpec:
    """A validated GF(p^k) with canonical integer element encoding.

    Parameters
    ----------
    p : int
        Prime characteristic.
    k : int
        Extension degree (the field has p^k elements).
    modulus : sequence of int, optional
        Coefficients of a monic irreducible degree-k polynomial over
        GF(p), low degree first.  Ignored for k = 1; for k > 1 it
        defaults to the bundled table and is checked exhaustively.

    Operation tables are precomputed for q <= 256, which covers every
    field this toolkit is meant to run on; larger fields keep scalar
    arithmetic but are refused by the dense matrix kernels.
    """

    __slots__ = (
        "p", "k", "q", "modulus",
        "add_np", "sub_np", "mul_np", "neg_np", "inv_np",
        "_add", "_sub", "_mul", "_neg", "_inv",
    )

    def __init__(self, p: int, k: int, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        q = p**k
        if q > _ORDER_LIMIT:
            raise ValueError(f"field order {q} exceeds supported limit 2^16")
        if k == 1:
            modulus = (0, 1)  # unused; kept monic for serialization
        elif modulus is None:
            try:
                modulus = _BUNDLED_MODULI[(p, k)]
            except KeyError:
                raise ValueError(
                    f"no bundled modulus for GF({p}^{k}); supply one explicitly"
                ) from None
        else:
            modulus = tuple(x % p for x in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError(
                    f"modulus must be monic of degree {k}, got {list(modulus)}"
                )
            if not is_irreducible(p, modulus):
                raise ValueError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = tuple(modulus)
        self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _scalar_add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = _digits(a, self.p, self.k), _digits(b, self.p, self.k)
        return _code([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def _scalar_neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return _code([(-x) % self.p for x in _digits(a, self.p, self.k)], self.p)

    def _scalar_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        prod = _poly_mul(self.p, _digits(a, self.p, self.k), _digits(b, self.p, self.k))
        red = _poly_mod(self.p, prod, self.modulus)
        return _code(red + [0] * (self.k - len(red)), self.p)

    def _build_tables(self) -> None:
        if self.q > _TABLE_LIMIT:
            self._add = self._sub = self._mul = None
            self._neg = self._inv = None
            self.add_np = self.sub_np = self.mul_np = None
            self.neg_np = self.inv_np = None
            return
        q = self.q
        add = [[self._scalar_add(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._scalar_mul(a, b) for b in range(q)] for a in range(q)]
        neg = [self._scalar_neg(a) for a in range(q)]
        sub = [[add[a][neg[b]] for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = mul[a]
            found = 0
            for b in range(1, q):
                if row[b] == 1:
                    found = b
                    break
            if not found:
                # cannot happen for an irreducible modulus; defensive
                raise ValueError(f"element {a} has no inverse in GF({q})")
            inv[a] = found
        self._add, self._sub, self._mul = add, sub, mul
        self._neg, self._inv = neg, inv
        self.add_np = np.array(add, dtype=np.uint8)
        self.sub_np = np.array(sub, dtype=np.uint8)
        self.mul_np = np.array(mul, dtype=np.uint8)
        self.neg_np = np.array(neg, dtype=np.uint8)
        self.inv_np = np.array(inv, dtype=np.uint8)

    # -- scalar operations ---------------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"element code {a} out of range for GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._scalar_add(a, b)

    def sub(self, a: int, b: int) -> int:
        if self._sub is not None:
            return self._sub[a][b]
        return self._scalar_add(a, self._scalar_neg(b))

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return self._neg[a]
        return self._scalar_neg(a)

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return self._scalar_mul(a, b)

    def inv(self, a: int) -> int:
        """Multiplicative inverse by exhaustive search (q is small here)."""
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._inv is not None:
            return self._inv[a]
        for b in range(1, self.q):
            if self._scalar_mul(a, b) == 1:
                return b
        raise ValueError(f"element {a} has no inverse in GF({self.q})")

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    # -- enumeration and serialization ----------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        return range(1, self.q)

    @property
    def has_tables(self) -> bool:
        return self._mul is not None

    def modulus_code(self) -> int:
        return _code(self.modulus, self.p)

    def spec_string(self) -> str:
        """Serialize as `p,k,modulus-code` (modulus coefficients base p)."""
        return f"{self.p},{self.k},{self.modulus_code()}"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


def field_new(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """Construct a validated FieldSpec.

    Without an explicit modulus, k > 1 requires (p, k) to be in the bundled
    table {GF(4), GF(8), GF(9), GF(16), GF(25), GF(27)}.
    """
    return FieldSpec(p, k, modulus)


def field_from_order(q: int, modulus_code: Optional[int] = None) -> FieldSpec:
    """Build GF(q) from the order alone, factoring q = p^k."""
    if q < 2:
        raise ValueError(f"field order must be >= 2, got {q}")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q  # q itself prime
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    modulus = None
    if modulus_code is not None:
        digits = []
        c = modulus_code
        while c:
            digits.append(c % p)
            c //= p
        modulus = tuple(digits)
    return FieldSpec(p, k, modulus)
