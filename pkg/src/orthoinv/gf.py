"""Exact arithmetic in the binary fields GF(2^s) for 1 <= s <= 6.

Field elements are plain ints carrying the bit pattern of a polynomial
over GF(2) reduced by a fixed modulus, so addition is xor and the zero
and one of the field are the ints 0 and 1.  Multiplication, inversion,
squares and square roots are table lookups built once per field; the
tables are what makes the polynomial layer fast enough, so nothing in
this module wraps elements in objects.

Serialization is a single lowercase hex digit per element, which is why
s is capped at 4.
"""

from __future__ import annotations

from functools import lru_cache

# Fixed irreducible moduli, one per supported degree.  Degrees above 4
# only appear as extension fields in point searches, never as
# coefficient fields.
MODULI = {1: 0b10, 2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011}


def _clmul(a: int, b: int) -> int:
    """Carry-less product of two bit patterns."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def _reduce(a: int, modulus: int) -> int:
    md = modulus.bit_length()
    while a.bit_length() >= md:
        a ^= modulus << (a.bit_length() - md)
    return a


class Field:
    """GF(2^s) with table-driven multiplication on int bit patterns."""

    __slots__ = ("s", "q", "modulus", "mul_table", "inv_table", "sqr_table", "sqrt_table")

    def __init__(self, s: int):
        if not 1 <= s <= 6:
            raise ValueError(f"field degree s={s} out of range 1..6")
        self.s = s
        self.q = 1 << s
        self.modulus = MODULI[s]
        q = self.q
        self.mul_table = [
            [_reduce(_clmul(a, b), self.modulus) for b in range(q)] for a in range(q)
        ]
        self.sqr_table = [self.mul_table[a][a] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a][b] == 1:
                    inv[a] = b
                    break
        self.inv_table = inv
        # every element is a square; sqrt(a) = a^(q/2) inverts the Frobenius
        sqrt = [0] * q
        for a in range(q):
            sqrt[self.sqr_table[a]] = a
        self.sqrt_table = sqrt

    # -- scalar operations ------------------------------------------------

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero")
        return self.inv_table[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            raise ValueError("negative exponent")
        if a == 0:
            return 0 if n else 1
        out = 1
        base = a
        while n:
            if n & 1:
                out = self.mul_table[out][base]
            base = self.mul_table[base][base]
            n >>= 1
        return out

    def sqrt(self, a: int) -> int:
        return self.sqrt_table[a]

    @property
    def elements(self) -> list[int]:
        """All field elements, zero first, in bit-pattern order."""
        return list(range(self.q))

    # -- serialization ----------------------------------------------------

    def to_hex(self, a: int) -> str:
        return format(self.check(a), "x")

    def from_hex(self, text: str) -> int:
        a = int(text, 16)
        return self.check(a)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        # pickle as a lookup so worker processes share the cached instance
        return (field_new, (self.s,))


@lru_cache(maxsize=None)
def field_new(s: int) -> Field:
    """The field GF(2^s); instances are cached and immutable."""
    return Field(s)


def field_for_order(q: int) -> Field:
    s = q.bit_length() - 1
    if 1 << s != q:
        raise ValueError(f"field order {q} is not a power of two")
    return field_new(s)


def arith(field: Field, a: int, b: int | None, kind: str) -> int:
    """Scalar arithmetic dispatch: kind is add | mul | inv | pow."""
    field.check(a)
    if kind == "add":
        return field.add(a, field.check(b))
    if kind == "mul":
        return field.mul(a, field.check(b))
    if kind == "inv":
        return field.inv(a)
    if kind == "pow":
        if not isinstance(b, int):
            raise ValueError("pow needs an integer exponent")
        return field.pow(a, b)
    raise ValueError(f"unknown arith kind {kind!r}")


def embed_table(small: Field, big: Field) -> list[int]:
    """Field embedding GF(q) -> GF(q^k) as a lookup table.

    Finds the smallest root of the small field's modulus inside the big
    field and extends GF(2)-linearly over the bit patterns.  Requires
    small.s to divide big.s.
    """
    if big.s % small.s != 0:
        raise ValueError(f"no embedding GF({small.q}) -> GF({big.q})")
    if small.s == big.s:
        return list(range(small.q))
    root = None
    for cand in range(big.q):
        acc = 0
        for bit in range(small.modulus.bit_length() - 1, -1, -1):
            acc = big.mul(acc, cand)
            if (small.modulus >> bit) & 1:
                acc ^= 1
        if acc == 0:
            root = cand
            break
    if root is None:
        raise ValueError("modulus has no root in the target field")
    table = [0] * small.q
    for a in range(small.q):
        img = 0
        p = 1
        for bit in range(small.s):
            if (a >> bit) & 1:
                img ^= p
            p = big.mul(p, root)
        table[a] = img
    return table
