"""Kernels for sparse polynomials stored as {packed monomial: coefficient}.

A monomial is one int with a 32-bit lane per variable.  Lane arithmetic
never carries: every construction in this package keeps individual
exponents far below 2**31, and the degree guards on the callers enforce
it.  Packing this way makes monomial multiplication a single big-int
add and lets lex comparison ride on int comparison when the dominant
variable owns the top lane.

Coefficients are field ints (see gf); coefficient addition in
characteristic 2 is xor, which is what lets the merge loops below stay
free of field calls.
"""

from __future__ import annotations

from collections import Counter

from .errors import BudgetExceeded

LANE_BITS = 32
LANE_MASK = (1 << LANE_BITS) - 1

# products with more pairwise term products than this go through the
# grouped Counter path, which batches the inner loop at C speed
_BLOCK_THRESHOLD = 1 << 16


def odd_mask(nlanes: int) -> int:
    m = 0
    for i in range(nlanes):
        m |= 1 << (LANE_BITS * i)
    return m


def pack(exps) -> int:
    e = 0
    for i, a in enumerate(exps):
        if a:
            if not 0 <= a <= LANE_MASK:
                raise OverflowError(f"exponent {a} does not fit a lane")
            e |= a << (LANE_BITS * i)
    return e


def unpack(e: int, nlanes: int) -> tuple[int, ...]:
    return tuple((e >> (LANE_BITS * i)) & LANE_MASK for i in range(nlanes))


def lane_of(e: int, i: int) -> int:
    return (e >> (LANE_BITS * i)) & LANE_MASK


def total_degree(e: int, nlanes: int) -> int:
    d = 0
    for i in range(nlanes):
        d += (e >> (LANE_BITS * i)) & LANE_MASK
    return d


def check_budget(n: int, budget: int | None, what: str) -> None:
    if budget is not None and n > budget:
        raise BudgetExceeded(f"{what}: {n} terms exceeds budget {budget}")


def add_terms(a: dict, b: dict) -> dict:
    """Merge of two term dicts; coefficients add by xor."""
    if len(b) > len(a):
        a, b = b, a
    out = dict(a)
    pop = out.pop
    for e, c in b.items():
        n = pop(e, 0) ^ c
        if n:
            out[e] = n
    return out


def ixor_terms(dst: dict, src: dict) -> None:
    """Fold src into dst in place.  Used by long-running accumulation
    loops where rebuilding the dict each round would dominate."""
    pop = dst.pop
    for e, c in src.items():
        n = pop(e, 0) ^ c
        if n:
            dst[e] = n


def scale_terms(t: dict, c: int, mul) -> dict:
    if c == 0:
        return {}
    if c == 1:
        return dict(t)
    row = mul[c]
    return {e: row[x] for e, x in t.items()}


def mul_terms(a: dict, b: dict, mul, budget: int | None = None) -> dict:
    """Product of two term dicts over the field with tables `mul`."""
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    npairs = len(a) * len(b)
    if budget is not None and npairs > 400 * budget:
        raise BudgetExceeded(f"product of {len(a)}x{len(b)} terms exceeds budget {budget}")
    out: dict = {}
    if npairs <= _BLOCK_THRESHOLD:
        get = out.get
        for e1, c1 in a.items():
            row = mul[c1]
            for e2, c2 in b.items():
                k = e1 + e2
                n = get(k, 0) ^ row[c2]
                if n:
                    out[k] = n
                else:
                    del out[k]
        return out
    # Grouped path: split the long factor by coefficient value so the
    # monomial sums run in list comprehensions and the repeated-key
    # bookkeeping runs in Counter.update, both at C speed.  A key hit an
    # odd number of times contributes its product coefficient once.
    blocks: dict[int, list[int]] = {}
    for e2, c2 in b.items():
        blocks.setdefault(c2, []).append(e2)
    counters: dict[int, Counter] = {}
    for e1, c1 in a.items():
        row = mul[c1]
        for c2, es in blocks.items():
            cnt = counters.get(row[c2])
            if cnt is None:
                cnt = counters[row[c2]] = Counter()
            cnt.update([e1 + e2 for e2 in es])
    for c, cnt in counters.items():
        get = out.get
        for k, n in cnt.items():
            if n & 1:
                v = get(k, 0) ^ c
                if v:
                    out[k] = v
                else:
                    del out[k]
    check_budget(len(out), budget, "product")
    return out


def square_terms(t: dict, sqr) -> dict:
    """Termwise Frobenius square: exponents double, coefficients square."""
    return {e << 1: sqr[c] for e, c in t.items()}


def power2_terms(t: dict, b: int, sqr) -> dict:
    """Termwise power 2^b."""
    out = t
    for _ in range(b):
        out = {e << 1: sqr[c] for e, c in out.items()}
    return out


def pow_terms(t: dict, n: int, mul, sqr, budget: int | None = None) -> dict:
    """n-th power by binary decomposition; squarings are termwise."""
    if n < 0:
        raise ValueError("negative exponent")
    if n == 0:
        return {0: 1}
    acc = None
    piece = dict(t)
    while n:
        if n & 1:
            acc = piece if acc is None else mul_terms(acc, piece, mul, budget)
        n >>= 1
        if n:
            piece = square_terms(piece, sqr)
    return dict(acc)
