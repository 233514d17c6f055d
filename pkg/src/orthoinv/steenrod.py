"""Steenrod operations for the prime-power Frobenius in characteristic 2.

The complete operator is the algebra map sending each degree-one element
v to v + v^q t; P^k(f) is the coefficient of t^k.  On a monomial the
expansion is a product of per-variable binomial series whose mod-2
coefficients survive exactly when the chosen piece is a bit-submask of
the exponent, so each requested t-degree falls out of a depth-first walk
over submask choices summing to k.

The same operator acts on the abstract generator algebra through the
closed expansions of the generators themselves; that symbolic action is
what steenrod_xi implements, and it is exact at every q including q = 2,
where the naive support-counting arguments break.
"""

from __future__ import annotations

from .ring import LANE_BITS, LANE_MASK, Poly
from .xialg import XiPoly


def _submasks_leq(mask: int, limit: int) -> list[int]:
    """All bit-submasks of mask with value <= limit, descending-friendly."""
    if limit <= 0:
        return [0]
    cut = (1 << limit.bit_length()) - 1
    mask &= cut
    out = []
    s = mask
    while True:
        if s <= limit:
            out.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    return out


def steenrod_k(f: Poly, k: int) -> Poly:
    """Coefficient of t^k in the complete Steenrod operator applied to f."""
    if k < 0:
        raise ValueError("negative Steenrod index")
    ring = f.ring
    if k == 0:
        return f
    if f.is_zero():
        return f
    if k > f.degree:
        return Poly.zero(ring)
    q = ring.field.q
    qm1 = q - 1
    nv = ring.nvars
    out: dict = {}
    for e, c in f.terms.items():
        lanes = [(e >> (LANE_BITS * i)) & LANE_MASK for i in range(nv)]
        active = [(i, a) for i, a in enumerate(lanes) if a]
        suffix = [0] * (len(active) + 1)
        for idx in range(len(active) - 1, -1, -1):
            suffix[idx] = suffix[idx + 1] + active[idx][1]

        def walk(idx: int, need: int, bump: int) -> None:
            if need == 0:
                key = e + bump
                n = out.get(key, 0) ^ c
                if n:
                    out[key] = n
                else:
                    del out[key]
                return
            if idx == len(active) or suffix[idx] < need:
                return
            lane, a = active[idx]
            shift = LANE_BITS * lane
            for j in _submasks_leq(a, need):
                walk(idx + 1, need - j, bump + ((qm1 * j) << shift))

        walk(0, k, 0)
    return Poly(ring, out, f.degree + k * qm1 if out else None)


def steenrod_full(f: Poly) -> dict[int, Poly]:
    """All nonzero coefficients of the complete operator, keyed by t-degree.

    Only sensible for small inputs; the per-monomial expansion multiplies
    out every variable series.
    """
    ring = f.ring
    q = ring.field.q
    qm1 = q - 1
    nv = ring.nvars
    slices: dict[int, dict] = {}
    for e, c in f.terms.items():
        # keyed by lane bump: distinct submask choices can share a t-degree
        # but never a bump, since lanes occupy disjoint bit ranges
        partial = {0: 0}  # lane bump -> t-degree
        for i in range(nv):
            a = (e >> (LANE_BITS * i)) & LANE_MASK
            if not a:
                continue
            shift = LANE_BITS * i
            nxt = {}
            for bump, t in partial.items():
                s = a
                while True:
                    nxt[bump + ((qm1 * s) << shift)] = t + s
                    if s == 0:
                        break
                    s = (s - 1) & a
            partial = nxt
        for bump, t in partial.items():
            sl = slices.setdefault(t, {})
            key = e + bump
            n = sl.get(key, 0) ^ c
            if n:
                sl[key] = n
            else:
                del sl[key]
    out = {}
    for t in sorted(slices):
        if slices[t]:
            out[t] = Poly(ring, slices[t], f.degree + t * qm1)
    return out


# -- symbolic action on the generator algebra -----------------------------


def _expansion_rules(alg) -> dict[int, list[tuple[int, int, int]]]:
    """Per-generator expansions as (t-degree, target lane, target exponent).

    Lane 0 is the degree-two generator sum(x_i y_i); lane j >= 1 is the
    generator of weighted degree q^j + 1.  Each rule lists the terms of
    the complete operator applied to that generator; the entry at t = 0
    is the generator itself and is implied.
    """
    q = alg.q
    rules: dict[int, list[tuple[int, int, int]]] = {}
    rules[0] = [(1, 1, 1), (2, 0, q)]
    rules[1] = [(q, 2, 1), (q + 1, 1, q)]
    for i in range(2, alg.K + 1):
        rules[i] = [(1, i - 1, q), (q**i, i + 1, 1), (q**i + 1, i, q)]
    return rules


def steenrod_xi(p: XiPoly, k: int) -> XiPoly:
    """P^k on a polynomial in the abstract generators.

    Exact for all q: each generator power expands bit by bit through the
    closed four-term (or shorter) rule, and the walk keeps every
    cross-distribution, which is where the extra q = 2 terms come from.
    The result may use the next generator up, so the target algebra is
    widened by one lane when needed.
    """
    if k < 0:
        raise ValueError("negative Steenrod index")
    if k == 0 or p.is_zero():
        return p
    alg = p.alg
    if k > p.wdeg:
        return XiPoly.zero(alg)
    # always compute in the widened algebra (one code path); shrink at the
    # end drops the extra lane whenever it stays empty
    target = alg.widen(1)
    rules = _expansion_rules(target)
    q = alg.q
    out: dict = {}
    for e, c in p.terms.items():
        # factor list: one entry per set bit of each lane exponent,
        # options scaled by that bit
        factors: list[list[tuple[int, int]]] = []
        for lane in range(alg.K + 1):
            a = (e >> (LANE_BITS * lane)) & LANE_MASK
            if not a:
                continue
            bit = 1
            base = rules[lane]
            while a:
                if a & 1:
                    opts = [(0, bit << (LANE_BITS * lane))]
                    for tdeg, tl, texp in base:
                        opts.append((tdeg * bit, (texp * bit) << (LANE_BITS * tl)))
                    factors.append(opts)
                a >>= 1
                bit <<= 1
        caps = [max(t for t, _ in opts) for opts in factors]
        suffix = [0] * (len(factors) + 1)
        for idx in range(len(factors) - 1, -1, -1):
            suffix[idx] = suffix[idx + 1] + caps[idx]

        def walk(idx: int, need: int, mono: int) -> None:
            if need == 0 and idx == len(factors):
                n = out.get(mono, 0) ^ c
                if n:
                    out[mono] = n
                else:
                    del out[mono]
                return
            if idx == len(factors) or suffix[idx] < need:
                return
            for tdeg, bump in factors[idx]:
                if tdeg <= need:
                    walk(idx + 1, need - tdeg, mono + bump)

        walk(0, k, 0)
    wdeg = p.wdeg + k * (q - 1)
    res = XiPoly(target, out, wdeg if out else None)
    return res.shrink()
