"""The abstract algebra on the quadratic-form generators.

Lane 0 holds the degree-two generator (the doubled part of the form,
weight 2) and lane j >= 1 holds the generator of weighted degree
q^j + 1.  Polynomials here are formal: nothing is expanded into the big
ring until an evaluator substitutes the concrete generator polynomials.

Natural monomials are the products of generator Frobenius powers whose
exponents have only 0/1 digits base q; for the degrees arising in the
constructions they are enumerated by matching the base-q digit support
into head/tail pairs, a pair {q^a, q^(a+j)} giving the factor with
generator index j raised to q^a.

express_in_xi decides membership in the generator subalgebra exactly.
Candidate monomial evaluations are materialized lazily in decreasing
order of their predicted lex lead (the dominant variable to the power
of weighted degree minus exponent sum), reduced online into a pivot
table with distinct leads, and the input is reduced against the pivots
until it either vanishes (the accumulated combination is then the
answer, exact by construction) or exposes a lead monomial no candidate
can reach (an exact non-membership certificate).
"""

from __future__ import annotations

import heapq
from functools import lru_cache

from . import termops
from .errors import AmbiguousSolution, BudgetExceeded, NoSolution, NotInSubalgebra
from .gf import Field, field_for_order
from .ring import LANE_BITS, LANE_MASK, Poly, RingSpec

XIBAR = 0  # lane of the degree-two generator


class XiAlg:
    """Generator algebra descriptor: field, top generator index, weights."""

    __slots__ = ("field", "K", "allow_xibar", "q", "weights")

    def __init__(self, field: Field, K: int, allow_xibar: bool = False):
        if K < 0 or K > 7:
            raise ValueError(f"generator count K={K} out of range")
        self.field = field
        self.q = field.q
        self.K = K
        self.allow_xibar = allow_xibar
        self.weights = [2] + [field.q**j + 1 for j in range(1, K + 1)]

    def widen(self, extra: int) -> "XiAlg":
        return XiAlg(self.field, self.K + extra, self.allow_xibar)

    def wdeg_of(self, e: int) -> int:
        d = 0
        for lane, w in enumerate(self.weights):
            a = (e >> (LANE_BITS * lane)) & LANE_MASK
            if a:
                d += a * w
        return d

    def pack(self, xi_exps, xibar_exp: int = 0) -> int:
        """Pack exponents listed for generators 1..K plus the lane-0 power."""
        e = xibar_exp
        for j, a in enumerate(xi_exps, start=1):
            if a:
                e |= a << (LANE_BITS * j)
        return e

    def unpack(self, e: int) -> tuple[tuple[int, ...], int]:
        xis = tuple((e >> (LANE_BITS * j)) & LANE_MASK for j in range(1, self.K + 1))
        return xis, e & LANE_MASK

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, XiAlg)
            and self.q == other.q
            and self.K == other.K
            and self.allow_xibar == other.allow_xibar
        )

    def __hash__(self) -> int:
        return hash((self.q, self.K, self.allow_xibar))

    def __repr__(self) -> str:
        extra = "+xibar" if self.allow_xibar else ""
        return f"XiAlg(q={self.q}, K={self.K}{extra})"


class XiPoly:
    """Homogeneous (for the weighted grading) polynomial in the generators."""

    __slots__ = ("alg", "terms", "wdeg")

    def __init__(self, alg: XiAlg, terms: dict, wdeg: int | None):
        self.alg = alg
        self.terms = terms
        self.wdeg = wdeg if terms else None

    @classmethod
    def zero(cls, alg: XiAlg) -> "XiPoly":
        return cls(alg, {}, None)

    @classmethod
    def one(cls, alg: XiAlg) -> "XiPoly":
        return cls(alg, {0: 1}, 0)

    @classmethod
    def gen(cls, alg: XiAlg, j: int, exp: int = 1, coeff: int = 1) -> "XiPoly":
        """xi_j^exp for j >= 1, or the lane-0 generator for j = 0."""
        if j == 0 and not alg.allow_xibar:
            raise ValueError("algebra does not admit the degree-two generator")
        if not 0 <= j <= alg.K:
            raise ValueError(f"generator index {j} out of range 0..{alg.K}")
        alg.field.check(coeff)
        if coeff == 0:
            return cls.zero(alg)
        return cls(alg, {exp << (LANE_BITS * j): coeff}, exp * alg.weights[j])

    @classmethod
    def from_terms(cls, alg: XiAlg, terms: dict) -> "XiPoly":
        clean = {}
        wdeg = None
        for e, c in terms.items():
            if c == 0:
                continue
            alg.field.check(c)
            if not alg.allow_xibar and e & LANE_MASK:
                raise ValueError("term uses the degree-two generator")
            d = alg.wdeg_of(e)
            if wdeg is None:
                wdeg = d
            elif d != wdeg:
                raise ValueError(f"inhomogeneous weighted degrees {wdeg} and {d}")
            clean[e] = c
        return cls(alg, clean, wdeg)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        # capacity K is not part of identity; lane layout is shared
        return (
            isinstance(other, XiPoly)
            and self.alg.q == other.alg.q
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        if self.is_zero():
            return "XiPoly(0)"
        bits = []
        for e in sorted(self.terms, reverse=True)[:6]:
            c = self.terms[e]
            xis, bar = self.alg.unpack(e)
            fs = [] if c == 1 else [self.alg.field.to_hex(c)]
            if bar:
                fs.append(f"xb^{bar}" if bar > 1 else "xb")
            for j, a in enumerate(xis, start=1):
                if a == 1:
                    fs.append(f"xi{j}")
                elif a:
                    fs.append(f"xi{j}^{a}")
            bits.append("*".join(fs) or "1")
        more = "" if len(self.terms) <= 6 else f" +{len(self.terms) - 6} terms"
        return f"XiPoly({' + '.join(bits)}{more})"

    def shrink(self) -> "XiPoly":
        """Same polynomial over the smallest algebra holding its lanes."""
        top = 0
        for e in self.terms:
            while e >> (LANE_BITS * (top + 1)):
                top += 1
        if top >= self.alg.K:
            return self
        return XiPoly(XiAlg(self.alg.field, top, self.alg.allow_xibar), self.terms, self.wdeg)

    def top_lane(self) -> int:
        top = 0
        for e in self.terms:
            while e >> (LANE_BITS * (top + 1)):
                top += 1
        return top

    # -- arithmetic -------------------------------------------------------

    def _join(self, other: "XiPoly") -> XiAlg:
        if self.alg.q != other.alg.q:
            raise ValueError("mixed fields")
        return self.alg if self.alg.K >= other.alg.K else other.alg

    def __add__(self, other: "XiPoly") -> "XiPoly":
        alg = self._join(other)
        if self.is_zero():
            return XiPoly(alg, dict(other.terms), other.wdeg)
        if other.is_zero():
            return XiPoly(alg, dict(self.terms), self.wdeg)
        if self.wdeg != other.wdeg:
            raise ValueError(f"adding weighted degrees {self.wdeg} and {other.wdeg}")
        return XiPoly(alg, termops.add_terms(self.terms, other.terms), self.wdeg)

    __sub__ = __add__

    def __mul__(self, other: "XiPoly") -> "XiPoly":
        alg = self._join(other)
        if self.is_zero() or other.is_zero():
            return XiPoly.zero(alg)
        terms = termops.mul_terms(self.terms, other.terms, alg.field.mul_table)
        return XiPoly(alg, terms, self.wdeg + other.wdeg)

    def scale(self, c: int) -> "XiPoly":
        self.alg.field.check(c)
        if c == 0 or self.is_zero():
            return XiPoly.zero(self.alg)
        return XiPoly(
            self.alg, termops.scale_terms(self.terms, c, self.alg.field.mul_table), self.wdeg
        )

    def power2(self, b: int) -> "XiPoly":
        if self.is_zero() or b == 0:
            return self
        terms = termops.power2_terms(self.terms, b, self.alg.field.sqr_table)
        return XiPoly(self.alg, terms, self.wdeg << b)

    def frobenius_pow(self, k: int) -> "XiPoly":
        return self.power2(k * self.alg.field.s)

    def half_frobenius(self, k: int) -> "XiPoly":
        """Power q^k / 2, always integral because q is even."""
        b = k * self.alg.field.s - 1
        if b < 0:
            raise ValueError("q^k/2 is not integral for k=0")
        return self.power2(b)

    def pow(self, n: int) -> "XiPoly":
        if n == 0:
            return XiPoly.one(self.alg)
        if self.is_zero():
            return self
        terms = termops.pow_terms(
            self.terms, n, self.alg.field.mul_table, self.alg.field.sqr_table
        )
        return XiPoly(self.alg, terms, self.wdeg * n)

    def uses_xibar(self) -> bool:
        return any(e & LANE_MASK for e in self.terms)

    def sqrt(self) -> "XiPoly":
        """Termwise square root; raises NoSolution on any odd exponent."""
        if self.is_zero():
            return self
        odd = termops.odd_mask(self.alg.K + 1)
        sq = self.alg.field.sqrt_table
        terms = {}
        for e, c in self.terms.items():
            if e & odd:
                raise NoSolution("square root needs all exponents even")
            terms[e >> 1] = sq[c]
        return XiPoly(self.alg, terms, self.wdeg // 2)

    # -- serialization ----------------------------------------------------

    def serialize(self) -> str:
        alg = self.alg
        lines = [f"xi K={alg.K} q={alg.q}"]
        with_bar = alg.allow_xibar
        for e in sorted(self.terms, reverse=True):
            xis, bar = alg.unpack(e)
            cols = [alg.field.to_hex(self.terms[e])] + [str(a) for a in xis]
            if with_bar:
                cols.append(str(bar))
            lines.append(" ".join(cols))
        return "\n".join(lines) + "\n"

    @staticmethod
    def deserialize(text: str) -> "XiPoly":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty serialization")
        head = lines[0].split()
        if len(head) != 3 or head[0] != "xi":
            raise ValueError(f"bad header {lines[0]!r}")
        K = int(head[1].removeprefix("K="))
        q = int(head[2].removeprefix("q="))
        field = field_for_order(q)
        ncols = None
        terms = {}
        for ln in lines[1:]:
            parts = ln.split()
            if ncols is None:
                ncols = len(parts)
                if ncols not in (K + 1, K + 2):
                    raise ValueError(f"bad column count in {ln!r}")
            elif len(parts) != ncols:
                raise ValueError(f"ragged term line {ln!r}")
            c = field.from_hex(parts[0])
            xis = [int(p) for p in parts[1 : K + 1]]
            bar = int(parts[K + 1]) if ncols == K + 2 else 0
            alg = XiAlg(field, K, allow_xibar=(ncols == K + 2))
            e = alg.pack(xis, bar)
            if c == 0 or e in terms:
                raise ValueError(f"invalid term line {ln!r}")
            terms[e] = c
        alg = XiAlg(field, K, allow_xibar=(ncols == K + 2))
        return XiPoly.from_terms(alg, terms)


# -- natural monomials ----------------------------------------------------


def base_q_digits(n: int, q: int) -> list[int]:
    out = []
    while n:
        out.append(n % q)
        n //= q
    return out


def digit_support(n: int, q: int) -> list[int] | None:
    """Exponents r with digit 1 when all base-q digits are 0/1, else None."""
    digs = base_q_digits(n, q)
    if any(d > 1 for d in digs):
        return None
    return [r for r, d in enumerate(digs) if d]


def natural_degree_of(e: int, alg: XiAlg) -> int | None:
    """Number of generator Frobenius-power factors, or None if not natural."""
    q = alg.q
    total = 0
    bar = e & LANE_MASK
    if bar:
        return None  # lane 0 is not a generator Frobenius power
    for j in range(1, alg.K + 1):
        a = (e >> (LANE_BITS * j)) & LANE_MASK
        if a:
            sup = digit_support(a, q)
            if sup is None:
                return None
            total += len(sup)
    return total


def _pairings(items: tuple[int, ...]):
    """All perfect matchings of a sorted tuple into pairs."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for idx in range(len(rest)):
        pair = (first, rest[idx])
        remaining = rest[:idx] + rest[idx + 1 :]
        for tail in _pairings(remaining):
            yield (pair,) + tail


def natural_monomials(wdeg: int, natdeg: int, K: int, q: int) -> list[int]:
    """Packed natural monomials of the given weighted and natural degree.

    Enumerates pairings of the base-q digit support of wdeg; the pair
    {q^a, q^b} with a < b contributes the factor with generator index
    b - a raised to q^a.  Empty when the digit support cannot split into
    natdeg pairs or a pairing needs a generator index beyond K.
    """
    support = digit_support(wdeg, q)
    if support is None or len(support) != 2 * natdeg:
        return []
    out = []
    for pairing in _pairings(tuple(sorted(support))):
        mono = 0
        ok = True
        for a, b in pairing:
            j = b - a
            if j > K:
                ok = False
                break
            mono += q**a << (LANE_BITS * j)
        if ok:
            out.append(mono)
    return sorted(set(out))


def natural_sum(alg: XiAlg, wdeg: int, natdeg: int) -> XiPoly:
    monos = natural_monomials(wdeg, natdeg, alg.K, alg.q)
    return XiPoly(alg, {e: 1 for e in monos}, wdeg if monos else None)


def delta_jk(j: int, k: int, i: int, m: int, q: int) -> XiPoly:
    """Correction factor attached to the generator pair (j, k) at stage i.

    Sum of the natural monomials of natural degree m - 2 whose weighted
    degree is q + ... + q^(2m-1) minus q^(2m-i), q^j and q^k.
    """
    if not 0 < j < k < 2 * m:
        raise ValueError(f"bad pair indices j={j}, k={k}")
    if not 1 <= i <= 2 * m - 1:
        raise ValueError(f"bad stage {i}")
    if 2 * m - i in (j, k):
        raise ValueError(f"stage {i} excludes index {2 * m - i}")
    wdeg = sum(q**r for r in range(1, 2 * m)) - q ** (2 * m - i) - q**j - q**k
    alg = XiAlg(field_for_order(q), 2 * m - 1)
    if m == 2:
        return XiPoly.one(alg)
    return natural_sum(alg, wdeg, m - 2)


def all_xi_monomials(alg: XiAlg, wdeg: int, cap: int | None = None):
    """All packed monomials of the weighted degree, heaviest lane first."""
    lanes = list(range(alg.K, 0, -1))
    if alg.allow_xibar:
        lanes.append(0)
    out: list[int] = []

    def rec(idx: int, remaining: int, acc: int) -> None:
        if remaining == 0:
            out.append(acc)
            if cap is not None and len(out) > cap:
                raise BudgetExceeded(f"monomial census past cap {cap}")
            return
        if idx == len(lanes):
            return
        lane = lanes[idx]
        w = alg.weights[lane]
        if idx == len(lanes) - 1:
            if remaining % w == 0:
                rec(idx + 1, 0, acc + ((remaining // w) << (LANE_BITS * lane)))
            return
        a = remaining // w
        while a >= 0:
            rec(idx + 1, remaining - a * w, acc + (a << (LANE_BITS * lane)))
            a -= 1

    rec(0, wdeg, 0)
    return out


# -- evaluation into the concrete ring ------------------------------------


class XiEvaluator:
    """Substitutes concrete generator polynomials for the abstract lanes."""

    def __init__(self, ring: RingSpec, gens: list[Poly | None]):
        self.ring = ring
        self.gens = gens
        self._sq_cache: dict[tuple[int, int], dict] = {}

    def _gen_power(self, lane: int, b: int) -> dict:
        """Term dict of gens[lane]^(2^b)."""
        got = self._sq_cache.get((lane, b))
        if got is None:
            if b == 0:
                got = dict(self.gens[lane].terms)
            else:
                got = termops.square_terms(
                    self._gen_power(lane, b - 1), self.ring.field.sqr_table
                )
            self._sq_cache[(lane, b)] = got
        return got

    def eval_monomial(self, e: int, budget: int | None = None) -> dict:
        mul = self.ring.field.mul_table
        acc = {0: 1}
        lane = 0
        while e:
            a = e & LANE_MASK
            b = 0
            while a:
                if a & 1:
                    acc = termops.mul_terms(acc, self._gen_power(lane, b), mul, budget)
                a >>= 1
                b += 1
            e >>= LANE_BITS
            lane += 1
        return acc

    def eval(self, p: XiPoly, budget: int | None = None) -> Poly:
        if p.is_zero():
            return Poly.zero(self.ring)
        mul = self.ring.field.mul_table
        total: dict = {}
        for e, c in p.terms.items():
            part = self.eval_monomial(e, budget)
            if c != 1:
                part = termops.scale_terms(part, c, mul)
            total = termops.add_terms(total, part)
            termops.check_budget(len(total), budget, "generator evaluation")
        return Poly(self.ring, total, p.wdeg if total else None)


# -- membership in the generator subalgebra -------------------------------


class _CandidateStream:
    """Clusters of candidate monomials in decreasing predicted lead order.

    The cluster at exponent sum B has predicted lex lead
    (dominant variable)^(wdeg-B) * (last variable)^B; B runs upward.
    """

    def __init__(self, alg: XiAlg, wdeg: int, ring: RingSpec):
        self.alg = alg
        self.wdeg = wdeg
        self.top_shift = LANE_BITS * (ring.nvars - 1)
        self.B = 0
        self.done = wdeg == 0

    def cluster_lead(self, B: int) -> int:
        return ((self.wdeg - B) << self.top_shift) | B

    def next_lead(self) -> int | None:
        if self.done:
            return None
        return self.cluster_lead(self.B + 1)

    def advance(self) -> tuple[int, list[int]]:
        """Monomials of the next cluster (may be empty), sorted."""
        self.B += 1
        B = self.B
        alg, wdeg = self.alg, self.wdeg
        if B * 2 > wdeg:
            self.done = True
            return self.cluster_lead(B), []
        found: list[int] = []
        lanes = list(range(alg.K, 0, -1))
        if alg.allow_xibar:
            lanes.append(0)

        def rec(idx: int, count: int, remaining: int, acc: int) -> None:
            if count == 0:
                if remaining == 0:
                    found.append(acc)
                return
            if idx == len(lanes):
                return
            lane = lanes[idx]
            w = alg.weights[lane]
            hi = min(count, remaining // w)
            for a in range(hi, -1, -1):
                rest = remaining - a * w
                if rest < (count - a) * 2:
                    continue
                rec(idx + 1, count - a, rest, acc + (a << (LANE_BITS * lane)) if a else acc)

        rec(0, B, wdeg, 0)
        return self.cluster_lead(B), sorted(found)


def express_in_xi(
    f: Poly,
    K: int,
    allow_xibar: bool = False,
    gens: list[Poly | None] | None = None,
    budget: int | None = None,
    max_columns: int = 200000,
) -> XiPoly:
    """Write f exactly in the generators up to index K, or prove it cannot be.

    gens[0] must evaluate the degree-two generator when allow_xibar is
    set; gens[j] evaluates generator j.  Success is self-certifying: the
    returned combination was subtracted from f term by term until
    nothing remained.
    """
    alg = XiAlg(f.ring.field, K, allow_xibar)
    if f.is_zero():
        return XiPoly.zero(alg)
    if gens is None:
        raise ValueError("express_in_xi needs the generator evaluation list")
    evaluator = XiEvaluator(f.ring, gens)
    stream = _CandidateStream(alg, f.degree, f.ring)
    field = f.ring.field
    mul = field.mul_table
    # pivot lead -> (column terms, lead coeff, combination terms)
    pivots: dict[int, tuple[dict, int, dict]] = {}
    ncols = 0

    def insert(col: dict, combo: dict) -> None:
        while col:
            lead = max(col)
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = (col, col[lead], combo)
                return
            pterms, pc, pcombo = hit
            factor = mul[col[lead]][field.inv_table[pc]]
            col = termops.add_terms(col, termops.scale_terms(pterms, factor, mul))
            combo = termops.add_terms(combo, termops.scale_terms(pcombo, factor, mul))
        raise AmbiguousSolution(
            "candidate monomial evaluation is dependent on earlier ones"
        )

    residual = dict(f.terms)
    heap = [-e for e in residual]
    heapq.heapify(heap)
    solution: dict = {}
    while True:
        mu = None
        while heap:
            cand = -heapq.heappop(heap)
            if residual.get(cand):
                mu = cand
                break
        if mu is None:
            break
        nxt = stream.next_lead()
        while nxt is not None and nxt >= mu:
            _, monos = stream.advance()
            for mono in monos:
                ncols += 1
                if ncols > max_columns:
                    raise BudgetExceeded(
                        f"membership solve past {max_columns} candidate columns"
                    )
                insert(evaluator.eval_monomial(mono, budget), {mono: 1})
            nxt = stream.next_lead()
        hit = pivots.get(mu)
        if hit is None:
            raise NotInSubalgebra(
                f"lead monomial {f.ring.unpack(mu)} is not reachable from the generators"
            )
        pterms, pc, pcombo = hit
        factor = mul[residual[mu]][field.inv_table[pc]]
        scaled = termops.scale_terms(pterms, factor, mul)
        for e in scaled:
            if e not in residual and e != mu:
                heapq.heappush(heap, -e)
        residual = termops.add_terms(residual, scaled)
        solution = termops.add_terms(
            solution, termops.scale_terms(pcombo, factor, mul)
        )
        termops.check_budget(len(residual), budget, "membership residual")
    return XiPoly.from_terms(alg, solution)


def divide_xi(num: XiPoly, den: XiPoly, budget: int | None = None) -> XiPoly:
    """Exact quotient num/den in the generator algebra.

    Long division against the divisor's lead term under the packed-key
    order (lex, highest generator most significant; multiplicative since
    keys add).  Any round whose lead is not lane-wise divisible raises
    NoSolution: the quotient is only returned when the division is
    exact, which is the certificate the callers rely on.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return num
    alg = num.alg
    mul = alg.field.mul_table
    nlanes = alg.K + 1
    dlead = max(den.terms)
    dinv = alg.field.inv(den.terms[dlead])
    drest = [(e, c) for e, c in den.terms.items() if e != dlead]
    residual = dict(num.terms)
    quotient: dict[int, int] = {}
    while residual:
        rlead = max(residual)
        for j in range(nlanes):
            shift = LANE_BITS * j
            if ((rlead >> shift) & LANE_MASK) < ((dlead >> shift) & LANE_MASK):
                xis, bar = alg.unpack(rlead)
                raise NoSolution(f"residual lead {(bar,) + xis} not divisible")
        mono = rlead - dlead
        c = mul[residual.pop(rlead)][dinv]
        quotient[mono] = c
        row = mul[c]
        get = residual.get
        for e, dc in drest:
            k = mono + e
            v = get(k, 0) ^ row[dc]
            if v:
                residual[k] = v
            else:
                del residual[k]
        termops.check_budget(len(residual), budget, "division residual")
        termops.check_budget(len(quotient), budget, "division quotient")
    return XiPoly(alg, quotient, num.wdeg - den.wdeg)


# -- the rewriting matrices -----------------------------------------------


def det_xi(matrix: list[list[XiPoly]], alg: XiAlg) -> XiPoly:
    """Determinant by expansion; characteristic 2 needs no signs."""
    n = len(matrix)
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def minor(row: int, colmask: int) -> XiPoly:
        if row == n:
            return XiPoly.one(alg)
        acc = XiPoly.zero(alg)
        mask = colmask
        while mask:
            low = mask & -mask
            c = low.bit_length() - 1
            entry = matrix[row][c]
            if not entry.is_zero():
                acc = acc + entry * minor(row + 1, colmask & ~low)
            mask &= mask - 1
        return acc

    out = minor(0, full)
    minor.cache_clear()
    return out


def m_matrix(m: int, q: int, pij: dict[tuple[int, int], XiPoly]) -> list[list[XiPoly]]:
    """The 2m x (2m+1) rewriting matrix over the generator algebra.

    Row r <= m carries generator entries twisted by q^(r-1); row 2m+1-i
    carries a unit column and the solved quotient polynomials for stage
    i.  Column 2m+1 is the augmented right-hand side.
    """
    field = field_for_order(q)
    alg = XiAlg(field, 2 * m)
    zero = XiPoly.zero(alg)
    one = XiPoly.one(alg)
    rows: list[list[XiPoly]] = []
    for r in range(1, m + 1):
        row = []
        for c in range(1, 2 * m + 2):
            if c < r:
                row.append(XiPoly.gen(alg, r - c).frobenius_pow(c - 1))
            elif c == r:
                row.append(zero)
            else:
                row.append(XiPoly.gen(alg, c - r).frobenius_pow(r - 1))
        rows.append(row)
    for r in range(m + 1, 2 * m + 1):
        i = 2 * m + 1 - r
        row = [zero] * (2 * m + 1)
        row[(m + 1 - i) - 1] = one
        for j in range(i, m + 1):
            entry = XiPoly(alg, dict(pij[(i, j)].terms), pij[(i, j)].wdeg)
            row[(m + 1 + j) - 1] = entry.frobenius_pow(m - j)
        rows.append(row)
    return rows


def m_minor(m: int, q: int, pij: dict[tuple[int, int], XiPoly], drop_col: int) -> XiPoly:
    """Determinant of the rewriting matrix with one column removed (1-based)."""
    rows = m_matrix(m, q, pij)
    alg = XiAlg(field_for_order(q), 2 * m)
    sub = [[row[c] for c in range(2 * m + 1) if c != drop_col - 1] for row in rows]
    return det_xi(sub, alg)


def m_tilde_matrix(
    m: int, q: int, pij: dict[tuple[int, int], XiPoly]
) -> list[list[XiPoly]]:
    """The half-power (2m-2) x (2m-2) companion matrix, for m = 2 or 3."""
    field = field_for_order(q)
    alg = XiAlg(field, max(2 * m - 3, 1))
    zero = XiPoly.zero(alg)
    one = XiPoly.one(alg)
    if m == 2:
        return [[zero, XiPoly.gen(alg, 1).half_frobenius(1)], [one, zero]]
    if m == 3:
        x = lambda j, k: XiPoly.gen(alg, j).half_frobenius(k)
        p11 = pij[(1, 1)]
        p11h = XiPoly(alg, dict(p11.terms), p11.wdeg).half_frobenius(2)
        return [
            [zero, x(1, 1), x(2, 1), x(3, 1)],
            [x(1, 1), zero, x(1, 2), x(2, 2)],
            [one, zero, zero, zero],
            [zero, one, zero, p11h],
        ]
    raise ValueError("companion matrix implemented for m = 2 and 3 only")


def pij_solve(levels) -> dict[tuple[int, int], XiPoly]:
    """Solve the quotient polynomials level by level.

    levels[j] for j = 1..m supplies the ring, the general-linear
    invariants and the generator evaluations at that level.  Stage i of
    level j is triangular in the already-solved lower levels:

        P(i,j) = d(j+i) + sum over i <= j' < j of P(i,j')^(q^(j-j')) d(j-j')

    computed concretely, then certified to lie in the generator
    subalgebra of index 2j-1.
    """
    out: dict[tuple[int, int], XiPoly] = {}
    for j, lvl in enumerate(levels, start=1):
        evaluator = XiEvaluator(lvl.ring, lvl.gens)
        for i in range(j, 0, -1):
            rhs = lvl.dickson(j + i)
            for jp in range(i, j):
                prev = evaluator.eval(out[(i, jp)], lvl.budget)
                rhs = rhs + prev.frobenius_pow(j - jp).mul(lvl.dickson(j - jp), lvl.budget)
            out[(i, j)] = express_in_xi(
                rhs, 2 * j - 1, gens=lvl.gens, budget=lvl.budget
            )
    return out
