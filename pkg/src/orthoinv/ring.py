"""Sparse multivariate polynomials over GF(2^s).

The distinguished ring has the ordered variables [y_1..y_m, z, x_m..x_1];
plain rings F_q[x_1..x_n] use the same machinery for the general-linear
constructions.  Variables earlier in the list are larger, and the packing
puts the first variable in the top 32-bit lane so that comparing packed
monomials as ints is exactly lex comparison.

Every polynomial built here is homogeneous; the constructors compute the
common degree once and the arithmetic keeps it, so a degree mismatch in
an addition fails fast instead of producing garbage terms.
"""

from __future__ import annotations

import heapq
from itertools import permutations

from . import termops
from .errors import NonSquareInput
from .gf import Field, field_for_order

LANE_BITS = termops.LANE_BITS
LANE_MASK = termops.LANE_MASK


class RingSpec:
    """A polynomial ring: field plus ordered variable list."""

    __slots__ = ("field", "m", "names", "nvars", "odd_mask", "_key")

    def __init__(self, field: Field, names: list[str], m: int | None = None):
        self.field = field
        self.names = list(names)
        self.nvars = len(names)
        self.m = m
        self.odd_mask = termops.odd_mask(self.nvars)
        self._key = (field.q, tuple(names))

    @classmethod
    def standard(cls, m: int, field: Field) -> "RingSpec":
        """F_q[y_1..y_m, z, x_m..x_1], the ring carrying the quadratic form."""
        if m < 1:
            raise ValueError("m must be positive")
        names = [f"y{i}" for i in range(1, m + 1)]
        names.append("z")
        names += [f"x{i}" for i in range(m, 0, -1)]
        return cls(field, names, m=m)

    @classmethod
    def plain(cls, n: int, field: Field, prefix: str = "x") -> "RingSpec":
        """F_q[x_1..x_n] with no distinguished quadratic variable."""
        return cls(field, [f"{prefix}{i}" for i in range(1, n + 1)], m=None)

    # -- variable indexing ------------------------------------------------

    def lane(self, var: int) -> int:
        return self.nvars - 1 - var

    def y_var(self, i: int) -> int:
        return i - 1

    @property
    def z_var(self) -> int:
        if self.m is None:
            raise ValueError("plain ring has no z")
        return self.m

    def x_var(self, i: int) -> int:
        return 2 * self.m + 1 - i

    def pack(self, exps) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent list length mismatch")
        e = 0
        top = self.nvars - 1
        for v, a in enumerate(exps):
            if a:
                e |= a << (LANE_BITS * (top - v))
        return e

    def unpack(self, e: int) -> tuple[int, ...]:
        top = self.nvars - 1
        return tuple((e >> (LANE_BITS * (top - v))) & LANE_MASK for v in range(self.nvars))

    def degree_of(self, e: int) -> int:
        return termops.total_degree(e, self.nvars)

    def pairs_in(self, e: int) -> int:
        """Number of hyperbolic pairs with a variable appearing in e."""
        if self.m is None:
            raise ValueError("plain ring has no pair structure")
        exps = self.unpack(e)
        count = 0
        for i in range(1, self.m + 1):
            if exps[self.y_var(i)] or exps[self.x_var(i)]:
                count += 1
        return count

    def __eq__(self, other) -> bool:
        return isinstance(other, RingSpec) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"RingSpec({self.field!r}, {'+'.join(self.names)})"


class MonomialOrder:
    """Monomial order on a ring; kind is 'lex' or 'grevlex'."""

    __slots__ = ("kind",)

    def __init__(self, kind: str):
        if kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown order {kind!r}")
        self.kind = kind

    def key(self, ring: RingSpec):
        if self.kind == "lex":
            return lambda e: e

        def grevlex_key(e: int) -> tuple:
            exps = ring.unpack(e)
            return (sum(exps), tuple(-a for a in reversed(exps)))

        return grevlex_key


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


class Poly:
    """Immutable-by-convention homogeneous sparse polynomial."""

    __slots__ = ("ring", "terms", "degree")

    def __init__(self, ring: RingSpec, terms: dict, degree: int | None):
        self.ring = ring
        self.terms = terms
        self.degree = degree if terms else None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ring: RingSpec) -> "Poly":
        return cls(ring, {}, None)

    @classmethod
    def const(cls, ring: RingSpec, c: int) -> "Poly":
        ring.field.check(c)
        return cls(ring, {0: c} if c else {}, 0 if c else None)

    @classmethod
    def one(cls, ring: RingSpec) -> "Poly":
        return cls(ring, {0: 1}, 0)

    @classmethod
    def variable(cls, ring: RingSpec, var: int, exp: int = 1, coeff: int = 1) -> "Poly":
        ring.field.check(coeff)
        if coeff == 0:
            return cls.zero(ring)
        e = exp << (LANE_BITS * ring.lane(var))
        return cls(ring, {e: coeff}, exp)

    @classmethod
    def monomial(cls, ring: RingSpec, exps, coeff: int = 1) -> "Poly":
        ring.field.check(coeff)
        if coeff == 0:
            return cls.zero(ring)
        return cls(ring, {ring.pack(exps): coeff}, sum(exps))

    @classmethod
    def from_terms(cls, ring: RingSpec, terms: dict) -> "Poly":
        """Wrap a packed term dict, checking homogeneity and coefficients."""
        clean = {}
        degree = None
        for e, c in terms.items():
            if c == 0:
                continue
            ring.field.check(c)
            d = ring.degree_of(e)
            if degree is None:
                degree = d
            elif d != degree:
                raise ValueError(f"inhomogeneous terms: degrees {degree} and {d}")
            clean[e] = c
        return cls(ring, clean, degree)

    def _wrap(self, terms: dict, degree: int | None) -> "Poly":
        return Poly(self.ring, terms, degree)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for e in sorted(self.terms, reverse=True)[:6]:
            c = self.terms[e]
            factors = [] if c == 1 else [self.ring.field.to_hex(c)]
            for v, a in enumerate(self.ring.unpack(e)):
                if a == 1:
                    factors.append(self.ring.names[v])
                elif a:
                    factors.append(f"{self.ring.names[v]}^{a}")
            parts.append("*".join(factors) or "1")
        more = "" if len(self.terms) <= 6 else f" +{len(self.terms) - 6} terms"
        return f"Poly({' + '.join(parts)}{more})"

    # -- arithmetic -------------------------------------------------------

    def _same_ring(self, other: "Poly") -> None:
        if self.ring != other.ring:
            raise ValueError("mixed rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._same_ring(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError(
                f"adding degrees {self.degree} and {other.degree} breaks homogeneity"
            )
        return self._wrap(termops.add_terms(self.terms, other.terms), self.degree)

    __sub__ = __add__  # characteristic 2

    def mul(self, other: "Poly", budget: int | None = None) -> "Poly":
        self._same_ring(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.ring)
        terms = termops.mul_terms(
            self.terms, other.terms, self.ring.field.mul_table, budget
        )
        return self._wrap(terms, self.degree + other.degree)

    def __mul__(self, other: "Poly") -> "Poly":
        return self.mul(other)

    def scale(self, c: int) -> "Poly":
        self.ring.field.check(c)
        if c == 0 or self.is_zero():
            return Poly.zero(self.ring)
        return self._wrap(
            termops.scale_terms(self.terms, c, self.ring.field.mul_table), self.degree
        )

    def square(self) -> "Poly":
        if self.is_zero():
            return self
        return self._wrap(
            termops.square_terms(self.terms, self.ring.field.sqr_table), self.degree * 2
        )

    def power2(self, b: int) -> "Poly":
        """Termwise power 2^b (iterated Frobenius square)."""
        if self.is_zero() or b == 0:
            return self
        self._guard_lane(self.degree << b)
        return self._wrap(
            termops.power2_terms(self.terms, b, self.ring.field.sqr_table),
            self.degree << b,
        )

    def pow(self, n: int, budget: int | None = None) -> "Poly":
        if n == 0:
            return Poly.one(self.ring)
        if self.is_zero():
            return self
        self._guard_lane(self.degree * n)
        terms = termops.pow_terms(
            self.terms, n, self.ring.field.mul_table, self.ring.field.sqr_table, budget
        )
        return self._wrap(terms, self.degree * n)

    def frobenius_pow(self, k: int) -> "Poly":
        """f^(q^k): exponents scale by q^k, coefficients are fixed by q."""
        if k < 0:
            raise ValueError("negative Frobenius power")
        return self.power2(k * self.ring.field.s)

    def _guard_lane(self, newdeg: int) -> None:
        if newdeg > LANE_MASK >> 1:
            raise OverflowError(f"degree {newdeg} too large for packed lanes")

    # -- characteristic-2 structure --------------------------------------

    def ns(self) -> "Poly":
        """Sum of the terms with at least one odd exponent."""
        odd = self.ring.odd_mask
        return self._wrap({e: c for e, c in self.terms.items() if e & odd}, self.degree)

    def sqrt(self) -> "Poly":
        """Termwise square root; exact because squaring is termwise."""
        odd = self.ring.odd_mask
        table = self.ring.field.sqrt_table
        out = {}
        for e, c in self.terms.items():
            if e & odd:
                raise NonSquareInput(f"term with odd exponents: {self.ring.unpack(e)}")
            out[e >> 1] = table[c]
        return self._wrap(out, None if self.degree is None else self.degree // 2)

    # -- lead terms -------------------------------------------------------

    def lead_term(self, order: MonomialOrder = LEX) -> tuple[tuple[int, ...], int]:
        if self.is_zero():
            raise ValueError("zero polynomial has no lead term")
        if order.kind == "lex":
            e = max(self.terms)
        else:
            e = max(self.terms, key=order.key(self.ring))
        return self.ring.unpack(e), self.terms[e]

    def lead_packed(self) -> int:
        return max(self.terms)

    # -- z-structure ------------------------------------------------------

    def z_coefficients(self) -> dict[int, dict]:
        """Split into {z-degree: term dict without the z lane}."""
        zl = LANE_BITS * self.ring.lane(self.ring.z_var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = (e >> zl) & LANE_MASK
            out.setdefault(k, {})[e - (k << zl)] = c
        return out

    def xibar_terms(self) -> dict:
        """Term dict of sum(x_i y_i), the doubled part of the quadratic form."""
        ring = self.ring
        out = {}
        for i in range(1, ring.m + 1):
            e = (1 << (LANE_BITS * ring.lane(ring.y_var(i)))) | (
                1 << (LANE_BITS * ring.lane(ring.x_var(i)))
            )
            out[e] = 1
        return out

    def divide_by_xi0(self) -> tuple["Poly", "Poly", "Poly"]:
        """Write self = f*(z^2 + sum x_i y_i) + a*z + b; returns (f, a, b)."""
        ring = self.ring
        zl = LANE_BITS * ring.lane(ring.z_var)
        coeffs = self.z_coefficients()
        xibar = self.xibar_terms()
        mul = ring.field.mul_table
        quo: dict = {}
        for k in sorted(coeffs, reverse=True):
            if k < 2:
                continue
            ck = coeffs.pop(k)
            shifted = {e + ((k - 2) << zl): c for e, c in ck.items()}
            quo = termops.add_terms(quo, shifted)
            flow = termops.mul_terms(ck, xibar, mul)
            lower = coeffs.setdefault(k - 2, {})
            coeffs[k - 2] = termops.add_terms(lower, flow)
        a = coeffs.get(1, {})
        b = coeffs.get(0, {})
        d = self.degree
        f = self._wrap(quo, None if d is None else d - 2)
        az = self._wrap(dict(a), None if d is None else d - 1)
        bz = self._wrap(dict(b), d)
        return f, az, bz

    def z_free(self) -> bool:
        zl = LANE_BITS * self.ring.lane(self.ring.z_var)
        return all(not (e >> zl) & LANE_MASK for e in self.terms)

    # -- division ---------------------------------------------------------

    def divide_exact(self, divisor: "Poly", budget: int | None = None) -> "Poly":
        """Exact quotient self/divisor under lex; raises if a remainder is left."""
        self._same_ring(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        ring = self.ring
        mul = ring.field.mul_table
        inv_lead = ring.field.inv(divisor.terms[max(divisor.terms)])
        glead = max(divisor.terms)
        glead_exps = ring.unpack(glead)
        rest = [(e, c) for e, c in divisor.terms.items() if e != glead]
        residual = dict(self.terms)
        heap = [-e for e in residual]
        heapq.heapify(heap)
        quo: dict = {}
        while heap:
            e = -heapq.heappop(heap)
            c = residual.get(e)
            if not c:
                continue
            del residual[e]
            exps = ring.unpack(e)
            if any(a < b for a, b in zip(exps, glead_exps)):
                raise ValueError("division left a remainder")
            qe = e - glead
            qc = mul[c][inv_lead]
            quo[qe] = qc
            termops.check_budget(len(quo), budget, "quotient")
            for ge, gc in rest:
                k = qe + ge
                n = residual.get(k, 0) ^ mul[qc][gc]
                if n:
                    if k not in residual:
                        heapq.heappush(heap, -k)
                    residual[k] = n
                else:
                    del residual[k]
        d = self.degree
        return self._wrap(quo, None if d is None else d - divisor.degree)

    # -- substitution -----------------------------------------------------

    def substitute_linear(self, matrix, budget: int | None = None) -> "Poly":
        """Image under the endomorphism sending variable v to row v of matrix."""
        ring = self.ring
        nv = ring.nvars
        if len(matrix) != nv or any(len(r) != nv for r in matrix):
            raise ValueError("matrix shape mismatch")
        mul = ring.field.mul_table
        sqr = ring.field.sqr_table
        rows = []
        for v in range(nv):
            row = {}
            for j, c in enumerate(matrix[v]):
                if c:
                    row[1 << (LANE_BITS * ring.lane(j))] = c
            rows.append(row)
        cache: dict[tuple[int, int], dict] = {}

        def var_power(v: int, a: int) -> dict:
            got = cache.get((v, a))
            if got is None:
                got = termops.pow_terms(rows[v], a, mul, sqr, budget)
                cache[(v, a)] = got
            return got

        out: dict = {}
        for e, c in self.terms.items():
            acc = {0: c}
            for v in range(nv):
                a = (e >> (LANE_BITS * ring.lane(v))) & LANE_MASK
                if a:
                    if not rows[v]:
                        acc = {}
                        break
                    acc = termops.mul_terms(acc, var_power(v, a), mul, budget)
            out = termops.add_terms(out, acc)
        return self._wrap(out, self.degree)

    def evaluate(self, point, field: Field | None = None, embed=None) -> int:
        """Value at a point; optionally in an extension via an embed table."""
        ring = self.ring
        F = field or ring.field
        total = 0
        for e, c in self.terms.items():
            v = embed[c] if embed is not None else c
            for var in range(ring.nvars):
                a = (e >> (LANE_BITS * ring.lane(var))) & LANE_MASK
                if a:
                    v = F.mul(v, F.pow(point[var], a))
                    if v == 0:
                        break
            total ^= v
        return total

    # -- serialization ----------------------------------------------------

    def serialize(self) -> str:
        ring = self.ring
        if ring.m is None:
            raise ValueError("only the standard ring serializes")
        lines = [f"ring m={ring.m} q={ring.field.q}"]
        key = GREVLEX.key(ring)
        for e in sorted(self.terms, key=key, reverse=True):
            exps = " ".join(str(a) for a in ring.unpack(e))
            lines.append(f"{ring.field.to_hex(self.terms[e])} {exps}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def deserialize(text: str) -> "Poly":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty serialization")
        head = lines[0].split()
        if len(head) != 3 or head[0] != "ring":
            raise ValueError(f"bad header {lines[0]!r}")
        m = int(head[1].removeprefix("m="))
        q = int(head[2].removeprefix("q="))
        ring = RingSpec.standard(m, field_for_order(q))
        terms = {}
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != ring.nvars + 1:
                raise ValueError(f"bad term line {ln!r}")
            c = ring.field.from_hex(parts[0])
            e = ring.pack([int(p) for p in parts[1:]])
            if c == 0 or e in terms:
                raise ValueError(f"invalid term line {ln!r}")
            terms[e] = c
        return Poly.from_terms(ring, terms)


def sigma(ring: RingSpec, exps) -> Poly:
    """Orbit sum of a monomial under the symmetric group on its variables.

    Distinct images enter with coefficient 1.  Rejects monomials touching
    z, whose orbit has no meaning here.
    """
    if ring.m is not None and exps[ring.z_var]:
        raise ValueError("sigma does not apply to monomials containing z")
    support = [v for v, a in enumerate(exps) if a]
    values = [exps[v] for v in support]
    seen = set()
    terms = {}
    for perm in permutations(values):
        if perm in seen:
            continue
        seen.add(perm)
        full = [0] * ring.nvars
        for v, a in zip(support, perm):
            full[v] = a
        terms[ring.pack(full)] = 1
    return Poly.from_terms(ring, terms)
