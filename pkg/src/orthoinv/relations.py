"""Check suites for the invariant-tower verification harness.

Every public verify_* function takes a CheckContext and returns a list of
CheckResult rows.  A row is "pass" only when the stated identity holds with
zero residual; "skipped" always carries the budget or gating reason.  The
suites never weaken an identity to make it pass: a claim that needs q > 2
is gated, not approximated, and a claim we cannot afford to evaluate is
reported as skipped.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AmbiguousSolution,
    BudgetExceeded,
    CapExceeded,
    NonSquareInput,
    NoSolution,
    NotInSubalgebra,
)
from .gf import Field
from .group import (
    apply_to_poly,
    bilinear_matrix,
    fixed_space_dim,
    generators,
    group_order_bfs,
    mat_mul,
    mat_vec,
    monomial_basis,
    variety_point_check,
)
from .invariants import (
    InvariantSet,
    delta_census,
    dickson_full,
    dickson_tilde_table,
    evaluator_for,
    natural_u,
    pij_levels,
    u_full,
    u_tilde,
    ud_bar_census,
    ud_top_census,
    ud_top_chain,
    xi,
    xi_gens,
    xibar_poly,
)
from .ring import GREVLEX, LANE_BITS, LEX, Poly, RingSpec, sigma
from .steenrod import steenrod_full, steenrod_k, steenrod_xi
from .xialg import (
    XiAlg,
    XiPoly,
    delta_jk,
    det_xi,
    divide_xi,
    express_in_xi,
    m_matrix,
    m_minor,
    m_tilde_matrix,
    pij_solve,
)


class CheckFailure(Exception):
    """A stated identity failed; the message carries the evidence."""


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skipped
    millis: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def run_check(name: str, fn) -> CheckResult:
    """Execute one check body, mapping exceptions onto statuses.

    Budget and cap overruns are honest skips; algebraic no-solution
    conditions are failures, because every caller only divides or
    extracts roots where the claim says it must succeed.
    """
    start = time.perf_counter()
    try:
        detail = fn() or ""
        status = "pass"
    except CheckFailure as exc:
        status, detail = "fail", str(exc)
    except (BudgetExceeded, CapExceeded) as exc:
        status, detail = "skipped", str(exc)
    except (NoSolution, NotInSubalgebra, AmbiguousSolution, NonSquareInput) as exc:
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    except ValueError as exc:
        # graded arithmetic refuses inhomogeneous sums; for an identity
        # check that is itself a failed claim, not a crash
        status, detail = "fail", f"degree mismatch: {exc}"
    millis = int((time.perf_counter() - start) * 1000)
    return CheckResult(name, status, millis, detail)


def _digest(p) -> str:
    try:
        text = p.serialize()
    except (AttributeError, ValueError):
        text = repr(sorted(p.terms.items())) if hasattr(p, "terms") else repr(p)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def expect(cond: bool, msg: str) -> None:
    if not cond:
        raise CheckFailure(msg)


def expect_zero(p, label: str) -> None:
    if not p.is_zero():
        raise CheckFailure(f"{label}: {len(p)} residual terms (digest {_digest(p)})")


def expect_eq(a, b, label: str) -> None:
    if a == b:
        return
    try:
        diff = a + b
    except ValueError as exc:
        raise CheckFailure(f"{label}: inhomogeneous mismatch ({exc})") from None
    raise CheckFailure(f"{label}: differ in {len(diff)} terms (digest {_digest(diff)})")


def rebase(p: XiPoly, alg: XiAlg) -> XiPoly:
    """View a generator polynomial inside a wider algebra with the same
    packing; valid because lane keys only ever grow upward."""
    if p.alg == alg:
        return p
    if p.is_zero():
        return XiPoly.zero(alg)
    return XiPoly(alg, dict(p.terms), p.wdeg)


def _mul_gate(a, b, limit: int = 40_000_000) -> None:
    # pairwise product cost estimate; cheaper to refuse than to thrash
    if len(a) * len(b) > limit:
        raise BudgetExceeded(f"product estimate {len(a)}x{len(b)} terms over the gate")


# -- shared run state ------------------------------------------------------


class CheckContext:
    """Everything one (m, q) verification run shares between suites.

    Expensive objects are built lazily and failures of the builders are
    cached, so a budget overrun in the Dickson tower is paid for once and
    every later consumer skips immediately with the same reason.
    """

    def __init__(
        self,
        m: int,
        q: int,
        degree_cap: int | None = None,
        term_budget: int | None = 2_000_000,
        group_cap: int = 100_000,
        point_budget: int = 300_000,
        cache=None,
    ):
        self.m = m
        self.q = q
        self.degree_cap = degree_cap
        self.term_budget = term_budget
        self.group_cap = group_cap
        self.point_budget = point_budget
        self.cache = cache
        self.inv = InvariantSet(m, q, budget=term_budget, cache=cache)
        self.field: Field = self.inv.field
        self.ring: RingSpec = self.inv.ring
        self.alg: XiAlg = self.inv.alg
        self.alg_top = XiAlg(self.field, 2 * m)
        self._gens = None
        self._census: dict[int, XiPoly] = {}
        self._top: dict[int, XiPoly] = {}
        self._pij_lower = None
        self._pij_top = None
        self._pij_full = None
        self._dickson_err: str | None = None
        self._pij_full_err: str | None = None
        self._variety: dict[int, dict] = {}
        self._cert_top: XiPoly | None = None
        self._cert_mid: dict[int, XiPoly] = {}

    # shorthand used by nearly every suite
    def gen(self, j: int, exp: int = 1) -> XiPoly:
        return XiPoly.gen(self.alg, j, exp)

    def gen_top(self, j: int, exp: int = 1) -> XiPoly:
        return XiPoly.gen(self.alg_top, j, exp)

    @property
    def gens(self):
        if self._gens is None:
            self._gens = generators(self.ring)
        return self._gens

    @property
    def expected_order(self) -> int:
        n = self.q ** (self.m * self.m)
        for i in range(1, self.m + 1):
            n *= self.q ** (2 * i) - 1
        return n

    def census(self, i: int) -> XiPoly:
        if i not in self._census:
            self._census[i] = ud_bar_census(i, self.m, self.q, self.alg)
        return self._census[i]

    def top_census(self, i: int) -> XiPoly:
        if i not in self._top:
            self._top[i] = ud_top_census(i, self.m, self.q, self.alg_top)
        return self._top[i]

    def dickson(self, i: int) -> Poly:
        """Level-m symplectic invariant table entry, negative-cached."""
        if self._dickson_err is not None:
            raise BudgetExceeded(self._dickson_err)
        try:
            return self.inv.dickson(i)
        except BudgetExceeded as exc:
            self._dickson_err = str(exc)
            raise

    def series(self, i: int) -> Poly:
        if self._dickson_err is not None:
            raise BudgetExceeded(self._dickson_err)
        try:
            return self.inv.e(i)
        except BudgetExceeded as exc:
            self._dickson_err = str(exc)
            raise

    @property
    def pij_lower(self) -> dict:
        """Quotient polynomials for every level below m."""
        if self._pij_lower is None:
            if self.m == 1:
                self._pij_lower = {}
            else:
                levels = pij_levels(self.m - 1, self.q, self.term_budget, self.cache)
                self._pij_lower = pij_solve(levels)
        return self._pij_lower

    def pij_top(self) -> dict:
        """Level-m quotient polynomials by exact census division.

        Works even where the level-m invariant table is out of budget:
        stage i is the unique quotient of the stage right-hand side by
        the orbit sum, and exactness of the division is the certificate.
        """
        if self._pij_top is None:
            u = natural_u(self.m, self.q, self.alg_top)
            out = {}
            for i in range(self.m, 0, -1):
                rhs = self.top_census(self.m + i)
                for jp in range(i, self.m):
                    prev = rebase(self.pij_lower[(i, jp)], self.alg_top)
                    rhs = rhs + prev.frobenius_pow(self.m - jp) * self.top_census(self.m - jp)
                out[(i, self.m)] = divide_xi(rhs, u, self.term_budget)
            self._pij_top = out
        return self._pij_top

    def pij_matrix(self) -> dict:
        """Keys for the rewriting matrix: lower levels plus census level m."""
        merged = dict(self.pij_lower)
        merged.update(self.pij_top())
        return merged

    def pij_full(self) -> dict:
        """All levels through m by the direct solver; needs the level-m table."""
        if self._pij_full_err is not None:
            raise BudgetExceeded(self._pij_full_err)
        if self._pij_full is None:
            try:
                levels = pij_levels(self.m, self.q, self.term_budget, self.cache)
                self._pij_full = pij_solve(levels)
            except BudgetExceeded as exc:
                self._pij_full_err = str(exc)
                raise
        return self._pij_full

    def variety_report(self, k: int) -> dict:
        if k not in self._variety:
            self._variety[k] = variety_point_check(
                self.inv, k, self.point_budget, self.group_cap
            )
        return self._variety[k]


# -- field and serialization ----------------------------------------------


def verify_field(ctx: CheckContext) -> list[CheckResult]:
    field = ctx.field
    out = []

    def inverse_law():
        for a in range(1, field.q):
            expect(field.mul(a, field.inv(a)) == 1, f"inverse fails at {a:#x}")
        return f"all {field.q - 1} units"

    out.append(run_check("field-inverse-law", inverse_law))

    def square_roots():
        sq = field.sqrt_table
        for a in range(field.q):
            expect(field.mul(sq[a], sq[a]) == a, f"sqrt fails at {a:#x}")
            # squaring is additive in characteristic 2
        for a in range(field.q):
            for b in range(field.q):
                lhs = field.mul(a ^ b, a ^ b)
                expect(lhs == field.mul(a, a) ^ field.mul(b, b), f"frobenius at {a},{b}")
        return "sqrt total and frobenius additive"

    out.append(run_check("field-square-roots", square_roots))

    def ring_laws():
        els = field.elements
        for a in els:
            for b in els:
                for c in els:
                    expect(
                        field.mul(a, field.mul(b, c)) == field.mul(field.mul(a, b), c),
                        f"associativity at {a},{b},{c}",
                    )
                    expect(
                        field.mul(a, b ^ c) == field.mul(a, b) ^ field.mul(a, c),
                        f"distributivity at {a},{b},{c}",
                    )
        return f"{len(els) ** 3} triples"

    out.append(run_check("field-ring-laws", ring_laws))

    def hex_round_trip():
        for a in field.elements:
            expect(field.from_hex(field.to_hex(a)) == a, f"hex round trip at {a}")

    out.append(run_check("field-hex-round-trip", hex_round_trip))

    def poly_round_trip():
        samples = [ctx.inv.xi_poly(i) for i in range(0, 2 * ctx.m)]
        samples.append(xibar_poly(ctx.ring))
        for p in samples:
            expect_eq(Poly.deserialize(p.serialize()), p, "ring serialization")
        return f"{len(samples)} polynomials"

    out.append(run_check("serialize-ring-round-trip", poly_round_trip))

    def xi_round_trip():
        samples = [natural_u(ctx.m, ctx.q, ctx.alg), ctx.gen(1, ctx.q - 1)]
        if ctx.m >= 2:
            samples += [ctx.census(i) for i in range(0, 2 * ctx.m - 1)]
        for p in samples:
            expect_eq(XiPoly.deserialize(p.serialize()), p, "generator serialization")
        return f"{len(samples)} polynomials"

    out.append(run_check("serialize-generator-round-trip", xi_round_trip))
    return out


# -- the operator on the tower --------------------------------------------


def _operator_profile(ctx: CheckContext, i: int) -> dict[int, Poly]:
    """Expected full operator expansion on tower generator i."""
    q = ctx.q
    ring = ctx.ring
    xi_i = ctx.inv.xi_poly(i)
    if i == 0:
        return {0: xi_i, 1: ctx.inv.xi_poly(1), 2: xi_i.frobenius_pow(1)}
    if i == 1:
        # the degree-one image cancels in characteristic 2
        return {0: xi_i, q: ctx.inv.xi_poly(2), q + 1: xi_i.frobenius_pow(1)}
    above = xi(ring, i + 1) if i + 1 > 2 * ctx.m - 1 else ctx.inv.xi_poly(i + 1)
    return {
        0: xi_i,
        1: ctx.inv.xi_poly(i - 1).frobenius_pow(1),
        q**i: above,
        q**i + 1: xi_i.frobenius_pow(1),
    }


def verify_steenrod(ctx: CheckContext) -> list[CheckResult]:
    q, m = ctx.q, ctx.m
    out = []

    for i in range(0, 2 * m):
        def profile(i=i):
            got = steenrod_full(ctx.inv.xi_poly(i))
            want = _operator_profile(ctx, i)
            expect(
                sorted(got) == sorted(want),
                f"support {sorted(got)} differs from {sorted(want)}",
            )
            for k, p in want.items():
                expect_eq(got[k], p, f"image at degree {k}")
            return f"support {sorted(want)}"

        out.append(run_check(f"operator-profile-lane{i}", profile))

    # the evaluator knows the top generator, so widened images evaluate too
    def symbolic_rules():
        ev = evaluator_for(ctx.ring, 2 * m)
        for j in range(1, 2 * m):
            ks = [1, q**j, q**j + 1] if j > 1 else [q, q + 1]
            for k in ks:
                lhs = ev.eval(rebase(steenrod_xi(ctx.gen(j), k), ctx.alg_top), ctx.term_budget)
                expect_eq(lhs, steenrod_k(ctx.inv.xi_poly(j), k), f"lane {j} degree {k}")
        return f"{2 * m - 1} lanes"

    out.append(run_check("operator-symbolic-rules", symbolic_rules))

    def orbit_commute():
        u = natural_u(m, q, ctx.alg)
        ueval = ctx.inv.u()
        ev = evaluator_for(ctx.ring, 2 * m)
        for k in (1, q):
            lhs = ev.eval(rebase(steenrod_xi(u, k), ctx.alg_top), ctx.term_budget)
            expect_eq(lhs, steenrod_k(ueval, k), f"orbit sum, degree {k}")
        return "degrees 1 and q on the orbit sum"

    out.append(run_check("operator-evaluation-commutes", orbit_commute))

    def cartan():
        pairs = [(ctx.inv.xi_poly(0), ctx.inv.xi_poly(1))]
        if m >= 2:
            pairs.append((ctx.inv.xi_poly(1), ctx.inv.xi_poly(2)))
        for f, g in pairs:
            full_f, full_g = steenrod_full(f), steenrod_full(g)
            got = steenrod_full(f.mul(g, ctx.term_budget))
            conv: dict[int, Poly] = {}
            for a, pa in full_f.items():
                for b, pb in full_g.items():
                    k = a + b
                    cur = conv.get(k)
                    term = pa.mul(pb, ctx.term_budget)
                    conv[k] = term if cur is None else cur + term
            conv = {k: p for k, p in conv.items() if not p.is_zero()}
            expect(sorted(got) == sorted(conv), "product support differs")
            for k in got:
                expect_eq(got[k], conv[k], f"product image at {k}")
        return f"{len(pairs)} products"

    out.append(run_check("operator-product-rule", cartan))

    def stability():
        f = ctx.inv.xi_poly(1)
        d = q + 1  # its degree
        expect_eq(steenrod_k(f, 0), f, "degree-zero image")
        expect_eq(steenrod_k(f, d), f.frobenius_pow(1), "top image")
        expect_zero(steenrod_k(f, d + 1), "image above the degree")
        g = ctx.inv.xi_poly(0)
        expect_eq(steenrod_k(g, 2), g.frobenius_pow(1), "quadric top image")
        expect_zero(steenrod_k(g, 3), "quadric image above the degree")

    out.append(run_check("operator-stability", stability))

    def q_power_rule():
        f = ctx.inv.xi_poly(1)
        got = steenrod_full(f.frobenius_pow(1))
        want = {q * k: p.frobenius_pow(1) for k, p in steenrod_full(f).items()}
        expect(sorted(got) == sorted(want), "q-power support differs")
        for k in got:
            expect_eq(got[k], want[k], f"q-power image at {k}")

    out.append(run_check("operator-q-power-rule", q_power_rule))

    for n in (1, 2, 3):
        def gap(n=n):
            top = u_tilde(n, ctx.field)
            table = dickson_tilde_table(n, ctx.field, ctx.term_budget)
            full = steenrod_full(top)
            bad = [k for k in full if 0 < k < q ** (n - 1)]
            expect(not bad, f"unexpected images at degrees {bad[:4]}")
            expect_eq(full[0], top, "degree-zero image")
            jump = q ** (n - 1)
            expect(jump in full, f"no image at degree {jump}")
            expect_eq(full[jump], top.mul(table[1], ctx.term_budget), "first jump image")
            return f"gap below {jump} confirmed"

        out.append(run_check(f"operator-gap-top-form-n{n}", gap))

    return out


# -- the general-linear tower ----------------------------------------------


def _lift_plain(p: Poly, big: RingSpec) -> Poly:
    # plain rings put the last variable on lane 0, so lifting shifts
    # every exponent up by the number of new variables
    jump = LANE_BITS * (big.nvars - p.ring.nvars)
    return Poly(big, {e << jump: c for e, c in p.terms.items()}, p.degree)


def _plain_norm(ring: RingSpec, table_prev: list[Poly], n: int, q: int) -> Poly:
    """The twisted norm of the last variable over the previous level."""
    v = n - 1  # lane of x_n
    norm = Poly.variable(ring, v, q ** (n - 1))
    for j in range(1, n):
        coeff = _lift_plain(table_prev[j], ring)
        norm = norm + coeff.mul(Poly.variable(ring, v, q ** (n - 1 - j)))
    return norm


def verify_dickson(ctx: CheckContext) -> list[CheckResult]:
    q = ctx.q
    field = ctx.field
    out = []
    top_n = 4 if q <= 4 else 3  # the level-4 tower is priced out above GF(4)

    def anchors():
        t1 = dickson_tilde_table(1, field, ctx.term_budget)
        r1 = t1[1].ring
        expect_eq(t1[1], Poly.variable(r1, 0, q - 1), "level 1 generator")
        t2 = dickson_tilde_table(2, field, ctx.term_budget)
        r2 = t2[1].ring
        x1 = Poly.variable(r2, 0)
        norm2 = Poly.variable(r2, 1, q) + x1.pow(q - 1) * Poly.variable(r2, 1)
        expect_eq(t2[1], x1.pow(q * (q - 1)) + norm2.pow(q - 1), "level 2 first entry")
        for n in range(1, top_n + 1):
            tab = dickson_tilde_table(n, field, ctx.term_budget)
            expect_eq(
                tab[n],
                u_tilde(n, field).pow(q - 1, ctx.term_budget),
                f"level {n} top entry",
            )
        expect_eq(t2[1].ns(), u_tilde(2, field).pow(q - 2) * (x1 * Poly.variable(r2, 1)),
                  "level 2 odd part")
        return f"levels 1..{top_n}"

    out.append(run_check("tower-anchors", anchors))

    for n in (2, 3):
        def induction(n=n):
            tab = dickson_tilde_table(n, field, ctx.term_budget)
            prev = dickson_tilde_table(n - 1, field, ctx.term_budget)
            ring = tab[1].ring
            norm = _plain_norm(ring, prev, n, q)
            npow = norm.pow(q - 1, ctx.term_budget)
            for i in range(1, n + 1):
                upper = _lift_plain(prev[i], ring).frobenius_pow(1) if i < n else Poly.zero(ring)
                lower = _lift_plain(prev[i - 1], ring).mul(npow, ctx.term_budget)
                expect_eq(tab[i], upper + lower, f"stage {i}")
            return f"{n} stages"

        out.append(run_check(f"tower-induction-n{n}", induction))

    for n in (2, 3):
        def invariance(n=n):
            tab = dickson_tilde_table(n, field, ctx.term_budget)
            ring = tab[1].ring
            mats = []
            ident = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
            shear = [row[:] for row in ident]
            shear[0][1] = 1  # x1 -> x1 + x2
            mats.append(tuple(map(tuple, shear)))
            swap = [row[:] for row in ident]
            swap[0], swap[1] = ident[1][:], ident[0][:]
            mats.append(tuple(map(tuple, swap)))
            if n == 3:
                cyc = [ident[1][:], ident[2][:], ident[0][:]]
                mats.append(tuple(map(tuple, cyc)))
            if q > 2:
                diag = [row[:] for row in ident]
                diag[0][0] = 2  # a field generator
                mats.append(tuple(map(tuple, diag)))
            for g in mats:
                for i in range(1, n + 1):
                    expect_eq(tab[i].substitute_linear(g, ctx.term_budget), tab[i],
                              f"stage {i} moved")
            return f"{len(mats)} group elements"

        out.append(run_check(f"tower-invariance-n{n}", invariance))

    for n in (2, 3):
        # the operator climbs the tower: hitting stage i-1 in degree
        # q^(n-i) lands on stage i
        def chain_step(n=n):
            tab = dickson_tilde_table(n, field, ctx.term_budget)
            for i in range(2, n + 1):
                expect_eq(
                    steenrod_k(tab[i - 1], q ** (n - i)),
                    tab[i],
                    f"step into stage {i}",
                )
            return f"stages 2..{n}"

        out.append(run_check(f"tower-chain-step-n{n}", chain_step))

    for n in range(2, top_n + 1):
        def odd_profile(n=n):
            tab = dickson_tilde_table(n, field, ctx.term_budget)
            ring = tab[1].ring
            scale = u_tilde(n, field).pow(q - 2, ctx.term_budget)
            for i in range(1, n):
                exps = [0] * ring.nvars
                for j in range(1, n + 1):
                    if j == 1:
                        exps[j - 1] = 1
                    elif j <= n - i + 1:
                        exps[j - 1] = q ** (j - 2)
                    else:
                        exps[j - 1] = q ** (j - 1)
                orbit = sigma(ring, tuple(exps))
                expect_eq(tab[i].ns(), scale.mul(orbit, ctx.term_budget), f"stage {i}")
            expect_eq(tab[n].ns(), tab[n], "top stage is its own odd part")
            return f"stages 1..{n}"

        out.append(run_check(f"odd-part-profile-n{n}", odd_profile))

    if q > 2:
        for n in (3, 4) if top_n == 4 else (3,):
            def transfer(n=n):
                ring = dickson_tilde_table(n, field, ctx.term_budget)[1].ring

                def pattern(i):
                    exps = [0] * ring.nvars
                    for j in range(1, n + 1):
                        if j == 1:
                            exps[j - 1] = 1
                        elif j <= n - i + 1:
                            exps[j - 1] = q ** (j - 2)
                        else:
                            exps[j - 1] = q ** (j - 1)
                    return tuple(exps)

                for i in range(2, n):
                    got = steenrod_k(sigma(ring, pattern(i - 1)), q ** (n - i))
                    expect_eq(got, sigma(ring, pattern(i)), f"orbit step into stage {i}")
                return f"stages 2..{n - 1}"

            out.append(run_check(f"odd-part-transfer-n{n}", transfer))

    return out


# -- natural monomial census ----------------------------------------------


def verify_natmon(ctx: CheckContext) -> list[CheckResult]:
    m, q = ctx.m, ctx.q
    out = []

    def orbit_sum():
        got = ctx.inv.evaluator().eval(
            rebase(natural_u(m, q, ctx.alg), ctx.alg_top), ctx.term_budget
        )
        expect_eq(got, ctx.inv.u(), "orbit sum census")
        return f"{len(natural_u(m, q, ctx.alg))} natural monomials"

    out.append(run_check("census-orbit-sum", orbit_sum))

    if m >= 2:
        def lowered_chain():
            sub = RingSpec.standard(m - 1, ctx.field)
            ev = evaluator_for(sub, 2 * m - 2)
            bar_alg = XiAlg(ctx.field, 2 * m - 2)
            table = dickson_full(m - 1, ctx.field, ctx.term_budget, ctx.cache)
            base = u_full(sub)
            for i in range(0, 2 * m - 1):
                got = ev.eval(rebase(ctx.census(i), bar_alg), ctx.term_budget)
                _mul_gate(base, table[i])
                expect_eq(got, base.mul(table[i], ctx.term_budget), f"chain entry {i}")
            return f"entries 0..{2 * m - 2}"

        out.append(run_check("census-lowered-chain", lowered_chain))

    def top_chain_eval():
        ev = evaluator_for(ctx.ring, 2 * m)
        u = ctx.inv.u()
        for i in range(0, 2 * m + 1):
            d = ctx.dickson(i)
            _mul_gate(u, d)
            got = ev.eval(ctx.top_census(i), ctx.term_budget)
            expect_eq(got, u.mul(d, ctx.term_budget), f"scaled entry {i}")
        return f"entries 0..{2 * m}"

    out.append(run_check("census-scaled-chain", top_chain_eval))

    def literal_anchors():
        if m == 1:
            expect_eq(natural_u(1, q, ctx.alg), ctx.gen(1), "orbit sum literal")
            return "single generator"
        if m == 2:
            want = (
                ctx.gen(3) * ctx.gen(1, q)
                + ctx.gen(2, q + 1)
                + ctx.gen(1, q * q + 1)
            )
            expect_eq(natural_u(2, q, ctx.alg), want, "orbit sum literal")
            want_top = (
                ctx.gen_top(4) * ctx.gen_top(1, q)
                + ctx.gen_top(3, q) * ctx.gen_top(2)
                + ctx.gen_top(2, q * q) * ctx.gen_top(1)
            )
            expect_eq(ctx.top_census(1), want_top, "first scaled entry literal")
            return "both literals"
        count = len(natural_u(3, q, ctx.alg))
        expect(count == 15, f"pairing count {count} is not 15")
        return "pairing count 15"

    out.append(run_check("census-literal-anchors", literal_anchors))

    def closures():
        top = ctx.top_census(2 * m)
        expect_eq(top, natural_u(m, q, ctx.alg_top).frobenius_pow(1), "top closure")
        if m >= 2:
            bar = ctx.census(2 * m - 2)
            expect_eq(bar, natural_u(m - 1, q, ctx.alg).frobenius_pow(1), "lowered closure")

    out.append(run_check("census-closures", closures))

    def lead_profile():
        u = natural_u(m, q, ctx.alg)
        kept = {}
        for e, c in u.terms.items():
            xis, bar = ctx.alg.unpack(e)
            if bar or any(xis[j] for j in range(0, m - 1)):
                continue  # drops any term touching the low lanes
            kept[e] = c
        expect(bool(kept), "no term survives the low-lane reduction")
        want = ctx.gen(m, (q**m - 1) // (q - 1))
        expect_eq(XiPoly(ctx.alg, kept, u.wdeg), want, "reduced lead profile")
        return "single survivor monomial"

    out.append(run_check("census-lead-profile", lead_profile))
    return out


# -- correction chain ------------------------------------------------------


def verify_delta(ctx: CheckContext) -> list[CheckResult]:
    m, q = ctx.m, ctx.q
    out = []

    if m >= 2:
        def bar_census():
            for i in range(0, 2 * m - 1):
                expect_eq(ctx.inv.ud_bar(i), ctx.census(i), f"entry {i}")
            return f"entries 0..{2 * m - 2}"

        out.append(run_check("chain-census-lowered", bar_census))

    def top_census_chain():
        chain = ud_top_chain(m, q)
        for i in range(0, 2 * m + 1):
            expect_eq(rebase(chain[i], ctx.alg_top), ctx.top_census(i), f"entry {i}")
        return f"entries 0..{2 * m}"

    out.append(run_check("chain-census-top", top_census_chain))

    if m >= 2:
        if q > 2:
            def corr_census():
                for i in range(1, 2 * m):
                    expect_eq(ctx.inv.delta(i), delta_census(i, m, q), f"entry {i}")
                return f"entries 1..{2 * m - 1}"

            out.append(run_check("correction-census", corr_census))
        else:
            out.append(
                CheckResult(
                    "correction-census",
                    "skipped",
                    0,
                    "the census description needs q > 2; the low-field chain "
                    "carries extra terms",
                )
            )

        if m == 2:
            def contraction():
                d12 = delta_jk(1, 2, 1, m, q)
                expect_eq(ctx.gen(1) * d12, ctx.census(0), "first slot")
                expect_eq(ctx.gen(2) * d12, ctx.census(1), "second slot")
                return "pair factor is the unit"

            out.append(run_check("pair-contraction", contraction))
        else:
            def contraction_sum():
                literal_ok = True
                d12 = delta_jk(1, 2, 1, m, q)
                if ctx.gen(1) * d12 != ctx.census(2 * m - 4):
                    literal_ok = False
                for k in range(1, 2 * m - 1):
                    acc = XiPoly.zero(ctx.alg)
                    for j in range(1, 2 * m - 1):
                        if j == k:
                            continue
                        lo, hi = min(j, k), max(j, k)
                        acc = acc + ctx.gen(j) * delta_jk(lo, hi, 1, m, q)
                    expect_eq(acc, ctx.census(2 * m - 2 - k), f"slot {k}")
                note = "" if literal_ok else "; single-pair form does not contract"
                return f"slots 1..{2 * m - 2}{note}"

            out.append(run_check("pair-contraction-sum", contraction_sum))

    def odd_signature():
        ring = ctx.ring
        exps = [0] * ring.nvars
        for j in range(1, m + 1):
            exps[ring.x_var(j)] = 1 if j <= 2 else q ** (j - 2)
            exps[ring.y_var(j)] = q ** (2 * m - 1 - j)
        orbit = sigma(ring, tuple(exps))
        # the smaller natural monomial enters through its generator
        # expression, evaluated in the full ring, not through the
        # subspace element itself
        amb = ctx.inv.ud_bar_eval(0)
        rhs = xibar_poly(ring).mul(amb.frobenius_pow(1), ctx.term_budget)
        corr = ctx.inv.delta_eval(1)
        if not corr.is_zero():
            rhs = rhs + corr.ns()
        expect_eq(orbit, rhs, "signature orbit")
        return f"orbit of {len(orbit)} terms"

    out.append(run_check("odd-part-signature", odd_signature))
    return out


# -- odd-degree series -----------------------------------------------------


def verify_series(ctx: CheckContext) -> list[CheckResult]:
    m, q = ctx.m, ctx.q
    out = []

    for i in range(1, 2 * m):
        def normal_form(i=i):
            e = ctx.series(i)
            expect(
                e.degree == ctx.inv.degree_of_series(i),
                f"degree {e.degree} differs from {ctx.inv.degree_of_series(i)}",
            )
            parts = e.z_coefficients()
            if set(parts) <= {0, 1}:
                a = Poly.from_terms(ctx.ring, parts.get(1, {}))
                b = Poly.from_terms(ctx.ring, parts.get(0, {}))
                want_a = ctx.inv._sqrt_scale(ctx.inv.ud_bar_eval(i - 1))
                if q > 2:
                    want_a = want_a.mul(ctx.inv._u_half_less_one(), ctx.term_budget)
                expect_eq(a, want_a, "terminal coefficient")
                expect_eq(b.square(), ctx.inv._b_square_rhs(i), "square of the settled part")
                return f"degree {e.degree}, {len(e)} terms, linear in the terminal variable"
            # only the low field produces higher terminal powers, on the
            # last chain step
            expect(q == 2, f"terminal powers {sorted(parts)} need the low field")
            return f"degree {e.degree}, {len(e)} terms, terminal square part kept"

        out.append(run_check(f"series-normal-form-{i}", normal_form))

    if m == 1:
        def lead():
            e1 = ctx.series(1)
            want = [0] * ctx.ring.nvars
            want[ctx.ring.y_var(1)] = q * (q - 1) // 2
            for order, tag in ((LEX, "lex"), (GREVLEX, "grevlex")):
                exps, coeff = e1.lead_term(order)
                expect(coeff == 1, f"{tag} lead coefficient {coeff}")
                expect(list(exps) == want, f"{tag} lead exponents {exps}")
            return "pure power of the last support variable"

        out.append(run_check("series-lead-term", lead))

    for i in range(1, 2 * m):
        def invariance(i=i):
            e = ctx.series(i)
            cost = len(e) * len(ctx.gens)
            if cost > 600_000:
                raise BudgetExceeded(f"invariance estimate {cost} term substitutions")
            for g in ctx.gens:
                expect_eq(apply_to_poly(e, g, ctx.term_budget), e, "moved by a generator")
            return f"{len(ctx.gens)} generators"

        out.append(run_check(f"series-invariance-{i}", invariance))

    return out


# -- determinant identities ------------------------------------------------


def verify_det_thm(ctx: CheckContext) -> list[CheckResult]:
    m, q = ctx.m, ctx.q
    out = []

    def census_quotients():
        top = ctx.pij_top()
        u = natural_u(m, q, ctx.alg_top)
        expect_eq(top[(m, m)], u.pow(q - 1), "top stage anchor")
        if m == 1:
            expect_eq(top[(1, 1)], ctx.gen_top(1, q - 1), "unit stage anchor")
        else:
            expect_eq(
                rebase(ctx.pij_lower[(1, 1)], ctx.alg_top),
                ctx.gen_top(1, q - 1),
                "unit stage anchor",
            )
        return f"{len(top)} census quotients"

    out.append(run_check("quotient-census-solve", census_quotients))

    def direct_crosscheck():
        full = ctx.pij_full()
        top = ctx.pij_top()
        for i in range(1, m + 1):
            expect_eq(rebase(full[(i, m)], ctx.alg_top), top[(i, m)], f"stage {i}")
        return f"stages 1..{m}"

    out.append(run_check("quotient-direct-crosscheck", direct_crosscheck))

    for j in range(1, 2 * m + 2):
        def minor_identity(j=j):
            pij = ctx.pij_matrix()
            got = m_minor(m, q, pij, j)
            expect_eq(got, ctx.top_census(2 * m + 1 - j), "minor census")
            return f"{len(got)} terms"

        out.append(run_check(f"rewrite-minor-{j}", minor_identity))

    if m >= 2:
        def expansion():
            pij = ctx.pij_lower
            acc = XiPoly.zero(ctx.alg_top)
            for j in range(1, 2 * m):
                sub = m_minor(m - 1, q, pij, j)
                acc = acc + ctx.gen_top(j) * rebase(sub, ctx.alg_top).frobenius_pow(1)
            expect_eq(acc, natural_u(m, q, ctx.alg_top), "cofactor recursion")

        out.append(run_check("rewrite-expansion-recursion", expansion))

        def lowered_expression():
            acc = ctx.gen(2 * m - 1) * natural_u(m - 1, q, ctx.alg).frobenius_pow(1)
            for j in range(1, 2 * m - 1):
                acc = acc + ctx.gen(j) * ctx.census(2 * m - 1 - j).frobenius_pow(1)
            expect_eq(acc, natural_u(m, q, ctx.alg), "expansion along the last column")

        out.append(run_check("rewrite-lowered-expression", lowered_expression))

    return out


# -- relations: rewriting rows, correction identities, series relations ----


def verify_symplectic_rows(ctx: CheckContext) -> list[CheckResult]:
    """Row identities of the rewriting matrix, scaled and evaluated."""
    m, q = ctx.m, ctx.q
    out = []

    def scaled_rows():
        pij = ctx.pij_matrix()
        rows = m_matrix(m, q, pij)
        u = natural_u(m, q, ctx.alg_top)
        for r in range(2 * m):
            acc = u * rows[r][2 * m]
            for c in range(2 * m):
                entry = rows[r][c]
                if entry.is_zero():
                    continue
                acc = acc + entry * ctx.top_census(2 * m - c)
            expect_zero(acc, f"row {r + 1}")
        return f"all {2 * m} rows"

    out.append(run_check("row-balance-scaled", scaled_rows))

    def evaluated_rows():
        table = [ctx.dickson(i) for i in range(2 * m + 1)]
        pij = ctx.pij_full()
        rows = m_matrix(m, q, pij)
        ev = evaluator_for(ctx.ring, 2 * m)
        for r in range(2 * m):
            rhs = ev.eval(rows[r][2 * m], ctx.term_budget)
            acc = Poly.zero(ctx.ring)
            for c in range(2 * m):
                entry = rows[r][c]
                if entry.is_zero():
                    continue
                coeff = ev.eval(entry, ctx.term_budget)
                d = table[2 * m - c]
                _mul_gate(coeff, d)
                acc = acc + coeff.mul(d, ctx.term_budget)
            expect_eq(acc, rhs, f"row {r + 1}")
        return f"all {2 * m} rows in the base ring"

    out.append(run_check("row-balance-evaluated", evaluated_rows))
    return out


def verify_del_rel(ctx: CheckContext) -> list[CheckResult]:
    """Correction-chain contraction identities; the display needs q > 2."""
    m, q = ctx.m, ctx.q
    out = []
    if m == 1:
        return [CheckResult("corr-contract", "skipped", 0, "no correction chain at m = 1")]
    if q == 2:
        return [
            CheckResult(
                "corr-contract",
                "skipped",
                0,
                "the contraction display needs q > 2; the low-field variants "
                "run in the dedicated suite",
            )
        ]

    def first_row():
        u = natural_u(m, q, ctx.alg)
        acc = ctx.gen(1) * u
        acc = acc + ctx.gen(1, 2) * natural_u(m - 1, q, ctx.alg).frobenius_pow(2)
        for j in range(1, 2 * m - 1):
            acc = acc + ctx.gen(2 * m - 1 - j, q) * ctx.inv.delta(j)
        expect_zero(acc, "first contraction")
        return f"{2 * m - 2} chain entries"

    out.append(run_check("corr-contract-first", first_row))

    if m == 2:
        def literal():
            u = natural_u(2, q, ctx.alg)
            acc = ctx.gen(1) * u + ctx.gen(2, q) * ctx.inv.delta(1)
            acc = acc + ctx.gen(1, q) * ctx.inv.delta(2)
            expect_eq(acc, ctx.gen(1, q * q + 2), "closed form")

        out.append(run_check("corr-contract-literal", literal))

    for i in range(2, m):
        def middle(i=i):
            u = natural_u(m, q, ctx.alg)
            acc = ctx.gen(i) * u
            acc = acc + ctx.gen(i, 2) * ctx.census(2 * m - 1 - i).frobenius_pow(1)
            for j in range(1, 2 * m - i):
                acc = acc + ctx.inv.delta(j) * ctx.gen(2 * m - i - j, q**i)
            for k in range(1, i):
                acc = acc + ctx.gen(k, q ** (i - k)) * ctx.inv.delta(2 * m - i + k)
            expect_zero(acc, f"stage {i}")

        out.append(run_check(f"corr-contract-mid-{i}", middle))

    return out


def verify_main_relations(ctx: CheckContext) -> list[CheckResult]:
    """The series relation system: coefficient identities, scaled squares,
    rewrite certificates, and (budget permitting) the direct forms."""
    m, q = ctx.m, ctx.q
    out = []
    if m == 1:
        return [
            CheckResult(
                "series-rel",
                "skipped",
                0,
                "the relation system starts at m = 2; at m = 1 the tower is free",
            )
        ]

    def zcoeff_top():
        acc = XiPoly.zero(ctx.alg)
        for j in range(1, 2 * m - 1):
            acc = acc + ctx.gen(2 * m - 1 - j) * ctx.census(j - 1)
        expect_zero(acc, "terminal coefficients")

    out.append(run_check("zcoeff-balance-top", zcoeff_top))

    for i in range(2, m):
        def zcoeff_mid(i=i):
            acc = XiPoly.zero(ctx.alg)
            for j in range(1, 2 * m - i):
                acc = acc + ctx.gen(2 * m - i - j, q ** (i - 1)) * ctx.census(j - 1)
            for k in range(1, i):
                acc = acc + ctx.gen(k, q ** (i - k - 1)) * ctx.census(2 * m - i + k - 1)
            expect_zero(acc, f"stage {i}")

        out.append(run_check(f"zcoeff-balance-mid-{i}", zcoeff_mid))

    for i in range(1, m):
        def zcoeff_rewrite(i=i):
            acc = ctx.census(2 * m - i - 1)
            for j in range(1, i + 1):
                p = rebase(ctx.pij_lower[(m - i, m - j)], ctx.alg)
                acc = acc + p.frobenius_pow(j - 1) * ctx.census(j - 1)
            expect_zero(acc, f"stage {i}")

        out.append(run_check(f"zcoeff-rewrite-{i}", zcoeff_rewrite))

    if q > 2:
        def scaled_top():
            u = natural_u(m, q, ctx.alg_top)
            uq1 = u.pow(q - 1)
            acc = u * ctx.gen_top(2 * m - 1, q)
            corr = ctx.gen_top(1, 2) * natural_u(m - 1, q, ctx.alg_top).frobenius_pow(2)
            for j in range(1, 2 * m - 1):
                acc = acc + ctx.gen_top(2 * m - 1 - j, q) * ctx.top_census(j)
                corr = corr + ctx.gen_top(2 * m - 1 - j, q) * rebase(
                    ctx.inv.delta(j), ctx.alg_top
                )
            expect_zero(acc + uq1 * corr, "scaled square")
            return f"{len(uq1)} scale terms"

        out.append(run_check("series-rel-top-scaled", scaled_top))

        for i in range(2, m):
            def scaled_mid(i=i):
                u = natural_u(m, q, ctx.alg_top)
                uq1 = u.pow(q - 1)
                acc = u * ctx.gen_top(2 * m - i, q**i)
                corr = ctx.gen_top(i, 2) * ctx.census(2 * m - 1 - i).frobenius_pow(1)
                corr = rebase(corr, ctx.alg_top)
                for j in range(1, 2 * m - i):
                    acc = acc + ctx.gen_top(2 * m - i - j, q**i) * ctx.top_census(j)
                    corr = corr + ctx.gen_top(2 * m - i - j, q**i) * rebase(
                        ctx.inv.delta(j), ctx.alg_top
                    )
                for k in range(1, i):
                    acc = acc + ctx.gen_top(k, q ** (i - k)) * ctx.top_census(2 * m - i + k)
                    corr = corr + ctx.gen_top(k, q ** (i - k)) * rebase(
                        ctx.inv.delta(2 * m - i + k), ctx.alg_top
                    )
                expect_zero(acc + uq1 * corr, f"scaled square {i}")

            out.append(run_check(f"series-rel-mid-{i}-scaled", scaled_mid))

        def direct_top():
            acc = ctx.inv.xi_poly(2 * m - 1).power2(ctx.field.s - 1)
            for j in range(1, 2 * m - 1):
                half = ctx.inv.xi_poly(2 * m - 1 - j).power2(ctx.field.s - 1)
                e = ctx.series(j)
                _mul_gate(half, e)
                acc = acc + half.mul(e, ctx.term_budget)
            tail = ctx.inv.ud_bar_eval(2 * m - 2).power2(ctx.field.s - 1)
            tail = tail.mul(ctx.inv.u().pow(q // 2 - 1, ctx.term_budget), ctx.term_budget)
            acc = acc + ctx.inv.xi_poly(1).mul(tail, ctx.term_budget)
            expect_zero(acc, "direct form")
            return "verified in the base ring"

        out.append(run_check("series-rel-top-direct", direct_top))

        for i in range(2, m):
            def direct_mid(i=i):
                s = ctx.field.s
                acc = ctx.inv.xi_poly(2 * m - i).power2(i * s - 1)
                for j in range(1, 2 * m - i):
                    half = ctx.inv.xi_poly(2 * m - i - j).power2(i * s - 1)
                    acc = acc + half.mul(ctx.series(j), ctx.term_budget)
                for k in range(1, i):
                    half = ctx.inv.xi_poly(k).power2((i - k) * s - 1)
                    acc = acc + half.mul(ctx.series(2 * m - i + k), ctx.term_budget)
                tail = ctx.inv.ud_bar_eval(2 * m - 1 - i).power2(s - 1)
                tail = tail.mul(ctx.inv.u().pow(q // 2 - 1, ctx.term_budget), ctx.term_budget)
                acc = acc + ctx.inv.xi_poly(i).mul(tail, ctx.term_budget)
                expect_zero(acc, f"direct form {i}")

            out.append(run_check(f"series-rel-mid-{i}-direct", direct_mid))
    else:
        out.append(
            CheckResult(
                "series-rel-displays",
                "skipped",
                0,
                "the display system needs q > 2; low-field variants run in "
                "the dedicated suite",
            )
        )

    # rewrite certificates are valid at every q: the terminal-variable
    # cancellation only uses the chain closure and the rewrite balances
    def cert_top():
        u = natural_u(m, q, ctx.alg_top)
        scale = natural_u(m - 1, q, ctx.alg_top).pow(q - 1).frobenius_pow(1)
        w = ctx.top_census(2 * m - 1) + scale * ctx.top_census(1)
        corr = rebase(ctx.inv.delta(2 * m - 1), ctx.alg_top)
        corr = corr + scale * rebase(ctx.inv.delta(1), ctx.alg_top)
        w = w + u.pow(q - 1) * corr
        square = divide_xi(w, u, ctx.term_budget)
        p = square.sqrt()
        expect(
            p.top_lane() <= 2 * m - 1,
            f"certified remainder reaches lane {p.top_lane()}",
        )
        ctx._cert_top = p  # reused by the direct comparison below
        return f"remainder in {len(p)} terms, top lane {p.top_lane()}"

    out.append(run_check("series-rewrite-top-cert", cert_top))

    def cert_top_direct():
        p = ctx._cert_top
        if p is None:
            raise BudgetExceeded("certificate unavailable")
        usub = ctx.inv.ud_bar_eval(0)
        half = usub.pow(q - 1, ctx.term_budget).power2(ctx.field.s - 1)
        direct = ctx.series(2 * m - 1) + half.mul(ctx.series(1), ctx.term_budget)
        expect(direct.z_free(), "terminal variable survives")
        got = express_in_xi(
            direct, 2 * m - 1, gens=xi_gens(ctx.ring, 2 * m - 1),
            budget=ctx.term_budget,
        )
        expect_eq(rebase(got, ctx.alg_top), rebase(p, ctx.alg_top), "two routes")
        return "certificate matches the subalgebra expression"

    if q > 2:
        out.append(run_check("series-rewrite-top-direct", cert_top_direct))
    else:
        out.append(
            CheckResult(
                "series-rewrite-top-direct",
                "skipped",
                0,
                "the last chain step keeps a square of the terminal variable "
                "at q = 2, so the combination is not terminal-free; the "
                "certificate row above carries the identity",
            )
        )

    for i in range(2, m):
        def cert_mid(i=i):
            u = natural_u(m, q, ctx.alg_top)
            w = ctx.top_census(2 * m - i)
            corr = rebase(ctx.inv.delta(2 * m - i), ctx.alg_top)
            for j in range(1, i + 1):
                p = rebase(ctx.pij_lower[(m - i, m - j)], ctx.alg_top).frobenius_pow(j)
                w = w + p * ctx.top_census(j)
                corr = corr + p * rebase(ctx.inv.delta(j), ctx.alg_top)
            w = w + u.pow(q - 1) * corr
            square = divide_xi(w, u, ctx.term_budget)
            p = square.sqrt()
            expect(
                p.top_lane() <= 2 * m - 1,
                f"certified remainder reaches lane {p.top_lane()}",
            )
            ctx._cert_mid[i] = p
            return f"remainder in {len(p)} terms, top lane {p.top_lane()}"

        out.append(run_check(f"series-rewrite-mid-{i}-cert", cert_mid))

        def cert_mid_direct(i=i):
            p = ctx._cert_mid.get(i)
            if p is None:
                raise BudgetExceeded("certificate unavailable")
            ev = ctx.inv.evaluator()
            direct = ctx.series(2 * m - i)
            for j in range(1, i + 1):
                pj = ev.eval(ctx.pij_lower[(m - i, m - j)], ctx.term_budget)
                half = pj.power2(j * ctx.field.s - 1)
                direct = direct + ctx.series(j).mul(half, ctx.term_budget)
            expect(direct.z_free(), "terminal variable survives")
            got = express_in_xi(
                direct, 2 * m - 1, gens=xi_gens(ctx.ring, 2 * m - 1),
                budget=ctx.term_budget,
            )
            expect_eq(rebase(got, ctx.alg_top), rebase(p, ctx.alg_top), "two routes")

        if q > 2:
            out.append(run_check(f"series-rewrite-mid-{i}-direct", cert_mid_direct))
        else:
            out.append(
                CheckResult(
                    f"series-rewrite-mid-{i}-direct",
                    "skipped",
                    0,
                    "terminal-free combination needs q > 2; the certificate "
                    "row above carries the identity",
                )
            )

    return out


def verify_matrix_equation(ctx: CheckContext) -> list[CheckResult]:
    """The companion form of the relation system for m = 2 and 3."""
    m, q = ctx.m, ctx.q
    out = []
    if m == 1:
        return [CheckResult("companion", "skipped", 0, "companion form starts at m = 2")]
    if q == 2:
        return [
            CheckResult(
                "companion",
                "skipped",
                0,
                "half-power entries need q > 2; the low-field suite carries "
                "the m = 3 variants",
            )
        ]

    alg_small = XiAlg(ctx.field, max(2 * m - 3, 1))

    def determinant():
        mat = m_tilde_matrix(m, q, ctx.pij_lower)
        got = det_xi(mat, alg_small)
        want = rebase(natural_u(m - 1, q, alg_small), alg_small).half_frobenius(1)
        expect_eq(got, want, "companion determinant")
        return f"{len(got)} terms"

    out.append(run_check("companion-determinant", determinant))

    def rows_direct():
        mat = m_tilde_matrix(m, q, ctx.pij_lower)
        ev = ctx.inv.evaluator()
        series_vec = [ctx.series(j) for j in range(2 * m - 1, 1, -1)]
        s = ctx.field.s
        u = ctx.inv.u()
        e1 = ctx.series(1)
        rhs_rows = []
        for r in range(1, m):
            tail = ctx.inv.ud_bar_eval(2 * m - 1 - r).power2(s - 1)
            tail = tail.mul(u.pow(q // 2 - 1, ctx.term_budget), ctx.term_budget)
            row = ctx.inv.xi_poly(2 * m - r).power2(r * s - 1)
            row = row + ctx.inv.xi_poly(2 * m - 1 - r).power2(r * s - 1).mul(
                e1, ctx.term_budget
            )
            row = row + ctx.inv.xi_poly(r).mul(tail, ctx.term_budget)
            rhs_rows.append(row)
        half_prev = ctx.inv.ud_bar_eval(0).pow(q - 1, ctx.term_budget).power2(s - 1)
        for t in range(1, m):
            if t == 1:
                coeff = half_prev
            else:
                pj = ev.eval(ctx.pij_lower[(m - t, m - 1)], ctx.term_budget)
                coeff = pj.power2(s - 1)
            cert = ctx._cert_mid.get(t) if t > 1 else ctx._cert_top
            if cert is None:
                raise BudgetExceeded("rewrite certificate unavailable")
            rhs_rows.append(coeff.mul(e1, ctx.term_budget) + ev.eval(
                rebase(cert, ctx.alg), ctx.term_budget
            ))
        for r, rhs in enumerate(rhs_rows):
            acc = Poly.zero(ctx.ring)
            for c, entry in enumerate(mat[r]):
                if entry.is_zero():
                    continue
                coeff = ev.eval(rebase(entry, ctx.alg), ctx.term_budget)
                acc = acc + coeff.mul(series_vec[c], ctx.term_budget)
            expect_eq(acc, rhs, f"row {r + 1}")
        return f"all {2 * m - 2} rows"

    out.append(run_check("companion-rows", rows_direct))
    return out


# -- the low-field m = 3 variants ------------------------------------------


def verify_q2_m3(ctx: CheckContext) -> list[CheckResult]:
    """Exact low-field identities replacing the q > 2 display system."""
    m, q = ctx.m, ctx.q
    if (m, q) != (3, 2):
        return [
            CheckResult(
                "low-field-suite", "skipped", 0, "applies to m = 3 over GF(2) only"
            )
        ]
    out = []
    g = ctx.gen

    def mono(*pairs):
        acc = XiPoly.one(ctx.alg)
        for j, e in pairs:
            acc = acc * g(j, e)
        return acc

    lists = {
        1: [
            mono((1, 1), (2, 1), (1, 8)),
            mono((1, 1), (3, 1), (2, 4)),
            mono((1, 1), (4, 1), (1, 4)),
            mono((2, 1), (3, 1), (3, 2)),
            mono((2, 1), (4, 1), (2, 2)),
            mono((3, 1), (4, 1), (1, 2)),
        ],
        2: [
            mono((1, 1), (2, 1), (2, 8)),
            mono((1, 1), (3, 1), (3, 4)),
            mono((1, 1), (5, 1), (1, 4)),
            mono((2, 1), (3, 1), (4, 2)),
            mono((2, 1), (5, 1), (2, 2)),
            mono((3, 1), (5, 1), (1, 2)),
            mono((1, 4), (3, 4)),
        ],
        3: [
            mono((1, 1), (2, 1), (1, 16)),
            mono((1, 1), (4, 1), (3, 4)),
            mono((1, 1), (5, 1), (2, 4)),
            mono((2, 1), (4, 1), (4, 2)),
            mono((2, 1), (5, 1), (3, 2)),
            mono((4, 1), (5, 1), (1, 2)),
        ],
        4: [
            mono((1, 1), (3, 1), (1, 16)),
            mono((1, 1), (4, 1), (2, 8)),
            mono((1, 1), (5, 1), (1, 8)),
            mono((3, 1), (4, 1), (4, 2)),
            mono((3, 1), (5, 1), (3, 2)),
            mono((4, 1), (5, 1), (2, 2)),
            mono((1, 20)),
        ],
        5: [
            mono((2, 1), (3, 1), (1, 16)),
            mono((2, 1), (4, 1), (2, 8)),
            mono((2, 1), (5, 1), (1, 8)),
            mono((3, 1), (4, 1), (3, 4)),
            mono((3, 1), (5, 1), (2, 4)),
            mono((4, 1), (5, 1), (1, 4)),
            mono((2, 2), (3, 2), (4, 2)),
        ],
    }

    for i in range(1, 6):
        def chain_list(i=i):
            want = XiPoly.zero(ctx.alg)
            for t in lists[i]:
                want = want + t
            expect_eq(ctx.inv.delta(i), want, f"entry {i}")
            return f"{len(want)} terms"

        out.append(run_check(f"low-field-correction-{i}", chain_list))

    def delta(i):
        return ctx.inv.delta(i)

    def combination_a():
        # of the two candidate final summands only one fits the grading,
        # so the decision is forced before any expansion
        row_deg = (delta(1) * g(4, 2)).wdeg
        rejected = (delta(4) * g(2, 2)).wdeg
        accepted = (delta(4) * g(1, 2)).wdeg
        expect(rejected != row_deg, "heavier candidate unexpectedly fits the grading")
        expect(accepted == row_deg, "pattern candidate off the row grading")
        lhs = delta(1) * g(4, 2) + delta(2) * g(3, 2) + delta(3) * g(2, 2)
        lhs = lhs + delta(4) * g(1, 2)
        rhs = g(1) * natural_u(3, q, ctx.alg)
        rhs = rhs + g(1, 2) * natural_u(2, q, ctx.alg).frobenius_pow(2)
        rhs = rhs + g(1, 22) + mono((1, 4), (3, 6))
        expect_eq(lhs, rhs, "first combination")
        return (
            f"heavier final-summand candidate ruled out by degree "
            f"({rejected} vs {row_deg}); pattern candidate verified exactly"
        )

    out.append(run_check("low-field-combination-a", combination_a))

    def combination_b():
        lhs = delta(1) * g(3, 4) + delta(2) * g(2, 4) + delta(3) * g(1, 4)
        lhs = lhs + delta(5) * g(1, 2)
        rhs = g(2) * natural_u(3, q, ctx.alg)
        rhs = rhs + g(2, 2) * ctx.census(3).frobenius_pow(1)
        rhs = rhs + mono((1, 4), (2, 4), (3, 4)) + mono((1, 2), (2, 2), (3, 2), (4, 2))
        expect_eq(lhs, rhs, "second combination")

    out.append(run_check("low-field-combination-b", combination_b))

    def odd_relation():
        acc = ctx.inv.xi_poly(5)
        for j in range(1, 5):
            acc = acc + ctx.inv.xi_poly(5 - j).mul(ctx.series(j), ctx.term_budget)
        u2 = ctx.inv.ud_bar_eval(0)
        acc = acc + ctx.inv.xi_poly(1).mul(u2.square(), ctx.term_budget)
        acc = acc + ctx.inv.xi_poly(1).pow(11)
        acc = acc + ctx.inv.xi_poly(1).square().mul(ctx.inv.xi_poly(3).pow(3), ctx.term_budget)
        expect_zero(acc, "odd rewrite")
        return "verified in the base ring"

    out.append(run_check("low-field-odd-relation", odd_relation))

    def even_relation():
        # one candidate correction repeats the odd row's summand and sits
        # one degree short of this row; the candidate derived from the
        # second combination is the lowered-chain term, and only it fits
        row_deg = ctx.inv.xi_poly(4).square().degree
        odd_term = ctx.inv.xi_poly(1).mul(ctx.inv.ud_bar_eval(0).square(), ctx.term_budget)
        fitted = ctx.inv.xi_poly(2).mul(ctx.inv.ud_bar_eval(3), ctx.term_budget)
        expect(odd_term.degree != row_deg, "repeated candidate unexpectedly fits")
        expect(fitted.degree == row_deg, "lowered-chain candidate off the grading")
        # the terminal chain element keeps a square of the terminal
        # variable here; fold it through the degree-two generator to get
        # the terminal-linear representative the rewrite uses
        e_top = ctx.series(5)
        w = Poly.from_terms(ctx.ring, e_top.z_coefficients().get(2, {}))
        e_top = e_top + w.mul(xi(ctx.ring, 0), ctx.term_budget)
        acc = ctx.inv.xi_poly(4).square()
        acc = acc + ctx.inv.xi_poly(3).square().mul(ctx.series(1), ctx.term_budget)
        acc = acc + ctx.inv.xi_poly(2).square().mul(ctx.series(2), ctx.term_budget)
        acc = acc + ctx.inv.xi_poly(1).square().mul(ctx.series(3), ctx.term_budget)
        acc = acc + ctx.inv.xi_poly(1).mul(e_top, ctx.term_budget)
        acc = acc + fitted
        sq = ctx.inv.xi_poly(1).square().mul(ctx.inv.xi_poly(2).square(), ctx.term_budget)
        acc = acc + sq.mul(ctx.inv.xi_poly(3).square(), ctx.term_budget)
        prod = ctx.inv.xi_poly(1).mul(ctx.inv.xi_poly(2), ctx.term_budget)
        prod = prod.mul(ctx.inv.xi_poly(3), ctx.term_budget)
        acc = acc + prod.mul(ctx.inv.xi_poly(4), ctx.term_budget)
        expect_zero(acc, "even rewrite")
        return (
            f"repeated candidate ruled out by degree ({odd_term.degree} vs "
            f"{row_deg}); lowered-chain correction and terminal-linear "
            f"reduction verified exactly"
        )

    out.append(run_check("low-field-even-relation", even_relation))
    return out


# -- group checks ----------------------------------------------------------


def _transpose(g):
    return tuple(zip(*g))


def verify_group(ctx: CheckContext) -> list[CheckResult]:
    m, q = ctx.m, ctx.q
    ring = ctx.ring
    out = []

    def form_preserved():
        b = bilinear_matrix(m)
        for g in ctx.gens:
            got = mat_mul(mat_mul(_transpose(g), b, ctx.field), g, ctx.field)
            expect(got == b, "bilinear form moved")
        return f"{len(ctx.gens)} generators"

    out.append(run_check("generator-form-preserved", form_preserved))

    def quadric_fixed():
        xi0 = ctx.inv.xi_poly(0)
        for g in ctx.gens:
            expect_eq(apply_to_poly(xi0, g, ctx.term_budget), xi0, "quadric moved")

    out.append(run_check("generator-fixes-quadric", quadric_fixed))

    def radical_fixed():
        zv = ring.z_var
        unit = tuple(1 if v == zv else 0 for v in range(ring.nvars))
        for g in ctx.gens:
            expect(mat_vec(g, unit, ctx.field) == unit, "radical vector moved")

    out.append(run_check("generator-fixes-radical", radical_fixed))

    def terminal_shift():
        # the terminal variable moves only by a linear form in the support
        zp = Poly.variable(ring, ring.z_var)
        for g in ctx.gens:
            shift = apply_to_poly(zp, g, ctx.term_budget) + zp
            expect(shift.z_free(), "shift involves the terminal variable")

    out.append(run_check("generator-terminal-shift", terminal_shift))

    def tower_fixed():
        for j in range(1, 2 * m):
            xj = ctx.inv.xi_poly(j)
            for g in ctx.gens:
                expect_eq(apply_to_poly(xj, g, ctx.term_budget), xj, f"generator {j} moved")
        return f"lanes 1..{2 * m - 1}"

    out.append(run_check("generator-fixes-tower", tower_fixed))

    def equivariance():
        f = ctx.inv.xi_poly(0).mul(ctx.inv.xi_poly(1), ctx.term_budget)
        for g in ctx.gens[:3]:
            for k in (1, q):
                lhs = steenrod_k(apply_to_poly(f, g, ctx.term_budget), k)
                rhs = apply_to_poly(steenrod_k(f, k), g, ctx.term_budget)
                expect_eq(lhs, rhs, f"degree {k}")
        return "operator commutes with the action"

    out.append(run_check("operator-action-equivariance", equivariance))

    def order():
        expected = ctx.expected_order
        if expected > ctx.group_cap:
            raise BudgetExceeded(
                f"expected order {expected} over the enumeration cap {ctx.group_cap}"
            )
        got = group_order_bfs(ctx.gens, ctx.field, cap=2 * expected)
        expect(got == expected, f"enumerated {got}, formula gives {expected}")
        return f"order {expected}"

    out.append(run_check("order-enumeration", order))
    return out


# -- parameter system ------------------------------------------------------


def verify_hsop(ctx: CheckContext) -> list[CheckResult]:
    out = []
    for k in (1, 2):
        def origin_only(k=k):
            report = ctx.variety_report(k)
            expect(
                report["origin_only"],
                f"{report['nonzero_common_zeros']} common zeros away from the origin",
            )
            return f"{report['points']} points over the degree-{k} extension"

        out.append(run_check(f"parameter-variety-k{k}", origin_only))

    def coverage():
        report = ctx.variety_report(1)
        if "covered" not in report:
            raise BudgetExceeded(
                "translate coverage is enumerated only for the smallest groups"
            )
        expect(
            report["covered"],
            f"{report['uncovered_variety_points']} variety points outside "
            "every translate",
        )
        return f"group order {report['group_order']}, full cover"

    out.append(run_check("translate-coverage", coverage))
    return out


# -- dimension series ------------------------------------------------------


def _series_div(coeffs: list[int], d: int) -> None:
    for i in range(d, len(coeffs)):
        coeffs[i] += coeffs[i - d]


def _series_mul_sparse(coeffs: list[int], offsets: list[int]) -> list[int]:
    cap = len(coeffs) - 1
    out = [0] * (cap + 1)
    for off in offsets:
        if off > cap:
            continue
        for i in range(0, cap + 1 - off):
            out[i + off] += coeffs[i]
    return out


def module_series(m: int, q: int, cap: int) -> list[int]:
    """Coefficients of the free-module dimension series up to degree cap."""
    coeffs = [0] * (cap + 1)
    coeffs[0] = 1
    degs = [2] + [q**i + 1 for i in range(1, m + 1)]
    degs += [q ** (2 * m - i) * (q**i - 1) // 2 for i in range(1, m + 1)]
    for d in degs:
        _series_div(coeffs, d)
    for i in range(1, m):
        step = q ** (2 * m - i) + 1
        reps = q**i // 2
        coeffs = _series_mul_sparse(coeffs, [a * step for a in range(reps)])
    return coeffs


def presentation_series(m: int, q: int, cap: int) -> list[int]:
    """The same series from the generators-and-relations description."""
    coeffs = [0] * (cap + 1)
    coeffs[0] = 1
    rel_degs = [(q ** (2 * m - i) + 1) * q**i // 2 for i in range(1, m)]
    rel_degs += [q**i * (q ** (2 * m - i) - 1) // 2 for i in range(1, m)]
    for r in rel_degs:
        nxt = coeffs[:]
        for i in range(r, cap + 1):
            nxt[i] -= coeffs[i - r]
        coeffs = nxt
    gen_degs = [2] + [q**i + 1 for i in range(1, 2 * m)]
    gen_degs += [q ** (2 * m - i) * (q**i - 1) // 2 for i in range(1, 2 * m)]
    for d in gen_degs:
        _series_div(coeffs, d)
    return coeffs


def _dimension_cap(ctx: CheckContext) -> int:
    cap = 12 if ctx.degree_cap is None else ctx.degree_cap
    flop_gate = 65_000_000_000 if ctx.q == 2 else 20_000_000_000
    ngens = max(1, len(ctx.gens))
    while cap > 0:
        nb = len(monomial_basis(ctx.ring, cap))
        if nb**3 * ngens <= flop_gate:
            break
        cap -= 1
    return cap


def hilbert_check(ctx: CheckContext) -> list[CheckResult]:
    m, q = ctx.m, ctx.q
    out = []

    def dimensions():
        cap = _dimension_cap(ctx)
        want = module_series(m, q, cap)
        got = []
        for d in range(cap + 1):
            got.append(fixed_space_dim(ctx.ring, d, ctx.gens))
        expect(
            got == want[: cap + 1],
            f"dimensions {got} differ from the series {want[: cap + 1]}",
        )
        requested = 12 if ctx.degree_cap is None else ctx.degree_cap
        note = "" if cap == requested else f" (cap lowered from {requested})"
        return f"degrees 0..{cap} match{note}: {got}"

    out.append(run_check("dimension-series", dimensions))

    def presentations_agree():
        top_rel = max(
            [(q ** (2 * m - i) + 1) * q**i // 2 for i in range(1, m)], default=8
        )
        cap = top_rel + 40
        expect(
            module_series(m, q, cap) == presentation_series(m, q, cap),
            "the two series descriptions disagree",
        )
        return f"formal agreement to degree {cap}"

    out.append(run_check("series-presentations-agree", presentations_agree))

    if m == 1:
        def degree_product():
            prod = 2 * (q + 1) * (q * (q - 1) // 2)
            expect(
                prod == ctx.expected_order,
                f"parameter degrees multiply to {prod}, group order "
                f"{ctx.expected_order}",
            )
            return f"product {prod}"

        out.append(run_check("series-degree-product", degree_product))

    return out


def rank_formula_check(ctx: CheckContext) -> list[CheckResult]:
    m, q = ctx.m, ctx.q
    out = []

    def formula():
        num = Fraction(2)
        for i in range(1, m + 1):
            num *= q**i + 1
        for j in range(1, m + 1):
            num *= Fraction((q**j - 1) * q ** (2 * m - j), 2)
        num /= Fraction(ctx.expected_order)
        want = Fraction(1)
        for i in range(1, m):
            want *= Fraction(q**i, 2)
        expect(num == want, f"formula gives {num}, product form {want}")
        return f"module rank {want}"

    out.append(run_check("module-rank-formula", formula))

    def basis_count():
        caps = [(2 * m - i, q**i // 2 - 1) for i in range(1, m)]
        count = 1
        for _, c in caps:
            count *= c + 1
        want = 1
        for i in range(1, m):
            want *= q**i // 2
        expect(count == want, f"{count} monomial factors, rank {want}")
        if (m, q) == (2, 4):
            expect(caps == [(3, 1)], "factor support moved")
            return "basis is the unit and the third generator"
        if (m, q) == (3, 2):
            expect([c for c in caps if c[1] > 0] == [(4, 1)], "factor support moved")
            return "hypersurface shape: the unit and the fourth generator"
        return f"{count} monomial factors"

    out.append(run_check("module-basis-count", basis_count))
    return out


# -- aggregate entry points ------------------------------------------------


def verify_relations(ctx: CheckContext) -> list[CheckResult]:
    out = []
    out += verify_symplectic_rows(ctx)
    out += verify_del_rel(ctx)
    out += verify_main_relations(ctx)
    out += verify_matrix_equation(ctx)
    return out


def verify_lemma_suite(ctx: CheckContext) -> list[CheckResult]:
    """The constructive-lemma bundle: operator profiles, tower facts,
    census identities and the correction chain."""
    out = []
    out += verify_steenrod(ctx)
    out += verify_dickson(ctx)
    out += verify_natmon(ctx)
    out += verify_delta(ctx)
    return out
