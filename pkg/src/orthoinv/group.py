"""The finite orthogonal group acting on the paired ring with terminal
variable: the alternating form, symplectic transvections, their unique
lifts fixing the quadratic form, breadth-first enumeration at small sizes,
fixed-space dimensions, and point checks over small extensions.

Group elements are square matrices over the base field acting on variables
by substitution (row v is the image of variable v), so composition is the
ordinary matrix product.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

from .errors import BudgetExceeded, CapExceeded
from .gf import Field, embed_table
from .ring import LANE_BITS, LANE_MASK, Poly, RingSpec
from . import termops

Matrix = tuple[tuple[int, ...], ...]


class FormData:
    """The alternating form and the quadratic form for one (m, q)."""

    __slots__ = ("m", "q", "ring", "B", "xi0")

    def __init__(self, ring: RingSpec):
        if ring.m is None:
            raise ValueError("paired ring required")
        from .invariants import xi

        self.m = ring.m
        self.q = ring.field.q
        self.ring = ring
        self.B = bilinear_matrix(ring.m)
        self.xi0 = xi(ring, 0)


def bilinear_matrix(m: int) -> Matrix:
    """Gram matrix of the alternating form in the variable basis.

    Pairs the i-th coordinate of the y-block with the i-th of the x-block
    (antidiagonal blocks); the middle row and column vanish, so the middle
    basis vector spans the radical.
    """
    n = 2 * m + 1
    return tuple(
        tuple(1 if a + b == 2 * m and a != m else 0 for b in range(n))
        for a in range(n)
    )


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, field: Field) -> Matrix:
    mul = field.mul_table
    n = len(a)
    bt = tuple(zip(*b))
    out = []
    for ra in a:
        row = []
        for cb in bt:
            acc = 0
            for x, y in zip(ra, cb):
                if x and y:
                    acc ^= mul[x][y]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a: Matrix, v: tuple[int, ...], field: Field) -> tuple[int, ...]:
    mul = field.mul_table
    return tuple(
        _xor_sum(mul[x][y] for x, y in zip(row, v) if x and y) for row in a
    )


def _xor_sum(it) -> int:
    acc = 0
    for v in it:
        acc ^= v
    return acc


def apply_to_poly(f: Poly, g: Matrix, budget: int | None = None) -> Poly:
    """Right action: the image of f under the substitution g."""
    return f.substitute_linear([list(r) for r in g], budget)


def symplectic_transvection(ring: RingSpec, v: tuple[int, ...], alpha: int) -> Matrix:
    """Transvection along v: u maps to u + alpha B(u,v) v.

    v may be given in doubled coordinates (length 2m, middle omitted) or in
    full coordinates with zero middle entry; the middle basis vector is
    fixed either way since it pairs trivially with everything.
    """
    m = ring.m
    n = 2 * m + 1
    if len(v) == n - 1:
        v = tuple(v[:m]) + (0,) + tuple(v[m:])
    if len(v) != n or v[m] != 0:
        raise ValueError("direction must avoid the radical coordinate")
    if not any(v):
        raise ValueError("zero direction")
    field = ring.field
    mul = field.mul_table
    B = bilinear_matrix(m)
    bv = mat_vec(B, v, field)  # linear form B(., v) in coordinates
    rows = []
    for i in range(n):
        row = list(1 if j == i else 0 for j in range(n))
        if v[i] and alpha:
            av = mul[alpha][v[i]]
            for j in range(n):
                if bv[j]:
                    row[j] ^= mul[av][bv[j]]
        rows.append(tuple(row))
    return tuple(rows)


def orthogonal_lift(ring: RingSpec, g: Matrix) -> Matrix:
    """Extend a symplectic element to fix the quadratic form.

    The middle variable picks up the linear form whose square is the defect
    of the doubled part; the result is checked to fix the quadratic form
    exactly.
    """
    from .invariants import xi, xibar_poly

    m = ring.m
    n = 2 * m + 1
    xb = xibar_poly(ring)
    moved = apply_to_poly(xb, g)
    ell = (xb + moved).sqrt()
    row = [0] * n
    row[m] = 1
    linear = {1 << (LANE_BITS * ring.lane(j)): j for j in range(n)}
    for e, c in ell.terms.items():
        var = linear.get(e)
        if var is None:
            raise ValueError("lift defect is not linear")
        row[var] ^= c
    lifted = tuple(
        tuple(row) if i == m else g[i] for i in range(n)
    )
    if apply_to_poly(xi(ring, 0), lifted) != xi(ring, 0):
        raise AssertionError("lift fails to fix the quadratic form")
    return lifted


def _direction_family(ring: RingSpec) -> list[tuple[int, ...]]:
    """Transvection directions: single basis vectors, same-block pairs, and
    cross pairs including the matched one."""
    m = ring.m
    n = 2 * m + 1

    def unit(idx: int) -> list[int]:
        v = [0] * n
        v[idx] = 1
        return v

    lam = [unit(i) for i in range(m)]  # y-block coordinates
    mu = [unit(2 * m - i) for i in range(m)]  # x-block, matched order
    out = [tuple(v) for v in lam + mu]
    for i, j in combinations(range(m), 2):
        out.append(tuple(a ^ b for a, b in zip(lam[i], lam[j])))
        out.append(tuple(a ^ b for a, b in zip(mu[i], mu[j])))
    for i in range(m):
        for j in range(m):
            out.append(tuple(a ^ b for a, b in zip(lam[i], mu[j])))
    return out


def generators(ring: RingSpec) -> list[Matrix]:
    """Lifted transvections over the direction family and a 2-basis of the
    field's scalars.  Every output fixes the quadratic form by construction."""
    field = ring.field
    alphas = [1 << b for b in range(field.s)]
    gens = []
    for v in _direction_family(ring):
        for a in alphas:
            gens.append(orthogonal_lift(ring, symplectic_transvection(ring, v, a)))
    return gens


def group_order_bfs(gens: list[Matrix], field: Field, cap: int = 1_000_000) -> int:
    """Size of the generated group by breadth-first closure under cap."""
    if not gens:
        return 1
    n = len(gens[0])
    ident = mat_identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = mat_mul(g, h, field)
                if gh not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(f"group closure exceeded {cap} elements")
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return len(seen)


def group_elements_bfs(gens: list[Matrix], field: Field, cap: int = 1_000_000) -> list[Matrix]:
    """The full element list of a small group; same traversal as the order."""
    if not gens:
        return [mat_identity(1)]
    n = len(gens[0])
    ident = mat_identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = mat_mul(g, h, field)
                if gh not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(f"group closure exceeded {cap} elements")
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return list(seen)


# -- fixed spaces ----------------------------------------------------------


def monomial_basis(ring: RingSpec, d: int) -> list[int]:
    """Packed exponent vectors of total degree d, a fixed enumeration."""
    n = ring.nvars
    out = []
    for cuts in combinations(range(d + n - 1), n - 1):
        exps = []
        prev = -1
        for c in cuts:
            exps.append(c - prev - 1)
            prev = c
        exps.append(d + n - 2 - prev)
        out.append(ring.pack(exps))
    return out


def _row_reduce(a: np.ndarray, field: Field) -> int:
    """In-place row echelon over the field; returns the rank."""
    two = field.q == 2
    mul = None if two else np.asarray(field.mul_table, dtype=np.uint8)
    inv = field.inv_table
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        if a[r, c] != 1:
            a[r] = mul[inv[a[r, c]], a[r]]
        hits = np.nonzero(a[:, c])[0]
        hits = hits[hits != r]
        if len(hits):
            if two:
                a[hits] ^= a[r][None, :]
            else:
                a[hits] ^= mul[a[hits, c][:, None], a[r][None, :]]
        r += 1
        if r == rows:
            break
    return r


def action_matrix(ring: RingSpec, g: Matrix, basis: list[int], index: dict[int, int]) -> np.ndarray:
    """Coefficient-transport matrix of the substitution on a degree slice.

    Column e holds the expansion of the image of basis monomial e, so the
    coefficient vector of f maps to matrix times vector.
    """
    field = ring.field
    mul = field.mul_table
    lb = LANE_BITS
    rows = []
    for v in range(ring.nvars):
        row = {}
        for j, c in enumerate(g[v]):
            if c:
                row[1 << (lb * ring.lane(j))] = c
        rows.append(row)
    cache: dict[tuple[int, int], dict] = {}

    def var_power(v: int, a: int) -> dict:
        got = cache.get((v, a))
        if got is None:
            got = termops.pow_terms(rows[v], a, mul, field.sqr_table)
            cache[(v, a)] = got
        return got

    out = np.zeros((len(basis), len(basis)), dtype=np.uint8)
    for bi, e in enumerate(basis):
        acc = {0: 1}
        for v in range(ring.nvars):
            a = (e >> (lb * ring.lane(v))) & LANE_MASK
            if a:
                acc = termops.mul_terms(acc, var_power(v, a), mul)
        for k, c in acc.items():
            out[index[k], bi] = c
    return out


def fixed_space_dim(
    ring: RingSpec, d: int, gens: list[Matrix], budget: int = 200_000
) -> int:
    """Dimension of the degree-d polynomials fixed by every generator.

    Null space of the stacked (action - identity) blocks, by dense
    elimination over the field.
    """
    basis = monomial_basis(ring, d)
    nb = len(basis)
    if nb > budget:
        raise BudgetExceeded(f"degree slice has {nb} monomials (budget {budget})")
    if nb * nb * max(1, len(gens)) > 4 * 10**8:
        raise BudgetExceeded("stacked action matrix too large")
    index = {e: i for i, e in enumerate(basis)}
    blocks = []
    ident = np.eye(nb, dtype=np.uint8)
    for g in gens:
        blocks.append(action_matrix(ring, g, basis, index) ^ ident)
    stacked = np.vstack(blocks) if blocks else np.zeros((0, nb), dtype=np.uint8)
    rank = _row_reduce(stacked, ring.field)
    return nb - rank


# -- point checks ----------------------------------------------------------


def variety_point_check(
    inv_set,
    k: int = 1,
    point_budget: int = 300_000,
    group_cap: int = 1_000_000,
) -> dict:
    """Point checks behind the parameter-system theorem.

    (a) the only common zero of the quadratic form, the first m bilinear
    generators, and the first m series members over GF(q^k) is the origin;
    (b) at k = 1 for enumerable groups, every zero of the bilinear
    generators lies in some group translate of the coordinate subspace cut
    by the y-block.

    Returns a report dict; raises BudgetExceeded when the enumeration or
    the field extension is out of range.
    """
    ring = inv_set.ring
    m, q = inv_set.m, inv_set.q
    field = ring.field
    if k * field.s > 6:
        raise BudgetExceeded(f"extension degree {k} over GF({q}) exceeds the field budget")
    big = Field(k * field.s) if k > 1 else field
    emb = embed_table(field, big) if k > 1 else None
    npts = big.q ** ring.nvars
    if npts > point_budget:
        raise BudgetExceeded(f"{npts} points exceed the budget {point_budget}")

    system = [inv_set.xi_poly(0)]
    system += [inv_set.xi_poly(i) for i in range(1, m + 1)]
    system += [inv_set.e(i) for i in range(1, m + 1)]
    nonzero_common = 0
    checked = 0
    elements = big.elements
    for point in product(elements, repeat=ring.nvars):
        if not any(point):
            continue
        checked += 1
        if all(f.evaluate(point, big, emb) == 0 for f in system):
            nonzero_common += 1
    report = {
        "m": m,
        "q": q,
        "k": k,
        "points": checked + 1,
        "nonzero_common_zeros": nonzero_common,
        "origin_only": nonzero_common == 0,
    }

    # translate coverage only over the base field: the enumerated group is
    # the rational one, so extension points would test a different claim
    if k == 1 and (m == 1 or (m == 2 and q == 2)):
        gens = generators(ring)
        elems = group_elements_bfs(gens, field, group_cap)
        if emb is not None:
            elems = [tuple(tuple(emb[c] for c in row) for row in g) for g in elems]
        ylanes = {ring.y_var(i) for i in range(1, m + 1)}
        free = [v for v in range(ring.nvars) if v not in ylanes]
        covered = set()
        for g in elems:
            for vals in product(elements, repeat=len(free)):
                u = [0] * ring.nvars
                for v, a in zip(free, vals):
                    u[v] = a
                covered.add(mat_vec(g, tuple(u), big))
        bilinear = [inv_set.xi_poly(i) for i in range(1, m + 1)]
        missed = 0
        for point in product(elements, repeat=ring.nvars):
            if all(f.evaluate(point, big, emb) == 0 for f in bilinear):
                if tuple(point) not in covered:
                    missed += 1
        report["group_order"] = len(elems)
        report["uncovered_variety_points"] = missed
        report["covered"] = missed == 0
    return report
