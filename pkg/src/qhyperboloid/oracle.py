"""Independent classical implementation: polynomial functions on the
hyperboloid 2uw + v^2 + 2wu = k, the infinitesimal rotations U, V, W, and
the classical tangent module.

This module is the q -> 1 comparison oracle.  It deliberately shares no
code with the rest of the engine: its own commutative-polynomial type,
its own reduction, its own little Gaussian elimination over Fraction.
Agreement with the q-engine at q = 1 is therefore evidence, not a
tautology.

Conventions pinned by requiring the quadric 2uw + vv + 2wu and the
identity 2uW + vV + 2wU = 0 to hold verbatim: bracket table
[v,u] = 2u, [v,w] = -2w, [u,w] = v.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

# monomial = (a, b, c) meaning u^a v^b w^c; polynomial = {monomial: Fraction}

U, V, W = "u", "v", "w"
_VARS = (U, V, W)


def poly(data=None) -> dict:
    out = {}
    if data:
        for m, c in dict(data).items():
            c = Fraction(c)
            if c:
                out[m] = c
    return out


def var(x: str) -> dict:
    i = _VARS.index(x)
    m = [0, 0, 0]
    m[i] = 1
    return {tuple(m): Fraction(1)}


def const(c) -> dict:
    c = Fraction(c)
    return {(0, 0, 0): c} if c else {}


def padd(p: dict, q: dict) -> dict:
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, Fraction(0)) + c
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return out


def pscale(p: dict, c) -> dict:
    c = Fraction(c)
    if not c:
        return {}
    return {m: v * c for m, v in p.items()}


def pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            s = out.get(m, Fraction(0)) + c1 * c2
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return out


def degree(p: dict) -> int:
    return max((sum(m) for m in p), default=-1)


def classical_normal_form(p: dict, k) -> dict:
    """Canonical representative modulo (4uw + v^2 - k): rewrite uw -> (k - v^2)/4.

    Idempotent; the result contains no monomial with both u and w.
    """
    k = Fraction(k)
    work = dict(p)
    out: dict = {}
    while work:
        m, c = work.popitem()
        a, b, d = m
        if a and d:
            rest = (a - 1, b, d - 1)
            for mm, cc in ((rest, c * k / 4), ((rest[0], rest[1] + 2, rest[2]), -c / 4)):
                s = work.get(mm, Fraction(0)) + cc
                if s:
                    work[mm] = s
                elif mm in work:
                    del work[mm]
        else:
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return out


def nf_monomials(n: int) -> list:
    """Normal-form monomials of degree n: u^a v^b and v^b w^c, sorted."""
    out = set()
    for a in range(n + 1):
        out.add((a, n - a, 0))
        out.add((0, n - a, a))
    return sorted(out)


def classical_graded_dimension(n: int) -> int:
    return len(nf_monomials(n))


class Derivation:
    """A derivation of the polynomial ring, given by the images of u, v, w."""

    def __init__(self, images: dict):
        self.images = {x: poly(images[x]) for x in _VARS}

    def __call__(self, p: dict) -> dict:
        out: dict = {}
        for m, c in p.items():
            for i, x in enumerate(_VARS):
                e = m[i]
                if e:
                    lowered = list(m)
                    lowered[i] -= 1
                    term = pscale(pmul({tuple(lowered): Fraction(1)}, self.images[x]), c * e)
                    out = padd(out, term)
        return out


def classical_fields() -> dict:
    """The infinitesimal rotations as derivations: U = ad u, V = ad v, W = ad w.

    Bracket table: [v,u] = 2u, [v,w] = -2w, [u,w] = v.
    """
    two_u = pscale(var(U), 2)
    two_w = pscale(var(W), 2)
    return {
        U: Derivation({U: {}, V: pscale(two_u, -1), W: var(V)}),
        V: Derivation({U: two_u, V: {}, W: pscale(two_w, -1)}),
        W: Derivation({U: pscale(var(V), -1), V: two_w, W: {}}),
    }


def bracket_table() -> dict:
    """[x, y] for all nine ordered pairs, as linear polynomials."""
    fields = classical_fields()
    return {(x, y): fields[x](var(y)) for x in _VARS for y in _VARS}


def adjoint_matrix(x: str) -> list:
    """Matrix of ad x on the ordered basis (u, v, w)."""
    f = classical_fields()[x]
    cols = []
    for y in _VARS:
        img = f(var(y))
        cols.append([img.get(tuple(1 if i == j else 0 for i in range(3)), Fraction(0)) for j in range(3)])
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def tangent_identity_defect(p: dict) -> dict:
    """(2uW + vV + 2wU)(p); identically zero as a raw polynomial."""
    f = classical_fields()
    out = pmul(pscale(var(U), 2), f[W](p))
    out = padd(out, pmul(var(V), f[V](p)))
    out = padd(out, pmul(pscale(var(W), 2), f[U](p)))
    return out


def casimir() -> dict:
    return poly({(1, 0, 1): 4, (0, 2, 0): 1})


# --- little dense Gaussian elimination over Fraction -----------------------


def _row_reduce(rows: list) -> int:
    """In-place forward elimination; returns the rank."""
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        if inv != 1:
            rows[rank] = prow = [x * inv for x in prow]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], prow)]
        rank += 1
    return rank


def _solve_in_span(basis: list, target: list):
    """Coefficients expressing target in the span of basis vectors, or None."""
    n = len(target)
    rows = []
    for j in range(n):
        rows.append([b[j] for b in basis] + [target[j]])
    m = len(basis)
    work = [list(r) for r in rows]
    rank_a = _row_reduce([r[:m] for r in rows])
    rank_ab = _row_reduce(work)
    if rank_ab > rank_a:
        return None
    # re-run keeping the augmented column to read off the solution
    work = [list(r) for r in rows]
    _row_reduce(work)
    sol = [Fraction(0)] * m
    for r in work:
        piv = next((i for i, x in enumerate(r[:m]) if x), None)
        if piv is not None:
            sol[piv] = r[m] - sum(r[i] * sol[i] for i in range(piv + 1, m))
    return sol


# --- tangent module --------------------------------------------------------


def classical_tangent_dimension(n: int, k=2) -> int:
    """Degree-n dimension of T(H) = M / M1 with generators U', V', W' in degree 0.

    M is the free module over the degree-filtered function algebra, M1 the
    submodule generated by 2uW' + vV' + 2wU'.  Computed by exact rank of
    the filtered spans, then differenced.
    """

    def filtered_dim(top: int) -> int:
        if top < 0:
            return 0
        coords = {}
        for d in range(top + 1):
            for m in nf_monomials(d):
                for g in range(3):
                    coords.setdefault((d, m, g), len(coords))
        rows = []
        for d in range(top):
            for m in nf_monomials(d):
                row = [Fraction(0)] * len(coords)
                # m * (2u W' + v V' + 2w U'): generator slots 0,1,2 = U',V',W'
                for slot, (coef, letter) in ((2, (2, U)), (1, (1, V)), (0, (2, W))):
                    prod = classical_normal_form(pmul({m: Fraction(1)}, pscale(var(letter), coef)), k)
                    for mm, cc in prod.items():
                        row[coords[(sum(mm), mm, slot)]] += cc
                rows.append(row)
        if not rows:
            return 3 * sum(classical_graded_dimension(d) for d in range(top + 1))
        rank = _row_reduce(rows)
        return 3 * sum(classical_graded_dimension(d) for d in range(top + 1)) - rank

    return filtered_dim(n) - filtered_dim(n - 1)


def vector_field_apply(x: str, p: dict, k) -> dict:
    """Apply the rotation field of x to a function and reduce to normal form."""
    return classical_normal_form(classical_fields()[x](p), k)


def harmonic_basis(n: int, k) -> list:
    """Basis of the degree-n harmonic component of Fun(H): the W-orbit of u^n."""
    f = classical_fields()
    vecs = [classical_normal_form({(n, 0, 0): Fraction(1)}, k)]
    for _ in range(2 * n):
        vecs.append(classical_normal_form(f[W](vecs[-1]), k))
    return vecs


def harmonic_projection(p: dict, k) -> dict:
    """Decompose a filtered function into per-degree harmonic components.

    Returns {degree: component as normal-form polynomial}; the sum of the
    components equals p on the hyperboloid.
    """
    p = classical_normal_form(p, k)
    top = degree(p)
    if top < 0:
        return {}
    basis = []
    tags = []
    for d in range(top + 1):
        for i, h in enumerate(harmonic_basis(d, k)):
            basis.append(h)
            tags.append(d)
    monoms = sorted({m for b in basis for m in b} | set(p))
    cols = [[b.get(m, Fraction(0)) for m in monoms] for b in basis]
    target = [p.get(m, Fraction(0)) for m in monoms]
    sol = _solve_in_span(cols, target)
    if sol is None:
        raise ArithmeticError("harmonic decomposition failed")
    out: dict = {}
    for coeff, tag, b in zip(sol, tags, basis):
        if coeff:
            out[tag] = padd(out.get(tag, {}), pscale(b, coeff))
    return out


def enveloping_constant_classical() -> Fraction:
    """The proportionality constant between ad-composition along the
    antisymmetric part of V (x) V and the bracket representation (it is 1,
    by the Jacobi identity; computed honestly here)."""
    f = classical_fields()
    ratios = set()
    for x, y in itertools.combinations(_VARS, 2):
        # comp = ad_x ad_y - ad_y ad_x on generators, vs ad_[x,y]
        bxy = bracket_table()[(x, y)]
        for z in _VARS:
            comp = padd(f[x](f[y](var(z))), pscale(f[y](f[x](var(z))), -1))
            target: dict = {}
            for m, c in bxy.items():
                letter = _VARS[m.index(1)]
                target = padd(target, pscale(f[letter](var(z)), c))
            for m in set(comp) | set(target):
                tv = target.get(m, Fraction(0))
                cv = comp.get(m, Fraction(0))
                if tv:
                    ratios.add(cv / tv)
                elif cv:
                    raise ArithmeticError("composition not proportional to bracket")
    if len(ratios) != 1:
        raise ArithmeticError(f"inconsistent classical enveloping constant: {ratios}")
    return ratios.pop()
