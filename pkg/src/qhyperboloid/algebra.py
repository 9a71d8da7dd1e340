"""The two-parameter covariant quotient algebra A(hbar, c) = T(V)/I.

Relations: the spin-0 highest-weight vector of V (x) V equals c times the
unit, and the spin-1 highest-weight vector equals hbar times the degree-1
h.w. generator; the full relation set is the Y-orbit of these (four
inhomogeneous vectors whose degree-2 parts span the spin-0 and spin-1
components).  hbar = 0, c != 0 is the quantum hyperboloid; hbar = 0,
c = 0 the quantum cone.

The quotient is computed by exact linear algebra on the filtered pieces,
not by a rewriting system: spanning vectors x (x) r (x) y are echelonized
per weight with pivots ordered by descending degree, so the per-degree
ranks of the ideal and the canonical complement fall out of one
structure.  Every element has a unique representative with one component
in each top spin component ("bar basis"); if those components ever fail
to complement the ideal the context aborts with BasisDeficiencyError
rather than picking another complement.

Degree bound: configurable, default 4 in symbolic mode and 7 in numeric
mode.  Contexts are immutable from the caller's view; internal lazy
builds are serialized by a lock.
"""

from __future__ import annotations

import threading

from . import linalg
from .clebsch import cartan_component, isotypic_decomposition
from .exceptions import BasisDeficiencyError, DegreeOverflowError
from .rep import ModuleVector, TensorSpace, hyperboloid_module

def _order(coord):
    # pivots: highest degree first, then lexicographically first monomial
    return (-coord[0], coord[1])


class RelationSet:
    """The four defining relation vectors, as inhomogeneous filtered dicts
    {degree: {index: scalar}}, each homogeneous in weight."""

    __slots__ = ("dom", "hbar", "c", "vectors", "weights")

    def __init__(self, dom, hbar, c, vectors, weights):
        self.dom = dom
        self.hbar = hbar
        self.c = c
        self.vectors = vectors
        self.weights = weights


def build_relations(dom, hbar, c) -> RelationSet:
    hbar = dom.scalar(hbar)
    c = dom.scalar(c)
    mod = hyperboloid_module(dom)
    d2 = isotypic_decomposition(dom, mod, 2)
    v0 = d2.component(0).hw.as_dict()
    spin1_chain = d2.component(1).vectors
    v_chain = cartan_component(dom, mod, 1).vectors  # u and its Y-images
    vectors = []
    weights = []
    rel0 = {2: dict(v0)}
    if c:
        rel0[0] = {0: -c}
    vectors.append(rel0)
    weights.append(0)
    for s in range(3):
        rel = {2: spin1_chain[s].as_dict()}
        if hbar:
            tail = {i: -hbar * x for i, x in v_chain[s].coeffs}
            if tail:
                rel[1] = tail
        vectors.append(rel)
        weights.append(1 - s)
    return RelationSet(dom, hbar, c, vectors, weights)


class AlgebraElement:
    """Canonical form: one coefficient vector per degree over the chain
    basis of the top spin component of that degree."""

    __slots__ = ("ctx", "components", "_ambient")

    def __init__(self, ctx, components: dict):
        self.ctx = ctx
        self.components = {n: dict(cs) for n, cs in components.items() if cs}
        self._ambient = {}

    @property
    def is_zero(self) -> bool:
        return not self.components

    @property
    def degree(self) -> int:
        return max(self.components, default=-1)

    def coefficient(self, n: int, s: int):
        return self.components.get(n, {}).get(s, self.ctx.dom.zero)

    def ambient(self, n: int) -> dict:
        """Representative of the degree-n component inside V^{(x)n}."""
        if n not in self._ambient:
            out: dict = {}
            chain = self.ctx.bar_chain(n)
            for s, coeff in self.components.get(n, {}).items():
                for i, v in chain[s].coeffs:
                    cur = out.get(i, 0) + coeff * v
                    if cur:
                        out[i] = cur
                    elif i in out:
                        del out[i]
            self._ambient[n] = out
        return self._ambient[n]

    def filtered(self) -> dict:
        out = {}
        for n in self.components:
            for i, v in self.ambient(n).items():
                out[(n, i)] = v
        return out

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self.ctx._check_same(other.ctx)
        comps = {n: dict(cs) for n, cs in self.components.items()}
        for n, cs in other.components.items():
            tgt = comps.setdefault(n, {})
            for s, v in cs.items():
                cur = tgt.get(s, 0) + v
                if cur:
                    tgt[s] = cur
                elif s in tgt:
                    del tgt[s]
        return AlgebraElement(self.ctx, comps)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scaled(-self.ctx.dom.one)

    def scaled(self, c) -> "AlgebraElement":
        if not c:
            return AlgebraElement(self.ctx, {})
        return AlgebraElement(self.ctx, {n: {s: v * c for s, v in cs.items()} for n, cs in self.components.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.ctx.multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(tuple(sorted((n, tuple(sorted(cs.items()))) for n, cs in self.components.items())))

    def render(self) -> str:
        if self.is_zero:
            return "0"
        dom = self.ctx.dom
        parts = []
        for n in sorted(self.components):
            for s in sorted(self.components[n]):
                parts.append(f"{dom.render(self.components[n][s])}*b[{n},{s}]")
        return " + ".join(parts)

    def to_jsonable(self) -> dict:
        dom = self.ctx.dom
        return {
            str(n): {str(s): dom.render(v) for s, v in sorted(self.components[n].items())}
            for n in sorted(self.components)
        }


class AlgebraContext:
    """All machinery for one (domain, hbar, c, degree bound)."""

    def __init__(self, dom, hbar=0, c=1, max_degree: int | None = None):
        self.dom = dom
        self.hbar = dom.scalar(hbar)
        self.c = dom.scalar(c)
        if max_degree is None:
            max_degree = 4 if dom.is_symbolic else 7
        self.max_degree = max_degree
        self.module = hyperboloid_module(dom)
        self.relations = build_relations(dom, self.hbar, self.c)
        self.key = ("algebra", dom.key, dom.render(self.hbar), dom.render(self.c), max_degree)
        self._lock = threading.RLock()
        self._built = 1  # relations start contributing in degree 2
        self._ech: dict = {}  # weight -> Echelon over filtered coords
        self._weights: dict = {}  # degree -> list of weights per index
        self._by_weight: dict = {}  # degree -> {weight: [indices]}
        self._bar: dict = {}  # degree -> chain vectors
        self._solvers: dict = {}  # weight -> (level, bar_tags, free, Sinv)
        self._space: dict = {}

    # --- plumbing ---------------------------------------------------------

    def _check_same(self, other: "AlgebraContext"):
        if other is not self:
            raise ValueError("elements belong to different algebra contexts")

    def space(self, n: int) -> TensorSpace:
        if n not in self._space:
            self._space[n] = TensorSpace(self.module, n)
        return self._space[n]

    def _weight_table(self, d: int):
        if d not in self._weights:
            sp = self.space(d)
            tab = [sp.weight(i) for i in range(sp.dim)]
            self._weights[d] = tab
            byw: dict = {}
            for i, w in enumerate(tab):
                byw.setdefault(w, []).append(i)
            self._by_weight[d] = byw
        return self._weights[d]

    def bar_chain(self, n: int):
        if n not in self._bar:
            self._bar[n] = cartan_component(self.dom, self.module, n).vectors
        return self._bar[n]

    # --- ideal construction -------------------------------------------------

    def build_to(self, N: int):
        if N > self.max_degree:
            raise DegreeOverflowError(f"degree {N} above configured bound {self.max_degree}")
        with self._lock:
            while self._built < N:
                self._insert_degree(self._built + 1)
                self._built += 1

    def _insert_degree(self, d: int):
        """Insert all spanning vectors x (x) r (x) y with top degree d."""
        if d < 2:
            return
        rel = self.relations
        for a in range(d - 1):
            b = d - 2 - a
            pa, pb = 3 ** a, 3 ** b
            wa = self._weight_table(a)
            wb = self._weight_table(b)
            for r, rw in zip(rel.vectors, rel.weights):
                parts = sorted(r.items())
                for ix in range(pa):
                    for iy in range(pb):
                        vec = {}
                        for rd, body in parts:
                            shift = 3 ** rd
                            for j, coeff in body.items():
                                vec[(a + rd + b, (ix * shift + j) * pb + iy)] = coeff
                        w = wa[ix] + rw + wb[iy]
                        self._echelon(w).insert(vec)

    def _echelon(self, w: int) -> linalg.Echelon:
        ech = self._ech.get(w)
        if ech is None:
            ech = self._ech[w] = linalg.Echelon(order_key=_order)
        return ech

    def ideal_filtered_rank(self, n: int) -> int:
        """dim of the ideal's intersection with the degree-filtered space T_{<=n}."""
        if n >= 2:
            self.build_to(n)
        return sum(1 for ech in self._ech.values() for piv in ech.pivots() if piv[0] <= n)

    def ideal_rows(self) -> list:
        """Row-echelon basis of the built filtered ideal component."""
        rows = []
        for ech in self._ech.values():
            rows.extend(ech.rows.values())
        return sorted(rows, key=lambda r: _order(min(r, key=_order)))

    def graded_dimension(self, n: int) -> int:
        if n > self.max_degree:
            raise DegreeOverflowError(f"degree {n} above configured bound {self.max_degree}")
        if n < 2:
            return 3 ** n
        self.build_to(n)
        pivots_at_n = sum(1 for ech in self._ech.values() for piv in ech.pivots() if piv[0] == n)
        return 3 ** n - pivots_at_n

    def hilbert_dims(self, N: int | None = None) -> list:
        N = self.max_degree if N is None else N
        return [self.graded_dimension(n) for n in range(N + 1)]

    # --- normal forms -------------------------------------------------------

    def _solver(self, w: int):
        with self._lock:
            cur = self._solvers.get(w)
            if cur is not None and cur[0] == self._built:
                return cur
            N = self._built
            bar_tags = []
            bar_vecs = []
            for n in range(abs(w), N + 1):
                s = n - w
                if 0 <= s <= 2 * n:
                    chain = self.bar_chain(n)[s]
                    bar_tags.append((n, s))
                    bar_vecs.append({(n, i): v for i, v in chain.coeffs})
            free = []
            ech = self._ech.get(w)
            pivots = ech.pivots() if ech is not None else ()
            pivset = set(pivots)
            for d in range(N + 1):
                self._weight_table(d)
                for i in self._by_weight[d].get(w, ()):
                    if (d, i) not in pivset:
                        free.append((d, i))
            if len(free) != len(bar_tags):
                raise BasisDeficiencyError(
                    f"weight {w}: {len(bar_tags)} top-component vectors vs "
                    f"{len(free)} free coordinates at degree {N}; flatness violated at this q")
            free.sort(key=_order)
            pos = {co: p for p, co in enumerate(free)}
            mat = [[0] * len(bar_tags) for _ in free]
            for col, bv in enumerate(bar_vecs):
                res = ech.reduce(bv)[0] if ech is not None else dict(bv)
                for coord, val in res.items():
                    mat[pos[coord]][col] = val
            try:
                sinv = linalg.invert_dense(mat)
            except ArithmeticError as exc:
                raise BasisDeficiencyError(
                    f"weight {w}: top components do not complement the ideal ({exc})") from exc
            solver = (N, bar_tags, free, sinv)
            self._solvers[w] = solver
            return solver

    def normal_form(self, filt: dict) -> AlgebraElement:
        """Unique representative of a filtered tensor modulo the ideal,
        one component per top spin component."""
        top = max((d for (d, _i) in filt), default=0)
        if top > self.max_degree:
            raise DegreeOverflowError(f"degree {top} above configured bound {self.max_degree}")
        self.build_to(max(top, 2))
        by_w: dict = {}
        for (d, i), val in filt.items():
            if not val:
                continue
            w = self._weight_table(d)[i]
            by_w.setdefault(w, {})[(d, i)] = val
        comps: dict = {}
        for w, chunk in by_w.items():
            level, bar_tags, free, sinv = self._solver(w)
            ech = self._ech.get(w)
            res = ech.reduce(chunk)[0] if ech is not None else chunk
            if not res:
                continue
            pos = {co: p for p, co in enumerate(free)}
            rvec = [0] * len(free)
            for coord, val in res.items():
                rvec[pos[coord]] = val
            beta = linalg.mat_vec(sinv, rvec)
            for (n, s), val in zip(bar_tags, beta):
                if val:
                    comps.setdefault(n, {})[s] = val
        return AlgebraElement(self, comps)

    def reduce_to_zero(self, filt: dict) -> bool:
        """True when the filtered tensor lies in the ideal."""
        return self.normal_form(filt).is_zero

    # --- element constructors ----------------------------------------------

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def unit(self) -> AlgebraElement:
        return AlgebraElement(self, {0: {0: self.dom.one}})

    def generator(self, i: int) -> AlgebraElement:
        """The degree-1 class of the i-th coordinate (0 = u, 1 = v, 2 = w)."""
        return self.normal_form({(1, i): self.dom.one})

    def from_vector(self, mv: ModuleVector) -> AlgebraElement:
        n = mv.space.arity
        return self.normal_form({(n, i): v for i, v in mv.coeffs})

    def from_components(self, comps: dict) -> AlgebraElement:
        return AlgebraElement(self, comps)

    # --- operations ----------------------------------------------------------

    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        self._check_same(a.ctx)
        self._check_same(b.ctx)
        filt: dict = {}
        for da in a.components:
            amb_a = a.ambient(da)
            for db in b.components:
                if da + db > self.max_degree:
                    raise DegreeOverflowError(
                        f"product degree {da + db} above configured bound {self.max_degree}")
                amb_b = b.ambient(db)
                pb = 3 ** db
                d = da + db
                for ia, ca in amb_a.items():
                    base = ia * pb
                    for ib, cb in amb_b.items():
                        key = (d, base + ib)
                        cur = filt.get(key, 0) + ca * cb
                        if cur:
                            filt[key] = cur
                        elif key in filt:
                            del filt[key]
        return self.normal_form(filt)

    def act(self, gen: str, a: AlgebraElement) -> AlgebraElement:
        """Action of X, Y, K or K^-1 descended to the quotient."""
        from .rep import act_tensor

        filt: dict = {}
        for n in a.components:
            img = act_tensor(self.module, n, gen, a.ambient(n))
            for i, v in img.items():
                filt[(n, i)] = v
        return self.normal_form(filt)

    def structure_constants(self, n: int) -> dict:
        """Products generator x (degree-n chain element), in canonical coords."""
        self.build_to(min(n + 1, self.max_degree))
        out = {}
        chain = self.bar_chain(n)
        labels = self.module.labels
        for i, lab in enumerate(labels):
            g = self.generator(i)
            for s in range(2 * n + 1):
                e = self.from_components({n: {s: self.dom.one}})
                prod = self.multiply(g, e)
                out[f"{lab}*b[{n},{s}]"] = prod.to_jsonable()
        return out
