"""q-deformed Clebsch-Gordan machinery on tensor powers of the spin-1
module: highest-weight vectors, isotypic decompositions, projectors.

A highest-weight vector of spin k is a K-eigenvector of eigenvalue q^{2k}
annihilated by X; it is found by exact kernel computation inside the
weight-k subspace (weight spaces are combinatorial, so this also works in
numeric mode at q = 1).  Components store the normalized h.w. vector
followed by its raw Y-images; downstream relation sets rely on the images
not being rescaled individually.

Normalization: the lexicographically first nonzero coordinate of every
h.w. vector is 1 (basis order u < v < w, monomials ordered
lexicographically = index order); multiplicity spaces carry the reduced
row echelon basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .exceptions import DecompositionIncompleteError, NoSuchComponentError
from .memo import KeyedMemo
from .rep import ModuleVector, SpinModule, TensorSpace, X, Y

DEFAULT_BOUND = 8

_memo = KeyedMemo()


def fusion_multiplicities(n: int) -> dict:
    """Multiplicities of each spin in V^{(x)n} by iterating the fusion rule
    V_k (x) V_1 = V_{k-1} + V_k + V_{k+1} (V_0 (x) V_1 = V_1)."""
    mult = {0: 1}
    for _ in range(n):
        nxt: dict = {}
        for k, m in mult.items():
            targets = (1,) if k == 0 else (k - 1, k, k + 1)
            for t in targets:
                nxt[t] = nxt.get(t, 0) + m
        mult = nxt
    return {k: m for k, m in sorted(mult.items()) if m}


@dataclass(frozen=True)
class IsotypicComponent:
    """One irreducible summand: spin, occurrence index within its spin,
    and the chain basis (normalized h.w. vector, then its Y-images)."""

    spin: int
    occurrence: int
    space: TensorSpace
    vectors: tuple

    @property
    def hw(self) -> ModuleVector:
        return self.vectors[0]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def embedding_columns(self) -> list:
        return [v.as_dict() for v in self.vectors]


class Projector:
    """Idempotent projection onto one isotypic component, stored as dense
    blocks per weight (the projector vanishes between weight spaces)."""

    __slots__ = ("space", "spin", "occurrence", "blocks")

    def __init__(self, space, spin, occurrence, blocks):
        self.space = space
        self.spin = spin
        self.occurrence = occurrence
        self.blocks = blocks  # weight -> (indices, dense matrix)

    def apply(self, vec: dict) -> dict:
        by_w: dict = {}
        space = self.space
        for i, c in vec.items():
            by_w.setdefault(space.weight(i), {})[i] = c
        out: dict = {}
        for w, chunk in by_w.items():
            blk = self.blocks.get(w)
            if blk is None:
                continue
            idxs, mat = blk
            pos = {i: p for p, i in enumerate(idxs)}
            colvec = [chunk.get(i, 0) for i in idxs]
            for p, i in enumerate(idxs):
                acc = 0
                row = mat[p]
                for t, v in enumerate(colvec):
                    if v and row[t]:
                        acc = row[t] * v + acc
                if acc:
                    out[i] = acc
        return out

    def apply_vector(self, mv: ModuleVector) -> ModuleVector:
        return ModuleVector.make(self.space, self.apply(mv.as_dict()))


class Decomposition:
    """Complete isotypic decomposition of V^{(x)n}."""

    def __init__(self, dom, space: TensorSpace, components: list):
        self.dom = dom
        self.space = space
        self.components = tuple(sorted(components, key=lambda c: (c.spin, c.occurrence)))
        self._by_key = {(c.spin, c.occurrence): c for c in self.components}
        self._weight_data = None
        self._projectors: dict = {}

    @property
    def multiplicities(self) -> dict:
        out: dict = {}
        for c in self.components:
            out[c.spin] = out.get(c.spin, 0) + 1
        return out

    def component(self, spin: int, occurrence: int = 0) -> IsotypicComponent:
        try:
            return self._by_key[(spin, occurrence)]
        except KeyError:
            raise NoSuchComponentError(f"no spin-{spin} component #{occurrence} in arity {self.space.arity}") from None

    def cartan_component(self) -> IsotypicComponent:
        return self.component(self.space.arity, 0)

    def _weights(self):
        """Per weight: coordinate indices, column tags, basis matrix inverse."""
        if self._weight_data is None:
            data = {}
            by_weight = self.space.by_weight()
            cols: dict = {}
            for c in self.components:
                for s, vec in enumerate(c.vectors):
                    cols.setdefault(c.spin - s, []).append(((c.spin, c.occurrence), vec))
            for w, idxs in by_weight.items():
                tagged = cols.get(w, [])
                if len(tagged) != len(idxs):
                    raise DecompositionIncompleteError(
                        f"weight {w}: {len(tagged)} chain vectors for dimension {len(idxs)}")
                pos = {i: p for p, i in enumerate(idxs)}
                mat = [[0] * len(tagged) for _ in idxs]
                for col, (_, vec) in enumerate(tagged):
                    for i, v in vec.coeffs:
                        mat[pos[i]][col] = v
                inv = linalg.invert_dense(mat)
                data[w] = (idxs, [t for t, _ in tagged], mat, inv)
            self._weight_data = data
        return self._weight_data

    def projector(self, spin: int, occurrence: int = 0) -> Projector:
        key = (spin, occurrence)
        if key not in self._by_key:
            raise NoSuchComponentError(f"no spin-{spin} component #{occurrence} in arity {self.space.arity}")
        if key not in self._projectors:
            blocks = {}
            for w, (idxs, tags, mat, inv) in self._weights().items():
                if key not in tags:
                    continue
                n = len(idxs)
                sel = [1 if t == key else 0 for t in tags]
                # B diag(sel) B^-1
                blk = [[0] * n for _ in range(n)]
                for r in range(n):
                    for c in range(n):
                        acc = 0
                        row = mat[r]
                        for t in range(n):
                            if sel[t] and row[t] and inv[t][c]:
                                acc = row[t] * inv[t][c] + acc
                        blk[r][c] = acc
                blocks[w] = (idxs, blk)
            self._projectors[key] = Projector(self.space, spin, occurrence, blocks)
        return self._projectors[key]

    def to_json(self) -> dict:
        dom = self.dom
        by_spin: dict = {}
        for c in self.components:
            by_spin.setdefault(c.spin, []).append(c)
        return {
            "arity": self.space.arity,
            "dimension": self.space.dim,
            "components": [
                {
                    "spin": k,
                    "multiplicity": len(comps),
                    "hw_vectors": [
                        [[self.space.label(i), dom.render(v)] for i, v in c.hw.coeffs]
                        for c in comps
                    ],
                }
                for k, comps in sorted(by_spin.items())
            ],
        }


def highest_weight_vectors(dom, module: SpinModule, n: int, bound: int = DEFAULT_BOUND) -> list:
    """All (spin, h.w. vector) pairs in V^{(x)n}, spins descending."""
    if n > bound:
        raise ValueError(f"arity {n} above configured bound {bound}")
    space = TensorSpace(module, n)
    if n == 0:
        return [(0, ModuleVector.make(space, {0: dom.one}))]
    by_weight = space.by_weight()
    out = []
    for w in range(n, -1, -1):
        idxs = by_weight.get(w, [])
        if not idxs:
            continue
        columns = {}
        for i in idxs:
            columns[i] = ModuleVector.make(space, {i: dom.one}).act(X).as_dict()
        for vec in linalg.nullspace(columns):
            out.append((w, ModuleVector.make(space, vec)))
    return out


def _decompose(dom, module: SpinModule, n: int, bound: int) -> Decomposition:
    space = TensorSpace(module, n)
    comps = []
    counts: dict = {}
    for spin, hw in highest_weight_vectors(dom, module, n, bound):
        occ = counts.get(spin, 0)
        counts[spin] = occ + 1
        chain = [hw]
        for _ in range(2 * spin):
            chain.append(chain[-1].act(Y))
        comps.append(IsotypicComponent(spin, occ, space, tuple(chain)))
    total = sum(c.dim for c in comps)
    if total != space.dim:
        raise DecompositionIncompleteError(
            f"isotypic dimensions sum to {total}, expected {space.dim} (generic-q violation or bug)")
    expected = fusion_multiplicities(n)
    got = {}
    for c in comps:
        got[c.spin] = got.get(c.spin, 0) + 1
    if got != expected:
        raise DecompositionIncompleteError(f"multiplicities {got} differ from fusion rule {expected}")
    return Decomposition(dom, space, comps)


def isotypic_decomposition(dom, module: SpinModule, n: int, bound: int = DEFAULT_BOUND) -> Decomposition:
    if n > bound:
        raise ValueError(f"arity {n} above configured bound {bound}")
    key = ("decomp", module.key, n)
    return _memo.get(key, lambda: _decompose(dom, module, n, bound))


def cartan_component(dom, module: SpinModule, n: int) -> IsotypicComponent:
    """The unique spin-n component of V^{(x)n}; its h.w. vector is the top
    tensor power of the first basis letter, so no solving is needed."""
    key = ("cartan", module.key, n)

    def build():
        space = TensorSpace(module, n)
        hw = ModuleVector.make(space, {0: dom.one})
        chain = [hw]
        for _ in range(2 * n):
            chain.append(chain[-1].act(Y))
        return IsotypicComponent(n, 0, space, tuple(chain))

    return _memo.get(key, build)
