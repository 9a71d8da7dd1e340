"""Concrete U_q(sl(2)) modules and the coproduct action on tensor powers.

Generators X, Y, K (K = q^H; generic q makes K invertible, so H itself is
never needed).  Spin-j module on the descending-weight basis
e_j, e_{j-1}, ..., e_{-j}:

    X e_m = [j-m] e_{m+1},   Y e_m = [j+m] e_{m-1},   K e_m = q^{2m} e_m.

Tensor powers act through the coproduct

    D(X) = X (x) 1 + K (x) X,   D(Y) = Y (x) K^-1 + 1 (x) Y,   D(K) = K (x) K,

so X picks up K-factors to the left of the slot it hits and Y picks up
K^-1-factors to the right.

Besides spin_module(j) there is hyperboloid_module(): the same spin-1
space in the coordinate basis u = e_1, v = [2] e_0, w = -e_{-1}.  In that
basis the q -> 1 limit reproduces the classical hyperboloid conventions
(invariant quadric proportional to 2uw + v^2 + 2wu, bracket table
[v,u] = 2u, [v,w] = -2w, [u,w] = v); the raw weight basis cannot be
rescaled into those conventions over the rationals.  All quotient-algebra
constructions downstream use the coordinate basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exceptions import SpaceMismatchError

X, Y, K, KINV = "X", "Y", "K", "K^-1"
GENERATORS = (X, Y, K, KINV)


class SpinModule:
    """A finite-dimensional module given by single-target action tables.

    raising[i] / lowering[i] give (target index, coefficient) or None;
    weights[i] is the integer m with K-eigenvalue q^{2m}.  Basis order is
    descending weight, which downstream code uses as the canonical
    coordinate order.
    """

    __slots__ = ("dom", "kind", "spin", "labels", "weights", "raising", "lowering")

    def __init__(self, dom, kind, spin, labels, weights, raising, lowering):
        self.dom = dom
        self.kind = kind
        self.spin = spin
        self.labels = tuple(labels)
        self.weights = tuple(weights)
        self.raising = tuple(raising)
        self.lowering = tuple(lowering)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def key(self):
        return (self.kind, self.spin, self.dom.key)

    def act_basis(self, gen: str, i: int) -> list:
        """Image of the i-th basis vector as [(index, coeff)]."""
        dom = self.dom
        if gen == K:
            return [(i, dom.q_power(2 * self.weights[i]))]
        if gen == KINV:
            return [(i, dom.q_power(-2 * self.weights[i]))]
        tab = self.raising if gen == X else self.lowering
        hit = tab[i]
        return [hit] if hit else []

    def matrix(self, gen: str) -> list:
        """Dense action matrix (rows = output coordinates)."""
        n = self.dim
        m = [[self.dom.zero] * n for _ in range(n)]
        for j in range(n):
            for i, c in self.act_basis(gen, j):
                m[i][j] = m[i][j] + c
        return m


def spin_module(dom, j: int) -> SpinModule:
    """The spin-j module on the weight basis e_j ... e_{-j}."""
    if j < 0:
        raise ValueError("spin must be a non-negative integer")
    dim = 2 * j + 1
    weights = [j - i for i in range(dim)]
    labels = [f"e_{m}" for m in weights]
    if j == 1:
        labels = ["u", "v", "w"]  # u = e_1, v = e_0, w = e_{-1}
    raising = []
    lowering = []
    for i, m in enumerate(weights):
        raising.append((i - 1, dom.qint(j - m)) if m < j else None)
        lowering.append((i + 1, dom.qint(j + m)) if m > -j else None)
    return SpinModule(dom, "spin", j, labels, weights, raising, lowering)


def hyperboloid_module(dom) -> SpinModule:
    """Spin 1 in the coordinate basis u = e_1, v = [2] e_0, w = -e_{-1}.

    Action: X: v -> [2]u, w -> -v;  Y: u -> v, v -> -[2]w;  K as usual.
    """
    two = dom.qint(2)
    raising = [None, (0, two), (1, -dom.one)]
    lowering = [(1, dom.one), (2, -two), None]
    return SpinModule(dom, "coord", 1, ["u", "v", "w"], [1, 0, -1], raising, lowering)


@dataclass(frozen=True)
class TensorSpace:
    """n-fold tensor power of a 3-dimensional module; degree 0 is the unit line."""

    module: SpinModule
    arity: int

    @property
    def dim(self) -> int:
        return 3 ** self.arity

    def index(self, letters) -> int:
        i = 0
        for d in letters:
            i = 3 * i + d
        return i

    def digits(self, idx: int) -> tuple:
        n = self.arity
        out = [0] * n
        for p in range(n - 1, -1, -1):
            out[p] = idx % 3
            idx //= 3
        return tuple(out)

    def label(self, idx: int) -> str:
        if self.arity == 0:
            return "1"
        labs = self.module.labels
        return "*".join(labs[d] for d in self.digits(idx))

    def weight(self, idx: int) -> int:
        w = 0
        ws = self.module.weights
        for d in self.digits(idx):
            w += ws[d]
        return w

    def by_weight(self) -> dict:
        out: dict = {}
        for i in range(self.dim):
            out.setdefault(self.weight(i), []).append(i)
        return out


def act_tensor(module: SpinModule, arity: int, gen: str, vec: dict) -> dict:
    """Coproduct action of a generator on a sparse vector over the tensor power."""
    dom = module.dom
    if arity == 0:
        if gen in (K, KINV):
            return dict(vec)
        return {}
    ws = module.weights
    out: dict = {}
    pw = dom.q_power
    for idx, coeff in vec.items():
        digits = []
        t = idx
        for _ in range(arity):
            digits.append(t % 3)
            t //= 3
        digits.reverse()
        if gen in (K, KINV):
            w = sum(ws[d] for d in digits)
            e = 2 * w if gen == K else -2 * w
            c = coeff * pw(e)
            if c:
                out[idx] = out.get(idx, 0) + c
                if not out[idx]:
                    del out[idx]
            continue
        tab = module.raising if gen == X else module.lowering
        if gen == X:
            # K on factors left of the slot
            pre = 0
            for pos in range(arity):
                hit = tab[digits[pos]]
                if hit is not None:
                    tgt, c = hit
                    nidx = idx + (tgt - digits[pos]) * 3 ** (arity - 1 - pos)
                    val = coeff * pw(2 * pre) * c
                    if val:
                        cur = out.get(nidx, 0) + val
                        if cur:
                            out[nidx] = cur
                        elif nidx in out:
                            del out[nidx]
                pre += ws[digits[pos]]
        else:
            # K^-1 on factors right of the slot
            suf = [0] * (arity + 1)
            for pos in range(arity - 1, -1, -1):
                suf[pos] = suf[pos + 1] + ws[digits[pos]]
            for pos in range(arity):
                hit = tab[digits[pos]]
                if hit is not None:
                    tgt, c = hit
                    nidx = idx + (tgt - digits[pos]) * 3 ** (arity - 1 - pos)
                    val = coeff * pw(-2 * suf[pos + 1]) * c
                    if val:
                        cur = out.get(nidx, 0) + val
                        if cur:
                            out[nidx] = cur
                        elif nidx in out:
                            del out[nidx]
    return out


@dataclass(frozen=True)
class ModuleVector:
    """Sparse coefficient vector tagged with its space."""

    space: object  # SpinModule or TensorSpace
    coeffs: tuple  # sorted tuple of (index, scalar)

    @classmethod
    def make(cls, space, data: dict) -> "ModuleVector":
        return cls(space, tuple(sorted((i, c) for i, c in data.items() if c)))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if self.space != other.space:
            raise SpaceMismatchError("cannot add vectors from different spaces")
        d = self.as_dict()
        for i, c in other.coeffs:
            cur = d.get(i, 0) + c
            if cur:
                d[i] = cur
            elif i in d:
                del d[i]
        return ModuleVector.make(self.space, d)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + other.scaled(-1)

    def scaled(self, c) -> "ModuleVector":
        if not c:
            return ModuleVector(self.space, ())
        return ModuleVector(self.space, tuple((i, v * c) for i, v in self.coeffs))

    def act(self, gen: str) -> "ModuleVector":
        sp = self.space
        if isinstance(sp, TensorSpace):
            return ModuleVector.make(sp, act_tensor(sp.module, sp.arity, gen, self.as_dict()))
        out: dict = {}
        for i, c in self.coeffs:
            for j, a in sp.act_basis(gen, i):
                cur = out.get(j, 0) + c * a
                if cur:
                    out[j] = cur
                elif j in out:
                    del out[j]
        return ModuleVector.make(sp, out)

    def render(self, dom) -> str:
        if not self.coeffs:
            return "0"
        sp = self.space
        return " + ".join(f"{dom.render(c)}*{sp.label(i)}" for i, c in self.coeffs)


@dataclass
class RelationReport:
    """Outcome of checking the defining relations on a module."""

    spin: int
    ok: bool
    violations: list = field(default_factory=list)


def verify_module_relations(dom, j: int, bound: int = 8) -> RelationReport:
    """Check K X K^-1 = q^2 X, K Y K^-1 = q^-2 Y, XY - YX = (K - K^-1)/(q - q^-1).

    All three hold as exact matrix identities; any nonzero entry is listed.
    """
    if j > bound:
        raise ValueError(f"spin {j} above configured bound {bound}")
    mod = spin_module(dom, j)
    n = mod.dim
    viol = []

    def mat(g):
        return mod.matrix(g)

    def mul(a, b):
        return [[sum((a[i][t] * b[t][k] for t in range(n)), dom.zero) for k in range(n)] for i in range(n)]

    mx, my, mk, mki = mat(X), mat(Y), mat(K), mat(KINV)
    q2 = dom.q_power(2)
    lhs1 = mul(mul(mk, mx), mki)
    lhs2 = mul(mul(mk, my), mki)
    comm = mul(mx, my)
    ymx = mul(my, mx)
    for i in range(n):
        for k in range(n):
            a = lhs1[i][k] - q2 * mx[i][k]
            if a:
                viol.append(("KXK^-1 - q^2 X", i, k, a))
            b = lhs2[i][k] - dom.q_power(-2) * my[i][k]
            if b:
                viol.append(("KYK^-1 - q^-2 Y", i, k, b))
            c = comm[i][k] - ymx[i][k]
            if i == k:
                c = c - dom.qint(2 * mod.weights[i])
            if c:
                viol.append(("XY - YX - [H]", i, k, c))
    return RelationReport(spin=j, ok=not viol, violations=viol)
