"""The braided Lie algebra structure on the spin-1 coordinate module:
the bracket V (x) V -> V, its adjoint operators, the three-term operator
identity binding coordinate multiplication to the adjoints, and the
enveloping-algebra constant.

The bracket is the projection onto the spin-1 component of V (x) V
composed with the chain isomorphism onto V, scaled so that
bracket(u (x) w) = v for every q; at q = 1 this reproduces the classical
table [v,u] = 2u, [v,w] = -2w, [u,w] = v entrywise (same normalization
the classical oracle pins).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import AlgebraContext, AlgebraElement
from .clebsch import cartan_component, isotypic_decomposition
from .exceptions import ProportionalityError
from .memo import KeyedMemo
from .rep import ModuleVector, hyperboloid_module

_memo = KeyedMemo()

U_IDX, V_IDX, W_IDX = 0, 1, 2
_PAIR_LABELS = ("u", "v", "w")


class BraidedBracket:
    """The unique (up to scale) covariant map V (x) V -> V, with the scale
    pinned by bracket(u (x) w) = v."""

    __slots__ = ("dom", "module", "table", "scale")

    def __init__(self, dom, module, table, scale):
        self.dom = dom
        self.module = module
        self.table = table  # (i, j) -> dict over V
        self.scale = scale

    def of_pair(self, i: int, j: int) -> dict:
        return dict(self.table[(i, j)])

    def apply_pairs(self, pairs: dict) -> dict:
        """Apply to a sparse vector over V (x) V (index 3*i + j)."""
        out: dict = {}
        for idx, c in pairs.items():
            img = self.table[(idx // 3, idx % 3)]
            for t, v in img.items():
                cur = out.get(t, 0) + c * v
                if cur:
                    out[t] = cur
                elif t in out:
                    del out[t]
        return out

    def rescaled(self, factor) -> "BraidedBracket":
        table = {k: {t: factor * v for t, v in img.items()} for k, img in self.table.items()}
        return BraidedBracket(self.dom, self.module, table, self.scale * factor)

    def adjoint_matrix(self, i: int) -> list:
        """Matrix of ad x_i = bracket(x_i (x) -) on the basis (u, v, w)."""
        dom = self.dom
        m = [[dom.zero] * 3 for _ in range(3)]
        for j in range(3):
            for t, v in self.table[(i, j)].items():
                m[t][j] = m[t][j] + v
        return m

    def table_json(self) -> dict:
        dom = self.dom
        out = {}
        for (i, j), img in sorted(self.table.items()):
            key = f"[{_PAIR_LABELS[i]},{_PAIR_LABELS[j]}]"
            out[key] = {_PAIR_LABELS[t]: dom.render(v) for t, v in sorted(img.items())}
        return out


def braided_bracket(dom) -> BraidedBracket:
    def build():
        mod = hyperboloid_module(dom)
        d2 = isotypic_decomposition(dom, mod, 2)
        comp1 = d2.component(1)
        proj = d2.projector(1)
        chain_v = cartan_component(dom, mod, 1).vectors  # u, Y u, Y^2 u
        # express the projection in component-chain coordinates, then map the
        # chain onto the matching chain of V (equivariant by construction)
        anchors = []
        for vec in comp1.vectors:
            i0, c0 = vec.coeffs[0]
            anchors.append((i0, c0))
        raw = {}
        space = d2.space
        for i in range(3):
            for j in range(3):
                p = proj.apply({3 * i + j: dom.one})
                img: dict = {}
                for s, vec in enumerate(comp1.vectors):
                    w = 1 - s
                    part = {k: v for k, v in p.items() if space.weight(k) == w}
                    if not part:
                        continue
                    a_idx, a_val = anchors[s]
                    coeff = part.get(a_idx, 0) / a_val
                    for t, v in chain_v[s].coeffs:
                        cur = img.get(t, 0) + coeff * v
                        if cur:
                            img[t] = cur
                        elif t in img:
                            del img[t]
                raw[(i, j)] = img
        tau = raw[(0, 2)].get(1)
        if not tau:
            raise ProportionalityError("u (x) w has no spin-1 component; cannot normalize the bracket")
        kappa = 1 / tau
        table = {k: {t: kappa * v for t, v in img.items()} for k, img in raw.items()}
        return BraidedBracket(dom, mod, table, dom.one)

    return _memo.get(("bracket", dom.key), build)


@dataclass
class BraidedOperator:
    """Adjoint operator of a coordinate: z -> bracket(x (x) z) on V,
    extended by zero on the unit."""

    label: str
    index: int
    matrix: list

    def apply_index(self, j: int) -> dict:
        return {i: row[j] for i, row in enumerate(self.matrix) if row[j]}

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, c in vec.items():
            for i, row in enumerate(self.matrix):
                if row[j]:
                    cur = out.get(i, 0) + c * row[j]
                    if cur:
                        out[i] = cur
                    elif i in out:
                        del out[i]
        return out

    def apply_element(self, a: AlgebraElement) -> AlgebraElement:
        """Action on a degree <= 1 algebra element (the unit goes to 0)."""
        ctx = a.ctx
        amb = a.ambient(1) if 1 in a.components else {}
        return ctx.normal_form({(1, i): v for i, v in self.apply(amb).items()})


_OP_LABELS = {0: "U^q", 1: "V^q", 2: "W^q"}


def adjoint_operator(dom, x: int) -> BraidedOperator:
    """ad^q of the x-th coordinate (0 = u, 1 = v, 2 = w)."""
    br = braided_bracket(dom)
    return BraidedOperator(_OP_LABELS[x], x, br.adjoint_matrix(x))


def spin0_coefficients(dom) -> tuple:
    """Coefficients (alpha, beta, gamma) of the spin-0 h.w. vector of
    V (x) V' on the pairs (u,W'), (v,V'), (w,U'), normalized to beta = 1."""
    mod = hyperboloid_module(dom)
    d2 = isotypic_decomposition(dom, mod, 2)
    v0 = d2.component(0).hw.as_dict()
    a = v0.get(2, dom.zero)  # u (x) w
    b = v0.get(4, dom.zero)  # v (x) v
    c = v0.get(6, dom.zero)  # w (x) u
    if not b:
        raise ProportionalityError("spin-0 vector has no middle coefficient")
    return (a / b, dom.one, c / b)


def literal_coefficient_report(dom) -> dict:
    """Whether the intrinsic triple matches (q^3+q, 1, q+q^-1) directly or
    under q <-> q^-1.  Reported, never assumed."""
    alpha, beta, gamma = spin0_coefficients(dom)
    direct = (dom.q_power(3) + dom.q_power(1), dom.q_power(1) + dom.q_power(-1))
    mirror = (dom.q_power(-3) + dom.q_power(-1), dom.q_power(-1) + dom.q_power(1))
    return {
        "normalized": [dom.render(alpha), dom.render(beta), dom.render(gamma)],
        "direct_match": alpha == direct[0] and gamma == direct[1],
        "mirror_match": alpha == mirror[0] and gamma == mirror[1],
    }


@dataclass
class IdentityReport:
    """Result of evaluating the three-term operator identity on V."""

    ok: bool
    coefficients: list
    residuals: dict
    literal: dict
    kernel_dimension: int = 1


def _identity_terms(ctx: AlgebraContext, z: int) -> list:
    """[term_t for t in 0..2]: the algebra elements x_t * Op_t(z) paired as
    (u, W^q), (v, V^q), (w, U^q)."""
    dom = ctx.dom
    ops = [adjoint_operator(dom, x) for x in range(3)]
    pairs = [(0, 2), (1, 1), (2, 0)]  # (coordinate, operator index)
    out = []
    for x, op_idx in pairs:
        img = ops[op_idx].apply_index(z)
        rhs = ctx.normal_form({(1, i): v for i, v in img.items()})
        out.append(ctx.multiply(ctx.generator(x), rhs))
    return out


def verify_identity6(ctx: AlgebraContext, coefficients=None) -> IdentityReport:
    """Evaluate the spin-0 combination of coordinate-times-adjoint
    operators on each generator; all three results must vanish in the
    quotient algebra.  Also reports the kernel dimension of the
    coefficient map (must be 1: the identity is unique up to scale)."""
    dom = ctx.dom
    coeffs = coefficients if coefficients is not None else spin0_coefficients(dom)
    residuals = {}
    ok = True
    columns: dict = {}
    for z in range(3):
        terms = _identity_terms(ctx, z)
        total = ctx.zero()
        for t, (term, cf) in enumerate(zip(terms, coeffs)):
            total = total + term.scaled(cf)
            col = columns.setdefault(t, {})
            for n, cs in term.components.items():
                for s, v in cs.items():
                    col[(z, n, s)] = v
        residuals[_PAIR_LABELS[z]] = total
        ok = ok and total.is_zero
    kernel = linalg.nullspace(columns)
    return IdentityReport(
        ok=ok,
        coefficients=[dom.render(c) for c in coeffs],
        residuals=residuals,
        literal=literal_coefficient_report(dom),
        kernel_dimension=len(kernel),
    )


@dataclass
class EnvelopingResult:
    hbar_adj: object
    rescale_for_target: object = None


def enveloping_constant(dom, op_scale=None, target_hbar=None) -> EnvelopingResult:
    """The scalar h such that composing two adjoint operators along the
    spin-1 component of V (x) V equals h times the adjoint operator of the
    bracket image.  Rescaling the operators by s rescales h by s."""
    br = braided_bracket(dom)
    if op_scale is not None and op_scale != dom.one:
        ads = [[[op_scale * x for x in row] for row in br.adjoint_matrix(i)] for i in range(3)]
    else:
        ads = [br.adjoint_matrix(i) for i in range(3)]
    mod = hyperboloid_module(dom)
    d2 = isotypic_decomposition(dom, mod, 2)
    chain = d2.component(1).vectors

    def matmul(a, b):
        return [[sum((a[i][t] * b[t][k] for t in range(3)), dom.zero) for k in range(3)] for i in range(3)]

    ratios = []
    for vec in chain:
        comp = [[dom.zero] * 3 for _ in range(3)]
        for idx, cf in vec.coeffs:
            m = matmul(ads[idx // 3], ads[idx % 3])
            for i in range(3):
                for k in range(3):
                    comp[i][k] = comp[i][k] + cf * m[i][k]
        img = br.apply_pairs(vec.as_dict())
        tgt = [[dom.zero] * 3 for _ in range(3)]
        for z, cf in img.items():
            for i in range(3):
                for k in range(3):
                    tgt[i][k] = tgt[i][k] + cf * ads[z][i][k]
        for i in range(3):
            for k in range(3):
                tv, cv = tgt[i][k], comp[i][k]
                if tv:
                    ratios.append(cv / tv)
                elif cv:
                    raise ProportionalityError(
                        "adjoint composition is not proportional to the bracket representation")
    if not ratios:
        raise ProportionalityError("degenerate adjoint operators")
    h = ratios[0]
    if any(r != h for r in ratios[1:]):
        raise ProportionalityError("inconsistent enveloping constant across entries")
    rescale = None
    if target_hbar is not None:
        target = dom.scalar(target_hbar)
        rescale = target / h
    return EnvelopingResult(hbar_adj=h, rescale_for_target=rescale)
