"""Pure-Python arithmetic kernels.

Dense Laurent-polynomial arithmetic on (lo, coeffs) pairs and sparse-vector
row operations on dicts.  `qhyperboloid._kernel` is the compiled twin with
identical signatures; `qhyperboloid.backend` picks one at import time.

Representation contract: a Laurent polynomial is (lo, coeffs) where coeffs
is a list whose first and last entries are nonzero; the zero polynomial is
(0, []).  Interior entries may be the int 0.  Coefficients are rationals
(fractions.Fraction or gmpy2.mpq); kernels only use +, -, *, / and truth
testing on them.
"""

BACKEND = "python"


def lp_trim(lo, coeffs):
    """Strip zero ends; canonicalize zero to (0, [])."""
    n = len(coeffs)
    a = 0
    while a < n and not coeffs[a]:
        a += 1
    if a == n:
        return 0, []
    b = n
    while not coeffs[b - 1]:
        b -= 1
    if a or b != n:
        return lo + a, coeffs[a:b]
    return lo, coeffs


def lp_add(alo, a, blo, b):
    if not a:
        return blo, list(b)
    if not b:
        return alo, list(a)
    lo = min(alo, blo)
    hi = max(alo + len(a), blo + len(b))
    out = [0] * (hi - lo)
    da = alo - lo
    for i, c in enumerate(a):
        out[i + da] = c
    db = blo - lo
    for i, c in enumerate(b):
        if c:
            out[i + db] = out[i + db] + c
    return lp_trim(lo, out)


def lp_neg(alo, a):
    return alo, [-c if c else 0 for c in a]


def lp_mul(alo, a, blo, b):
    if not a or not b:
        return 0, []
    if len(a) == 1:
        c = a[0]
        return alo + blo, [c * x if x else 0 for x in b]
    if len(b) == 1:
        c = b[0]
        return alo + blo, [x * c if x else 0 for x in a]
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj
    return lp_trim(alo + blo, out)


def poly_divmod(a, b):
    """Ordinary dense division over a field; b must be nonzero (trimmed)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    r = list(a)
    q = [0] * (len(a) - len(b) + 1)
    inv = 1 / b[-1]
    nb = len(b)
    for i in range(len(a) - nb, -1, -1):
        c = r[i + nb - 1]
        if c:
            c = c * inv
            q[i] = c
            for j in range(nb - 1):
                if b[j]:
                    r[i + j] = r[i + j] - c * b[j]
            r[i + nb - 1] = 0
    while r and not r[-1]:
        r.pop()
    return q, r


def sp_axpy(dst, src, c):
    """dst += c*src on sparse dicts; zero entries are deleted."""
    for k, v in src.items():
        w = v * c
        u = dst.get(k)
        if u is None:
            if w:
                dst[k] = w
        else:
            u = u + w
            if u:
                dst[k] = u
            else:
                del dst[k]


def sp_scale(dst, c):
    """dst *= c in place; c must be nonzero."""
    for k in dst:
        dst[k] = dst[k] * c
