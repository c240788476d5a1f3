"""The quantum torus C_q[x^{+-1}, y^{+-1}] with relation yx = q xy.

Elements are sparse maps ``(m, n) -> Scalar`` standing for sums of
``c * x^m y^n``.  The product of monomials is

    (x^m y^n)(x^p y^s) = q^(np) x^(m+p) y^(n+s)

and the anti-involution fixes x and inverts y.
"""
from __future__ import annotations

from .scalar_field import QMode, Scalar


class TorusElement:
    __slots__ = ("mode", "terms")

    def __init__(self, mode: QMode, terms=None):
        self.mode = mode
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def monomial(cls, mode: QMode, m: int, n: int, coeff=None) -> "TorusElement":
        c = mode.one() if coeff is None else coeff
        if not isinstance(c, Scalar):
            c = mode.scalar(c)
        return cls(mode, {(m, n): c})

    @classmethod
    def zero(cls, mode: QMode) -> "TorusElement":
        return cls(mode)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __add__(self, other: "TorusElement") -> "TorusElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return TorusElement(self.mode, out)

    def __neg__(self):
        return TorusElement(self.mode, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TorusElement":
        return TorusElement(self.mode, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*x^{m}y^{n}" for (m, n), c in self.items())

    def to_json(self):
        return {"terms": [{"m": m, "n": n, "c": c.to_json()} for (m, n), c in self.items()]}

    @classmethod
    def from_json(cls, mode: QMode, obj) -> "TorusElement":
        return cls(mode, {(t["m"], t["n"]): mode.scalar_from_json(t["c"]) for t in obj["terms"]})


def mul(a: TorusElement, b: TorusElement) -> TorusElement:
    mode = a.mode
    out = {}
    for (m, n), c in a.terms.items():
        for (p, s), d in b.terms.items():
            key = (m + p, n + s)
            v = c * d * mode.q_pow(n * p)
            out[key] = out[key] + v if key in out else v
    return TorusElement(mode, out)


def bar(a: TorusElement) -> TorusElement:
    """Anti-involution: bar(x^m y^n) = q^(-mn) x^m y^(-n)."""
    mode = a.mode
    return TorusElement(mode, {(m, -n): c * mode.q_pow(-m * n) for (m, n), c in a.terms.items()})


def pm_decompose(a: TorusElement) -> tuple[TorusElement, TorusElement]:
    """Split ``a`` into its bar-fixed and bar-negated parts."""
    b = bar(a)
    return (a + b).scale(a.mode.scalar(1) / 2), (a - b).scale(a.mode.scalar(1) / 2)


def in_commutator_space(a: TorusElement) -> bool:
    """Membership in [C_q, C_q]: every monomial has an exponent outside Lambda(q)."""
    lam = a.mode.lambda_contains
    return all(not lam(m) or not lam(n) for (m, n) in a.terms)


def commutator(a: TorusElement, b: TorusElement) -> TorusElement:
    return mul(a, b) - mul(b, a)


def commutator_span_in_window(mode: QMode, lo: int, hi: int) -> set[tuple[int, int]]:
    """Brute-force basis of span{[a, b]} intersected with the exponent window.

    All monomial commutators are computed and row reduced over K; the support
    of the reduced basis restricted to the window is returned.  Independent of
    the membership rule used by :func:`in_commutator_space`.
    """
    window = [(m, n) for m in range(lo, hi + 1) for n in range(lo, hi + 1)]
    inside = set(window)
    rows = []
    for a in window:
        ta = TorusElement.monomial(mode, *a)
        for b in window:
            c = commutator(ta, TorusElement.monomial(mode, *b))
            c = TorusElement(mode, {k: v for k, v in c.terms.items() if k in inside})
            if not c.is_zero():
                rows.append(c.terms)
    return set(_row_reduce_pivots(rows))


def _row_reduce_pivots(rows):
    """Exact Gaussian elimination; returns the pivot monomials of the span.

    The span of the window-restricted commutators equals the span of the
    monomials at the pivots exactly when every reduced row is a single
    monomial, which is asserted.
    """
    basis = {}  # pivot -> row (dict), pivot coefficient 1
    for row in rows:
        row = dict(row)
        for piv, brow in basis.items():
            if piv in row:
                f = row[piv]
                for k, v in brow.items():
                    w = row[k] - f * v if k in row else -(f * v)
                    if w.is_zero():
                        row.pop(k, None)
                    else:
                        row[k] = w
        if not row:
            continue
        piv = min(row)
        inv = row[piv]
        row = {k: v / inv for k, v in row.items()}
        for p2, brow in basis.items():
            if piv in brow:
                f = brow[piv]
                for k, v in row.items():
                    w = brow[k] - f * v if k in brow else -(f * v)
                    if w.is_zero():
                        brow.pop(k, None)
                    else:
                        brow[k] = w
        basis[piv] = row
    for piv, row in basis.items():
        assert set(row) == {piv}, "commutator span is not monomial"
    return basis.keys()


def predicted_commutator_basis(mode: QMode, lo: int, hi: int) -> set[tuple[int, int]]:
    lam = mode.lambda_contains
    return {(m, n) for m in range(lo, hi + 1) for n in range(lo, hi + 1)
            if not lam(m) or not lam(n)}
