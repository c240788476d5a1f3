"""gl(M,N) over the quantum torus and its central extension.

Index convention: rows/columns ``0..M-1`` form the even block and
``M..M+N-1`` the odd block.  The extended bracket on monomial tensors is

    [A x^m y^n, B x^p y^s] = A x^m y^n B x^p y^s - (-1)^{|A||B|} B x^p y^s A x^m y^n
        + m q^{np} str(AB) delta_{m+p,0} [n+s in Lambda] c(n+s)
        + n q^{np} str(AB) delta_{m+p,0} delta_{n+s,0} c_y

extended bilinearly after splitting each matrix into matrix units with
monomial coefficients.
"""
from __future__ import annotations

from .quantum_torus import TorusElement, mul
from .scalar_field import QMode, Scalar

EVEN, ODD = 0, 1


class MixedParity(ValueError):
    pass


class SuperMatrix:
    __slots__ = ("mode", "M", "N", "entries")

    def __init__(self, mode: QMode, M: int, N: int, entries=None):
        if M < 1 or N < 1:
            raise ValueError("block sizes must be positive")
        self.mode = mode
        self.M = M
        self.N = N
        size = M + N
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < size and 0 <= c < size):
                raise IndexError(f"position {(r, c)} outside {size}x{size}")
            if not v.is_zero():
                clean[(r, c)] = v
        self.entries = clean

    @property
    def size(self):
        return self.M + self.N

    @classmethod
    def unit(cls, mode, M, N, r, c, elem: TorusElement | None = None):
        if elem is None:
            elem = TorusElement.monomial(mode, 0, 0)
        return cls(mode, M, N, {(r, c): elem})

    @classmethod
    def zero(cls, mode, M, N):
        return cls(mode, M, N)

    def position_parity(self, r: int, c: int) -> int:
        return EVEN if (r < self.M) == (c < self.M) else ODD

    def is_zero(self):
        return not self.entries

    def _check(self, other):
        if (self.M, self.N) != (other.M, other.N):
            raise ValueError("block sizes differ")

    def __add__(self, other):
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return SuperMatrix(self.mode, self.M, self.N, out)

    def __neg__(self):
        return SuperMatrix(self.mode, self.M, self.N, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SuperMatrix(self.mode, self.M, self.N, {k: v.scale(c) for k, v in self.entries.items()})

    def matmul(self, other):
        self._check(other)
        rows = {}
        for (r, k), v in other.entries.items():
            rows.setdefault(r, []).append((k, v))
        out = {}
        for (i, r), u in self.entries.items():
            for k, v in rows.get(r, ()):
                w = mul(u, v)
                out[(i, k)] = out[(i, k)] + w if (i, k) in out else w
        return SuperMatrix(self.mode, self.M, self.N, out)

    def transpose_bar(self):
        """Entrywise anti-involution followed by transposition."""
        from .quantum_torus import bar
        return SuperMatrix(self.mode, self.M, self.N, {(c, r): bar(v) for (r, c), v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.M, self.N) == (other.M, other.N) and self.entries == other.entries

    def __repr__(self):
        if not self.entries:
            return "0"
        return " + ".join(f"[{v}]E{r},{c}" for (r, c), v in sorted(self.entries.items()))

    def to_json(self):
        return [{"r": r, "c": c, "v": v.to_json()} for (r, c), v in sorted(self.entries.items())]


def parity(A: SuperMatrix) -> int:
    ps = {A.position_parity(r, c) for (r, c) in A.entries}
    if len(ps) > 1:
        raise MixedParity("matrix has both even and odd entries")
    return ps.pop() if ps else EVEN


def supertrace(A: SuperMatrix) -> TorusElement:
    out = TorusElement.zero(A.mode)
    for i in range(A.size):
        v = A.entries.get((i, i))
        if v is not None:
            out = out + v if i < A.M else out - v
    return out


str_ = supertrace


class ExtElement:
    """Matrix part plus central coordinates c(n) (n in Lambda(q)) and c_y."""

    __slots__ = ("mat", "c", "cy")

    def __init__(self, mat: SuperMatrix, c=None, cy: Scalar | None = None):
        self.mat = mat
        mode = mat.mode
        self.c = {}
        for n, v in (c or {}).items():
            if not mode.lambda_contains(n):
                raise ValueError(f"central index {n} is not in Lambda(q)")
            if not v.is_zero():
                self.c[n] = v
        self.cy = cy if cy is not None else mode.zero()

    @property
    def mode(self):
        return self.mat.mode

    @classmethod
    def from_matrix(cls, mat):
        return cls(mat)

    @classmethod
    def zero(cls, mode, M, N):
        return cls(SuperMatrix.zero(mode, M, N))

    def is_zero(self):
        return self.mat.is_zero() and not self.c and self.cy.is_zero()

    def __add__(self, other):
        c = dict(self.c)
        for n, v in other.c.items():
            c[n] = c[n] + v if n in c else v
        return ExtElement(self.mat + other.mat, c, self.cy + other.cy)

    def __neg__(self):
        return ExtElement(-self.mat, {n: -v for n, v in self.c.items()}, -self.cy)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return ExtElement(self.mat.scale(s), {n: v * s for n, v in self.c.items()}, self.cy * s)

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.mat == other.mat and self.c == other.c and self.cy == other.cy

    def __repr__(self):
        parts = [repr(self.mat)] if not self.mat.is_zero() else []
        parts += [f"({v})c({n})" for n, v in sorted(self.c.items())]
        if not self.cy.is_zero():
            parts.append(f"({self.cy})c_y")
        return " + ".join(parts) or "0"

    def to_json(self):
        return {
            "M": self.mat.M,
            "N": self.mat.N,
            "entries": self.mat.to_json(),
            "c": [{"n": n, "v": v.to_json()} for n, v in sorted(self.c.items())],
            "cy": self.cy.to_json(),
        }

    @classmethod
    def from_json(cls, mode: QMode, obj) -> "ExtElement":
        ents = {(e["r"], e["c"]): TorusElement.from_json(mode, e["v"]) for e in obj["entries"]}
        mat = SuperMatrix(mode, obj["M"], obj["N"], ents)
        c = {e["n"]: mode.scalar_from_json(e["v"]) for e in obj["c"]}
        return cls(mat, c, mode.scalar_from_json(obj["cy"]))


def _unit_terms(A: SuperMatrix):
    for (r, c), v in A.entries.items():
        for (m, n), coeff in v.terms.items():
            yield r, c, m, n, coeff


def superbracket_ext(A: ExtElement | SuperMatrix, B: ExtElement | SuperMatrix) -> ExtElement:
    """Centrally extended superbracket; central parts of the inputs are ignored."""
    a = A.mat if isinstance(A, ExtElement) else A
    b = B.mat if isinstance(B, ExtElement) else B
    a._check(b)
    mode = a.mode
    da, db = parity(a), parity(b)
    sign = -1 if da and db else 1
    Mb = a.M
    out = {}
    c = {}
    cy = mode.zero()
    b_by_row = {}
    for r, k, p, s, d in _unit_terms(b):
        b_by_row.setdefault(r, []).append((k, p, s, d))
    a_by_row = {}
    for r, k, m, n, cf in _unit_terms(a):
        a_by_row.setdefault(r, []).append((k, m, n, cf))

    def add(pos, mono, val):
        t = TorusElement(mode, {mono: val})
        out[pos] = out[pos] + t if pos in out else t

    for i, r, m, n, ca in _unit_terms(a):
        # A_{ir} B_{rk}
        for k, p, s, cb in b_by_row.get(r, ()):
            add((i, k), (m + p, n + s), ca * cb * mode.q_pow(n * p))
            if i == k and m + p == 0:
                st = 1 if i < Mb else -1
                coeff = ca * cb * mode.q_pow(n * p) * st
                if mode.lambda_contains(n + s) and m:
                    key = n + s
                    c[key] = c[key] + coeff * m if key in c else coeff * m
                if n + s == 0 and n:
                    cy = cy + coeff * n
    for j, r, p, s, cb in _unit_terms(b):
        # - sign * B_{jr} A_{rk}
        for k, m, n, ca in a_by_row.get(r, ()):
            add((j, k), (p + m, s + n), -(cb * ca * mode.q_pow(s * m)) * sign)
    return ExtElement(SuperMatrix(mode, a.M, a.N, out), c, cy)
