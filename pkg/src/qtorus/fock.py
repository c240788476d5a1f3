"""Boson-fermion Fock module and the quadratic operators acting on it.

A canonical basis state is ``B * F * vac`` where ``B`` is a sorted tuple of
bosonic creators ``(kind, i, mode)`` (kind 0 is ``a``, kind 1 is ``a*``) and
``F`` a strictly decreasing tuple of negative fermion modes, the product
``e(F[0]) e(F[1]) ... vac``.  Bosonic creators commute with each other, so
``B`` is a multiset.

Vectors are kept in a flat form: a dict from ``(state, mono)`` to a rational,
where ``mono = (a, b, c, k)`` stands for ``q^a U^b V^c eps^k``.  ``U`` and
``V`` are the formal values of ``q^-n`` and ``q^-s`` for the second
exponents of the two operators in a bracket, which lets one pass check an
identity for every ``n`` and ``s`` at once.  ``eps`` is the value of ``e(0)``
on the vacuum, ``eps^2 = -1/2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .linform import Lin
from .scalar_field import QMode, Scalar

A, ASTAR, E = 0, 1, 2
KIND_NAMES = {A: "a", ASTAR: "a*", E: "e"}
_KIND_CODES = {v: k for k, v in KIND_NAMES.items()}
HALF = mpq(1, 2)
NEG_HALF = mpq(-1, 2)
ONE_MONO = (0, 0, 0, 0)
VACUUM = ((), ())


@dataclass(frozen=True)
class ModeFactor:
    """A single generator ``a_i(mode)``, ``a*_i(mode)`` or ``e(mode)``."""

    kind: str
    index: int = 0
    mode: int = 0

    @property
    def code(self):
        return (_KIND_CODES[self.kind], self.index, self.mode)

    def is_creator(self) -> bool:
        return is_creator(self.code)

    def is_annihilator(self) -> bool:
        return is_annihilator(self.code)


def is_creator(f) -> bool:
    k, _, x = f
    return x <= 0 if k == A else x < 0


def is_annihilator(f) -> bool:
    k, _, x = f
    return x > 0 if k in (A, E) else x >= 0


def theta(n: int):
    if n > 0:
        return mpq(1)
    return HALF if n == 0 else mpq(0)


def state_degree(state) -> int:
    return len(state[0]) + len(state[1])


def state_width(state) -> int:
    """Largest |mode| in a state, at least 0."""
    b, f = state
    w = 0
    for _, _, x in b:
        w = max(w, -x)
    for x in f:
        w = max(w, -x)
    return w


# ---------------------------------------------------------------------------
# single generators on basis states
# ---------------------------------------------------------------------------

def _insert_boson(bos, letter):
    lst = list(bos)
    lst.append(letter)
    lst.sort()
    return tuple(lst)


def _remove_boson(bos, letter):
    lst = list(bos)
    lst.remove(letter)
    return tuple(lst)


@lru_cache(maxsize=None)
def act_basis(f, state, tau: int):
    """Action of one generator on a basis state.

    Returns a tuple of ``(state, coeff, k)`` meaning ``coeff * eps^k * state``.
    """
    kind, i, x = f
    bos, fer = state
    if kind == A or kind == ASTAR:
        if is_creator(f):
            return ((( _insert_boson(bos, f), fer), 1, 0),)
        partner = (1 - kind, i, -x)
        cnt = bos.count(partner)
        if not cnt:
            return ()
        # [a_i(x), a*_i(-x)] = -1 and [a*_i(x), a_i(-x)] = +1
        c = -cnt if kind == A else cnt
        return (((_remove_boson(bos, partner), fer), c, 0),)
    sign = 1 if (len(bos) % 2 == 0 or tau == -1) else -1  # (-tau)^|B|
    if x < 0:
        if x in fer:
            return ()
        pos = sum(1 for y in fer if y > x)
        nf = tuple(sorted(fer + (x,), reverse=True))
        return (((bos, nf), sign * (-1) ** pos, 0),)
    if x > 0:
        if -x not in fer:
            return ()
        pos = fer.index(-x)
        nf = fer[:pos] + fer[pos + 1:]
        return (((bos, nf), -sign * (-1) ** pos, 0),)
    return ((state, sign * (-1) ** len(fer), 1),)


def _act_terms(f, terms, tau):
    out = {}
    for st, c, k in terms:
        for st2, c2, k2 in act_basis(f, st, tau):
            cc = c * c2
            kk = k + k2
            if kk == 2:
                cc = cc * NEG_HALF
                kk = 0
            key = (st2, kk)
            out[key] = out.get(key, 0) + cc
    return tuple((st, c, k) for (st, k), c in out.items() if c)


@lru_cache(maxsize=None)
def act_word(word: tuple, state, tau: int):
    """Apply ``word[0] word[1] ... word[-1]`` (rightmost first) to a basis state."""
    terms = ((state, 1, 0),)
    for f in reversed(word):
        terms = _act_terms(f, terms, tau)
        if not terms:
            break
    return terms


def _combine(*parts):
    """Sum of ``(scale, terms)`` pairs, merged on (state, k)."""
    out = {}
    for scale, terms in parts:
        for st, c, k in terms:
            key = (st, k)
            out[key] = out.get(key, 0) + scale * c
    return tuple((st, c, k) for (st, k), c in out.items() if c)


# ---------------------------------------------------------------------------
# normal ordered pairs and the quadratic operators
# ---------------------------------------------------------------------------

FAMILY_FACTORS = {
    # family: (kind of left factor, kind of right factor)
    "f": (A, ASTAR),
    "g": (A, A),
    "h": (ASTAR, ASTAR),
    "e": (A, E),
    "e*": (ASTAR, E),
    "e0": (E, E),
}


def normal_pair(u, v, state, tau):
    """``:u v:`` applied to a basis state, following the mode-ordering rule."""
    ku, kv = u[0], v[0]
    if (ku == E) != (kv == E):
        # mixed pairs are already normal ordered
        return act_word((u, v), state, tau)
    x, y = u[2], v[2]
    if y > x:
        return act_word((u, v), state, tau)
    fermionic = ku == E
    if y < x:
        return _combine((-1 if fermionic else 1, act_word((v, u), state, tau)))
    if fermionic:
        # u and v are both e(x): the antisymmetrised square vanishes
        return ()
    return _combine((HALF, act_word((u, v), state, tau)), (HALF, act_word((v, u), state, tau)))


def pair_factors(family: str, i: int, j: int, m: int, t: int):
    ku, kv = FAMILY_FACTORS[family]
    iu = i if ku != E else 0
    if family in ("e", "e*"):
        iv = 0
    elif family == "e0":
        iu = iv = 0
    else:
        iv = j
    return (ku, iu, m - t), (kv, iv, t)


@lru_cache(maxsize=None)
def quad_basis(family: str, i: int, j: int, m: int, state, tau: int, extra: int = 0):
    """Terms ``(t, state, coeff, k)`` of ``sum_t :u(m-t) v(t):`` on a basis state.

    The first factor to act has mode ``max(m-t, t)`` (or ``t`` for the mixed
    families); it kills the state unless that mode is at most the width of
    the state, which bounds ``t`` to ``[m - W, W]``.  ``extra`` widens the
    window, for truncation-stability checks.
    """
    W = state_width(state) + extra
    out = []
    for t in range(m - W, W + 1):
        u, v = pair_factors(family, i, j, m, t)
        for st, c, k in normal_pair(u, v, state, tau):
            out.append((t, st, c, k))
    return tuple(out)


# ---------------------------------------------------------------------------
# flat vectors
# ---------------------------------------------------------------------------

def _reduce_mono(mono, d):
    if d is None:
        return mono
    a, b, c, k = mono
    return (a % d, b % d, c % d, k)


def flat_basis(state, mono=ONE_MONO, coeff=1):
    return {(state, mono): mpq(coeff)}


def flat_add(x: dict, y: dict, scale=1, d=None) -> dict:
    out = dict(x)
    for key, c in y.items():
        v = out.get(key, 0) + scale * c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def flat_scale_mono(x: dict, mono, coeff=1, d=None) -> dict:
    """Multiply by ``coeff * q^a U^b V^c eps^k``."""
    a, b, c, k = mono
    out = {}
    for (st, (a1, b1, c1, k1)), v in x.items():
        kk = k1 + k
        w = v * coeff
        if kk == 2:
            w = w * NEG_HALF
            kk = 0
        key = (st, _reduce_mono((a1 + a, b1 + b, c1 + c, kk), d))
        w = out.get(key, 0) + w
        if w:
            out[key] = w
        else:
            out.pop(key, None)
    return out


def _accumulate(out, st, mono, c):
    key = (st, mono)
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def flat_apply_word(word: tuple, x: dict, tau: int, d=None) -> dict:
    out = {}
    for (st, (a, b, c, k)), v in x.items():
        for st2, c2, k2 in act_word(word, st, tau):
            w = v * c2
            kk = k + k2
            if kk == 2:
                w = w * NEG_HALF
                kk = 0
            _accumulate(out, st2, (a, b, c, kk), w)
    return out


def flat_apply_quad(family: str, i: int, j: int, m: int, second, x: dict, tau: int,
                    d=None, extra: int = 0) -> dict:
    """Apply ``sum_t q^(-second*t) :u(m-t) v(t):`` to a flat vector.

    ``second`` is an int or a :class:`Lin` ``a*n + b*s + c``; then
    ``q^(-second*t) = q^(-c t) U^(a t) V^(b t)``.
    """
    if isinstance(second, Lin):
        la, lb, lc = second.a, second.b, second.c
    else:
        la, lb, lc = 0, 0, second
    out = {}
    for (st, (a, b, c, k)), v in x.items():
        for t, st2, c2, k2 in quad_basis(family, i, j, m, st, tau, extra):
            w = v * c2
            kk = k + k2
            if kk == 2:
                w = w * NEG_HALF
                kk = 0
            mono = _reduce_mono((a - lc * t, b + la * t, c + lb * t, kk), d)
            _accumulate(out, st2, mono, w)
    return out


def lin_mono(qexp) -> tuple:
    """Monomial of ``q^qexp`` where ``qexp = a*n + b*s + c`` (U = q^-n, V = q^-s)."""
    if isinstance(qexp, Lin):
        return (qexp.c, -qexp.a, -qexp.b, 0)
    return (qexp, 0, 0, 0)


def flat_states(x: dict) -> set:
    return {st for st, _ in x}


def flat_is_zero(x: dict, mode: QMode | None = None) -> bool:
    """Zero test; in root-of-unity mode exponents are reduced and q taken mod Phi_d."""
    if not x:
        return True
    if mode is None or mode.kind == "generic":
        return False
    d = mode.order
    groups = {}
    for (st, (a, b, c, k)), v in x.items():
        g = groups.setdefault((st, b % d, c % d, k), {})
        g[a % d] = g.get(a % d, 0) + v
    return all(mode.k_from_laurent(g).is_zero() for g in groups.values())


def specialize(x: dict, mode: QMode, n: int = 0, s: int = 0) -> "FockVector":
    """Substitute ``U = q^-n``, ``V = q^-s`` and pass to Scalar coefficients."""
    polys = {}
    for (st, (a, b, c, k)), v in x.items():
        p = polys.setdefault((st, k), {})
        e = a - b * n - c * s
        p[e] = p.get(e, 0) + v
    terms = {}
    for (st, k), p in polys.items():
        val = mode.k_from_laurent(p)
        sc = Scalar(val) if k == 0 else Scalar(mode.k_const(0), val)
        terms[st] = terms[st] + sc if st in terms else sc
    return FockVector(mode, terms)


def scalar_of_poly(poly: dict, mode: QMode, n: int = 0, s: int = 0) -> Scalar:
    """Value of ``{(a, b, c, k): coeff}`` at ``U = q^-n``, ``V = q^-s``."""
    even, odd = {}, {}
    for (a, b, c, k), v in poly.items():
        tgt = odd if k else even
        e = a - b * n - c * s
        tgt[e] = tgt.get(e, 0) + v
    return Scalar(mode.k_from_laurent(even), mode.k_from_laurent(odd) if odd else None)


# ---------------------------------------------------------------------------
# public vectors with Scalar coefficients
# ---------------------------------------------------------------------------

class FockVector:
    """Finite combination of canonical basis states with Scalar coefficients."""

    __slots__ = ("mode", "terms")

    def __init__(self, mode: QMode, terms=None):
        self.mode = mode
        self.terms = {st: c for st, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def vacuum(cls, mode: QMode, coeff=None):
        return cls(mode, {VACUUM: coeff if coeff is not None else mode.one()})

    @classmethod
    def basis(cls, mode: QMode, state):
        return cls(mode, {state: mode.one()})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for st, c in other.terms.items():
            out[st] = out[st] + c if st in out else c
        return FockVector(self.mode, out)

    def __neg__(self):
        return FockVector(self.mode, {st: -c for st, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Scalar):
        return FockVector(self.mode, {st: v * c for st, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})|{state_label(st)}>" for st, c in sorted(self.terms.items()))

    def to_json(self):
        out = []
        for (bos, fer), c in sorted(self.terms.items()):
            out.append({
                "boson": [{"kind": KIND_NAMES[k], "i": i, "mode": x} for k, i, x in bos],
                "fermion": list(fer),
                "c": c.to_json(),
            })
        return {"terms": out}

    @classmethod
    def from_json(cls, mode: QMode, obj):
        terms = {}
        for t in obj["terms"]:
            bos = tuple(sorted((_KIND_CODES[b["kind"]], b["i"], b["mode"]) for b in t["boson"]))
            fer = tuple(sorted(t["fermion"], reverse=True))
            terms[(bos, fer)] = mode.scalar_from_json(t["c"])
        return cls(mode, terms)


def state_label(state) -> str:
    bos, fer = state
    parts = [f"{KIND_NAMES[k]}{i}({x})" for k, i, x in bos] + [f"e({x})" for x in fer]
    return " ".join(parts) or "vac"


def make_state(bosons=(), fermions=()):
    """Canonical state from creator factors; returns ``(sign, state)`` or ``(0, None)``.

    ``bosons`` holds ``(kind, i, mode)`` with kind ``"a"`` or ``"a*"``;
    ``fermions`` lists negative modes in the order they are written.
    """
    bos = []
    for k, i, x in bosons:
        f = (_KIND_CODES[k], i, x)
        if not is_creator(f):
            raise ValueError(f"{k}{i}({x}) is not a creation operator")
        bos.append(f)
    terms = ((VACUUM, 1, 0),)
    for x in reversed(list(fermions)):
        if x >= 0:
            raise ValueError(f"e({x}) is not a creation operator")
        terms = _act_terms((E, 0, x), terms, 1)
    if not terms:
        return 0, None
    (st, c, _), = terms
    return c, (tuple(sorted(bos)), st[1])


def _k_scalar(mode, c, k):
    return mode.scalar(0, c) if k else mode.scalar(c)


def apply_factor(f: ModeFactor, v: FockVector, tau: int) -> FockVector:
    code = f.code if isinstance(f, ModeFactor) else f
    mode = v.mode
    out = FockVector(mode)
    for st, c in v.terms.items():
        part = {st2: _k_scalar(mode, c2, k2) * c for st2, c2, k2 in act_basis(code, st, tau)}
        out = out + FockVector(mode, part)
    return out


def apply_word(word, v: FockVector, tau: int) -> FockVector:
    """Apply a product of factors, rightmost first."""
    for f in reversed(list(word)):
        v = apply_factor(f, v, tau)
    return v


@dataclass(frozen=True)
class QuadOp:
    family: str
    i: int = 0
    j: int = 0
    m: int = 0
    n: int = 0
    shifted: bool = False

    def __post_init__(self):
        if self.family not in FAMILY_FACTORS:
            raise ValueError(f"unknown operator family {self.family!r}")


def shift_scalar(op: QuadOp, mode: QMode) -> Scalar:
    """Scalar added by the shifted versions of the f and e0 operators."""
    if not op.shifted or op.m != 0 or mode.lambda_contains(op.n):
        return mode.zero()
    if op.family == "f" and op.i == op.j or op.family == "e0":
        qn = mode.q_pow(op.n)
        return (qn + mode.one()) / (qn - mode.one()) * mode.scalar(mpq(1, 2))
    return mode.zero()


def apply_quadratic(op: QuadOp, v: FockVector, tau: int, extra: int = 0) -> FockVector:
    """Apply ``sum_s q^(-n s) :u(m-s) v(s):`` (plus the shift, if any) to ``v``."""
    mode = v.mode
    out = {}
    for st, c in v.terms.items():
        flat = {}
        for t, st2, c2, k2 in quad_basis(op.family, op.i, op.j, op.m, st, tau, extra):
            _accumulate(flat, st2, (-op.n * t, 0, 0, k2), mpq(c2))
        for st2, c2 in specialize(flat, mode).terms.items():
            w = c2 * c
            out[st2] = out[st2] + w if st2 in out else w
    res = FockVector(mode, out)
    sh = shift_scalar(op, mode)
    if not sh.is_zero():
        res = res + v.scale(sh)
    return res


# ---------------------------------------------------------------------------
# the homomorphism on generators
# ---------------------------------------------------------------------------

TAU_FAMILIES = frozenset({"g", "h", "e"})
SHIFTED_FAMILIES = frozenset({"f", "e0"})


def pi_prefactor(family: str, tau: int) -> int:
    return tau if family in TAU_FAMILIES else 1


def pi(g, tau: int):
    """Image of a generator: ``(prefactor, QuadOp)``.

    ``g`` is a :class:`~qtorus.b0n.GeneratorRef`, or the string ``"c_y"``
    which maps to the scalar 0 (returned as ``(0, None)``).  The images of
    the c(n) are solved for by :func:`qtorus.fock_verify.verify_theorem`.
    """
    if isinstance(g, str):
        if g == "c_y":
            return 0, None
        raise ValueError(f"unknown central generator {g!r}")
    return pi_prefactor(g.family, tau), QuadOp(g.family, g.i, g.j, g.m, g.n,
                                               shifted=g.family in SHIFTED_FAMILIES)


# ---------------------------------------------------------------------------
# the theta-sum identity
# ---------------------------------------------------------------------------

def id236_lhs(x: int, m: int, mode: QMode) -> Scalar:
    """``sum_t q^(-x t) (theta(-2t) - theta(-2m-2t))``; only finitely many t contribute."""
    lo, hi = min(0, -m), max(0, -m)
    total = mode.zero()
    for t in range(lo - 1, hi + 2):
        w = theta(-2 * t) - theta(-2 * m - 2 * t)
        if w:
            total = total + mode.q_pow(-x * t) * mode.scalar(w)
    return total


def id236_rhs(x: int, m: int, mode: QMode) -> Scalar:
    return (mode.q_pow(x) + mode.one()) * mode.q_ratio(m, x) * mode.scalar(mpq(1, 2))


def check_identity_236(x: int, m: int, mode: QMode) -> bool:
    return id236_lhs(x, m, mode) == id236_rhs(x, m, mode)


# ---------------------------------------------------------------------------
# test states
# ---------------------------------------------------------------------------

def creator_letters(N: int, window: int):
    """Bosonic and fermionic creators with modes in ``[-window, 0]``."""
    bos = [(A, i, x) for i in range(1, N + 1) for x in range(-window, 1)]
    bos += [(ASTAR, i, x) for i in range(1, N + 1) for x in range(-window, 0)]
    fer = list(range(-1, -window - 1, -1))
    return sorted(bos), fer


def test_states(N: int, degree: int, window: int, n_random: int = 0, seed: int = 0,
                random_degree: int | None = None):
    """All canonical states of degree <= ``degree`` with modes in ``[-window, 0]``.

    ``n_random`` further states of degree up to ``random_degree`` are drawn
    with a seeded generator.
    """
    import itertools
    import random

    bos, fer = creator_letters(N, window)
    out = []
    for nf in range(0, min(degree, len(fer)) + 1):
        for F in itertools.combinations(fer, nf):
            Fs = tuple(sorted(F, reverse=True))
            for nb in range(0, degree - nf + 1):
                for B in itertools.combinations_with_replacement(bos, nb):
                    out.append((tuple(B), Fs))
    out.sort(key=lambda st: (state_degree(st), st))
    if n_random:
        rng = random.Random(seed)
        rd = random_degree if random_degree is not None else degree + 2
        seen = set(out)
        extra = []
        tries = 0
        while len(extra) < n_random and tries < 50 * n_random:
            tries += 1
            nb = rng.randint(0, rd)
            nf = rng.randint(0, min(len(fer), rd - nb))
            B = tuple(sorted(rng.choice(bos) for _ in range(nb)))
            F = tuple(sorted(rng.sample(fer, nf), reverse=True))
            st = (B, F)
            if st not in seen:
                seen.add(st)
                extra.append(st)
        out.extend(extra)
    return out
