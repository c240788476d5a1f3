"""Integer affine forms ``a*n + b*s + c`` in two symbolic exponents.

Relation tables are written with ordinary integer arithmetic; passing
``Lin.N`` and ``Lin.S`` for the second exponents of the two generators
evaluates a table for all values of those exponents at once.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Lin:
    a: int = 0
    b: int = 0
    c: int = 0

    def _co(self, o):
        return o if isinstance(o, Lin) else Lin(0, 0, o)

    def __add__(self, o):
        o = self._co(o)
        return Lin(self.a + o.a, self.b + o.b, self.c + o.c)

    __radd__ = __add__

    def __neg__(self):
        return Lin(-self.a, -self.b, -self.c)

    def __sub__(self, o):
        return self + (-self._co(o))

    def __rsub__(self, o):
        return self._co(o) - self

    def __mul__(self, k):
        if isinstance(k, Lin):
            if k.a == 0 and k.b == 0:
                k = k.c
            elif self.a == 0 and self.b == 0:
                return k * self.c
            else:
                raise TypeError("product of two non-constant forms is not affine")
        return Lin(self.a * k, self.b * k, self.c * k)

    __rmul__ = __mul__

    def at(self, n: int, s: int) -> int:
        return self.a * n + self.b * s + self.c


Lin.N = Lin(1, 0, 0)
Lin.S = Lin(0, 1, 0)


def evaluate(x, n: int, s: int) -> int:
    return x.at(n, s) if isinstance(x, Lin) else x
