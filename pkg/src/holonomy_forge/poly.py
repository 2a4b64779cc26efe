"""Sparse multivariate polynomials over exact rationals.

A polynomial in coordinates x^1..x^D is a map from exponent vectors
(tuples of length D) to nonzero rational coefficients.  Zero
coefficients are never stored, so identically-zero intermediate results
vanish from every downstream tensor.
"""

from .rationals import Q, ZERO, qof


class MultiPoly:
    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        self.dim = dim
        self.terms = {}
        if terms:
            for exps, c in terms.items():
                c = Q(c)
                if c != 0:
                    if len(exps) != dim:
                        raise ValueError("exponent vector length %d != dim %d" % (len(exps), dim))
                    self.terms[tuple(exps)] = c

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim)

    @classmethod
    def const(cls, dim, c):
        c = qof(c)
        p = cls(dim)
        if c != 0:
            p.terms[(0,) * dim] = c
        return p

    @classmethod
    def var(cls, dim, i, power=1, coeff=1):
        """coeff * (x^i)^power with 1-based coordinate index i."""
        if not 1 <= i <= dim:
            raise ValueError("coordinate index %d out of range 1..%d" % (i, dim))
        e = [0] * dim
        e[i - 1] = power
        return cls(dim, {tuple(e): qof(coeff)})

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def variables(self):
        """Sorted 1-based indices of coordinates that actually occur."""
        seen = set()
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    seen.add(i + 1)
        return sorted(seen)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        r = MultiPoly(self.dim)
        r.terms = out
        return r

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, ZERO) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        r = MultiPoly(self.dim)
        r.terms = out
        return r

    def __neg__(self):
        r = MultiPoly(self.dim)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            a, b = self.terms, other.terms
            if len(a) > len(b):
                a, b = b, a
            out = {}
            for ea, ca in a.items():
                for eb, cb in b.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    v = out.get(e, ZERO) + ca * cb
                    if v:
                        out[e] = v
                    else:
                        out.pop(e, None)
            r = MultiPoly(self.dim)
            r.terms = out
            return r
        c = qof(other)
        if c == 0:
            return MultiPoly(self.dim)
        r = MultiPoly(self.dim)
        r.terms = {e: v * c for e, v in self.terms.items()}
        return r

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            return other
        return MultiPoly.const(self.dim, other)

    # -- calculus -----------------------------------------------------

    def partial(self, var):
        """Exact partial derivative with respect to x^var (1-based)."""
        if not 1 <= var <= self.dim:
            raise ValueError("coordinate index %d out of range 1..%d" % (var, self.dim))
        k = var - 1
        out = {}
        for e, c in self.terms.items():
            p = e[k]
            if p == 0:
                continue
            e2 = e[:k] + (p - 1,) + e[k + 1:]
            v = out.get(e2, ZERO) + c * p
            if v:
                out[e2] = v
            else:
                out.pop(e2, None)
        r = MultiPoly(self.dim)
        r.terms = out
        return r

    def const_term(self):
        """Value at the origin."""
        return self.terms.get((0,) * self.dim, ZERO)

    def eval(self, point):
        """Evaluate at a list of D rationals."""
        if len(point) != self.dim:
            raise ValueError("point length mismatch")
        point = [qof(x) for x in point]
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, p in zip(point, e):
                if p:
                    v = v * x ** p
            total = total + v
        return total

    def __repr__(self):
        if not self.terms:
            return "MultiPoly<0>"
        bits = []
        for e in sorted(self.terms):
            mono = "*".join("x%d^%d" % (i + 1, p) for i, p in enumerate(e) if p)
            bits.append("%s%s%s" % (self.terms[e], "*" if mono else "", mono))
        return "MultiPoly<" + " + ".join(bits) + ">"
