"""Exact rational scalars.

All arithmetic in this package is exact; floats are never accepted.
gmpy2's mpq is used when importable (identical semantics, much faster),
with fractions.Fraction as the portable fallback.  Both normalise to
lowest terms with a positive denominator.
"""

try:
    from gmpy2 import mpq as Q
except ImportError:
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)


def qof(x):
    """Coerce an int, canonical string ("3", "-3/2") or rational to Q."""
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError("exact scalars only: got %r" % (x,))
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, str):
        return Q(x.strip())
    return Q(x)


def qstr(x):
    """Canonical string form: "p" for integers, "p/q" otherwise."""
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%s/%s" % (x.numerator, x.denominator)
