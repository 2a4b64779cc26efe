"""The fixed ambient model for signature (2, 2n+2).

Frame order is pinned globally as p1, p2, e1..en, f1..fn, q1, q2 and all
1-based coordinate indices follow it:

    p1 -> 1, p2 -> 2, e_i -> i+2, f_i -> n+i+2, q1 -> 2n+3, q2 -> 2n+4.

The module provides the Gram matrix of eta, the complex structure J, the
seven-tuple matrix realization of the isotropic-plane stabilizer inside
u(1,n+1), the wedge <-> endomorphism identification and the standard
named subalgebras everything else is assembled from.
"""

from dataclasses import dataclass, field

from .rationals import Q, ZERO, ONE, qof
from .linalg import Matrix, Subspace


class ValidationError(ValueError):
    """A constraint stated by a constructor failed; message names it."""


# ---------------------------------------------------------------------------
# frame / eta / J


@dataclass(frozen=True)
class Ambient:
    n: int
    labels: tuple
    eta: Matrix = field(compare=False)
    J: Matrix = field(compare=False)

    @property
    def dim(self):
        return 2 * self.n + 4


def frame_labels(n):
    return tuple(
        ["p1", "p2"] + ["e%d" % i for i in range(1, n + 1)]
        + ["f%d" % i for i in range(1, n + 1)] + ["q1", "q2"]
    )


def build_ambient(n):
    """Gram matrix of eta and matrix of J in the fixed frame."""
    if n < 0:
        raise ValidationError("n must be nonnegative")
    d = 2 * n + 4
    eta = Matrix.zeros(d, d)
    eta.rows[0][d - 2] = ONE
    eta.rows[1][d - 1] = ONE
    eta.rows[d - 2][0] = ONE
    eta.rows[d - 1][1] = ONE
    for i in range(2, d - 2):
        eta.rows[i][i] = ONE
    j = Matrix.zeros(d, d)
    j.rows[0][1] = -ONE
    j.rows[1][0] = ONE
    for i in range(n):
        j.rows[2 + i][2 + n + i] = -ONE
        j.rows[2 + n + i][2 + i] = ONE
    j.rows[d - 2][d - 1] = -ONE
    j.rows[d - 1][d - 2] = ONE
    return Ambient(n=n, labels=frame_labels(n), eta=eta, J=j)


def basis_vector(n, index):
    """Standard basis vector for a 1-based coordinate index."""
    d = 2 * n + 4
    v = [ZERO] * d
    v[index - 1] = ONE
    return v


def e_index(n, i):
    return i + 2


def f_index(n, i):
    return n + i + 2


def q1_index(n):
    return 2 * n + 3


def q2_index(n):
    return 2 * n + 4


def is_eta_skew(M, eta):
    return (M.transpose() @ eta + eta @ M).is_zero()


def commutes_with_J(M, J):
    return (M @ J - J @ M).is_zero()


# ---------------------------------------------------------------------------
# seven-tuple realization of u(1,n+1)_{<p1,p2>}


@dataclass
class SevenTuple:
    """(a1, a2, B, C, z1, z2, c) with B in so(n), C symmetric, z in Q^n."""

    n: int
    a1: object = 0
    a2: object = 0
    B: Matrix = None
    C: Matrix = None
    z1: list = None
    z2: list = None
    c: object = 0

    def __post_init__(self):
        n = self.n
        self.a1 = qof(self.a1)
        self.a2 = qof(self.a2)
        self.c = qof(self.c)
        self.B = self.B if self.B is not None else Matrix.zeros(n, n)
        self.C = self.C if self.C is not None else Matrix.zeros(n, n)
        self.z1 = [qof(x) for x in (self.z1 if self.z1 is not None else [0] * n)]
        self.z2 = [qof(x) for x in (self.z2 if self.z2 is not None else [0] * n)]
        if self.B.nrows != n or self.B.ncols != n or self.C.nrows != n or self.C.ncols != n:
            raise ValidationError("B, C must be n x n")
        if len(self.z1) != n or len(self.z2) != n:
            raise ValidationError("z1, z2 must have length n")

    def block_constraints_ok(self):
        """B in so(n) and C symmetric (the u(n)-block conditions)."""
        return (self.B + self.B.transpose()).is_zero() and (self.C - self.C.transpose()).is_zero()


def seven_tuple_to_matrix(t):
    """The block matrix of (a1,a2,B,C,z1,z2,c) in the fixed frame."""
    n = t.n
    d = 2 * n + 4
    M = Matrix.zeros(d, d)
    a1, a2, c = t.a1, t.a2, t.c
    M.rows[0][0] = a1
    M.rows[0][1] = -a2
    M.rows[1][0] = a2
    M.rows[1][1] = a1
    for j in range(n):
        M.rows[0][2 + j] = -t.z1[j]
        M.rows[0][2 + n + j] = -t.z2[j]
        M.rows[1][2 + j] = t.z2[j]
        M.rows[1][2 + n + j] = -t.z1[j]
    M.rows[0][d - 1] = -c
    M.rows[1][d - 2] = c
    for i in range(n):
        for j in range(n):
            M.rows[2 + i][2 + j] = t.B[i, j]
            M.rows[2 + i][2 + n + j] = -t.C[i, j]
            M.rows[2 + n + i][2 + j] = t.C[i, j]
            M.rows[2 + n + i][2 + n + j] = t.B[i, j]
        M.rows[2 + i][d - 2] = t.z1[i]
        M.rows[2 + i][d - 1] = -t.z2[i]
        M.rows[2 + n + i][d - 2] = t.z2[i]
        M.rows[2 + n + i][d - 1] = t.z1[i]
    M.rows[d - 2][d - 2] = -a1
    M.rows[d - 2][d - 1] = -a2
    M.rows[d - 1][d - 2] = a2
    M.rows[d - 1][d - 1] = -a1
    return M


def matrix_to_seven_tuple(M, n):
    """Inverse of seven_tuple_to_matrix; None if M is not of the block form."""
    t = SevenTuple(
        n=n,
        a1=M[0, 0],
        a2=M[1, 0],
        B=Matrix([[M[2 + i, 2 + j] for j in range(n)] for i in range(n)]) if n else Matrix([]),
        C=Matrix([[M[2 + n + i, 2 + j] for j in range(n)] for i in range(n)]) if n else Matrix([]),
        z1=[M[2 + i, 2 * n + 2] for i in range(n)],
        z2=[M[2 + n + i, 2 * n + 2] for i in range(n)],
        c=M[1, 2 * n + 2],
    )
    if seven_tuple_to_matrix(t) == M:
        return t
    return None


def tuple_bracket(x, y):
    """Bracket through the matrix commutator, back as a seven-tuple."""
    n = x.n
    m = seven_tuple_to_matrix(x) @ seven_tuple_to_matrix(y) - seven_tuple_to_matrix(y) @ seven_tuple_to_matrix(x)
    t = matrix_to_seven_tuple(m, n)
    if t is None:
        raise ValidationError("bracket left the seven-tuple algebra (inputs not in u(1,n+1)_{<p1,p2>}?)")
    return t


# ---------------------------------------------------------------------------
# wedge square and its identification with so(2, 2n+2)


def wedge_pairs(d):
    """Ordered basis (a, b), a < b, 1-based, of the wedge square."""
    return [(a, b) for a in range(1, d + 1) for b in range(a + 1, d + 1)]


def wedge_index_map(d):
    return {ab: i for i, ab in enumerate(wedge_pairs(d))}


def wedge_endo(u, v, eta):
    """Endomorphism w -> eta(u,w) v - eta(v,w) u."""
    eu = eta.mul_vector(list(u))
    ev = eta.mul_vector(list(v))
    d = len(u)
    M = Matrix.zeros(d, d)
    for i in range(d):
        vi, ui = qof(v[i]), qof(u[i])
        for j in range(d):
            M.rows[i][j] = vi * eu[j] - ui * ev[j]
    return M


class WedgeCalculus:
    """Cached wedge basis <-> endomorphism translation for one ambient."""

    def __init__(self, ambient):
        self.ambient = ambient
        d = ambient.dim
        self.pairs = wedge_pairs(d)
        self.index = {ab: i for i, ab in enumerate(self.pairs)}
        self.basis_endos = []
        cols = []
        for (a, b) in self.pairs:
            m = wedge_endo(basis_vector(ambient.n, a), basis_vector(ambient.n, b), ambient.eta)
            self.basis_endos.append(m)
            cols.append(m.flatten())
        # rows of `cols` live in Q^(d*d); solve coords by echelon data
        self._span = Subspace(d * d, cols)
        self._coeff_rows = cols
        piv = self._span.pivots
        P = Matrix([[cols[i][p] for p in piv] for i in range(len(cols))])
        Pinv = P.inverse()
        # row i of Pinv expresses echelon row i in the wedge basis
        self._ech_to_wedge = Pinv.rows

    def endo_of_wedge_coords(self, coords):
        d = self.ambient.dim
        M = Matrix.zeros(d, d)
        for c, base in zip(coords, self.basis_endos):
            c = qof(c)
            if c != 0:
                M = M + base.scale(c)
        return M

    def wedge_coords_of_endo(self, M):
        """Coordinates on the wedge basis; raises if M is not eta-skew."""
        if not is_eta_skew(M, self.ambient.eta):
            raise ValidationError("endomorphism is not eta-skew")
        c_ech = self._span.coords_of(M.flatten())
        if c_ech is None:
            raise ValidationError("endomorphism not in the wedge image")
        k = len(self._coeff_rows)
        out = [ZERO] * k
        for i, c in enumerate(c_ech):
            if c:
                row = self._ech_to_wedge[i]
                for j in range(k):
                    if row[j]:
                        out[j] = out[j] + c * row[j]
        return out

    def eta_wedge_pairing(self, x, y):
        """eta^eta on wedge coordinates: <a^b, c^d> = eta(a,c)eta(b,d) - eta(a,d)eta(b,c)."""
        eta = self.ambient.eta
        total = ZERO
        for i, (a, b) in enumerate(self.pairs):
            xi = qof(x[i])
            if xi == 0:
                continue
            for j, (c, d) in enumerate(self.pairs):
                yj = qof(y[j])
                if yj == 0:
                    continue
                val = eta[a - 1, c - 1] * eta[b - 1, d - 1] - eta[a - 1, d - 1] * eta[b - 1, c - 1]
                if val:
                    total = total + xi * yj * val
        return total


_wedge_cache = {}


def wedge_calculus(n):
    if n not in _wedge_cache:
        _wedge_cache[n] = WedgeCalculus(build_ambient(n))
    return _wedge_cache[n]


# ---------------------------------------------------------------------------
# standard subalgebras


def _so_basis(size):
    """E_ij - E_ji, i < j."""
    out = []
    for i in range(size):
        for j in range(i + 1, size):
            m = Matrix.zeros(size, size)
            m.rows[i][j] = ONE
            m.rows[j][i] = -ONE
            out.append(m)
    return out


def _sym_basis(size, traceless=False):
    out = []
    for i in range(size):
        for j in range(i + 1, size):
            m = Matrix.zeros(size, size)
            m.rows[i][j] = ONE
            m.rows[j][i] = ONE
            out.append(m)
    if traceless:
        for i in range(size - 1):
            m = Matrix.zeros(size, size)
            m.rows[i][i] = ONE
            m.rows[i + 1][i + 1] = -ONE
            out.append(m)
    else:
        for i in range(size):
            m = Matrix.zeros(size, size)
            m.rows[i][i] = ONE
            out.append(m)
    return out


def _embed(n, small, lo):
    """Place a (hi-lo+1)-sized block at rows/cols lo..hi of an n x n matrix."""
    m = Matrix.zeros(n, n)
    s = small.nrows
    for i in range(s):
        for j in range(s):
            m.rows[lo - 1 + i][lo - 1 + j] = small[i, j]
    return m


def j_block(n, lo, hi):
    """J_{lo..hi}: C = identity on the lo..hi block."""
    c = Matrix.zeros(n, n)
    for i in range(lo - 1, hi):
        c.rows[i][i] = ONE
    return SevenTuple(n=n, C=c)


def standard_subalgebra(tag, n, lo=None, hi=None, m=None):
    """Bases of the named subalgebras of u(1,n+1)_{<p1,p2>}.

    Returns a list of SevenTuple.  Tags: A1, A2, tildeA2 (needs m), N1,
    N2 (optional lo..hi range), C, u, su (optional lo..hi block),
    sod (needs lo..hi), J (needs lo..hi), I0, full, su_full.
    """
    if n < 0:
        raise ValidationError("n must be nonnegative")

    def rng(default_lo=1, default_hi=n):
        a = default_lo if lo is None else lo
        b = default_hi if hi is None else hi
        if not (1 <= a and b <= n and (a <= b or b == a - 1)):
            raise ValidationError("invalid block range %s..%s for n=%d" % (a, b, n))
        return a, b

    if tag == "A1":
        return [SevenTuple(n=n, a1=1)]
    if tag == "A2":
        return [SevenTuple(n=n, a2=1)]
    if tag == "tildeA2":
        if m is None or not 0 <= m <= n:
            raise ValidationError("tildeA2 requires 0 <= m <= n")
        t = j_block(n, m + 1, n) if m < n else SevenTuple(n=n)
        return [SevenTuple(n=n, a2=1, C=t.C)]
    if tag == "N1":
        a, b = rng()
        out = []
        for i in range(a, b + 1):
            z = [ZERO] * n
            z[i - 1] = ONE
            out.append(SevenTuple(n=n, z1=z))
        return out
    if tag == "N2":
        a, b = rng()
        out = []
        for i in range(a, b + 1):
            z = [ZERO] * n
            z[i - 1] = ONE
            out.append(SevenTuple(n=n, z2=z))
        return out
    if tag == "C":
        return [SevenTuple(n=n, c=1)]
    if tag in ("u", "su"):
        a, b = rng()
        size = b - a + 1
        out = [SevenTuple(n=n, B=_embed(n, bm, a)) for bm in _so_basis(size)]
        out += [SevenTuple(n=n, C=_embed(n, cm, a)) for cm in _sym_basis(size, traceless=(tag == "su"))]
        return out
    if tag == "sod":
        a, b = rng()
        size = b - a + 1
        return [SevenTuple(n=n, B=_embed(n, bm, a)) for bm in _so_basis(size)]
    if tag == "J":
        a, b = rng()
        return [j_block(n, a, b)]
    if tag == "I0":
        c = Matrix.zeros(n, n)
        for i in range(n):
            c.rows[i][i] = Q(2, n + 2)
        return [SevenTuple(n=n, a2=Q(-n, n + 2), C=c)]
    if tag == "full":
        out = standard_subalgebra("A1", n) + standard_subalgebra("A2", n)
        if n:
            out += standard_subalgebra("u", n)
            out += standard_subalgebra("N1", n) + standard_subalgebra("N2", n)
        out += standard_subalgebra("C", n)
        return out
    if tag == "su_full":
        out = standard_subalgebra("A1", n)
        if n:
            out += standard_subalgebra("su", n)
            out += standard_subalgebra("I0", n)
            out += standard_subalgebra("N1", n) + standard_subalgebra("N2", n)
        out += standard_subalgebra("C", n)
        return out
    raise ValidationError("unknown subalgebra tag %r" % (tag,))


def congruence_signature(gram):
    """(negatives, zeros, positives) of a symmetric matrix, by exact
    congruence diagonalization (Lagrange's method)."""
    d = gram.nrows
    a = gram.copy()
    p = Matrix.identity(d)
    i = 0
    while i < d:
        if a[i, i] == 0:
            # look for a nonzero diagonal entry below, else a symmetric pair
            hit = None
            for k in range(i + 1, d):
                if a[k, k] != 0:
                    hit = k
                    break
            if hit is not None:
                _congr_swap(a, p, i, hit)
            else:
                pair = None
                for k in range(i, d):
                    for l in range(k + 1, d):
                        if a[k, l] != 0:
                            pair = (k, l)
                            break
                    if pair:
                        break
                if pair is None:
                    break  # remaining block is zero
                k, l = pair
                _congr_addrow(a, p, k, l, ONE)  # row_k += row_l makes a[k,k] = 2 a[k,l]
                if k != i:
                    _congr_swap(a, p, i, k)
        piv = a[i, i]
        for k in range(i + 1, d):
            if a[k, i] != 0:
                _congr_addrow(a, p, k, i, -a[k, i] / piv)
        i += 1
    neg = sum(1 for i in range(d) if a[i, i] < 0)
    pos = sum(1 for i in range(d) if a[i, i] > 0)
    return neg, d - neg - pos, pos


def _congr_swap(a, p, i, j):
    a.rows[i], a.rows[j] = a.rows[j], a.rows[i]
    for r in a.rows:
        r[i], r[j] = r[j], r[i]
    p.rows[i], p.rows[j] = p.rows[j], p.rows[i]


def _congr_addrow(a, p, i, j, f):
    a.rows[i] = [x + f * y for x, y in zip(a.rows[i], a.rows[j])]
    for r in a.rows:
        r[i] = r[i] + f * r[j]
    p.rows[i] = [x + f * y for x, y in zip(p.rows[i], p.rows[j])]
