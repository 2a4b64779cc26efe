"""Exact linear algebra: dense rational matrices, canonical echelon
subspaces and a sparse nullspace solver.

Subspaces are stored in reduced row echelon form with unit pivots, so
two subspaces are equal iff their stored bases are equal.  This is what
makes every "same algebra?" verdict in the package exact and
reproducible.
"""

from .rationals import ZERO, ONE, qof


class Matrix:
    """Dense matrix over exact rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [[qof(x) for x in r] for r in rows]
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged rows")

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, nrows, ncols):
        m = cls.__new__(cls)
        m.rows = [[ZERO] * ncols for _ in range(nrows)]
        return m

    @classmethod
    def identity(cls, d):
        m = cls.zeros(d, d)
        for i in range(d):
            m.rows[i][i] = ONE
        return m

    @classmethod
    def from_flat(cls, vec, nrows, ncols):
        if len(vec) != nrows * ncols:
            raise ValueError("flat vector length mismatch")
        m = cls.__new__(cls)
        m.rows = [[qof(vec[i * ncols + j]) for j in range(ncols)] for i in range(nrows)]
        return m

    # -- shape and access ---------------------------------------------

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self):
        m = Matrix.__new__(Matrix)
        m.rows = [list(r) for r in self.rows]
        return m

    def flatten(self):
        return [x for r in self.rows for x in r]

    def column(self, j):
        return [r[j] for r in self.rows]

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c):
        c = qof(c)
        return Matrix([[a * c for a in r] for r in self.rows])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matmul")
        bt = list(zip(*other.rows))
        out = Matrix.__new__(Matrix)
        out.rows = [[_dot(r, c) for c in bt] for r in self.rows]
        return out

    def mul_vector(self, vec):
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return [_dot(r, vec) for r in self.rows]

    def transpose(self):
        out = Matrix.__new__(Matrix)
        out.rows = [list(c) for c in zip(*self.rows)] if self.rows else []
        return out

    def trace(self):
        return sum((self.rows[i][i] for i in range(min(self.nrows, self.ncols))), ZERO)

    def rank(self):
        r, _ = rref([list(row) for row in self.rows])
        return len(_)

    def inverse(self):
        d = self.nrows
        if d != self.ncols:
            raise ValueError("inverse of non-square matrix")
        aug = [list(r) + [ONE if i == j else ZERO for j in range(d)] for i, r in enumerate(self.rows)]
        red, piv = rref(aug)
        if piv != list(range(d)):
            raise ValueError("matrix is singular")
        return Matrix([r[d:] for r in red])

    def __repr__(self):
        return "Matrix(%r)" % (self.rows,)


def _dot(a, b):
    total = ZERO
    for x, y in zip(a, b):
        if x and y:
            total = total + x * y
    return total


def commutator(a, b):
    return a @ b - b @ a


def rref(rows):
    """In-place-ish reduced row echelon form with unit pivots.

    Returns (rows, pivot_columns); zero rows are dropped.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    pr = 0
    for pc in range(ncols):
        sel = None
        for i in range(pr, nrows):
            if rows[i][pc] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        inv = ONE / rows[pr][pc]
        rows[pr] = [x * inv for x in rows[pr]]
        for i in range(nrows):
            if i != pr and rows[i][pc] != 0:
                f = rows[i][pc]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows[:pr], pivots


def nullspace_dense(rows, ncols):
    """Canonical basis of {v : M v = 0} for a dense row list."""
    sparse = []
    for r in rows:
        d = {j: qof(x) for j, x in enumerate(r) if x != 0}
        if d:
            sparse.append(d)
    return nullspace_sparse(sparse, ncols)


def nullspace_sparse(rows, ncols):
    """Canonical nullspace basis from sparse rows (dicts col -> coeff).

    Gauss-Jordan keeping every pivot row fully reduced; kernel vectors
    then read off directly from the free columns.
    """
    pivots = {}
    for raw in rows:
        row = dict(raw)
        while True:
            hit = None
            for c in row:
                if c in pivots:
                    if hit is None or c < hit:
                        hit = c
            if hit is None:
                break
            coef = row.pop(hit)
            for c2, v2 in pivots[hit].items():
                if c2 == hit:
                    continue
                nv = row.get(c2, ZERO) - coef * v2
                if nv:
                    row[c2] = nv
                else:
                    row.pop(c2, None)
        if not row:
            continue
        p = min(row)
        inv = ONE / row[p]
        row = {c: v * inv for c, v in row.items()}
        for prow in pivots.values():
            coef = prow.get(p)
            if coef:
                for c2, v2 in row.items():
                    nv = prow.get(c2, ZERO) - coef * v2
                    if nv:
                        prow[c2] = nv
                    else:
                        prow.pop(c2, None)
        pivots[p] = row
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [ZERO] * ncols
        vec[fc] = ONE
        for pc, prow in pivots.items():
            if fc in prow:
                vec[pc] = -prow[fc]
        basis.append(vec)
    red, _ = rref(basis)
    return red


class Subspace:
    """Subspace of Q^d held as a canonical reduced-echelon basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient, vectors=()):
        self.ambient = ambient
        rows = []
        for v in vectors:
            if len(v) != ambient:
                raise ValueError("vector length %d != ambient %d" % (len(v), ambient))
            rows.append([qof(x) for x in v])
        red, piv = rref(rows) if rows else ([], [])
        self.basis = [tuple(r) for r in red]
        self.pivots = tuple(piv)

    @classmethod
    def zero(cls, ambient):
        return cls(ambient)

    @classmethod
    def full(cls, ambient):
        return cls(ambient, Matrix.identity(ambient).rows)

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def key(self):
        """Hashable canonical form, usable for dedup."""
        return (self.ambient, tuple(self.basis))

    def contains_vector(self, v):
        return self._residual(v) is None

    def _residual(self, v):
        """None if v in span, else the reduced nonzero remainder."""
        v = [qof(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if any(x != 0 for x in v):
            return v
        return None

    def coords_of(self, v):
        """Coefficients of v in the stored basis, or None."""
        v = [qof(x) for x in v]
        coords = []
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            coords.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if any(x != 0 for x in v):
            return None
        return coords

    def contains(self, other):
        return all(self.contains_vector(v) for v in other.basis)

    def sum(self, other):
        self._check(other)
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other):
        """Zassenhaus block elimination."""
        self._check(other)
        d = self.ambient
        block = []
        for v in self.basis:
            block.append(list(v) + list(v))
        for v in other.basis:
            block.append(list(v) + [ZERO] * d)
        red, _ = rref(block)
        inter = []
        for r in red:
            if all(x == 0 for x in r[:d]):
                tail = r[d:]
                if any(x != 0 for x in tail):
                    inter.append(tail)
        return Subspace(d, inter)

    def orthogonal_complement(self, gram):
        """{v : basis . gram . v = 0} for a symmetric Gram matrix."""
        rows = [gram.transpose().mul_vector(list(b)) for b in self.basis]
        if not rows:
            return Subspace.full(self.ambient)
        return Subspace(self.ambient, nullspace_dense(rows, self.ambient))

    def add_vector(self, v):
        """Return (subspace, grew) with v adjoined."""
        if self.contains_vector(v):
            return self, False
        return Subspace(self.ambient, list(self.basis) + [list(v)]), True

    def _check(self, other):
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch: %d vs %d" % (self.ambient, other.ambient))

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.ambient)


class IncrementalSpan:
    """Row-reduced span that grows one vector at a time.

    Used by the holonomy engine, where most candidate generators are
    already inside the span and must be rejected cheaply.
    """

    def __init__(self, ambient):
        self.ambient = ambient
        self.rows = []     # reduced rows
        self.pivots = []   # pivot column per row

    @property
    def dim(self):
        return len(self.rows)

    def add(self, v):
        """Insert v; returns True if the span grew."""
        v = [qof(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        p = None
        for j, x in enumerate(v):
            if x != 0:
                p = j
                break
        if p is None:
            return False
        inv = ONE / v[p]
        v = [x * inv for x in v]
        for i in range(len(self.rows)):
            c = self.rows[i][p]
            if c:
                self.rows[i] = [a - c * b for a, b in zip(self.rows[i], v)]
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def to_subspace(self):
        return Subspace(self.ambient, self.rows)
