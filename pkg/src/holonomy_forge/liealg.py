"""Generic finite-dimensional matrix Lie algebra computations.

A LieAlgebra is a list of exact matrices in the fixed (2n+4)-frame,
together with the cached flattened span, structure constants, derived
algebra and center.  Closure failures are hard errors carrying the
offending bracket as a witness.
"""

from .rationals import ZERO
from .linalg import Matrix, Subspace, commutator, nullspace_dense
from .ambient import ValidationError, build_ambient, seven_tuple_to_matrix


class NotClosedError(ValidationError):
    """Raised when a basis is not bracket-closed; carries the witness."""

    def __init__(self, i, j, bracket):
        self.witness = (i, j, bracket)
        super().__init__("bracket [b%d, b%d] is not in the span of the basis" % (i, j))


class LieAlgebra:
    def __init__(self, n, basis, tag=None, meta=None, _validated=False):
        self.n = n
        self.dim_ambient = 2 * n + 4
        self.basis = list(basis)
        self.tag = tag
        self.meta = dict(meta or {})
        self.span = Subspace(self.dim_ambient ** 2, [m.flatten() for m in self.basis])
        if self.span.dim != len(self.basis):
            raise ValidationError("basis is linearly dependent")
        self._structure = None
        if not _validated:
            self._check_closure()

    # -- basic structure ------------------------------------------------

    @property
    def dim(self):
        return len(self.basis)

    def contains_matrix(self, M):
        return self.span.contains_vector(M.flatten())

    def coords_of(self, M):
        """Coefficients of M in self.basis, or None."""
        c_span = self.span.coords_of(M.flatten())
        if c_span is None:
            return None
        # span basis is the echelonized one; translate through basis change
        return self._echelon_to_basis(c_span)

    def _echelon_to_basis(self, c_span):
        # coords in echelon rows -> coords in the given basis, via the
        # pivot columns of the flattened basis matrix
        if self.dim == 0:
            return []
        _ = self._pivot_inverse
        vec = [ZERO] * self.dim
        for i, c in enumerate(c_span):
            if c:
                for j, t in enumerate(self._echelon_in_basis[i]):
                    vec[j] = vec[j] + c * t
        return vec

    @property
    def _pivot_inverse(self):
        if not hasattr(self, "_pivinv"):
            piv = self.span.pivots
            P = Matrix([[self.basis[i].flatten()[p] for p in piv] for i in range(self.dim)])
            self._pivinv = P.inverse() if self.dim else None
            # row i of echelon basis = sum_j (Pinv)[?]: solve echelon rows in basis
            ech = []
            for row in self.span.basis:
                target = [row[p] for p in piv]
                coeffs = self._pivinv.transpose().mul_vector(target) if self.dim else []
                ech.append(coeffs)
            self._echelon_in_basis = ech
        return self._pivinv

    def bracket(self, X, Y):
        return commutator(X, Y)

    def structure_constants(self):
        """c[i][j] = coefficients of [b_i, b_j] in the basis."""
        if self._structure is None:
            _ = self._pivot_inverse
            n = self.dim
            table = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    br = commutator(self.basis[i], self.basis[j])
                    coords = self.coords_of(br)
                    if coords is None:
                        raise NotClosedError(i, j, br)
                    table[i][j] = coords
                    table[j][i] = [-x for x in coords]
                table[i][i] = [ZERO] * n
            self._structure = table
        return self._structure

    def _check_closure(self):
        self.structure_constants()

    # -- derived algebra and center --------------------------------------

    def derived_algebra(self):
        vecs = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                vecs.append(commutator(self.basis[i], self.basis[j]).flatten())
        sub = Subspace(self.dim_ambient ** 2, vecs)
        return self._from_flat_subspace(sub, tag=None)

    def center(self):
        """{X in g : [X, b_j] = 0 for all j}."""
        if self.dim == 0:
            return self._from_flat_subspace(Subspace.zero(self.dim_ambient ** 2))
        rows = []
        d2 = self.dim_ambient ** 2
        for j in range(self.dim):
            cols = [commutator(self.basis[i], self.basis[j]).flatten() for i in range(self.dim)]
            for r in range(d2):
                rows.append([cols[i][r] for i in range(self.dim)])
        ker = nullspace_dense(rows, self.dim)
        mats = []
        for coeffs in ker:
            M = Matrix.zeros(self.dim_ambient, self.dim_ambient)
            for c, b in zip(coeffs, self.basis):
                if c:
                    M = M + b.scale(c)
            mats.append(M)
        sub = Subspace(self.dim_ambient ** 2, [m.flatten() for m in mats])
        return self._from_flat_subspace(sub)

    def _from_flat_subspace(self, sub, tag=None):
        d = self.dim_ambient
        mats = [Matrix.from_flat(list(row), d, d) for row in sub.basis]
        out = LieAlgebra.__new__(LieAlgebra)
        out.n = self.n
        out.dim_ambient = d
        out.basis = mats
        out.tag = tag
        out.meta = {}
        out.span = sub
        out._structure = None
        return out

    # -- comparisons ------------------------------------------------------

    def same_span(self, other):
        return self.span == other.span

    def contains_algebra(self, other):
        return self.span.contains(other.span)

    def __repr__(self):
        return "LieAlgebra(n=%d, dim=%d%s)" % (self.n, self.dim, ", tag=%r" % self.tag if self.tag else "")


def closure_and_structure(n, basis_matrices, tag=None, meta=None, compact_split=False):
    """Validate bracket closure and cache structure data.

    Raises NotClosedError (with witness) if some [b_i, b_j] leaves the
    span.  With compact_split=True additionally asserts g = g' + z(g)
    with trivial intersection, the decomposition every compact
    subalgebra of u(n) has.
    """
    g = LieAlgebra(n, basis_matrices, tag=tag, meta=meta)
    if compact_split:
        der = g.derived_algebra()
        cen = g.center()
        if der.span.intersect(cen.span).dim != 0 or der.dim + cen.dim != g.dim:
            raise ValidationError("algebra does not split as g' + z(g); not compact-type")
    return g


def conjugate(g, P, check_eta=None):
    """Basis change {P^-1 b P}.  P must be invertible.

    If check_eta is a Gram matrix, P is additionally required to be an
    isometry of it (then eta-skewness of the basis is preserved).
    """
    Pinv = P.inverse()
    if check_eta is not None:
        if not (P.transpose() @ check_eta @ P) == check_eta:
            raise ValidationError("conjugating matrix is not an isometry of the given Gram matrix")
    return LieAlgebra(g.n, [Pinv @ b @ P for b in g.basis], tag=g.tag, meta=dict(g.meta, conjugated=True))


def complex_trace_vanishes(M, J):
    """True iff M has zero complex trace (lies in the su-part)."""
    return M.trace() == 0 and (J @ M).trace() == 0


def is_special_su(g):
    """True iff every basis element lies in su(1,n+1)."""
    amb = build_ambient(g.n)
    return all(complex_trace_vanishes(b, amb.J) for b in g.basis)


def algebra_from_tuples(n, tuples, tag=None, meta=None):
    return closure_and_structure(n, [seven_tuple_to_matrix(t) for t in tuples], tag=tag, meta=meta)
