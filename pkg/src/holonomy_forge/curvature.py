"""Algebraic curvature spaces and the Berger criterion.

R(g) is the space of linear maps from the wedge square into g obeying
the first Bianchi identity.  It is computed by assembling the Bianchi
constraints on strictly increasing frame triples into one sparse exact
linear system and taking its canonical nullspace; every returned map is
then re-verified exhaustively.  L(R(g)) is the span of all values; g is
a Berger algebra when that span is all of g.

The weak-curvature space P(u) (maps from the Euclidean part into u with
the cyclic trace condition) and the u(m)+sod block decomposition checks
live here too.
"""

from .rationals import ZERO, ONE, qof
from .linalg import Matrix, Subspace, nullspace_sparse
from .ambient import ValidationError, wedge_calculus


class CurvatureMap:
    """A map from the wedge square into g, stored by its values on the
    wedge basis as coefficient vectors in g's basis."""

    def __init__(self, algebra, values):
        self.algebra = algebra
        self.values = [tuple(qof(x) for x in v) for v in values]
        self._wc = wedge_calculus(algebra.n)
        if len(self.values) != len(self._wc.pairs):
            raise ValidationError("one value per wedge basis element required")

    def value_matrix(self, widx):
        M = Matrix.zeros(self.algebra.dim_ambient, self.algebra.dim_ambient)
        for c, b in zip(self.values[widx], self.algebra.basis):
            if c:
                M = M + b.scale(c)
        return M

    def apply_wedge_coords(self, coords):
        M = Matrix.zeros(self.algebra.dim_ambient, self.algebra.dim_ambient)
        for w, c in enumerate(coords):
            c = qof(c)
            if c:
                val = self.value_matrix(w)
                if not val.is_zero():
                    M = M + val.scale(c)
        return M

    def is_zero(self):
        return all(all(x == 0 for x in v) for v in self.values)

    def bianchi_defect(self):
        """Largest violation witness of the first Bianchi identity over
        all increasing frame triples, or None.  Independent of the
        solver: works on the reconstructed endomorphisms."""
        d = self.algebra.dim_ambient
        idx = self._wc.index
        mats = [self.value_matrix(w) for w in range(len(self._wc.pairs))]
        from .ambient import basis_vector

        for a in range(1, d + 1):
            for b in range(a + 1, d + 1):
                for c in range(b + 1, d + 1):
                    total = [ZERO] * d
                    for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                        if x < y:
                            M, sgn = mats[idx[(x, y)]], ONE
                        else:
                            M, sgn = mats[idx[(y, x)]], -ONE
                        col = M.column(z - 1)
                        total = [t + sgn * u for t, u in zip(total, col)]
                    if any(t != 0 for t in total):
                        return (a, b, c, total)
        return None

    def pairing_symmetry_defect(self):
        """svoistvo3: eta^eta(R(u^v), z^w) must equal eta^eta(R(z^w), u^v)."""
        wc = self._wc
        k = len(wc.pairs)
        coords = []
        for w in range(k):
            coords.append(wc.wedge_coords_of_endo(self.value_matrix(w)))
        S = [[ZERO] * k for _ in range(k)]
        basisvec = [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]
        for i in range(k):
            for j in range(k):
                S[i][j] = wc.eta_wedge_pairing(coords[i], basisvec[j])
        for i in range(k):
            for j in range(i + 1, k):
                if S[i][j] != S[j][i]:
                    return (wc.pairs[i], wc.pairs[j], S[i][j], S[j][i])
        return None

    def vanishes_on(self, wedge_coord_vectors):
        return all(self.apply_wedge_coords(v).is_zero() for v in wedge_coord_vectors)


def curvature_space(g):
    """Canonical basis of R(g)."""
    wc = wedge_calculus(g.n)
    d = g.dim_ambient
    G = g.dim
    W = len(wc.pairs)
    if G == 0:
        return []
    idx = wc.index
    rows = []
    for a in range(1, d + 1):
        for b in range(a + 1, d + 1):
            for c in range(b + 1, d + 1):
                for out in range(d):
                    row = {}
                    for (x, y, z, sgn) in ((a, b, c, 1), (b, c, a, 1), (a, c, b, -1)):
                        w = idx[(x, y)]
                        for gi, bas in enumerate(g.basis):
                            coef = bas[out, z - 1]
                            if coef:
                                col = w * G + gi
                                v = row.get(col, ZERO) + (coef if sgn > 0 else -coef)
                                if v:
                                    row[col] = v
                                else:
                                    row.pop(col, None)
                    if row:
                        rows.append(row)
    kernel = nullspace_sparse(rows, W * G)
    out = []
    for vec in kernel:
        values = [vec[w * G:(w + 1) * G] for w in range(W)]
        out.append(CurvatureMap(g, values))
    return out


def curvature_span(g, maps):
    """L(R(g)): span of all values, in g-basis coordinates."""
    vecs = []
    for R in maps:
        for v in R.values:
            if any(x != 0 for x in v):
                vecs.append(list(v))
    return Subspace(g.dim, vecs)


def berger_check(g):
    """Report {dim R(g), dim L(R(g)), berger, defect basis}."""
    maps = curvature_space(g)
    L = curvature_span(g, maps)
    berger = L.dim == g.dim
    defect = []
    if not berger:
        span = Subspace(g.dim, [list(v) for v in L.basis])
        for i in range(g.dim):
            e = [ZERO] * g.dim
            e[i] = ONE
            grown, grew = span.add_vector(e)
            if grew:
                span = grown
                defect.append(g.basis[i])
    return {
        "dim_R": len(maps),
        "dim_L": L.dim,
        "dim_g": g.dim,
        "berger": berger,
        "defect": defect,
        "maps": maps,
    }


# ---------------------------------------------------------------------------
# weak curvature space P(u)


class WeakCurvatureMap:
    """Map from a Euclidean space E into u, by values on the E-basis."""

    def __init__(self, u_mats, dimE, values):
        self.u_mats = u_mats
        self.dimE = dimE
        self.values = [tuple(qof(x) for x in v) for v in values]

    def value_matrix(self, i):
        M = Matrix.zeros(self.u_mats[0].nrows, self.u_mats[0].ncols)
        for c, b in zip(self.values[i], self.u_mats):
            if c:
                M = M + b.scale(c)
        return M


def weak_curvature_space(u_mats, gram=None):
    """Canonical basis of {P: E -> u | cyclic eta-condition}.

    u_mats act on E (square matrices of size dim E); gram defaults to
    the identity.
    """
    if not u_mats:
        return []
    dE = u_mats[0].nrows
    G = len(u_mats)
    if gram is None:
        gram = Matrix.identity(dE)
    # s[g][b][c] = eta(M_g e_b, e_c)
    s = []
    for M in u_mats:
        GM = gram.transpose() @ M
        s.append([[GM[c, b] for c in range(dE)] for b in range(dE)])
    rows = []
    for a in range(dE):
        for b in range(dE):
            for c in range(dE):
                if not (a <= b and a <= c):
                    continue  # one representative per cyclic class
                row = {}
                for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                    for gi in range(G):
                        coef = s[gi][y][z]
                        if coef:
                            col = x * G + gi
                            v = row.get(col, ZERO) + coef
                            if v:
                                row[col] = v
                            else:
                                row.pop(col, None)
                if row:
                    rows.append(row)
    kernel = nullspace_sparse(rows, dE * G)
    out = []
    for vec in kernel:
        values = [vec[i * G:(i + 1) * G] for i in range(dE)]
        out.append(WeakCurvatureMap(u_mats, dE, values))
    return out


def weak_cyclic_defect(P, gram=None):
    """Exhaustive independent re-check of the cyclic condition."""
    dE = P.dimE
    gram = gram if gram is not None else Matrix.identity(dE)
    mats = [P.value_matrix(i) for i in range(dE)]
    for a in range(dE):
        for b in range(dE):
            for c in range(dE):
                total = ZERO
                for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                    col = mats[x].column(y)
                    gz = gram.column(z)
                    total = total + sum((u * v for u, v in zip(col, gz)), ZERO)
                if total != 0:
                    return (a, b, c, total)
    return None


# ---------------------------------------------------------------------------
# block decompositions


def e_block(M, n):
    """The 2n x 2n E-block of an ambient matrix."""
    return Matrix([[M[2 + i, 2 + j] for j in range(2 * n)] for i in range(2 * n)])


def _subalgebra_in_span(u, span_vectors):
    """Basis matrices of the intersection of u with a flattened span."""
    d2 = u.dim_ambient ** 2
    other = Subspace(d2, span_vectors)
    inter = u.span.intersect(other)
    d = u.dim_ambient
    return [Matrix.from_flat(list(row), d, d) for row in inter.basis]


def _embed_space(maps, u, n, per_slot):
    """Express maps valued in a subalgebra in u's coordinates.

    per_slot: number of slots (wedge dim for R, dim E for P).  Returns a
    Subspace of Q^(per_slot * dim u).
    """
    G = u.dim
    vecs = []
    for P in maps:
        vec = [ZERO] * (per_slot * G)
        for i in range(per_slot):
            M = P.value_matrix(i)
            if M.is_zero():
                continue
            amb = Matrix.zeros(u.dim_ambient, u.dim_ambient)
            for a in range(2 * n):
                for b in range(2 * n):
                    amb.rows[2 + a][2 + b] = M[a, b]
            coords = u.coords_of(amb)
            if coords is None:
                raise ValidationError("subalgebra map does not land in u")
            for gi, c in enumerate(coords):
                vec[i * G + gi] = c
        vecs.append(vec)
    return Subspace(per_slot * G, vecs)


def decomposition_check(u, m):
    """Verify R(u) = R(u cap u(m)) + R(u cap sod(m+1..n)) (direct sum),
    and the same for P.  u must be inside u(m) + sod(m+1..n)."""
    from .ambient import standard_subalgebra, seven_tuple_to_matrix

    n = u.n
    um_vecs = [seven_tuple_to_matrix(t).flatten()
               for t in standard_subalgebra("u", n, lo=1, hi=m)] if m else []
    sod_vecs = [seven_tuple_to_matrix(t).flatten()
                for t in standard_subalgebra("sod", n, lo=m + 1, hi=n)] if m < n else []
    allowed = Subspace(u.dim_ambient ** 2, um_vecs + sod_vecs)
    if not allowed.contains(u.span):
        raise ValidationError("u must lie inside u(m) + sod(m+1..n)")

    sub1 = _subalgebra_in_span(u, um_vecs)
    sub2 = _subalgebra_in_span(u, sod_vecs)

    dE = 2 * n
    gram = Matrix.identity(dE)

    def r_space(mats):
        return _riemannian_curvature_space([e_block(M, n) for M in mats], gram) if mats else []

    def p_space(mats):
        return weak_curvature_space([e_block(M, n) for M in mats], gram) if mats else []

    W = dE * (dE - 1) // 2
    report = {}
    for name, solver, slots in (("R", r_space, W), ("P", p_space, dE)):
        full = solver(u.basis)
        part1 = solver(sub1)
        part2 = solver(sub2)
        S_full = _embed_space(full, u, n, slots)
        S1 = _embed_space(part1, u, n, slots)
        S2 = _embed_space(part2, u, n, slots)
        ok = (S1.intersect(S2).dim == 0
              and S1.sum(S2) == S_full
              and S1.dim + S2.dim == S_full.dim)
        report[name] = {
            "dim_full": len(full),
            "dim_u_m": len(part1),
            "dim_sod": len(part2),
            "direct_sum": ok,
        }
    report["ok"] = report["R"]["direct_sum"] and report["P"]["direct_sum"]
    return report


class _EBlockMapAdapter:
    def __init__(self, mats, values):
        self.mats = mats
        self.values = values

    def value_matrix(self, i):
        M = Matrix.zeros(self.mats[0].nrows, self.mats[0].ncols)
        for c, b in zip(self.values[i], self.mats):
            if c:
                M = M + b.scale(c)
        return M


def _riemannian_curvature_space(mats, gram):
    """Bianchi nullspace for matrices acting on a plain quadratic space."""
    if not mats:
        return []
    dE = mats[0].nrows
    G = len(mats)
    pairs = [(a, b) for a in range(dE) for b in range(a + 1, dE)]
    idx = {ab: i for i, ab in enumerate(pairs)}
    rows = []
    for a in range(dE):
        for b in range(a + 1, dE):
            for c in range(b + 1, dE):
                for out in range(dE):
                    row = {}
                    for (x, y, z, sgn) in ((a, b, c, 1), (b, c, a, 1), (a, c, b, -1)):
                        w = idx[(x, y)]
                        for gi, bas in enumerate(mats):
                            coef = bas[out, z]
                            if coef:
                                col = w * G + gi
                                v = row.get(col, ZERO) + (coef if sgn > 0 else -coef)
                                if v:
                                    row[col] = v
                                else:
                                    row.pop(col, None)
                    if row:
                        rows.append(row)
    kernel = nullspace_sparse(rows, len(pairs) * G)
    return [_EBlockMapAdapter(mats, [vec[w * G:(w + 1) * G] for w in range(len(pairs))])
            for vec in kernel]
