"""Validated constructors for the classified algebra families.

Every family is selected by a FamilySpec: a tag, the integers
(n, m, k, l, r), an optional scalar, a basis of the compact part u (or
h) and the twisting maps given by their values on that basis.  The
basis must be ordered with the derived algebra u' first and the center
afterwards; the twisting maps must vanish on the u' part.  All of this
is checked, and violations raise ValidationError naming the constraint.

Map targets use the E-coordinate presentation (e/f block ranges); the
complex presentation of the same data is obtained by reading the e/f
pair (psi1, psi2) as one complex vector and the pure-f part as an
imaginary one.
"""

from dataclasses import dataclass, field

from .rationals import Q, ZERO, ONE, qof
from .linalg import Matrix, Subspace
from .ambient import (
    SevenTuple,
    ValidationError,
    seven_tuple_to_matrix,
    standard_subalgebra,
)
from .liealg import LieAlgebra, algebra_from_tuples


HOL_FAMILIES = (
    "hol1_n0",
    "hol2_n0",
    "hol_gamma_n0",
    "hol_m_u_A1_tildeA2",
    "hol_m_u_A1_phi",
    "hol_m_u_varphi_phi",
    "hol_m_u_varphi_tildeA2",
    "hol_m_u_lambda",
    "hol_n_u_psi_k_l",
    "hol_m_u_psi_k_l_r",
)

TWIR_FAMILIES = (
    "g_m_h_A1",
    "g_m_h_varphi",
    "g_n_h_psi_k_l",
    "g_m_h_psi_k_l_r",
    "g_0_h_psi_k",
    "g_0_h_zeta",
    "g_0_h_psi_k_zeta",
    "g_0_h_A1_zeta",   # the rejected twist used as a witness generator
)

# families known to be weakly irreducible (used as certificates)
WEAKLY_IRREDUCIBLE_FAMILIES = set(HOL_FAMILIES) | set(TWIR_FAMILIES) - {"g_0_h_A1_zeta"}


@dataclass
class FamilySpec:
    family: str
    n: int
    m: int = None
    k: int = None
    l: int = None
    r: int = None
    lam: object = None
    gamma1: object = None
    gamma2: object = None
    u_basis: list = field(default_factory=list)   # list of SevenTuple (B/C only)
    varphi: list = None                           # per u-basis scalar
    phi: list = None
    psi: list = None                              # per u-basis vector of length 2n
    zeta: object = None                           # list per basis, or scalar for A1-zeta

    # filled by validation
    N: int = None
    N1: int = None
    n0: int = None
    psi_parts: dict = None                        # s -> list of length-n e/f coefficient rows

    def label(self):
        bits = [self.family, "n=%d" % self.n]
        for name in ("m", "k", "l", "r"):
            v = getattr(self, name)
            if v is not None:
                bits.append("%s=%d" % (name, v))
        return " ".join(bits)


def _require(cond, constraint):
    if not cond:
        raise ValidationError("violated constraint: %s" % constraint)


def _as_scalar_list(vals, N, name):
    if vals is None:
        vals = [0] * N
    _require(len(vals) == N, "%s must have one value per u-basis element" % name)
    return [qof(v) for v in vals]


def _block_span(n, tags_and_params):
    """Flattened span of a union of standard subalgebras."""
    vecs = []
    for tag, kw in tags_and_params:
        for t in standard_subalgebra(tag, n, **kw):
            vecs.append(seven_tuple_to_matrix(t).flatten())
    return Subspace((2 * n + 4) ** 2, vecs)


def _jk_minus_scaled_jn(n, k):
    """J_k - (k/(n+2)) J_n as a u(n)-block element."""
    c = Matrix.zeros(n, n)
    for i in range(n):
        c.rows[i][i] = c.rows[i][i] - Q(k, n + 2)
    for i in range(k):
        c.rows[i][i] = c.rows[i][i] + ONE
    return SevenTuple(n=n, C=c)


def _validate_u_basis(spec, allowed_span, allowed_name):
    """Closure, ordering (u' first, center last) and membership checks."""
    n = spec.n
    tuples = spec.u_basis
    N = len(tuples)
    for t in tuples:
        _require(t.a1 == 0 and t.a2 == 0 and t.c == 0 and all(x == 0 for x in t.z1 + t.z2),
                 "u-basis elements must be pure u(n)-block seven-tuples")
        _require(t.block_constraints_ok(), "u-basis element has B not in so(n) or C not symmetric")
    mats = [seven_tuple_to_matrix(t) for t in tuples]
    for M in mats:
        _require(allowed_span.contains_vector(M.flatten()),
                 "u must be a subalgebra of %s" % allowed_name)
    if N == 0:
        spec.N, spec.N1 = 0, 0
        return None
    u_alg = algebra_from_tuples(n, tuples)
    der = u_alg.derived_algebra()
    cen = u_alg.center()
    N1 = der.dim
    _require(der.dim + cen.dim == N and der.span.intersect(cen.span).dim == 0,
             "u must split as u' + z(u) (compact subalgebra of u(n))")
    head = Subspace((2 * n + 4) ** 2, [m.flatten() for m in mats[:N1]])
    tail = Subspace((2 * n + 4) ** 2, [m.flatten() for m in mats[N1:]])
    _require(head == der.span, "basis elements A_1..A_N1 must span u'")
    _require(tail == cen.span, "basis elements A_{N1+1}..A_N must span z(u)")
    spec.N, spec.N1 = N, N1
    return u_alg


def _compute_n0(spec):
    """Largest n0 with u acting trivially on E_{n0+1..n} and with no
    common kernel inside E_{1..n0}; the kernel must be the coordinate
    tail, otherwise the input basis needs conjugating first."""
    n = spec.n
    if spec.N == 0:
        spec.n0 = 0
        return
    rows = []
    for t in spec.u_basis:
        for i in range(n):
            rows.append([t.B[i, j] for j in range(n)] + [-t.C[i, j] for j in range(n)])
            rows.append([t.C[i, j] for j in range(n)] + [t.B[i, j] for j in range(n)])
    from .linalg import nullspace_dense

    kernel = Subspace(2 * n, nullspace_dense(rows, 2 * n))
    _require(kernel.dim % 2 == 0, "u-annihilated subspace must be J-invariant")
    n0 = n - kernel.dim // 2
    tail = []
    for j in range(n0, n):
        v = [ZERO] * (2 * n)
        v[j] = ONE
        tail.append(v)
        w = [ZERO] * (2 * n)
        w[n + j] = ONE
        tail.append(w)
    _require(kernel == Subspace(2 * n, tail),
             "u-annihilated subspace must be the coordinate tail E_{n0+1..n}; conjugate the basis first")
    spec.n0 = n0


def _split_psi(spec, ranges):
    """Split per-basis psi vectors into the component maps.

    ranges: dict s -> ("e"|"f", lo, hi) with 1-based vector indices;
    support outside the union is an error; surjectivity onto the full
    stated target is required.
    """
    n, N, N1 = spec.n, spec.N, spec.N1
    psi = spec.psi if spec.psi is not None else [[0] * (2 * n) for _ in range(N)]
    _require(len(psi) == N, "psi must have one value per u-basis element")
    rows = []
    for vec in psi:
        _require(len(vec) == 2 * n, "psi values must be length-2n coordinate vectors (e then f)")
        rows.append([qof(x) for x in vec])
    allowed = set()
    target_cols = []
    for s, (ef, lo, hi) in sorted(ranges.items()):
        for j in range(lo, hi + 1):
            col = (j - 1) if ef == "e" else (n + j - 1)
            allowed.add(col)
            target_cols.append(col)
    for a, vec in enumerate(rows):
        for col, x in enumerate(vec):
            _require(x == 0 or col in allowed,
                     "psi(A_%d) has support outside the stated target" % (a + 1))
        if a < N1:
            _require(all(x == 0 for x in vec), "psi must vanish on u'")
    if target_cols:
        restricted = [[vec[c] for c in target_cols] for vec in rows]
        rank = Matrix(restricted).rank() if rows else 0
        _require(rank == len(target_cols), "psi must be surjective onto its stated target")
    parts = {}
    for s, (ef, lo, hi) in ranges.items():
        comp = []
        for vec in rows:
            v = [ZERO] * n
            for j in range(lo, hi + 1):
                v[j - 1] = vec[(j - 1) if ef == "e" else (n + j - 1)]
            comp.append(v)
        parts[s] = comp
    spec.psi_parts = parts
    return parts


def _n_translations(n, ranges, with_c):
    out = []
    for tag, lo, hi in ranges:
        out.extend(standard_subalgebra(tag, n, lo=lo, hi=hi))
    if with_c:
        out.extend(standard_subalgebra("C", n))
    return out


def _proj_C(n, lo, hi):
    c = Matrix.zeros(n, n)
    for i in range(lo - 1, hi):
        c.rows[i][i] = ONE
    return c


def build_family(spec):
    """Construct the family algebra; returns a closure-checked LieAlgebra."""
    fam = spec.family
    n = spec.n

    if fam == "hol1_n0":
        _require(n == 0, "hol1_n0 requires n = 0")
        return algebra_from_tuples(0, standard_subalgebra("full", 0), tag=fam, meta={"spec": spec})

    if fam == "hol2_n0":
        _require(n == 0, "hol2_n0 requires n = 0")
        tuples = standard_subalgebra("A1", 0) + standard_subalgebra("A2", 0)
        return algebra_from_tuples(0, tuples, tag=fam, meta={"spec": spec})

    if fam == "hol_gamma_n0":
        _require(n == 0, "hol_gamma_n0 requires n = 0")
        g1 = qof(spec.gamma1 if spec.gamma1 is not None else 0)
        g2 = qof(spec.gamma2 if spec.gamma2 is not None else 0)
        tuples = []
        if g1 != 0 or g2 != 0:
            tuples.append(SevenTuple(n=0, a1=g1, a2=g2))
        tuples += standard_subalgebra("C", 0)
        return algebra_from_tuples(0, tuples, tag=fam,
                                   meta={"spec": spec, "gamma": (g1, g2)})

    _require(n >= 1, "family %s requires n >= 1" % fam)

    if fam in ("hol_m_u_A1_tildeA2", "hol_m_u_A1_phi", "hol_m_u_varphi_phi",
               "hol_m_u_varphi_tildeA2", "hol_m_u_lambda"):
        m = spec.m
        _require(m is not None and 0 <= m <= n, "0 <= m <= n")
        allowed = _block_span(n, [("u", {"lo": 1, "hi": m})]) if m else Subspace((2 * n + 4) ** 2)
        _validate_u_basis(spec, allowed, "u(%d)" % m)
        _compute_n0(spec)
        N, N1 = spec.N, spec.N1
        varphi = _as_scalar_list(spec.varphi, N, "varphi")
        phi = _as_scalar_list(spec.phi, N, "phi")
        for a in range(N1):
            _require(varphi[a] == 0, "varphi must vanish on u'")
            _require(phi[a] == 0, "phi must vanish on u'")
        proj = _proj_C(n, m + 1, n)
        rot = []
        if fam == "hol_m_u_A1_tildeA2":
            rot.append(SevenTuple(n=n, a1=1))
            rot.append(SevenTuple(n=n, a2=1, C=proj))
            rot += [SevenTuple(n=n, B=t.B, C=t.C) for t in spec.u_basis]
        elif fam == "hol_m_u_A1_phi":
            rot.append(SevenTuple(n=n, a1=1))
            rot += [SevenTuple(n=n, a2=phi[a], B=t.B, C=t.C + proj.scale(phi[a]))
                    for a, t in enumerate(spec.u_basis)]
        elif fam == "hol_m_u_varphi_phi":
            rot += [SevenTuple(n=n, a1=varphi[a], a2=phi[a], B=t.B, C=t.C + proj.scale(phi[a]))
                    for a, t in enumerate(spec.u_basis)]
        elif fam == "hol_m_u_varphi_tildeA2":
            rot.append(SevenTuple(n=n, a2=1, C=proj))
            rot += [SevenTuple(n=n, a1=varphi[a], B=t.B, C=t.C) for a, t in enumerate(spec.u_basis)]
        else:  # hol_m_u_lambda
            lam = qof(spec.lam if spec.lam is not None else 0)
            _require(lam != 0, "lambda must be nonzero")
            spec.lam = lam
            rot.append(SevenTuple(n=n, a1=1, a2=lam, C=proj.scale(lam)))
            rot += [SevenTuple(n=n, B=t.B, C=t.C) for t in spec.u_basis]
        trans = _n_translations(n, [("N1", 1, n), ("N2", 1, m)], with_c=True)
        return algebra_from_tuples(n, rot + trans, tag=fam, meta={"spec": spec})

    if fam == "hol_n_u_psi_k_l":
        k, l = spec.k, spec.l
        _require(k is not None and l is not None and 0 < k <= l <= n, "0 < k <= l <= n")
        allowed = _block_span(n, [("u", {"lo": 1, "hi": k})])
        u_alg = _validate_u_basis(spec, allowed, "u(%d)" % k)
        _compute_n0(spec)
        N, N1 = spec.N, spec.N1
        zdim = u_alg.center().dim if u_alg is not None else 0
        _require(zdim >= n + l - 2 * k, "dim z(u) >= n+l-2k")
        parts = _split_psi(spec, {1: ("e", k + 1, l), 2: ("f", k + 1, l), 3: ("f", l + 1, n)})
        rot = [SevenTuple(n=n, B=t.B, C=t.C, z1=parts[1][a],
                          z2=[x + y for x, y in zip(parts[2][a], parts[3][a])])
               for a, t in enumerate(spec.u_basis)]
        trans = _n_translations(n, [("N1", 1, k), ("N2", 1, k), ("N1", l + 1, n)], with_c=True)
        return algebra_from_tuples(n, rot + trans, tag=fam, meta={"spec": spec})

    if fam == "hol_m_u_psi_k_l_r":
        k, l, r, m = spec.k, spec.l, spec.r, spec.m
        _require(None not in (k, l, r, m) and 0 < k <= l <= m <= r <= n and m < n,
                 "0 < k <= l <= m <= r <= n and m < n")
        allowed = _block_span(n, [("u", {"lo": 1, "hi": k})])
        u_alg = _validate_u_basis(spec, allowed, "u(%d)" % k)
        _compute_n0(spec)
        N, N1 = spec.N, spec.N1
        zdim = u_alg.center().dim if u_alg is not None else 0
        _require(zdim >= n + m + l - 2 * k - r, "dim z(u) >= n+m+l-2k-r")
        parts = _split_psi(spec, {1: ("e", k + 1, l), 2: ("f", k + 1, l),
                                  3: ("f", l + 1, m), 4: ("e", r + 1, n)})
        rot = [SevenTuple(n=n, B=t.B, C=t.C,
                          z1=[x + y for x, y in zip(parts[1][a], parts[4][a])],
                          z2=[x + y for x, y in zip(parts[2][a], parts[3][a])])
               for a, t in enumerate(spec.u_basis)]
        trans = _n_translations(n, [("N1", 1, k), ("N2", 1, k), ("N1", l + 1, m), ("N1", m + 1, r)],
                                with_c=True)
        return algebra_from_tuples(n, rot + trans, tag=fam, meta={"spec": spec})

    if fam in ("g_m_h_A1", "g_m_h_varphi"):
        m = spec.m
        _require(m is not None and 0 <= m <= n, "0 <= m <= n")
        blocks = [("sod", {"lo": m + 1, "hi": n})] if m < n else []
        if m:
            blocks = [("su", {"lo": 1, "hi": m})] + blocks
        allowed_vecs = _block_span(n, blocks) if blocks else Subspace((2 * n + 4) ** 2)
        if m:
            jm = _jk_minus_scaled_jn(n, m)
            allowed_vecs = allowed_vecs.sum(
                Subspace((2 * n + 4) ** 2, [seven_tuple_to_matrix(jm).flatten()]))
        _validate_u_basis(spec, allowed_vecs, "su(m) + R(J_m - m/(n+2) J_n) + sod(m+1..n)")
        _compute_n0(spec)
        N, N1 = spec.N, spec.N1
        varphi = _as_scalar_list(spec.varphi, N, "varphi")
        for a in range(N1):
            _require(varphi[a] == 0, "varphi must vanish on h'")
        rot = []
        if fam == "g_m_h_A1":
            rot.append(SevenTuple(n=n, a1=1))
            rot += [SevenTuple(n=n, a2=-t.C.trace() / 2, B=t.B, C=t.C) for t in spec.u_basis]
        else:
            rot += [SevenTuple(n=n, a1=varphi[a], a2=-t.C.trace() / 2, B=t.B, C=t.C)
                    for a, t in enumerate(spec.u_basis)]
        trans = _n_translations(n, [("N1", 1, n), ("N2", 1, m)], with_c=True)
        return algebra_from_tuples(n, rot + trans, tag=fam, meta={"spec": spec})

    if fam == "g_n_h_psi_k_l":
        k, l = spec.k, spec.l
        _require(k is not None and l is not None and 0 < k <= l <= n, "0 < k <= l <= n")
        allowed = _block_span(n, [("su", {"lo": 1, "hi": k})]).sum(
            Subspace((2 * n + 4) ** 2, [seven_tuple_to_matrix(_jk_minus_scaled_jn(n, k)).flatten()]))
        u_alg = _validate_u_basis(spec, allowed, "su(k) + R(J_k - k/(n+2) J_n)")
        _compute_n0(spec)
        zdim = u_alg.center().dim if u_alg is not None else 0
        _require(zdim >= n + l - 2 * k, "dim z(h) >= n+l-2k")
        parts = _split_psi(spec, {1: ("e", k + 1, l), 2: ("f", k + 1, l), 3: ("f", l + 1, n)})
        rot = [SevenTuple(n=n, a2=-t.C.trace() / 2, B=t.B, C=t.C, z1=parts[1][a],
                          z2=[x + y for x, y in zip(parts[2][a], parts[3][a])])
               for a, t in enumerate(spec.u_basis)]
        trans = _n_translations(n, [("N1", 1, k), ("N2", 1, k), ("N1", l + 1, n)], with_c=True)
        return algebra_from_tuples(n, rot + trans, tag=fam, meta={"spec": spec})

    if fam == "g_m_h_psi_k_l_r":
        k, l, r, m = spec.k, spec.l, spec.r, spec.m
        _require(None not in (k, l, r, m) and 0 < k <= l <= m <= r <= n and m < n,
                 "0 < k <= l <= m <= r <= n and m < n")
        allowed = _block_span(n, [("su", {"lo": 1, "hi": k})] +
                              ([("sod", {"lo": m + 1, "hi": r})] if r > m else []))
        allowed = allowed.sum(
            Subspace((2 * n + 4) ** 2, [seven_tuple_to_matrix(_jk_minus_scaled_jn(n, k)).flatten()]))
        u_alg = _validate_u_basis(spec, allowed, "su(k) + R(J_k - k/(n+2) J_n) + sod(m+1..r)")
        _compute_n0(spec)
        zdim = u_alg.center().dim if u_alg is not None else 0
        _require(zdim >= n + m + l - 2 * k - r, "dim z(h) >= n+m+l-2k-r")
        parts = _split_psi(spec, {1: ("e", k + 1, l), 2: ("f", k + 1, l),
                                  3: ("f", l + 1, m), 4: ("e", r + 1, n)})
        rot = [SevenTuple(n=n, a2=-t.C.trace() / 2, B=t.B, C=t.C,
                          z1=[x + y for x, y in zip(parts[1][a], parts[4][a])],
                          z2=[x + y for x, y in zip(parts[2][a], parts[3][a])])
               for a, t in enumerate(spec.u_basis)]
        trans = _n_translations(n, [("N1", 1, k), ("N2", 1, k), ("N1", l + 1, m), ("N1", m + 1, r)],
                                with_c=True)
        return algebra_from_tuples(n, rot + trans, tag=fam, meta={"spec": spec})

    if fam == "g_0_h_psi_k":
        k = spec.k
        _require(k is not None and 0 < k < n, "0 < k < n")
        allowed = _block_span(n, [("sod", {"lo": 1, "hi": k})])
        u_alg = _validate_u_basis(spec, allowed, "sod(1..k)")
        _compute_n0(spec)
        zdim = u_alg.center().dim if u_alg is not None else 0
        _require(zdim >= n - k, "dim z(h) >= n-k")
        parts = _split_psi(spec, {1: ("e", k + 1, n)})
        rot = [SevenTuple(n=n, B=t.B, z1=parts[1][a]) for a, t in enumerate(spec.u_basis)]
        trans = _n_translations(n, [("N1", 1, k)], with_c=True)
        return algebra_from_tuples(n, rot + trans, tag=fam, meta={"spec": spec})

    if fam == "g_0_h_zeta":
        allowed = _block_span(n, [("sod", {"lo": 1, "hi": n})])
        u_alg = _validate_u_basis(spec, allowed, "sod(1..n)")
        _compute_n0(spec)
        N, N1 = spec.N, spec.N1
        _require(u_alg is not None and u_alg.center().dim > 0, "z(h) must be nonzero")
        zeta = _as_scalar_list(spec.zeta, N, "zeta")
        for a in range(N1):
            _require(zeta[a] == 0, "zeta must vanish on h'")
        _require(any(zeta[a] != 0 for a in range(N1, N)), "zeta must be nonzero on z(h)")
        rot = [SevenTuple(n=n, B=t.B, c=zeta[a]) for a, t in enumerate(spec.u_basis)]
        trans = _n_translations(n, [("N1", 1, n)], with_c=False)
        return algebra_from_tuples(n, rot + trans, tag=fam, meta={"spec": spec})

    if fam == "g_0_h_psi_k_zeta":
        k = spec.k
        _require(k is not None and 1 <= k < n, "1 <= k < n")
        allowed = _block_span(n, [("sod", {"lo": 1, "hi": k})])
        u_alg = _validate_u_basis(spec, allowed, "sod(1..k)")
        _compute_n0(spec)
        N, N1 = spec.N, spec.N1
        zdim = u_alg.center().dim if u_alg is not None else 0
        _require(zdim >= n - k, "dim z(h) >= n-k")
        parts = _split_psi(spec, {1: ("e", k + 1, n)})
        zeta = _as_scalar_list(spec.zeta, N, "zeta")
        for a in range(N1):
            _require(zeta[a] == 0, "zeta must vanish on h'")
        _require(any(z != 0 for z in zeta), "zeta must be nonzero")
        rot = [SevenTuple(n=n, B=t.B, z1=parts[1][a], c=zeta[a]) for a, t in enumerate(spec.u_basis)]
        trans = _n_translations(n, [("N1", 1, k)], with_c=False)
        return algebra_from_tuples(n, rot + trans, tag=fam, meta={"spec": spec})

    if fam == "g_0_h_A1_zeta":
        allowed = _block_span(n, [("sod", {"lo": 1, "hi": n})])
        _validate_u_basis(spec, allowed, "sod(1..n)")
        _compute_n0(spec)
        z = qof(spec.zeta if spec.zeta is not None else 0)
        _require(z != 0, "zeta must be a nonzero scalar on A1")
        spec.zeta = z
        rot = [SevenTuple(n=n, a1=1, c=z)]
        rot += [SevenTuple(n=n, B=t.B) for t in spec.u_basis]
        trans = _n_translations(n, [("N1", 1, n)], with_c=False)
        return algebra_from_tuples(n, rot + trans, tag=fam, meta={"spec": spec})

    raise ValidationError("unknown family tag %r" % (fam,))


def u_block_projection(alg):
    """Span of the u(n)-parts (0,0,B,C,0,0,0) of the basis elements."""
    from .ambient import matrix_to_seven_tuple

    vecs = []
    for b in alg.basis:
        t = matrix_to_seven_tuple(b, alg.n)
        if t is None:
            raise ValidationError("algebra is not inside u(1,n+1)_{<p1,p2>}")
        proj = SevenTuple(n=alg.n, B=t.B, C=t.C)
        vecs.append(seven_tuple_to_matrix(proj).flatten())
    return Subspace((2 * alg.n + 4) ** 2, vecs)


# ---------------------------------------------------------------------------
# JSON schema


def spec_to_json(spec):
    from .rationals import qstr

    def qs(v):
        return None if v is None else qstr(qof(v))

    out = {"family": spec.family, "n": spec.n}
    for name in ("m", "k", "l", "r"):
        v = getattr(spec, name)
        if v is not None:
            out[name] = v
    if spec.lam is not None:
        out["lambda"] = qs(spec.lam)
    if spec.gamma1 is not None or spec.gamma2 is not None:
        out["gamma1"] = qs(spec.gamma1 or 0)
        out["gamma2"] = qs(spec.gamma2 or 0)
    if spec.u_basis:
        out["u"] = [
            {"B": [[qstr(t.B[i, j]) for j in range(spec.n)] for i in range(spec.n)],
             "C": [[qstr(t.C[i, j]) for j in range(spec.n)] for i in range(spec.n)]}
            for t in spec.u_basis
        ]
    for name in ("varphi", "phi"):
        v = getattr(spec, name)
        if v is not None:
            out[name] = [qstr(qof(x)) for x in v]
    if spec.psi is not None:
        out["psi"] = [[qstr(qof(x)) for x in vec] for vec in spec.psi]
    if spec.zeta is not None:
        if isinstance(spec.zeta, (list, tuple)):
            out["zeta"] = [qstr(qof(x)) for x in spec.zeta]
        else:
            out["zeta"] = qstr(qof(spec.zeta))
    return out


def spec_from_json(data):
    if not isinstance(data, dict) or "family" not in data or "n" not in data:
        raise ValidationError("family spec JSON must be an object with 'family' and 'n'")
    n = data["n"]
    if not isinstance(n, int) or n < 0:
        raise ValidationError("'n' must be a nonnegative integer")
    u_basis = []
    for entry in data.get("u", []):
        B = Matrix([[qof(x) for x in row] for row in entry["B"]]) if n else Matrix([])
        C = Matrix([[qof(x) for x in row] for row in entry["C"]]) if n else Matrix([])
        u_basis.append(SevenTuple(n=n, B=B, C=C))
    zeta = data.get("zeta")
    if isinstance(zeta, list):
        zeta = [qof(x) for x in zeta]
    elif zeta is not None:
        zeta = qof(zeta)
    return FamilySpec(
        family=data["family"],
        n=n,
        m=data.get("m"),
        k=data.get("k"),
        l=data.get("l"),
        r=data.get("r"),
        lam=qof(data["lambda"]) if "lambda" in data else None,
        gamma1=qof(data["gamma1"]) if "gamma1" in data else None,
        gamma2=qof(data["gamma2"]) if "gamma2" in data else None,
        u_basis=u_basis,
        varphi=[qof(x) for x in data["varphi"]] if "varphi" in data else None,
        phi=[qof(x) for x in data["phi"]] if "phi" in data else None,
        psi=[[qof(x) for x in vec] for vec in data["psi"]] if "psi" in data else None,
        zeta=zeta,
    )
