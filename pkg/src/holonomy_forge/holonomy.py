"""Levi-Civita geometry of the polynomial metrics and the holonomy
algebra at the origin.

Christoffel symbols always come from the general formula

    Gamma^a_bc = 1/2 g^ad (d_b g_dc + d_c g_db - d_d g_bc)

with the exact polynomial inverse of g obtained from the terminating
Neumann series of the off-origin part (the template makes that series
nilpotent).  The curvature convention is pinned by two anchors: a flat
metric gives zero, and on the u-coupled metrics the E-block of
R(., .; q1^q2) at the origin reproduces the basis matrices of u.

The holonomy algebra at 0 is accumulated from the curvature tensor and
its iterated covariant derivatives, evaluated at the origin, until the
span is unchanged for two consecutive derivative orders (or a cap is
hit, which is reported, never silent).
"""

from dataclasses import dataclass, field

from .rationals import Q
from .poly import MultiPoly
from .linalg import Matrix, Subspace, IncrementalSpan
from .ambient import ValidationError, build_ambient, is_eta_skew, commutes_with_J


def poly_matrix_inverse(g, D, cap=None):
    """Exact inverse of a polynomial matrix with invertible constant
    term, via the Neumann series of g0^-1 (g - g0); raises if the
    series does not terminate (then no polynomial inverse exists)."""
    g0 = Matrix([[g[a][b].const_term() for b in range(D)] for a in range(D)])
    try:
        g0inv = g0.inverse()
    except ValueError:
        raise ValidationError("metric has singular constant term")
    zero = MultiPoly.zero(D)

    def scalar_times_poly(S, P):
        out = [[zero for _ in range(D)] for _ in range(D)]
        for a in range(D):
            for c in range(D):
                s = S[a, c]
                if s == 0:
                    continue
                for b in range(D):
                    if P[c][b]:
                        out[a][b] = out[a][b] + P[c][b] * s
        return out

    def poly_mul(Ap, Bp):
        out = [[zero for _ in range(D)] for _ in range(D)]
        for a in range(D):
            for c in range(D):
                p = Ap[a][c]
                if not p:
                    continue
                for b in range(D):
                    if Bp[c][b]:
                        out[a][b] = out[a][b] + p * Bp[c][b]
        return out

    P = [[g[a][b] - MultiPoly.const(D, g[a][b].const_term()) for b in range(D)] for a in range(D)]
    M = scalar_times_poly(g0inv, P)
    series = [[MultiPoly.const(D, 1) if a == b else zero for b in range(D)] for a in range(D)]
    term = series
    cap = cap if cap is not None else 2 * D + 2
    for _ in range(cap):
        term = poly_mul(term, M)
        term = [[-term[a][b] for b in range(D)] for a in range(D)]
        if all(not term[a][b] for a in range(D) for b in range(D)):
            break
        series = [[series[a][b] + term[a][b] for b in range(D)] for a in range(D)]
    else:
        raise ValidationError("polynomial inverse does not terminate; metric outside the template")
    # series = sum (-M)^k; multiply by g0inv on the right
    out = [[zero for _ in range(D)] for _ in range(D)]
    for a in range(D):
        for c in range(D):
            p = series[a][c]
            if not p:
                continue
            for b in range(D):
                s = g0inv[c, b]
                if s != 0:
                    out[a][b] = out[a][b] + p * s
    return out


def christoffel(model):
    """Gamma^a_{bc} for b <= c, nonzero entries only."""
    D = model.D
    g = model.g
    ginv = poly_matrix_inverse(g, D)
    partials = {}
    for d in range(D):
        for c in range(D):
            p = g[d][c]
            if not p:
                continue
            for v in p.variables():
                partials[(d, c, v)] = p.partial(v)
    gamma = {}
    for b in range(1, D + 1):
        for c in range(b, D + 1):
            for a in range(1, D + 1):
                acc = MultiPoly.zero(D)
                for d in range(1, D + 1):
                    h = ginv[a - 1][d - 1]
                    if not h:
                        continue
                    term = MultiPoly.zero(D)
                    t = partials.get((d - 1, c - 1, b))
                    if t is not None:
                        term = term + t
                    t = partials.get((d - 1, b - 1, c))
                    if t is not None:
                        term = term + t
                    t = partials.get((b - 1, c - 1, d))
                    if t is not None:
                        term = term - t
                    if term:
                        acc = acc + h * term
                if acc:
                    gamma[(a, b, c)] = acc * Q(1, 2)
    return gamma


def closed_form_christoffel(model):
    """The template's closed-form nonzero Christoffel symbols, valid
    when the blocks depend only on x1, x2, the E-coordinates and
    x^(2n+3).  Used as an independent cross-check of the general
    formula, never as the solver."""
    n, D = model.n, model.D
    f1, f2, f3 = model.f1, model.f2, model.f3
    q1c, q2c = D - 1, D
    u = {i: model.u.get(i, MultiPoly.zero(D)) for i in range(3, D - 1)}
    half = Q(1, 2)
    gamma = {}

    def put(a, b, c, p):
        if p:
            key = (a, b, c) if b <= c else (a, c, b)
            if key in gamma:
                gamma[key] = gamma[key] + p
            else:
                gamma[key] = p

    usq = MultiPoly.zero(D)
    for i in range(3, D - 1):
        usq = usq + u[i] * u[i]
    f2msq = f2 - usq

    put(1, 1, q1c, f1.partial(1) * half)
    put(1, 1, q2c, f3.partial(1) * half)
    put(1, 2, q1c, f1.partial(2) * half)
    put(1, 2, q2c, f3.partial(2) * half)
    for i in range(3, D - 1):
        put(1, i, q1c, f1.partial(i) * half)
        put(1, i, q2c, (f3.partial(i) - u[i].partial(q1c)) * half)
    put(1, q1c, q1c, (f1.partial(q1c) + f3 * f1.partial(2) + f1 * f1.partial(1)) * half)
    put(1, q1c, q2c, (f3 * f3.partial(2) + f1 * f3.partial(1)) * half)
    put(1, q2c, q2c, (f3 * f2.partial(2) + f1 * f2.partial(1) - f2.partial(q1c)) * half)

    put(2, 1, q1c, f3.partial(1) * half)
    put(2, 1, q2c, f2.partial(1) * half)
    put(2, 2, q1c, f3.partial(2) * half)
    put(2, 2, q2c, f2.partial(2) * half)
    for i in range(3, D - 1):
        for j in range(i, D - 1):
            put(2, i, j, (u[i].partial(j) + u[j].partial(i)) * half)
        put(2, i, q1c, (u[i].partial(q1c) + f3.partial(i)) * half)
        acc = f2.partial(i)
        for j in range(3, D - 1):
            acc = acc + u[j] * (u[i].partial(j) - u[j].partial(i))
        put(2, i, q2c, acc * half)
    acc = f3.partial(q1c) * 2 + f2msq * f1.partial(2) + f3 * f1.partial(1)
    for i in range(3, D - 1):
        acc = acc + u[i] * f1.partial(i)
    put(2, q1c, q1c, acc * half)
    acc = f2.partial(q1c) + f2msq * f3.partial(2) + f3 * f3.partial(1)
    for i in range(3, D - 1):
        acc = acc + u[i] * (f3.partial(i) - u[i].partial(q1c))
    put(2, q1c, q2c, acc * half)
    acc = f2msq * f2.partial(2) + f3 * f2.partial(1)
    for i in range(3, D - 1):
        acc = acc + u[i] * f2.partial(i)
    put(2, q2c, q2c, acc * half)

    for i in range(3, D - 1):
        for j in range(3, D - 1):
            if i != j:
                put(i, j, q2c, (u[i].partial(j) - u[j].partial(i)) * half)
        put(i, q1c, q1c, (u[i] * f1.partial(2) - f1.partial(i)) * half)
        put(i, q1c, q2c, (u[i].partial(q1c) - f3.partial(i) + u[i] * f3.partial(2)) * half)
        put(i, q2c, q2c, (u[i] * f2.partial(2) - f2.partial(i)) * half)

    put(q1c, q1c, q1c, f1.partial(1) * (-half))
    put(q1c, q1c, q2c, f3.partial(1) * (-half))
    put(q1c, q2c, q2c, f2.partial(1) * (-half))
    put(q2c, q1c, q1c, f1.partial(2) * (-half))
    put(q2c, q1c, q2c, f3.partial(2) * (-half))
    put(q2c, q2c, q2c, f2.partial(2) * (-half))
    return {k: v for k, v in gamma.items() if v}


def gamma_full(gamma):
    """Expand the b <= c storage to all ordered lower index pairs."""
    out = {}
    for (a, b, c), p in gamma.items():
        out[(a, b, c)] = p
        if b != c:
            out[(a, c, b)] = p
    return out


def riemann(gamma, D):
    """R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
    + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb},
    stored for all ordered (c, d) pairs (antisymmetric)."""
    full = gamma_full(gamma)
    raw = {}

    def addraw(key, p):
        if key in raw:
            s = raw[key] + p
            if s:
                raw[key] = s
            else:
                del raw[key]
        elif p:
            raw[key] = p

    # derivative part: contributes d_c Gamma^a_{db} to raw[a,b,c,d]
    for (a, d, b), p in full.items():
        for c in p.variables():
            addraw((a, b, c, d), p.partial(c))
    # quadratic part
    by_second_lower = {}
    by_upper = {}
    for (a, x, y), p in full.items():
        by_second_lower.setdefault(y, []).append((a, x, p))
        by_upper.setdefault(a, []).append((x, y, p))
    for e, left in by_second_lower.items():
        right = by_upper.get(e)
        if not right:
            continue
        for (a, c, p1) in left:
            for (d, b, p2) in right:
                addraw((a, b, c, d), p1 * p2)
    R = {}
    seen = set()
    for (a, b, c, d) in list(raw):
        if c == d:
            continue
        lo, hi = (c, d) if c < d else (d, c)
        if (a, b, lo, hi) in seen:
            continue
        seen.add((a, b, lo, hi))
        p = raw.get((a, b, lo, hi))
        q = raw.get((a, b, hi, lo))
        if p is None:
            val = -q
        elif q is None:
            val = p
        else:
            val = p - q
        if val:
            R[(a, b, lo, hi)] = val
            R[(a, b, hi, lo)] = -val
    return R


def covariant_derivative(T, gamma, D):
    """One covariant derivative of a (1, s)-tensor dict, appending the
    new index last (the semicolon convention)."""
    full = gamma_full(gamma)
    by_second_lower = {}
    by_upper = {}
    for (a, x, y), p in full.items():
        by_second_lower.setdefault(y, []).append((a, x, p))
        by_upper.setdefault(a, []).append((x, y, p))
    U = {}

    def add(key, p):
        if key in U:
            s = U[key] + p
            if s:
                U[key] = s
            else:
                del U[key]
        elif p:
            U[key] = p

    for key, p in T.items():
        a = key[0]
        bs = key[1:]
        for c in p.variables():
            add(key + (c,), p.partial(c))
        for (aa, c, q) in by_second_lower.get(a, ()):
            add((aa,) + bs + (c,), q * p)
        for i, e in enumerate(bs):
            for (c, b, q) in by_upper.get(e, ()):
                add((key[0],) + bs[:i] + (b,) + bs[i + 1:] + (c,), (q * p) * (-1))
    return U


def evaluate_at_origin(T):
    out = {}
    for key, p in T.items():
        v = p.const_term()
        if v != 0:
            out[key] = v
    return out


@dataclass
class HolonomyReport:
    n: int
    orders_used: int
    stabilized: bool
    cap: int
    dims_per_order: list
    new_generators_per_order: list
    span: Subspace = None
    generators: list = field(default_factory=list)   # (order, suffix, Matrix)
    verdict: dict = None

    @property
    def dim(self):
        return self.span.dim if self.span is not None else 0


def holonomy_at_origin(model, max_order=None, target=None, collect_generators=True):
    """Ambrose-Singer span at the origin of a polynomial metric."""
    D = model.D
    n = model.n
    if max_order is None:
        N = model.spec.N if model.spec is not None and model.spec.N is not None else 0
        max_order = max(2 * n + 6, N + 4)
    gamma = christoffel(model)
    T = riemann(gamma, D)
    span = IncrementalSpan(D * D)
    dims = []
    news = []
    generators = []

    def absorb(order):
        ev = evaluate_at_origin(T)
        mats = {}
        for key, v in ev.items():
            a, b = key[0], key[1]
            suffix = key[2:]
            if suffix not in mats:
                mats[suffix] = Matrix.zeros(D, D)
            mats[suffix].rows[a - 1][b - 1] = v
        new = 0
        for suffix in sorted(mats):
            M = mats[suffix]
            if span.add(M.flatten()):
                new += 1
                if collect_generators:
                    generators.append((order, suffix, M))
        return new

    news.append(absorb(0))
    dims.append(span.dim)
    stabilized = False
    order = 0
    quiet = 0
    while order < max_order:
        if not T:
            stabilized = True
            break
        order += 1
        T = covariant_derivative(T, gamma, D)
        new = absorb(order)
        news.append(new)
        dims.append(span.dim)
        quiet = quiet + 1 if new == 0 else 0
        if quiet >= 2:
            stabilized = True
            break
    report = HolonomyReport(
        n=n,
        orders_used=order,
        stabilized=stabilized,
        cap=max_order,
        dims_per_order=dims,
        new_generators_per_order=news,
        span=span.to_subspace(),
        generators=generators,
    )
    if target is not None:
        report.verdict = compare_algebras(report.span, target)
    return report


def compare_algebras(computed, target):
    """Canonical comparison of a computed span against a target algebra.

    computed: Subspace of flattened matrices (or LieAlgebra-like with a
    .span).  Returns {relation, dims, defects}.
    """
    comp = computed.span if hasattr(computed, "span") else computed
    targ = target.span if hasattr(target, "span") else target
    if comp.ambient != targ.ambient:
        raise ValidationError("ambient dimension mismatch in comparison")
    sub = targ.contains(comp)
    sup = comp.contains(targ)
    if sub and sup:
        relation = "equal"
    elif sub:
        relation = "computed_subset_target"
    elif sup:
        relation = "target_subset_computed"
    else:
        relation = "incomparable"
    import math as _math

    dd = _math.isqrt(comp.ambient)
    defect_target = []
    defect_computed = []
    if relation != "equal":
        grow = Subspace(comp.ambient, [list(b) for b in comp.basis])
        for row in targ.basis:
            grown, grew = grow.add_vector(list(row))
            if grew:
                grow = grown
                defect_target.append(Matrix.from_flat(list(row), dd, dd))
        grow = Subspace(targ.ambient, [list(b) for b in targ.basis])
        for row in comp.basis:
            grown, grew = grow.add_vector(list(row))
            if grew:
                grow = grown
                defect_computed.append(Matrix.from_flat(list(row), dd, dd))
    return {
        "relation": relation,
        "dim_computed": comp.dim,
        "dim_target": targ.dim,
        "defect_in_target_only": defect_target,
        "defect_in_computed_only": defect_computed,
    }


def generator_invariants_ok(report, model):
    """Every generator must be eta-skew, commute with J and preserve
    span{p1, p2}."""
    amb = build_ambient(model.n)
    D = model.D
    for row in report.span.basis:
        M = Matrix.from_flat(list(row), D, D)
        if not is_eta_skew(M, amb.eta):
            return False
        if not commutes_with_J(M, amb.J):
            return False
        for col in (0, 1):
            for r in range(2, D):
                if M[r, col] != 0:
                    return False
    return True
