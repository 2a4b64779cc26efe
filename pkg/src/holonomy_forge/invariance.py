"""Semi-decision procedure for weak irreducibility.

A witness is a proper invariant subspace on which the ambient metric
restricts nondegenerately; finding one settles the question negatively.
The positive direction is certified, never proved here: the search must
come up empty AND the algebra must match a family known to be weakly
irreducible (or contain one of the catalogued weakly-irreducible
subalgebras, which is enough since any overalgebra inherits the
property).
"""

import random
from dataclasses import dataclass, field

from .rationals import Q, ZERO, qof
from .linalg import Matrix, Subspace
from .ambient import basis_vector, build_ambient, matrix_to_seven_tuple
from .ambient import standard_subalgebra, seven_tuple_to_matrix
from .families import WEAKLY_IRREDUCIBLE_FAMILIES


def invariant_closure(g, seeds):
    """Smallest g-invariant subspace containing the seed vectors."""
    d = g.dim_ambient
    span = Subspace(d, [s for s in seeds if any(qof(x) != 0 for x in s)])
    while True:
        grew = False
        vecs = list(span.basis)
        for X in g.basis:
            for v in vecs:
                w = X.mul_vector(list(v))
                if not span.contains_vector(w):
                    span = Subspace(d, list(span.basis) + [w])
                    grew = True
        if not grew:
            return span


def restricted_gram_rank(W, eta):
    """Rank of the Gram matrix of eta restricted to W."""
    if W.dim == 0:
        return 0
    rows = []
    for u in W.basis:
        eu = eta.mul_vector(list(u))
        rows.append([sum((a * b for a, b in zip(eu, v)), ZERO) for v in W.basis])
    return Matrix(rows).rank()


def is_invariant(g, W):
    return all(W.contains_vector(X.mul_vector(list(v))) for X in g.basis for v in W.basis)


def _structured_probes(g):
    """Deterministic probe vectors derived from the frame and from the
    algebra's own (a1, c)- and (a1, a2, c)-ratios."""
    n = g.n
    d = g.dim_ambient
    probes = []

    def vec(*pairs):
        v = [ZERO] * d
        for idx, c in pairs:
            v[idx - 1] = v[idx - 1] + qof(c)
        return v

    p1, p2, q1, q2 = 1, 2, d - 1, d
    probes += [
        vec((p1, 1), (p2, 1)), vec((p1, 1), (p2, -1)),
        vec((q1, 1), (q2, 1)), vec((q1, 1), (q2, -1)),
        vec((p1, 1), (q1, 1)), vec((p1, 1), (q1, -1)),
        vec((p2, 1), (q2, 1)), vec((p2, 1), (q2, -1)),
    ]
    for i in range(1, n + 1):
        e, f = i + 2, n + i + 2
        probes += [vec((e, 1), (f, 1)), vec((e, 1), (f, -1))]
    all_plus = [(p1, 1), (p2, 1), (q1, 1), (q2, 1)]
    all_minus = [(p1, 1), (p2, -1), (q1, 1), (q2, -1)]
    for i in range(1, n + 1):
        all_plus.append((i + 2, 1))
        all_plus.append((n + i + 2, 1))
        all_minus.append((i + 2, 1))
        all_minus.append((n + i + 2, -1))
    probes += [vec(*all_plus), vec(*all_minus)]

    # ratio-derived probes from the seven-tuple data of the basis
    for X in g.basis:
        t = matrix_to_seven_tuple(X, n)
        if t is None:
            continue
        if t.a1 != 0 and t.c != 0:
            z = t.c / t.a1
            probes.append(vec((q1, 1), (q2, 1), (p1, z / 2), (p2, -z / 2)))
            probes.append(vec((q1, 1), (q2, -1), (p1, z / 2), (p2, z / 2)))
            gam = t.a1 / t.c
            probes.append(vec((p1, 1), (p2, 1), (q1, gam), (q2, gam)))
            probes.append(vec((p2, 2), (q1, -gam), (q2, -gam)))
        if t.a2 != 0 and t.c != 0:
            z = t.c / t.a2
            probes.append(vec((q1, 1), (q2, 1), (p1, -z / 2), (p2, z / 2)))
    for i in range(1, d + 1):
        probes.append(basis_vector(n, i))
    return probes


def find_nondeg_invariant(g, probe_count=64, seed=0, lattice_cap=200):
    """Search for a proper nondegenerate invariant subspace.

    Returns (witness_or_None, log).  Deterministic for fixed inputs;
    absence of a witness is a normal outcome.
    """
    amb = build_ambient(g.n)
    d = g.dim_ambient
    probes = _structured_probes(g)
    rng = random.Random(seed)
    while len(probes) < probe_count:
        v = [Q(rng.randint(-3, 3)) for _ in range(d)]
        if any(x != 0 for x in v):
            probes.append(v)
    probes = probes[:max(probe_count, 1)]

    log = {"probes": len(probes), "seed": seed, "lattice_cap": lattice_cap,
           "cap_reached": False, "subspaces_explored": 0}

    seen = {}
    order = []

    def consider(space):
        key = space.key()
        if key in seen or space.dim == 0 or space.dim == d:
            if key not in seen and (space.dim == 0 or space.dim == d):
                seen[key] = space  # remember to avoid re-deriving
            return None
        seen[key] = space
        order.append(space)
        if restricted_gram_rank(space, amb.eta) == space.dim:
            return space
        return None

    def witness_checked(space):
        # belt-and-braces re-verification of the witness conditions
        assert 0 < space.dim < d
        assert is_invariant(g, space)
        assert restricted_gram_rank(space, amb.eta) == space.dim
        return space

    for v in probes:
        w = consider(invariant_closure(g, [v]))
        if w is not None:
            log["subspaces_explored"] = len(order)
            return witness_checked(w), log

    # orthogonal complements of discovered invariant subspaces are invariant
    for space in list(order):
        w = consider(space.orthogonal_complement(amb.eta))
        if w is not None:
            log["subspaces_explored"] = len(order)
            return witness_checked(w), log

    # bounded lattice exploration: pairwise sums, intersections and the
    # orthogonal complements of anything new (all invariant)
    i = 1
    while i < len(order):
        if len(order) >= lattice_cap:
            log["cap_reached"] = True
            break
        a = order[i]
        for j in range(i):
            b = order[j]
            for cand in (a.sum(b), a.intersect(b), a.orthogonal_complement(amb.eta)):
                w = consider(cand)
                if w is not None:
                    log["subspaces_explored"] = len(order)
                    return witness_checked(w), log
            if len(order) >= lattice_cap:
                log["cap_reached"] = True
                break
        i += 1
    log["subspaces_explored"] = len(order)
    return None, log


@dataclass
class InvarianceVerdict:
    status: str                   # NotWeaklyIrreducible | WeaklyIrreducible | Unknown
    witness: object = None        # Subspace
    certificate: str = None
    log: dict = field(default_factory=dict)


def builtin_certificate(g):
    """Match against subalgebras with a catalogued weak-irreducibility
    proof; an overalgebra of a weakly-irreducible algebra qualifies."""
    if g.tag in WEAKLY_IRREDUCIBLE_FAMILIES:
        return "classified family %s" % g.tag
    n = g.n
    d2 = g.dim_ambient ** 2
    c_span = Subspace(d2, [seven_tuple_to_matrix(t).flatten()
                           for t in standard_subalgebra("C", n)])
    if n == 0:
        if g.span.contains(c_span):
            return "contains the ideal C (n=0 catalogue)"
        a12 = Subspace(d2, [seven_tuple_to_matrix(t).flatten()
                            for t in standard_subalgebra("A1", 0) + standard_subalgebra("A2", 0)])
        if g.span == a12:
            return "equals A1+A2 (n=0 catalogue)"
        return None
    n1c = Subspace(d2, [seven_tuple_to_matrix(t).flatten()
                        for t in standard_subalgebra("N1", n) + standard_subalgebra("C", n)])
    if g.span.contains(n1c):
        return "contains N1+C (catalogue)"
    amb = build_ambient(n)
    jvec = amb.J.flatten()
    n1j = Subspace(d2, [seven_tuple_to_matrix(t).flatten()
                        for t in standard_subalgebra("N1", n)] + [jvec])
    if g.span.contains(n1j):
        return "contains N1+RJ (catalogue)"
    return None


def check_weak_irreducibility(g, probe_count=64, seed=0, lattice_cap=200, certificates=None):
    """Witness search first; on failure, a certificate is required for a
    positive verdict, otherwise the status is Unknown."""
    witness, log = find_nondeg_invariant(g, probe_count=probe_count, seed=seed,
                                         lattice_cap=lattice_cap)
    if witness is not None:
        return InvarianceVerdict(status="NotWeaklyIrreducible", witness=witness, log=log)
    cert = builtin_certificate(g)
    if cert is None and certificates:
        for item in certificates:
            label, alg = item if isinstance(item, tuple) else (getattr(item, "tag", "certificate"), item)
            if alg.span == g.span:
                cert = "matches %s" % label
                break
    if cert is not None:
        return InvarianceVerdict(status="WeaklyIrreducible", certificate=cert, log=log)
    return InvarianceVerdict(status="Unknown", log=log)
