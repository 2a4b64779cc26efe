import pytest

from holonomy_forge.rationals import Q
from holonomy_forge.linalg import Matrix, Subspace
from holonomy_forge.ambient import SevenTuple, ValidationError, seven_tuple_to_matrix, standard_subalgebra
from holonomy_forge.liealg import algebra_from_tuples
from holonomy_forge.families import (
    FamilySpec,
    build_family,
    spec_from_json,
    spec_to_json,
    u_block_projection,
)


def u1(n, slot=1):
    c = Matrix.zeros(n, n)
    c.rows[slot - 1][slot - 1] = Q(1)
    return [SevenTuple(n=n, B=Matrix.zeros(n, n), C=c)]


def sod2(n):
    b = Matrix.zeros(n, n)
    b.rows[0][1] = Q(1)
    b.rows[1][0] = Q(-1)
    return [SevenTuple(n=n, B=b, C=Matrix.zeros(n, n))]


def test_n0_families():
    assert build_family(FamilySpec(family="hol1_n0", n=0)).dim == 3
    assert build_family(FamilySpec(family="hol2_n0", n=0)).dim == 2
    g = build_family(FamilySpec(family="hol_gamma_n0", n=0, gamma1=1, gamma2=2))
    assert g.dim == 2
    # R(gamma1 + i gamma2) |x R: one rotation generator plus C
    t = g.basis
    c_span = Subspace(16, [seven_tuple_to_matrix(x).flatten()
                           for x in standard_subalgebra("C", 0)])
    assert g.span.contains(c_span)
    assert build_family(FamilySpec(family="hol_gamma_n0", n=0)).dim == 1


def test_full_algebra_instance():
    spec = FamilySpec(family="hol_m_u_A1_tildeA2", n=1, m=1, u_basis=u1(1))
    g = build_family(spec)
    full = algebra_from_tuples(1, standard_subalgebra("full", 1))
    assert g.dim == 6 and g.span == full.span
    assert (spec.N, spec.N1, spec.n0) == (1, 0, 1)


def test_family_dimension_counts():
    cases = [
        (FamilySpec(family="hol_m_u_A1_phi", n=1, m=0), 3),
        (FamilySpec(family="hol_m_u_A1_phi", n=1, m=1, u_basis=u1(1), phi=[1]), 5),
        (FamilySpec(family="hol_m_u_varphi_phi", n=1, m=1, u_basis=u1(1), varphi=[2], phi=[3]), 4),
        (FamilySpec(family="hol_m_u_varphi_tildeA2", n=1, m=1, u_basis=u1(1), varphi=[1]), 5),
        (FamilySpec(family="hol_m_u_lambda", n=1, m=1, lam=Q(1, 2)), 4),
        (FamilySpec(family="hol_n_u_psi_k_l", n=2, k=1, l=1, u_basis=u1(2),
                    psi=[[0, 0, 0, 1]]), 5),
        (FamilySpec(family="hol_m_u_psi_k_l_r", n=2, m=1, k=1, l=1, r=1, u_basis=u1(2),
                    psi=[[0, 1, 0, 0]]), 4),
        (FamilySpec(family="g_m_h_A1", n=1, m=0), 3),
        (FamilySpec(family="g_m_h_varphi", n=2, m=0, u_basis=sod2(2), varphi=[1]), 4),
        (FamilySpec(family="g_0_h_zeta", n=2, u_basis=sod2(2), zeta=[1]), 3),
        (FamilySpec(family="g_0_h_A1_zeta", n=1, zeta=1), 2),
    ]
    for spec, dim in cases:
        assert build_family(spec).dim == dim, spec.family


def test_g0_h_psi_k_family():
    # h = sod(1..2) inside n = 3, psi onto e_3
    n = 3
    spec = FamilySpec(family="g_0_h_psi_k", n=n, k=2, u_basis=sod2(n),
                      psi=[[0, 0, 1, 0, 0, 0]])
    g = build_family(spec)
    assert g.dim == 1 + 2 + 1  # twisted h, N1_{1..2}, C


def test_g0_h_psi_k_zeta_family():
    n = 3
    spec = FamilySpec(family="g_0_h_psi_k_zeta", n=n, k=2, u_basis=sod2(n),
                      psi=[[0, 0, 1, 0, 0, 0]], zeta=[2])
    g = build_family(spec)
    assert g.dim == 1 + 2


def test_twisted_trace_compensated_families():
    # h spanned by J_1 - (k/(n+2)) J_n: the a2-component of each element
    # compensates half the C-trace, landing the family inside the
    # trace-free part
    from holonomy_forge.liealg import is_special_su

    n = 2
    c = Matrix([[Q(3, 4), 0], [0, Q(-1, 4)]])
    h = [SevenTuple(n=n, B=Matrix.zeros(n, n), C=c)]
    g1 = build_family(FamilySpec(family="g_n_h_psi_k_l", n=n, k=1, l=1,
                                 u_basis=h, psi=[[0, 0, 0, 1]]))
    assert g1.dim == 5
    assert is_special_su(g1)
    g2 = build_family(FamilySpec(family="g_m_h_psi_k_l_r", n=n, m=1, k=1, l=1, r=2,
                                 u_basis=h, psi=[[0, 0, 0, 0]]))
    assert g2.dim == 5
    assert is_special_su(g2)


def test_projection_onto_u_block():
    spec = FamilySpec(family="hol_m_u_psi_k_l_r", n=2, m=1, k=1, l=1, r=1,
                      u_basis=u1(2), psi=[[0, 1, 0, 0]])
    g = build_family(spec)
    proj = u_block_projection(g)
    u_span = Subspace(64, [seven_tuple_to_matrix(t).flatten() for t in u1(2)])
    assert proj == u_span


def test_validation_center_dimension():
    # hol^{n,u,psi,k,l} with l = n = 2, k = 1 needs dim z(u) >= n+l-2k = 2
    spec = FamilySpec(family="hol_n_u_psi_k_l", n=2, k=1, l=2, u_basis=u1(2),
                      psi=[[0, 1, 0, 1]])
    with pytest.raises(ValidationError) as exc:
        build_family(spec)
    assert "z(u)" in str(exc.value)


def test_validation_surjectivity():
    spec = FamilySpec(family="hol_n_u_psi_k_l", n=2, k=1, l=1, u_basis=u1(2),
                      psi=[[0, 0, 0, 0]])
    with pytest.raises(ValidationError) as exc:
        build_family(spec)
    assert "surjective" in str(exc.value)


def test_validation_psi_support():
    spec = FamilySpec(family="hol_n_u_psi_k_l", n=2, k=1, l=1, u_basis=u1(2),
                      psi=[[1, 0, 0, 1]])  # e1-component is outside the target
    with pytest.raises(ValidationError) as exc:
        build_family(spec)
    assert "support" in str(exc.value)


def test_validation_vanishing_on_derived():
    # u = u(2) has u' = su(2); phi must vanish there
    n = 2
    basis = standard_subalgebra("su", n) + standard_subalgebra("J", n, lo=1, hi=2)
    spec = FamilySpec(family="hol_m_u_A1_phi", n=n, m=2, u_basis=basis,
                      phi=[1, 0, 0, 0])
    with pytest.raises(ValidationError) as exc:
        build_family(spec)
    assert "vanish" in str(exc.value)


def test_validation_lambda_nonzero():
    with pytest.raises(ValidationError) as exc:
        build_family(FamilySpec(family="hol_m_u_lambda", n=1, m=1, lam=0))
    assert "lambda" in str(exc.value)


def test_validation_ranges():
    with pytest.raises(ValidationError):
        build_family(FamilySpec(family="hol_m_u_psi_k_l_r", n=2, m=2, k=1, l=1, r=2,
                                u_basis=u1(2), psi=[[0, 1, 0, 0]]))
    with pytest.raises(ValidationError):
        build_family(FamilySpec(family="hol_m_u_A1_tildeA2", n=1, m=2))


def test_validation_membership():
    # u not inside u(m): element acts on E_2 but m = 1
    spec = FamilySpec(family="hol_m_u_A1_tildeA2", n=2, m=1, u_basis=u1(2, slot=2))
    with pytest.raises(ValidationError) as exc:
        build_family(spec)
    assert "subalgebra" in str(exc.value)


def test_validation_basis_ordering():
    # u(2) basis given with a center element first is rejected
    n = 2
    basis = standard_subalgebra("J", n, lo=1, hi=2) + standard_subalgebra("su", n)
    spec = FamilySpec(family="hol_m_u_A1_tildeA2", n=n, m=2, u_basis=basis)
    with pytest.raises(ValidationError) as exc:
        build_family(spec)
    assert "span" in str(exc.value)


def test_all_small_families_are_closed():
    # closure is re-checked inside the constructor; build a spread of
    # instances at n <= 2 and confirm construction succeeds
    specs = [
        FamilySpec(family="hol_m_u_A1_tildeA2", n=2, m=2, u_basis=u1(2)),
        FamilySpec(family="hol_m_u_A1_tildeA2", n=2, m=1, u_basis=u1(2)),
        FamilySpec(family="hol_m_u_varphi_phi", n=2, m=2, u_basis=u1(2), varphi=[1], phi=[1]),
        FamilySpec(family="hol_m_u_lambda", n=2, m=0, lam=2),
        FamilySpec(family="hol_n_u_psi_k_l", n=2, k=2, l=2,
                   u_basis=u1(2) + [SevenTuple(n=2, C=Matrix([[0, 0], [0, 1]]))],
                   psi=[[0, 0, 0, 0], [0, 0, 0, 0]]),
        FamilySpec(family="g_m_h_A1", n=2, m=1, u_basis=sod2(2)[0:0]),
        FamilySpec(family="g_0_h_zeta", n=2, u_basis=sod2(2), zeta=[Q(1, 3)]),
    ]
    for spec in specs:
        g = build_family(spec)
        assert g.dim > 0


def test_spec_json_round_trip():
    spec = FamilySpec(family="hol_m_u_psi_k_l_r", n=2, m=1, k=1, l=1, r=1,
                      u_basis=u1(2), psi=[[0, 1, 0, 0]])
    g = build_family(spec)
    data = spec_to_json(spec)
    spec2 = spec_from_json(data)
    g2 = build_family(spec2)
    assert g.span == g2.span
    assert spec_to_json(spec2) == data


def test_spec_json_rejects_garbage():
    with pytest.raises(ValidationError):
        spec_from_json({"n": 1})
    with pytest.raises(ValidationError):
        spec_from_json({"family": "hol1_n0", "n": -1})
