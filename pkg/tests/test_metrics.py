import pytest

from holonomy_forge.rationals import Q
from holonomy_forge.linalg import Matrix
from holonomy_forge.poly import MultiPoly
from holonomy_forge.ambient import SevenTuple, ValidationError, build_ambient
from holonomy_forge.families import FamilySpec, build_family
from holonomy_forge.metrics import (
    MetricBlocks,
    assemble_metric,
    build_metric_model,
    flat_metric,
    metric_blocks,
)


def mono(dim, coeff, **powers):
    e = [0] * dim
    for var, p in powers.items():
        e[int(var[1:]) - 1] = p
    return MultiPoly(dim, {tuple(e): Q(coeff)})


def test_n0_row4_blocks():
    spec = FamilySpec(family="hol_gamma_n0", n=0, gamma1=0, gamma2=0)
    blocks = metric_blocks(spec)
    assert blocks.f[0] == mono(4, 1, x4=2)
    assert blocks.f[1].is_zero() and blocks.f[2].is_zero()


def test_n0_row1_blocks():
    spec = FamilySpec(family="hol1_n0", n=0)
    blocks = metric_blocks(spec)
    f1 = mono(4, -2, x2=1, x3=1) + mono(4, -1, x1=1, x3=2)
    f3 = mono(4, 2, x1=1, x3=1) + mono(4, -1, x2=1, x3=2)
    assert blocks.f[0] == f1
    assert blocks.f[1] == f1 * (-1)
    assert blocks.f[2] == f3


def test_empty_u_gives_zero_blocks():
    blocks = MetricBlocks(2)
    blocks.add_f0_and_u([], [], 0, 0)
    assert all(p.is_zero() for p in blocks.f)
    assert blocks.u == {}


def test_assembled_metric_is_eta_at_origin():
    u1 = [SevenTuple(n=1, B=Matrix([[0]]), C=Matrix([[1]]))]
    specs = [
        FamilySpec(family="hol1_n0", n=0),
        FamilySpec(family="hol_m_u_A1_tildeA2", n=1, m=1, u_basis=u1),
        FamilySpec(family="hol_m_u_lambda", n=1, m=1, lam=Q(2, 3)),
    ]
    for spec in specs:
        model, _ = build_metric_model(spec)
        amb = build_ambient(spec.n)
        g0 = Matrix([[model.g[a][b].const_term() for b in range(model.D)]
                     for a in range(model.D)])
        assert g0 == amb.eta


def test_nonvanishing_block_rejected():
    blocks = MetricBlocks(1)
    blocks.f[0] = MultiPoly.const(6, 1)
    with pytest.raises(ValidationError):
        assemble_metric(blocks, 1)


def test_flat_metric_template():
    m = flat_metric(1)
    assert m.f1.is_zero() and m.f2.is_zero() and m.f3.is_zero()
    amb = build_ambient(1)
    g0 = Matrix([[m.g[a][b].const_term() for b in range(6)] for a in range(6)])
    assert g0 == amb.eta


def test_metric_requires_validated_spec():
    spec = FamilySpec(family="hol_m_u_lambda", n=1, m=1, lam=1)
    with pytest.raises(ValidationError):
        metric_blocks(spec)  # not passed through build_family yet
    build_family(spec)
    blocks = metric_blocks(spec)
    assert not blocks.f[0].is_zero()


def test_a1_block_formula():
    blocks = MetricBlocks(1)
    blocks.add_varphi({2: 1})
    # f1 = -2 x^2 (x^5)^2 / 2! = -x^2 (x^5)^2
    assert blocks.f[0] == mono(6, -1, x2=1, x5=2)
    assert blocks.f[1] == mono(6, 1, x2=1, x5=2)
    assert blocks.f[2] == mono(6, 1, x1=1, x5=2)


def test_tilde_and_breve_blocks():
    blocks = MetricBlocks(1)
    blocks.add_tilde(1, 1)
    assert blocks.f[0] == mono(6, 1, x3=2) + mono(6, -1, x4=2)
    assert blocks.f[2] == mono(6, 2, x3=1, x4=1)
    blocks = MetricBlocks(1)
    blocks.add_breve(2, 1, 1)
    assert blocks.f[0] == mono(6, -1, x4=1, x5=2)
    assert blocks.f[1] == mono(6, 1, x4=1, x5=2)
    assert blocks.f[2] == mono(6, 1, x3=1, x5=2)


def test_u_coupling_from_basis_matrices():
    u1 = [SevenTuple(n=1, B=Matrix([[0]]), C=Matrix([[1]]))]
    spec = FamilySpec(family="hol_m_u_A1_tildeA2", n=1, m=1, u_basis=u1)
    model, _ = build_metric_model(spec)
    assert model.u[3] == mono(6, -1, x4=1, x5=1)
    assert model.u[4] == mono(6, 1, x3=1, x5=1)


def test_metric_json_round_trip():
    from holonomy_forge import jsonio

    spec = FamilySpec(family="hol_m_u_lambda", n=1, m=1, lam=1)
    model, _ = build_metric_model(spec)
    data = jsonio.metric_to_json(model)
    model2 = jsonio.metric_from_json(data)
    assert model2.f1 == model.f1 and model2.f2 == model.f2 and model2.f3 == model.f3
    for a in range(model.D):
        for b in range(model.D):
            assert model.g[a][b] == model2.g[a][b]
    assert jsonio.metric_to_json(model2) == data
