import pytest

from oracles import A2_S1_SYZYGY_DIMS, J3_OMEGA4
from qpsilt.algebra import algebra_from_presentation, semisimple
from qpsilt.diagnostics import (almost_split_candidate, cluster_tilting_shift_check, is_projective_simple,
                                minimal_resolution, omega4_report)
from qpsilt.modules import simple
from qpsilt.quiver import AlgElem, Quiver


def truncated_polynomial(n):
    q = Quiver([1], [("x", 1, 1)])
    return algebra_from_presentation(q, [AlgElem(q, {q.path(*["x"] * n): 1})])


def test_three_cycle_report(J3):
    rep = omega4_report(J3)
    assert not rep.obstructed and rep.verdict == "consistent"
    got = {s.vertex: s.omega4_vertex for s in rep.simples}
    assert got == J3_OMEGA4
    assert all(s.syzygy_dims == [1, 1, 1, 1] for s in rep.simples)
    assert all(s.ext1_with_regular == 0 for s in rep.simples)


def test_a2_report(A2):
    rep = omega4_report(A2)
    assert rep.obstructed and rep.verdict == "no triangle structure possible"
    kinds = {k for k, _ in rep.witnesses}
    assert "not_self_injective" in kinds and "finite_projective_dimension" in kinds
    s1 = next(s for s in rep.simples if s.vertex == "1")
    assert s1.syzygy_dims == A2_S1_SYZYGY_DIMS
    s2 = next(s for s in rep.simples if s.vertex == "2")
    assert s2.projective
    assert rep.to_dict()["witnesses"][0] == ["not_self_injective", None]


def test_truncated_polynomial_ring():
    a = truncated_polynomial(3)
    rep = omega4_report(a)
    assert not rep.obstructed
    assert rep.simples[0].syzygy_dims == [2, 1, 2, 1]


def test_semisimple_is_consistent():
    rep = omega4_report(semisimple(2))
    assert not rep.obstructed and all(s.projective for s in rep.simples)


def test_minimal_resolution_lengths(J3, A2):
    assert [len(v) for v in minimal_resolution(simple(J3, 0), 3).vertices] == [1, 1, 1, 1]
    assert minimal_resolution(simple(J3, 0), 3).vertices == [(0,), (1,), (2,), (0,)]
    assert minimal_resolution(simple(A2, 0), 3).vertices == [(0,), (1,)]


def test_almost_split_candidate_three_cycle(J3):
    for i in range(3):
        c = almost_split_candidate(J3, i)
        assert c.obstruction is None and c.passed, c.checks
        assert c.C.term(-1) == ((i + 2) % 3,) and c.C.term(0) == ((i + 1) % 3,)


def test_almost_split_candidate_obstructions(A2):
    assert is_projective_simple(A2, 1)
    with pytest.raises(ValueError):
        almost_split_candidate(A2, 1)
    assert almost_split_candidate(A2, 0).obstruction == "projective-dimension obstruction"


def test_shift_check(J3, A2):
    assert cluster_tilting_shift_check(J3)
    assert not cluster_tilting_shift_check(A2)
