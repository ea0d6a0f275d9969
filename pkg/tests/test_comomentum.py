import pytest

from msplect.comomentum import (
    ComomentumError,
    ComomentumMap,
    build_exact_comomentum,
    classify_preservation,
    closure_defect,
    closure_defects,
    construct_weak_comomentum,
    momentum_conservation_report,
    verify_comomentum,
    verify_weak_comomentum,
)
from msplect.exterior import Form, MultiVec, _contract
from msplect.fixtures import comomentum_flags, corrected_map, fixture
from msplect.lie import ActionData, LieAlgebraData, WedgePower, lie_kernel, so3_rotation_action, translation_action
from msplect.multisymplectic import Convention, DEFINITION, PlecticSystem, zeta
from msplect.parser import parse_expr
from msplect.phase_space import build_phase_space, lift_action
from msplect.polynomial import Chart

POSITIVE = Convention(1, 1)
E = WedgePower.basis


def translation(convention=POSITIVE):
    item = fixture("translation-comomentum")
    cmap, sys = corrected_map(item["spec"], item["oracle"]["flags"], convention)
    H = parse_expr(sys.chart, fixture("translation-hamiltonian")["spec"]["corrected"])
    return cmap, sys.with_hamiltonian(H)


def test_translation_flags_match_oracle():
    item = fixture("translation-comomentum")
    assert comomentum_flags(item["spec"]) == item["oracle"]["flags"]
    # e3 as printed is not a primitive of anything useful
    assert item["oracle"]["flags"]["e3"]["printed"] == 0


@pytest.mark.parametrize("conv", [POSITIVE, DEFINITION])
def test_translation_full_map(conv):
    cmap, sys = translation(conv)
    assert sorted(len(p.coeffs) and next(iter(p.coeffs)) for k in cmap.degrees() for p, _ in cmap.components[k]) == \
        sorted([(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)])
    cmap.weak = False
    rep = verify_comomentum(cmap, sys)
    assert rep.ok and len(rep.entries) == 7


def test_translation_wrong_convention_fails():
    cmap, sys = translation(POSITIVE)
    cmap.weak = False
    rep = verify_comomentum(cmap, sys.with_convention(DEFINITION))
    assert not rep.ok


def test_perturbed_component_is_reported():
    cmap, sys = translation(POSITIVE)
    ch = sys.chart
    items = dict(cmap.components)
    p, f = items[2][0]
    items[2] = [(p, f + parse_expr(ch, "q1*d(q2)^d(p1)^d(p2)"))] + items[2][1:]
    bad = ComomentumMap(cmap.action, cmap.n, items)
    rep = verify_comomentum(bad, sys)
    assert not rep.ok
    assert rep.first_failure().degree == 2


def test_trivial_action_zero_map():
    ch = Chart(["x", "y", "z"])
    sys = PlecticSystem(ch, parse_expr(ch, "d(x)^d(y)^d(z)"), parse_expr(ch, "x*d(y)"))
    act = ActionData.trivial(LieAlgebraData.abelian(2), ch)
    zero = ComomentumMap.from_basis(act, 2, {(0,): Form.zero(ch, 1), (1,): Form.zero(ch, 1),
                                             (0, 1): Form.zero(ch, 0)})
    assert verify_comomentum(zero, sys).ok
    assert classify_preservation(act, sys).level == "strict"
    rep = momentum_conservation_report(construct_weak_comomentum(sys, act), sys)
    assert rep.ok and all(e.conserved.level == "strict" and e.symmetry.level == "strict" for e in rep.entries)


def test_translation_preservation_and_conservation():
    cmap, sys = translation(POSITIVE)
    assert classify_preservation(cmap.action, sys).level == "global"
    rep = momentum_conservation_report(cmap, sys)
    assert rep.ok and len(rep.entries) == 7
    assert all(e.conserved.at_least("global") for e in rep.entries)
    assert all(e.symmetry.at_least("global") for e in rep.entries)


def test_preservation_none_and_errors():
    ch = Chart(["x", "y", "z"])
    vol = parse_expr(ch, "d(x)^d(y)^d(z)")
    sys = PlecticSystem(ch, vol, parse_expr(ch, "x*y*z*d(y)"))
    act = translation_action(ch, [0])
    assert classify_preservation(act, sys).level == "none"
    dil = ActionData(LieAlgebraData.abelian(1), ch, [parse_expr(ch, "x*@x")])
    with pytest.raises(ComomentumError):
        classify_preservation(dil, sys)
    with pytest.raises(ComomentumError):
        classify_preservation(act, PlecticSystem(ch, vol))


@pytest.mark.parametrize("fid", ["complex-volume-comomentum", "kahler-comomentum"])
def test_complex_examples_weak(fid):
    item = fixture(fid)
    for conv in (POSITIVE, DEFINITION):
        cmap, sys = corrected_map(item["spec"], item["oracle"]["flags"], conv)
        rep = verify_weak_comomentum(cmap, sys)
        assert rep.ok and rep.entries


def test_complex_volume_printed_values():
    # under the definition's sign f2 = 1/4 Re(z1 z2 z3) holds as printed, f1(A) picks up a sign
    item = fixture("complex-volume-comomentum")
    flags = item["oracle"]["flags"]
    assert flags["e1^e2"]["printed"] == -1
    assert flags["e1"]["printed"] == 1
    assert flags["e2"] == {"printed": 0, "corrected": 1}


def test_abelian_weak_checks_full_basis():
    item = fixture("complex-volume-comomentum")
    cmap, sys = corrected_map(item["spec"], item["oracle"]["flags"], DEFINITION)
    g = cmap.action.algebra
    assert [len(lie_kernel(g, k)) for k in (1, 2)] == [2, 1]
    assert len(verify_weak_comomentum(cmap, sys).entries) == 3


def test_weak_checker_rejects_non_kernel():
    ch = Chart(["x", "y", "z", "w"])
    act = so3_rotation_action(ch)
    sys = PlecticSystem(ch, parse_expr(ch, "d(x)^d(y)^d(z)^d(w)"))
    cmap = construct_weak_comomentum(sys, act)
    with pytest.raises(ComomentumError):
        verify_weak_comomentum(cmap, sys, {2: [E(0, 1)]})


def _lifted_rotation_phase_space(k):
    base = Chart(["q1", "q2", "q3"])
    ps = build_phase_space(base, k)
    return ps, lift_action(ps, so3_rotation_action(base))


def test_exact_construction_phase_space():
    ps, act = _lifted_rotation_phase_space(2)
    sys = ps.system
    cmap = build_exact_comomentum(sys, ps.theta, act)
    assert cmap.degrees() == [1]  # Λ^2 kernel of so(3) is empty, f_3 needs l <= k
    assert verify_weak_comomentum(cmap, sys).ok
    for p, f in cmap.components[1]:
        assert f.degree == 1
    ps1 = build_phase_space(Chart(["q1", "q2", "q3"]), 1)
    trans = lift_action(ps1, translation_action(ps1.base, [0, 1, 2]))
    cm = build_exact_comomentum(ps1.system, ps1.theta, trans)
    assert cm.evaluate(E(0)) == -parse_expr(ps1.chart, "p1")
    assert verify_weak_comomentum(cm, ps1.system).ok


def test_exact_construction_errors():
    ps, act = _lifted_rotation_phase_space(1)
    with pytest.raises(ComomentumError):
        build_exact_comomentum(ps.system, -ps.theta, act)
    base_rot = so3_rotation_action(Chart(["q1", "q2", "q3"]))
    horizontal = ActionData(base_rot.algebra, ps.chart,
                            [MultiVec(ps.chart, 1, {I: f.embed(ps.chart.dim, [0, 1, 2]) for I, f in V.comps.items()})
                             for V in base_rot.generators])
    with pytest.raises(ComomentumError):
        build_exact_comomentum(ps.system, ps.theta, horizontal)


def test_exact_and_trivial_action():
    ps = build_phase_space(Chart(["q1", "q2"]), 1)
    act = ActionData.trivial(LieAlgebraData.abelian(2), ps.chart)
    cmap = build_exact_comomentum(ps.system, ps.theta, act)
    assert all(f.is_zero() for k in cmap.degrees() for _, f in cmap.components[k])


def test_closure_defects_translation():
    cmap, sys = translation(POSITIVE)
    defects = closure_defects(cmap, sys)
    assert defects and all(d.ok for d in defects)


def test_closure_defects_nonabelian_phase_space():
    ps, act = _lifted_rotation_phase_space(1)
    cmap = build_exact_comomentum(ps.system, ps.theta, act)
    defects = closure_defects(cmap, ps.system)
    assert len(defects) == 9
    for d in defects:
        assert d.ok
        # symplectic case: the defect is a constant function, here zero
        assert d.form.degree == 0 and d.form.is_constant()


def test_closure_defect_homotopy_map_so3():
    ch = Chart(["x", "y", "z", "w"])
    act = so3_rotation_action(ch)
    sys = PlecticSystem(ch, parse_expr(ch, "d(x)^d(y)^d(z)^d(w)"))
    cmap = construct_weak_comomentum(sys, act)
    assert verify_weak_comomentum(cmap, sys).ok
    for d in closure_defects(cmap, sys):
        assert d.closed and d.field_residual.is_zero()
    d = closure_defect(cmap, sys, E(0), E(0))
    assert d.form.is_zero()


def test_momentum_sign_with_zeta():
    # the exact map is f_l(p) = c·ζ(l+1)·V_p⌟θ
    ps = build_phase_space(Chart(["q1", "q2", "q3"]), 2)
    trans = lift_action(ps, translation_action(ps.base, [0, 1, 2]))
    cmap = build_exact_comomentum(ps.system, ps.theta, trans)
    assert cmap.degrees() == [1, 2]
    p = E(0, 1)
    V = trans.generator_of(p)
    assert cmap.evaluate(p) == _contract(V, ps.theta) * (-zeta(3))
    assert verify_weak_comomentum(cmap, ps.system).ok
