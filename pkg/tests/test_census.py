from fractions import Fraction

from polystab import polytope
from polystab.census import (
    pluecker_sign_classes_gr24_simplex,
    run_census,
    sample_near,
    sample_subspace,
    segment_constant,
)
from polystab.grassmann import Subspace
from polystab.chow import evaluate
from polystab.signvec import leq
from polystab.stab import default_chow_vector, member


def test_sampling_is_deterministic():
    a = sample_subspace(5, 3, 42, 17)
    b = sample_subspace(5, 3, 42, 17)
    assert a.basis == b.basis and a.k == 3
    assert sample_subspace(5, 3, 42, 18).basis != a.basis
    octa = polytope.cross_polytope(4)
    assert sample_near(octa, 2, 1, 3).basis == sample_near(octa, 2, 1, 3).basis


def test_sample_signs_spread():
    # each Plücker sign should be positive roughly half the time
    counts = [0] * 6
    for i in range(400):
        for j, x in enumerate(sample_subspace(4, 2, 9, i).dual_pluecker.entries):
            counts[j] += x > 0
    assert all(140 < c < 260 for c in counts)


def test_simplex_point_census_has_one_class():
    rep = run_census(polytope.simplex(4), 1, 400, 0, inside_only=True)
    assert len(rep.realized) == 1 and rep.inside_count > 0


def test_census_report_fields(delta):
    rep = run_census(delta, 2, 300, 5, workers=1, polytope_id="simplex:4")
    data = rep.to_json()
    assert data["realized_classes"] == len(rep.realized)
    assert sum(rep.realized.values()) + rep.on_arrangement == 300
    assert set(data["witness_index"]) == set(rep.realized)
    assert rep.dumps() == run_census(delta, 2, 300, 5, workers=2, polytope_id="simplex:4").dumps()


def test_census_witnesses_are_consistent(delta):
    rep = run_census(delta, 2, 400, 3, inside_only=True)
    for idx in rep.witnesses.values():
        assert member(delta, 2, sample_subspace(4, 2, 3, idx)).inside


def test_census_monotone(delta):
    sizes = [len(run_census(delta, 2, n, 8).realized) for n in (50, 200, 600)]
    assert sizes == sorted(sizes)


def test_octahedron_census_near_reference_v(octahedron, oct_v):
    rep = run_census(octahedron, 2, 1500, 2, inside_only=True)
    assert rep.realized
    # perturbing the reference V fills the zeros of its sign vector
    eps = Fraction(1, 97)
    v = Subspace.from_rows([[2, 2 + eps, 2, 0], [eps, 2, 2, 2 - 3 * eps]])
    assert member(octahedron, 2, v).inside
    cv = default_chow_vector(octahedron, 2)
    assert 0 not in evaluate(cv, v).signs
    assert leq(evaluate(cv, oct_v).signs, evaluate(cv, v).signs)


def test_realized_classes_pass_pluecker_filter(delta):
    allowed = pluecker_sign_classes_gr24_simplex()
    assert len(allowed) == 24
    rep = run_census(delta, 2, 2000, 1, inside_only=True)
    assert set(rep.realized) <= allowed


def test_segment_constant(delta, v_line, w_line):
    assert segment_constant(delta, 2, v_line, v_line, 5) is True
    assert segment_constant(delta, 2, v_line, w_line, 8) in (False, None)
    near = Subspace.from_rows([[1, 0, 1, Fraction(21, 20)], [0, 1, 2, 1]])
    assert segment_constant(delta, 2, v_line, near, 6) is True
