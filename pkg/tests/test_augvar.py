import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knot_aug.augvar import (
    check_witness,
    containment_check,
    enumerate_system,
    enumerate_variety,
    monomial_map,
    unknot_variety,
    unknot_witness,
)
from knot_aug.braid import parse_braid
from knot_aug.errors import DomainError, ResourceError, UsageError
from knot_aug.families import P_m, figure_eight_P_derived, figure_eight_P_transcribed
from knot_aug.h0 import presentation
from knot_aug.rings import CommPoly, LaurentPoly, PrimeFieldElem

BACKENDS = ["dfs", "bfs"]


def brute_force(generators, p):
    """Oracle: try every assignment with plain Python field arithmetic."""
    variables = generators[0].variables
    pts = set()
    for x, y, z in itertools.product(range(1, p), repeat=3):
        base = {"lambda": PrimeFieldElem(p, x), "mu": PrimeFieldElem(p, y), "U": PrimeFieldElem(p, z)}
        for vals in itertools.product(range(p), repeat=len(variables)):
            at = dict(base, **{v: PrimeFieldElem(p, c) for v, c in zip(variables, vals)})
            if all(g.evaluate(at) == 0 for g in generators):
                pts.add((x, y, z))
                break
    return pts


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("backend", BACKENDS)
def test_unknot_matches_closed_form(p, backend):
    pres = presentation(parse_braid("", 1))
    assert enumerate_variety(pres, p, backend=backend).points == unknot_variety(p).points


def test_unknot_closed_form_small():
    assert unknot_variety(3).points == {(1, 1, 1), (1, 2, 1), (2, 1, 1)}


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("backend", BACKENDS)
def test_trefoil_against_brute_force(p, backend):
    pres = presentation(parse_braid("1 1 1", 2))
    assert enumerate_variety(pres, p, backend=backend).points == brute_force(pres.generators, p)


@pytest.mark.parametrize("p", [5, 7])
def test_trefoil_presentations_agree(p):
    v2 = enumerate_variety(presentation(parse_braid("1 1 1", 2)), p)
    v3 = enumerate_variety(presentation(parse_braid("1 2 2 2", 3)), p)
    assert v2.points == v3.points


@pytest.mark.parametrize("backend", BACKENDS)
def test_witnesses_satisfy_every_generator(backend):
    pres = presentation(parse_braid("1 2 2 2", 3))
    V = enumerate_variety(pres, 5, witnesses=True, backend=backend)
    assert V.witnesses.keys() == V.points
    for pt, w in V.witnesses.items():
        assert (w["lambda"], w["mu"], w["U"]) == pt
        assert check_witness(pres, 5, w)


def test_backends_return_identical_witnesses():
    pres = presentation(parse_braid("1 -2 1 -2", 3))
    a = enumerate_variety(pres, 7, witnesses=True, backend="dfs")
    b = enumerate_variety(pres, 7, witnesses=True, backend="bfs")
    assert a.points == b.points and a.witnesses == b.witnesses


VARS = ("s", "t")


@st.composite
def systems(draw):
    s, t = CommPoly.var(VARS, "s"), CommPoly.var(VARS, "t")
    gens = []
    for _ in range(draw(st.integers(1, 3))):
        g = CommPoly.const(VARS, 0)
        for _ in range(draw(st.integers(1, 4))):
            mono = LaurentPoly.monomial(
                draw(st.integers(-2, 2)),
                lam=draw(st.integers(-1, 1)),
                mu=draw(st.integers(-1, 1)),
                U=draw(st.integers(-1, 1)),
            )
            g = g + s ** draw(st.integers(0, 2)) * t ** draw(st.integers(0, 2)) * mono
        gens.append(g)
    return gens


@settings(max_examples=40)
@given(systems(), st.sampled_from([3, 5]))
def test_random_systems_against_brute_force(gens, p):
    expected = brute_force(gens, p)
    for backend in BACKENDS:
        assert enumerate_system(gens, p, backend=backend).points == expected


def test_budget_and_domain_errors(monkeypatch):
    pres = presentation(parse_braid("1 1 1", 2))
    with pytest.raises(ResourceError) as err:
        enumerate_variety(pres, 5, budget=10)
    assert err.value.required == 4**3 * 5**2
    monkeypatch.setenv("KNOTAUG_BUDGET", "10")
    with pytest.raises(ResourceError):
        enumerate_variety(pres, 5, backend="bfs")
    with pytest.raises(DomainError):
        enumerate_variety(pres, 9)


def test_disable_numba_flag(monkeypatch):
    from knot_aug import _kernels

    monkeypatch.setenv("KNOTAUG_DISABLE_NUMBA", "1")
    assert _kernels.default_backend() == "bfs"
    pres = presentation(parse_braid("1 1 1", 2))
    assert enumerate_variety(pres, 5).points == enumerate_variety(pres, 5, backend="dfs").points


def test_output_is_sorted():
    V = unknot_variety(5)
    pts = V.to_json()["points"]
    assert pts == sorted(pts)


def test_monomial_map():
    V = unknot_variety(5)
    assert monomial_map(V, 1, 0, 0, 0).points == V.points
    W = monomial_map(V, -1, 2, 1, 3)
    assert {Z for _, _, Z in W.points} == {Z for _, _, Z in V.points}
    with pytest.raises(UsageError):
        monomial_map(V, 2, 0, 0, 0)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_unknot_witness_maps_onto_y_Z(p):
    a, b, c, d = -1, 2, 1, 1
    V = unknot_variety(p)
    W = monomial_map(V, a, b, c, d)
    for y in range(1, p):
        for Z in range(1, p):
            t = pow(y * pow(Z, -d, p) % p, a, p)
            if t in (1, Z):
                continue
            pt = unknot_witness(p, y, Z, a, d)
            assert pt in V
            x0, y0, Z0 = pt
            assert (pow(y0, a, p) * pow(Z0, d, p) % p, Z0) == (y, Z)
            assert (y, Z) in W.project_yZ()


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("m", [1, 2])
def test_torus_containment(p, m):
    word = "1 " + " ".join(["2"] * (2 * m + 1))
    V = enumerate_variety(presentation(parse_braid(word, 3)), p)
    assert containment_check(V, P_m(m)).ok


@pytest.mark.parametrize("p", [5, 7, 11])
def test_figure_eight_containment_with_derived_P(p):
    V = enumerate_variety(presentation(parse_braid("1 2 -3 2 -3", 4)), p)
    assert containment_check(V, figure_eight_P_derived()).ok


def test_figure_eight_braids_agree():
    a = enumerate_variety(presentation(parse_braid("1 -2 1 -2", 3)), 7)
    b = enumerate_variety(presentation(parse_braid("1 2 -3 2 -3", 4)), 7)
    assert a.points == b.points


def test_published_P_violates_containment_over_F7():
    V = enumerate_variety(presentation(parse_braid("1 2 -3 2 -3", 4)), 7)
    rep = containment_check(V, figure_eight_P_transcribed())
    assert rep.violations == [(2, 3, 4), (4, 6, 2)]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_unknot_presentations_agree(p):
    v1 = enumerate_variety(presentation(parse_braid("", 1)), p)
    v2 = enumerate_variety(presentation(parse_braid("1", 2)), p)
    assert v1.points == v2.points


@settings(max_examples=30)
@given(st.sampled_from([1, -1]), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.sampled_from([5, 7]))
def test_monomial_map_is_injective_and_acts_on_projection(a, b, c, d, p):
    V = enumerate_variety(presentation(parse_braid("1 1 1", 2)), p)
    W = monomial_map(V, a, b, c, d)
    assert len(W) == len(V)
    assert W.project_yZ() == {(pow(y, a, p) * pow(Z, d, p) % p, Z) for y, Z in V.project_yZ()}


def test_empty_variety_passes_containment():
    from knot_aug.augvar import VarietyPointSet

    assert containment_check(VarietyPointSet(5, frozenset()), P_m(1)).ok
