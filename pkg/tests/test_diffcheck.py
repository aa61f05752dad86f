import pytest
from hypothesis import given, settings, strategies as st

from gtcf.algebra import cyclotomic
from gtcf.diffcheck import EndoCandidate, PresentedRing, apply_word, replay_zrtz, verify_hom, verify_relation
from gtcf.errors import ValidationError


def unit_circle():
    return PresentedRing.build(["x", "y"], ["x*y - 1"])


# ---------------------------------------------------------------- homomorphisms


def test_swap_on_hyperbola():
    R = unit_circle()
    assert verify_hom(R, EndoCandidate.build(R, {"x": "y", "y": "x"}))


def test_cube_root_twist():
    R = PresentedRing.build(["y", "x"], ["y^3 - x"], field_=cyclotomic(3))
    assert verify_hom(R, EndoCandidate.build(R, {"y": "zeta*y", "x": "x"}))


def test_shift_breaks_hyperbola():
    R = unit_circle()
    v = verify_hom(R, EndoCandidate.build(R, {"x": "x + 1", "y": "y"}))
    assert not v
    assert v.witness.startswith("x*y + y - 1")


def test_inconsistent_ring():
    with pytest.raises(ValidationError) as e:
        PresentedRing.build(["x"], ["x", "x - 1"])
    assert e.value.kind == "inconsistent-ring"


def test_missing_image():
    R = unit_circle()
    with pytest.raises(ValidationError) as e:
        verify_hom(R, EndoCandidate.build(R, {"x": "y"}))
    assert e.value.kind == "undefined-composition"


def test_inverted_variable():
    R = PresentedRing.build(["x"], inverse={"u": "x"})
    # x -> 2x extends to the localization with u -> u/2
    assert verify_hom(R, EndoCandidate.build(R, {"x": "2*x", "u": "1/2*u"}))
    assert not verify_hom(R, EndoCandidate.build(R, {"x": "2*x", "u": "u"}))


# ---------------------------------------------------------------- relations


def test_relation_for_n3():
    R = PresentedRing.build(["x0", "x1"])
    sigma = EndoCandidate.build(R, {"x0": "x1", "x1": "-x0 - x1"})
    sigma_inv = EndoCandidate.build(R, {"x0": "-x0 - x1", "x1": "x0"})
    tau = EndoCandidate.build(R, {"x0": "-x0", "x1": "x0 + x1"})
    maps = {"sigma": sigma, "sigma^-1": sigma_inv, "tau": tau}
    assert verify_relation(R, maps, "sigma*tau", "tau*sigma^-1", ["x0", "x1"])
    bad = dict(maps, tau=EndoCandidate.build(R, {"x0": "-x0", "x1": "-x1"}))
    v = verify_relation(R, bad, "sigma*tau", "tau*sigma^-1", ["x0", "x1"])
    assert not v and v.witness == "x0"


def test_identity_relation():
    R = unit_circle()
    ident = EndoCandidate.build(R, {"x": "x", "y": "y"})
    assert verify_relation(R, {"phi": ident}, "phi", "phi", R.ring.vars)


def test_undefined_composition():
    R = unit_circle()
    phi = EndoCandidate.build(R, {"x": "y", "y": "x"})
    with pytest.raises(ValidationError) as e:
        apply_word({"phi": phi}, "phi^-1", "x")
    assert e.value.kind == "undefined-composition"


# ---------------------------------------------------------------- replays


@pytest.mark.parametrize("n", [3, 5])
def test_scenario_a_chain_and_contradiction(n):
    r = replay_zrtz("A", n=n)
    assert r.all_hold
    assert r.conclusion["contradiction"]
    assert all(c["contradiction"] for c in r.conclusion["cases"])
    assert r.verdict


@pytest.mark.parametrize("n", [2, 4, 0])
def test_scenario_a_needs_odd_n(n):
    with pytest.raises(ValidationError) as e:
        replay_zrtz("A", n=n)
    assert e.value.kind == "invalid-params"


def test_scenario_a_mutant_fails():
    r = replay_zrtz("A", n=3, mutate=True)
    assert not r.verdict and r.first_failure() is not None
    assert r.to_json()["witness"] is not None


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_scenario_b_holds_for_any_parity(n):
    r = replay_zrtz("B", n=n)
    assert r.verdict
    gens = [i for i in r.identities if i.text.startswith("sigma'(tau'(")]
    assert len(gens) == n - 1
    sums = r.conclusion["partial_sums"]
    assert [p["zero"] for p in sums] == [False] * (n - 1) + [True]


@pytest.mark.parametrize("n", [3, 5])
def test_scenario_b_mutant_fails_at_x0(n):
    r = replay_zrtz("B", n=n, mutate=True)
    assert not r.verdict
    assert r.conclusion["relation_witness"] == "x0"


def test_scenario_c_displayed_identities():
    r = replay_zrtz("C", window=(-2, 3))
    assert r.verdict
    texts = {i.text: i.holds for i in r.identities}
    assert texts["tau'(y0) = zeta*y1"]
    assert texts["tau'(y1) = zeta^2*y0"]
    assert texts["sigma'(tau'(y0)) = sigma'(zeta*y1)"]
    assert texts["sigma'(zeta*y1) = zeta^2*y2"]
    assert texts["zeta^2*y2 = tau'(y_m1)"]


def test_scenario_c_default_window_and_mutant():
    assert replay_zrtz("C").params["window"] == [-3, 4]
    r = replay_zrtz("C", window=(-2, 3), mutate=True)
    assert not r.verdict and r.first_failure().text == "tau'(y0) = zeta*y1"


def test_unknown_scenario():
    with pytest.raises(ValidationError):
        replay_zrtz("D")


# ---------------------------------------------------------------- properties

images = st.sampled_from(["y", "x", "x + 1", "2*x", "x^2", "y^2*x", "-y", "x*y"])
extras = st.sampled_from(["x^2*y - x", "x*y^2 - y", "(x*y - 1)*(x + 3)", "x^3*y^3 - 1"])


@settings(max_examples=40, deadline=None)
@given(images, images, extras)
def test_redundant_relation_does_not_change_verdict(a, b, extra):
    R1 = unit_circle()
    R2 = PresentedRing.build(["x", "y"], ["x*y - 1", extra])
    v1 = verify_hom(R1, EndoCandidate.build(R1, {"x": a, "y": b}))
    v2 = verify_hom(R2, EndoCandidate.build(R2, {"x": a, "y": b}))
    assert bool(v1) == bool(v2)


@settings(max_examples=30, deadline=None)
@given(images, images, st.lists(st.sampled_from(["phi", "psi"]), min_size=1, max_size=4))
def test_word_against_itself(a, b, letters):
    R = unit_circle()
    maps = {"phi": EndoCandidate.build(R, {"x": a, "y": b}), "psi": EndoCandidate.build(R, {"x": b, "y": a})}
    u = "*".join(letters)
    assert verify_relation(R, maps, u, u, ["x", "y"])
