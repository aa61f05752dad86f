import pytest
from hypothesis import given, settings, strategies as st

from gtcf.algebra import QQ, cyclotomic
from gtcf.bass_serre import (
    c2_free_c2, c4_c4_hnn, dinfinity, finite_marked_group, free_marked_group, free_times_finite, klein_hnn,
)
from gtcf.errors import CheckFailed, ValidationError
from gtcf.gpairs import (
    Presentation, check_g_pair, full_space_pair, grid_to_classes, kernel_from_pair, lemma_conditions,
    mobius_of_word, mobius_pair, pair_from_hom_data, pair_from_kernel, prolong, tower,
    word_problem_diagonal_check,
)
from gtcf.group_core import Word, cyclic_group, diagonal_classes, klein_group, parse_word
from gtcf.variety import GField, affine_space, fiber_product, same_variety, twist, variety


def Z():
    return free_marked_group(1)


def C2():
    return finite_marked_group(cyclic_group(2, ["1", "sigma"]), "C2")


def z_pair(f="x^2"):
    F = GField.trivial(Z())
    return affine_space(F, ["1"]), variety(F, [("1", ["x"]), ("sigma", ["y"])], [f"y - ({f})"])


def c2_pair(eq="x*y - 1"):
    F = GField.trivial(C2())
    return affine_space(F, ["1"]), variety(F, [("1", ["x"]), ("sigma", ["y"])], [eq])


def dinf_affine_pair():
    M = dinfinity()
    F = GField.trivial(M)
    blocks = [(str(r), [v]) for r, v in zip(M.rho, ["a", "x", "b", "c", "d", "e"])]
    W = variety(F, blocks, ["b - x - 1", "a - x + 1", "d + x", "e + x + 1", "c + x - 1"])
    return affine_space(F, ["1"]), W


# ---------------------------------------------------------------- pair checks


def test_z_graph_is_a_pair():
    V, W = z_pair()
    rep = check_g_pair(V, W)
    assert rep.verdict and rep.kind == "free"
    assert not rep.failing()


def test_z_point_is_not_a_pair():
    F = GField.trivial(Z())
    V = affine_space(F, ["1"])
    W = variety(F, [("1", ["x"]), ("sigma", ["y"])], ["x", "y"])
    rep = check_g_pair(V, W)
    assert not rep.verdict


def test_c2_inverse_pair():
    V, W = c2_pair()
    assert check_g_pair(V, W).verdict


def test_c2_translation_fails_with_witness():
    V, W = c2_pair("y - x - 1")
    rep = check_g_pair(V, W)
    assert not rep.verdict
    bad = rep.failing()
    assert len(bad) == 1 and bad[0].witness is not None
    assert bad[0].witness["found"] == ["x - y - 1"]
    assert rep.to_json()["verdict"] is False


FULL_KINDS = {
    "Z": Z,
    "F2": lambda: free_marked_group(2),
    "C2": C2,
    "C3": lambda: finite_marked_group(cyclic_group(3), "C3"),
    "C2xC2": lambda: finite_marked_group(klein_group(), "C2xC2"),
    "C2*C2": c2_free_c2,
    "klein-hnn": klein_hnn,
    "c4*c4-hnn": c4_c4_hnn,
    "Dinf": dinfinity,
    "F1xC2": lambda: free_times_finite(1, cyclic_group(2, ["1", "tau"])),
}


@pytest.mark.parametrize("name", sorted(FULL_KINDS))
def test_full_space_is_a_pair(name):
    M = FULL_KINDS[name]()
    V, W = full_space_pair(GField.trivial(M))
    assert check_g_pair(V, W, M).verdict


def test_dinfinity_affine_pair():
    V, W = dinf_affine_pair()
    rep = check_g_pair(V, W)
    assert rep.verdict and rep.kind == "dinfinity"


def test_dinfinity_wrong_reflection_fails():
    M = dinfinity()
    F = GField.trivial(M)
    blocks = [(str(r), [v]) for r, v in zip(M.rho, ["a", "x", "b", "c", "d", "e"])]
    # tau(a) = -a but sigma*tau spelled with the wrong sign
    W = variety(F, blocks, ["b - x - 1", "a - x + 1", "d + x", "e + x - 1", "c + x + 1"])
    assert not check_g_pair(affine_space(F, ["1"]), W).verdict


def test_block_mismatch():
    V, W = z_pair()
    F = GField.trivial(Z())
    bad = variety(F, [("1", ["x"])], [])
    with pytest.raises(ValidationError) as e:
        check_g_pair(V, bad)
    assert e.value.kind == "block-mismatch"


def test_c2_star_c2_pair_from_c2_pairs():
    M = c2_free_c2()
    F = GField.trivial(M)
    V = affine_space(F, ["1"])
    W = variety(F, [("1", ["x"]), ("sigma", ["y"]), ("tau", ["z"])], ["x*y - 1", "x + z"])
    rep = check_g_pair(V, W)
    assert rep.verdict and rep.kind == "tree-amalgam"
    W2 = variety(F, [("1", ["x"]), ("sigma", ["y"]), ("tau", ["z"])], ["x*y - 1", "z - x - 1"])
    assert not check_g_pair(V, W2).verdict


def test_klein_hnn_pair_with_trivial_stable_part():
    M = klein_hnn()
    F = GField.trivial(M)
    V, W = full_space_pair(F)
    rep = check_g_pair(V, W)
    assert rep.kind == "hnn"
    assert any(c.name.startswith("stable") for c in rep.checks)


# ---------------------------------------------------------------- prolongation


def test_z_prolong_matches_fiber_product():
    V, W = z_pair()
    Wp = prolong(V, W)
    assert [str(b.label) for b in Wp.blocks] == ["1", "sigma", "sigma^2"]
    direct = fiber_product(W, twist(W, "sigma"), ["sigma"])
    assert same_variety(Wp, direct)


def test_c2_prolong_stabilizes():
    V, W = c2_pair()
    Wp = prolong(V, W)
    assert [str(b.label) for b in Wp.blocks] == ["1", "sigma"]
    assert same_variety(Wp, W)


@pytest.mark.parametrize("name", ["Z", "C2", "C2*C2", "Dinf"])
def test_prolong_of_full_space_is_full(name):
    M = FULL_KINDS[name]()
    V, W = full_space_pair(GField.trivial(M))
    Wp = prolong(V, W, M)
    assert Wp.ideal.is_zero() or not Wp.ideal.groebner()
    keys = {M.key(M.rho[i] * M.rho[j]) for i in range(M.m) for j in range(M.m)}
    assert {b.key for b in Wp.blocks} == keys


def test_prolong_bad_mode():
    V, W = z_pair()
    with pytest.raises(ValidationError):
        prolong(V, W, mode="diagonal")


def test_equations_mode_collapses_to_class_mode():
    for V, W in (z_pair(), c2_pair()):
        M = W.group
        grid = prolong(V, W, M, mode="equations")
        assert same_variety(grid_to_classes(grid), prolong(V, W, M))


# ---------------------------------------------------------------- word problem diagonals


def test_z_identified_class():
    V, W = z_pair()
    Wp = prolong(V, W)
    assert word_problem_diagonal_check(Wp, (0, 1, 1, 0))
    grid = prolong(V, W, mode="equations")
    assert word_problem_diagonal_check(grid, (0, 1, 1, 0))


def test_all_relations_hold_on_prolongation():
    for V, W in (z_pair(), c2_pair(), dinf_affine_pair()):
        M = W.group
        Wp = prolong(V, W, M)
        for rel in diagonal_classes(M).all_relations():
            assert word_problem_diagonal_check(Wp, rel, M)


def test_hand_built_grid_without_identification_fails():
    V, W = z_pair()
    grid = prolong(V, W, mode="equations")
    from gtcf.algebra.ideal import Ideal

    grid.ideal = Ideal(grid.ideal.ring, [])
    assert not word_problem_diagonal_check(grid, (0, 1, 1, 0))


def test_non_relation_is_false():
    V, W = z_pair()
    assert not word_problem_diagonal_check(prolong(V, W), (0, 1, 1, 1))


def test_relation_out_of_range():
    V, W = z_pair()
    with pytest.raises(ValidationError):
        word_problem_diagonal_check(prolong(V, W), (0, 5, 1, 0))


# ---------------------------------------------------------------- towers


def test_z_tower_three_steps():
    V, W = z_pair()
    T = tower(V, W, steps=3)
    assert len(T.stages) == 5
    for n, S in enumerate(T.stages[1:], start=1):
        vs = [b.vars[0] for b in S.blocks]
        assert len(vs) == n + 1
        R = S.ring
        expected = [R(f"{vs[i + 1]} - {vs[i]}^2") for i in range(n)]
        from gtcf.algebra import ideal_equal
        from gtcf.algebra.ideal import Ideal

        assert ideal_equal(S.ideal, Ideal(R, expected))
    assert all(r.verdict for r in T.reports)
    assert T.to_json()["schema"] == "gtcf.tower/1"


def test_c2_tower_stabilizes():
    V, W = c2_pair()
    T = tower(V, W, steps=5)
    assert len(T.stages) == 7
    for S in T.stages[2:]:
        assert same_variety(S, W)


def test_tower_zero_steps():
    V, W = z_pair()
    T = tower(V, W, steps=0)
    assert T.stages == [V, W]


def test_tower_rejects_non_pair():
    V, W = c2_pair("y - x - 1")
    with pytest.raises(CheckFailed) as e:
        tower(V, W, steps=2)
    assert e.value.kind == "pair-check-failed"
    assert e.value.report is not None


# ---------------------------------------------------------------- kernels


def test_kernel_of_z_graph():
    V, W = z_pair()
    hom = kernel_from_pair(V, W)
    assert hom[1]["generator"] == "sigma"
    assert list(hom[1]["images"].values()) == ["y"]
    assert list(hom[0]["images"].values()) == ["x"]


def test_kernel_of_c2_pair_is_inverse():
    V, W = c2_pair()
    hom = kernel_from_pair(V, W)
    y = list(hom[1]["images"].values())[0]
    x = list(hom[0]["images"].values())[0]
    assert W.ideal.contains(W.ring(f"{x}*{y} - 1"))


def test_kernel_of_full_space_is_inclusion():
    M = c2_free_c2()
    V, W = full_space_pair(GField.trivial(M))
    hom = kernel_from_pair(V, W)
    targets = [v for h in hom for v in h["images"].values()]
    assert len(set(targets)) == M.m


def test_kernel_of_non_pair():
    V, W = c2_pair("y - x - 1")
    with pytest.raises(CheckFailed):
        kernel_from_pair(V, W)


def test_pair_from_graph_kernel():
    P = Presentation.parse(["x", "y"], ["y - x^2"])
    F = GField.trivial(Z())
    V, W, rep = pair_from_kernel(F, P, ["x"], {1: ["y"]})
    assert V.ideal.is_zero() or not V.ideal.groebner()
    _, W0 = z_pair()
    assert same_variety(W, W0)
    assert rep.verdict


def test_pair_from_constant_kernel():
    P = Presentation.parse(["s"])
    F = GField.trivial(Z())
    V, W, rep = pair_from_kernel(F, P, [1], {1: [1]})
    assert same_variety(V, variety(F, [("1", ["x"])], ["x - 1"]))
    assert same_variety(W, variety(F, [("1", ["x"]), ("sigma", ["y"])], ["x - 1", "y - 1"]))
    # V is the point itself, so both projections of W onto it are dominant
    assert rep.verdict


def test_pair_from_c2_kernel():
    P = Presentation.parse(["x", "y"], ["x*y - 1"])
    F = GField.trivial(C2())
    V, W, rep = pair_from_kernel(F, P, ["x"], {"sigma": ["y"]})
    _, W0 = c2_pair()
    assert same_variety(W, W0) and rep.verdict


def test_inconsistent_presentation():
    P = Presentation.parse(["x"], ["x", "x - 1"])
    with pytest.raises(ValidationError) as e:
        pair_from_kernel(GField.trivial(Z()), P, ["x"], {1: ["x"]})
    assert e.value.kind == "inconsistent-presentation"


def test_kernel_round_trip_on_dinfinity():
    V, W = dinf_affine_pair()
    V2, W2, rep = pair_from_hom_data(V, W, kernel_from_pair(V, W))
    assert rep.verdict
    assert same_variety(V2, V) and same_variety(W2, W)


# ---------------------------------------------------------------- finite lemma and Mobius pairs


def test_lemma_conditions_true_and_false():
    V, W = c2_pair()
    assert lemma_conditions(V, W) == {1: True, 2: True, 3: True, 4: True}
    V, W = c2_pair("y - x - 1")
    assert lemma_conditions(V, W) == {1: False, 2: False, 3: False, 4: False}
    with pytest.raises(ValidationError):
        lemma_conditions(*z_pair())


def test_debug_report_carries_lemma():
    V, W = c2_pair()
    rep = check_g_pair(V, W, debug=True)
    assert rep.to_json()["lemma_conditions"] == {"1": True, "2": True, "3": True, "4": True}


def test_mobius_words_compose_in_reverse():
    maps = {"sigma": (1, 1, 0, 1), "tau": (-1, 0, 0, 1)}
    a, b, c, d = mobius_of_word(maps, parse_word("sigma*tau"))
    val = lambda s: (a * s + b) / (c * s + d)
    # sigma(tau(s)) = sigma(-s) = -(s + 1)
    assert val(5) == -6


def test_mobius_c3_pair():
    M = finite_marked_group(cyclic_group(3, ["1", "sigma", "sigma^2"]), "C3")
    # s -> 1/(1 - s) has order three; finite elements are letters, so both non-identity maps are given
    V, W, rep = mobius_pair(GField.trivial(M), {"sigma": (0, 1, -1, 1), "sigma^2": (1, -1, 1, 0)})
    assert rep.verdict
    _, _, bad = mobius_pair(GField.trivial(M), {"sigma": (0, 1, -1, 1), "sigma^2": (0, 1, -1, 1)})
    assert not bad.verdict


# ---------------------------------------------------------------- properties

maps = st.sampled_from(["x^2", "x + 1", "x^3 - x", "2*x", "x^2 - 3", "x^3 + x^2", "-x + 2"])


@settings(max_examples=25, deadline=None)
@given(maps)
def test_z_prolong_equals_fiber_product(f):
    V, W = z_pair(f)
    assert same_variety(prolong(V, W), fiber_product(W, twist(W, "sigma"), ["sigma"]))


@settings(max_examples=25, deadline=None)
@given(maps)
def test_closure_for_z(f):
    V, W = z_pair(f)
    assert check_g_pair(W, prolong(V, W)).verdict


c2_eqs = st.sampled_from(["x*y - 1", "x + y", "x + y - 3", "x*y - 2", "y - x - 1", "y - x^2", "x^2 + y^2 - 1",
                          "x*y - x", "y - 2*x"])


@settings(max_examples=25, deadline=None)
@given(c2_eqs)
def test_lemma_conditions_agree(eq):
    V, W = c2_pair(eq)
    vals = set(lemma_conditions(V, W).values())
    assert len(vals) == 1


@settings(max_examples=20, deadline=None)
@given(c2_eqs)
def test_kernel_round_trip_when_pair(eq):
    V, W = c2_pair(eq)
    if not check_g_pair(V, W).verdict:
        return
    V2, W2, rep = pair_from_hom_data(V, W, kernel_from_pair(V, W))
    assert same_variety(W2, W) and rep.verdict
