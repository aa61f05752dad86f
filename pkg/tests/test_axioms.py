import json
from collections import Counter
from pathlib import Path

import pytest

from gtcf.axioms import emit_axiom_instance, emit_axiom_scheme
from gtcf.bass_serre import (
    c2_free_c2, c4_c4_hnn, dinfinity, finite_marked_group, free_marked_group, free_times_finite, klein_hnn,
)
from gtcf.errors import CheckFailed, ValidationError
from gtcf.group_core import MarkedGroup, cyclic_group, diagonal_classes, klein_group
from gtcf.variety import GField, affine_space, variety

GOLDEN = Path(__file__).parent / "golden"


def C2():
    return finite_marked_group(cyclic_group(2, ["1", "sigma"]), "C2")


GOLDEN_GROUPS = {
    "z": lambda: free_marked_group(1),
    "c2": C2,
    "c2_free_c2": c2_free_c2,
    "klein_hnn": klein_hnn,
    "dinfinity": dinfinity,
}

ALL = dict(GOLDEN_GROUPS, c4_c4_hnn=c4_c4_hnn, f2=lambda: free_marked_group(2),
           klein=lambda: finite_marked_group(klein_group(), "C2xC2"),
           f1xc2=lambda: free_times_finite(1, cyclic_group(2, ["1", "tau"])))


@pytest.mark.parametrize("name", sorted(GOLDEN_GROUPS))
def test_text_scheme_matches_golden(name):
    text = emit_axiom_scheme(GOLDEN_GROUPS[name]()).render()
    assert text == (GOLDEN / f"{name}.txt").read_text()


@pytest.mark.parametrize("name", sorted(GOLDEN_GROUPS))
def test_json_scheme_matches_golden(name):
    doc = emit_axiom_scheme(GOLDEN_GROUPS[name]()).to_json()
    assert doc == json.loads((GOLDEN / f"{name}.json").read_text())


@pytest.mark.parametrize("name", sorted(ALL))
def test_every_relation_once(name):
    M = ALL[name]()
    S = emit_axiom_scheme(M)
    P = diagonal_classes(M).relations
    assert len(S.diagonals) == len(P)
    seen = Counter(tuple(r) for r in S.to_json()["relations"])
    assert set(seen) == {tuple(x + 1 for x in r) for r in P}
    assert all(v == 1 for v in seen.values())


@pytest.mark.parametrize("name", sorted(ALL))
def test_rendering_is_deterministic(name):
    a = emit_axiom_scheme(ALL[name]()).render()
    b = emit_axiom_scheme(ALL[name]()).render()
    assert a == b
    assert a.isascii()


def test_z_scheme_shape():
    S = emit_axiom_scheme(free_marked_group(1))
    assert len(S.conditions) == 1
    assert "dominant" in S.conditions[0]
    assert "(x, sigma(x))" in S.sentence


def test_finite_scheme_lists_lambda_conditions():
    S = emit_axiom_scheme(finite_marked_group(cyclic_group(3, ["1", "g", "h"]), "C3"))
    lam = [c for c in S.conditions if c.startswith("lambda^")]
    assert lam == ["lambda^g_V(W) = ^g W", "lambda^h_V(W) = ^h W"]
    assert "(x, g(x), h(x))" in S.sentence


def test_c4_c4_hnn_has_two_clauses():
    S = emit_axiom_scheme(c4_c4_hnn())
    assert len(S.conditions) == 2
    assert S.conditions[0].startswith("^t W_rho_i = W_(t*rho_i)")
    assert "C4-pair" in S.conditions[1]


def test_unsupported_kind():
    M = free_marked_group(1)
    odd = MarkedGroup(M.rho, M.oracle, "surface", "S", {}, M.identity_index)
    with pytest.raises(ValidationError) as e:
        emit_axiom_scheme(odd)
    assert e.value.kind == "unsupported-kind"


# ---------------------------------------------------------------- instances


def test_z_instance():
    M = free_marked_group(1)
    F = GField.trivial(M)
    W = variety(F, [("1", ["x"]), ("sigma", ["y"])], ["y - x^2"])
    doc = emit_axiom_instance(M, affine_space(F, ["1"]), W)
    assert doc["schema"] == "gtcf.axiom-instance/1"
    assert doc["sentence"] == "exists x: x^2 - sigma(x) = 0"


def test_c2_instance():
    M = C2()
    F = GField.trivial(M)
    W = variety(F, [("1", ["x"]), ("sigma", ["y"])], ["x*y - 1"])
    doc = emit_axiom_instance(M, affine_space(F, ["1"]), W)
    assert doc["sentence"] == "exists x: x*sigma(x) = 1"


def test_instance_of_failing_pair():
    M = C2()
    F = GField.trivial(M)
    W = variety(F, [("1", ["x"]), ("sigma", ["y"])], ["y - x - 1"])
    with pytest.raises(CheckFailed) as e:
        emit_axiom_instance(M, affine_space(F, ["1"]), W)
    assert e.value.kind == "pair-check-failed"
    assert not e.value.report.verdict
