from ksquant.kscolor import (
    VectorSet,
    BasisList,
    Valuation,
    vector_set_from_dict,
    load_vector_set,
    resolve_vector_set_path,
    find_bases,
    drop_basis,
    search_valuation,
    contradiction_core,
    verify_valuation,
    brute_force_colorable,
    count_witnesses
)
from ksquant.generic_classes import KSQuantError, ValuationError, VectorSetError, VectorSetWarning
from fractions import Fraction
from funcs_for_tests import basis_lists
from hypothesis import given, settings, strategies as st
import json
import pytest

vector_set_err = pytest.raises(VectorSetError)


def vector_dict(*vectors, dim=3, field="rational", **extra):
    return {
        "dim": dim,
        "field": field,
        "vectors": [{"components": list(vector)} for vector in vectors],
        **extra
    }


@pytest.fixture
def standard():
    return find_bases(load_vector_set("standard-basis-d3"))


def test_standard_basis(standard):
    assert standard.bases == ((0, 1, 2),)
    verdict = search_valuation(standard)
    assert verdict.colorable
    assert verify_valuation(verdict.witness, standard)
    assert count_witnesses(standard) == 3


def test_ks18_loads(ks18):
    assert ks18.dim == 4
    assert len(ks18) == 18
    assert ks18.labels[0] == "v1"
    assert ks18.vectors[2] == (Fraction(1), Fraction(1), Fraction(0), Fraction(0))


def test_ks18_bases(ks18, ks18_bases):
    assert len(ks18_bases) == 9
    # every vector sits in exactly two bases
    assert all(len(numbers) == 2 for numbers in ks18_bases.containing().values())
    for basis in ks18_bases.bases:
        assert list(basis) == sorted(basis)
        assert all(ks18.is_orthogonal(i, j) for i in basis for j in basis if i != j)


def test_ks18_uncolorable(ks18_bases):
    verdict = search_valuation(ks18_bases)
    assert not verdict.colorable
    assert verdict.witness is None
    assert verdict.contradiction_core == tuple(range(9))
    assert not brute_force_colorable(ks18_bases)
    assert verdict.as_dict()["contradiction_core"] == list(range(9))


@pytest.mark.parametrize("k", range(9))
def test_ks18_drop_any_basis(ks18_bases, k):
    reduced = drop_basis(ks18_bases, k)
    verdict = search_valuation(reduced)
    assert verdict.colorable
    assert verify_valuation(verdict.witness, reduced)
    assert brute_force_colorable(reduced)


def test_drop_basis_range(ks18_bases):
    with pytest.raises(KSQuantError):
        drop_basis(ks18_bases, 9)
    with pytest.raises(KSQuantError):
        drop_basis(ks18_bases, -1)


def test_witness_labels(ks18, ks18_bases):
    verdict = search_valuation(drop_basis(ks18_bases, 0))
    witness = verdict.as_dict(ks18.labels)["witness"]
    assert set(witness) <= set(ks18.labels)
    assert set(witness.values()) <= {0, 1}


def test_contradiction_core_is_minimal(ks18_bases):
    core = contradiction_core(ks18_bases)
    subset = ks18_bases.subset(core)
    assert not search_valuation(subset, find_core=False).colorable
    for number in range(len(core)):
        assert search_valuation(drop_basis(subset, number)).colorable


def test_search_needs_bases():
    with pytest.raises(KSQuantError):
        search_valuation(BasisList((), 3))


def test_verify_valuation(standard):
    assert verify_valuation({0: 1, 1: 0, 2: 0}, standard)
    assert not verify_valuation(Valuation({0: 1, 1: 1, 2: 0}), standard)
    assert not verify_valuation({0: 0, 1: 0, 2: 0}, standard)
    with pytest.raises(ValuationError):
        verify_valuation({0: 1, 1: 0}, standard)
    with pytest.raises(ValuationError):
        verify_valuation({0: 1, 1: 0, 2: 2}, standard)


def test_two_bases_sharing_a_vector():
    vs = vector_set_from_dict(vector_dict(
        ["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"], ["0", "1", "1"], ["0", "1", "-1"]))
    bl = find_bases(vs)
    assert bl.bases == ((0, 1, 2), (0, 3, 4))
    assert count_witnesses(bl) == 5
    assert search_valuation(bl).colorable


def test_schema_errors():
    with vector_set_err:
        vector_set_from_dict([])
    with vector_set_err:
        vector_set_from_dict({"dim": 3, "field": "rational"})
    with vector_set_err:
        vector_set_from_dict(vector_dict(["1", "0"], dim=1))
    with vector_set_err:
        vector_set_from_dict(vector_dict(["1", "0", "0"], field="complex"))
    with vector_set_err:
        vector_set_from_dict(vector_dict(["1", "0"]))
    with vector_set_err:
        vector_set_from_dict(vector_dict(["1", "0", "half"]))
    with vector_set_err:
        vector_set_from_dict(vector_dict(["0", "0", "0"]))
    with vector_set_err:
        vector_set_from_dict(vector_dict([1.0, 1.0, 0.0], field="float"))
    with vector_set_err:
        vector_set_from_dict(vector_dict(["a", 0, 0], field="float"))


def test_warnings():
    with pytest.warns(VectorSetWarning):
        vs = vector_set_from_dict(vector_dict(["1", "1", "0"], ["-2", "-2", "0"], ["0", "0", "1"]))
    assert len(vs) == 2
    assert vs.labels == ("v1", "v3")
    with pytest.warns(VectorSetWarning):
        vector_set_from_dict(vector_dict(["1", "0"], ["0", "1"], dim=2))


def test_float_normalization():
    vs = vector_set_from_dict(vector_dict([3.0, 4.0, 0.0], [-4.0, 3.0, 0.0], [0.0, 0.0, 2.0],
                                          field="float", normalized=False))
    assert vs.vectors[0] == pytest.approx((0.6, 0.8, 0.0))
    assert find_bases(vs).bases == ((0, 1, 2),)


def test_float_tolerance():
    vs = vector_set_from_dict(vector_dict([1.0, 0.0, 0.0], [1e-12, 1.0, 0.0], [0.0, 0.0, 1.0], field="float"))
    assert len(find_bases(vs)) == 1
    assert len(find_bases(vs, tol=1e-13)) == 0
    with pytest.raises(KSQuantError):
        find_bases(vs, tol=0)


def test_transformed_keeps_bases(ks18, ks18_bases):
    # a signed permutation is orthogonal, so the bases survive
    swap = [[Fraction(int(i == (j + 1) % 4)) * (-1 if j == 0 else 1) for j in range(4)] for i in range(4)]
    assert find_bases(ks18.transformed(swap)).bases == ks18_bases.bases


def test_load_vector_set(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps(vector_dict(["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"])))
    assert len(load_vector_set(path)) == 3
    assert load_vector_set(tmp_path / "square") == load_vector_set(path)
    assert resolve_vector_set_path("data/ks18-d4").name == "ks18-d4.json"
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with vector_set_err:
        load_vector_set(broken)
    with vector_set_err:
        load_vector_set(tmp_path / "missing.json")


def test_brute_force_limit():
    vs = VectorSet(21, "rational", tuple(tuple(Fraction(int(i == j)) for j in range(21)) for i in range(21)),
                   tuple(f"e{i}" for i in range(21)))
    bl = find_bases(vs)
    assert len(bl) == 1
    with pytest.raises(KSQuantError):
        brute_force_colorable(bl)


@settings(max_examples=100, deadline=None)
@given(basis_lists(), st.data())
def test_verdict_matches_brute_force_under_relabeling(bl, data):
    verdict = search_valuation(bl, find_core=False)
    assert verdict.colorable == brute_force_colorable(bl)
    if verdict.colorable:
        assert verify_valuation(verdict.witness, bl)
    else:
        assert not brute_force_colorable(bl.subset(contradiction_core(bl)))
    vertices = bl.vertices()
    relabel = dict(zip(vertices, data.draw(st.permutations(vertices))))
    order = data.draw(st.permutations(range(len(bl))))
    shuffled = BasisList(tuple(tuple(sorted(relabel[i] for i in bl.bases[number])) for number in order), bl.dim)
    assert search_valuation(shuffled, find_core=False).colorable == verdict.colorable
    assert count_witnesses(shuffled) == count_witnesses(bl)
