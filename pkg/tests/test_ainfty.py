import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floerlab import ainfty
from floerlab.ainfty import (AInftyData, check_ainfty, cohomology, directed_subcategory,
                             from_algebra, homogeneous_splitting, is_quasi_isomorphic)
from floerlab.coeff import GradedLaurent, Integers, PrimeField, hbar
from floerlab.errors import BadUnit, DegreeError, NonFieldCoefficients, NonHomogeneousEntries, NotUnital
from floerlab.pipeline import a2_directed_category, a2_twisted_model, a2_zigzag_category
from floerlab.trees import boundary_facets


def massey_category(dx=1, dy=1, dz=1, unit_sign=True):
    """Four objects in a row, strict units and mu^3(z, y, x) = w."""
    dw = dx + dy + dz - 1
    gens = [(f"e{i}", 0, f"X{i}", f"X{i}") for i in range(4)]
    gens += [("x", dx, "X0", "X1"), ("y", dy, "X1", "X2"), ("z", dz, "X2", "X3"), ("w", dw, "X0", "X3")]
    deg = {g[0]: g[1] for g in gens}
    mu = {(f"e{i}", f"e{i}"): {f"e{i}": 1} for i in range(4)}
    for a, s, t in [("x", 0, 1), ("y", 1, 2), ("z", 2, 3), ("w", 0, 3)]:
        mu[(a, f"e{s}")] = {a: 1}
        mu[(f"e{t}", a)] = {a: (-1) ** deg[a] if unit_sign else 1}
    mu[("z", "y", "x")] = {"w": 1}
    return AInftyData([f"X{i}" for i in range(4)], gens, mu, name="massey")


def dg_interval(extra=None):
    """A dg algebra with d(a) = b, a.a = a and a.b = b, plus a strict unit."""
    gens = [("e", 0, "X", "X"), ("a", 0, "X", "X"), ("b", 1, "X", "X")]
    prods = {("e", "e"): {"e": 1}, ("e", "a"): {"a": 1}, ("a", "e"): {"a": 1},
             ("e", "b"): {"b": 1}, ("b", "e"): {"b": 1}, ("a", "a"): {"a": 1},
             ("a", "b"): {"b": 1}}
    prods.update(extra or {})
    return from_algebra(["X"], gens, {"a": {"b": 1}}, prods)


# structure equations

def test_dg_category_passes():
    C = dg_interval()
    assert check_ainfty(C).passed
    assert cohomology(C).homs[("X", "X")].dims() == {0: 1}


def test_broken_leibniz_rule_fails():
    # b.a = b makes d(a.a) = b but d(a).a + a.d(a) = 2b
    assert not check_ainfty(dg_interval({("b", "a"): {"b": 1}})).passed


def test_directed_a2_passes():
    for order in (("L", "S"), ("S", "L")):
        assert check_ainfty(a2_directed_category(order)).passed


def test_full_a2_passes():
    rep = check_ainfty(a2_zigzag_category())
    assert rep.passed and rep.equations_checked > 0


def test_associativity_flip_fails_at_arity_three():
    C = a2_zigzag_category()
    bad = C.with_entry(("eS", "x"), "x", -1)
    rep = check_ainfty(bad)
    assert not rep.passed
    assert len(rep.failure.inputs) == 3


@pytest.mark.parametrize("degs", [(1, 1, 1), (0, 0, 0), (1, 0, 1), (2, 1, 0), (0, 1, 1)])
def test_higher_product_compatible_with_strict_units(degs):
    C = massey_category(*degs)
    assert check_ainfty(C).passed
    assert not check_ainfty(C.with_entry(("w", "e0"), "w", -1)).passed


def test_unit_sign_is_forced():
    assert not check_ainfty(massey_category(1, 1, 1, unit_sign=False)).passed


def test_term_enumeration_matches_facets():
    for k in range(1, 6):
        assert ainfty._allowed_bc(k) == {(f.b, f.c) for f in boundary_facets(k, 0)}


def test_degree_rule_enforced():
    with pytest.raises(DegreeError):
        AInftyData(["X"], [("a", 0, "X", "X"), ("b", 0, "X", "X")], {("a",): {"b": 1}})


@pytest.mark.parametrize("C", [a2_zigzag_category(), a2_directed_category()])
def test_single_sign_flips_fail_exactly_when_not_a_rescaling(C):
    for inputs, y, c in C.entries():
        gauge = ainfty.sign_flip_is_gauge(C, [(inputs, y)])
        assert check_ainfty(C.with_entry(inputs, y, -c)).passed == gauge


def test_basis_change_keeps_structure_equations():
    C = a2_zigzag_category()
    rng = random.Random(3)
    for _ in range(10):
        a, b = rng.choice([1, 2, -1, 3]), rng.choice([1, -2, 5])
        D = ainfty.change_basis(C, {"x": {"x": a}, "fL": {"fL": b}, "eL": {"eL": 1, "fL": 0}})
        assert check_ainfty(D).passed


@settings(max_examples=30, deadline=None)
@given(st.integers(-3, 3).filter(bool), st.integers(-3, 3).filter(bool), st.integers(-3, 3))
def test_basis_change_property(a, b, c):
    C = massey_category(0, 0, 0)
    # degree-0 invertible transformation on hom(X0, X3) = <w> and hom(X0, X1) = <x>
    D = ainfty.change_basis(C, {"w": {"w": a}, "x": {"x": b}})
    assert check_ainfty(D).passed


# cohomology

def test_acyclic_over_rationals():
    C = AInftyData(["X"], [("a", 0, "X", "X"), ("b", 1, "X", "X")], {("a",): {"b": 2}})
    assert cohomology(C).homs[("X", "X")].dims() == {}


def test_two_dimensional_over_f2():
    C = AInftyData(["X"], [("a", 0, "X", "X"), ("b", 1, "X", "X")], {("a",): {"b": 2}},
                   ring=PrimeField(2))
    assert cohomology(C).homs[("X", "X")].dims() == {0: 1, 1: 1}


def test_integers_rejected():
    C = AInftyData(["X"], [("a", 0, "X", "X")], {}, ring=Integers())
    with pytest.raises(NonFieldCoefficients):
        cohomology(C)


def test_sphere_endomorphism_ring():
    HC = a2_zigzag_category().cohomology()
    e, f = {"eL": Fraction(1)}, {"fL": Fraction(1)}
    assert HC.compose(e, e) == e
    assert HC.compose(e, f) == f and HC.compose(f, e) == f
    assert not HC.compose(f, f)
    assert HC.same_class("L", "L", HC.units["L"], e)


def test_cohomology_composition_associative():
    HC = a2_zigzag_category().cohomology()
    x, y = {"x": Fraction(1)}, {"y": Fraction(1)}
    assert HC.compose(x, HC.compose(y, x)) == HC.compose(HC.compose(x, y), x)


# quasi-isomorphism

def test_object_isomorphic_to_itself():
    C = a2_zigzag_category()
    v = is_quasi_isomorphic(C, "L", "L")
    assert v.isomorphic and v.f == v.g == C.cohomology().units["L"]


def test_no_degree_zero_morphisms():
    D = a2_directed_category(("L", "S"))
    assert is_quasi_isomorphic(D, "L", "S").status == "not_isomorphic"


def test_untwisted_pair_refuted():
    C = a2_twisted_model([(1, 0), (-1, 1)]).specialize()
    v = is_quasi_isomorphic(C, "L0", "L1")
    assert v.status == "not_isomorphic" and "span" in v.note


def test_twisted_pair_witness_verified():
    T = a2_twisted_model([(1, 0), (-1, 1)]).twisted()
    HC = T.cohomology()
    v = is_quasi_isomorphic(T, "L0", "L1")
    assert v.isomorphic
    assert ainfty.verify_witness(HC, "L0", "L1", v.f, v.g)


def test_missing_unit():
    C = AInftyData(["X", "Y"], [("a", 0, "X", "Y")], {})
    with pytest.raises(NotUnital):
        is_quasi_isomorphic(C, "X", "Y")


def groupoid_category(n=3):
    """n mutually isomorphic objects: g_ij . g_jk = g_ik."""
    objs = [f"A{i}" for i in range(n)]
    gens = [(f"g{i}{j}", 0, objs[i], objs[j]) for i in range(n) for j in range(n)]
    prods = {(f"g{j}{k}", f"g{i}{j}"): {f"g{i}{k}": 1}
             for i in range(n) for j in range(n) for k in range(n)}
    return from_algebra(objs, gens, {}, prods, name="groupoid")


def test_quasi_isomorphism_is_an_equivalence_relation():
    C = groupoid_category(3)
    HC = C.cohomology()
    objs = C.objects
    w = {}
    for X, Y in itertools.product(objs, repeat=2):
        v = is_quasi_isomorphic(C, X, Y)
        assert v.isomorphic
        w[(X, Y)] = (v.f, v.g)
    for X, Y in itertools.permutations(objs, 2):
        f, g = w[(X, Y)]
        assert ainfty.verify_witness(HC, Y, X, g, f)  # symmetry by swapping
    for X, Y, Z in itertools.permutations(objs, 3):
        f1, g1 = w[(X, Y)]
        f2, g2 = w[(Y, Z)]
        assert ainfty.verify_witness(HC, X, Z, HC.compose(f2, f1), HC.compose(g1, g2))


def test_transport_through_witnesses_on_twisted_pair():
    T = a2_twisted_model([(1, 0), (-1, 2)]).twisted()
    HC = T.cohomology()
    v = is_quasi_isomorphic(T, "L0", "L1")
    assert ainfty.transported_category_check(HC, [("L0", "L1")], [(v.f, v.g)])
    e = HC.units["L0"]
    assert ainfty.transported_category_check(HC, [("L0", "L0")], [(e, e)])


# directed subcategories

def test_directed_keeps_forward_homs_only():
    D = a2_directed_category(("L", "S"))
    assert D.hom("L", "S") and not D.hom("S", "L")
    assert D.hom("L", "L") == ["e_L"]
    R = a2_directed_category(("S", "L"))
    assert R.hom("S", "L") and not R.hom("L", "S")


def test_directed_single_object_is_unit_line():
    C = a2_zigzag_category()
    D = directed_subcategory(C, ["L"], {"L": {"eL": Fraction(1)}})
    assert [g.name for g in D.generators] == ["e_L"]
    assert check_ainfty(D).passed


def test_directed_cohomology_agrees_forward():
    C = a2_zigzag_category()
    D = a2_directed_category(("L", "S"))
    assert D.cohomology().homs[("L", "S")].dims() == C.cohomology().homs[("L", "S")].dims()


def test_bad_unit_rejected():
    C = a2_zigzag_category()
    with pytest.raises(BadUnit):
        directed_subcategory(C, ["L", "S"], {"L": {"fL": Fraction(1)}, "S": {"eS": Fraction(1)}})
    with pytest.raises(BadUnit):
        directed_subcategory(C, ["L", "S"], {"L": {"eL": Fraction(2)}, "S": {"eS": Fraction(1)}})


# splitting over L

def test_splitting_zero_differential():
    Z = GradedLaurent({}, 4)
    s = homogeneous_splitting([0, 1, 2], [[Z] * 3 for _ in range(3)], 4)
    assert len(s.H) == 3 and not s.im and not s.I and s.verify()


def test_splitting_rank_one():
    Z = GradedLaurent({}, 4)
    s = homogeneous_splitting([0, 3], [[Z, Z], [hbar(1), Z]], 4)
    assert not s.H and s.verify()
    assert s.homotopy[0][1] == hbar(-1)


def test_splitting_rejects_mixed_powers():
    Z = GradedLaurent({}, 4)
    with pytest.raises(NonHomogeneousEntries):
        homogeneous_splitting([0, 3], [[Z, Z], [hbar(1) + hbar(2), Z]], 4)


def random_laurent_complex(rng, n=6, l=4):
    from floerlab.deform import random_square_zero
    p = l - 2
    degrees = sorted(rng.randint(0, 3 * p) for _ in range(n))
    # a graded Q-complex on residues, lifted with the forced hbar powers
    residues = [d % p for d in degrees]
    M = random_square_zero(rng, [r if p > 1 else 0 for r in residues], n) if p > 1 else None
    Z = GradedLaurent({}, l)
    d = [[Z] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = M[i, j]
            if c:
                q, rem = divmod(degrees[i] - degrees[j] - 1, -p)
                if rem:
                    return None
                d[i][j] = GradedLaurent({q: c}, l)
    return degrees, d


def test_splitting_random_complexes():
    rng = random.Random(11)
    done = 0
    while done < 10:
        got = random_laurent_complex(rng, 6, rng.choice([4, 6]))
        if got is None:
            continue
        degrees, d = got
        l = d[0][0].l
        try:
            s = homogeneous_splitting(degrees, d, l)
        except ValueError:
            continue
        assert s.verify()
        done += 1


# serialization

def test_json_round_trip(tmp_path):
    for C in (a2_zigzag_category(), a2_twisted_model([(1, 0), (-1, 1)]).twisted(), massey_category()):
        path = tmp_path / "c.json"
        ainfty.dump(C, str(path))
        D = ainfty.load(str(path))
        assert D.mu == C.mu and D.ring == C.ring
        assert json.loads(path.read_text())["format"] == "floer-lab/1"
