import random

import pytest

from ddx.complexes import (
    MalformedShape,
    direct_sum,
    dot_complex,
    square_complex,
    _strip_sigma,
)
from ddx.cohomology import (
    NoRealStructure,
    aeppli_dims,
    betti_numbers,
    bott_chern_dims,
    conjugate_dolbeault_dims,
    dolbeault_dims,
    froelicher,
)
from ddx.models import builtin
from ddx.zigzags import (
    CriteriaDisagree,
    DdbarVerdict,
    ZigzagShape,
    decompose,
    e1_equivalent,
    is_ddbar,
)

from conftest import random_complex, random_complex_with_answer


# ----------------------------------------------------------------------
# shapes
# ----------------------------------------------------------------------

def test_shape_checks():
    ZigzagShape.dot(0, 0).check()
    ZigzagShape.from_spots([(0, 0), (0, 1)]).check()
    ZigzagShape.from_spots([(0, 1), (0, 0), (1, 0)]).check()
    with pytest.raises(MalformedShape):
        ZigzagShape.from_spots([(0, 0), (1, 1)])
    with pytest.raises(MalformedShape):
        # composition staircase: two forward arrows
        ZigzagShape.from_spots([(0, 0), (1, 0), (1, 1)]).check()
    with pytest.raises(MalformedShape):
        ZigzagShape([(0, 0), (0, 0)], [(0, "d2")]).check()


def test_shape_canonical_and_render():
    s = ZigzagShape.from_spots([(0, 1), (0, 0), (1, 0)])
    c = s.canonical()
    assert c.spots[0] <= c.spots[-1]
    assert c.render() == "Z[(0,1) <-d2- (0,0) -d1-> (1,0)]"
    assert ZigzagShape.dot(2, -1).render() == "Z[(2,-1)]"
    flipped = ZigzagShape.from_spots(list(reversed(s.spots)))
    assert flipped.canonical() == c


# ----------------------------------------------------------------------
# decomposition: atoms and models
# ----------------------------------------------------------------------

def test_decompose_square():
    dec = decompose(builtin("square"))
    assert dec.square_count == {(0, 0): 1}
    assert not dec.zigzag_mults


def test_decompose_dot():
    dec = decompose(dot_complex(2, 3))
    assert not dec.square_count
    assert dec.zigzag_mults == {ZigzagShape.dot(2, 3): 1}


def test_decompose_iwasawa_has_long_zigzag():
    k = builtin("iwasawa")
    dec = decompose(k)
    assert dec.total_dim == 64
    assert any(s.length >= 2 for s in dec.zigzag_mults)
    rebuilt = dec.rebuild()
    for fn in (
        bott_chern_dims,
        aeppli_dims,
        dolbeault_dims,
        conjugate_dolbeault_dims,
        betti_numbers,
    ):
        assert fn(rebuilt) == fn(k)
    # conjugation symmetry of the multiset
    mirror = {}
    for s, n in dec.zigzag_mults.items():
        ms = ZigzagShape.from_spots([(q, p) for p, q in s.spots]).canonical()
        mirror[ms] = mirror.get(ms, 0) + n
    assert mirror == dec.zigzag_mults


def test_decompose_recovers_hidden_multiset():
    for seed in range(60):
        k, squares, mults = random_complex_with_answer(seed, max_total_dim=24)
        dec = decompose(k)
        assert dec.square_count == squares, seed
        assert dec.zigzag_mults == mults, seed


def test_reconstruction_tables_and_pages():
    for seed in range(25):
        k = random_complex(seed + 500, max_total_dim=20)
        dec = decompose(k)
        rebuilt = dec.rebuild()
        assert rebuilt.validate().ok
        for fn in (
            bott_chern_dims,
            aeppli_dims,
            dolbeault_dims,
            conjugate_dolbeault_dims,
            betti_numbers,
        ):
            assert fn(rebuilt) == fn(k), seed
        ss_a = froelicher(k)
        ss_b = froelicher(rebuilt)
        assert len(ss_a.pages) >= 2 and len(ss_b.pages) >= 2
        top = max(len(ss_a.pages), len(ss_b.pages))
        for r in range(1, top):
            assert ss_a.page(r) == ss_b.page(r), (seed, r)


def test_basis_invariance():
    from conftest import random_basis_change
    from ddx.complexes import change_basis

    rng = random.Random(99)
    for seed in range(10):
        k = random_complex(seed + 900, max_total_dim=16)
        dec1 = decompose(k)
        transforms = {
            pq: random_basis_change(rng, n, with_i=True)
            for pq, n in k.spaces.items()
        }
        kb = change_basis(k, transforms)
        dec2 = decompose(kb)
        assert dec1.square_count == dec2.square_count
        assert dec1.zigzag_mults == dec2.zigzag_mults


def test_decompose_is_deterministic():
    for seed in (3, 17):
        k = random_complex(seed, max_total_dim=18)
        a = decompose(k)
        b = decompose(k)
        assert a.square_count == b.square_count
        assert a.zigzag_mults == b.zigzag_mults
        assert len(a.witnesses) == len(b.witnesses)
        for wa, wb in zip(a.witnesses, b.witnesses):
            assert wa.kind == wb.kind and wa.label == wb.label
            assert wa.vectors == wb.vectors


def test_witnesses_reference_original_coordinates():
    k = builtin("zigzag-3")
    dec = decompose(k)
    (w,) = dec.witnesses
    assert w.kind == "zigzag"
    assert set(w.vectors) == set(k.spaces)
    for pq, vec in w.vectors.items():
        assert vec, (pq, vec)


# ----------------------------------------------------------------------
# ddbar decisions
# ----------------------------------------------------------------------

def test_ddbar_examples():
    both = direct_sum([_strip_sigma(dot_complex(0, 0)), _strip_sigma(builtin("square"))])
    v = is_ddbar(both, "all")
    assert v.value is True
    assert set(v.by_method) == {"zigzag", "bc_iso"}

    z = builtin("zigzag-h2")
    assert not is_ddbar(z, "zigzag").value
    assert not is_ddbar(z, "bc_iso").value

    for n in ("torus-1", "torus-2", "torus-3"):
        v = is_ddbar(builtin(n), "all")
        assert v.value is True
        assert set(v.by_method) == {"zigzag", "bc_iso", "hodge"}


def test_ddbar_hodge_requires_sigma():
    with pytest.raises(NoRealStructure):
        is_ddbar(builtin("zigzag-h2"), "hodge")


def test_ddbar_criteria_agree_on_random_real_structured():
    for seed in range(12):
        k = random_complex(seed, max_total_dim=14, with_sigma=True)
        v = is_ddbar(k, "all")
        assert set(v.by_method) == {"zigzag", "bc_iso", "hodge"}
        assert len(set(v.by_method.values())) == 1


def test_ddbar_unknown_method():
    with pytest.raises(ValueError):
        is_ddbar(dot_complex(0, 0), "nonsense")


def test_criteria_disagreement_is_an_error():
    # a disagreement between criteria is an internal bug, never a verdict
    with pytest.raises(CriteriaDisagree):
        DdbarVerdict({"zigzag": True, "bc_iso": False})


def test_decompose_empty_complex():
    from ddx.complexes import DoubleComplex

    dec = decompose(DoubleComplex({}, {}, {}))
    assert dec.total_dim == 0
    assert not dec.square_count and not dec.zigzag_mults
    assert dec.rebuild().total_dim() == 0


# ----------------------------------------------------------------------
# page-1 equivalence
# ----------------------------------------------------------------------

def test_e1_equivalent_square_padding():
    k = _strip_sigma(builtin("zigzag-3"))
    padded = direct_sum([k, _strip_sigma(square_complex(0, 0))])
    assert e1_equivalent(k, padded)


def test_e1_equivalent_distinguishes_positions():
    assert not e1_equivalent(dot_complex(0, 0), dot_complex(1, 1))


def test_e1_equivalent_after_basis_shuffle():
    from conftest import random_basis_change
    from ddx.complexes import change_basis

    rng = random.Random(1)
    k = random_complex(77, max_total_dim=18)
    transforms = {
        pq: random_basis_change(rng, n, with_i=True) for pq, n in k.spaces.items()
    }
    assert e1_equivalent(k, change_basis(k, transforms))


def test_e1_equivalence_invariant_under_constructed_qis():
    # padding with squares anywhere keeps the class; moving a dot breaks it
    k = _strip_sigma(builtin("kodaira-thurston"))
    padded = direct_sum(
        [k, _strip_sigma(square_complex(1, 1)), _strip_sigma(square_complex(0, 2))]
    )
    assert e1_equivalent(k, padded)
    assert not e1_equivalent(k, direct_sum([k, _strip_sigma(dot_complex(5, 5))]))
