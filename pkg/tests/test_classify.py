import pytest

from fracsum.classify import (
    ClassVerdict,
    SpacePair,
    all_pairs,
    class_conditions,
    classify,
)
from fracsum.conditions import Verdict
from fracsum.errors import DomainError, NameLookupError
from fracsum.operators import cesaro, euler, identity
from fracsum.verify import GOLDEN_TABLES


def test_eighteen_classes():
    assert len(all_pairs()) == 18
    assert sorted(all_pairs()) == sorted(GOLDEN_TABLES)


@pytest.mark.parametrize("pair", sorted(GOLDEN_TABLES))
def test_golden_entry(pair):
    src, dst = pair
    order = 0.4 if "fdf" in pair else None
    spec = class_conditions(SpacePair(src, dst, order))
    assert (spec.table, spec.entry, spec.conditions) == GOLDEN_TABLES[pair]
    assert spec.transform == {1: "identity", 2: "identity", 3: "D", 4: "E"}[spec.table]


def test_pair_validation():
    with pytest.raises(NameLookupError):
        SpacePair("l2", "c")
    with pytest.raises(DomainError):
        SpacePair("fdf", "c")
    with pytest.raises(NameLookupError):
        class_conditions(SpacePair("c", "linf"))
    with pytest.raises(NameLookupError):
        class_conditions(SpacePair("f", "fdf", 0.5))


def test_cesaro_is_strongly_regular_evidence():
    rep = classify(cesaro(), SpacePair("f", "c"))
    assert rep.verdict is ClassVerdict.MEMBER
    assert rep.to_dict()["class"] == "(f:c)"


def test_identity_maps_f_to_f():
    assert classify(identity(), SpacePair("f", "f")).verdict is ClassVerdict.MEMBER


def test_identity_does_not_map_f_to_c():
    rep = classify(identity(), SpacePair("f", "c"))
    assert rep.verdict is ClassVerdict.NON_MEMBER
    assert rep.conditions["C23"].verdict is Verdict.VIOLATED


def test_cesaro_not_into_bs():
    assert classify(cesaro(), SpacePair("f", "bs")).verdict is ClassVerdict.NON_MEMBER


def test_fdf_source_runs_the_row_precondition():
    rep = classify(euler(0.5), SpacePair("fdf", "linf", 0.5), n1=128, n2=256,
                   precondition_rows=4)
    assert rep.spec.transform == "D"
    assert rep.precondition is not None
    assert len(rep.dual_rows) == 4
    assert "row_dual_precondition" in rep.to_dict()


def test_fdf_target_uses_E():
    rep = classify(identity(), SpacePair("c", "fdf", 0.5), n1=128, n2=256)
    assert rep.spec.transform == "E"
    assert rep.precondition is None
