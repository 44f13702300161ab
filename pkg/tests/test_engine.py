import pytest

from arthur_packets.core import (
    AdmissibleOrder,
    DataError,
    JordanBlock,
    Parameter,
    RhoLabel,
    SignedData,
)
from arthur_packets.engine import (
    Engine,
    RecursionLimitError,
    basic_ok,
    decide_good_shape,
    good_shape,
)
from arthur_packets.halfint import hi

RHO = RhoLabel("r", "orthogonal", 1)


def blk(A, B, zeta, rho=RHO):
    return JordanBlock(rho, hi(A), hi(B), zeta)


def _golden():
    psi = Parameter(
        (blk(40, 10, 1), blk(37, 7, -1), blk(8, 4, 1)), group_kind="Sp-even"
    )
    return psi, AdmissibleOrder(((0, 1, 2),))


def test_basic_ok():
    lower = (8, 4, 1, 0, 1)  # d = 2
    # matching signs: A2 - 2 l2 >= A1 - 2 l1 and B2 + 2 l2 >= B1 + 2 l1
    assert basic_ok(lower, (12, 6, 1, 1, 1))
    assert not basic_ok(lower, (12, 2, 1, 0, 1))  # B condition fails
    assert not basic_ok((8, 4, 1, 0, 1), (12, 6, 1, 3, 1))  # A condition fails
    # mismatched signs: B2 + 2 l2 > A1 - 2 l1
    assert basic_ok((8, 4, 1, 2, 1), (12, 6, 1, 0, -1))  # 6 > 8 - 4
    assert not basic_ok((8, 4, 1, 0, 1), (12, 2, 1, 0, -1))  # 2 > 8 fails


def test_good_shape_examples():
    psi = Parameter((blk(4, 1, 1),))
    assert good_shape(psi, AdmissibleOrder(((0,),)))
    far = Parameter((blk(1000, 995, 1), blk(2, 0, 1)))
    assert good_shape(far, AdmissibleOrder(((0, 1),)))
    nested = Parameter((blk(6, 1, 1), blk(4, 2, 1)))
    assert not good_shape(nested, AdmissibleOrder(((0, 1),)))
    psi, order = _golden()
    assert not good_shape(psi, order)
    opp = Parameter((blk(1000, 995, -1), blk(2, 0, 1)))
    assert good_shape(opp, AdmissibleOrder(((0, 1),)))


def test_decide_good_shape_agrees_with_engine():
    far = Parameter((blk(1000, 995, 1), blk(2, 0, 1)))
    order = AdmissibleOrder(((0, 1),))
    eng = Engine()
    for l0 in range(3):
        for l1 in range(2):
            for e0 in (1, -1):
                for e1 in (1, -1):
                    data = SignedData((l0, l1), (e0, e1))
                    from arthur_packets.characters import quasisplit_ok

                    if not quasisplit_ok(far, data):
                        continue
                    assert decide_good_shape(far, order, data) == eng.decide(
                        far, order, data
                    ).nonvanishing


def test_decide_good_shape_rejects_bad_shape():
    nested = Parameter((blk(6, 1, 1), blk(4, 2, 1)))
    with pytest.raises(DataError):
        decide_good_shape(nested, AdmissibleOrder(((0, 1),)), SignedData((0, 0), (1, 1)))


def test_decide_validates_input():
    psi, order = _golden()
    eng = Engine()
    with pytest.raises(DataError):
        eng.decide(psi, order, SignedData((20, 0, 0), (1, 1, 1)))  # l out of range
    with pytest.raises(DataError):
        eng.decide(psi, order, SignedData((0, 0, 0), (1, 1, -1)))  # not quasisplit
    bad_order = AdmissibleOrder(((2, 1, 0),))
    with pytest.raises(DataError):
        eng.decide(psi, bad_order, SignedData((0, 0, 0), (1, 1, 1)))


def test_recursion_limit():
    psi, order = _golden()
    eng = Engine(recursion_limit=1)
    with pytest.raises(RecursionLimitError):
        eng.decide(psi, order, SignedData((10, 10, 2), (1, 1, 1)))


def test_golden_instance_verdicts_deterministic():
    psi, order = _golden()
    eng = Engine()
    data = SignedData((10, 10, 2), (1, 1, 1))
    v1 = eng.decide(psi, order, data, collect_trace=True)
    v2 = Engine().decide(psi, order, data, collect_trace=True)
    assert v1.nonvanishing == v2.nonvanishing
    assert len(v1.trace) >= 1
    for step in v1.trace:
        assert step.decreases()


def test_memoization_is_consistent():
    psi, order = _golden()
    eng = Engine()
    data = SignedData((3, 2, 1), (1, 1, 1))
    first = eng.decide(psi, order, data).nonvanishing
    second = eng.decide(psi, order, data).nonvanishing
    assert first == second
