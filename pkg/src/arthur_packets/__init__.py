"""Exact combinatorics of packet coordinates for p-adic classical groups.

Public API: block/parameter data types, sign characters, change-of-order
transforms, reduction rewrites, the decision engine, packet enumeration, and
independent closed-form oracles for differential testing.
"""

from .halfint import HalfInt, hi
from .core import (
    AdmissibleOrder,
    DataError,
    JordanBlock,
    Parameter,
    ParameterError,
    RhoLabel,
    SignedData,
    all_admissible_orders,
    block_parity,
    convert_ab,
    discrete_diagonal_restriction,
    is_admissible,
    is_elementary,
    natural_order,
    parameter_from_json,
    parameter_to_json,
)
from .characters import (
    Character,
    eps_M_MW,
    eps_MW_W,
    eps_l_eta,
    quasisplit_ok,
    translate_M_to_W,
)
from .segments import (
    GenSegment,
    Segment,
    SegmentError,
    dual,
    grid,
    linked_gen,
    linked_segments,
    speh_grid,
)
from .transforms import (
    AdjacentSwap,
    TransformPreconditionError,
    reorder,
    s_minus,
    s_minus_pair,
    s_plus,
    s_plus_pair,
    sigma0_canonical,
    sigma0_equiv,
    sub_condition_ok,
    sup_condition_ok,
    swapped_order,
    u_pair,
    u_transform,
)
from .reductions import (
    ReductionError,
    ReductionStep,
    change_sign_half,
    change_sign_integral,
    expand,
    expand_bound,
    far_away_threshold,
    far_from_set_threshold,
    measure,
    pull_equal,
    pull_unequal,
)
from .engine import (
    Engine,
    RecursionLimitError,
    Verdict,
    basic_ok,
    decide_good_shape,
    good_shape,
)
from .oracle import (
    OracleError,
    count_three_block_classes,
    oracle_three_block,
    oracle_two_block,
    three_block_grid,
)
from .packets import candidates, enumerate_packet, packet_size

__all__ = [name for name in dir() if not name.startswith("_")]
