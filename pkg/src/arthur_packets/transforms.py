"""Change-of-order transforms on packet coordinates.

For two adjacent blocks of a fiber (positions k > k-1 in the order):
  - same zeta, upper interval contains lower:  S+ (to the swapped order) and
    its inverse S-;
  - opposite zeta: U (an exact involution).
Together with the observation that any admissible adjacent swap of same-zeta
blocks involves a nested-or-equal pair, these transport (l, eta) between any
two admissible orders (reorder).

The pair formulas only depend on each block's A - B; helpers here take those
integers directly so the engine can reuse them on its internal fiber records.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .core import (
    AdmissibleOrder,
    DataError,
    Parameter,
    RhoLabel,
    Sign,
    SignedData,
    is_admissible,
)


class TransformPreconditionError(DataError):
    """The data does not satisfy the necessary condition required by a transform."""


def _sgn_pow(d: int) -> int:
    return -1 if d % 2 else 1


# ---------------------------------------------------------------------------
# Necessary conditions for an adjacent nested same-zeta pair.
# "big" is the block with the containing interval (larger A - B = d_big),
# "small" the contained one.  Which of the two sits above in the order is part
# of each function's contract.
# ---------------------------------------------------------------------------

def sup_condition_ok(
    d_big: int, d_small: int, l_big: int, e_big: Sign, l_small: int, e_small: Sign
) -> bool:
    """Necessary condition when the containing block is above."""
    if e_big == _sgn_pow(d_small) * e_small:
        return 0 <= l_big - l_small <= d_big - d_small
    return l_big + l_small > d_small


def sub_condition_ok(
    d_big: int, d_small: int, l_big: int, e_big: Sign, l_small: int, e_small: Sign
) -> bool:
    """Necessary condition when the contained block is above."""
    if e_small == _sgn_pow(d_big) * e_big:
        return 0 <= l_big - l_small <= d_big - d_small
    return l_big + l_small > d_small


# ---------------------------------------------------------------------------
# Pair-level transforms
# ---------------------------------------------------------------------------

def s_plus_pair(
    d_big: int, d_small: int, l_big: int, e_big: Sign, l_small: int, e_small: Sign
) -> Tuple[int, Sign, int, Sign]:
    """Swap a nested pair with the container above.

    Input is the data for the container-above order; output
    (l_big', e_big', l_small', e_small') is the data for the swapped order.
    """
    if not sup_condition_ok(d_big, d_small, l_big, e_big, l_small, e_small):
        raise TransformPreconditionError(
            "input does not satisfy the container-above necessary condition"
        )
    step = d_small - 2 * l_small + 1
    if e_big != _sgn_pow(d_small) * e_small:
        new_l_big = l_big - step
        new_e_big = e_small
    elif 2 * (l_big - l_small) < d_big - 2 * d_small + 2 * l_small:
        new_l_big = l_big + step
        new_e_big = -e_small
    else:
        new_l_big = (d_big - d_small) + 2 * l_small - l_big
        new_e_big = e_small
    new_e_small = _sgn_pow(d_big) * e_small
    out = (new_l_big, new_e_big, l_small, new_e_small)
    assert sub_condition_ok(d_big, d_small, *out), (
        "s_plus output violates the contained-above necessary condition"
    )
    return out


def s_minus_pair(
    d_big: int, d_small: int, l_big: int, e_big: Sign, l_small: int, e_small: Sign
) -> Tuple[int, Sign, int, Sign]:
    """Swap a nested pair with the contained block above (inverse of s_plus_pair).

    Input is the data for the contained-above order; output is the data for the
    container-above order.
    """
    if not sub_condition_ok(d_big, d_small, l_big, e_big, l_small, e_small):
        raise TransformPreconditionError(
            "input does not satisfy the contained-above necessary condition"
        )
    new_e_small = _sgn_pow(d_big) * e_small
    step = d_small - 2 * l_small + 1
    if e_small != _sgn_pow(d_big) * e_big:
        new_e_big = _sgn_pow(d_small) * new_e_small
        new_l_big = l_big - step
    elif 2 * (l_big - l_small) < d_big - 2 * d_small + 2 * l_small:
        new_e_big = -_sgn_pow(d_small) * new_e_small
        new_l_big = l_big + step
    else:
        new_e_big = _sgn_pow(d_small) * new_e_small
        new_l_big = (d_big - d_small) - l_big + 2 * l_small
    out = (new_l_big, new_e_big, l_small, new_e_small)
    assert sup_condition_ok(d_big, d_small, *out), (
        "s_minus output violates the container-above necessary condition"
    )
    return out


def u_pair(
    d_upper: int, d_lower: int, l_upper: int, e_upper: Sign, l_lower: int, e_lower: Sign
) -> Tuple[int, Sign, int, Sign]:
    """Opposite-zeta swap: l's unchanged, each eta picks up (-1)^(d_other + 1)."""
    return (
        l_upper,
        _sgn_pow(d_lower + 1) * e_upper,
        l_lower,
        _sgn_pow(d_upper + 1) * e_lower,
    )


# ---------------------------------------------------------------------------
# Equivalence mod ~Sigma_0
# ---------------------------------------------------------------------------

def sigma0_equiv(d1: SignedData, d2: SignedData, psi: Parameter) -> bool:
    """l identical, eta identical except at blocks where l = (A-B+1)/2."""
    d1.check_bounds(psi)
    d2.check_bounds(psi)
    if d1.l != d2.l:
        return False
    for i, blk in enumerate(psi.blocks):
        if d1.eta[i] != d2.eta[i] and not blk.eta_is_free_at(d1.l[i]):
            return False
    return True


def sigma0_canonical(psi: Parameter, data: SignedData) -> SignedData:
    """Representative with eta = +1 wherever the eta-flip is invisible."""
    eta = list(data.eta)
    for i, blk in enumerate(psi.blocks):
        if blk.eta_is_free_at(data.l[i]):
            eta[i] = 1
    return SignedData(data.l, tuple(eta))


# ---------------------------------------------------------------------------
# Parameter-level API
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdjacentSwap:
    """Identifies the greater block of an adjacent pair in a per-rho order.

    ``k`` indexes the fiber order counted from the least block: the pair is
    the blocks at positions k and k-1, with 2 <= k <= n.
    """

    rho: RhoLabel
    k: int


def _swap_positions(
    psi: Parameter, order: AdmissibleOrder, swap: AdjacentSwap
) -> Tuple[int, int, Tuple[int, ...]]:
    fiber = order.fiber_for(psi, swap.rho)
    n = len(fiber)
    if not (2 <= swap.k <= n):
        raise DataError(f"swap position k={swap.k} out of range for fiber of size {n}")
    upper = fiber[n - swap.k]
    lower = fiber[n - swap.k + 1]
    return upper, lower, fiber


def swapped_order(
    psi: Parameter, order: AdmissibleOrder, swap: AdjacentSwap
) -> AdmissibleOrder:
    upper, lower, fiber = _swap_positions(psi, order, swap)
    new_fiber = list(fiber)
    i = new_fiber.index(upper)
    new_fiber[i], new_fiber[i + 1] = new_fiber[i + 1], new_fiber[i]
    per_rho = tuple(
        tuple(new_fiber) if t == fiber else t for t in order.per_rho
    )
    return AdmissibleOrder(per_rho)


def _apply_pair(
    psi: Parameter,
    data: SignedData,
    upper: int,
    lower: int,
    new_upper_vals: Tuple[int, Sign],
    new_lower_vals: Tuple[int, Sign],
) -> SignedData:
    l = list(data.l)
    eta = list(data.eta)
    l[upper], eta[upper] = new_upper_vals
    l[lower], eta[lower] = new_lower_vals
    return SignedData(tuple(l), tuple(eta))


def s_plus(
    swap: AdjacentSwap, psi: Parameter, order: AdmissibleOrder, data: SignedData
) -> SignedData:
    """Same-zeta adjacent swap with the containing block above."""
    data.check_bounds(psi)
    upper, lower, _ = _swap_positions(psi, order, swap)
    bu, bl = psi.blocks[upper], psi.blocks[lower]
    if bu.zeta != bl.zeta:
        raise DataError("s_plus requires equal zeta")
    if not (bu.B <= bl.B and bu.A >= bl.A):
        raise DataError("s_plus requires the upper interval to contain the lower one")
    lk2, ek2, l12, e12 = s_plus_pair(
        bu.d, bl.d, data.l[upper], data.eta[upper], data.l[lower], data.eta[lower]
    )
    return _apply_pair(psi, data, upper, lower, (lk2, ek2), (l12, e12))


def s_minus(
    swap: AdjacentSwap, psi: Parameter, order: AdmissibleOrder, data: SignedData
) -> SignedData:
    """Same-zeta adjacent swap with the containing block below."""
    data.check_bounds(psi)
    upper, lower, _ = _swap_positions(psi, order, swap)
    bu, bl = psi.blocks[upper], psi.blocks[lower]
    if bu.zeta != bl.zeta:
        raise DataError("s_minus requires equal zeta")
    if not (bl.B <= bu.B and bl.A >= bu.A):
        raise DataError("s_minus requires the lower interval to contain the upper one")
    l_big, e_big, l_small, e_small = s_minus_pair(
        bl.d, bu.d, data.l[lower], data.eta[lower], data.l[upper], data.eta[upper]
    )
    return _apply_pair(psi, data, upper, lower, (l_small, e_small), (l_big, e_big))


def u_transform(
    swap: AdjacentSwap, psi: Parameter, order: AdmissibleOrder, data: SignedData
) -> SignedData:
    data.check_bounds(psi)
    upper, lower, _ = _swap_positions(psi, order, swap)
    bu, bl = psi.blocks[upper], psi.blocks[lower]
    if bu.zeta == bl.zeta:
        raise DataError("u_transform requires opposite zeta")
    lu, eu, ll, el = u_pair(
        bu.d, bl.d, data.l[upper], data.eta[upper], data.l[lower], data.eta[lower]
    )
    return _apply_pair(psi, data, upper, lower, (lu, eu), (ll, el))


def _transport_fiber(
    psi: Parameter,
    current: List[int],
    target_rank: Dict[int, int],
    l: List[int],
    eta: List[Sign],
) -> None:
    """Bubble ``current`` (descending list of occurrences) into target order,
    applying the pair transforms to (l, eta) in place."""
    n = len(current)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            up, lo = current[i], current[i + 1]
            if target_rank[up] >= target_rank[lo]:
                continue
            bu, bl = psi.blocks[up], psi.blocks[lo]
            if bu.zeta != bl.zeta:
                l[up], eta[up], l[lo], eta[lo] = u_pair(
                    bu.d, bl.d, l[up], eta[up], l[lo], eta[lo]
                )
            elif bu.B <= bl.B and bu.A >= bl.A:
                l[up], eta[up], l[lo], eta[lo] = s_plus_pair(
                    bu.d, bl.d, l[up], eta[up], l[lo], eta[lo]
                )
            elif bl.B <= bu.B and bl.A >= bu.A:
                l[lo], eta[lo], l[up], eta[up] = s_minus_pair(
                    bl.d, bu.d, l[lo], eta[lo], l[up], eta[up]
                )
            else:
                raise AssertionError(
                    "unreachable: admissible adjacent swap of an incomparable same-zeta pair"
                )
            current[i], current[i + 1] = lo, up
            changed = True


def reorder(
    psi: Parameter,
    from_order: AdmissibleOrder,
    to_order: AdmissibleOrder,
    data: SignedData,
) -> SignedData:
    """Transport (l, eta) from one admissible order to another."""
    data.check_bounds(psi)
    if not is_admissible(from_order, psi):
        raise DataError("from_order is not admissible")
    if not is_admissible(to_order, psi):
        raise DataError("to_order is not admissible")
    l = list(data.l)
    eta = list(data.eta)
    for rho in psi.fibers():
        current = list(from_order.fiber_for(psi, rho))
        target = to_order.fiber_for(psi, rho)
        target_rank = {occ: len(target) - pos for pos, occ in enumerate(target)}
        _transport_fiber(psi, current, target_rank, l, eta)
        assert current == list(target)
    return SignedData(tuple(l), tuple(eta))
