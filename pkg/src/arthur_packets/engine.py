"""Decision engine: nonvanishing of a packet member for given (l, eta).

The engine normalizes each rho-fiber to the natural order (A descending, ties
by B), transporting (l, eta) with the adjacent-swap transforms, and then
recursively rewrites the configuration with Pull / Expand / Change sign until
every remaining piece is in good shape, where the basic condition decides.

Internally a fiber is a tuple of records (tA, tB, zeta, l, eta) listed in
ascending order (index 0 = least block), with tA, tB doubled coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .characters import quasisplit_ok
from .core import AdmissibleOrder, DataError, Parameter, SignedData, is_admissible
from .reductions import (
    Rec,
    ReductionStep,
    far_from_set_threshold_twice,
    measure,
)
from .transforms import (
    TransformPreconditionError,
    s_minus_pair,
    s_plus_pair,
    sup_condition_ok,
    u_pair,
)


class RecursionLimitError(RuntimeError):
    """The engine exceeded its reduction-step budget."""

    def __init__(self, message: str, trace=()):
        super().__init__(message)
        self.trace = tuple(trace)


@dataclass(frozen=True)
class Verdict:
    nonvanishing: bool
    trace: Tuple = ()


def _sgn(d: int) -> int:
    return -1 if d % 2 else 1


def _d(rec: Rec) -> int:
    return (rec[0] - rec[1]) // 2


def _key(rec: Rec) -> Tuple[int, int]:
    return (rec[0], rec[1])


def basic_ok(lower: Rec, upper: Rec) -> bool:
    """The two-block condition for a comparable pair (upper dominates lower)."""
    tA1, tB1, _z1, l1, e1 = lower
    tA2, tB2, _z2, l2, e2 = upper
    if e2 == _sgn(_d(lower)) * e1:
        return tA2 - 2 * l2 >= tA1 - 2 * l1 and tB2 + 2 * l2 >= tB1 + 2 * l1
    return tB2 + 2 * l2 > tA1 - 2 * l1


# ---------------------------------------------------------------------------
# Good shape (record level)
# ---------------------------------------------------------------------------

def _chunk_partition(recs: Sequence[Rec]) -> Optional[List[Tuple[int, ...]]]:
    """Split an ascending fiber into separated singleton/pair chunks.

    Returns the list of chunks (index tuples, ascending) or None if the fiber
    is not in good shape.  A pair chunk must be same-zeta and comparable; the
    separation conditions are checked with minimal dominating stacks: each
    block of a chunk must have B above the stacked version of everything
    below, and every block above the chunk must have B above the worst-case
    minimal stack of the chunk itself.
    """
    n = len(recs)
    if n == 0:
        return []
    for lo, up in zip(recs, recs[1:]):
        if up[0] < lo[0] or up[1] < lo[1]:
            return None
    # prefix_top[i] = top of the greedy minimal interval-disjoint dominating
    # stack of recs[0..i-1] (None when empty).
    prefix_top: List[Optional[int]] = [None] * (n + 1)
    top: Optional[int] = None
    for i, rec in enumerate(recs):
        start = rec[1] if top is None else max(rec[1], top + 2)
        top = start + (rec[0] - rec[1])
        prefix_top[i + 1] = top

    def chunk_ok(i: int, size: int) -> bool:
        below_top = prefix_top[i]
        if below_top is not None and recs[i][1] <= below_top:
            return False
        if size == 1:
            stack_top = recs[i][0]
        else:
            lo, up = recs[i], recs[i + 1]
            if lo[2] != up[2]:
                return False
            # Worst case over the admissible orders of the pair: the minimal
            # dominating stack top with the pair stacked either way.  The
            # reversed order is admissible only when the pair is not forced
            # by strict two-sided dominance.
            stack_top = up[0] + max(0, lo[0] - up[1] + 2)
            if not (up[0] > lo[0] and up[1] > lo[1]):
                stack_top = max(stack_top, lo[0] + max(0, up[0] - lo[1] + 2))
        j = i + size
        if j < n and recs[j][1] <= stack_top:
            return False
        return True

    feasible = [False] * (n + 1)
    choice = [0] * (n + 1)
    feasible[n] = True
    for i in range(n - 1, -1, -1):
        if i + 2 <= n and feasible[i + 2] and chunk_ok(i, 2):
            feasible[i], choice[i] = True, 2
        elif feasible[i + 1] and chunk_ok(i, 1):
            feasible[i], choice[i] = True, 1
    if not feasible[0]:
        return None
    chunks: List[Tuple[int, ...]] = []
    i = 0
    while i < n:
        chunks.append(tuple(range(i, i + choice[i])))
        i += choice[i]
    return chunks


def _chunks_verdict(recs: Sequence[Rec], chunks: Sequence[Tuple[int, ...]]) -> bool:
    for ch in chunks:
        if len(ch) == 2 and not basic_ok(recs[ch[0]], recs[ch[1]]):
            return False
    return True


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------

class Engine:
    def __init__(self, recursion_limit: int = 10000):
        self.recursion_limit = recursion_limit
        self._memo = {}

    # -- fiber normalization ---------------------------------------------

    @staticmethod
    def _bubble_swap(seq: List[Rec], i: int) -> None:
        """Swap positions i (lower) and i+1 (upper), transporting (l, eta).

        Raises TransformPreconditionError when the necessary condition of the
        same-zeta swap fails (which implies the verdict is False).
        """
        lo, up = seq[i], seq[i + 1]
        if lo[2] != up[2]:
            lu, eu, ll, el = u_pair(_d(up), _d(lo), up[3], up[4], lo[3], lo[4])
            up = (up[0], up[1], up[2], lu, eu)
            lo = (lo[0], lo[1], lo[2], ll, el)
        elif up[1] <= lo[1] and up[0] >= lo[0]:
            lb, eb, ls, es = s_plus_pair(_d(up), _d(lo), up[3], up[4], lo[3], lo[4])
            up = (up[0], up[1], up[2], lb, eb)
            lo = (lo[0], lo[1], lo[2], ls, es)
        elif lo[1] <= up[1] and lo[0] >= up[0]:
            lb, eb, ls, es = s_minus_pair(_d(lo), _d(up), lo[3], lo[4], up[3], up[4])
            lo = (lo[0], lo[1], lo[2], lb, eb)
            up = (up[0], up[1], up[2], ls, es)
        else:
            raise AssertionError(
                "unreachable: adjacent same-zeta pair neither nested nor allowed to swap"
            )
        seq[i], seq[i + 1] = up, lo

    @classmethod
    def _canonicalize(cls, seq: Sequence[Rec]) -> Tuple[Rec, ...]:
        """Bubble into ascending natural order, transporting the data."""
        work = list(seq)
        n = len(work)
        changed = True
        while changed:
            changed = False
            for i in range(n - 1):
                if _key(work[i]) > _key(work[i + 1]):
                    cls._bubble_swap(work, i)
                    changed = True
        for i, rec in enumerate(work):
            if 2 * rec[3] == _d(rec) + 1:
                work[i] = (rec[0], rec[1], rec[2], rec[3], 1)
        return tuple(work)

    # -- fiber decision ---------------------------------------------------

    def _fiber_decide(self, seq: Sequence[Rec], trace: Optional[list]) -> bool:
        try:
            canon = self._canonicalize(seq)
        except TransformPreconditionError:
            return False
        hit = self._memo.get(canon)
        if hit is not None and trace is None:
            return hit
        verdict = self._decide_natural(canon, trace)
        self._memo[canon] = verdict
        return verdict

    def _record(self, trace: Optional[list], step: ReductionStep) -> None:
        assert step.decreases(), (
            f"termination measure failed to decrease on {step.kind}: "
            f"{step.measure_before} -> {step.measure_after}"
        )
        self._steps += 1
        if self._steps > self.recursion_limit:
            raise RecursionLimitError(
                f"reduction-step budget of {self.recursion_limit} exceeded",
                trace or (),
            )
        if trace is not None:
            trace.append(step)

    def _decide_natural(self, seq: Tuple[Rec, ...], trace: Optional[list]) -> bool:
        n = len(seq)
        if n <= 1:
            return True

        # Fast fail: necessary conditions on adjacent same-zeta pairs.
        for i in range(n - 1):
            lo, up = seq[i], seq[i + 1]
            if lo[2] != up[2]:
                continue
            if up[1] >= lo[1]:
                if not basic_ok(lo, up):
                    return False
            else:
                if not sup_condition_ok(_d(up), _d(lo), up[3], up[4], lo[3], lo[4]):
                    return False

        chunks = _chunk_partition(seq)
        if chunks is not None:
            return _chunks_verdict(seq, chunks)

        # Retire a far-away good-shape suffix as an independent conjunct.
        for k in range(1, n):
            suffix = seq[k:]
            sub_chunks = _chunk_partition(suffix)
            if sub_chunks is None:
                continue
            prefix_idx = list(range(k))
            if all(
                rec[1] > far_from_set_threshold_twice(seq, prefix_idx, 2)
                for rec in suffix
            ):
                if not _chunks_verdict(suffix, sub_chunks):
                    return False
                return self._fiber_decide(seq[:k], trace)

        P = seq[-1]
        rest = list(seq[:-1])

        def contained(rec: Rec) -> bool:
            return (
                rec[2] == P[2]
                and rec[1] >= P[1]
                and rec[0] <= P[0]
                and (rec[1] > P[1] or rec[0] < P[0])
            )

        pull = [i for i in range(n - 1) if contained(seq[i])]
        equal = [
            i
            for i in range(n - 1)
            if seq[i][2] == P[2] and seq[i][0] == P[0] and seq[i][1] == P[1]
        ]

        if pull:
            q = max(pull, key=lambda i: (seq[i][0], seq[i][1], i))
            work = list(seq)
            try:
                for j in range(q, n - 2):
                    self._bubble_swap(work, j)
            except TransformPreconditionError:
                return False
            P = work[-1]
            Q = work[-2]
            rest = work[:-2]
            if not sup_condition_ok(_d(P), _d(Q), P[3], P[4], Q[3], Q[4]):
                return False
            try:
                lb, eb, ls, es = s_plus_pair(_d(P), _d(Q), P[3], P[4], Q[3], Q[4])
            except TransformPreconditionError:
                return False
            P_swapped = (P[0], P[1], P[2], lb, eb)
            # B-equalizing co-shift of the retired pair: shift P up by
            # (B_Q - B_P); the basic condition is co-shift invariant.
            delta = Q[1] - P[1]
            P_shifted = (P[0] + delta, Q[1], P[2], P[3], P[4])
            self._record(
                trace,
                ReductionStep.make(
                    "PullUnequal",
                    seq,
                    (tuple(rest), tuple(rest + [Q]), tuple(rest + [P_swapped])),
                ),
            )
            if not basic_ok(Q, P_shifted):
                return False
            return (
                self._fiber_decide(tuple(rest), trace)
                and self._fiber_decide(tuple(rest + [Q]), trace)
                and self._fiber_decide(tuple(rest + [P_swapped]), trace)
            )

        if equal:
            r = max(equal)
            work = list(seq)
            for j in range(r, n - 2):
                # Blocks between equal-interval partners share the key and
                # have the opposite zeta, so these are all U-swaps.
                self._bubble_swap(work, j)
            P = work[-1]
            R = work[-2]
            rest = work[:-2]
            self._record(
                trace,
                ReductionStep.make(
                    "PullEqual", seq, (tuple(rest), tuple(rest + [R]))
                ),
            )
            if not basic_ok(R, P):
                return False
            return self._fiber_decide(tuple(rest), trace) and self._fiber_decide(
                tuple(rest + [R]), trace
            )

        same_z = [rec for rec in rest if rec[2] == P[2]]
        if same_z:
            assert all(rec[1] < P[1] for rec in same_z)
            t = min((P[1] - rec[1]) // 2 for rec in same_z)
        else:
            t = P[1] // 2
        if t >= 1:
            expanded = (P[0] + 2 * t, P[1] - 2 * t, P[2], P[3] + t, P[4])
            new_seq = tuple(rest + [expanded])
            self._record(trace, ReductionStep.make("Expand", seq, (new_seq,)))
            return self._fiber_decide(new_seq, trace)

        # B of the top block is 0 or 1/2, and every lower block has the
        # opposite zeta: bubble it to the bottom with U-swaps, change sign.
        assert P[1] in (0, 1) and not same_z
        work = list(seq)
        for j in range(n - 2, -1, -1):
            self._bubble_swap(work, j)
        P2 = work[0]
        rest2 = work[1:]
        if P2[1] == 0:
            changed = (P2[0], 0, -P2[2], P2[3], P2[4])
            kind = "ChangeSignIntegral"
        else:
            l1, e1 = P2[3], P2[4]
            if 2 * l1 == _d(P2) + 1:
                e1 = -1
            if e1 == 1:
                changed = (P2[0] + 2, 1, -P2[2], l1 + 1, -1)
            else:
                changed = (P2[0] + 2, 1, -P2[2], l1, 1)
            kind = "ChangeSignHalf"
        new_seq = tuple([changed] + rest2)
        self._record(trace, ReductionStep.make(kind, seq, (new_seq,)))
        return self._fiber_decide(new_seq, trace)

    # -- public API -------------------------------------------------------

    @staticmethod
    def _fiber_seqs(psi: Parameter, order: AdmissibleOrder, data: SignedData):
        seqs = []
        for rho in psi.fibers():
            fiber = order.fiber_for(psi, rho)
            seqs.append(
                tuple(
                    (
                        psi.blocks[i].A.twice,
                        psi.blocks[i].B.twice,
                        psi.blocks[i].zeta,
                        data.l[i],
                        data.eta[i],
                    )
                    for i in reversed(fiber)
                )
            )
        return seqs

    def decide(
        self,
        psi: Parameter,
        order: AdmissibleOrder,
        data: SignedData,
        collect_trace: bool = False,
    ) -> Verdict:
        data.check_bounds(psi)
        if not is_admissible(order, psi):
            raise DataError("order is not admissible")
        if not quasisplit_ok(psi, data):
            raise DataError("data violates the quasisplit product constraint")
        return self._decide_unchecked(psi, order, data, collect_trace)

    def _decide_unchecked(
        self,
        psi: Parameter,
        order: AdmissibleOrder,
        data: SignedData,
        collect_trace: bool = False,
    ) -> Verdict:
        trace: Optional[list] = [] if collect_trace else None
        self._steps = 0
        ok = True
        for seq in self._fiber_seqs(psi, order, data):
            if not self._fiber_decide(seq, trace):
                ok = False
                break
        return Verdict(ok, tuple(trace) if trace is not None else ())


def good_shape(psi: Parameter, order: AdmissibleOrder) -> bool:
    """True iff every fiber splits into separated singleton/pair chunks."""
    dummy = SignedData(
        tuple(0 for _ in psi.blocks), tuple(1 for _ in psi.blocks)
    )
    return all(
        _chunk_partition(seq) is not None
        for seq in Engine._fiber_seqs(psi, order, dummy)
    )


def decide_good_shape(psi: Parameter, order: AdmissibleOrder, data: SignedData) -> bool:
    """Conjunction of the basic condition over the pair chunks."""
    data.check_bounds(psi)
    result = True
    for seq in Engine._fiber_seqs(psi, order, data):
        chunks = _chunk_partition(seq)
        if chunks is None:
            raise DataError("configuration is not in good shape")
        if not _chunks_verdict(seq, chunks):
            result = False
    return result
