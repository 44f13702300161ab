"""Core data types: blocks, parameters, admissible orders, packet coordinates.

A Jordan block is (rho, A, B, zeta) with A >= B >= 0, A - B a non-negative
integer, and zeta in {+1, -1}.  Equivalently (rho, a, b) with
a = A + 1 + zeta*B, b = A + 1 - zeta*B; when a = b (B = 0) zeta is an explicit
stored choice.  A parameter is a multiset of blocks; occurrences are addressed
by their position in the expanded block tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .halfint import HalfInt, hi

ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"
GROUP_KINDS = ("Sp-even", "SO-odd", "SO-even")

Sign = int  # +1 or -1


class ParameterError(ValueError):
    """Raised for malformed or inconsistent parameter data."""


class DataError(ValueError):
    """Raised for invalid packet coordinates or orders."""


def _check_sign(z, what: str) -> int:
    if z not in (1, -1):
        raise ParameterError(f"{what} must be +1 or -1, got {z!r}")
    return z


@dataclass(frozen=True)
class RhoLabel:
    """An opaque label for a self-dual supercuspidal factor, with parity and dimension."""

    id: str
    parity: str = ORTHOGONAL
    dim: int = 1

    def __post_init__(self):
        if self.parity not in (ORTHOGONAL, SYMPLECTIC):
            raise ParameterError(f"bad parity {self.parity!r}")
        if not (isinstance(self.dim, int) and self.dim >= 1):
            raise ParameterError(f"bad dim {self.dim!r}")


@dataclass(frozen=True)
class JordanBlock:
    rho: RhoLabel
    A: HalfInt
    B: HalfInt
    zeta: Sign

    def __post_init__(self):
        object.__setattr__(self, "A", hi(self.A))
        object.__setattr__(self, "B", hi(self.B))
        _check_sign(self.zeta, "zeta")
        if not (self.A >= self.B >= 0):
            raise ParameterError(f"need A >= B >= 0, got A={self.A}, B={self.B}")
        if (self.A.twice - self.B.twice) % 2 != 0:
            raise ParameterError(
                f"A and B must both be integral or both half-integral, got A={self.A}, B={self.B}"
            )

    @property
    def a(self) -> int:
        return ((self.A.twice + 2) + self.zeta * self.B.twice) // 2

    @property
    def b(self) -> int:
        return ((self.A.twice + 2) - self.zeta * self.B.twice) // 2

    @property
    def d(self) -> int:
        """A - B as a plain integer."""
        return (self.A.twice - self.B.twice) // 2

    def l_max(self) -> int:
        return (self.d + 1) // 2

    def eta_is_free_at(self, l: int) -> bool:
        """True iff eta-flips at this block with the given l are invisible mod ~Sigma_0."""
        return 2 * l == self.d + 1

    def interval(self) -> Tuple[HalfInt, HalfInt]:
        return (self.B, self.A)


def convert_ab(a: int, b: int, tie_zeta: Optional[Sign] = None) -> Tuple[HalfInt, HalfInt, Sign]:
    """(a, b) -> (A, B, zeta) with A = (a+b)/2 - 1, B = |a-b|/2, zeta = sign(a-b)."""
    if not (isinstance(a, int) and isinstance(b, int) and a >= 1 and b >= 1):
        raise ParameterError(f"a and b must be positive integers, got {a!r}, {b!r}")
    A = HalfInt(a + b - 2)
    B = HalfInt(abs(a - b))
    if a == b:
        if tie_zeta is None:
            raise ParameterError("a = b requires an explicit tie_zeta choice")
        zeta = _check_sign(tie_zeta, "tie_zeta")
    else:
        zeta = 1 if a > b else -1
    return (A, B, zeta)


def block_parity(block: JordanBlock) -> str:
    """Orthogonal iff (a+b even and rho orthogonal) or (a+b odd and rho symplectic)."""
    even = (block.a + block.b) % 2 == 0
    rho_orth = block.rho.parity == ORTHOGONAL
    return ORTHOGONAL if (even == rho_orth) else SYMPLECTIC


_DUAL_PARITY = {"Sp-even": ORTHOGONAL, "SO-odd": SYMPLECTIC, "SO-even": ORTHOGONAL}


@dataclass(frozen=True)
class Parameter:
    """A multiset of Jordan blocks; ``blocks[i]`` is occurrence i."""

    blocks: Tuple[JordanBlock, ...]
    group_kind: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        seen: Dict[str, RhoLabel] = {}
        for blk in self.blocks:
            if not isinstance(blk, JordanBlock):
                raise ParameterError(f"not a JordanBlock: {blk!r}")
            prev = seen.setdefault(blk.rho.id, blk.rho)
            if prev != blk.rho:
                raise ParameterError(
                    f"rho id {blk.rho.id!r} used with conflicting parity/dim"
                )
        if self.group_kind is not None:
            if self.group_kind not in GROUP_KINDS:
                raise ParameterError(f"bad group kind {self.group_kind!r}")
            want = _DUAL_PARITY[self.group_kind]
            for blk in self.blocks:
                if block_parity(blk) != want:
                    raise ParameterError(
                        f"block (rho={blk.rho.id}, a={blk.a}, b={blk.b}) has parity "
                        f"{block_parity(blk)}, but {self.group_kind} requires {want}"
                    )

    def fibers(self) -> Dict[RhoLabel, Tuple[int, ...]]:
        out: Dict[RhoLabel, List[int]] = {}
        for i, blk in enumerate(self.blocks):
            out.setdefault(blk.rho, []).append(i)
        return {rho: tuple(ix) for rho, ix in out.items()}

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class AdmissibleOrder:
    """Per-rho total orders; each tuple lists occurrence indices greatest first."""

    per_rho: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "per_rho", tuple(tuple(t) for t in self.per_rho))

    def fiber_for(self, psi: Parameter, rho: RhoLabel) -> Tuple[int, ...]:
        want = set(psi.fibers()[rho])
        for t in self.per_rho:
            if set(t) == want:
                return t
        raise DataError(f"order has no fiber matching rho {rho.id!r}")

    def rank(self, psi: Parameter) -> Dict[int, int]:
        """Map occurrence index -> rank within its fiber (greater block = larger rank)."""
        out: Dict[int, int] = {}
        for t in self.per_rho:
            n = len(t)
            for pos, occ in enumerate(t):
                out[occ] = n - pos
        return out


@dataclass(frozen=True)
class SignedData:
    """Packet coordinates: an integer l and a sign eta per block occurrence."""

    l: Tuple[int, ...]
    eta: Tuple[Sign, ...]

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(self.l))
        object.__setattr__(self, "eta", tuple(self.eta))
        if len(self.l) != len(self.eta):
            raise DataError("l and eta must have the same length")
        for e in self.eta:
            if e not in (1, -1):
                raise DataError(f"eta entries must be +1/-1, got {e!r}")

    def check_bounds(self, psi: Parameter) -> None:
        if len(self.l) != len(psi.blocks):
            raise DataError("data length does not match number of block occurrences")
        for i, blk in enumerate(psi.blocks):
            if not (0 <= self.l[i] <= blk.l_max()):
                raise DataError(
                    f"l[{i}]={self.l[i]} out of range [0, {blk.l_max()}] for block "
                    f"(A={blk.A}, B={blk.B})"
                )


def is_admissible(order: AdmissibleOrder, psi: Parameter) -> bool:
    """Condition (P): a block strictly dominating another of the same zeta is greater."""
    fibers = psi.fibers()
    covered = sorted(itertools.chain.from_iterable(order.per_rho))
    if covered != list(range(len(psi.blocks))):
        raise DataError("order does not cover the block occurrences exactly once")
    for rho, want in fibers.items():
        t = order.fiber_for(psi, rho)
        for hi_pos in range(len(t)):
            for lo_pos in range(hi_pos + 1, len(t)):
                upper = psi.blocks[t[hi_pos]]
                lower = psi.blocks[t[lo_pos]]
                if (
                    lower.zeta == upper.zeta
                    and lower.A > upper.A
                    and lower.B > upper.B
                ):
                    return False
    return True


def natural_order(psi: Parameter) -> AdmissibleOrder:
    """Sort each fiber by A descending, ties by B descending, then occurrence index."""
    per_rho = []
    for rho, ix in psi.fibers().items():
        key = lambda i: (-psi.blocks[i].A.twice, -psi.blocks[i].B.twice, i)
        per_rho.append(tuple(sorted(ix, key=key)))
    return AdmissibleOrder(tuple(per_rho))


def all_admissible_orders(psi: Parameter, limit: Optional[int] = None) -> List[AdmissibleOrder]:
    """Every admissible order, as the product of per-fiber admissible permutations."""
    per_fiber: List[List[Tuple[int, ...]]] = []
    for rho, ix in psi.fibers().items():
        opts = []
        for perm in itertools.permutations(ix):
            ok = True
            for hi_pos in range(len(perm)):
                for lo_pos in range(hi_pos + 1, len(perm)):
                    upper = psi.blocks[perm[hi_pos]]
                    lower = psi.blocks[perm[lo_pos]]
                    if (
                        lower.zeta == upper.zeta
                        and lower.A > upper.A
                        and lower.B > upper.B
                    ):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                opts.append(perm)
        per_fiber.append(opts)
    out: List[AdmissibleOrder] = []
    for combo in itertools.product(*per_fiber):
        out.append(AdmissibleOrder(tuple(combo)))
        if limit is not None and len(out) >= limit:
            break
    return out


def discrete_diagonal_restriction(psi: Parameter) -> bool:
    """True iff within each fiber the intervals [B, A] are pairwise disjoint."""
    for rho, ix in psi.fibers().items():
        ivs = sorted((psi.blocks[i].B.twice, psi.blocks[i].A.twice) for i in ix)
        for (b1, a1), (b2, a2) in zip(ivs, ivs[1:]):
            if b2 <= a1:
                return False
    return True


def is_elementary(psi: Parameter) -> bool:
    return discrete_diagonal_restriction(psi) and all(
        blk.A == blk.B for blk in psi.blocks
    )


# ---------------------------------------------------------------------------
# Parameter file format (JSON-shaped)
# ---------------------------------------------------------------------------

def parameter_from_json(obj: Mapping) -> Tuple[Parameter, Optional[AdmissibleOrder]]:
    if not isinstance(obj, Mapping):
        raise ParameterError("parameter file must be a JSON object")
    group = obj.get("group")
    raw_blocks = obj.get("blocks")
    if not isinstance(raw_blocks, (list, tuple)):
        raise ParameterError('missing or malformed "blocks" array')
    blocks: List[JordanBlock] = []
    for rb in raw_blocks:
        if not isinstance(rb, Mapping):
            raise ParameterError(f"bad block entry {rb!r}")
        try:
            rho = RhoLabel(
                id=str(rb["rho"]),
                parity=rb.get("parity", ORTHOGONAL),
                dim=rb.get("dim", 1),
            )
            blk = JordanBlock(
                rho=rho,
                A=hi(rb["A"]),
                B=hi(rb["B"]),
                zeta=rb["zeta"],
            )
        except KeyError as exc:
            raise ParameterError(f"block entry missing field {exc}") from exc
        count = rb.get("count", 1)
        if not (isinstance(count, int) and count >= 1):
            raise ParameterError(f"bad count {count!r}")
        blocks.extend([blk] * count)
    psi = Parameter(tuple(blocks), group_kind=group)
    order = None
    raw_order = obj.get("order")
    if raw_order is not None:
        if raw_order and isinstance(raw_order[0], int):
            raw_order = [raw_order]
        try:
            order = AdmissibleOrder(tuple(tuple(int(i) for i in t) for t in raw_order))
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"malformed order: {exc}") from exc
        if not is_admissible(order, psi):
            raise DataError("declared order is not admissible")
    return psi, order


def parameter_to_json(psi: Parameter, order: Optional[AdmissibleOrder] = None) -> dict:
    blocks = []
    i = 0
    while i < len(psi.blocks):
        blk = psi.blocks[i]
        count = 1
        # Merge a run of identical occurrences back into a count only when no
        # explicit order refers to them individually.
        if order is None:
            while i + count < len(psi.blocks) and psi.blocks[i + count] == blk:
                count += 1
        blocks.append(
            {
                "rho": blk.rho.id,
                "parity": blk.rho.parity,
                "dim": blk.rho.dim,
                "A": blk.A.to_json(),
                "B": blk.B.to_json(),
                "zeta": blk.zeta,
                "count": count,
            }
        )
        i += count
    out = {"group": psi.group_kind, "blocks": blocks}
    if order is not None:
        out["order"] = [list(t) for t in order.per_rho]
    return out
