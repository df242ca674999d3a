"""Generator-based adaptive RNC packets, reception records and decoding.

Layer `l` (1-based) is the SVC packet alpha_l. Generator G_l mixes alpha_1..alpha_l
with coefficients drawn from GF(2^8). A user's status matrix keeps one column per
slot, all zeros when the slot's packet was lost.
"""

from collections import Counter
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from services.errors import InconsistentSystemError, ParameterError

from .gf256 import INV_TABLE, MUL_TABLE, axpy, scale


class CodedPacket(BaseModel):
    """One multicast packet; `coeffs` is padded to length L."""

    model_config = ConfigDict(frozen=True)

    slot: int = Field(ge=0)
    gen: int = Field(ge=1)
    coeffs: tuple[int, ...]
    uncoded: bool = False

    @model_validator(mode="after")
    def validate_support(self):
        if self.gen > len(self.coeffs):
            raise ValueError(f"Generator G_{self.gen} exceeds L={len(self.coeffs)}")
        if any(not 0 <= c <= 255 for c in self.coeffs):
            raise ValueError("Coefficients must be GF(256) elements")
        if self.coeffs[self.gen - 1] == 0:
            raise ValueError(f"G_{self.gen} packet needs a nonzero coefficient on alpha_{self.gen}")
        if any(self.coeffs[self.gen :]):
            raise ValueError(f"Coefficients beyond position {self.gen} must be zero")
        return self

    @property
    def active(self) -> tuple[int, ...]:
        """Coefficients of alpha_1..alpha_gen."""
        return self.coeffs[: self.gen]


def encode(gen: int, layers: int, rng: np.random.Generator, slot: int = 0) -> CodedPacket:
    """Draw a G_gen packet: uniform GF(256) coefficients, redrawn while beta_gen is zero.

    A zero top coefficient would make the packet behave like a lower generator.
    """
    if not 1 <= gen <= layers:
        raise ParameterError(f"Generator index must be in [1, {layers}], got {gen}")
    while True:
        active = rng.integers(0, 256, size=gen)
        if active[-1]:
            break
    coeffs = tuple(int(c) for c in active) + (0,) * (layers - gen)
    return CodedPacket(slot=slot, gen=gen, coeffs=coeffs)


def uncoded_packet(index: int, layers: int, slot: int = 0) -> CodedPacket:
    """Plain alpha_index as a single-support coefficient vector."""
    if not 1 <= index <= layers:
        raise ParameterError(f"Packet index must be in [1, {layers}], got {index}")
    coeffs = [0] * layers
    coeffs[index - 1] = 1
    return CodedPacket(slot=slot, gen=index, coeffs=tuple(coeffs), uncoded=True)


def combine(packet: CodedPacket, originals: Sequence[np.ndarray]) -> np.ndarray:
    """Payload of `packet` over the original byte blocks alpha_1..alpha_L."""
    payload = np.zeros_like(np.asarray(originals[0], dtype=np.uint8))
    for coeff, block in zip(packet.active, originals):
        if coeff:
            axpy(payload, coeff, np.asarray(block, dtype=np.uint8))
    return payload


class StatusMatrix:
    """L x T reception record of one user."""

    def __init__(self, layers: int, slots: int):
        if layers < 1 or slots < 1:
            raise ParameterError(f"Status matrix needs L, T >= 1, got {layers}x{slots}")
        self.layers = layers
        self.slots = slots
        self.entries = np.zeros((layers, slots), dtype=np.uint8)
        self.gens = np.zeros(slots, dtype=np.int64)
        self.uncoded = np.zeros(slots, dtype=bool)

    @classmethod
    def from_columns(
        cls, layers: int, slots: int, columns: Mapping[int, Sequence[int]]
    ) -> "StatusMatrix":
        """Build from {slot: coefficient column}; the generator is the deepest nonzero row."""
        status = cls(layers, slots)
        for slot, column in columns.items():
            column = np.asarray(column, dtype=np.uint8)
            support = np.flatnonzero(column)
            if support.size == 0:
                continue
            status.entries[:, slot] = column
            status.gens[slot] = int(support[-1]) + 1
        return status

    def record(self, packet: CodedPacket) -> None:
        """Store `packet` in the column of its slot; each slot takes at most one packet."""
        if packet.slot >= self.slots:
            raise ParameterError(f"Slot {packet.slot} outside deadline T={self.slots}")
        if self.gens[packet.slot]:
            raise ParameterError(f"Slot {packet.slot} already holds a packet")
        self.entries[:, packet.slot] = packet.coeffs
        self.gens[packet.slot] = packet.gen
        self.uncoded[packet.slot] = packet.uncoded

    def received_slots(self) -> list[int]:
        """Slots holding a packet, ascending."""
        return [int(t) for t in np.flatnonzero(self.gens)]

    def coefficient_rows(self) -> np.ndarray:
        """Received coefficient vectors as an n x L matrix, in slot order."""
        return self.entries[:, self.received_slots()].T.copy()

    def received_gens(self) -> list[int]:
        return [int(g) for g in self.gens[self.gens > 0]]

    def copy(self) -> "StatusMatrix":
        clone = StatusMatrix(self.layers, self.slots)
        clone.entries = self.entries.copy()
        clone.gens = self.gens.copy()
        clone.uncoded = self.uncoded.copy()
        return clone


def _eliminate(
    rows: np.ndarray, payloads: Optional[np.ndarray] = None
) -> tuple[dict[int, int], np.ndarray, Optional[np.ndarray]]:
    """Gauss-Jordan over GF(256), pivoting from the deepest layer upwards.

    Pivot rows for columns 0..k-1 become unit vectors once every column below k has a
    pivot, which is what makes the decodable prefix readable off the pivot set.
    """
    rows = rows.copy()
    payloads = None if payloads is None else payloads.copy()
    n, layers = rows.shape
    pivots: dict[int, int] = {}
    pivot_row = 0
    for col in reversed(range(layers)):
        if pivot_row >= n:
            break
        candidates = np.flatnonzero(rows[pivot_row:, col])
        if candidates.size == 0:
            continue
        r = pivot_row + int(candidates[0])
        if r != pivot_row:
            rows[[pivot_row, r]] = rows[[r, pivot_row]]
            if payloads is not None:
                payloads[[pivot_row, r]] = payloads[[r, pivot_row]]
        inv = int(INV_TABLE[rows[pivot_row, col]])
        rows[pivot_row] = scale(inv, rows[pivot_row])
        if payloads is not None:
            payloads[pivot_row] = scale(inv, payloads[pivot_row])
        for other in np.flatnonzero(rows[:, col]):
            if other == pivot_row:
                continue
            factor = int(rows[other, col])
            axpy(rows[other], factor, rows[pivot_row])
            if payloads is not None:
                axpy(payloads[other], factor, payloads[pivot_row])
        pivots[col] = pivot_row
        pivot_row += 1
    return pivots, rows, payloads


def _prefix_of(pivots: Mapping[int, int]) -> int:
    prefix = 0
    while prefix in pivots:
        prefix += 1
    return prefix


def decodable_prefix(status: StatusMatrix) -> int:
    """Largest l with e_1..e_l in the row space of the received coefficients."""
    rows = status.coefficient_rows()
    if rows.shape[0] == 0:
        return 0
    pivots, _, _ = _eliminate(rows)
    return _prefix_of(pivots)


def generic_prefix_counts(counts: Sequence[int]) -> int:
    """generic_prefix over per-generator counts; counts[j] = packets from G_j, counts[0] unused."""
    best = 0
    for l in range(1, len(counts)):
        covered = 0
        for m in range(l, 0, -1):
            covered += counts[m]
            if covered < l - m + 1:
                break
        else:
            best = l
    return best


def generic_prefix(gens: Iterable[int]) -> int:
    """Almost-sure decodable prefix of a multiset of generator indices.

    The largest l admitting l members with indices <= l that sort as j_1 <= ... <= j_l
    with j_k >= k, i.e. every window [m, l] holds at least l - m + 1 of them.
    """
    tally = Counter(gens)
    if not tally:
        return 0
    if min(tally) < 1:
        raise ParameterError("Generator indices start at 1")
    top = max(tally)
    return generic_prefix_counts([tally.get(j, 0) for j in range(top + 1)])


def decode(status: StatusMatrix, payloads: Mapping[int, np.ndarray]) -> list[np.ndarray]:
    """Recover alpha_1..alpha_l for l = decodable_prefix(status)."""
    slots = status.received_slots()
    if not slots:
        return []
    missing = [t for t in slots if t not in payloads]
    if missing:
        raise ParameterError(f"Missing payloads for received slots {missing}")
    rows = status.coefficient_rows()
    blocks = np.stack([np.asarray(payloads[t], dtype=np.uint8) for t in slots])
    pivots, reduced, solved = _eliminate(rows, blocks)
    assert solved is not None
    for r in range(len(pivots), rows.shape[0]):
        if not reduced[r].any() and solved[r].any():
            raise InconsistentSystemError(
                f"Payloads contradict coefficients (redundant row {r} reduces to nonzero data)"
            )
    return [solved[pivots[k]].copy() for k in range(_prefix_of(pivots))]
