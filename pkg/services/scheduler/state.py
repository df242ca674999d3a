"""MDP state: what every user has received so far in the current block."""

from typing import Optional

from models.scheduling import Action
from services.baselines.svc import useful_packets
from services.coding.packets import (
    CodedPacket,
    StatusMatrix,
    decodable_prefix,
    generic_prefix_counts,
)


class UserReception:
    """Reception record of one user.

    `counts[j]` tallies received G_j packets and `held` the uncoded alpha_j; the
    optional status matrix carries the actual coefficients for explicit decoding.
    """

    def __init__(self, layers: int, slots: int, explicit: bool = False):
        self.layers = layers
        self.counts = [0] * (layers + 1)
        self.held: set[int] = set()
        self.matrix: Optional[StatusMatrix] = StatusMatrix(layers, slots) if explicit else None

    def prefix(self) -> int:
        """Decodable prefix under the generic-rank model."""
        if self.held:
            return useful_packets(self.held)
        return generic_prefix_counts(self.counts)

    def prefix_with(self, action: Action) -> int:
        """Generic prefix after additionally receiving `action`'s packet."""
        if action.uncoded:
            if action.gen in self.held:
                return self.prefix()
            return useful_packets(self.held | {action.gen})
        self.counts[action.gen] += 1
        try:
            return generic_prefix_counts(self.counts)
        finally:
            self.counts[action.gen] -= 1

    def receive(self, action: Action, packet: Optional[CodedPacket] = None) -> None:
        if action.uncoded:
            self.held.add(action.gen)
        else:
            self.counts[action.gen] += 1
        if self.matrix is not None and packet is not None:
            self.matrix.record(packet)

    def explicit_prefix(self) -> int:
        if self.matrix is None:
            raise ValueError("No status matrix recorded for this user")
        return decodable_prefix(self.matrix)

    def signature(self) -> tuple:
        return (tuple(self.counts), tuple(sorted(self.held)))

    def copy(self) -> "UserReception":
        clone = UserReception.__new__(UserReception)
        clone.layers = self.layers
        clone.counts = list(self.counts)
        clone.held = set(self.held)
        clone.matrix = self.matrix.copy() if self.matrix is not None else None
        return clone


class NetworkState:
    """Union of all users' reception records at slot t."""

    def __init__(self, num_users: int, layers: int, slots: int, explicit: bool = False):
        self.layers = layers
        self.slots = slots
        self.t = 0
        self.per_user = [UserReception(layers, slots, explicit) for _ in range(num_users)]

    @property
    def num_users(self) -> int:
        return len(self.per_user)

    def prefixes(self) -> list[int]:
        return [u.prefix() for u in self.per_user]

    def held_by_all(self, index: int) -> bool:
        return all(index in u.held for u in self.per_user)

    def signature(self) -> tuple:
        return (self.t,) + tuple(u.signature() for u in self.per_user)

    def copy(self) -> "NetworkState":
        clone = NetworkState.__new__(NetworkState)
        clone.layers = self.layers
        clone.slots = self.slots
        clone.t = self.t
        clone.per_user = [u.copy() for u in self.per_user]
        return clone
