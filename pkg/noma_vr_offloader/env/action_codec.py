"""Joint channel assignments <-> integer action indices.

An assignment gives every user a value in {0..M}: 0 means local rendering, m >= 1
means downlink channel m. The index is the big-endian base-(M+1) number formed by
the assignment, user 0 being the most significant digit.
"""

from typing import Sequence, Tuple

from noma_vr_offloader.core.errors import DomainError


def action_space_size(n_users: int, n_channels: int) -> int:
    return (n_channels + 1) ** n_users


def encode_action(assignment: Sequence[int], n_channels: int) -> int:
    base = n_channels + 1
    index = 0
    for user, value in enumerate(assignment):
        value = int(value)
        if not 0 <= value <= n_channels:
            raise DomainError(f"assignment[{user}] = {value} outside 0..{n_channels}")
        index = index * base + value
    return index


def decode_action(index: int, n_users: int, n_channels: int) -> Tuple[int, ...]:
    index = int(index)
    size = action_space_size(n_users, n_channels)
    if not 0 <= index < size:
        raise DomainError(f"action index {index} outside [0, {size})")

    base = n_channels + 1
    digits = [0] * n_users
    for user in range(n_users - 1, -1, -1):
        index, digits[user] = divmod(index, base)
    return tuple(digits)
