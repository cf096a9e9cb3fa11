"""Downlink NOMA rates and the offload/local delay and energy models."""

import numpy as np

from noma_vr_offloader.core.errors import DomainError, UsageError
from noma_vr_offloader.env.models import EnvConfig


def channel_gain(fading: np.ndarray, distance: np.ndarray, path_loss_exponent: float) -> np.ndarray:
    """|h_{n,m}|^2 = g_{n,m} * l_n^-alpha for an (N, M) fading matrix."""
    return fading * np.power(distance, -path_loss_exponent)[:, None]


def channel_rates(
    gain: np.ndarray,
    assignment: np.ndarray,
    tx_power: np.ndarray,
    config: EnvConfig,
) -> np.ndarray:
    """Per-user downlink rate in bits/s; users rendering locally (assignment 0) get 0.

    Co-channel users are decoded by SIC in descending order of p*|h|^2 (ties: lower
    user id first). The user at sorted position k is interfered by the powers of every
    later-sorted user on its channel, seen through its own gain.
    """
    assignment = np.asarray(assignment, dtype=np.int64)
    n_users = gain.shape[0]
    if assignment.shape != (n_users,):
        raise DomainError(f"assignment has shape {assignment.shape}, expected ({n_users},)")
    if np.any(assignment < 0) or np.any(assignment > config.n_channels):
        raise DomainError(f"assignment {assignment.tolist()} outside 0..{config.n_channels}")

    noise = config.bandwidth_per_channel * config.noise_psd
    rates = np.zeros(n_users, dtype=np.float64)

    for channel in range(1, config.n_channels + 1):
        users = np.flatnonzero(assignment == channel)
        if users.size == 0:
            continue
        own_gain = gain[users, channel - 1]
        received = tx_power[users] * own_gain
        order = users[np.lexsort((users, -received))]

        ordered_gain = gain[order, channel - 1]
        ordered_power = tx_power[order]
        # sum of powers of the users decoded after position k
        later_power = np.concatenate((np.cumsum(ordered_power[::-1])[::-1][1:], [0.0]))
        sinr = ordered_power * ordered_gain / (later_power * ordered_gain + noise)
        rates[order] = config.bandwidth_per_channel * np.log2(1.0 + sinr)

    return rates


def offload_delay(frame_bits, cycles_per_bit, rate, config: EnvConfig):
    """Edge rendering time plus downlink transmission time."""
    rate = np.asarray(rate, dtype=np.float64)
    if np.any(rate <= 0):
        raise UsageError("offload delay needs a positive rate; route users without a channel to local compute")
    frame_bits = np.asarray(frame_bits, dtype=np.float64)
    return frame_bits * cycles_per_bit / config.vsp_cpu + frame_bits / rate


def local_delay(frame_bits, cycles_per_bit, user_cpu):
    return np.asarray(frame_bits, dtype=np.float64) * cycles_per_bit / user_cpu


def local_energy(frame_bits, cycles_per_bit, user_cpu, battery_weight, config: EnvConfig):
    """Battery-weighted device energy in joules, with eta * f^2 joules per cycle."""
    energy_per_cycle = config.energy_coeff * np.square(user_cpu)
    return battery_weight * np.asarray(frame_bits, dtype=np.float64) * cycles_per_bit * energy_per_cycle
