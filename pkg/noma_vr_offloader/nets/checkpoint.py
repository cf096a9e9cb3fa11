"""Binary checkpoint files for policy and Q networks.

Layout (little-endian): the magic ``NVROCKPT``; uint32 ``version, kind, n_users,
n_channels, n_layers``; ``n_layers`` uint32 layer sizes; a uint64 scalar count; then
that many float64 values, layer by layer, weight matrix (row-major, fan_in x fan_out)
followed by its bias vector.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from noma_vr_offloader.core.errors import DomainError
from noma_vr_offloader.nets.dense import DenseNet

logger = logging.getLogger(__name__)

MAGIC = b"NVROCKPT"
FORMAT_VERSION = 1

KIND_POLICY = 0
KIND_Q_HEADS = 1


@dataclass
class Checkpoint:
    kind: int
    n_users: int
    n_channels: int
    net: DenseNet

    def require(self, n_users: int, n_channels: int, observation_size: int) -> None:
        expected = (n_users, n_channels, observation_size)
        found = (self.n_users, self.n_channels, self.net.input_size)
        if expected != found:
            raise DomainError(
                f"checkpoint dimensions (n_users, n_channels, observation_size) = {found}, "
                f"expected {expected}"
            )
        actions = (n_channels + 1) ** n_users
        outputs = actions if self.kind == KIND_POLICY else n_users * actions
        if self.net.output_size != outputs:
            raise DomainError(f"checkpoint output size {self.net.output_size}, expected {outputs}")


def save_checkpoint(path: Union[str, Path], checkpoint: Checkpoint) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    net = checkpoint.net
    header = np.array(
        [FORMAT_VERSION, checkpoint.kind, checkpoint.n_users, checkpoint.n_channels, len(net.layer_sizes)],
        dtype="<u4",
    )
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(header.tobytes())
        f.write(np.array(net.layer_sizes, dtype="<u4").tobytes())
        f.write(np.array([net.param_count], dtype="<u8").tobytes())
        f.write(net.flat_params().astype("<f8").tobytes())
    logger.info(f"Checkpoint written to {path} ({net.param_count} scalars)")


def load_checkpoint(path: Union[str, Path]) -> Checkpoint:
    raw = Path(path).read_bytes()
    if raw[: len(MAGIC)] != MAGIC:
        raise DomainError(f"{path} is not a checkpoint file")
    offset = len(MAGIC)
    version, kind, n_users, n_channels, n_layers = np.frombuffer(raw, dtype="<u4", count=5, offset=offset)
    if version != FORMAT_VERSION:
        raise DomainError(f"unsupported checkpoint version {version}")
    offset += 5 * 4
    layer_sizes = np.frombuffer(raw, dtype="<u4", count=int(n_layers), offset=offset).tolist()
    offset += int(n_layers) * 4
    (count,) = np.frombuffer(raw, dtype="<u8", count=1, offset=offset)
    offset += 8
    if len(raw) - offset != int(count) * 8:
        raise DomainError(f"{path} holds {(len(raw) - offset) // 8} scalars, header declares {count}")

    net = DenseNet(layer_sizes)
    if net.param_count != int(count):
        raise DomainError(f"layer sizes {layer_sizes} need {net.param_count} scalars, header declares {count}")
    net.set_flat_params(np.frombuffer(raw, dtype="<f8", count=int(count), offset=offset))
    return Checkpoint(kind=int(kind), n_users=int(n_users), n_channels=int(n_channels), net=net)
