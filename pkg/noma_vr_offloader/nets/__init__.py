"""Numerical core: dense nets, categorical policies, Adam and checkpoints."""

from .adam import AdamState, adam_update, clip_by_global_norm
from .checkpoint import KIND_POLICY, KIND_Q_HEADS, Checkpoint, load_checkpoint, save_checkpoint
from .dense import DenseNet, ForwardCache
from .distributions import CategoricalDist, entropy, log_softmax, sample_action
from .gradcheck import RELATIVE_ERROR_FLOOR, gradient_check, random_layer_sizes

__all__ = [
    "AdamState",
    "CategoricalDist",
    "Checkpoint",
    "DenseNet",
    "ForwardCache",
    "KIND_POLICY",
    "KIND_Q_HEADS",
    "RELATIVE_ERROR_FLOOR",
    "adam_update",
    "clip_by_global_norm",
    "entropy",
    "gradient_check",
    "load_checkpoint",
    "log_softmax",
    "random_layer_sizes",
    "sample_action",
    "save_checkpoint",
]
