"""NOMA VR offloader - multi-user VR rendering offload over NOMA channels with RL allocation."""

__version__ = "0.3.0"

__all__ = ["__version__"]
