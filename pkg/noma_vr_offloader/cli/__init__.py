"""CLI module for the NOMA VR offloading simulator."""

from .commands import build_parser, cmd_eval, cmd_gradcheck, cmd_oracle_check, cmd_train, main

__all__ = ["build_parser", "cmd_eval", "cmd_gradcheck", "cmd_oracle_check", "cmd_train", "main"]
