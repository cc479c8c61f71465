# evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
# Copyright 2026 The evulhunter Authors.
# SPDX-License-Identifier: Apache-2.0
"""Python bindings for the evulhunter analyzer."""

from pathlib import Path

from ._core import (
    ParseError,
    __version__,
    analyze,
    decode_name,
    dump_cfg,
    encode_name,
    is_valid_name,
    metrics,
)


def analyze_file(path, **kwargs):
    """Reads a .wasm file and analyzes it; keyword arguments go to `analyze`."""
    path = Path(path)
    return analyze(path.read_bytes(), input=str(path), **kwargs)


__all__ = [
    "ParseError",
    "__version__",
    "analyze",
    "analyze_file",
    "decode_name",
    "dump_cfg",
    "encode_name",
    "is_valid_name",
    "metrics",
]
