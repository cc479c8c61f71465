#!/usr/bin/env python3
# evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
# Copyright 2026 The evulhunter Authors.
# SPDX-License-Identifier: Apache-2.0
"""Assemble every *.wat file under the given directories to a sibling *.wasm."""

import pathlib
import sys

import wasmtime


def main(argv: list[str]) -> int:
    if len(argv) < 2:
        print("usage: assemble_fixtures.py DIR [DIR...] [--stamp FILE]", file=sys.stderr)
        return 2
    args = argv[1:]
    stamp = None
    if "--stamp" in args:
        i = args.index("--stamp")
        stamp = pathlib.Path(args[i + 1])
        del args[i : i + 2]
    failures = 0
    count = 0
    for root in map(pathlib.Path, args):
        for wat in sorted(root.rglob("*.wat")):
            try:
                binary = wasmtime.wat2wasm(wat.read_text())
            except Exception as e:  # wasmtime raises its own error types
                print(f"{wat}: {e}", file=sys.stderr)
                failures += 1
                continue
            wat.with_suffix(".wasm").write_bytes(binary)
            count += 1
    print(f"assembled {count} modules, {failures} failures")
    if failures == 0 and stamp is not None:
        stamp.write_text(f"{count}\n")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
