# evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
# Copyright 2026 The evulhunter Authors.
# SPDX-License-Identifier: Apache-2.0

import importlib.util
import os
import sys
from pathlib import Path

# Under ctest the in-tree build is the module under test. Load it by path so an
# editable install's import hook cannot substitute another copy.
_package_dir = os.environ.get("EVULHUNTER_PACKAGE_DIR")
if _package_dir:
    _spec = importlib.util.spec_from_file_location(
        "evulhunter",
        Path(_package_dir) / "__init__.py",
        submodule_search_locations=[_package_dir],
    )
    _module = importlib.util.module_from_spec(_spec)
    sys.modules["evulhunter"] = _module
    _spec.loader.exec_module(_module)

import evulhunter  # noqa: E402


def pytest_report_header(config):
    return f"evulhunter {evulhunter.__version__} from {Path(evulhunter.__file__).parent}"
