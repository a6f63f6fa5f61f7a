"""Tests for deuq.utils.utils.

Run just these tests using `pytest tests/test_utils/test_utils.py`
"""

import pytest

from deuq import DeuqLogger
from deuq.utils.utils import (
    DictionaryMergeError,
    derive_seed,
    dict_to_hexkey,
    merge_dicts,
    override_dict,
)


def test_merge_dicts(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    right = {"search": {"workers": 2}, "k": 3}
    merged = merge_dicts(right, {"search": {"epochs": 5}, "output_dir": "out"})
    assert merged == {"search": {"workers": 2, "epochs": 5}, "k": 3, "output_dir": "out"}
    assert merged is right
    with pytest.raises(DictionaryMergeError, match="search.workers"):
        merge_dicts(right, {"search": {"workers": 4}})
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_override_dict(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    base = {"k": 3, "output_dir": "out"}
    merged = override_dict(base, {"k": 5, "output_dir": None, "selection": "topk"})
    assert merged == {"k": 5, "output_dir": "out", "selection": "topk"}
    assert base == {"k": 3, "output_dir": "out"}
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_dict_to_hexkey(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    assert dict_to_hexkey({"a": 1, "b": [1, 2]}) == dict_to_hexkey({"b": [1, 2], "a": 1})
    assert dict_to_hexkey({"a": 1}) != dict_to_hexkey({"a": 2})
    assert len(dict_to_hexkey([])) == 40
    DeuqLogger.info(f"--Finished: {request.node.name}")


def test_derive_seed(request):
    DeuqLogger.info(f"--Starting: {request.node.name}")
    assert derive_seed(7, 3) == derive_seed(7, 3)
    seeds = {derive_seed(7, i) for i in range(50)}
    assert len(seeds) == 50
    assert derive_seed(7, 3) != derive_seed(8, 3)
    assert all(0 <= s < 2**63 for s in seeds)
    DeuqLogger.info(f"--Finished: {request.node.name}")
