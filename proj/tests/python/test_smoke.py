# Copyright 2026 The stagegen Authors
# SPDX-License-Identifier: Apache-2.0
import json
from pathlib import Path

import pytest

import stagegen

DATA = Path(__file__).resolve().parents[1] / "data"


def test_prng_matches_reference_file():
    want = (DATA / "splitmix64_kat.txt").read_text().split()[:5]
    assert stagegen.prng_words(0, 5) == want
    assert stagegen.prng_words(0, 5, prng="slow") == want


def test_registries():
    assert "bst_single_pass" in stagegen.workloads()
    assert "bst:insert_le:InsertValid" in stagegen.tasks()
    assert stagegen.strategies("stlc") == ["stlc_welltyped", "stlc_derived"]
    assert len(stagegen.treatments()) == 4


def test_backends_agree():
    for w in ("bool_list", "bst_single_pass", "stlc_welltyped"):
        assert stagegen.generate(w, 30, seed=3, count=5) == stagegen.generate(
            w, 30, seed=3, count=5, backend="staged"
        )
    assert stagegen.diff("bst_derived", sizes=[10], seeds=20) == []


def test_bool_list_shape():
    (lst,) = stagegen.generate("bool_list", 4)
    n = 0
    while lst[0] == 1:
        head, lst = lst[1]
        assert isinstance(head, bool)
        n += 1
    assert n == 4


def test_derive_from_json():
    schema = stagegen.builtin_schema("bst")
    assert json.loads(schema)["kind"] == "rec"
    assert stagegen.derive(schema, 8, count=3) == stagegen.derive(schema, 8, count=3, backend="staged")
    with pytest.raises(stagegen.SchemaError):
        stagegen.derive('{"kind": "recref"}', 3)


def test_ir_and_tasks():
    assert "sample(0, 100)" in stagegen.dump_ir("int_pair")
    out = stagegen.run_task("bst:insert_drop:InsertPost", "bst_insert", max_values=10000)
    assert out["found"] and out["values_tried"] >= 1
    with pytest.raises(KeyError):
        stagegen.run_task("bst:none:Nope", "bst_insert")


def test_aggregates():
    assert stagegen.geo_mean([1.0, 1.0]) == 1.0
    assert stagegen.rank_correlation([1, 2, 3], [2, 4, 8]) == pytest.approx(1.0)
