# Copyright 2026 The stagegen Authors
# SPDX-License-Identifier: Apache-2.0
"""Staged random generators with a closure-based baseline for comparison."""

from ._core import (
    CompileError,
    ContractError,
    GenerationError,
    SchemaError,
    builtin_schema,
    derive,
    diff,
    dump_ir,
    generate,
    geo_mean,
    prng_words,
    rank_correlation,
    run_task,
    strategies,
    tasks,
    treatments,
    workloads,
)

__all__ = [
    "CompileError",
    "ContractError",
    "GenerationError",
    "SchemaError",
    "builtin_schema",
    "derive",
    "diff",
    "dump_ir",
    "generate",
    "geo_mean",
    "prng_words",
    "rank_correlation",
    "run_task",
    "strategies",
    "tasks",
    "treatments",
    "workloads",
]
