# Copyright 2026 The bcdist Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Bilocal Clifford entanglement distillation: exact protocol enumeration,
statistics and circuit synthesis."""

from ._bcdist import (
    DEFAULT_TARGET_FIDELITY,
    Circuit,
    ContractViolation,
    DimensionError,
    InputError,
    MissingCache,
    Polynomial,
    PolyStats,
    Protocol,
    Transversal,
    WernerEnumeration,
    best_concatenated,
    binary_entropy,
    build_transversal,
    case_count,
    concatenated_stats,
    dejmps_step,
    dn_index,
    dn_order,
    enumerate_werner,
    hashing_yield,
    numeric_stats,
    published_circuit,
    ree_bell_diagonal,
    ree_product,
    rotation_labels,
    shannon_entropy,
    sp_order,
    synthesize,
    tree_shape_count,
    werner_stats,
)

__all__ = [name for name in dir() if not name.startswith("_")]
