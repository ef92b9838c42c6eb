# Copyright 2026 The stpa-rec Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Space-time process algebra workbench (Python bindings)."""

from ._stpa import (  # noqa: F401
    BudgetExceeded,
    Error,
    InvalidArgument,
    NotRepresentable,
    ParseError,
    Term,
    apply_axiom,
    axiom_soundness,
    axioms,
    bisim,
    cli,
    hnf,
    idle,
    linearize,
    meadow_selftest,
    normalize,
    par_check,
    par_cycle_condition,
    par_term,
    parse,
    shnf,
    step,
)

__version__ = "0.1.0"
