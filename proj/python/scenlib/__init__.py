# Copyright 2026 The scenlib Authors
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

"""Python interface to the scenlib scenario-library toolkit."""

import json as _json

from ._core import (  # noqa: F401
    KdeModel,
    Library,
    ScenlibError,
    adjusted_rand_index,
    concretize,
    contains,
    dl_distance,
    dl_distance_str,
    kde_fit,
    ks_statistic,
    min_tests_is,
    min_tests_naive,
    simulate,
    thw,
    ttb,
    ttc,
    validate_scenario,
    z_from_confidence,
)
from . import _core


def kmeans(rows, k, seed=0):
    """K-means model as a dict (centroids, labels, objective trace)."""
    return _json.loads(_core.kmeans(rows, k, seed))


def gmm_fit(rows, k, seed=0):
    """Diagonal Gaussian mixture as a dict (means, variances, weights, labels)."""
    return _json.loads(_core.gmm_fit(rows, k, seed))


def run_pipeline(config, seed, out_dir):
    """Runs every pipeline stage and returns the stage summaries."""
    return _json.loads(_core.run_pipeline(str(config), seed, str(out_dir)))


__all__ = [name for name in dir() if not name.startswith("_")]
