"""Flattening ranks of semi-diagonal tensors over finite fields.

Structured inputs (families, configurations, hypergraphs, set-pair systems)
use the same JSON documents as the command-line tool and may be passed as
dicts or JSON text. Structured results come back as dicts.
"""

import json

from . import _flatrank
from ._flatrank import (
    BadboxSamplingError,
    ConfigurationError,
    Field,
    FieldError,
    FormatError,
    HypergraphError,
    Rng,
    SearchError,
    SetFamilyError,
    Tensor,
    TensorError,
    axis_constant_construction,
    binary_field,
    cross_oddtown_bound,
    diagonal_tensor,
    parse_field,
    partition_construction,
    prime_field,
    rainbow_bound,
    random_semidiagonal,
)

__version__ = "0.1.0"


def _doc(value):
    return value if isinstance(value, str) else json.dumps(value)


def oddtown_tensor(family):
    return _flatrank.oddtown_tensor(_doc(family))


def is_cross_oddtown(family):
    return _flatrank.is_cross_oddtown(_doc(family))


def fw_tensor(family, config):
    return _flatrank.fw_tensor(_doc(family), _doc(config))


def is_config_satisfying(family, config, by_positions=False):
    return _flatrank.is_config_satisfying(_doc(family), _doc(config), by_positions)


def fw_size_bound(config, n):
    return _flatrank.fw_size_bound(_doc(config), n)


def sample_badbox_family(t, s, seed):
    return json.loads(_flatrank.sample_badbox_family(t, s, seed))


def rainbow_tensor(hypergraph):
    return _flatrank.rainbow_tensor(_doc(hypergraph))


def certify_no_rainbow_bound(hypergraph):
    return json.loads(_flatrank.certify_no_rainbow_bound(_doc(hypergraph)))


def bollobas_verify(system):
    return json.loads(_flatrank.bollobas_verify(_doc(system)))


def exhaustive_min_mfrank(a, d):
    return json.loads(_flatrank.exhaustive_min_mfrank(a, d))


def random_semidiagonal_sweep(a, d, field, samples, seed):
    return json.loads(_flatrank.random_semidiagonal_sweep(a, d, field, samples, seed))


def random_cross_oddtown_search(n, d, budget, seed):
    return json.loads(_flatrank.random_cross_oddtown_search(n, d, budget, seed))
