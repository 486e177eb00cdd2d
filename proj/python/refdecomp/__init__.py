"""Decompose pairs of equivalent MiniJ methods into verified catalog rewrites."""

import json

from ._core import (
    Error,
    check_equivalent,
    list_rules,
    normalize,
    rewrites,
    sim,
    token_delta,
    tokens,
)
from ._core import decompose_json as _decompose_json

__all__ = [
    "Error",
    "check_equivalent",
    "decompose",
    "list_rules",
    "normalize",
    "rewrites",
    "sim",
    "token_delta",
    "tokens",
]


def decompose(left, right, *, tiers="all", beam=1, seed=0, verify=True,
              snapshots=False, pair_id=""):
    """Decompose the pair and return the report as a dict."""
    return json.loads(_decompose_json(left, right, tiers, beam, seed, verify,
                                      snapshots, pair_id))
