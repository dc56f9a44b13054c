"""Minimal weighted vertex cuts of AND/OR dependency graphs."""

import json

from . import _criticut
from ._criticut import Error, UnsatError, ValidationError

__all__ = ["Error", "UnsatError", "ValidationError", "analyze", "harden", "generate", "dimacs", "score"]


def _text(document):
    return document if isinstance(document, str) else json.dumps(document)


def analyze(document, target=None):
    """Optimal cut report for a graph document (dict or JSON text)."""
    return json.loads(_criticut.analyze(_text(document), target))


def harden(document, target=None, threshold=None, max_rounds=None):
    """Hardening trace: rounds of (cut, cost) with remediated nodes."""
    if threshold is not None:
        threshold = str(threshold)
    return json.loads(_criticut.harden(_text(document), target, threshold, max_rounds))


def generate(n, config="60,20,20", seed=1):
    """Seeded random graph document."""
    return json.loads(_criticut.generate(n, config, seed))


def dimacs(document):
    """DIMACS CNF of the attacker objective."""
    return _criticut.dimacs(_text(document))


def score(measures):
    """Score of a comma-separated measure set such as "C,F,AS"."""
    return _criticut.score(measures)
