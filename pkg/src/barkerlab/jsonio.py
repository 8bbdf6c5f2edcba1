"""Canonical JSON emission: sorted keys, fixed separators, 2-space indent.

Re-serializing a parsed document with the same helper is byte-identical,
which the CLI relies on for reproducible output.
"""

import json


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": "))
