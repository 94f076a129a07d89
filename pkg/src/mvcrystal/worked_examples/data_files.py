"""Versioned JSON assets with a sha256 manifest."""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources

from ..errors import VerificationError

SUPPORTED_VERSION = 1


def _read_bytes(name: str) -> bytes:
    return resources.files(__package__).joinpath("data", name).read_bytes()


@lru_cache(maxsize=None)
def manifest() -> dict:
    return json.loads(_read_bytes("manifest.json"))


def checksum(name: str) -> str:
    return hashlib.sha256(_read_bytes(name)).hexdigest()


@lru_cache(maxsize=None)
def load_asset(name: str) -> dict:
    """Load a data file after checking its checksum and version against the manifest."""
    expected = manifest()["files"].get(name)
    if expected is None:
        raise VerificationError(f"asset {name!r} is not listed in the manifest")
    actual = checksum(name)
    if actual != expected:
        raise VerificationError(f"checksum mismatch for asset {name!r}", expected=expected, actual=actual)
    data = json.loads(_read_bytes(name))
    if data.get("version") != SUPPORTED_VERSION:
        raise VerificationError(f"asset {name!r} has unsupported version {data.get('version')!r}")
    return data
