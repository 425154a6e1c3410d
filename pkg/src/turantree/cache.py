"""Append-only JSON-lines cache of exponent profiles.

Records are keyed and stored in the canonical labelling of (H, T), so any
isomorphic relabelling of the inputs shares an entry; witnesses are
translated back into the caller's labelling on return.  Every record is
re-verified before being trusted; corrupt or failing lines are skipped and
superseded by appending.  Writes take an advisory exclusive lock so
concurrent readers always see a consistent prefix.
"""

from __future__ import annotations

import datetime as _dt
import json
import os
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .blowup import ExponentProfile, exponent_r, verify_profile
from .embeddings import contains_copy
from .errors import InternalConsistencyError
from .graphs import Graph, canonical_form, parse_graph

DEFAULT_STORE = "turan_cache.jsonl"
ENV_STORE = "TURAN_CACHE"


@dataclass(frozen=True)
class CacheRecord:
    key: tuple                 # (canonical_form(H), canonical_form(T))
    profile: ExponentProfile   # in the canonical labelling of H
    tool_version: str
    timestamp: str


def default_store_path() -> Path:
    return Path(os.environ.get(ENV_STORE, DEFAULT_STORE))


def _profile_to_json(profile: ExponentProfile) -> dict:
    out = {"status": profile.status, "t_used": profile.t_used}
    if profile.status == "Finite":
        out["r"] = profile.r
        out["witness_U"] = list(profile.witness_U)
    return out


def _profile_from_json(data: dict) -> ExponentProfile:
    status = data["status"]
    if status == "Zero":
        return ExponentProfile(status="Zero", t_used=int(data["t_used"]))
    return ExponentProfile(status="Finite", t_used=int(data["t_used"]),
                           r=int(data["r"]),
                           witness_U=tuple(int(v) for v in data["witness_U"]))


def _scan(store: Path, key: tuple) -> Optional[dict]:
    if not store.exists():
        return None
    hit = None
    try:
        lines = store.read_text().splitlines()
    except OSError as exc:
        warnings.warn(f"cache store unreadable: {exc}")
        return None
    for line in lines:
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
            if tuple(rec["key"]) == key:
                hit = rec
        except (ValueError, KeyError, TypeError):
            continue
    return hit


def _translate(profile: ExponentProfile, rep: Graph, target: Graph) -> ExponentProfile:
    """Carry a canonically-labelled witness over to the caller's labelling."""
    if profile.status == "Zero" or not profile.witness_U:
        return ExponentProfile(status=profile.status, t_used=profile.t_used,
                               r=profile.r,
                               witness_U=None if profile.witness_U is None else ())
    iso = contains_copy(target, rep)
    if iso is None:
        raise InternalConsistencyError("canonical representative lost isomorphism")
    return ExponentProfile(status="Finite", t_used=profile.t_used, r=profile.r,
                           witness_U=tuple(sorted(iso.map[u] for u in profile.witness_U)))


def cache_lookup_or_compute(H: Graph, T: Graph,
                            store_path: Union[str, Path, None] = None) -> ExponentProfile:
    """Cached exponent profile, recomputing and appending when needed.

    The returned witness is valid for the given labelling but, on a hit, may
    differ from exponent_r's own tie-break choice; it always verifies.
    """
    from . import __version__

    store = Path(store_path) if store_path is not None else default_store_path()
    key = (canonical_form(H), canonical_form(T))
    rep_H, rep_T = parse_graph(key[0]), parse_graph(key[1])
    rec = _scan(store, key)
    if rec is not None:
        try:
            profile = _profile_from_json(rec["profile"])
        except (ValueError, KeyError, TypeError):
            profile = None
        if profile is not None and verify_profile(rep_H, rep_T, profile):
            return _translate(profile, rep_H, H)
    profile = exponent_r(rep_H, rep_T)
    record = {"key": list(key), "profile": _profile_to_json(profile),
              "tool_version": __version__,
              "timestamp": _dt.datetime.now(_dt.timezone.utc)
              .isoformat(timespec="seconds")}
    line = json.dumps(record, sort_keys=True) + "\n"
    try:
        with open(store, "a") as fh:
            _lock(fh)
            fh.write(line)
            fh.flush()
    except OSError as exc:
        warnings.warn(f"cache store unwritable ({exc}); returning computed profile")
    return _translate(profile, rep_H, H)


def _lock(fh) -> None:
    try:
        import fcntl
        fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
    except (ImportError, OSError):
        pass
