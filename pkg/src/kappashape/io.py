"""File formats: landmark files (JSON), curve files (CSV), scene files, reports.

Every writer is deterministic (sorted keys, fixed number formatting, no
timestamps) and atomic: the text goes to a temporary file in the target
directory which is then renamed over the destination.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from ._validation import DomainError, check_points, check_positive
from .scene import Scene, SceneType
from .shape import LandmarkSet, Quality, SampledCurve, Topology

__all__ = [
    "FORMAT_VERSION",
    "atomic_write_text",
    "landmarks_to_json",
    "landmarks_from_json",
    "write_landmarks",
    "read_landmarks",
    "curve_to_csv",
    "curve_from_csv",
    "write_curve",
    "read_curve",
    "read_scene",
    "write_report",
]

FORMAT_VERSION = 1
LANDMARK_FORMAT = "kappashape-landmarks"


def atomic_write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


# landmark files ------------------------------------------------------------


def landmarks_to_json(landmarks: LandmarkSet, metadata: dict | None = None) -> str:
    # json writes floats with repr(), the shortest string that round-trips
    doc = {
        "format": LANDMARK_FORMAT,
        "version": FORMAT_VERSION,
        "dim": landmarks.dim,
        "topology": landmarks.topology.value,
        "points": [[float(v) for v in row] for row in landmarks.points],
        "metadata": metadata or {},
    }
    if landmarks.labels is not None:
        doc["labels"] = list(landmarks.labels)
    rows = ",\n    ".join(json.dumps(r) for r in doc.pop("points"))
    head = json.dumps(doc, sort_keys=True, indent=2)
    # keep one landmark per line for readable diffs
    return head[:-2] + f',\n  "points": [\n    {rows}\n  ]\n}}\n'


def landmarks_from_json(text: str) -> tuple[LandmarkSet, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"landmark file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DomainError("landmark file must hold a JSON object")
    for key in ("dim", "topology", "points"):
        if key not in doc:
            raise DomainError(f"landmark file is missing the {key!r} field")
    try:
        topology = Topology(doc["topology"])
    except ValueError:
        raise DomainError(f"topology must be 'open' or 'closed', got {doc['topology']!r}") from None
    pts = doc["points"]
    if not isinstance(pts, list) or not pts:
        raise DomainError("points must be a non-empty list")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise DomainError(f"dim must be a positive integer, got {dim!r}")
    for i, row in enumerate(pts):
        if not isinstance(row, list) or len(row) != dim:
            raise DomainError(f"points[{i}] must have length dim={dim}")
    points = check_points(np.array(pts, dtype=float).reshape(len(pts), dim))
    labels = doc.get("labels")
    return LandmarkSet(points, topology, tuple(labels) if labels else None), doc.get("metadata", {})


def write_landmarks(path, landmarks: LandmarkSet, metadata: dict | None = None) -> Path:
    return atomic_write_text(path, landmarks_to_json(landmarks, metadata))


def read_landmarks(path) -> tuple[LandmarkSet, dict]:
    return landmarks_from_json(Path(path).read_text(encoding="utf-8"))


# curve files ---------------------------------------------------------------


def _num(v: float) -> str:
    return format(float(v), ".17g")


def curve_to_csv(curve: SampledCurve) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t"] + [f"x{i}" for i in range(curve.dim)] + ["quality"])
    for t, p, q in zip(curve.t, curve.points, curve.quality):
        w.writerow([_num(t)] + [_num(v) for v in p] + [Quality(q).value])
    return buf.getvalue()


def curve_from_csv(text: str, kappa: float = float("nan")) -> SampledCurve:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise DomainError("curve file is empty")
    header = [h.strip() for h in rows[0]]
    dim = len(header) - 2
    if dim < 1 or header[0] != "t" or header[-1] != "quality" or header[1:-1] != [f"x{i}" for i in range(dim)]:
        raise DomainError("curve file header must be 't,x0,...,x{D-1},quality'")
    body = [r for r in rows[1:] if r]
    if not body:
        raise DomainError("curve file has no samples")
    try:
        data = np.array([[float(v) for v in r[:-1]] for r in body], dtype=float)
        quality = tuple(Quality(r[-1].strip()) for r in body)
    except (ValueError, IndexError) as exc:
        raise DomainError(f"malformed curve row: {exc}") from None
    if data.shape[1] != dim + 1:
        raise DomainError("curve rows do not match the header width")
    t = data[:, 0]
    if np.any(np.diff(t) <= 0):
        raise DomainError("curve times must be strictly increasing")
    closed = len(t) > 1 and np.allclose(data[0, 1:], data[-1, 1:], rtol=0, atol=1e-12)
    return SampledCurve(t, data[:, 1:], quality, kappa, Topology.CLOSED if closed else Topology.OPEN)


def write_curve(path, curve: SampledCurve) -> Path:
    return atomic_write_text(path, curve_to_csv(curve))


def read_curve(path) -> SampledCurve:
    return curve_from_csv(Path(path).read_text(encoding="utf-8"))


# scene files ---------------------------------------------------------------


def read_scene(path) -> Scene:
    """Scene file: ``{"type": "I"|"II", "members": [{"landmarks": ..., "kappa": k}]}``.

    ``landmarks`` is either a path (relative to the scene file) or an inline
    landmark object with ``dim``, ``topology`` and ``points``.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DomainError(f"scene file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("members"), list) or not doc["members"]:
        raise DomainError("scene file needs a non-empty 'members' list")
    members, kappas = [], []
    for i, m in enumerate(doc["members"]):
        if not isinstance(m, dict) or "landmarks" not in m or "kappa" not in m:
            raise DomainError(f"members[{i}] needs 'landmarks' and 'kappa'")
        src = m["landmarks"]
        if isinstance(src, str):
            lm, _ = read_landmarks(path.parent / src)
        else:
            lm, _ = landmarks_from_json(json.dumps(src))
        members.append(lm)
        kappas.append(check_positive(m["kappa"], f"members[{i}].kappa"))
    try:
        scene_type = SceneType(str(doc.get("type", "I")))
    except ValueError:
        raise DomainError(f"scene type must be 'I' or 'II', got {doc.get('type')!r}") from None
    return Scene(members, kappas, scene_type)


# reports -------------------------------------------------------------------


def write_report(path, text: str, data: dict) -> tuple[Path, Path]:
    """Write ``<stem>.txt`` and its machine-readable twin ``<stem>.json``."""
    path = Path(path)
    base = path.with_suffix("") if path.suffix in (".txt", ".json") else path
    txt = atomic_write_text(base.with_suffix(".txt"), text if text.endswith("\n") else text + "\n")
    js = atomic_write_text(base.with_suffix(".json"), json.dumps(data, sort_keys=True, indent=2) + "\n")
    return txt, js
