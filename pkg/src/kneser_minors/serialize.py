"""Versioned JSON wire formats for certificates, partitions and reports.

All documents are pretty-printed UTF-8 with sorted keys, so identical
objects serialize to identical bytes.  k-subsets appear as strictly
increasing label arrays.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .baranyai import AlmostRegularPartition, PartitionPlan
from .chromatic import ColoringCertificate
from .core import kset_labels, kset_mask
from .errors import ParameterError
from .minors import CaseTag, MinorCertificate, TraceEntry
from .verify import VerificationReport

FORMAT_VERSION = 1


def dumps_canonical(document: dict[str, Any]) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _labels(mask: int) -> list[int]:
    return list(kset_labels(mask))


def _mask_from_labels(raw: Any, where: str) -> int:
    if not isinstance(raw, list) or not raw:
        raise ParameterError(f"{where}: expected a nonempty label array")
    if raw != sorted(raw):
        raise ParameterError(f"{where}: labels must be strictly increasing")
    try:
        return kset_mask(raw)
    except ParameterError as exc:
        raise ParameterError(f"{where}: {exc}") from exc


def _block_lists(blocks: Any, where: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(blocks, list):
        raise ParameterError(f"{where}: expected an array")
    out = []
    for bi, block in enumerate(blocks):
        if not isinstance(block, list) or not block:
            raise ParameterError(f"{where}[{bi}]: expected a nonempty array of label arrays")
        out.append(tuple(_mask_from_labels(member, f"{where}[{bi}][{mi}]") for mi, member in enumerate(block)))
    return tuple(out)


def _require(document: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(document, dict) or key not in document:
        raise ParameterError(f"{where}: missing field {key!r}")
    value = document[key]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise ParameterError(f"{where}: field {key!r} must be an integer")
    if kind is not int and not isinstance(value, kind):
        raise ParameterError(f"{where}: field {key!r} has the wrong type")
    return value


def _check_header(document: Any, kind: str) -> None:
    version = _require(document, "version", int, kind)
    if version != FORMAT_VERSION:
        raise ParameterError(f"{kind}: unsupported version {version}")
    if kind in ("minor", "coloring"):
        got = _require(document, "kind", str, kind)
        if got != kind:
            raise ParameterError(f"expected a {kind} certificate, found kind = {got!r}")


def minor_to_dict(cert: MinorCertificate) -> dict[str, Any]:
    return {
        "version": FORMAT_VERSION,
        "kind": "minor",
        "n": cert.n,
        "k": cert.k,
        "blocks": [[_labels(m) for m in block] for block in cert.blocks],
        "trace": [
            {
                "case": entry.case.value,
                "params": {
                    "n": entry.n,
                    "k": entry.k,
                    "block_size": entry.block_size,
                    "block_count": entry.block_count,
                },
            }
            for entry in cert.trace
        ],
        "claimed_order": cert.claimed_order,
    }


def minor_from_dict(document: Any) -> MinorCertificate:
    _check_header(document, "minor")
    n = _require(document, "n", int, "minor")
    k = _require(document, "k", int, "minor")
    blocks = _block_lists(_require(document, "blocks", list, "minor"), "blocks")
    claimed = _require(document, "claimed_order", int, "minor")
    raw_trace = _require(document, "trace", list, "minor")
    entries = []
    for ti, item in enumerate(raw_trace):
        case_name = _require(item, "case", str, f"trace[{ti}]")
        try:
            case = CaseTag(case_name)
        except ValueError as exc:
            raise ParameterError(f"trace[{ti}]: unknown case {case_name!r}") from exc
        params = _require(item, "params", dict, f"trace[{ti}]")
        size = params.get("block_size")
        if size is not None and (not isinstance(size, int) or isinstance(size, bool)):
            raise ParameterError(f"trace[{ti}]: block_size must be an integer or null")
        entries.append(
            TraceEntry(
                case=case,
                n=_require(params, "n", int, f"trace[{ti}].params"),
                k=_require(params, "k", int, f"trace[{ti}].params"),
                block_size=size,
                block_count=_require(params, "block_count", int, f"trace[{ti}].params"),
            )
        )
    return MinorCertificate(
        n=n, k=k, blocks=blocks, trace=tuple(entries), claimed_order=claimed
    )


def coloring_to_dict(cert: ColoringCertificate) -> dict[str, Any]:
    return {
        "version": FORMAT_VERSION,
        "kind": "coloring",
        "n": cert.n,
        "k": cert.k,
        "classes": [[_labels(m) for m in cls] for cls in cert.classes],
    }


def coloring_from_dict(document: Any) -> ColoringCertificate:
    _check_header(document, "coloring")
    return ColoringCertificate(
        n=_require(document, "n", int, "coloring"),
        k=_require(document, "k", int, "coloring"),
        classes=_block_lists(_require(document, "classes", list, "coloring"), "classes"),
    )


def partition_to_dict(part: AlmostRegularPartition) -> dict[str, Any]:
    return {
        "version": FORMAT_VERSION,
        "ground": list(part.plan.ground),
        "k": part.plan.k,
        "sizes": list(part.plan.sizes),
        "classes": [[_labels(m) for m in cls] for cls in part.classes],
    }


def partition_from_dict(document: Any) -> AlmostRegularPartition:
    _check_header(document, "partition")
    ground = _require(document, "ground", list, "partition")
    if len(ground) != 2 or not all(isinstance(x, int) for x in ground):
        raise ParameterError("partition: ground must be [lo, hi]")
    sizes = _require(document, "sizes", list, "partition")
    if not all(isinstance(a, int) and not isinstance(a, bool) for a in sizes):
        raise ParameterError("partition: sizes must be integers")
    plan = PartitionPlan(ground=(ground[0], ground[1]), k=_require(document, "k", int, "partition"), sizes=tuple(sizes))
    classes = _block_lists(_require(document, "classes", list, "partition"), "classes")
    return AlmostRegularPartition(plan=plan, classes=classes)


def report_to_dict(report: VerificationReport) -> dict[str, Any]:
    return {
        "pass": report.passed,
        "checks": [
            {"name": c.name, "pass": c.passed, "detail": c.detail} for c in report.checks
        ],
    }


def write_document(path: str | Path, document: dict[str, Any]) -> None:
    Path(path).write_text(dumps_canonical(document), encoding="utf-8")


def read_document(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read {path}: {exc}") from exc
