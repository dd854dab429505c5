"""Independent certificate verification.

Verifiers trust nothing but the certificate contents and the definitions:
every edge is re-derived from label-set intersection, traces are never
consulted, and each failed check names the offending block, class, pair or
vertex.  The all-pairs cross-edge check exploits that two blocks are joined
by an edge exactly when their covered-label sets meet, which allows one
bit-vector of block indices per label instead of a quadratic member scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .baranyai import AlmostRegularPartition
from .chromatic import ColoringCertificate, chi_of
from .core import MAX_LABELS, enumerate_family, intersects, kset_text, union_mask
from .minors import MinorCertificate


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary_lines(self) -> list[str]:
        return [
            f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in self.checks
        ]


def _structure_blocks(
    n: int, k: int, blocks: Sequence[Sequence[int]], unit: str
) -> CheckResult:
    if not (1 <= k <= n <= MAX_LABELS):
        return CheckResult("structure", False, f"invalid parameters (n, k) = ({n}, {k})")
    if not blocks:
        return CheckResult("structure", False, f"certificate has no {unit}s")
    universe = (1 << n) - 1
    for bi, block in enumerate(blocks):
        if not block:
            return CheckResult("structure", False, f"{unit} {bi} is empty")
        seen = set()
        for mi, mask in enumerate(block):
            if not isinstance(mask, int) or mask <= 0 or mask & ~universe:
                return CheckResult(
                    "structure", False, f"{unit} {bi} member {mi} has labels outside [1, {n}]"
                )
            if mask.bit_count() != k:
                return CheckResult(
                    "structure",
                    False,
                    f"{unit} {bi} member {mi} = {kset_text(mask)} is not a {k}-subset",
                )
            if mask in seen:
                return CheckResult(
                    "structure", False, f"{unit} {bi} repeats member {kset_text(mask)}"
                )
            seen.add(mask)
    return CheckResult("structure", True, f"{len(blocks)} well-formed {unit}s")


def _skipped(names: list[str], reason: str) -> list[CheckResult]:
    return [CheckResult(name, False, f"skipped: {reason}") for name in names]


def verify_minor(cert: MinorCertificate) -> VerificationReport:
    """Check disjointness, per-block connectivity, all-pairs cross edges and
    the claimed order."""
    blocks = cert.blocks
    structure = _structure_blocks(cert.n, cert.k, blocks, "block")
    if not structure.passed:
        return VerificationReport(
            (structure, *_skipped(["disjoint-blocks", "block-connectivity", "cross-edges", "order-claim"], "structural errors")),
        )
    checks = [structure]

    owner: dict[int, int] = {}
    dup_detail = None
    for bi, block in enumerate(blocks):
        for mask in block:
            if mask in owner and dup_detail is None:
                dup_detail = f"vertex {kset_text(mask)} appears in blocks {owner[mask]} and {bi}"
            owner.setdefault(mask, bi)
    checks.append(
        CheckResult("disjoint-blocks", dup_detail is None, dup_detail or "no vertex is shared")
    )

    conn_detail = None
    for bi, block in enumerate(blocks):
        if len(block) == 1:
            continue
        reached = {0}
        frontier = [0]
        while frontier:
            here = frontier.pop()
            for j in range(len(block)):
                if j not in reached and intersects(block[here], block[j]):
                    reached.add(j)
                    frontier.append(j)
        if len(reached) != len(block) and conn_detail is None:
            missing = next(j for j in range(len(block)) if j not in reached)
            conn_detail = (
                f"block {bi} is disconnected: member {kset_text(block[missing])} "
                f"is unreachable from {kset_text(block[0])}"
            )
    checks.append(
        CheckResult("block-connectivity", conn_detail is None, conn_detail or "every block induces a connected subgraph")
    )

    # Blocks are joined by an edge iff their covered-label sets intersect.
    t = len(blocks)
    per_label = [0] * (cert.n + 1)
    unions = []
    for bi, block in enumerate(blocks):
        u = union_mask(block)
        unions.append(u)
        bit = 1 << bi
        rest = u
        while rest:
            low = rest & -rest
            per_label[low.bit_length()] |= bit
            rest ^= low
    want = (1 << t) - 1
    cross_detail = None
    for bi in range(t):
        reach = 0
        rest = unions[bi]
        while rest:
            low = rest & -rest
            reach |= per_label[low.bit_length()]
            rest ^= low
        if reach != want:
            missing = (~reach & want)
            other = (missing & -missing).bit_length() - 1
            cross_detail = f"blocks {bi} and {other} are joined by no edge"
            break
    checks.append(
        CheckResult("cross-edges", cross_detail is None, cross_detail or "every pair of blocks is joined")
    )

    order_ok = len(blocks) == cert.claimed_order
    checks.append(
        CheckResult(
            "order-claim",
            order_ok,
            f"{len(blocks)} blocks"
            + ("" if order_ok else f", but certificate claims {cert.claimed_order}"),
        )
    )
    return VerificationReport(tuple(checks))


def verify_coloring(cert: ColoringCertificate) -> VerificationReport:
    """Check that the classes partition all k-subsets, are independent sets,
    and number exactly chi(n, k)."""
    classes = cert.classes
    structure = _structure_blocks(cert.n, cert.k, classes, "class")
    if not structure.passed:
        return VerificationReport(
            (structure, *_skipped(["partition", "independent-classes", "class-count"], "structural errors")),
        )
    checks = [structure]

    members = sorted(m for cls in classes for m in cls)
    expected = enumerate_family(1, cert.n, cert.k)
    part_detail = None
    if len(members) != len(expected):
        part_detail = f"{len(members)} members, expected {len(expected)}"
    else:
        for got, want in zip(members, expected):
            if got != want:
                which = "duplicated" if got in set(expected) else "foreign"
                part_detail = f"family mismatch near {kset_text(got)} ({which} member)"
                break
    if part_detail is None:
        extras = set(members) - set(expected)
        if extras:  # pragma: no cover - caught above
            part_detail = f"foreign member {kset_text(min(extras))}"
    checks.append(
        CheckResult("partition", part_detail is None, part_detail or "classes partition the full family")
    )

    indep_detail = None
    for ci, cls in enumerate(classes):
        size_sum = sum(m.bit_count() for m in cls)
        if union_mask(cls).bit_count() != size_sum:
            for a in range(len(cls)):
                for b in range(a + 1, len(cls)):
                    if intersects(cls[a], cls[b]):
                        indep_detail = (
                            f"class {ci} contains intersecting members "
                            f"{kset_text(cls[a])} and {kset_text(cls[b])}"
                        )
                        break
                if indep_detail:
                    break
        if indep_detail:
            break
    checks.append(
        CheckResult("independent-classes", indep_detail is None, indep_detail or "all classes are pairwise disjoint families")
    )

    want = chi_of(cert.n, cert.k)
    count_ok = len(classes) == want
    checks.append(
        CheckResult(
            "class-count",
            count_ok,
            f"{len(classes)} classes" + ("" if count_ok else f", expected chi = {want}"),
        )
    )
    return VerificationReport(tuple(checks))


def verify_partition(part: AlmostRegularPartition) -> VerificationReport:
    """Check prescribed sizes, disjoint union over the ground family, and
    per-class degree spread <= 1."""
    plan = part.plan
    lo, hi = plan.ground
    classes = part.classes

    structure = _structure_blocks(hi, plan.k, classes, "class")
    if structure.passed:
        for ci, cls in enumerate(classes):
            low_bits = (1 << (lo - 1)) - 1
            bad = next((m for m in cls if m & low_bits), None)
            if bad is not None:
                structure = CheckResult(
                    "structure", False, f"class {ci} member {kset_text(bad)} leaves the ground [{lo}, {hi}]"
                )
                break
    if not structure.passed:
        return VerificationReport(
            (structure, *_skipped(["sizes", "disjoint-union", "degree-spread"], "structural errors")),
        )
    checks = [structure]

    sizes_ok = tuple(len(c) for c in classes) == plan.sizes
    checks.append(
        CheckResult(
            "sizes",
            sizes_ok,
            "class sizes match the plan" if sizes_ok else f"class sizes {tuple(len(c) for c in classes)} != plan {plan.sizes}",
        )
    )

    members = sorted(m for cls in classes for m in cls)
    expected = enumerate_family(lo, hi, plan.k)
    union_detail = None
    if members != expected:
        dup = next((m for i, m in enumerate(members[1:], 1) if members[i - 1] == m), None)
        if dup is not None:
            union_detail = f"member {kset_text(dup)} appears twice"
        else:
            missing = sorted(set(expected) - set(members))
            union_detail = (
                f"member {kset_text(missing[0])} is missing"
                if missing
                else "classes do not cover the ground family"
            )
    checks.append(
        CheckResult("disjoint-union", union_detail is None, union_detail or "classes partition the ground family")
    )

    spread_detail = None
    for ci, cls in enumerate(classes):
        degrees = dict.fromkeys(range(lo, hi + 1), 0)
        for mask in cls:
            rest = mask
            while rest:
                low = rest & -rest
                degrees[low.bit_length()] += 1
                rest ^= low
        hi_deg = max(degrees.values())
        lo_deg = min(degrees.values())
        if hi_deg - lo_deg > 1:
            hot = next(x for x, d in degrees.items() if d == hi_deg)
            cold = next(x for x, d in degrees.items() if d == lo_deg)
            spread_detail = (
                f"class {ci} has degree spread {hi_deg - lo_deg}: "
                f"label {hot} has degree {hi_deg}, label {cold} has degree {lo_deg}"
            )
            break
    checks.append(
        CheckResult("degree-spread", spread_detail is None, spread_detail or "every class has degree spread <= 1")
    )
    return VerificationReport(tuple(checks))
