"""Case-routed construction of complete-minor certificates.

A certificate is a family of pairwise-disjoint blocks of k-subsets of [n]
such that every block induces a connected subgraph of the complement graph
and every pair of blocks is joined by an edge.  Construction is routed on
s = n // k:

* s = 2: singleton blocks for the family anchored at label 1, plus size-2
  blocks of the families anchored at 2..k; when t = k-1 the build recurses
  to n-1 and appends size-3 blocks of the label-n family.
* s = 3: the same shape with size-3 anchored blocks; for t = k-2 and
  t = k-1 the build recurses (once resp. twice) and appends size-4 blocks
  of the label-n family at each stage.
* s >= 4, k >= 4: size-l blocks of the families anchored at 1..n', where
  l is roughly half of (n-1)/(k-1) and n' = n - l(k-1); preflight
  inequalities guarantee each block covers more than n/2 labels.
* s >= 4, k = 3: the analogous split driven by n = 4s' + t'; for
  n in {18, 22, 26} the certificate is built inside [n-1], and n = 14 gets
  a dedicated two-part build (the n = 13 certificate plus 19 size-4 blocks
  of the label-14 family).

Every build is recorded as a trace of stages; replaying a trace re-executes
the stages and reproduces the certificate byte-for-byte.  Exact block counts
(never the floor-bound estimates) are used throughout, so the strongest
orders fall out automatically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

from .baranyai import DEFAULT_EDGE_CAP, CoveredPartition, partition_A, partition_C
from .core import Params, binomial, family_A
from .errors import ConstructionError, ParameterError, ResourceCapError
from .chromatic import chi_of

CoverageObserver = Callable[[CoveredPartition], None]


class CaseTag(str, Enum):
    S2_CASE1 = "S2_CASE1"
    S2_CASE2 = "S2_CASE2"
    S3_CASE1 = "S3_CASE1"
    S3_CASE2 = "S3_CASE2"
    S3_CASE3 = "S3_CASE3"
    S4_KGE4 = "S4_KGE4"
    S4_K3 = "S4_K3"
    S4_K3_SHIFT = "S4_K3_SHIFT"
    SPECIAL_14_3 = "SPECIAL_14_3"


_BASE_TAGS = frozenset(
    {CaseTag.S2_CASE1, CaseTag.S3_CASE1, CaseTag.S4_KGE4, CaseTag.S4_K3}
)
_EXTEND_TAGS = frozenset(
    {CaseTag.S2_CASE2, CaseTag.S3_CASE2, CaseTag.S3_CASE3, CaseTag.SPECIAL_14_3}
)

_SHIFTED_K3 = frozenset({18, 22, 26})

# Stages with a fixed partition block size; the s >= 4 stages derive theirs.
_FIXED_STAGE_SIZES = {
    CaseTag.S2_CASE1: 2,
    CaseTag.S3_CASE1: 3,
    CaseTag.S2_CASE2: 3,
    CaseTag.S3_CASE2: 4,
    CaseTag.S3_CASE3: 4,
    CaseTag.SPECIAL_14_3: 4,
}


@dataclass(frozen=True)
class TraceEntry:
    """One build stage: the case applied, its (n, k), the partition block
    size it used (None for the pure re-embedding stage) and how many blocks
    it contributed."""

    case: CaseTag
    n: int
    k: int
    block_size: int | None
    block_count: int


@dataclass(frozen=True)
class MinorCertificate:
    n: int
    k: int
    blocks: tuple[tuple[int, ...], ...]
    trace: tuple[TraceEntry, ...]
    claimed_order: int

    @property
    def order(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class S4Params:
    """Derived quantities for the s >= 4, k >= 4 regime, self-checked on build.

    l_prime = floor((n-1)/(k-1)); l is ceil((l'+1)/2), except floor at
    (n, k) = (19, 4) which keeps l <= s - 1 there; n_prime = n - l(k-1).
    """

    l_prime: int
    l: int
    n_prime: int

    @classmethod
    def from_params(cls, p: Params) -> "S4Params":
        n, k = p.n, p.k
        l_prime = (n - 1) // (k - 1)
        if (n, k) == (19, 4):
            l = (l_prime + 1) // 2
        else:
            l = (l_prime + 2) // 2
        n_prime = n - l * (k - 1)
        s = p.s
        # (a): l <= (l' + 2)/2 <= (s + 3 + (s-1)/(k-1)) / 2
        if not (2 * l <= l_prime + 2 and (l_prime + 2) * (k - 1) <= (s + 3) * (k - 1) + (s - 1)):
            raise ConstructionError(f"s>=4 parameter check (a) failed at (n, k) = ({n}, {k})")
        # (b): n/2 < l(k-1) + 1 <= (n-1)/2 + k
        cover = l * (k - 1) + 1
        if not (n < 2 * cover and 2 * cover <= n - 1 + 2 * k):
            raise ConstructionError(f"s>=4 parameter check (b) failed at (n, k) = ({n}, {k})")
        # (c): C(n - n', k-1) / l > n'
        if not binomial(n - n_prime, k - 1) > l * n_prime:
            raise ConstructionError(f"s>=4 parameter check (c) failed at (n, k) = ({n}, {k})")
        return cls(l_prime=l_prime, l=l, n_prime=n_prime)


@dataclass(frozen=True)
class K3Params:
    """Derived quantities for the s >= 4, k = 3 regime: n = 4s' + t',
    l = s' or s' + 1 by t', n' = n - 2l; (n-1)/2 <= 2l <= n/2 + 1 is asserted
    rather than trusted."""

    s_prime: int
    t_prime: int
    l: int
    n_prime: int

    @classmethod
    def from_n(cls, n: int) -> "K3Params":
        s_prime, t_prime = divmod(n, 4)
        l = s_prime if t_prime <= 1 else s_prime + 1
        if not (n - 1 <= 4 * l <= n + 2):
            raise ConstructionError(f"k=3 block-size check failed at n = {n}")
        return cls(s_prime=s_prime, t_prime=t_prime, l=l, n_prime=n - 2 * l)


def route_case(p: Params) -> CaseTag:
    """Total, unique routing of in-scope (n, k) to a construction regime."""
    s, t, k = p.s, p.t, p.k
    if s == 2:
        return CaseTag.S2_CASE2 if t == k - 1 else CaseTag.S2_CASE1
    if s == 3:
        if t <= k - 3:
            return CaseTag.S3_CASE1
        return CaseTag.S3_CASE2 if t == k - 2 else CaseTag.S3_CASE3
    if k >= 4:
        return CaseTag.S4_KGE4
    if p.n == 14:
        return CaseTag.SPECIAL_14_3
    if p.n in _SHIFTED_K3:
        return CaseTag.S4_K3_SHIFT
    return CaseTag.S4_K3


def _anchored_count(p: Params, first_i: int, last_i: int, l: int) -> int:
    return sum(binomial(p.n - i, p.k - 1) // l for i in range(first_i, last_i + 1))


def _stage_entries(p: Params) -> tuple[TraceEntry, ...]:
    """Trace of the build for p, block counts included (all closed-form)."""
    tag = route_case(p)
    n, k = p.n, p.k
    if tag is CaseTag.S2_CASE1:
        count = binomial(n - 1, k - 1) + _anchored_count(p, 2, k, 2)
        return (TraceEntry(tag, n, k, 2, count),)
    if tag is CaseTag.S2_CASE2:
        below = _stage_entries(Params(n - 1, k))
        return below + (TraceEntry(tag, n, k, 3, binomial(n - 1, k - 1) // 3),)
    if tag is CaseTag.S3_CASE1:
        count = binomial(n - 1, k - 1) + _anchored_count(p, 2, k, 3)
        return (TraceEntry(tag, n, k, 3, count),)
    if tag in (CaseTag.S3_CASE2, CaseTag.S3_CASE3):
        below = _stage_entries(Params(n - 1, k))
        return below + (TraceEntry(tag, n, k, 4, binomial(n - 1, k - 1) // 4),)
    if tag is CaseTag.S4_KGE4:
        q = S4Params.from_params(p)
        return (TraceEntry(tag, n, k, q.l, _anchored_count(p, 1, q.n_prime, q.l)),)
    if tag is CaseTag.S4_K3:
        q3 = K3Params.from_n(n)
        return (TraceEntry(tag, n, k, q3.l, _anchored_count(p, 1, q3.n_prime, q3.l)),)
    if tag is CaseTag.S4_K3_SHIFT:
        below = _stage_entries(Params(n - 1, 3))
        return below + (TraceEntry(tag, n, 3, None, 0),)
    # SPECIAL_14_3
    below = _stage_entries(Params(13, 3))
    return below + (TraceEntry(tag, 14, 3, 4, binomial(13, 2) // 4),)


def _assert_anchored(blocks: list[tuple[int, ...]]) -> None:
    # Builder-side guarantee, stronger than the verifier's connectivity check:
    # every non-singleton block's members share a label.
    for idx, block in enumerate(blocks):
        if len(block) > 1:
            common = block[0]
            for m in block[1:]:
                common &= m
            if not common:
                raise ConstructionError(f"block {idx} has no common label")


def _execute(
    entries: tuple[TraceEntry, ...],
    cap: int | None,
    observer: CoverageObserver | None,
) -> MinorCertificate:
    if not entries:
        raise ParameterError("empty trace")
    limit = DEFAULT_EDGE_CAP if cap is None else cap
    final = entries[-1]
    if binomial(final.n, final.k) > limit:
        raise ResourceCapError(
            f"C({final.n}, {final.k}) = {binomial(final.n, final.k)} exceeds the cap of {limit}"
        )
    blocks: list[tuple[int, ...]] = []
    cur_n = cur_k = None
    for entry in entries:
        fixed = _FIXED_STAGE_SIZES.get(entry.case)
        if fixed is not None and entry.block_size != fixed:
            raise ParameterError(
                f"stage {entry.case.value} requires block size {fixed}, trace has {entry.block_size}"
            )
        added = 0
        if entry.case in _BASE_TAGS:
            if blocks:
                raise ConstructionError("base stage encountered after blocks were built")
            p = Params(entry.n, entry.k)
            if entry.case in (CaseTag.S2_CASE1, CaseTag.S3_CASE1):
                singles = family_A(1, p)
                blocks.extend((m,) for m in singles)
                added += len(singles)
                first_i, last_i = 2, p.k
            elif entry.case is CaseTag.S4_KGE4:
                q = S4Params.from_params(p)
                if entry.block_size != q.l:
                    raise ConstructionError("trace block size disagrees with derived l")
                first_i, last_i = 1, q.n_prime
            else:
                q3 = K3Params.from_n(p.n)
                if entry.block_size != q3.l:
                    raise ConstructionError("trace block size disagrees with derived l")
                first_i, last_i = 1, q3.n_prime
            assert entry.block_size is not None
            for i in range(first_i, last_i + 1):
                cov = partition_A(i, p, entry.block_size, cap=cap)
                if observer is not None:
                    observer(cov)
                blocks.extend(cov.blocks[: cov.guaranteed_blocks])
                added += cov.guaranteed_blocks
        elif entry.case in _EXTEND_TAGS:
            if cur_n is None or entry.n != cur_n + 1 or entry.k != cur_k:
                raise ConstructionError("extension stage does not follow its base")
            assert entry.block_size is not None
            cov = partition_C(Params(entry.n, entry.k), entry.block_size, cap=cap)
            if observer is not None:
                observer(cov)
            blocks.extend(cov.blocks[: cov.guaranteed_blocks])
            added += cov.guaranteed_blocks
        elif entry.case is CaseTag.S4_K3_SHIFT:
            if cur_n is None or entry.n != cur_n + 1 or entry.k != cur_k:
                raise ConstructionError("shift stage does not follow its base")
        else:  # pragma: no cover - exhaustive over CaseTag
            raise ConstructionError(f"unknown stage {entry.case}")
        if added != entry.block_count:
            raise ConstructionError(
                f"stage {entry.case.value} produced {added} blocks, trace says {entry.block_count}"
            )
        cur_n, cur_k = entry.n, entry.k
    _assert_anchored(blocks)
    return MinorCertificate(
        n=final.n, k=final.k, blocks=tuple(blocks), trace=entries, claimed_order=len(blocks)
    )


def replay_trace(
    entries: tuple[TraceEntry, ...] | list[TraceEntry], cap: int | None = None
) -> MinorCertificate:
    """Re-execute a recorded trace; reproduces the original certificate exactly."""
    return _execute(tuple(entries), cap, None)


def build_minor(
    p: Params, cap: int | None = None, observer: CoverageObserver | None = None
) -> MinorCertificate:
    """Build a complete-minor certificate for (n, k) via the routed regime."""
    return _execute(_stage_entries(p), cap, observer)


def _build_for_tag(
    p: Params, expected: CaseTag, cap: int | None, observer: CoverageObserver | None
) -> MinorCertificate:
    tag = route_case(p)
    if tag is not expected:
        raise ParameterError(f"(n, k) = ({p.n}, {p.k}) routes to {tag.value}, not {expected.value}")
    return _execute(_stage_entries(p), cap, observer)


def build_s2_case1(
    p: Params, cap: int | None = None, observer: CoverageObserver | None = None
) -> MinorCertificate:
    return _build_for_tag(p, CaseTag.S2_CASE1, cap, observer)


def build_s2_case2(
    p: Params, cap: int | None = None, observer: CoverageObserver | None = None
) -> MinorCertificate:
    return _build_for_tag(p, CaseTag.S2_CASE2, cap, observer)


def build_s3(
    p: Params, cap: int | None = None, observer: CoverageObserver | None = None
) -> MinorCertificate:
    if p.s != 3:
        raise ParameterError(f"(n, k) = ({p.n}, {p.k}) has s = {p.s}, not 3")
    return _execute(_stage_entries(p), cap, observer)


def build_s4_kge4(
    p: Params, cap: int | None = None, observer: CoverageObserver | None = None
) -> MinorCertificate:
    return _build_for_tag(p, CaseTag.S4_KGE4, cap, observer)


def build_s4_k3(
    p: Params, cap: int | None = None, observer: CoverageObserver | None = None
) -> MinorCertificate:
    if not (p.k == 3 and p.s >= 4 and p.n != 14):
        raise ParameterError(f"(n, k) = ({p.n}, {p.k}) is not an s>=4, k=3, n!=14 instance")
    return _execute(_stage_entries(p), cap, observer)


def build_14_3(
    cap: int | None = None, observer: CoverageObserver | None = None
) -> MinorCertificate:
    return _execute(_stage_entries(Params(14, 3)), cap, observer)


def closed_form_lower_bound(p: Params) -> Fraction:
    """Exact rational lower bound on the constructed order for s in {2, 3}.

    Evaluates the closed forms behind the two- and three-stage builds; the
    constructed order always satisfies order >= ceil(bound).
    """
    n, k, s, t = p.n, p.k, p.s, p.t

    def c(a: int, b: int) -> Fraction:
        return Fraction(binomial(a, b))

    if s == 2:
        if t <= k - 2:
            return (
                Fraction(1, 2) * c(n, k)
                + Fraction(1, 2) * c(n - 1, k - 1)
                - Fraction(1, 2) * c(n - k, k)
                - Fraction(k - 1, 2)
            )
        return (
            Fraction(1, 2) * c(n, k)
            + Fraction(1, 6) * c(n - 1, k - 1)
            - Fraction(1, 2) * c(n - 1 - k, k)
            - Fraction(k - 1, 2)
            - Fraction(2, 3)
        )
    if s == 3:
        if t <= k - 3:
            return (
                Fraction(1, 3) * c(n, k)
                + Fraction(2, 3) * c(n - 1, k - 1)
                - Fraction(1, 3) * c(n - k, k)
                - Fraction(2 * (k - 2), 3)
            )
        if t == k - 2:
            return (
                Fraction(1, 3) * c(n, k)
                + Fraction(1, 3) * c(n - 1, k - 1)
                - Fraction(1, 3) * c(n - k - 1, k)
                - Fraction(2 * (k - 2), 3)
                - Fraction(3, 4)
            )
        if k == 3:
            return Fraction(60)
        if k == 4:
            return Fraction(505)
        return (
            Fraction(1, 3) * c(n, k)
            + Fraction(1, 6) * c(n - 1, k - 1)
            + Fraction(1, 6 * (n - 1)) * c(n - 1, k - 1)
            - Fraction(1, 3) * c(n - k - 2, k)
            - Fraction(2 * (k - 2), 3)
            - Fraction(3, 2)
        )
    raise ParameterError(f"no closed-form bound for s = {s}")


# Valid upper bounds on the exact product bound g(n, k), keyed by s.
_G_CUTOFF_K4 = {4: Fraction(224, 1000), 5: Fraction(176, 1000), 6: Fraction(149, 1000)}
_G_CUTOFF_K4_TAIL = Fraction(133, 1000)  # s >= 7
_G_CUTOFF_K5P = {4: Fraction(211, 1000), 5: Fraction(151, 1000)}
_G_CUTOFF_K5P_TAIL = Fraction(119, 1000)  # s >= 6


@dataclass(frozen=True)
class S4BoundReport:
    """Exact-rational preflight for the s >= 4, k >= 4 regime.

    cut_fraction is the share of k-subsets confined to the top
    l(k-1)+1 labels; cut_bound is its closed-form product upper bound, and
    threshold the fixed decimal cutoff for this (s, k).  All three flags
    must hold; a False would contradict the construction's guarantee.
    """

    n: int
    k: int
    s: int
    l: int
    cut_fraction: Fraction
    cut_bound: Fraction
    threshold: Fraction
    fraction_le_bound: bool
    bound_le_threshold: bool
    slack_ok: bool

    @property
    def ok(self) -> bool:
        return self.fraction_le_bound and self.bound_le_threshold and self.slack_ok


def bound_check_s4(p: Params) -> S4BoundReport:
    """Evaluate the s >= 4, k >= 4 order analytics exactly and flag violations."""
    n, k, s = p.n, p.k, p.s
    if not (s >= 4 and k >= 4):
        raise ParameterError(f"bound check applies to s >= 4 and k >= 4, got ({n}, {k})")
    q = S4Params.from_params(p)
    cut = Fraction(binomial(q.l * (k - 1) + 1, k), binomial(n, k))
    bound = Fraction(1)
    for j in range(k):
        bound *= Fraction(1, 2) + Fraction(2 * k - j - 1, 2 * (n - j))
    if k == 4:
        threshold = _G_CUTOFF_K4.get(s, _G_CUTOFF_K4_TAIL)
    else:
        threshold = _G_CUTOFF_K5P.get(s, _G_CUTOFF_K5P_TAIL)
    return S4BoundReport(
        n=n,
        k=k,
        s=s,
        l=q.l,
        cut_fraction=cut,
        cut_bound=bound,
        threshold=threshold,
        fraction_le_bound=cut <= bound,
        bound_le_threshold=bound <= threshold,
        slack_ok=(1 - bound) * s >= q.l,
    )


@dataclass(frozen=True)
class K3TableRow:
    """One row of the k = 3 summary table: block size l, exact constructed
    order, the closed-form order bound as an exact rational, and chi."""

    n: int
    l: int
    order_exact: int
    order_bound: Fraction
    chi: int

    @property
    def order_bound_floor(self) -> int:
        return self.order_bound.numerator // self.order_bound.denominator


def k3_table_rows(n_min: int = 12, n_max: int = 35) -> list[K3TableRow]:
    """Compute the k = 3 table for n_min <= n <= n_max (within [12, 35])."""
    if not 12 <= n_min <= n_max <= 35:
        raise ParameterError(f"table range [{n_min}, {n_max}] outside [12, 35]")
    rows = []
    for n in range(n_min, n_max + 1):
        q3 = K3Params.from_n(n)
        order = sum(binomial(n - i, 2) // q3.l for i in range(1, q3.n_prime + 1))
        bound = Fraction(binomial(n, 3) - binomial(2 * q3.l, 3), q3.l) - (n - 2 * q3.l)
        rows.append(
            K3TableRow(n=n, l=q3.l, order_exact=order, order_bound=bound, chi=chi_of(n, 3))
        )
    return rows


# Reference values for the k = 3 table, 12 <= n <= 35: block size l and chi
# for every n; the exact order where recorded (n = 19, 23) and the floored
# order bound where recorded.  Entries are (l, order, bound_floor, chi); the
# n in {14, 18, 22, 26} rows have neither order nor bound recorded because
# those instances are served by a shifted or dedicated build.
K3_TABLE_REFERENCE: dict[int, tuple[int, int | None, int | None, int]] = {
    12: (3, None, 60, 55),
    13: (3, None, 81, 72),
    14: (4, None, None, 91),
    15: (4, None, 92, 91),
    16: (4, None, 118, 112),
    17: (4, None, 147, 136),
    18: (5, None, None, 136),
    19: (5, 168, None, 162),
    20: (5, None, 194, 190),
    21: (5, None, 231, 190),
    22: (6, None, None, 220),
    23: (6, 255, None, 253),
    24: (6, None, 288, 253),
    25: (6, None, 333, 288),
    26: (7, None, None, 325),
    27: (7, None, 352, 325),
    28: (7, None, 402, 364),
    29: (7, None, 455, 406),
    30: (8, None, 423, 406),
    31: (8, None, 476, 450),
    32: (8, None, 534, 496),
    33: (8, None, 595, 496),
    34: (9, None, 558, 544),
    35: (9, None, 619, 595),
}
