"""Almost-regular partitions of complete k-uniform hypergraphs.

Given positive class sizes a_1..a_l summing to C(g, k), the engine splits
the k-subsets of a g-label ground interval into classes of exactly those
sizes so that within each class all ground-label degrees differ by at most
one.  Such a partition always exists; the engine realizes it constructively.

Algorithm: ground labels are introduced one at a time.  Before label v is
placed, every class holds a multiset of *partial* edges S (subsets of the
labels placed so far, |S| <= k), each standing for the C(g-v+1, k-|S|)
completions of S using unplaced labels.  Adding v means deciding, per class
and per partial type, how many copies absorb v.  The fractional answer
(count * free_slots / unplaced) satisfies all constraints, so the integral
rounding is found as a max flow in a three-layer network

    source -> class j -> partial type S -> sink,

where the class arc carries floor/ceil bounds of the class's fractional
load, the (j, S) arc is capped by the copy count, and the sink arc demands
exactly the number of completions through S that contain v.  Degrees of
already-placed labels are untouched by the step, so per-class degree spread
<= 1 holds at the end.  The flow is solved by a deterministic augmenting-path
(blocking-flow) routine with lowest-index tie-breaking; together with colex
ordering of types this makes the whole construction reproducible
byte-for-byte.

Two wrappers derive covered partitions of the standard anchored families:
``partition_A`` (smallest label i fixed) and ``partition_C`` (label n fixed),
each obtained by partitioning the (k-1)-subsets of the remaining interval
and re-attaching the anchor.  Every non-remainder block is checked against
its coverage floor on construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Params, binomial, enumerate_family, union_mask
from .errors import ConstructionError, ParameterError, ResourceCapError

DEFAULT_EDGE_CAP = 20000
ORACLE_EDGE_CAP = 30

_INF = 1 << 60


@dataclass(frozen=True)
class PartitionPlan:
    """Prescription for one partition: ground interval, uniformity k, class sizes."""

    ground: tuple[int, int]
    k: int
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        lo, hi = self.ground
        if not (1 <= lo <= hi <= 64):
            raise ParameterError(f"bad ground interval [{lo}, {hi}]")
        width = hi - lo + 1
        if not 1 <= self.k <= width:
            raise ParameterError(f"k = {self.k} invalid for ground of {width} labels")
        if not self.sizes or any(a < 1 for a in self.sizes):
            raise ParameterError("class sizes must be positive")
        total = binomial(width, self.k)
        if sum(self.sizes) != total:
            raise ParameterError(
                f"sizes sum to {sum(self.sizes)}, expected C({width}, {self.k}) = {total}"
            )

    @property
    def ground_size(self) -> int:
        return self.ground[1] - self.ground[0] + 1

    @property
    def edge_count(self) -> int:
        return binomial(self.ground_size, self.k)


@dataclass(frozen=True)
class AlmostRegularPartition:
    plan: PartitionPlan
    classes: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CoveredPartition:
    """Partition of an anchored family with a coverage floor on leading blocks.

    ``base`` is the anchor-free almost-regular partition on the reduced
    ground; ``blocks`` re-attach the anchor label to every member.  Only the
    first ``guaranteed_blocks`` blocks (all of the requested size) carry the
    floor; a trailing remainder block, when present, does not.
    """

    base: AlmostRegularPartition
    anchor: int
    blocks: tuple[tuple[int, ...], ...]
    guaranteed_blocks: int
    coverage_floor: int

    @property
    def remainder_block(self) -> tuple[int, ...] | None:
        if len(self.blocks) > self.guaranteed_blocks:
            return self.blocks[self.guaranteed_blocks]
        return None


def uniform_sizes(total: int, block_size: int) -> tuple[int, ...]:
    """Size vector [block_size, ..., block_size, remainder] summing to total."""
    if total < 1 or block_size < 1:
        raise ParameterError("total and block_size must be positive")
    full, rest = divmod(total, block_size)
    return tuple([block_size] * full + ([rest] if rest else []))


class _FlowNetwork:
    """Dinic max flow; arcs are scanned in insertion order, so it is deterministic."""

    __slots__ = ("adj", "to", "cap")

    def __init__(self, nodes: int) -> None:
        self.adj: list[list[int]] = [[] for _ in range(nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, capacity: int) -> int:
        eid = len(self.to)
        self.to.append(v)
        self.cap.append(capacity)
        self.adj[u].append(eid)
        self.to.append(u)
        self.cap.append(0)
        self.adj[v].append(eid + 1)
        return eid

    def raise_capacity(self, eid: int, extra: int) -> None:
        self.cap[eid] += extra

    def flow_on(self, eid: int) -> int:
        return self.cap[eid ^ 1]

    def max_flow(self, source: int, sink: int) -> int:
        total = 0
        n = len(self.adj)
        while True:
            level = [-1] * n
            level[source] = 0
            queue = [source]
            for u in queue:
                for eid in self.adj[u]:
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[sink] < 0:
                return total
            cursor = [0] * n
            while True:
                pushed = self._push(source, sink, _INF, level, cursor)
                if pushed == 0:
                    break
                total += pushed

    def _push(self, u: int, sink: int, limit: int, level: list[int], cursor: list[int]) -> int:
        if u == sink:
            return limit
        edges = self.adj[u]
        while cursor[u] < len(edges):
            eid = edges[cursor[u]]
            v = self.to[eid]
            if self.cap[eid] > 0 and level[v] == level[u] + 1:
                pushed = self._push(v, sink, min(limit, self.cap[eid]), level, cursor)
                if pushed:
                    self.cap[eid] -= pushed
                    self.cap[eid ^ 1] += pushed
                    return pushed
            cursor[u] += 1
        return 0


def _absorption_step(
    classes: list[dict[int, int]], slots: list[int], k: int, v: int, unplaced: int
) -> list[dict[int, int]]:
    """Decide which partial-edge copies absorb local label v; return new class state."""
    future = unplaced - 1
    demand_by_size = [
        binomial(future, k - size - 1) if size < k else 0 for size in range(k + 1)
    ]

    type_index: dict[int, int] = {}
    for cls in classes:
        for mask in cls:
            if mask.bit_count() < k:
                type_index.setdefault(mask, 0)
    types = sorted(type_index)
    for pos, mask in enumerate(types):
        type_index[mask] = pos

    n_classes = len(classes)
    source = 0
    first_class = 1
    first_type = 1 + n_classes
    sink = first_type + len(types)
    net = _FlowNetwork(sink + 1)

    lower: list[int] = []
    extra: list[int] = []
    class_arcs: list[int] = []
    for j in range(n_classes):
        base, rest = divmod(slots[j], unplaced)
        lower.append(base)
        extra.append(1 if rest else 0)
        class_arcs.append(net.add_edge(source, first_class + j, base))

    pair_arcs: list[dict[int, int]] = []
    for j, cls in enumerate(classes):
        arcs: dict[int, int] = {}
        for mask in sorted(cls):
            if mask.bit_count() < k:
                arcs[mask] = net.add_edge(first_class + j, first_type + type_index[mask], cls[mask])
        pair_arcs.append(arcs)

    total_demand = 0
    for mask in types:
        demand = demand_by_size[mask.bit_count()]
        total_demand += demand
        net.add_edge(first_type + type_index[mask], sink, demand)

    floor_total = sum(lower)
    if net.max_flow(source, sink) != floor_total:
        raise ConstructionError(f"label step {v}: could not meet per-class floor loads")
    for j in range(n_classes):
        if extra[j]:
            net.raise_capacity(class_arcs[j], 1)
    if floor_total + net.max_flow(source, sink) != total_demand:
        raise ConstructionError(f"label step {v}: could not meet absorption demands")

    bit = 1 << (v - 1)
    new_classes: list[dict[int, int]] = []
    for j, cls in enumerate(classes):
        nxt: dict[int, int] = {}
        absorbed = 0
        arcs = pair_arcs[j]
        for mask, count in cls.items():
            took = net.flow_on(arcs[mask]) if mask in arcs else 0
            if count - took:
                nxt[mask] = count - took
            if took:
                nxt[mask | bit] = took
                absorbed += took
        slots[j] -= absorbed
        new_classes.append(nxt)
    return new_classes


def _self_check(plan: PartitionPlan, classes: tuple[tuple[int, ...], ...]) -> None:
    """Engine-side sanity check; a failure here is a bug, not bad input."""
    lo, hi = plan.ground
    if tuple(len(c) for c in classes) != plan.sizes:
        raise ConstructionError("class sizes drifted from the plan")
    seen = sorted(m for c in classes for m in c)
    if seen != enumerate_family(lo, hi, plan.k):
        raise ConstructionError("classes do not partition the full family")
    for idx, cls in enumerate(classes):
        degrees = [0] * (hi - lo + 1)
        for mask in cls:
            local = mask >> (lo - 1)
            while local:
                low = local & -local
                degrees[low.bit_length() - 1] += 1
                local ^= low
        if max(degrees) - min(degrees) > 1:
            raise ConstructionError(f"class {idx} has degree spread > 1")


def almost_regular_partition(plan: PartitionPlan, cap: int | None = None) -> AlmostRegularPartition:
    """Partition the k-subsets of the plan's ground into almost-regular classes.

    Deterministic: the same plan always yields the identical partition.
    """
    limit = DEFAULT_EDGE_CAP if cap is None else cap
    if plan.edge_count > limit:
        raise ResourceCapError(
            f"plan has {plan.edge_count} hyperedges, above the cap of {limit}"
        )
    g = plan.ground_size
    k = plan.k
    classes = [{0: size} for size in plan.sizes]
    slots = [k * size for size in plan.sizes]
    for v in range(1, g + 1):
        classes = _absorption_step(classes, slots, k, v, g - v + 1)

    shift = plan.ground[0] - 1
    finished: list[tuple[int, ...]] = []
    for cls in classes:
        if any(count != 1 or mask.bit_count() != k for mask, count in cls.items()):
            raise ConstructionError("a class finished with unfinished or duplicated edges")
        finished.append(tuple(sorted(mask << shift for mask in cls)))
    result = tuple(finished)
    _self_check(plan, result)
    return AlmostRegularPartition(plan=plan, classes=result)


def _attach_anchor(
    base: AlmostRegularPartition,
    anchor: int,
    guaranteed: int,
    floor: int,
) -> CoveredPartition:
    bit = 1 << (anchor - 1)
    blocks = tuple(tuple(bit | m for m in cls) for cls in base.classes)
    for idx in range(guaranteed):
        covered = union_mask(blocks[idx]).bit_count()
        if covered < floor:
            raise ConstructionError(
                f"block {idx} covers {covered} labels, below the floor of {floor}"
            )
    return CoveredPartition(
        base=base, anchor=anchor, blocks=blocks, guaranteed_blocks=guaranteed, coverage_floor=floor
    )


def partition_A(i: int, p: Params, l: int, cap: int | None = None) -> CoveredPartition:
    """Split the family anchored at smallest label i into blocks of size l.

    Produces floor(C(n-i, k-1) / l) blocks of size exactly l plus one
    remainder block when l does not divide the family size.  Each full block
    covers at least min(n - i + 1, l*(k-1) + 1) labels.
    """
    n, k = p.n, p.k
    if not 1 <= i <= n - k + 1:
        raise ParameterError(f"anchor i = {i} outside [1, {n - k + 1}]")
    family_size = binomial(n - i, k - 1)
    if not 1 <= l <= family_size:
        raise ParameterError(f"block size l = {l} outside [1, {family_size}]")
    plan = PartitionPlan(ground=(i + 1, n), k=k - 1, sizes=uniform_sizes(family_size, l))
    base = almost_regular_partition(plan, cap=cap)
    return _attach_anchor(base, i, family_size // l, min(n - i + 1, l * (k - 1) + 1))


def partition_C(p: Params, l: int, cap: int | None = None) -> CoveredPartition:
    """Split the family of k-subsets containing label n into blocks of size l.

    Produces floor(C(n-1, k-1) / l) blocks of size l plus a remainder block;
    each full block covers at least min(n, l*(k-1) + 1) labels.
    """
    n, k = p.n, p.k
    family_size = binomial(n - 1, k - 1)
    if not 2 <= l <= family_size:
        raise ParameterError(f"block size l = {l} outside [2, {family_size}]")
    plan = PartitionPlan(ground=(1, n - 1), k=k - 1, sizes=uniform_sizes(family_size, l))
    base = almost_regular_partition(plan, cap=cap)
    return _attach_anchor(base, n, family_size // l, min(n, l * (k - 1) + 1))


def exhaustive_partition_feasible(plan: PartitionPlan) -> bool:
    """Backtracking oracle: is an almost-regular partition with these sizes feasible?

    Independent of the flow engine; only usable for tiny instances
    (at most ORACLE_EDGE_CAP hyperedges).  Exists to cross-check the engine:
    feasibility is guaranteed in theory, so a False here or a disagreement
    with the engine flags a bug.
    """
    total = plan.edge_count
    if total > ORACLE_EDGE_CAP:
        raise ResourceCapError(f"oracle limited to {ORACLE_EDGE_CAP} hyperedges, got {total}")
    g = plan.ground_size
    k = plan.k
    if k == g:
        return plan.sizes == (1,)
    if 2 * k > g:
        # Complementing every edge keeps class sizes and flips each degree to
        # size - degree, so spreads are unchanged; the sparse side prunes better.
        return exhaustive_partition_feasible(
            PartitionPlan(ground=plan.ground, k=g - k, sizes=plan.sizes)
        )
    edges = enumerate_family(1, g, plan.k)
    label_sets = []
    for mask in edges:
        labels = []
        while mask:
            low = mask & -mask
            labels.append(low.bit_length() - 1)
            mask ^= low
        label_sets.append(tuple(labels))
    sizes = plan.sizes
    n_classes = len(sizes)
    # Final degrees in a class of size a are forced into {floor, ceil} of k*a/g.
    ceilings = [-(-(k * a) // g) for a in sizes]
    floors = [(k * a) // g for a in sizes]
    fill = [0] * n_classes
    degrees = [[0] * g for _ in range(n_classes)]
    # Per-class degree budgets, maintained incrementally:
    # deficit[j] = units still needed to lift every vertex to the class floor,
    # headroom[j] = units the class can still absorb below its ceilings.
    deficit = [g * f for f in floors]
    headroom = [g * c for c in ceilings]
    # supply[x]: unassigned edges containing label x+1;
    # owed[x]: degree still required to reach every class floor at label x+1.
    supply = [0] * g
    for labels in label_sets:
        for x in labels:
            supply[x] += 1
    owed = [sum(floors)] * g
    unassigned = set(range(total))

    def options(e: int) -> list[int]:
        labels = label_sets[e]
        found = []
        seen_states = set()
        for j in range(n_classes):
            if fill[j] == sizes[j]:
                continue
            # Classes in identical states are interchangeable: keep the first.
            state = (sizes[j], fill[j], tuple(degrees[j]))
            if state in seen_states:
                continue
            seen_states.add(state)
            row = degrees[j]
            ceil_j = ceilings[j]
            floor_j = floors[j]
            if any(row[x] >= ceil_j for x in labels):
                continue
            # Remaining edges of the class must still be able to pay the floor
            # deficit, and the ceilings must leave room for them.
            budget = k * (sizes[j] - fill[j] - 1)
            drop = sum(1 for x in labels if row[x] < floor_j)
            if deficit[j] - drop > budget or headroom[j] - k < budget:
                continue
            found.append(j)
        return found

    def assign(e: int, j: int) -> None:
        fill[j] += 1
        unassigned.discard(e)
        row = degrees[j]
        headroom[j] -= k
        for x in label_sets[e]:
            supply[x] -= 1
            if row[x] < floors[j]:
                owed[x] -= 1
                deficit[j] -= 1
            row[x] += 1

    def undo(e: int, j: int) -> None:
        fill[j] -= 1
        unassigned.add(e)
        row = degrees[j]
        headroom[j] += k
        for x in label_sets[e]:
            supply[x] += 1
            row[x] -= 1
            if row[x] < floors[j]:
                owed[x] += 1
                deficit[j] += 1

    def search() -> bool:
        if not unassigned:
            return all(
                all(floors[j] <= d <= ceilings[j] for d in degrees[j])
                for j in range(n_classes)
            )
        if any(owed[x] > supply[x] for x in range(g)):
            return False
        # Fail-first: branch on the edge with the fewest feasible classes.
        pick = -1
        pick_options: list[int] = []
        for e in sorted(unassigned):
            found = options(e)
            if not found:
                return False
            if pick < 0 or len(found) < len(pick_options):
                pick, pick_options = e, found
                if len(found) == 1:
                    break
        for j in pick_options:
            assign(pick, j)
            if search():
                return True
            undo(pick, j)
        return False

    return search()
