"""Max-flow / min-cut on the source/terminal-augmented network.

The design/attack pair is turned into a directed flow graph: every built,
non-disrupted edge {i, j} contributes the arcs (i, j) and (j, i), each with
the full edge capacity; a super source feeds every supply node and a super
terminal drains every demand node.  A shortest-augmenting-path scheme with
BFS layering computes the max flow, and the nodes reachable in the final
residual graph certify the min cut.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections import deque

from sndp.instances import (
    AttackVector,
    DesignVector,
    Instance,
    attack_consistent,
    total_demand,
)

FLOW_EPS = 1e-12  # residual capacities at or below this count as saturated

SOURCE = "s"
TERMINAL = "t"


@dataclasses.dataclass(frozen=True)
class ArcTag:
    """Provenance of an arc: an original edge direction or an augmentation arc."""

    kind: str  # "edge" | "source" | "terminal"
    edge_id: int | None = None
    forward: bool | None = None  # edge arcs: True for i->j as stored
    node: int | None = None      # augmentation arcs: the real endpoint

    def __str__(self):
        if self.kind == "edge":
            return f"e{self.edge_id}{'+' if self.forward else '-'}"
        return f"{self.kind[0]}:{self.node}"


@dataclasses.dataclass(frozen=True)
class Arc:
    tail: int | str
    head: int | str
    capacity: float
    tag: ArcTag


class FlowGraph:
    """Directed capacitated graph with dedicated source and terminal nodes."""

    def __init__(self, internal_nodes, arcs):
        self.internal_nodes = tuple(internal_nodes)
        self.nodes = self.internal_nodes + (SOURCE, TERMINAL)
        self.arcs = tuple(arcs)
        index = {node: pos for pos, node in enumerate(self.nodes)}
        for arc in self.arcs:
            if arc.capacity < 0:
                raise ValueError(f"negative capacity on arc {arc.tag}")
            if arc.tail not in index or arc.head not in index:
                raise ValueError(f"arc {arc.tag} references unknown node")
        self._index = index

    @property
    def source(self) -> str:
        return SOURCE

    @property
    def terminal(self) -> str:
        return TERMINAL

    def node_pos(self, node) -> int:
        return self._index[node]

    def dump(self) -> str:
        """Debug text dump: one arc per line, 'tail head capacity'."""
        return "".join(f"{a.tail} {a.head} {a.capacity:g}\n" for a in self.arcs)


@dataclasses.dataclass(frozen=True)
class CutCertificate:
    source_side: frozenset
    terminal_side: frozenset
    capacity: float
    crossing: tuple[ArcTag, ...]


@dataclasses.dataclass(frozen=True)
class FlowResult:
    value: float
    flows: tuple[float, ...]  # aligned with graph.arcs
    cut: CutCertificate


def build_augmented(inst: Instance, design: DesignVector,
                    attack: AttackVector) -> FlowGraph:
    """Augmented graph for a consistent (design, attack) pair."""
    if not attack_consistent(design, attack):
        extra = sorted(attack.disrupted - design.built)
        raise ValueError(f"attack disrupts unbuilt edges {extra}")
    arcs = []
    for e in inst.edges:  # edges are id-sorted: deterministic arc order
        if e.id not in design.built or e.id in attack.disrupted:
            continue
        arcs.append(Arc(e.i, e.j, e.u, ArcTag("edge", edge_id=e.id, forward=True)))
        arcs.append(Arc(e.j, e.i, e.u, ArcTag("edge", edge_id=e.id, forward=False)))
    for n in inst.nodes:
        if n.b > 0:
            arcs.append(Arc(SOURCE, n.id, n.b, ArcTag("source", node=n.id)))
        elif n.b < 0:
            arcs.append(Arc(n.id, TERMINAL, -n.b, ArcTag("terminal", node=n.id)))
    return FlowGraph([n.id for n in inst.nodes], arcs)


class _Residual:
    """Arc-pair residual representation: slots 2k / 2k+1 are forward/backward."""

    def __init__(self, graph: FlowGraph):
        n = len(graph.nodes)
        self.head = []
        self.residual = []
        self.adj: list[list[int]] = [[] for _ in range(n)]
        for arc in graph.arcs:
            u, v = graph.node_pos(arc.tail), graph.node_pos(arc.head)
            self.adj[u].append(len(self.head))
            self.head.append(v)
            self.residual.append(arc.capacity)
            self.adj[v].append(len(self.head))
            self.head.append(u)
            self.residual.append(0.0)
        self.n = n

    def bfs_levels(self, s: int, t: int):
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for slot in self.adj[u]:
                v = self.head[slot]
                if level[v] < 0 and self.residual[slot] > FLOW_EPS:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def blocking_flow(self, s: int, t: int, level) -> float:
        """Send flow along level-increasing paths until the layer is exhausted."""
        pushed_total = 0.0
        pointer = [0] * self.n
        path: list[int] = []  # stack of arc slots from s to the current node
        u = s
        while True:
            if u == t:
                bottleneck = min(self.residual[slot] for slot in path)
                for slot in path:
                    self.residual[slot] -= bottleneck
                    self.residual[slot ^ 1] += bottleneck
                pushed_total += bottleneck
                if bottleneck <= FLOW_EPS:  # float-drift guard
                    return pushed_total
                path = []
                u = s
                continue
            advanced = False
            while pointer[u] < len(self.adj[u]):
                slot = self.adj[u][pointer[u]]
                v = self.head[slot]
                if self.residual[slot] > FLOW_EPS and level[v] == level[u] + 1:
                    path.append(slot)
                    u = v
                    advanced = True
                    break
                pointer[u] += 1
            if advanced:
                continue
            if u == s:
                return pushed_total
            # dead end: drop u from the layered graph and step back; the parent
            # pointer still addresses the arc into u and will skip it next scan
            level[u] = -2
            slot = path.pop()
            u = self.head[slot ^ 1]

    def reachable(self, s: int):
        seen = [False] * self.n
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for slot in self.adj[u]:
                v = self.head[slot]
                if not seen[v] and self.residual[slot] > FLOW_EPS:
                    seen[v] = True
                    stack.append(v)
        return seen


def max_flow(graph: FlowGraph) -> FlowResult:
    """Max flow value, per-arc flows and a min-cut certificate."""
    res = _Residual(graph)
    s = graph.node_pos(SOURCE)
    t = graph.node_pos(TERMINAL)
    value = 0.0
    while True:
        level = res.bfs_levels(s, t)
        if level is None:
            break
        pushed = res.blocking_flow(s, t, level)
        if pushed <= 0.0:
            break
        value += pushed
    flows = tuple(
        max(0.0, arc.capacity - res.residual[2 * k])
        for k, arc in enumerate(graph.arcs)
    )
    seen = res.reachable(s)
    source_side = frozenset(n for n in graph.nodes if seen[graph.node_pos(n)])
    terminal_side = frozenset(graph.nodes) - source_side
    crossing = []
    cut_capacity = 0.0
    for arc in graph.arcs:
        if arc.tail in source_side and arc.head in terminal_side:
            crossing.append(arc.tag)
            cut_capacity += arc.capacity
    cut = CutCertificate(source_side, terminal_side, cut_capacity, tuple(crossing))
    return FlowResult(value=value, flows=flows, cut=cut)


def min_cut_bruteforce(graph: FlowGraph) -> float:
    """Exhaustive minimum s-t cut; test oracle for graphs with <= 20 internal nodes."""
    internal = graph.internal_nodes
    if len(internal) > 20:
        raise ValueError("brute-force cut limited to 20 internal nodes")
    best = float("inf")
    for k in range(len(internal) + 1):
        for subset in itertools.combinations(internal, k):
            side = set(subset) | {SOURCE}
            cap = sum(a.capacity for a in graph.arcs
                      if a.tail in side and a.head not in side)
            best = min(best, cap)
    return best


def feasible_full_demand(inst: Instance, design: DesignVector,
                         attack: AttackVector) -> bool:
    """True when the surviving network can route every unit of demand."""
    graph = build_augmented(inst, design, attack)
    return max_flow(graph).value >= total_demand(inst) - 1e-9
