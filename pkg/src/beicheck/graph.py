"""Small simple graphs stored as tuples of adjacency bit masks.

Vertex ``v`` is bit ``v``; ``adj[v]`` is the mask of its neighbours.  All
graphs are immutable values, every derived graph is a fresh object.  The hot
helpers (``_components``, ``_count``) take raw ``(adj, alive)`` arguments so the
search code can call them without building ``Graph`` objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_VERTICES = 64


class GraphError(ValueError):
    pass


class CapacityError(RuntimeError):
    """Raised when an input exceeds a configured size or work budget."""


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _component(adj, seed_bit: int, alive: int) -> int:
    comp = frontier = seed_bit
    while frontier:
        nb = 0
        while frontier:
            low = frontier & -frontier
            nb |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = nb & alive & ~comp
        comp |= frontier
    return comp


def _components(adj, alive: int) -> list[int]:
    out = []
    while alive:
        comp = _component(adj, alive & -alive, alive)
        out.append(comp)
        alive &= ~comp
    return out


def _count(adj, alive: int) -> int:
    c = 0
    while alive:
        alive &= ~_component(adj, alive & -alive, alive)
        c += 1
    return c


def _cut_vertices(adj, alive: int) -> int:
    """Vertices of ``alive`` whose removal raises the component count."""
    base = _count(adj, alive)
    out = 0
    for v in bits(alive):
        # isolated vertices and leaves never disconnect anything
        if (adj[v] & alive).bit_count() < 2:
            continue
        if _count(adj, alive & ~(1 << v)) > base:
            out |= 1 << v
    return out


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"graph has {self.n} vertices, limit is {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, a in enumerate(self.adj):
            if a & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if a >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for w in bits(a):
                if not self.adj[w] >> v & 1:
                    raise GraphError(f"asymmetric edge {v}-{w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build from 0-based edges."""
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def relabel(self, perm) -> "Graph":
        """Graph where old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v, a in enumerate(self.adj):
            m = 0
            for w in bits(a):
                m |= 1 << perm[w]
            adj[perm[v]] = m
        return Graph(self.n, tuple(adj))

    def induced(self, keep: int) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``, renumbered ascending.

        Returns the subgraph and the list mapping new vertex -> old vertex.
        """
        old = list(bits(keep & self.full))
        new_of = {v: i for i, v in enumerate(old)}
        adj = []
        for v in old:
            m = 0
            for w in bits(self.adj[v] & keep):
                m |= 1 << new_of[w]
            adj.append(m)
        return Graph(len(old), tuple(adj)), old

    def delete(self, removed: int) -> tuple["Graph", list[int]]:
        return self.induced(self.full & ~removed)

    def is_connected(self) -> bool:
        return _count(self.adj, self.full) <= 1

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={[(u + 1, v + 1) for u, v in self.edges()]})"


# -- elementary operations ---------------------------------------------------

def count_components(g: Graph, removed: int = 0) -> tuple[int, list[int]]:
    """Number of components of ``g`` minus ``removed`` and their vertex masks."""
    comps = _components(g.adj, g.full & ~removed)
    return len(comps), comps


def cut_vertices(g: Graph) -> int:
    return _cut_vertices(g.adj, g.full)


def is_block(g: Graph) -> bool:
    """Connected with no cut vertex; K1 and K2 count as blocks."""
    if g.n == 0 or not g.is_connected():
        return False
    return cut_vertices(g) == 0


def saturate(g: Graph, v: int) -> Graph:
    """Complete the neighbourhood of ``v`` to a clique."""
    nb = g.adj[v]
    adj = list(g.adj)
    for w in bits(nb):
        adj[w] |= nb & ~(1 << w)
    return Graph(g.n, tuple(adj))


def is_clique(adj, mask: int) -> bool:
    for w in bits(mask):
        if (adj[w] | (1 << w)) & mask != mask:
            return False
    return True


def is_free_vertex(g: Graph, v: int) -> bool:
    return is_clique(g.adj, g.adj[v])


def free_vertices(g: Graph) -> int:
    return mask_of(v for v in range(g.n) if is_clique(g.adj, g.adj[v]))


def components_complete(g: Graph) -> bool:
    return all(is_clique(g.adj, c) for c in _components(g.adj, g.full))


@dataclass(frozen=True)
class BlockWithWhiskers:
    """A block ``base`` with a pendant leaf on every vertex of ``whiskered``.

    The i-th whiskered vertex in ascending order gets the leaf ``base.n + i``.
    """
    base: Graph
    whiskered: int
    full: Graph = field(compare=False)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.whiskered.bit_count()

    def leaf_of(self) -> dict[int, int]:
        return {v: self.base.n + i for i, v in enumerate(bits(self.whiskered))}


def add_whiskers(b: Graph, s: int) -> BlockWithWhiskers:
    if not is_block(b):
        raise GraphError("whiskers can only be attached to a block")
    if s == 0 or s & ~b.full:
        raise GraphError("whisker set must be a nonempty subset of the block")
    n = b.n
    k = s.bit_count()
    adj = list(b.adj) + [0] * k
    for i, v in enumerate(bits(s)):
        adj[v] |= 1 << (n + i)
        adj[n + i] = 1 << v
    return BlockWithWhiskers(b, s, Graph(n + k, tuple(adj)))


# -- text formats -------------------------------------------------------------

def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    out = []
    acc = nacc = 0
    for j in range(1, n):
        aj = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (aj >> i & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(acc + 63))
                acc = nacc = 0
    if nacc:
        out.append(chr((acc << (6 - nacc)) + 63))
    return head + "".join(out)


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    for pos, d in enumerate(data):
        if not 0 <= d <= 63:
            raise GraphError(f"invalid graph6 byte {s[pos]!r} at position {pos}")
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise GraphError("graph6 strings with n > 258047 are not supported")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 input has {n} vertices, limit is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def to_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u + 1} {v + 1}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines of 1-based ``u v``.

    Blank lines and ``#`` comments are ignored.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise GraphError("empty edge list")
    lineno, head = rows[0]
    try:
        n, m = map(int, head.split())
    except ValueError:
        raise GraphError(f"line {lineno}: expected 'n m', got {head!r}") from None
    if len(rows) - 1 != m:
        raise GraphError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = []
    for lineno, line in rows[1:]:
        try:
            u, v = map(int, line.split())
        except ValueError:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"line {lineno}: vertex out of range 1..{n}")
        edges.append((u - 1, v - 1))
    return Graph.from_edges(n, edges)


def parse_graph(text: str) -> Graph:
    """Accept either an edge list or a single graph6 line."""
    stripped = text.strip()
    if stripped and "\n" not in stripped and " " not in stripped:
        return from_graph6(stripped)
    return from_edge_list(text)
