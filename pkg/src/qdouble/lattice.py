"""Lattice geometry: square and 3-colored triangular lattices.

Square lattices carry vertex sites and edge sites; every edge is oriented
north or east (tail -> head), which fixes the CL-vs-CR choice in the gauging
circuits deterministically.  Triangular lattices carry vertex sites, a proper
3-coloring (color = (x + 2y) mod 3), edge sites on nearest-neighbor bonds,
and a derived same-color sublattice edge structure used by the staircase
ribbon constructions.

Site id conventions:
    v[x,y]   vertex
    E[x,y]   east  edge, (x,y) -> (x+1,y)
    N[x,y]   north edge, (x,y) -> (x,y+1)
    D[x,y]   diagonal edge (triangular only), (x,y) -> (x+1,y-1)
    Wc[x,y]d sublattice edge of color c from (x,y) in direction d in {a,b,c}
"""

from __future__ import annotations

from dataclasses import dataclass, field

# unit steps for the triangular lattice (sheared-square convention)
TRI_STEPS = ((1, 0), (0, 1), (1, -1), (-1, 0), (0, -1), (-1, 1))
# same-color ("sublattice") displacement representatives
SUB_STEPS = {"a": (1, 1), "b": (2, -1), "c": (1, -2)}

COLORS = ("R", "G", "B")


@dataclass(frozen=True)
class Edge:
    site: str
    tail: tuple
    head: tuple
    direction: str  # "E", "N", "D"


@dataclass(frozen=True)
class Lattice:
    kind: str          # "square" | "triangular3"
    Lx: int
    Ly: int
    boundary: str      # "torus" | "open"
    vertices: tuple    # of (x, y)
    edges: tuple       # of Edge

    def __post_init__(self):
        object.__setattr__(self, "_edge_by_site",
                           {e.site: e for e in self.edges})
        by_pair = {}
        # forward (tail->head) matches take precedence: on small tori a pair
        # of vertices can be doubly connected, one edge in each direction
        for e in self.edges:
            by_pair.setdefault((e.head, e.tail), (e, -1))
        for e in self.edges:
            by_pair[(e.tail, e.head)] = (e, +1)
        object.__setattr__(self, "_edge_by_pair", by_pair)

    def wrap(self, x, y):
        if self.boundary == "torus":
            return (x % self.Lx, y % self.Ly)
        return (x, y)

    def has_vertex(self, v):
        return v in set(self.vertices)

    def vertex_site(self, v):
        return f"v[{v[0]},{v[1]}]"

    def edge(self, site):
        return self._edge_by_site[site]

    def edge_between(self, u, v):
        """(Edge, sign): sign +1 if u->v follows the stored orientation."""
        key = (self.wrap(*u), self.wrap(*v))
        if key not in self._edge_by_pair:
            raise KeyError(f"no edge between {u} and {v}")
        return self._edge_by_pair[key]

    def edges_at(self, v):
        """Incident edges as (Edge, 'out'|'in') pairs."""
        v = self.wrap(*v)
        out = []
        for e in self.edges:
            if e.tail == v:
                out.append((e, "out"))
            if e.head == v:
                out.append((e, "in"))
        return out

    def color(self, v):
        if self.kind != "triangular3":
            raise ValueError("coloring defined for triangular3 only")
        x, y = v
        return COLORS[(x + 2 * y) % 3]

    def edge_sites(self):
        return tuple(e.site for e in self.edges)

    def vertex_sites(self):
        return tuple(self.vertex_site(v) for v in self.vertices)


def build_lattice(kind, Lx, Ly, boundary="torus") -> Lattice:
    if Lx < 2 or Ly < 2:
        raise ValueError("extents must be >= 2")
    if boundary not in ("torus", "open"):
        raise ValueError(f"unknown boundary {boundary!r}")
    vertices = tuple((x, y) for x in range(Lx) for y in range(Ly))
    edges = []

    def try_edge(prefix, x, y, dx, dy):
        hx, hy = x + dx, y + dy
        if boundary == "torus":
            hx, hy = hx % Lx, hy % Ly
        elif not (0 <= hx < Lx and 0 <= hy < Ly):
            return
        d = {"E": "E", "N": "N", "D": "D"}[prefix]
        edges.append(Edge(f"{prefix}[{x},{y}]", (x, y), (hx, hy), d))

    if kind == "square":
        for x in range(Lx):
            for y in range(Ly):
                try_edge("E", x, y, 1, 0)
                try_edge("N", x, y, 0, 1)
    elif kind == "triangular3":
        if boundary == "torus" and (Lx % 3 or Ly % 3):
            raise ValueError("triangular3 torus extents must be divisible by 3 "
                             "for the coloring to close up")
        for x in range(Lx):
            for y in range(Ly):
                try_edge("E", x, y, 1, 0)
                try_edge("N", x, y, 0, 1)
                try_edge("D", x, y, 1, -1)
    else:
        raise ValueError(f"unknown lattice kind {kind!r}")
    lat = Lattice(kind, Lx, Ly, boundary, vertices, tuple(edges))
    if kind == "triangular3":
        for e in lat.edges:
            if lat.color(e.tail) == lat.color(e.head):
                raise AssertionError("triangular coloring is not proper")
    return lat


def neighbors(lattice: Lattice, v):
    steps = TRI_STEPS if lattice.kind == "triangular3" else \
        ((1, 0), (0, 1), (-1, 0), (0, -1))
    out = []
    vs = set(lattice.vertices)
    for dx, dy in steps:
        w = lattice.wrap(v[0] + dx, v[1] + dy)
        if w in vs and (lattice.boundary == "torus"
                        or (0 <= v[0] + dx < lattice.Lx
                            and 0 <= v[1] + dy < lattice.Ly)):
            out.append(w)
    return out


# ---------------------------------------------------------------------------
# Sublattice (same-color) edges for the triangular lattice.
# ---------------------------------------------------------------------------

def sublattice_edges(lattice: Lattice, color):
    """Edges of the same-color triangular sublattice, as Edge records.

    Each vertex of the color emits edges in the three canonical directions
    a=(1,1), b=(2,-1), c=(1,-2); on open lattices only fully contained edges
    are kept.
    """
    out = []
    for (x, y) in lattice.vertices:
        if lattice.color((x, y)) != color:
            continue
        for tag, (dx, dy) in SUB_STEPS.items():
            hx, hy = x + dx, y + dy
            if lattice.boundary == "torus":
                hx, hy = hx % lattice.Lx, hy % lattice.Ly
            elif not (0 <= hx < lattice.Lx and 0 <= hy < lattice.Ly):
                continue
            out.append(Edge(f"W{color}[{x},{y}]{tag}", (x, y), (hx, hy), tag))
    return tuple(out)


# ---------------------------------------------------------------------------
# Oriented paths with the eta sign structure.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrientedPath:
    vertices: tuple        # ordered path vertices
    edges: tuple           # of (Edge, traversal sign)
    e_v: tuple             # per covered vertex: (vertex, Edge or None)
    eta: tuple             # per covered vertex: +1 / -1 / None
    closed: bool


_PERP_LEFT = {(1, 0): (0, 1), (-1, 0): (0, -1), (0, 1): (-1, 0), (0, -1): (1, 0)}


def oriented_path(lattice: Lattice, vertices, side="left",
                  corner_rule="incoming") -> OrientedPath:
    """Build an oriented path through the given vertices.

    side: which side of travel carries the perpendicular edge e_v
          ("left" of an eastward path is north).
    corner_rule: at turning vertices, take the perpendicular of the
          "incoming" or "outgoing" path segment.
    The eta sign is +1 when e_v points north or east away from v (v is the
    edge's tail) and -1 when it points south or west (v is the head).
    """
    verts = [lattice.wrap(*v) for v in vertices]
    closed = len(verts) > 2 and verts[0] == verts[-1]
    edges = []
    for u, w in zip(verts, verts[1:]):
        edges.append(lattice.edge_between(u, w))

    def step_dir(u, w):
        dx, dy = w[0] - u[0], w[1] - u[1]
        if lattice.boundary == "torus":
            # unwrap to a unit step
            dx = (dx + lattice.Lx // 2) % lattice.Lx - lattice.Lx // 2
            dy = (dy + lattice.Ly // 2) % lattice.Ly - lattice.Ly // 2
        return (dx, dy)

    e_v, eta = [], []
    covered = verts[:-1] if closed else verts
    for k, v in enumerate(covered):
        dirs = []
        if k > 0 or closed:
            u = verts[k - 1] if k > 0 else verts[-2]
            dirs.append(("incoming", step_dir(u, v)))
        if k < len(verts) - 1:
            dirs.append(("outgoing", step_dir(v, verts[k + 1])))
        pick = dict(dirs)
        d = pick.get(corner_rule, dirs[0][1])
        px, py = _PERP_LEFT[d]
        if side == "right":
            px, py = -px, -py
        target = lattice.wrap(v[0] + px, v[1] + py)
        try:
            edge, sgn = lattice.edge_between(v, target)
        except KeyError:
            e_v.append((v, None))
            eta.append(None)
            continue
        e_v.append((v, edge))
        eta.append(+1 if sgn > 0 else -1)
    return OrientedPath(tuple(verts), tuple(edges), tuple(e_v), tuple(eta),
                        closed)


# ---------------------------------------------------------------------------
# Regions and their boundaries.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    members: frozenset     # of vertex coordinates
    boundary_edges: tuple  # edges with exactly one endpoint in the region
    alpha: tuple           # corner vertices (odd boundary-parity), triangular3


def region_boundary(lattice: Lattice, members) -> Region:
    members = frozenset(lattice.wrap(*v) for v in members)
    if not members:
        raise ValueError("region is empty")
    boundary = tuple(e for e in lattice.edges
                     if (e.tail in members) != (e.head in members))
    alpha = ()
    if lattice.kind == "triangular3":
        alpha = tuple(sorted(_corner_vertices(lattice, members)))
    return Region(members, boundary, alpha)


def _corner_vertices(lattice: Lattice, members):
    """Vertices with an odd number of fully-swallowed adjacent bonds.

    A bond (j, k) is fully swallowed when both common neighbors of j and k
    lie in the membrane; vertices where the count of such bonds is odd
    carry a leftover single-site phase in the fractionalization pattern
    and must be paired up along the boundary.
    """
    out = []
    for j in lattice.vertices:
        cnt = 0
        for k in neighbors(lattice, j):
            common = set(neighbors(lattice, j)) & set(neighbors(lattice, k))
            if len(common & members) == 2:
                cnt += 1
        if cnt % 2 == 1:
            out.append(j)
    return out
