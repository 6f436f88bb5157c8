"""Model builders: Hamiltonian term sets and state preparation.

Square-lattice models: the Z3 toric code (and its defect-modified variant)
plus the generic quantum double D(G).  Triangular-lattice models: the
Levin-Gu SPT and its gauged cousin (doubled semion), the three-sublattice
CCZ SPT gauging to a D4-like double, and the further CZ-entangled variant
whose gauge theory carries quaternion fluxes.

All stabilizer terms are returned as StabilizerTerm records holding an
OperatorTerm (possibly with multi-site factors) and the eigenvalue the
model's ground state must have for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, build_group
from .lattice import Lattice, build_lattice, neighbors, sublattice_edges, COLORS
from . import sim
from .sim import (GateSpec, gate_matrix, OperatorTerm, OperatorSum, Register,
                  State, make_product_state, apply_matrix, DEFAULT_BUDGET)
from .gauging import GaugingPlan, kw2d_apply, gauge_incremental

MODEL_TAGS = ("Z3TC", "DG", "LevinGu", "DoubledSemion", "TypeIII_SPT",
              "DD4", "TypeI_III_SPT", "Q8")

SQUARE_MODELS = ("Z3TC", "DG")


@dataclass(frozen=True)
class ModelSpec:
    tag: str
    group: FiniteGroup = None      # only for DG

    def __post_init__(self):
        if self.tag not in MODEL_TAGS:
            raise ValueError(f"unknown model tag {self.tag!r}")
        if self.tag == "DG" and self.group is None:
            raise ValueError("DG model needs a group")

    def lattice_kind(self):
        return "square" if self.tag in SQUARE_MODELS else "triangular3"


@dataclass(frozen=True)
class StabilizerTerm:
    label: tuple           # (kind, location)
    op: OperatorTerm
    expected: complex = 1.0


def _check_lattice(model: ModelSpec, lattice: Lattice):
    if lattice.kind != model.lattice_kind():
        raise ValueError(
            f"model {model.tag} needs a {model.lattice_kind()} lattice, "
            f"got {lattice.kind}")


# ---------------------------------------------------------------------------
# Z3 toric code on the square lattice.
# ---------------------------------------------------------------------------

def _qutrit(kind):
    return gate_matrix(GateSpec(kind, (3,)))


def z3_vertex_term(lattice: Lattice, v) -> StabilizerTerm:
    """A at v: shift-down on outgoing edges, shift-up on incoming ones."""
    x = _qutrit("ShiftX")
    xd = x.conj().T
    factors = []
    for e, role in lattice.edges_at(v):
        factors.append((e.site, xd if role == "out" else x))
    return StabilizerTerm(("A", tuple(v)), OperatorTerm(tuple(factors)))


def z3_plaquette_term(lattice: Lattice, p) -> StabilizerTerm:
    """B at plaquette with corner p = (x, y): oriented clock product."""
    z = _qutrit("ClockZ")
    zd = z.conj().T
    x, y = p
    sites = [
        (f"E[{lattice.wrap(x, y)[0]},{lattice.wrap(x, y)[1]}]", z),
        (f"N[{lattice.wrap(x + 1, y)[0]},{lattice.wrap(x + 1, y)[1]}]", z),
        (f"E[{lattice.wrap(x, y + 1)[0]},{lattice.wrap(x, y + 1)[1]}]", zd),
        (f"N[{lattice.wrap(x, y)[0]},{lattice.wrap(x, y)[1]}]", zd),
    ]
    present = [(s, m) for s, m in sites if _edge_exists(lattice, s)]
    if len(present) != 4:
        raise ValueError(f"plaquette at {p} is incomplete")
    return StabilizerTerm(("B", tuple(p)), OperatorTerm(tuple(present)))


def _edge_exists(lattice, site):
    try:
        lattice.edge(site)
        return True
    except KeyError:
        return False


def _square_plaquettes(lattice: Lattice):
    out = []
    for x in range(lattice.Lx):
        for y in range(lattice.Ly):
            try:
                z3_plaquette_term(lattice, (x, y))
            except (ValueError, KeyError):
                continue
            out.append((x, y))
    return out


# ---------------------------------------------------------------------------
# Generic quantum double D(G) on the square lattice.
# ---------------------------------------------------------------------------

def dg_vertex_term(lattice: Lattice, G: FiniteGroup, v) -> StabilizerTerm:
    """Projector (1/|G|) sum_g of R_g on out-edges and L_g on in-edges.

    Packed as a single multi-site factor so the term stays an OperatorTerm.
    """
    inc = lattice.edges_at(v)
    sites = tuple(e.site for e, _ in inc)
    d = G.order
    n = len(inc)
    acc = np.zeros((d ** n,) * 2, dtype=complex)
    mats = {g: (gate_matrix(GateSpec("R_g", (g,)), G),
                gate_matrix(GateSpec("L_g", (g,)), G)) for g in range(d)}
    for g in range(d):
        m = np.eye(1, dtype=complex)
        for e, role in inc:
            rg, lg = mats[g]
            m = np.kron(m, rg if role == "out" else lg)
        acc += m
    return StabilizerTerm(("A", tuple(v)),
                          OperatorTerm(((sites, acc),), 1.0 / d))


def dg_plaquette_term(lattice: Lattice, G: FiniteGroup, p) -> StabilizerTerm:
    """Flatness projector: oriented product of edge values around p is e."""
    x, y = p
    legs = [  # (site, +1 if traversed along its orientation)
        (f"E[{lattice.wrap(x, y)[0]},{lattice.wrap(x, y)[1]}]", +1),
        (f"N[{lattice.wrap(x + 1, y)[0]},{lattice.wrap(x + 1, y)[1]}]", +1),
        (f"E[{lattice.wrap(x, y + 1)[0]},{lattice.wrap(x, y + 1)[1]}]", -1),
        (f"N[{lattice.wrap(x, y)[0]},{lattice.wrap(x, y)[1]}]", -1),
    ]
    for s, _ in legs:
        if not _edge_exists(lattice, s):
            raise ValueError(f"plaquette at {p} is incomplete")
    d = G.order
    sites = tuple(s for s, _ in legs)
    diag = np.zeros(d ** 4, dtype=complex)
    for idx in range(d ** 4):
        rem, vals = idx, []
        for _ in range(4):
            vals.append(rem % d)
            rem //= d
        vals.reverse()
        acc = 0  # identity; later legs multiply from the left so the
        # head/tail factors of consecutive edges cancel pairwise
        for (s, sgn), gval in zip(legs, vals):
            acc = G.m(gval if sgn > 0 else G.i(gval), acc)
        if acc == 0:
            diag[idx] = 1.0
    return StabilizerTerm(("B", tuple(p)),
                          OperatorTerm(((sites, np.diag(diag)),)))


# ---------------------------------------------------------------------------
# Triangular-lattice helpers: triangles and SPT entanglers.
# ---------------------------------------------------------------------------

def triangles(lattice: Lattice):
    """All elementary triangles as vertex triples (wrapped, deterministic)."""
    out = []
    for (x, y) in lattice.vertices:
        up = [(x, y), (x + 1, y), (x, y + 1)]
        dn = [(x, y), (x + 1, y), (x + 1, y - 1)]
        for tri in (up, dn):
            w = [lattice.wrap(*t) for t in tri]
            if lattice.boundary == "open":
                ok = all(0 <= a < lattice.Lx and 0 <= b < lattice.Ly
                         for a, b in tri)
                if not ok:
                    continue
            if len(set(w)) == 3:
                out.append(tuple(w))
    return out


def _hexagon_ring(lattice: Lattice, v):
    """Neighbors of v in cyclic order; None if the hexagon is clipped."""
    x, y = v
    ring = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
    out = []
    for dx, dy in ring:
        w = (x + dx, y + dy)
        if lattice.boundary == "open" and not (
                0 <= w[0] < lattice.Lx and 0 <= w[1] < lattice.Ly):
            return None
        out.append(lattice.wrap(*w))
    if len(set(out)) != 6:
        return None
    return out


CZ2 = gate_matrix(GateSpec("CZ"))
CCZ3 = gate_matrix(GateSpec("CCZ"))
PHASE_ZZ = np.diag(np.exp(1j * np.pi / 4
                          * np.array([1, -1, -1, 1])))  # e^{i pi/4 Z Z}
R_GATE = gate_matrix(GateSpec("Phase_R"))


def levin_gu_entangler_ops(lattice: Lattice, vertex_filter=None):
    """(matrix, sites) list: CCZ per triangle, CZ per edge.

    vertex_filter restricts to triangles/edges within a sublattice (used for
    the per-color entangling of the quaternion-flux model, where the same
    diagonal circuit is applied to each color's own triangular sublattice).
    """
    ops = []
    vs = lattice.vertex_site
    if vertex_filter is None:
        for tri in triangles(lattice):
            ops.append((CCZ3, tuple(vs(v) for v in tri)))
        for e in lattice.edges:
            ops.append((CZ2, (vs(e.tail), vs(e.head))))
    else:
        color = vertex_filter
        subs = sublattice_edges(lattice, color)
        pair = {frozenset((e.tail, e.head)) for e in subs}
        # sublattice triangles: vertex triples pairwise joined by sub-edges
        seen = set()
        for e in subs:
            for f in subs:
                if e.site >= f.site:
                    continue
                shared = {e.tail, e.head} & {f.tail, f.head}
                if len(shared) != 1:
                    continue
                third = ({e.tail, e.head} | {f.tail, f.head}) - shared
                a, b = sorted(third)
                if frozenset((a, b)) in pair:
                    tri = tuple(sorted({e.tail, e.head, f.tail, f.head}))
                    if tri not in seen:
                        seen.add(tri)
                        ops.append((CCZ3, tuple(vs(v) for v in tri)))
        for e in subs:
            ops.append((CZ2, (vs(e.tail), vs(e.head))))
    return ops


def typeiii_entangler_ops(lattice: Lattice):
    """CCZ on every elementary triangle (one vertex of each color)."""
    vs = lattice.vertex_site
    return [(CCZ3, tuple(vs(v) for v in tri)) for tri in triangles(lattice)]


def levin_gu_vertex_term(lattice: Lattice, v) -> StabilizerTerm:
    """i * X_v * prod of e^{i pi/4 Z Z} over the hexagon ring edges.

    The leading i makes the term the exact image of X_v under the
    triangle-CCZ + edge-CZ entangler, so its ground eigenvalue is +1.
    """
    ring = _hexagon_ring(lattice, v)
    if ring is None:
        raise ValueError(f"vertex {v} has a clipped hexagon")
    vs = lattice.vertex_site
    x = gate_matrix(GateSpec("ShiftX", (2,)))
    factors = [(vs(v), x)]
    for k in range(6):
        j, l = ring[k], ring[(k + 1) % 6]
        factors.append(((vs(j), vs(l)), PHASE_ZZ))
    return StabilizerTerm(("A_LG", tuple(v)),
                          OperatorTerm(tuple(factors), 1j))


def typeiii_vertex_term(lattice: Lattice, v) -> StabilizerTerm:
    """X_v * ring of CZ over the hexagon edges (three-color CCZ model)."""
    ring = _hexagon_ring(lattice, v)
    if ring is None:
        raise ValueError(f"vertex {v} has a clipped hexagon")
    vs = lattice.vertex_site
    x = gate_matrix(GateSpec("ShiftX", (2,)))
    factors = [(vs(v), x)]
    for k in range(6):
        j, l = ring[k], ring[(k + 1) % 6]
        factors.append(((vs(j), vs(l)), CZ2))
    return StabilizerTerm(("A_III", tuple(v)), OperatorTerm(tuple(factors)))


def quaternion_vertex_term(lattice: Lattice, v) -> StabilizerTerm:
    """X_v * hexagon CZ ring * e^{i pi/4 ZZ} ring on same-color neighbors.

    Combination of the three-color term and the single-color Levin-Gu
    decoration (applied within v's own sublattice); the i phase again comes
    from the entangler image.
    """
    ring = _hexagon_ring(lattice, v)
    if ring is None:
        raise ValueError(f"vertex {v} has a clipped hexagon")
    vs = lattice.vertex_site
    x = gate_matrix(GateSpec("ShiftX", (2,)))
    factors = [(vs(v), x)]
    for k in range(6):
        j, l = ring[k], ring[(k + 1) % 6]
        factors.append(((vs(j), vs(l)), CZ2))
    # same-color second-ring hexagon
    second = _same_color_ring(lattice, v)
    if second is None:
        raise ValueError(f"vertex {v} has a clipped sublattice hexagon")
    for k in range(6):
        j, l = second[k], second[(k + 1) % 6]
        factors.append(((vs(j), vs(l)), PHASE_ZZ))
    return StabilizerTerm(("A_Q", tuple(v)), OperatorTerm(tuple(factors), 1j))


def _same_color_ring(lattice: Lattice, v):
    """The six same-color sublattice neighbors of v in cyclic order."""
    x, y = v
    ring = [(1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1)]
    out = []
    for dx, dy in ring:
        w = (x + dx, y + dy)
        if lattice.boundary == "open" and not (
                0 <= w[0] < lattice.Lx and 0 <= w[1] < lattice.Ly):
            return None
        out.append(lattice.wrap(*w))
    if len(set(out)) != 6:
        return None
    return out


# ---------------------------------------------------------------------------
# Gauged triangular models: doubled semion and the sublattice doubles.
# ---------------------------------------------------------------------------

def ds_vertex_term(lattice: Lattice, v) -> StabilizerTerm:
    """i * (X on the six incident edges) * (R on the six opposite edges)."""
    ring = _hexagon_ring(lattice, v)
    if ring is None:
        raise ValueError(f"vertex {v} has a clipped hexagon")
    x = gate_matrix(GateSpec("ShiftX", (2,)))
    factors = []
    for w in ring:
        e, _ = lattice.edge_between(v, w)
        factors.append((e.site, x))
    for k in range(6):
        j, l = ring[k], ring[(k + 1) % 6]
        e, _ = lattice.edge_between(j, l)
        factors.append((e.site, R_GATE))
    return StabilizerTerm(("A_DS", tuple(v)), OperatorTerm(tuple(factors), 1j))


def ds_plaquette_term(lattice: Lattice, tri) -> StabilizerTerm:
    """Z on the three edges of a triangle."""
    z = gate_matrix(GateSpec("ClockZ", (2,)))
    factors = []
    for k in range(3):
        e, _ = lattice.edge_between(tri[k], tri[(k + 1) % 3])
        factors.append((e.site, z))
    return StabilizerTerm(("B_DS", tuple(sorted(tri))),
                          OperatorTerm(tuple(factors)))


def _sub_edge_between(lattice: Lattice, u, w):
    """Same-color sublattice edge joining u and w (either orientation)."""
    color = lattice.color(u)
    for e in sublattice_edges(lattice, color):
        if {e.tail, e.head} == {lattice.wrap(*u), lattice.wrap(*w)}:
            return e
    raise KeyError(f"no {color} sublattice edge between {u} and {w}")


def d4_vertex_data(lattice: Lattice, v):
    """(own_edge_sites, cz_pairs) of the sublattice-double vertex term at v.

    own: the six same-color sublattice edges at v (X factors).  cz_pairs:
    CZs between consecutive other-color sublattice ring edges (each pair
    (ring[k], ring[k+2]) of like-colored hexagon neighbors spans one).
    """
    ring = _hexagon_ring(lattice, v)
    second = _same_color_ring(lattice, v)
    if ring is None or second is None:
        raise ValueError(f"vertex {v} lacks a complete neighborhood")
    own = [_sub_edge_between(lattice, v, w).site for w in second]
    ring_edges = []
    for k in range(6):
        j, l = ring[k], ring[(k + 2) % 6]
        e = _sub_edge_between(lattice, j, l)
        ring_edges.append(e.site)
    cz_pairs = []
    for k in range(6):
        a, b = ring_edges[k], ring_edges[(k + 1) % 6]
        cz_pairs.append(tuple(sorted((a, b))))
    return own, sorted(set(cz_pairs))


def d4_vertex_term(lattice: Lattice, v, twisted=False) -> StabilizerTerm:
    """X on the six same-color edges at v, CZ ring on the other colors' edges.

    With twisted=True the same-color edges additionally carry the Levin-Gu
    R decoration pattern (quaternion-flux model); the twisted term keeps the
    entangler-image phase i.
    """
    own, cz_pairs = d4_vertex_data(lattice, v)
    x = gate_matrix(GateSpec("ShiftX", (2,)))
    factors = [(s, x) for s in own]
    if twisted:
        second = _same_color_ring(lattice, v)
        for k in range(6):
            e = _sub_edge_between(lattice, second[k], second[(k + 1) % 6])
            factors.append((e.site, R_GATE))
    return _merge_term(("A_D4" if not twisted else "A_Q8", tuple(v)),
                       factors, cz_pairs, 1j if twisted else 1.0)


def _merge_term(label, single_factors, cz_pairs, scalar):
    """Combine single-site factors and two-site CZs into one OperatorTerm.

    CZ supports may overlap the single-site factors, so everything touching
    a shared site is merged into one dense multi-site factor.
    """
    import itertools

    # union-find over sites
    parent = {}

    def find(s):
        parent.setdefault(s, s)
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    def union(a, b):
        parent[find(a)] = find(b)

    for s, _ in single_factors:
        find(s)
    for a, b in cz_pairs:
        union(a, b)
    groups = {}
    for s in parent:
        groups.setdefault(find(s), []).append(s)
    # assemble each group's dense matrix: singles first, then CZs
    factors = []
    for root, sites in sorted(groups.items()):
        sites = sorted(set(sites))
        if len(sites) == 1:
            m = np.eye(2, dtype=complex)
            for s, f in single_factors:
                if s == sites[0]:
                    m = f @ m
            factors.append((sites[0], m))
            continue
        reg = Register(tuple((s, 2) for s in sites))
        n = reg.total_dim
        m = np.eye(n, dtype=complex)
        for s, f in single_factors:
            if s in sites:
                m = sim._embed(reg, f, (s,)) @ m
        for a, b in cz_pairs:
            if a in sites:
                m = sim._embed(reg, CZ2, (a, b)) @ m
        factors.append((tuple(sites), m))
    return StabilizerTerm(label, OperatorTerm(tuple(factors), scalar))


def d4_plaquette_term(lattice: Lattice, color, tri_sites) -> StabilizerTerm:
    """Z on three same-color sublattice edges forming a sublattice triangle."""
    z = gate_matrix(GateSpec("ClockZ", (2,)))
    return StabilizerTerm(("B_D4", (color,) + tuple(sorted(tri_sites))),
                          OperatorTerm(tuple((s, z) for s in tri_sites)))


# ---------------------------------------------------------------------------
# Term-set and preparation entry points.
# ---------------------------------------------------------------------------

def hamiltonian_terms(model: ModelSpec, lattice: Lattice):
    _check_lattice(model, lattice)
    tag = model.tag
    terms = []
    if tag == "Z3TC":
        for v in lattice.vertices:
            terms.append(z3_vertex_term(lattice, v))
        for p in _square_plaquettes(lattice):
            terms.append(z3_plaquette_term(lattice, p))
    elif tag == "DG":
        for v in lattice.vertices:
            terms.append(dg_vertex_term(lattice, model.group, v))
        for p in _square_plaquettes(lattice):
            terms.append(dg_plaquette_term(lattice, model.group, p))
    elif tag == "LevinGu":
        for v in lattice.vertices:
            try:
                terms.append(levin_gu_vertex_term(lattice, v))
            except ValueError:
                continue
    elif tag == "TypeIII_SPT":
        for v in lattice.vertices:
            try:
                terms.append(typeiii_vertex_term(lattice, v))
            except ValueError:
                continue
    elif tag == "TypeI_III_SPT":
        for v in lattice.vertices:
            try:
                terms.append(quaternion_vertex_term(lattice, v))
            except ValueError:
                continue
    elif tag == "DoubledSemion":
        for v in lattice.vertices:
            try:
                terms.append(ds_vertex_term(lattice, v))
            except (ValueError, KeyError):
                continue
        for tri in triangles(lattice):
            try:
                terms.append(ds_plaquette_term(lattice, tri))
            except KeyError:
                continue
    elif tag in ("DD4", "Q8"):
        twisted = tag == "Q8"
        for v in lattice.vertices:
            try:
                terms.append(d4_vertex_term(lattice, v, twisted=twisted))
            except (ValueError, KeyError):
                continue
        for color in COLORS:
            for tri in _sublattice_triangles(lattice, color):
                terms.append(d4_plaquette_term(lattice, color, tri))
    else:
        raise ValueError(tag)
    return terms


def _sublattice_triangles(lattice: Lattice, color):
    """Triples of sublattice-edge sites forming elementary color triangles."""
    subs = sublattice_edges(lattice, color)
    by_pair = {frozenset((e.tail, e.head)): e.site for e in subs}
    out, seen = [], set()
    for pair, site in by_pair.items():
        u, w = tuple(pair)
        for other in by_pair:
            if other == pair or not (other & pair):
                continue
            third_vs = (other | pair) - (other & pair)
            if len(third_vs) != 2:
                continue
            if frozenset(third_vs) in by_pair:
                tri_vs = frozenset(pair | other)
                if tri_vs in seen:
                    continue
                seen.add(tri_vs)
                a, b, c = tuple(tri_vs)
                sites = sorted({by_pair[frozenset((p, q))]
                                for p in (a, b, c) for q in (a, b, c)
                                if p != q and frozenset((p, q)) in by_pair})
                if len(sites) == 3:
                    out.append(tuple(sites))
    return sorted(set(out))


def prepare_spt(model: ModelSpec, lattice: Lattice,
                budget=DEFAULT_BUDGET) -> State:
    """Diagonal-entangler SPT states on the vertex register."""
    _check_lattice(model, lattice)
    reg = sim.make_register(
        tuple((lattice.vertex_site(v), 2) for v in lattice.vertices), budget)
    state = make_product_state(reg, {s: "+" for s in reg.site_ids})
    if model.tag == "LevinGu":
        ops = levin_gu_entangler_ops(lattice)
    elif model.tag == "TypeIII_SPT":
        ops = typeiii_entangler_ops(lattice)
    elif model.tag == "TypeI_III_SPT":
        ops = typeiii_entangler_ops(lattice)
        for color in COLORS:
            ops += levin_gu_entangler_ops(lattice, vertex_filter=color)
    else:
        raise ValueError(f"{model.tag} is not an SPT tag")
    for m, s in ops:
        apply_matrix(state, m, s)
    return state


def z3_paramagnet(lattice: Lattice, budget=DEFAULT_BUDGET) -> State:
    reg = sim.make_register(
        tuple((lattice.vertex_site(v), 3) for v in lattice.vertices), budget)
    return make_product_state(reg, {s: "I" for s in reg.site_ids})


def prepare_ground_state(model: ModelSpec, lattice: Lattice,
                         budget=DEFAULT_BUDGET):
    """Gauge the matching product/SPT state; returns (state, weight)."""
    _check_lattice(model, lattice)
    tag = model.tag
    if tag == "Z3TC":
        state = z3_paramagnet(lattice, budget)
        plan = GaugingPlan(lattice, build_group("Z3"))
        return kw2d_apply(state, plan, budget)
    if tag == "DG":
        G = model.group
        reg = sim.make_register(
            tuple((lattice.vertex_site(v), G.order)
                  for v in lattice.vertices), budget)
        state = make_product_state(reg, {s: "I" for s in reg.site_ids})
        return kw2d_apply(state, GaugingPlan(lattice, G), budget)
    if tag == "DoubledSemion":
        spt = prepare_spt(ModelSpec("LevinGu"), lattice, budget)
        return _gauge_triangular(spt, lattice, budget)
    if tag in ("DD4", "Q8"):
        src = ModelSpec("TypeIII_SPT" if tag == "DD4" else "TypeI_III_SPT")
        spt = prepare_spt(src, lattice, budget)
        return _gauge_sublattices(spt, lattice, budget)
    raise ValueError(f"{tag} has no gauged preparation")


def _gauge_triangular(state: State, lattice: Lattice, budget):
    """Full-lattice Z2 gauging: every vertex onto its incident edges."""
    Z2 = build_group("Z2")
    plan = []
    for v in lattice.vertices:
        inc = [(e.site, role) for e, role in lattice.edges_at(v)]
        inc.sort()
        plan.append((lattice.vertex_site(v), inc))
    return gauge_incremental(state, Z2, plan, budget=budget)


def _gauge_sublattices(state: State, lattice: Lattice, budget):
    """Z2-gauge each color sublattice onto its same-color edges."""
    Z2 = build_group("Z2")
    log0 = state.norm_log
    out = state
    for color in COLORS:
        subs = sublattice_edges(lattice, color)
        plan = []
        for v in lattice.vertices:
            if lattice.color(v) != color:
                continue
            inc = []
            for e in subs:
                if e.tail == v:
                    inc.append((e.site, "out"))
                elif e.head == v:
                    inc.append((e.site, "in"))
            inc.sort()
            plan.append((lattice.vertex_site(v), inc))
        out, _ = gauge_incremental(out, Z2, plan, budget=budget)
    return out, math.exp(out.norm_log - log0)
