"""Gauging maps: the 2D KW_G isometry, its Rep(G) dual, and the 1D chain.

KW_G initializes every edge in |e>, applies controlled group multiplications
from each vertex to its incident edges (CR if the edge points out of the
vertex, CL if it points in), and post-selects every vertex onto the uniform
state <I|.  The Rep(G) dual swaps the roles (controls on edges, targets on
vertices, CL/CR correspondence reversed).

Vertices are processed one at a time and projected out immediately, which is
exactly equivalent to the global circuit (a vertex's gates touch no other
vertex) but keeps the live register at edges + one vertex.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup
from .lattice import Lattice
from . import sim
from .sim import (State, Register, GateSpec, gate_matrix, make_product_state,
                  add_site, project_site, apply_matrix, DEFAULT_BUDGET)


@dataclass(frozen=True)
class GaugingPlan:
    lattice: Lattice
    group: FiniteGroup
    direction: str = "KW_G"          # or "KW_RepG"
    gate_order: str = "ccw-from-north"


def _square_edge_order_key(edge, role):
    # counterclockwise starting from the north edge
    return {("N", "out"): 0, ("E", "in"): 1, ("N", "in"): 2,
            ("E", "out"): 3}[(edge.direction, role)]


def vertex_incidence_plan(lattice: Lattice):
    """[(vertex_site, [(edge_site, 'out'|'in'), ...]), ...] in fixed order."""
    plan = []
    for v in lattice.vertices:
        inc = lattice.edges_at(v)
        inc.sort(key=lambda er: _square_edge_order_key(*er))
        plan.append((lattice.vertex_site(v),
                     [(e.site, role) for e, role in inc]))
    return plan


def gauge_incremental(state: State, G: FiniteGroup, vertex_plan,
                      edge_dims=None, budget=DEFAULT_BUDGET):
    """Generic incremental gauging over an explicit incidence plan.

    The input state holds the vertex degrees of freedom (and may already
    contain some or all edge sites).  Edges not present are appended in |e>.
    Each vertex's controlled gates are applied and the vertex is projected
    onto <I| before moving on.  Returns (edge_state, weight).
    """
    cl = gate_matrix(GateSpec("CL"), G)
    cr = gate_matrix(GateSpec("CR"), G)
    log0 = state.norm_log
    for vsite, incidences in vertex_plan:
        for esite, role in incidences:
            if esite not in state.register.site_ids:
                dim = G.order if edge_dims is None else edge_dims[esite]
                state = add_site(state, esite, dim, "e", budget=budget)
            gate = cr if role == "out" else cl
            state = apply_matrix(state, gate, (vsite, esite))
        state, _ = project_site(state, vsite, "I")
    return state, math.exp(state.norm_log - log0)


def kw2d_apply(state: State, plan: GaugingPlan, budget=DEFAULT_BUDGET):
    """Apply KW_G to a state on the lattice vertices; returns (state, weight)."""
    if plan.direction != "KW_G":
        raise ValueError("plan direction must be KW_G")
    return gauge_incremental(state, plan.group,
                             vertex_incidence_plan(plan.lattice),
                             budget=budget)


def kw_repg_apply(state: State, plan: GaugingPlan, budget=DEFAULT_BUDGET):
    """Apply KW_RepG to a state on the lattice edges; returns (state, weight).

    Controls are the edges; each edge acts with CL on its tail vertex (the
    edge points out of it) and CR on its head, then is projected onto <I|.
    """
    G = plan.group
    cl = gate_matrix(GateSpec("CL"), G)
    cr = gate_matrix(GateSpec("CR"), G)
    lat = plan.lattice
    log0 = state.norm_log
    for e in lat.edges:
        for v, gate in ((e.tail, cl), (e.head, cr)):
            vsite = lat.vertex_site(v)
            if vsite not in state.register.site_ids:
                state = add_site(state, vsite, G.order, "e", budget=budget)
            state = apply_matrix(state, gate, (e.site, vsite))
        state, _ = project_site(state, e.site, "I")
    return state, math.exp(state.norm_log - log0)


def kw1d_apply(state: State, sites, G: FiniteGroup, inverse=False) -> State:
    """Sequential 1D gauging chain CL_{i -> i+1} along the listed sites.

    Forward: ascending chain, turning |g0, g1, ...> into partial products
    |g0, g0 g1, ...> (the ungauging direction that uncovers vertex degrees
    of freedom from edge differences).  inverse=True undoes it exactly.
    """
    cl = gate_matrix(GateSpec("CL"), G)
    pairs = list(zip(sites, sites[1:]))
    if inverse:
        for a, b in reversed(pairs):
            state = apply_matrix(state, cl.conj().T, (a, b))
    else:
        for a, b in pairs:
            state = apply_matrix(state, cl, (a, b))
    return state


def _chain_digits(d, n):
    """(n, d**n) array of base-d digits, site 0 most significant."""
    digs = np.empty((n, d ** n), dtype=np.int64)
    rem = np.arange(d ** n)
    for k in range(n - 1, -1, -1):
        digs[k] = rem % d
        rem //= d
    return digs


def _chain_encode(digs, d):
    out = np.zeros(digs.shape[1], dtype=np.int64)
    for row in digs:
        out = out * d + row
    return out


def kw1d_chain_perm(G: FiniteGroup, n: int) -> np.ndarray:
    """Basis permutation of the ascending CL chain on n sites.

    U|g0, g1, g2, ...> = |g0, g0 g1, g0 g1 g2, ...> (prefix products),
    matching kw1d_apply with inverse=False.
    """
    d = G.order
    digs = _chain_digits(d, n)
    out = digs.copy()
    acc = digs[0].copy()
    for k in range(1, n):
        acc = G.mul[acc, digs[k]]
        out[k] = acc
    return _chain_encode(out, d)


def kw1d_rule_residual(G: FiniteGroup, n: int, i: int, g: int,
                       rule: str) -> float:
    """Exact Frobenius residual of a 1D gauging conjugation rule.

    Every operator involved is a monomial matrix, so both sides are
    composed as index maps over the full d**n chain basis.  Rules:
      "RL": U R_g^(i) L_g^(i+1) U^dag == R_g^(i)
      "T":  U T_g^(i+1) U^dag == sum_h T_h^(i) T_{hg}^(i+1)
      "X":  U^dag X^(i) U == X^(i) X^(i+1)            (Z2 chain)
      "ZZ": U^dag Z^(i) Z^(i+1) U == Z^(i+1)          (Z2 chain)
    The last two read the map in the gauging direction, hence the
    inverse conjugation.
    """
    d = G.order
    digs = _chain_digits(d, n)
    U = kw1d_chain_perm(G, n)
    Uinv = np.argsort(U)
    if rule == "RL":
        o1 = digs.copy()
        o1[i] = G.mul[o1[i], G.i(g)]
        o1[i + 1] = G.mul[g, o1[i + 1]]
        lhs = U[_chain_encode(o1, d)[Uinv]]
        o2 = digs.copy()
        o2[i] = G.mul[o2[i], G.i(g)]
        rhs = _chain_encode(o2, d)
        return math.sqrt(2.0 * np.count_nonzero(lhs != rhs))
    if rule == "T":
        lhs = (digs[i + 1] == g)[Uinv]
        rhs = digs[i + 1] == G.mul[digs[i], g]
        return math.sqrt(float(np.count_nonzero(lhs != rhs)))
    if d != 2:
        raise ValueError("Pauli chain rules are for the order-2 group")
    if rule == "X":
        o1 = digs.copy()
        o1[i] ^= 1
        lhs = Uinv[_chain_encode(o1, d)[U]]
        o2 = digs.copy()
        o2[i] ^= 1
        o2[i + 1] ^= 1
        rhs = _chain_encode(o2, d)
        return math.sqrt(2.0 * np.count_nonzero(lhs != rhs))
    if rule == "ZZ":
        lhs = 1.0 - 2.0 * ((digs[i] ^ digs[i + 1])[U])
        rhs = 1.0 - 2.0 * digs[i + 1]
        return float(np.linalg.norm(lhs - rhs))
    raise ValueError(f"unknown rule {rule!r}")


# ---------------------------------------------------------------------------
# Dense KW matrices on small patches, for operator-identity checks.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Patch:
    """A small open patch: vertices plus edges that may dangle.

    edges: tuple of (edge_site, tail_vertex_site or None, head or None).
    Dangling ends simply contribute no controlled gate.
    """
    vertex_sites: tuple
    edges: tuple

    def edge_sites(self):
        return tuple(e for e, _, _ in self.edges)


def patch_from_lattice(lattice: Lattice, vertices, extra_edges=()):
    """Patch holding the given vertices and all their incident edges."""
    vs = [lattice.wrap(*v) for v in vertices]
    vset = set(vs)
    vsites = tuple(lattice.vertex_site(v) for v in vs)
    edges, seen = [], set()
    for v in vs:
        for e, _ in lattice.edges_at(v):
            if e.site in seen:
                continue
            seen.add(e.site)
            tail = lattice.vertex_site(e.tail) if e.tail in vset else None
            head = lattice.vertex_site(e.head) if e.head in vset else None
            edges.append((e.site, tail, head))
    for esite in extra_edges:
        if esite not in seen:
            e = lattice.edge(esite)
            tail = lattice.vertex_site(e.tail) if e.tail in vset else None
            head = lattice.vertex_site(e.head) if e.head in vset else None
            edges.append((esite, tail, head))
    return Patch(vsites, tuple(edges))


def _apply_to_stack(stack, reg, mat, sites):
    return sim.apply_matrix_stack(stack, mat, list(sites), reg)


def kw_patch_matrix(patch: Patch, G: FiniteGroup) -> np.ndarray:
    """Dense KW_G on a patch: map from vertex space to edge space.

    Matrix shape (|G|^n_edges, |G|^n_vertices); includes the 1/sqrt(|G|)
    factors from the <I| projections (no renormalization).
    """
    d = G.order
    vsites, esites = patch.vertex_sites, patch.edge_sites()
    reg = Register(tuple((s, d) for s in vsites + esites))
    nv, ne = len(vsites), len(esites)
    n_in, n_out = d ** nv, d ** ne
    # stack over vertex basis columns, edges initialized to |e>
    edge_init = np.zeros(n_out, dtype=complex)
    edge_init[0] = 1.0
    stack = np.kron(np.eye(n_in, dtype=complex), edge_init.reshape(-1, 1))
    cl = gate_matrix(GateSpec("CL"), G)
    cr = gate_matrix(GateSpec("CR"), G)
    # per vertex, gates to incident edges in the listed (deterministic) order
    for vsite in vsites:
        for esite, tail, head in patch.edges:
            if tail == vsite:
                stack = _apply_to_stack(stack, reg, cr, (vsite, esite))
            if head == vsite:
                stack = _apply_to_stack(stack, reg, cl, (vsite, esite))
    # contract every vertex with <I|
    t = stack.reshape([d] * (nv + ne) + [n_in])
    uniform = np.full(d, 1.0 / math.sqrt(d))
    for _ in range(nv):
        t = np.tensordot(uniform, t, axes=([0], [0]))
    return t.reshape(n_out, n_in)


def kw_repg_patch_matrix(patch: Patch, G: FiniteGroup) -> np.ndarray:
    """Dense KW_RepG on a patch: map from edge space to vertex space.

    Controls on edges (CL to tail, CR to head), vertices start in |e>,
    edges are contracted with <I| at the end.
    """
    d = G.order
    vsites, esites = patch.vertex_sites, patch.edge_sites()
    nv, ne = len(vsites), len(esites)
    n_in, n_out = d ** ne, d ** nv
    vidx = {s: i for i, s in enumerate(vsites)}
    # Every gate is a group multiplication controlled by an edge, so each
    # edge basis state maps to a single vertex basis state; build the matrix
    # column by column instead of materializing the joint space.
    out = np.zeros((n_out, n_in), dtype=complex)
    scale = d ** (-ne / 2.0)
    for col in range(n_in):
        digs, rem = [], col
        for _ in range(ne):
            digs.append(rem % d)
            rem //= d
        digs.reverse()
        evals = dict(zip(esites, digs))
        vals = [G.identity] * nv
        for esite, tail, head in patch.edges:
            g = evals[esite]
            if tail is not None:
                vals[vidx[tail]] = G.m(g, vals[vidx[tail]])   # CL
            if head is not None:
                vals[vidx[head]] = G.m(vals[vidx[head]], G.i(g))  # CR
        row = 0
        for v in vals:
            row = row * d + v
        out[row, col] = scale
    return out


# ---------------------------------------------------------------------------
# Push-through identity checking.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PushThroughCase:
    """Operator identity  sum_k post_k . KW . pre_k  =  sum_l ...  on a patch.

    lhs / rhs: tuples of (pre, post) pairs; pre acts on the KW input sites,
    post on its output sites, either may be None (identity).  A bare
    "pre-operator maps to post-operator" rule is the one-pair case
    lhs=((pre, None),), rhs=((None, post),).
    """
    label: str
    patch: Patch
    lhs: tuple
    rhs: tuple


def _sandwich_sum(kw, pairs, reg_in, reg_out):
    acc = np.zeros_like(kw)
    for pre, post in pairs:
        m = kw
        if pre is not None:
            m = m @ sim.dense_operator(reg_in, pre)
        if post is not None:
            m = sim.dense_operator(reg_out, post) @ m
        acc = acc + m
    return acc


def pushthrough_verify(case: PushThroughCase, G: FiniteGroup,
                       direction="KW_G") -> float:
    """Frobenius norm of the difference of the two sides of the identity."""
    d = G.order
    if direction == "KW_G":
        kw = kw_patch_matrix(case.patch, G)
        in_sites, out_sites = case.patch.vertex_sites, case.patch.edge_sites()
    else:
        kw = kw_repg_patch_matrix(case.patch, G)
        in_sites, out_sites = case.patch.edge_sites(), case.patch.vertex_sites
    reg_in = Register(tuple((s, d) for s in in_sites))
    reg_out = Register(tuple((s, d) for s in out_sites))
    lhs = _sandwich_sum(kw, case.lhs, reg_in, reg_out)
    rhs = _sandwich_sum(kw, case.rhs, reg_in, reg_out)
    return float(np.linalg.norm(lhs - rhs))


def rule_case(label, patch, pre, post) -> PushThroughCase:
    """Plain transformation rule: KW . pre == post . KW."""
    return PushThroughCase(label, patch, ((pre, None),), ((None, post),))


def _vertex_star_patch():
    """One vertex with two outgoing and two incoming dangling edges."""
    return Patch(("V",), (("Eo1", "V", None), ("Eo2", "V", None),
                          ("Ei1", None, "V"), ("Ei2", None, "V")))


def _perm_op(G, table):
    m = np.zeros((G.order, G.order), dtype=complex)
    for g in range(G.order):
        m[table[g], g] = 1.0
    return m


def vertex_symmetry_case(G: FiniteGroup, g: int) -> PushThroughCase:
    """L_g on a pre-gauged vertex becomes the gauged star operator A_g:
    L_g on edges pointing in, R_g on edges pointing out."""
    patch = _vertex_star_patch()
    lg = gate_matrix(GateSpec("L_g", (g,)), G)
    rg = gate_matrix(GateSpec("R_g", (g,)), G)
    pre = sim.OperatorTerm((("V", lg),))
    post = sim.OperatorTerm((("Ei1", lg), ("Ei2", lg),
                             ("Eo1", rg), ("Eo2", rg)))
    return rule_case(f"vertex-symmetry-{G.name}-g{g}", patch, pre, post)


def charge_edge_case(G: FiniteGroup, irrep, i: int, j: int) -> PushThroughCase:
    """A matrix-multiplied pair of irrep-diagonal operators on two adjacent
    pre-gauged vertices becomes a single irrep-diagonal edge operator."""
    patch = Patch(("V1", "V2"), (("E", "V1", "V2"),))
    lhs = []
    for k in range(irrep.dimension):
        z_head = gate_matrix(GateSpec("Z_Gij", (irrep, i, k)), G)
        z_tail = gate_matrix(GateSpec("Z_Gij", (irrep, j, k)), G).conj()
        lhs.append((sim.OperatorTerm((("V2", z_head), ("V1", z_tail))), None))
    post = sim.OperatorTerm(
        (("E", gate_matrix(GateSpec("Z_Gij", (irrep, i, j)), G)),))
    return PushThroughCase(f"charge-edge-{G.name}-{irrep.label}-{i}{j}",
                           patch, tuple(lhs), (((None, post)),))


def automorphism_vertex_case(G: FiniteGroup, O) -> PushThroughCase:
    """An automorphism on a pre-gauged vertex becomes a sum of star
    operators A_{Omega(g)} controlled by T_g on the vertex."""
    patch = _vertex_star_patch()
    lhs = ((sim.OperatorTerm((("V", _perm_op(G, O.map)),)), None),)
    rhs = []
    for g in range(G.order):
        om = G.m(O.map[g], G.i(g))
        lo = gate_matrix(GateSpec("L_g", (om,)), G)
        ro = gate_matrix(GateSpec("R_g", (om,)), G)
        pre = sim.OperatorTerm((("V", gate_matrix(GateSpec("T_g", (g,)), G)),))
        post = sim.OperatorTerm((("Ei1", lo), ("Ei2", lo),
                                 ("Eo1", ro), ("Eo2", ro)))
        rhs.append((pre, post))
    return PushThroughCase(f"automorphism-vertex-{G.name}-{O.label}",
                           patch, lhs, tuple(rhs))


def automorphism_edge_case(G: FiniteGroup, O) -> PushThroughCase:
    """An automorphism on a gauged edge becomes Omega-twisted group
    multiplications controlled by the two adjacent pre-gauged vertices."""
    patch = Patch(("V1", "V2"), (("E", "V1", "V2"),))
    lhs = ((None, sim.OperatorTerm((("E", _perm_op(G, O.map)),))),)
    rhs = []
    for g in range(G.order):          # head vertex value
        for h in range(G.order):      # tail vertex value
            om_h = G.m(O.map[g], G.i(g))
            om_t = G.m(O.map[h], G.i(h))
            mat = (gate_matrix(GateSpec("R_g", (om_t,)), G)
                   @ gate_matrix(GateSpec("L_g", (om_h,)), G))
            pre = sim.OperatorTerm(
                (("V2", gate_matrix(GateSpec("T_g", (g,)), G)),
                 ("V1", gate_matrix(GateSpec("T_g", (h,)), G))))
            rhs.append((pre, sim.OperatorTerm((("E", mat),))))
    return PushThroughCase(f"automorphism-edge-{G.name}-{O.label}",
                           patch, lhs, tuple(rhs))


def flux_seed_case(G: FiniteGroup, g: int, steps: int = 2,
                   label=None) -> PushThroughCase:
    """A flux ribbon derived by propagating a single vertex seed.

    An L_g^dag seed on the first vertex of a dual path, pushed through the
    edge-to-vertex map, becomes an edge operator: each crossed "frame" edge
    is read by a T_h projector and the accumulated conjugate of g
    left-multiplies the next path edge.  The vertices are only acted on by
    matching conjugation pairs (trivial on the |e>-initialized vertex
    register) plus one unpaired factor at the open terminal vertex.

    Path edge E_i runs from V_i to V_{i-1}; frame edge F_i points into V_i.
    """
    vsites = tuple(f"V{i}" for i in range(steps + 1))
    path = tuple((f"E{i}", f"V{i}", f"V{i - 1}") for i in range(1, steps + 1))
    frame = tuple((f"F{i}", None, f"V{i}") for i in range(steps))
    patch = Patch(vsites, path + frame)

    def mat(kind, k):
        return gate_matrix(GateSpec(kind, (k,)), G)

    def conj_pair(k):
        return mat("L_g", k).conj().T @ mat("R_g", k).conj().T

    seed = sim.OperatorTerm((("V0", mat("L_g", g).conj().T),))
    rhs = []
    for hs in itertools.product(range(G.order), repeat=steps):
        ks, k = [], g
        for h in hs:
            k = G.m(G.m(G.i(h), k), h)
            ks.append(k)
        pre = sim.OperatorTerm(
            tuple((f"F{i}", mat("T_g", h)) for i, h in enumerate(hs))
            + tuple((f"E{i + 1}", mat("L_g", ks[i])) for i in range(steps)))
        post_factors = [("V0", conj_pair(g))]
        post_factors += [(f"V{i + 1}", conj_pair(ks[i]))
                         for i in range(steps - 1)]
        post_factors.append((f"V{steps}", mat("L_g", ks[-1]).conj().T))
        rhs.append((pre, sim.OperatorTerm(tuple(post_factors))))
    return PushThroughCase(label or f"flux-seed-{G.name}-g{g}", patch,
                           ((None, seed),), tuple(rhs))
