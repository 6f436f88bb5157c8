"""Ribbon and defect-line compilers.

Every ribbon is either a Circuit (ordered unitary gate list, possibly
linear-depth) or an OperatorTerm (for the non-unitary charge ribbons with
fixed internal indices).  Circuits carry layer metadata so exports show the
construction stages: un-gauge along the line, act on the uncovered degrees
of freedom, re-gauge.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup, build_group
from .lattice import Lattice, OrientedPath, Region, sublattice_edges, neighbors
from . import sim
from .sim import GateSpec, gate_matrix, OperatorTerm


@dataclass(frozen=True)
class Gate:
    spec: GateSpec
    sites: tuple
    power: int = 1

    def matrix(self, G=None):
        m = gate_matrix(self.spec, G)
        if self.power == 1:
            return m
        p = self.power % _matrix_order(m)
        return np.linalg.matrix_power(m, p)


def _matrix_order(m, cap=16):
    acc = np.eye(m.shape[0], dtype=complex)
    for k in range(1, cap + 1):
        acc = acc @ m
        if np.allclose(acc, np.eye(m.shape[0])):
            return k
    return cap  # non-periodic (should not happen for our gate set)


@dataclass(frozen=True)
class Circuit:
    label: str
    gates: tuple              # of Gate
    layers: tuple = ()        # of (name, start, stop) index ranges
    meta: tuple = ()          # extra key/value pairs

    def inverse(self):
        inv = tuple(Gate(g.spec, g.sites, -g.power)
                    for g in reversed(self.gates))
        return Circuit(self.label + "^-1", inv)

    @property
    def support(self):
        out = []
        for g in self.gates:
            for s in g.sites:
                if s not in out:
                    out.append(s)
        return tuple(out)


def apply_circuit(state, circuit: Circuit, G: FiniteGroup = None):
    for g in circuit.gates:
        sim.apply_matrix(state, g.matrix(G), g.sites)
    return state


def circuit_matrix_on(circuit: Circuit, register, G=None):
    """Dense unitary of the circuit on the given register (small only)."""
    n = register.total_dim
    m = np.eye(n, dtype=complex)
    for g in circuit.gates:
        m = sim._embed(register, g.matrix(G), g.sites) @ m
    return m


class _Builder:
    def __init__(self, label):
        self.label = label
        self.gates = []
        self.layers = []
        self._mark = 0

    def add(self, kind, sites, power=1, params=()):
        self.gates.append(Gate(GateSpec(kind, params), tuple(sites), power))

    def layer(self, name):
        if self.gates and len(self.gates) > self._mark:
            self.layers.append((name, self._mark, len(self.gates)))
        self._mark = len(self.gates)

    def done(self, **meta):
        self.layer("_tail")
        layers = tuple((n, a, b) for n, a, b in self.layers if n != "_tail")
        return Circuit(self.label, tuple(self.gates), layers,
                       tuple(sorted(meta.items())))


# ---------------------------------------------------------------------------
# Abelian strings on the Z3 toric code.
# ---------------------------------------------------------------------------

def compile_abelian_string(lattice: Lattice, label, path=None,
                           dual_path=None) -> Circuit:
    """e: clock string along a vertex path; m: shift string across a dual path.

    path: OrientedPath (for e / em); dual_path: list of plaquette coords
    (for m / em), consecutive entries sharing an edge.
    """
    if label not in ("e", "m", "em"):
        raise ValueError(f"not an Abelian Z3 label: {label!r}")
    b = _Builder(f"z3-{label}")
    if label in ("e", "em"):
        if path is None:
            raise ValueError("e string needs a vertex path")
        for edge, sgn in path.edges:
            b.add("ClockZ", (edge.site,), power=sgn, params=(3,))
        b.layer("charge-string")
    if label in ("m", "em"):
        if dual_path is None:
            raise ValueError("m string needs a dual path")
        for site, sgn in dual_path_edges(lattice, dual_path):
            b.add("ShiftX", (site,), power=sgn, params=(3,))
        b.layer("flux-string")
    return b.done(model="Z3TC", anyon=label)


def dual_path_edges(lattice: Lattice, plaquettes):
    """Crossed (edge_site, sign) pairs for a walk over plaquette coords.

    Plaquette (x, y) is the square with corners (x, y) and (x+1, y+1).
    Crossing to the east passes edge N[x+1, y]; to the north, E[x, y+1];
    signs flip for the reverse crossings.
    """
    out = []
    for (x0, y0), (x1, y1) in zip(plaquettes, plaquettes[1:]):
        dx, dy = x1 - x0, y1 - y0
        if lattice.boundary == "torus":
            dx = (dx + lattice.Lx // 2) % lattice.Lx - lattice.Lx // 2
            dy = (dy + lattice.Ly // 2) % lattice.Ly - lattice.Ly // 2
        if (dx, dy) == (1, 0):
            site, sgn = f"N[{lattice.wrap(x0 + 1, y0)[0]},{lattice.wrap(x0 + 1, y0)[1]}]", +1
        elif (dx, dy) == (-1, 0):
            site, sgn = f"N[{lattice.wrap(x0, y0)[0]},{lattice.wrap(x0, y0)[1]}]", -1
        elif (dx, dy) == (0, 1):
            site, sgn = f"E[{lattice.wrap(x0, y0 + 1)[0]},{lattice.wrap(x0, y0 + 1)[1]}]", -1
        elif (dx, dy) == (0, -1):
            site, sgn = f"E[{lattice.wrap(x0, y0)[0]},{lattice.wrap(x0, y0)[1]}]", +1
        else:
            raise ValueError(f"dual step {dx, dy} is not a unit move")
        out.append((site, sgn))
    return out


# ---------------------------------------------------------------------------
# Charge conjugation defect line on the Z3 toric code.
# ---------------------------------------------------------------------------

def compile_cc_defect(path: OrientedPath) -> Circuit:
    """Un-gauge along the line, kick each uncovered vertex to its
    perpendicular edge with a controlled shift, re-gauge.

    Backward-traversed path edges are conjugated into the line frame first
    so the 1D chain always runs in the traversal direction.
    """
    b = _Builder("cc-defect")
    psites = [e.site for e, _ in path.edges]
    if not psites:
        return b.done(model="Z3TC", defect="cc", closed=path.closed)
    back = [s for s, (e, sgn) in zip(psites, path.edges) if sgn < 0]
    cov = {v: (e, eta) for (v, e), eta in zip(path.e_v, path.eta)}

    for s in back:
        b.add("Conj_C", (s,), params=(3,))
    b.layer("orient-frame")
    for a, c in zip(psites, psites[1:]):
        b.add("CX_qutrit", (a, c))
    b.layer("ungauge-line")
    n = len(psites)
    nv = len(path.vertices) - 1 if path.closed else len(path.vertices)
    for k in range(1, n + 1):
        v = path.vertices[k % nv] if path.closed else path.vertices[k]
        e, eta = cov[v]
        if e is None:
            continue
        # kick sign chosen so conjugating bulk stabilizers BY this circuit
        # (not its inverse) produces the charge-conjugation-dressed forms
        b.add("CX_qutrit", (psites[k - 1], e.site), power=-eta)
    b.layer("kick-perpendicular")
    for a, c in reversed(list(zip(psites, psites[1:]))):
        b.add("CX_qutrit", (a, c), power=-1)
    b.layer("regauge-line")
    for s in back:
        b.add("Conj_C", (s,), params=(3,))
    b.layer("restore-frame")
    return b.done(model="Z3TC", defect="cc", closed=path.closed)


# ---------------------------------------------------------------------------
# Charge ribbons: (d_Gamma/|G|) (prod Z_Gamma)_{ij} on a path.
# ---------------------------------------------------------------------------

def compile_charge_ribbon(G: FiniteGroup, irrep, i, j,
                          path: OrientedPath) -> OperatorTerm:
    """Matrix product of edge irrep actions with open indices fixed to (i, j).

    Backward-traversed edges contribute the inverse-element matrix.  The
    result is a single diagonal multi-site factor.
    """
    d = irrep.dimension
    if not (0 <= i < d and 0 <= j < d):
        raise ValueError("internal index out of range")
    sites = tuple(e.site for e, _ in path.edges)
    n = G.order
    total = n ** len(sites)
    diag = np.empty(total, dtype=complex)
    for idx in range(total):
        rem, vals = idx, []
        for _ in sites:
            vals.append(rem % n)
            rem //= n
        vals.reverse()
        m = np.eye(d, dtype=complex)
        for (e, sgn), g in zip(path.edges, vals):
            m = m @ np.conj(irrep.matrices[g if sgn > 0 else G.i(g)])
        diag[idx] = m[i, j]
    factor = np.diag(diag)
    return OperatorTerm(((sites, factor),), d / n)


# ---------------------------------------------------------------------------
# D(S3) flux ribbons as layered circuits on the qutrit+qubit edge encoding.
# ---------------------------------------------------------------------------
#
# S3 element index g = 2a + b encodes mu^a sigma^b on a qutrit (a) times a
# qubit (b), with mu = index 2, sigma = index 1 and sigma mu sigma = mu^-1.
# Crossing k of a flux-g ribbon right-multiplies the perpendicular edge by
# P_k g P_k^-1 where P_k = g(b_k) ... g(b_1) is the reversed-order product
# of the frame edge values up to and including step k.  Writing
# P_k = mu^{A_k} sigma^{B_k}, the exponents obey the 1D recurrences
#   A_k = a_k + (-1)^{b_k} A_{k-1},      B_k = b_k xor B_{k-1},
# so two nearest-neighbour chains fold the frame into normal form in place,
# single two-site kicks read (A_k, B_k) off frame site k, and the reversed
# chains unfold.  The qutrit accumulation chain must run before the qubit
# chain: its sign control uses the original qubit b_k, not the folded B_k.

def _s3_dec(g):
    return divmod(g, 2)


def _s3_pack(a, b):
    return 2 * (a % 3) + (b % 2)


def _s3_two_site(f):
    """36x36 permutation |g1,g2> -> |g1, f(g1,g2)> as a hashable tuple."""
    m = np.zeros((36, 36))
    for g1 in range(6):
        for g2 in range(6):
            m[g1 * 6 + f(g1, g2), g1 * 6 + g2] = 1.0
    return tuple(map(tuple, m))


def _acc_a(sign):
    return _s3_two_site(lambda g1, g2: _s3_pack(
        _s3_dec(g2)[0]
        + sign * (1 if _s3_dec(g2)[1] == 0 else -1) * _s3_dec(g1)[0],
        _s3_dec(g2)[1]))


_ACC_A = _acc_a(+1)
_ACC_A_INV = _acc_a(-1)
_CNOT_BB = _s3_two_site(lambda g1, g2: _s3_pack(
    _s3_dec(g2)[0], _s3_dec(g2)[1] ^ _s3_dec(g1)[1]))
# self-inverse permutation |mu^a sigma^b> -> |(mu^a sigma^b)^-1>
_INV6 = tuple(map(tuple, np.array(
    [[1, 0, 0, 0, 0, 0],
     [0, 1, 0, 0, 0, 0],
     [0, 0, 0, 0, 1, 0],
     [0, 0, 0, 1, 0, 0],
     [0, 0, 1, 0, 0, 0],
     [0, 0, 0, 0, 0, 1]], dtype=float)))


def _s3_kick(g):
    """Right-multiply the crossed edge by P g P^-1, P read off the frame site.

    For g = mu^p the conjugate is mu^{(-1)^B p}; for g = mu^q sigma it is
    mu^{2A + (-1)^B q} sigma.  Right-multiplying mu^a sigma^b by mu^c sigma^e
    gives mu^{a + (-1)^b c} sigma^{b xor e}.
    """
    p, e = _s3_dec(g)

    def f(g1, g2):
        A, B = _s3_dec(g1)
        a, b = _s3_dec(g2)
        c = (1 if B == 0 else -1) * p + (2 * A if e else 0)
        return _s3_pack(a + (1 if b == 0 else -1) * c, b ^ e)

    return _s3_two_site(f)


def compile_flux_ribbon(G: FiniteGroup, g, path: OrientedPath,
                        label=None) -> Circuit:
    """Five-layer flux ribbon for a fixed S3 element along a direct path.

    Layers: fold the frame qutrits into prefix normal form, fold the frame
    qubits, kick each covered vertex's perpendicular edge by the frame-
    conjugated flux, then unfold both chains in reverse.  Backward-traversed
    frame edges and head-end perpendicular edges are conjugated into the
    traversal frame first and restored at the end.

    Closed paths are rejected: a fixed-representative flux loop around a
    non-contractible cycle is not a symmetry of the non-Abelian model (the
    closed version needs the class sum); use compile_flux_loop for the
    contractible closed ribbon.
    """
    if G.name != "S3":
        raise ValueError("flux ribbon circuits are specialised to S3")
    if g not in (1, 2, 3, 4, 5):
        raise ValueError("flux label must be a non-identity element")
    if path.closed:
        raise ValueError("closed fixed-element flux ribbons are not "
                         "unitarily compilable; use compile_flux_loop")
    in_c3 = g in (2, 4)
    frame = [e.site for e, _ in path.edges]
    n = len(frame)
    b = _Builder(label or (f"s3-flux-{'c3' if in_c3 else 'c2'}"))
    if n == 0:
        return b.done(model="DS3", anyon="[C3]" if in_c3 else "[C2]",
                      element=int(g))
    cov = {v: (e, eta) for (v, e), eta in zip(path.e_v, path.eta)}
    kicks = []
    for k in range(1, n + 1):
        e, eta = cov.get(path.vertices[k], (None, 0))
        if e is not None:
            kicks.append((k, e.site, eta))
    flipped = [s for s, (e, sgn) in zip(frame, path.edges) if sgn < 0]
    flipped += [s for _, s, eta in kicks if eta < 0]
    for s in flipped:
        b.add("CustomMatrix", (s,), params=(_INV6,))
    b.layer("orient-frame")
    for k in range(1, n):
        b.add("CustomMatrix", (frame[k - 1], frame[k]), params=(_ACC_A,))
    b.layer("fold-qutrit")
    for k in range(1, n):
        b.add("CustomMatrix", (frame[k - 1], frame[k]), params=(_CNOT_BB,))
    b.layer("fold-qubit")
    kick = _s3_kick(g)
    for k, site, _eta in kicks:
        b.add("CustomMatrix", (frame[k - 1], site), params=(kick,))
    b.layer("kick-perpendicular")
    for k in reversed(range(1, n)):
        b.add("CustomMatrix", (frame[k - 1], frame[k]), params=(_CNOT_BB,))
    b.layer("unfold-qubit")
    for k in reversed(range(1, n)):
        b.add("CustomMatrix", (frame[k - 1], frame[k]), params=(_ACC_A_INV,))
    b.layer("unfold-qutrit")
    for s in reversed(flipped):
        b.add("CustomMatrix", (s,), params=(_INV6,))
    b.layer("restore-frame")
    return b.done(model="DS3", anyon="[C3]" if in_c3 else "[C2]",
                  element=int(g))


def compile_flux_loop(G: FiniteGroup, g, lattice: Lattice, vertex,
                      label=None) -> Circuit:
    """Contractible closed flux ribbon: the dual loop tight around a vertex.

    This is the single-element vertex operator (left/right translation on
    every incident edge), which commutes with every Hamiltonian term on the
    ground space, so the closed ribbon excites nothing.
    """
    b = _Builder(label or f"flux-loop-{G.name}")
    for e, role in lattice.edges_at(vertex):
        b.add("R_g" if role == "out" else "L_g", (e.site,), params=(g,))
    b.layer("around-vertex")
    return b.done(model=f"D{G.name}", element=int(g), closed=True)


# ---------------------------------------------------------------------------
# Doubled-semion ribbons on the triangular lattice.
# ---------------------------------------------------------------------------

IZ = tuple(map(tuple, (1j * np.diag([1.0, -1.0])).tolist()))


def semion_alpha_vertices(lattice: Lattice, members):
    """Vertices whose lone-Z parity is odd for the membrane: j such that an
    odd number of neighbors k have both shared triangle-completers in M."""
    members = set(lattice.wrap(*v) for v in members)
    out = []
    for j in lattice.vertices:
        cnt = 0
        for k in neighbors(lattice, j):
            common = set(neighbors(lattice, j)) & set(neighbors(lattice, k))
            if len(common & members) == 2:
                cnt += 1
        if cnt % 2 == 1:
            out.append(j)
    return sorted(out)


def semion_decoration_edges(lattice: Lattice, members):
    """Edges whose two triangle-completers straddle the membrane boundary."""
    members = set(lattice.wrap(*v) for v in members)
    out = []
    for e in lattice.edges:
        common = set(neighbors(lattice, e.tail)) & set(neighbors(lattice, e.head))
        if len(common & members) == 1:
            out.append(e.site)
    return sorted(out)


def _membrane_angle(lattice: Lattice, members, site):
    """Angle of an edge's midpoint around the membrane centroid (embedded)."""
    def emb(v):
        return (v[0] + 0.5 * v[1], v[1] * math.sqrt(3) / 2)

    cx = sum(emb(v)[0] for v in members) / len(members)
    cy = sum(emb(v)[1] for v in members) / len(members)
    e = lattice.edge(site)
    mx = (emb(e.tail)[0] + emb(e.head)[0]) / 2
    my = (emb(e.tail)[1] + emb(e.head)[1]) / 2
    return math.atan2(my - cy, mx - cx)


def _vertex_angle(members, v):
    """Angle of a vertex around the membrane centroid (embedded)."""
    def emb(u):
        return (u[0] + 0.5 * u[1], u[1] * math.sqrt(3) / 2)

    cx = sum(emb(u)[0] for u in members) / len(members)
    cy = sum(emb(u)[1] for u in members) / len(members)
    px, py = emb(v)
    return math.atan2(py - cy, px - cx)


def open_semion_ribbon(lattice: Lattice, which, membrane, arc,
                       pairing="clockwise") -> Circuit:
    """Open ribbon: the closed construction truncated to an angular arc.

    arc = (a0, a1): keep gates whose site midpoint lies in the
    counterclockwise interval from a0 to a1 around the membrane centroid.
    Each cut leaves one vertex and one plaquette excitation behind.
    """
    closed = compile_semion_ribbon(lattice, which, membrane, pairing)
    members = [lattice.wrap(*v) for v in membrane]
    a0, a1 = arc
    span = (a1 - a0) % (2 * math.pi)

    def keep(g):
        a = _membrane_angle(lattice, members, g.sites[0])
        return (a - a0) % (2 * math.pi) <= span

    kept = sorted((g for g in closed.gates if keep(g)),
                  key=lambda g: (_membrane_angle(lattice, members,
                                                 g.sites[0]) - a0)
                  % (2 * math.pi))
    return Circuit(closed.label + "-open", tuple(kept),
                   meta=closed.meta + (("arc", (round(a0, 6),
                                                round(a1, 6))),))


def compile_semion_ribbon(lattice: Lattice, which, membrane,
                          pairing="clockwise") -> Circuit:
    """Closed s / s-bar ribbon from a vertex membrane; ss-bar from a path.

    which = "ss̄" (or "ssbar") with membrane given as an edge-site list is
    the plain Z string.  For s / s-bar the membrane is a vertex set; the
    two pairings of the corner vertices differ by a closed Z loop.
    """
    b = _Builder(f"semion-{which}")
    if which in ("ssbar", "ss̄", "sss̄", "ss"):
        for site in membrane:
            b.add("ClockZ", (site,), params=(2,))
        b.layer("z-string")
        return b.done(model="DoubledSemion", anyon="ssbar")
    if which not in ("s", "sbar", "s̄"):
        raise ValueError(f"unknown semion label {which!r}")
    members = [lattice.wrap(*v) for v in membrane]
    region_set = set(members)
    boundary = [e for e in lattice.edges
                if (e.tail in region_set) != (e.head in region_set)]
    for e in sorted(boundary, key=lambda e: e.site):
        b.add("ShiftX", (e.site,), params=(2,))
    b.layer("membrane-boundary")
    for site in semion_decoration_edges(lattice, members):
        b.add("Phase_R", (site,))
    b.layer("fractionalization")
    alpha = _order_alpha(lattice, semion_alpha_vertices(lattice, members),
                         members)
    flip = (which != "s") ^ (pairing != "clockwise")
    if flip and alpha:
        alpha = alpha[1:] + alpha[:1]
    for a, c in zip(alpha[0::2], alpha[1::2]):
        for site in _boundary_walk_edges(lattice, a, c, members):
            b.add("CustomMatrix", (site,), params=(IZ,))
    b.layer("corner-pairing")
    return b.done(model="DoubledSemion", anyon=which, pairing=pairing)


def _order_alpha(lattice: Lattice, alpha, members):
    """Cyclic ordering of corner vertices by angle around the membrane."""
    if not alpha:
        return []
    cx = sum(v[0] for v in members) / len(members)
    cy = sum(v[1] for v in members) / len(members)

    def key(v):
        # embed the sheared lattice into the plane for a faithful angle
        px = v[0] + 0.5 * v[1]
        py = v[1] * math.sqrt(3) / 2
        qx = cx + 0.5 * cy
        qy = cy * math.sqrt(3) / 2
        return math.atan2(py - qy, px - qx)

    return sorted(alpha, key=key)


def _boundary_walk_edges(lattice: Lattice, a, c, members):
    """Edge path from a to c winding counterclockwise around the membrane.

    Restricting the walk to the counterclockwise angular sector from a to c
    makes the two pairings of a corner pair trace complementary arcs, so
    they differ by a closed Z loop around the membrane.
    """
    from collections import deque

    region_set = set(members)
    allowed = set()
    for v in lattice.vertices:
        if v in region_set or any(w in region_set
                                  for w in neighbors(lattice, v)):
            allowed.add(v)
    span = (_vertex_angle(members, c) - _vertex_angle(members, a)) \
        % (2 * math.pi)
    allowed = {v for v in allowed
               if (_vertex_angle(members, v)
                   - _vertex_angle(members, a)) % (2 * math.pi)
               <= span + 1e-9} | {a, c}
    def crosses_membrane(u, w):
        # an edge whose both triangle-completers are membrane vertices cuts
        # straight between them; the pairing string must go around instead
        common = set(neighbors(lattice, u)) & set(neighbors(lattice, w))
        return len(common & region_set) == 2

    prev = {a: None}
    dq = deque([a])
    while dq:
        u = dq.popleft()
        if u == c:
            break
        for w in neighbors(lattice, u):
            if w in allowed and w not in prev and not crosses_membrane(u, w):
                prev[w] = u
                dq.append(w)
    if c not in prev:
        raise ValueError(f"no boundary path from {a} to {c}")
    sites = []
    u = c
    while prev[u] is not None:
        e, _ = lattice.edge_between(prev[u], u)
        sites.append(e.site)
        u = prev[u]
    return list(reversed(sites))


# ---------------------------------------------------------------------------
# Sublattice flux ribbons: CZ staircases (D4-like and quaternion variants).
# ---------------------------------------------------------------------------
#
# A flux membrane for one color is the product of that color's vertex
# stabilizers over a set of same-color vertices.  The X factors cancel in
# the interior, leaving an X loop on the color's boundary sublattice edges.
# The leftover decoration couples boundary sites of the other two colors;
# gauging one of those colors collapses its site-site CZ pairs onto single
# site-edge CZs ("rung" edges), and pushing the remaining single-site Z
# actions through the last gauging map turns each into a Z string ending on
# a chosen endpoint site: a dense CZ staircase between the two other
# colors' edges.

def d4_membrane_cycle(lattice: Lattice, color, members):
    """Boundary data of a same-color membrane.

    Returns (x_edges, cycle): x_edges are the membrane-color sublattice
    edges crossing the boundary; cycle is the closed alternating sequence
    of other-color boundary sites obtained by walking the surviving CZ
    decoration (one CZ per consecutive pair), starting deterministically.
    """
    from . import models

    members = {lattice.wrap(*v) for v in members}
    for v in members:
        if lattice.color(v) != color:
            raise ValueError("membrane must live on the chosen sublattice")
    x_edges = sorted(e.site for e in sublattice_edges(lattice, color)
                     if (e.tail in members) != (e.head in members))
    surv = set()
    for v in members:
        ring = models._hexagon_ring(lattice, v)
        if ring is None:
            raise ValueError(f"membrane vertex {v} has a clipped hexagon")
        for k in range(6):
            surv ^= {frozenset((ring[k], ring[(k + 1) % 6]))}
    adj = {}
    for pair in surv:
        a, b = tuple(pair)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(ws) != 2 for ws in adj.values()):
        raise ValueError("membrane boundary is not a simple cycle")
    start = min(adj)
    cycle = [start, min(adj[start])]
    while True:
        nxt = [w for w in adj[cycle[-1]] if w != cycle[-2]][0]
        if nxt == start:
            break
        cycle.append(nxt)
    if len(cycle) != len(adj):
        raise ValueError("membrane boundary is not connected")
    return x_edges, cycle


def _x_edge_flanks(lattice: Lattice, color, x_edges):
    """Map each boundary X edge to the two boundary sites it passes between
    (the common lattice neighbors of its endpoints)."""
    out = {}
    sub = {e.site: e for e in sublattice_edges(lattice, color)}
    for s in x_edges:
        e = sub[s]
        common = set(neighbors(lattice, e.tail)) & set(
            neighbors(lattice, e.head))
        if len(common) != 2:
            raise ValueError(f"boundary edge {s} has no unique crossing")
        out[s] = common
    return out


def d4_staircase_data(lattice: Lattice, color, members, endpoint=None):
    """Geometry of the staircase: (x_edges, bs, gs, e_g, e_b, flanks).

    bs: the pushed-color boundary sites in cycle order starting at the
    endpoint; gs: the interleaved other-color sites (gs[i] follows bs[i]).
    e_g[i]: the rung edge collapsed from bs[i]'s two flanking gs sites.
    e_b[i]: the pushed-color edge between bs[i] and bs[i+1].
    """
    x_edges, cycle = d4_membrane_cycle(lattice, color, members)
    if endpoint is None:
        endpoint = cycle[0]
    endpoint = lattice.wrap(*endpoint)
    if endpoint not in cycle:
        raise ValueError(f"endpoint {endpoint} is not on the membrane "
                         "boundary")
    i = cycle.index(endpoint)
    cycle = cycle[i:] + cycle[:i]
    bs, gs = cycle[0::2], cycle[1::2]
    m = len(bs)
    e_g = [_sublattice_edge_between(lattice, gs[i - 1], gs[i]).site
           for i in range(m)]
    e_b = [_sublattice_edge_between(lattice, bs[i], bs[(i + 1) % m]).site
           for i in range(m)]
    return (x_edges, bs, gs, e_g, e_b,
            _x_edge_flanks(lattice, color, x_edges))


def compile_d4_flux_ribbon(lattice: Lattice, color, members, endpoint=None,
                           window=None, twisted=False) -> Circuit:
    """X loop on the color's boundary edges plus the CZ staircase.

    Each rung edge e_g[i] is CZ-coupled to every pushed-color edge between
    its site bs[i] and the endpoint bs[0], walking the boundary backward:
    CZ(e_g[i], e_b[j]) for j < i.  For closed ribbons the endpoint residue
    (a Z loop on the rung edges controlled by the endpoint site) is a
    product of enclosed plaquette stabilizers and is omitted.

    window=(i0, i1) keeps only the boundary stretch between pushed-color
    indices i0 and i1: the open ribbon, with its non-local strings
    terminated on bs[i0].  twisted=True adds the single-color semion R
    decorations (quaternion-flux variant).
    """
    x_edges, bs, gs, e_g, e_b, flanks = d4_staircase_data(
        lattice, color, members, endpoint)
    m = len(bs)
    b = _Builder(f"{'q8' if twisted else 'd4'}-flux-{color}")
    if window is None:
        lo, hi = 0, m - 1
        kept_sites = set(bs) | set(gs)
    else:
        lo, hi = window
        if not (0 <= lo < hi < m):
            raise ValueError("window must satisfy 0 <= i0 < i1 < len(bs)")
        kept_sites = set(bs[lo:hi + 1]) | set(gs[lo:hi])
        x_edges = [s for s in x_edges if flanks[s] <= kept_sites]
    for s in x_edges:
        b.add("ShiftX", (s,), params=(2,))
    b.layer("membrane-boundary")
    if twisted:
        members_w = [lattice.wrap(*v) for v in members]
        for site in _sub_semion_decoration(lattice, color, members_w):
            b.add("Phase_R", (site,))
        b.layer("fractionalization")
    for i in range(lo + 1, hi + 1):
        for j in range(lo, i):
            b.add("CZ", tuple(sorted((e_g[i], e_b[j]))))
    b.layer("cz-staircase")
    return b.done(model="Q8" if twisted else "DD4", color=color,
                  closed=window is None, endpoint=tuple(bs[lo]))


def d4_endpoint_residue(lattice: Lattice, color, members, endpoint=None):
    """Rung-edge sites of the dropped endpoint factor of a closed ribbon.

    The factor is a Z loop over all rung edges (controlled on the endpoint
    site); on the gauged model it is a product of the plaquette stabilizers
    enclosed by the membrane, hence trivial on the ground space.
    """
    _, _, _, e_g, _, _ = d4_staircase_data(lattice, color, members, endpoint)
    out = set()
    for s in e_g:
        out ^= {s}
    return sorted(out)


def _sub_semion_decoration(lattice: Lattice, color, members):
    """Same-color sublattice edges whose completers straddle the membrane."""
    members = set(members)
    subs = sublattice_edges(lattice, color)
    sub_adj = {}
    for e in subs:
        sub_adj.setdefault(e.tail, set()).add(e.head)
        sub_adj.setdefault(e.head, set()).add(e.tail)
    out = []
    for e in subs:
        common = sub_adj.get(e.tail, set()) & sub_adj.get(e.head, set())
        inside = common & members
        if inside and not (common <= members):
            out.append(e.site)
    return sorted(out)


def _sublattice_edge_between(lattice: Lattice, u, w):
    color = lattice.color(u)
    if lattice.color(w) != color:
        raise KeyError("vertices of different colors")
    for e in sublattice_edges(lattice, color):
        if {e.tail, e.head} == {lattice.wrap(*u), lattice.wrap(*w)}:
            return e
    raise KeyError(f"no sublattice edge between {u} and {w}")


# ---------------------------------------------------------------------------
# Portable text export.
# ---------------------------------------------------------------------------

def _param_repr(p):
    if isinstance(p, (int, float)):
        return repr(p)
    if isinstance(p, tuple):
        return "[" + ";".join(_param_repr(q) for q in p) + "]"
    if hasattr(p, "label"):
        return str(p.label)
    if isinstance(p, complex):
        return f"{p.real!r}{p.imag:+}j"
    return str(p)


def export_circuit_text(circuit: Circuit) -> str:
    lines = [f"CIRCUIT {circuit.label}"]
    for k, v in circuit.meta:
        lines.append(f"META {k} {v}")
    marks = {a: n for n, a, _ in circuit.layers}
    for idx, g in enumerate(circuit.gates):
        if idx in marks:
            lines.append(f"LAYER {marks[idx]}")
        params = ",".join(_param_repr(p) for p in g.spec.params)
        head = f"GATE {g.spec.kind}"
        if params:
            head += f"({params})"
        if g.power != 1:
            head += f"^{g.power}"
        lines.append(head + " @ " + " ".join(str(s) for s in g.sites))
    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()[:16]
    return body + f"CHECKSUM {digest}\n"
