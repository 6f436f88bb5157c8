"""Dense mixed-radix statevector simulation.

Sites may have heterogeneous local dimensions (qubits, qutrits, |G|-level
group registers).  Everything is complex double precision, dense, with a
configurable amplitude budget (default 2^24) so a mis-sized lattice errors
out instead of silently thrashing.

Gate vocabulary covers the group-valued Paulis (L_g, R_g, Z_{Gamma,ij}, T_g),
the qutrit clock/shift/conjugation gates, the qubit phase gate
R = e^{i pi/4 Z}, CZ / CCZ / qutrit CX, and the controlled group
multiplications CL, CR plus their automorphism-twisted versions CO_L, CO_R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .groups import FiniteGroup, Irrep, Automorphism

DEFAULT_BUDGET = 2 ** 24

GATE_KINDS = (
    "L_g", "R_g", "Z_Gij", "T_g", "ClockZ", "ShiftX", "Conj_C", "Phase_R",
    "CZ", "CCZ", "CX_qutrit", "CL", "CR", "CO_L", "CO_R", "CustomMatrix",
)


class BudgetError(RuntimeError):
    pass


class PostselectionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Register:
    sites: tuple  # ((site_id, dim), ...)

    def __post_init__(self):
        ids = [s for s, _ in self.sites]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate site ids in register")

    @property
    def site_ids(self):
        return tuple(s for s, _ in self.sites)

    @property
    def dims(self):
        return tuple(d for _, d in self.sites)

    @property
    def total_dim(self):
        return int(np.prod(self.dims, dtype=np.int64)) if self.sites else 1

    def index(self, site_id):
        for k, (s, _) in enumerate(self.sites):
            if s == site_id:
                return k
        raise KeyError(f"site {site_id!r} not in register")

    def dim_of(self, site_id):
        return self.sites[self.index(site_id)][1]


def make_register(sites, budget=DEFAULT_BUDGET):
    reg = Register(tuple((s, int(d)) for s, d in sites))
    if reg.total_dim > budget:
        raise BudgetError(
            f"register dimension {reg.total_dim} exceeds budget {budget}")
    return reg


@dataclass
class State:
    register: Register
    amplitudes: np.ndarray
    norm_log: float = 0.0  # accumulated log of post-selection weights

    def copy(self):
        return State(self.register, self.amplitudes.copy(), self.norm_log)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


def _local_vector(dim, what):
    if isinstance(what, np.ndarray):
        v = what.astype(complex)
    elif what in ("e", 0):
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
    elif what == "I" or what == "+":
        v = np.full(dim, 1.0 / math.sqrt(dim), dtype=complex)
    elif isinstance(what, int):
        v = np.zeros(dim, dtype=complex)
        v[what] = 1.0
    else:
        raise ValueError(f"unknown local state {what!r}")
    if v.shape != (dim,):
        raise ValueError(f"local state has dim {v.shape}, site has dim {dim}")
    return v


def make_product_state(register: Register, assignment) -> State:
    """Product state from a site->label map.

    Labels: basis index, "e" (basis 0), "I"/"+" (uniform superposition),
    or an explicit local vector.  Missing sites default to "e".
    """
    amp = np.ones(1, dtype=complex)
    for site_id, dim in register.sites:
        v = _local_vector(dim, assignment.get(site_id, "e"))
        amp = np.kron(amp, v)
    amp /= np.linalg.norm(amp)
    return State(register, amp)


# ---------------------------------------------------------------------------
# Gate matrices.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GateSpec:
    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")


def _perm_matrix(perm):
    n = len(perm)
    m = np.zeros((n, n), dtype=complex)
    for src, dst in enumerate(perm):
        m[dst, src] = 1.0
    return m


def _ctrl_perm(dims, perm_fn):
    """Two-site gate |g,h> -> |g, perm_fn(g)(h)>, as a dense matrix."""
    dc, dt = dims
    m = np.zeros((dc * dt, dc * dt), dtype=complex)
    for g in range(dc):
        for h in range(dt):
            m[g * dt + perm_fn(g, h), g * dt + h] = 1.0
    return m


def gate_matrix(spec: GateSpec, G: FiniteGroup = None) -> np.ndarray:
    """Dense matrix for a gate spec; G is required for group-valued kinds."""
    k = spec.kind
    p = spec.params
    if k == "L_g":                       # |h> -> |gh>
        (g,) = p
        return _perm_matrix([G.m(g, h) for h in range(G.order)])
    if k == "R_g":                       # |h> -> |h gbar>
        (g,) = p
        return _perm_matrix([G.m(h, G.i(g)) for h in range(G.order)])
    if k == "Z_Gij":                     # diagonal Gamma_ij(h)
        irrep, i, j = p
        if not (0 <= i < irrep.dimension and 0 <= j < irrep.dimension):
            raise ValueError("irrep entry index out of range")
        return np.diag([irrep.entry(i, j, h) for h in range(G.order)])
    if k == "T_g":                       # basis projector
        (g,) = p
        m = np.zeros((G.order, G.order), dtype=complex)
        m[g, g] = 1.0
        return m
    if k == "ClockZ":
        d = p[0] if p else 3
        w = np.exp(2j * np.pi / d)
        return np.diag([w ** n for n in range(d)])
    if k == "ShiftX":
        d = p[0] if p else 3
        return _perm_matrix([(n + 1) % d for n in range(d)])
    if k == "Conj_C":
        d = p[0] if p else 3
        return _perm_matrix([(-n) % d for n in range(d)])
    if k == "Phase_R":                   # R = e^{i pi/4 Z} on a qubit
        return np.diag([np.exp(1j * np.pi / 4), np.exp(-1j * np.pi / 4)])
    if k == "CZ":
        return np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)
    if k == "CCZ":
        d = np.ones(8, dtype=complex)
        d[7] = -1.0
        return np.diag(d)
    if k == "CX_qutrit":                 # |n,m> -> |n, m+n mod 3>
        return _ctrl_perm((3, 3), lambda n, m: (m + n) % 3)
    if k == "CL":                        # |g,h> -> |g, gh>
        return _ctrl_perm((G.order, G.order), lambda g, h: G.m(g, h))
    if k == "CR":                        # |g,h> -> |g, h gbar>
        return _ctrl_perm((G.order, G.order), lambda g, h: G.m(h, G.i(g)))
    if k == "CO_L":                      # |g,h> -> |g, Omega(g) h>
        (O,) = p
        return _ctrl_perm((G.order, G.order),
                          lambda g, h: G.m(G.m(O.map[g], G.i(g)), h))
    if k == "CO_R":                      # |g,h> -> |g, h Omega(g)^-1>
        (O,) = p
        return _ctrl_perm((G.order, G.order),
                          lambda g, h: G.m(h, G.i(G.m(O.map[g], G.i(g)))))
    if k == "CustomMatrix":
        (m,) = p
        return np.asarray(m, dtype=complex)
    raise ValueError(k)


# ---------------------------------------------------------------------------
# State evolution.
# ---------------------------------------------------------------------------

def apply_matrix(state: State, matrix: np.ndarray, sites) -> State:
    """Apply a dense matrix to the listed sites (in the given tensor order)."""
    reg = state.register
    if isinstance(sites, (str, int)) or not isinstance(sites, (list, tuple)):
        sites = (sites,)
    axes = [reg.index(s) for s in sites]
    dims = reg.dims
    d_t = int(np.prod([dims[a] for a in axes]))
    if matrix.shape != (d_t, d_t):
        raise ValueError(f"gate shape {matrix.shape} does not match targets "
                         f"of joint dim {d_t}")
    psi = state.amplitudes.reshape(dims)
    psi = np.moveaxis(psi, axes, range(len(axes)))
    moved_shape = psi.shape
    psi = psi.reshape(d_t, -1)
    psi = matrix @ psi
    psi = psi.reshape(moved_shape)
    psi = np.moveaxis(psi, range(len(axes)), axes)
    state.amplitudes = np.ascontiguousarray(psi).reshape(-1)
    return state


def apply(state: State, spec_or_matrix, sites, G: FiniteGroup = None) -> State:
    if isinstance(spec_or_matrix, GateSpec):
        m = gate_matrix(spec_or_matrix, G)
    else:
        m = np.asarray(spec_or_matrix, dtype=complex)
    return apply_matrix(state, m, sites)


# ---------------------------------------------------------------------------
# Operators: single product terms and sums of terms.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperatorTerm:
    """scalar * product of factors; each factor is (sites, matrix).

    `sites` may be a single site id or a tuple for a multi-site factor.
    Factor supports must be pairwise disjoint.
    """
    factors: tuple
    scalar: complex = 1.0

    def __post_init__(self):
        used = []
        for sites, _ in self.factors:
            for s in (sites if isinstance(sites, tuple) else (sites,)):
                used.append(s)
        if len(set(used)) != len(used):
            raise ValueError("overlapping factor supports in OperatorTerm")

    @property
    def support(self):
        out = []
        for sites, _ in self.factors:
            out.extend(sites if isinstance(sites, tuple) else (sites,))
        return tuple(out)


@dataclass(frozen=True)
class OperatorSum:
    terms: tuple  # of OperatorTerm

    @property
    def support(self):
        out = []
        for t in self.terms:
            for s in t.support:
                if s not in out:
                    out.append(s)
        return tuple(out)


def apply_term(state: State, term: OperatorTerm) -> State:
    """In-place application of term (may be non-unitary; no renormalization)."""
    for sites, mat in term.factors:
        apply_matrix(state, np.asarray(mat, dtype=complex), sites)
    state.amplitudes *= term.scalar
    return state


def apply_operator(state: State, op) -> State:
    if isinstance(op, OperatorTerm):
        return apply_term(state, op)
    acc = None
    for t in op.terms:
        branch = apply_term(state.copy(), t)
        acc = branch.amplitudes if acc is None else acc + branch.amplitudes
    state.amplitudes = acc
    return state


def expectation(state: State, op) -> complex:
    work = apply_operator(state.copy(), op)
    return complex(np.vdot(state.amplitudes, work.amplitudes))


def project_site(state: State, site, local_state, tol=1e-14):
    """Post-select one site onto a local state; returns (state, weight).

    The surviving site is removed from the register.  Weight below tol means
    the post-selection is inconsistent and raises.
    """
    reg = state.register
    ax = reg.index(site)
    dims = reg.dims
    v = _local_vector(dims[ax], local_state)
    psi = state.amplitudes.reshape(dims)
    psi = np.tensordot(v.conj(), psi, axes=([0], [ax]))
    weight = float(np.vdot(psi, psi).real)
    if weight < tol:
        raise PostselectionError(
            f"post-selection weight {weight:.3e} below {tol:.1e} at {site!r}")
    new_sites = tuple(s for k, s in enumerate(reg.sites) if k != ax)
    new_state = State(Register(new_sites),
                      np.ascontiguousarray(psi).reshape(-1) / math.sqrt(weight),
                      state.norm_log + math.log(weight))
    return new_state, weight


def add_site(state: State, site_id, dim, local_state="e",
             budget=DEFAULT_BUDGET) -> State:
    """Append a fresh site in a product local state (grows the register)."""
    reg = state.register
    if reg.total_dim * dim > budget:
        raise BudgetError(f"register would exceed budget {budget}")
    v = _local_vector(dim, local_state)
    amp = np.kron(state.amplitudes, v)
    return State(Register(reg.sites + ((site_id, dim),)), amp, state.norm_log)


# ---------------------------------------------------------------------------
# Dense-operator utilities (small registers only).
# ---------------------------------------------------------------------------

def dense_operator(register: Register, op) -> np.ndarray:
    """Dense matrix of an OperatorTerm/OperatorSum on the full register."""
    n = register.total_dim
    terms = op.terms if isinstance(op, OperatorSum) else (op,)
    out = np.zeros((n, n), dtype=complex)
    for term in terms:
        acc = np.eye(1, dtype=complex)
        placed = {}
        for sites, mat in term.factors:
            key = sites if isinstance(sites, tuple) else (sites,)
            placed[key] = np.asarray(mat, dtype=complex)
        # build site-ordered kron, merging multi-site factors by permutation
        m = _kron_place(register, placed)
        out += term.scalar * m
    return out


def _kron_place(register: Register, placed):
    dims = register.dims
    ids = register.site_ids
    n = register.total_dim
    m = np.eye(n, dtype=complex)
    for sites, mat in placed.items():
        full = _embed(register, mat, sites)
        m = full @ m
    return m


def _embed(register: Register, mat, sites):
    """Embed a k-site matrix into the full register (dense)."""
    dims = register.dims
    n = register.total_dim
    axes = [register.index(s) for s in sites]
    d_t = int(np.prod([dims[a] for a in axes]))
    op = np.asarray(mat, dtype=complex).reshape(
        [dims[a] for a in axes] * 2)
    # build as tensor with identity on the rest
    eye_axes = [k for k in range(len(dims)) if k not in axes]
    d_r = int(np.prod([dims[a] for a in eye_axes], dtype=np.int64)) if eye_axes else 1
    full = np.kron(op.reshape(d_t, d_t), np.eye(d_r, dtype=complex))
    # full currently acts on (targets..., rest...); permute into register order
    order = axes + eye_axes
    perm = np.argsort(order)
    t = full.reshape([dims[a] for a in order] * 2)
    nd = len(dims)
    t = np.transpose(t, list(perm) + [nd + p for p in perm])
    return np.ascontiguousarray(t).reshape(n, n)


def basis_columns(register: Register, chunk=4096):
    """Yield (start, identity-chunk) pairs covering the full basis."""
    n = register.total_dim
    for start in range(0, n, chunk):
        width = min(chunk, n - start)
        block = np.zeros((n, width), dtype=complex)
        block[start:start + width, :] = np.eye(width)
        yield start, block


def apply_matrix_stack(stack, matrix, sites, register: Register):
    """Apply a gate to a (total_dim, batch) stack of state columns."""
    dims = register.dims
    batch = stack.shape[1]
    axes = [register.index(s) for s in sites] if isinstance(sites, (list, tuple)) \
        else [register.index(sites)]
    d_t = int(np.prod([dims[a] for a in axes]))
    psi = stack.reshape(tuple(dims) + (batch,))
    psi = np.moveaxis(psi, axes, range(len(axes)))
    moved = psi.shape
    psi = psi.reshape(d_t, -1)
    psi = matrix @ psi
    psi = psi.reshape(moved)
    psi = np.moveaxis(psi, range(len(axes)), axes)
    return np.ascontiguousarray(psi).reshape(-1, batch)


def operator_frobenius_distance(register: Register, apply_a, apply_b,
                                chunk=2048):
    """Exact ||A - B||_F via streaming basis columns through two pipelines.

    apply_a / apply_b: callables taking a (total_dim, batch) stack and
    returning the transformed stack.
    """
    acc = 0.0
    for _, block in basis_columns(register, chunk):
        d = apply_a(block.copy()) - apply_b(block.copy())
        acc += float(np.vdot(d, d).real)
    return math.sqrt(acc)


# ---------------------------------------------------------------------------
# Snapshot dump (debugging aid).
# ---------------------------------------------------------------------------

def dump_state(state: State, path):
    """Text header (site list) + little-endian f64 re/im pairs."""
    with open(path, "wb") as f:
        header = "sites " + " ".join(
            f"{sid}:{d}" for sid, d in state.register.sites)
        f.write((header + "\n").encode())
        f.write(f"norm_log {state.norm_log!r}\n".encode())
        f.write(b"data\n")
        interleaved = np.empty(2 * state.amplitudes.size, dtype="<f8")
        interleaved[0::2] = state.amplitudes.real
        interleaved[1::2] = state.amplitudes.imag
        f.write(interleaved.tobytes())
