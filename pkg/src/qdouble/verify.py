"""Stabilizer reports, braiding phases, readouts, and brute-force oracles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup
from . import sim
from .sim import OperatorTerm, Register, gate_matrix
from .ribbons import Circuit, circuit_matrix_on


@dataclass(frozen=True)
class StabilizerReport:
    values: tuple     # of (label, complex expectation)
    excited: tuple    # labels with |value - expected| > tol
    tol: float

    def lines(self):
        flagged = set(self.excited)
        out = []
        for label, v in self.values:
            flag = "excited" if label in flagged else "ok"
            out.append(f"{label} {v.real:+.12f} {v.imag:+.12f} {flag}")
        return out


def stabilizer_report(state, terms, tol=1e-8) -> StabilizerReport:
    """terms: iterable of objects with .label, .op (OperatorTerm or
    OperatorSum) and .expected."""
    values, excited = [], []
    for t in sorted(terms, key=lambda t: t.label):
        if hasattr(t.op, "terms"):
            v = sim.expectation(state, t.op)
        else:
            v = sim.expectation(state, sim.OperatorSum((t.op,)))
        values.append((t.label, complex(v)))
        if abs(v - t.expected) > tol:
            excited.append(t.label)
    return StabilizerReport(tuple(values), tuple(excited), tol)


@dataclass(frozen=True)
class BraidResult:
    scalar: bool
    phase: complex       # meaningful when scalar
    residual: float      # ||R2 R1 - phase R1 R2||_F on the support


def _dense_on(register, op, G=None):
    if isinstance(op, Circuit):
        return circuit_matrix_on(op, register, G)
    if isinstance(op, OperatorTerm):
        m = np.eye(register.total_dim, dtype=complex) * op.scalar
        for sites, mat in op.factors:
            m = sim._embed(register, np.asarray(mat, dtype=complex),
                           list(sites)) @ m
        return m
    raise TypeError(f"cannot densify {type(op).__name__}")


def commutation_phase(ribbon1, ribbon2, register: Register,
                      G: FiniteGroup = None, tol=1e-8) -> BraidResult:
    """phase φ with R2 R1 = φ R1 R2 on the joint support, if scalar."""
    r1 = _dense_on(register, ribbon1, G)
    r2 = _dense_on(register, ribbon2, G)
    lhs = r2 @ r1
    rhs = r1 @ r2
    num = np.vdot(rhs, lhs)
    den = np.vdot(rhs, rhs)
    if den == 0:
        return BraidResult(False, 0j, float(np.linalg.norm(lhs)))
    phase = num / den
    resid = float(np.linalg.norm(lhs - phase * rhs))
    if resid <= tol * max(1.0, np.linalg.norm(rhs)):
        p = phase / abs(phase) if abs(phase) > 0 else phase
        return BraidResult(True, complex(p), resid)
    return BraidResult(False, complex(phase), resid)


_OMEGA3 = np.exp(2j * np.pi / 3)
_ALLOWED_READOUT = (1.0 + 0j, _OMEGA3, _OMEGA3.conjugate())


def internal_state_readout(state, endpoint_term, tol=1e-8):
    """Snap the endpoint-term expectation to {1, ω, ω̄}.

    Returns (snapped_value, raw_residual, is_eigenstate).  The residual is
    ||T|ψ⟩ − v|ψ⟩||, so a large residual flags a non-eigenstate instead of
    silently rounding.
    """
    if hasattr(endpoint_term, "op"):
        endpoint_term = endpoint_term.op
    phi = state.copy()
    sim.apply_term(phi, endpoint_term)
    v = np.vdot(state.amplitudes, phi.amplitudes) / state.norm() ** 2
    snapped = min(_ALLOWED_READOUT, key=lambda w: abs(w - v))
    resid = float(np.linalg.norm(phi.amplitudes - v * state.amplitudes)
                  / state.norm())
    ok = abs(snapped - v) <= tol and resid <= max(tol, 1e-6)
    return snapped, resid, ok


def bombin_charge_oracle(G: FiniteGroup, irrep, i, j, path) -> OperatorTerm:
    """Brute-force ribbon: (d/|G|) Σ_g conj(Γ(g))_ij Σ_{Πh_k=g} Π T_{h_k}.

    Each T_{h} is the rank-one projector |h⟩⟨h| on its edge; reversed path
    edges take the inverse assignment, mirroring the compiled convention.
    """
    n = G.order
    edges = list(path.edges)
    if n ** len(edges) > 10 ** 6:
        raise ValueError("path too long for the brute-force sum")
    d = irrep.dimension
    sites = tuple(e.site for e, _ in edges)
    total = n ** len(sites)
    diag = np.zeros(total, dtype=complex)
    for idx in range(total):
        rem, vals = idx, []
        for _ in sites:
            vals.append(rem % n)
            rem //= n
        vals.reverse()
        g = G.identity
        for (e, sgn), h in zip(edges, vals):
            g = G.m(g, h if sgn > 0 else G.i(h))
        diag[idx] = np.conj(irrep.matrices[g][i, j])
    return OperatorTerm(((sites, np.diag(diag)),), d / n)


class Monomial:
    """Generalized Pauli monomial: phase * prod_site X^x Z^z (qudit dim d).

    Supports exact Heisenberg conjugation through permutation-phase gates
    (controlled shifts, inversion, clocks) without dense register matrices.
    """

    def __init__(self, d, powers=None, phase=1.0 + 0j):
        self.d = d
        self.powers = {s: (x % d, z % d) for s, (x, z) in (powers or {}).items()
                       if (x % d, z % d) != (0, 0)}
        self.phase = complex(phase)

    def copy(self):
        return Monomial(self.d, dict(self.powers), self.phase)

    def site_matrix(self, site):
        x, z = self.powers.get(site, (0, 0))
        X = gate_matrix(sim.GateSpec("ShiftX", (self.d,)))
        Z = gate_matrix(sim.GateSpec("ClockZ", (self.d,)))
        return np.linalg.matrix_power(X, x) @ np.linalg.matrix_power(Z, z)

    def to_term(self) -> OperatorTerm:
        factors = tuple(((s,), self.site_matrix(s))
                        for s in sorted(self.powers))
        return OperatorTerm(factors, self.phase)

    def equals(self, other, tol=1e-12):
        return (self.powers == other.powers
                and abs(self.phase - other.phase) <= tol)

    def times(self, other):
        """Product self * other (order matters for the phase)."""
        if self.d != other.d:
            raise ValueError("qudit dimensions differ")
        w = np.exp(2j * np.pi / self.d)
        phase = self.phase * other.phase
        powers = dict(self.powers)
        for s, (x2, z2) in other.powers.items():
            x1, z1 = powers.get(s, (0, 0))
            # Z^z1 X^x2 = w^{z1 x2} X^x2 Z^z1
            phase *= w ** (z1 * x2)
            powers[s] = (x1 + x2, z1 + z2)
        return Monomial(self.d, powers, phase)

    def __repr__(self):
        body = " ".join(f"{s}:X^{x}Z^{z}" for s, (x, z)
                        in sorted(self.powers.items()))
        return f"Monomial({self.phase:+.3f} {body})"


def _decompose_monomial(dense, d, nsites):
    """Write a dense matrix as phase * kron of X^x Z^z factors, or raise."""
    import itertools

    for combo in itertools.product(range(d * d), repeat=nsites):
        cand = np.eye(1, dtype=complex)
        X = gate_matrix(sim.GateSpec("ShiftX", (d,)))
        Z = gate_matrix(sim.GateSpec("ClockZ", (d,)))
        for c in combo:
            x, z = divmod(c, d)
            cand = np.kron(cand, np.linalg.matrix_power(X, x)
                           @ np.linalg.matrix_power(Z, z))
        idx = np.unravel_index(np.argmax(np.abs(cand)), cand.shape)
        if abs(cand[idx]) < 1e-12:
            continue
        phase = dense[idx] / cand[idx]
        if abs(phase) > 1e-12 and np.allclose(dense, phase * cand,
                                              atol=1e-10):
            return [divmod(c, d) for c in combo], phase
    raise ValueError("operator is not a Pauli monomial on the gate support")


def conjugate_monomial(circuit: Circuit, mono: Monomial,
                       G=None) -> Monomial:
    """Exact U M U^dag for a monomial M through a permutation-phase circuit.

    Gates are processed in application order (the first gate conjugates
    first); each gate only transforms the monomial's components on its own
    support, so the cost is independent of the register size.
    """
    out = mono.copy()
    d = mono.d
    for g in circuit.gates:
        sites = g.sites
        if not any(s in out.powers for s in sites):
            continue
        gm = g.matrix(G)
        local = np.eye(1, dtype=complex)
        for s in sites:
            local = np.kron(local, out.site_matrix(s))
        conj = gm @ local @ gm.conj().T
        combo, phase = _decompose_monomial(conj, d, len(sites))
        for s, (x, z) in zip(sites, combo):
            if (x, z) == (0, 0):
                out.powers.pop(s, None)
            else:
                out.powers[s] = (x, z)
        out.phase *= phase
    return out


class XCZForm:
    """Normal form phase * (prod CZ) * (prod X) * (prod Z) on qubit sites.

    The set of such operators is closed under exact Heisenberg conjugation
    by X, Z and CZ gates, which covers the sublattice-double stabilizers
    and the staircase flux ribbons without any dense register matrices, so
    commutation can be checked on lattices far beyond state-vector reach.
    """

    def __init__(self, xs=(), zs=(), czs=(), phase=1.0 + 0j):
        self.xs = set(xs)
        self.zs = set(zs)
        self.czs = {frozenset(p) for p in czs}
        if any(len(p) != 2 for p in self.czs):
            raise ValueError("CZ factors need two distinct sites")
        self.phase = complex(phase)

    def copy(self):
        return XCZForm(self.xs, self.zs, self.czs, self.phase)

    @property
    def support(self):
        out = set(self.xs) | set(self.zs)
        for p in self.czs:
            out |= p
        return tuple(sorted(out))

    def equals(self, other, tol=1e-12):
        return (self.xs == other.xs and self.zs == other.zs
                and self.czs == other.czs
                and abs(self.phase - other.phase) <= tol)

    def conjugate_x(self, g):
        """In-place X_g self X_g."""
        n = set()
        for p in self.czs:
            if g in p:
                n ^= p - {g}
        if g in self.zs:
            self.phase *= -1
        self.phase *= (-1) ** len(n & self.xs)
        self.zs ^= n

    def conjugate_z(self, g):
        """In-place Z_g self Z_g."""
        if g in self.xs:
            self.phase *= -1

    def conjugate_cz(self, a, b):
        """In-place CZ_ab self CZ_ab."""
        n = set()
        if a in self.xs:
            n ^= {b}
        if b in self.xs:
            n ^= {a}
            if a in self.xs:
                self.phase *= -1
        self.zs ^= n

    def conjugate_by_circuit(self, circuit: Circuit):
        """Exact U self U^dag; circuit gates must be X, Z or CZ."""
        out = self.copy()
        for g in circuit.gates:
            if g.power % 2 == 0:
                continue
            if g.spec.kind == "ShiftX" and g.spec.params == (2,):
                out.conjugate_x(g.sites[0])
            elif g.spec.kind == "ClockZ" and g.spec.params == (2,):
                out.conjugate_z(g.sites[0])
            elif g.spec.kind == "CZ":
                out.conjugate_cz(*g.sites)
            else:
                raise ValueError(f"gate {g.spec.kind} leaves the X/Z/CZ "
                                 "normal form")
        return out

    def apply_to(self, state):
        """In-place application to a state (all factors are involutions)."""
        czm = gate_matrix(sim.GateSpec("CZ"))
        xm = gate_matrix(sim.GateSpec("ShiftX", (2,)))
        zm = gate_matrix(sim.GateSpec("ClockZ", (2,)))
        for p in sorted(self.czs, key=sorted):
            sim.apply_matrix(state, czm, tuple(sorted(p)))
        for s in sorted(self.xs):
            sim.apply_matrix(state, xm, (s,))
        for s in sorted(self.zs):
            sim.apply_matrix(state, zm, (s,))
        state.amplitudes *= self.phase
        return state

    def __repr__(self):
        czs = " ".join("CZ[%s,%s]" % tuple(sorted(p))
                       for p in sorted(self.czs, key=sorted))
        xs = " ".join(f"X[{s}]" for s in sorted(self.xs))
        zs = " ".join(f"Z[{s}]" for s in sorted(self.zs))
        return f"XCZForm({self.phase:+.3f} {czs} {xs} {zs})"


def gf2_in_span(target_sites, generators):
    """Is the indicator vector of target_sites in the GF(2) span of the
    generators (each a collection of sites)?"""
    target = set(target_sites)
    if not target:
        return True
    sites = sorted(target | {s for g in generators for s in g})
    idx = {s: i for i, s in enumerate(sites)}
    rows = np.zeros((len(generators) + 1, len(sites)), dtype=np.uint8)
    for j, g in enumerate(generators):
        for s in g:
            rows[j, idx[s]] ^= 1
    for s in target:
        rows[-1, idx[s]] = 1
    # eliminate: the target is in the span iff rank is unchanged by it
    a = rows[:-1].copy()
    b = rows[-1].copy()
    r = 0
    for c in range(len(sites)):
        piv = None
        for i in range(r, a.shape[0]):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        if b[c]:
            b ^= a[r]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return not b.any()


def xcz_commutation_report(forms, circuit, z_generators):
    """Classify U T U^dag against T for labelled XCZForm terms.

    Returns {label: kind}: "equal" (exact commutation), "stabilizer" (T
    times a Z product in the GF(2) span of z_generators, so trivial on the
    ground space -- commutation on the zero-flux sector), "flipped" (the
    same with a -1 phase: eigenvalue flip), "open" (an open Z string or a
    changed X/CZ part: the term expectation is no longer pinned).
    """
    out = {}
    for label, form in forms:
        conj = form.conjugate_by_circuit(circuit)
        if conj.xs != form.xs or conj.czs != form.czs:
            out[label] = "open"
            continue
        resid = conj.zs ^ form.zs
        ratio = conj.phase / form.phase
        if not resid and ratio == 1:
            out[label] = "equal"
        elif ratio == 1 and gf2_in_span(resid, z_generators):
            out[label] = "stabilizer"
        elif ratio == -1 and gf2_in_span(resid, z_generators):
            out[label] = "flipped"
        else:
            out[label] = "open"
    return out


def operator_equality(register, op_a, op_b, G=None):
    """Frobenius distance of two densifiable operators on a register."""
    return float(np.linalg.norm(_dense_on(register, op_a, G)
                                - _dense_on(register, op_b, G)))
