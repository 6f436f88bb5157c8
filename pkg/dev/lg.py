import numpy as np
import qdouble.sim as sim
from qdouble.sim import Register, GateSpec, gate_matrix
from qdouble.lattice import build_lattice, neighbors
from qdouble import models

lat = build_lattice("triangular3", 3, 3, "torus")
vsites = [lat.vertex_site(v) for v in lat.vertices]
reg = Register(tuple((s, 2) for s in vsites))
X = gate_matrix(GateSpec("ShiftX", (2,)))
Z = gate_matrix(GateSpec("ClockZ", (2,)))
RZZ = np.diag(np.exp(1j*np.pi/4*np.array([1,-1,-1,1])))

def dense(ops):
    m = np.eye(reg.total_dim, dtype=complex)
    for sites, mat in ops:
        m = sim._embed(reg, mat, list(sites)) @ m
    return m

ent = models.levin_gu_entangler_ops(lat)
U = dense([(sites, np.asarray(mat, complex)) for mat, sites in ent])
print("U unitary:", np.linalg.norm(U @ U.conj().T - np.eye(reg.total_dim)) < 1e-9)

ring_steps = [(1,0),(0,1),(-1,1),(-1,0),(0,-1),(1,-1)]
v = (1,1)
ring = [lat.wrap(v[0]+dx, v[1]+dy) for dx,dy in ring_steps]
lhs = U @ sim._embed(reg, X, [lat.vertex_site(v)]) @ U.conj().T
for ph in (1, 1j, -1, -1j):
    rhs = ph * sim._embed(reg, X, [lat.vertex_site(v)])
    for a, b in zip(ring, ring[1:]+ring[:1]):
        rhs = sim._embed(reg, RZZ, [lat.vertex_site(a), lat.vertex_site(b)]) @ rhs
    print("phase", ph, "resid", round(float(np.linalg.norm(lhs-rhs)), 10))
