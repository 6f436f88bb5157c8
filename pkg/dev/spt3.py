import numpy as np
import qdouble.sim as sim
from qdouble.sim import Register, GateSpec, gate_matrix
from qdouble.lattice import build_lattice
from qdouble import models

lat = build_lattice("triangular3", 5, 5, "open")
v = (2, 2)
vs = lat.vertex_site(v)
ops = models.typeiii_entangler_ops(lat)
for c in ("R", "G", "B"):
    ops = ops + models.levin_gu_entangler_ops(lat, vertex_filter=c)
# keep only gates touching v; conjugation of X_v by the rest is trivial
touch = [(np.asarray(m, complex), s) for m, s in ops if vs in s]
support = sorted({q for _, s in touch for q in s})
reg = Register(tuple((s, 2) for s in support))
X = gate_matrix(GateSpec("ShiftX", (2,)))
CZ = np.diag([1., 1., 1., -1.]).astype(complex)
RZZ = np.diag(np.exp(1j*np.pi/4*np.array([1, -1, -1, 1])))
print("support size", len(support))

U = np.eye(reg.total_dim, dtype=complex)
for m, s in touch:
    U = sim._embed(reg, m, list(s)) @ U
lhs = U @ sim._embed(reg, X, [vs]) @ U.conj().T

ring_steps = [(1,0),(0,1),(-1,1),(-1,0),(0,-1),(1,-1)]
sc_steps = [(1,1),(-1,2),(-2,1),(-1,-1),(1,-2),(2,-1)]
r = [(v[0]+dx, v[1]+dy) for dx, dy in ring_steps]
sr = [(v[0]+dx, v[1]+dy) for dx, dy in sc_steps]
for ph in (1, 1j, -1, -1j):
    rhs = ph * sim._embed(reg, X, [vs])
    for a, b in zip(r, r[1:]+r[:1]):
        rhs = sim._embed(reg, CZ, [lat.vertex_site(a), lat.vertex_site(b)]) @ rhs
    for a, b in zip(sr, sr[1:]+sr[:1]):
        rhs = sim._embed(reg, RZZ, [lat.vertex_site(a), lat.vertex_site(b)]) @ rhs
    print("Q8 phase", ph, "resid", round(float(np.linalg.norm(lhs-rhs)), 10))
