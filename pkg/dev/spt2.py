import numpy as np
import qdouble.sim as sim
from qdouble.sim import Register, GateSpec, gate_matrix
from qdouble.lattice import build_lattice
from qdouble import models

lat = build_lattice("triangular3", 3, 3, "torus")
vsites = [lat.vertex_site(v) for v in lat.vertices]
reg = Register(tuple((s, 2) for s in vsites))
X = gate_matrix(GateSpec("ShiftX", (2,)))
CZ = np.diag([1.,1.,1.,-1.]).astype(complex)
RZZ = np.diag(np.exp(1j*np.pi/4*np.array([1,-1,-1,1])))

def dense(ops):
    m = np.eye(reg.total_dim, dtype=complex)
    for mat, sites in ops:
        m = sim._embed(reg, np.asarray(mat, complex), list(sites)) @ m
    return m

ring_steps = [(1,0),(0,1),(-1,1),(-1,0),(0,-1),(1,-1)]
def ring(v): return [lat.wrap(v[0]+dx, v[1]+dy) for dx,dy in ring_steps]

# type III: entangler = CCZ per triangle; stabilizer X_v * CZ on ring edges
U3 = dense(models.typeiii_entangler_ops(lat))
v = (1,1); r = ring(v)
lhs = U3 @ sim._embed(reg, X, [lat.vertex_site(v)]) @ U3.conj().T
rhs = sim._embed(reg, X, [lat.vertex_site(v)])
for a, b in zip(r, r[1:]+r[:1]):
    rhs = sim._embed(reg, CZ, [lat.vertex_site(a), lat.vertex_site(b)]) @ rhs
print("typeIII resid", round(float(np.linalg.norm(lhs-rhs)), 10))

# quaternion: type III + per-color LG entangler
ops = models.typeiii_entangler_ops(lat)
for c in ("R","G","B"):
    ops = ops + models.levin_gu_entangler_ops(lat, vertex_filter=c)
UQ = dense(ops)
print("UQ unitary", np.linalg.norm(UQ@UQ.conj().T-np.eye(reg.total_dim))<1e-9)
# stabilizer guess: X_v * CZ ring * i * RZZ on same-color second ring
sc_steps = [(1,1),(-1,2),(-2,1),(-1,-1),(1,-2),(2,-1)]
lhs = UQ @ sim._embed(reg, X, [lat.vertex_site(v)]) @ UQ.conj().T
sring = [lat.wrap(v[0]+dx, v[1]+dy) for dx,dy in sc_steps]
for ph in (1,1j,-1,-1j):
    rhs = ph * sim._embed(reg, X, [lat.vertex_site(v)])
    for a, b in zip(r, r[1:]+r[:1]):
        rhs = sim._embed(reg, CZ, [lat.vertex_site(a), lat.vertex_site(b)]) @ rhs
    for a, b in zip(sring, sring[1:]+sring[:1]):
        rhs = sim._embed(reg, RZZ, [lat.vertex_site(a), lat.vertex_site(b)]) @ rhs
    print("Q8 phase", ph, "resid", round(float(np.linalg.norm(lhs-rhs)), 10))
