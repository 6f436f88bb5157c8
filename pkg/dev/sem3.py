import time, pickle, os, math
t0 = time.time()
import numpy as np
from qdouble.lattice import build_lattice
from qdouble import models, verify, ribbons, sim
from qdouble.models import ModelSpec

lat = build_lattice("triangular3", 4, 3, "open")
with open("/tmp/ds_ground.pkl", "rb") as f:
    state = pickle.load(f)
terms = models.hamiltonian_terms(ModelSpec("DoubledSemion", None), lat)

M = [(1,1),(2,1)]
circ = ribbons.compile_semion_ribbon(lat, "s", M)
cx, cy = 1.5, 1.0
def emb(v):
    return (v[0] + 0.5*v[1], v[1]*math.sqrt(3)/2)
ex, ey = emb((cx, cy))
def ang(site):
    e = lat.edge(site)
    mx = (emb(e.tail)[0] + emb(e.head)[0])/2 - ex
    my = (emb(e.tail)[1] + emb(e.head)[1])/2 - ey
    return math.atan2(my, mx)
gates = sorted(circ.gates, key=lambda g: ang(g.sites[0]))
angs = [round(ang(g.sites[0]), 3) for g in gates]
print([(g.spec.kind[0], g.sites[0], a) for g, a in zip(gates, angs)])

n = len(gates)
for start in range(n):
    for length in range(4, n-2):
        sub = [gates[(start+k) % n] for k in range(length)]
        st = state.copy()
        for g in sub:
            sim.apply_matrix(st, g.matrix(), g.sites)
        rep = verify.stabilizer_report(st, terms, tol=1e-6)
        va = [l for l in rep.excited if l[0] == "A_DS"]
        vb = [l for l in rep.excited if l[0] == "B_DS"]
        if len(va) == 2 and len(vb) == 2:
            print("WINDOW", start, length, [ (g.spec.kind, g.sites) for g in sub], "->", rep.excited, flush=True)
print(round(time.time()-t0,1), "s")
