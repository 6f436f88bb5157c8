import pickle, time, math
t0 = time.time()
import numpy as np
from qdouble.lattice import build_lattice
from qdouble import models, ribbons, sim

lat = build_lattice("triangular3", 4, 3, "open")
with open("/tmp/ds_ground.pkl", "rb") as f:
    state = pickle.load(f)

M = [(1,1),(2,1)]
def emb(v): return (v[0] + 0.5*v[1], v[1]*math.sqrt(3)/2)
cx, cy = emb((1.5, 1.0))
def ang(site):
    e = lat.edge(site)
    mx = (emb(e.tail)[0]+emb(e.head)[0])/2 - cx
    my = (emb(e.tail)[1]+emb(e.head)[1])/2 - cy
    return math.atan2(my, mx)

circs = {w: sorted(ribbons.compile_semion_ribbon(lat, w, M).gates,
                   key=lambda g: ang(g.sites[0])) for w in ("s", "sbar")}
n = len(circs["s"])

def apply_gates(st, gates):
    for g in gates:
        sim.apply_matrix(st, g.matrix(), g.sites)
    return st

def phase(g1, g2):
    a = apply_gates(apply_gates(state.copy(), g1), g2)
    b = apply_gates(apply_gates(state.copy(), g2), g1)
    num = np.vdot(b.amplitudes, a.amplitudes); den = np.vdot(b.amplitudes, b.amplitudes)
    ph = num/den
    r = np.linalg.norm(a.amplitudes - ph*b.amplitudes)/np.linalg.norm(b.amplitudes)
    return np.round(ph, 4), round(float(r), 6)

def win(w, s, l):
    return [circs[w][(s+k) % n] for k in range(l)]

for s2 in (3, 4, 5, 6):
    for L in (8, 10, 12):
        res = {}
        for wa, wb in (("s","s"), ("s","sbar"), ("sbar","sbar")):
            res[(wa,wb)] = phase(win(wa, 0, L), win(wb, s2, L))
        print("shift", s2, "len", L, res, flush=True)
print(round(time.time()-t0,1),"s")
