import pickle, time
t0 = time.time()
import numpy as np
from qdouble.lattice import build_lattice
from qdouble import models, verify, ribbons, sim
from qdouble.models import ModelSpec

lat = build_lattice("triangular3", 4, 3, "open")
with open("/tmp/ds_ground.pkl", "rb") as f:
    state = pickle.load(f)

def phase_on(state, c1, c2):
    a = state.copy(); ribbons.apply_circuit(a, c1); ribbons.apply_circuit(a, c2)
    b = state.copy(); ribbons.apply_circuit(b, c2); ribbons.apply_circuit(b, c1)
    num = np.vdot(b.amplitudes, a.amplitudes); den = np.vdot(b.amplitudes, b.amplitudes)
    ph = num/den
    resid = np.linalg.norm(a.amplitudes - ph*b.amplitudes)/np.linalg.norm(b.amplitudes)
    return np.round(ph, 6), round(float(resid), 9)

pairs = [("s","s"), ("s","sbar"), ("sbar","sbar")]
for M1, M2, tag in [([(1,1)], [(2,1)], "adjacent"), ([(1,1)], [(1,1)], "same"),
                    ([(1,1),(2,1)], [(2,1)], "nested"), ([(1,1),(2,1)], [(1,2)], "side")]:
    for w1, w2 in pairs:
        c1 = ribbons.compile_semion_ribbon(lat, w1, M1)
        c2 = ribbons.compile_semion_ribbon(lat, w2, M2)
        print(tag, w1, w2, phase_on(state, c1, c2), flush=True)
print(round(time.time()-t0,1),"s")
