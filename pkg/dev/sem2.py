import time, pickle, os
t0 = time.time()
import numpy as np
from qdouble.lattice import build_lattice
from qdouble import models, verify, ribbons, sim
from qdouble.models import ModelSpec

lat = build_lattice("triangular3", 4, 3, "open")
model = ModelSpec("DoubledSemion", None)
cache = "/tmp/ds_ground.pkl"
if os.path.exists(cache):
    with open(cache, "rb") as f:
        state = pickle.load(f)
else:
    state, w = models.prepare_ground_state(model, lat, budget=2**27)
    with open(cache, "wb") as f:
        pickle.dump(state, f)
terms = models.hamiltonian_terms(model, lat)
print("prep", round(time.time()-t0,1), "s")

M = [(1,1),(2,1)]
circ = ribbons.compile_semion_ribbon(lat, "s", M)
gates = list(circ.gates)
xgates = [g for g in gates if g.spec.kind == "ShiftX"]
print("boundary X edges:", [g.sites[0] for g in xgates])
for drop in xgates:
    st = state.copy()
    for g in gates:
        if g is drop:
            continue
        sim.apply_matrix(st, g.matrix(), g.sites)
    rep = verify.stabilizer_report(st, terms, tol=1e-6)
    print("drop", drop.sites[0], "->", rep.excited, flush=True)
print(round(time.time()-t0,1), "s")
