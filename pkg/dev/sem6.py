import math, time
t0 = time.time()
import numpy as np
from qdouble.lattice import build_lattice
from qdouble import ribbons, verify, sim

lat = build_lattice("triangular3", 6, 6, "open")
# ribbon1: bottom arc of a horizontal membrane; ribbon2: left arc of a column
M1 = [(2,2),(3,2)]
M2 = [(3,1),(3,2),(3,3)]
r1 = {w: ribbons.open_semion_ribbon(lat, w, M1, (-3.0, -0.6)) for w in ("s","sbar")}
r2 = {w: ribbons.open_semion_ribbon(lat, w, M2, (2.0, 4.2)) for w in ("s","sbar")}
for tag, c in [("r1s", r1["s"]), ("r2s", r2["s"])]:
    print(tag, [(g.spec.kind[:2], g.sites[0]) for g in c.gates])
support = sorted(set(r1["s"].support) | set(r2["s"].support)
                 | set(r1["sbar"].support) | set(r2["sbar"].support))
print("joint support", len(support))
reg = sim.Register(tuple((s, 2) for s in support))
for wa, wb in (("s","s"), ("s","sbar"), ("sbar","s"), ("sbar","sbar")):
    br = verify.commutation_phase(r1[wa], r2[wb], reg)
    print(wa, wb, "scalar", br.scalar, "phase", np.round(br.phase, 6), "resid", round(br.residual, 9), flush=True)
print(round(time.time()-t0,1),"s")
