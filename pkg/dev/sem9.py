"""Re-verify state-level semion facts on the 4x3 patch after pairing fix:
closed ribbon stabilizes the ground state; open windows excite 1 vertex +
1 plaquette per end."""
import math, pickle, sys, time
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.lattice import build_lattice
from qdouble import ribbons, models, verify
from qdouble.ribbons import apply_circuit

t0 = time.time()
lat = build_lattice("triangular3", 4, 3, boundary="open")
with open("/tmp/ds_ground.pkl", "rb") as f:
    gs = pickle.load(f)
terms = [t for t in models.hamiltonian_terms(
    models.ModelSpec("DoubledSemion"), lat)]
print("terms:", len(terms), "prep reuse", time.time() - t0)

M = [(1, 1), (2, 1)]
print("alpha:", ribbons.semion_alpha_vertices(lat, M))
for which in ("s", "sbar"):
    c = ribbons.compile_semion_ribbon(lat, which, M)
    st = gs.copy()
    apply_circuit(st, c, None)
    ov = np.vdot(gs.amplitudes, st.amplitudes) / np.vdot(gs.amplitudes,
                                                         gs.amplitudes)
    resid = np.linalg.norm(st.amplitudes - ov * gs.amplitudes)
    print("closed", which, "overlap", ov, "resid", resid)

angles = [k * math.pi / 6 for k in range(12)]
spans = [math.pi / 2, 2 * math.pi / 3, 5 * math.pi / 6]
for which in ("s", "sbar"):
    for a0 in angles:
        for sp in spans:
            c = ribbons.open_semion_ribbon(lat, which, M, (a0, a0 + sp))
            if len(c.gates) < 3:
                continue
            st = gs.copy()
            apply_circuit(st, c, None)
            rep = verify.stabilizer_report(st, terms, tol=1e-8)
            ex = rep.excited
            nA = sum(1 for l in ex if l[0] == "A_DS")
            nB = sum(1 for l in ex if l[0] == "B_DS")
            if (nA, nB) == (2, 2):
                print("GOOD", which, round(a0, 3), round(sp, 3),
                      [(g.spec.kind, g.sites[0]) for g in c.gates], ex)
print("total", time.time() - t0)
