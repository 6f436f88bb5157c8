import time
t0 = time.time()
from qdouble.lattice import build_lattice
from qdouble import models, verify, ribbons
from qdouble.models import ModelSpec

lat = build_lattice("triangular3", 4, 3, "open")
model = ModelSpec("DoubledSemion", None)
state, w = models.prepare_ground_state(model, lat, budget=2**27)
terms = models.hamiltonian_terms(model, lat)
print("prep", round(time.time()-t0,1), "s")

M = [(1,1),(2,1)]
print("alpha:", ribbons.semion_alpha_vertices(lat, M))
print("decor:", ribbons.semion_decoration_edges(lat, M))
for which in ("s", "sbar"):
    circ = ribbons.compile_semion_ribbon(lat, which, M)
    st = state.copy()
    ribbons.apply_circuit(st, circ)
    rep = verify.stabilizer_report(st, terms, tol=1e-8)
    print(which, "excited:", rep.excited)
    print(which, "max dev:", max(abs(v-1) for _, v in rep.values))
print(round(time.time()-t0,1), "s total")
