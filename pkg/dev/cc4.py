"""Criterion-4 exploration: open cc-defect line, nonlocal endpoint
stabilizers via monomial conjugation, readout under crossing e strings."""
import sys, time
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.lattice import build_lattice, oriented_path
from qdouble import models, ribbons, verify, sim
from qdouble.ribbons import apply_circuit

t0 = time.time()
lat = build_lattice("square", 3, 2, boundary="torus")
spec = models.ModelSpec("Z3TC")
gs, _w = models.prepare_ground_state(spec, lat)
terms = models.hamiltonian_terms(spec, lat)
print("prep", time.time() - t0, "edges", len(lat.edges))

path = oriented_path(lat, [(0, 0), (1, 0), (2, 0)])
print("path edges", [e.site for e, _ in path.edges])
print("e_v", [(v, e.site if e else None) for v, e in path.e_v], path.eta)
U = ribbons.compile_cc_defect(path)
print("defect gates", [(g.spec.kind, g.sites, g.power) for g in U.gates])

psi = gs.copy()
apply_circuit(psi, U, None)
rep = verify.stabilizer_report(psi, terms, tol=1e-8)
print("defect-state excited:", rep.excited)

# endpoint vertex terms conjugated through the line
def vertex_monomial(v):
    # A_v: X on east/north edges leaving v, X^dag on edges entering v
    powers = {}
    for e, d in lat.edges_at(v):
        powers[e.site] = ((1 if d == "out" else -1), 0)
    return verify.Monomial(3, powers)

for v in [(0, 0), (1, 0), (2, 0)]:
    mono = vertex_monomial(v)
    tt = verify.conjugate_monomial(U, mono, None)
    print("A", v, "->", tt)

# readouts: endpoint term at the final vertex
for v in [(0, 0), (2, 0)]:
    tt = verify.conjugate_monomial(U, vertex_monomial(v), None)
    term = tt.to_term()
    for ncross, loops in (
            (0, []),
            (1, [[(1, 0), (1, 1), (1, 0)]]),
            (2, [[(1, 0), (1, 1), (1, 0)], [(1, 0), (1, 1), (1, 0)]]),
            ("x0", [[(0, 0), (0, 1), (0, 0)]]),
            ("x2", [[(2, 0), (2, 1), (2, 0)]]),
    ):
        st = psi.copy()
        for lp in loops:
            zs = ribbons.compile_abelian_string(
                lat, "e", path=oriented_path(lat, lp))
            apply_circuit(st, zs, None)
        val, resid, ok = verify.internal_state_readout(st, term)
        print("endpoint", v, "crossings", ncross, "->", val, resid, ok)
print("total", time.time() - t0)
