"""Inspect conjugation residuals of the closed D4 ribbon."""
import sys
sys.path.insert(0, "/root/pkg/src")
from qdouble.lattice import build_lattice, COLORS
from qdouble import models, verify, ribbons

lat = build_lattice("triangular3", 6, 6, boundary="torus")
circ = ribbons.compile_d4_flux_ribbon(lat, "R", [(0, 0)])
print("meta", circ.meta)
for g in circ.gates:
    print(g.spec.kind, g.sites)
for v in [(0, 1), (1, 0), (5, 1), (1, 5)]:
    own, czp = models.d4_vertex_data(lat, v)
    form = verify.XCZForm(xs=own, czs=czp)
    conj = form.conjugate_by_circuit(circ)
    print("term A", v, lat.color(v))
    print("  xs diff:", form.xs ^ conj.xs, "czs diff:", form.czs ^ conj.czs)
    print("  zs diff:", sorted(form.zs ^ conj.zs), "phase", conj.phase)
