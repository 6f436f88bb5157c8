"""Closed D4 staircase ribbon: exact commutation with all terms (symbolic)."""
import sys
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.lattice import build_lattice, COLORS, sublattice_edges
from qdouble import models, verify, ribbons

lat = build_lattice("triangular3", 6, 6, boundary="torus")

def term_forms():
    out = []
    for v in lat.vertices:
        own, czp = models.d4_vertex_data(lat, v)
        out.append((("A", tuple(v)), verify.XCZForm(xs=own, czs=czp)))
    for color in COLORS:
        for tri in models._sublattice_triangles(lat, color):
            out.append((("B", color, tri), verify.XCZForm(zs=tri)))
    return out

terms = term_forms()
print("n terms", len(terms))

def check(circ, tag):
    flipped, bad = [], []
    for label, form in terms:
        conj = form.conjugate_by_circuit(circ)
        if conj.equals(form):
            continue
        minus = form.copy(); minus.phase *= -1
        if conj.equals(minus):
            flipped.append(label)
        else:
            bad.append(label)
    print(tag, "flipped:", flipped, "| non-± conj:", bad[:6],
          ("(+%d more)" % (len(bad) - 6)) if len(bad) > 6 else "")

for color, members in [("R", [(0, 0)]), ("G", [(1, 0)]), ("B", [(2, 0)]),
                       ("R", [(0, 0), (1, 1)]),
                       ("R", [(0, 0), (1, 1), (2, 2)])]:
    try:
        circ = ribbons.compile_d4_flux_ribbon(lat, color, members)
    except Exception as ex:
        print(color, members, "FAILED:", ex)
        continue
    check(circ, f"closed {color} {members}")
