"""Cross-check verify.gf2_in_span / xcz_commutation_report vs dev solver."""
import sys
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.lattice import build_lattice, COLORS
from qdouble import models, verify, ribbons

rng = np.random.default_rng(0)
# random GF(2) span tests vs brute force
for trial in range(200):
    ngen, nsite = rng.integers(1, 6), rng.integers(3, 9)
    gens = [tuple(np.flatnonzero(rng.integers(0, 2, nsite))) for _ in range(ngen)]
    gens = [g for g in gens if g]
    if rng.random() < 0.5 and gens:
        # target = random combo
        tgt = set()
        for g in gens:
            if rng.random() < 0.5:
                tgt ^= set(g)
        expect = True
    else:
        tgt = set(np.flatnonzero(rng.integers(0, 2, nsite)))
        # brute force
        expect = False
        for mask in range(1 << len(gens)):
            acc = set()
            for j, g in enumerate(gens):
                if mask >> j & 1:
                    acc ^= set(g)
            if acc == tgt:
                expect = True
                break
    got = verify.gf2_in_span(tgt, gens)
    assert got == expect, (trial, tgt, gens, got, expect)
print("gf2_in_span ok")

lat = build_lattice("triangular3", 6, 6, boundary="torus")
tris = [tri for c in COLORS for tri in models._sublattice_triangles(lat, c)]
forms = []
for v in lat.vertices:
    own, czp = models.d4_vertex_data(lat, v)
    forms.append((("A", tuple(v)), verify.XCZForm(xs=own, czs=czp)))
for c in COLORS:
    for tri in models._sublattice_triangles(lat, c):
        forms.append((("B", c, tri), verify.XCZForm(zs=tri)))

circ = ribbons.compile_d4_flux_ribbon(lat, "R", [(0, 0), (1, 1), (2, 2)])
rep = verify.xcz_commutation_report(forms, circ, tris)
from collections import Counter
print("closed:", Counter(rep.values()))
circ = ribbons.compile_d4_flux_ribbon(lat, "R", [(0, 0), (1, 1), (2, 2)],
                                      window=(1, 4))
rep = verify.xcz_commutation_report(forms, circ, tris)
print("open:", Counter(rep.values()),
      {l: k for l, k in rep.items() if k in ("flipped", "open")})
# endpoint residue: rung Z loop is a product of rung-color plaquettes
res = ribbons.d4_endpoint_residue(lat, "R", [(0, 0), (1, 1), (2, 2)])
gtris = models._sublattice_triangles(lat, "G")
print("residue edges:", res, "in G-plaquette span:",
      verify.gf2_in_span(res, gtris))
