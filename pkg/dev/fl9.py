"""Validate compiled flux ribbons: sandwich equality + state excitations."""
import sys, time
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import build_group
from qdouble.lattice import build_lattice, oriented_path
from qdouble import models, verify, ribbons
from qdouble.sim import apply_matrix, make_register, make_product_state

G = build_group("S3")

def perm_mat(n, f):
    m = np.zeros((n, n))
    for x in range(n):
        m[f(x), x] = 1.0
    return m

def sandwich(st, frame, crossed, gel):
    for k in range(len(crossed)):
        ctrls = frame[: k + 1]
        nc = len(ctrls)
        def f(idx, nc=nc):
            digs = []
            rem = idx
            for _ in range(nc + 1):
                digs.append(rem % 6)
                rem //= 6
            digs.reverse()
            P = 0
            for d in digs[:-1]:
                P = G.m(d, P)
            ghat = G.m(G.m(P, gel), G.i(P))
            h2 = G.m(digs[-1], ghat)
            out = 0
            for d in digs[:-1] + [h2]:
                out = out * 6 + d
            return out
        apply_matrix(st, perm_mat(6 ** (nc + 1), f), ctrls + [crossed[k]])

# direct operator check on a synthetic path-like object
lat = build_lattice("square", 3, 2, boundary="open")
path = oriented_path(lat, [(0, 0), (1, 0), (2, 0)])
print("frame:", [e.site for e, s in path.edges],
      "e_v:", [(v, e.site if e else None) for v, e in path.e_v], "eta:", path.eta)

reg = make_register((("E[0,0]", 6), ("E[1,0]", 6), ("N[1,0]", 6), ("N[2,0]", 6)))
rng = np.random.default_rng(7)
for g in (1, 2, 3, 4, 5):
    circ = ribbons.compile_flux_ribbon(G, g, path)
    worst = 0.0
    for _ in range(3):
        amps = rng.normal(size=6**4) + 1j * rng.normal(size=6**4)
        st1 = make_product_state(reg, {s: "I" for s in reg.site_ids})
        st1.amplitudes = amps.copy()
        st2 = make_product_state(reg, {s: "I" for s in reg.site_ids})
        st2.amplitudes = amps.copy()
        ribbons.apply_circuit(st1, circ, G)
        sandwich(st2, ["E[0,0]", "E[1,0]"], ["N[1,0]", "N[2,0]"], g)
        worst = max(worst, float(np.linalg.norm(st1.amplitudes - st2.amplitudes)
                                 / np.linalg.norm(amps)))
    print("g =", g, "compiled-vs-sandwich residual", worst,
          "layers:", [n for n, a, b in circ.layers])

t0 = time.time()
spec = models.ModelSpec("DG", group=G)
gs, w = models.prepare_ground_state(spec, lat, budget=2**26)
terms = models.hamiltonian_terms(spec, lat)
for g in (1, 2, 3, 4, 5):
    st = gs.copy()
    ribbons.apply_circuit(st, ribbons.compile_flux_ribbon(G, g, path), G)
    rep = verify.stabilizer_report(st, terms)
    print("open g =", g, "excited:", rep.excited)

lat2 = build_lattice("square", 2, 2, boundary="torus")
gs2, w2 = models.prepare_ground_state(spec, lat2, budget=2**26)
terms2 = models.hamiltonian_terms(spec, lat2)
for g in (1, 2, 3, 4, 5):
    st = gs2.copy()
    ribbons.apply_circuit(st, ribbons.compile_flux_loop(G, g, lat2, (0, 0)), G)
    rep = verify.stabilizer_report(st, terms2)
    print("loop g =", g, "excited:", rep.excited)
print("total", round(time.time() - t0, 1))
