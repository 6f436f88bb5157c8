"""XCZForm conjugation vs dense matrices on random instances."""
import sys
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble import sim, verify, ribbons

rng = np.random.default_rng(3)
sites = [f"q{i}" for i in range(6)]
reg = sim.make_register(tuple((s, 2) for s in sites))

def random_form():
    xs = [s for s in sites if rng.random() < 0.4]
    zs = [s for s in sites if rng.random() < 0.4]
    czs = []
    for _ in range(3):
        a, b = rng.choice(len(sites), size=2, replace=False)
        czs.append((sites[a], sites[b]))
    return verify.XCZForm(xs, zs, czs, phase=rng.choice([1, -1, 1j]))

def dense(form):
    st_cols = np.eye(reg.total_dim, dtype=complex)
    out = np.empty_like(st_cols)
    for k in range(reg.total_dim):
        st = sim.State(reg, st_cols[:, k].copy(), 0.0)
        form.apply_to(st)
        out[:, k] = st.amplitudes
    return out

def gate_dense(kind, gsites, params=()):
    m = sim.gate_matrix(sim.GateSpec(kind, params))
    return sim._embed(reg, m, gsites)

worst = 0.0
for trial in range(40):
    form = random_form()
    D = dense(form)
    r = rng.random()
    if r < 0.4:
        s = sites[rng.integers(6)]
        U = gate_dense("ShiftX", (s,), (2,))
        f2 = form.copy(); f2.conjugate_x(s)
    elif r < 0.6:
        s = sites[rng.integers(6)]
        U = gate_dense("ClockZ", (s,), (2,))
        f2 = form.copy(); f2.conjugate_z(s)
    else:
        a, b = rng.choice(6, size=2, replace=False)
        U = gate_dense("CZ", (sites[a], sites[b]))
        f2 = form.copy(); f2.conjugate_cz(sites[a], sites[b])
    worst = max(worst, float(np.linalg.norm(U @ D @ U.conj().T - dense(f2))))
print("single-gate conjugation worst residual", worst)

# circuit-level check
b = ribbons._Builder("t")
for _ in range(10):
    r = rng.random()
    if r < 0.4:
        b.add("ShiftX", (sites[rng.integers(6)],), params=(2,))
    elif r < 0.6:
        b.add("ClockZ", (sites[rng.integers(6)],), params=(2,))
    else:
        a, c = rng.choice(6, size=2, replace=False)
        b.add("CZ", (sites[a], sites[c]))
circ = b.done()
U = ribbons.circuit_matrix_on(circ, reg)
worst = 0.0
for _ in range(10):
    form = random_form()
    f2 = form.conjugate_by_circuit(circ)
    worst = max(worst, float(np.linalg.norm(
        U @ dense(form) @ U.conj().T - dense(f2))))
print("circuit conjugation worst residual", worst)
