exec(open('/root/pkg/dev/ucc3.py').read().split("import sys")[0])
import numpy as np
U = ucc_ops(path, mid_sign=+1)
Udag = [(m.conj().T, s) for m,s in reversed(U)]
facops = [(m,(s,)) for s,m in terms["B[0,0]"]]
M = run_stack(np.eye(N, dtype=complex), U + facops + Udag)
d = np.diag(M)
cols = {s: reg.index(s) for s in edge_sites}
# solve for linear form: phase(j) = w^{c0 + sum c_k digit_k(j)}
w = np.exp(2j*np.pi/3)
logs = np.round(np.angle(d) / (2*np.pi/3)).astype(int) % 3
# least squares mod 3 via direct solve from unit columns
c0 = logs[0]
coeffs = {}
for s in edge_sites:
    j = 3 ** (len(edge_sites) - 1 - cols[s])  # digit 1 at site s
    coeffs[s] = (logs[j] - c0) % 3
# verify over all columns
pred = np.full(N, c0)
for s in edge_sites:
    pred = pred + coeffs[s]*digits[:, cols[s]]
ok = np.allclose(w**(pred % 3), d)
print("const w^", c0, "coeffs", {k: v for k, v in coeffs.items() if v}, "exact linear:", ok)
if not ok:
    bad = np.nonzero(~np.isclose(w**(pred % 3), d))[0]
    print("mismatch count", len(bad), "example", digits[bad[0]], d[bad[0]])
