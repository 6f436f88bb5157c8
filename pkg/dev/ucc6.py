exec(open('/root/pkg/dev/ucc3.py').read().split("import sys")[0])
import numpy as np
U = ucc_ops(path, mid_sign=+1)
Udag = [(m.conj().T, s) for m,s in reversed(U)]
fac = terms["A[0,0]"]
facops = [(m,(s,)) for s,m in fac]
M = run_stack(np.eye(N, dtype=complex), U + facops + Udag)
# restrict to zero-holonomy subspace
sel = np.nonzero(P)[0]
Msub = M[np.ix_(sel, sel)]
# monomial structure: one nonzero per column?
nz = np.abs(Msub) > 1e-12
print("nonzeros per column:", sorted(set(nz.sum(axis=0))))
# map out the permutation in terms of digit shifts
cols = {s: reg.index(s) for s in edge_sites}
rows = np.argmax(nz, axis=0)
# examine a few columns: digit difference pattern and phase
import collections
pat = collections.Counter()
for jj in range(0, len(sel), 53):
    j, i = sel[jj], sel[rows[jj]]
    dj, di = digits[j], digits[i]
    diff = tuple((di[cols[s]] - dj[cols[s]]) % 3 for s in edge_sites)
    ph = Msub[rows[jj], jj]
    pat[(diff, np.round(ph, 6))] += 1
for k, v in sorted(pat.items(), key=lambda kv: -kv[1])[:12]:
    print(edge_sites)
    print(k, v)
