exec(open('/root/pkg/dev/ucc3.py').read().split("import sys")[0])
import numpy as np, collections
U = ucc_ops(path, mid_sign=+1)
Udag = [(m.conj().T, s) for m,s in reversed(U)]
for name in ("B[0,0]", "A[0,0]"):
    facops = [(m,(s,)) for s,m in terms[name]]
    M = run_stack(np.eye(N, dtype=complex), U + facops + Udag)
    nz = np.abs(M) > 1e-12
    per = sorted(set(nz.sum(axis=0)))
    print(name, "nonzeros per column:", per)
    if per == [1]:
        rows = np.argmax(nz, axis=0)
        cols = {s: reg.index(s) for s in edge_sites}
        pat = collections.Counter()
        for j in range(0, N, 37):
            i = rows[j]
            diff = tuple((digits[i][cols[s]] - digits[j][cols[s]]) % 3 for s in edge_sites)
            pat[diff] += 1
        print(" shifts per", edge_sites, ":", pat.most_common(3))
        # diagonal phase dependence for most common shift
        diff0 = pat.most_common(1)[0][0]
        # collect phase as function of source digits
        exs = []
        for j in range(0, N, 1):
            i = rows[j]
            d = tuple((digits[i][cols[s]] - digits[j][cols[s]]) % 3 for s in edge_sites)
            if d == diff0:
                exs.append((tuple(digits[j]), np.round(M[i,j], 6)))
        # fit phase = w^(linear form in digits)
        w = np.exp(2j*np.pi/3)
        import itertools
        found = False
        for coeffs in itertools.product(range(3), repeat=8):
            c0cands = set()
            ok = True
            for dg, ph in exs[:40]:
                val = sum(c*x for c, x in zip(coeffs, dg)) % 3
                pred = w**val
                rat = ph/pred
                c0cands.add(np.round(rat, 4))
                if len(c0cands) > 1:
                    ok = False; break
            if ok:
                print(" phase = const", c0cands, "* w^(", dict((s,c) for s,c in zip(edge_sites, coeffs) if c), ")")
                found = True
                break
        if not found:
            print(" phase not a simple linear form; samples:", exs[:5])
