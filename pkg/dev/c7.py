import sys
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from qdouble.groups import build_group
from qdouble.gauging import kw1d_rule_residual, kw1d_chain_perm, kw1d_apply
from qdouble.sim import make_register, make_product_state

S3 = build_group("S3")
Z2 = build_group("Z2")

# cross-check kw1d_chain_perm against kw1d_apply on random basis states
reg = make_register(tuple((f"s{i}", 6) for i in range(4)))
perm = kw1d_chain_perm(S3, 4)
rng = np.random.default_rng(0)
ok = True
for _ in range(20):
    digs = rng.integers(0, 6, size=4)
    st = make_product_state(reg, {f"s{i}": int(digs[i]) for i in range(4)})
    st2 = kw1d_apply(st, [f"s{i}" for i in range(4)], S3)
    idx = int(np.argmax(np.abs(st2.amplitudes)))
    enc = 0
    for x in digs:
        enc = enc * 6 + int(x)
    ok &= (idx == perm[enc])
print("perm matches kw1d_apply:", ok)

worst = 0.0
for n in (2, 3, 5):
    for i in range(n - 1):
        for g in range(6):
            for rule in ("RL", "T"):
                worst = max(worst, kw1d_rule_residual(S3, n, i, g, rule))
print("S3 rules worst residual", worst)
worst = 0.0
for n in (2, 3, 5):
    for i in range(n - 1):
        for rule in ("X", "ZZ"):
            worst = max(worst, kw1d_rule_residual(Z2, n, i, 1, rule))
print("Z2 Ising rules worst residual", worst)
