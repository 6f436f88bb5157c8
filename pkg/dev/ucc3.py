exec(open('/root/pkg/dev/ucc2.py').read().split("for variant, kw in")[0])

def residuals(order, mid_sign, skip_seam=False, project=False):
    U = ucc_ops(path, mid_sign=mid_sign, skip_seam=skip_seam)
    Udag = [(m.conj().T, s) for m,s in reversed(U)]
    first, last = (U, Udag) if order=="UfU+" else (Udag, U)
    res = {}
    for name, fac in terms.items():
        facops = [(m,(s,)) for s,m in fac]
        memb = [(C,(s,)) for s in membrane.get(name, [])]
        def a(stack): return run_stack(stack, first + facops + last)
        def b(stack): return run_stack(stack, memb + facops + memb)
        if project:
            res[name] = sim.operator_frobenius_distance(reg, lambda s: a(s*P[:,None]), lambda s: b(s*P[:,None]), chunk=2187)
        else:
            res[name] = sim.operator_frobenius_distance(reg, a, b, chunk=2187)
    return res

import sys
for order in ("UfU+","U+fU"):
    for ms in (+1,-1):
        r = residuals(order, ms)
        print(order, ms, {k: round(v,6) for k,v in r.items()}, flush=True)
