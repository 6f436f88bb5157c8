exec(open('/root/pkg/dev/ucc3.py').read().split("import sys")[0])
for skip in (False, True):
    U = ucc_ops(path, mid_sign=+1, skip_seam=skip)
    Udag = [(m.conj().T, s) for m,s in reversed(U)]
    for mname, memb_sites in [("noC", []), ("C@N00", ["N[0,0]"]),
                              ("C@N00+N01", ["N[0,0]","N[0,1]"])]:
        fac = terms["A[0,0]"]
        facops = [(m,(s,)) for s,m in fac]
        memb = [(C,(s,)) for s in memb_sites]
        def a(stack): return run_stack(stack, U + facops + Udag)
        def b(stack): return run_stack(stack, memb + facops + memb)
        rp = sim.operator_frobenius_distance(reg, lambda s: a(s*P[:,None]), lambda s: b(s*P[:,None]), chunk=2187)
        print("skip", skip, mname, round(rp, 8), flush=True)
