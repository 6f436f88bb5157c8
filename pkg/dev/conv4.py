import numpy as np
from qdouble.groups import *
from qdouble.sim import *
from qdouble.gauging import kw1d_apply

def conj_residual(G, n, pre_factors, post_factors, inverse_first=False):
    # residual of U pre U^dag == post where U = forward kw1d chain
    sites = [f"s{k}" for k in range(n)]
    reg = Register(tuple((s, G.order) for s in sites))
    def a_side(stack, factors, fwd=True):
        st = State(reg, None)
        class SW:  # tiny shim: stack ops reuse apply via sim.apply_matrix_stack
            pass
        import qdouble.sim as sim
        out = stack
        if fwd:
            # U pre U^dag applied to columns: apply U^dag, pre, U? no: (U pre U^dag)x
            out = _chain(out, True, adjoint=True)   # U^dag x
            for sites_, m in factors: out = sim.apply_matrix_stack(out, m, list(sites_) if isinstance(sites_, tuple) else [sites_], reg)
            out = _chain(out, True, adjoint=False)  # U (...)
        else:
            for sites_, m in factors: out = sim.apply_matrix_stack(out, m, list(sites_) if isinstance(sites_, tuple) else [sites_], reg)
        return out
    import qdouble.sim as sim
    cl = gate_matrix(GateSpec("CL"), G)
    def _chain(stack, _, adjoint):
        pairs = list(zip(sites, sites[1:]))
        if adjoint:
            for a,b in reversed(pairs):
                stack = sim.apply_matrix_stack(stack, cl.conj().T, [a,b], reg)
        else:
            for a,b in pairs:
                stack = sim.apply_matrix_stack(stack, cl, [a,b], reg)
        return stack
    from qdouble.sim import operator_frobenius_distance
    return operator_frobenius_distance(reg, lambda s: a_side(s, pre_factors, True),
                                       lambda s: a_side(s, post_factors, False), chunk=1296)

from qdouble.sim import gate_matrix, GateSpec
G = build_group("S3")
L = lambda g: gate_matrix(GateSpec("L_g",(g,)), G)
R = lambda g: gate_matrix(GateSpec("R_g",(g,)), G)
T = lambda g: gate_matrix(GateSpec("T_g",(g,)), G)

n = 4
for g in range(1, 6):
    i = 1  # interior site
    r1 = conj_residual(G, n, [(f"s{i}", R(g)), (f"s{i+1}", L(g))], [(f"s{i}", R(g))])
    # T rule: U T_g^{(i+1)} U^dag = sum_h T_h^{(i)} T_{hg}^{(i+1)}
    post = None
    pre = [(f"s{i+1}", T(g))]
    acc = np.zeros((36,36), complex)
    for h in range(6):
        acc += np.kron(T(h), T(G.m(h,g)))
    r2 = conj_residual(G, n, pre, [((f"s{i}", f"s{i+1}"), acc)])
    print("S3 g=",g," RL->R residual", round(r1,12), " T rule residual", round(r2,12))

# Z2 Ising rules: X^i -> X^i X^{i+1}?? direction check; Z^i Z^{i+1} -> Z^{i+1}
G2 = build_group("Z2")
X = gate_matrix(GateSpec("ShiftX",(2,)))
Z = gate_matrix(GateSpec("ClockZ",(2,)))
i=1; n=4
print("Z2 U X_i Udag = X_i X_{i+1}?", round(conj_residual(G2, n, [(f"s{i}", X)], [(f"s{i}", X), (f"s{i+1}", X)]),12))
print("Z2 U Z_i Z_{i+1} Udag = Z_{i+1}?", round(conj_residual(G2, n, [(f"s{i}", Z),(f"s{i+1}", Z)], [(f"s{i+1}", Z)]),12))

# inverse direction for Z2: U^dag O U
def conj_residual_inv(G, n, pre_factors, post_factors):
    import qdouble.sim as sim
    sites = [f"s{k}" for k in range(n)]
    reg = Register(tuple((s, G.order) for s in sites))
    cl = gate_matrix(GateSpec("CL"), G)
    pairs = list(zip(sites, sites[1:]))
    def a(stack):
        for x,b in pairs: stack = sim.apply_matrix_stack(stack, cl, [x,b], reg)
        for sites_, m in pre_factors: stack = sim.apply_matrix_stack(stack, m, [sites_] if isinstance(sites_,str) else list(sites_), reg)
        for x,b in reversed(pairs): stack = sim.apply_matrix_stack(stack, cl.conj().T, [x,b], reg)
        return stack
    def b(stack):
        for sites_, m in post_factors: stack = sim.apply_matrix_stack(stack, m, [sites_] if isinstance(sites_,str) else list(sites_), reg)
        return stack
    from qdouble.sim import operator_frobenius_distance
    return operator_frobenius_distance(reg, a, b, chunk=1296)

print("Z2 Udag X_i U = X_i X_{i+1}?", round(conj_residual_inv(G2, 4, [("s1", X)], [("s1", X), ("s2", X)]),12))
print("Z2 Udag Z_1 Z_2 U = Z_2?", round(conj_residual_inv(G2, 4, [("s1", Z),("s2", Z)], [("s2", Z)]),12))
