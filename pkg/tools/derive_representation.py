"""Derive the braid operators of the LG^{2,1} and LG^{1,1} state models.

The braid generator is built from scratch as an even intertwiner of the
4-dimensional (resp. 2-dimensional) typical module of U_q[gl(2|1)]
(resp. U_q[gl(1|1)]) with highest weight (0..0|alpha):

1. build the module and the coproduct on V (x) V (super tensor signs),
2. solve for the commutant of the coproduct image (multiplicity-free),
3. fix the eigenvalues on each summand by imposing the braid relation,
4. solve for diagonal quantum-trace weights making both partial traces
   of the generator and its inverse equal to the identity.

Output goes to src/linksgould/data/{lg21,lg11}.json.  Variables: r = q^(1/2),
p = q^(alpha + (m - n)/2).  Requires sympy; run once, results are checked in.
"""
import json
import sys
from itertools import product
from pathlib import Path

import sympy as sp

r, p, Y = sp.symbols("r p Y")
q = r**2
DATA = Path(__file__).resolve().parents[1] / "src" / "linksgould" / "data"


def kron(A, B):
    return sp.Matrix(sp.BlockMatrix([[A[i, j] * B for j in range(A.cols)] for i in range(A.rows)]))


def qbracket(Q, k):
    # [alpha + k]_q with Q = q^alpha
    return (q**k * Q - q**-k / Q) / (q - 1 / q)


def module_gl21(Q):
    n = 4
    par = [0, 1, 1, 0]
    # weights (eps1, eps2 | delta - alpha)
    wts = [(0, 0, 0), (0, -1, 1), (-1, 0, 1), (-1, -1, 2)]

    def E(i, j):
        m = sp.zeros(n)
        m[i, j] = 1
        return m

    K1 = sp.diag(*[q ** w[0] for w in wts])
    K2 = sp.diag(*[q ** w[1] for w in wts])
    K3 = sp.diag(*[Q * q ** w[2] for w in wts])
    e1, f1 = E(1, 2), E(2, 1)
    e2 = qbracket(Q, 0) * E(0, 1) + qbracket(Q, 1) * E(2, 3)
    f2 = E(1, 0) + E(3, 2)
    k1, k2 = K1 * K2.inv(), K2 * K3
    cartan = [K1, K2, K3]
    # (raising, lowering, k, parity)
    pairs = [(e1, f1, k1, 0), (e2, f2, k2, 1)]
    return n, par, cartan, pairs


def module_gl11(Q):
    n = 2
    par = [0, 1]
    K1 = sp.diag(1, q**-1)
    K2 = sp.diag(Q, Q * q)
    e = sp.Matrix([[0, qbracket(Q, 0)], [0, 0]])
    f = sp.Matrix([[0, 0], [1, 0]])
    return n, par, [K1, K2], [(e, f, K1 * K2, 1)]


def coproduct_images(n, par, cartan, pairs):
    Pi = sp.diag(*[(-1) ** x for x in par])
    I = sp.eye(n)

    def sten(A, B, parB):
        return kron(A, I) * kron(Pi**parB, B)

    for (e, f, k, pe) in pairs:
        # module relation check
        assert sp.simplify(e * f + (-1) ** (pe * pe + 1) * f * e - (k - k.inv()) / (q - 1 / q)) == sp.zeros(n)
    gens = [sten(K, K, 0) for K in cartan]
    for (e, f, k, pe) in pairs:
        gens.append(sten(e, k, 0) + sten(I, e, pe))
        gens.append(sten(f, I, 0) + sten(k.inv(), f, pe))
    return gens


def commutant(n, gens):
    N = n * n
    X = sp.Matrix(N, N, sp.symbols(f"x0:{N * N}"))
    eqs = []
    for G in gens:
        eqs += [sp.numer(sp.together(e)) for e in (X * G - G * X) if e != 0]
    (sol,) = sp.linsolve(eqs, list(X))
    Xs = sp.Matrix(N, N, [sp.factor(e) for e in sol])
    free = sorted(Xs.free_symbols - {r, p}, key=str)
    return [Xs.subs({f: int(f == g) for f in free}) for g in free]


def braid_ok(S, n):
    I = sp.eye(n)
    S1, S2 = kron(S, I), kron(I, S)
    return (S1 * S2 * S1 - S2 * S1 * S2).applyfunc(sp.simplify) == sp.zeros(n**3)


def fix_generator(basis, n, probe):
    """Pick the element of the commutant satisfying the braid relation.

    ``probe`` maps a diagonal index to the eigenvalue of the summand it spans
    (weight spaces of dimension one are eigenvectors).
    """
    cs = sp.symbols(f"c0:{len(basis)}")
    S = sum((c * b for c, b in zip(cs, basis)), sp.zeros(n * n))
    sol = sp.solve([S[i, i] - v for i, v in probe.items()], cs, dict=True)[0]
    S = S.subs(sol).applyfunc(sp.factor)
    assert braid_ok(S, n), "braid relation fails"
    return S


def trace_weights(S, n):
    m = sp.symbols(f"m0:{n}")
    T = sp.zeros(n)
    for i in range(n):
        for j in range(n):
            T[i, j] = sum(m[k] * S[n * i + k, n * j + k] for k in range(n))
    eqs = [T[i, j] for i in range(n) for j in range(n) if i != j]
    eqs += [T[i, i] - T[0, 0] for i in range(1, n)]
    sol = sp.solve(eqs, m[1:], dict=True)[0]
    mu = [sp.Integer(1)] + [sp.factor(sol[x].subs(m[0], 1)) for x in m[1:]]
    c_plus = sp.factor(T[0, 0].subs(sol).subs(m[0], 1))
    Sinv = S.inv().applyfunc(sp.factor)
    c_minus = sp.factor(sum(mu[k] * Sinv[k, k] for k in range(n)))
    # rescale mu by lam and S by kappa: lam*c_plus/kappa = 1, lam*kappa*c_minus = 1
    lam = sp.sqrt(sp.factor(1 / (c_plus * c_minus)))
    lam = sp.factor(sp.powdenest(lam, force=True))
    kappa = sp.factor(lam * c_plus)
    return [sp.factor(lam * x) for x in mu], kappa


def reduce_radical(expr, D):
    """Write expr (polynomial in Y) as base + Y*rad with Y^2 -> D."""
    expr = sp.expand(expr)
    poly = sp.Poly(expr, Y)
    base, rad = sp.Integer(0), sp.Integer(0)
    for (k,), c in poly.terms():
        term = c * D ** (k // 2)
        if k % 2:
            rad += term
        else:
            base += term
    return sp.expand(base), sp.expand(rad)


def laurent_terms(expr):
    """[(e_p, e_q, coeff)] with e_q in halves (r = q^(1/2))."""
    expr = sp.expand(sp.cancel(expr))
    if expr == 0:
        return []
    num, den = sp.fraction(sp.together(expr))
    den = sp.Poly(den, r, p)
    if len(den.terms()) != 1:
        raise ValueError(f"not a Laurent polynomial: {expr}")
    (dr, dp), dc = den.terms()[0]
    out = []
    for (er, ep), c in sp.Poly(num, r, p).terms():
        c = sp.Rational(c, dc)
        if c.q != 1:
            raise ValueError(f"non-integral coefficient in {expr}")
        out.append([sp.Rational(ep - dp), sp.Rational(er - dr, 2), int(c)])
    out.sort(key=lambda t: (t[0], t[1]))
    return [[_num(a), _num(b), str(c)] for a, b, c in out]


def _num(x):
    x = sp.Rational(x)
    return int(x) if x.q == 1 else float(x)


def sparse_entries(S, n, D=None):
    rows = []
    for o1, o2, i1, i2 in product(range(n), repeat=4):
        v = S[n * o1 + o2, n * i1 + i2]
        if v == 0:
            continue
        if D is None:
            base, rad = v, 0
        else:
            base, rad = reduce_radical(v, D)
        rows.append([o1, o2, i1, i2, laurent_terms(base), laurent_terms(rad)])
    return rows


def symmetric_gauge_gl21(S, Sinv):
    """Rescale the last basis vector so the two mixed entries agree up to a power of q.

    A = S[(2,3),(4,1)], B = S[(4,1),(2,3)] (1-based); lambda = sqrt(A/B) is
    expressed through Y with Y^2 = D = p^2 + p^-2 - q - q^-1.
    """
    n = 4
    A = S[n * 1 + 2, n * 3 + 0]
    B = S[n * 3 + 0, n * 1 + 2]
    D = p**2 + p**-2 - q - 1 / q
    assert sp.simplify(A * B - D / q) == 0
    lam = Y / (r * B)          # sqrt(A B) / B with sqrt(AB) = Y q^(-1/2)
    lam_inv = r * B * Y / D    # 1/lam
    out = []
    for M in (S, Sinv):
        G = sp.zeros(16)
        for o1, o2, i1, i2 in product(range(n), repeat=4):
            v = M[n * o1 + o2, n * i1 + i2]
            if v == 0:
                continue
            k = (o1 == 3) + (o2 == 3) - (i1 == 3) - (i2 == 3)
            # new basis f_4 = e_4 / lam: entry scales by lam^(out count - in count)
            factor = lam ** k if k > 0 else lam_inv ** (-k)
            base, rad = reduce_radical(sp.expand(v * factor), D)
            G[n * o1 + o2, n * i1 + i2] = sp.factor(sp.cancel(base)) + Y * sp.factor(sp.cancel(rad))
        out.append(G)
    return out[0], out[1], D


def main():
    Q = p / r  # q^alpha = p q^(-1/2) for LG^{2,1}
    n, par, cartan, pairs = module_gl21(Q)
    basis = commutant(n, coproduct_images(n, par, cartan, pairs))
    assert len(basis) == 3
    # eigenvalues: e1e1 -> Q^2, e2e2 -> -1, e4e4 -> Q^-2 q^-2
    S = fix_generator(basis, n, {0: Q**2, 5: -1, 15: 1 / (Q**2 * q**2)})
    mu, kappa = trace_weights(S, n)
    S = (S / kappa).applyfunc(sp.factor)
    Sinv = S.inv().applyfunc(sp.factor)
    Ssym, Sinv_sym, D = symmetric_gauge_gl21(S, Sinv)
    doc = {
        "label": "LG21",
        "dim": 4,
        "parity": par,
        "discriminant": laurent_terms(D),
        "R": sparse_entries(Ssym, n, D),
        "R_inv": sparse_entries(Sinv_sym, n, D),
        "mu": [[laurent_terms(x), []] for x in mu],
    }
    (DATA / "lg21.json").write_text(_dump(doc))

    Q = p  # q^alpha = p for LG^{1,1}
    n, par, cartan, pairs = module_gl11(Q)
    basis = commutant(n, coproduct_images(n, par, cartan, pairs))
    assert len(basis) == 2, len(basis)
    S = fix_generator(basis, n, {0: Q, 3: -1 / Q})
    mu, kappa = trace_weights(S, n)
    S = (S / kappa).applyfunc(sp.factor)
    Sinv = S.inv().applyfunc(sp.factor)
    doc = {
        "label": "LG11",
        "dim": 2,
        "parity": par,
        "discriminant": [],
        "R": sparse_entries(S, n),
        "R_inv": sparse_entries(Sinv, n),
        "mu": [[laurent_terms(x), []] for x in mu],
    }
    (DATA / "lg11.json").write_text(_dump(doc))


def _dump(doc):
    lines = ["{"]
    keys = list(doc)
    for k in keys:
        v = doc[k]
        if isinstance(v, list) and v and isinstance(v[0], list) and k in ("R", "R_inv", "mu"):
            body = ",\n    ".join(json.dumps(row) for row in v)
            text = f'  "{k}": [\n    {body}\n  ]'
        else:
            text = f'  "{k}": {json.dumps(v)}'
        lines.append(text + ("," if k != keys[-1] else ""))
    lines.append("}")
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    sys.exit(main())
