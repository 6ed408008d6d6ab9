"""Reference N matrix for the exponential chart s(xi) = exp(i T_r xi_r), T = sigma/2.

f(eps) solves s(f) = exp(i T_a eps_a) s(xi); it is read off with mpmath's
matrix logarithm at 40 digits and differentiated by a 4th-order central
difference with step 1e-12.
"""
import mpmath as mp

mp.mp.dps = 40
I = mp.mpc(0, 1)
S = [mp.matrix([[0, 1], [1, 0]]), mp.matrix([[0, -I], [I, 0]]), mp.matrix([[1, 0], [0, -1]])]


def chart(xi):
    return mp.expm(I * sum((xi[r] * S[r] / 2 for r in range(3)), mp.zeros(2)))


def coords(s):
    L = mp.logm(s) / I  # = sum xi_r sigma_r / 2
    return [mp.re(L[0, 1] + L[1, 0]), mp.im(L[1, 0] - L[0, 1]), mp.re(L[0, 0] - L[1, 1])]


def f(xi, a, e):
    return coords(mp.expm(I * e * S[a] / 2) * chart(xi))


def n_matrix(xi):
    h = mp.mpf("1e-12")
    N = mp.matrix(3, 3)
    for a in range(3):
        fp, fm = f(xi, a, h), f(xi, a, -h)
        fp2, fm2 = f(xi, a, 2 * h), f(xi, a, -2 * h)
        for b in range(3):
            N[b, a] = (8 * (fp[b] - fm[b]) - (fp2[b] - fm2[b])) / (12 * h)
    return N


for xi in ([mp.mpf("0.4"), mp.mpf("-0.3"), mp.mpf("0.2")], [mp.mpf("1.1"), mp.mpf("0.9"), mp.mpf("-1.3")]):
    N = n_matrix(xi)
    print("N at", [float(x) for x in xi], ":", " ".join(mp.nstr(N[i, j], 17) for i in range(3) for j in range(3)))
    pi = [mp.mpf("0.5"), mp.mpf("-0.25"), mp.mpf("0.75")]
    t = [-sum(pi[b] * N[b, a] for b in range(3)) for a in range(3)]
    print("  t for pi = (0.5, -0.25, 0.75):", " ".join(mp.nstr(x, 17) for x in t))
