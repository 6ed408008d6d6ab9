"""Reference values for the Grassmann tests by brute-force expansion.

Elements are dicts from sorted generator tuples to complex coefficients; the
product sorts the concatenated word by bubble sort and counts swaps.
"""
from itertools import product as cartesian


def mono_mul(a, b):
    if set(a) & set(b):
        return None, 0
    word = list(a + b)
    sign = 1
    for i in range(len(word)):
        for j in range(len(word) - 1 - i):
            if word[j] > word[j + 1]:
                word[j], word[j + 1] = word[j + 1], word[j]
                sign = -sign
    return tuple(word), sign


def mul(x, y):
    out = {}
    for (a, ca), (b, cb) in cartesian(x.items(), y.items()):
        m, s = mono_mul(a, b)
        if s:
            out[m] = out.get(m, 0) + s * ca * cb
    return {k: v for k, v in out.items() if v != 0}


def add(x, y, s=1):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v != 0}


one = {(): 1}
th = lambda i: {(i,): 1}
p = mul(mul(add(one, th(1)), add(one, th(2))), add(one, th(3)))
print("(1+t1)(1+t2)(1+t3):", sorted(p.items()))

# S_a = -(i/2) eps_abc f_b f_c with f_a = theta_a
eps = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}
f = [th(1), th(2), th(3)]
for a in range(3):
    S = {}
    for (i, j, k), e in eps.items():
        if i == a:
            t = mul(f[j], f[k])
            S = add(S, {m: -0.5j * e * c for m, c in t.items()})
    print(f"S_{a + 1} for f = theta:", S)

# a mixed example: f_1 = t1 + 2 t4, f_2 = t2 - t1 t2 t3, f_3 = 0.5 t3 + t5 (k = 5)
f = [add(th(1), {(4,): 2}), add(th(2), {(1, 2, 3): -1}), add({(3,): 0.5}, th(5))]
for a in range(3):
    S = {}
    for (i, j, k), e in eps.items():
        if i == a:
            t = mul(f[j], f[k])
            S = add(S, {m: -0.5j * e * c for m, c in t.items()})
    print(f"S_{a + 1} mixed:", sorted(S.items()))
