"""Schoolbook polynomial arithmetic over F_p, independent of fwlab.field."""


def mulmod(a, b, f, p):
    m = len(f) - 1
    prod = [0] * (2 * m)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for i in range(m + 1):
                prod[d - m + i] = (prod[d - m + i] - c * f[i]) % p
    return prod[:m]


def powmod(a, e, f, p):
    r = [1] + [0] * (len(f) - 2)
    base = list(a)
    while e:
        if e & 1:
            r = mulmod(r, base, f, p)
        base = mulmod(base, base, f, p)
        e >>= 1
    return r


def add(a, b, p):
    return [(x + y) % p for x, y in zip(a, b)]


def to_int(a, p):
    return sum(c * p**i for i, c in enumerate(a))


def from_int(v, p, m):
    return [(v // p**i) % p for i in range(m)]


def trace(a, f, p):
    m = len(f) - 1
    acc = [0] * m
    x = list(a)
    for _ in range(m):
        acc = add(acc, x, p)
        x = powmod(x, p, f, p)
    assert all(c == 0 for c in acc[1:])
    return acc[0]
