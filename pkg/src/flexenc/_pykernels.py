"""Pure-Python polynomial kernels over GF(p).

Polynomials are sequences of ints in [0, p), ascending degree, with no
trailing zeros; the zero polynomial is empty.  ``_kernels.pyx`` implements
the same functions in C for word-sized moduli.
"""


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] = (c[i] + x) % p
    return trim(c)


def sub(a, b, p):
    n = max(len(a), len(b))
    c = [0] * n
    for i, x in enumerate(a):
        c[i] = x
    for i, x in enumerate(b):
        c[i] = (c[i] - x) % p
    return trim(c)


def mul(a, b, p):
    if not a or not b:
        return []
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return trim([v % p for v in c])


def scale(a, k, p):
    k %= p
    if not k:
        return []
    return [x * k % p for x in a]


def divmod_(a, b, p):
    """Quotient and remainder; ``b`` must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return trim(q), trim(r[:db])


def evaluate(a, x, p):
    y = 0
    for c in reversed(a):
        y = (y * x + c) % p
    return y
