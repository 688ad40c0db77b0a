"""Pure-Python versions of the compiled kernels, same signatures."""

RENORM_EVERY = 16


def half_turn_apply(p, z):
    s = 1.0 + p.real * p.real + p.imag * p.imag
    return (s * z - 2.0 * p) / (2.0 * p.conjugate() * z - s)


def apply_word(pts, idx, sgn):
    """Apply leapfrog letters left to right, in place on ``pts``."""
    for i, sg in zip(idx, sgn):
        i = int(i) - 1
        j = (i + 1) % 6
        xi = complex(pts[i])
        xj = complex(pts[j])
        if sg > 0:
            pts[i] = xj
            pts[j] = half_turn_apply(xj, xi)
        else:
            pts[i] = half_turn_apply(xi, xj)
            pts[j] = xi


def _renorm(a, b):
    det = (abs(a) ** 2 - abs(b) ** 2) ** 0.5
    return a / det, b / det


def half_turn_product(pts):
    a, b = 1.0 + 0j, 0j
    for k, p in enumerate(pts):
        p = complex(p)
        r2 = p.real * p.real + p.imag * p.imag
        w = 1.0 / (1.0 - r2)
        ha = 1j * (1.0 + r2) * w
        hb = -2j * p * w
        a, b = ha * a + hb * b.conjugate(), ha * b + hb * a.conjugate()
        if (k + 1) % RENORM_EVERY == 0:
            a, b = _renorm(a, b)
    return a, b


def mobius_chain(a_seq, b_seq):
    a, b = 1.0 + 0j, 0j
    for k, (ma, mb) in enumerate(zip(a_seq, b_seq)):
        ma, mb = complex(ma), complex(mb)
        a, b = ma * a + mb * b.conjugate(), ma * b + mb * a.conjugate()
        if (k + 1) % RENORM_EVERY == 0:
            a, b = _renorm(a, b)
    return a, b
