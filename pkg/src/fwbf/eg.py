"""Type-I cyclic LDPC codes from lines of the Euclidean plane EG(2, 2^s)."""

from __future__ import annotations

from .gf import gf_build
from .matrix import ParityCheckMatrix


def eg_ldpc_construct(s: int) -> ParityCheckMatrix:
    """Parity-check matrix of the two-dimensional EG-LDPC code with q = 2^s.

    Points of EG(2, q) are identified with GF(q^2); the n = q^2 - 1 nonzero
    points are indexed by their discrete log.  One line not through the
    origin, L = {a + beta*b : beta in GF(q)}, is picked deterministically
    (smallest (a, b) in alpha-power order with 0 not on L); its incidence
    vector is the first row and the remaining rows are its cyclic shifts,
    i.e. the lines alpha^i * L.  The result is an n x n circulant with row
    and column weight q.
    """
    if s not in (2, 3, 4, 5):
        raise ValueError(f"geometry parameter s must be in {{2, 3, 4, 5}}, got {s}")
    gf = gf_build(2 * s)
    q = 1 << s
    n = (1 << (2 * s)) - 1
    stride = q + 1  # alpha^stride generates the multiplicative group of GF(q)

    subfield = [0] + [gf.alpha_pow(stride * t) for t in range(q - 1)]

    # a/b lies in GF(q) exactly when stride divides log(a) - log(b); the
    # first (i, j) avoiding that gives a line missing the origin.
    base = None
    for i in range(n):
        for j in range(n):
            if (i - j) % n % stride != 0:
                base = (i, j)
                break
        if base is not None:
            break
    a = gf.alpha_pow(base[0])
    b = gf.alpha_pow(base[1])

    line = [a ^ gf.mul(beta, b) for beta in subfield]
    assert len(set(line)) == q and 0 not in line
    first_row = sorted(int(gf.log[x]) for x in line)

    rows = [[(c + i) % n for c in first_row] for i in range(n)]
    return ParityCheckMatrix(rows, n)
