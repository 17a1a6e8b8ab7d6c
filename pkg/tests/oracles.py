"""Independent reference computations used only by the tests.

Nothing here calls into ``sigmainv``; each oracle takes a different route
(numpy box enumeration, sympy linear algebra, mpmath quadrature, monomial
counting) to the quantity the library computes.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from math import gcd, isqrt

import mpmath
import numpy as np
import sympy


def theta_bruteforce(columns, bound: int) -> dict[int, int]:
    """Count lattice vectors by squared norm with a box enumeration.

    The box ``|x_i| <= sqrt(bound * (G^-1)_ii)`` contains every coefficient
    vector of norm at most ``bound`` (Cauchy-Schwarz in the dual basis).
    """
    B = sympy.Matrix(columns).T
    G = B.T * B
    Ginv = G.inv()
    radius = [int(sympy.floor(sympy.sqrt(bound * Ginv[i, i]))) for i in range(G.rows)]
    Gn = np.array(G.tolist(), dtype=np.int64)
    axes = [np.arange(-r, r + 1, dtype=np.int64) for r in radius]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))
    norms = np.einsum("ij,jk,ik->i", grid, Gn, grid)
    keep = norms[norms <= bound]
    return dict(Counter(int(n) for n in keep))


def det_sympy(rows) -> Fraction:
    d = sympy.Rational(sympy.Matrix([[sympy.Rational(str(x)) for x in r] for r in rows]).det())
    return Fraction(int(d.p), int(d.q))


def elliptic_E_quad(k, dps: int = 30):
    with mpmath.workdps(dps):
        k = mpmath.mpf(k)
        return mpmath.quad(lambda t: mpmath.sqrt(1 - (k * mpmath.sin(t)) ** 2), [0, mpmath.pi / 2])


def _invariant_monomials(p: int, q: int, d: int) -> int:
    """Monomials z1^a zb1^b z2^c zb2^e of degree d with a - b + q (c - e) = 0 mod p."""
    if d < 0:
        return 0
    count = 0
    for a in range(d + 1):
        for b in range(d + 1 - a):
            for c in range(d + 1 - a - b):
                e = d - a - b - c
                if (a - b + q * (c - e)) % p == 0:
                    count += 1
    return count


def lens_harmonic_dim(p: int, q: int, d: int) -> int:
    """dim of invariant harmonics via P_d = H_d + |x|^2 P_{d-2} (|x|^2 is invariant)."""
    return _invariant_monomials(p, q, d) - _invariant_monomials(p, q, d - 2)


def classical_lens(p: int, q: int, q2: int) -> bool:
    if p <= 2:
        return True
    inv = pow(q, -1, p)
    return q2 % p in {q % p, (-q) % p, inv, (-inv) % p}


X, Y, Z, W = sympy.symbols("x y z w", real=True)


def sympy_laplacian(expr) -> sympy.Expr:
    return sympy.expand(sum(sympy.diff(expr, v, 2) for v in (X, Y, Z, W)))


def pullback_is_round(components, scales, point) -> tuple[bool, Fraction]:
    """Pullback of sum scale_i df_i^2 to the tangent space of S^3 at ``point``.

    Uses an explicit orthonormal-up-to-scale frame ``i p, j p, k p`` built from
    quaternion multiplication.
    """
    x, y, z, w = point
    frame = [(-y, x, -w, z), (-z, w, x, -y), (-w, -z, y, x)]
    subs = dict(zip((X, Y, Z, W), point))
    grads = [[sympy.diff(f, v).subs(subs) for v in (X, Y, Z, W)] for f in components]

    def g(u, v):
        total = 0
        for s, gr in zip(scales, grads):
            du = sum(a * b for a, b in zip(gr, u))
            dv = sum(a * b for a, b in zip(gr, v))
            total += s * du * dv
        return sympy.nsimplify(total)

    M = [[g(u, v) for v in frame] for u in frame]
    c = Fraction(str(M[0][0]))
    round_ = all(M[i][j] == (M[0][0] if i == j else 0) for i in range(3) for j in range(3))
    return round_, c


def rational_sphere_points(count: int):
    out = []
    for e in range(2, 40):
        for a, b, c in product(range(1, e), repeat=3):
            d2 = e * e - a * a - b * b - c * c
            if d2 >= 1 and isqrt(d2) ** 2 == d2 and gcd(gcd(a, b), gcd(c, e)) == 1:
                out.append(tuple(sympy.Rational(v, e) for v in (a, -b, c, isqrt(d2))))
                if len(out) == count:
                    return out
    return out
