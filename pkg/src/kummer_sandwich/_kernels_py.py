"""Pure-Python counting kernels; the reference and fallback for the compiled core."""

from __future__ import annotations


def charsum_matrix(matrix: list[list[int]], p: int, residues: list[int], threads: int = 1) -> int:
    """Sum of Legendre symbols of f(x, w) over F_p^2, mod p.

    ``matrix[i][j]`` is the coefficient of x^i w^j, already reduced mod p.
    ``threads`` is accepted for signature parity and ignored.
    """
    dx = len(matrix) - 1
    total = 0
    for w in range(p):
        row = []
        for coeffs in matrix:
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * w + c) % p
            row.append(acc)
        for x in range(p):
            acc = row[dx]
            for i in range(dx - 1, -1, -1):
                acc = (acc * x + row[i]) % p
            total += residues[acc]
    return total % p


def _powers(base: int, n: int, p: int) -> list[int]:
    out = [1] * (n + 1)
    for k in range(1, n + 1):
        out[k] = out[k - 1] * base % p
    return out


def sign_sums(binom: list[int], p: int) -> list[int]:
    """S[l] = sum over s + t = p - 1 - l of C_s C_t (-1)^t, for 0 <= l <= m."""
    m = len(binom) - 1
    out = [0] * (m + 1)
    for ell in range(m + 1):
        n = p - 1 - ell
        acc = 0
        for s in range(max(0, n - m), min(m, n) + 1):
            t = n - s
            term = binom[s] * binom[t]
            acc += -term if t & 1 else term
        out[ell] = acc % p
    return out


def _assemble(p: int, binom: list[int], signs: list[int], triple: list[int]) -> int:
    m = len(binom) - 1
    acc, two = 0, 1
    for ell in range(m + 1):
        acc = (acc + two * binom[ell] % p * signs[ell] % p * triple[ell]) % p
        two = two * 2 % p
    if m & 1:
        acc = -acc
    return (1 + acc) % p


def closed_form_naive(a: int, b: int, c: int, p: int, binom: list[int]) -> int:
    """Direct constrained sums over (l, s, t, i, j, k)."""
    m = len(binom) - 1
    pa, pb, pc = _powers(a, m, p), _powers(b, m, p), _powers(c, m, p)
    signs = sign_sums(binom, p)
    triple = [0] * (m + 1)
    for ell in range(m + 1):
        n = p - 1 - ell
        acc = 0
        for i in range(max(0, n - 2 * m), min(m, n) + 1):
            ci = binom[i] * pa[i] % p
            r = n - i
            for j in range(max(0, r - m), min(m, r) + 1):
                k = r - j
                acc += ci * binom[j] % p * pb[j] % p * binom[k] % p * pc[k]
        triple[ell] = acc % p
    return _assemble(p, binom, signs, triple)


def convolve_mod(u: list[int], v: list[int], p: int) -> list[int]:
    out = [0] * (len(u) + len(v) - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                out[i + j] += ui * vj
    return [x % p for x in out]


def closed_form_conv(a: int, b: int, c: int, p: int, binom: list[int]) -> int:
    """Triple sums as one schoolbook convolution chain u * v * w."""
    m = len(binom) - 1
    pa, pb, pc = _powers(a, m, p), _powers(b, m, p), _powers(c, m, p)
    u = [binom[k] * pa[k] % p for k in range(m + 1)]
    v = [binom[k] * pb[k] % p for k in range(m + 1)]
    w = [binom[k] * pc[k] % p for k in range(m + 1)]
    uvw = convolve_mod(convolve_mod(u, v, p), w, p)
    triple = [uvw[p - 1 - ell] if p - 1 - ell < len(uvw) else 0 for ell in range(m + 1)]
    return _assemble(p, binom, sign_sums(binom, p), triple)
