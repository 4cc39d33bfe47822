"""GF(2^m) arithmetic and GF(2)[x] polynomial helpers.

Field elements are ints holding polynomial coefficients over GF(2); GF(2)[x]
polynomials are ints with coefficient i at bit i.  Everything here exists to
synthesize BCH generator polynomials, so only multiplication, powers and
minimal polynomials are provided.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InvalidParamsError

# One standard primitive polynomial per extension degree.  Codes built from
# any primitive choice share their (n, k, d) parameters; x^7 + x^3 + 1 is the
# classic pick for GF(128).
PRIMITIVE_POLYS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
}


def gf_mul(a: int, b: int, m: int) -> int:
    """Product of two GF(2^m) elements reduced by the primitive polynomial."""
    if m not in PRIMITIVE_POLYS:
        raise InvalidParamsError(f"unsupported extension degree m={m}")
    prim = PRIMITIVE_POLYS[m]
    top = 1 << m
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= prim
    return acc


def gf_pow(a: int, e: int, m: int) -> int:
    acc = 1
    base = a
    while e:
        if e & 1:
            acc = gf_mul(acc, base, m)
        base = gf_mul(base, base, m)
        e >>= 1
    return acc


@lru_cache(maxsize=None)
def _alpha_powers(m: int) -> tuple[int, ...]:
    """alpha^0 .. alpha^(2^m - 2) for the primitive element alpha = x."""
    order = (1 << m) - 1
    out = [1]
    for _ in range(order - 1):
        out.append(gf_mul(out[-1], 2, m))
    return tuple(out)


def cyclotomic_coset(s: int, m: int) -> tuple[int, ...]:
    """Cyclotomic coset of s modulo 2^m - 1, sorted ascending."""
    mod = (1 << m) - 1
    seen = set()
    cur = s % mod
    while cur not in seen:
        seen.add(cur)
        cur = (cur * 2) % mod
    return tuple(sorted(seen))


def minimal_polynomial(s: int, m: int) -> int:
    """Minimal polynomial of alpha^s over GF(2), packed as a GF(2)[x] int.

    Built as the product of (x - alpha^j) over the cyclotomic coset of s;
    the result must have all coefficients in {0, 1}.
    """
    alpha = _alpha_powers(m)
    poly = [1]  # coefficients in GF(2^m), index = degree
    for j in cyclotomic_coset(s, m):
        root = alpha[j]
        nxt = [0] * (len(poly) + 1)
        for d, coef in enumerate(poly):
            nxt[d + 1] ^= coef
            nxt[d] ^= gf_mul(coef, root, m)
        poly = nxt
    packed = 0
    for d, coef in enumerate(poly):
        if coef not in (0, 1):
            raise InvalidParamsError(f"minimal polynomial has non-binary coefficient {coef}")
        packed |= coef << d
    return packed


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less multiplication in GF(2)[x]."""
    acc = 0
    shift = 0
    while b:
        if b & 1:
            acc ^= a << shift
        b >>= 1
        shift += 1
    return acc


def poly_mod(a: int, b: int) -> int:
    db = poly_degree(b)
    while a.bit_length() - 1 >= db and a:
        a ^= b << (a.bit_length() - 1 - db)
    return a
