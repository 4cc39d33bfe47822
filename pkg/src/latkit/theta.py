"""Exact truncated theta series of 2Z^n and of modulo-2 construction A lattices.

A truncated theta series lists (squared norm, multiplicity) pairs for every
lattice norm up to a bound.  All multiplicities are exact arbitrary-precision
integers; nothing here touches floating point.  For a construction A lattice
C + 2Z^n the series is known exactly up to d^2 = d_c from (d_c, tau_c) of the
component code alone:

* each minimum-weight codeword contributes 2^d_c lattice points at norm d_c
  (every nonzero coordinate may be +1 or -1);
* the 2Z^n sublattice contributes its own theta terms at multiples of 4.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidParamsError

Term = tuple[int, int]


@dataclass(frozen=True)
class TruncatedTheta:
    """Finite list of (d2, count) terms, complete for all norms <= dmax2."""

    n: int
    terms: tuple[Term, ...]
    dmax2: int

    def __post_init__(self):
        if not self.terms or self.terms[0] != (0, 1):
            raise InvalidParamsError("theta series must start with the (0, 1) term")
        d2s = [d2 for d2, _ in self.terms]
        if d2s != sorted(set(d2s)):
            raise InvalidParamsError("theta terms must be strictly increasing in d2")
        if any(c < 1 for _, c in self.terms) or d2s[-1] > self.dmax2:
            raise InvalidParamsError("theta terms must have count >= 1 and d2 <= dmax2")

    def nonzero_terms(self) -> tuple[Term, ...]:
        return self.terms[1:]

    def count_at(self, d2: int) -> int:
        for t2, c in self.terms:
            if t2 == d2:
                return c
        return 0

    def to_json(self) -> str:
        """Exact JSON export; counts serialized as decimal strings."""
        return json.dumps(
            {"n": self.n, "dmax2": self.dmax2,
             "terms": [[d2, str(c)] for d2, c in self.terms]}
        )

    @classmethod
    def from_json(cls, text: str) -> "TruncatedTheta":
        obj = json.loads(text)
        return cls(
            n=int(obj["n"]),
            terms=tuple((int(d2), int(c)) for d2, c in obj["terms"]),
            dmax2=int(obj["dmax2"]),
        )


def _sum_of_squares_counts(n: int, max_m: int) -> list[int]:
    """counts[m] = #{z in Z^n : sum z_i^2 = m}, exact, by iterated convolution."""
    counts = [1] + [0] * max_m
    base = [(0, 1)]
    j = 1
    while j * j <= max_m:
        base.append((j * j, 2))
        j += 1
    for _ in range(n):
        nxt = [0] * (max_m + 1)
        for m, c in enumerate(counts):
            if c:
                for e, mult in base:
                    if m + e <= max_m:
                        nxt[m + e] += c * mult
        counts = nxt
    return counts


def theta_2zn(n: int, dmax2: int) -> TruncatedTheta:
    """Truncated theta series of the 2Z^n lattice.

    The per-coordinate series is 1 + 2q^4 + 2q^16 + 2q^36 + ...; the n-fold
    product has a term at d^2 = 4m with multiplicity #{z : sum z_i^2 = m}.
    """
    if n < 1 or dmax2 < 0:
        raise InvalidParamsError(f"need n >= 1 and dmax2 >= 0, got n={n} dmax2={dmax2}")
    counts = _sum_of_squares_counts(n, dmax2 // 4)
    terms = [(0, 1)] + [(4 * m, c) for m, c in enumerate(counts) if m and c]
    return TruncatedTheta(n=n, terms=tuple(terms), dmax2=dmax2)


def theta_construction_a(n: int, k: int, d_c: int, tau_c: int) -> TruncatedTheta:
    """Truncated theta series of C + 2Z^n for a code with known (d_c, tau_c).

    Exact for all norms <= d_c.  Codeword-induced points enter only at the
    d_c term; the 2Z^n terms below d_c are exact, and when d_c is itself a
    multiple of 4 the two populations coincide there and add.
    """
    if n < 1 or not (1 <= k <= n) or d_c < 1 or tau_c < 1:
        raise InvalidParamsError(
            f"need n >= k >= 1, d_c >= 1, tau_c >= 1; got n={n} k={k} d_c={d_c} tau_c={tau_c}"
        )
    if d_c < 4:
        terms = [(0, 1), (d_c, tau_c * 2**d_c)]
    elif d_c == 4:
        terms = [(0, 1), (4, tau_c * 2**4 + 2 * n)]
    else:
        big_l = d_c // 4
        if d_c % 4:
            prefix = theta_2zn(n, 4 * big_l)
            terms = list(prefix.terms) + [(d_c, tau_c * 2**d_c)]
        else:
            prefix = theta_2zn(n, 4 * (big_l - 1))
            overlap = theta_2zn(n, d_c).count_at(d_c)
            terms = list(prefix.terms) + [(d_c, tau_c * 2**d_c + overlap)]
    return TruncatedTheta(n=n, terms=tuple(terms), dmax2=d_c)


def truncation_depth(code) -> int:
    """Truncation bound for a code's construction A theta: exactly d_c."""
    if code.d_c is None:
        raise InvalidParamsError(f"code {code.name} has unknown d_c")
    return code.d_c


def code_theta(code, tau_c: int | None = None) -> TruncatedTheta:
    """Construction A theta of a BinaryCode, taking tau_c from the code if unset."""
    tau = tau_c if tau_c is not None else code.tau_c
    if code.d_c is None or tau is None:
        raise InvalidParamsError(
            f"code {code.name} needs known d_c and tau_c for its truncated theta"
        )
    return theta_construction_a(code.n, code.k, code.d_c, tau)
