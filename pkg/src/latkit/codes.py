"""Binary linear code model, EBCH synthesis, and the code-parameter registry.

A BinaryCode couples an (n, k) generator with what is known about its minimum
Hamming distance d_c and multiplicity tau_c (the number of minimum-weight
codewords).  The registry stores (d_c, tau_c) rows for code families whose
weight profiles are too large to enumerate; bundled entries cover only values
that the package can state with confidence, everything else is merged from a
user CSV.
"""

from __future__ import annotations

import csv
import enum
import io
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from . import binmat, gf2m
from .binmat import BitMatrix, BitVector
from .errors import (
    InvalidParamsError,
    NotFoundError,
    TooLargeError,
    UnsupportedDistanceError,
)

ENUMERATION_BOUND = 24  # 2^k codeword sweeps stay sub-minute up to here


class CodeFamily(enum.Enum):
    EBCH = "ebch"
    POLAR = "polar"
    EXT_HAMMING = "exthamming"
    CUSTOM = "custom"

    @classmethod
    def parse(cls, text: str) -> "CodeFamily":
        key = text.strip().lower()
        for fam in cls:
            if fam.value == key:
                return fam
        raise InvalidParamsError(f"unknown code family {text!r}")


@dataclass(frozen=True)
class BinaryCode:
    """An (n, k) binary linear code with optional known (d_c, tau_c)."""

    name: str
    n: int
    k: int
    gen: BitMatrix
    d_c: int | None = None
    tau_c: int | None = None
    family: CodeFamily = CodeFamily.CUSTOM

    def __post_init__(self):
        if not (1 <= self.k <= self.n):
            raise InvalidParamsError(f"need 1 <= k <= n, got k={self.k} n={self.n}")
        if self.gen.rows != self.k or self.gen.cols != self.n:
            raise InvalidParamsError(
                f"generator is {self.gen.rows}x{self.gen.cols}, expected {self.k}x{self.n}"
            )
        if binmat.rank(self.gen) != self.k:
            raise InvalidParamsError("generator rows are linearly dependent")

    @property
    def rate(self) -> float:
        return self.k / self.n

    def encode(self, u: BitVector) -> BitVector:
        return binmat.encode(self.gen, u)

    def gen_bits(self) -> np.ndarray:
        return self.gen.to_bits()

    def describe(self) -> str:
        d = "?" if self.d_c is None else self.d_c
        return f"({self.n}, {self.k}, {d})"


@dataclass(frozen=True)
class RegistryEntry:
    family: CodeFamily
    n: int
    k: int
    d_c: int
    tau_c: int
    source: str

    def __post_init__(self):
        if self.d_c < 1 or self.tau_c < 1:
            raise InvalidParamsError("registry entry needs d_c >= 1 and tau_c >= 1")


class Registry:
    """(family, n, k) -> RegistryEntry map with CSV merge semantics."""

    def __init__(self, entries: dict | None = None):
        self._entries: dict[tuple[CodeFamily, int, int], RegistryEntry] = dict(entries or {})

    def lookup(self, family: CodeFamily | str, n: int, k: int) -> RegistryEntry:
        if isinstance(family, str):
            family = CodeFamily.parse(family)
        try:
            return self._entries[(family, n, k)]
        except KeyError:
            raise NotFoundError(
                f"no registry entry for ({family.value}, {n}, {k}); supply tau_c via "
                "--tau-c or merge a registry CSV (--registry / LATKIT_REGISTRY)"
            ) from None

    def entries(self, family: CodeFamily | None = None) -> list[RegistryEntry]:
        out = [e for e in self._entries.values() if family is None or e.family == family]
        return sorted(out, key=lambda e: (e.family.value, e.n, -e.k))

    def merge_csv(self, text: str, source_name: str = "user") -> None:
        """Merge rows from a registry CSV (header family,n,k,d_c,tau_c,source).

        Incoming rows win on conflict, with a warning.
        """
        reader = csv.DictReader(io.StringIO(text))
        required = {"family", "n", "k", "d_c", "tau_c"}
        if reader.fieldnames is None or not required.issubset(set(reader.fieldnames)):
            raise InvalidParamsError(
                "registry CSV needs header columns family,n,k,d_c,tau_c[,source]"
            )
        for row in reader:
            entry = RegistryEntry(
                family=CodeFamily.parse(row["family"]),
                n=int(row["n"]),
                k=int(row["k"]),
                d_c=int(row["d_c"]),
                tau_c=int(row["tau_c"]),
                source=(row.get("source") or source_name).strip(),
            )
            key = (entry.family, entry.n, entry.k)
            if key in self._entries and self._entries[key] != entry:
                warnings.warn(
                    f"registry override for ({entry.family.value}, {entry.n}, {entry.k}): "
                    f"{self._entries[key].tau_c} -> {entry.tau_c}",
                    stacklevel=2,
                )
            self._entries[key] = entry

    def copy(self) -> "Registry":
        return Registry(self._entries)


def load_builtin_registry() -> Registry:
    reg = Registry()
    text = resources.files("latkit.data").joinpath("registry.csv").read_text()
    reg.merge_csv(text, source_name="builtin")
    return reg


def registry_lookup(family: CodeFamily | str, n: int, k: int,
                    registry: Registry | None = None) -> RegistryEntry:
    reg = registry if registry is not None else load_builtin_registry()
    return reg.lookup(family, n, k)


# ---------------------------------------------------------------------------
# BCH / EBCH synthesis over GF(2^m)
# ---------------------------------------------------------------------------

def bch_generator(m: int, designed_distance: int) -> int:
    """Narrow-sense BCH generator polynomial, packed as a GF(2)[x] int.

    g(x) = lcm of the minimal polynomials of alpha^1 .. alpha^(delta-1); the
    code length is 2^m - 1 and the dimension is length - deg(g).
    """
    delta = designed_distance
    if delta % 2 == 0 or not (3 <= delta <= 31) or delta > (1 << m) - 1:
        raise UnsupportedDistanceError(
            f"designed distance must be odd and in [3, 31], got {delta}"
        )
    done = set()
    g = 1
    for s in range(1, delta):
        coset = gf2m.cyclotomic_coset(s, m)
        if coset in done:
            continue
        done.add(coset)
        g = gf2m.poly_mul(g, gf2m.minimal_polynomial(s, m))
    return g


@lru_cache(maxsize=None)
def bch_code(m: int, designed_distance: int) -> BinaryCode:
    """Cyclic (2^m - 1, k) BCH code with rows x^i * g(x)."""
    g = bch_generator(m, designed_distance)
    n = (1 << m) - 1
    k = n - gf2m.poly_degree(g)
    if k < 1:
        raise UnsupportedDistanceError(
            f"designed distance {designed_distance} leaves no message bits at m={m}"
        )
    rows = [g << i for i in range(k)]
    gen = BitMatrix.from_row_ints(rows, n)
    return BinaryCode(
        name=f"bch({n},{k},{designed_distance})",
        n=n,
        k=k,
        gen=gen,
        d_c=designed_distance,
        tau_c=None,
        family=CodeFamily.EBCH,
    )


def extend_even_parity(code: BinaryCode) -> BinaryCode:
    """Append an overall parity bit; every codeword of the result has even weight."""
    bits = code.gen.to_bits()
    parity = bits.sum(axis=1, dtype=np.uint32) % 2
    ext = np.concatenate([bits, parity[:, None].astype(np.uint8)], axis=1)
    d = None
    if code.d_c is not None:
        d = code.d_c + 1 if code.d_c % 2 else code.d_c
    return BinaryCode(
        name=code.name + "+",
        n=code.n + 1,
        k=code.k,
        gen=BitMatrix.from_bits(ext),
        d_c=d,
        tau_c=None,
        family=code.family,
    )


@lru_cache(maxsize=None)
def _ebch_by_dimension(m: int) -> dict[int, int]:
    """dimension -> designed distance for the supported narrow-sense range.

    When two designed distances share a dimension they share the generator
    polynomial too, so the larger (stronger) distance guarantee is kept.
    """
    table = {}
    for delta in range(3, 32, 2):
        try:
            code = bch_code(m, delta)
        except UnsupportedDistanceError:
            break
        table[code.k] = delta
    return table


def ebch_code(n: int, k: int, registry: Registry | None = None) -> BinaryCode:
    """Extended BCH code of length n = 2^m with dimension k.

    d_c defaults to designed distance + 1 (the true distance can exceed it
    for some dimensions); a registry entry overrides both d_c and tau_c.
    """
    m = n.bit_length() - 1
    if n != 1 << m or m not in gf2m.PRIMITIVE_POLYS:
        raise InvalidParamsError(f"EBCH length must be a supported power of two, got {n}")
    table = _ebch_by_dimension(m)
    if k not in table:
        raise NotFoundError(
            f"no narrow-sense EBCH code with n={n}, k={k}; supported k: "
            f"{sorted(table, reverse=True)}"
        )
    code = extend_even_parity(bch_code(m, table[k]))
    tau = None
    d = code.d_c
    try:
        entry = registry_lookup(CodeFamily.EBCH, n, k, registry)
        tau = entry.tau_c
        d = entry.d_c
    except NotFoundError:
        pass
    return BinaryCode(
        name=f"ebch({n},{k},{d})",
        n=n,
        k=k,
        gen=code.gen,
        d_c=d,
        tau_c=tau,
        family=CodeFamily.EBCH,
    )


# ---------------------------------------------------------------------------
# Hamming codes (small test vehicles)
# ---------------------------------------------------------------------------

def hamming_code(r: int) -> BinaryCode:
    """(2^r - 1, 2^r - 1 - r, 3) Hamming code, positions 1..n, parity at powers of two."""
    if r < 2:
        raise InvalidParamsError("Hamming code needs r >= 2")
    n = (1 << r) - 1
    data_pos = [p for p in range(1, n + 1) if p & (p - 1)]
    rows = np.zeros((len(data_pos), n), dtype=np.uint8)
    for i, p in enumerate(data_pos):
        rows[i, p - 1] = 1
        for j in range(r):
            if p >> j & 1:
                rows[i, (1 << j) - 1] ^= 1
    return BinaryCode(
        name=f"hamming({n},{len(data_pos)})",
        n=n,
        k=len(data_pos),
        gen=BitMatrix.from_bits(rows),
        d_c=3,
        tau_c=None,
        family=CodeFamily.EXT_HAMMING,
    )


def extended_hamming_code(r: int) -> BinaryCode:
    """(2^r, 2^r - 1 - r, 4) extended Hamming code."""
    code = extend_even_parity(hamming_code(r))
    return BinaryCode(
        name=f"exthamming({code.n},{code.k})",
        n=code.n,
        k=code.k,
        gen=code.gen,
        d_c=4,
        tau_c=code.tau_c,
        family=CodeFamily.EXT_HAMMING,
    )


# ---------------------------------------------------------------------------
# Exact weight profile by codebook enumeration
# ---------------------------------------------------------------------------

def brute_force_weight_profile(code: BinaryCode) -> tuple[int, int]:
    """Exact (d_c, tau_c) by enumerating all 2^k codewords.

    Refuses k beyond the enumeration bound.  Uses the shared kernel backend
    (compiled when available) over a Gray-code walk of the codebook.
    """
    if code.k > ENUMERATION_BOUND:
        raise TooLargeError(f"k={code.k} exceeds enumeration bound {ENUMERATION_BOUND}")
    from . import kernels

    d, count = kernels.get_backend().weight_profile(code.gen_bits())
    return d, count
