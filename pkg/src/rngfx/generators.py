"""Bit-exact 32-bit uniform generators, exposed as pure state machines.

Every generator here is a function from state to (new_state, output),
with the state a small immutable value object. Nothing is hidden in
module globals, so states can be cloned, serialized, enumerated and
stepped from arbitrary points, which is what the forensic censuses in
:mod:`rngfx.forensics` rely on.

The zoo, in one place:

==================  =====================================================
name                output as a function of the current registers
==================  =====================================================
shr3                x + T(x) mod 2^32           (x = shift register)
shr0                T(x)                        (the register itself)
cong                R(c) = 69069 c + 1234567    (mod 2^32)
mwc (one register)  a (y & 0xFFFF) + (y >> 16)  (packed carry/residual)
mwc32               (z' << 16) + (w' & 0xFFFF)  (two MWC registers)
cng-plus-shr0       R(c) + T(x) mod 2^32
shrcong-xplustx     x + T(x) + R(c) mod 2^32
kiss-xplustx        x + T(x) + R(c) + mwc32 word, mod 2^32
==================  =====================================================

T is the three-shift xorshift map
``x ^= x << 13; x ^= x >> 17; x ^= x << 5`` (all mod 2^32). It is a
GF(2)-linear bijection with T(0) = 0 and maximal period 2^32 - 1 on
the nonzero words. The shrcong/kiss "x plus Tx" compositions are this
package's own definitions (documented here, used by the long-run
chi-square experiment); the other rows are verbatim ports of widely
circulated C one-liners, including their quirks. In particular the
uniform-to-real map uses the constant 2.328306e-10 exactly as printed
in the original code, not 2^-32.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .errors import ZeroJsrSeed

MASK32 = 0xFFFFFFFF

# The classic constants, kept verbatim.
CONG_MULT = 69069
CONG_INC = 1234567
MWC_A_Z = 36969
MWC_A_W = 18000
UNI_SCALE = 2.328306e-10  # printed constant; deliberately not 2**-32

# Fixed icng used by scalar seeding, and customary defaults for the
# MWC registers of the kiss-style variant (nothing in the analyzed
# code fixes the latter two; they are this package's documented choice).
ICNG_SEED_DEFAULT = 362436069
MWC_Z_DEFAULT = 362436069
MWC_W_DEFAULT = 521288629

VARIANT_SHR3 = "shr3"
VARIANT_SHR0 = "shr0"
VARIANT_CNG_PLUS_SHR0 = "cng-plus-shr0"
VARIANT_MWC32 = "mwc32"
VARIANT_KISS_XPLUSTX = "kiss-xplustx"
VARIANT_SHRCONG_XPLUSTX = "shrcong-xplustx"

COMBINED_VARIANTS = (
    VARIANT_SHR3,
    VARIANT_SHR0,
    VARIANT_CNG_PLUS_SHR0,
    VARIANT_MWC32,
    VARIANT_KISS_XPLUSTX,
    VARIANT_SHRCONG_XPLUSTX,
)


def shr_transform(x: int) -> int:
    """Apply the three-shift xorshift map T to a 32-bit word.

    T(0) = 0; on nonzero words T is a bijection of period 2^32 - 1.

    >>> shr_transform(0)
    0
    >>> shr_transform(1)
    270369
    """
    x &= MASK32
    x ^= (x << 13) & MASK32
    x ^= x >> 17
    x ^= (x << 5) & MASK32
    return x


def signed32(x: int) -> int:
    """Reinterpret a 32-bit word as a two's-complement signed value.

    Done in plain Python integers, so abs(signed32(0x80000000)) == 2**31
    is representable (the C original risks undefined behavior there).
    """
    x &= MASK32
    return x - 0x100000000 if x >= 0x80000000 else x


def uni_to_real(x: int) -> float:
    """Map a 32-bit word to a double in (0, 1).

    Computes 0.5 + signed(x) * 2.328306e-10 with the constant kept
    verbatim. Because 2.328306e-10 is slightly below 2^-32, the result
    is bounded away from both endpoints: the minimum (at x=0x80000000)
    is about 9.3746e-8 and the maximum (at x=0x7FFFFFFF) is about
    1 - 9.37e-8, so log(uni_to_real(x)) is always finite.
    """
    return 0.5 + signed32(x) * UNI_SCALE


def r0(x: int) -> int:
    """Multiplicative part of the congruential step: 69069 x mod 2^32."""
    return (CONG_MULT * x) & MASK32


@dataclass(frozen=True)
class ShrState:
    """State of the 32-bit xorshift register. jsr must stay nonzero."""

    jsr: int

    def __post_init__(self) -> None:
        if not 0 <= self.jsr <= MASK32:
            raise ValueError(f"jsr out of 32-bit range: {self.jsr!r}")
        if self.jsr == 0:
            raise ZeroJsrSeed("jsr=0 is the xorshift fixed point")

    def to_bytes(self) -> bytes:
        """Serialize as 4 bytes, little-endian."""
        return struct.pack("<I", self.jsr)

    @classmethod
    def from_bytes(cls, data: bytes) -> "ShrState":
        return cls(struct.unpack("<I", data)[0])


@dataclass(frozen=True)
class CongState:
    """State of the congruential register. Full period includes 0."""

    icng: int

    def __post_init__(self) -> None:
        if not 0 <= self.icng <= MASK32:
            raise ValueError(f"icng out of 32-bit range: {self.icng!r}")

    def to_bytes(self) -> bytes:
        """Serialize as 4 bytes, little-endian."""
        return struct.pack("<I", self.icng)

    @classmethod
    def from_bytes(cls, data: bytes) -> "CongState":
        return cls(struct.unpack("<I", data)[0])


@dataclass(frozen=True)
class MwcRegister:
    """One multiply-with-carry register, packed as (carry << 16) | residual.

    The transition is (c, w) -> ((c + a w) div 2^16, (c + a w) mod 2^16),
    or on the packed word y: y' = a (y & 0xFFFF) + (y >> 16). With
    m = a * 2^16 - 1 a safe prime (true for both multipliers used here)
    the nonzero states minus the two trivial fixed points (0, 0) and
    (a - 1, 2^16 - 1) split into exactly two orbits of period (m - 1)/2.
    """

    state: int
    a: int = MWC_A_Z

    def __post_init__(self) -> None:
        if self.a not in (MWC_A_Z, MWC_A_W):
            raise ValueError(f"unsupported MWC multiplier: {self.a!r}")
        if not 0 <= self.state <= MASK32:
            raise ValueError(f"state out of 32-bit range: {self.state!r}")

    @property
    def carry(self) -> int:
        return self.state >> 16

    @property
    def residual(self) -> int:
        return self.state & 0xFFFF

    def is_trivial_fixed_point(self) -> bool:
        return self.state in (0, ((self.a - 1) << 16) | 0xFFFF)

    def to_bytes(self) -> bytes:
        """Serialize as 8 bytes, little-endian: multiplier then packed state."""
        return struct.pack("<II", self.a, self.state)

    @classmethod
    def from_bytes(cls, data: bytes) -> "MwcRegister":
        a, state = struct.unpack("<II", data)
        return cls(state, a)


def shr3_next(s: ShrState) -> tuple[ShrState, int]:
    """Step the xorshift register and return old + new state mod 2^32.

    As a function of the old register x the output is x + T(x), which
    is famously NOT a bijection; see the preimage census in forensics.
    """
    new = shr_transform(s.jsr)
    return ShrState(new), (s.jsr + new) & MASK32


def shr0_next(s: ShrState) -> tuple[ShrState, int]:
    """Step the xorshift register and return the new state itself."""
    new = shr_transform(s.jsr)
    return ShrState(new), new


def cong_next(c: CongState) -> tuple[CongState, int]:
    """Step the congruential register; output is the new register."""
    new = (CONG_MULT * c.icng + CONG_INC) & MASK32
    return CongState(new), new


def mwc_step(r: MwcRegister) -> tuple[MwcRegister, int]:
    """Step one MWC register; output is the new packed state.

    The two trivial fixed points step to themselves; callers that need
    a generator (rather than a map to study) should avoid seeding there,
    see MwcRegister.is_trivial_fixed_point.
    """
    new = (r.a * (r.state & 0xFFFF) + (r.state >> 16)) & MASK32
    return MwcRegister(new, r.a), new


def mwc32_next(
    z: MwcRegister, w: MwcRegister
) -> tuple[tuple[MwcRegister, MwcRegister], int]:
    """Step both MWC registers and combine: (z' << 16) + (w' & 0xFFFF).

    The top 16 output bits are exactly the low 16 bits of the stepped
    z register, which is what makes the per-orbit bias of z directly
    visible in the output.
    """
    z2, znew = mwc_step(z)
    w2, wnew = mwc_step(w)
    return (z2, w2), ((znew << 16) + (wnew & 0xFFFF)) & MASK32


def randn_uni_next(
    s: ShrState, c: CongState
) -> tuple[tuple[ShrState, CongState], int]:
    """Step both registers of the cng-plus-shr0 combination.

    Output is (new icng + new jsr) mod 2^32. Single outputs are exactly
    uniform over the full (jsr, icng) state space (for fixed jsr step,
    adding the icng term is a bijection), but consecutive pairs are not;
    the pair map a -> T(a) - R0(a) studied in forensics is the witness.
    """
    s2, t = shr0_next(s)
    c2, r = cong_next(c)
    return (s2, c2), (t + r) & MASK32


@dataclass(frozen=True)
class SeedSpec:
    """Seed for the cng-plus-shr0 family.

    mode "scalar": jsr <- a, icng <- 362436069 (the fixed value).
    mode "vector": jsr <- a, icng <- b.
    Both reject a = 0, which would park the shift register on its
    fixed point.
    """

    mode: str
    a: int
    b: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("scalar", "vector"):
            raise ValueError(f"unknown seed mode: {self.mode!r}")
        if self.mode == "vector" and self.b is None:
            raise ValueError("vector mode needs both a and b")


def seed(spec: SeedSpec) -> tuple[ShrState, CongState]:
    """Initialize (jsr, icng) registers from a SeedSpec.

    Raises ZeroJsrSeed when the spec would set jsr = 0.
    """
    if (spec.a & MASK32) == 0:
        raise ZeroJsrSeed("seed would set jsr=0")
    jsr = ShrState(spec.a & MASK32)
    if spec.mode == "scalar":
        return jsr, CongState(ICNG_SEED_DEFAULT)
    return jsr, CongState(spec.b & MASK32)


@dataclass(frozen=True)
class CombinedState:
    """Tagged union over every uniform variant the package implements.

    Only the registers the variant uses are set; the rest stay None.
    The shrcong/kiss x-plus-Tx compositions are this package's own
    documented definitions (see the module docstring).
    """

    variant: str
    jsr: ShrState | None = None
    icng: CongState | None = None
    z: MwcRegister | None = None
    w: MwcRegister | None = None

    def __post_init__(self) -> None:
        if self.variant not in COMBINED_VARIANTS:
            raise ValueError(f"unknown variant: {self.variant!r}")
        need_jsr = self.variant in (
            VARIANT_SHR3,
            VARIANT_SHR0,
            VARIANT_CNG_PLUS_SHR0,
            VARIANT_KISS_XPLUSTX,
            VARIANT_SHRCONG_XPLUSTX,
        )
        need_icng = self.variant in (
            VARIANT_CNG_PLUS_SHR0,
            VARIANT_KISS_XPLUSTX,
            VARIANT_SHRCONG_XPLUSTX,
        )
        need_mwc = self.variant in (VARIANT_MWC32, VARIANT_KISS_XPLUSTX)
        if need_jsr and self.jsr is None:
            raise ValueError(f"{self.variant} needs a jsr register")
        if need_icng and self.icng is None:
            raise ValueError(f"{self.variant} needs an icng register")
        if need_mwc and (self.z is None or self.w is None):
            raise ValueError(f"{self.variant} needs z and w registers")

    def to_bytes(self) -> bytes:
        """Serialize: 1 tag byte (index into COMBINED_VARIANTS), then the
        variant's registers in the fixed order jsr, icng, z, w, each in
        its own little-endian layout."""
        out = [struct.pack("<B", COMBINED_VARIANTS.index(self.variant))]
        for reg in (self.jsr, self.icng, self.z, self.w):
            if reg is not None:
                out.append(reg.to_bytes())
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "CombinedState":
        variant = COMBINED_VARIANTS[data[0]]
        body = data[1:]
        jsr = icng = z = w = None
        if variant in (
            VARIANT_SHR3,
            VARIANT_SHR0,
            VARIANT_CNG_PLUS_SHR0,
            VARIANT_KISS_XPLUSTX,
            VARIANT_SHRCONG_XPLUSTX,
        ):
            jsr, body = ShrState.from_bytes(body[:4]), body[4:]
        if variant in (
            VARIANT_CNG_PLUS_SHR0,
            VARIANT_KISS_XPLUSTX,
            VARIANT_SHRCONG_XPLUSTX,
        ):
            icng, body = CongState.from_bytes(body[:4]), body[4:]
        if variant in (VARIANT_MWC32, VARIANT_KISS_XPLUSTX):
            z, body = MwcRegister.from_bytes(body[:8]), body[8:]
            w, body = MwcRegister.from_bytes(body[:8]), body[8:]
        if body:
            raise ValueError("trailing bytes in serialized state")
        return cls(variant, jsr=jsr, icng=icng, z=z, w=w)


def make_combined(
    variant: str,
    jsr: int | None = None,
    icng: int | None = None,
    z: int | None = None,
    w: int | None = None,
) -> CombinedState:
    """Build a CombinedState from raw register words, with defaults.

    jsr has no default (the caller must choose a nonzero word when the
    variant uses it); icng defaults to the fixed scalar-seeding value
    and z/w to the customary kiss constants.
    """
    kwargs = {}
    if variant in (
        VARIANT_SHR3,
        VARIANT_SHR0,
        VARIANT_CNG_PLUS_SHR0,
        VARIANT_KISS_XPLUSTX,
        VARIANT_SHRCONG_XPLUSTX,
    ):
        if jsr is None:
            raise ZeroJsrSeed("variant needs an explicit nonzero jsr seed")
        kwargs["jsr"] = ShrState(jsr & MASK32)
    if variant in (
        VARIANT_CNG_PLUS_SHR0,
        VARIANT_KISS_XPLUSTX,
        VARIANT_SHRCONG_XPLUSTX,
    ):
        word = ICNG_SEED_DEFAULT if icng is None else icng
        kwargs["icng"] = CongState(word & MASK32)
    if variant in (VARIANT_MWC32, VARIANT_KISS_XPLUSTX):
        zword = MWC_Z_DEFAULT if z is None else z
        wword = MWC_W_DEFAULT if w is None else w
        kwargs["z"] = MwcRegister(zword & MASK32, MWC_A_Z)
        kwargs["w"] = MwcRegister(wword & MASK32, MWC_A_W)
    return CombinedState(variant, **kwargs)


def combined_next(state: CombinedState) -> tuple[CombinedState, int]:
    """Step any CombinedState one tick and return (state, 32-bit word)."""
    v = state.variant
    if v == VARIANT_SHR3:
        s2, out = shr3_next(state.jsr)
        return CombinedState(v, jsr=s2), out
    if v == VARIANT_SHR0:
        s2, out = shr0_next(state.jsr)
        return CombinedState(v, jsr=s2), out
    if v == VARIANT_CNG_PLUS_SHR0:
        (s2, c2), out = randn_uni_next(state.jsr, state.icng)
        return CombinedState(v, jsr=s2, icng=c2), out
    if v == VARIANT_MWC32:
        (z2, w2), out = mwc32_next(state.z, state.w)
        return CombinedState(v, z=z2, w=w2), out
    if v == VARIANT_SHRCONG_XPLUSTX:
        old = state.jsr.jsr
        s2, t = shr0_next(state.jsr)
        c2, r = cong_next(state.icng)
        return CombinedState(v, jsr=s2, icng=c2), (old + t + r) & MASK32
    if v == VARIANT_KISS_XPLUSTX:
        old = state.jsr.jsr
        s2, t = shr0_next(state.jsr)
        c2, r = cong_next(state.icng)
        (z2, w2), m = mwc32_next(state.z, state.w)
        out = (old + t + r + m) & MASK32
        return CombinedState(v, jsr=s2, icng=c2, z=z2, w=w2), out
    raise AssertionError(f"unhandled variant {v!r}")
