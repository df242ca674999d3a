"""GF(2^8) arithmetic with reduction polynomial x^8 + x^4 + x^3 + x + 1 (0x11B)."""

import numpy as np

IRREDUCIBLE_POLY = 0x11B
FIELD_SIZE = 256


def _russian_peasant(a: int, b: int) -> int:
    result = 0
    while b:
        if b & 1:
            result ^= a
        carry = a & 0x80
        a = (a << 1) & 0xFF
        if carry:
            a ^= IRREDUCIBLE_POLY & 0xFF
        b >>= 1
    return result


def _build_tables() -> tuple[np.ndarray, np.ndarray]:
    # 0x03 generates the multiplicative group for 0x11B
    exp = np.zeros(2 * FIELD_SIZE, dtype=np.int32)
    log = np.zeros(FIELD_SIZE, dtype=np.int32)
    value = 1
    for power in range(FIELD_SIZE - 1):
        exp[power] = value
        log[value] = power
        value = _russian_peasant(value, 0x03)
    exp[FIELD_SIZE - 1 :] = exp[: FIELD_SIZE + 1]

    mul = np.zeros((FIELD_SIZE, FIELD_SIZE), dtype=np.uint8)
    nz = np.arange(1, FIELD_SIZE)
    mul[1:, 1:] = exp[log[nz][:, None] + log[nz][None, :]]

    inv = np.zeros(FIELD_SIZE, dtype=np.uint8)
    inv[1:] = exp[(FIELD_SIZE - 1) - log[nz]]
    return mul, inv


MUL_TABLE, INV_TABLE = _build_tables()


def gf_add(a: int, b: int) -> int:
    """Addition and subtraction in characteristic 2 are both XOR."""
    return a ^ b


def gf_mul(a: int, b: int) -> int:
    """Product modulo 0x11B, read from the precomputed table."""
    return int(MUL_TABLE[a, b])


def gf_inv(a: int) -> int:
    """Multiplicative inverse; zero has none."""
    if a == 0:
        raise ZeroDivisionError("Zero has no multiplicative inverse in GF(256)")
    return int(INV_TABLE[a])


def scale(scalar: int, vector: np.ndarray) -> np.ndarray:
    """scalar * vector, elementwise."""
    return MUL_TABLE[scalar][vector]


def axpy(target: np.ndarray, scalar: int, source: np.ndarray) -> None:
    """In-place target += scalar * source."""
    target ^= MUL_TABLE[scalar][source]
