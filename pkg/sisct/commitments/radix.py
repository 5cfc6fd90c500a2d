"""
Radix-p packing of small digits into one big integer and extraction of single digits.

Plain layout:   T = sum_i a_i p^(i-1),                                  0 <= a_i < p
Spaced layout:  T = sum_i a_i p^(2(i-1)) + sum_{i<n} c p^(2i-1),         -p < a_i < p, 1 <= c < p

In the spaced layout the buffer digits c keep a negative neighbour from borrowing across digit
boundaries, so floor(T / p^(2(j-1))) mod p == a_j mod p holds for every j even when T is the
difference of two commitments. Python's ``//`` and ``%`` floor toward negative infinity, which is
what the extraction needs for negative dividends.
"""


def radix_digit(T: int, p: int, j: int, spaced: bool = True, n: int = None) -> int:
    if j < 1 or (n is not None and j > n):
        raise ValueError(f"digit index j={j} out of range 1..{n if n is not None else 'n'}")
    exponent = 2 * (j - 1) if spaced else j - 1
    return (T // p ** exponent) % p


def encode_plain(digits, p: int) -> int:
    T = 0
    for i, digit in enumerate(digits):
        if not 0 <= digit < p:
            raise ValueError(f"digit {digit} outside [0, {p})")
        T += digit * p ** i
    return T


def encode_spaced(digits, p: int, c: int) -> int:
    digits = list(digits)
    if not 1 <= c < p:
        raise ValueError(f"buffer constant c={c} outside [1, {p})")
    T = 0
    for i, digit in enumerate(digits):
        if not -p < digit < p:
            raise ValueError(f"digit {digit} outside (-{p}, {p})")
        T += digit * p ** (2 * i)
    for i in range(1, len(digits)):
        T += c * p ** (2 * i - 1)
    return T
