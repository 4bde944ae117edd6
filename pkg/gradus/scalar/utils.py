MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """
    Deterministic primality test.

    Trial division by the Miller-Rabin bases, then Miller-Rabin with the same bases,
    which is exact for all n below 3.3 * 10**24.

    Args:
        n (int): The integer to test.

    Returns:
        bool: True if n is prime.
    """

    if n < 2:
        return False
    for base in MILLER_RABIN_BASES:
        if n % base == 0:
            return n == base
    if n >= 3_317_044_064_679_887_385_961_981:
        raise ValueError("modulus too large for the deterministic primality check")

    exponent, twos = n - 1, 0
    while exponent % 2 == 0:
        exponent //= 2
        twos += 1

    for base in MILLER_RABIN_BASES:
        x = pow(base, exponent, n)
        if x in (1, n - 1):
            continue
        for _ in range(twos - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False

    return True
