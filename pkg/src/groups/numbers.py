from typing import Iterable

from sympy import factorint, isprime

from src.errors import PreconditionError


def require_prime(p: int) -> int:
    if not isprime(p):
        raise PreconditionError(f"{p} is not a prime")
    return int(p)


def prime_divisors(n: int) -> list[int]:
    return sorted(int(p) for p in factorint(n))


def pi_part(n: int, primes: Iterable[int]) -> int:
    """The largest divisor of n whose prime factors all lie in `primes`."""
    primes = set(primes)
    part = 1
    for p, e in factorint(n).items():
        if p in primes:
            part *= int(p) ** int(e)
    return part


def p_part(n: int, p: int) -> int:
    return pi_part(n, [p])


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n
