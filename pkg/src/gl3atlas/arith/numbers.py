"""Elementary integer helpers: primality, primes, primitive roots, Legendre symbols."""

from __future__ import annotations

from math import gcd, isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of a positive integer."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(abs(n))) if n else []


def squarefree_part(n: int) -> int:
    """Signed square-free kernel: n = squarefree_part(n) * m**2."""
    if n == 0:
        raise ValueError("zero has no square-free part")
    sign = -1 if n < 0 else 1
    out = 1
    for q, e in factorize(abs(n)).items():
        if e % 2:
            out *= q
    return sign * out


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorize(abs(n)).values())


def primitive_root(m: int) -> int:
    """Smallest primitive root modulo a prime m."""
    if not is_prime(m):
        raise ValueError(f"primitive_root: {m} is not prime")
    if m == 2:
        return 1
    qs = prime_divisors(m - 1)
    for g in range(2, m):
        if all(pow(g, (m - 1) // q, m) != 1 for q in qs):
            return g
    raise ArithmeticError("no primitive root found")  # unreachable for primes


def discrete_log(n: int, g: int, m: int) -> int:
    """Exponent e with g**e = n (mod m); linear search, fine for small m."""
    n %= m
    x = 1
    for e in range(m - 1):
        if x == n:
            return e
        x = x * g % m
    raise ValueError(f"{n} is not a power of {g} mod {m}")


def quadratic_character(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, in {-1, 0, 1}."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"quadratic_character needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine x = r1 mod m1 and x = r2 mod m2 for coprime moduli."""
    inv = pow(m1, -1, m2)
    t = (r2 - r1) * inv % m2
    return r1 + m1 * t, m1 * m2


def rational_reconstruction(a: int, m: int):
    """Return (num, den) with num/den = a mod m and |num|, den <= sqrt(m/2), else None."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gcd(r1, s1) != 1:
        return None
    return r1, s1


def large_primes(count: int, below: int = 1 << 62) -> list[int]:
    """The `count` largest primes below `below` (Miller-Rabin, deterministic for 64-bit)."""
    out = []
    n = below - 1
    if n % 2 == 0:
        n -= 1
    while len(out) < count:
        if _miller_rabin(n):
            out.append(n)
        n -= 2
    return out


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _miller_rabin(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
