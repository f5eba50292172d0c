"""Recover Gaussian-integer traces a_p from twisted point counts.

Model, for q = p^r, k = 0..3 and a twist direction e = +1 or -1:

    count(k, r) = 1 + q^2 + q c[k, r mod 2] + d[k] + [k even] 2 s_r(B)
                  + 2 Re(i^(e k) u^r tau_r(a))

tau_r is the r-th power sum of the roots of X^3 - a X^2 + p conj(a) X - p^3 and
u in {1, i, -1, -i} is the value at p of a twisting character, so it scales the
roots.  B is the genus one curve w^2 = v (v^2 + a v - 1); the affine model misses
two copies of it (over the origin and along the line at infinity), which the
order-4 map swaps with opposite signs, so they cancel in the odd twists.
s_r(B) is the trace of the q-power Frobenius on H^1(B).  The integers c, d
absorb the remaining algebraic classes and are bounded, not known.

Replacing (a, u, e) with (conj a, conj u, -e) leaves every count unchanged, so
the direction is a labelling choice and candidates come in conjugate pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..arith.numbers import quadratic_character
from .surface import DEFAULT_BUDGET, BadPrime, SurfaceParams, count_table, default_rmax

UNITS = ((1, 0), (0, 1), (-1, 0), (0, -1))  # 1, i, -1, -i
DIRECTIONS = (1, -1)


class VerifyFailed(ValueError):
    pass


@dataclass
class CandidateSet:
    p: int
    candidates: list[tuple[int, int]]
    diagnostics: dict[tuple[int, int], list[dict]] = field(default_factory=dict)

    def __contains__(self, a) -> bool:
        return _as_pair(a) in self.candidates

    @property
    def unique(self) -> bool:
        """One candidate up to complex conjugation (the direction symmetry)."""
        return len({min((x, y), (x, -y)) for x, y in self.candidates}) == 1

    def directions(self, a) -> set[int]:
        return {d["direction"] for d in self.diagnostics.get(_as_pair(a), [])}


def _as_pair(a) -> tuple[int, int]:
    if isinstance(a, complex):
        return int(a.real), int(a.imag)
    if isinstance(a, tuple):
        return int(a[0]), int(a[1])
    if hasattr(a, "x") and hasattr(a, "y"):
        if getattr(a, "d", -1) != -1:
            raise ValueError("expected a Gaussian integer")
        return int(a.x), int(a.y)
    return int(a), 0


def _cmul(ar, ai, br, bi):
    return ar * br - ai * bi, ar * bi + ai * br


def power_sums(Ar: np.ndarray, Ai: np.ndarray, p: int, rmax: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """tau_1..tau_rmax (real, imaginary parts) for X^3 - A X^2 + p conj(A) X - p^3, via Newton."""
    e1 = (Ar, Ai)
    e2 = (p * Ar, -p * Ai)
    e3 = p**3
    taus: list[tuple[np.ndarray, np.ndarray]] = []
    for r in range(1, rmax + 1):
        if r == 1:
            t = e1
        elif r == 2:
            sq = _cmul(*e1, *e1)
            t = (sq[0] - 2 * e2[0], sq[1] - 2 * e2[1])
        else:
            t1 = _cmul(*e1, *taus[r - 2])
            t2 = _cmul(*e2, *taus[r - 3])
            t3 = (e3 * taus[r - 4][0], e3 * taus[r - 4][1]) if r > 3 else (3 * e3 + 0 * Ar, 0 * Ai)
            t = (t1[0] - t2[0] + t3[0], t1[1] - t2[1] + t3[1])
        taus.append(t)
    return taus


def boundary_traces(s: SurfaceParams, p: int, rmax: int) -> list[int]:
    """s_1..s_rmax for the curve w^2 = v (v^2 + a v - 1) over F_p."""
    a = s.a_mod(p)
    if (a * a + 4) % p == 0:
        raise BadPrime(f"the boundary curve is singular at {p}")
    t = -sum(quadratic_character((v**3 + a * v * v - v) % p, p) for v in range(p))
    out = [t, t * t - 2 * p]
    while len(out) < rmax:
        out.append(t * out[-1] - p * out[-2])
    return out[:rmax]


def _twist_real(tr, ti, k: int):
    """2 Re(i^k tau)."""
    return 2 * (tr, -ti, -tr, ti)[k % 4]


def _feasible(counts: dict[tuple[int, int], int], p: int, Ar, Ai, unit: tuple[int, int], direction: int,
              boundary: list[int], cmax: int, dmax: int):
    rs = sorted({r for _, r in counts})
    taus = power_sums(Ar, Ai, p, max(rs))
    scaled = {}
    ur, ui = 1, 0
    for r in range(1, max(rs) + 1):
        ur, ui = _cmul(ur, ui, *unit)
        scaled[r] = _cmul(*taus[r - 1], ur, ui)
    ok = np.ones(len(Ar), dtype=bool)
    params: list[dict] = [dict() for _ in range(len(Ar))]
    for k in range(4):
        res = {
            r: counts[(k, r)] - 1 - p ** (2 * r) - (2 * boundary[r - 1] if k % 2 == 0 else 0)
            - _twist_real(*scaled[r], direction * k)
            for r in rs
        }
        any_d = np.zeros(len(Ar), dtype=bool)
        for d in range(-dmax, dmax + 1):
            good = np.ones(len(Ar), dtype=bool)
            cvals: dict[int, np.ndarray] = {}
            for r in rs:
                q = p**r
                num = res[r] - d
                good &= num % q == 0
                c = num // q
                good &= np.abs(c) <= cmax
                par = r % 2
                if par in cvals:
                    good &= c == cvals[par]
                else:
                    cvals[par] = c
            for j in np.flatnonzero(good & ~any_d):
                params[j][k] = {"d": d, **{f"c{par}": int(v[j]) for par, v in cvals.items()}}
            any_d |= good
        ok &= any_d
    return ok, params


def frobenius_fit(s: SurfaceParams | None, p: int, mode: str = "extract", hypothesis=None,
                  counts: dict[tuple[int, int], int] | None = None, rmax: int | None = None,
                  cmax: int = 45, dmax: int = 8, budget: int = DEFAULT_BUDGET) -> CandidateSet:
    """Gaussian integers a with |a| <= 3p consistent with the counts for some unit
    twist, twist direction and bounded corrections.

    ``counts`` may be supplied directly as {(k, r): n}; the surface parameter is
    still needed for the boundary curve.
    """
    if s is None:
        raise ValueError("need surface parameters")
    if counts is None:
        counts = count_table(s, p, rmax or default_rmax(p), budget)
    if not counts:
        raise ValueError("no counts available")
    rs = sorted({r for _, r in counts})
    if any((k, r) not in counts for k in range(4) for r in rs):
        raise ValueError("counts must cover k = 0..3 for every r")
    if mode == "verify":
        if hypothesis is None:
            raise ValueError("verify mode needs a hypothesis")
        pts = [_as_pair(hypothesis)]
    elif mode == "extract":
        R = 3 * p
        pts = [(x, y) for x in range(-R, R + 1) for y in range(-R, R + 1) if x * x + y * y <= R * R]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    boundary = boundary_traces(s, p, max(rs))
    ar = np.array([a for a, _ in pts], dtype=object if p > 1000 else np.int64)
    ai = np.array([b for _, b in pts], dtype=ar.dtype)
    found: dict[tuple[int, int], list[dict]] = {}
    for direction in DIRECTIONS:
        for unit in UNITS:
            ok, params = _feasible(counts, p, ar, ai, unit, direction, boundary, cmax, dmax)
            for j in np.flatnonzero(ok):
                found.setdefault(pts[j], []).append(
                    {"unit": unit, "direction": direction, "corrections": params[j]}
                )
    cand = sorted(found)
    if any(a * a + b * b > 9 * p * p for a, b in cand):
        raise AssertionError("candidate outside the Weil disc")
    result = CandidateSet(p, cand, found)
    if mode == "verify" and not cand:
        raise VerifyFailed(f"a_{p} = {hypothesis} is inconsistent with the counts")
    return result
