"""Eigenvalue tables for the three levels with coefficient field Q(i), and curve configs."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .arith.numbers import is_prime
from .arith.polynomial import IntPolynomial

BAD = "**"
SCHEMA = 1
SHIPPED_LEVELS = (128, 160, 205)


class FixtureError(ValueError):
    """Schema violation."""


class FixtureChecksumError(RuntimeError):
    pass


@dataclass(frozen=True)
class FixtureTable:
    level: int
    field: str
    bad: tuple[int, ...]
    ap: dict  # p -> (re, im) or BAD

    def primes(self) -> list[int]:
        return sorted(self.ap)

    def good_primes(self, pmax: int | None = None) -> list[int]:
        return [p for p in self.primes() if self.ap[p] != BAD and (pmax is None or p <= pmax)]

    def value(self, p: int):
        """(re, im), or None at a bad prime."""
        v = self.ap[p]
        return None if v == BAD else v

    def minpoly(self, p: int) -> IntPolynomial:
        """Minimal polynomial over Q of the Gaussian integer a_p."""
        re, im = self.ap[p]
        if im == 0:
            return IntPolynomial([-re, 1])
        return IntPolynomial([re * re + im * im, -2 * re, 1])

    def is_bad(self, p: int) -> bool:
        return p in self.bad

    def payload(self) -> dict:
        return {
            "schema": SCHEMA,
            "level": self.level,
            "field": self.field,
            "bad": list(self.bad),
            "ap": {str(p): (v if v == BAD else list(v)) for p, v in sorted(self.ap.items())},
        }

    def checksum(self) -> str:
        return checksum(self.payload())

    def corrupted(self, p: int, delta: tuple[int, int] = (0, 2)) -> "FixtureTable":
        """Copy with a_p shifted by ``delta``; for negative controls."""
        ap = dict(self.ap)
        re, im = ap[p]
        ap[p] = (re + delta[0], im + delta[1])
        return FixtureTable(self.level, self.field, self.bad, ap)


def checksum(payload: dict) -> str:
    body = {k: v for k, v in payload.items() if k != "checksum"}
    text = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def parse_fixtures(data: dict) -> FixtureTable:
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise FixtureError("missing or unsupported fixture schema")
    try:
        level = int(data["level"])
        field = str(data["field"])
        bad = tuple(sorted(int(p) for p in data["bad"]))
        raw = data["ap"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FixtureError(f"malformed fixture: {exc}") from exc
    if field != "Q(i)":
        raise FixtureError(f"unsupported coefficient field {field!r}")
    ap: dict = {}
    for key, v in raw.items():
        p = int(key)
        if not is_prime(p):
            raise FixtureError(f"{p} is not prime")
        if v == BAD:
            if level % p:
                raise FixtureError(f"bad-prime marker at {p}, which does not divide {level}")
            ap[p] = BAD
            continue
        if not (isinstance(v, list) and len(v) == 2 and all(isinstance(c, int) for c in v)):
            raise FixtureError(f"entry for p={p} must be a pair of integers")
        if level % p == 0:
            raise FixtureError(f"value given at the bad prime {p}")
        ap[p] = (v[0], v[1])
    if any(level % p for p in bad):
        raise FixtureError("listed bad prime does not divide the level")
    table = FixtureTable(level, field, bad, ap)
    if "checksum" in data and data["checksum"] != checksum(data):
        raise FixtureChecksumError(f"checksum mismatch in fixture for level {level}")
    return table


def load_fixtures(path: str | Path) -> FixtureTable:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: {exc}") from exc
    return parse_fixtures(data)


def shipped_path(name: str) -> Path:
    return Path(str(resources.files("gl3atlas") / "data" / name))


def shipped_fixtures(level: int) -> FixtureTable:
    if level not in SHIPPED_LEVELS:
        raise FixtureError(f"no shipped fixture for level {level}; pass --fixtures")
    return load_fixtures(shipped_path(f"fixtures_{level}.json"))


def shipped_curves_path() -> Path:
    return shipped_path("curves.json")
