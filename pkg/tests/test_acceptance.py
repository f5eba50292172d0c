"""One test per acceptance criterion; each records a PASS/FAIL line that the
terminal summary prints at the end of the run."""

import random
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from _oracles import brute_twisted_count, dense_nullity
from gl3atlas import hodge
from gl3atlas.arith import IntPolynomial, characters_mod, primes_up_to
from gl3atlas.counting import (
    SurfaceParams,
    VerifyFailed,
    count_table,
    ec_ap,
    frobenius_fit,
    load_curves,
    twisted_count,
)
from gl3atlas.fixtures import shipped_curves_path, shipped_fixtures
from gl3atlas.hecke import (
    charpoly,
    classify_pair,
    dp_relation,
    eigenspace,
    eigenvalue_check,
    restricted_operator,
    spectrum_fields,
)
from gl3atlas.hecke.operators import cached_hecke_matrix
from gl3atlas.hecke.spectrum import field_tag
from gl3atlas.homology import dimension
from gl3atlas.lfactors import (
    compare_report,
    contragredient,
    dual_cubic,
    LocalCubic,
    gl3_local,
    is_selfdual,
    sym2_local,
    v5_formula,
    v5_galois_sum,
    weil_check,
)

RESULTS: dict = {}
X = IntPolynomial.x()
SURFACES = {128: Fraction(2), 160: Fraction(1), 205: Fraction(1, 16)}

# a_p at 19 <= p <= 37 on the fixture eigenforms, from E_p restricted to the
# E_3-eigenplane; the same values come out of extract mode on the point counts.
DERIVED_AP = {
    128: {19: (1, 14), 23: (17, 4), 29: (-9, 12), 31: (1, 0), 37: (-25, 28)},
    160: {19: (13, 8), 23: (-15, 26), 29: (15, 16), 31: (33, 4), 37: (11, 24)},
    205: {19: (-15, 14), 23: (-7, 20), 29: (-13, 24), 31: (1, 0), 37: (-13, 8)},
}


def record(key, checks: dict, extra: str = ""):
    """checks: name -> (ok, shown value)."""
    failed = [f"{k} ({v})" for k, (ok, v) in checks.items() if not ok]
    ok = not failed
    detail = "; ".join(f"{k}={v}" for k, (_, v) in checks.items())
    if extra:
        detail += f"; {extra}"
    if failed:
        detail += "  <-- failed: " + ", ".join(failed)
    RESULTS[key] = (ok, detail)
    assert ok, detail


def minpoly(v) -> IntPolynomial:
    re, im = v
    return X - re if im == 0 else X**2 - 2 * re * X + (re * re + im * im)


def usable(a: Fraction, p: int) -> bool:
    return p != 2 and a.denominator % p and ((a.numerator * pow(a.denominator, -1, p)) ** 2 + 4) % p


@lru_cache(maxsize=None)
def counts(a: Fraction, p: int, rmax: int):
    return count_table(SurfaceParams(a), p, rmax)


def test_criterion_1_dimension():
    t = time.perf_counter()
    d = dimension(245)
    elapsed = time.perf_counter() - t
    small = [n for n in range(1, 31) if dimension(n) != dense_nullity(n)]
    record(1, {
        "dim(245)": (d == 83, d),
        "runtime<=600s": (elapsed <= 600, f"{elapsed:.0f}s"),
        "N<=30 vs dense oracle": (not small, "all agree" if not small else small),
    })


def test_criterion_2_level_49():
    t = time.perf_counter()
    E2 = cached_hecke_matrix(49, 2, "E")
    sp = spectrum_fields(E2)
    eis3 = [f for f, _ in sp.factors if f.degree == 2 and field_tag(f) == -3]
    m3 = X**2 + 10 * X + 52
    mult = eigenvalue_check(cached_hecke_matrix(49, 3, "E"), m3)
    rel = dp_relation(49, 3, m3)
    elapsed = time.perf_counter() - t
    record(2, {
        "E2 pairs in Q(sqrt-3)": (len(eis3) >= 3, len(eis3)),
        "mult of X^2+10X+52 in E3": (mult >= 1, mult),
        "dp_relation(49,3)": (rel == "equal", rel),
        "runtime<=60s": (elapsed <= 60, f"{elapsed:.0f}s"),
    })


def test_criterion_3_level_245_spectrum():
    E2 = cached_hecke_matrix(245, 2, "E")
    sp = spectrum_fields(E2)
    by_field = sp.dimension_by_field()
    mult7 = eigenvalue_check(charpoly(E2), X - 7)
    # the six V5 values at p = 3 over the pairs with psi nontrivial
    chars = characters_mod(7, 3)
    roots = {v5_formula(chi, psi, 3) for chi in chars for psi in chars if psi.exponent}
    sextic = IntPolynomial([1])
    for r in {min(r, r.conjugate(), key=lambda z: (z.x, z.y)) for r in roots}:
        sextic = sextic * IntPolynomial([int(r.norm()), -int(r.trace()), 1])
    in_e3 = eigenvalue_check(cached_hecke_matrix(245, 3, "E"), sextic)
    record(3, {
        "rational count": (sp.rational_count() == 25, sp.rational_count()),
        "Q(sqrt2) dim": (by_field[2] == 16, by_field[2]),
        "Q(sqrt17) dim": (by_field[17] == 16, by_field[17]),
        "degree-4 dim": (by_field[("deg", 4)] == 8, by_field[("deg", 4)]),
        "rest": (by_field[-3] == 18 and sum(by_field.values()) == 83, f"Q(sqrt-3) {by_field[-3]}"),
        "mult of 7": (mult7 >= 7, mult7),
        "V5 sextic in E3": (len(roots) == 6 and in_e3 >= 1, in_e3),
    })


def _dp_block(level, p, F):
    m3 = F.minpoly(3)
    re, im = F.value(p)
    m = minpoly((re, im)) if im else (X - re) ** 2
    if p == 3:
        return dp_relation(level, 3, m)
    return dp_relation(level, p, m, refine=[(3, m3)])


def test_criterion_4_table_regression():
    checks = {}
    misses = []
    for level in (128, 160, 205):
        F = shipped_fixtures(level)
        for p in F.good_primes(17):
            H = cached_hecke_matrix(level, p, "E")
            k = eigenvalue_check(H, F.minpoly(p))
            rel = _dp_block(level, p, F)
            if k < 1 or rel != "conjugate":
                misses.append(f"{level}/{p}: mult {k}, {rel}")
        checks[f"N={level}"] = (not [m for m in misses if m.startswith(str(level))],
                                f"{len(F.good_primes(17))} primes")
    record(4, checks, "misses: " + (", ".join(misses) or "none"))


@pytest.mark.fullscale
def test_criterion_4_full_scale():
    misses = []
    for level in (128, 160, 205):
        F = shipped_fixtures(level)
        V = eigenspace(cached_hecke_matrix(level, 3, "E").rational(), F.minpoly(3))
        for p in F.good_primes():
            if p <= 17:
                continue
            m = F.minpoly(p)
            YE = restricted_operator(level, p, "E", V)
            YD = restricted_operator(level, p, "D", V)
            if eigenvalue_check(YE, m) < 1 or classify_pair(YE, YD, m) != "conjugate":
                misses.append(f"{level}/{p}")
            try:
                frobenius_fit(SurfaceParams(SURFACES[level]), p, "verify", F.value(p), rmax=1)
            except VerifyFailed:
                misses.append(f"{level}/{p} galois")
    record("4+", {"p<=173": (not misses, ", ".join(misses) or "all match")})


def test_criterion_5_galois_side():
    t = time.perf_counter()
    failures, n_ok, uniq = [], 0, {}
    for level, a in SURFACES.items():
        F = shipped_fixtures(level)
        s = SurfaceParams(a)
        for p in F.good_primes(37):
            if not usable(a, p):
                continue
            rmax = 3 if p <= 13 else 2
            try:
                frobenius_fit(s, p, "verify", F.value(p), counts=counts(a, p, rmax))
                n_ok += 1
            except VerifyFailed:
                failures.append(f"{level}/{p}")
            uniq[(level, p)] = frobenius_fit(s, p, "extract", counts=counts(a, p, rmax)).unique
        V = eigenspace(cached_hecke_matrix(level, 3, "E").rational(), F.minpoly(3))
        for p, v in DERIVED_AP[level].items():
            cp = charpoly(restricted_operator(level, p, "E", V))
            if cp != minpoly(v) * (1 if v[1] else minpoly(v)):
                failures.append(f"{level}/{p} hecke")
            try:
                frobenius_fit(s, p, "verify", v, counts=counts(a, p, 2))
                n_ok += 1
            except VerifyFailed:
                failures.append(f"{level}/{p}")
    brute_bad = [(a, p, r, k) for a in SURFACES.values() for p in (3, 5) for r in (1, 2) for k in range(4)
                 if twisted_count(SurfaceParams(a), p, r, k).count != brute_twisted_count(a, p, r, k)]
    elapsed = time.perf_counter() - t
    record(5, {
        "verify accepted": (not failures, f"{n_ok} values" + (f", rejected {failures}" if failures else "")),
        "brute-force counts p=3,5": (not brute_bad, "exact" if not brute_bad else brute_bad),
        "runtime<=900s": (elapsed <= 900, f"{elapsed:.0f}s"),
    }, f"extract unique at {sum(uniq.values())}/{len(uniq)} fixture primes")


def test_criterion_6_eisenstein_lifts():
    curves = {c.label: c for c in load_curves(shipped_curves_path())}
    bad = []
    lifts_at_35 = {}
    for label, level in (("35a", 35), ("49a", 49)):
        c = curves[label]
        for p in primes_up_to(13):
            if level % p == 0:
                continue
            a = ec_ap(c, p)
            cp = charpoly(cached_hecke_matrix(level, p, "E"))
            for v in (p * a + 1, a + p * p):
                if eigenvalue_check(cp, X - v) < 1:
                    bad.append(f"{label}/{p}/{v}")
            if label == "35a":
                lifts_at_35[p] = (p * a + 1, a + p * p)
    low7, low3 = [], []
    for p in primes_up_to(13):
        if 245 % p == 0:
            continue
        cp = charpoly(cached_hecke_matrix(245, p, "E"))
        if eigenvalue_check(cp, X - (1 + p + p * p)) < 7:
            low7.append(p)
        if any(eigenvalue_check(cp, X - v) < 3 for v in lifts_at_35[p]):
            low3.append(p)
    record(6, {
        "lifts at 35 and 49": (not bad, "all present" if not bad else bad),
        "1+p+p^2 mult>=7 at 245": (not low7, "p=2,3,11,13" if not low7 else low7),
        "35a lifts mult>=3 at 245": (not low3, "p=2,3,11,13" if not low3 else low3),
    })


def test_criterion_7_exact_identities():
    t = time.perf_counter()
    primes = primes_up_to(50)
    box = [(x, y) for x in range(-12, 13) for y in range(-12, 13)]
    dual_ok = all(dual_cubic(dual_cubic(LocalCubic(p, a, b))) == LocalCubic(p, a, b)
                  and contragredient(contragredient(LocalCubic(p, a, b))) == LocalCubic(p, a, b)
                  for p in primes[:6] for a in box[::7] for b in box[::11])
    fixed_ok = all(dual_cubic(gl3_local(a, p)) == gl3_local(a, p) for p in primes for a in box)
    selfdual_ok = all(is_selfdual(gl3_local(a, p)) == (a[1] == 0) for p in primes for a in box)
    chars = characters_mod(7, 3)
    v5_ok = all(v5_formula(c, s, p) == v5_galois_sum(c, s, p)
                for p in primes_up_to(100) if p != 7 for c in chars for s in chars)
    sym2_ok = all(weil_check(sym2_local(a, p)) for p in primes for a in range(-60, 61) if a * a <= 4 * p)
    cubics = [(lvl, p, shipped_fixtures(lvl).value(p)) for lvl in (128, 160, 205)
              for p in shipped_fixtures(lvl).good_primes()]
    weil_bad = [(l, p) for l, p, v in cubics if not weil_check(gl3_local(v, p), tol=1e-9)]
    rng = random.Random(2024)
    hodge_bad = 0
    for _ in range(1000):
        A, B = hodge.random_matrix(rng), hodge.random_matrix(rng)
        if not (hodge.griffiths_commute(A, B) == hodge.tAB_symmetric(A, B) == (hodge.symplectic_E(A, B) == 0)):
            hodge_bad += 1
        if not hodge.polarization_preserved(hodge.make_N(A)):
            hodge_bad += 1
    iso_bad = 0
    for _ in range(200):
        A, B = hodge.random_isotropic_pair(rng)
        if not (hodge.griffiths_commute(A, B) and hodge.tAB_symmetric(A, B) and hodge.is_maximal_isotropic([A, B])):
            iso_bad += 1
    elapsed = time.perf_counter() - t
    record(7, {
        "dual involution": (dual_ok and fixed_ok, dual_ok and fixed_ok),
        "selfdual iff real": (selfdual_ok, selfdual_ok),
        "v5 identity": (v5_ok, v5_ok),
        "sym2 weil": (sym2_ok, sym2_ok),
        "weil on fixture cubics": (not weil_bad, f"{len(cubics) - len(weil_bad)}/{len(cubics)}"),
        "hodge 1000 pairs": (hodge_bad == 0 and iso_bad == 0, f"{hodge_bad + iso_bad} failures"),
        "runtime<=60s": (elapsed <= 60, f"{elapsed:.0f}s"),
    })


def test_criterion_8_negative_controls():
    caught = []
    for level, a in SURFACES.items():
        F = shipped_fixtures(level)
        p = 7
        bad = F.corrupted(p)
        cands = frobenius_fit(SurfaceParams(a), p, "extract", counts=counts(a, p, 3))
        rep = compare_report([(p, complex(*bad.value(p)))], [cands])
        good = compare_report([(p, complex(*F.value(p)))], [cands])
        try:
            frobenius_fit(SurfaceParams(a), p, "verify", bad.value(p), counts=counts(a, p, 3))
            rejected = False
        except VerifyFailed:
            rejected = True
        # on the form's own E_3-eigenplane; the full E_7 spectrum can hold the bad value by accident
        V = eigenspace(cached_hecke_matrix(level, 3, "E").rational(), F.minpoly(3))
        cp = charpoly(restricted_operator(level, p, "E", V))
        caught.append(rep.verdicts[p] == "mismatch" and good.verdicts[p] == "match" and rejected
                      and eigenvalue_check(cp, bad.minpoly(p)) == 0)
    dy = dimension(245, "y")
    record(8, {
        "corrupted fixtures flagged": (all(caught), f"{sum(caught)}/{len(caught)}"),
        "y-variant dim(245) != 83": (dy != 83, dy),
    })
