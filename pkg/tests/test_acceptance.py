"""End-to-end acceptance suite: the ten headline reproduction criteria,
one test (and one printed pass/fail line) per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import json
import time

import pytest

from minorcones import reproduce
from minorcones.cli import main


def _record(number, title, passed, extra=""):
    line = f"criterion {number:2d} ({title}): {'PASS' if passed else 'FAIL'}"
    if extra:
        line += f"  [{extra}]"
    print(line)
    assert passed, line


def test_criterion_01_e3_extreme_rays(capsys):
    start = time.perf_counter()
    code = main(["extreme-rays", "--system", "E", "--n", "3",
                 "--format", "json"])
    elapsed = time.perf_counter() - start
    payload = json.loads(capsys.readouterr().out)
    check = reproduce.check_e3_extreme_rays()
    ok = (code == 0 and payload["ray_count"] == 6
          and all(payload["koteljanskii"]) and check.passed
          and elapsed < 1.0)
    with capsys.disabled():
        _record(1, "E_3 extreme rays: 6 Koteljanskii rays, exact, < 1 s",
                ok, f"{elapsed:.2f}s")


def test_criterion_02_d4_extreme_rays():
    start = time.perf_counter()
    check = reproduce.check_d4_extreme_rays()
    elapsed = time.perf_counter() - start
    ok = check.passed and elapsed < 60.0
    _record(2, "D_4 extreme rays: 46 = 24 Koteljanskii + 6 R1 + 16 R2/R3",
            ok, f"{check.details}, {elapsed:.2f}s")


def test_criterion_03_generators():
    check = reproduce.check_d4_generators()
    _record(3, "five generator orbits up to permutation+complementation",
            check.passed, f"{check.details}")


def test_criterion_04_e4_minus_d4_witness():
    check = reproduce.check_e4_minus_d4_witness()
    _record(4, "E_4 \\ D_4 witness: inner product -1, slope -1 +/- 0.05, "
               "ratio > 1e3", check.passed, f"{check.details}")


def test_criterion_05_q_membership():
    check = reproduce.check_q_membership()
    _record(5, "Q in D_5, 37 loop-free cases, 5 deletion certificates, "
               "asn inner product -1, slope -2 +/- 0.1",
            check.passed, f"{check.details}")


def test_criterion_06_slope_law():
    check = reproduce.check_slope_law()
    _record(6, "slope = v.nul(M) within 5% and correct divergence "
               "classification on 100 random pairs",
            check.passed, f"{check.details}")


def test_criterion_07_fiedler_suite():
    check = reproduce.check_fiedler_suite()
    _record(7, "Fiedler residual >= -1e-9 and min complementary-minor ratio <= (n-1)^2 + 1e-9 "
               "on 10^4 samples for n in {3,4,5,6}",
            check.passed, f"{check.details}")


def test_criterion_08_bounds():
    check = reproduce.check_bounds()
    _record(8, "R1, R2, R3 <= 4 + 1e-9 on 10^5 samples + ascent; exact "
               "factorization identities", check.passed, f"{check.details}")


def test_criterion_09_structural_identities():
    check = reproduce.check_structural_identities()
    _record(9, "exact structural identities (nul+rho, direct sums, duality, "
               "D subset of E, pointedness)", check.passed,
            f"failures={check.details['failures']}")


def test_criterion_10_oracle_equivalence():
    check = reproduce.check_oracle_equivalence()
    _record(10, "double description vs brute force; elimination rank vs "
                "minor oracle on 200 matrices", check.passed,
            f"{check.details}")
