"""Acceptance criteria 1-11, each at its stated scale.

Every test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary, and directly when the file is run as a script.
"""

import time

import pytest

from curvecomplex import lab as LAB
from curvecomplex import resolution as RS
from curvecomplex import slopes as SL
from curvecomplex.surface import build_surface

RESULTS: dict[int, str] = {}


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def test_criterion_01_farey_cross_validation():
    rep = LAB.verify_farey(6)
    ok = rep.ok and rep.notes == {"1,1": 48, "0,4": 48}
    record(1, ok, f"{rep.checked} pairs, slopes per surface {rep.notes}, failures {len(rep.failures)}")


def test_criterion_02_resolution_characterization():
    rep = LAB.verify_resolution_slopes(6)
    # in the word model too: a*b sits at the slope resolve(s, t)
    bad = checked = 0
    for g, n in ((1, 1), (0, 4)):
        S = build_surface(g, n)
        table = LAB.slope_dictionary(S, 6)
        inv = {s: c for c, s in table.items()}
        for x, s in table.items():
            for y, t in table.items():
                if x != y and SL.farey_rel(s, t) and SL.resolve(s, t) in inv:
                    checked += 1
                    bad += RS.resolve_curves(S, x, y) != inv[SL.resolve(s, t)]
    record(2, rep.ok and bad == 0, f"{rep.checked} Farey pairs by brute force, {checked} word products, mismatches {len(rep.failures) + bad}")


def test_criterion_03_pentagon():
    rep = LAB.verify_pentagon(LAB.fixture_ball(0, 5, 6))
    record(3, rep.ok and rep.bounded and rep.checked > 0, f"{rep.checked} pentagons at max_len 6, failures {len(rep.failures)}")


def test_criterion_04_unique_common_neighbour():
    reps = [LAB.verify_unique_common_neighbor(LAB.fixture_ball(g, n, 6)) for g, n in ((0, 5), (1, 2))]
    record(4, all(r.ok for r in reps), f"pairs checked {[r.checked for r in reps]}, counterexamples {sum(len(r.failures) for r in reps)}")


def test_criterion_05_reduction_contract():
    reps = {gn: LAB.reduction_suite(*gn) for gn in ((1, 1), (0, 4), (0, 5), (1, 2))}
    ok = all(r.ok and r.checked >= 100 for r in reps.values())
    counts = {f"{g},{n}": r.checked for (g, n), r in reps.items()}
    record(5, ok, f"instances {counts}, failures {sum(len(r.failures) for r in reps.values())}")


def test_criterion_06_configuration_identities():
    r5 = LAB.verify_config_identities(build_surface(0, 5))
    r6 = LAB.verify_config_identities(build_surface(1, 2))
    ok = r5.ok and r6.ok and (r5.checked, r6.checked) == (4, 8)
    record(6, ok, f"assertions {r5.checked} + {r6.checked}, failures {len(r5.failures) + len(r6.failures)}")


FIXTURES = [(1, 1, 6), (0, 4, 6), (0, 5, 6), (1, 2, 6), (1, 3, 5), (0, 6, 5)]


def test_criterion_07_cut_bookkeeping():
    reps = [LAB.verify_cuts(LAB.fixture_ball(*f)) for f in FIXTURES]
    record(7, all(r.ok for r in reps), f"classes cut {sum(r.checked for r in reps)} over {len(FIXTURES)} balls, failures {sum(len(r.failures) for r in reps)}")


def test_criterion_08_dimensions():
    rep = LAB.verify_dimensions()
    record(8, rep.ok and rep.checked == 8, f"thresholds {dict((f'{g},{n}', L) for (g, n), L in LAB.DIMENSION_THRESHOLDS.items())}, failures {len(rep.failures)}")


def test_criterion_09_chart_atlas():
    rep = LAB.verify_charts()
    record(9, rep.ok, f"{rep.checked} charts and transitions {rep.notes}, failures {len(rep.failures)}")


def test_criterion_10_double_cover():
    rep = LAB.verify_double_cover(5)
    types = rep.notes.get("types", {})
    ok = rep.ok and types.get("nonseparating", 0) > 0 and types.get("boundary_class", 0) + types.get("separating", 0) > 0
    record(10, ok, f"{rep.checked} checks on the max_len 5 ball, lift types {types}, failures {len(rep.failures)}")


def test_criterion_11_exceptional_automorphism():
    t = time.perf_counter()
    phi, rep, info = LAB.exceptional_automorphism(6)
    elapsed = time.perf_counter() - t
    cert = phi.certify()
    x, y = cert["witness"]
    S = phi.surface
    from curvecomplex.curves import canon_curve, classify_curve

    sep_to_non = classify_curve(S, canon_curve(S, x)) != "nonseparating" and classify_curve(S, canon_curve(S, y)) == "nonseparating"
    ok = rep.ok and cert["preserves_disjointness"] and sep_to_non and elapsed < 600
    record(11, ok, f"{len(phi.mapping)} classes, witness {x} -> {y}, {elapsed:.1f}s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
