"""The nine acceptance criteria at the default bounds (at most 6 boxes, indices in [-7, 7]).

Each test prints one ``PASS``/``FAIL`` line; the lines are repeated in the
terminal summary.  All checks are exact.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from symcrystal import identities, verify

CONTENT, INDEX, SEED = 6, 7, 0


def _report(number, title, results):
    ok = all(r.ok for r in results)
    checked = sum(r.checked for r in results)
    failed = sum(r.failed for r in results)
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({checked} checks, {failed} failed)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    witnesses = [w for r in results for w in r.witnesses][:5]
    assert ok, witnesses


def _run(*names):
    return [verify.run_suite(n, CONTENT, INDEX, SEED) for n in names]


def _phi_relations():
    res = verify.SuiteResult("phi-relations")
    for c in identities.phi_relations(kmax=INDEX - 2, nmax=3):
        res.record(c.name, c.holds, f"{c.name}{c.params}")
    return res


def test_criterion_1_straightening_soundness():
    _report(1, "straightening reproduces the segment and divided-power identities",
            _run("straighten") + [_phi_relations()])


def test_criterion_2_master_oracle():
    _report(2, "realized basis vectors equal the unit vectors; closed formulas match the model in U_q^-",
            _run("realize", "oracle"))


def test_criterion_3_algebra_relations():
    _report(3, "T-relations, exchange relation and both Serre families on every basis vector",
            _run("qboson", "serre"))


def test_criterion_4_crystal_basis():
    _report(4, "lattice stability, root-operator congruences and weight-space dimensions",
            _run("crystal-congruence"))


def test_criterion_5_coefficient_bounds():
    _report(5, "order bounds, leading terms and tie-break conditions on matrix coefficients",
            _run("bounds"))


def test_criterion_6_bar_triangularity():
    _report(6, "bar involution and cry-triangularity in V_theta(0) and U_q^-", _run("bar"))


def test_criterion_7_global_basis():
    _report(7, "lower global basis: bar-invariant, congruent mod q, unitriangular both ways; integral orbits",
            _run("global"))


def test_criterion_8_bilinear_form():
    _report(8, "form normalization, adjunction, Gram congruence and upper/lower duality", _run("gram"))


def test_criterion_9_crystal_combinatorics():
    _report(9, "signature rule vs partial sums; crystal axioms; unique highest weight", _run("crystal"))
