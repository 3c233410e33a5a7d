import cmath
import math

import pytest

from pcgraph import (
    BTerm,
    PCG,
    PcgValidationError,
    pcg_digest,
    success_table,
    verify,
    verify_qudit_family,
)
from pcgraph.catalog import loop_pcg, magic_m9_pcg, triangle_pcg

SQ2 = 1 / math.sqrt(2)


def test_minimal_certificate():
    cert = verify(triangle_pcg(), SQ2, [BTerm((1, 2, 3), 1.0)])
    assert cert.verdict == "paradox" and cert.reason is None
    assert (cert.rank_a, cert.rank_b) == (2, 3)
    assert (cert.census_total, cert.census_satisfying) == (8, 0)
    assert len(cert.hardy_checks) == 3
    for check in cert.hardy_checks:
        assert check.required == -1
        assert abs(check.probability - 1.0) < 1e-9
    assert cert.success.sites == (1, 2, 3)
    assert abs(cert.success.simulated - 0.125) < 1e-12
    assert abs(cert.success.formula - 0.125) < 1e-12
    assert cert.success.formula_applicable


def test_certificate_deterministic():
    args = (triangle_pcg(), SQ2, (BTerm((1, 2, 3), 1.0),))
    assert verify(*args).to_json_dict() == verify(*args).to_json_dict()


def test_digest_depends_on_structure():
    assert pcg_digest(triangle_pcg()) == pcg_digest(triangle_pcg())
    assert pcg_digest(triangle_pcg()) != pcg_digest(triangle_pcg(-1))


def test_magic_m9_no_paradox_but_certainties_hold():
    cert = verify(magic_m9_pcg())
    assert cert.verdict == "no_paradox"
    assert cert.reason == "colorable"
    assert cert.colorable and cert.witness is not None
    assert cert.witness.satisfies(magic_m9_pcg())
    assert len(cert.hardy_checks) == 8
    assert all(abs(c.probability - 1.0) < 1e-9 for c in cert.hardy_checks)
    assert cert.census_satisfying > 0


def test_loop7_success_probability():
    cert = verify(loop_pcg(7))
    assert cert.verdict == "paradox"
    assert abs(cert.success.simulated - 1 / 8) < 1e-9
    assert abs(cert.success.formula - 1 / 8) < 1e-12


def test_verify_rejects_invalid_graph():
    with pytest.raises(PcgValidationError):
        verify(PCG.build(3, [((1, 2), +1)]))


def test_census_skipped_above_cap():
    cert = verify(loop_pcg(6), lhv_cap=5)
    assert cert.census_skipped
    assert cert.census_total is None and cert.census_satisfying is None
    assert cert.verdict == "paradox"  # ranks + simulation still decide
    assert cert.to_json_dict()["lhv_census"] == {"skipped": True}


def test_global_phase_invariance():
    base = verify(triangle_pcg(), SQ2, [BTerm((1, 2, 3), 1.0)])
    for phi in (0.3, 1.7, 4.1):
        rotated = verify(
            triangle_pcg(), SQ2 * cmath.exp(1j * phi), [BTerm((1, 2, 3), 1.0)]
        )
        assert rotated.verdict == base.verdict
        assert abs(rotated.success.simulated - base.success.simulated) < 1e-12
        assert abs(rotated.success.formula - base.success.formula) < 1e-12
        for a, b in zip(rotated.hardy_checks, base.hardy_checks):
            assert abs(a.probability - b.probability) < 1e-12


def test_inequality_form_holds_for_paradox_verdicts():
    for pcg in (triangle_pcg(), loop_pcg(5)):
        cert = verify(pcg)
        assert cert.verdict == "paradox"
        assert cert.success.simulated > 0  # quantum event has positive probability
        assert cert.census_satisfying == 0  # classical event intersection is empty


# --- success table -----------------------------------------------------------

def test_table_first_rows():
    rows = success_table(4)
    r3, r4 = rows
    assert (r3.n, r3.p_loop, r3.p_generalized, r3.p_standard) == (3, 0.25, 0.25, 0.125)
    assert r4.n == 4
    assert abs(r4.p_loop - 0.2) < 1e-15
    assert abs(r4.p_generalized - 0.125) < 1e-15
    assert abs(r4.p_standard - 3 / 32) < 1e-15


def test_table_ordering_and_simulation():
    rows = success_table(50)
    assert [r.n for r in rows] == list(range(3, 51))
    for row in rows:
        assert row.p_loop >= row.p_generalized > row.p_standard
        if row.n == 3:
            assert abs(row.p_loop - row.p_generalized) < 1e-15
        else:
            assert row.p_loop > row.p_generalized
        if row.n <= 12:
            assert row.simulated_loop is not None
            assert abs(row.simulated_loop - row.p_loop) < 1e-9
        else:
            assert row.simulated_loop is None


def test_table_rejects_small_max_n():
    with pytest.raises(ValueError):
        success_table(2)


# --- qudit family ------------------------------------------------------------

def test_qudit_d3_certificate():
    cert = verify_qudit_family(3)
    assert cert.verdict == "paradox"
    assert cert.n == 4 and cert.required_power == 1
    assert len(cert.constraint_probabilities) == 4
    assert all(abs(p - 1.0) < 1e-9 for p in cert.constraint_probabilities)
    assert abs(cert.joint_simulated - 1 / 9) < 1e-12
    assert abs(cert.joint_formula - 1 / 9) < 1e-15
    assert (cert.census_total, cert.census_satisfying) == (81, 0)


def test_qudit_d2_matches_minimal_instance():
    cert = verify_qudit_family(2)
    minimal = verify(triangle_pcg())
    assert cert.verdict == minimal.verdict == "paradox"
    assert abs(cert.joint_simulated - minimal.success.simulated) < 1e-12
    assert (cert.census_total, cert.census_satisfying) == (8, 0)


def test_qudit_d4_certificate():
    cert = verify_qudit_family(4)
    assert cert.verdict == "paradox"
    assert abs(cert.joint_simulated - 1 / 16) < 1e-12
    # five sites, four omega-powers each
    assert (cert.census_total, cert.census_satisfying) == (4 ** 5, 0)


def test_qudit_product_contradiction_structure():
    # quantum side: the product of the n certified eigenvalues is
    # omega^n = omega != 1; classical side: every site occurs in d of the
    # n leave-one-out constraints, so the same product over any
    # assignment of omega-powers is omega^0 = 1.  Asserted exactly, with
    # the classical side checked over every assignment.
    from itertools import product as iter_product

    for d in (2, 3):
        n = d + 1
        certified_power = (n * 1) % d
        assert certified_power == 1 and certified_power != 0
        for assignment in iter_product(range(d), repeat=n):
            total = sum(
                sum(assignment[k] for k in range(n) if k != j) for j in range(n)
            )
            assert total % d == 0
