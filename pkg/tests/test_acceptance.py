"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one PASS/FAIL line (run with ``pytest -v -s`` to see
them); tolerances are exact (zero exceptions) throughout, plus two wall
clock targets.  Campaigns are fully seeded and deterministic.
"""

import json
import math
import random
import shutil
import time
from fractions import Fraction
from pathlib import Path

import pytest

from majorkit import (
    AnchorPoint,
    Mat,
    NotMajorized,
    Perm,
    Vec,
    birkhoff,
    check_ds,
    column_sums_equal,
    enumerate_perms,
    equivalent,
    extremizer_bound,
    extremizer_sets,
    extremes,
    is_equiv_preserving_at,
    majorizes,
    permuted_dot,
    random_ds,
    shift_by_J,
    sort_desc,
    verify_statements,
    witness_ds,
)
from majorkit.cli import main as cli_main
from majorkit.isotone import (
    perturb_entry,
    random_matrix,
    random_perm_scaled,
    random_trace_map,
)
from helpers import rand_strictly_decreasing, rand_vec


def report(number: int, name: str, violations: list, detail: str = ""):
    status = "PASS" if not violations else "FAIL"
    print(f"ACCEPTANCE {number} ({name}): {status} {detail}")
    assert not violations, f"{len(violations)} violations, first: {violations[0]}"


def test_criterion_1_partial_sums_agree_with_witness_construction():
    violations = []
    start = time.monotonic()
    for n in (2, 3, 4, 5):
        rng = random.Random(f"acc1:{n}")
        for i in range(500):
            if i % 2 == 0:
                y = rand_vec(rng, n)
                d = random_ds(n, seed=rng.getrandbits(32), steps=rng.randint(1, 6))
                x = d.matrix @ y
            else:
                x, y = rand_vec(rng, n), rand_vec(rng, n)
            expected = majorizes(x, y)
            try:
                w = witness_ds(x, y)
                constructible = (w.matrix.matrix @ y == x
                                 and check_ds(w.matrix.matrix))
            except NotMajorized:
                constructible = False
            if constructible != expected:
                violations.append((n, x, y, expected, constructible))
    elapsed = time.monotonic() - start
    if elapsed >= 10:
        violations.append(("runtime", elapsed))
    report(1, "criterion vs witness equivalence", violations,
           f"(2000 pairs, {elapsed:.1f}s < 10s)")


def test_criterion_2_sandwich_and_extremizer_characterisation():
    violations = []
    pairs = 0
    for n in (2, 3, 4, 5):
        rng = random.Random(f"acc2:{n}")
        perms = list(enumerate_perms(n))
        for i in range(200):
            x = rand_vec(rng, n, lo=-5, hi=5, max_den=3)
            strict_y = i % 2 == 1
            y = rand_strictly_decreasing(rng, n) if strict_y \
                else rand_vec(rng, n, lo=-5, hi=5, max_den=3)
            pairs += 1
            hi, lo = extremes(x, y)
            for p in perms:
                value = permuted_dot(x, p, y)
                if not lo <= value <= hi:
                    violations.append(("sandwich", n, x, y, p))
            if strict_y:
                rep = extremizer_sets(x, y)
                desc = sort_desc(x).descending
                asc = sort_desc(x).ascending
                expected_max = {p for p in perms if p.inverse().apply(x) == desc}
                expected_min = {p for p in perms if p.inverse().apply(x) == asc}
                if set(rep.maximizers) != expected_max:
                    violations.append(("maximizers", n, x, y))
                if set(rep.minimizers) != expected_min:
                    violations.append(("minimizers", n, x, y))
    report(2, "rearrangement inequality suite", violations,
           f"({pairs} pairs, exhaustive over permutations)")


def test_criterion_3_counting_bound_and_exact_refinement():
    violations = []
    for n in (3, 4, 5, 6):
        rng = random.Random(f"acc3:{n}")
        for _ in range(300):
            x = rand_vec(rng, n, lo=-4, hi=4, max_den=2)
            y = rand_strictly_decreasing(rng, n)
            rep = extremizer_sets(x, y)
            bound = extremizer_bound(n, rep.distinct_count)
            counts: dict = {}
            for v in x:
                counts[v] = counts.get(v, 0) + 1
            exact = math.prod(math.factorial(c) for c in counts.values())
            if len(rep.maximizers) > bound or len(rep.minimizers) > bound:
                violations.append(("bound", n, x, y))
            if len(rep.maximizers) != exact or len(rep.minimizers) != exact:
                violations.append(("refinement", n, x, y))
    report(3, "extremizer counting bound", violations, "(1200 vectors)")


@pytest.fixture(scope="module")
def theorem_campaign():
    """Criterion 4 campaign, shared with criterion 5.

    Per n in {2, 3, 4}: 100 planted global forms, 280 random matrices,
    and 120 single-entry perturbations of global forms.
    """
    results = {}
    timings = {}
    for n in (2, 3, 4):
        anchor = AnchorPoint(Vec(range(n, 0, -1)))
        cells = []
        for i in range(50):
            rng = random.Random(f"acc4:{n}:trace:{i}")
            cells.append(("planted", random_trace_map(n, rng)))
            rng = random.Random(f"acc4:{n}:scaled:{i}")
            cells.append(("planted", random_perm_scaled(n, rng)))
        for i in range(280):
            rng = random.Random(f"acc4:{n}:random:{i}")
            cells.append(("mixed", random_matrix(n, rng)))
        for i in range(120):
            rng = random.Random(f"acc4:{n}:perturb:{i}")
            base = random_trace_map(n, rng) if i % 2 \
                else random_perm_scaled(n, rng)
            cells.append(("mixed", perturb_entry(base, rng)))
        start = time.monotonic()
        results[n] = [
            (kind, a, verify_statements(a, anchor, trials=20, seed=i))
            for i, (kind, a) in enumerate(cells)
        ]
        timings[n] = time.monotonic() - start
    return results, timings


def test_criterion_4_statement_equivalence_campaign(theorem_campaign):
    results, timings = theorem_campaign
    violations = []
    planted = mixed = 0
    for n, rows in results.items():
        for kind, a, check in rows:
            if kind == "planted":
                planted += 1
                if check.bits != (True,) * 5 or not check.consistent:
                    violations.append(("planted", n, a, check.bits))
            else:
                mixed += 1
                if not check.consistent or check.advisory_disagreement:
                    violations.append(("inconsistent", n, a, check.bits))
                if check.bits not in ((True,) * 5, (False,) * 5):
                    violations.append(("mixed bits", n, a, check.bits))
            if check.equiv.holds and check.global_form is None:
                violations.append(("unclassified preserver", n, a))
    if timings[4] >= 120:
        violations.append(("runtime", timings[4]))
    report(4, "five-statement equivalence", violations,
           f"({planted} planted + {mixed} mixed, n=4 in {timings[4]:.1f}s < 120s)")


def test_criterion_5_equiv_preservers_have_equal_column_sums(theorem_campaign):
    results, _ = theorem_campaign
    violations = []
    preservers = 0
    for n, rows in results.items():
        for _, a, check in rows:
            if check.equiv.holds:
                preservers += 1
                if not column_sums_equal(a).holds:
                    violations.append((n, a))
    report(5, "equal column sums", violations,
           f"({preservers} equivalence preservers checked)")


def test_criterion_6_statement_verdict_is_shift_invariant():
    violations = []
    rng = random.Random("acc6")
    for _ in range(500):
        n = rng.randint(2, 4)
        a = random_matrix(n, rng)
        lam = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
        anchor = AnchorPoint(rand_vec(rng, n))
        before = is_equiv_preserving_at(a, anchor).holds
        after = is_equiv_preserving_at(shift_by_J(a, lam), anchor).holds
        if before != after:
            violations.append((a, lam, anchor.alpha))
    report(6, "shift invariance", violations, "(500 cases)")


def test_criterion_7_birkhoff_roundtrip_and_chain_lengths():
    violations = []
    for n in (2, 3, 4, 5):
        rng = random.Random(f"acc7:{n}")
        for _ in range(50):
            d = random_ds(n, seed=rng.getrandbits(32), steps=rng.randint(1, 12))
            dec = birkhoff(d)
            if dec.recompose() != d.matrix:
                violations.append(("roundtrip", n, d.matrix))
            if len(dec.terms) > (n - 1) ** 2 + 1:
                violations.append(("terms", n, len(dec.terms)))
            y = rand_vec(rng, n)
            w = witness_ds(d.matrix @ y, y)
            if len(w.transforms) > n - 1:
                violations.append(("chain", n, len(w.transforms)))
            if w.matrix.matrix @ y != d.matrix @ y:
                violations.append(("witness", n, y))
    report(7, "decomposition round trip", violations,
           "(200 matrices, 200 witness chains)")


def test_criterion_8_cli_contract(tmp_path, monkeypatch, capsys):
    data = Path(__file__).parent / "data"
    golden_dir = Path(__file__).parent / "golden"
    for f in data.iterdir():
        shutil.copy(f, tmp_path / f.name)
    monkeypatch.chdir(tmp_path)

    def run(*args):
        code = cli_main(list(args))
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip().startswith("{") else None

    violations = []
    goldens = {
        "check_holds.json": (0, ["check", "x_mean3.json", "y_desc3.json"]),
        "check_fails.json": (1, ["check", "x_peak.json", "y_210.json"]),
        "witness_holds.json": (0, ["witness", "x_halves.json", "y_21.json",
                                   "witness_out.json"]),
        "extremizers_ties.json": (0, ["extremizers", "x_ties.json",
                                      "y_desc3.json"]),
        "isotone_global.json": (0, ["isotone", "mat_sym31.json", "--global"]),
        "isotone_equiv_fails.json": (1, ["isotone", "mat_diag12.json", "--at",
                                         "alpha_21.json", "--predicate",
                                         "equiv"]),
        "verify_n2.json": (0, ["verify", "--n", "2", "--matrices", "6",
                               "--seed", "7", "--trials", "8"]),
    }
    for name, (want_code, args) in goldens.items():
        code, rep = run(*args)
        rep["elapsed_ms"] = 0
        expected = json.loads((golden_dir / name).read_text())
        if code != want_code:
            violations.append((name, "exit", code))
        if rep != expected:
            violations.append((name, "drift"))

    # Exit code table: operational errors.
    for args in (["check", "malformed.json", "y_desc3.json"],
                 ["check", "missing.json", "y_desc3.json"],
                 ["verify", "--n", "4", "--alpha", "alpha_flat.json"],
                 ["extremizers", "x_ties.json", "y_desc3.json",
                  "--guard-n", "2"]):
        code, _ = run(*args)
        if code != 2:
            violations.append((args, "expected exit 2", code))

    # Every emitted counterexample re-verifies through the library.
    _, rep = run("isotone", "mat_diag12.json", "--at", "alpha_21.json",
                 "--predicate", "right", "--trials", "10", "--seed", "4")
    a, alpha = Mat([[1, 0], [0, 2]]), Vec([2, 1])
    p, y = Perm(rep["witness"]["perm"]), Vec(rep["witness"]["y"])
    if majorizes(a @ p.apply(alpha), a @ y) or not majorizes(alpha, y):
        violations.append(("right witness", "does not re-verify"))
    _, rep = run("isotone", "mat_diag12.json", "--at", "alpha_21.json",
                 "--predicate", "equiv")
    p = Perm(rep["witness"]["perm"])
    if equivalent(a @ p.apply(alpha), a @ alpha):
        violations.append(("equiv witness", "does not re-verify"))

    report(8, "CLI contract", violations,
           f"({len(goldens)} golden reports, exit-code table, witnesses)")
