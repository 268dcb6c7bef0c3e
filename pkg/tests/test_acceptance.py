"""One test per acceptance criterion; each records a PASS/FAIL line that is
printed in the terminal summary."""
import itertools
import time

from scottlo.classifier import (
    Classifier, SSCLabel, finite_sum_of_k, fs_ssc_transfer, k_member, three_universal_witness,
)
from scottlo.engine import Engine, Outcome
from scottlo.oracle import bf_le_finite, linear_order
from scottlo.suites import (
    GOLDEN_LABELS, TRANSFER_GOLDEN, binary_structures, check_factoring, check_incomparable_parameters,
    check_transport, check_tree_to_structure, relation_claims,
)
from scottlo.terms import DecompositionUnsupported, Finite, canonicalize, decompose_wkr, random_term, render, size


def test_criterion_1_oracle_cross_validation(report):
    engine = Engine()
    start = time.perf_counter()
    wrong, unknown, n = [], 0, 0
    for a, b in itertools.product(range(7), repeat=2):
        for k in range(5):
            n += 1
            got = engine.le(Finite(a), Finite(b), k)
            if got is None:
                unknown += 1
            elif got != bf_le_finite(linear_order(a), (), linear_order(b), (), k):
                wrong.append((a, b, k))
    elapsed = time.perf_counter() - start
    ok = not wrong and not unknown and elapsed < 120
    report(1, "engine = oracle on finite orders", ok,
           f"{n} queries, {len(wrong)} wrong, {unknown} inconclusive, {elapsed:.1f}s")
    assert ok, wrong


def test_criterion_2_relation_table(report):
    engine = Engine()
    bad, slowest = [], 0.0
    claims = relation_claims(seed=0)
    for lhs, rhs, k, want, _ in claims:
        start = time.perf_counter()
        v = engine.check_le(lhs, rhs, k)
        dt = time.perf_counter() - start
        slowest = max(slowest, dt)
        if v.outcome is not (Outcome.TRUE if want else Outcome.FALSE) or dt >= 30:
            bad.append((lhs, rhs, k, v.outcome.value, round(dt, 1)))
    report(2, "relation table", not bad, f"{len(claims) - len(bad)}/{len(claims)} exact, slowest {slowest:.1f}s")
    assert not bad, bad


def test_criterion_3_classifier_golden_set(report):
    clf = Classifier(Engine(budget=20.0))
    bad = []
    for text, want, _ in GOLDEN_LABELS:
        r = clf.classify(text)
        if not (r.exact and str(r.upper) == want):
            bad.append((text, want, str(r.lower), str(r.upper)))
    for member in ("w", "w*", "z"):
        if k_member(member) is None:
            bad.append((member, "member of K", "-", "-"))
    n = len(GOLDEN_LABELS) + 3
    report(3, "classifier golden labels", not bad, f"{n - len(bad)}/{n} exact")
    assert not bad, bad


def test_criterion_4_prohibitions(report):
    clf = Classifier(Engine(budget=1.0))
    bad = []
    for seed in range(500):
        t = canonicalize(random_term(seed, 8))
        r = clf.classify(t)
        for lab in (r.lower, r.upper):
            if lab is None:
                continue
            if lab.shape == "Sigma" and lab.level.is_finite() and lab.level.finite_value() in (2, 3):
                bad.append((render(t), str(lab)))
            if lab.shape == "dSigma" and lab.level.finite_value() == 1 and size(t) is None:
                bad.append((render(t), str(lab)))
        if r.exact and str(r.upper) == "Pi_3" and k_member(t) is None:
            bad.append((render(t), "Pi_3 outside K"))
        if r.exact and str(r.upper) == "Sigma_4" and not finite_sum_of_k(t):
            bad.append((render(t), "Sigma_4 not a finite sum of K"))
    report(4, "prohibition invariants on 500 terms", not bad, f"{len(bad)} violations")
    assert not bad, bad


def _witness_corpus(n: int = 50):
    seed = 0
    while n:
        t = canonicalize(random_term(seed, 6))
        seed += 1
        if size(t) is not None:
            continue
        try:
            decompose_wkr(t)
        except DecompositionUnsupported:
            continue
        n -= 1
        yield t


def test_criterion_5_three_universal_witness(report):
    engine = Engine(budget=20.0)
    confirmed, unknown, bad = 0, 0, []
    for t in _witness_corpus():
        w, v = three_universal_witness(t, engine)
        if k_member(w) is None:
            bad.append((render(t), render(w), "witness not in K"))
        elif v.outcome is Outcome.TRUE:
            confirmed += 1
        elif v.outcome is Outcome.INCONCLUSIVE and v.bounds:
            unknown += 1
        else:
            bad.append((render(t), render(w), v.outcome.value))
    ok = confirmed >= 45 and not bad
    report(5, "3-universal witness", ok, f"{confirmed}/50 confirmed, {unknown} inconclusive, {len(bad)} false")
    assert ok, bad


def test_criterion_6_fs_desk_scale(report):
    start = time.perf_counter()
    structs = binary_structures(3, up_to_iso=True)
    every = binary_structures(3)
    results = {
        "tree to structure": check_tree_to_structure(structs),
        "incomparable parameters": check_incomparable_parameters(structs),
        "factoring": check_factoring(structs),
        "transport": check_transport(every),
    }
    elapsed = time.perf_counter() - start
    failures = {name: r["failures"] for name, r in results.items()}
    ok = not any(failures.values()) and elapsed < 300
    checked = ", ".join(f"{name} {r['checked']}" for name, r in results.items())
    report(6, "trees of structures", ok, f"checked: {checked}; failures {sum(failures.values())}; {elapsed:.0f}s")
    assert ok, failures


def test_criterion_7_transfer_on_golden_labels(report):
    bad = []
    for _, label, _ in GOLDEN_LABELS:
        src = SSCLabel.parse(label)
        n = src.level.finite_value()
        want = f"Pi_{n + 2}" if src.shape == "Pi" else f"Pi_{n + 3}"
        got = str(fs_ssc_transfer(src))
        if got != want or TRANSFER_GOLDEN[label] != want:
            bad.append((label, want, got))
    report(7, "transfer of golden labels", not bad, f"{len(GOLDEN_LABELS) - len(bad)}/{len(GOLDEN_LABELS)} exact")
    assert not bad, bad
