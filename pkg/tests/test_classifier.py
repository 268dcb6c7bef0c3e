import pytest

from scottlo.classifier import (
    Classifier, SSCLabel, attainable, classify, contained, finite_sum_of_k, fs_ssc_transfer, k_member,
)
from scottlo.engine import Engine
from scottlo.terms import canonicalize, random_term, render, size


@pytest.mark.parametrize("text", ["Pi_1", "Pi_3", "Sigma_4", "dSigma_2", "Pi_w*1", "Sigma_w*1+1"])
def test_label_round_trip(text):
    assert str(SSCLabel.parse(text)) == text


def test_bare_omega_is_read():
    assert SSCLabel.parse("Pi_w") == SSCLabel.parse("Pi_w*1")


def test_label_rejects_junk():
    with pytest.raises(ValueError):
        SSCLabel.parse("Delta_2")
    with pytest.raises(ValueError):
        SSCLabel.parse("Pi_0")


def test_containment():
    p2, s2, d2, p3 = (SSCLabel.parse(x) for x in ("Pi_2", "Sigma_2", "dSigma_2", "Pi_3"))
    assert contained(p2, d2) and contained(s2, d2)
    assert not contained(p2, s2)
    assert contained(d2, p3)


def test_unattainable_labels():
    assert not attainable(SSCLabel.parse("Sigma_2"), infinite=True)
    assert not attainable(SSCLabel.parse("Sigma_3"), infinite=True)
    assert not attainable(SSCLabel.parse("dSigma_1"), infinite=True)
    assert attainable(SSCLabel.parse("dSigma_1"), infinite=False)


@pytest.mark.parametrize("src,dst", [
    ("Pi_1", "Pi_3"), ("Pi_2", "Pi_4"), ("dSigma_1", "Pi_4"), ("Sigma_4", "Pi_7"), ("Pi_w", "Pi_w*1"),
])
def test_transfer(src, dst):
    assert str(fs_ssc_transfer(SSCLabel.parse(src))) == dst


@pytest.mark.parametrize("text,member", [("w", True), ("w*", True), ("z", True), ("5", True),
                                         ("q", True), ("w^2", False), ("z*q", False)])
def test_k_membership(text, member):
    assert (k_member(text) is not None) == member


def test_finite_sums_of_k():
    assert finite_sum_of_k("w+w")
    assert finite_sum_of_k("q+1")
    assert not finite_sum_of_k("w^2")


@pytest.mark.parametrize("text,label", [
    ("q", "Pi_2"), ("1", "Pi_1"), ("5", "dSigma_1"), ("q+2+q", "dSigma_2"),
    ("w", "Pi_3"), ("w^2", "Pi_5"), ("w*2", "dSigma_3"), ("z*q", "Pi_4"),
])
def test_quick_golden_labels(text, label):
    r = classify(text)
    assert r.exact and str(r.upper) == label


def test_report_shape():
    data = classify("q").to_json()
    assert data["exact"] is True
    assert data["upper"] == "Pi_2"
    assert all({"rule", "claim"} <= set(ev) for ev in data["evidence"])


def test_small_corpus_respects_prohibitions():
    clf = Classifier(Engine(budget=1.0))
    for seed in range(40):
        t = canonicalize(random_term(seed, 6))
        r = clf.classify(t)
        infinite = size(t) is None
        for lab in (r.lower, r.upper):
            if lab is not None:
                assert str(lab) not in ("Sigma_2", "Sigma_3"), render(t)
                if infinite:
                    assert str(lab) != "dSigma_1", render(t)
        if r.exact and str(r.upper) == "Pi_3":
            assert k_member(t) is not None


@pytest.mark.parametrize("label,psr,sr,params", [
    ("Sigma_4", "2", "4", "Pi_3"),
    ("Pi_3", "2", "2", "none"),
    ("Pi_w", "w*1", "w*1", "none"),
    ("dSigma_3", "2", "3", "Pi_2"),
])
def test_scott_invariants(label, psr, sr, params):
    from scottlo.classifier import scott_invariants
    from scottlo.ordinals import render as ord_render
    row = scott_invariants(SSCLabel.parse(label))
    assert (ord_render(row.psr), ord_render(row.sr), row.parameters) == (psr, sr, params)


def test_scott_invariants_reject_impossible_labels():
    from scottlo.classifier import scott_invariants
    for text in ("Sigma_1", "Sigma_2"):
        with pytest.raises(ValueError):
            scott_invariants(SSCLabel.parse(text))
