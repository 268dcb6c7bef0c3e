"""Scott sentence complexity of some familiar orders, with the reasons."""
from scottlo.classifier import Classifier
from scottlo.engine import Engine

clf = Classifier(Engine(budget=20.0))

for text in ["1", "5", "q", "w", "w*2", "w^2", "z*q", "q+2+q", "2*q+1+q", "sh(1,w)+w+w*q"]:
    r = clf.classify(text)
    label = r.upper if r.exact else f"{r.lower} .. {r.upper}"
    print(f"{text:>16}  {label}")
    for ev in r.evidence:
        print(f"{'':>18}{ev['claim']}: {ev['rule']}")
