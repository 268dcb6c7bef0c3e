"""Decide a few back-and-forth relations and show why they hold or fail."""
from scottlo.engine import Engine, replay_false, replay_true

engine = Engine(budget=30.0)

queries = [
    ("w+q", "w", 3),
    ("z*q", "z", 3),
    ("2*q+1+q", "2*q+q", 4),
    ("w", "w+1", 3),
    ("2", "3", 2),
]

for lhs, rhs, k in queries:
    v = engine.check_le(lhs, rhs, k)
    print(f"{v.lhs} <=_{k} {v.rhs}: {v.outcome}   C={v.bounds['C']} P={v.bounds['P']}")
    cert = v.certificate
    if cert.get("rule") == "failing partition":
        # the universal player's winning cut of the right-hand order
        print("   cut:", " | ".join(cert["partition"]), "->", cert["reason"])
        print("   replays:", replay_false(engine, lhs, rhs, k, cert["partition"]))
    elif cert.get("rule") == "matching strategy":
        print(f"   strategy with {cert['states']} positions, replays: {replay_true(engine, lhs, rhs, k)}")
    else:
        print("  ", cert)

# one direction can hold without the other
for a, b in [("q+3+q", "q+2+q"), ("q+2+q", "q+3+q")]:
    print(f"{a} <=_2 {b}: {engine.check_le(a, b, 2).outcome}")
print("equivalent at level 2:", engine.check_equiv("q+3+q", "q+2+q", 2).outcome)
